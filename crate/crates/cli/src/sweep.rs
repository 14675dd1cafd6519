//! Reproducible experiment sweeps: one report line per trial on standard
//! output, then an aggregate summary line. A fixed seed reproduces the
//! stream bit for bit (apart from wall times).

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use subpoly::random::{
    random_instance, random_m_natural, random_nonnegative_submodular, random_point,
    random_submodular, random_subset, SplitMix64, ZooKind,
};
use subpoly::{
    brute_force_optimize, membership, one_third_max, supergradient, Direction, Instance,
    PolyhedronDescriptor, SupergradientKind, TOLERANCE,
};

use crate::error::CliError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// Local-search 1/3-approximation ratios against brute-force optima.
    Ratio,
    /// Outer-bound nesting counts over a (k, l) grid.
    Hierarchy,
    /// Distance-two collapse on matroid-rank and capped-cardinality instances.
    MnatCollapse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilySelector {
    Mixed,
    Nonnegative,
    MNatural,
    Modular,
    Coverage,
    GraphCut,
    ConcaveSqrt,
    ConcaveLog1p,
    ConcaveCapped,
    MatroidUniform,
    MatroidPartition,
}

impl FamilySelector {
    fn draw(self, n: usize, rng: &mut SplitMix64) -> Instance {
        match self {
            FamilySelector::Mixed => random_submodular(n, rng),
            FamilySelector::Nonnegative => random_nonnegative_submodular(n, rng),
            FamilySelector::MNatural => random_m_natural(n, rng),
            FamilySelector::Modular => random_instance(ZooKind::Modular, n, rng),
            FamilySelector::Coverage => random_instance(ZooKind::Coverage, n, rng),
            FamilySelector::GraphCut => random_instance(ZooKind::GraphCut, n, rng),
            FamilySelector::ConcaveSqrt => random_instance(ZooKind::ConcaveSqrt, n, rng),
            FamilySelector::ConcaveLog1p => random_instance(ZooKind::ConcaveLog1p, n, rng),
            FamilySelector::ConcaveCapped => random_instance(ZooKind::ConcaveCapped, n, rng),
            FamilySelector::MatroidUniform => random_instance(ZooKind::MatroidUniform, n, rng),
            FamilySelector::MatroidPartition => {
                random_instance(ZooKind::MatroidPartition, n, rng)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub format_version: u32,
    pub suite: Suite,
    pub family: FamilySelector,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub repetitions: u32,
}

pub fn load_config(path: &std::path::Path) -> Result<(SweepConfig, String), CliError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path)
        .map_err(|source| CliError::Io { path: display.clone(), source })?;
    let digest = crate::instance::digest_bytes(&bytes);
    let config: SweepConfig = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse { path: display.clone(), message: e.to_string() })?;
    if config.format_version != crate::instance::FORMAT_VERSION {
        return Err(CliError::Parse {
            path: display,
            message: format!(
                "unsupported format_version {} (expected {})",
                config.format_version,
                crate::instance::FORMAT_VERSION
            ),
        });
    }
    if config.n_min < 1 || config.n_min > config.n_max {
        return Err(CliError::Invalid {
            what: "sweep config".into(),
            message: format!("size range {}..={} is empty", config.n_min, config.n_max),
        });
    }
    Ok((config, digest))
}

/// Run the sweep, writing one report line per trial plus an aggregate line.
/// Returns the process exit code: 0 when no trial violated its property,
/// 2 otherwise.
pub fn run(
    config: &SweepConfig,
    digest: &str,
    command: &str,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let started = Instant::now();
    if matches!(config.suite, Suite::Hierarchy | Suite::MnatCollapse) && config.n_max < 2 {
        return Err(CliError::Invalid {
            what: "sweep config".into(),
            message: "this suite needs ground sets of at least 2 elements".into(),
        });
    }
    let mut rng = SplitMix64::new(config.seed);
    let mut violations = 0u64;
    let mut aggregate_extra;

    match config.suite {
        Suite::Ratio => {
            let mut ratios: Vec<f64> = Vec::new();
            for trial in 0..config.repetitions {
                let n = rng.range_usize(config.n_min, config.n_max);
                let f = config.family.draw(n, &mut rng);
                let start = random_subset(n, &mut rng);
                let result = one_third_max(&f, start)?;
                let opt = brute_force_optimize(&f, Direction::Maximize)?;
                let ratio = if opt.value.abs() > TOLERANCE {
                    result.value / opt.value
                } else {
                    1.0
                };
                let violated = result.value < opt.value / 3.0 - TOLERANCE;
                if violated {
                    violations += 1;
                }
                ratios.push(ratio);
                emit_trial(
                    out,
                    command,
                    digest,
                    started,
                    json!({
                        "trial": trial,
                        "n": n,
                        "start": start,
                        "value": result.value,
                        "opt": opt.value,
                        "ratio": ratio,
                        "violation": violated,
                    }),
                )?;
            }
            let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let mean_ratio = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
            aggregate_extra = json!({
                "min_ratio": if ratios.is_empty() { Value::Null } else { json!(min_ratio) },
                "mean_ratio": if ratios.is_empty() { Value::Null } else { json!(mean_ratio) },
            });
        }
        Suite::Hierarchy => {
            // member counts per (k, l) cell, plus the exact polyhedron
            let grid_max = config.n_max.min(4);
            let mut cell_counts = vec![vec![0u64; grid_max]; grid_max];
            let mut exact_count = 0u64;
            let mut points_total = 0u64;
            for trial in 0..config.repetitions {
                let n = rng.range_usize(config.n_min.max(2), config.n_max);
                let f = config.family.draw(n, &mut rng);
                let anchor = random_subset(n, &mut rng);
                let tilde = supergradient(&f, anchor, SupergradientKind::Tilde)?;
                let mut trial_violations = 0u64;
                let grid = grid_max.min(n);
                for _ in 0..4 {
                    let noise = random_point(n, -0.4, 0.4, &mut rng);
                    let x = subpoly::Point::new(
                        (0..n).map(|j| tilde.get(j) + noise.get(j)).collect(),
                    );
                    points_total += 1;
                    let exact = membership(
                        &f,
                        PolyhedronDescriptor::Superdifferential(anchor),
                        &x,
                    )?
                    .member;
                    if exact {
                        exact_count += 1;
                    }
                    let mut members = vec![vec![false; grid]; grid];
                    for k in 1..=grid {
                        for l in 1..=grid {
                            let m = membership(
                                &f,
                                PolyhedronDescriptor::SuperOuter { anchor, k, l },
                                &x,
                            )?
                            .member;
                            members[k - 1][l - 1] = m;
                            if m {
                                cell_counts[k - 1][l - 1] += 1;
                            }
                            // nesting: exact ⊆ every outer bound, and looser
                            // bounds contain tighter ones
                            if exact && !m {
                                trial_violations += 1;
                            }
                            if m && !members[0][l - 1] {
                                trial_violations += 1;
                            }
                            if m && !members[k - 1][0] {
                                trial_violations += 1;
                            }
                        }
                    }
                }
                violations += trial_violations;
                emit_trial(
                    out,
                    command,
                    digest,
                    started,
                    json!({
                        "trial": trial,
                        "n": n,
                        "anchor": anchor,
                        "points": 4,
                        "violations": trial_violations,
                    }),
                )?;
            }
            let cells: Vec<Value> = (0..grid_max)
                .flat_map(|k| {
                    let counts = &cell_counts;
                    (0..grid_max).map(move |l| {
                        json!({ "k": k + 1, "l": l + 1, "members": counts[k][l] })
                    })
                })
                .collect();
            // member counts must not increase as (k, l) tighten
            for k in 0..grid_max {
                for l in 0..grid_max {
                    for (kp, lp) in [(k.saturating_sub(1), l), (k, l.saturating_sub(1))] {
                        if cell_counts[k][l] > cell_counts[kp][lp] {
                            violations += 1;
                        }
                    }
                }
            }
            aggregate_extra = json!({
                "points": points_total,
                "exact_members": exact_count,
                "cells": cells,
            });
        }
        Suite::MnatCollapse => {
            let mut points_total = 0u64;
            for trial in 0..config.repetitions {
                let n = rng.range_usize(config.n_min.max(2), config.n_max);
                // `mixed` here means the collapse class itself; families
                // outside it would just report their disagreement counts
                let f = match config.family {
                    FamilySelector::Mixed => random_m_natural(n, &mut rng),
                    other => other.draw(n, &mut rng),
                };
                let anchor = random_subset(n, &mut rng);
                let corner = supergradient(&f, anchor, SupergradientKind::Grow)?;
                let mut disagreements = 0u64;
                for _ in 0..8 {
                    let x = subpoly::Point::new(
                        (0..n)
                            .map(|j| corner.get(j) + rng.range_f64(-0.6, 0.6))
                            .collect(),
                    );
                    points_total += 1;
                    let outer = membership(
                        &f,
                        PolyhedronDescriptor::SuperOuter { anchor, k: 2.min(n), l: 2.min(n) },
                        &x,
                    )?
                    .member;
                    let exact = membership(
                        &f,
                        PolyhedronDescriptor::Superdifferential(anchor),
                        &x,
                    )?
                    .member;
                    if outer != exact {
                        disagreements += 1;
                    }
                }
                violations += disagreements;
                emit_trial(
                    out,
                    command,
                    digest,
                    started,
                    json!({
                        "trial": trial,
                        "n": n,
                        "anchor": anchor,
                        "points": 8,
                        "disagreements": disagreements,
                    }),
                )?;
            }
            aggregate_extra = json!({ "points": points_total });
        }
    }

    if let Value::Object(ref mut map) = aggregate_extra {
        map.insert("suite".into(), serde_json::to_value(config.suite).expect("serializes"));
        map.insert("trials".into(), json!(config.repetitions));
        map.insert("violations".into(), json!(violations));
    }
    let aggregate = Report::success(
        command.to_string(),
        Some(digest.to_string()),
        aggregate_extra,
        violations > 0,
        started.elapsed().as_secs_f64() * 1e3,
    );
    writeln!(out, "{}", aggregate.to_line())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(if violations == 0 { 0 } else { 2 })
}

fn emit_trial(
    out: &mut dyn Write,
    command: &str,
    digest: &str,
    started: Instant,
    result: Value,
) -> Result<(), CliError> {
    let report = Report::success(
        command.to_string(),
        Some(digest.to_string()),
        result,
        false,
        started.elapsed().as_secs_f64() * 1e3,
    );
    writeln!(out, "{}", report.to_line())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}
