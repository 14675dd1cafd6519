//! The on-disk instance format: ground set, one zoo function with declared
//! flags, and optional named points and sets.
//!
//! Sets are written as sorted element-index arrays for readability; masks
//! stay internal. Files round-trip (parse → serialize → parse) to the same
//! value.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use subpoly::{
    validate, DeclaredFlags, Family, GroundSet, Instance, Point, Property, SetFunction, Subset,
};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// The function record: family tag, parameters, offset, declared flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub offset: f64,
    pub flags: DeclaredFlags,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format_version: u32,
    pub ground_set: GroundSet,
    pub function: FunctionSpec,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<usize>>,
}

/// An instance file lowered into library types, plus its content digest.
#[derive(Debug)]
pub struct LoadedInstance {
    pub file: InstanceFile,
    pub instance: Instance,
    pub digest: String,
    pub points: BTreeMap<String, Point>,
    pub sets: BTreeMap<String, Subset>,
}

impl LoadedInstance {
    pub fn point(&self, name: &str) -> Result<&Point, CliError> {
        self.points.get(name).ok_or_else(|| CliError::MissingName {
            kind: "point",
            name: name.to_string(),
            available: self.points.keys().cloned().collect::<Vec<_>>().join(", "),
        })
    }

    pub fn set(&self, name: &str) -> Result<Subset, CliError> {
        self.sets.get(name).copied().ok_or_else(|| CliError::MissingName {
            kind: "set",
            name: name.to_string(),
            available: self.sets.keys().cloned().collect::<Vec<_>>().join(", "),
        })
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{:x}", hasher.finalize())
}

/// Read, parse, lower, and (unless `trust_flags`) re-validate an instance
/// file. `cap_override` comes from the environment and applies before any
/// validation sweep runs.
pub fn load(
    path: &Path,
    trust_flags: bool,
    cap_override: Option<usize>,
) -> Result<LoadedInstance, CliError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path)
        .map_err(|source| CliError::Io { path: display.clone(), source })?;
    let digest = digest_bytes(&bytes);
    let file: InstanceFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Parse { path: display.clone(), message: e.to_string() })?;
    if file.format_version != FORMAT_VERSION {
        return Err(CliError::Parse {
            path: display,
            message: format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                file.format_version
            ),
        });
    }
    lower(file, trust_flags, cap_override, digest)
}

/// Parse from a string (used by tests); the digest is taken over the text.
pub fn from_str(text: &str, trust_flags: bool) -> Result<LoadedInstance, CliError> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| CliError::Parse { path: "<inline>".into(), message: e.to_string() })?;
    lower(file, trust_flags, None, digest_bytes(text.as_bytes()))
}

pub fn to_json(file: &InstanceFile) -> String {
    let mut text = serde_json::to_string_pretty(file).expect("instance files serialize");
    text.push('\n');
    text
}

fn lower(
    file: InstanceFile,
    trust_flags: bool,
    cap_override: Option<usize>,
    digest: String,
) -> Result<LoadedInstance, CliError> {
    let mut ground = file.ground_set.clone();
    if let Some(cap) = cap_override {
        ground.set_cap(cap).map_err(CliError::Domain)?;
    }
    let instance = Instance::new(
        ground.clone(),
        file.function.family.clone(),
        file.function.offset,
        file.function.flags,
    )?;

    let mut sets = BTreeMap::new();
    for (name, indices) in &file.sets {
        let subset = ground.subset(indices).map_err(|e| CliError::Invalid {
            what: format!("set `{name}`"),
            message: e.to_string(),
        })?;
        sets.insert(name.clone(), subset);
    }
    let mut points = BTreeMap::new();
    for (name, coords) in &file.points {
        if coords.len() != ground.len() {
            return Err(CliError::PointLength {
                name: name.clone(),
                expected: ground.len(),
                got: coords.len(),
            });
        }
        points.insert(name.clone(), Point::new(coords.clone()));
    }

    if !trust_flags && ground.len() <= ground.cap() {
        revalidate_flags(&instance)?;
    }

    Ok(LoadedInstance { file, instance, digest, points, sets })
}

// Declared-true flags must survive their validators; m-natural-concavity has
// no validator and is trusted.
fn revalidate_flags(instance: &Instance) -> Result<(), CliError> {
    let flags = instance.flags();
    let checks = [
        (flags.submodular, Property::Submodularity, "submodular"),
        (flags.monotone, Property::Monotonicity, "monotone"),
        (flags.normalized, Property::Normalization, "normalized"),
    ];
    for (declared, property, name) in checks {
        if !declared {
            continue;
        }
        let report = validate(instance, property)?;
        if !report.holds {
            let data = serde_json::to_value(&report).expect("reports serialize");
            return Err(CliError::FlagValidation {
                property: name.to_string(),
                message: format!(
                    "counterexample: {}",
                    serde_json::to_string(&report.counterexample).expect("serializes")
                ),
                data,
            });
        }
    }
    Ok(())
}

/// Render an instance back to its file form (used to ship fixtures and by
/// the round-trip tests).
pub fn file_from_instance(
    instance: &Instance,
    points: &BTreeMap<String, Vec<f64>>,
    sets: &BTreeMap<String, Vec<usize>>,
) -> InstanceFile {
    InstanceFile {
        format_version: FORMAT_VERSION,
        ground_set: instance.ground().clone(),
        function: FunctionSpec {
            family: instance.family().clone(),
            offset: instance.offset(),
            flags: instance.flags(),
        },
        points: points.clone(),
        sets: sets.clone(),
    }
}
