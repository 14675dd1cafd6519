//! Command execution: lowering named arguments onto library calls and
//! shaping results into report payloads.

use serde_json::{json, Value};

use subpoly::{
    brute_force_optimize, certificate, local_search, membership, modular_lower_bound,
    modular_upper_bound, nemhauser_bound, one_third_max, subdiff_vertex, supergradient, validate,
    CertificateKind, Direction, InnerBoxKind, NemhauserVariant, Permutation,
    PolyhedronDescriptor, Property, SetFunction, Subset, SupergradientKind,
};

use crate::error::CliError;
use crate::instance::LoadedInstance;

/// A computed result plus whether the mathematical answer was negative
/// (non-membership, failed certificate, failed validation).
pub struct Outcome {
    pub result: Value,
    pub negative: bool,
}

impl Outcome {
    fn ok(result: Value) -> Self {
        Outcome { result, negative: false }
    }
}

/// Which polyhedron `member` targets; anchored kinds take their anchor from
/// a named set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    Lower,
    Base,
    Upper,
    Subdiff,
    Superdiff,
    SubOuter11,
    SuperOuter,
    InnerBox,
    InnerConv,
}

pub struct PolyArgs<'a> {
    pub kind: PolyKind,
    pub set: Option<&'a str>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub box_kind: Option<InnerBoxKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    ModularUpper,
    ModularLower,
    NemhauserOne,
    NemhauserTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    Brute,
    Local,
}

fn require_flag(command: &str, flag: &str, value: bool) -> Result<(), CliError> {
    if value {
        Ok(())
    } else {
        Err(CliError::Precondition { command: command.to_string(), flag: flag.to_string() })
    }
}

fn require_submodular(li: &LoadedInstance, command: &str) -> Result<(), CliError> {
    require_flag(command, "submodular", li.instance.flags().submodular)
}

pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation, CliError> {
    let order: Vec<usize> = text
        .split(',')
        .map(|part| {
            part.trim().parse::<usize>().map_err(|e| CliError::Invalid {
                what: "permutation".to_string(),
                message: format!("`{part}`: {e}"),
            })
        })
        .collect::<Result<_, _>>()?;
    if order.len() != n {
        return Err(CliError::Invalid {
            what: "permutation".to_string(),
            message: format!("{} positions for {} elements", order.len(), n),
        });
    }
    Permutation::new(order).map_err(CliError::Domain)
}

pub fn eval(li: &LoadedInstance, set_name: &str) -> Result<Outcome, CliError> {
    let s = li.set(set_name)?;
    let value = li.instance.evaluate(s);
    Ok(Outcome::ok(json!({ "set": s, "value": value })))
}

pub fn gain(li: &LoadedInstance, element: usize, set_name: &str) -> Result<Outcome, CliError> {
    let s = li.set(set_name)?;
    li.instance.ground().check_element(element)?;
    let value = li.instance.gain(element, s);
    Ok(Outcome::ok(json!({ "element": element, "set": s, "value": value })))
}

pub fn vertex(li: &LoadedInstance, perm: &str) -> Result<Outcome, CliError> {
    require_submodular(li, "vertex")?;
    let sigma = parse_permutation(perm, li.instance.n())?;
    let point = subpoly::greedy_vertex(&li.instance, &sigma)?;
    Ok(Outcome::ok(json!({ "order": sigma.order(), "point": point })))
}

pub fn subdiff_vertex_cmd(
    li: &LoadedInstance,
    set_name: &str,
    perm: &str,
) -> Result<Outcome, CliError> {
    require_submodular(li, "subdiff-vertex")?;
    let anchor = li.set(set_name)?;
    let sigma = parse_permutation(perm, li.instance.n())?;
    let point = subdiff_vertex(&li.instance, anchor, &sigma)?;
    Ok(Outcome::ok(json!({ "anchor": anchor, "order": sigma.order(), "point": point })))
}

fn anchor_of(li: &LoadedInstance, args: &PolyArgs, name: &str) -> Result<Subset, CliError> {
    match args.set {
        Some(set_name) => li.set(set_name),
        None => Err(CliError::Usage(format!("--poly {name} requires --set"))),
    }
}

fn no_extras(args: &PolyArgs, name: &str) -> Result<(), CliError> {
    if args.k.is_some() || args.l.is_some() {
        return Err(CliError::Usage(format!("--poly {name} does not take --k/--l")));
    }
    if args.box_kind.is_some() {
        return Err(CliError::Usage(format!("--poly {name} does not take --box")));
    }
    Ok(())
}

pub fn build_descriptor(
    li: &LoadedInstance,
    args: &PolyArgs,
) -> Result<PolyhedronDescriptor, CliError> {
    match args.kind {
        PolyKind::Lower | PolyKind::Base | PolyKind::Upper => {
            if args.set.is_some() {
                return Err(CliError::Usage("this polyhedron does not take --set".into()));
            }
            no_extras(args, "lower/base/upper")?;
            Ok(match args.kind {
                PolyKind::Lower => PolyhedronDescriptor::LowerPolyhedron,
                PolyKind::Base => PolyhedronDescriptor::BasePolytope,
                _ => PolyhedronDescriptor::UpperPolyhedron,
            })
        }
        PolyKind::Subdiff => {
            no_extras(args, "subdiff")?;
            Ok(PolyhedronDescriptor::Subdifferential(anchor_of(li, args, "subdiff")?))
        }
        PolyKind::Superdiff => {
            no_extras(args, "superdiff")?;
            Ok(PolyhedronDescriptor::Superdifferential(anchor_of(li, args, "superdiff")?))
        }
        PolyKind::SubOuter11 => {
            no_extras(args, "sub-outer-11")?;
            Ok(PolyhedronDescriptor::SubOuter11(anchor_of(li, args, "sub-outer-11")?))
        }
        PolyKind::SuperOuter => {
            if args.box_kind.is_some() {
                return Err(CliError::Usage("--poly super-outer does not take --box".into()));
            }
            let anchor = anchor_of(li, args, "super-outer")?;
            let (Some(k), Some(l)) = (args.k, args.l) else {
                return Err(CliError::Usage("--poly super-outer requires --k and --l".into()));
            };
            Ok(PolyhedronDescriptor::SuperOuter { anchor, k, l })
        }
        PolyKind::InnerBox => {
            if args.k.is_some() || args.l.is_some() {
                return Err(CliError::Usage("--poly inner-box does not take --k/--l".into()));
            }
            let anchor = anchor_of(li, args, "inner-box")?;
            let Some(kind) = args.box_kind else {
                return Err(CliError::Usage("--poly inner-box requires --box".into()));
            };
            Ok(PolyhedronDescriptor::InnerBox { anchor, kind })
        }
        PolyKind::InnerConv => {
            no_extras(args, "inner-conv")?;
            Ok(PolyhedronDescriptor::InnerConv(anchor_of(li, args, "inner-conv")?))
        }
    }
}

pub fn member(li: &LoadedInstance, args: &PolyArgs, point_name: &str) -> Result<Outcome, CliError> {
    require_submodular(li, "member")?;
    let descriptor = build_descriptor(li, args)?;
    let x = li.point(point_name)?;
    let verdict = membership(&li.instance, descriptor, x)?;
    let negative = !verdict.member;
    Ok(Outcome {
        result: serde_json::to_value(&verdict).expect("verdicts serialize"),
        negative,
    })
}

pub fn supergradient_cmd(
    li: &LoadedInstance,
    set_name: &str,
    kind: SupergradientKind,
) -> Result<Outcome, CliError> {
    require_submodular(li, "supergradient")?;
    let anchor = li.set(set_name)?;
    let point = supergradient(&li.instance, anchor, kind)?;
    Ok(Outcome::ok(json!({ "anchor": anchor, "kind": kind, "point": point })))
}

pub fn bound_eval(
    li: &LoadedInstance,
    bound: BoundKind,
    set_name: &str,
    at_name: &str,
    kind: Option<SupergradientKind>,
    perm: Option<&str>,
) -> Result<Outcome, CliError> {
    require_submodular(li, "bound-eval")?;
    let anchor = li.set(set_name)?;
    let at = li.set(at_name)?;
    let f = &li.instance;
    let value = match bound {
        BoundKind::ModularUpper => {
            let kind = kind.ok_or_else(|| {
                CliError::Usage("--bound modular-upper requires --kind".into())
            })?;
            modular_upper_bound(f, anchor, kind)?.evaluate(at)
        }
        BoundKind::ModularLower => {
            let perm = perm.ok_or_else(|| {
                CliError::Usage("--bound modular-lower requires --perm".into())
            })?;
            let sigma = parse_permutation(perm, f.n())?;
            modular_lower_bound(f, anchor, &sigma)?.evaluate(at)
        }
        BoundKind::NemhauserOne => {
            nemhauser_bound(f, anchor, NemhauserVariant::One)?.evaluate(at)
        }
        BoundKind::NemhauserTwo => {
            nemhauser_bound(f, anchor, NemhauserVariant::Two)?.evaluate(at)
        }
    };
    Ok(Outcome::ok(json!({
        "anchor": anchor,
        "anchor_value": f.evaluate(anchor),
        "at": at,
        "value": value,
        "function_value_at": f.evaluate(at),
    })))
}

pub fn optimize_cmd(
    li: &LoadedInstance,
    direction: Direction,
    method: SearchMethod,
    start: Option<&str>,
) -> Result<Outcome, CliError> {
    let result = match method {
        SearchMethod::Brute => {
            if start.is_some() {
                return Err(CliError::Usage("--start only applies to --method local".into()));
            }
            brute_force_optimize(&li.instance, direction)?
        }
        SearchMethod::Local => {
            let start = match start {
                Some(name) => li.set(name)?,
                None => Subset::EMPTY,
            };
            local_search(&li.instance, direction, start)?
        }
    };
    Ok(Outcome::ok(serde_json::to_value(&result).expect("results serialize")))
}

pub fn third_max(li: &LoadedInstance, start: Option<&str>) -> Result<Outcome, CliError> {
    require_submodular(li, "third-max")?;
    require_flag("third-max", "normalized", li.instance.flags().normalized)?;
    let start = match start {
        Some(name) => li.set(name)?,
        None => Subset::EMPTY,
    };
    let result = one_third_max(&li.instance, start)?;
    // report the achieved ratio whenever brute force is feasible
    let ground = li.instance.ground();
    let (opt_value, ratio) = if ground.len() <= ground.cap() {
        let opt = brute_force_optimize(&li.instance, Direction::Maximize)?;
        let ratio = if opt.value.abs() > subpoly::TOLERANCE {
            Some(result.value / opt.value)
        } else {
            None
        };
        (Some(opt.value), ratio)
    } else {
        (None, None)
    };
    Ok(Outcome::ok(json!({
        "argset": result.argset,
        "value": result.value,
        "evaluations": result.evaluations,
        "opt_value": opt_value,
        "ratio": ratio,
    })))
}

pub fn certify(
    li: &LoadedInstance,
    kind: CertificateKind,
    set_name: &str,
) -> Result<Outcome, CliError> {
    require_submodular(li, "certify")?;
    let candidate = li.set(set_name)?;
    let cert = certificate(&li.instance, candidate, kind)?;
    let negative = !cert.holds;
    Ok(Outcome { result: serde_json::to_value(&cert).expect("certificates serialize"), negative })
}

pub fn validate_cmd(li: &LoadedInstance, property: Property) -> Result<Outcome, CliError> {
    let report = validate(&li.instance, property)?;
    let negative = !report.holds;
    Ok(Outcome { result: serde_json::to_value(&report).expect("reports serialize"), negative })
}
