use std::collections::BTreeSet;
use std::fmt::Write as _;

use skewroot::abgroup::GroupHom;
use skewroot::families::{
    generating_witness, identify, instantiate, ClassicalType, FamilyInstance, FamilyName,
    FamilySpec,
};
use skewroot::galgebra::GradedAlgebra;
use skewroot::skewroot::{classify, enumerate_systems, validate, Kind, SkewRootSystem};
use skewroot::symplectic::{Bicharacter, Cocycle};

use crate::config::{Analysis, JobConfig, Target};
use crate::Failure;

/// Text for stdout, an optional file payload, and whether a negative
/// finding was made.
pub struct Outcome {
    pub report: String,
    pub export: Option<String>,
    pub negative: bool,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Classical types of the given dimension. Only a dimension match; census
/// lines label it as such.
fn candidates(kind: Kind, dim: usize) -> Vec<ClassicalType> {
    let mut out = Vec::new();
    for n in 2..=dim + 1 {
        let types = match kind {
            Kind::Lie => vec![
                ClassicalType::Sl(n),
                ClassicalType::So(n + 1),
                ClassicalType::Sp(2 * n),
            ],
            Kind::Jordan => vec![
                ClassicalType::MatrixJordan(n),
                ClassicalType::HermitianReal(n),
                ClassicalType::HermitianQuaternion(2 * n),
            ],
        };
        out.extend(
            types
                .into_iter()
                .filter(|t| t.dim() == dim && t.is_simple()),
        );
    }
    if kind == Kind::Jordan && dim >= 3 {
        out.push(ClassicalType::SpinFactor(dim - 1));
    }
    out.sort_by_key(ToString::to_string);
    out.dedup();
    out
}

/// Algebras up to this dimension are built inside census runs.
const CENSUS_BUILD_DIM: usize = 24;

/// A system together with its cocycle and, for families, the instance data.
struct Subject {
    system: SkewRootSystem,
    cocycle: Cocycle,
    instance: Option<FamilyInstance>,
}

fn subject(target: &Target) -> Result<Result<Subject, String>, Failure> {
    match target {
        Target::System { beta, kind, roots } => {
            let set: BTreeSet<_> = roots.iter().cloned().collect();
            let report = validate(*kind, beta, &set);
            if !report.is_ok() {
                return Ok(Err(report.to_string()));
            }
            let system = SkewRootSystem::new(*kind, beta.clone(), set)?;
            Ok(Ok(Subject {
                cocycle: Cocycle::standard(system.beta()),
                system,
                instance: None,
            }))
        }
        Target::Family(name) => {
            let inst = instantiate(name)?;
            Ok(Ok(Subject {
                system: inst.system.clone(),
                cocycle: inst.cocycle.clone(),
                instance: Some(inst),
            }))
        }
        Target::Enumerate { .. } => Err(Failure::Input(
            "this command needs a root system or a family".into(),
        )),
    }
}

fn describe(system: &SkewRootSystem) -> String {
    format!(
        "{} skew root system on {} with values in mu_{}",
        system.kind(),
        system.group(),
        system.beta().order()
    )
}

pub fn validate_cmd(cfg: &JobConfig) -> Result<Outcome, Failure> {
    let mut report = String::new();
    let negative = match subject(&cfg.target)? {
        Err(violations) => {
            let _ = writeln!(report, "invalid\n{violations}");
            true
        }
        Ok(s) => {
            let _ = writeln!(report, "valid: {}", describe(&s.system));
            let _ = writeln!(report, "|R| = {}", s.system.len());
            false
        }
    };
    Ok(Outcome {
        report,
        export: None,
        negative,
    })
}

fn reduction_of(s: &Subject, budget: u64) -> Result<Option<(SkewRootSystem, GroupHom)>, Failure> {
    if let Some(r) = s.instance.as_ref().and_then(|i| i.reduction.clone()) {
        return Ok(Some(r));
    }
    if s.system.is_reduced() {
        return Ok(None);
    }
    Ok(Some(s.system.reduce_fully(budget)?))
}

pub fn analyze_cmd(cfg: &JobConfig, budget: u64) -> Result<Outcome, Failure> {
    let s = match subject(&cfg.target)? {
        Ok(s) => s,
        Err(violations) => {
            return Ok(Outcome {
                report: format!("invalid\n{violations}\n"),
                export: None,
                negative: true,
            })
        }
    };
    let want = |a: Analysis| cfg.analyses.contains(&a);
    let system = &s.system;
    let mut out = String::new();
    let mut negative = false;
    let _ = writeln!(out, "system: {}", describe(system));
    let _ = writeln!(out, "|R|: {}", system.len());
    let radical = system.radical(budget)?;
    if system.is_reduced() {
        let _ = writeln!(out, "reduced: yes");
    } else {
        let _ = writeln!(out, "reduced: no (|Rad(beta)| = {})", radical.len());
    }
    let components = system.components()?;
    let _ = write!(out, "components: {}", components.len());
    if system.indecomposability_certified() {
        let _ = writeln!(out);
    } else {
        let _ = writeln!(out, " (graph criterion only; system is not reduced)");
    }

    let alg = GradedAlgebra::build(system.kind(), system, &s.cocycle)?;
    let _ = writeln!(out, "dim: {}", alg.dim());
    if want(Analysis::Build) {
        let identity_ok = match alg.kind() {
            Kind::Lie => alg.jacobi_holds(),
            Kind::Jordan => alg.jordan_identity_holds(),
        } && alg.symmetry_holds();
        let name = if alg.kind() == Kind::Lie {
            "Jacobi"
        } else {
            "Jordan"
        };
        let _ = writeln!(
            out,
            "{name} identity: {}",
            if identity_ok { "holds" } else { "FAILS" }
        );
        negative |= !identity_ok;
    }

    let form_wanted = match alg.kind() {
        Kind::Lie => want(Analysis::Killing),
        Kind::Jordan => want(Analysis::Trace),
    };
    let mut nondegenerate = None;
    if form_wanted || want(Analysis::Centroid) {
        let form = alg.invariant_form()?;
        let det = form.det();
        let closed = match alg.kind() {
            Kind::Lie => alg.killing_closed_form_holds(&form)?,
            Kind::Jordan => alg.trace_closed_form_holds(&form)?,
        };
        let label = if alg.kind() == Kind::Lie {
            "killing"
        } else {
            "trace"
        };
        if form_wanted {
            let _ = writeln!(out, "{label} det: {det}");
            let _ = writeln!(
                out,
                "{label} closed form: {}",
                if closed { "matches" } else { "MISMATCH" }
            );
            if alg.kind() == Kind::Jordan {
                let z = alg.index_of(&system.group().zero());
                if let Some(z) = z {
                    let _ = writeln!(out, "trace form at (0, 0): {}", form.entry(z, z));
                }
            }
        }
        negative |= det.is_zero() || !closed;
        nondegenerate = Some(!det.is_zero());
    }
    if want(Analysis::Centroid) {
        match nondegenerate {
            Some(true) => {
                let _ = writeln!(out, "centroid dim: {}", alg.centroid_dim_unchecked());
            }
            _ => {
                let _ = writeln!(
                    out,
                    "centroid dim: not computed (invariant form is degenerate)"
                );
            }
        }
    }
    if want(Analysis::GradedSimple) {
        let gs = alg.graded_simple();
        let _ = writeln!(out, "graded-simple: {}", yes(gs));
        negative |= alg.kind() == Kind::Jordan && !gs;
    }
    if want(Analysis::Homsemi) {
        let hs = alg.homogeneous_semisimple()?;
        let _ = writeln!(out, "homogeneous semisimple: {}", yes(hs));
        negative |= !hs;
    }
    if want(Analysis::Reduce) {
        match reduction_of(&s, budget)? {
            None => {
                let _ = writeln!(out, "reduction: already reduced");
            }
            Some((reduced, p)) => {
                let target = GradedAlgebra::build_standard(&reduced)?;
                let source = GradedAlgebra::build_pulled_back(system, &target, &p)?;
                let map = source.hom_onto_reduction(&target, &p)?;
                let _ = writeln!(
                    out,
                    "reduction: |R| = {} -> {} over {}, kernel dim {}{}",
                    system.len(),
                    reduced.len(),
                    reduced.group(),
                    map.kernel_dim,
                    if map.is_isomorphism() {
                        " (isomorphism)"
                    } else {
                        ""
                    }
                );
                negative |= !map.surjective;
            }
        }
    }
    if want(Analysis::Identify) {
        match &s.instance {
            Some(inst) => {
                let id = identify(&alg, inst)?;
                let _ = write!(out, "{id}");
                negative |= !id.matches();
            }
            None => {
                let _ = writeln!(out, "identification: none (no family given)");
            }
        }
    }
    Ok(Outcome {
        report: out,
        export: Some(alg.export()),
        negative,
    })
}

pub fn export_cmd(cfg: &JobConfig) -> Result<Outcome, Failure> {
    match subject(&cfg.target)? {
        Err(violations) => Ok(Outcome {
            report: format!("invalid\n{violations}\n"),
            export: None,
            negative: true,
        }),
        Ok(s) => {
            let alg = GradedAlgebra::build(s.system.kind(), &s.system, &s.cocycle)?;
            let text = alg.export();
            Ok(Outcome {
                report: String::new(),
                export: Some(text),
                negative: false,
            })
        }
    }
}

/// Quick family check: cardinality, reducedness, generating witness and
/// identification against the expected classical type.
pub fn family_cmd(name: &FamilyName) -> Result<Outcome, Failure> {
    let inst = instantiate(name)?;
    let system = &inst.system;
    let mut out = String::new();
    let mut negative = false;
    let _ = writeln!(out, "family: {name}");
    let _ = writeln!(out, "system: {}", describe(system));
    let expected = name.expected_cardinality();
    let card_ok = system.len() as u64 == expected;
    let _ = writeln!(
        out,
        "|R|: {} (expected {expected}: {})",
        system.len(),
        if card_ok { "match" } else { "MISMATCH" }
    );
    let red_ok = system.is_reduced() == name.expected_reduced();
    let _ = writeln!(
        out,
        "reduced: {} (expected {}: {})",
        yes(system.is_reduced()),
        yes(name.expected_reduced()),
        if red_ok { "match" } else { "MISMATCH" }
    );
    negative |= !card_ok || !red_ok;
    if let FamilySpec::Quadratic(q, k) = &name.spec {
        let witness = generating_witness(*q, *k, name.kind)?;
        let inside = witness.iter().all(|w| system.roots().contains(w));
        let generated = system.group().subgroup_generated(&witness, u64::MAX)?.len() as u64
            == system.group().size();
        let _ = writeln!(
            out,
            "generating witness: {} elements, in R: {}, generates G: {}",
            witness.len(),
            yes(inside),
            yes(generated)
        );
        negative |= !inside || !generated;
    }
    let alg = inst.build_algebra()?;
    let id = identify(&alg, &inst)?;
    let _ = write!(out, "{id}");
    negative |= !id.matches();
    Ok(Outcome {
        report: out,
        export: None,
        negative,
    })
}

pub fn enumerate_cmd(beta: &Bicharacter, kind: Kind, budget: u64) -> Result<Outcome, Failure> {
    let systems = enumerate_systems(beta, kind, budget)?;
    let mut classes = classify(&systems, budget)?;
    classes.sort_by(|a, b| {
        (a.representative.len(), a.representative.roots())
            .cmp(&(b.representative.len(), b.representative.roots()))
    });
    let mut census = String::new();
    let _ = writeln!(
        census,
        "# census kind={kind} group={} N={} systems={} classes={}",
        beta.group(),
        beta.order(),
        systems.len(),
        classes.len()
    );
    for (i, c) in classes.iter().enumerate() {
        let rep = &c.representative;
        let roots: Vec<String> = rep.roots().iter().map(ToString::to_string).collect();
        let degrees: Vec<String> = c
            .invariants
            .degrees
            .iter()
            .map(ToString::to_string)
            .collect();
        let _ = write!(
            census,
            "class {} size={} members={} reduced={} components={} degrees={} roots={}",
            i + 1,
            rep.len(),
            c.members.len(),
            yes(c.invariants.reduced),
            c.invariants.components,
            degrees.join(","),
            roots.join(" ")
        );
        if rep.len() <= CENSUS_BUILD_DIM {
            let alg = GradedAlgebra::build_standard(rep)?;
            let det = alg.invariant_form()?.det();
            let centroid = (!det.is_zero()).then(|| alg.centroid_dim_unchecked());
            let identification = match centroid {
                Some(1) => {
                    let names: Vec<String> = candidates(kind, alg.dim())
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    if names.is_empty() {
                        "none".to_string()
                    } else {
                        names.join(",")
                    }
                }
                _ => "none (not central simple)".to_string(),
            };
            let _ = write!(
                census,
                " | algebra dim={} nondegenerate={} centroid={} graded-simple={} dimension-matches={}",
                alg.dim(),
                yes(!det.is_zero()),
                centroid.map_or_else(|| "n/a".to_string(), |c| c.to_string()),
                yes(alg.graded_simple()),
                identification
            );
        }
        let _ = writeln!(census);
    }
    let report = format!(
        "{} {kind} systems in {} isomorphism classes on {}\n",
        systems.len(),
        classes.len(),
        beta.group()
    );
    Ok(Outcome {
        report,
        export: Some(census),
        negative: systems.is_empty(),
    })
}
