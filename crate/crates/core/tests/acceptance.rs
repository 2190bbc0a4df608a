//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skewroot::abgroup::{FinAbGroup, GroupElem, DEFAULT_ENUMERATION_BUDGET};
use skewroot::families::{
    family_quadratic, generating_witness, identify, instantiate, involution_support,
    nonsingular_bicharacter, FamilyInstance, FamilyName, FamilySpec, QuadKind,
};
use skewroot::galgebra::GradedAlgebra;
use skewroot::skewroot::{
    classify, enumerate_systems, isomorphism, validate, Kind, SkewRootSystem,
};
use skewroot::symplectic::{extract_bicharacter, Bicharacter, Cocycle, TwistedGroupAlgebra};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn name(spec: FamilySpec, kind: Kind) -> FamilyName {
    FamilyName::new(spec, kind)
}

/// The family members of the cardinality table.
fn fixtures() -> Vec<FamilyName> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for (q, kind) in [
            (QuadKind::H, Kind::Lie),
            (QuadKind::H, Kind::Jordan),
            (QuadKind::F0, Kind::Lie),
            (QuadKind::F0, Kind::Jordan),
            (QuadKind::F1, Kind::Lie),
            (QuadKind::F1, Kind::Jordan),
        ] {
            let min = if matches!(
                (q, kind),
                (QuadKind::H, Kind::Lie) | (QuadKind::F0, Kind::Lie) | (QuadKind::F1, Kind::Jordan)
            ) {
                2
            } else {
                1
            };
            if k >= min {
                out.push(name(FamilySpec::Quadratic(q, k), kind));
            }
        }
    }
    for n in 2..=6 {
        out.push(name(FamilySpec::Nonsingular(vec![n]), Kind::Lie));
        out.push(name(FamilySpec::Nonsingular(vec![n]), Kind::Jordan));
    }
    out.push(name(FamilySpec::Nonsingular(vec![2, 2]), Kind::Lie));
    out.push(name(FamilySpec::Nonsingular(vec![2, 3]), Kind::Lie));
    for n in 2..=7 {
        if n >= 3 {
            out.push(name(FamilySpec::Clifford(n), Kind::Lie));
        }
        out.push(name(FamilySpec::Clifford(n), Kind::Jordan));
    }
    out
}

struct Built {
    inst: FamilyInstance,
    alg: GradedAlgebra,
}

fn build_all(names: &[FamilyName]) -> std::result::Result<Vec<Built>, String> {
    names
        .iter()
        .map(|n| {
            let inst = instantiate(n).map_err(|e| format!("{n}: {e}"))?;
            let alg = inst.build_algebra().map_err(|e| format!("{n}: {e}"))?;
            Ok(Built { inst, alg })
        })
        .collect()
}

fn criterion_1() -> Check {
    let mut checked = 0;
    for n in fixtures() {
        let system = n.system().map_err(|e| format!("{n}: {e}"))?;
        let got = system.len() as u64;
        ensure(got == n.expected_cardinality(), || {
            format!(
                "{n}: |R| = {got}, formula gives {}",
                n.expected_cardinality()
            )
        })?;
        ensure(system.is_validated(), || format!("{n}: not validated"))?;
        if let FamilySpec::Quadratic(q, k) = n.spec {
            let b = generating_witness(q, k, n.kind).map_err(err)?;
            let g = system.group();
            ensure(b.iter().all(|x| system.roots().contains(x)), || {
                format!("{n}: witness outside R")
            })?;
            let span = g
                .subgroup_generated(&b, DEFAULT_ENUMERATION_BUDGET)
                .map_err(err)?;
            ensure(span.len() as u64 == g.size(), || {
                format!("{n}: witness does not generate G")
            })?;
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} family members match their cardinality formulas"
    ))
}

fn criterion_2(all: &[Built]) -> Check {
    let mut dictionaries = 0;
    for b in all {
        let id = identify(&b.alg, &b.inst).map_err(err)?;
        ensure(id.dim_matches(), || {
            format!(
                "{}: dim {} vs {} {}",
                id.family, id.dim, id.expected, id.expected_dim
            )
        })?;
        ensure(id.matches(), || format!("{}: {id}", id.family))?;
        let size_ok = b.inst.models.iter().all(|m| m.size() <= 16);
        ensure(size_ok, || format!("{}: model above size 16", id.family))?;
        ensure(!id.dictionaries.is_empty(), || {
            format!("{}: no dictionary", id.family)
        })?;
        dictionaries += id.dictionaries.len();
    }
    Ok(format!(
        "{} algebras identified, {dictionaries} dictionaries verified",
        all.len()
    ))
}

fn criterion_3(all: &[Built]) -> Check {
    let (mut lie, mut jordan) = (0, 0);
    for b in all {
        let n = &b.inst.name;
        match b.alg.kind() {
            Kind::Lie => {
                let form = b.alg.killing_form().map_err(err)?;
                ensure(!form.det().is_zero(), || {
                    format!("{n}: Killing form degenerate")
                })?;
                ensure(b.alg.killing_closed_form_holds(&form).map_err(err)?, || {
                    format!("{n}: Killing form differs from the closed form")
                })?;
                lie += 1;
            }
            Kind::Jordan if b.alg.dim() <= 24 => {
                let form = b.alg.trace_form().map_err(err)?;
                ensure(!form.det().is_zero(), || {
                    format!("{n}: trace form degenerate")
                })?;
                ensure(b.alg.trace_closed_form_holds(&form).map_err(err)?, || {
                    format!("{n}: trace form differs from the closed form")
                })?;
                jordan += 1;
            }
            Kind::Jordan => {}
        }
    }
    Ok(format!(
        "{lie} Killing forms and {jordan} trace forms nondegenerate and equal to closed forms"
    ))
}

fn criterion_4(all: &[Built]) -> Check {
    let centroid = |s: &str| -> std::result::Result<usize, String> {
        let inst = instantiate(&s.parse().map_err(err)?).map_err(err)?;
        let alg = match inst.build_reduced_algebra().map_err(err)? {
            Some(r) => r,
            None => inst.build_algebra().map_err(err)?,
        };
        alg.centroid_dim().map_err(err)
    };
    let ones = [
        "nonsingular:2:lie",
        "nonsingular:3:lie",
        "nonsingular:4:lie",
        "nonsingular:2,2:lie",
        "clifford:3:lie",
        "clifford:5:lie",
        "quad:f1:1:lie",
        "quad:f1:2:lie",
        "quad:h:2:lie",
    ];
    for s in ones {
        let c = centroid(s)?;
        ensure(c == 1, || format!("{s}: centroid dim {c}, expected 1"))?;
    }
    for s in ["clifford:4:lie", "quad:f0:2:lie"] {
        let c = centroid(s)?;
        ensure(c == 2, || format!("{s}: centroid dim {c}, expected 2"))?;
    }
    let mut simple = 0;
    for b in all {
        let s = &b.inst.system;
        let relevant =
            s.kind() == Kind::Jordan || (s.is_reduced() && s.is_indecomposable().map_err(err)?);
        if relevant {
            ensure(b.alg.graded_simple(), || {
                format!("{}: not graded-simple", b.inst.name)
            })?;
            simple += 1;
        }
    }
    Ok(format!(
        "{} centroid dimensions exact, {simple} algebras graded-simple",
        ones.len() + 2
    ))
}

fn random_bicharacter(rng: &mut StdRng) -> Bicharacter {
    const ORDERS: [u64; 5] = [2, 3, 4, 6, 12];
    let rank = rng.gen_range(1..=3);
    let orders: Vec<u64> = (0..rank)
        .map(|_| ORDERS[rng.gen_range(0..ORDERS.len())])
        .collect();
    let g = FinAbGroup::new(&orders).expect("group");
    let o = g.orders().to_vec();
    let n = g.exponent() as i64;
    let rows: Vec<Vec<i64>> = (1..o.len())
        .map(|i| {
            (0..i)
                .map(|j| {
                    let step = n / num_integer::gcd(o[i], o[j]) as i64;
                    step * rng.gen_range(0..n / step)
                })
                .collect()
        })
        .collect();
    Bicharacter::from_lower_triangle(g, n as u32, &rows).expect("bicharacter")
}

fn random_cocycle(rng: &mut StdRng, g: &FinAbGroup) -> Cocycle {
    let o = g.orders().to_vec();
    let n = g.exponent() as i64;
    let m = (0..o.len())
        .map(|i| {
            (0..o.len())
                .map(|j| {
                    let step = n / num_integer::gcd(o[i], o[j]) as i64;
                    step * rng.gen_range(0..n / step)
                })
                .collect()
        })
        .collect();
    Cocycle::new(g.clone(), n as u32, m).expect("cocycle")
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut triples = 0u64;
    for _ in 0..100 {
        let beta = random_bicharacter(&mut rng);
        ensure(Cocycle::standard(&beta).psi() == beta, || {
            format!("psi(standard) differs for {}", beta.to_text())
        })?;
        let g = beta.group().clone();
        let xi = random_cocycle(&mut rng, &g);
        let tga = TwistedGroupAlgebra::new(xi.clone());
        let extracted = extract_bicharacter(&tga, DEFAULT_ENUMERATION_BUDGET).map_err(err)?;
        ensure(extracted == xi.psi(), || {
            "extract_bicharacter differs from psi".to_string()
        })?;
        if g.size() <= 32 {
            let basis: Vec<_> = g
                .elements()
                .map(|a| tga.basis(&a).expect("basis"))
                .collect();
            for x in &basis {
                for y in &basis {
                    let xy = x.mul(y).map_err(err)?;
                    for z in &basis {
                        let l = xy.mul(z).map_err(err)?;
                        let r = x.mul(&y.mul(z).map_err(err)?).map_err(err)?;
                        ensure(l == r, || format!("associativity fails on {}", g))?;
                        triples += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "100 bicharacters, {triples} associative triples, extraction round trips"
    ))
}

fn criterion_6() -> Check {
    let inst = instantiate(&"quad:h:2:lie".parse().map_err(err)?).map_err(err)?;
    let alg = inst.build_algebra().map_err(err)?;
    let reduced = inst
        .build_reduced_algebra()
        .map_err(err)?
        .ok_or("no reduction")?;
    let (rsys, p) = inst.reduction.as_ref().ok_or("no reduction")?;
    ensure(inst.system.len() == 15 && rsys.len() == 15, || {
        format!("|R| = {}, |R̄| = {}", inst.system.len(), rsys.len())
    })?;
    ensure(rsys.is_reduced(), || "reduced system has a radical".into())?;
    let full: BTreeSet<GroupElem> = rsys.group().elements().filter(|g| !g.is_zero()).collect();
    ensure(*rsys.roots() == full, || {
        "reduced roots are not G∖{0}".into()
    })?;
    let map = alg.hom_onto_reduction(&reduced, p).map_err(err)?;
    ensure(map.is_isomorphism(), || {
        "reduction map is not bijective".into()
    })?;
    let target = instantiate(&"nonsingular:2,2:lie".parse().map_err(err)?).map_err(err)?;
    let target_alg = target.build_algebra().map_err(err)?;
    let id = identify(&target_alg, &target).map_err(err)?;
    ensure(id.matches(), || {
        format!("reduced algebra not identified: {id}")
    })?;
    Ok(format!(
        "15 = 15 roots, structure constants preserved, reduced algebra is {}",
        id.expected
    ))
}

fn criterion_7() -> Check {
    for m in 0..=1u8 {
        for k in 1..=3 {
            let s = involution_support(m, k).map_err(err)?;
            ensure(s.agree(), || format!("m={m} k={k}: supports disagree"))?;
            let total = s.skew_by_matrix.len() + s.symmetric_by_matrix.len();
            ensure(total == 1 << (2 * k), || {
                format!("m={m} k={k}: not a partition")
            })?;
            ensure(s.skew_by_matrix.is_disjoint(&s.symmetric_by_matrix), || {
                "overlap".into()
            })?;
        }
    }
    Ok("6 (m, k) pairs agree".into())
}

fn brute_force_classes(
    beta: &Bicharacter,
    kind: Kind,
) -> std::result::Result<Vec<SkewRootSystem>, String> {
    let elems: Vec<GroupElem> = beta.group().elements().collect();
    let mut valid = Vec::new();
    for mask in 0u32..(1 << elems.len()) {
        let r: BTreeSet<GroupElem> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i].clone())
            .collect();
        if validate(kind, beta, &r).is_ok() {
            valid.push(SkewRootSystem::new(kind, beta.clone(), r).map_err(err)?);
        }
    }
    // classes by pairwise isomorphism
    let mut reps: Vec<SkewRootSystem> = Vec::new();
    for s in valid {
        let mut found = false;
        for r in &reps {
            if isomorphism(r, &s, DEFAULT_ENUMERATION_BUDGET)
                .map_err(err)?
                .is_some()
            {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(s);
        }
    }
    Ok(reps)
}

fn criterion_8() -> Check {
    let budget = DEFAULT_ENUMERATION_BUDGET;
    let beta = nonsingular_bicharacter(&[2]).map_err(err)?;
    for (kind, expected) in [(Kind::Lie, 1), (Kind::Jordan, 2)] {
        let systems = enumerate_systems(&beta, kind, budget).map_err(err)?;
        let classes = classify(&systems, budget).map_err(err)?;
        let brute = brute_force_classes(&beta, kind)?;
        ensure(classes.len() == expected && brute.len() == expected, || {
            format!(
                "{kind}: census {} classes, brute force {}",
                classes.len(),
                brute.len()
            )
        })?;
        let sizes: BTreeSet<usize> = classes.iter().map(|c| c.representative.len()).collect();
        let brute_sizes: BTreeSet<usize> = brute.iter().map(SkewRootSystem::len).collect();
        ensure(sizes == brute_sizes, || {
            format!("{kind}: class sizes {sizes:?} vs {brute_sizes:?}")
        })?;
    }
    let beta4 = nonsingular_bicharacter(&[2, 2]).map_err(err)?;
    let mut realized = 0;
    for kind in [Kind::Lie, Kind::Jordan] {
        let systems = enumerate_systems(&beta4, kind, budget).map_err(err)?;
        let classes = classify(&systems, budget).map_err(err)?;
        for q in [QuadKind::F0, QuadKind::F1] {
            let target = family_quadratic(q, 2, kind).map_err(err)?;
            let mut hit = false;
            for c in &classes {
                if c.representative.len() == target.len()
                    && isomorphism(&c.representative, &target, budget)
                        .map_err(err)?
                        .is_some()
                {
                    hit = true;
                    break;
                }
            }
            ensure(hit, || format!("{q} {kind} k=2 not in the census"))?;
            realized += 1;
        }
    }
    Ok(format!("Z2^2: 1 Lie and 2 Jordan classes (brute force agrees); Z2^4 census realizes {realized} quadratic systems"))
}

fn criterion_9(all: &[Built]) -> Check {
    let (mut lie, mut jordan) = (0, 0);
    for b in all {
        match b.alg.kind() {
            Kind::Lie if b.alg.dim() <= 16 => {
                ensure(b.alg.homogeneous_semisimple().map_err(err)?, || {
                    format!("{}: some ad u_a is not semisimple", b.inst.name)
                })?;
                lie += 1;
            }
            Kind::Jordan => {
                ensure(b.alg.homogeneous_semisimple().map_err(err)?, || {
                    format!("{}: some u_g has no inverse", b.inst.name)
                })?;
                jordan += 1;
            }
            Kind::Lie => {}
        }
    }
    Ok(format!(
        "{lie} Lie and {jordan} Jordan algebras homogeneous semisimple"
    ))
}

fn report(id: usize, title: &str, limit: Duration, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    let (tag, detail) = match &outcome {
        Ok(d) if within => ("PASS", d.clone()),
        Ok(d) => ("FAIL", format!("{d}; took longer than {:?}", limit)),
        Err(e) => ("FAIL", e.clone()),
    };
    println!(
        "criterion {id} [{tag}] {title}: {detail} ({:.2}s)",
        elapsed.as_secs_f64()
    );
    tag == "PASS"
}

fn main() -> ExitCode {
    let mut ok = true;
    ok &= report(1, "cardinality table", Duration::from_secs(1), criterion_1);
    let start = Instant::now();
    let built = match build_all(&fixtures()) {
        Ok(b) => b,
        Err(e) => {
            println!("fixture construction failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    let build_time = start.elapsed();
    ok &= report(
        2,
        "dimension identifications",
        Duration::from_secs(120).saturating_sub(build_time),
        || criterion_2(&built),
    );
    ok &= report(
        3,
        "nondegenerate invariant forms",
        Duration::from_secs(300),
        || criterion_3(&built),
    );
    ok &= report(4, "simplicity", Duration::from_secs(300), || {
        criterion_4(&built)
    });
    ok &= report(5, "cocycle layer", Duration::from_secs(60), criterion_5);
    ok &= report(6, "reduction", Duration::from_secs(10), criterion_6);
    ok &= report(
        7,
        "involution supports",
        Duration::from_secs(60),
        criterion_7,
    );
    ok &= report(
        8,
        "enumeration oracle",
        Duration::from_secs(120),
        criterion_8,
    );
    ok &= report(
        9,
        "homogeneous semisimplicity",
        Duration::from_secs(300),
        || criterion_9(&built),
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
