use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use skewroot::abgroup::{FinAbGroup, GroupElem, GroupHom, DEFAULT_ENUMERATION_BUDGET};
use skewroot::families::{clifford_bicharacter, family_clifford, family_quadratic, QuadKind};
use skewroot::skewroot::{
    classify, enumerate_systems, isomorphism, validate, Axiom, Kind, SkewRootSystem,
};
use skewroot::symplectic::Bicharacter;

const BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

fn e(group: &FinAbGroup, v: &[i64]) -> GroupElem {
    group.elem(v).unwrap()
}

fn sl2_beta() -> Bicharacter {
    Bicharacter::from_lower_triangle(FinAbGroup::elementary_two(2), 2, &[vec![1]]).unwrap()
}

fn sl2() -> SkewRootSystem {
    let b = sl2_beta();
    let g = b.group().clone();
    let roots: Vec<_> = g.elements().filter(|x| !x.is_zero()).collect();
    SkewRootSystem::new(Kind::Lie, b, roots).unwrap()
}

#[test]
fn validate_examples() {
    assert!(sl2().validate().is_ok());

    let b = sl2_beta();
    let g = b.group().clone();
    let r: BTreeSet<_> = [e(&g, &[1, 0]), e(&g, &[0, 1])].into_iter().collect();
    let report = validate(Kind::Lie, &b, &r);
    let v = report
        .violations
        .iter()
        .find(|v| v.axiom == Axiom::Srsl2)
        .unwrap();
    assert_eq!(v.witness.len(), 2);
    assert!(SkewRootSystem::new(Kind::Lie, b, r).is_err());

    let b3 = clifford_bicharacter(3).unwrap();
    let g3 = b3.group().clone();
    let r: BTreeSet<_> = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .iter()
        .map(|v| e(&g3, v))
        .collect();
    assert!(validate(Kind::Jordan, &b3, &r).is_ok());
}

#[test]
fn validate_reports_each_axiom() {
    let b3 = clifford_bicharacter(3).unwrap();
    let g3 = b3.group().clone();
    // (1,1,1) spans the radical; the set generates nothing else.
    let r: BTreeSet<_> = [e(&g3, &[1, 1, 1])].into_iter().collect();
    let axioms: Vec<Axiom> = validate(Kind::Lie, &b3, &r)
        .violations
        .iter()
        .map(|v| v.axiom)
        .collect();
    assert!(axioms.contains(&Axiom::Srsl0Radical));
    assert!(axioms.contains(&Axiom::Srsl0Generation));

    let g = FinAbGroup::new(&[4]).unwrap();
    let b = Bicharacter::trivial(g.clone());
    let r: BTreeSet<_> = [e(&g, &[0]), e(&g, &[1])].into_iter().collect();
    let axioms: Vec<Axiom> = validate(Kind::Jordan, &b, &r)
        .violations
        .iter()
        .map(|v| v.axiom)
        .collect();
    assert!(axioms.contains(&Axiom::Srsj1));
    assert!(axioms.contains(&Axiom::Srsj2));
}

#[test]
fn text_form_round_trip() {
    let s = sl2();
    let back = SkewRootSystem::parse_text(s.beta().clone(), &s.to_text()).unwrap();
    assert_eq!(back.roots(), s.roots());
    assert_eq!(back.kind(), Kind::Lie);
    assert!(SkewRootSystem::parse_text(s.beta().clone(), "lie\n(2,0)\n").is_err());
    assert!(SkewRootSystem::parse_text(s.beta().clone(), "lia\n(1,0)\n").is_err());
}

#[test]
fn graph_components() {
    let s = sl2();
    assert_eq!(s.components().unwrap().len(), 1);
    assert!(s.is_indecomposable().unwrap());
    assert_eq!(s.graph().unwrap().edge_count(), 3);
    for n in 3..=6 {
        let c = family_clifford(n, Kind::Lie).unwrap();
        assert!(c.graph().unwrap().is_connected(), "n = {n}");
    }
}

#[test]
fn direct_sums() {
    let d = sl2().direct_sum(&sl2()).unwrap();
    assert_eq!(d.len(), 6);
    assert_eq!(d.group().orders(), &[2, 2, 2, 2]);
    assert!(d.validate().is_ok());
    assert_eq!(d.components().unwrap().len(), 2);
    assert!(!d.is_indecomposable().unwrap());

    let c = family_clifford(3, Kind::Lie).unwrap();
    let cc = c.direct_sum(&c).unwrap();
    let sizes: Vec<usize> = cc.components().unwrap().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![3, 3]);

    let j = family_clifford(3, Kind::Jordan).unwrap();
    assert!(j.direct_sum(&j).is_err());
}

#[test]
fn reduce_by_trivial_subgroup() {
    let s = family_clifford(4, Kind::Lie).unwrap();
    let (r, p) = s.reduce(&s.group().trivial_subgroup()).unwrap();
    assert_eq!(r.group(), s.group());
    assert_eq!(r.roots(), s.roots());
    assert_eq!(p, GroupHom::identity(s.group()));
}

#[test]
fn reduce_clifford_four() {
    let s = family_clifford(4, Kind::Lie).unwrap();
    assert!(!s.is_reduced());
    assert_eq!(s.radical(BUDGET).unwrap().len(), 2);
    assert!(!s.indecomposability_certified());
    let (r, p) = s.reduce_fully(BUDGET).unwrap();
    assert!(r.is_reduced());
    assert!(r.indecomposability_certified());
    assert!(r.len() <= s.len());
    assert_eq!(r.group().size() * 2, s.group().size());
    let image: BTreeSet<_> = s.roots().iter().map(|x| p.apply(x).unwrap()).collect();
    assert_eq!(&image, r.roots());

    let stranger = s
        .group()
        .subgroup_generated(&[s.roots().iter().next().unwrap().clone()], BUDGET)
        .unwrap();
    assert!(s.reduce(&stranger).is_err());
}

#[test]
fn reduce_quadratic_h() {
    let s = family_quadratic(QuadKind::H, 2, Kind::Lie).unwrap();
    let (r, _) = s.reduce_fully(BUDGET).unwrap();
    assert_eq!(r.group(), &FinAbGroup::elementary_two(4));
    assert_eq!(r.len(), 15);
    assert_eq!(s.len(), 15);
}

/// sl2-type roots on the first two coordinates, arbitrary on a trivial
/// `ℤ₂²` factor; the radical is that factor.
fn padded_sl2() -> SkewRootSystem {
    let g = FinAbGroup::elementary_two(4);
    let beta =
        Bicharacter::from_lower_triangle(g.clone(), 2, &[vec![1], vec![0, 0], vec![0, 0, 0]])
            .unwrap();
    let roots: Vec<_> = g
        .elements()
        .filter(|x| x.residues()[..2] != [0, 0])
        .collect();
    SkewRootSystem::new(Kind::Lie, beta, roots).unwrap()
}

#[test]
fn nested_reductions_agree() {
    let s = padded_sl2();
    let g = s.group().clone();
    let h2 = s.radical(BUDGET).unwrap();
    assert_eq!(h2.len(), 4);
    let h1 = g
        .subgroup_generated(&[e(&g, &[0, 0, 1, 0])], BUDGET)
        .unwrap();
    let (s1, p1) = s.reduce(&h1).unwrap();
    let image = s1
        .group()
        .subgroup_from_elements(h2.iter().map(|x| p1.apply(x).unwrap()))
        .unwrap();
    let (s12, _) = s1.reduce(&image).unwrap();
    let (s2, _) = s.reduce(&h2).unwrap();
    assert_eq!(s12.len(), 3);
    assert!(isomorphism(&s12, &s2, BUDGET).unwrap().is_some());
    assert!(isomorphism(&s12, &sl2(), BUDGET).unwrap().is_some());
}

#[test]
fn enumerate_examples() {
    let b = sl2_beta();
    let lie = enumerate_systems(&b, Kind::Lie, BUDGET).unwrap();
    assert_eq!(lie.len(), 1);
    assert_eq!(lie[0].len(), 3);

    let jordan = enumerate_systems(&b, Kind::Jordan, BUDGET).unwrap();
    assert_eq!(jordan.len(), 4);
    let classes = classify(&jordan, BUDGET).unwrap();
    let mut sizes: Vec<(usize, usize)> = classes
        .iter()
        .map(|c| (c.representative.len(), c.members.len()))
        .collect();
    sizes.sort();
    assert_eq!(sizes, vec![(3, 3), (4, 1)]);

    let z2 = FinAbGroup::new(&[2]).unwrap();
    assert!(
        enumerate_systems(&Bicharacter::trivial(z2), Kind::Lie, BUDGET)
            .unwrap()
            .is_empty()
    );
}

#[test]
fn enumeration_budget() {
    let g = FinAbGroup::elementary_two(13);
    assert!(enumerate_systems(&Bicharacter::trivial(g), Kind::Lie, BUDGET).is_err());
}

/// Every subset of `G` run through `validate`.
fn brute_force(beta: &Bicharacter, kind: Kind) -> BTreeSet<BTreeSet<GroupElem>> {
    let elems: Vec<_> = beta.group().elements().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << elems.len()) {
        let r: BTreeSet<_> = (0..elems.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| elems[i].clone())
            .collect();
        if !r.is_empty() && validate(kind, beta, &r).is_ok() {
            out.insert(r);
        }
    }
    out
}

/// Orthogonal splitting by exhaustive bipartition of `R` itself.
fn splits(s: &SkewRootSystem) -> bool {
    let r: Vec<_> = s.roots().iter().cloned().collect();
    let n = r.len();
    (1u32..(1 << (n - 1))).any(|mask| {
        (0..n).all(|i| {
            (0..n).all(|j| {
                (mask >> i & 1) == (mask >> j & 1) || s.beta().eval(&r[i], &r[j]).unwrap() == 0
            })
        })
    })
}

#[test]
fn connectivity_matches_bipartition_for_reduced_systems() {
    let beta = sl2_beta().orthogonal_sum(&sl2_beta()).unwrap();
    let systems = enumerate_systems(&beta, Kind::Lie, BUDGET).unwrap();
    assert!(!systems.is_empty());
    let mut checked = 0;
    for s in systems.iter().filter(|s| s.len() <= 12) {
        assert!(s.is_reduced());
        assert_eq!(
            s.is_indecomposable().unwrap(),
            !splits(s),
            "{}",
            s.to_text()
        );
        checked += 1;
    }
    assert!(checked > 0);
    for s in [sl2(), sl2().direct_sum(&sl2()).unwrap()] {
        assert_eq!(s.is_indecomposable().unwrap(), !splits(&s));
    }
}

/// Random automorphism `ψ` of `ℤ₂ⁿ` and the transported system `S'` with
/// `β'(x, y) = β(ψx, ψy)` and `R' = ψ⁻¹(R)`, so `ψ: S' -> S`.
fn transport(s: &SkewRootSystem, rng: &mut StdRng) -> SkewRootSystem {
    let g = s.group().clone();
    let n = g.rank();
    let psi = loop {
        let images: Vec<_> = (0..n)
            .map(|_| {
                let v: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2)).collect();
                g.elem(&v).unwrap()
            })
            .collect();
        let h = GroupHom::new(g.clone(), g.clone(), images).unwrap();
        if h.is_surjective(BUDGET).unwrap() {
            break h;
        }
    };
    let beta = s.beta().pull_back(&psi).unwrap();
    let roots: Vec<_> = g
        .elements()
        .filter(|x| s.roots().contains(&psi.apply(x).unwrap()))
        .collect();
    SkewRootSystem::new(s.kind(), beta, roots).unwrap()
}

#[test]
fn classification_is_a_congruence() {
    let mut rng = StdRng::seed_from_u64(7);
    let bases = [
        family_quadratic(QuadKind::F0, 2, Kind::Lie).unwrap(),
        family_quadratic(QuadKind::F1, 2, Kind::Lie).unwrap(),
        family_quadratic(QuadKind::F0, 2, Kind::Jordan).unwrap(),
        sl2().direct_sum(&sl2()).unwrap(),
    ];
    let mut all = Vec::new();
    let mut origin = Vec::new();
    for (i, s) in bases.iter().enumerate() {
        all.push(s.clone());
        origin.push(i);
        for _ in 0..2 {
            all.push(transport(s, &mut rng));
            origin.push(i);
        }
    }
    // f0 at k = 2 is so4, the same system as sl2 ⊕ sl2.
    assert!(isomorphism(&bases[0], &bases[3], BUDGET).unwrap().is_some());
    let same =
        |i: usize, j: usize| i == j || isomorphism(&bases[i], &bases[j], BUDGET).unwrap().is_some();
    let classes = classify(&all, BUDGET).unwrap();
    assert_eq!(classes.len(), 3);
    for c in &classes {
        let from: Vec<_> = c.members.iter().map(|&m| origin[m]).collect();
        assert!(from.iter().all(|&i| from.iter().all(|&j| same(i, j))));
        for &m in &c.members {
            assert_eq!(all[m].invariants().unwrap(), c.invariants);
            assert!(isomorphism(&all[m], &c.representative, BUDGET)
                .unwrap()
                .is_some());
        }
    }
}

fn arb_small_beta() -> impl Strategy<Value = Bicharacter> {
    prop::sample::select(vec![
        vec![2u64, 2],
        vec![2, 2, 2],
        vec![4, 2],
        vec![3, 3],
        vec![4, 4],
        vec![2, 6],
    ])
    .prop_flat_map(|orders| (Just(orders), prop::collection::vec(any::<u32>(), 3)))
    .prop_map(|(orders, raw)| {
        let g = FinAbGroup::new(&orders).unwrap();
        let o: Vec<u64> = g.orders().iter().map(|&x| x as u64).collect();
        let n = g.exponent() as u64;
        let k = o.len();
        let mut rows = Vec::new();
        let mut t = 0;
        for i in 1..k {
            let mut row = Vec::new();
            for j in 0..i {
                let step = n / num_integer::gcd(o[i], o[j]);
                row.push(((raw[t] as u64 % (n / step)) * step) as i64);
                t += 1;
            }
            rows.push(row);
        }
        Bicharacter::from_lower_triangle(g, n as u32, &rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn enumeration_matches_brute_force(beta in arb_small_beta(), lie in any::<bool>()) {
        let kind = if lie { Kind::Lie } else { Kind::Jordan };
        let found: BTreeSet<_> = enumerate_systems(&beta, kind, BUDGET)
            .unwrap()
            .into_iter()
            .map(|s| s.roots().clone())
            .collect();
        prop_assert_eq!(found, brute_force(&beta, kind));
    }

    #[test]
    fn valid_systems_satisfy_basic_invariants(beta in arb_small_beta(), lie in any::<bool>()) {
        let kind = if lie { Kind::Lie } else { Kind::Jordan };
        let g = beta.group().clone();
        let rad = beta.radical(BUDGET).unwrap();
        for s in enumerate_systems(&beta, kind, BUDGET).unwrap() {
            for r in s.roots() {
                prop_assert!(s.roots().contains(&g.neg(r).unwrap()));
            }
            match kind {
                Kind::Lie => prop_assert!(s.roots().iter().all(|r| !rad.contains(r))),
                Kind::Jordan => {
                    prop_assert!(s.roots().contains(&g.zero()));
                    prop_assert!(s.is_indecomposable().unwrap());
                }
            }
        }
    }
}
