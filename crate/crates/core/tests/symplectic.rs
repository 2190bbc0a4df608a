use proptest::prelude::*;

use skewroot::abgroup::{FinAbGroup, GroupElem, DEFAULT_ENUMERATION_BUDGET};
use skewroot::cyclo::CycloNum;
use skewroot::families::{clifford_bicharacter, pauli_model};
use skewroot::symplectic::{extract_bicharacter, Bicharacter, Cocycle, TwistedGroupAlgebra};

const BUDGET: u64 = DEFAULT_ENUMERATION_BUDGET;

fn e(group: &FinAbGroup, v: &[i64]) -> GroupElem {
    group.elem(v).unwrap()
}

fn sl2_beta() -> Bicharacter {
    Bicharacter::from_lower_triangle(FinAbGroup::elementary_two(2), 2, &[vec![1]]).unwrap()
}

#[test]
fn values_on_z2_squared() {
    let b = sl2_beta();
    let g = b.group().clone();
    assert_eq!(b.eval(&e(&g, &[1, 0]), &e(&g, &[0, 1])).unwrap(), 1);
    assert_eq!(
        b.value(&e(&g, &[1, 0]), &e(&g, &[0, 1])).unwrap(),
        CycloNum::from_integer(2, -1)
    );
    assert_eq!(b.eval(&e(&g, &[1, 1]), &e(&g, &[1, 1])).unwrap(), 0);
    assert!(b.is_nonsingular(BUDGET).unwrap());
}

#[test]
fn clifford_radicals() {
    let b3 = clifford_bicharacter(3).unwrap();
    let g3 = b3.group().clone();
    let rad = b3.radical(BUDGET).unwrap();
    assert_eq!(rad.len(), 2);
    assert!(rad.contains(&e(&g3, &[1, 1, 1])));
    assert!(clifford_bicharacter(4)
        .unwrap()
        .is_nonsingular(BUDGET)
        .unwrap());
}

#[test]
fn trivial_bicharacter_has_full_radical() {
    let g = FinAbGroup::new(&[3, 3]).unwrap();
    let b = Bicharacter::trivial(g.clone());
    assert_eq!(b.radical(BUDGET).unwrap().len(), 9);
    assert!(!b.is_nonsingular(BUDGET).unwrap());
}

#[test]
fn standard_cocycle_formula() {
    let g = FinAbGroup::new(&[4, 4]).unwrap();
    let b = Bicharacter::from_lower_triangle(g.clone(), 4, &[vec![1]]).unwrap();
    let xi = Cocycle::standard(&b);
    // ξ(a, b) = ζ^{m_10 a_1 b_0}
    for x in g.elements() {
        for y in g.elements() {
            let want = (x.residues()[1] * y.residues()[0]) % 4;
            assert_eq!(xi.eval(&x, &y).unwrap(), want);
        }
    }
    assert_eq!(xi.psi(), b);
}

#[test]
fn symmetric_cocycle_has_trivial_psi() {
    let g = FinAbGroup::new(&[2, 4]).unwrap();
    let xi = Cocycle::new(g.clone(), 4, vec![vec![2, 2], vec![2, 1]]).unwrap();
    assert_eq!(xi.psi(), Bicharacter::trivial(g));
}

#[test]
fn ill_defined_inputs_are_rejected() {
    let g = FinAbGroup::new(&[2, 4]).unwrap();
    assert!(Cocycle::new(g.clone(), 4, vec![vec![1, 0], vec![0, 0]]).is_err());
    assert!(Bicharacter::from_lower_triangle(g.clone(), 4, &[vec![1]]).is_err());
    assert!(Bicharacter::from_lower_triangle(g, 4, &[vec![2], vec![1]]).is_err());
}

#[test]
fn orthogonal_sum_is_block_diagonal() {
    let b = sl2_beta();
    let c =
        Bicharacter::from_lower_triangle(FinAbGroup::new(&[3, 3]).unwrap(), 3, &[vec![1]]).unwrap();
    let s = b.orthogonal_sum(&c).unwrap();
    assert_eq!(s.order(), 6);
    let g = s.group().clone();
    assert_eq!(g.orders(), &[2, 2, 3, 3]);
    assert_eq!(
        s.eval(&e(&g, &[1, 0, 0, 0]), &e(&g, &[0, 1, 0, 0]))
            .unwrap(),
        3
    );
    assert_eq!(
        s.eval(&e(&g, &[0, 0, 0, 1]), &e(&g, &[0, 0, 1, 0]))
            .unwrap(),
        2
    );
    assert_eq!(
        s.eval(&e(&g, &[1, 0, 0, 0]), &e(&g, &[0, 0, 1, 0]))
            .unwrap(),
        0
    );
}

#[test]
fn twisted_group_algebra_basics() {
    let g = FinAbGroup::new(&[4, 4]).unwrap();
    let b = Bicharacter::from_lower_triangle(g.clone(), 4, &[vec![1]]).unwrap();
    let tga = TwistedGroupAlgebra::new(Cocycle::standard(&b));
    let a = e(&g, &[1, 3]);
    let neg = g.neg(&a).unwrap();
    let prod = tga
        .basis(&a)
        .unwrap()
        .mul(&tga.basis(&neg).unwrap())
        .unwrap();
    let xi = tga.cocycle().value(&a, &neg).unwrap();
    assert_eq!(prod, tga.identity().scale(&xi));
    let inv = tga.basis_inverse(&a).unwrap();
    assert_eq!(tga.basis(&a).unwrap().mul(&inv).unwrap(), tga.identity());
    for x in g.elements() {
        let u = tga.basis(&x).unwrap();
        assert_eq!(tga.identity().mul(&u).unwrap(), u);
        assert_eq!(u.mul(&tga.identity()).unwrap(), u);
    }
}

/// Under the standard cocycle `u_g` is the ordered monomial in the generators,
/// and the generators commute up to `β` and satisfy `u_i^{n_i} = 1`.
#[test]
fn standard_cocycle_presentation() {
    let g = FinAbGroup::new(&[2, 4, 4]).unwrap();
    let b = Bicharacter::from_lower_triangle(g.clone(), 4, &[vec![2], vec![2, 1]]).unwrap();
    let tga = TwistedGroupAlgebra::new(Cocycle::standard(&b));
    let u: Vec<_> = g
        .generators()
        .iter()
        .map(|a| tga.basis(a).unwrap())
        .collect();
    for (i, ui) in u.iter().enumerate() {
        let mut p = tga.identity();
        for _ in 0..g.orders()[i] {
            p = p.mul(ui).unwrap();
        }
        assert_eq!(p, tga.identity());
        for (j, uj) in u.iter().enumerate() {
            let lhs = ui.mul(uj).unwrap();
            let beta = b.value(&g.generator(i), &g.generator(j)).unwrap();
            assert_eq!(lhs, uj.mul(ui).unwrap().scale(&beta));
        }
    }
    for x in g.elements() {
        let mut p = tga.identity();
        for (i, &c) in x.residues().iter().enumerate() {
            for _ in 0..c {
                p = p.mul(&u[i]).unwrap();
            }
        }
        assert_eq!(p, tga.basis(&x).unwrap());
    }
}

#[test]
fn extract_from_matrix_units() {
    let pauli = pauli_model(&[2]).unwrap();
    let b = extract_bicharacter(&pauli, BUDGET).unwrap();
    assert_eq!(b, sl2_beta());
    let g = b.group().clone();
    assert_eq!(
        b.value(&e(&g, &[1, 0]), &e(&g, &[0, 1])).unwrap(),
        CycloNum::from_integer(2, -1)
    );
}

#[test]
fn extract_from_group_algebra_is_trivial() {
    let g = FinAbGroup::new(&[2, 3, 4]).unwrap();
    let tga = TwistedGroupAlgebra::new(Cocycle::trivial(g.clone()));
    assert_eq!(
        extract_bicharacter(&tga, BUDGET).unwrap(),
        Bicharacter::trivial(g)
    );
}

#[test]
fn extract_from_pauli_products() {
    let p = pauli_model(&[2, 2]).unwrap();
    let b = extract_bicharacter(&p, BUDGET).unwrap();
    assert_eq!(b, sl2_beta().orthogonal_sum(&sl2_beta()).unwrap());
}

#[test]
fn text_round_trip() {
    let g = FinAbGroup::new(&[6, 6, 2]).unwrap();
    let b = Bicharacter::from_lower_triangle(g.clone(), 6, &[vec![1], vec![3, 0]]).unwrap();
    assert_eq!(Bicharacter::parse_text(g.clone(), &b.to_text()).unwrap(), b);
    assert!(Bicharacter::parse_text(g, "M=6\n1\n3 0\n").is_err());
}

const ORDERS: [u64; 4] = [2, 3, 4, 6];

/// A random alternating bicharacter on a product of cyclic groups of orders in `ORDERS`.
fn arb_bicharacter() -> impl Strategy<Value = Bicharacter> {
    prop::collection::vec(prop::sample::select(&ORDERS[..]), 1..=3)
        .prop_flat_map(|orders| {
            let k = orders.len();
            (Just(orders), prop::collection::vec(any::<u32>(), k * k))
        })
        .prop_map(|(orders, raw)| {
            let g = FinAbGroup::new(&orders).unwrap();
            let o: Vec<u64> = g.orders().iter().map(|&x| x as u64).collect();
            let n = g.exponent() as u64;
            let k = o.len();
            let mut m = vec![vec![0i64; k]; k];
            for i in 0..k {
                for j in 0..i {
                    let step = n / num_integer::gcd(o[i], o[j]);
                    let x = (raw[i * k + j] as u64 % (n / step)) * step;
                    m[i][j] = x as i64;
                    m[j][i] = -(x as i64);
                }
            }
            Bicharacter::new(g, n as u32, m).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bicharacters_are_alternating_and_bilinear(b in arb_bicharacter()) {
        let g = b.group().clone();
        let n = b.order();
        let elems: Vec<_> = g.elements().collect();
        for x in &elems {
            prop_assert_eq!(b.eval(x, x).unwrap(), 0);
            for y in &elems {
                prop_assert_eq!((b.eval(x, y).unwrap() + b.eval(y, x).unwrap()) % n, 0);
                for z in elems.iter().step_by(3) {
                    let lhs = b.eval(&g.add(x, y).unwrap(), z).unwrap();
                    prop_assert_eq!(lhs, (b.eval(x, z).unwrap() + b.eval(y, z).unwrap()) % n);
                }
            }
        }
    }

    #[test]
    fn extract_inverts_standard_cocycle(b in arb_bicharacter()) {
        let tga = TwistedGroupAlgebra::new(Cocycle::standard(&b));
        prop_assert_eq!(extract_bicharacter(&tga, BUDGET).unwrap(), b);
    }

    #[test]
    fn psi_of_product_is_orthogonal_sum(b in arb_bicharacter(), c in arb_bicharacter()) {
        let xi = Cocycle::standard(&b).product(&Cocycle::standard(&c)).unwrap();
        prop_assert_eq!(xi.psi(), b.orthogonal_sum(&c).unwrap());
    }

    #[test]
    fn radical_is_orthogonal_to_everything(b in arb_bicharacter()) {
        let g = b.group().clone();
        let rad = b.radical(BUDGET).unwrap();
        for r in rad.iter() {
            for x in g.elements() {
                prop_assert_eq!(b.eval(r, &x).unwrap(), 0);
            }
        }
        for x in g.elements().filter(|x| !rad.contains(x)) {
            prop_assert!(g.elements().any(|y| b.eval(&x, &y).unwrap() != 0));
        }
    }
}
