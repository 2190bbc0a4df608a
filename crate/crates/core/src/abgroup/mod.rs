//! Finite abelian groups `Z_{n_1} ⊕ … ⊕ Z_{n_k}` with explicit residue
//! vectors, subgroup closure, and quotients/subgroup presentations through the
//! Smith normal form.

mod snf;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use snf::{smith, IntMatrix};

/// Default cap on the number of group elements an operation may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 20;

/// Residue vector `(l_1, …, l_k)` with `0 <= l_i < n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(Vec<u32>);

impl GroupElem {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `(l1,l2,...)`. The result is not yet tied to a group; use
/// [`FinAbGroup::elem`] to reduce and check it.
pub fn parse_tuple(s: &str) -> Result<Vec<i64>> {
    let body = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected `(l1,...,lk)`, got `{s}`")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad residue `{x}` in `{s}`")))
        })
        .collect()
}

/// A finite abelian group given as a direct sum of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    orders: Vec<u32>,
    exponent: u32,
    size: u64,
}

impl FinAbGroup {
    /// Builds `⊕ Z_{n_i}`. Order-1 factors are dropped; order 0 (a free part)
    /// is rejected.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup(
                "free cyclic factors are not supported".into(),
            ));
        }
        let mut size: u64 = 1;
        let mut exponent: u64 = 1;
        let mut kept = Vec::new();
        for &n in orders.iter().filter(|&&n| n != 1) {
            size = size
                .checked_mul(n)
                .filter(|&s| s < 1 << 32)
                .ok_or_else(|| Error::InvalidGroup("group order must stay below 2^32".into()))?;
            exponent = num_integer::lcm(exponent, n);
            kept.push(n as u32);
        }
        Ok(FinAbGroup {
            orders: kept,
            exponent: exponent as u32,
            size,
        })
    }

    pub fn elementary_two(rank: usize) -> Self {
        Self::new(&vec![2; rank]).expect("small elementary abelian 2-group")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn zero(&self) -> GroupElem {
        GroupElem(vec![0; self.rank()])
    }

    /// The standard generator `a_i`.
    pub fn generator(&self, i: usize) -> GroupElem {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.orders[i];
        GroupElem(v)
    }

    pub fn generators(&self) -> Vec<GroupElem> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    /// Reduces an integer vector into the group.
    pub fn elem(&self, residues: &[i64]) -> Result<GroupElem> {
        if residues.len() != self.rank() {
            return Err(Error::MismatchedGroups(format!(
                "element of length {} in a group of rank {}",
                residues.len(),
                self.rank()
            )));
        }
        Ok(GroupElem(
            residues
                .iter()
                .zip(&self.orders)
                .map(|(&x, &n)| x.rem_euclid(n as i64) as u32)
                .collect(),
        ))
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        a.0.len() == self.rank() && a.0.iter().zip(&self.orders).all(|(x, n)| x < n)
    }

    fn check(&self, a: &GroupElem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::MismatchedGroups(format!(
                "{a} is not an element of {self}"
            )))
        }
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub(crate) fn add_unchecked(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub(crate) fn neg_unchecked(&self, a: &GroupElem) -> GroupElem {
        GroupElem(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
        let nb = self.neg(b)?;
        self.add(a, &nb)
    }

    pub fn scalar_mul(&self, m: i64, a: &GroupElem) -> Result<GroupElem> {
        self.check(a)?;
        let v: Vec<i64> = a.0.iter().map(|&x| m * x as i64).collect();
        self.elem(&v)
    }

    /// Least `m >= 1` with `m·a = 0`.
    pub fn elem_order(&self, a: &GroupElem) -> Result<u64> {
        self.check(a)?;
        Ok(a.0.iter().zip(&self.orders).fold(1u64, |acc, (&x, &n)| {
            let g = num_integer::gcd(x, n);
            num_integer::lcm(acc, (n / g) as u64)
        }))
    }

    /// Mixed-radix index; the first coordinate is most significant, so index
    /// order is lexicographic order.
    pub fn index_of(&self, a: &GroupElem) -> usize {
        a.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn elem_at(&self, mut index: usize) -> GroupElem {
        let mut v = vec![0u32; self.rank()];
        for (slot, &n) in v.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        GroupElem(v)
    }

    fn within_budget(&self, budget: u64, what: &'static str) -> Result<()> {
        if self.size > budget {
            Err(Error::BudgetExceeded { what, budget })
        } else {
            Ok(())
        }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> + '_ {
        (0..self.size as usize).map(move |i| self.elem_at(i))
    }

    pub fn elements_within(&self, budget: u64) -> Result<Vec<GroupElem>> {
        self.within_budget(budget, "enumerating group elements")?;
        Ok(self.elements().collect())
    }

    /// `self ⊕ other`.
    pub fn direct_sum(&self, other: &FinAbGroup) -> Result<FinAbGroup> {
        let orders: Vec<u64> = self
            .orders
            .iter()
            .chain(&other.orders)
            .map(|&n| n as u64)
            .collect();
        FinAbGroup::new(&orders)
    }

    /// Closure of `gens ∪ {0}` under addition (negation follows in a finite group).
    pub fn subgroup_generated(&self, gens: &[GroupElem], budget: u64) -> Result<Subgroup> {
        for g in gens {
            self.check(g)?;
        }
        let mut seen: BTreeSet<GroupElem> = BTreeSet::new();
        let zero = self.zero();
        seen.insert(zero.clone());
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add_unchecked(&x, g);
                if seen.insert(y.clone()) {
                    if seen.len() as u64 > budget {
                        return Err(Error::BudgetExceeded {
                            what: "generating a subgroup",
                            budget,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Subgroup { elems: seen })
    }

    /// Checks closure of an element set and wraps it as a subgroup.
    pub fn subgroup_from_elements(
        &self,
        elems: impl IntoIterator<Item = GroupElem>,
    ) -> Result<Subgroup> {
        let elems: BTreeSet<GroupElem> = elems.into_iter().collect();
        for e in &elems {
            self.check(e)?;
        }
        if !elems.contains(&self.zero()) {
            return Err(Error::NotASubgroup("missing the identity".into()));
        }
        for a in &elems {
            for b in &elems {
                let s = self.add_unchecked(a, b);
                if !elems.contains(&s) {
                    return Err(Error::NotASubgroup(format!("{a} + {b} = {s} is missing")));
                }
            }
        }
        Ok(Subgroup { elems })
    }

    /// The whole group as a subgroup.
    pub fn full_subgroup(&self, budget: u64) -> Result<Subgroup> {
        Ok(Subgroup {
            elems: self.elements_within(budget)?.into_iter().collect(),
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elems: BTreeSet::from([self.zero()]),
        }
    }

    /// A small generating set of a subgroup, chosen greedily.
    fn generating_set(&self, h: &Subgroup) -> Vec<GroupElem> {
        let mut gens: Vec<GroupElem> = Vec::new();
        let mut span = self.trivial_subgroup();
        for x in h.iter() {
            if !span.contains(x) {
                gens.push(x.clone());
                span = self
                    .subgroup_generated(&gens, u64::MAX)
                    .expect("generators lie in the group");
            }
        }
        gens
    }

    fn relation_rows(&self) -> IntMatrix {
        let k = self.rank();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i == j { self.orders[i] as i128 } else { 0 })
                    .collect()
            })
            .collect()
    }

    /// `G/H` in cyclic-decomposition form together with the projection.
    pub fn quotient(&self, h: &Subgroup) -> Result<(FinAbGroup, GroupHom)> {
        for x in h.iter() {
            self.check(x)?;
        }
        self.subgroup_from_elements(h.iter().cloned())?;
        let k = self.rank();
        if k == 0 {
            return Ok((self.clone(), GroupHom::identity(self)));
        }
        // A coordinate subgroup is divided out by dropping its coordinates.
        let support: Vec<bool> = (0..k).map(|i| h.iter().any(|x| x.0[i] != 0)).collect();
        let support_size: u64 = (0..k)
            .filter(|&i| support[i])
            .map(|i| self.orders[i] as u64)
            .product();
        if support_size == h.len() as u64 {
            let kept: Vec<usize> = (0..k).filter(|&i| !support[i]).collect();
            let orders: Vec<u64> = kept.iter().map(|&i| self.orders[i] as u64).collect();
            let quotient = FinAbGroup::new(&orders)?;
            let images = (0..k)
                .map(|i| match kept.iter().position(|&j| j == i) {
                    Some(p) => quotient.generator(p),
                    None => quotient.zero(),
                })
                .collect();
            let proj = GroupHom::new(self.clone(), quotient.clone(), images)?;
            return Ok((quotient, proj));
        }
        let mut rows = self.relation_rows();
        for g in self.generating_set(h) {
            rows.push(g.0.iter().map(|&x| x as i128).collect());
        }
        let s = smith(&rows, k);
        let kept: Vec<usize> = (0..k).filter(|&j| s.diag[j] != 1).collect();
        let orders: Vec<u64> = kept.iter().map(|&j| s.diag[j] as u64).collect();
        let quotient = FinAbGroup::new(&orders)?;
        let images = (0..k)
            .map(|i| {
                let v: Vec<i64> = kept.iter().map(|&j| s.v[i][j] as i64).collect();
                quotient.elem(&v)
            })
            .collect::<Result<Vec<_>>>()?;
        let proj = GroupHom::new(self.clone(), quotient.clone(), images)?;
        Ok((quotient, proj))
    }

    /// Invariant factors `d_1 | d_2 | …` (order-1 factors omitted).
    pub fn canonical_orders(&self) -> Vec<u64> {
        let k = self.rank();
        if k == 0 {
            return Vec::new();
        }
        let s = smith(&self.relation_rows(), k);
        s.diag
            .into_iter()
            .filter(|&d| d != 1)
            .map(|d| d as u64)
            .collect()
    }

    /// A cyclic decomposition `K ≅ H` of a subgroup together with the
    /// embedding `K -> G`.
    pub fn subgroup_presentation(&self, h: &Subgroup) -> Result<(FinAbGroup, GroupHom)> {
        let gens = self.generating_set(h);
        let m = gens.len();
        if m == 0 {
            let trivial = FinAbGroup::new(&[])?;
            let emb = GroupHom::new(trivial.clone(), self.clone(), Vec::new())?;
            return Ok((trivial, emb));
        }
        let k = self.rank();
        // Left kernel of [gens; diag(n)] restricted to the generator coordinates.
        let mut rows: IntMatrix = gens
            .iter()
            .map(|g| g.0.iter().map(|&x| x as i128).collect())
            .collect();
        rows.extend(self.relation_rows());
        let s = smith(&rows, k);
        let rank = s.diag.iter().filter(|&&d| d != 0).count();
        let relations: IntMatrix = s.u[rank..].iter().map(|r| r[..m].to_vec()).collect();
        let s2 = smith(&relations, m);
        let kept: Vec<usize> = (0..m).filter(|&j| s2.diag[j] != 1).collect();
        if kept.iter().any(|&j| s2.diag[j] == 0) {
            return Err(Error::InvalidGroup(
                "subgroup presentation has a free part".into(),
            ));
        }
        let orders: Vec<u64> = kept.iter().map(|&j| s2.diag[j] as u64).collect();
        let pres = FinAbGroup::new(&orders)?;
        let images = kept
            .iter()
            .map(|&j| {
                let mut acc = vec![0i64; k];
                for (l, g) in gens.iter().enumerate() {
                    let c = s2.v_inv[j][l];
                    for (a, &x) in acc.iter_mut().zip(&g.0) {
                        *a = ((*a as i128 + c * x as i128).rem_euclid(1 << 40)) as i64;
                    }
                }
                self.elem(&acc)
            })
            .collect::<Result<Vec<_>>>()?;
        let emb = GroupHom::new(pres.clone(), self.clone(), images)?;
        Ok((pres, emb))
    }

    /// Embeds a subgroup with an explicit independent basis; the basis must
    /// generate a subgroup of order `∏ ord(b_i)`.
    pub fn subgroup_with_basis(&self, basis: &[GroupElem]) -> Result<(FinAbGroup, GroupHom)> {
        let orders = basis
            .iter()
            .map(|b| self.elem_order(b))
            .collect::<Result<Vec<_>>>()?;
        let pres = FinAbGroup::new(&orders)?;
        let kept: Vec<GroupElem> = basis
            .iter()
            .zip(&orders)
            .filter(|(_, &o)| o != 1)
            .map(|(b, _)| b.clone())
            .collect();
        let emb = GroupHom::new(pres.clone(), self.clone(), kept)?;
        let h = self.subgroup_generated(basis, DEFAULT_ENUMERATION_BUDGET)?;
        if h.len() as u64 != pres.size() {
            return Err(Error::InvalidGroup(
                "basis elements are not independent".into(),
            ));
        }
        Ok((pres, emb))
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "Z 1");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z {n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Accepts `Z n1 x Z n2 x ...` (also `Zn1 x Zn2`).
    fn from_str(s: &str) -> Result<Self> {
        let orders = s
            .split('x')
            .map(|part| {
                let part = part.trim();
                let digits = part
                    .strip_prefix('Z')
                    .ok_or_else(|| Error::Parse(format!("bad cyclic factor `{part}`")))?;
                digits
                    .trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad cyclic order `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        FinAbGroup::new(&orders)
    }
}

/// Subgroup stored extensionally as a sorted element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elems: BTreeSet<GroupElem>,
}

impl Subgroup {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        self.elems.contains(a)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElem> {
        self.elems.iter()
    }

    pub fn elements(&self) -> &BTreeSet<GroupElem> {
        &self.elems
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elems.is_subset(&other.elems)
    }
}

/// Homomorphism determined by the images of the standard generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    domain: FinAbGroup,
    codomain: FinAbGroup,
    images: Vec<GroupElem>,
}

impl GroupHom {
    pub fn new(domain: FinAbGroup, codomain: FinAbGroup, images: Vec<GroupElem>) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::MismatchedGroups(
                "one image per generator required".into(),
            ));
        }
        for (img, &n) in images.iter().zip(domain.orders()) {
            codomain.check(img)?;
            if !codomain.scalar_mul(n as i64, img)?.is_zero() {
                return Err(Error::InvalidGroup(format!(
                    "image {img} of a generator of order {n} is not killed by {n}"
                )));
            }
        }
        Ok(GroupHom {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        GroupHom {
            domain: g.clone(),
            codomain: g.clone(),
            images: g.generators(),
        }
    }

    pub fn domain(&self) -> &FinAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAbGroup {
        &self.codomain
    }

    pub fn images(&self) -> &[GroupElem] {
        &self.images
    }

    pub fn apply(&self, a: &GroupElem) -> Result<GroupElem> {
        self.domain.check(a)?;
        Ok(self.apply_unchecked(a))
    }

    pub(crate) fn apply_unchecked(&self, a: &GroupElem) -> GroupElem {
        let k = self.codomain.rank();
        let mut acc = vec![0u64; k];
        for (&l, img) in a.0.iter().zip(&self.images) {
            for ((slot, &x), &n) in acc.iter_mut().zip(&img.0).zip(self.codomain.orders()) {
                *slot = (*slot + l as u64 * x as u64) % n as u64;
            }
        }
        GroupElem(acc.into_iter().map(|x| x as u32).collect())
    }

    /// One preimage for each standard generator of the codomain.
    pub fn section(&self, budget: u64) -> Result<Vec<GroupElem>> {
        let gens = self.codomain.generators();
        let mut found: Vec<Option<GroupElem>> = vec![None; gens.len()];
        for a in self.domain.elements_within(budget)? {
            let img = self.apply_unchecked(&a);
            if let Some(i) = gens.iter().position(|g| *g == img) {
                found[i].get_or_insert(a);
            }
        }
        found
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::InvalidGroup("map is not surjective".into())))
            .collect()
    }

    pub fn kernel(&self, budget: u64) -> Result<Subgroup> {
        let elems = self
            .domain
            .elements_within(budget)?
            .into_iter()
            .filter(|a| self.apply_unchecked(a).is_zero());
        Ok(Subgroup {
            elems: elems.collect(),
        })
    }

    pub fn image(&self, budget: u64) -> Result<Subgroup> {
        self.codomain.subgroup_generated(&self.images, budget)
    }

    pub fn is_surjective(&self, budget: u64) -> Result<bool> {
        Ok(self.image(budget)?.len() as u64 == self.codomain.size())
    }

    pub fn compose(&self, after: &GroupHom) -> Result<GroupHom> {
        if after.domain != self.codomain {
            return Err(Error::MismatchedGroups(
                "composition of incompatible maps".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|x| after.apply_unchecked(x))
            .collect();
        GroupHom::new(self.domain.clone(), after.codomain.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> FinAbGroup {
        FinAbGroup::new(orders).unwrap()
    }

    #[test]
    fn element_arithmetic() {
        let z = g(&[2, 4]);
        let a = z.elem(&[1, 3]).unwrap();
        let b = z.elem(&[1, 2]).unwrap();
        assert_eq!(z.add(&a, &b).unwrap(), z.elem(&[0, 1]).unwrap());
        assert_eq!(z.elem_order(&z.elem(&[1, 0]).unwrap()).unwrap(), 2);
        assert_eq!(
            z.neg(&z.elem(&[0, 3]).unwrap()).unwrap(),
            z.elem(&[0, 1]).unwrap()
        );
        assert_eq!(z.elem_order(&a).unwrap(), 4);
        let other = g(&[3]);
        assert!(matches!(
            z.add(&a, &other.zero()),
            Err(Error::MismatchedGroups(_))
        ));
    }

    #[test]
    fn construction_normalises() {
        let z = g(&[1, 2, 1, 3]);
        assert_eq!(z.orders(), &[2, 3]);
        assert_eq!(z.size(), 6);
        assert_eq!(z.exponent(), 6);
        assert!(FinAbGroup::new(&[0, 2]).is_err());
        assert!(FinAbGroup::new(&[1 << 16, 1 << 16]).is_err());
        assert_eq!(z.to_string(), "Z 2 x Z 3");
        assert_eq!("Z 2 x Z 3".parse::<FinAbGroup>().unwrap(), z);
    }

    #[test]
    fn indexing_is_lexicographic() {
        let z = g(&[2, 3, 2]);
        let elems: Vec<GroupElem> = z.elements().collect();
        for (i, e) in elems.iter().enumerate() {
            assert_eq!(z.index_of(e), i);
        }
        assert!(elems.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn generated_subgroups() {
        let z = g(&[2, 2]);
        let h = z
            .subgroup_generated(&[z.elem(&[1, 0]).unwrap()], 100)
            .unwrap();
        assert_eq!(h.len(), 2);
        let z3 = g(&[2, 2, 2]);
        let h = z3
            .subgroup_generated(
                &[z3.elem(&[1, 1, 0]).unwrap(), z3.elem(&[0, 1, 1]).unwrap()],
                100,
            )
            .unwrap();
        let expected: BTreeSet<GroupElem> = [[0, 0, 0], [1, 1, 0], [0, 1, 1], [1, 0, 1]]
            .iter()
            .map(|v| z3.elem(v).unwrap())
            .collect();
        assert_eq!(h.elements(), &expected);
        assert!(matches!(
            g(&[64, 64]).subgroup_generated(
                &[
                    g(&[64, 64]).elem(&[1, 1]).unwrap(),
                    g(&[64, 64]).elem(&[0, 1]).unwrap()
                ],
                100
            ),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn quotients() {
        let z = g(&[4]);
        let h = z
            .subgroup_from_elements([z.elem(&[0]).unwrap(), z.elem(&[2]).unwrap()])
            .unwrap();
        let (q, p) = z.quotient(&h).unwrap();
        assert_eq!(q.orders(), &[2]);
        assert_eq!(p.kernel(100).unwrap(), h);

        let (q, p) = z.quotient(&z.trivial_subgroup()).unwrap();
        assert_eq!(q, z);
        assert_eq!(p.kernel(100).unwrap(), z.trivial_subgroup());

        // Z_2^5 / <e5> drops the last coordinate.
        let z5 = FinAbGroup::elementary_two(5);
        let e5 = z5.generator(4);
        let h = z5.subgroup_generated(&[e5], 100).unwrap();
        let (q, p) = z5.quotient(&h).unwrap();
        assert_eq!(q, FinAbGroup::elementary_two(4));
        for a in z5.elements() {
            assert_eq!(p.apply(&a).unwrap().residues(), &a.residues()[..4]);
        }
        let bad = z.subgroup_from_elements([z.elem(&[0]).unwrap(), z.elem(&[1]).unwrap()]);
        assert!(matches!(bad, Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(g(&[2, 2]).canonical_orders(), vec![2, 2]);
        assert_eq!(g(&[2, 4, 3]).canonical_orders(), vec![2, 12]);
        assert_eq!(g(&[6]).canonical_orders(), vec![6]);
        assert_eq!(
            g(&[4, 2, 3]).canonical_orders(),
            g(&[3, 2, 4]).canonical_orders()
        );
    }

    #[test]
    fn subgroup_presentations() {
        let z = g(&[4, 6]);
        let h = z
            .subgroup_generated(&[z.elem(&[2, 3]).unwrap(), z.elem(&[0, 2]).unwrap()], 100)
            .unwrap();
        let (k, emb) = z.subgroup_presentation(&h).unwrap();
        assert_eq!(k.size(), h.len() as u64);
        let image: BTreeSet<GroupElem> = k.elements().map(|x| emb.apply(&x).unwrap()).collect();
        assert_eq!(&image, h.elements());
    }
}
