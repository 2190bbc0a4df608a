//! The graded algebras `L(R)` and `J(R)` spanned by `u_a`, `a ∈ R`, inside
//! the twisted group algebra, with products
//! `[u_a, u_b] = (ξ(a,b) − ξ(b,a)) u_{a+b}` and
//! `u_a ∘ u_b = ½(ξ(a,b) + ξ(b,a)) u_{a+b}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::abgroup::{GroupElem, GroupHom};
use crate::cyclo::{CycloMatrix, CycloNum, SparseEchelon};
use crate::error::{Error, Result};
use crate::skewroot::{Kind, SkewRootSystem};
use crate::symplectic::Cocycle;

/// `L(R)` or `J(R)` by monomial structure constants: `u_a · u_b = c_{a,b} u_{a+b}`.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    kind: Kind,
    system: SkewRootSystem,
    cocycle: Cocycle,
    basis: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
    /// `table[i][j] = Some((k, c))` when `u_i u_j = c u_k` with `c ≠ 0`.
    table: Vec<Vec<Option<(usize, CycloNum)>>>,
}

/// Gram matrix of a bilinear form in the basis order of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormMatrix {
    pub basis: Vec<GroupElem>,
    pub matrix: CycloMatrix,
}

impl BilinearFormMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &CycloNum {
        self.matrix.get(i, j)
    }

    pub fn det(&self) -> CycloNum {
        self.matrix.det().expect("Gram matrices are square")
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }
}

impl GradedAlgebra {
    /// Builds the algebra of `S` from a cocycle with `Ψ(ξ) = β`.
    pub fn build(kind: Kind, system: &SkewRootSystem, cocycle: &Cocycle) -> Result<Self> {
        if kind != system.kind() {
            return Err(Error::KindMismatch(format!(
                "cannot build a {kind} algebra from a {} skew root system",
                system.kind()
            )));
        }
        if !system.is_validated() {
            return Err(Error::NotValidated);
        }
        if cocycle.group() != system.group() || cocycle.psi() != *system.beta() {
            return Err(Error::CocycleMismatch);
        }
        let g = system.group();
        let basis: Vec<GroupElem> = system.roots().iter().cloned().collect();
        let index: HashMap<GroupElem, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let n = cocycle.order();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let k = *index.get(&g.add_unchecked(a, b))?;
                        let x = CycloNum::root(n, cocycle.eval_unchecked(a, b) as i64);
                        let y = CycloNum::root(n, cocycle.eval_unchecked(b, a) as i64);
                        let c = match kind {
                            Kind::Lie => &x - &y,
                            Kind::Jordan => (&x + &y).half(),
                        };
                        (!c.is_zero()).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        Ok(GradedAlgebra {
            kind,
            system: system.clone(),
            cocycle: cocycle.clone(),
            basis,
            index,
            table,
        })
    }

    /// Builds with the standard cocycle of `β`.
    pub fn build_standard(system: &SkewRootSystem) -> Result<Self> {
        Self::build(system.kind(), system, &Cocycle::standard(system.beta()))
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn system(&self) -> &SkewRootSystem {
        &self.system
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElem] {
        &self.basis
    }

    /// The cyclotomic order of the scalars.
    pub fn order(&self) -> u32 {
        self.cocycle.order()
    }

    pub fn index_of(&self, a: &GroupElem) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// `u_i u_j = c u_k` as `(k, c)`, or `None` for a zero product.
    pub fn product(&self, i: usize, j: usize) -> Option<(usize, &CycloNum)> {
        self.table[i][j].as_ref().map(|(k, c)| (*k, c))
    }

    /// `c_{a,b}`, zero when `a + b ∉ R`.
    pub fn structure_constant(&self, a: &GroupElem, b: &GroupElem) -> Result<CycloNum> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        Ok(self
            .product(i, j)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| CycloNum::zero(self.order())))
    }

    fn require(&self, a: &GroupElem) -> Result<usize> {
        self.index_of(a)
            .ok_or_else(|| Error::MismatchedGroups(format!("{a} is not a root of the algebra")))
    }

    fn zero(&self) -> CycloNum {
        CycloNum::zero(self.order())
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[CycloNum], y: &[CycloNum]) -> Vec<CycloNum> {
        let mut out = vec![self.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some((k, c)) = self.product(i, j) {
                    out[k] = &out[k] + &(&(xi * yj) * c);
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ u_a · v`; column `j` holds the image of `u_j`.
    pub fn multiplication_matrix(&self, a: &GroupElem) -> Result<CycloMatrix> {
        let i = self.require(a)?;
        let mut m = CycloMatrix::zeros(self.order(), self.dim(), self.dim());
        for j in 0..self.dim() {
            if let Some((k, c)) = self.product(i, j) {
                m.set(k, j, c.clone());
            }
        }
        Ok(m)
    }

    /// `ad u_a` (Lie kind).
    pub fn ad_matrix(&self, a: &GroupElem) -> Result<CycloMatrix> {
        self.require_kind(Kind::Lie, "ad matrices")?;
        self.multiplication_matrix(a)
    }

    /// `L(u_a)` (Jordan kind).
    pub fn left_mul_matrix(&self, a: &GroupElem) -> Result<CycloMatrix> {
        self.require_kind(Kind::Jordan, "left multiplication matrices")?;
        self.multiplication_matrix(a)
    }

    fn require_kind(&self, kind: Kind, what: &str) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "{what} need a {kind} algebra, got {}",
                self.kind
            )))
        }
    }

    /// `tr(L_i L_j)` for the multiplication operators of `u_i`, `u_j`,
    /// summed over the basis vectors fixed (up to scalar) by the composition.
    fn trace_of_composition(&self, i: usize, j: usize) -> CycloNum {
        let mut acc = self.zero();
        for c in 0..self.dim() {
            if let Some((k, x)) = self.product(j, c) {
                if let Some((l, y)) = self.product(i, k) {
                    if l == c {
                        acc = &acc + &(x * y);
                    }
                }
            }
        }
        acc
    }

    /// `tr L(u_k)`.
    fn trace_of_multiplication(&self, k: usize) -> CycloNum {
        let mut acc = self.zero();
        for c in 0..self.dim() {
            if let Some((l, x)) = self.product(k, c) {
                if l == c {
                    acc = &acc + x;
                }
            }
        }
        acc
    }

    /// `κ(u_a, u_b) = tr(ad u_a ad u_b)`.
    pub fn killing_form(&self) -> Result<BilinearFormMatrix> {
        self.require_kind(Kind::Lie, "the Killing form")?;
        let n = self.dim();
        let rows = (0..n)
            .into_par_iter()
            .map(|i| (0..n).map(|j| self.trace_of_composition(i, j)).collect())
            .collect();
        Ok(BilinearFormMatrix {
            basis: self.basis.clone(),
            matrix: CycloMatrix::from_rows(self.order(), rows)?,
        })
    }

    /// `ξ(a,−a) Σ_{b∈R} (2 − β(a,b) − β(a,b)^{-1})`.
    pub fn killing_closed_form(&self, a: &GroupElem) -> Result<CycloNum> {
        self.require_kind(Kind::Lie, "the Killing form")?;
        self.require(a)?;
        let g = self.system.group();
        let beta = self.system.beta();
        let n = self.order();
        let two = CycloNum::from_integer(n, 2);
        let mut sum = self.zero();
        for b in &self.basis {
            let v = beta.value(a, b)?.embed(n.max(beta.order()))?;
            let term = &(&two - &v) - &v.inv()?;
            sum = &sum + &term;
        }
        Ok(&self.cocycle.value(a, &g.neg_unchecked(a))? * &sum)
    }

    /// Compares every pairing entry `κ(u_a, u_{−a})` with the closed form and
    /// checks that entries with `a + b ≠ 0` vanish.
    pub fn killing_closed_form_holds(&self, form: &BilinearFormMatrix) -> Result<bool> {
        let g = self.system.group();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let expected = if g.add_unchecked(a, b).is_zero() {
                    self.killing_closed_form(a)?
                } else {
                    self.zero()
                };
                if *form.entry(i, j) != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `τ(u_g, u_h) = tr L(u_g ∘ u_h)`.
    pub fn trace_form(&self) -> Result<BilinearFormMatrix> {
        self.require_kind(Kind::Jordan, "the trace form")?;
        let n = self.dim();
        let traces: Vec<CycloNum> = (0..n).map(|k| self.trace_of_multiplication(k)).collect();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match self.product(i, j) {
                        Some((k, c)) => c * &traces[k],
                        None => self.zero(),
                    })
                    .collect()
            })
            .collect();
        Ok(BilinearFormMatrix {
            basis: self.basis.clone(),
            matrix: CycloMatrix::from_rows(self.order(), rows)?,
        })
    }

    /// `ξ(−g, g) · dim J`.
    pub fn trace_closed_form(&self, g: &GroupElem) -> Result<CycloNum> {
        self.require_kind(Kind::Jordan, "the trace form")?;
        self.require(g)?;
        let minus = self.system.group().neg_unchecked(g);
        Ok(&self.cocycle.value(&minus, g)?
            * &CycloNum::from_integer(self.order(), self.dim() as i64))
    }

    pub fn trace_closed_form_holds(&self, form: &BilinearFormMatrix) -> Result<bool> {
        let grp = self.system.group();
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let expected = if grp.add_unchecked(a, b).is_zero() {
                    self.trace_closed_form(a)?
                } else {
                    self.zero()
                };
                if *form.entry(i, j) != expected {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The Killing form (Lie) or trace form (Jordan).
    pub fn invariant_form(&self) -> Result<BilinearFormMatrix> {
        match self.kind {
            Kind::Lie => self.killing_form(),
            Kind::Jordan => self.trace_form(),
        }
    }

    /// Dimension of the centroid `{φ | φ(xy) = x φ(y) for all x, y}`.
    ///
    /// The invariant form must be nondegenerate first; for a semisimple Lie
    /// algebra the result counts the simple summands.
    pub fn centroid_dim(&self) -> Result<usize> {
        if self.invariant_form()?.det().is_zero() {
            return Err(Error::NotSemisimple(format!(
                "the {} form is degenerate",
                if self.kind == Kind::Lie {
                    "Killing"
                } else {
                    "trace"
                }
            )));
        }
        Ok(self.centroid_dim_unchecked())
    }

    /// Centroid dimension without the nondegeneracy gate.
    pub fn centroid_dim_unchecked(&self) -> usize {
        let n = self.dim();
        let var = |i: usize, j: usize| i * n + j; // coefficient of u_i in φ(u_j)
        let mut ech = SparseEchelon::new();
        let g = self.system.group();
        // Component t of φ(u_x u_y) − u_x φ(u_y):
        //   c_{x,y} P[t][x+y] − c_{x,t−x} P[t−x][y].
        for x in 0..n {
            for y in 0..n {
                let lhs = self.product(x, y);
                for t in 0..n {
                    let mut row: Vec<(usize, CycloNum)> = Vec::with_capacity(2);
                    if let Some((k, c)) = lhs {
                        row.push((var(t, k), c.clone()));
                    }
                    let s = g.add_unchecked(&self.basis[t], &g.neg_unchecked(&self.basis[x]));
                    if let Some(i) = self.index_of(&s) {
                        if let Some((k, c)) = self.product(x, i) {
                            debug_assert_eq!(k, t);
                            row.push((var(i, y), -c));
                        }
                    }
                    if !row.is_empty() {
                        ech.insert(row);
                    }
                }
            }
        }
        n * n - ech.rank()
    }

    /// Closure of `{a}` under `b ↦ a' + b` whenever `u_{a'} u_b ≠ 0`.
    pub fn reachable_from(&self, a: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(b) = stack.pop() {
            for x in 0..self.dim() {
                if let Some((k, _)) = self.product(x, b) {
                    if seen.insert(k) {
                        stack.push(k);
                    }
                }
            }
        }
        seen
    }

    /// No proper nonzero graded ideals: every reachability closure is all of `R`.
    pub fn graded_simple(&self) -> bool {
        (0..self.dim())
            .into_par_iter()
            .all(|a| self.reachable_from(a).len() == self.dim())
    }

    /// Lie: every `ad u_a` has squarefree minimal polynomial. Jordan: every
    /// `u_g` satisfies `u_g ∘ ξ(g,g) u_{−g} = u_0`.
    pub fn homogeneous_semisimple(&self) -> Result<bool> {
        Ok(self
            .homogeneous_semisimple_report()?
            .iter()
            .all(|(_, ok)| *ok))
    }

    pub fn homogeneous_semisimple_report(&self) -> Result<Vec<(GroupElem, bool)>> {
        match self.kind {
            Kind::Lie => self
                .basis
                .par_iter()
                .map(|a| Ok((a.clone(), self.ad_matrix(a)?.min_poly_squarefree()?)))
                .collect(),
            Kind::Jordan => {
                let g = self.system.group();
                let zero = self.index_of(&g.zero());
                Ok(self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let minus = self.index_of(&g.neg_unchecked(a));
                        let ok = match (minus, zero) {
                            (Some(m), Some(z)) => match self.product(i, m) {
                                Some((k, c)) => {
                                    k == z && (c * &self.cocycle.value_unchecked(a, a)).is_one()
                                }
                                None => false,
                            },
                            _ => false,
                        };
                        (a.clone(), ok)
                    })
                    .collect())
            }
        }
    }

    /// Jacobi identity on all basis triples (Lie kind).
    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim();
        (0..n).into_par_iter().all(|a| {
            for b in 0..n {
                for c in 0..n {
                    let mut acc: Option<(usize, CycloNum)> = None;
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        if let Some((k, c1)) = self.product(x, y) {
                            if let Some((l, c2)) = self.product(k, z) {
                                let term = c1 * c2;
                                acc = Some(match acc {
                                    Some((_, s)) => (l, &s + &term),
                                    None => (l, term),
                                });
                            }
                        }
                    }
                    if acc.is_some_and(|(_, s)| !s.is_zero()) {
                        return false;
                    }
                }
            }
            true
        })
    }

    /// Product of basis vectors as an optional monomial.
    fn mono(&self, x: Option<(usize, CycloNum)>, j: usize) -> Option<(usize, CycloNum)> {
        let (i, c) = x?;
        let (k, d) = self.product(i, j)?;
        Some((k, &c * d))
    }

    fn mono2(
        &self,
        x: Option<(usize, CycloNum)>,
        y: Option<(usize, CycloNum)>,
    ) -> Option<(usize, CycloNum)> {
        let (i, c) = x?;
        let (j, d) = y?;
        let (k, e) = self.product(i, j)?;
        Some((k, &(&c * &d) * e))
    }

    /// Fully linearized Jordan identity on basis quadruples:
    /// `Σ_{(x,z,w)} ((x∘z)∘y)∘w = Σ_{(x,z,w)} (x∘z)∘(y∘w)` over cyclic shifts.
    pub fn jordan_identity_holds(&self) -> bool {
        let n = self.dim();
        let one = CycloNum::one(self.order());
        let basis = |i: usize| Some((i, one.clone()));
        (0..n).into_par_iter().all(|x| {
            for z in x..n {
                for w in z..n {
                    for y in 0..n {
                        let mut acc: HashMap<usize, CycloNum> = HashMap::new();
                        let mut add = |m: Option<(usize, CycloNum)>, negate: bool| {
                            if let Some((k, c)) = m {
                                let c = if negate { -c } else { c };
                                let e =
                                    acc.entry(k).or_insert_with(|| CycloNum::zero(self.order()));
                                *e = &*e + &c;
                            }
                        };
                        for (p, q, r) in [(x, z, w), (z, w, x), (w, x, z)] {
                            let pq = self.mono(basis(p), q);
                            add(self.mono(self.mono(pq.clone(), y), r), false);
                            add(self.mono2(pq, self.mono(basis(y), r)), true);
                        }
                        if acc.values().any(|c| !c.is_zero()) {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    /// Antisymmetric (Lie) or symmetric (Jordan) structure constants.
    pub fn symmetry_holds(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| match (self.product(i, j), self.product(j, i)) {
                (None, None) => true,
                (Some((k, c)), Some((l, d))) => {
                    k == l
                        && match self.kind {
                            Kind::Lie => *c == -d,
                            Kind::Jordan => c == d,
                        }
                }
                _ => false,
            })
        })
    }

    /// Records `((a), (b), (a+b), scalar)` for every nonzero product, in
    /// lexicographic basis order.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# {} algebra over {} with {} basis elements, scalars in Q(zeta_{})",
            self.kind,
            self.system.group(),
            self.dim(),
            self.order()
        );
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if let Some((k, c)) = self.product(i, j) {
                    let _ = writeln!(
                        out,
                        "({}, {}, {}, {})",
                        self.basis[i], self.basis[j], self.basis[k], c
                    );
                }
            }
        }
        out
    }
}

/// The verified basis map `u_g ↦ u_{ḡ}` of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    /// Image index in the reduced basis for every basis index of the source.
    pub basis_map: Vec<usize>,
    pub surjective: bool,
    pub kernel_dim: usize,
}

impl ReductionMap {
    pub fn is_isomorphism(&self) -> bool {
        self.surjective && self.kernel_dim == 0
    }
}

impl GradedAlgebra {
    /// The algebra of `system` with the cocycle pulled back from `reduced`
    /// along `p`.
    pub fn build_pulled_back(
        system: &SkewRootSystem,
        reduced: &GradedAlgebra,
        p: &GroupHom,
    ) -> Result<Self> {
        let xi = reduced.cocycle.pull_back(p)?;
        Self::build(system.kind(), system, &xi)
    }

    /// Checks that `u_g ↦ u_{p(g)}` is a surjective algebra homomorphism onto
    /// `reduced`: the cocycle must be pulled back and every structure
    /// constant must be preserved.
    pub fn hom_onto_reduction(
        &self,
        reduced: &GradedAlgebra,
        p: &GroupHom,
    ) -> Result<ReductionMap> {
        if self.kind != reduced.kind {
            return Err(Error::KindMismatch("reduction changes the kind".into()));
        }
        if p.domain() != self.system.group() || p.codomain() != reduced.system.group() {
            return Err(Error::MismatchedGroups(
                "projection does not match the algebras".into(),
            ));
        }
        let images: Vec<GroupElem> = self.basis.iter().map(|g| p.apply_unchecked(g)).collect();
        let basis_map = images
            .iter()
            .map(|x| reduced.index_of(x).ok_or(Error::NotPulledBack))
            .collect::<Result<Vec<_>>>()?;
        let (n1, n2) = (self.order(), reduced.order());
        let l = num_integer::lcm(n1, n2);
        for (i, g) in self.basis.iter().enumerate() {
            for (j, h) in self.basis.iter().enumerate() {
                let e1 = self.cocycle.eval_unchecked(g, h) as u64 * (l / n1) as u64 % l as u64;
                let e2 = reduced.cocycle.eval_unchecked(&images[i], &images[j]) as u64
                    * (l / n2) as u64
                    % l as u64;
                if e1 != e2 {
                    return Err(Error::NotPulledBack);
                }
            }
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let ok = match (
                    self.product(i, j),
                    reduced.product(basis_map[i], basis_map[j]),
                ) {
                    (None, None) => true,
                    (Some((k, c)), Some((kk, cc))) => {
                        basis_map[k] == kk && c.embed(l)? == cc.embed(l)?
                    }
                    _ => false,
                };
                if !ok {
                    return Err(Error::NotPulledBack);
                }
            }
        }
        let hit: BTreeSet<usize> = basis_map.iter().copied().collect();
        Ok(ReductionMap {
            surjective: hit.len() == reduced.dim(),
            kernel_dim: self.dim() - hit.len(),
            basis_map,
        })
    }
}
