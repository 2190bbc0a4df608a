//! The nonsingular (generalized Pauli), Clifford and quadratic-form families,
//! and the monomial matrix models used to identify their algebras with
//! classical Lie and Jordan algebras.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::abgroup::{FinAbGroup, GroupElem, GroupHom, DEFAULT_ENUMERATION_BUDGET};
use crate::cyclo::{CycloMatrix, CycloNum, SparseEchelon};
use crate::error::{Error, Result};
use crate::galgebra::GradedAlgebra;
use crate::skewroot::{Kind, SkewRootSystem};
use crate::symplectic::{Bicharacter, Cocycle, GradedBasis};

/// Matrix models larger than this are not built by [`instantiate`].
pub const MODEL_SIZE_LIMIT: usize = 16;

/// Largest `k` accepted by [`involution_support`] (matrices of size `2^k`).
pub const INVOLUTION_MAX_K: usize = 5;

// ---------------------------------------------------------------------------
// Monomial matrices

/// Square matrix over `Q(ζ_N)` with at most one nonzero entry in every row
/// and every column. Products, Kronecker products and transposes stay in
/// this class and cost `O(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    order: u32,
    rows: Vec<Option<(usize, CycloNum)>>,
}

impl MonomialMatrix {
    pub fn identity(order: u32, n: usize) -> Self {
        MonomialMatrix {
            order,
            rows: (0..n).map(|i| Some((i, CycloNum::one(order)))).collect(),
        }
    }

    pub fn diagonal(order: u32, diag: Vec<CycloNum>) -> Result<Self> {
        let n = diag.len();
        Self::from_entries(
            order,
            n,
            diag.into_iter().enumerate().map(|(i, x)| (i, i, x)),
        )
    }

    /// Builds from `(row, col, value)` triples; zero values are dropped.
    pub fn from_entries(
        order: u32,
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, CycloNum)>,
    ) -> Result<Self> {
        let mut rows: Vec<Option<(usize, CycloNum)>> = vec![None; n];
        let mut used = vec![false; n];
        for (r, c, x) in entries {
            if r >= n || c >= n {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r}, {c}) outside a {n}x{n} matrix"
                )));
            }
            if x.is_zero() {
                continue;
            }
            if rows[r].is_some() || used[c] {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({r}, {c}) breaks the monomial pattern"
                )));
            }
            used[c] = true;
            rows[r] = Some((c, x.embed(order)?));
        }
        Ok(MonomialMatrix { order, rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn row(&self, r: usize) -> Option<(usize, &CycloNum)> {
        self.rows[r].as_ref().map(|(c, x)| (*c, x))
    }

    pub fn entry(&self, r: usize, c: usize) -> CycloNum {
        match &self.rows[r] {
            Some((cc, x)) if *cc == c => x.clone(),
            _ => CycloNum::zero(self.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Option::is_none)
    }

    pub fn mul(&self, other: &MonomialMatrix) -> MonomialMatrix {
        assert_eq!(
            self.size(),
            other.size(),
            "monomial product of different sizes"
        );
        let order = self.order.lcm(&other.order);
        let rows = self
            .rows
            .iter()
            .map(|e| {
                let (c, x) = e.as_ref()?;
                let (c2, y) = other.rows[*c].as_ref()?;
                Some((*c2, x * y))
            })
            .collect();
        MonomialMatrix { order, rows }
    }

    pub fn pow(&self, e: u64) -> MonomialMatrix {
        let mut acc = MonomialMatrix::identity(self.order, self.size());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn kron(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let order = self.order.lcm(&other.order);
        let m = other.size();
        let mut rows = Vec::with_capacity(self.size() * m);
        for a in &self.rows {
            for b in &other.rows {
                rows.push(match (a, b) {
                    (Some((c1, x)), Some((c2, y))) => Some((c1 * m + c2, x * y)),
                    _ => None,
                });
            }
        }
        MonomialMatrix { order, rows }
    }

    pub fn transpose(&self) -> MonomialMatrix {
        let mut rows = vec![None; self.size()];
        for (r, e) in self.rows.iter().enumerate() {
            if let Some((c, x)) = e {
                rows[*c] = Some((r, x.clone()));
            }
        }
        MonomialMatrix {
            order: self.order,
            rows,
        }
    }

    /// Inverse of an invertible monomial matrix.
    pub fn inverse(&self) -> Result<MonomialMatrix> {
        let mut rows = vec![None; self.size()];
        for (r, e) in self.rows.iter().enumerate() {
            let (c, x) = e.as_ref().ok_or(Error::DivisionByZero)?;
            rows[*c] = Some((r, x.inv()?));
        }
        Ok(MonomialMatrix {
            order: self.order,
            rows,
        })
    }

    pub fn scale(&self, c: &CycloNum) -> MonomialMatrix {
        let order = self.order.lcm(&c.order());
        if c.is_zero() {
            return MonomialMatrix {
                order,
                rows: vec![None; self.size()],
            };
        }
        MonomialMatrix {
            order,
            rows: self
                .rows
                .iter()
                .map(|e| e.as_ref().map(|(col, x)| (*col, x * c)))
                .collect(),
        }
    }

    pub fn trace(&self) -> CycloNum {
        let mut t = CycloNum::zero(self.order);
        for (r, e) in self.rows.iter().enumerate() {
            if let Some((c, x)) = e {
                if *c == r {
                    t = &t + x;
                }
            }
        }
        t
    }

    /// `λ` with `self = λ · other`, when it exists and `other` is nonzero.
    pub fn ratio_to(&self, other: &MonomialMatrix) -> Option<CycloNum> {
        if self.size() != other.size() || other.is_zero() {
            return None;
        }
        let mut lambda: Option<CycloNum> = None;
        for (a, b) in self.rows.iter().zip(&other.rows) {
            match (a, b) {
                (None, None) => {}
                (Some((c1, x)), Some((c2, y))) if c1 == c2 => match &lambda {
                    None => lambda = Some(x.checked_div(y).ok()?),
                    Some(l) if &(l * y) == x => {}
                    Some(_) => return None,
                },
                (None, Some(_)) => match &lambda {
                    None => lambda = Some(CycloNum::zero(self.order)),
                    Some(l) if l.is_zero() => {}
                    Some(_) => return None,
                },
                _ => return None,
            }
        }
        lambda
    }

    pub fn to_dense(&self) -> CycloMatrix {
        let n = self.size();
        let mut m = CycloMatrix::zeros(self.order, n, n);
        for (r, e) in self.rows.iter().enumerate() {
            if let Some((c, x)) = e {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    /// Row-major positions and values, for rank computations.
    fn flat_entries(&self) -> Vec<(usize, CycloNum)> {
        let n = self.size();
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(r, e)| e.as_ref().map(|(c, x)| (r * n + c, x.clone())))
            .collect()
    }
}

/// Whether `Σ cᵢ Mᵢ` equals `target` (the zero matrix when `None`).
fn combination_equals(
    terms: &[(CycloNum, &MonomialMatrix)],
    target: Option<(&CycloNum, &MonomialMatrix)>,
) -> bool {
    let n = terms
        .first()
        .map(|t| t.1.size())
        .or(target.map(|t| t.1.size()))
        .unwrap_or(0);
    let mut acc: Vec<(usize, CycloNum)> = Vec::with_capacity(terms.len() + 1);
    for r in 0..n {
        acc.clear();
        let mut push = |c: usize, v: CycloNum| match acc.iter_mut().find(|(cc, _)| *cc == c) {
            Some(slot) => slot.1 = &slot.1 + &v,
            None => acc.push((c, v)),
        };
        for (coef, m) in terms {
            if let Some((c, x)) = m.row(r) {
                push(c, coef * x);
            }
        }
        if let Some((coef, m)) = target {
            if let Some((c, x)) = m.row(r) {
                push(c, -(coef * x));
            }
        }
        if acc.iter().any(|(_, v)| !v.is_zero()) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Matrix gradings

/// A division grading of a matrix algebra given by one monomial matrix per
/// generator of `G`; the homogeneous basis element of degree `g` is the
/// ordered product `x_1^{g_1} ⋯ x_r^{g_r}`.
#[derive(Clone, Debug)]
pub struct MatrixGrading {
    group: FinAbGroup,
    generators: Vec<MonomialMatrix>,
    /// All basis matrices by element index, filled on first product lookup.
    basis: OnceLock<Vec<MonomialMatrix>>,
}

impl MatrixGrading {
    pub fn new(group: FinAbGroup, generators: Vec<MonomialMatrix>) -> Result<Self> {
        if generators.len() != group.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator matrices for a group of rank {}",
                generators.len(),
                group.rank()
            )));
        }
        if generators.windows(2).any(|w| w[0].size() != w[1].size()) {
            return Err(Error::ShapeMismatch(
                "generator matrices of different sizes".into(),
            ));
        }
        Ok(MatrixGrading {
            group,
            generators,
            basis: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn generators(&self) -> &[MonomialMatrix] {
        &self.generators
    }

    pub fn size(&self) -> usize {
        self.generators.first().map_or(1, MonomialMatrix::size)
    }

    pub fn order(&self) -> u32 {
        self.generators.iter().fold(1, |acc, g| acc.lcm(&g.order()))
    }

    pub fn basis_matrix(&self, g: &GroupElem) -> Result<MonomialMatrix> {
        if !self.group.contains(g) {
            return Err(Error::MismatchedGroups(format!(
                "{g} is not a degree of this grading"
            )));
        }
        let mut acc = MonomialMatrix::identity(self.order(), self.size());
        for (x, &e) in self.generators.iter().zip(g.residues()) {
            acc = acc.mul(&x.pow(e as u64));
        }
        Ok(acc)
    }

    /// Checks `x_i^{n_i} = 1` and `x_i x_j = β(a_i, a_j) x_j x_i`.
    pub fn relations_hold(&self, beta: &Bicharacter) -> Result<bool> {
        if beta.group() != &self.group {
            return Err(Error::MismatchedGroups(
                "bicharacter on another group".into(),
            ));
        }
        let id = MonomialMatrix::identity(self.order(), self.size());
        let gens = self.group.generators();
        for (i, x) in self.generators.iter().enumerate() {
            if x.pow(self.group.orders()[i] as u64) != id {
                return Ok(false);
            }
            for (j, y) in self.generators.iter().enumerate() {
                let b = beta.value(&gens[i], &gens[j])?;
                if !combination_equals(&[(CycloNum::one(1), &x.mul(y))], Some((&b, &y.mul(x)))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Whether the `|G|` basis matrices are linearly independent.
    pub fn is_independent(&self, budget: u64) -> Result<bool> {
        let mut ech = SparseEchelon::new();
        for g in self.group.elements_within(budget)? {
            if !ech.insert(self.basis_matrix(&g)?.flat_entries()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const BASIS_CACHE_LIMIT: u64 = 4096;

impl GradedBasis for MatrixGrading {
    fn grading_group(&self) -> &FinAbGroup {
        &self.group
    }

    fn structure_scalar(&self, g: &GroupElem, h: &GroupElem) -> Result<Option<CycloNum>> {
        let sum = self.group.add(g, h)?;
        let (p, target) = if self.group.size() <= BASIS_CACHE_LIMIT {
            let basis = self.basis.get_or_init(|| {
                self.group
                    .elements()
                    .map(|x| self.basis_matrix(&x).expect("element of the grading group"))
                    .collect()
            });
            let at = |x: &GroupElem| &basis[self.group.index_of(x)];
            (at(g).mul(at(h)), at(&sum).clone())
        } else {
            (
                self.basis_matrix(g)?.mul(&self.basis_matrix(h)?),
                self.basis_matrix(&sum)?,
            )
        };
        if p.is_zero() {
            return Ok(None);
        }
        p.ratio_to(&target)
            .map(Some)
            .ok_or_else(|| Error::NotDivision(g.to_string(), h.to_string()))
    }
}

fn check_orders(orders: &[u64]) -> Result<()> {
    if orders.is_empty() {
        return Err(Error::RangeError(
            "at least one block order is required".into(),
        ));
    }
    if let Some(&n) = orders.iter().find(|&&n| n < 2) {
        return Err(Error::RangeError(format!(
            "block order {n} must be at least 2"
        )));
    }
    let n: u64 = orders
        .iter()
        .try_fold(1u64, |acc, &x| acc.checked_mul(x))
        .unwrap_or(u64::MAX);
    if n.saturating_mul(n) > DEFAULT_ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "building a nonsingular family",
            budget: DEFAULT_ENUMERATION_BUDGET,
        });
    }
    Ok(())
}

/// The generalized Pauli model of `⊕ ℤ_{n_t}²`: per block the clock matrix
/// `X₁ = diag(ε^{n-1}, …, ε, 1)` and the cyclic shift `X₂`, so that
/// `X₁X₂ = εX₂X₁`, tensored across blocks.
pub fn pauli_model(orders: &[u64]) -> Result<MatrixGrading> {
    check_orders(orders)?;
    let order = orders.iter().fold(1u64, |a, b| a.lcm(b)) as u32;
    let size: usize = orders.iter().product::<u64>() as usize;
    let mut gens = Vec::with_capacity(2 * orders.len());
    let mut before = 1usize;
    for &n in orders {
        let n = n as usize;
        let step = order as i64 / n as i64;
        let clock = MonomialMatrix::diagonal(
            order,
            (0..n)
                .map(|r| CycloNum::root(order, step * (n - 1 - r) as i64))
                .collect(),
        )?;
        let shift = MonomialMatrix::from_entries(
            order,
            n,
            (0..n).map(|r| (r, (r + 1) % n, CycloNum::one(order))),
        )?;
        let after = size / before / n;
        let widen = |m: &MonomialMatrix| {
            MonomialMatrix::identity(order, before)
                .kron(m)
                .kron(&MonomialMatrix::identity(order, after))
        };
        gens.push(widen(&clock));
        gens.push(widen(&shift));
        before *= n;
    }
    let doubled: Vec<u64> = orders.iter().flat_map(|&n| [n, n]).collect();
    MatrixGrading::new(FinAbGroup::new(&doubled)?, gens)
}

/// Clifford generators `v_1, …, v_n` as Jordan–Wigner chains of 2×2
/// matrices over `Q(i)`, graded by `ℤ₂ⁿ`.
pub fn clifford_model(n: usize) -> Result<MatrixGrading> {
    if n < 2 {
        return Err(Error::RangeError(format!(
            "Clifford model needs n >= 2, got {n}"
        )));
    }
    let qubits = n.div_ceil(2);
    if qubits > 10 {
        return Err(Error::BudgetExceeded {
            what: "building a Clifford model",
            budget: 1 << 10,
        });
    }
    let o = 4;
    let one = CycloNum::one(o);
    let i = CycloNum::root(o, 1);
    let id = MonomialMatrix::identity(o, 2);
    let z = MonomialMatrix::diagonal(o, vec![one.clone(), -&one]).expect("2x2");
    let x = MonomialMatrix::from_entries(o, 2, [(0, 1, one.clone()), (1, 0, one.clone())])
        .expect("2x2");
    let y = MonomialMatrix::from_entries(o, 2, [(0, 1, -&i), (1, 0, i.clone())]).expect("2x2");
    let chain = |j: usize, last: &MonomialMatrix| {
        let mut m = MonomialMatrix::identity(o, 1);
        for _ in 0..j {
            m = m.kron(&z);
        }
        m = m.kron(last);
        for _ in j + 1..qubits {
            m = m.kron(&id);
        }
        m
    };
    let gens = (0..n)
        .map(|t| chain(t / 2, if t % 2 == 0 { &x } else { &y }))
        .collect();
    MatrixGrading::new(FinAbGroup::elementary_two(n), gens)
}

/// `M(2^k)` with the `ℤ₂^{2k}` grading by tensor words in `X = diag(-1, 1)`
/// and `Y = antidiag(1, 1)`, and the involution `X* = Φ⁻¹XᵗΦ` where `Φ` is
/// `Φ₁ ⊗ I ⊗ ⋯ ⊗ I` (`Φ₁` skew) for `m = 1` and the identity for `m = 0`.
#[derive(Clone, Debug)]
pub struct InvolutiveMatrixModel {
    m: u8,
    k: usize,
    grading: MatrixGrading,
    phi: MonomialMatrix,
    phi_inv: MonomialMatrix,
}

impl InvolutiveMatrixModel {
    pub fn new(m: u8, k: usize) -> Result<Self> {
        if m > 1 {
            return Err(Error::RangeError(format!(
                "involution type must be 0 or 1, got {m}"
            )));
        }
        if k == 0 {
            return Err(Error::RangeError("involutive model needs k >= 1".into()));
        }
        if k > INVOLUTION_MAX_K {
            return Err(Error::BudgetExceeded {
                what: "building an involutive matrix model",
                budget: 1 << INVOLUTION_MAX_K,
            });
        }
        let grading = pauli_model(&vec![2; k])?;
        let size = grading.size();
        let phi = if m == 1 {
            let one = CycloNum::one(2);
            MonomialMatrix::from_entries(2, 2, [(0, 1, one.clone()), (1, 0, -&one)])?
                .kron(&MonomialMatrix::identity(2, size / 2))
        } else {
            MonomialMatrix::identity(2, size)
        };
        let phi_inv = phi.inverse()?;
        Ok(InvolutiveMatrixModel {
            m,
            k,
            grading,
            phi,
            phi_inv,
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn grading(&self) -> &MatrixGrading {
        &self.grading
    }

    pub fn phi(&self) -> &MonomialMatrix {
        &self.phi
    }

    pub fn star(&self, x: &MonomialMatrix) -> MonomialMatrix {
        self.phi_inv.mul(&x.transpose()).mul(&self.phi)
    }

    /// The quadratic form `f_m` predicted to cut out the skew part.
    pub fn form(&self) -> QuadraticFormF2 {
        let kind = if self.m == 0 {
            QuadKind::F0
        } else {
            QuadKind::F1
        };
        QuadraticFormF2 { kind, k: self.k }
    }
}

/// Supports of `K(M,*)` and `H(M,*)`, computed from the matrices and from
/// the quadratic form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSupports {
    pub m: u8,
    pub k: usize,
    pub skew_by_matrix: BTreeSet<GroupElem>,
    pub symmetric_by_matrix: BTreeSet<GroupElem>,
    pub skew_by_form: BTreeSet<GroupElem>,
    pub symmetric_by_form: BTreeSet<GroupElem>,
}

impl InvolutionSupports {
    pub fn agree(&self) -> bool {
        self.skew_by_matrix == self.skew_by_form
            && self.symmetric_by_matrix == self.symmetric_by_form
    }
}

pub fn involution_support(m: u8, k: usize) -> Result<InvolutionSupports> {
    let model = InvolutiveMatrixModel::new(m, k)?;
    let form = model.form();
    let mut out = InvolutionSupports {
        m,
        k,
        skew_by_matrix: BTreeSet::new(),
        symmetric_by_matrix: BTreeSet::new(),
        skew_by_form: BTreeSet::new(),
        symmetric_by_form: BTreeSet::new(),
    };
    let one = CycloNum::one(2);
    for g in model.grading.group().elements() {
        let b = model.grading.basis_matrix(&g)?;
        let s = model.star(&b);
        if s == b {
            out.symmetric_by_matrix.insert(g.clone());
        } else if combination_equals(&[(one.clone(), &s)], Some((&-&one, &b))) {
            out.skew_by_matrix.insert(g.clone());
        } else {
            return Err(Error::InvalidGroup(format!(
                "graded line {g} is not *-stable"
            )));
        }
        if form.eval(&g) == 1 {
            out.skew_by_form.insert(g);
        } else {
            out.symmetric_by_form.insert(g);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Quadratic forms over F₂

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuadKind {
    /// `h` on `F₂^{2k+1}`.
    H,
    /// `f₀` on `F₂^{2k}`.
    F0,
    /// `f₁` on `F₂^{2k}`.
    F1,
}

impl fmt::Display for QuadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadKind::H => "h",
            QuadKind::F0 => "f0",
            QuadKind::F1 => "f1",
        })
    }
}

impl FromStr for QuadKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "h" => Ok(QuadKind::H),
            "f0" => Ok(QuadKind::F0),
            "f1" => Ok(QuadKind::F1),
            other => Err(Error::Parse(format!("unknown quadratic form '{other}'"))),
        }
    }
}

/// One of the forms `h`, `f₀`, `f₁`, evaluated literally (squares included).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticFormF2 {
    pub kind: QuadKind,
    pub k: usize,
}

impl QuadraticFormF2 {
    pub fn new(kind: QuadKind, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::RangeError("quadratic forms need k >= 1".into()));
        }
        Ok(QuadraticFormF2 { kind, k })
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            QuadKind::H => 2 * self.k + 1,
            _ => 2 * self.k,
        }
    }

    pub fn group(&self) -> FinAbGroup {
        FinAbGroup::elementary_two(self.dimension())
    }

    pub fn eval(&self, a: &GroupElem) -> u32 {
        let x = a.residues();
        let mut q: u32 = (0..self.k).map(|i| x[2 * i] * x[2 * i + 1]).sum();
        match self.kind {
            QuadKind::H => q += x[2 * self.k] * x[2 * self.k],
            QuadKind::F0 => {}
            QuadKind::F1 => q += x[0] * x[0] + x[1] * x[1],
        }
        q % 2
    }

    /// `β₁(a, b) = Σ (a_{2i} b_{2i-1} - a_{2i-1} b_{2i})`, reduced mod 2.
    pub fn beta1(&self, a: &GroupElem, b: &GroupElem) -> u32 {
        let (x, y) = (a.residues(), b.residues());
        (0..self.k)
            .map(|i| x[2 * i + 1] * y[2 * i] + x[2 * i] * y[2 * i + 1])
            .sum::<u32>()
            % 2
    }

    /// `q(a + b) - q(a) - q(b)` mod 2.
    pub fn polarization(&self, a: &GroupElem, b: &GroupElem) -> u32 {
        let g = self.group();
        let s = g.add(a, b).expect("elements of the form's group");
        (self.eval(&s) + self.eval(a) + self.eval(b)) % 2
    }

    /// `β(a, b) = (-1)^{β₁(a, b)}`.
    pub fn bicharacter(&self) -> Bicharacter {
        let r = self.dimension();
        let mut m = vec![vec![0i64; r]; r];
        for i in 0..self.k {
            m[2 * i + 1][2 * i] = 1;
            m[2 * i][2 * i + 1] = 1;
        }
        Bicharacter::new(self.group(), 2, m).expect("symplectic pairing")
    }
}

// ---------------------------------------------------------------------------
// Family constructors

/// `β` on `⊕ ℤ_{n_t}²` with `β((i,j),(s,t)) = ε^{it-js}` on every block.
pub fn nonsingular_bicharacter(orders: &[u64]) -> Result<Bicharacter> {
    check_orders(orders)?;
    let order = orders.iter().fold(1u64, |a, b| a.lcm(b));
    let doubled: Vec<u64> = orders.iter().flat_map(|&n| [n, n]).collect();
    let r = doubled.len();
    let mut m = vec![vec![0i64; r]; r];
    for (t, &n) in orders.iter().enumerate() {
        let e = (order / n) as i64;
        m[2 * t][2 * t + 1] = e;
        m[2 * t + 1][2 * t] = -e;
    }
    Bicharacter::new(FinAbGroup::new(&doubled)?, order as u32, m)
}

/// `R⁻ = G∖{0}` (Lie) or `R⁺ = G` (Jordan) for the nonsingular `β`.
pub fn family_nonsingular(orders: &[u64], kind: Kind) -> Result<SkewRootSystem> {
    let beta = nonsingular_bicharacter(orders)?;
    let roots: Vec<GroupElem> = beta
        .group()
        .elements()
        .filter(|g| kind == Kind::Jordan || !g.is_zero())
        .collect();
    SkewRootSystem::new(kind, beta, roots)
}

/// `β(a, b) = (-1)^{(Σa_i)(Σb_i) - Σa_ib_i}` on `ℤ₂ⁿ`.
pub fn clifford_bicharacter(n: usize) -> Result<Bicharacter> {
    if n < 2 {
        return Err(Error::RangeError(format!(
            "Clifford family needs n >= 2, got {n}"
        )));
    }
    let m = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i != j)).collect())
        .collect();
    Bicharacter::new(FinAbGroup::elementary_two(n), 2, m)
}

/// The subgroup `G₁ ⊆ ℤ₂ⁿ` generated by the `e_i + e_j`, presented on the
/// basis `f_j = e_j + e_{j+1}`, with its embedding.
pub fn clifford_subgroup(n: usize) -> Result<(FinAbGroup, GroupHom)> {
    if n < 2 {
        return Err(Error::RangeError(format!(
            "Clifford family needs n >= 2, got {n}"
        )));
    }
    let g = FinAbGroup::elementary_two(n);
    let basis = (0..n - 1)
        .map(|j| {
            let mut v = vec![0i64; n];
            v[j] = 1;
            v[j + 1] = 1;
            g.elem(&v)
        })
        .collect::<Result<Vec<_>>>()?;
    g.subgroup_with_basis(&basis)
}

/// Jordan: `R⁺ = {0, e_i}` on `ℤ₂ⁿ` (n ≥ 2). Lie: `R⁻ = {e_i + e_j}` over
/// `G₁` in the coordinates of [`clifford_subgroup`] (n ≥ 3).
pub fn family_clifford(n: usize, kind: Kind) -> Result<SkewRootSystem> {
    let beta = clifford_bicharacter(n)?;
    match kind {
        Kind::Jordan => {
            let g = beta.group().clone();
            let roots = std::iter::once(g.zero()).chain(g.generators());
            SkewRootSystem::new(kind, beta, roots.collect::<Vec<_>>())
        }
        Kind::Lie => {
            if n < 3 {
                return Err(Error::RangeError(format!(
                    "Clifford Lie family needs n >= 3, got {n}"
                )));
            }
            let (g1, emb) = clifford_subgroup(n)?;
            let beta1 = beta.pull_back(&emb)?;
            let mut roots = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let v: Vec<i64> = (0..n - 1).map(|l| i64::from(i <= l && l < j)).collect();
                    roots.push(g1.elem(&v)?);
                }
            }
            SkewRootSystem::new(kind, beta1, roots)
        }
    }
}

fn quadratic_range(q: QuadKind, kind: Kind) -> usize {
    match (q, kind) {
        (QuadKind::H, Kind::Lie) | (QuadKind::F0, Kind::Lie) | (QuadKind::F1, Kind::Jordan) => 2,
        _ => 1,
    }
}

fn quadratic_form_in_range(q: QuadKind, k: usize, kind: Kind) -> Result<QuadraticFormF2> {
    let min = quadratic_range(q, kind);
    if k < min {
        return Err(Error::RangeError(format!(
            "{q} {kind} family needs k >= {min}, got {k}"
        )));
    }
    let form = QuadraticFormF2::new(q, k)?;
    if 1u64 << form.dimension() > DEFAULT_ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "building a quadratic-form family",
            budget: DEFAULT_ENUMERATION_BUDGET,
        });
    }
    Ok(form)
}

/// The roots cut out by `h`, `f₀` or `f₁`: value 1 off the radical (Lie) or
/// value 0 (Jordan).
pub fn family_quadratic(q: QuadKind, k: usize, kind: Kind) -> Result<SkewRootSystem> {
    let form = quadratic_form_in_range(q, k, kind)?;
    let beta = form.bicharacter();
    let g = form.group();
    let rad_generator = (q == QuadKind::H).then(|| g.generator(2 * k));
    let roots: Vec<GroupElem> = g
        .elements()
        .filter(|a| match kind {
            Kind::Lie => !a.is_zero() && Some(a) != rad_generator.as_ref() && form.eval(a) == 1,
            Kind::Jordan => form.eval(a) == 0,
        })
        .collect();
    SkewRootSystem::new(kind, beta, roots)
}

/// The explicit generating sets displayed with each quadratic family.
pub fn generating_witness(q: QuadKind, k: usize, kind: Kind) -> Result<Vec<GroupElem>> {
    let form = quadratic_form_in_range(q, k, kind)?;
    let g = form.group();
    let r = form.dimension();
    // 1-based coordinate lists
    let elem = |idx: &[usize]| {
        let mut v = vec![0i64; r];
        for &i in idx {
            v[i - 1] += 1;
        }
        g.elem(&v).expect("coordinates within range")
    };
    let mut b = Vec::new();
    match (q, kind) {
        (QuadKind::H, Kind::Lie) => {
            for i in 1..=k {
                b.push(elem(&[2 * i - 1, 2 * i]));
                b.push(elem(&[2 * i, 2 * k + 1]));
            }
            b.push(elem(&(2 * k - 3..=2 * k + 1).collect::<Vec<_>>()));
        }
        (QuadKind::H, Kind::Jordan) => {
            for i in 1..=2 * k {
                b.push(elem(&[i]));
            }
            b.push(elem(&[2 * k - 1, 2 * k, 2 * k + 1]));
        }
        (QuadKind::F0, Kind::Lie) => {
            for i in 1..=k {
                let next = if i == k { 1 } else { 2 * i + 1 };
                b.push(elem(&[2 * i - 1, 2 * i]));
                b.push(elem(&[2 * i - 1, 2 * i, next]));
            }
        }
        (QuadKind::F0, Kind::Jordan) => {
            for i in 1..=2 * k {
                b.push(elem(&[i]));
            }
        }
        (QuadKind::F1, Kind::Lie) => {
            b.push(elem(&[1]));
            for i in 1..=k {
                b.push(elem(&[2 * i - 1, 2 * i]));
            }
            for i in 1..k {
                b.push(elem(&[2 * i - 1, 2 * i, 2 * i + 1]));
            }
        }
        (QuadKind::F1, Kind::Jordan) => {
            for i in 3..=2 * k {
                b.push(elem(&[i]));
            }
            b.push(elem(&[1, 2, 3, 4]));
            b.push(elem(&[1, 3, 4]));
        }
    }
    Ok(b)
}

// ---------------------------------------------------------------------------
// Family names

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilySpec {
    Nonsingular(Vec<u64>),
    Clifford(usize),
    Quadratic(QuadKind, usize),
}

/// A family member such as `quad:f1:2:lie`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilyName {
    pub spec: FamilySpec,
    pub kind: Kind,
}

impl FamilyName {
    pub fn new(spec: FamilySpec, kind: Kind) -> Self {
        FamilyName { spec, kind }
    }

    /// The validated root system alone, without cocycle or models.
    pub fn system(&self) -> Result<SkewRootSystem> {
        match &self.spec {
            FamilySpec::Nonsingular(orders) => family_nonsingular(orders, self.kind),
            FamilySpec::Clifford(n) => family_clifford(*n, self.kind),
            FamilySpec::Quadratic(q, k) => family_quadratic(*q, *k, self.kind),
        }
    }

    /// `|R|` predicted by the cardinality formulas.
    pub fn expected_cardinality(&self) -> u64 {
        let lie = self.kind == Kind::Lie;
        match &self.spec {
            FamilySpec::Nonsingular(orders) => {
                let n: u64 = orders.iter().product();
                if lie {
                    n * n - 1
                } else {
                    n * n
                }
            }
            FamilySpec::Clifford(n) => {
                let n = *n as u64;
                if lie {
                    n * (n - 1) / 2
                } else {
                    n + 1
                }
            }
            FamilySpec::Quadratic(q, k) => {
                let (big, small) = (1u64 << (2 * k - 1), 1u64 << (k - 1));
                match (q, lie) {
                    (QuadKind::H, true) => (1 << (2 * k)) - 1,
                    (QuadKind::H, false) => 1 << (2 * k),
                    (QuadKind::F0, true) | (QuadKind::F1, false) => big - small,
                    (QuadKind::F0, false) | (QuadKind::F1, true) => big + small,
                }
            }
        }
    }

    /// Whether the system is expected to be reduced (`Rad(β) = 0`).
    pub fn expected_reduced(&self) -> bool {
        match &self.spec {
            FamilySpec::Nonsingular(_) => true,
            FamilySpec::Clifford(n) => (n % 2 == 1) == (self.kind == Kind::Lie),
            FamilySpec::Quadratic(q, _) => *q != QuadKind::H,
        }
    }

    pub fn expected_type(&self) -> ClassicalType {
        let lie = self.kind == Kind::Lie;
        match &self.spec {
            FamilySpec::Nonsingular(orders) => {
                let n = orders.iter().product::<u64>() as usize;
                if lie {
                    ClassicalType::Sl(n)
                } else {
                    ClassicalType::MatrixJordan(n)
                }
            }
            FamilySpec::Clifford(n) => {
                if lie {
                    ClassicalType::So(*n)
                } else {
                    ClassicalType::SpinFactor(*n)
                }
            }
            FamilySpec::Quadratic(q, k) => {
                let n = 1usize << k;
                match (q, lie) {
                    (QuadKind::H, true) => ClassicalType::Sl(n),
                    (QuadKind::H, false) => ClassicalType::MatrixJordan(n),
                    (QuadKind::F0, true) => ClassicalType::So(n),
                    (QuadKind::F0, false) => ClassicalType::HermitianReal(n),
                    (QuadKind::F1, true) => ClassicalType::Sp(n),
                    (QuadKind::F1, false) => ClassicalType::HermitianQuaternion(n),
                }
            }
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.spec {
            FamilySpec::Nonsingular(orders) => {
                let o: Vec<String> = orders.iter().map(u64::to_string).collect();
                write!(f, "nonsingular:{}", o.join(","))?;
            }
            FamilySpec::Clifford(n) => write!(f, "clifford:{n}")?,
            FamilySpec::Quadratic(q, k) => write!(f, "quad:{q}:{k}")?,
        }
        write!(f, ":{}", self.kind)
    }
}

impl FromStr for FamilyName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unrecognised family name '{s}'"));
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let (kind_str, body) = parts.split_last().ok_or_else(bad)?;
        let kind: Kind = kind_str.parse()?;
        let int = |x: &str| x.parse::<usize>().map_err(|_| bad());
        let spec = match body {
            ["nonsingular", orders] => FamilySpec::Nonsingular(
                orders
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            ),
            ["clifford", n] => FamilySpec::Clifford(int(n)?),
            ["quad", q, k] => FamilySpec::Quadratic(q.parse()?, int(k)?),
            _ => return Err(bad()),
        };
        Ok(FamilyName { spec, kind })
    }
}

// ---------------------------------------------------------------------------
// Classical types and identification

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalType {
    Sl(usize),
    So(usize),
    /// `sp_n` with `n` the (even) matrix size.
    Sp(usize),
    /// `M(n)⁺`.
    MatrixJordan(usize),
    /// `F1 ⊕ V` for a nonsingular symmetric form on `V = Fⁿ`.
    SpinFactor(usize),
    /// Symmetric `n×n` matrices under the symmetric product.
    HermitianReal(usize),
    /// `H(Q_n)`: the symmetric elements of `M(n)` under a symplectic involution.
    HermitianQuaternion(usize),
}

impl ClassicalType {
    pub fn dim(&self) -> usize {
        match *self {
            ClassicalType::Sl(n) => n * n - 1,
            ClassicalType::So(n) => n * (n - 1) / 2,
            ClassicalType::Sp(n) => (n / 2) * (n + 1),
            ClassicalType::MatrixJordan(n) => n * n,
            ClassicalType::SpinFactor(n) => n + 1,
            ClassicalType::HermitianReal(n) => n * (n + 1) / 2,
            ClassicalType::HermitianQuaternion(n) => n * (n - 1) / 2,
        }
    }

    pub fn formula(&self) -> &'static str {
        match self {
            ClassicalType::Sl(_) => "n^2-1",
            ClassicalType::So(_) => "n(n-1)/2",
            ClassicalType::Sp(_) => "m(2m+1), n=2m",
            ClassicalType::MatrixJordan(_) => "n^2",
            ClassicalType::SpinFactor(_) => "n+1",
            ClassicalType::HermitianReal(_) => "n(n+1)/2",
            ClassicalType::HermitianQuaternion(_) => "n(n-1)/2",
        }
    }

    pub fn is_simple(&self) -> bool {
        match *self {
            ClassicalType::So(n) => n >= 3 && n != 4,
            ClassicalType::Sl(n) => n >= 2,
            _ => true,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalType::Sl(n) => write!(f, "sl_{n}"),
            ClassicalType::So(n) => write!(f, "so_{n}"),
            ClassicalType::Sp(n) => write!(f, "sp_{n}"),
            ClassicalType::MatrixJordan(n) => write!(f, "M_{n}^+"),
            ClassicalType::SpinFactor(n) => write!(f, "J(F^{n}, symmetric form)"),
            ClassicalType::HermitianReal(n) => write!(f, "H(F_{n})"),
            ClassicalType::HermitianQuaternion(n) => write!(f, "H(Q_{n})"),
        }
    }
}

/// Where the images of a matrix model are required to lie.
#[derive(Clone, Debug)]
pub enum Ambient {
    /// All of `M(n)`.
    Whole,
    /// Trace zero matrices.
    Traceless,
    /// `X* = -X` for `X* = Φ⁻¹XᵗΦ`.
    Skew(MonomialMatrix),
    /// `X* = X` for `X* = Φ⁻¹XᵗΦ`.
    SelfAdjoint(MonomialMatrix),
    /// No membership claim; only the dictionary is checked.
    Unconstrained,
}

impl Ambient {
    fn dim(&self, n: usize) -> Option<usize> {
        let phi_symmetric = |phi: &MonomialMatrix| phi.transpose() == *phi;
        match self {
            Ambient::Whole => Some(n * n),
            Ambient::Traceless => Some(n * n - 1),
            Ambient::Skew(phi) if phi_symmetric(phi) => Some(n * (n - 1) / 2),
            Ambient::Skew(_) => Some(n * (n + 1) / 2),
            Ambient::SelfAdjoint(phi) if phi_symmetric(phi) => Some(n * (n + 1) / 2),
            Ambient::SelfAdjoint(_) => Some(n * (n - 1) / 2),
            Ambient::Unconstrained => None,
        }
    }

    fn contains(&self, x: &MonomialMatrix) -> Result<bool> {
        let star = |phi: &MonomialMatrix| -> Result<MonomialMatrix> {
            Ok(phi.inverse()?.mul(&x.transpose()).mul(phi))
        };
        Ok(match self {
            Ambient::Whole | Ambient::Unconstrained => true,
            Ambient::Traceless => x.trace().is_zero(),
            Ambient::Skew(phi) => combination_equals(
                &[(CycloNum::one(1), &star(phi)?), (CycloNum::one(1), x)],
                None,
            ),
            Ambient::SelfAdjoint(phi) => star(phi)? == *x,
        })
    }
}

/// Images `u_g ↦ B_g` of the basis of a graded algebra, in basis order.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub description: String,
    pub images: Vec<MonomialMatrix>,
    pub ambient: Ambient,
}

impl MatrixModel {
    pub fn size(&self) -> usize {
        self.images.first().map_or(0, MonomialMatrix::size)
    }
}

/// Outcome of checking a matrix model against a graded algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DictionaryCheck {
    pub description: String,
    pub size: usize,
    /// Structure constants agree: `[B_a, B_b] = c_{a,b} B_{a+b}` (Lie) or
    /// `½(B_aB_b + B_bB_a) = c_{a,b} B_{a+b}` (Jordan).
    pub homomorphism: bool,
    pub independent: bool,
    pub in_ambient: bool,
    pub ambient_dim: Option<usize>,
    pub dim: usize,
}

impl DictionaryCheck {
    /// The model is an isomorphism onto its ambient algebra (or onto its
    /// image when no ambient is claimed).
    pub fn verified(&self) -> bool {
        self.homomorphism
            && self.independent
            && self.in_ambient
            && self.ambient_dim.is_none_or(|d| d == self.dim)
    }
}

impl fmt::Display for DictionaryCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dictionary [{}] size {}: {}",
            self.description,
            self.size,
            if self.verified() {
                "verified"
            } else {
                "FAILED"
            }
        )?;
        if !self.verified() {
            write!(
                f,
                " (homomorphism {}, independent {}, in ambient {}, ambient dim {:?} vs {})",
                self.homomorphism, self.independent, self.in_ambient, self.ambient_dim, self.dim
            )?;
        }
        Ok(())
    }
}

pub fn verify_dictionary(alg: &GradedAlgebra, model: &MatrixModel) -> Result<DictionaryCheck> {
    if model.images.len() != alg.dim() {
        return Err(Error::ShapeMismatch(format!(
            "{} images for an algebra of dimension {}",
            model.images.len(),
            alg.dim()
        )));
    }
    let dim = alg.dim();
    let one = CycloNum::one(1);
    let half = CycloNum::from_rational(1, BigRational::new(1.into(), 2.into()));
    let (c1, c2) = match alg.kind() {
        Kind::Lie => (one.clone(), -&one),
        Kind::Jordan => (half.clone(), half),
    };
    let imgs = &model.images;
    let homomorphism = (0..dim).into_par_iter().all(|i| {
        (0..dim).all(|j| {
            let p = imgs[i].mul(&imgs[j]);
            let q = imgs[j].mul(&imgs[i]);
            let target = alg.product(i, j).map(|(k, c)| (c, &imgs[k]));
            combination_equals(&[(c1.clone(), &p), (c2.clone(), &q)], target)
        })
    });
    let mut ech = SparseEchelon::new();
    let independent = imgs.iter().all(|m| ech.insert(m.flat_entries()));
    let mut in_ambient = true;
    for m in imgs {
        if !model.ambient.contains(m)? {
            in_ambient = false;
            break;
        }
    }
    Ok(DictionaryCheck {
        description: model.description.clone(),
        size: model.size(),
        homomorphism,
        independent,
        in_ambient,
        ambient_dim: model.ambient.dim(model.size()),
        dim,
    })
}

// ---------------------------------------------------------------------------
// Instances

/// A family member with the data needed to build and identify its algebra.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub name: FamilyName,
    pub system: SkewRootSystem,
    /// Standard cocycle, pulled back through the reduction or embedding when
    /// one is involved.
    pub cocycle: Cocycle,
    /// Reduced system and projection, when `Rad(β)` is nontrivial by design.
    pub reduction: Option<(SkewRootSystem, GroupHom)>,
    /// Embedding of the grading group into an ambient group.
    pub embedding: Option<GroupHom>,
    /// Matrix models, built only up to [`MODEL_SIZE_LIMIT`].
    pub models: Vec<MatrixModel>,
}

impl FamilyInstance {
    pub fn build_algebra(&self) -> Result<GradedAlgebra> {
        GradedAlgebra::build(self.system.kind(), &self.system, &self.cocycle)
    }

    /// The algebra of the reduced system, when there is one.
    pub fn build_reduced_algebra(&self) -> Result<Option<GradedAlgebra>> {
        self.reduction
            .as_ref()
            .map(|(r, _)| GradedAlgebra::build_standard(r))
            .transpose()
    }
}

fn model_images(
    system: &SkewRootSystem,
    grading: &MatrixGrading,
    degree: impl Fn(&GroupElem) -> GroupElem,
) -> Result<Vec<MonomialMatrix>> {
    system
        .roots()
        .iter()
        .map(|g| grading.basis_matrix(&degree(g)))
        .collect()
}

pub fn instantiate(name: &FamilyName) -> Result<FamilyInstance> {
    let kind = name.kind;
    let lie = kind == Kind::Lie;
    let mut models = Vec::new();
    let mut reduction = None;
    let mut embedding = None;
    let (system, cocycle) = match &name.spec {
        FamilySpec::Nonsingular(orders) => {
            let system = family_nonsingular(orders, kind)?;
            let cocycle = Cocycle::standard(system.beta());
            let size: u64 = orders.iter().product();
            if size as usize <= MODEL_SIZE_LIMIT {
                let grading = pauli_model(orders)?;
                models.push(MatrixModel {
                    description: "generalized Pauli tensors".into(),
                    images: model_images(&system, &grading, GroupElem::clone)?,
                    ambient: if lie {
                        Ambient::Traceless
                    } else {
                        Ambient::Whole
                    },
                });
            }
            (system, cocycle)
        }
        FamilySpec::Clifford(n) => {
            let n = *n;
            let system = family_clifford(n, kind)?;
            let ambient_beta = clifford_bicharacter(n)?;
            let standard = Cocycle::standard(&ambient_beta);
            let (cocycle, emb) = if lie {
                let (_, emb) = clifford_subgroup(n)?;
                (standard.pull_back(&emb)?, Some(emb))
            } else {
                (standard, None)
            };
            if n.div_ceil(2) <= MODEL_SIZE_LIMIT.trailing_zeros() as usize {
                let grading = clifford_model(n)?;
                let lift = |g: &GroupElem| match &emb {
                    Some(e) => e.apply(g).expect("root in the subgroup"),
                    None => g.clone(),
                };
                models.push(MatrixModel {
                    description: "Clifford generators as Jordan-Wigner chains".into(),
                    images: model_images(&system, &grading, lift)?,
                    ambient: Ambient::Unconstrained,
                });
            }
            if let (Some(e), true) = (&emb, n <= MODEL_SIZE_LIMIT) {
                let two = CycloNum::from_integer(1, 2);
                let images = system
                    .roots()
                    .iter()
                    .map(|g| {
                        let x = e.apply(g)?;
                        let ij: Vec<usize> = (0..n).filter(|&t| x.residues()[t] == 1).collect();
                        let (i, j) = (ij[0], ij[1]);
                        MonomialMatrix::from_entries(1, n, [(i, j, two.clone()), (j, i, -&two)])
                    })
                    .collect::<Result<Vec<_>>>()?;
                models.push(MatrixModel {
                    description: "v_i v_j -> 2(E_ij - E_ji) in so_n".into(),
                    images,
                    ambient: Ambient::Skew(MonomialMatrix::identity(1, n)),
                });
            }
            embedding = emb;
            (system, cocycle)
        }
        FamilySpec::Quadratic(q, k) => {
            let (q, k) = (*q, *k);
            let system = family_quadratic(q, k, kind)?;
            let size = 1usize << k;
            if q == QuadKind::H {
                let (reduced, p) = system.reduce_fully(DEFAULT_ENUMERATION_BUDGET)?;
                let cocycle = Cocycle::standard(reduced.beta()).pull_back(&p)?;
                if size <= MODEL_SIZE_LIMIT {
                    let grading = pauli_model(&vec![2; k])?;
                    models.push(MatrixModel {
                        description: "Pauli tensors through the reduction".into(),
                        images: model_images(&system, &grading, |g| {
                            p.apply(g).expect("projection")
                        })?,
                        ambient: if lie {
                            Ambient::Traceless
                        } else {
                            Ambient::Whole
                        },
                    });
                }
                reduction = Some((reduced, p));
                (system, cocycle)
            } else {
                let cocycle = Cocycle::standard(system.beta());
                if size <= MODEL_SIZE_LIMIT {
                    let model = InvolutiveMatrixModel::new(u8::from(q == QuadKind::F1), k)?;
                    let phi = model.phi().clone();
                    models.push(MatrixModel {
                        description: format!(
                            "tensor words in X, Y with involution of type {}",
                            model.m()
                        ),
                        images: model_images(&system, model.grading(), GroupElem::clone)?,
                        ambient: if lie {
                            Ambient::Skew(phi)
                        } else {
                            Ambient::SelfAdjoint(phi)
                        },
                    });
                }
                (system, cocycle)
            }
        }
    };
    Ok(FamilyInstance {
        name: name.clone(),
        system,
        cocycle,
        reduction,
        embedding,
        models,
    })
}

/// Identification of a family algebra with its classical counterpart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub family: String,
    pub dim: usize,
    pub expected: ClassicalType,
    pub expected_dim: usize,
    pub dictionaries: Vec<DictionaryCheck>,
}

impl Identification {
    pub fn dim_matches(&self) -> bool {
        self.dim == self.expected_dim
    }

    pub fn matches(&self) -> bool {
        self.dim_matches() && self.dictionaries.iter().all(DictionaryCheck::verified)
    }
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "identification: {} (dim {} = {} by {}: {})",
            self.expected,
            self.dim,
            self.expected_dim,
            self.expected.formula(),
            if self.dim_matches() {
                "match"
            } else {
                "MISMATCH"
            }
        )?;
        for d in &self.dictionaries {
            writeln!(f, "  {d}")?;
        }
        if self.dictionaries.is_empty() {
            writeln!(f, "  no matrix model within size {MODEL_SIZE_LIMIT}")?;
        }
        if !self.expected.is_simple() {
            writeln!(
                f,
                "  note: {} is not simple (so_n is simple only for n >= 3, n != 4)",
                self.expected
            )?;
        }
        Ok(())
    }
}

pub fn identify(alg: &GradedAlgebra, inst: &FamilyInstance) -> Result<Identification> {
    if alg.system().roots() != inst.system.roots() || alg.kind() != inst.name.kind {
        return Err(Error::MismatchedAlgebras);
    }
    let expected = inst.name.expected_type();
    let dictionaries = inst
        .models
        .iter()
        .map(|m| verify_dictionary(alg, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Identification {
        family: inst.name.to_string(),
        dim: alg.dim(),
        expected,
        expected_dim: expected.dim(),
        dictionaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identified(name: &str) -> Identification {
        let inst = instantiate(&name.parse().unwrap()).unwrap();
        let alg = inst.build_algebra().unwrap();
        identify(&alg, &inst).unwrap()
    }

    #[test]
    fn small_members_are_identified() {
        for name in [
            "nonsingular:2:lie",
            "nonsingular:3:jordan",
            "clifford:3:lie",
            "clifford:4:jordan",
            "quad:h:2:lie",
            "quad:f0:2:jordan",
            "quad:f1:2:lie",
        ] {
            let id = identified(name);
            assert!(id.matches(), "{name}: {id}");
            assert!(!id.dictionaries.is_empty(), "{name}");
        }
    }

    #[test]
    fn involution_base_cases() {
        let s = involution_support(1, 1).unwrap();
        assert!(s.agree());
        assert_eq!(s.skew_by_matrix.len(), 3);
        let s = involution_support(0, 1).unwrap();
        assert_eq!(
            s.skew_by_matrix
                .iter()
                .map(|g| g.residues().to_vec())
                .collect::<Vec<_>>(),
            vec![vec![1, 1]]
        );
    }

    #[test]
    fn family_names_round_trip() {
        for s in ["nonsingular:2,3:lie", "clifford:5:jordan", "quad:f0:3:lie"] {
            assert_eq!(s.parse::<FamilyName>().unwrap().to_string(), s);
        }
        assert!("quad:g:2:lie".parse::<FamilyName>().is_err());
    }
}
