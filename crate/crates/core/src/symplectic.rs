//! Alternating bicharacters, bilinear 2-cocycles and twisted group algebras.
//!
//! Both β and ξ are stored as integer exponent matrices on the standard
//! generators: `β(a_i, a_j) = ζ_N^{m_ij}`, `ξ(a_i, a_j) = ζ_N^{s_ij}`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::abgroup::{FinAbGroup, GroupElem, GroupHom, Subgroup};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

fn bilinear_exponent(matrix: &[Vec<u32>], order: u32, a: &GroupElem, b: &GroupElem) -> u32 {
    let n = order as u64;
    let mut acc = 0u64;
    for (i, &x) in a.residues().iter().enumerate() {
        if x == 0 {
            continue;
        }
        let row = &matrix[i];
        let inner: u64 = b
            .residues()
            .iter()
            .zip(row)
            .map(|(&y, &m)| y as u64 * m as u64 % n)
            .sum();
        acc = (acc + x as u64 * (inner % n)) % n;
    }
    acc as u32
}

fn reduce_matrix(
    group: &FinAbGroup,
    order: u32,
    expo: &[Vec<i64>],
    what: &str,
) -> Result<Vec<Vec<u32>>> {
    let k = group.rank();
    if order == 0 {
        return Err(Error::InvalidBicharacter(
            "root order must be positive".into(),
        ));
    }
    if expo.len() != k || expo.iter().any(|r| r.len() != k) {
        return Err(Error::ShapeMismatch(format!(
            "{what} exponent matrix must be {k}x{k}"
        )));
    }
    Ok(expo
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| x.rem_euclid(order as i64) as u32)
                .collect()
        })
        .collect())
}

fn lift(matrix: &[Vec<u32>], from: u32, to: u32) -> Vec<Vec<u32>> {
    let f = to / from;
    matrix
        .iter()
        .map(|r| r.iter().map(|&x| x * f % to).collect())
        .collect()
}

fn block_diagonal(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p + q]; p + q];
    for i in 0..p {
        out[i][..p].copy_from_slice(&a[i]);
    }
    for i in 0..q {
        out[p + i][p..].copy_from_slice(&b[i]);
    }
    out
}

/// Exponent matrix of `(x, y) ↦ f(h(x), h(y))` for a bilinear `f` on the
/// codomain of `h`.
fn pulled_back(matrix: &[Vec<u32>], order: u32, hom: &GroupHom) -> Vec<Vec<u32>> {
    let imgs = hom.images();
    imgs.iter()
        .map(|x| {
            imgs.iter()
                .map(|y| bilinear_exponent(matrix, order, x, y))
                .collect()
        })
        .collect()
}

fn exponents_equal(a: &[Vec<u32>], na: u32, b: &[Vec<u32>], nb: u32) -> bool {
    let l = na.lcm(&nb);
    lift(a, na, l) == lift(b, nb, l)
}

/// Alternating bicharacter `β: G × G -> μ_N`.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    group: FinAbGroup,
    order: u32,
    expo: Vec<Vec<u32>>,
}

impl Bicharacter {
    /// Checks `m_ii ≡ 0`, `m_ij + m_ji ≡ 0` and `n_i m_ij ≡ 0 (mod N)`.
    pub fn new(group: FinAbGroup, order: u32, expo: Vec<Vec<i64>>) -> Result<Self> {
        let m = reduce_matrix(&group, order, &expo, "bicharacter")?;
        let n = order as u64;
        let orders = group.orders();
        for i in 0..m.len() {
            if m[i][i] != 0 {
                return Err(Error::InvalidBicharacter(format!(
                    "β(a_{i}, a_{i}) must be 1"
                )));
            }
            for j in 0..m.len() {
                if !((m[i][j] + m[j][i]) as u64).is_multiple_of(n) {
                    return Err(Error::InvalidBicharacter(format!(
                        "β(a_{i}, a_{j}) β(a_{j}, a_{i}) must be 1"
                    )));
                }
                if !(orders[i] as u64 * m[i][j] as u64).is_multiple_of(n) {
                    return Err(Error::InvalidBicharacter(format!(
                        "β(a_{i}, a_{j})^{} must be 1",
                        orders[i]
                    )));
                }
            }
        }
        Ok(Bicharacter {
            group,
            order,
            expo: m,
        })
    }

    /// Builds β from its strictly lower triangle (row `i` lists `m_{i,0..i}`).
    pub fn from_lower_triangle(group: FinAbGroup, order: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let k = group.rank();
        if rows.len() != k.saturating_sub(1)
            || rows.iter().enumerate().any(|(i, r)| r.len() != i + 1)
        {
            return Err(Error::ShapeMismatch(format!(
                "a rank {k} group needs {} lower-triangular rows of lengths 1..{}",
                k.saturating_sub(1),
                k.saturating_sub(1)
            )));
        }
        let mut full = vec![vec![0i64; k]; k];
        for (i, r) in rows.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                full[i + 1][j] = x;
                full[j][i + 1] = -x;
            }
        }
        Self::new(group, order, full)
    }

    pub fn trivial(group: FinAbGroup) -> Self {
        let k = group.rank();
        let order = group.exponent().max(1);
        Bicharacter {
            group,
            order,
            expo: vec![vec![0; k]; k],
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// The `N` with values in `μ_N`.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.expo
    }

    /// Exponent `e` with `β(a, b) = ζ_N^e`.
    pub fn eval(&self, a: &GroupElem, b: &GroupElem) -> Result<u32> {
        if !self.group.contains(a) || !self.group.contains(b) {
            return Err(Error::MismatchedGroups(format!(
                "{a} or {b} is not in {}",
                self.group
            )));
        }
        Ok(self.eval_unchecked(a, b))
    }

    pub(crate) fn eval_unchecked(&self, a: &GroupElem, b: &GroupElem) -> u32 {
        bilinear_exponent(&self.expo, self.order, a, b)
    }

    pub fn value(&self, a: &GroupElem, b: &GroupElem) -> Result<CycloNum> {
        Ok(CycloNum::root(self.order, self.eval(a, b)? as i64))
    }

    /// `Rad(β) = {g | β(g, h) = 1 for all h}`, found by testing the generators.
    pub fn radical(&self, budget: u64) -> Result<Subgroup> {
        let gens = self.group.generators();
        let elems = self
            .group
            .elements_within(budget)?
            .into_iter()
            .filter(|g| gens.iter().all(|h| self.eval_unchecked(g, h) == 0));
        self.group.subgroup_from_elements(elems)
    }

    pub fn is_nonsingular(&self, budget: u64) -> Result<bool> {
        Ok(self.radical(budget)?.is_trivial())
    }

    /// `β₁ ⊥ β₂` on `G₁ ⊕ G₂`, with values lifted to `μ_{lcm(N₁,N₂)}`.
    pub fn orthogonal_sum(&self, other: &Bicharacter) -> Result<Bicharacter> {
        let order = self.order.lcm(&other.order);
        let expo = block_diagonal(
            &lift(&self.expo, self.order, order),
            &lift(&other.expo, other.order, order),
        );
        Ok(Bicharacter {
            group: self.group.direct_sum(&other.group)?,
            order,
            expo,
        })
    }

    /// `(x, y) ↦ β(h(x), h(y))` on the domain of `h`.
    pub fn pull_back(&self, hom: &GroupHom) -> Result<Bicharacter> {
        if hom.codomain() != &self.group {
            return Err(Error::MismatchedGroups(
                "pull-back along a map into another group".into(),
            ));
        }
        Ok(Bicharacter {
            group: hom.domain().clone(),
            order: self.order,
            expo: pulled_back(&self.expo, self.order, hom),
        })
    }

    /// Same map with values read in `μ_M` for a multiple `M` of `N`.
    pub fn with_order(&self, order: u32) -> Result<Bicharacter> {
        if order == 0 || !order.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrders {
                from: self.order,
                to: order,
            });
        }
        Ok(Bicharacter {
            group: self.group.clone(),
            order,
            expo: lift(&self.expo, self.order, order),
        })
    }

    /// `N=<int>` followed by the strictly lower triangle, one row per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("N={}\n", self.order);
        for i in 1..self.expo.len() {
            let row: Vec<String> = self.expo[i][..i].iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Bicharacter::to_text`]; blank lines and `#` comments are skipped.
    pub fn parse_text(group: FinAbGroup, text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `N=<int>` header".into()))?;
        let order = header
            .strip_prefix("N=")
            .or_else(|| header.strip_prefix("N ="))
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Parse(format!("bad bicharacter header `{header}`")))?;
        let rows = lines
            .map(|l| {
                l.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_lower_triangle(group, order, &rows)
    }
}

impl PartialEq for Bicharacter {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && exponents_equal(&self.expo, self.order, &other.expo, other.order)
    }
}

impl Eq for Bicharacter {}

/// Bilinear 2-cocycle `ξ: G × G -> μ_N`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    group: FinAbGroup,
    order: u32,
    expo: Vec<Vec<u32>>,
}

impl Cocycle {
    /// Checks `n_i s_ij ≡ 0 ≡ n_j s_ij (mod N)`.
    pub fn new(group: FinAbGroup, order: u32, expo: Vec<Vec<i64>>) -> Result<Self> {
        let s = reduce_matrix(&group, order, &expo, "cocycle")?;
        let orders = group.orders();
        let n = order as u64;
        for i in 0..s.len() {
            for j in 0..s.len() {
                let x = s[i][j] as u64;
                if !(orders[i] as u64 * x).is_multiple_of(n)
                    || !(orders[j] as u64 * x).is_multiple_of(n)
                {
                    return Err(Error::InvalidCocycle(format!(
                        "ξ(a_{i}, a_{j}) is not well defined"
                    )));
                }
            }
        }
        Ok(Cocycle {
            group,
            order,
            expo: s,
        })
    }

    pub fn trivial(group: FinAbGroup) -> Self {
        let b = Bicharacter::trivial(group);
        Cocycle {
            group: b.group,
            order: b.order,
            expo: b.expo,
        }
    }

    /// `ξ(a_i, a_j) = 1` for `i <= j` and `β(a_i, a_j)` for `i > j`.
    pub fn standard(beta: &Bicharacter) -> Self {
        let k = beta.expo.len();
        let expo = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| if i > j { beta.expo[i][j] } else { 0 })
                    .collect()
            })
            .collect();
        Cocycle {
            group: beta.group.clone(),
            order: beta.order,
            expo,
        }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.expo
    }

    pub fn eval(&self, a: &GroupElem, b: &GroupElem) -> Result<u32> {
        if !self.group.contains(a) || !self.group.contains(b) {
            return Err(Error::MismatchedGroups(format!(
                "{a} or {b} is not in {}",
                self.group
            )));
        }
        Ok(self.eval_unchecked(a, b))
    }

    pub(crate) fn eval_unchecked(&self, a: &GroupElem, b: &GroupElem) -> u32 {
        bilinear_exponent(&self.expo, self.order, a, b)
    }

    pub fn value(&self, a: &GroupElem, b: &GroupElem) -> Result<CycloNum> {
        Ok(CycloNum::root(self.order, self.eval(a, b)? as i64))
    }

    pub(crate) fn value_unchecked(&self, a: &GroupElem, b: &GroupElem) -> CycloNum {
        CycloNum::root(self.order, self.eval_unchecked(a, b) as i64)
    }

    /// `Ψ(ξ)(a, b) = ξ(a, b) ξ(b, a)^{-1}`.
    pub fn psi(&self) -> Bicharacter {
        let k = self.expo.len();
        let n = self.order;
        let expo = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (self.expo[i][j] + n - self.expo[j][i]) % n)
                    .collect()
            })
            .collect();
        Bicharacter {
            group: self.group.clone(),
            order: n,
            expo,
        }
    }

    /// `ξ₁ × ξ₂` on `G₁ ⊕ G₂`.
    pub fn product(&self, other: &Cocycle) -> Result<Cocycle> {
        let order = self.order.lcm(&other.order);
        let expo = block_diagonal(
            &lift(&self.expo, self.order, order),
            &lift(&other.expo, other.order, order),
        );
        Ok(Cocycle {
            group: self.group.direct_sum(&other.group)?,
            order,
            expo,
        })
    }

    /// `(x, y) ↦ ξ(h(x), h(y))`, again a bilinear cocycle.
    pub fn pull_back(&self, hom: &GroupHom) -> Result<Cocycle> {
        if hom.codomain() != &self.group {
            return Err(Error::MismatchedGroups(
                "pull-back along a map into another group".into(),
            ));
        }
        Ok(Cocycle {
            group: hom.domain().clone(),
            order: self.order,
            expo: pulled_back(&self.expo, self.order, hom),
        })
    }
}

impl PartialEq for Cocycle {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && exponents_equal(&self.expo, self.order, &other.expo, other.order)
    }
}

impl Eq for Cocycle {}

/// Element of the twisted group algebra `F^ξ G` with basis `u_g` and
/// `u_a u_b = ξ(a, b) u_{a+b}`.
#[derive(Clone, Debug)]
pub struct TgaElement {
    cocycle: Arc<Cocycle>,
    terms: BTreeMap<GroupElem, CycloNum>,
}

/// The algebra `F^ξ G` itself; hands out elements sharing one cocycle.
#[derive(Clone, Debug)]
pub struct TwistedGroupAlgebra {
    cocycle: Arc<Cocycle>,
}

impl TwistedGroupAlgebra {
    pub fn new(cocycle: Cocycle) -> Self {
        TwistedGroupAlgebra {
            cocycle: Arc::new(cocycle),
        }
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.cocycle.group
    }

    pub fn zero(&self) -> TgaElement {
        TgaElement {
            cocycle: Arc::clone(&self.cocycle),
            terms: BTreeMap::new(),
        }
    }

    /// `c · u_g`.
    pub fn monomial(&self, g: &GroupElem, c: CycloNum) -> Result<TgaElement> {
        if !self.group().contains(g) {
            return Err(Error::MismatchedGroups(format!(
                "{g} is not in {}",
                self.group()
            )));
        }
        let mut x = self.zero();
        if !c.is_zero() {
            x.terms
                .insert(g.clone(), c.embed(c.order().lcm(&self.cocycle.order))?);
        }
        Ok(x)
    }

    pub fn basis(&self, g: &GroupElem) -> Result<TgaElement> {
        self.monomial(g, CycloNum::one(self.cocycle.order))
    }

    pub fn identity(&self) -> TgaElement {
        self.basis(&self.group().zero())
            .expect("zero lies in the group")
    }

    /// `u_g^{-1} = ξ(g, -g)^{-1} u_{-g}`.
    pub fn basis_inverse(&self, g: &GroupElem) -> Result<TgaElement> {
        let minus = self.group().neg(g)?;
        let c = self.cocycle.value_unchecked(g, &minus).inv()?;
        self.monomial(&minus, c)
    }
}

impl TgaElement {
    pub fn terms(&self) -> &BTreeMap<GroupElem, CycloNum> {
        &self.terms
    }

    pub fn coefficient(&self, g: &GroupElem) -> Option<&CycloNum> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_algebra(&self, other: &TgaElement) -> Result<()> {
        if Arc::ptr_eq(&self.cocycle, &other.cocycle) || *self.cocycle == *other.cocycle {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebras)
        }
    }

    fn accumulate(terms: &mut BTreeMap<GroupElem, CycloNum>, g: GroupElem, c: CycloNum) {
        match terms.get_mut(&g) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    terms.remove(&g);
                }
            }
            None if !c.is_zero() => {
                terms.insert(g, c);
            }
            None => {}
        }
    }

    pub fn add(&self, other: &TgaElement) -> Result<TgaElement> {
        self.same_algebra(other)?;
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            Self::accumulate(&mut terms, g.clone(), c.clone());
        }
        Ok(TgaElement {
            cocycle: Arc::clone(&self.cocycle),
            terms,
        })
    }

    pub fn scale(&self, c: &CycloNum) -> TgaElement {
        let mut terms = BTreeMap::new();
        for (g, x) in &self.terms {
            Self::accumulate(&mut terms, g.clone(), x * c);
        }
        TgaElement {
            cocycle: Arc::clone(&self.cocycle),
            terms,
        }
    }

    pub fn mul(&self, other: &TgaElement) -> Result<TgaElement> {
        self.same_algebra(other)?;
        let xi = &*self.cocycle;
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = &(x * y) * &xi.value_unchecked(a, b);
                Self::accumulate(&mut terms, xi.group.add_unchecked(a, b), c);
            }
        }
        Ok(TgaElement {
            cocycle: Arc::clone(&self.cocycle),
            terms,
        })
    }
}

impl PartialEq for TgaElement {
    fn eq(&self, other: &Self) -> bool {
        *self.cocycle == *other.cocycle && self.terms == other.terms
    }
}

impl fmt::Display for TgaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("{c}*u{g}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A multiplicity-free grading by a finite abelian group with chosen nonzero
/// homogeneous elements `a_g`.
pub trait GradedBasis {
    fn grading_group(&self) -> &FinAbGroup;

    /// The scalar `λ` with `a_g a_h = λ a_{g+h}`; `None` when the product vanishes.
    fn structure_scalar(&self, g: &GroupElem, h: &GroupElem) -> Result<Option<CycloNum>>;
}

impl GradedBasis for TwistedGroupAlgebra {
    fn grading_group(&self) -> &FinAbGroup {
        self.group()
    }

    fn structure_scalar(&self, g: &GroupElem, h: &GroupElem) -> Result<Option<CycloNum>> {
        Ok(Some(self.cocycle.value(g, h)?))
    }
}

/// Reads off `β(g, h) = a_g a_h a_g^{-1} a_h^{-1}` from a division grading.
/// Every product of homogeneous basis elements is checked to be nonzero.
pub fn extract_bicharacter<B: GradedBasis + ?Sized>(
    grading: &B,
    budget: u64,
) -> Result<Bicharacter> {
    let group = grading.grading_group().clone();
    let elems = group.elements_within(budget)?;
    let scalar = |g: &GroupElem, h: &GroupElem| -> Result<CycloNum> {
        grading
            .structure_scalar(g, h)?
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::NotDivision(g.to_string(), h.to_string()))
    };
    for g in &elems {
        for h in &elems {
            scalar(g, h)?;
        }
    }
    let order = group.exponent().max(1);
    let gens = group.generators();
    let mut expo = vec![vec![0i64; gens.len()]; gens.len()];
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            let commutator = scalar(gi, gj)?.checked_div(&scalar(gj, gi)?)?;
            let e = commutator.root_exponent(order).ok_or_else(|| {
                Error::InvalidBicharacter(format!(
                    "commutator of degrees {gi} and {gj} is not a root of unity of order dividing {order}"
                ))
            })?;
            expo[i][j] = e as i64;
        }
    }
    Bicharacter::new(group, order, expo)
}
