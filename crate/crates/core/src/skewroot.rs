//! Skew root systems of Lie and Jordan type: axioms, root graphs, direct sums,
//! reduction modulo the radical, and exhaustive enumeration with
//! classification up to β-preserving automorphisms.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use rayon::prelude::*;

use crate::abgroup::{
    parse_tuple, FinAbGroup, GroupElem, GroupHom, Subgroup, DEFAULT_ENUMERATION_BUDGET,
};
use crate::error::{Error, Result};
use crate::symplectic::Bicharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Lie,
    Jordan,
}

impl Kind {
    /// Whether `ζ_N^e` differs from `ε` (1 for Lie, −1 for Jordan).
    pub(crate) fn differs_from_epsilon(self, e: u32, order: u32) -> bool {
        match self {
            Kind::Lie => e != 0,
            Kind::Jordan => !(order.is_multiple_of(2) && e == order / 2),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Lie => "lie",
            Kind::Jordan => "jordan",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lie" => Ok(Kind::Lie),
            "jordan" => Ok(Kind::Jordan),
            other => Err(Error::Parse(format!(
                "unknown kind `{other}`, expected `lie` or `jordan`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// `R ⊆ G ∖ Rad(β)`.
    Srsl0Radical,
    /// `R` generates `G` (Lie).
    Srsl0Generation,
    Srsl1,
    Srsl2,
    /// `R` generates `G` (Jordan).
    Srsj0,
    Srsj1,
    Srsj2,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Srsl0Radical | Axiom::Srsl0Generation => "SRSL0",
            Axiom::Srsl1 => "SRSL1",
            Axiom::Srsl2 => "SRSL2",
            Axiom::Srsj0 => "SRSJ0",
            Axiom::Srsj1 => "SRSJ1",
            Axiom::Srsj2 => "SRSJ2",
        })
    }
}

/// A violated axiom, the first witness found, and the number of witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<GroupElem>,
    pub count: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub kind: Kind,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, axiom: Axiom, witness: Vec<GroupElem>, message: impl FnOnce() -> String) {
        match self.violations.iter_mut().find(|v| v.axiom == axiom) {
            Some(v) => v.count += 1,
            None => self.violations.push(Violation {
                axiom,
                witness,
                count: 1,
                message: message(),
            }),
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok ({} skew root system)", self.kind);
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let w: Vec<String> = v.witness.iter().map(ToString::to_string).collect();
            write!(
                f,
                "{} violated: {} [witness {}",
                v.axiom,
                v.message,
                w.join(" ")
            )?;
            if v.count > 1 {
                write!(f, "; {} witnesses in total", v.count)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn in_radical(beta: &Bicharacter, a: &GroupElem) -> bool {
    beta.group()
        .generators()
        .iter()
        .all(|g| beta.eval_unchecked(a, g) == 0)
}

/// Checks the axioms of the given kind by direct enumeration over `R × R`.
pub fn validate(kind: Kind, beta: &Bicharacter, roots: &BTreeSet<GroupElem>) -> ValidationReport {
    let g = beta.group();
    let mut report = ValidationReport {
        kind,
        violations: Vec::new(),
    };
    if let Some(bad) = roots.iter().find(|r| !g.contains(r)) {
        report.record(
            if kind == Kind::Lie {
                Axiom::Srsl0Generation
            } else {
                Axiom::Srsj0
            },
            vec![bad.clone()],
            || format!("{bad} is not an element of {g}"),
        );
        return report;
    }
    if kind == Kind::Lie {
        for r in roots.iter().filter(|r| in_radical(beta, r)) {
            report.record(Axiom::Srsl0Radical, vec![r.clone()], || {
                format!("{r} lies in Rad(β)")
            });
        }
    }
    let list: Vec<GroupElem> = roots.iter().cloned().collect();
    let generated = g
        .subgroup_generated(&list, u64::MAX)
        .expect("unbounded closure of group elements");
    if generated.len() as u64 != g.size() {
        let axiom = if kind == Kind::Lie {
            Axiom::Srsl0Generation
        } else {
            Axiom::Srsj0
        };
        report.record(axiom, Vec::new(), || {
            format!(
                "R generates a subgroup of order {} in a group of order {}",
                generated.len(),
                g.size()
            )
        });
    }
    let neg_axiom = if kind == Kind::Lie {
        Axiom::Srsl1
    } else {
        Axiom::Srsj1
    };
    for r in roots {
        let m = g.neg_unchecked(r);
        if !roots.contains(&m) {
            report.record(neg_axiom, vec![r.clone()], || {
                format!("{r} ∈ R but -{r} = {m} ∉ R")
            });
        }
    }
    let sum_axiom = if kind == Kind::Lie {
        Axiom::Srsl2
    } else {
        Axiom::Srsj2
    };
    let rel = if kind == Kind::Lie { "≠ 1" } else { "≠ -1" };
    for a in roots {
        for b in roots {
            let e = beta.eval_unchecked(a, b);
            if kind.differs_from_epsilon(e, beta.order()) {
                let s = g.add_unchecked(a, b);
                if !roots.contains(&s) {
                    report.record(sum_axiom, vec![a.clone(), b.clone()], || {
                        format!("β({a},{b}) {rel} but {a}+{b} = {s} ∉ R")
                    });
                }
            }
        }
    }
    report
}

/// Graph on `R` with an edge `{a, b}` (`a ≠ b`) whenever `β(a, b) ≠ ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGraph {
    vertices: Vec<GroupElem>,
    adjacency: Vec<Vec<usize>>,
}

impl RootGraph {
    pub fn vertices(&self) -> &[GroupElem] {
        &self.vertices
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn edges(&self) -> Vec<(GroupElem, GroupElem)> {
        let mut out = Vec::new();
        for (i, adj) in self.adjacency.iter().enumerate() {
            for &j in adj.iter().filter(|&&j| j > i) {
                out.push((self.vertices[i].clone(), self.vertices[j].clone()));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted multiset of vertex degrees.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    /// Connected components by BFS, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<GroupElem>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp.into_iter().map(|i| self.vertices[i].clone()).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A skew root system `(G, β, R)` of Lie or Jordan type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewRootSystem {
    kind: Kind,
    beta: Bicharacter,
    roots: BTreeSet<GroupElem>,
    validated: bool,
}

impl SkewRootSystem {
    /// Builds and validates; fails with the full report when an axiom is violated.
    pub fn new(
        kind: Kind,
        beta: Bicharacter,
        roots: impl IntoIterator<Item = GroupElem>,
    ) -> Result<Self> {
        let mut s = Self::unvalidated(kind, beta, roots);
        let report = s.validate();
        if report.is_ok() {
            s.validated = true;
            Ok(s)
        } else {
            Err(Error::Invalid(report))
        }
    }

    /// Wraps the data without checking the axioms.
    pub fn unvalidated(
        kind: Kind,
        beta: Bicharacter,
        roots: impl IntoIterator<Item = GroupElem>,
    ) -> Self {
        SkewRootSystem {
            kind,
            beta,
            roots: roots.into_iter().collect(),
            validated: false,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self.kind, &self.beta, &self.roots)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn beta(&self) -> &Bicharacter {
        &self.beta
    }

    pub fn group(&self) -> &FinAbGroup {
        self.beta.group()
    }

    pub fn roots(&self) -> &BTreeSet<GroupElem> {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::NotValidated)
        }
    }

    /// Reduced means `β` is nonsingular.
    pub fn is_reduced(&self) -> bool {
        self.group()
            .elements()
            .all(|g| g.is_zero() || !in_radical(&self.beta, &g))
    }

    pub fn radical(&self, budget: u64) -> Result<Subgroup> {
        self.beta.radical(budget)
    }

    pub fn graph(&self) -> Result<RootGraph> {
        self.require_validated()?;
        let vertices: Vec<GroupElem> = self.roots.iter().cloned().collect();
        let n = self.beta.order();
        let adjacency = vertices
            .iter()
            .enumerate()
            .map(|(i, a)| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, b)| {
                        j != i
                            && self
                                .kind
                                .differs_from_epsilon(self.beta.eval_unchecked(a, b), n)
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(RootGraph {
            vertices,
            adjacency,
        })
    }

    pub fn components(&self) -> Result<Vec<Vec<GroupElem>>> {
        Ok(self.graph()?.components())
    }

    /// Graph connectivity. Jordan systems always count as indecomposable; for
    /// Lie systems that are not reduced this is the graph criterion only, see
    /// [`SkewRootSystem::indecomposability_certified`].
    pub fn is_indecomposable(&self) -> Result<bool> {
        match self.kind {
            Kind::Jordan => {
                self.require_validated()?;
                Ok(true)
            }
            Kind::Lie => Ok(self.graph()?.is_connected()),
        }
    }

    /// Whether [`SkewRootSystem::is_indecomposable`] is backed by the
    /// connectivity criterion (Jordan kind, or reduced Lie kind).
    pub fn indecomposability_certified(&self) -> bool {
        self.kind == Kind::Jordan || self.is_reduced()
    }

    /// Orthogonal direct sum of two Lie systems over `G₁ ⊕ G₂`.
    pub fn direct_sum(&self, other: &SkewRootSystem) -> Result<SkewRootSystem> {
        if self.kind != Kind::Lie || other.kind != Kind::Lie {
            return Err(Error::KindMismatch(
                "direct sums are defined for Lie systems only".into(),
            ));
        }
        self.require_validated()?;
        other.require_validated()?;
        let beta = self.beta.orthogonal_sum(&other.beta)?;
        let g = beta.group().clone();
        let k1 = self.group().rank();
        let k2 = other.group().rank();
        let widen = |r: &GroupElem, left: bool| -> GroupElem {
            let mut v = vec![0i64; k1 + k2];
            let off = if left { 0 } else { k1 };
            for (i, &x) in r.residues().iter().enumerate() {
                v[off + i] = x as i64;
            }
            g.elem(&v).expect("direct sum coordinates")
        };
        let roots: Vec<GroupElem> = self
            .roots
            .iter()
            .map(|r| widen(r, true))
            .chain(other.roots.iter().map(|r| widen(r, false)))
            .collect();
        SkewRootSystem::new(Kind::Lie, beta, roots)
    }

    /// The image system over `G/H` for `H ⊆ Rad(β)`, with `β̄(ḡ, h̄) = β(g, h)`,
    /// and the projection `G -> G/H`.
    pub fn reduce(&self, h: &Subgroup) -> Result<(SkewRootSystem, GroupHom)> {
        self.require_validated()?;
        let g = self.group();
        if h.iter()
            .any(|x| !g.contains(x) || !in_radical(&self.beta, x))
        {
            return Err(Error::NotInRadical);
        }
        let (q, p) = g.quotient(h)?;
        let lifts = p.section(DEFAULT_ENUMERATION_BUDGET.max(g.size()))?;
        let expo = lifts
            .iter()
            .map(|x| {
                lifts
                    .iter()
                    .map(|y| self.beta.eval_unchecked(x, y) as i64)
                    .collect()
            })
            .collect();
        let beta = Bicharacter::new(q, self.beta.order(), expo)?;
        let roots: Vec<GroupElem> = self.roots.iter().map(|r| p.apply_unchecked(r)).collect();
        let reduced = SkewRootSystem::new(self.kind, beta, roots)?;
        Ok((reduced, p))
    }

    /// Reduction by the whole radical.
    pub fn reduce_fully(&self, budget: u64) -> Result<(SkewRootSystem, GroupHom)> {
        let rad = self.radical(budget)?;
        self.reduce(&rad)
    }

    /// Kind line followed by one root per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.kind);
        for r in &self.roots {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the text form against a given `β` and validates.
    pub fn parse_text(beta: Bicharacter, text: &str) -> Result<Self> {
        let (kind, roots) = parse_roots(beta.group(), text)?;
        SkewRootSystem::new(kind, beta, roots)
    }

    /// Cheap isomorphism invariants: `(kind, |G|, canonical orders, |R|,
    /// reduced, component count, degree multiset)`.
    pub fn invariants(&self) -> Result<SystemInvariants> {
        let graph = self.graph()?;
        Ok(SystemInvariants {
            kind: self.kind,
            group_orders: self.group().canonical_orders(),
            roots: self.len(),
            reduced: self.is_reduced(),
            components: graph.components().len(),
            degrees: graph.degree_multiset(),
        })
    }
}

/// Parses the kind line and element tuples of the root-system text form.
pub fn parse_roots(group: &FinAbGroup, text: &str) -> Result<(Kind, Vec<GroupElem>)> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let kind: Kind = lines
        .next()
        .ok_or_else(|| Error::Parse("missing kind line".into()))?
        .parse()?;
    let mut roots = Vec::new();
    for line in lines {
        let v = parse_tuple(line)?;
        if v.len() != group.rank() {
            return Err(Error::Parse(format!(
                "root {line} does not have {} coordinates",
                group.rank()
            )));
        }
        if v.iter()
            .zip(group.orders())
            .any(|(&x, &n)| x < 0 || x >= n as i64)
        {
            return Err(Error::Parse(format!(
                "root {line} is not reduced modulo {group}"
            )));
        }
        roots.push(group.elem(&v)?);
    }
    Ok((kind, roots))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SystemInvariants {
    pub kind: Kind,
    pub group_orders: Vec<u64>,
    pub roots: usize,
    pub reduced: bool,
    pub components: usize,
    pub degrees: Vec<usize>,
}

fn same_value(e1: u32, n1: u32, e2: u32, n2: u32) -> bool {
    let l = n1.lcm(&n2);
    (e1 as u64 * (l / n1) as u64) % l as u64 == (e2 as u64 * (l / n2) as u64) % l as u64
}

/// Calls `visit` on every group isomorphism `G₁ -> G₂` carrying `β₁` to `β₂`,
/// found by assigning images to the standard generators one at a time and
/// pruning on orders and β-values. Stops early when `visit` returns false.
pub fn search_isometries(
    b1: &Bicharacter,
    b2: &Bicharacter,
    budget: u64,
    mut visit: impl FnMut(&GroupHom) -> bool,
) -> Result<()> {
    let g1 = b1.group();
    let g2 = b2.group();
    if g1.size() != g2.size() || g1.canonical_orders() != g2.canonical_orders() {
        return Ok(());
    }
    let targets = g2.elements_within(budget)?;
    let gens = g1.generators();
    let k = gens.len();
    let candidates: Vec<Vec<GroupElem>> = (0..k)
        .map(|i| {
            let n = g1.orders()[i] as u64;
            targets
                .iter()
                .filter(|t| g2.elem_order(t).unwrap() == n)
                .cloned()
                .collect()
        })
        .collect();
    let mut chosen: Vec<GroupElem> = Vec::with_capacity(k);
    let mut steps = 0u64;

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        b1: &Bicharacter,
        b2: &Bicharacter,
        gens: &[GroupElem],
        candidates: &[Vec<GroupElem>],
        chosen: &mut Vec<GroupElem>,
        steps: &mut u64,
        budget: u64,
        visit: &mut dyn FnMut(&GroupHom) -> bool,
    ) -> Result<bool> {
        if i == gens.len() {
            let g2 = b2.group();
            let span = g2.subgroup_generated(chosen, u64::MAX)?;
            if span.len() as u64 != g2.size() {
                return Ok(true);
            }
            let hom = GroupHom::new(b1.group().clone(), g2.clone(), chosen.clone())?;
            return Ok(visit(&hom));
        }
        for c in &candidates[i] {
            *steps += 1;
            if *steps > budget {
                return Err(Error::BudgetExceeded {
                    what: "searching for isometries",
                    budget,
                });
            }
            let ok = (0..i).all(|j| {
                same_value(
                    b1.eval_unchecked(&gens[i], &gens[j]),
                    b1.order(),
                    b2.eval_unchecked(c, &chosen[j]),
                    b2.order(),
                )
            });
            if !ok {
                continue;
            }
            chosen.push(c.clone());
            let keep_going = go(
                i + 1,
                b1,
                b2,
                gens,
                candidates,
                chosen,
                steps,
                budget,
                visit,
            )?;
            chosen.pop();
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    go(
        0,
        b1,
        b2,
        &gens,
        &candidates,
        &mut chosen,
        &mut steps,
        budget,
        &mut visit,
    )?;
    Ok(())
}

/// All automorphisms of `G` preserving `β`.
pub fn automorphisms(beta: &Bicharacter, budget: u64) -> Result<Vec<GroupHom>> {
    let mut out = Vec::new();
    search_isometries(beta, beta, budget, |h| {
        out.push(h.clone());
        true
    })?;
    Ok(out)
}

/// An isomorphism of skew root systems: a β-preserving group isomorphism
/// mapping `R₁` onto `R₂`.
pub fn isomorphism(
    s1: &SkewRootSystem,
    s2: &SkewRootSystem,
    budget: u64,
) -> Result<Option<GroupHom>> {
    if s1.kind != s2.kind || s1.len() != s2.len() {
        return Ok(None);
    }
    let mut found = None;
    search_isometries(&s1.beta, &s2.beta, budget, |h| {
        if s1
            .roots
            .iter()
            .all(|r| s2.roots.contains(&h.apply_unchecked(r)))
        {
            found = Some(h.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// One isomorphism class in a classification.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub representative: SkewRootSystem,
    /// Indices into the classified list.
    pub members: Vec<usize>,
    pub invariants: SystemInvariants,
}

/// Groups systems into isomorphism classes. Systems sharing an ambient
/// `(G, β)` are keyed by the orbit minimum of their root set under
/// `Aut(G, β)`; classes over different ambients are then merged by explicit
/// isomorphism search.
pub fn classify(systems: &[SkewRootSystem], budget: u64) -> Result<Vec<IsoClass>> {
    let mut ambients: Vec<(Kind, Bicharacter, Vec<GroupHom>)> = Vec::new();
    let mut keyed: BTreeMap<(usize, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (idx, s) in systems.iter().enumerate() {
        s.require_validated()?;
        let pos = match ambients
            .iter()
            .position(|(k, b, _)| *k == s.kind && b == &s.beta)
        {
            Some(p) => p,
            None => {
                ambients.push((s.kind, s.beta.clone(), automorphisms(&s.beta, budget)?));
                ambients.len() - 1
            }
        };
        let g = s.group();
        let key = ambients[pos]
            .2
            .iter()
            .map(|phi| {
                let mut v: Vec<usize> = s
                    .roots
                    .iter()
                    .map(|r| g.index_of(&phi.apply_unchecked(r)))
                    .collect();
                v.sort_unstable();
                v
            })
            .min()
            .unwrap_or_default();
        keyed.entry((pos, key)).or_default().push(idx);
    }
    let mut classes: Vec<IsoClass> = Vec::new();
    for members in keyed.into_values() {
        let rep = &systems[members[0]];
        let inv = rep.invariants()?;
        let mut merged = false;
        for class in classes.iter_mut() {
            if class.invariants == inv
                && class.representative.beta != rep.beta
                && isomorphism(rep, &class.representative, budget)?.is_some()
            {
                class.members.extend(&members);
                merged = true;
                break;
            }
        }
        if !merged {
            classes.push(IsoClass {
                representative: rep.clone(),
                members,
                invariants: inv,
            });
        }
    }
    for c in classes.iter_mut() {
        c.members.sort_unstable();
    }
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(classes)
}

struct SearchTables {
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// `β(x, y) ≠ ε` for the pair `(x, y)`.
    edge: Vec<bool>,
    allowed: Vec<bool>,
}

impl SearchTables {
    fn new(beta: &Bicharacter, kind: Kind) -> Self {
        let g = beta.group();
        let size = g.size() as usize;
        let elems: Vec<GroupElem> = g.elements().collect();
        let mut add = vec![0u32; size * size];
        let mut edge = vec![false; size * size];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                add[i * size + j] = g.index_of(&g.add_unchecked(a, b)) as u32;
                edge[i * size + j] =
                    kind.differs_from_epsilon(beta.eval_unchecked(a, b), beta.order());
            }
        }
        let neg = elems
            .iter()
            .map(|a| g.index_of(&g.neg_unchecked(a)) as u32)
            .collect();
        let allowed = elems
            .iter()
            .map(|a| kind == Kind::Jordan || !in_radical(beta, a))
            .collect();
        SearchTables {
            size,
            add,
            neg,
            edge,
            allowed,
        }
    }
}

#[derive(Clone)]
struct SearchState {
    member: Vec<bool>,
    members: Vec<u32>,
    excluded: Vec<bool>,
}

impl SearchState {
    /// Adds `x` and everything the sum axiom forces; false on contradiction.
    fn include(&mut self, t: &SearchTables, x: u32) -> bool {
        let mut pending = vec![x, t.neg[x as usize]];
        while let Some(y) = pending.pop() {
            let yi = y as usize;
            if self.member[yi] {
                continue;
            }
            if self.excluded[yi] || !t.allowed[yi] {
                return false;
            }
            self.member[yi] = true;
            self.members.push(y);
            pending.push(t.neg[yi]);
            for k in 0..self.members.len() {
                let z = self.members[k] as usize;
                if t.edge[yi * t.size + z] {
                    let s = t.add[yi * t.size + z];
                    if !self.member[s as usize] {
                        pending.push(s);
                    }
                }
            }
        }
        true
    }
}

/// Every root set `R ⊆ G` satisfying the axioms of `kind` for `β`.
///
/// The search walks negation orbits in index order and closes each partial set
/// under the forced sums; `budget` caps the number of search nodes.
pub fn enumerate_systems(
    beta: &Bicharacter,
    kind: Kind,
    budget: u64,
) -> Result<Vec<SkewRootSystem>> {
    let g = beta.group();
    if g.size() > 4096 || g.size() > budget {
        return Err(Error::BudgetExceeded {
            what: "enumerating skew root systems",
            budget,
        });
    }
    let t = SearchTables::new(beta, kind);
    let orbits: Vec<u32> = (0..t.size as u32)
        .filter(|&x| x <= t.neg[x as usize] && t.allowed[x as usize])
        .collect();
    let root = SearchState {
        member: vec![false; t.size],
        members: Vec::new(),
        excluded: vec![false; t.size],
    };
    let nodes = AtomicU64::new(0);

    // Expand the first levels sequentially to get independent subtrees.
    let mut frontier: Vec<(usize, SearchState)> = vec![(0, root)];
    let split_depth = orbits.len().min(6);
    for _ in 0..split_depth {
        let mut next = Vec::new();
        for (pos, st) in frontier {
            expand(&t, &orbits, pos, st, &nodes, budget, &mut next)?;
        }
        frontier = next;
    }

    let found: Vec<Vec<u32>> = frontier
        .into_par_iter()
        .map(|(pos, st)| {
            let mut out = Vec::new();
            dfs(&t, &orbits, pos, st, &nodes, budget, &mut out)?;
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut sets: Vec<Vec<u32>> = found;
    for s in sets.iter_mut() {
        s.sort_unstable();
    }
    sets.sort();
    sets.into_iter()
        .filter_map(|s| {
            let roots: Vec<GroupElem> = s.iter().map(|&i| g.elem_at(i as usize)).collect();
            match SkewRootSystem::new(kind, beta.clone(), roots) {
                Ok(sys) => Some(Ok(sys)),
                Err(Error::Invalid(_)) => None,
                Err(e) => Some(Err(e)),
            }
        })
        .collect()
}

fn next_open(orbits: &[u32], mut pos: usize, st: &SearchState) -> usize {
    while pos < orbits.len()
        && (st.member[orbits[pos] as usize] || st.excluded[orbits[pos] as usize])
    {
        pos += 1;
    }
    pos
}

fn tick(nodes: &AtomicU64, budget: u64) -> Result<()> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        Err(Error::BudgetExceeded {
            what: "enumerating skew root systems",
            budget,
        })
    } else {
        Ok(())
    }
}

/// Children of a node, or the node itself when it is a leaf.
fn expand(
    t: &SearchTables,
    orbits: &[u32],
    pos: usize,
    st: SearchState,
    nodes: &AtomicU64,
    budget: u64,
    out: &mut Vec<(usize, SearchState)>,
) -> Result<()> {
    let pos = next_open(orbits, pos, &st);
    if pos == orbits.len() {
        out.push((pos, st));
        return Ok(());
    }
    tick(nodes, budget)?;
    let o = orbits[pos];
    let mut with = st.clone();
    if with.include(t, o) {
        out.push((pos + 1, with));
    }
    let mut without = st;
    without.excluded[o as usize] = true;
    without.excluded[t.neg[o as usize] as usize] = true;
    out.push((pos + 1, without));
    Ok(())
}

fn dfs(
    t: &SearchTables,
    orbits: &[u32],
    pos: usize,
    st: SearchState,
    nodes: &AtomicU64,
    budget: u64,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    let pos = next_open(orbits, pos, &st);
    if pos == orbits.len() {
        out.push(st.members);
        return Ok(());
    }
    let mut children = Vec::with_capacity(2);
    expand(t, orbits, pos, st, nodes, budget, &mut children)?;
    for (p, child) in children {
        dfs(t, orbits, p, child, nodes, budget, out)?;
    }
    Ok(())
}
