use std::collections::BTreeMap;

use crate::cyclo::CycloNum;

/// Incremental row echelon form for large sparse systems whose rows carry only
/// a handful of nonzero entries (the centroid system of a graded algebra has
/// at most two per row).
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    // pivot column -> row normalised to 1 at the pivot, pivot is its smallest column
    pivots: BTreeMap<usize, BTreeMap<usize, CycloNum>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the current pivots and keeps it when it is
    /// independent. Returns whether the rank increased.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, CycloNum)>) -> bool {
        let mut row: BTreeMap<usize, CycloNum> = BTreeMap::new();
        for (c, v) in entries {
            let e = row.entry(c).or_insert_with(|| CycloNum::zero(v.order()));
            *e = &*e + &v;
        }
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = row[&lead].clone();
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(|| CycloNum::zero(v.order()));
                        *e = &*e - &(&f * v);
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    let inv = row[&lead].inv().expect("nonzero pivot");
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }
}
