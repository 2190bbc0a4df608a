use std::fmt;

use crate::cyclo::{CycloNum, CycloPoly};
use crate::error::{Error, Result};

/// Dense matrix over `Q(ζ_N)`; every entry carries the same order `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CycloNum>,
}

impl CycloMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        CycloMatrix {
            rows,
            cols,
            order,
            entries: vec![CycloNum::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m.entries[i * n + i] = CycloNum::one(order);
        }
        m
    }

    /// Builds a matrix from rows, lifting every entry into `Q(ζ_order)`.
    pub fn from_rows(order: u32, rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged or empty rows".into()));
        }
        let mut entries = Vec::with_capacity(r * c);
        for x in rows.into_iter().flatten() {
            entries.push(x.embed(order)?);
        }
        Ok(CycloMatrix {
            rows: r,
            cols: c,
            order,
            entries,
        })
    }

    pub fn from_integers(order: u32, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| CycloNum::from_integer(order, x))
                    .collect()
            })
            .collect();
        Self::from_rows(order, rows).expect("well-formed integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: CycloNum) {
        let v = value
            .embed(self.order)
            .expect("entry order must divide matrix order");
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNum::is_zero)
    }

    /// Lifts every entry into `Q(ζ_target)`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        Ok(CycloMatrix {
            rows: self.rows,
            cols: self.cols,
            order: target,
            entries: self
                .entries
                .iter()
                .map(|x| x.embed(target))
                .collect::<Result<_>>()?,
        })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = num_integer::lcm(self.order, other.order);
        (self.embed(m).unwrap(), other.embed(m).unwrap())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycloNum, &CycloNum) -> CycloNum) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("elementwise operation".into()));
        }
        let (a, b) = self.common(other);
        Ok(CycloMatrix {
            rows: a.rows,
            cols: a.cols,
            order: a.order,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| f(x, y))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        let order = num_integer::lcm(self.order, c.order());
        let c = c.embed(order).unwrap();
        let m = self.embed(order).unwrap();
        CycloMatrix {
            entries: m.entries.iter().map(|x| x * &c).collect(),
            ..m
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut out = Self::zeros(a.order, rows, cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.entries[(i * b.rows + k) * cols + j * b.cols + l] = x * b.get(k, l);
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CycloNum {
        (0..self.rows.min(self.cols))
            .fold(CycloNum::zero(self.order), |acc, i| &acc + self.get(i, i))
    }

    pub fn matvec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloNum::zero(self.order);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Determinant by exact Gaussian elimination.
    pub fn det(&self) -> Result<CycloNum> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a: Vec<Vec<CycloNum>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut det = CycloNum::one(self.order);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(CycloNum::zero(self.order));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    if !a[col][c].is_zero() {
                        a[r][c] = &a[r][c] - &(&f * &a[col][c]);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(rows: &mut [Vec<CycloNum>], ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv().unwrap();
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&f * p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<CycloNum>> = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        Self::rref(&mut rows, self.cols).len()
    }

    /// One solution of `self · x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[CycloNum]) -> Result<Option<Vec<CycloNum>>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch("right-hand side length".into()));
        }
        let mut rows: Vec<Vec<CycloNum>> = (0..self.rows)
            .map(|i| {
                let mut row = self.entries[i * self.cols..(i + 1) * self.cols].to_vec();
                row.push(rhs[i].embed(self.order)?);
                Ok(row)
            })
            .collect::<Result<_>>()?;
        let pivots = Self::rref(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![CycloNum::zero(self.order); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Minimal polynomial by Krylov iteration on every standard basis vector.
    pub fn min_poly(&self) -> Result<CycloPoly> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(
                "minimal polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let order = self.order;
        let mut result = CycloPoly::one(order);
        for start in 0..n {
            let mut v: Vec<CycloNum> = (0..n)
                .map(|i| CycloNum::from_integer(order, (i == start) as i64))
                .collect();
            // (pivot index, reduced vector with pivot 1, polynomial combination)
            let mut basis: Vec<(usize, Vec<CycloNum>, CycloPoly)> = Vec::new();
            for degree in 0..=n {
                let mut w = v.clone();
                let mut comb = CycloPoly::monomial(order, degree);
                for (p, bv, bc) in &basis {
                    if w[*p].is_zero() {
                        continue;
                    }
                    let f = w[*p].clone();
                    for (x, y) in w.iter_mut().zip(bv) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                    comb = comb.add(&bc.scale(&-&f));
                }
                match w.iter().position(|x| !x.is_zero()) {
                    None => {
                        result = result.lcm(&comb);
                        break;
                    }
                    Some(p) => {
                        let inv = w[p].inv()?;
                        let w: Vec<CycloNum> = w.iter().map(|x| x * &inv).collect();
                        // Keep earlier basis vectors reduced against the new pivot.
                        for (_, bv, bc) in basis.iter_mut() {
                            if bv[p].is_zero() {
                                continue;
                            }
                            let f = bv[p].clone();
                            for (x, y) in bv.iter_mut().zip(&w) {
                                if !y.is_zero() {
                                    *x = &*x - &(&f * y);
                                }
                            }
                            *bc = bc.add(&comb.scale(&-&(&f * &inv)));
                        }
                        basis.push((p, w, comb.scale(&inv)));
                    }
                }
                v = self.matvec(&v);
            }
        }
        Ok(result)
    }

    /// Whether the minimal polynomial is squarefree, i.e. the matrix is
    /// diagonalisable over the algebraic closure.
    pub fn min_poly_squarefree(&self) -> Result<bool> {
        Ok(self.min_poly()?.is_squarefree())
    }
}

impl fmt::Display for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::cyclo_root;

    #[test]
    fn determinants() {
        assert!(CycloMatrix::identity(1, 2).det().unwrap().is_one());
        let j = CycloMatrix::from_integers(1, &[&[0, 1], &[-1, 0]]);
        assert!(j.det().unwrap().is_one());
        let m = CycloMatrix::from_integers(1, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(m.det().unwrap(), CycloNum::from_integer(1, 18));
        assert!(CycloMatrix::zeros(1, 2, 3).det().is_err());
    }

    #[test]
    fn rank_and_solve() {
        let m = CycloMatrix::from_integers(1, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
        let one = CycloNum::one(1);
        let two = CycloNum::from_integer(1, 2);
        assert!(m.solve(&[one.clone(), one.clone()]).unwrap().is_none());
        let x = m.solve(&[one.clone(), two.clone()]).unwrap().unwrap();
        assert_eq!(m.matvec(&x), vec![one, two]);
    }

    #[test]
    fn min_polys() {
        let z = CycloMatrix::zeros(1, 3, 3);
        assert_eq!(z.min_poly().unwrap().degree(), Some(1));
        assert!(z.min_poly_squarefree().unwrap());
        let nil = CycloMatrix::from_integers(1, &[&[0, 1], &[0, 0]]);
        assert_eq!(nil.min_poly().unwrap(), CycloPoly::monomial(1, 2));
        assert!(!nil.min_poly_squarefree().unwrap());
        // Rotation by i: min poly x^2 + 1, diagonalisable over Q(i).
        let i = cyclo_root(4, 1);
        let rot = CycloMatrix::from_rows(
            4,
            vec![
                vec![CycloNum::zero(4), -&i],
                vec![i.clone(), CycloNum::zero(4)],
            ],
        )
        .unwrap();
        assert!(rot.min_poly_squarefree().unwrap());
        // Jordan block for eigenvalue 2 plus a separate eigenvalue 3.
        let m = CycloMatrix::from_integers(1, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        assert_eq!(m.min_poly().unwrap().degree(), Some(3));
        assert!(!m.min_poly_squarefree().unwrap());
    }

    #[test]
    fn kron_and_trace() {
        let x = CycloMatrix::from_integers(1, &[&[-1, 0], &[0, 1]]);
        let y = CycloMatrix::from_integers(1, &[&[0, 1], &[1, 0]]);
        let k = x.kron(&y);
        assert_eq!(k.rows(), 4);
        assert!(k.trace().is_zero());
        assert_eq!(k.mul(&k).unwrap(), CycloMatrix::identity(1, 4));
    }
}
