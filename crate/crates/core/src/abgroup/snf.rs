//! Smith normal form over the integers with both unimodular transforms.

pub(crate) type IntMatrix = Vec<Vec<i128>>;

pub(crate) struct Smith {
    /// Diagonal entries `d_0 | d_1 | …`, length `min(rows, cols)`.
    pub diag: Vec<i128>,
    /// Row transform with `u · a · v = d`.
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect()
}

pub(crate) fn smith(a: &IntMatrix, cols: usize) -> Smith {
    let rows = a.len();
    let mut a = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    let swap_cols =
        |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, i: usize, j: usize| {
            for row in a.iter_mut() {
                row.swap(i, j);
            }
            for row in v.iter_mut() {
                row.swap(i, j);
            }
            v_inv.swap(i, j);
        };
    // col_j -= q * col_t
    let col_op = |a: &mut IntMatrix,
                  v: &mut IntMatrix,
                  v_inv: &mut IntMatrix,
                  j: usize,
                  t: usize,
                  q: i128| {
        for row in a.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[t];
        }
        let (rt, rj) = (v_inv[t].clone(), &v_inv[j]);
        v_inv[t] = rt.iter().zip(rj).map(|(x, y)| x + q * y).collect();
    };
    // row_i -= q * row_t
    let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: i128| {
        let at = a[t].clone();
        for (x, y) in a[i].iter_mut().zip(&at) {
            *x -= q * y;
        }
        let ut = u[t].clone();
        for (x, y) in u[i].iter_mut().zip(&ut) {
            *x -= q * y;
        }
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                swap_cols(&mut a, &mut v, &mut v_inv, t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(p);
                    row_op(&mut a, &mut u, i, t, q);
                    if a[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(p);
                    col_op(&mut a, &mut v, &mut v_inv, j, t, q);
                    if a[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => row_op(&mut a, &mut u, t, i, -1),
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..steps).map(|i| a[i][i]).collect();
    Smith { diag, u, v, v_inv }
}
