//! Smith normal form over the integers.
//!
//! Used to put quotients and subgroups of a product of cyclic groups back
//! into product-of-cyclic form. Matrices here are tiny (a handful of rows
//! and columns), so a dense `i128` implementation is plenty.

pub(crate) type Matrix = Vec<Vec<i128>>;

/// Result of `U * A * V = D` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub(crate) struct Smith {
    /// Diagonal entries `D[i][i]`, non-negative, each dividing the next.
    pub diagonal: Vec<i128>,
    pub u: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub(crate) fn smith(input: &[Vec<i128>], cols: usize) -> Smith {
    let rows = input.len();
    let mut a: Matrix = input.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // row_i += c * row_j
    fn row_add(a: &mut Matrix, u: &mut Matrix, i: usize, j: usize, c: i128) {
        if c == 0 {
            return;
        }
        let (src_a, src_u) = (a[j].clone(), u[j].clone());
        for (x, y) in a[i].iter_mut().zip(src_a) {
            *x += c * y;
        }
        for (x, y) in u[i].iter_mut().zip(src_u) {
            *x += c * y;
        }
    }
    // col_i += c * col_j ; V <- V E, V^-1 <- E^-1 V^-1
    fn col_add(a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, i: usize, j: usize, c: i128) {
        if c == 0 {
            return;
        }
        for row in a.iter_mut() {
            row[i] += c * row[j];
        }
        for row in v.iter_mut() {
            row[i] += c * row[j];
        }
        let src = v_inv[i].clone();
        for (x, y) in v_inv[j].iter_mut().zip(src) {
            *x -= c * y;
        }
    }
    fn col_swap(a: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }

    let mut t = 0;
    while t < rows.min(cols) {
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        col_swap(&mut a, &mut v, &mut v_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    row_add(&mut a, &mut u, i, t, -q);
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_add(&mut a, &mut v, &mut v_inv, j, t, -q);
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // bring the smallest non-zero entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    col_swap(&mut a, &mut v, &mut v_inv, t, best.1);
                }
                continue;
            }
            // divisibility condition
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => row_add(&mut a, &mut u, t, i, 1),
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
        t += 1;
    }

    let diagonal = (0..rows.min(cols)).map(|i| a[i][i]).collect::<Vec<_>>();
    let rank = diagonal.iter().take_while(|&&d| d != 0).count();
    Smith {
        diagonal,
        u,
        v,
        v_inv,
        rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let s = smith(&m, 2);
        assert_eq!(s.diagonal, vec![1, 6]);
        let d = mul(&mul(&s.u, &m), &s.v);
        assert_eq!(d, vec![vec![1, 0], vec![0, 6]]);
        assert_eq!(mul(&s.v, &s.v_inv), identity(2));
    }

    #[test]
    fn rectangular_with_kernel() {
        let m = vec![vec![4], vec![12], vec![6]];
        let s = smith(&m, 1);
        assert_eq!(s.diagonal, vec![2]);
        assert_eq!(s.rank, 1);
        let ua = mul(&s.u, &m);
        assert!(ua[1..].iter().all(|r| r[0] == 0));
    }

    #[test]
    fn random_small_matrices_satisfy_uav_equals_d() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 13) as i128 - 6
        };
        for _ in 0..200 {
            let rows = 3;
            let cols = 3;
            let m: Matrix = (0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect();
            let s = smith(&m, cols);
            let d = mul(&mul(&s.u, &m), &s.v);
            for (i, row) in d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(x, s.diagonal[i]);
                    } else {
                        assert_eq!(x, 0);
                    }
                }
            }
            for w in s.diagonal[..s.rank].windows(2) {
                assert_eq!(w[1] % w[0], 0);
            }
            assert_eq!(mul(&s.v, &s.v_inv), identity(cols));
        }
    }
}
