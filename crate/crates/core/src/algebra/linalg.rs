//! Dense Gaussian elimination over any [`Field`].

use super::field::Field;

/// Reduced row echelon form; returns the reduced rows and pivot columns.
pub fn rref<F: Field>(k: &F, rows: &[Vec<F::Elem>]) -> (Vec<Vec<F::Elem>>, Vec<usize>) {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !k.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..m.len() {
            if i == r || k.is_zero(&m[i][c]) {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..ncols {
                let t = k.mul(&factor, &m[r][j]);
                m[i][j] = k.sub(&m[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<F: Field>(k: &F, rows: &[Vec<F::Elem>]) -> usize {
    rref(k, rows).1.len()
}

/// Basis of `{x : M x = 0}` for `M` given by its rows over `ncols` columns.
pub fn kernel<F: Field>(k: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let (red, pivots) = rref(k, rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![k.zero(); ncols];
            v[f] = k.one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = k.neg(&row[f]);
            }
            v
        })
        .collect()
}

pub fn transpose<T: Clone>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Solves `A x = b`, returning one solution if the system is consistent.
pub fn solve<F: Field>(k: &F, a: &[Vec<F::Elem>], b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let ncols = a.first().map_or(0, Vec::len);
    let aug: Vec<Vec<F::Elem>> = a
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(k, &aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![k.zero(); ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{PrimeField, Rationals};

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = Rationals;
        let row = vec![k.from_i64(1), k.from_i64(2), k.from_i64(3)];
        let ker = kernel(&k, &[row.clone()], 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(k.is_zero(&k.dot(&row, v)));
        }
    }

    #[test]
    fn rank_over_prime_field_differs_from_rationals() {
        let q = Rationals;
        let rows_q = vec![vec![q.from_i64(1), q.from_i64(2)], vec![q.from_i64(3), q.from_i64(1)]];
        assert_eq!(rank(&q, &rows_q), 2);
        let f = PrimeField::new(5).unwrap();
        let rows_f = vec![vec![1, 2], vec![3, 1]];
        assert_eq!(rank(&f, &rows_f), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let k = Rationals;
        let a = vec![vec![k.from_i64(1), k.from_i64(1)], vec![k.from_i64(2), k.from_i64(2)]];
        assert!(solve(&k, &a, &[k.from_i64(1), k.from_i64(3)]).is_none());
        let x = solve(&k, &a, &[k.from_i64(1), k.from_i64(2)]).unwrap();
        assert!(k.is_one(&k.add(&x[0], &x[1])));
    }
}
