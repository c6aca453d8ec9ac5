//! Exact optimal transport between equal-weight point clouds of equal size.
//!
//! With uniform weights on `n` points per side the optimal coupling is a
//! permutation, so the squared 2-Wasserstein distance is a linear
//! assignment problem over squared Euclidean costs.

use crate::elliptical::SampleSet;
use crate::error::{Error, Result};

/// Largest sample count accepted by [`empirical_w2`].
pub const EMPIRICAL_CAP: usize = 2048;
/// Largest matrix accepted by [`brute_force_min`].
pub const BRUTE_FORCE_CAP: usize = 8;

/// Square matrix of non-negative transport costs.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl CostMatrix {
    /// Row-major `n x n` costs; entries must be finite and non-negative.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        if entries.len() != n * n {
            return Err(Error::NotSquare {
                rows: n,
                row: 0,
                cols: entries.len() / n,
            });
        }
        for (k, &v) in entries.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::NonFinite {
                    row: k / n,
                    col: k % n,
                });
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    cols: r.len(),
                });
            }
            entries.extend_from_slice(r);
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// Cost of a permutation, summed in row order.
    pub fn cost_of(&self, perm: &[usize]) -> f64 {
        perm.iter().enumerate().map(|(i, &j)| self.get(i, j)).sum()
    }
}

/// A permutation `i -> perm[i]` and its total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub perm: Vec<usize>,
    pub total_cost: f64,
}

/// Squared Euclidean distances between the rows of `x` and `y`.
pub fn cost_matrix(x: &SampleSet, y: &SampleSet) -> Result<CostMatrix> {
    if x.n() != y.n() || x.dim() != y.dim() {
        return Err(Error::SizeMismatch {
            left_n: x.n(),
            left_dim: x.dim(),
            right_n: y.n(),
            right_dim: y.dim(),
        });
    }
    let n = x.n();
    let mut entries = Vec::with_capacity(n * n);
    for xi in x.rows() {
        for yj in y.rows() {
            entries.push(xi.iter().zip(yj).map(|(a, b)| (a - b) * (a - b)).sum());
        }
    }
    Ok(CostMatrix { n, entries })
}

/// Minimum-cost perfect matching by the Hungarian method with row/column
/// potentials (shortest augmenting paths, `O(n³)`).
///
/// Deterministic: the same matrix always yields the same permutation.
pub fn assignment_min(c: &CostMatrix) -> Assignment {
    let n = c.n;
    // 1-based internally; index 0 is the virtual source column
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![0.0f64; n + 1];
    let mut used = vec![false; n + 1];

    for i in 1..=n {
        col_owner[0] = i;
        let mut j0 = 0usize;
        minv.iter_mut().for_each(|m| *m = f64::INFINITY);
        used.iter_mut().for_each(|b| *b = false);
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let row = &c.entries[(i0 - 1) * n..i0 * n];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = row[j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut perm = vec![0usize; n];
    for j in 1..=n {
        perm[col_owner[j] - 1] = j - 1;
    }
    let total_cost = c.cost_of(&perm);
    Assignment { perm, total_cost }
}

/// Exhaustive search over all `n!` permutations in lexicographic order;
/// the first strict minimum wins, so ties go to the lexicographically
/// smallest permutation.
pub fn brute_force_min(c: &CostMatrix) -> Result<Assignment> {
    let n = c.n;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = Assignment {
        total_cost: c.cost_of(&perm),
        perm: perm.clone(),
    };
    while next_permutation(&mut perm) {
        let cost = c.cost_of(&perm);
        if cost < best.total_cost {
            best.total_cost = cost;
            best.perm.copy_from_slice(&perm);
        }
    }
    Ok(best)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exact 2-Wasserstein distance between the uniform empirical measures on
/// the rows of `x` and `y`.
pub fn empirical_w2(x: &SampleSet, y: &SampleSet) -> Result<f64> {
    if x.n() > EMPIRICAL_CAP || y.n() > EMPIRICAL_CAP {
        return Err(Error::TooLarge {
            n: x.n().max(y.n()),
            cap: EMPIRICAL_CAP,
        });
    }
    let c = cost_matrix(x, y)?;
    let a = assignment_min(&c);
    Ok((a.total_cost.max(0.0) / x.n() as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(rows: &[&[f64]]) -> SampleSet {
        SampleSet::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 0).unwrap()
    }

    fn cm(rows: &[&[f64]]) -> CostMatrix {
        CostMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cost_matrix_examples() {
        let c = cost_matrix(&samples(&[&[0.0, 0.0]]), &samples(&[&[3.0, 4.0]])).unwrap();
        assert_eq!(c.get(0, 0), 25.0);
        let x = samples(&[&[1.0, 2.0], &[3.0, -1.0]]);
        let c = cost_matrix(&x, &x).unwrap();
        assert_eq!((c.get(0, 0), c.get(1, 1)), (0.0, 0.0));
        let c = cost_matrix(&samples(&[&[0.0], &[1.0]]), &samples(&[&[2.0], &[5.0]])).unwrap();
        assert_eq!(c, cm(&[&[4.0, 25.0], &[1.0, 16.0]]));
    }

    #[test]
    fn cost_matrix_rejects_shape_mismatch() {
        let r = cost_matrix(&samples(&[&[0.0]]), &samples(&[&[0.0], &[1.0]]));
        assert!(matches!(r, Err(Error::SizeMismatch { .. })));
        let r = cost_matrix(&samples(&[&[0.0]]), &samples(&[&[0.0, 1.0]]));
        assert!(matches!(r, Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn cost_matrix_validation() {
        assert!(CostMatrix::new(2, vec![0.0, -1.0, 0.0, 0.0]).is_err());
        assert!(CostMatrix::new(2, vec![0.0; 3]).is_err());
        assert!(CostMatrix::new(0, vec![]).is_err());
    }

    #[test]
    fn assignment_examples() {
        let c = cm(&[&[4.0, 25.0], &[1.0, 16.0]]);
        let a = assignment_min(&c);
        assert_eq!(a.perm, vec![0, 1]);
        assert_eq!(a.total_cost, 20.0);

        let z = CostMatrix::new(3, vec![0.0; 9]).unwrap();
        let a = assignment_min(&z);
        assert_eq!(a.total_cost, 0.0);
        let mut sorted = a.perm.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2]);

        let a = assignment_min(&cm(&[&[0.0, 9.0], &[9.0, 0.0]]));
        assert_eq!(a.perm, vec![0, 1]);
        assert_eq!(a.total_cost, 0.0);

        let a = assignment_min(&cm(&[&[4.0, 3.0, 5.0], &[3.0, 5.0, 9.0], &[4.0, 1.0, 4.0]]));
        assert_eq!(a.total_cost, 9.0);
        assert_eq!(a.perm, vec![2, 0, 1]);
    }

    #[test]
    fn brute_force_examples() {
        let a = brute_force_min(&cm(&[&[4.0, 25.0], &[1.0, 16.0]])).unwrap();
        assert_eq!(a.total_cost, 20.0);
        let a = brute_force_min(&cm(&[&[7.0]])).unwrap();
        assert_eq!((a.perm, a.total_cost), (vec![0], 7.0));
        // ties: lexicographically smallest
        let a = brute_force_min(&CostMatrix::new(3, vec![1.0; 9]).unwrap()).unwrap();
        assert_eq!(a.perm, vec![0, 1, 2]);
        let big = CostMatrix::new(9, vec![0.0; 81]).unwrap();
        assert_eq!(brute_force_min(&big), Err(Error::TooLarge { n: 9, cap: 8 }));
    }

    #[test]
    fn next_permutation_enumerates_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, vec![3, 2, 1, 0]);
    }

    #[test]
    fn empirical_examples() {
        let x = samples(&[&[1.0, 2.0], &[0.5, -3.0], &[2.0, 2.0]]);
        assert_eq!(empirical_w2(&x, &x).unwrap(), 0.0);
        assert_eq!(
            empirical_w2(&samples(&[&[0.0, 0.0]]), &samples(&[&[3.0, 4.0]])).unwrap(),
            5.0
        );
        let w = empirical_w2(&samples(&[&[0.0], &[2.0]]), &samples(&[&[1.0], &[3.0]])).unwrap();
        assert_eq!(w, 1.0);
    }

    #[test]
    fn empirical_cap() {
        let rows = vec![vec![0.0]; EMPIRICAL_CAP + 1];
        let x = SampleSet::from_rows(&rows, 0).unwrap();
        assert_eq!(
            empirical_w2(&x, &x),
            Err(Error::TooLarge {
                n: EMPIRICAL_CAP + 1,
                cap: EMPIRICAL_CAP
            })
        );
    }
}
