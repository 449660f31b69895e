//! Column-sparse matrices over ℤ or ℤ/p and the column-echelon reduction that
//! every kernel, image and solve in the crate goes through.

use std::collections::BTreeMap;

use super::int::Int;
use super::ring::Scalars;

/// Sparse vector: `(index, value)` pairs, strictly increasing index, no zeros.
pub type SparseVec = Vec<(usize, Int)>;

/// `s*x + t*y`.
pub fn lin_comb(sc: Scalars, s: &Int, x: &[(usize, Int)], t: &Int, y: &[(usize, Int)]) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (idx, v) = if take_x {
            let r = (x[i].0, sc.mul(s, &x[i].1));
            i += 1;
            r
        } else if take_y {
            let r = (y[j].0, sc.mul(t, &y[j].1));
            j += 1;
            r
        } else {
            let r = (x[i].0, sc.add(&sc.mul(s, &x[i].1), &sc.mul(t, &y[j].1)));
            i += 1;
            j += 1;
            r
        };
        if !v.is_zero() {
            out.push((idx, v));
        }
    }
    out
}

/// `y + a*x`.
pub fn axpy(sc: Scalars, y: &[(usize, Int)], a: &Int, x: &[(usize, Int)]) -> SparseVec {
    lin_comb(sc, a, x, &Int::ONE, y)
}

pub fn scale(sc: Scalars, a: &Int, x: &[(usize, Int)]) -> SparseVec {
    x.iter()
        .map(|(i, v)| (*i, sc.mul(a, v)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

pub fn entry(x: &[(usize, Int)], idx: usize) -> Int {
    match x.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(pos) => x[pos].1.clone(),
        Err(_) => Int::ZERO,
    }
}

/// Builds a sparse vector from unsorted, possibly repeated entries.
pub fn collect_vec(sc: Scalars, entries: impl IntoIterator<Item = (usize, Int)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
    for (i, v) in entries {
        let slot = acc.entry(i).or_insert(Int::ZERO);
        *slot = sc.add(slot, &sc.reduce(v));
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            nrows: n,
            cols: (0..n).map(|i| vec![(i, Int::ONE)]).collect(),
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(sc: Scalars, rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .map(|i| (i, sc.from_i64(rows[i][j])))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        entry(&self.cols[j], i)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols }
    }

    pub fn mul_vec(&self, sc: Scalars, x: &[(usize, Int)]) -> SparseVec {
        let mut acc: Vec<(usize, Int)> = Vec::new();
        for (j, a) in x {
            acc = axpy(sc, &acc, a, &self.cols[*j]);
        }
        acc
    }

    /// `self * other`.
    pub fn mul(&self, sc: Scalars, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows, "dimension mismatch in product");
        SparseMatrix {
            nrows: self.nrows,
            cols: other.cols.iter().map(|c| self.mul_vec(sc, c)).collect(),
        }
    }

    pub fn scaled(&self, sc: Scalars, a: &Int) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|c| scale(sc, a, c)).collect(),
        }
    }

    pub fn sub(&self, sc: Scalars, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()));
        let minus = sc.neg(&Int::ONE);
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| axpy(sc, a, &minus, b))
                .collect(),
        }
    }

    /// Re-expresses every entry in canonical form for `sc`.
    pub fn reduced(&self, sc: Scalars) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(i, v)| (*i, sc.reduce(v.clone())))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect(),
        }
    }

    /// Keeps only the rows listed in `rows`, renumbered in that order.
    pub fn select_rows(&self, rows: &[usize]) -> SparseMatrix {
        let mut remap = vec![usize::MAX; self.nrows];
        for (new, &old) in rows.iter().enumerate() {
            remap[old] = new;
        }
        SparseMatrix {
            nrows: rows.len(),
            cols: self
                .cols
                .iter()
                .map(|c| {
                    let mut v: SparseVec = c
                        .iter()
                        .filter(|(i, _)| remap[*i] != usize::MAX)
                        .map(|(i, x)| (remap[*i], x.clone()))
                        .collect();
                    v.sort_by_key(|(i, _)| *i);
                    v
                })
                .collect(),
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> SparseMatrix {
        SparseMatrix {
            nrows: self.nrows,
            cols: cols.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }
}

/// Column-echelon form `R = M·V` with `V` unimodular.
///
/// Columns are reduced left to right by their lowest nonzero row ("low"):
/// after reduction the nonzero columns of `R` have pairwise distinct lows.
/// Over ℤ a clash of non-dividing pivots is resolved with a 2×2 unimodular
/// Bézout step, so `V` stays invertible over ℤ.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub scalars: Scalars,
    pub nrows: usize,
    pub reduced: Vec<SparseVec>,
    pub transform: Option<Vec<SparseVec>>,
    pivot_of_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(m: &SparseMatrix, sc: Scalars, track: bool) -> Self {
        let mut reduced: Vec<SparseVec> = m.reduced(sc).cols;
        let mut transform: Option<Vec<SparseVec>> =
            track.then(|| (0..reduced.len()).map(|j| vec![(j, Int::ONE)]).collect());
        let mut pivot_of_row: BTreeMap<usize, usize> = BTreeMap::new();

        for j in 0..reduced.len() {
            loop {
                let Some((low, b)) = reduced[j].last().cloned() else { break };
                let Some(&p) = pivot_of_row.get(&low) else {
                    pivot_of_row.insert(low, j);
                    break;
                };
                let a = reduced[p].last().expect("pivot column nonzero").1.clone();
                if let Some(q) = sc.div_exact(&b, &a) {
                    let mq = sc.neg(&q);
                    reduced[j] = axpy(sc, &reduced[j], &mq, &reduced[p]);
                    if let Some(v) = transform.as_mut() {
                        v[j] = axpy(sc, &v[j], &mq, &v[p]);
                    }
                } else {
                    let (g, s, t) = sc.gcd_ext(&a, &b);
                    let a_g = sc.div_exact(&a, &g).expect("gcd divides");
                    let b_g = sc.div_exact(&b, &g).expect("gcd divides");
                    let mb_g = sc.neg(&b_g);
                    let new_p = lin_comb(sc, &s, &reduced[p], &t, &reduced[j]);
                    let new_j = lin_comb(sc, &mb_g, &reduced[p], &a_g, &reduced[j]);
                    reduced[p] = new_p;
                    reduced[j] = new_j;
                    if let Some(v) = transform.as_mut() {
                        let vp = lin_comb(sc, &s, &v[p], &t, &v[j]);
                        let vj = lin_comb(sc, &mb_g, &v[p], &a_g, &v[j]);
                        v[p] = vp;
                        v[j] = vj;
                    }
                }
            }
        }
        Echelon { scalars: sc, nrows: m.nrows, reduced, transform, pivot_of_row }
    }

    pub fn rank(&self) -> usize {
        self.pivot_of_row.len()
    }

    /// Indices of nonzero columns of `R` (a basis of the column span).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = self.pivot_of_row.values().copied().collect();
        cols.sort_unstable();
        cols
    }

    /// A basis of the kernel (saturated over ℤ). Requires a tracked transform.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let v = self.transform.as_ref().expect("kernel needs tracked transform");
        self.reduced
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_empty())
            .map(|(j, _)| v[j].clone())
            .collect()
    }

    /// Coefficients `y` (indexed by columns of `R`) with `R·y = z`, if any.
    pub fn solve_reduced(&self, z: &[(usize, Int)]) -> Option<SparseVec> {
        let sc = self.scalars;
        let mut rest: SparseVec = z.iter().map(|(i, v)| (*i, sc.reduce(v.clone()))).filter(|(_, v)| !v.is_zero()).collect();
        let mut y: Vec<(usize, Int)> = Vec::new();
        while let Some((low, b)) = rest.last().cloned() {
            let &p = self.pivot_of_row.get(&low)?;
            let a = &self.reduced[p].last().expect("pivot").1;
            let q = sc.div_exact(&b, a)?;
            rest = axpy(sc, &rest, &sc.neg(&q), &self.reduced[p]);
            y.push((p, q));
        }
        Some(collect_vec(sc, y))
    }

    /// Coefficients `x` with `M·x = z`, if any. Requires a tracked transform.
    pub fn solve(&self, z: &[(usize, Int)]) -> Option<SparseVec> {
        let y = self.solve_reduced(z)?;
        let v = self.transform.as_ref().expect("solve needs tracked transform");
        let mut x: SparseVec = Vec::new();
        for (p, q) in &y {
            x = axpy(self.scalars, &x, q, &v[*p]);
        }
        Some(x)
    }
}

/// Expresses vectors in a fixed basis (the columns of `basis`).
///
/// `basis` must have linearly independent columns.
#[derive(Clone, Debug)]
pub struct BasisSolver {
    echelon: Echelon,
}

impl BasisSolver {
    pub fn new(basis: &SparseMatrix, sc: Scalars) -> Self {
        let echelon = Echelon::new(basis, sc, true);
        debug_assert_eq!(echelon.rank(), basis.ncols(), "basis is not independent");
        BasisSolver { echelon }
    }

    pub fn coordinates(&self, z: &[(usize, Int)]) -> Option<SparseVec> {
        self.echelon.solve(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_dense(Scalars::Integers, rows)
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y + 6z = 0 has kernel lattice of rank 2 and index 1.
        let a = m(&[vec![2, 4, 6]]);
        let e = Echelon::new(&a, Scalars::Integers, true);
        assert_eq!(e.rank(), 1);
        let ker = e.kernel_basis();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(a.mul_vec(Scalars::Integers, k).is_empty());
        }
        // (1, 1, -1) is in the lattice: it must be expressible.
        let kmat = SparseMatrix::from_columns(3, ker);
        let solver = BasisSolver::new(&kmat, Scalars::Integers);
        let target = vec![(0, Int::from(1)), (1, Int::from(1)), (2, Int::from(-1))];
        let x = solver.coordinates(&target).unwrap();
        assert_eq!(kmat.mul_vec(Scalars::Integers, &x), target);
    }

    #[test]
    fn solve_detects_non_membership() {
        let a = m(&[vec![2], vec![0]]);
        let e = Echelon::new(&a, Scalars::Integers, true);
        assert!(e.solve(&[(0, Int::from(3))]).is_none());
        assert_eq!(e.solve(&[(0, Int::from(4))]), Some(vec![(0, Int::from(2))]));
        let f = Echelon::new(&a, Scalars::Mod(5), true);
        assert!(f.solve(&[(0, Int::from(3))]).is_some());
    }

    #[test]
    fn transpose_and_product() {
        let a = m(&[vec![1, 2], vec![0, 3]]);
        let b = a.transpose();
        assert_eq!(b.get(1, 0), Int::from(2));
        let p = a.mul(Scalars::Integers, &b);
        assert_eq!(p.to_dense()[0][0], Int::from(5));
    }
}
