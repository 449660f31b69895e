//! Smith normal form of dense matrices over ℤ or ℤ/p.

use super::int::Int;
use super::matrix::{Echelon, SparseMatrix};
use super::ring::Scalars;

type Dense = Vec<Vec<Int>>;

/// `D = U·M·V` with `D` diagonal, `d₁ | d₂ | …`, and `U`, `V` invertible.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Dense,
    pub d: Dense,
    pub v: Dense,
    /// Nonzero diagonal entries in canonical (non-negative) form.
    pub diagonal: Vec<Int>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

/// rows (r1, r2) <- (s*r1 + t*r2, x*r1 + y*r2)
fn row_mix(sc: Scalars, a: &mut Dense, r1: usize, r2: usize, s: &Int, t: &Int, x: &Int, y: &Int) {
    for c in 0..a[r1].len() {
        let (p, q) = (a[r1][c].clone(), a[r2][c].clone());
        if p.is_zero() && q.is_zero() {
            continue;
        }
        a[r1][c] = sc.add(&sc.mul(s, &p), &sc.mul(t, &q));
        a[r2][c] = sc.add(&sc.mul(x, &p), &sc.mul(y, &q));
    }
}

/// cols (c1, c2) <- (s*c1 + t*c2, x*c1 + y*c2)
fn col_mix(sc: Scalars, a: &mut Dense, c1: usize, c2: usize, s: &Int, t: &Int, x: &Int, y: &Int) {
    for row in a.iter_mut() {
        let (p, q) = (row[c1].clone(), row[c2].clone());
        if p.is_zero() && q.is_zero() {
            continue;
        }
        row[c1] = sc.add(&sc.mul(s, &p), &sc.mul(t, &q));
        row[c2] = sc.add(&sc.mul(x, &p), &sc.mul(y, &q));
    }
}

/// Smith normal form of a dense matrix; `track` controls whether `U`, `V` are
/// accumulated (otherwise they are left empty).
pub fn smith_dense(sc: Scalars, m: &Dense, ncols: usize, track: bool) -> SmithForm {
    let nrows = m.len();
    let mut a: Dense = m
        .iter()
        .map(|r| r.iter().map(|x| sc.reduce(x.clone())).collect())
        .collect();
    let mut u = if track { identity(nrows) } else { Vec::new() };
    let mut v = if track { identity(ncols) } else { Vec::new() };
    let one = Int::ONE;
    let zero = Int::ZERO;

    let mut t = 0;
    while t < nrows.min(ncols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize, Int)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                let s = sc.size(x);
                if best.as_ref().is_none_or(|(_, _, b)| s < *b) {
                    best = Some((i, j, s));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        if track {
            u.swap(t, pi);
        }
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        if track {
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }

        loop {
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (p, b) = (a[t][t].clone(), a[i][t].clone());
                if let Some(q) = sc.div_exact(&b, &p) {
                    let mq = sc.neg(&q);
                    row_mix(sc, &mut a, t, i, &one, &zero, &mq, &one);
                    if track {
                        row_mix(sc, &mut u, t, i, &one, &zero, &mq, &one);
                    }
                } else {
                    let (g, s, x) = sc.gcd_ext(&p, &b);
                    let p_g = sc.div_exact(&p, &g).unwrap();
                    let mb_g = sc.neg(&sc.div_exact(&b, &g).unwrap());
                    row_mix(sc, &mut a, t, i, &s, &x, &mb_g, &p_g);
                    if track {
                        row_mix(sc, &mut u, t, i, &s, &x, &mb_g, &p_g);
                    }
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (p, b) = (a[t][t].clone(), a[t][j].clone());
                if let Some(q) = sc.div_exact(&b, &p) {
                    let mq = sc.neg(&q);
                    col_mix(sc, &mut a, t, j, &one, &zero, &mq, &one);
                    if track {
                        col_mix(sc, &mut v, t, j, &one, &zero, &mq, &one);
                    }
                } else {
                    let (g, s, x) = sc.gcd_ext(&p, &b);
                    let p_g = sc.div_exact(&p, &g).unwrap();
                    let mb_g = sc.neg(&sc.div_exact(&b, &g).unwrap());
                    col_mix(sc, &mut a, t, j, &s, &x, &mb_g, &p_g);
                    if track {
                        col_mix(sc, &mut v, t, j, &s, &x, &mb_g, &p_g);
                    }
                }
            }
            let col_clear = (t + 1..nrows).all(|i| a[i][t].is_zero());
            let row_clear = (t + 1..ncols).all(|j| a[t][j].is_zero());
            if !(col_clear && row_clear) {
                continue;
            }
            // Divisibility: pull a non-divisible row into the pivot row.
            let p = a[t][t].clone();
            let bad = (t + 1..nrows).find(|&i| {
                (t + 1..ncols).any(|j| !a[i][j].is_zero() && sc.div_exact(&a[i][j], &p).is_none())
            });
            match bad {
                Some(i) => {
                    row_mix(sc, &mut a, t, i, &one, &one, &zero, &one);
                    if track {
                        row_mix(sc, &mut u, t, i, &one, &one, &zero, &one);
                    }
                }
                None => break,
            }
        }
        // Canonical associate on the diagonal.
        let p = a[t][t].clone();
        let canon = sc.normalize(&p);
        if canon != p {
            let unit = sc.div_exact(&canon, &p).expect("associate");
            for c in 0..ncols {
                a[t][c] = sc.mul(&unit, &a[t][c]);
            }
            if track {
                for c in 0..nrows {
                    u[t][c] = sc.mul(&unit, &u[t][c]);
                }
            }
        }
        t += 1;
    }
    let diagonal = (0..nrows.min(ncols))
        .map(|i| a[i][i].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    SmithForm { u, d: a, v, diagonal }
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &SparseMatrix, sc: Scalars) -> SmithForm {
    smith_dense(sc, &m.to_dense(), m.ncols(), true)
}

/// Nonzero invariant factors of `m` (canonical form, divisibility chain).
///
/// Column-echelon first so the dense elimination only sees `rank` columns and
/// the rows they touch.
pub fn invariant_factors(m: &SparseMatrix, sc: Scalars) -> Vec<Int> {
    let e = Echelon::new(m, sc, false);
    if sc.is_field() {
        return vec![Int::ONE; e.rank()];
    }
    let cols = e.pivot_columns();
    if cols.is_empty() {
        return Vec::new();
    }
    // Unit lows can be split off immediately only when the column is a single
    // entry; otherwise fall back to the dense routine on the compressed block.
    let mut rows: Vec<usize> = cols
        .iter()
        .flat_map(|&j| e.reduced[j].iter().map(|(i, _)| *i))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    let mut trivial = 0usize;
    let mut keep: Vec<usize> = Vec::new();
    let mut row_use = std::collections::HashMap::<usize, usize>::new();
    for &j in &cols {
        for (i, _) in &e.reduced[j] {
            *row_use.entry(*i).or_default() += 1;
        }
    }
    for &j in &cols {
        let c = &e.reduced[j];
        let (low, val) = c.last().unwrap();
        if c.len() == 1 && sc.is_unit(val) && row_use[low] == 1 {
            trivial += 1;
        } else {
            keep.push(j);
        }
    }
    let mut out = vec![Int::ONE; trivial];
    if !keep.is_empty() {
        let block = SparseMatrix::from_columns(e.nrows, keep.iter().map(|&j| e.reduced[j].clone()).collect());
        let mut used: Vec<usize> = keep.iter().flat_map(|&j| e.reduced[j].iter().map(|(i, _)| *i)).collect();
        used.sort_unstable();
        used.dedup();
        let compact = block.select_rows(&used);
        let snf = smith_dense(sc, &compact.to_dense(), compact.ncols(), false);
        out.extend(snf.diagonal);
    }
    out.sort();
    out
}
