//! Blown-up cochains.
//!
//! For a regular simplex `σ = Δ_0 ∗ ⋯ ∗ Δ_n` the local complex is
//! `N*(cΔ_0) ⊗ ⋯ ⊗ N*(cΔ_{n−1}) ⊗ N*(Δ_n)`, with basis the tuples
//! `(F_0, …, F_n)` of nonempty faces (`F_i` may contain the cone apex for
//! `i < n`). The global complex is the limit of the local ones over the
//! regular faces.
//!
//! The limit has a basis indexed by *global tuples*: tuples whose non-apex
//! vertices form a regular simplex `τ` of `X`. The basis element `e_G` has
//! component `G` on every `σ ⊇ τ` and zero elsewhere; a compatible family is
//! determined by its coefficients on `σ = τ`, so these span, and they are
//! independent because they differ on `τ`. Coboundaries, perverse degrees
//! and cup products are computed directly in this basis. The same complex
//! obtained as a kernel over facet pairs is available in
//! [`global_complex_by_kernel`] and agrees with it.
//!
//! Within a block the apex is ordered after the vertices; it is stored as
//! [`APEX`] so that sorting puts it last.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{
    induces_iso, Coefficients, Direction, Embedded, FreeComplex, HomologySummary, Int, Scalars, SparseMatrix,
    SparseVec,
};
use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, Simplex, Strata};
use crate::parallel::Execution;
use crate::perversity::Perversity;

pub const APEX: usize = usize::MAX;

/// A tensor of faces, one block per level; `APEX` marks the cone point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tuple(pub Vec<Vec<usize>>);

impl Tuple {
    pub fn degree(&self) -> usize {
        self.0.iter().map(|b| b.len() - 1).sum()
    }

    /// Non-apex vertices, i.e. the simplex `τ` of a global tuple.
    pub fn support(&self) -> Simplex {
        let mut s: Simplex = self.0.iter().flatten().copied().filter(|&v| v != APEX).collect();
        s.sort_unstable();
        s
    }

    pub fn has_apex(&self, level: usize) -> bool {
        self.0[level].last() == Some(&APEX)
    }

    /// Degree carried by blocks strictly above `level`.
    pub fn tail_degree(&self, level: usize) -> usize {
        self.0[level + 1..].iter().map(|b| b.len() - 1).sum()
    }

    fn with_added(&self, level: usize, v: usize) -> (Tuple, usize) {
        let mut blocks = self.0.clone();
        let pos = blocks[level].partition_point(|&w| w < v);
        blocks[level].insert(pos, v);
        (Tuple(blocks), pos)
    }

    fn prefix_degree(&self, level: usize) -> usize {
        self.0[..level].iter().map(|b| b.len() - 1).sum()
    }
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coboundary of one tensor, given the vertices that may be added to each
/// block: `δ(a_0⊗⋯⊗a_n) = Σ_i (−1)^{|a_0|+⋯+|a_{i−1}|} a_0⊗⋯⊗δa_i⊗⋯⊗a_n`.
fn tensor_coboundary(t: &Tuple, additions: impl Iterator<Item = (usize, usize)>) -> Vec<(Tuple, i64)> {
    additions
        .map(|(level, v)| {
            let (next, pos) = t.with_added(level, v);
            let s = sign(t.prefix_degree(level)) * sign(pos);
            (next, s)
        })
        .collect()
}

/// Alexander–Whitney cup of two face duals in one block: nonzero only when
/// the last vertex of `f` is the first vertex of `g`.
fn block_cup(f: &[usize], g: &[usize]) -> Option<Vec<usize>> {
    if f.last() != g.first() {
        return None;
    }
    let mut out = f.to_vec();
    out.extend_from_slice(&g[1..]);
    Some(out)
}

/// Blockwise cup of tensors with the Koszul sign `(−1)^{Σ_{i>j} |a_i||b_j|}`.
pub fn tuple_cup(a: &Tuple, b: &Tuple) -> Option<(Tuple, i64)> {
    let mut blocks = Vec::with_capacity(a.0.len());
    for (f, g) in a.0.iter().zip(&b.0) {
        blocks.push(block_cup(f, g)?);
    }
    let mut exponent = 0usize;
    let mut b_below = 0usize;
    for i in 0..a.0.len() {
        exponent += (a.0[i].len() - 1) * b_below;
        b_below += b.0[i].len() - 1;
    }
    Some((Tuple(blocks), sign(exponent)))
}

/// The global blown-up cochain complex of a filtered complex, over ℤ.
#[derive(Clone, Debug)]
pub struct BlowupComplex {
    pub formal_dimension: usize,
    /// Basis per degree, sorted.
    pub basis: Vec<Vec<Tuple>>,
    index: HashMap<Tuple, (usize, usize)>,
    pub complex: FreeComplex,
}

/// Global tuples over one regular simplex.
fn tuples_over(x: &FilteredComplex, tau: &[usize]) -> Vec<Tuple> {
    let n = x.formal_dimension();
    let blocks = x.blocks(tau);
    let free: Vec<usize> = (0..n).filter(|&i| !blocks[i].is_empty()).collect();
    (0u32..1 << free.len())
        .map(|mask| {
            let mut b = blocks.clone();
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    b[i].push(APEX);
                }
            }
            for blk in b.iter_mut().take(n) {
                if blk.is_empty() {
                    blk.push(APEX);
                }
            }
            Tuple(b)
        })
        .collect()
}

impl BlowupComplex {
    pub fn new(x: &FilteredComplex) -> Self {
        Self::with(x, Execution::Parallel)
    }

    pub fn with(x: &FilteredComplex, exec: Execution) -> Self {
        let n = x.formal_dimension();
        let degrees = x.degree_count();
        let regular: Vec<Simplex> = (0..=x.dimension())
            .flat_map(|d| x.simplices(d).iter().filter(|s| x.is_regular(s)).cloned())
            .collect();
        let per_simplex = exec.map(regular, |tau| tuples_over(x, &tau));
        let mut basis: Vec<Vec<Tuple>> = vec![Vec::new(); degrees];
        for t in per_simplex.into_iter().flatten() {
            let d = t.degree();
            basis[d].push(t);
        }
        for b in basis.iter_mut() {
            b.sort();
        }
        let index: HashMap<Tuple, (usize, usize)> = basis
            .iter()
            .enumerate()
            .flat_map(|(d, b)| b.iter().enumerate().map(move |(i, t)| (t.clone(), (d, i))))
            .collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let diffs = exec.map_range(degrees, |d| {
            let rows = if d + 1 < degrees { dims[d + 1] } else { 0 };
            let cols = basis[d]
                .iter()
                .map(|t| {
                    let tau = t.support();
                    let vertex_adds = (0..x.vertices().len()).filter_map(|v| {
                        if tau.binary_search(&v).is_ok() {
                            return None;
                        }
                        let mut s = tau.clone();
                        let pos = s.partition_point(|&w| w < v);
                        s.insert(pos, v);
                        x.find(&s).map(|_| (x.vertices()[v].level, v))
                    });
                    let apex_adds = (0..n).filter(|&i| !t.has_apex(i)).map(|i| (i, APEX));
                    let mut col: SparseVec = tensor_coboundary(t, vertex_adds.chain(apex_adds).collect::<Vec<_>>().into_iter())
                        .into_iter()
                        .map(|(next, s)| {
                            let (dd, j) = index[&next];
                            debug_assert_eq!(dd, d + 1);
                            (j, Int::from(s))
                        })
                        .collect();
                    col.sort_by_key(|(j, _)| *j);
                    col
                })
                .collect();
            SparseMatrix::from_columns(rows, cols)
        });
        let complex = FreeComplex::new(Coefficients::Integers, Direction::Cohomological, dims, diffs);
        BlowupComplex { formal_dimension: n, basis, index, complex }
    }

    pub fn position(&self, t: &Tuple) -> Option<(usize, usize)> {
        self.index.get(t).copied()
    }

    /// `(stratum, tail degree)` for every singular level at which `ρ` keeps
    /// the tuple: the block is nonempty and apex-free.
    pub fn perverse_data(&self, x: &FilteredComplex, strata: &Strata, t: &Tuple) -> Vec<(usize, usize)> {
        let tau = t.support();
        (0..self.formal_dimension)
            .filter(|&i| !t.has_apex(i))
            .map(|i| {
                let prefix: Simplex = tau.iter().copied().filter(|&v| x.vertices()[v].level <= i).collect();
                let idx = x.find(&prefix).expect("face present");
                (strata.of((prefix.len() - 1, idx)), t.tail_degree(i))
            })
            .collect()
    }

    /// Basis elements satisfying `‖e‖_S ≤ p̄(S)` for every singular `S`.
    pub fn allowed(&self, x: &FilteredComplex, p: &Perversity) -> Vec<Vec<bool>> {
        let strata = x.strata();
        let values = p.table(&strata);
        self.basis
            .iter()
            .map(|b| {
                b.iter()
                    .map(|t| {
                        self.perverse_data(x, &strata, t)
                            .iter()
                            .all(|&(s, tail)| tail as i64 <= values[s])
                    })
                    .collect()
            })
            .collect()
    }

    /// `Ñ*_p̄`: allowable cochains with allowable coboundary.
    pub fn perverse_complex(&self, x: &FilteredComplex, p: &Perversity, coeff: Coefficients) -> Result<Embedded> {
        self.perverse_complex_with(x, p, coeff, Execution::Parallel)
    }

    pub fn perverse_complex_with(
        &self,
        x: &FilteredComplex,
        p: &Perversity,
        coeff: Coefficients,
        exec: Execution,
    ) -> Result<Embedded> {
        if !p.belongs_to(x) {
            return Err(Error::ComplexMismatch);
        }
        let ambient = self.complex.with_coefficients(coeff);
        ambient.allowable_subcomplex_with(&self.allowed(x, p), exec)
    }

    /// `‖ω‖_S` for every singular stratum (by id); `None` is `−∞`.
    pub fn perverse_degree(&self, x: &FilteredComplex, degree: usize, omega: &[(usize, Int)]) -> BTreeMap<String, Option<i64>> {
        let strata = x.strata();
        let mut out: BTreeMap<String, Option<i64>> =
            strata.singular().map(|(_, s)| (s.id.clone(), None)).collect();
        for (j, _) in omega {
            for (s, tail) in self.perverse_data(x, &strata, &self.basis[degree][*j]) {
                let slot = out.get_mut(&strata.list[s].id).expect("singular stratum");
                *slot = Some(slot.map_or(tail as i64, |m| m.max(tail as i64)));
            }
        }
        out
    }

    /// The unit cochain: every degree-0 basis element with coefficient 1.
    pub fn unit(&self) -> SparseVec {
        (0..self.basis.first().map_or(0, Vec::len)).map(|i| (i, Int::ONE)).collect()
    }

    /// Cup product of cochains of degrees `p` and `q`.
    pub fn cup(&self, sc: Scalars, p: usize, a: &[(usize, Int)], q: usize, b: &[(usize, Int)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Int> = BTreeMap::new();
        if p + q >= self.basis.len() {
            return Vec::new();
        }
        for (i, x) in a {
            for (j, y) in b {
                let Some((t, s)) = tuple_cup(&self.basis[p][*i], &self.basis[q][*j]) else { continue };
                let Some(&(d, k)) = self.index.get(&t) else { continue };
                debug_assert_eq!(d, p + q);
                let term = sc.mul(&sc.mul(x, y), &sc.from_i64(s));
                let slot = acc.entry(k).or_insert(Int::ZERO);
                *slot = sc.add(slot, &term);
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn coboundary(&self, sc: Scalars, degree: usize, a: &[(usize, Int)]) -> SparseVec {
        self.complex.diffs[degree].reduced(sc).mul_vec(sc, a)
    }
}

/// `ℋ*_p̄(X)`.
pub fn blowup_cohomology(x: &FilteredComplex, p: &Perversity, coeff: Coefficients) -> Result<HomologySummary> {
    let b = BlowupComplex::new(x);
    let len = b.complex.len();
    Ok(b.perverse_complex(x, p, coeff)?.complex.homology()?.resized(len))
}

/// Chain map `Ñ*_p̄(X) → Ñ*_q̄(Y)` induced by projecting compatible families
/// on `X` onto the simplices of a subcomplex `Y`. `Y` is given as a filtered
/// complex whose vertices carry the same ids and levels as in `X`.
pub struct Restriction {
    pub source: Embedded,
    pub target: Embedded,
    pub maps: Vec<SparseMatrix>,
}

impl Restriction {
    pub fn new(
        x: &FilteredComplex,
        bx: &BlowupComplex,
        px: &Perversity,
        y: &FilteredComplex,
        by: &BlowupComplex,
        py: &Perversity,
        coeff: Coefficients,
    ) -> Result<Self> {
        if x.formal_dimension() != y.formal_dimension() {
            return Err(Error::ComplexMismatch);
        }
        let source = bx.perverse_complex(x, px, coeff)?;
        let target = by.perverse_complex(y, py, coeff)?;
        let sc = coeff.scalars();
        let rename: Vec<Option<usize>> = x.vertices().iter().map(|v| y.vertex_index(&v.id)).collect();
        let degrees = bx.basis.len().min(by.basis.len());
        let mut maps = Vec::with_capacity(degrees);
        for k in 0..degrees {
            // Coordinate projection of the ambient global bases.
            let project = |t: &Tuple| -> Option<usize> {
                let blocks: Option<Vec<Vec<usize>>> = t
                    .0
                    .iter()
                    .map(|b| b.iter().map(|&v| if v == APEX { Some(APEX) } else { rename[v] }).collect())
                    .collect();
                let mut blocks = blocks?;
                for b in blocks.iter_mut() {
                    b.sort_unstable();
                }
                by.position(&Tuple(blocks)).map(|(_, j)| j)
            };
            let images: Vec<Option<usize>> = bx.basis[k].iter().map(project).collect();
            let solver = target.solver(k);
            let cols = source.basis[k]
                .cols
                .iter()
                .map(|c| {
                    let image: SparseVec = crate::algebra::matrix::collect_vec(
                        sc,
                        c.iter().filter_map(|(i, v)| images[*i].map(|j| (j, v.clone()))),
                    );
                    solver.coordinates(&image).ok_or(Error::NotClosed)
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(SparseMatrix::from_columns(target.complex.dim(k), cols));
        }
        Ok(Restriction { source, target, maps })
    }

    pub fn induces_iso(&self, k: usize) -> bool {
        induces_iso(&self.source.complex, &self.target.complex, &self.maps[k], k)
    }
}

/// Basis of the local complex of a regular simplex, per degree.
pub fn local_basis(x: &FilteredComplex, sigma: &[usize]) -> Result<Vec<Vec<Tuple>>> {
    if !x.is_regular(sigma) {
        return Err(Error::NotRegular(x.label(sigma)));
    }
    let n = x.formal_dimension();
    let blocks = x.blocks(sigma);
    // Nonempty subsets of each block's vertex set (plus apex below level n).
    let choices: Vec<Vec<Vec<usize>>> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut verts = b.clone();
            if i < n {
                verts.push(APEX);
            }
            (1u32..1 << verts.len())
                .map(|m| verts.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).map(|(_, v)| *v).collect())
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Tuple>> = vec![Vec::new(); sigma.len()];
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(choices: &[Vec<Vec<usize>>], current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Tuple>>) {
        if current.len() == choices.len() {
            let t = Tuple(current.clone());
            let d = t.degree();
            out[d].push(t);
            return;
        }
        for c in &choices[current.len()] {
            current.push(c.clone());
            rec(choices, current, out);
            current.pop();
        }
    }
    rec(&choices, &mut current, &mut out);
    for b in out.iter_mut() {
        b.sort();
    }
    Ok(out)
}

/// The local complex `Ñ*_σ` over ℤ with its basis.
pub fn local_complex(x: &FilteredComplex, sigma: &[usize]) -> Result<(FreeComplex, Vec<Vec<Tuple>>)> {
    let basis = local_basis(x, sigma)?;
    let n = x.formal_dimension();
    let blocks = x.blocks(sigma);
    let index: HashMap<&Tuple, usize> = basis.iter().flat_map(|b| b.iter().enumerate().map(|(i, t)| (t, i))).collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let diffs = (0..basis.len())
        .map(|d| {
            let rows = dims.get(d + 1).copied().unwrap_or(0);
            let cols = basis[d]
                .iter()
                .map(|t| {
                    let adds: Vec<(usize, usize)> = (0..=n)
                        .flat_map(|i| {
                            let mut cand = blocks[i].clone();
                            if i < n {
                                cand.push(APEX);
                            }
                            cand.into_iter().filter(move |v| !t.0[i].contains(v)).map(move |v| (i, v))
                        })
                        .collect();
                    let mut col: SparseVec = tensor_coboundary(t, adds.into_iter())
                        .into_iter()
                        .map(|(next, s)| (index[&next], Int::from(s)))
                        .collect();
                    col.sort_by_key(|(j, _)| *j);
                    col
                })
                .collect();
            SparseMatrix::from_columns(rows, cols)
        })
        .collect();
    Ok((FreeComplex::new(Coefficients::Integers, Direction::Cohomological, dims, diffs), basis))
}

/// Restriction `Ñ*_σ → Ñ*_F` to a regular face `F` (`F = σ` gives the
/// identity): a tuple survives iff each block lies in the cone on `F`'s block.
pub fn restriction_map(x: &FilteredComplex, sigma: &[usize], face: &[usize]) -> Result<Vec<SparseMatrix>> {
    if !face.iter().all(|v| sigma.contains(v)) || face.is_empty() {
        return Err(Error::NotAFace(x.label(face)));
    }
    let from = local_basis(x, sigma)?;
    let to = local_basis(x, face)?;
    let index: HashMap<&Tuple, usize> = to.iter().flat_map(|b| b.iter().enumerate().map(|(i, t)| (t, i))).collect();
    Ok(from
        .iter()
        .enumerate()
        .map(|(d, b)| {
            let rows = to.get(d).map_or(0, Vec::len);
            let cols = b
                .iter()
                .map(|t| index.get(t).map_or_else(Vec::new, |&j| vec![(j, Int::ONE)]))
                .collect();
            SparseMatrix::from_columns(rows, cols)
        })
        .collect())
}

/// The global complex as the kernel of `⊕_σ Ñ*_σ → ⊕_{(σ,F)} Ñ*_F`,
/// `ω ↦ (res(ω_σ) − ω_F)` over regular facet pairs.
pub fn global_complex_by_kernel(x: &FilteredComplex) -> Result<Embedded> {
    let regular: Vec<Simplex> = (0..=x.dimension())
        .flat_map(|d| x.simplices(d).iter().filter(|s| x.is_regular(s)).cloned())
        .collect();
    let degrees = x.degree_count();
    let locals: Vec<(FreeComplex, Vec<Vec<Tuple>>)> =
        regular.iter().map(|s| local_complex(x, s)).collect::<Result<_>>()?;
    let pos: HashMap<&Simplex, usize> = regular.iter().enumerate().map(|(i, s)| (s, i)).collect();
    // Offsets of each summand per degree.
    let dim_of = |i: usize, d: usize| locals[i].0.dim(d);
    let offsets: Vec<Vec<usize>> = (0..degrees)
        .map(|d| {
            regular
                .iter()
                .enumerate()
                .scan(0, |acc, (i, _)| {
                    let o = *acc;
                    *acc += dim_of(i, d);
                    Some(o)
                })
                .collect()
        })
        .collect();
    let total: Vec<usize> = (0..degrees).map(|d| (0..regular.len()).map(|i| dim_of(i, d)).sum()).collect();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, s) in regular.iter().enumerate() {
        for (f, _) in x.facets(s) {
            if let Some(&j) = pos.get(&f) {
                pairs.push((i, j));
            }
        }
    }
    let dims = total.clone();
    let diffs: Vec<SparseMatrix> = (0..degrees)
        .map(|d| {
            let rows = if d + 1 < degrees { total[d + 1] } else { 0 };
            let mut cols: Vec<SparseVec> = Vec::with_capacity(total[d]);
            for (i, (c, _)) in locals.iter().enumerate() {
                for col in &c.diffs.get(d).map_or_else(Vec::new, |m| m.cols.clone()) {
                    let shift = if d + 1 < degrees { offsets[d + 1][i] } else { 0 };
                    cols.push(col.iter().map(|(r, v)| (r + shift, v.clone())).collect());
                }
            }
            SparseMatrix::from_columns(rows, cols)
        })
        .collect();
    let sum = FreeComplex::new(Coefficients::Integers, Direction::Cohomological, dims, diffs);

    let maps: Vec<SparseMatrix> = (0..degrees)
        .map(|d| {
            let pair_offsets: Vec<usize> = pairs
                .iter()
                .scan(0, |acc, &(_, j)| {
                    let o = *acc;
                    *acc += dim_of(j, d);
                    Some(o)
                })
                .collect();
            let rows: usize = pairs.iter().map(|&(_, j)| dim_of(j, d)).sum();
            let mut entries: Vec<Vec<(usize, Int)>> = vec![Vec::new(); total[d]];
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let res = restriction_map(x, &regular[i], &regular[j]).expect("regular facet");
                if let Some(m) = res.get(d) {
                    for (c, col) in m.cols.iter().enumerate() {
                        for (r, v) in col {
                            entries[offsets[d][i] + c].push((pair_offsets[p] + r, v.clone()));
                        }
                    }
                }
                for r in 0..dim_of(j, d) {
                    entries[offsets[d][j] + r].push((pair_offsets[p] + r, Int::from(-1)));
                }
            }
            let cols = entries
                .into_iter()
                .map(|e| crate::algebra::matrix::collect_vec(Scalars::Integers, e))
                .collect();
            SparseMatrix::from_columns(rows, cols)
        })
        .collect();
    sum.kernel_of(&maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{circle, cone, torus};

    fn hexagon_cone() -> FilteredComplex {
        cone(&circle(6).unwrap()).unwrap().space.complex
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for x in [hexagon_cone(), torus().complex, cone(&torus()).unwrap().space.complex] {
            let b = BlowupComplex::new(&x);
            b.complex.check_square_zero().unwrap();
        }
    }

    #[test]
    fn apex_triangle_local_complex() {
        let x = hexagon_cone();
        let sigma = x.simplex(x.find_ids(&["c", "b.v0", "b.v1"]).unwrap()).clone();
        let (c, basis) = local_complex(&x, &sigma).unwrap();
        assert_eq!(basis.iter().map(Vec::len).sum::<usize>(), 9);
        assert_eq!(c.len(), 3);
        assert_eq!(c.homology().unwrap().to_string(), "(Z, 0, 0)");
    }

    #[test]
    fn restriction_to_rim_edge() {
        let x = hexagon_cone();
        let sigma = x.simplex(x.find_ids(&["c", "b.v0", "b.v1"]).unwrap()).clone();
        let rim = x.simplex(x.find_ids(&["b.v0", "b.v1"]).unwrap()).clone();
        let from = local_basis(&x, &sigma).unwrap();
        let maps = restriction_map(&x, &sigma, &rim).unwrap();
        for (d, m) in maps.iter().enumerate() {
            for (j, col) in m.cols.iter().enumerate() {
                let apex_only = from[d][j].0[0] == vec![APEX];
                assert_eq!(col.len(), usize::from(apex_only));
            }
        }
        let id = restriction_map(&x, &sigma, &sigma).unwrap();
        assert!(id.iter().all(|m| *m == SparseMatrix::identity(m.ncols())));
        let apex = x.simplex(x.find_ids(&["c"]).unwrap()).clone();
        assert!(restriction_map(&x, &rim, &apex).is_err());
    }

    #[test]
    fn kernel_route_agrees() {
        for x in [hexagon_cone(), circle(4).unwrap().complex] {
            let direct = BlowupComplex::new(&x);
            let kernel = global_complex_by_kernel(&x).unwrap();
            assert_eq!(kernel.complex.dims, direct.complex.dims);
            assert_eq!(kernel.complex.homology().unwrap(), direct.complex.homology().unwrap());
        }
    }

    #[test]
    fn hexagon_cone_cohomology() {
        let x = hexagon_cone();
        let h = |v: i64| {
            let p = Perversity::parse(&format!("strata:{{S0.0:{v}}}"), &x).unwrap();
            blowup_cohomology(&x, &p, Coefficients::Integers).unwrap().to_string()
        };
        assert_eq!(h(-1), "(0, 0, 0)");
        assert_eq!(h(0), "(Z, 0, 0)");
        assert_eq!(h(1), "(Z, Z, 0)");
    }

    #[test]
    fn unit_is_a_cocycle_with_degree_zero() {
        let x = hexagon_cone();
        let b = BlowupComplex::new(&x);
        let one = b.unit();
        assert!(b.coboundary(Scalars::Integers, 0, &one).is_empty());
        let deg = b.perverse_degree(&x, 0, &one);
        assert_eq!(deg["S0.0"], Some(0));
    }
}
