//! Finitely generated free (co)chain complexes, their homology, and the
//! submodule calculus built on top: subcomplexes cut out by coordinate
//! conditions, kernels of chain maps, quotients by based subcomplexes, duals.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::int::Int;
use super::matrix::{BasisSolver, Echelon, SparseMatrix, SparseVec};
use super::ring::{Coefficients, Scalars};
use super::snf::invariant_factors;
use crate::error::{Error, Result};
use crate::parallel::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `d_k : C_k → C_{k-1}`
    Homological,
    /// `δ^k : C^k → C^{k+1}`
    Cohomological,
}

/// A bounded complex of free modules in degrees `0..dims.len()`.
///
/// `diffs[k]` is the differential leaving degree `k`; its target is `k-1` or
/// `k+1` depending on `direction`, and it is the zero map with zero rows
/// when that degree is out of range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    pub coeff: Coefficients,
    pub direction: Direction,
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
}

impl FreeComplex {
    pub fn new(
        coeff: Coefficients,
        direction: Direction,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix>,
    ) -> Self {
        let sc = coeff.scalars();
        let c = FreeComplex {
            coeff,
            direction,
            diffs: diffs.into_iter().map(|d| d.reduced(sc)).collect(),
            dims,
        };
        assert_eq!(c.dims.len(), c.diffs.len(), "one differential per degree");
        for k in 0..c.dims.len() {
            assert_eq!(c.diffs[k].ncols(), c.dims[k], "source dimension at degree {k}");
            assert_eq!(
                c.diffs[k].nrows,
                c.target(k).map_or(0, |t| c.dims[t]),
                "target dimension at degree {k}"
            );
        }
        c
    }

    pub fn zero(coeff: Coefficients, direction: Direction) -> Self {
        FreeComplex { coeff, direction, dims: Vec::new(), diffs: Vec::new() }
    }

    pub fn scalars(&self) -> Scalars {
        self.coeff.scalars()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// Degree hit by the differential leaving `k`.
    pub fn target(&self, k: usize) -> Option<usize> {
        match self.direction {
            Direction::Homological => k.checked_sub(1),
            Direction::Cohomological => (k + 1 < self.dims.len()).then_some(k + 1),
        }
    }

    /// Degree whose differential lands in `k`.
    pub fn source_into(&self, k: usize) -> Option<usize> {
        match self.direction {
            Direction::Homological => (k + 1 < self.dims.len()).then_some(k + 1),
            Direction::Cohomological => k.checked_sub(1),
        }
    }

    pub fn incoming(&self, k: usize) -> Option<&SparseMatrix> {
        self.source_into(k).map(|s| &self.diffs[s])
    }

    /// Same complex with entries re-read in other coefficients. Only
    /// meaningful when `self` is defined over ℤ.
    pub fn with_coefficients(&self, coeff: Coefficients) -> FreeComplex {
        FreeComplex::new(coeff, self.direction, self.dims.clone(), self.diffs.clone())
    }

    pub fn check_square_zero(&self) -> Result<()> {
        let sc = self.scalars();
        for k in 0..self.len() {
            if let Some(t) = self.target(k) {
                if !self.diffs[t].mul(sc, &self.diffs[k]).is_zero() {
                    return Err(Error::NotAComplex { degree: k });
                }
            }
        }
        Ok(())
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        self.homology_with(Execution::Parallel)
    }

    pub fn homology_with(&self, exec: Execution) -> Result<HomologySummary> {
        self.check_square_zero()?;
        let sc = self.scalars();
        let ranks = exec.map_range(self.len(), |k| Echelon::new(&self.diffs[k], sc, false).rank());
        let torsion_wanted = matches!(self.coeff, Coefficients::Integers);
        let degrees = exec.map_range(self.len(), |k| {
            let out_rank = ranks[k];
            let (in_rank, torsion) = match self.source_into(k) {
                Some(s) => {
                    let torsion = if torsion_wanted {
                        invariant_factors(&self.diffs[s], sc)
                            .into_iter()
                            .filter(|d| !d.is_one())
                            .collect()
                    } else {
                        Vec::new()
                    };
                    (ranks[s], torsion)
                }
                None => (0, Vec::new()),
            };
            DegreeSummary { betti: self.dims[k] - out_rank - in_rank, torsion }
        });
        Ok(HomologySummary { coeff: self.coeff, degrees })
    }

    /// The dual complex `Hom(C, R)` with the opposite direction.
    ///
    /// For a chain complex the dual coboundary is `δ^k = (-1)^{k+1} d_{k+1}ᵀ`;
    /// for a cochain complex the dual boundary is `d_k = (-1)^k (δ^{k-1})ᵀ`.
    /// With these signs dualising twice returns the original differentials,
    /// so evaluation is the identity matrix in dual bases.
    pub fn dual(&self) -> FreeComplex {
        let sc = self.scalars();
        let n = self.len();
        let minus = sc.neg(&Int::ONE);
        let sign = |e: usize| if e.is_multiple_of(2) { Int::ONE } else { minus.clone() };
        let (direction, diffs) = match self.direction {
            Direction::Homological => (
                Direction::Cohomological,
                (0..n)
                    .map(|k| {
                        if k + 1 < n {
                            self.diffs[k + 1].transpose().scaled(sc, &sign(k + 1))
                        } else {
                            SparseMatrix::zeros(0, self.dims[k])
                        }
                    })
                    .collect(),
            ),
            Direction::Cohomological => (
                Direction::Homological,
                (0..n)
                    .map(|k| {
                        if k > 0 {
                            self.diffs[k - 1].transpose().scaled(sc, &sign(k))
                        } else {
                            SparseMatrix::zeros(0, self.dims[0])
                        }
                    })
                    .collect(),
            ),
        };
        FreeComplex::new(self.coeff, direction, self.dims.clone(), diffs)
    }

    /// `{x ∈ A_k : dx ∈ A_{t(k)}}` where `A_k` is spanned by the basis vectors
    /// flagged in `allowed[k]`, with the induced differential.
    pub fn allowable_subcomplex(&self, allowed: &[Vec<bool>]) -> Result<Embedded> {
        self.allowable_subcomplex_with(allowed, Execution::Parallel)
    }

    pub fn allowable_subcomplex_with(&self, allowed: &[Vec<bool>], exec: Execution) -> Result<Embedded> {
        assert_eq!(allowed.len(), self.len());
        let sc = self.scalars();
        let bases: Vec<SparseMatrix> = exec.map_range(self.len(), |k| {
            let cols: Vec<usize> = (0..self.dims[k]).filter(|&i| allowed[k][i]).collect();
            let bad_rows: Vec<usize> = match self.target(k) {
                Some(t) => (0..self.dims[t]).filter(|&i| !allowed[t][i]).collect(),
                None => Vec::new(),
            };
            let restricted = self.diffs[k].select_cols(&cols).select_rows(&bad_rows);
            let kernel = Echelon::new(&restricted, sc, true).kernel_basis();
            let mut vectors: Vec<SparseVec> = kernel
                .into_iter()
                .map(|v| v.into_iter().map(|(i, x)| (cols[i], x)).collect())
                .collect();
            vectors.sort();
            SparseMatrix::from_columns(self.dims[k], vectors)
        });
        self.embed(bases, None, exec)
    }

    /// Kernel of a chain map `f : self → D`, given per degree as matrices.
    pub fn kernel_of(&self, f: &[SparseMatrix]) -> Result<Embedded> {
        let sc = self.scalars();
        let bases = Execution::Parallel.map_range(self.len(), |k| {
            let ker = Echelon::new(&f[k], sc, true).kernel_basis();
            SparseMatrix::from_columns(self.dims[k], ker)
        });
        self.embed(bases, None, Execution::Parallel)
    }

    /// Wraps a family of saturated bases closed under `d` as a complex.
    fn embed(&self, bases: Vec<SparseMatrix>, killed: Option<Vec<Vec<bool>>>, exec: Execution) -> Result<Embedded> {
        let sc = self.scalars();
        let solvers: Vec<BasisSolver> = exec.map(bases.iter().collect(), |b| BasisSolver::new(b, sc));
        let diffs: Vec<Result<SparseMatrix>> = exec.map_range(self.len(), |k| {
            let rows = self.target(k).map_or(0, |t| bases[t].ncols());
            let mut cols = Vec::with_capacity(bases[k].ncols());
            for b in &bases[k].cols {
                match self.target(k) {
                    None => cols.push(Vec::new()),
                    Some(t) => {
                        let image = self.diffs[k].mul_vec(sc, b);
                        cols.push(solvers[t].coordinates(&image).ok_or(Error::NotClosed)?);
                    }
                }
            }
            Ok(SparseMatrix::from_columns(rows, cols))
        });
        let diffs = diffs.into_iter().collect::<Result<Vec<_>>>()?;
        let dims = bases.iter().map(SparseMatrix::ncols).collect();
        Ok(Embedded {
            complex: FreeComplex::new(self.coeff, self.direction, dims, diffs),
            basis: bases,
            killed,
        })
    }
}

/// A complex realised inside an ambient based complex.
///
/// Generator `j` in degree `k` is the ambient vector `basis[k].cols[j]`,
/// read modulo the ambient coordinates flagged in `killed` when the complex
/// is a quotient.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub complex: FreeComplex,
    pub basis: Vec<SparseMatrix>,
    pub killed: Option<Vec<Vec<bool>>>,
}

impl Embedded {
    /// The ambient complex itself, embedded by the identity.
    pub fn whole(c: &FreeComplex) -> Embedded {
        Embedded {
            complex: c.clone(),
            basis: c.dims.iter().map(|&d| SparseMatrix::identity(d)).collect(),
            killed: None,
        }
    }

    fn strip(&self, k: usize, v: &[(usize, Int)]) -> SparseVec {
        match &self.killed {
            Some(kill) => v.iter().filter(|(i, _)| !kill[k][*i]).cloned().collect(),
            None => v.to_vec(),
        }
    }

    pub fn solver(&self, k: usize) -> BasisSolver {
        let b = &self.basis[k];
        let stripped = SparseMatrix::from_columns(b.nrows, b.cols.iter().map(|c| self.strip(k, c)).collect());
        BasisSolver::new(&stripped, self.complex.scalars())
    }

    /// Coordinates of an ambient vector of degree `k`, if it lies in the
    /// (image of the) embedded module.
    pub fn coordinates(&self, k: usize, v: &[(usize, Int)]) -> Option<SparseVec> {
        self.solver(k).coordinates(&self.strip(k, v))
    }

    /// Quotient by the part of the complex supported on the ambient basis
    /// vectors flagged in `sub`, which must span a subcomplex of `ambient`.
    ///
    /// The result is generated by the images of `basis` after deleting the
    /// `sub` coordinates; this is `C / (C ∩ span(sub))`.
    pub fn relative(&self, ambient: &FreeComplex, sub: &[Vec<bool>]) -> Result<Embedded> {
        assert!(self.killed.is_none(), "relative of a quotient");
        let sc = ambient.scalars();
        for k in 0..ambient.len() {
            for (j, col) in ambient.diffs[k].cols.iter().enumerate() {
                if !sub[k][j] {
                    continue;
                }
                let t = ambient.target(k);
                if col.iter().any(|(i, _)| !sub[t.expect("nonzero column has a target")][*i]) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let n = self.complex.len();
        let projected: Vec<SparseMatrix> = (0..n)
            .map(|k| {
                let b = &self.basis[k];
                SparseMatrix::from_columns(
                    b.nrows,
                    b.cols
                        .iter()
                        .map(|c| c.iter().filter(|(i, _)| !sub[k][*i]).cloned().collect())
                        .collect(),
                )
            })
            .collect();
        let echelons: Vec<Echelon> =
            Execution::Parallel.map_range(n, |k| Echelon::new(&projected[k], sc, true));
        // Generators of the quotient: the nonzero columns of each echelon form,
        // lifted through the transform to chains of `self`.
        let pivots: Vec<Vec<usize>> = echelons.iter().map(Echelon::pivot_columns).collect();
        let position: Vec<BTreeMap<usize, usize>> = pivots
            .iter()
            .map(|p| p.iter().enumerate().map(|(pos, &j)| (j, pos)).collect())
            .collect();
        let c = &self.complex;
        let diffs: Vec<SparseMatrix> = (0..n)
            .map(|k| {
                let rows = c.target(k).map_or(0, |t| pivots[t].len());
                let transform = echelons[k].transform.as_ref().expect("tracked");
                let cols = pivots[k]
                    .iter()
                    .map(|&j| {
                        let Some(t) = c.target(k) else { return Vec::new() };
                        let lift = &transform[j];
                        let image_sub = c.diffs[k].mul_vec(sc, lift);
                        let image_amb = self.basis[t].mul_vec(sc, &image_sub);
                        let stripped: SparseVec =
                            image_amb.into_iter().filter(|(i, _)| !sub[t][*i]).collect();
                        let y = echelons[t].solve_reduced(&stripped).expect("quotient closed under d");
                        y.into_iter().map(|(col, v)| (position[t][&col], v)).collect::<SparseVec>()
                    })
                    .map(|mut v| {
                        v.sort_by_key(|(i, _)| *i);
                        v
                    })
                    .collect();
                SparseMatrix::from_columns(rows, cols)
            })
            .collect();
        let basis: Vec<SparseMatrix> = (0..n)
            .map(|k| {
                SparseMatrix::from_columns(
                    self.basis[k].nrows,
                    pivots[k].iter().map(|&j| echelons[k].reduced[j].clone()).collect(),
                )
            })
            .collect();
        Ok(Embedded {
            complex: FreeComplex::new(c.coeff, c.direction, c.dims.iter().enumerate().map(|(k, _)| pivots[k].len()).collect(), diffs),
            basis,
            killed: Some(sub.to_vec()),
        })
    }
}

/// Checks `f ∘ d_A = d_B ∘ f` for a degree-preserving map given per degree.
pub fn is_chain_map(a: &FreeComplex, b: &FreeComplex, f: &[SparseMatrix]) -> bool {
    let sc = a.scalars();
    (0..a.len()).all(|k| {
        let left = match a.target(k) {
            Some(t) => f[t].mul(sc, &a.diffs[k]),
            None => SparseMatrix::zeros(b.target(k).map_or(0, |t| b.dims[t]), a.dims[k]),
        };
        let right = b.diffs[k].mul(sc, &f[k]);
        left.sub(sc, &right).is_zero()
    })
}

/// Whether the chain map `f_k : A_k → B_k` induces an isomorphism
/// `H_k(A) → H_k(B)`. Exact over ℤ: surjectivity and injectivity are decided
/// by lattice membership, not by comparing ranks.
pub fn induces_iso(a: &FreeComplex, b: &FreeComplex, f: &SparseMatrix, k: usize) -> bool {
    let sc = a.scalars();
    let cycles = |c: &FreeComplex| -> SparseMatrix {
        let ker = Echelon::new(&c.diffs[k], sc, true).kernel_basis();
        SparseMatrix::from_columns(c.dims[k], ker)
    };
    let boundaries = |c: &FreeComplex| -> SparseMatrix {
        c.incoming(k).cloned().unwrap_or_else(|| SparseMatrix::zeros(c.dims[k], 0))
    };
    let (za, ba) = (cycles(a), boundaries(a));
    let (zb, bb) = (cycles(b), boundaries(b));
    let fz = f.mul(sc, &za);
    let mut joint = fz.cols.clone();
    joint.extend(bb.cols.iter().cloned());
    let joint = SparseMatrix::from_columns(b.dims[k], joint);
    let e = Echelon::new(&joint, sc, true);
    if zb.cols.iter().any(|z| e.solve_reduced(z).is_none()) {
        return false;
    }
    let eb = Echelon::new(&ba, sc, false);
    e.kernel_basis().iter().all(|x| {
        let head: SparseVec = x.iter().filter(|(i, _)| *i < za.ncols()).cloned().collect();
        let chain = za.mul_vec(sc, &head);
        eb.solve_reduced(&chain).is_some()
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeSummary {
    pub betti: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Int>,
}

impl DegreeSummary {
    pub fn free(betti: usize) -> Self {
        DegreeSummary { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl Serialize for DegreeSummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.torsion.is_empty() { 1 } else { 2 };
        let mut s = serializer.serialize_struct("DegreeSummary", fields)?;
        s.serialize_field("betti", &self.betti)?;
        if !self.torsion.is_empty() {
            s.serialize_field("torsion", &self.torsion)?;
        }
        s.end()
    }
}

impl fmt::Display for DegreeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub coeff: Coefficients,
    pub degrees: Vec<DegreeSummary>,
}

impl HomologySummary {
    pub fn zero(coeff: Coefficients) -> Self {
        HomologySummary { coeff, degrees: Vec::new() }
    }

    /// Degree `k`, zero outside the stored range (including negative `k`).
    pub fn get(&self, k: i64) -> DegreeSummary {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.degrees.get(k).cloned())
            .unwrap_or_default()
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    /// Pads or trims trailing zero degrees so that exactly `len` are stored.
    pub fn resized(mut self, len: usize) -> Self {
        self.degrees.resize(len.max(self.degrees.len()), DegreeSummary::default());
        while self.degrees.len() > len && self.degrees.last().is_some_and(DegreeSummary::is_zero) {
            self.degrees.pop();
        }
        self
    }
}

impl Serialize for HomologySummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.degrees.len()))?;
        for (k, d) in self.degrees.iter().enumerate() {
            m.serialize_entry(&k.to_string(), d)?;
        }
        m.end()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.degrees.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chain complex of an m-gon.
    fn polygon(m: usize) -> FreeComplex {
        let sc = Scalars::Integers;
        let d1 = SparseMatrix::from_columns(
            m,
            (0..m)
                .map(|e| {
                    let (a, b) = (e, (e + 1) % m);
                    let (lo, hi) = (a.min(b), a.max(b));
                    vec![(lo, sc.from_i64(-1)), (hi, Int::ONE)]
                })
                .collect(),
        );
        FreeComplex::new(
            Coefficients::Integers,
            Direction::Homological,
            vec![m, m],
            vec![SparseMatrix::zeros(0, m), d1],
        )
    }

    fn z(b: &[usize]) -> Vec<usize> {
        b.to_vec()
    }

    #[test]
    fn circle_homology_and_dual() {
        let c = polygon(6);
        assert_eq!(c.homology().unwrap().betti(), z(&[1, 1]));
        let d = c.dual();
        assert_eq!(d.direction, Direction::Cohomological);
        assert_eq!(d.homology().unwrap().betti(), z(&[1, 1]));
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn alternating_edges_subcomplex() {
        let c = polygon(6);
        let allowed = vec![vec![true; 6], (0..6).map(|e| e % 2 == 0).collect()];
        let sub = c.allowable_subcomplex(&allowed).unwrap();
        assert_eq!(sub.complex.dims, vec![6, 3]);
        let h = sub.complex.homology().unwrap();
        assert_eq!(h.betti(), z(&[3, 0]));
    }

    #[test]
    fn interval_rel_endpoints() {
        let c = FreeComplex::new(
            Coefficients::Integers,
            Direction::Homological,
            vec![2, 1],
            vec![
                SparseMatrix::zeros(0, 2),
                SparseMatrix::from_columns(2, vec![vec![(0, Int::from(-1)), (1, Int::ONE)]]),
            ],
        );
        let whole = Embedded::whole(&c);
        let rel = whole.relative(&c, &[vec![true, true], vec![false]]).unwrap();
        assert_eq!(rel.complex.homology().unwrap().betti(), z(&[0, 1]));
        let same = whole.relative(&c, &[vec![false, false], vec![false]]).unwrap();
        assert_eq!(same.complex.homology().unwrap().betti(), z(&[1, 0]));
        let all = whole.relative(&c, &[vec![true, true], vec![true]]).unwrap();
        assert!(all.complex.is_empty());
        assert_eq!(whole.relative(&c, &[vec![false, false], vec![true]]).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn not_a_complex() {
        let c = FreeComplex::new(
            Coefficients::Integers,
            Direction::Homological,
            vec![1, 1, 1],
            vec![
                SparseMatrix::zeros(0, 1),
                SparseMatrix::identity(1),
                SparseMatrix::identity(1),
            ],
        );
        assert_eq!(c.homology().unwrap_err(), Error::NotAComplex { degree: 2 });
    }

    #[test]
    fn torsion_from_multiplication_by_two() {
        let c = FreeComplex::new(
            Coefficients::Integers,
            Direction::Homological,
            vec![1, 1],
            vec![SparseMatrix::zeros(0, 1), SparseMatrix::from_columns(1, vec![vec![(0, Int::from(2))]])],
        );
        let h = c.homology().unwrap();
        assert_eq!(h.degrees[0], DegreeSummary { betti: 0, torsion: vec![Int::from(2)] });
        assert_eq!(serde_json::to_string(&h).unwrap(), r#"{"0":{"betti":0,"torsion":[2]},"1":{"betti":0}}"#);
        let h2 = c.with_coefficients(Coefficients::PrimeField(2)).homology().unwrap();
        assert_eq!(h2.betti(), z(&[1, 1]));
        // Cohomology: Ext puts the torsion one degree up.
        let hd = c.dual().homology().unwrap();
        assert_eq!(hd.degrees[1].torsion, vec![Int::from(2)]);
    }

    #[test]
    fn induced_iso_detects_index() {
        // ℤ --2--> ℤ on a complex concentrated in degree 0 is injective on
        // homology but not surjective.
        let c = FreeComplex::new(
            Coefficients::Integers,
            Direction::Homological,
            vec![1],
            vec![SparseMatrix::zeros(0, 1)],
        );
        let two = SparseMatrix::from_columns(1, vec![vec![(0, Int::from(2))]]);
        assert!(!induces_iso(&c, &c, &two, 0));
        assert!(induces_iso(&c, &c, &SparseMatrix::identity(1), 0));
        let q = c.with_coefficients(Coefficients::PrimeField(3));
        assert!(induces_iso(&q, &q, &two.reduced(Scalars::Mod(3)), 0));
        assert!(is_chain_map(&c, &c, &[two]));
    }
}
