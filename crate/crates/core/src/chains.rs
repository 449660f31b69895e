//! Intersection chains: perverse degrees and allowability of simplices, the
//! King (all simplices, `∂`) and tame (regular simplices, `𝔡`) complexes,
//! their duals, relative versions and the evaluation map into the bidual.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{
    induces_iso, is_chain_map, Coefficients, Direction, Embedded, FreeComplex, HomologySummary, Int, SparseMatrix,
    SparseVec,
};
use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, Simplex, Strata, Subcomplex};
use crate::parallel::Execution;
use crate::perversity::Perversity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    King,
    Tame,
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "king" => Ok(Theory::King),
            "tame" => Ok(Theory::Tame),
            other => Err(Error::Parse(format!("unknown chain theory '{other}'"))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::King => "king",
            Theory::Tame => "tame",
        })
    }
}

/// Whether `s` satisfies `‖σ‖_S ≤ dim σ − codim S + p̄(S)` for every
/// singular stratum it meets. `values` is indexed like `strata.list`.
pub fn is_allowable(x: &FilteredComplex, strata: &Strata, values: &[i64], s: &[usize]) -> bool {
    let n = x.formal_dimension();
    let dim = s.len() as i64 - 1;
    let degrees = x.perverse_degrees(s);
    strata.met_by(x, s).iter().enumerate().take(n).all(|(level, met)| match met {
        None => true,
        Some(st) => {
            let codim = n - level;
            let norm = degrees[codim].expect("stratum met, so the join is nonempty");
            norm <= dim - codim as i64 + values[*st]
        }
    })
}

/// `𝔡σ`: the boundary with non-regular facets discarded.
pub fn tame_boundary(x: &FilteredComplex, s: &[usize]) -> Result<Vec<(Simplex, i64)>> {
    if !x.is_regular(s) {
        return Err(Error::NotRegular(x.label(s)));
    }
    Ok(x.facets(s).into_iter().filter(|(f, _)| x.is_regular(f)).collect())
}

/// `𝔡σ` from the join decomposition: `∂(Δ_0 ∗ ⋯ ∗ Δ_{n−1}) ∗ Δ_n` when `Δ_n`
/// is a single vertex, `∂σ` otherwise.
pub fn tame_boundary_by_join(x: &FilteredComplex, s: &[usize]) -> Result<Vec<(Simplex, i64)>> {
    let blocks = x.blocks(s);
    let top = blocks.last().expect("n+1 blocks");
    match top.len() {
        0 => Err(Error::NotRegular(x.label(s))),
        1 if s.len() == 2 => Ok(vec![(vec![top[0]], 1)]),
        1 => {
            let front = &s[..s.len() - 1];
            Ok(x
                .facets(front)
                .into_iter()
                .map(|(mut f, sign)| {
                    f.push(top[0]);
                    (f, sign)
                })
                .collect())
        }
        _ => Ok(x.facets(s)),
    }
}

/// The ambient chain complex of a theory over ℤ: generators per degree (as
/// simplex indices of that dimension) and differentials.
pub fn ambient_complex(x: &FilteredComplex, theory: Theory) -> (FreeComplex, Vec<Vec<usize>>) {
    let degrees = x.degree_count();
    let generators: Vec<Vec<usize>> = (0..degrees)
        .map(|d| {
            (0..x.count(d))
                .filter(|&i| theory == Theory::King || x.is_regular(&x.simplices(d)[i]))
                .collect()
        })
        .collect();
    let position: Vec<Vec<Option<usize>>> = (0..degrees)
        .map(|d| {
            let mut pos = vec![None; x.count(d)];
            for (j, &i) in generators[d].iter().enumerate() {
                pos[i] = Some(j);
            }
            pos
        })
        .collect();
    let diffs = (0..degrees)
        .map(|d| {
            if d == 0 {
                return SparseMatrix::zeros(0, generators[0].len());
            }
            let cols = generators[d]
                .iter()
                .map(|&i| {
                    let s = &x.simplices(d)[i];
                    let mut col: SparseVec = x
                        .facets(s)
                        .into_iter()
                        .filter_map(|(f, sign)| {
                            let fi = x.find(&f).expect("face present");
                            position[d - 1][fi].map(|p| (p, Int::from(sign)))
                        })
                        .collect();
                    col.sort_by_key(|(i, _)| *i);
                    col
                })
                .collect();
            SparseMatrix::from_columns(generators[d - 1].len(), cols)
        })
        .collect();
    let dims = generators.iter().map(Vec::len).collect();
    (FreeComplex::new(Coefficients::Integers, Direction::Homological, dims, diffs), generators)
}

/// An intersection chain complex together with how it sits in the ambient
/// simplicial (or regular-simplicial) complex.
#[derive(Clone, Debug)]
pub struct IntersectionComplex {
    pub theory: Theory,
    pub ambient: FreeComplex,
    /// Simplex indices (of dimension `k`) of ambient generators in degree `k`.
    pub generators: Vec<Vec<usize>>,
    pub chains: Embedded,
}

impl IntersectionComplex {
    pub fn complex(&self) -> &FreeComplex {
        &self.chains.complex
    }

    pub fn homology(&self) -> Result<HomologySummary> {
        let len = self.ambient.len();
        Ok(self.chains.complex.homology()?.resized(len))
    }

    /// Cohomology of the dual complex `Hom(C, R)`.
    pub fn cohomology(&self) -> Result<HomologySummary> {
        let len = self.ambient.len();
        Ok(self.chains.complex.dual().homology()?.resized(len))
    }

    /// Position of simplex `(d, i)` among the ambient generators.
    pub fn generator_position(&self, d: usize, i: usize) -> Option<usize> {
        self.generators.get(d)?.iter().position(|&g| g == i)
    }
}

#[derive(Clone, Debug)]
pub struct ChainOptions<'a> {
    pub theory: Theory,
    pub coeff: Coefficients,
    /// Quotient by the chains supported on this subcomplex.
    pub relative: Option<&'a Subcomplex>,
    pub exec: Execution,
}

impl<'a> ChainOptions<'a> {
    pub fn new(theory: Theory, coeff: Coefficients) -> Self {
        ChainOptions { theory, coeff, relative: None, exec: Execution::Parallel }
    }

    pub fn relative_to(mut self, sub: &'a Subcomplex) -> Self {
        self.relative = Some(sub);
        self
    }
}

/// `{c ∈ A_k : dc ∈ A_{k−1}}` where `A_k` is spanned by allowable generators.
pub fn intersection_complex(x: &FilteredComplex, p: &Perversity, opts: &ChainOptions) -> Result<IntersectionComplex> {
    if !p.belongs_to(x) {
        return Err(Error::ComplexMismatch);
    }
    let (ambient, generators) = ambient_complex(x, opts.theory);
    let ambient = ambient.with_coefficients(opts.coeff);
    let strata = x.strata();
    let values = p.table(&strata);
    let allowed: Vec<Vec<bool>> = generators
        .iter()
        .enumerate()
        .map(|(d, gens)| gens.iter().map(|&i| is_allowable(x, &strata, &values, &x.simplices(d)[i])).collect())
        .collect();
    let mut chains = ambient.allowable_subcomplex_with(&allowed, opts.exec)?;
    if let Some(sub) = opts.relative {
        let flags: Vec<Vec<bool>> = generators
            .iter()
            .enumerate()
            .map(|(d, gens)| gens.iter().map(|&i| sub.contains((d, i))).collect())
            .collect();
        chains = chains.relative(&ambient, &flags)?;
    }
    Ok(IntersectionComplex { theory: opts.theory, ambient, generators, chains })
}

pub fn intersection_homology(x: &FilteredComplex, p: &Perversity, opts: &ChainOptions) -> Result<HomologySummary> {
    intersection_complex(x, p, opts)?.homology()
}

pub fn intersection_cohomology(x: &FilteredComplex, p: &Perversity, opts: &ChainOptions) -> Result<HomologySummary> {
    intersection_complex(x, p, opts)?.cohomology()
}

/// The evaluation map `C_k → Hom(Hom(C, R), R)_k`, `ξ ↦ (c ↦ c(ξ))`, over a
/// field, together with the bidual complex.
pub struct Bidual {
    pub chains: FreeComplex,
    pub bidual: FreeComplex,
    pub phi: Vec<SparseMatrix>,
}

impl Bidual {
    pub fn new(chains: &FreeComplex) -> Result<Self> {
        if !chains.coeff.is_field() {
            return Err(Error::NotAField);
        }
        let cochains = chains.dual();
        let bidual = cochains.dual();
        // Column i of Φ_k lists the values of the dual basis functionals e^j
        // of Hom(C_k, R) on the chain e_i, i.e. the coordinates of Φ(e_i) in
        // the basis of Hom(Hom(C_k, R), R) dual to {e^j}.
        let sc = chains.scalars();
        let phi = (0..chains.len())
            .map(|k| {
                let n = chains.dims[k];
                let cols = (0..n)
                    .map(|i| {
                        let chain: SparseVec = vec![(i, Int::ONE)];
                        (0..n)
                            .filter_map(|j| {
                                let functional: SparseVec = vec![(j, Int::ONE)];
                                let value = pair(sc, &functional, &chain);
                                (!value.is_zero()).then_some((j, value))
                            })
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_columns(n, cols)
            })
            .collect();
        Ok(Bidual { chains: chains.clone(), bidual, phi })
    }

    pub fn is_chain_map(&self) -> bool {
        is_chain_map(&self.chains, &self.bidual, &self.phi)
    }

    pub fn induces_iso(&self, k: usize) -> bool {
        induces_iso(&self.chains, &self.bidual, &self.phi[k], k)
    }
}

fn pair(sc: crate::algebra::Scalars, f: &[(usize, Int)], c: &[(usize, Int)]) -> Int {
    let mut acc = Int::ZERO;
    let (mut i, mut j) = (0, 0);
    while i < f.len() && j < c.len() {
        match f[i].0.cmp(&c[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = sc.add(&acc, &sc.mul(&f[i].1, &c[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{circle, cone, torus};

    fn cone_hexagon() -> FilteredComplex {
        cone(&circle(6).unwrap()).unwrap().space.complex
    }

    fn with_apex(x: &FilteredComplex, v: i64) -> Perversity {
        Perversity::parse(&format!("strata:{{S0.0:{v}}}"), x).unwrap()
    }

    #[test]
    fn apex_triangle_allowability() {
        let x = cone_hexagon();
        let strata = x.strata();
        let tri = x.simplex(x.find_ids(&["c", "b.v0", "b.v1"]).unwrap()).clone();
        assert!(is_allowable(&x, &strata, &with_apex(&x, 0).table(&strata), &tri));
        assert!(!is_allowable(&x, &strata, &with_apex(&x, -1).table(&strata), &tri));
        let apex = x.simplex(x.find_ids(&["c"]).unwrap()).clone();
        for v in [0, 1] {
            assert!(!is_allowable(&x, &strata, &with_apex(&x, v).table(&strata), &apex));
        }
        let rim = x.simplex(x.find_ids(&["b.v0", "b.v1"]).unwrap()).clone();
        assert!(is_allowable(&x, &strata, &with_apex(&x, -5).table(&strata), &rim));
    }

    #[test]
    fn tame_boundary_examples() {
        let x = cone_hexagon();
        let edge = x.simplex(x.find_ids(&["c", "b.v0"]).unwrap()).clone();
        let d = tame_boundary(&x, &edge).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(x.label(&d[0].0), "(b.v0)");
        assert_eq!(d, tame_boundary_by_join(&x, &edge).unwrap());
        let tri = x.simplex(x.find_ids(&["c", "b.v0", "b.v1"]).unwrap()).clone();
        assert_eq!(tame_boundary(&x, &tri).unwrap().len(), 3);
        let apex = x.simplex(x.find_ids(&["c"]).unwrap()).clone();
        assert!(matches!(tame_boundary(&x, &apex), Err(Error::NotRegular(_))));
    }

    #[test]
    fn cone_on_hexagon_homology() {
        let x = cone_hexagon();
        let opts = ChainOptions::new(Theory::Tame, Coefficients::Integers);
        let h = |v: i64| intersection_homology(&x, &with_apex(&x, v), &opts).unwrap().to_string();
        assert_eq!(h(0), "(Z, 0, 0)");
        assert_eq!(h(-1), "(Z, Z, 0)");
        assert_eq!(h(2), "(0, 0, 0)");
        let king = ChainOptions::new(Theory::King, Coefficients::Integers);
        assert_eq!(intersection_homology(&x, &with_apex(&x, 0), &king).unwrap().to_string(), "(Z, 0, 0)");
    }

    #[test]
    fn unfiltered_is_ordinary_homology() {
        let t = torus().complex;
        let p = Perversity::zero(&t);
        for theory in [Theory::King, Theory::Tame] {
            let h = intersection_homology(&t, &p, &ChainOptions::new(theory, Coefficients::Integers)).unwrap();
            assert_eq!(h.to_string(), "(Z, Z^2, Z)");
        }
    }

    #[test]
    fn bidual_on_circle() {
        let c = circle(6).unwrap().complex;
        let ic = intersection_complex(&c, &Perversity::zero(&c), &ChainOptions::new(Theory::Tame, Coefficients::Rationals)).unwrap();
        let b = Bidual::new(ic.complex()).unwrap();
        assert!(b.is_chain_map());
        assert!((0..2).all(|k| b.induces_iso(k)));
        let z = intersection_complex(&c, &Perversity::zero(&c), &ChainOptions::new(Theory::Tame, Coefficients::Integers)).unwrap();
        assert!(matches!(Bidual::new(z.complex()), Err(Error::NotAField)));
    }
}
