//! Generators and combinators producing filtered complexes.
//!
//! A [`Space`] is a filtered complex together with a boundary subcomplex: the
//! simplices at infinity of the non-compact space it models. Closed cones
//! model open cones and closed cubes model euclidean factors, so the base of
//! a cone and the faces of a cube are boundary. Borel–Moore homology of the
//! modelled space is homology relative to the boundary.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::filtered::{FilteredComplex, Simplex, Subcomplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    pub complex: FilteredComplex,
    pub boundary: Subcomplex,
}

impl Space {
    pub fn closed(complex: FilteredComplex) -> Self {
        let boundary = Subcomplex::empty(&complex);
        Space { complex, boundary }
    }

    pub fn is_compact(&self) -> bool {
        self.boundary.is_empty()
    }
}

/// Which combinator produced a space, recorded for inducing perversities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combinator {
    Cone,
    JoinSphere(usize),
    ProductCube(usize),
    DisjointUnionLeft,
    DisjointUnionRight,
}

/// Vertex-level record of a construction: where each vertex of the input
/// went. For products, the copy over the cube corner `0…0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedMap {
    pub combinator: Combinator,
    pub source_vertices: Vec<String>,
    pub vertex_map: Vec<usize>,
}

impl StratifiedMap {
    /// Image of a simplex of the source complex.
    pub fn image(&self, s: &[usize]) -> Simplex {
        let mut out: Simplex = s.iter().map(|&v| self.vertex_map[v]).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub space: Space,
    pub map: StratifiedMap,
    /// For products: the subcomplex `X × ∂I^a`.
    pub handle: Option<Subcomplex>,
}

type Levels = Vec<(String, i64)>;

fn assemble(n: usize, vertices: Levels, maximal: Vec<Vec<String>>, boundary: Vec<Vec<String>>) -> Result<Space> {
    let complex = FilteredComplex::build(n, &vertices, &maximal)?;
    let gens: Vec<Simplex> = boundary
        .iter()
        .map(|ids| {
            let mut s: Simplex = ids.iter().map(|id| complex.vertex_index(id).expect("known vertex")).collect();
            s.sort_unstable();
            s
        })
        .collect();
    let boundary = complex.closure(&gens);
    Ok(Space { complex, boundary })
}

fn trivially_filtered(n: usize, ids: Vec<String>, maximal: Vec<Vec<String>>) -> Result<Space> {
    let vertices = ids.into_iter().map(|id| (id, n as i64)).collect();
    assemble(n, vertices, maximal, Vec::new())
}

fn v(i: usize) -> String {
    format!("v{i}")
}

pub fn point() -> Space {
    trivially_filtered(0, vec!["p".into()], Vec::new()).expect("valid")
}

/// A closed segment modelling the open interval: both ends are boundary.
pub fn interval() -> Space {
    let vertices = vec![(v(0), 1), (v(1), 1)];
    assemble(1, vertices, vec![vec![v(0), v(1)]], vec![vec![v(0)], vec![v(1)]]).expect("valid")
}

pub fn circle(m: usize) -> Result<Space> {
    if m < 3 {
        return Err(Error::BadParam(format!("circle needs at least 3 vertices, got {m}")));
    }
    let edges = (0..m).map(|i| vec![v(i), v((i + 1) % m)]).collect();
    trivially_filtered(1, (0..m).map(v).collect(), edges)
}

/// Boundary of the (a+1)-dimensional cross-polytope.
pub fn sphere(a: usize) -> Result<Space> {
    if a > 8 {
        return Err(Error::BadParam(format!("sphere dimension {a} is too large")));
    }
    let (ids, facets) = cross_polytope(a);
    trivially_filtered(a, ids, facets)
}

fn cross_polytope(a: usize) -> (Vec<String>, Vec<Vec<String>>) {
    let ids: Vec<String> = (0..=a).flat_map(|i| [format!("p{i}"), format!("m{i}")]).collect();
    let facets = (0u32..1 << (a + 1))
        .map(|mask| {
            (0..=a)
                .map(|i| if mask >> i & 1 == 0 { format!("p{i}") } else { format!("m{i}") })
                .collect()
        })
        .collect();
    (ids, facets)
}

/// Seven-vertex torus.
pub fn torus() -> Space {
    let mut tris = Vec::new();
    for i in 0..7 {
        tris.push(vec![v(i), v((i + 1) % 7), v((i + 3) % 7)]);
        tris.push(vec![v(i), v((i + 2) % 7), v((i + 3) % 7)]);
    }
    trivially_filtered(2, (0..7).map(v).collect(), tris).expect("valid")
}

/// Six-vertex projective plane.
pub fn rp2() -> Space {
    const TRIS: [[usize; 3]; 10] = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    let tris = TRIS.iter().map(|t| t.iter().map(|&i| v(i)).collect()).collect();
    trivially_filtered(2, (0..6).map(v).collect(), tris).expect("valid")
}

fn ids_of(x: &FilteredComplex, s: &[usize], prefix: &str) -> Vec<String> {
    s.iter().map(|&w| format!("{prefix}{}", x.vertices()[w].id)).collect()
}

fn index_map(source: &FilteredComplex, target: &FilteredComplex, rename: impl Fn(&str) -> String) -> Vec<usize> {
    source
        .vertices()
        .iter()
        .map(|w| target.vertex_index(&rename(&w.id)).expect("renamed vertex present"))
        .collect()
}

/// Closed cone with apex `c` at level 0; base vertices are renamed `b.<id>`
/// and move up one level.
pub fn cone(l: &Space) -> Result<Construction> {
    let x = &l.complex;
    let n = x.formal_dimension() + 1;
    let mut vertices: Levels = vec![("c".into(), 0)];
    vertices.extend(x.vertices().iter().map(|w| (format!("b.{}", w.id), w.level as i64 + 1)));
    let maximal = x
        .maximal_simplices()
        .iter()
        .map(|s| {
            let mut ids = vec!["c".to_string()];
            ids.extend(ids_of(x, s, "b."));
            ids
        })
        .collect();
    let mut boundary: Vec<Vec<String>> = x.maximal_simplices().iter().map(|s| ids_of(x, s, "b.")).collect();
    for s in l.boundary.maximal(x) {
        let mut ids = vec!["c".to_string()];
        ids.extend(ids_of(x, &s, "b."));
        boundary.push(ids);
    }
    let space = assemble(n, vertices, maximal, boundary)?;
    let vertex_map = index_map(x, &space.complex, |id| format!("b.{id}"));
    Ok(Construction {
        map: StratifiedMap { combinator: Combinator::Cone, source_vertices: x.ids(&(0..x.vertices().len()).collect::<Vec<_>>()), vertex_map },
        space,
        handle: None,
    })
}

/// `S^a ∗ X` with the cross-polytope sphere at level `a` and `X` shifted up
/// by `a + 1`. Vertices are renamed `s.<id>` and `x.<id>`.
pub fn join_sphere(a: usize, l: &Space) -> Result<Construction> {
    if a > 8 {
        return Err(Error::BadParam(format!("sphere dimension {a} is too large")));
    }
    let x = &l.complex;
    let n = a + 1 + x.formal_dimension();
    let (sphere_ids, sphere_facets) = cross_polytope(a);
    let mut vertices: Levels = sphere_ids.iter().map(|id| (format!("s.{id}"), a as i64)).collect();
    vertices.extend(x.vertices().iter().map(|w| (format!("x.{}", w.id), (w.level + a + 1) as i64)));
    let join = |facet: &[String], s: &[usize]| -> Vec<String> {
        let mut ids: Vec<String> = facet.iter().map(|id| format!("s.{id}")).collect();
        ids.extend(ids_of(x, s, "x."));
        ids
    };
    let maximal = sphere_facets
        .iter()
        .flat_map(|f| x.maximal_simplices().into_iter().map(move |s| (f.clone(), s)))
        .map(|(f, s)| join(&f, &s))
        .collect();
    let boundary = sphere_facets
        .iter()
        .flat_map(|f| l.boundary.maximal(x).into_iter().map(move |s| (f.clone(), s)))
        .map(|(f, s)| join(&f, &s))
        .collect();
    let space = assemble(n, vertices, maximal, boundary)?;
    let vertex_map = index_map(x, &space.complex, |id| format!("x.{id}"));
    Ok(Construction {
        map: StratifiedMap { combinator: Combinator::JoinSphere(a), source_vertices: x.ids(&(0..x.vertices().len()).collect::<Vec<_>>()), vertex_map },
        space,
        handle: None,
    })
}

/// `X × [0,1]^a` by iterated staircase prisms. Vertex `<id>|<bits>` sits over
/// cube corner `bits` at level `level(id) + a`.
pub fn product_cube(a: usize, l: &Space) -> Result<Construction> {
    if a > 6 {
        return Err(Error::BadParam(format!("cube dimension {a} is too large")));
    }
    let x = &l.complex;
    let n = x.formal_dimension() + a;
    // Simplices as lists of (vertex, corner bits), built one factor at a time.
    type Cell = Vec<(usize, Vec<u8>)>;
    let mut cells: Vec<Cell> = x
        .maximal_simplices()
        .into_iter()
        .map(|s| s.into_iter().map(|w| (w, Vec::new())).collect())
        .collect();
    for _ in 0..a {
        let mut next = Vec::new();
        for cell in &cells {
            for j in 0..cell.len() {
                let mut prism: Cell = Vec::with_capacity(cell.len() + 1);
                for (i, (w, bits)) in cell.iter().enumerate() {
                    let with = |b: u8| {
                        let mut bb = bits.clone();
                        bb.push(b);
                        (*w, bb)
                    };
                    if i <= j {
                        prism.push(with(0));
                    }
                    if i >= j {
                        prism.push(with(1));
                    }
                }
                next.push(prism);
            }
        }
        cells = next;
    }
    let name = |w: usize, bits: &[u8]| -> String {
        let b: String = bits.iter().map(|d| char::from(b'0' + d)).collect();
        if a == 0 {
            x.vertices()[w].id.clone()
        } else {
            format!("{}|{b}", x.vertices()[w].id)
        }
    };
    let mut vertices: Levels = Vec::new();
    let mut corner_of: HashMap<String, (usize, Vec<u8>)> = HashMap::new();
    for (w, vert) in x.vertices().iter().enumerate() {
        for mask in 0u32..1 << a {
            let bits: Vec<u8> = (0..a).map(|c| (mask >> c & 1) as u8).collect();
            let id = name(w, &bits);
            vertices.push((id.clone(), (vert.level + a) as i64));
            corner_of.insert(id, (w, bits));
        }
    }
    let maximal: Vec<Vec<String>> = cells.iter().map(|c| c.iter().map(|(w, b)| name(*w, b)).collect()).collect();
    let space = assemble(n, vertices, maximal, Vec::new())?;
    let y = &space.complex;

    let mut handle = Subcomplex::empty(y);
    let mut boundary = Subcomplex::empty(y);
    for d in 0..=y.dimension() {
        for (i, s) in y.simplices(d).iter().enumerate() {
            let corners: Vec<&(usize, Vec<u8>)> = s.iter().map(|&w| &corner_of[&y.vertices()[w].id]).collect();
            let on_face = (0..a).any(|c| corners.iter().all(|(_, b)| b[c] == corners[0].1[c]));
            let base: BTreeSet<usize> = corners.iter().map(|(w, _)| *w).collect();
            let base: Simplex = base.into_iter().collect();
            let over_boundary = x.find(&base).is_some_and(|j| l.boundary.contains((base.len() - 1, j)));
            handle.members[d][i] = on_face;
            boundary.members[d][i] = on_face || over_boundary;
        }
    }
    let zero = vec![0u8; a];
    let vertex_map = index_map(x, y, |id| {
        let w = x.vertex_index(id).expect("source vertex");
        name(w, &zero)
    });
    Ok(Construction {
        map: StratifiedMap { combinator: Combinator::ProductCube(a), source_vertices: x.ids(&(0..x.vertices().len()).collect::<Vec<_>>()), vertex_map },
        space: Space { complex: space.complex, boundary },
        handle: Some(handle),
    })
}

/// Disjoint union of two spaces of the same formal dimension; vertices are
/// renamed `l.<id>` and `r.<id>`. Returns the maps from each side.
pub fn disjoint_union(left: &Space, right: &Space) -> Result<(Space, StratifiedMap, StratifiedMap)> {
    let (x, y) = (&left.complex, &right.complex);
    if x.formal_dimension() != y.formal_dimension() {
        return Err(Error::BadParam(format!(
            "disjoint union of formal dimensions {} and {}",
            x.formal_dimension(),
            y.formal_dimension()
        )));
    }
    let mut vertices: Levels = x.vertices().iter().map(|w| (format!("l.{}", w.id), w.level as i64)).collect();
    vertices.extend(y.vertices().iter().map(|w| (format!("r.{}", w.id), w.level as i64)));
    let mut maximal: Vec<Vec<String>> = x.maximal_simplices().iter().map(|s| ids_of(x, s, "l.")).collect();
    maximal.extend(y.maximal_simplices().iter().map(|s| ids_of(y, s, "r.")));
    let mut boundary: Vec<Vec<String>> = left.boundary.maximal(x).iter().map(|s| ids_of(x, s, "l.")).collect();
    boundary.extend(right.boundary.maximal(y).iter().map(|s| ids_of(y, s, "r.")));
    let space = assemble(x.formal_dimension(), vertices, maximal, boundary)?;
    let all = |c: &FilteredComplex| c.ids(&(0..c.vertices().len()).collect::<Vec<_>>());
    let lm = StratifiedMap {
        combinator: Combinator::DisjointUnionLeft,
        source_vertices: all(x),
        vertex_map: index_map(x, &space.complex, |id| format!("l.{id}")),
    };
    let rm = StratifiedMap {
        combinator: Combinator::DisjointUnionRight,
        source_vertices: all(y),
        vertex_map: index_map(y, &space.complex, |id| format!("r.{id}")),
    };
    Ok((space, lm, rm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::HomologySummary;

    fn homology(s: &Space) -> HomologySummary {
        s.complex.chain_complex().homology().unwrap()
    }

    fn summary(h: &HomologySummary) -> String {
        h.to_string()
    }

    #[test]
    fn generator_homology() {
        assert_eq!(summary(&homology(&torus())), "(Z, Z^2, Z)");
        assert_eq!(summary(&homology(&rp2())), "(Z, Z/2, 0)");
        assert_eq!(summary(&homology(&sphere(2).unwrap())), "(Z, 0, Z)");
        assert_eq!(summary(&homology(&circle(6).unwrap())), "(Z, Z)");
        assert_eq!(torus().complex.count(2), 14);
        assert_eq!(rp2().complex.count(2), 10);
        assert!(circle(2).is_err());
    }

    #[test]
    fn cone_shapes() {
        let c = cone(&point()).unwrap().space;
        assert_eq!(c.complex.formal_dimension(), 1);
        assert_eq!(c.complex.total_simplices(), 3);
        let hex = cone(&circle(6).unwrap()).unwrap().space;
        assert_eq!(hex.complex.total_simplices(), 25);
        assert_eq!(hex.complex.strata().list.len(), 2);
        assert_eq!(hex.boundary.len(), 12);
        let c = cone(&rp2()).unwrap().space;
        let strata = c.complex.strata();
        assert_eq!(strata.list[0].codim, 3);
    }

    #[test]
    fn join_shapes() {
        let st = join_sphere(0, &torus()).unwrap().space;
        assert_eq!(st.complex.formal_dimension(), 3);
        let strata = st.complex.strata();
        assert_eq!(strata.singular().count(), 2);
        assert_eq!(strata.list.len(), 3);
        let d = join_sphere(1, &point()).unwrap().space;
        assert_eq!(d.complex.formal_dimension(), 2);
        assert_eq!(d.complex.strata().list.len(), 2);
        assert!(d.complex.orient().is_ok());
    }

    #[test]
    fn product_shapes() {
        let t = torus();
        let same = product_cube(0, &t).unwrap();
        assert_eq!(same.space.complex.total_simplices(), t.complex.total_simplices());
        assert!(same.handle.unwrap().is_empty());

        let seg = product_cube(1, &point()).unwrap();
        assert_eq!(seg.space.complex.total_simplices(), 3);
        assert_eq!(seg.handle.as_ref().unwrap().len(), 2);

        let prism = product_cube(1, &cone(&circle(6).unwrap()).unwrap().space).unwrap();
        assert_eq!(prism.space.complex.formal_dimension(), 3);
        assert_eq!(prism.space.complex.euler_characteristic(), 1);
        // Two copies of the 25-simplex cone.
        assert_eq!(prism.handle.as_ref().unwrap().len(), 50);

        let sq = product_cube(2, &t).unwrap();
        assert_eq!(sq.space.complex.euler_characteristic(), 0);
        let h = homology(&sq.space);
        assert_eq!(summary(&h), "(Z, Z^2, Z, 0, 0)");
    }
}
