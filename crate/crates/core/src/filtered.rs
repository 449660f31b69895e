//! Finite simplicial complexes filtered by vertex levels.
//!
//! The filtration is determined by the vertices: `X_i` is the full
//! subcomplex on vertices of level `≤ i` and a simplex has the level of its
//! highest vertex. Vertices are stored sorted by level (stably), so every
//! simplex, written in global vertex order, is the concatenation of its
//! level blocks `Δ_0, …, Δ_n`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Coefficients, Direction, FreeComplex, Int, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Sorted indices into [`FilteredComplex::vertices`].
pub type Simplex = Vec<usize>;

/// `(dimension, index)` of a simplex inside its complex.
pub type SimplexRef = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    formal_dimension: usize,
    vertices: Vec<Vertex>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    by_id: HashMap<String, usize>,
}

/// Serialized form. Field order is alphabetical so output keys are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Vec<Vec<String>>>,
    pub formal_dimension: usize,
    pub maximal_simplices: Vec<Vec<String>>,
    pub vertices: Vec<VertexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub id: String,
    pub level: i64,
}

impl FilteredComplex {
    /// Builds the face closure of `maximal` on the given vertices.
    ///
    /// Every listed vertex becomes a 0-simplex even if it appears in no
    /// maximal simplex.
    pub fn build(formal_dimension: usize, vertices: &[(String, i64)], maximal: &[Vec<String>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (id, level) in vertices {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateVertex(id.clone()));
            }
            if *level < 0 || *level > formal_dimension as i64 {
                return Err(Error::BadLevel { vertex: id.clone(), level: *level, formal_dimension });
            }
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| vertices[i].1);
        let sorted: Vec<Vertex> = order
            .iter()
            .map(|&i| Vertex { id: vertices[i].0.clone(), level: vertices[i].1 as usize })
            .collect();
        let position: HashMap<&str, usize> =
            sorted.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();

        let mut faces: Vec<BTreeSet<Simplex>> = Vec::new();
        let add = |s: Simplex, faces: &mut Vec<BTreeSet<Simplex>>| {
            let d = s.len() - 1;
            if faces.len() <= d {
                faces.resize(d + 1, BTreeSet::new());
            }
            faces[d].insert(s);
        };
        for v in 0..sorted.len() {
            add(vec![v], &mut faces);
        }
        for m in maximal {
            let mut s: Simplex = m
                .iter()
                .map(|id| position.get(id.as_str()).copied().ok_or_else(|| Error::UnknownVertex(id.clone())))
                .collect::<Result<_>>()?;
            s.sort_unstable();
            let before = s.len();
            s.dedup();
            if s.is_empty() || s.len() != before {
                return Err(Error::EmptySimplex);
            }
            if s.len() > 24 {
                return Err(Error::BadParam(format!("simplex with {} vertices is too large", s.len())));
            }
            if faces.get(s.len() - 1).is_some_and(|f| f.contains(&s)) {
                continue;
            }
            for mask in 1u32..(1u32 << s.len()) {
                let face: Simplex = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
                add(face, &mut faces);
            }
        }
        let simplices: Vec<Vec<Simplex>> = faces.into_iter().map(|f| f.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let by_id = sorted.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let x = FilteredComplex { formal_dimension, vertices: sorted, simplices, index, by_id };
        if !x.vertices.iter().any(|v| v.level == formal_dimension) {
            return Err(Error::EmptyRegularPart);
        }
        Ok(x)
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let vertices: Vec<(String, i64)> = json.vertices.iter().map(|v| (v.id.clone(), v.level)).collect();
        FilteredComplex::build(json.formal_dimension, &vertices, &json.maximal_simplices)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            boundary: None,
            formal_dimension: self.formal_dimension,
            maximal_simplices: self.maximal_simplices().iter().map(|s| self.ids(s)).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson { id: v.id.clone(), level: v.level as i64 })
                .collect(),
        }
    }

    pub fn formal_dimension(&self) -> usize {
        self.formal_dimension
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    /// Largest simplex dimension present.
    pub fn dimension(&self) -> usize {
        self.simplices.len() - 1
    }

    /// Number of chain degrees needed: enough for both the simplices and the
    /// formal dimension.
    pub fn degree_count(&self) -> usize {
        self.simplices.len().max(self.formal_dimension + 1)
    }

    pub fn simplices(&self, dim: usize) -> &[Simplex] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn simplex(&self, r: SimplexRef) -> &Simplex {
        &self.simplices[r.0][r.1]
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn find(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    pub fn find_ids(&self, ids: &[&str]) -> Option<SimplexRef> {
        let mut s: Simplex = ids.iter().map(|id| self.vertex_index(id)).collect::<Option<_>>()?;
        s.sort_unstable();
        Some((s.len() - 1, self.find(&s)?))
    }

    pub fn ids(&self, s: &[usize]) -> Vec<String> {
        s.iter().map(|&v| self.vertices[v].id.clone()).collect()
    }

    pub fn label(&self, s: &[usize]) -> String {
        format!("({})", self.ids(s).join(","))
    }

    pub fn level(&self, s: &[usize]) -> usize {
        self.vertices[*s.last().expect("nonempty simplex")].level
    }

    pub fn is_regular(&self, s: &[usize]) -> bool {
        self.level(s) == self.formal_dimension
    }

    /// The level blocks `Δ_0, …, Δ_n` of `s`.
    pub fn blocks(&self, s: &[usize]) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.formal_dimension + 1];
        for &v in s {
            out[self.vertices[v].level].push(v);
        }
        out
    }

    /// `‖σ‖_i = dim(Δ_0 ∗ ⋯ ∗ Δ_{n-i})` for `i = 0..=n`, `None` for the empty join.
    pub fn perverse_degrees(&self, s: &[usize]) -> Vec<Option<i64>> {
        let n = self.formal_dimension;
        (0..=n)
            .map(|i| {
                let count = s.iter().filter(|&&v| self.vertices[v].level <= n - i).count();
                (count > 0).then(|| count as i64 - 1)
            })
            .collect()
    }

    /// Facets of `s` with their incidence signs `(-1)^j`.
    pub fn facets(&self, s: &[usize]) -> Vec<(Simplex, i64)> {
        if s.len() < 2 {
            return Vec::new();
        }
        (0..s.len())
            .map(|j| {
                let mut f = s.to_vec();
                f.remove(j);
                (f, if j % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// Maximal simplices in (dimension, lexicographic) order.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for (f, _) in self.facets(s) {
                    covered[d - 1][self.index[d - 1][&f]] = true;
                }
            }
        }
        let mut out: Vec<Simplex> = Vec::new();
        for d in 0..self.simplices.len() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                if !covered[d][i] {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Simplicial chain complex over ℤ (degrees `0..degree_count()`).
    pub fn chain_complex(&self) -> FreeComplex {
        let degrees = self.degree_count();
        let dims: Vec<usize> = (0..degrees).map(|d| self.count(d)).collect();
        let diffs = (0..degrees)
            .map(|d| {
                if d == 0 {
                    return SparseMatrix::zeros(0, dims[0]);
                }
                let cols = self
                    .simplices(d)
                    .iter()
                    .map(|s| {
                        let mut col: SparseVec = self
                            .facets(s)
                            .into_iter()
                            .map(|(f, sign)| (self.index[d - 1][&f], Int::from(sign)))
                            .collect();
                        col.sort_by_key(|(i, _)| *i);
                        col
                    })
                    .collect();
                SparseMatrix::from_columns(dims[d - 1], cols)
            })
            .collect();
        FreeComplex::new(Coefficients::Integers, Direction::Homological, dims, diffs)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }

    /// Strata: connected components of the level-`i` simplices, linked
    /// through same-level facets.
    pub fn strata(&self) -> Strata {
        let offsets: Vec<usize> = self
            .simplices
            .iter()
            .scan(0, |acc, l| {
                let o = *acc;
                *acc += l.len();
                Some(o)
            })
            .collect();
        let total = self.total_simplices();
        let mut parent: Vec<usize> = (0..total).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for d in 1..self.simplices.len() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                let level = self.level(s);
                for (f, _) in self.facets(s) {
                    if self.level(&f) == level {
                        let a = root(&mut parent, offsets[d] + i);
                        let b = root(&mut parent, offsets[d - 1] + self.index[d - 1][&f]);
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        // Components numbered per level in order of their first simplex.
        let mut by_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut strata: Vec<Stratum> = Vec::new();
        let mut per_level = vec![0usize; self.formal_dimension + 1];
        let mut of_simplex: Vec<Vec<usize>> = self.simplices.iter().map(|l| vec![0; l.len()]).collect();
        let mut order: Vec<SimplexRef> = Vec::with_capacity(total);
        for d in 0..self.simplices.len() {
            for i in 0..self.simplices[d].len() {
                order.push((d, i));
            }
        }
        for (d, i) in order {
            let r = root(&mut parent, offsets[d] + i);
            let id = *by_root.entry(r).or_insert_with(|| {
                let level = self.level(&self.simplices[d][i]);
                let j = per_level[level];
                per_level[level] += 1;
                strata.push(Stratum {
                    id: format!("S{level}.{j}"),
                    dim: level,
                    codim: self.formal_dimension - level,
                    simplices: Vec::new(),
                });
                strata.len() - 1
            });
            strata[id].simplices.push((d, i));
            of_simplex[d][i] = id;
        }
        let mut sorted: Vec<usize> = (0..strata.len()).collect();
        sorted.sort_by(|&a, &b| (strata[a].dim, &strata[a].id).cmp(&(strata[b].dim, &strata[b].id)));
        let mut rename = vec![0; strata.len()];
        for (new, &old) in sorted.iter().enumerate() {
            rename[old] = new;
        }
        for row in of_simplex.iter_mut() {
            for s in row.iter_mut() {
                *s = rename[*s];
            }
        }
        let mut list: Vec<Option<Stratum>> = strata.into_iter().map(Some).collect();
        let strata = sorted.iter().map(|&i| list[i].take().unwrap()).collect();
        Strata { list: strata, of_simplex }
    }

    /// Combinatorial pseudomanifold conditions. Codimension-one faces that
    /// lie in `boundary` must bound exactly one top simplex instead of two.
    pub fn pseudomanifold_check(&self, boundary: Option<&Subcomplex>) -> PseudomanifoldReport {
        let n = self.formal_dimension;
        let mut failures = Vec::new();
        let top: Vec<usize> = (0..self.count(n)).filter(|&i| self.is_regular(&self.simplices[n][i])).collect();
        let mut in_top: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for &t in &top {
            let s = &self.simplices[n][t];
            for mask in 1u32..(1u32 << s.len()) {
                let face: Simplex = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
                in_top[face.len() - 1][self.index[face.len() - 1][&face]] = true;
            }
        }
        let mut pure = true;
        for d in 0..self.simplices.len() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                if !in_top[d][i] {
                    pure = false;
                    failures.push(format!("(a) {} is not a face of a top simplex", self.label(s)));
                }
            }
        }
        let mut nonbranching = true;
        if n >= 1 {
            let cofaces = self.top_cofaces();
            for (i, f) in self.simplices(n - 1).iter().enumerate() {
                if !self.is_regular(f) {
                    continue;
                }
                let expected = if boundary.is_some_and(|b| b.contains((n - 1, i))) { 1 } else { 2 };
                let got = cofaces.get(&i).map_or(0, Vec::len);
                if got != expected {
                    nonbranching = false;
                    failures.push(format!("(b) {} bounds {got} top simplices, expected {expected}", self.label(f)));
                }
            }
        }
        let mut dims_ok = true;
        for d in 0..self.simplices.len() {
            for s in &self.simplices[d] {
                if d > self.level(s) {
                    dims_ok = false;
                    failures.push(format!("(c) {} has dimension {d} above its level {}", self.label(s), self.level(s)));
                }
            }
        }
        PseudomanifoldReport { pure, nonbranching, dimensions: dims_ok, failures }
    }

    /// For each regular (n-1)-simplex, the regular n-simplices containing it
    /// with the incidence sign.
    fn top_cofaces(&self) -> HashMap<usize, Vec<(usize, i64)>> {
        let n = self.formal_dimension;
        let mut out: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        if n == 0 {
            return out;
        }
        for (t, s) in self.simplices(n).iter().enumerate() {
            if !self.is_regular(s) {
                continue;
            }
            for (f, sign) in self.facets(s) {
                if self.is_regular(&f) {
                    out.entry(self.index[n - 1][&f]).or_default().push((t, sign));
                }
            }
        }
        out
    }

    /// Coherent signs on the regular n-simplices, propagated across regular
    /// codimension-one faces shared by exactly two of them.
    pub fn orient(&self) -> Result<Orientation> {
        let n = self.formal_dimension;
        let count = self.count(n);
        let mut adjacency: Vec<Vec<(usize, i64)>> = vec![Vec::new(); count];
        for cof in self.top_cofaces().values() {
            if let [(a, sa), (b, sb)] = cof.as_slice() {
                // ε_a·sa + ε_b·sb = 0  ⇒  ε_b = -ε_a·sa·sb
                adjacency[*a].push((*b, -sa * sb));
                adjacency[*b].push((*a, -sa * sb));
            }
        }
        let mut signs: Vec<Option<i64>> = vec![None; count];
        for start in 0..count {
            if signs[start].is_some() || !self.is_regular(&self.simplices[n][start]) {
                continue;
            }
            signs[start] = Some(1);
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                let ea = signs[a].unwrap();
                for &(b, rel) in &adjacency[a] {
                    let want = ea * rel;
                    match signs[b] {
                        None => {
                            signs[b] = Some(want);
                            queue.push_back(b);
                        }
                        Some(eb) if eb != want => return Err(Error::NonOrientable),
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(Orientation {
            signs: signs.into_iter().enumerate().filter_map(|(i, s)| s.map(|s| (i, s))).collect(),
        })
    }

    /// `Σ ε_σ σ` over the oriented top simplices, as a chain in degree n.
    pub fn fundamental_cycle(&self, orientation: &Orientation) -> SparseVec {
        orientation.signs.iter().map(|(i, s)| (*i, Int::from(*s))).collect()
    }

    /// Full subcomplex on the vertices satisfying `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(&Vertex) -> bool) -> Subcomplex {
        let members = self
            .simplices
            .iter()
            .map(|l| l.iter().map(|s| s.iter().all(|&v| keep(&self.vertices[v]))).collect())
            .collect();
        Subcomplex { members }
    }

    /// Face closure of the given simplices.
    pub fn closure(&self, generators: &[Simplex]) -> Subcomplex {
        let mut members: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
        for s in generators {
            for mask in 1u32..(1u32 << s.len()) {
                let face: Simplex = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect();
                if let Some(i) = self.find(&face) {
                    members[face.len() - 1][i] = true;
                }
            }
        }
        Subcomplex { members }
    }

    /// The subcomplex as a filtered complex in its own right (same levels and
    /// formal dimension).
    pub fn restrict(&self, sub: &Subcomplex) -> Result<FilteredComplex> {
        let mut used = BTreeSet::new();
        let mut maximal = Vec::new();
        for d in 0..self.simplices.len() {
            for (i, s) in self.simplices[d].iter().enumerate() {
                if sub.contains((d, i)) {
                    used.extend(s.iter().copied());
                    maximal.push(self.ids(s));
                }
            }
        }
        let vertices: Vec<(String, i64)> = used
            .into_iter()
            .map(|v| (self.vertices[v].id.clone(), self.vertices[v].level as i64))
            .collect();
        FilteredComplex::build(self.formal_dimension, &vertices, &maximal)
    }
}

impl fmt::Display for FilteredComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.simplices.iter().map(|l| l.len().to_string()).collect();
        write!(f, "n={} f-vector=({})", self.formal_dimension, counts.join(","))
    }
}

/// A set of simplices of a fixed complex, indexed like the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    pub members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &FilteredComplex) -> Self {
        Subcomplex { members: x.simplices.iter().map(|l| vec![false; l.len()]).collect() }
    }

    pub fn contains(&self, r: SimplexRef) -> bool {
        self.members.get(r.0).and_then(|l| l.get(r.1)).copied().unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|l| l.iter().all(|b| !b))
    }

    pub fn len(&self) -> usize {
        self.members.iter().map(|l| l.iter().filter(|b| **b).count()).sum()
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    /// Whether every face of a member is a member.
    pub fn is_closed(&self, x: &FilteredComplex) -> bool {
        (1..self.members.len()).all(|d| {
            x.simplices(d).iter().enumerate().all(|(i, s)| {
                !self.members[d][i] || x.facets(s).iter().all(|(f, _)| self.members[d - 1][x.index[d - 1][f]])
            })
        })
    }

    /// Maximal member simplices, for serialization.
    pub fn maximal(&self, x: &FilteredComplex) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..self.members.len() {
            for (i, s) in x.simplices(d).iter().enumerate() {
                if !self.members[d][i] {
                    continue;
                }
                let covered = x
                    .simplices(d + 1)
                    .iter()
                    .enumerate()
                    .any(|(j, t)| self.members[d + 1][j] && s.iter().all(|v| t.contains(v)));
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub id: String,
    pub dim: usize,
    pub codim: usize,
    #[serde(skip)]
    pub simplices: Vec<SimplexRef>,
}

impl Stratum {
    pub fn is_regular(&self) -> bool {
        self.codim == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strata {
    pub list: Vec<Stratum>,
    of_simplex: Vec<Vec<usize>>,
}

impl Strata {
    pub fn of(&self, r: SimplexRef) -> usize {
        self.of_simplex[r.0][r.1]
    }

    pub fn by_id(&self, id: &str) -> Option<usize> {
        self.list.iter().position(|s| s.id == id)
    }

    pub fn singular(&self) -> impl Iterator<Item = (usize, &Stratum)> {
        self.list.iter().enumerate().filter(|(_, s)| !s.is_regular())
    }

    /// Strata met by `s`: for each nonempty level block `Δ_i`, the stratum of
    /// the face `Δ_0 ∗ ⋯ ∗ Δ_i`. Indexed by level.
    pub fn met_by(&self, x: &FilteredComplex, s: &[usize]) -> Vec<Option<usize>> {
        let mut out = vec![None; x.formal_dimension + 1];
        for (pos, &v) in s.iter().enumerate() {
            let level = x.vertices[v].level;
            let last_of_level = s.get(pos + 1).is_none_or(|&w| x.vertices[w].level != level);
            if last_of_level {
                let prefix = &s[..=pos];
                let idx = x.find(prefix).expect("faces are present");
                out[level] = Some(self.of((prefix.len() - 1, idx)));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    /// (a) every simplex is a face of a regular n-simplex.
    pub pure: bool,
    /// (b) regular (n-1)-simplices bound two top simplices (one on the boundary).
    pub nonbranching: bool,
    /// (c) no simplex has dimension above its level.
    pub dimensions: bool,
    pub failures: Vec<String>,
}

impl PseudomanifoldReport {
    pub fn passes(&self) -> bool {
        self.pure && self.nonbranching && self.dimensions
    }
}

/// Signs on the regular n-simplices, keyed by their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub signs: BTreeMap<usize, i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone_hexagon() -> FilteredComplex {
        let mut vertices = vec![("a".to_string(), 0)];
        let mut maximal = Vec::new();
        for i in 0..6 {
            vertices.push((format!("v{i}"), 2));
            maximal.push(vec!["a".to_string(), format!("v{i}"), format!("v{}", (i + 1) % 6)]);
        }
        FilteredComplex::build(2, &vertices, &maximal).unwrap()
    }

    #[test]
    fn hexagon_cone_counts() {
        let x = cone_hexagon();
        assert_eq!(x.total_simplices(), 25);
        let strata = x.strata();
        assert_eq!(strata.list.len(), 2);
        assert_eq!(strata.list[0].dim, 0);
        assert_eq!(strata.list[0].simplices.len(), 1);
        assert_eq!(strata.list[1].simplices.len(), 24);
    }

    #[test]
    fn join_blocks_and_degrees() {
        let x = cone_hexagon();
        let (_, t) = x.find_ids(&["a", "v0", "v1"]).unwrap();
        let s = &x.simplices(2)[t];
        let blocks = x.blocks(s);
        assert_eq!(blocks[0].len(), 1);
        assert!(blocks[1].is_empty());
        assert_eq!(blocks[2].len(), 2);
        assert!(x.is_regular(s));
        assert_eq!(x.perverse_degrees(s), vec![Some(2), Some(0), Some(0)]);
        let apex = &x.simplices(0)[x.vertex_index("a").unwrap()];
        assert!(!x.is_regular(&[apex[0]]));
    }

    #[test]
    fn validation_errors() {
        let v = |id: &str, l: i64| (id.to_string(), l);
        assert_eq!(
            FilteredComplex::build(1, &[v("a", 0), v("b", 2)], &[]).unwrap_err(),
            Error::BadLevel { vertex: "b".into(), level: 2, formal_dimension: 1 }
        );
        assert_eq!(
            FilteredComplex::build(1, &[v("a", 0), v("b", 0)], &[]).unwrap_err(),
            Error::EmptyRegularPart
        );
        assert_eq!(
            FilteredComplex::build(0, &[v("a", 0), v("a", 0)], &[]).unwrap_err(),
            Error::DuplicateVertex("a".into())
        );
        assert_eq!(
            FilteredComplex::build(0, &[v("a", 0)], &[vec!["b".into()]]).unwrap_err(),
            Error::UnknownVertex("b".into())
        );
        let point = FilteredComplex::build(0, &[v("p", 0)], &[]).unwrap();
        let strata = point.strata();
        assert_eq!(strata.list.len(), 1);
        assert!(strata.list[0].is_regular());
    }

    #[test]
    fn pseudomanifold_facts() {
        let x = cone_hexagon();
        // Without the rim declared as boundary, the rim edges have one coface.
        assert!(!x.pseudomanifold_check(None).nonbranching);
        let rim = x.full_subcomplex(|v| v.level == 2);
        let rep = x.pseudomanifold_check(Some(&rim));
        assert!(rep.passes(), "{:?}", rep.failures);

        let v = |id: &str, l: i64| (id.to_string(), l);
        let edge = FilteredComplex::build(2, &[v("a", 2), v("b", 2)], &[vec!["a".into(), "b".into()]]).unwrap();
        assert!(!edge.pseudomanifold_check(None).pure);
    }

    #[test]
    fn json_round_trip() {
        let x = cone_hexagon();
        let json = serde_json::to_string(&x.to_json()).unwrap();
        let back: ComplexJson = serde_json::from_str(&json).unwrap();
        let y = FilteredComplex::from_json(&back).unwrap();
        assert_eq!(x, y);
        assert_eq!(serde_json::to_string(&y.to_json()).unwrap(), json);
    }
}
