//! Simplicial complexes, pairs of complexes, and their GF(2) homology.
//!
//! A complex is stored as per-dimension ordered sets of simplices; a simplex
//! is a strictly ascending vertex tuple. Relative homology of a pair `(X, A)`
//! is computed from the quotient chain complex on the simplices of `X` not in
//! `A`. Reduced homology uses the augmented complex, in which the empty
//! simplex is the single cell of degree -1.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, TopologyError};
use crate::gf2::{BitVec, EchelonSpan, Gf2Matrix};

pub type Vertex = u32;

/// A simplex given by its strictly ascending vertex list. The empty vertex
/// list is the (-1)-dimensional simplex used for augmentation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        let original = v.clone();
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(TopologyError::DuplicateVertex(original));
        }
        Ok(Simplex(v))
    }

    /// The empty simplex, of dimension -1.
    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Codimension-one faces, obtained by dropping each vertex in turn.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len()).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    /// The join with a vertex not already present.
    pub fn with_vertex(&self, v: Vertex) -> Result<Simplex> {
        Simplex::new(self.0.iter().copied().chain(std::iter::once(v)))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A face-closed set of simplices.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    by_dim: Vec<BTreeSet<Simplex>>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("f_vector", &self.f_vector())
            .field("maximal", &self.maximal_simplices())
            .finish()
    }
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Face closure of the given maximal simplices.
    pub fn from_maximal<I, S>(maximal: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = Vertex>,
    {
        let mut out = Self::new();
        for s in maximal {
            let simplex = Simplex::new(s)?;
            if simplex.is_empty() {
                return Err(TopologyError::EmptySimplex);
            }
            out.insert_closed(&simplex);
        }
        Ok(out)
    }

    /// Face closure of an arbitrary collection of nonempty simplices.
    pub fn from_simplices<'a>(simplices: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let mut out = Self::new();
        for s in simplices {
            if !s.is_empty() {
                out.insert_closed(s);
            }
        }
        out
    }

    fn insert_closed(&mut self, simplex: &Simplex) {
        if self.contains(simplex) {
            return;
        }
        for face in simplex.faces() {
            let d = face.0.len() - 1;
            if self.by_dim.len() <= d {
                self.by_dim.resize_with(d + 1, BTreeSet::new);
            }
            self.by_dim[d].insert(face);
        }
    }

    /// Top dimension present, or -1 for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.by_dim.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Total number of (nonempty) simplices.
    pub fn len(&self) -> usize {
        self.by_dim.iter().map(BTreeSet::len).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(BTreeSet::len).collect()
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = &Simplex> {
        self.by_dim.get(dim).into_iter().flatten()
    }

    /// Every simplex, ordered by dimension and then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, simplex: &Simplex) -> bool {
        match simplex.0.len() {
            0 => false,
            n => self.by_dim.get(n - 1).is_some_and(|s| s.contains(simplex)),
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices(0).map(|s| s.0[0]).collect()
    }

    pub fn max_vertex(&self) -> Option<Vertex> {
        self.by_dim.first().and_then(|s| s.last()).map(|s| s.0[0])
    }

    /// Simplices that are not a proper face of another simplex, in
    /// lexicographic order of their vertex tuples.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for (d, layer) in self.by_dim.iter().enumerate() {
            let covered: BTreeSet<Simplex> = self
                .by_dim
                .get(d + 1)
                .into_iter()
                .flatten()
                .flat_map(|s| s.facets().collect::<Vec<_>>())
                .collect();
            out.extend(layer.iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out.sort();
        out
    }

    pub fn is_subcomplex_of(&self, ambient: &SimplicialComplex) -> bool {
        self.check_subcomplex_of(ambient).is_ok()
    }

    pub fn check_subcomplex_of(&self, ambient: &SimplicialComplex) -> Result<()> {
        match self.iter().find(|s| !ambient.contains(s)) {
            Some(s) => Err(TopologyError::NotASubcomplex { simplex: s.clone() }),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut out = self.clone();
        for s in other.iter() {
            out.insert_closed(s);
        }
        out
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.iter().filter(|s| other.contains(s)))
    }

    /// Renames vertices; fails if two vertices of one simplex collide.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<SimplicialComplex> {
        let mut out = SimplicialComplex::new();
        for s in self.maximal_simplices() {
            out.insert_closed(&Simplex::new(s.0.iter().map(|&v| map(v)))?);
        }
        Ok(out)
    }

    /// Removes a simplex together with every simplex containing it.
    pub fn remove_star(&self, simplex: &Simplex) -> SimplicialComplex {
        let mut out = self.clone();
        for layer in out.by_dim.iter_mut() {
            layer.retain(|s| !simplex.is_face_of(s));
        }
        while out.by_dim.last().is_some_and(BTreeSet::is_empty) {
            out.by_dim.pop();
        }
        out
    }

    /// True when every simplex of `self` spanned by vertices of `sub` lies in `sub`.
    pub fn is_full_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        let sub_vertices: BTreeSet<Vertex> = sub.vertices().into_iter().collect();
        self.iter()
            .filter(|s| s.0.iter().all(|v| sub_vertices.contains(v)))
            .all(|s| sub.contains(s))
    }

    /// For each (d-1)-simplex, how many d-simplices contain it, where d is
    /// the top dimension.
    fn ridge_degrees(&self) -> BTreeMap<Simplex, usize> {
        let mut degrees = BTreeMap::new();
        let d = self.by_dim.len();
        if d < 2 {
            return degrees;
        }
        for ridge in &self.by_dim[d - 2] {
            degrees.insert(ridge.clone(), 0);
        }
        for top in &self.by_dim[d - 1] {
            for f in top.facets() {
                *degrees.get_mut(&f).expect("face-closed") += 1;
            }
        }
        degrees
    }

    /// Every simplex is a face of a top-dimensional one.
    pub fn is_pure(&self) -> bool {
        let top = self.by_dim.len();
        top == 0 || self.maximal_simplices().iter().all(|s| s.0.len() == top)
    }

    /// Closure of the (d-1)-simplices lying in exactly one d-simplex.
    pub fn boundary_subcomplex(&self) -> Result<SimplicialComplex> {
        if !self.is_pure() {
            return Err(TopologyError::NotAPseudomanifold {
                reason: "complex is not pure".into(),
            });
        }
        let degrees = self.ridge_degrees();
        if let Some((ridge, n)) = degrees.iter().find(|(_, &n)| n > 2) {
            return Err(TopologyError::NotAPseudomanifold {
                reason: format!("{ridge} lies in {n} top-dimensional simplices"),
            });
        }
        Ok(SimplicialComplex::from_simplices(
            degrees.iter().filter(|(_, &n)| n == 1).map(|(s, _)| s),
        ))
    }

    /// Pure, non-branching, and each connected component is strongly
    /// connected through codimension-one faces.
    pub fn validate_pseudomanifold(&self) -> Result<()> {
        self.boundary_subcomplex()?;
        let d = self.by_dim.len();
        if d == 0 {
            return Ok(());
        }
        let tops: Vec<&Simplex> = self.by_dim[d - 1].iter().collect();
        let mut strong = UnionFind::new(tops.len());
        let mut loose = UnionFind::new(tops.len());
        let mut by_ridge: HashMap<Simplex, usize> = HashMap::new();
        let mut by_vertex: HashMap<Vertex, usize> = HashMap::new();
        for (i, t) in tops.iter().enumerate() {
            for f in t.facets() {
                if let Some(&j) = by_ridge.get(&f) {
                    strong.union(i, j);
                } else {
                    by_ridge.insert(f, i);
                }
            }
            for &v in &t.0 {
                if let Some(&j) = by_vertex.get(&v) {
                    loose.union(i, j);
                } else {
                    by_vertex.insert(v, i);
                }
            }
        }
        for i in 0..tops.len() {
            for j in (i + 1)..tops.len() {
                if loose.find(i) == loose.find(j) && strong.find(i) != strong.find(j) {
                    return Err(TopologyError::NotAPseudomanifold {
                        reason: format!(
                            "{} and {} share a component but are not joined through codimension-one faces",
                            tops[i], tops[j]
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Barycentric subdivision; new vertices are numbered by the position of
    /// the subdivided simplex in dimension-then-lexicographic order.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let vertex_of: BTreeMap<Simplex, Vertex> = self
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as Vertex))
            .collect();
        let sub = Subdivision {
            complex: SimplicialComplex::new(),
            vertex_of,
        };
        let complex = sub.image(self);
        Subdivision { complex, ..sub }
    }
}

/// A barycentric subdivision together with the barycenter labels, so that
/// subcomplexes of the original can be carried along.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    vertex_of: BTreeMap<Simplex, Vertex>,
}

impl Subdivision {
    pub fn barycenter(&self, simplex: &Simplex) -> Option<Vertex> {
        self.vertex_of.get(simplex).copied()
    }

    /// Subdivision of a subcomplex of the original complex.
    pub fn image(&self, sub: &SimplicialComplex) -> SimplicialComplex {
        let mut out = SimplicialComplex::new();
        for top in sub.maximal_simplices() {
            let mut flags = Vec::new();
            full_flags(&top, &mut Vec::new(), &mut flags);
            for flag in flags {
                let s = Simplex::new(flag.iter().map(|f| self.vertex_of[f]))
                    .expect("barycenters of a flag are distinct");
                out.insert_closed(&s);
            }
        }
        out
    }
}

/// Maximal chains of faces ending at `simplex`, listed from the top down.
fn full_flags(simplex: &Simplex, prefix: &mut Vec<Simplex>, out: &mut Vec<Vec<Simplex>>) {
    prefix.push(simplex.clone());
    if simplex.0.len() == 1 {
        out.push(prefix.clone());
    } else {
        for f in simplex.facets() {
            full_flags(&f, prefix, out);
        }
    }
    prefix.pop();
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A complex together with a subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    ambient: SimplicialComplex,
    sub: SimplicialComplex,
}

impl ComplexPair {
    pub fn new(ambient: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        sub.check_subcomplex_of(&ambient)?;
        Ok(Self { ambient, sub })
    }

    /// The pair `(X, empty)`.
    pub fn absolute(ambient: SimplicialComplex) -> Self {
        Self {
            ambient,
            sub: SimplicialComplex::new(),
        }
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    /// Simplices of the ambient complex outside the subcomplex.
    pub fn relative_cells(&self) -> impl Iterator<Item = &Simplex> {
        self.ambient.iter().filter(|s| !self.sub.contains(s))
    }
}

/// A finite chain complex over GF(2) whose cells are simplices, graded from
/// degree -1 upward.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    cells: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    boundaries: Vec<Gf2Matrix>,
}

impl ChainComplex {
    /// Builds the complex on the given cells; the boundary of a cell is the
    /// sum of its facets that are themselves cells.
    fn from_cells<'a>(cells: impl IntoIterator<Item = &'a Simplex>) -> Self {
        let mut graded: Vec<Vec<Simplex>> = Vec::new();
        for c in cells {
            let slot = c.0.len();
            if graded.len() <= slot {
                graded.resize_with(slot + 1, Vec::new);
            }
            graded[slot].push(c.clone());
        }
        for layer in graded.iter_mut() {
            layer.sort();
            layer.dedup();
        }
        let index: Vec<HashMap<Simplex, usize>> = graded
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, s)| (s, i))
                    .collect()
            })
            .collect();
        let boundaries = (0..graded.len())
            .map(|slot| {
                let n_rows = if slot == 0 { 0 } else { graded[slot - 1].len() };
                let mut m = Gf2Matrix::zeros(n_rows, graded[slot].len());
                if slot > 0 {
                    let rows: Vec<BitVec> = {
                        let mut rows = vec![BitVec::zeros(graded[slot].len()); n_rows];
                        for (j, cell) in graded[slot].iter().enumerate() {
                            for f in cell.facets() {
                                if let Some(&i) = index[slot - 1].get(&f) {
                                    rows[i].set(j, true);
                                }
                            }
                        }
                        rows
                    };
                    m = Gf2Matrix::from_rows(graded[slot].len(), rows).expect("row lengths");
                }
                m
            })
            .collect();
        Self {
            cells: graded,
            index,
            boundaries,
        }
    }

    /// Quotient complex `C(X) / C(A)` of a pair; no augmentation.
    pub fn relative(pair: &ComplexPair) -> Self {
        let mut cc = Self::from_cells(pair.relative_cells());
        cc.pad_to_augmented_grading();
        cc
    }

    /// Augmented complex of `X`, with the empty simplex in degree -1.
    pub fn reduced(complex: &SimplicialComplex) -> Self {
        let empty = Simplex::empty();
        Self::from_cells(std::iter::once(&empty).chain(complex.iter()))
    }

    fn pad_to_augmented_grading(&mut self) {
        // Slot 0 always exists so that degree indexing is uniform.
        if self.cells.is_empty() {
            self.cells.push(Vec::new());
            self.index.push(HashMap::new());
            self.boundaries.push(Gf2Matrix::zeros(0, 0));
        }
    }

    fn slot(degree: i64) -> Option<usize> {
        usize::try_from(degree + 1).ok()
    }

    /// Highest degree that may carry cells.
    pub fn top_degree(&self) -> i64 {
        self.cells.len() as i64 - 2
    }

    pub fn cells(&self, degree: i64) -> &[Simplex] {
        Self::slot(degree)
            .and_then(|s| self.cells.get(s))
            .map_or(&[], Vec::as_slice)
    }

    pub fn n_cells(&self, degree: i64) -> usize {
        self.cells(degree).len()
    }

    pub fn cell_index(&self, degree: i64, cell: &Simplex) -> Option<usize> {
        Self::slot(degree)
            .and_then(|s| self.index.get(s))
            .and_then(|m| m.get(cell).copied())
    }

    /// The boundary map from degree `degree` to `degree - 1`.
    pub fn boundary(&self, degree: i64) -> Cow<'_, Gf2Matrix> {
        match Self::slot(degree).and_then(|s| self.boundaries.get(s)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(Gf2Matrix::zeros(
                self.n_cells(degree - 1),
                self.n_cells(degree),
            )),
        }
    }

    /// Checks `d_{k} d_{k+1} = 0` in every degree by exact multiplication.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (-1..=self.top_degree()).all(|k| {
            self.boundary(k)
                .mul(&self.boundary(k + 1))
                .map(|m| m.is_zero())
                .unwrap_or(false)
        })
    }

    /// Nonzero homology dimensions, `nullity(d_k) - rank(d_{k+1})`.
    pub fn homology_dims(&self) -> BTreeMap<i64, usize> {
        let ranks: Vec<usize> = (-1..=self.top_degree() + 1)
            .map(|k| self.boundary(k).rank())
            .collect();
        let rank = |k: i64| ranks[(k + 1) as usize];
        (-1..=self.top_degree())
            .filter_map(|k| {
                let dim = self.n_cells(k) - rank(k) - rank(k + 1);
                (dim > 0).then_some((k, dim))
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_degree())
            .map(|k| sign(k) * self.n_cells(k) as i64)
            .sum()
    }

    /// Moves a chain of degree `degree` to `target` by cell identity; cells
    /// with no counterpart are dropped and returned separately.
    pub fn transfer(
        &self,
        degree: i64,
        chain: &BitVec,
        target: &ChainComplex,
    ) -> (BitVec, Vec<Simplex>) {
        let mut out = BitVec::zeros(target.n_cells(degree));
        let mut dropped = Vec::new();
        for i in chain.ones() {
            let cell = &self.cells(degree)[i];
            match target.cell_index(degree, cell) {
                Some(j) => out.flip(j),
                None => dropped.push(cell.clone()),
            }
        }
        (out, dropped)
    }

    /// Chain given by a list of cells of one degree.
    pub fn chain(&self, degree: i64, cells: &[Simplex]) -> Option<BitVec> {
        let mut v = BitVec::zeros(self.n_cells(degree));
        for c in cells {
            v.flip(self.cell_index(degree, c)?);
        }
        Some(v)
    }

    pub fn support(&self, degree: i64, chain: &BitVec) -> Vec<Simplex> {
        chain
            .ones()
            .map(|i| self.cells(degree)[i].clone())
            .collect()
    }
}

pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Which homology a table records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Absolute,
    Reduced,
    Relative,
}

/// Dimensions of homology groups by degree. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BettiTable {
    flavor: Flavor,
    dims: BTreeMap<i64, usize>,
}

impl BettiTable {
    pub fn new(flavor: Flavor, entries: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut dims = BTreeMap::new();
        for (k, d) in entries {
            *dims.entry(k).or_insert(0) += d;
        }
        dims.retain(|_, d| *d > 0);
        Self { flavor, dims }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn get(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn nonzero(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|(&k, &d)| sign(k) * d as i64).sum()
    }

    /// `(degree, dim)` for every degree between the lowest and highest
    /// nonzero degree, zeros included.
    pub fn hull_entries(&self) -> Vec<(i64, usize)> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|k| (k, self.get(k))).collect(),
            _ => Vec::new(),
        }
    }

    /// The same dimensions moved up by `offset` degrees.
    pub fn shifted(&self, offset: i64) -> BettiTable {
        BettiTable::new(
            self.flavor,
            self.dims.iter().map(|(&k, &d)| (k + offset, d)),
        )
    }

    pub fn scaled(&self, factor: usize) -> BettiTable {
        BettiTable::new(
            self.flavor,
            self.dims.iter().map(|(&k, &d)| (k, d * factor)),
        )
    }

    pub fn same_dims(&self, other: &BettiTable) -> bool {
        self.dims == other.dims
    }
}

/// Boundary matrices `d_0, ..., d_top` of the relative chain complex of a pair.
/// `d_0` has no rows.
pub fn chain_complex(pair: &ComplexPair) -> Vec<Gf2Matrix> {
    let cc = ChainComplex::relative(pair);
    (0..=cc.top_degree().max(0))
        .map(|k| cc.boundary(k).into_owned())
        .collect()
}

/// Homology dimensions of a pair over GF(2).
///
/// `Absolute` reads the ambient complex alone. `Relative` with an empty
/// subcomplex is reported as `Absolute`. `Reduced` requires an empty
/// subcomplex; the empty complex then has dimension 1 in degree -1.
pub fn betti(pair: &ComplexPair, flavor: Flavor) -> Result<BettiTable> {
    match flavor {
        Flavor::Absolute => Ok(BettiTable::new(
            Flavor::Absolute,
            ChainComplex::relative(&ComplexPair::absolute(pair.ambient.clone())).homology_dims(),
        )),
        Flavor::Relative if pair.sub.is_empty() => betti(pair, Flavor::Absolute),
        Flavor::Relative => Ok(BettiTable::new(
            Flavor::Relative,
            ChainComplex::relative(pair).homology_dims(),
        )),
        Flavor::Reduced if !pair.sub.is_empty() => Err(TopologyError::ReducedOnPair),
        Flavor::Reduced => Ok(BettiTable::new(
            Flavor::Reduced,
            ChainComplex::reduced(&pair.ambient).homology_dims(),
        )),
    }
}

pub fn absolute_betti(complex: &SimplicialComplex) -> BettiTable {
    betti(&ComplexPair::absolute(complex.clone()), Flavor::Absolute).expect("absolute homology")
}

pub fn reduced_betti(complex: &SimplicialComplex) -> BettiTable {
    betti(&ComplexPair::absolute(complex.clone()), Flavor::Reduced).expect("reduced homology")
}

pub fn relative_betti(pair: &ComplexPair) -> BettiTable {
    betti(pair, Flavor::Relative).expect("relative homology")
}

/// Alternating count of simplices of the ambient complex outside the subcomplex.
pub fn euler_characteristic(pair: &ComplexPair) -> i64 {
    pair.relative_cells().map(|s| sign(s.dim())).sum()
}

/// Cycle representatives whose classes form a basis of homology in each degree.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    degrees: BTreeMap<i64, DegreeBasis>,
}

#[derive(Clone, Debug)]
struct DegreeBasis {
    representatives: Vec<BitVec>,
    // boundaries first, then cycles; `rep_generator[i]` is the generator
    // index of representative `i`
    span: EchelonSpan,
    rep_generator: Vec<usize>,
}

impl HomologyBasis {
    /// Extends a basis of the boundaries to a basis of the cycles, taking
    /// cycle candidates from the null-space basis of the RREF of `d_k`.
    pub fn compute(cc: &ChainComplex) -> Self {
        let mut degrees = BTreeMap::new();
        for k in -1..=cc.top_degree() {
            let n = cc.n_cells(k);
            let boundaries = cc.boundary(k + 1).columns();
            let cycles = cc.boundary(k).kernel_basis();
            let mut span = EchelonSpan::new(n, boundaries.len() + cycles.len());
            for b in &boundaries {
                span.insert(b);
            }
            let mut representatives = Vec::new();
            let mut rep_generator = Vec::new();
            for z in cycles {
                let slot = span.generators();
                if span.insert(&z) {
                    representatives.push(z);
                    rep_generator.push(slot);
                }
            }
            degrees.insert(
                k,
                DegreeBasis {
                    representatives,
                    span,
                    rep_generator,
                },
            );
        }
        Self { degrees }
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.degrees
            .get(&degree)
            .map_or(0, |d| d.representatives.len())
    }

    pub fn representatives(&self, degree: i64) -> &[BitVec] {
        self.degrees
            .get(&degree)
            .map_or(&[], |d| d.representatives.as_slice())
    }

    /// Coordinates of the class of `cycle`; `None` if it is not a cycle.
    pub fn coordinates(&self, degree: i64, cycle: &BitVec) -> Option<BitVec> {
        let Some(d) = self.degrees.get(&degree) else {
            return cycle.is_zero().then(|| BitVec::zeros(0));
        };
        let combo = d.span.express(cycle)?;
        Some(BitVec::from_bools(
            &d.rep_generator
                .iter()
                .map(|&g| combo.get(g))
                .collect::<Vec<_>>(),
        ))
    }

    /// The representative sum `sum_i coords_i * rep_i`.
    pub fn combine(&self, degree: i64, coords: &BitVec, n_cells: usize) -> BitVec {
        let mut out = BitVec::zeros(n_cells);
        for i in coords.ones() {
            out.xor_assign(&self.representatives(degree)[i]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(maximal: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_maximal(maximal.iter().map(|s| s.iter().copied())).unwrap()
    }

    fn table(entries: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        entries.iter().copied().filter(|e| e.1 > 0).collect()
    }

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in [0, 1] {
            for b in [2, 3] {
                for c in [4, 5] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_maximal(facets).unwrap()
    }

    /// Independent rank-based Betti computation with every simplex list
    /// reversed, used as an oracle for `betti`.
    fn reversed_order_betti(x: &SimplicialComplex) -> BTreeMap<i64, usize> {
        let layers: Vec<Vec<Simplex>> = (0..=x.dimension().max(-1))
            .map(|d| {
                let mut v: Vec<Simplex> = x.simplices(d as usize).cloned().collect();
                v.reverse();
                v
            })
            .collect();
        let rank = |k: usize| -> usize {
            if k == 0 || k >= layers.len() {
                return 0;
            }
            let rows: Vec<BitVec> = layers[k - 1]
                .iter()
                .map(|r| {
                    BitVec::from_bools(
                        &layers[k]
                            .iter()
                            .map(|c| r.is_face_of(c))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect();
            Gf2Matrix::from_rows(layers[k].len(), rows).unwrap().rank()
        };
        (0..layers.len())
            .map(|k| (k as i64, layers[k].len() - rank(k) - rank(k + 1)))
            .filter(|e| e.1 > 0)
            .collect()
    }

    #[test]
    fn build_examples() {
        let tri = cx(&[&[0, 1, 2]]);
        assert_eq!(tri.f_vector(), vec![3, 3, 1]);
        let hollow = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(hollow.f_vector(), vec![3, 3]);
        assert_eq!(cx(&[&[0]]).f_vector(), vec![1]);
        assert!(matches!(
            SimplicialComplex::from_maximal([vec![0, 1, 1]]),
            Err(TopologyError::DuplicateVertex(_))
        ));
        assert!(matches!(
            SimplicialComplex::from_maximal([Vec::<u32>::new()]),
            Err(TopologyError::EmptySimplex)
        ));
    }

    #[test]
    fn rebuild_from_maximal_is_idempotent() {
        for x in [octahedron(), cx(&[&[0, 1, 2], &[2, 3], &[5]])] {
            let again =
                SimplicialComplex::from_maximal(x.maximal_simplices().iter().map(|s| s.0.clone()))
                    .unwrap();
            assert_eq!(again, x);
        }
    }

    #[test]
    fn chain_complex_examples() {
        let point = ComplexPair::absolute(cx(&[&[0]]));
        let ds = chain_complex(&point);
        assert_eq!(ds.len(), 1);
        assert_eq!((ds[0].n_rows(), ds[0].n_cols()), (0, 1));

        // only the 2-simplex survives the quotient
        let tri = cx(&[&[0, 1, 2]]);
        let rim = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let pair = ComplexPair::new(tri, rim.clone()).unwrap();
        let cc = ChainComplex::relative(&pair);
        assert_eq!((cc.n_cells(0), cc.n_cells(1), cc.n_cells(2)), (0, 0, 1));
        assert!(cc.boundary(2).is_zero());
        assert!(cc.boundary_squares_to_zero());

        let pair = ComplexPair::new(rim, cx(&[&[0]])).unwrap();
        let cc = ChainComplex::relative(&pair);
        assert_eq!((cc.n_cells(0), cc.n_cells(1)), (2, 3));
        assert!(cc.boundary_squares_to_zero());
    }

    #[test]
    fn betti_examples() {
        let oct = octahedron();
        assert_eq!(reversed_order_betti(&oct), table(&[(0, 1), (2, 1)]));
        assert_eq!(absolute_betti(&oct).nonzero(), &table(&[(0, 1), (2, 1)]));

        // disk = cone over the hollow triangle, relative to its rim
        let disk = cx(&[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3]]);
        let rim = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(absolute_betti(&disk).nonzero(), &table(&[(0, 1)]));
        assert_eq!(absolute_betti(&rim).nonzero(), &table(&[(0, 1), (1, 1)]));
        let rel = relative_betti(&ComplexPair::new(disk, rim).unwrap());
        assert_eq!(rel.nonzero(), &table(&[(2, 1)]));
        assert_eq!(rel.flavor(), Flavor::Relative);

        assert!(reduced_betti(&cx(&[&[0]])).is_zero());
        assert_eq!(
            reduced_betti(&SimplicialComplex::new()).nonzero(),
            &table(&[(-1, 1)])
        );
        assert!(absolute_betti(&SimplicialComplex::new()).is_zero());
    }

    #[test]
    fn reduced_on_a_pair_is_rejected() {
        let pair = ComplexPair::new(cx(&[&[0, 1]]), cx(&[&[0]])).unwrap();
        assert_eq!(
            betti(&pair, Flavor::Reduced),
            Err(TopologyError::ReducedOnPair)
        );
    }

    #[test]
    fn pair_requires_subcomplex() {
        let err = ComplexPair::new(cx(&[&[0, 1]]), cx(&[&[2]]));
        assert!(matches!(err, Err(TopologyError::NotASubcomplex { .. })));
    }

    #[test]
    fn relative_with_empty_sub_is_absolute() {
        let x = cx(&[&[0, 1], &[1, 2], &[0, 2], &[3]]);
        let pair = ComplexPair::absolute(x);
        assert_eq!(
            betti(&pair, Flavor::Relative).unwrap(),
            betti(&pair, Flavor::Absolute).unwrap()
        );
    }

    #[test]
    fn boundary_examples() {
        let tri = cx(&[&[0, 1, 2]]);
        assert_eq!(
            tri.boundary_subcomplex().unwrap(),
            cx(&[&[0, 1], &[1, 2], &[0, 2]])
        );
        assert!(octahedron().boundary_subcomplex().unwrap().is_empty());

        // prism over the hollow triangle: inner 0,1,2, outer 3,4,5
        let annulus = cx(&[
            &[0, 1, 3],
            &[1, 3, 4],
            &[1, 2, 4],
            &[2, 4, 5],
            &[0, 2, 5],
            &[0, 3, 5],
        ]);
        let b = annulus.boundary_subcomplex().unwrap();
        assert_eq!(absolute_betti(&b).get(0), 2);
        assert_eq!(b.f_vector(), vec![6, 6]);

        let book = cx(&[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        assert!(matches!(
            book.boundary_subcomplex(),
            Err(TopologyError::NotAPseudomanifold { .. })
        ));
    }

    #[test]
    fn pseudomanifold_requires_strong_connectivity() {
        let bowtie = cx(&[&[0, 1, 2], &[0, 3, 4]]);
        assert!(bowtie.boundary_subcomplex().is_ok());
        assert!(bowtie.validate_pseudomanifold().is_err());
        let two_disks = cx(&[&[0, 1, 2], &[3, 4, 5]]);
        assert!(two_disks.validate_pseudomanifold().is_ok());
        assert!(cx(&[&[0, 1, 2], &[1, 2]]).is_pure());
        assert!(!cx(&[&[0, 1, 2], &[3, 4]]).is_pure());
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&ComplexPair::absolute(cx(&[&[0]]))), 1);
        assert_eq!(
            euler_characteristic(&ComplexPair::absolute(octahedron())),
            2
        );
        let disk = cx(&[&[0, 1, 3], &[1, 2, 3], &[0, 2, 3]]);
        let rim = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        // 1 vertex, 3 edges, 3 triangles
        assert_eq!(
            euler_characteristic(&ComplexPair::new(disk, rim).unwrap()),
            1
        );
    }

    #[test]
    fn subdivision_preserves_homology_and_makes_subcomplexes_full() {
        let tri = cx(&[&[0, 1, 2]]);
        let rim = tri.boundary_subcomplex().unwrap();
        assert!(!tri.is_full_subcomplex(&rim));
        let sd = tri.barycentric_subdivision();
        assert_eq!(sd.complex.f_vector(), vec![7, 12, 6]);
        let rim_sd = sd.image(&rim);
        assert!(sd.complex.is_full_subcomplex(&rim_sd));
        assert_eq!(sd.complex.boundary_subcomplex().unwrap(), rim_sd);
        let pair = ComplexPair::new(sd.complex.clone(), rim_sd).unwrap();
        assert_eq!(relative_betti(&pair).nonzero(), &table(&[(2, 1)]));
    }

    #[test]
    fn homology_basis_coordinates() {
        let rim = cx(&[&[0, 1], &[1, 2], &[0, 2]]);
        let cc = ChainComplex::relative(&ComplexPair::absolute(rim));
        let basis = HomologyBasis::compute(&cc);
        assert_eq!(basis.dim(1), 1);
        assert_eq!(basis.dim(0), 1);
        let z = &basis.representatives(1)[0];
        assert_eq!(z.count_ones(), 3);
        assert_eq!(basis.coordinates(1, z).unwrap(), BitVec::unit(1, 0));
        // a non-cycle has no class
        assert!(basis.coordinates(1, &BitVec::unit(3, 0)).is_none());
        // both vertices are homologous to the representative in degree 0
        let v = BitVec::unit(3, 2);
        assert_eq!(basis.coordinates(0, &v).unwrap(), BitVec::unit(1, 0));
    }

    #[test]
    fn remove_star_drops_cofaces() {
        let tri = cx(&[&[0, 1, 2]]);
        let cut = tri.remove_star(&Simplex::new([0]).unwrap());
        assert_eq!(cut, cx(&[&[1, 2]]));
    }
}
