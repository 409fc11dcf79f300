//! Discrete Morse theory relative to an exit subcomplex.
//!
//! Cells of the exit subcomplex are never matched and never critical, so the
//! Morse complex computes the homology of the pair directly. Matchings come
//! from greedy coreduction; every matching is re-validated (face relation,
//! disjointness, acyclicity of the modified Hasse digraph) before use.

use std::collections::{HashMap, VecDeque};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::complexes::{BettiTable, ComplexPair, Flavor, Simplex};
use crate::error::{Result, TopologyError};
use crate::gf2::{BitVec, Gf2Matrix};

/// Order in which coreduction visits cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeedOrder {
    /// By dimension, then lexicographically.
    Lexicographic,
    /// A uniformly shuffled order drawn from the given seed.
    Shuffled(u64),
    /// The listed cells first, in order; any others follow lexicographically.
    Explicit(Vec<Simplex>),
}

/// Non-exit cells with their face relations, indexed densely.
#[derive(Clone, Debug)]
struct CellGraph {
    cells: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
}

impl CellGraph {
    fn new(pair: &ComplexPair) -> Self {
        let cells: Vec<Simplex> = pair.relative_cells().cloned().collect();
        let index: HashMap<Simplex, usize> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let mut facets = vec![Vec::new(); cells.len()];
        let mut cofacets = vec![Vec::new(); cells.len()];
        for (i, c) in cells.iter().enumerate() {
            for f in c.facets() {
                if let Some(&j) = index.get(&f) {
                    facets[i].push(j);
                    cofacets[j].push(i);
                }
            }
        }
        Self {
            cells,
            index,
            facets,
            cofacets,
        }
    }
}

/// A validated acyclic matching on the non-exit cells of a pair.
#[derive(Clone, Debug)]
pub struct AcyclicMatching {
    pair: ComplexPair,
    graph: CellGraph,
    /// `partner[i]` is the cell matched with cell `i`, if any.
    partner: Vec<Option<usize>>,
}

impl AcyclicMatching {
    /// Validates `pairs` of (face, coface) against the pair.
    pub fn new(pair: ComplexPair, pairs: &[(Simplex, Simplex)]) -> Result<Self> {
        let graph = CellGraph::new(&pair);
        let mut partner = vec![None; graph.cells.len()];
        for (sigma, tau) in pairs {
            let lookup = |s: &Simplex| {
                graph.index.get(s).copied().ok_or_else(|| {
                    TopologyError::InvalidMatching(format!(
                        "{s} is not a cell of the pair outside the exit subcomplex"
                    ))
                })
            };
            let (i, j) = (lookup(sigma)?, lookup(tau)?);
            if !graph.facets[j].contains(&i) {
                return Err(TopologyError::InvalidMatching(format!(
                    "{sigma} is not a facet of {tau}"
                )));
            }
            for k in [i, j] {
                if partner[k].is_some() {
                    return Err(TopologyError::InvalidMatching(format!(
                        "{} is matched twice",
                        graph.cells[k]
                    )));
                }
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        let m = Self {
            pair,
            graph,
            partner,
        };
        m.check_acyclic()?;
        Ok(m)
    }

    pub fn empty(pair: ComplexPair) -> Self {
        let graph = CellGraph::new(&pair);
        let partner = vec![None; graph.cells.len()];
        Self {
            pair,
            graph,
            partner,
        }
    }

    pub fn pair(&self) -> &ComplexPair {
        &self.pair
    }

    /// Matched (face, coface) pairs, ordered by the coface.
    pub fn matched(&self) -> Vec<(Simplex, Simplex)> {
        let mut out: Vec<(Simplex, Simplex)> = self
            .partner
            .iter()
            .enumerate()
            .filter_map(|(i, p)| {
                let j = (*p)?;
                (self.graph.cells[j].dim() > self.graph.cells[i].dim())
                    .then(|| (self.graph.cells[i].clone(), self.graph.cells[j].clone()))
            })
            .collect();
        out.sort_by(|a, b| (a.1.dim(), &a.1).cmp(&(b.1.dim(), &b.1)));
        out
    }

    /// Critical cells grouped by degree, from 0 to the top dimension.
    pub fn critical(&self) -> Vec<Vec<Simplex>> {
        let top = self.pair.ambient().dimension().max(-1);
        let mut out = vec![Vec::new(); (top + 1) as usize];
        for (i, c) in self.graph.cells.iter().enumerate() {
            if self.partner[i].is_none() {
                out[c.dim() as usize].push(c.clone());
            }
        }
        out
    }

    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical().iter().map(Vec::len).collect()
    }

    /// Topological sort of the Hasse digraph with matched edges reversed.
    fn check_acyclic(&self) -> Result<()> {
        let n = self.graph.cells.len();
        let mut indegree = vec![0usize; n];
        let out_edges = |u: usize| -> Vec<usize> {
            // downward edges to unmatched facets, plus the upward matched edge
            let mut v: Vec<usize> = self.graph.facets[u]
                .iter()
                .copied()
                .filter(|&f| self.partner[u] != Some(f))
                .collect();
            if let Some(p) = self.partner[u] {
                if self.graph.cofacets[u].contains(&p) {
                    v.push(p);
                }
            }
            v
        };
        let edges: Vec<Vec<usize>> = (0..n).map(out_edges).collect();
        for targets in &edges {
            for &t in targets {
                indegree[t] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for &t in &edges[u] {
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    queue.push_back(t);
                }
            }
        }
        if seen == n {
            Ok(())
        } else {
            Err(TopologyError::InvalidMatching(
                "the modified Hasse digraph has a cycle".into(),
            ))
        }
    }
}

fn visiting_order(graph: &CellGraph, seed: &SeedOrder) -> Vec<usize> {
    // cells are stored by dimension, then lexicographically
    let mut order: Vec<usize> = (0..graph.cells.len()).collect();
    match seed {
        SeedOrder::Lexicographic => {}
        SeedOrder::Shuffled(s) => order.shuffle(&mut StdRng::seed_from_u64(*s)),
        SeedOrder::Explicit(listed) => {
            let mut placed = vec![false; graph.cells.len()];
            let mut front = Vec::new();
            for c in listed {
                if let Some(&i) = graph.index.get(c) {
                    if !placed[i] {
                        placed[i] = true;
                        front.push(i);
                    }
                }
            }
            front.extend(order.into_iter().filter(|&i| !placed[i]));
            order = front;
        }
    }
    order
}

/// Greedy coreduction: a cell whose only remaining facet is `f` is matched
/// with `f`; when no such cell is left, the first remaining cell (in seed
/// order) with no remaining facets becomes critical.
pub fn build_matching(pair: &ComplexPair, seed: &SeedOrder) -> Result<AcyclicMatching> {
    let graph = CellGraph::new(pair);
    let n = graph.cells.len();
    let order = visiting_order(&graph, seed);
    let mut remaining: Vec<usize> = graph.facets.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut partner = vec![None; n];
    let mut queue: VecDeque<usize> = order.iter().copied().collect();
    let mut cursor = 0;

    let remove = |c: usize,
                  removed: &mut Vec<bool>,
                  remaining: &mut Vec<usize>,
                  queue: &mut VecDeque<usize>| {
        removed[c] = true;
        for &t in &graph.cofacets[c] {
            remaining[t] -= 1;
            if !removed[t] {
                queue.push_back(t);
            }
        }
    };

    let mut left = n;
    while left > 0 {
        if let Some(c) = queue.pop_front() {
            if removed[c] || remaining[c] != 1 {
                continue;
            }
            let f = graph.facets[c]
                .iter()
                .copied()
                .find(|&f| !removed[f])
                .expect("one remaining facet");
            partner[c] = Some(f);
            partner[f] = Some(c);
            remove(f, &mut removed, &mut remaining, &mut queue);
            remove(c, &mut removed, &mut remaining, &mut queue);
            left -= 2;
        } else {
            while removed[order[cursor]] || remaining[order[cursor]] != 0 {
                cursor += 1;
                if cursor == n {
                    // a lowest-dimensional remaining cell always has no
                    // remaining facets, so rescan from the start
                    cursor = 0;
                }
            }
            remove(order[cursor], &mut removed, &mut remaining, &mut queue);
            left -= 1;
        }
    }

    let m = AcyclicMatching {
        pair: pair.clone(),
        graph,
        partner,
    };
    m.check_acyclic()?;
    Ok(m)
}

/// The Morse complex: critical cells and gradient-path boundary matrices.
#[derive(Clone, Debug)]
pub struct MorseComplexData {
    pub critical: Vec<Vec<Simplex>>,
    /// `boundaries[k]` maps degree `k` to degree `k - 1`; `boundaries[0]`
    /// has no rows.
    pub boundaries: Vec<Gf2Matrix>,
    flavor: Flavor,
}

impl MorseComplexData {
    pub fn critical_counts(&self) -> Vec<usize> {
        self.critical.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.critical
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    pub fn betti(&self) -> BettiTable {
        let ranks: Vec<usize> = self.boundaries.iter().map(Gf2Matrix::rank).collect();
        let entries = self.critical.iter().enumerate().map(|(k, cells)| {
            let out = ranks[k];
            let incoming = ranks.get(k + 1).copied().unwrap_or(0);
            (k as i64, cells.len() - out - incoming)
        });
        BettiTable::new(self.flavor, entries)
    }
}

/// Boundary of a critical cell, expressed in critical cells one degree down,
/// by following gradient paths from each facet.
pub fn morse_complex(m: &AcyclicMatching) -> Result<MorseComplexData> {
    let g = &m.graph;
    let critical = m.critical();
    let mut critical_index = vec![None; g.cells.len()];
    for (i, c) in g.cells.iter().enumerate() {
        if m.partner[i].is_none() {
            let k = c.dim() as usize;
            critical_index[i] = critical[k].iter().position(|x| x == c);
        }
    }

    #[derive(Clone)]
    enum Memo {
        Unvisited,
        InProgress,
        Done(BitVec),
    }
    let mut memo = vec![Memo::Unvisited; g.cells.len()];

    // flow(c) for a cell c of degree k: its image in critical k-chains
    fn flow(
        c: usize,
        m: &AcyclicMatching,
        critical: &[Vec<Simplex>],
        critical_index: &[Option<usize>],
        memo: &mut Vec<Memo>,
    ) -> Result<BitVec> {
        match &memo[c] {
            Memo::Done(v) => return Ok(v.clone()),
            Memo::InProgress => {
                return Err(TopologyError::InvalidMatching(
                    "gradient path revisits a cell".into(),
                ))
            }
            Memo::Unvisited => {}
        }
        let g = &m.graph;
        let k = g.cells[c].dim() as usize;
        let mut out = BitVec::zeros(critical[k].len());
        match m.partner[c] {
            None => out.flip(critical_index[c].expect("critical cell is indexed")),
            Some(p) if g.cells[p].dim() < g.cells[c].dim() => {}
            Some(up) => {
                memo[c] = Memo::InProgress;
                for &f in &g.facets[up] {
                    if f != c {
                        out.xor_assign(&flow(f, m, critical, critical_index, memo)?);
                    }
                }
            }
        }
        memo[c] = Memo::Done(out.clone());
        Ok(out)
    }

    let mut boundaries = Vec::with_capacity(critical.len());
    for k in 0..critical.len() {
        let rows = if k == 0 { 0 } else { critical[k - 1].len() };
        let mut columns = Vec::with_capacity(critical[k].len());
        for cell in &critical[k] {
            let mut col = BitVec::zeros(rows);
            if k > 0 {
                let i = g.index[cell];
                for &f in &g.facets[i] {
                    col.xor_assign(&flow(f, m, &critical, &critical_index, &mut memo)?);
                }
            }
            columns.push(col);
        }
        boundaries.push(Gf2Matrix::from_columns(rows, &columns)?);
    }

    for k in 1..boundaries.len() {
        if !boundaries[k - 1].mul(&boundaries[k])?.is_zero() {
            return Err(TopologyError::Internal(format!(
                "Morse boundary does not square to zero in degree {k}"
            )));
        }
    }
    let flavor = if m.pair.sub().is_empty() {
        Flavor::Absolute
    } else {
        Flavor::Relative
    };
    Ok(MorseComplexData {
        critical,
        boundaries,
        flavor,
    })
}

pub fn morse_betti(m: &AcyclicMatching) -> Result<BettiTable> {
    Ok(morse_complex(m)?.betti())
}
