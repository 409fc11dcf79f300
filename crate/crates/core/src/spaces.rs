//! Example spaces and the doubling constructions.
//!
//! A [`BoundarySplit`] models a domain `W` whose boundary is covered by two
//! closed regions `P` and `N` meeting along an interface. The truncated
//! double glues two copies of `W` along that interface only; the full double
//! glues them along the entire boundary and yields a closed pseudomanifold.

use std::collections::BTreeSet;

use crate::complexes::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Result, TopologyError};

/// A domain together with a cover of its boundary by two closed regions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundarySplit {
    complex: SimplicialComplex,
    positive: SimplicialComplex,
    negative: SimplicialComplex,
    interface: SimplicialComplex,
}

impl BoundarySplit {
    /// Validates that both regions lie in the boundary of `complex` and
    /// together cover it.
    pub fn new(
        complex: SimplicialComplex,
        positive: SimplicialComplex,
        negative: SimplicialComplex,
    ) -> Result<Self> {
        let boundary = complex.boundary_subcomplex()?;
        for (region, name) in [
            (&positive, "positive region"),
            (&negative, "negative region"),
        ] {
            if let Some(s) = region.iter().find(|s| !boundary.contains(s)) {
                return Err(TopologyError::RegionNotInBoundary {
                    region: name,
                    simplex: s.clone(),
                });
            }
        }
        if let Some(s) = boundary
            .iter()
            .find(|s| !positive.contains(s) && !negative.contains(s))
        {
            return Err(TopologyError::RegionsDoNotCover { simplex: s.clone() });
        }
        let interface = positive.intersection(&negative);
        Ok(Self {
            complex,
            positive,
            negative,
            interface,
        })
    }

    /// The negative region defaults to the closure of the boundary facets
    /// outside `positive`.
    pub fn from_positive(complex: SimplicialComplex, positive: SimplicialComplex) -> Result<Self> {
        let negative = complement_closure(&complex, &positive)?;
        Self::new(complex, positive, negative)
    }

    pub fn from_negative(complex: SimplicialComplex, negative: SimplicialComplex) -> Result<Self> {
        let positive = complement_closure(&complex, &negative)?;
        Self::new(complex, positive, negative)
    }

    /// Empty positive region. When the boundary is not defined (the complex
    /// branches in codimension one) both regions are empty and the complex
    /// is treated as a homotopy model without boundary data.
    pub fn with_empty_positive(complex: SimplicialComplex) -> Self {
        match Self::from_positive(complex.clone(), SimplicialComplex::new()) {
            Ok(split) => split,
            Err(_) => Self {
                complex,
                positive: SimplicialComplex::new(),
                negative: SimplicialComplex::new(),
                interface: SimplicialComplex::new(),
            },
        }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn positive(&self) -> &SimplicialComplex {
        &self.positive
    }

    pub fn negative(&self) -> &SimplicialComplex {
        &self.negative
    }

    /// `positive ∩ negative`.
    pub fn interface(&self) -> &SimplicialComplex {
        &self.interface
    }

    /// The same split with the roles of the two regions exchanged.
    pub fn swapped(&self) -> BoundarySplit {
        Self {
            complex: self.complex.clone(),
            positive: self.negative.clone(),
            negative: self.positive.clone(),
            interface: self.interface.clone(),
        }
    }

    /// Applies a vertex renaming to every part of the split.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<BoundarySplit> {
        Ok(Self {
            complex: self.complex.relabel(&map)?,
            positive: self.positive.relabel(&map)?,
            negative: self.negative.relabel(&map)?,
            interface: self.interface.relabel(&map)?,
        })
    }

    /// Barycentric subdivision of the domain with both regions carried along.
    pub fn subdivided(&self) -> BoundarySplit {
        let sd = self.complex.barycentric_subdivision();
        Self {
            positive: sd.image(&self.positive),
            negative: sd.image(&self.negative),
            interface: sd.image(&self.interface),
            complex: sd.complex,
        }
    }
}

fn complement_closure(
    complex: &SimplicialComplex,
    region: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    let boundary = complex.boundary_subcomplex()?;
    let top = boundary.dimension();
    if top < 0 {
        return Ok(SimplicialComplex::new());
    }
    Ok(SimplicialComplex::from_simplices(
        boundary
            .simplices(top as usize)
            .filter(|s| !region.contains(s)),
    ))
}

/// Two copies `A` and `B` of a split domain glued along the interface.
#[derive(Clone, Debug)]
pub struct TruncatedDouble {
    pub complex: SimplicialComplex,
    /// Union of the two copies of the positive region.
    pub minus: SimplicialComplex,
    /// Union of the two copies of the negative region.
    pub plus: SimplicialComplex,
    pub copy_a: SimplicialComplex,
    pub copy_b: SimplicialComplex,
    pub region_a: SimplicialComplex,
    pub region_b: SimplicialComplex,
    /// Image of the interface, shared by both copies.
    pub interface: SimplicialComplex,
    /// The split the copies were taken from; a barycentric subdivision of
    /// the input when the interface was not a full subcomplex.
    pub source: BoundarySplit,
}

/// Copy `B` keeps the labels of `shared` and moves every other vertex past
/// the largest label in use.
fn second_copy_map(
    complex: &SimplicialComplex,
    shared: &SimplicialComplex,
) -> impl Fn(Vertex) -> Vertex {
    let shared: BTreeSet<Vertex> = shared.vertices().into_iter().collect();
    let offset = complex.max_vertex().map_or(0, |m| m + 1);
    move |v| if shared.contains(&v) { v } else { v + offset }
}

/// Glues two copies of the domain along the interface of the split.
///
/// Gluing by vertex identification is only faithful when no simplex outside
/// the interface has all of its vertices on it; otherwise the split is
/// barycentrically subdivided first.
pub fn truncated_double(split: &BoundarySplit) -> Result<TruncatedDouble> {
    let source = if split.complex.is_full_subcomplex(&split.interface) {
        split.clone()
    } else {
        split.subdivided()
    };
    let to_b = second_copy_map(&source.complex, &source.interface);
    let copy_a = source.complex.clone();
    let copy_b = source.complex.relabel(&to_b)?;
    let region_a = source.positive.clone();
    let region_b = source.positive.relabel(&to_b)?;
    let plus = source.negative.union(&source.negative.relabel(&to_b)?);
    Ok(TruncatedDouble {
        complex: copy_a.union(&copy_b),
        minus: region_a.union(&region_b),
        plus,
        interface: source.interface.clone(),
        copy_a,
        copy_b,
        region_a,
        region_b,
        source,
    })
}

/// Two copies of `complex` glued along their whole boundary.
pub fn full_double(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    let boundary = complex.boundary_subcomplex()?;
    if boundary.is_empty() {
        return Err(TopologyError::EmptyBoundary);
    }
    let (complex, boundary) = if complex.is_full_subcomplex(&boundary) {
        (complex.clone(), boundary)
    } else {
        let sd = complex.barycentric_subdivision();
        let b = sd.image(&boundary);
        (sd.complex, b)
    };
    let to_b = second_copy_map(&complex, &boundary);
    Ok(complex.union(&complex.relabel(to_b)?))
}

/// Boundary of the (d+1)-dimensional cross-polytope. Vertices `2i` and
/// `2i + 1` are antipodal; facets pick one vertex from each pair.
pub fn cross_polytope_sphere(d: usize) -> SimplicialComplex {
    let pairs = d + 1;
    let facets = (0u64..(1 << pairs))
        .map(|choice| (0..pairs).map(move |i| (2 * i) as Vertex + ((choice >> i) & 1) as Vertex));
    SimplicialComplex::from_maximal(facets).expect("antipodal-free facets")
}

/// Joins one new vertex to every simplex. The cone over the empty complex is
/// a point.
pub fn cone(complex: &SimplicialComplex) -> SimplicialComplex {
    let apex = complex.max_vertex().map_or(0, |m| m + 1);
    let maximal = complex.maximal_simplices();
    if maximal.is_empty() {
        return SimplicialComplex::from_maximal([[apex]]).expect("point");
    }
    let tops: Vec<Simplex> = maximal
        .iter()
        .map(|s| s.with_vertex(apex).expect("apex is fresh"))
        .collect();
    SimplicialComplex::from_simplices(&tops)
}

/// `count` boundaries of (n+1)-simplices sharing vertex 0.
pub fn wedge_of_spheres(n: usize, count: usize) -> Result<SimplicialComplex> {
    if n == 0 || count == 0 {
        return Err(TopologyError::ParameterOutOfRange {
            name: "wedge_of_spheres".into(),
            reason: format!("need n >= 1 and count >= 1, got n = {n}, count = {count}"),
        });
    }
    let mut facets = Vec::new();
    for copy in 0..count {
        let base = 1 + copy * (n + 1);
        let simplex: Vec<Vertex> = std::iter::once(0)
            .chain((base..base + n + 1).map(|v| v as Vertex))
            .collect();
        for skip in 0..simplex.len() {
            facets.push(
                simplex
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect::<Vec<_>>(),
            );
        }
    }
    SimplicialComplex::from_maximal(facets)
}

/// Triangulated `size x size` grid with opposite sides identified; with
/// `twist` one identification reverses orientation (Klein bottle).
fn grid_surface(size: u32, twist: bool) -> SimplicialComplex {
    let id = |i: u32, j: u32| {
        let (i, j) = if i == size {
            (
                0,
                if twist {
                    (size - j % size) % size
                } else {
                    j % size
                },
            )
        } else {
            (i, j % size)
        };
        i * size + j
    };
    let mut facets = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            facets.push([a, b, d]);
            facets.push([a, c, d]);
        }
    }
    SimplicialComplex::from_maximal(facets).expect("grid triangulation")
}

pub fn torus() -> SimplicialComplex {
    grid_surface(3, false)
}

pub fn klein_bottle() -> SimplicialComplex {
    grid_surface(3, true)
}

/// Six-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ])
    .expect("RP2")
}

pub fn circle() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[0, 1], [1, 2], [0, 2]]).expect("circle")
}

/// Cone over a square; the rim is the 4-cycle 0-1-2-3.
pub fn disk() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 3, 4]]).expect("disk")
}

/// Prism over the hollow triangle: inner circle 0,1,2 and outer circle 3,4,5.
pub fn annulus() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        [0, 1, 3],
        [1, 3, 4],
        [1, 2, 4],
        [2, 4, 5],
        [0, 2, 5],
        [0, 3, 5],
    ])
    .expect("annulus")
}

/// Five-triangle Möbius band; its boundary is the 5-cycle 0-2-4-1-3.
pub fn mobius_band() -> SimplicialComplex {
    SimplicialComplex::from_maximal([[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]])
        .expect("Möbius band")
}

pub fn ball(d: usize) -> SimplicialComplex {
    if d == 0 {
        return cone(&SimplicialComplex::new());
    }
    cone(&cross_polytope_sphere(d - 1))
}

/// Ball bounded by the standard sphere, with empty positive region.
pub fn reeb_ball(n: usize) -> Result<BoundarySplit> {
    let w = ball(2 * n);
    let boundary = w.boundary_subcomplex()?;
    BoundarySplit::new(w, SimplicialComplex::new(), boundary)
}

/// Wedge of `2^n` copies of the n-sphere, taken with empty positive region.
pub fn brieskorn(n: usize) -> Result<BoundarySplit> {
    Ok(BoundarySplit::with_empty_positive(wedge_of_spheres(
        n,
        1 << n,
    )?))
}

fn cx<const K: usize>(maximal: &[[Vertex; K]]) -> SimplicialComplex {
    SimplicialComplex::from_maximal(maximal.iter().map(|s| s.iter().copied())).expect("region")
}

pub fn disk_half_split() -> BoundarySplit {
    BoundarySplit::new(disk(), cx(&[[0, 1], [1, 2]]), cx(&[[2, 3], [0, 3]])).expect("disk split")
}

pub fn annulus_split() -> BoundarySplit {
    BoundarySplit::new(
        annulus(),
        cx(&[[3, 4], [4, 5], [3, 5]]),
        cx(&[[0, 1], [1, 2], [0, 2]]),
    )
    .expect("annulus split")
}

/// Boundary circle 0-2-4-1-3 split into the arc 0-2-4 and the arc 4-1-3-0.
pub fn mobius_half_split() -> BoundarySplit {
    BoundarySplit::new(
        mobius_band(),
        cx(&[[0, 2], [2, 4]]),
        cx(&[[1, 4], [1, 3], [0, 3]]),
    )
    .expect("Möbius split")
}

/// A catalog entry: either a bare complex or a split domain.
#[derive(Clone, Debug)]
pub enum CatalogEntry {
    Complex(SimplicialComplex),
    Split(BoundarySplit),
}

impl CatalogEntry {
    pub fn complex(&self) -> &SimplicialComplex {
        match self {
            CatalogEntry::Complex(c) => c,
            CatalogEntry::Split(s) => s.complex(),
        }
    }

    /// Splits are returned as-is; a bare complex gets an empty positive region.
    pub fn into_split(self) -> BoundarySplit {
        match self {
            CatalogEntry::Complex(c) => BoundarySplit::with_empty_positive(c),
            CatalogEntry::Split(s) => s,
        }
    }
}

const CATALOG_HELP: &str = "point, circle, sphere_<d> (0..=6), ball_<d> (0..=6), \
wedge_<n>_<c> (n 1..=4, c 1..=64), torus, klein_bottle, projective_plane, \
reeb_ball_<n> (1..=3), brieskorn_<n> (1..=5), disk_half_split, annulus_split, mobius_half_split";

/// Concrete names covering every catalog family, used by the test suites
/// and the CLI's catalog-wide checks.
pub const CATALOG_SAMPLE: &[&str] = &[
    "point",
    "circle",
    "sphere_0",
    "sphere_1",
    "sphere_2",
    "sphere_3",
    "ball_1",
    "ball_2",
    "ball_3",
    "wedge_1_2",
    "wedge_2_4",
    "torus",
    "klein_bottle",
    "projective_plane",
    "reeb_ball_1",
    "reeb_ball_2",
    "brieskorn_2",
    "brieskorn_3",
    "disk_half_split",
    "annulus_split",
    "mobius_half_split",
];

fn parse_params(rest: &str, count: usize) -> Option<Vec<usize>> {
    let parts: Vec<usize> = rest
        .split('_')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .ok()?;
    (parts.len() == count).then_some(parts)
}

fn in_range(name: &str, value: usize, lo: usize, hi: usize) -> Result<usize> {
    if (lo..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(TopologyError::ParameterOutOfRange {
            name: name.into(),
            reason: format!("{value} is outside {lo}..={hi}"),
        })
    }
}

/// Looks up a catalog entry by name.
pub fn builtin_example(name: &str) -> Result<CatalogEntry> {
    use CatalogEntry::{Complex, Split};
    let unknown = || TopologyError::UnknownExample {
        name: name.into(),
        catalog: CATALOG_HELP.into(),
    };
    let entry = match name {
        "point" => Complex(ball(0)),
        "circle" => Complex(circle()),
        "torus" => Complex(torus()),
        "klein_bottle" => Complex(klein_bottle()),
        "projective_plane" => Complex(projective_plane()),
        "disk_half_split" => Split(disk_half_split()),
        "annulus_split" => Split(annulus_split()),
        "mobius_half_split" => Split(mobius_half_split()),
        _ => {
            let (family, rest) = ["reeb_ball_", "brieskorn_", "sphere_", "ball_", "wedge_"]
                .iter()
                .find_map(|f| name.strip_prefix(f).map(|r| (*f, r)))
                .ok_or_else(unknown)?;
            let arity = if family == "wedge_" { 2 } else { 1 };
            let p = parse_params(rest, arity).ok_or_else(unknown)?;
            match family {
                "reeb_ball_" => Split(reeb_ball(in_range(name, p[0], 1, 3)?)?),
                "brieskorn_" => Split(brieskorn(in_range(name, p[0], 1, 5)?)?),
                "sphere_" => Complex(cross_polytope_sphere(in_range(name, p[0], 0, 6)?)),
                "ball_" => Complex(ball(in_range(name, p[0], 0, 6)?)),
                _ => Complex(wedge_of_spheres(
                    in_range(name, p[0], 1, 4)?,
                    in_range(name, p[1], 1, 64)?,
                )?),
            }
        }
    };
    Ok(entry)
}
