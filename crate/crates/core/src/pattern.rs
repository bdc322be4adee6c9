//! Target graphs searched for in a single color class.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A small simple graph given by adjacency masks, at most 16 vertices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    adjacency: Vec<u16>,
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl SmallGraph {
    pub const MAX_VERTICES: usize = 16;

    pub fn empty(n: usize) -> Self {
        assert!(
            n <= Self::MAX_VERTICES,
            "small graphs hold at most 16 vertices"
        );
        Self {
            adjacency: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n() && v < self.n());
        self.adjacency[u] |= 1 << v;
        self.adjacency[v] |= 1 << u;
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u] & (1 << v) != 0
    }

    pub fn neighbor_mask(&self, v: usize) -> u16 {
        self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones() as usize
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                (u + 1..self.n())
                    .filter(move |&v| self.adjacent(u, v))
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn path(m: usize) -> Self {
        let edges: Vec<_> = (1..m).map(|i| (i - 1, i)).collect();
        Self::from_edges(m, &edges)
    }

    pub fn cycle(m: usize) -> Self {
        let mut g = Self::path(m);
        if m >= 3 {
            g.add_edge(m - 1, 0);
        }
        g
    }

    pub fn complete(m: usize) -> Self {
        let edges: Vec<_> = (0..m)
            .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
            .collect();
        Self::from_edges(m, &edges)
    }

    /// `K_1 + inner`: vertex 0 is the center, inner vertex `i` becomes `i + 1`.
    pub fn cone(inner: &SmallGraph) -> Self {
        let mut g = Self::empty(inner.n() + 1);
        for v in 1..=inner.n() {
            g.add_edge(0, v);
        }
        for (u, v) in inner.edges() {
            g.add_edge(u + 1, v + 1);
        }
        g
    }

    pub fn matching(pairs: usize) -> Self {
        let edges: Vec<_> = (0..pairs).map(|i| (2 * i, 2 * i + 1)).collect();
        Self::from_edges(2 * pairs, &edges)
    }

    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    /// Star with center 0, leaves `1..=leaves`, and vertex `leaves + 1`
    /// hanging off leaf 1.
    pub fn subdivided_star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 2);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g.add_edge(1, leaves + 1);
        g
    }
}

/// A monochromatic target (or the rainbow triangle) with its size parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pattern {
    RainbowTriangle,
    Triangle,
    /// `K_1 + nK_2`.
    Fan(usize),
    /// `K_1 + P_m`.
    Kipas(usize),
    /// `K_1 + C_m`.
    Wheel(usize),
    /// `K_{1,n}`.
    Star(usize),
    /// `K^+_{1,n}`.
    SubdividedStar(usize),
    /// `P_m` on `m` vertices.
    Path(usize),
    Custom(SmallGraph),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("unknown pattern {0:?}")]
    Unknown(String),
    #[error("pattern {name} needs a size parameter of at least {min}, got {got}")]
    TooSmall {
        name: &'static str,
        min: usize,
        got: usize,
    },
    #[error("pattern {0} has more than 16 vertices")]
    TooLarge(String),
}

impl Pattern {
    pub fn min_size(&self) -> usize {
        match self {
            Pattern::Fan(_) => 1,
            Pattern::Kipas(_) | Pattern::Path(_) => 2,
            Pattern::Wheel(_) => 3,
            Pattern::Star(_) | Pattern::SubdividedStar(_) => 2,
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<(), PatternError> {
        let (name, size) = match *self {
            Pattern::Fan(n) => ("fan", n),
            Pattern::Kipas(m) => ("kipas", m),
            Pattern::Wheel(m) => ("wheel", m),
            Pattern::Star(n) => ("star", n),
            Pattern::SubdividedStar(n) => ("star-plus", n),
            Pattern::Path(m) => ("path", m),
            _ => return Ok(()),
        };
        if size < self.min_size() {
            return Err(PatternError::TooSmall {
                name,
                min: self.min_size(),
                got: size,
            });
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            Pattern::RainbowTriangle | Pattern::Triangle => 3,
            Pattern::Fan(n) => 2 * n + 1,
            Pattern::Kipas(m) | Pattern::Wheel(m) => m + 1,
            Pattern::Star(n) => n + 1,
            Pattern::SubdividedStar(n) => n + 2,
            Pattern::Path(m) => m,
            Pattern::Custom(ref g) => g.n(),
        }
    }

    /// The pattern as a graph whose vertex order matches the witness roles
    /// reported by the detectors. `None` for the rainbow triangle.
    pub fn graph(&self) -> Option<SmallGraph> {
        if self.vertex_count() > SmallGraph::MAX_VERTICES {
            return None;
        }
        Some(match *self {
            Pattern::RainbowTriangle => return None,
            Pattern::Triangle => SmallGraph::complete(3),
            Pattern::Fan(n) => SmallGraph::cone(&SmallGraph::matching(n)),
            Pattern::Kipas(m) => SmallGraph::cone(&SmallGraph::path(m)),
            Pattern::Wheel(m) => SmallGraph::cone(&SmallGraph::cycle(m)),
            Pattern::Star(n) => SmallGraph::star(n),
            Pattern::SubdividedStar(n) => SmallGraph::subdivided_star(n),
            Pattern::Path(m) => SmallGraph::path(m),
            Pattern::Custom(ref g) => g.clone(),
        })
    }

    /// Pairs of witness positions that must carry the searched color.
    pub fn required_pairs(&self) -> Vec<(usize, usize)> {
        match *self {
            Pattern::RainbowTriangle => vec![],
            Pattern::Fan(n) => {
                let mut out: Vec<_> = (1..=2 * n).map(|v| (0, v)).collect();
                out.extend((0..n).map(|i| (2 * i + 1, 2 * i + 2)));
                out
            }
            Pattern::Kipas(m) => (1..=m)
                .map(|v| (0, v))
                .chain((2..=m).map(|v| (v - 1, v)))
                .collect(),
            Pattern::Wheel(m) => (1..=m)
                .map(|v| (0, v))
                .chain((2..=m).map(|v| (v - 1, v)))
                .chain(std::iter::once((m, 1)))
                .collect(),
            Pattern::Star(n) => (1..=n).map(|v| (0, v)).collect(),
            Pattern::SubdividedStar(n) => (1..=n)
                .map(|v| (0, v))
                .chain(std::iter::once((1, n + 1)))
                .collect(),
            Pattern::Path(m) => (1..m).map(|v| (v - 1, v)).collect(),
            Pattern::Triangle => vec![(0, 1), (1, 2), (0, 2)],
            Pattern::Custom(ref g) => g.edges(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::RainbowTriangle => write!(f, "rainbow"),
            Pattern::Triangle => write!(f, "triangle"),
            Pattern::Fan(n) => write!(f, "fan:{n}"),
            Pattern::Kipas(m) => write!(f, "kipas:{m}"),
            Pattern::Wheel(m) => write!(f, "wheel:{m}"),
            Pattern::Star(n) => write!(f, "star:{n}"),
            Pattern::SubdividedStar(n) => write!(f, "star-plus:{n}"),
            Pattern::Path(m) => write!(f, "path:{m}"),
            Pattern::Custom(g) => {
                write!(f, "graph:{}", g.n())?;
                for (u, v) in g.edges() {
                    write!(f, ":{u}-{v}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    /// Accepts `fan:3`, `kipas:6`, `wheel:6`, `star:12`, `star-plus:12`,
    /// `path:4`, `triangle`, `rainbow`, the short forms `P4`, `K3`, `K+1,4`
    /// and `graph:n:u-v:...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PatternError::Unknown(s.to_string());
        let s = s.trim();
        let pattern = match s {
            "rainbow" => Pattern::RainbowTriangle,
            "triangle" | "K3" => Pattern::Triangle,
            _ => {
                if let Some(rest) = s.strip_prefix("graph:") {
                    let mut parts = rest.split(':');
                    let n: usize = parts
                        .next()
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(unknown)?;
                    if n > SmallGraph::MAX_VERTICES {
                        return Err(PatternError::TooLarge(s.to_string()));
                    }
                    let mut g = SmallGraph::empty(n);
                    for e in parts {
                        let (u, v) = e.split_once('-').ok_or_else(unknown)?;
                        let u: usize = u.parse().map_err(|_| unknown())?;
                        let v: usize = v.parse().map_err(|_| unknown())?;
                        if u == v || u >= n || v >= n {
                            return Err(unknown());
                        }
                        g.add_edge(u, v);
                    }
                    return Ok(Pattern::Custom(g));
                }
                if let Some(n) = s.strip_prefix("K+1,") {
                    Pattern::SubdividedStar(n.parse().map_err(|_| unknown())?)
                } else if let Some(n) = s.strip_prefix("K1,") {
                    Pattern::Star(n.parse().map_err(|_| unknown())?)
                } else if let Some(m) = s
                    .strip_prefix('P')
                    .filter(|m| m.chars().all(|c| c.is_ascii_digit()))
                {
                    Pattern::Path(m.parse().map_err(|_| unknown())?)
                } else {
                    let (name, size) = s.split_once(':').ok_or_else(unknown)?;
                    let size: usize = size.parse().map_err(|_| unknown())?;
                    match name {
                        "fan" => Pattern::Fan(size),
                        "kipas" => Pattern::Kipas(size),
                        "wheel" => Pattern::Wheel(size),
                        "star" => Pattern::Star(size),
                        "star-plus" => Pattern::SubdividedStar(size),
                        "path" => Pattern::Path(size),
                        _ => return Err(unknown()),
                    }
                }
            }
        };
        pattern.validate()?;
        Ok(pattern)
    }
}
