//! Edge-colored complete graphs and per-color views.
//!
//! Vertices are `0..n`, colors are `1..=k`. The flat symmetric color matrix is
//! the source of truth; [`ColorClassView`] bitsets are derived from it on
//! demand for the detectors.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bitset::Bitset;

pub type Vertex = usize;
pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a colored complete graph needs at least one vertex")]
    NoVertices,
    #[error("color count must be at least 1")]
    NoColors,
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: Color, k: Color },
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("the pair {{{0}, {0}}} is a self-pair and has no color")]
    SelfPair(Vertex),
    #[error("pair {{{0}, {1}}} has no color")]
    Uncolored(Vertex, Vertex),
}

/// Read access shared by complete colorings and colorings with absent pairs.
pub trait EdgeColoring: Sync {
    fn vertex_count(&self) -> usize;

    fn color_count(&self) -> Color;

    /// `None` for self-pairs, out-of-range vertices and absent pairs.
    fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color>;

    fn color_class(&self, color: Color) -> ColorClassView {
        let n = self.vertex_count();
        let mut adjacency = vec![Bitset::new(n); n];
        for u in 0..n {
            for v in u + 1..n {
                if self.edge_color(u, v) == Some(color) {
                    adjacency[u].insert(v);
                    adjacency[v].insert(u);
                }
            }
        }
        ColorClassView { color, adjacency }
    }
}

/// A complete graph on `n` vertices with every pair colored from `1..=k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredCompleteGraph {
    n: usize,
    k: Color,
    /// Row-major `n * n`; the diagonal holds 0.
    matrix: Vec<Color>,
}

impl std::fmt::Debug for ColoredCompleteGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ColoredCompleteGraph(n={}, k={})", self.n, self.k)
    }
}

fn check_color(color: Color, k: Color) -> Result<(), GraphError> {
    if color == 0 || color > k {
        Err(GraphError::ColorOutOfRange { color, k })
    } else {
        Ok(())
    }
}

impl ColoredCompleteGraph {
    /// All `n(n-1)/2` edges get `default_color`.
    pub fn new_complete(n: usize, k: Color, default_color: Color) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if k == 0 {
            return Err(GraphError::NoColors);
        }
        check_color(default_color, k)?;
        let mut matrix = vec![default_color; n * n];
        for v in 0..n {
            matrix[v * n + v] = 0;
        }
        Ok(Self { n, k, matrix })
    }

    /// Builds a graph from a color function evaluated on every pair `u < v`.
    pub fn from_fn<F>(n: usize, k: Color, mut color: F) -> Result<Self, GraphError>
    where
        F: FnMut(Vertex, Vertex) -> Color,
    {
        let mut g = Self::new_complete(n, k, 1)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_color(u, v, color(u, v))?;
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> Color {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Unchecked lookup; callers guarantee `u != v` and both in range.
    #[inline]
    pub fn color(&self, u: Vertex, v: Vertex) -> Color {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.matrix[u * self.n + v]
    }

    pub fn try_color(&self, u: Vertex, v: Vertex) -> Result<Color, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfPair(u));
        }
        Ok(self.color(u, v))
    }

    pub fn set_color(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfPair(u));
        }
        check_color(color, self.k)?;
        self.matrix[u * self.n + v] = color;
        self.matrix[v * self.n + u] = color;
        Ok(())
    }

    /// Same coloring with a larger ambient color count.
    pub fn with_color_count(mut self, k: Color) -> Result<Self, GraphError> {
        if let Some(c) = self.max_color_used() {
            check_color(c, k)?;
        }
        self.k = k;
        Ok(self)
    }

    pub fn max_color_used(&self) -> Option<Color> {
        self.edges().map(|(_, _, c)| c).max()
    }

    pub fn colors_used(&self) -> Vec<Color> {
        let mut seen = vec![false; self.k as usize + 1];
        for (_, _, c) in self.edges() {
            seen[c as usize] = true;
        }
        (1..=self.k).filter(|&c| seen[c as usize]).collect()
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// All pairs `u < v` in row-major order with their colors.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, Color)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.color(u, v))))
    }

    pub fn color_degree(&self, v: Vertex, c: Color) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        check_color(c, self.k)?;
        let row = &self.matrix[v * self.n..(v + 1) * self.n];
        Ok(row.iter().filter(|&&x| x == c).count())
    }

    pub fn max_color_degree(&self, c: Color) -> Result<usize, GraphError> {
        (0..self.n)
            .map(|v| self.color_degree(v, c))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Connected components of the color-`c` class, singletons included,
    /// each sorted and listed by smallest vertex.
    pub fn mono_components(&self, c: Color) -> Result<Vec<Vec<Vertex>>, GraphError> {
        check_color(c, self.k)?;
        Ok(self.color_class(c).components())
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Self, GraphError> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        Self::from_fn(vertices.len(), self.k, |a, b| {
            self.color(vertices[a], vertices[b])
        })
    }

    /// Per-vertex color histogram sums to `n - 1`; exposed for invariant checks.
    pub fn degree_profile(&self, v: Vertex) -> Result<Vec<usize>, GraphError> {
        (1..=self.k).map(|c| self.color_degree(v, c)).collect()
    }
}

impl EdgeColoring for ColoredCompleteGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn color_count(&self) -> Color {
        self.k
    }

    fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if u == v || u >= self.n || v >= self.n {
            None
        } else {
            Some(self.color(u, v))
        }
    }

    fn color_class(&self, color: Color) -> ColorClassView {
        let n = self.n;
        let adjacency = (0..n)
            .map(|u| {
                let mut row = Bitset::new(n);
                for (v, &c) in self.matrix[u * n..(u + 1) * n].iter().enumerate() {
                    if c == color {
                        row.insert(v);
                    }
                }
                row
            })
            .collect();
        ColorClassView { color, adjacency }
    }
}

/// A coloring of a subset of the pairs of `0..n`: used for the star
/// extension, where one new vertex misses some pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct PartialColoring {
    n: usize,
    k: Color,
    /// 0 marks an absent pair.
    matrix: Vec<Color>,
}

impl std::fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PartialColoring(n={}, k={}, absent={})",
            self.n,
            self.k,
            self.absent_pairs().len()
        )
    }
}

impl PartialColoring {
    pub fn empty(n: usize, k: Color) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::NoVertices);
        }
        if k == 0 {
            return Err(GraphError::NoColors);
        }
        Ok(Self {
            n,
            k,
            matrix: vec![0; n * n],
        })
    }

    /// Embeds `g` on the first `g.n()` vertices of an `n`-vertex coloring.
    pub fn from_complete(g: &ColoredCompleteGraph, n: usize) -> Result<Self, GraphError> {
        let mut p = Self::empty(n.max(g.n()), g.k())?;
        for (u, v, c) in g.edges() {
            p.set_color(u, v, Some(c))?;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn set_color(
        &mut self,
        u: Vertex,
        v: Vertex,
        color: Option<Color>,
    ) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfPair(u));
        }
        let c = match color {
            Some(c) => {
                check_color(c, self.k)?;
                c
            }
            None => 0,
        };
        self.matrix[u * self.n + v] = c;
        self.matrix[v * self.n + u] = c;
        Ok(())
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.matrix[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&c| c != 0)
            .count()
    }

    pub fn absent_pairs(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.matrix[u * self.n + v] == 0)
            .collect()
    }

    /// Converts to a complete graph when no pair is absent.
    pub fn to_complete(&self) -> Result<ColoredCompleteGraph, GraphError> {
        if let Some(&(u, v)) = self.absent_pairs().first() {
            return Err(GraphError::Uncolored(u, v));
        }
        ColoredCompleteGraph::from_fn(self.n, self.k, |u, v| self.matrix[u * self.n + v])
    }
}

impl EdgeColoring for PartialColoring {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn color_count(&self) -> Color {
        self.k
    }

    fn edge_color(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        match self.matrix[u * self.n + v] {
            0 => None,
            c => Some(c),
        }
    }
}

/// The spanning subgraph formed by one color class.
#[derive(Clone, Debug)]
pub struct ColorClassView {
    pub color: Color,
    pub adjacency: Vec<Bitset>,
}

impl ColorClassView {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &Bitset {
        &self.adjacency[v]
    }

    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Bitset::len).sum::<usize>() / 2
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&Bitset::full(self.n()))
    }

    /// Components of the class restricted to the vertex set `within`.
    pub fn components_within(&self, within: &Bitset) -> Vec<Vec<Vertex>> {
        let mut seen = Bitset::new(self.n());
        let mut out = Vec::new();
        for start in within.iter() {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adjacency[u].iter() {
                    if within.contains(w) && !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
