//! Independent ground truth: exhaustive small Ramsey and Gallai–Ramsey
//! numbers, the 13-vertex fan witness check, and a seeded local search for
//! two-colored bases without a monochromatic kipas.
//!
//! The exhaustive searches use their own bitmask embedding routine rather
//! than the specialized detectors, so the two can cross-check each other.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::constructions::{contract_fan_base, ConstructionError};
use crate::detectors::{
    embed_oracle, find_mono_fan, find_mono_kipas, find_rainbow_triangle, DetectionReport,
};
use crate::graph::{Color, ColoredCompleteGraph, GraphError, Vertex};
use crate::pattern::{Pattern, PatternError, SmallGraph};

/// Largest `n_max` accepted by [`ramsey2_exact`].
pub const RAMSEY2_MAX_N: usize = 7;
/// Largest `n_max` accepted by [`gallai_ramsey_exhaustive`].
pub const GALLAI_MAX_N: usize = 6;
/// Largest pattern the exhaustive searches accept.
pub const EXHAUSTIVE_MAX_PATTERN: usize = 8;
/// Bases are stored as `u64` neighbor masks during local search.
pub const BASE_MAX_VERTICES: usize = 64;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("n_max = {n_max} exceeds the limit {limit}")]
    NMaxTooLarge { n_max: usize, limit: usize },
    #[error("pattern {pattern} has {vertices} vertices; exhaustive search accepts at most {EXHAUSTIVE_MAX_PATTERN}")]
    PatternTooLarge { pattern: Pattern, vertices: usize },
    #[error("pattern {0} is not a monochromatic target")]
    NotMonochromatic(Pattern),
    #[error("search needs {needed} colorings but the budget allows {limit}")]
    BudgetExceeded { needed: u64, limit: u64 },
    #[error("color count must be between 1 and {}, got {0}", Color::MAX)]
    ColorCount(usize),
    #[error("base search needs even m >= 6 or odd m >= 7, got {0}")]
    BaseParameter(usize),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Limits for the searches. Exhaustive modes read `max_n` and
/// `max_colorings`; the heuristic reads `restarts`, `steps` and `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_n: usize,
    pub max_colorings: u64,
    pub restarts: usize,
    pub steps: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_n: RAMSEY2_MAX_N,
            max_colorings: 1 << 22,
            restarts: 1,
            steps: 10_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn exhaustive(max_n: usize) -> Self {
        Self {
            max_n,
            ..Self::default()
        }
    }

    pub fn heuristic(steps: u64, seed: u64) -> Self {
        Self {
            steps,
            seed,
            ..Self::default()
        }
    }
}

/// Outcome of an exhaustive threshold search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Exact(usize),
    /// No `n <= max_n` forces the pattern.
    AtLeast(usize),
}

impl Threshold {
    pub fn exact(self) -> Option<usize> {
        match self {
            Threshold::Exact(n) => Some(n),
            Threshold::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Exact(n) => write!(f, "{n}"),
            Threshold::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExhaustiveResult {
    pub value: Threshold,
    /// A largest coloring found that avoids the targets (on `value - 1`
    /// vertices for an exact result, on `max_n` vertices otherwise).
    pub lower_witness: Option<ColoredCompleteGraph>,
}

/// A pattern with its vertices ordered for backtracking: each position
/// lists the earlier positions it must be adjacent to.
struct MaskPattern {
    back: Vec<Vec<usize>>,
    degree: Vec<u32>,
}

impl MaskPattern {
    fn new(pattern: &SmallGraph) -> Self {
        let p = pattern.n();
        let mut order: Vec<usize> = Vec::with_capacity(p);
        let mut placed = vec![false; p];
        while order.len() < p {
            // most constrained next: most placed neighbors, then highest degree
            let next = (0..p)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&w| pattern.adjacent(v, w)).count();
                    (links, pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
        let back = (0..p)
            .map(|i| {
                (0..i)
                    .filter(|&j| pattern.adjacent(order[i], order[j]))
                    .collect()
            })
            .collect();
        let degree = order.iter().map(|&v| pattern.degree(v) as u32).collect();
        Self { back, degree }
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    /// Whether the graph given by neighbor masks over `0..n` contains the pattern.
    fn embeds(&self, adj: &[u64], n: usize) -> bool {
        if self.len() > n {
            return false;
        }
        let mut image = [0usize; EXHAUSTIVE_MAX_PATTERN];
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.extend(adj, all, 0, 0, &mut image)
    }

    fn extend(&self, adj: &[u64], all: u64, pos: usize, used: u64, image: &mut [usize]) -> bool {
        if pos == self.len() {
            return true;
        }
        let mut cands = all & !used;
        for &j in &self.back[pos] {
            cands &= adj[image[j]];
        }
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if adj[v].count_ones() < self.degree[pos] {
                continue;
            }
            image[pos] = v;
            if self.extend(adj, all, pos + 1, used | 1 << v, image) {
                return true;
            }
        }
        false
    }
}

fn mask_pattern(pattern: &Pattern) -> Result<MaskPattern, OracleError> {
    pattern.validate()?;
    let graph = pattern
        .graph()
        .ok_or_else(|| OracleError::NotMonochromatic(pattern.clone()))?;
    if graph.n() > EXHAUSTIVE_MAX_PATTERN {
        return Err(OracleError::PatternTooLarge {
            pattern: pattern.clone(),
            vertices: graph.n(),
        });
    }
    Ok(MaskPattern::new(&graph))
}

/// Pairs of `0..n` in column order: `(0,1), (0,2), (1,2), (0,3), ...`, so
/// that the first `v(v-1)/2` pairs span the vertices `0..v`.
fn column_pairs(n: usize) -> Vec<(Vertex, Vertex)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

/// Color-class masks of the 2-coloring encoded by `code`: bit `i` set puts
/// pair `i` in color 2.
fn decode2(pairs: &[(Vertex, Vertex)], code: u64, n: usize) -> [[u64; 8]; 2] {
    let mut adj = [[0u64; 8]; 2];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let c = (code >> i & 1) as usize;
        adj[c][u] |= 1 << v;
        adj[c][v] |= 1 << u;
    }
    debug_assert!(n <= 8);
    adj
}

fn graph_from_code(pairs: &[(Vertex, Vertex)], code: u64, n: usize) -> ColoredCompleteGraph {
    let mut g = ColoredCompleteGraph::new_complete(n, 2, 1).expect("n >= 1, k = 2");
    for (i, &(u, v)) in pairs.iter().enumerate() {
        g.set_color(u, v, 1 + (code >> i & 1) as Color)
            .expect("in range");
    }
    g
}

/// Smallest `n <= max_n` such that every red/blue coloring of `K_n` has
/// `p1` in color 1 or `p2` in color 2. All `2^(n(n-1)/2)` colorings are
/// enumerated (half of them when `p1 == p2`, by fixing the first edge).
pub fn ramsey2_exact(
    p1: &Pattern,
    p2: &Pattern,
    budget: &SearchBudget,
) -> Result<ExhaustiveResult, OracleError> {
    let n_max = budget.max_n;
    if n_max > RAMSEY2_MAX_N {
        return Err(OracleError::NMaxTooLarge {
            n_max,
            limit: RAMSEY2_MAX_N,
        });
    }
    let (m1, m2) = (mask_pattern(p1)?, mask_pattern(p2)?);
    let symmetric = p1 == p2;
    let mut lower_witness = None;
    for n in 1..=n_max {
        let pairs = column_pairs(n);
        let free_bits = pairs.len() - usize::from(symmetric && !pairs.is_empty());
        let needed = 1u64 << free_bits;
        if needed > budget.max_colorings {
            return Err(OracleError::BudgetExceeded {
                needed,
                limit: budget.max_colorings,
            });
        }
        // with the symmetry in force, pair 0 stays in color 1 (bit 0 clear)
        let shift = pairs.len() - free_bits;
        let avoider = (0..needed)
            .into_par_iter()
            .map(|c| c << shift)
            .find_first(|&code| {
                let adj = decode2(&pairs, code, n);
                !m1.embeds(&adj[0][..n], n) && !m2.embeds(&adj[1][..n], n)
            });
        match avoider {
            Some(code) => lower_witness = Some(graph_from_code(&pairs, code, n)),
            None => {
                return Ok(ExhaustiveResult {
                    value: Threshold::Exact(n),
                    lower_witness,
                })
            }
        }
    }
    Ok(ExhaustiveResult {
        value: Threshold::AtLeast(n_max + 1),
        lower_witness,
    })
}

struct GallaiSearch<'a> {
    pattern: &'a MaskPattern,
    k: usize,
    pairs: Vec<(Vertex, Vertex)>,
    colors: [[Color; 8]; 8],
    adj: Vec<[u64; 8]>,
    nodes: u64,
    limit: u64,
}

impl GallaiSearch<'_> {
    fn rainbow_free(&self, u: Vertex, v: Vertex, c: Color) -> bool {
        // in column order the pairs {w,u} and {w,v} are colored for all w < u
        (0..u).all(|w| {
            let (a, b) = (self.colors[w][u], self.colors[w][v]);
            a == b || a == c || b == c
        })
    }

    /// `Ok(true)` when a good coloring of all pairs exists below this node.
    fn search(&mut self, i: usize, used: usize) -> Result<bool, OracleError> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(OracleError::BudgetExceeded {
                needed: self.nodes,
                limit: self.limit,
            });
        }
        if i == self.pairs.len() {
            return Ok(true);
        }
        let (u, v) = self.pairs[i];
        // colors are interchangeable: a new color may only be the next unused one
        for c in 1..=self.k.min(used + 1) {
            let col = c as Color;
            if !self.rainbow_free(u, v, col) {
                continue;
            }
            self.colors[u][v] = col;
            self.colors[v][u] = col;
            self.adj[c - 1][u] |= 1 << v;
            self.adj[c - 1][v] |= 1 << u;
            // once column v is complete, K_{v+1} must avoid the pattern in color c
            let ok = u + 1 < v
                || !self
                    .adj
                    .iter()
                    .any(|a| self.pattern.embeds(&a[..=v], v + 1));
            if ok && self.search(i + 1, used.max(c))? {
                return Ok(true);
            }
            self.adj[c - 1][u] &= !(1 << v);
            self.adj[c - 1][v] &= !(1 << u);
        }
        self.colors[u][v] = 0;
        self.colors[v][u] = 0;
        Ok(false)
    }

    fn graph(&self, n: usize) -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_fn(n, self.k as Color, |u, v| self.colors[u][v])
            .expect("complete coloring")
    }
}

/// Smallest `n <= max_n` such that every Gallai coloring of `K_n` with at
/// most `k` colors contains a monochromatic `pattern`. Backtracks over the
/// pairs with rainbow-triangle pruning; colors are introduced in order.
pub fn gallai_ramsey_exhaustive(
    pattern: &Pattern,
    k: usize,
    budget: &SearchBudget,
) -> Result<ExhaustiveResult, OracleError> {
    let n_max = budget.max_n;
    if n_max > GALLAI_MAX_N {
        return Err(OracleError::NMaxTooLarge {
            n_max,
            limit: GALLAI_MAX_N,
        });
    }
    if k == 0 || k > Color::MAX as usize {
        return Err(OracleError::ColorCount(k));
    }
    let mp = mask_pattern(pattern)?;
    let mut lower_witness = None;
    for n in 1..=n_max {
        let mut s = GallaiSearch {
            pattern: &mp,
            k,
            pairs: column_pairs(n),
            colors: [[0; 8]; 8],
            adj: vec![[0; 8]; k],
            nodes: 0,
            limit: budget.max_colorings,
        };
        if !s.search(0, 0)? {
            return Ok(ExhaustiveResult {
                value: Threshold::Exact(n),
                lower_witness,
            });
        }
        lower_witness = Some(s.graph(n));
    }
    Ok(ExhaustiveResult {
        value: Threshold::AtLeast(n_max + 1),
        lower_witness,
    })
}

#[derive(Clone, Debug)]
pub struct FanWitnessReport {
    pub graph: ColoredCompleteGraph,
    pub rainbow: DetectionReport,
    /// Fan detector verdict per color.
    pub detector: Vec<DetectionReport>,
    /// Embedding-oracle verdict per color.
    pub oracle: Vec<DetectionReport>,
}

impl FanWitnessReport {
    /// Both searches agree that `F_3` is absent in both colors.
    pub fn confirms_lower_bound(&self) -> bool {
        self.rainbow.is_absent()
            && self.detector.iter().all(DetectionReport::is_absent)
            && self.oracle.iter().all(DetectionReport::is_absent)
    }
}

/// Checks the 13-vertex two-coloring behind `R(F_3, F_3) >= 14` with both
/// the fan detector and the embedding oracle. Only this lower half is
/// checked; forcing `F_3` on 14 vertices is out of reach.
pub fn fan_lower_witness_check() -> Result<FanWitnessReport, OracleError> {
    let graph = contract_fan_base()?;
    let fan = Pattern::Fan(3).graph().expect("fan is a graph pattern");
    let mut detector = Vec::new();
    let mut oracle = Vec::new();
    for c in 1..=2 {
        detector.push(find_mono_fan(&graph, c, 3).expect("color in range"));
        oracle.push(embed_oracle(&graph, c, &fan).expect("7-vertex pattern"));
    }
    Ok(FanWitnessReport {
        rainbow: find_rainbow_triangle(&graph),
        graph,
        detector,
        oracle,
    })
}

fn check_base_m(m: usize) -> Result<(), OracleError> {
    if m < 6 || 2 * (m - 1) > BASE_MAX_VERTICES {
        return Err(OracleError::BaseParameter(m));
    }
    Ok(())
}

/// Two color-1 cliques on `m - 1` vertices joined in color 2. Color 1 has
/// too few vertices per component for `K_1 + P_m`, and color 2 is
/// bipartite while `K_1 + P_m` has triangles.
pub fn trivial_base(m: usize) -> Result<ColoredCompleteGraph, OracleError> {
    check_base_m(m)?;
    let half = m - 1;
    Ok(ColoredCompleteGraph::from_fn(2 * half, 2, |u, v| {
        if (u < half) == (v < half) {
            1
        } else {
            2
        }
    })?)
}

#[derive(Clone, Debug)]
pub struct BaseSearchResult {
    pub graph: ColoredCompleteGraph,
    pub m: usize,
    pub seed: u64,
    pub steps: u64,
    pub restarts: usize,
    /// Restart that produced `graph`.
    pub best_restart: usize,
}

impl BaseSearchResult {
    pub fn metadata(&self) -> Vec<(String, String)> {
        vec![
            ("base-search".into(), "local".into()),
            ("m".into(), self.m.to_string()),
            ("seed".into(), self.seed.to_string()),
            ("steps".into(), self.steps.to_string()),
            ("restarts".into(), self.restarts.to_string()),
            ("best-restart".into(), self.best_restart.to_string()),
            ("base-size".into(), self.graph.n().to_string()),
        ]
    }
}

/// Local-search state: the two color classes as neighbor masks.
#[derive(Clone)]
struct MaskColoring {
    n: usize,
    adj: [Vec<u64>; 2],
}

impl MaskColoring {
    fn from_graph(g: &ColoredCompleteGraph) -> Self {
        let n = g.n();
        let mut adj = [vec![0u64; n], vec![0u64; n]];
        for (u, v, c) in g.edges() {
            adj[c as usize - 1][u] |= 1 << v;
            adj[c as usize - 1][v] |= 1 << u;
        }
        Self { n, adj }
    }

    fn to_graph(&self) -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_fn(
            self.n,
            2,
            |u, v| if self.adj[0][u] >> v & 1 == 1 { 1 } else { 2 },
        )
        .expect("two-coloring")
    }

    fn flip(&mut self, u: Vertex, v: Vertex) {
        for side in &mut self.adj {
            side[u] ^= 1 << v;
            side[v] ^= 1 << u;
        }
    }

    /// Adds a vertex joined to the rest with balanced colors, visiting the
    /// old vertices in random order.
    fn add_vertex(&mut self, rng: &mut ChaCha8Rng) {
        let w = self.n;
        let mut order: Vec<Vertex> = (0..w).collect();
        order.shuffle(rng);
        let mut count = [0usize; 2];
        for u in order {
            let side = match count[0].cmp(&count[1]) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Equal => rng.gen_range(0..2),
            };
            count[side] += 1;
            self.adj[side][u] |= 1 << w;
        }
        for side in 0..2 {
            let row = (0..w)
                .filter(|&u| self.adj[side][u] >> w & 1 == 1)
                .fold(0u64, |r, u| r | 1 << u);
            self.adj[side].push(row);
        }
        self.n += 1;
    }

    /// Number of (color, center) pairs whose color neighborhood holds a
    /// path on `m` vertices, i.e. centers of monochromatic `K_1 + P_m`.
    fn violations(&self, m: usize) -> usize {
        let mut total = 0;
        for adj in &self.adj {
            for v in 0..self.n {
                if has_path(adj, adj[v], m) {
                    total += 1;
                }
            }
        }
        total
    }
}

/// Whether `within` contains a path on `m` vertices in the graph `adj`.
fn has_path(adj: &[u64], within: u64, m: usize) -> bool {
    fn grow(adj: &[u64], within: u64, end: usize, used: u64, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut next = adj[end] & within & !used;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if grow(adj, within, w, used | 1 << w, left - 1) {
                return true;
            }
        }
        false
    }
    if (within.count_ones() as usize) < m {
        return false;
    }
    let mut starts = within;
    while starts != 0 {
        let s = starts.trailing_zeros() as usize;
        starts &= starts - 1;
        if grow(adj, within, s, 1 << s, m - 1) {
            return true;
        }
    }
    false
}

fn kipas_free(g: &ColoredCompleteGraph, m: usize) -> bool {
    (1..=2).all(|c| find_mono_kipas(g, c, m).expect("two colors").is_absent())
}

fn search_restart(m: usize, steps: u64, seed: u64) -> ColoredCompleteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = trivial_base(m).expect("checked parameters");
    let mut cur = MaskColoring::from_graph(&best);
    cur.add_vertex(&mut rng);
    let mut score = cur.violations(m);
    for _ in 0..steps {
        if score == 0 {
            let candidate = cur.to_graph();
            // the exact detector decides acceptance, not the local score
            if kipas_free(&candidate, m) {
                best = candidate;
            }
            if best.n() >= BASE_MAX_VERTICES {
                break;
            }
            cur = MaskColoring::from_graph(&best);
            cur.add_vertex(&mut rng);
            score = cur.violations(m);
            continue;
        }
        let u = rng.gen_range(0..cur.n);
        let mut v = rng.gen_range(0..cur.n - 1);
        if v >= u {
            v += 1;
        }
        cur.flip(u, v);
        let next = cur.violations(m);
        if next <= score {
            score = next;
        } else {
            cur.flip(u, v);
        }
    }
    best
}

/// Largest two-coloring without a monochromatic `K_1 + P_m` found by local
/// search from [`trivial_base`]. Each restart grows its current best by one
/// vertex and repairs it by single-edge recolorings that do not increase
/// the number of kipas centers; a candidate replaces the best only after
/// the exact kipas detector clears it. Restarts run in parallel with seeds
/// `seed, seed + 1, ...`; the result is deterministic.
pub fn heuristic_base_search(
    m: usize,
    budget: &SearchBudget,
) -> Result<BaseSearchResult, OracleError> {
    check_base_m(m)?;
    let restarts = budget.restarts.max(1);
    let results: Vec<ColoredCompleteGraph> = (0..restarts)
        .into_par_iter()
        .map(|r| search_restart(m, budget.steps, budget.seed.wrapping_add(r as u64)))
        .collect();
    let (best_restart, graph) = results
        .into_iter()
        .enumerate()
        .max_by_key(|(r, g)| (g.n(), std::cmp::Reverse(*r)))
        .expect("at least one restart");
    assert!(
        kipas_free(&graph, m),
        "base search returned an unverified graph"
    );
    Ok(BaseSearchResult {
        graph,
        m,
        seed: budget.seed,
        steps: budget.steps,
        restarts,
        best_restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detectors::{find_mono_triangle, find_mono_wheel};
    use crate::recipe::Recipe;

    fn exhaustive(n: usize) -> SearchBudget {
        SearchBudget::exhaustive(n)
    }

    #[test]
    fn small_ramsey_numbers() {
        let p4 = Pattern::Path(4);
        assert_eq!(
            ramsey2_exact(&p4, &p4, &exhaustive(6)).unwrap().value,
            Threshold::Exact(5)
        );
        let r = ramsey2_exact(&Pattern::Triangle, &Pattern::Triangle, &exhaustive(7)).unwrap();
        assert_eq!(r.value, Threshold::Exact(6));
        // the pentagon is the unique avoider on 5 vertices
        let w = r.lower_witness.unwrap();
        assert_eq!(w.n(), 5);
        assert!((1..=2).all(|c| find_mono_triangle(&w, c).unwrap().is_absent()));
    }

    #[test]
    fn asymmetric_pairs_are_symmetric_under_swap() {
        // a color-1 matching leaves K_4 minus a perfect matching, which is C_4
        let (p3, k3) = (Pattern::Path(3), Pattern::Triangle);
        let a = ramsey2_exact(&p3, &k3, &exhaustive(7)).unwrap().value;
        let b = ramsey2_exact(&k3, &p3, &exhaustive(7)).unwrap().value;
        assert_eq!(a, Threshold::Exact(5));
        assert_eq!(a, b);
    }

    #[test]
    fn unreachable_threshold_reports_lower_bound() {
        let r = ramsey2_exact(&Pattern::Triangle, &Pattern::Triangle, &exhaustive(5)).unwrap();
        assert_eq!(r.value, Threshold::AtLeast(6));
        assert_eq!(r.value.to_string(), ">= 6");
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            ramsey2_exact(&Pattern::Triangle, &Pattern::Triangle, &exhaustive(8)),
            Err(OracleError::NMaxTooLarge { .. })
        ));
        let tight = SearchBudget {
            max_colorings: 1 << 10,
            ..exhaustive(7)
        };
        assert!(matches!(
            ramsey2_exact(&Pattern::Triangle, &Pattern::Triangle, &tight),
            Err(OracleError::BudgetExceeded { .. })
        ));
        assert!(matches!(
            ramsey2_exact(
                &Pattern::RainbowTriangle,
                &Pattern::Triangle,
                &exhaustive(4)
            ),
            Err(OracleError::NotMonochromatic(_))
        ));
        assert!(matches!(
            ramsey2_exact(&Pattern::Kipas(8), &Pattern::Triangle, &exhaustive(4)),
            Err(OracleError::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn gallai_ramsey_small_cases() {
        let k3 = Pattern::Triangle;
        assert_eq!(
            gallai_ramsey_exhaustive(&k3, 2, &exhaustive(6))
                .unwrap()
                .value,
            Threshold::Exact(6)
        );
        assert_eq!(
            gallai_ramsey_exhaustive(&Pattern::Path(3), 2, &exhaustive(3))
                .unwrap()
                .value,
            Threshold::Exact(3)
        );
    }

    #[test]
    fn three_colors_do_not_force_a_triangle_on_six_vertices() {
        let r = gallai_ramsey_exhaustive(&Pattern::Triangle, 3, &exhaustive(6)).unwrap();
        assert_eq!(r.value, Threshold::AtLeast(7));
        let w = r.lower_witness.unwrap();
        assert_eq!(w.n(), 6);
        assert!(find_rainbow_triangle(&w).is_absent());
        assert!((1..=3).all(|c| find_mono_triangle(&w, c).unwrap().is_absent()));
        // independent confirmation far beyond n = 6: two pentagons joined in color 3
        let ten = Recipe::join(Recipe::pentagon(1, 2), Recipe::pentagon(1, 2), 3)
            .expand()
            .unwrap();
        assert_eq!(ten.n(), 10);
        assert!(find_rainbow_triangle(&ten).is_absent());
        assert!((1..=3).all(|c| find_mono_triangle(&ten, c).unwrap().is_absent()));
    }

    #[test]
    fn fan_witness_is_confirmed_by_both_searches() {
        let r = fan_lower_witness_check().unwrap();
        assert_eq!(r.graph.n(), 13);
        assert!(r.confirms_lower_bound());
    }

    #[test]
    fn fan_witness_extension_smoke() {
        // joining a 14th vertex arbitrarily makes no claim; the detector must just run
        let base = fan_lower_witness_check().unwrap().graph;
        let g = ColoredCompleteGraph::from_fn(14, 2, |u, v| {
            if v == 13 {
                1 + (u % 2) as Color
            } else {
                base.color(u, v)
            }
        })
        .unwrap();
        for c in 1..=2 {
            let r = find_mono_fan(&g, c, 3).unwrap();
            assert!(r.validate(&g));
        }
    }

    #[test]
    fn trivial_bases_are_kipas_free() {
        for m in [6, 7, 8, 9] {
            let b = trivial_base(m).unwrap();
            assert_eq!(b.n(), 2 * (m - 1));
            assert!(kipas_free(&b, m));
        }
        assert!(trivial_base(5).is_err());
    }

    #[test]
    fn mask_violations_match_the_detector() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(7..13);
            let g = ColoredCompleteGraph::from_fn(n, 2, |_, _| rng.gen_range(1..=2)).unwrap();
            let mc = MaskColoring::from_graph(&g);
            for m in [4, 5, 6] {
                assert_eq!(mc.violations(m) == 0, kipas_free(&g, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn base_search_is_verified_and_deterministic() {
        let budget = SearchBudget::heuristic(1500, 11);
        let a = heuristic_base_search(6, &budget).unwrap();
        let b = heuristic_base_search(6, &budget).unwrap();
        assert_eq!(a.graph, b.graph);
        assert!(a.graph.n() >= 10);
        assert!(kipas_free(&a.graph, 6));
        // the wheel contains the kipas, so it is absent too
        assert!((1..=2).all(|c| find_mono_wheel(&a.graph, c, 6).unwrap().is_absent()));
        assert_eq!(
            a.metadata().iter().find(|(k, _)| k == "seed").unwrap().1,
            "11"
        );
    }

    #[test]
    fn base_search_is_monotone_in_steps() {
        let short = heuristic_base_search(6, &SearchBudget::heuristic(300, 3)).unwrap();
        let long = heuristic_base_search(6, &SearchBudget::heuristic(1200, 3)).unwrap();
        assert!(long.graph.n() >= short.graph.n());
    }
}
