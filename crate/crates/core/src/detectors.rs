//! Exact searches for rainbow triangles and monochromatic target graphs.
//!
//! Every search here is exhaustive: a report without a witness means the
//! pattern does not occur. Pruning only changes running time.
//!
//! Centers are tried in order of descending color degree and in parallel
//! chunks; the reported witness is always the one belonging to the earliest
//! center in that order, so results do not depend on thread scheduling.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::bitset::Bitset;
use crate::graph::{Color, ColorClassView, EdgeColoring, Vertex};
use crate::pattern::{Pattern, SmallGraph};

/// Largest pattern accepted by [`embed_oracle`].
pub const ORACLE_MAX_VERTICES: usize = 9;

const CHUNK: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error(
        "pattern has {0} vertices; the embedding oracle accepts at most {ORACLE_MAX_VERTICES}"
    )]
    PatternTooLarge(usize),
    #[error("color {color} outside [1, {k}]")]
    ColorOutOfRange { color: Color, k: Color },
    #[error(transparent)]
    Pattern(#[from] crate::pattern::PatternError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionReport {
    pub pattern: Pattern,
    /// `None` for the rainbow triangle.
    pub color: Option<Color>,
    /// Vertices in pattern-role order (center first).
    pub witness: Option<Vec<Vertex>>,
    pub nodes_explored: u64,
}

impl DetectionReport {
    pub fn is_absent(&self) -> bool {
        self.witness.is_none()
    }

    /// Re-checks the witness edge by edge against `g`. Absent reports are
    /// trivially valid.
    pub fn validate<G: EdgeColoring + ?Sized>(&self, g: &G) -> bool {
        let Some(w) = &self.witness else { return true };
        let n = g.vertex_count();
        if w.iter().any(|&v| v >= n) {
            return false;
        }
        let mut seen = Bitset::new(n);
        for &v in w {
            if seen.contains(v) {
                return false;
            }
            seen.insert(v);
        }
        match (&self.pattern, self.color) {
            (Pattern::RainbowTriangle, _) => {
                if w.len() != 3 {
                    return false;
                }
                let cs = [
                    g.edge_color(w[0], w[1]),
                    g.edge_color(w[1], w[2]),
                    g.edge_color(w[0], w[2]),
                ];
                match cs {
                    [Some(a), Some(b), Some(c)] => a != b && b != c && a != c,
                    _ => false,
                }
            }
            (p, Some(c)) => {
                w.len() == p.vertex_count()
                    && p.required_pairs()
                        .iter()
                        .all(|&(i, j)| g.edge_color(w[i], w[j]) == Some(c))
            }
            (_, None) => false,
        }
    }

    /// `ABSENT` or `WITNESS v0 v1 ...`.
    pub fn verdict(&self) -> String {
        match &self.witness {
            None => "ABSENT".to_string(),
            Some(w) => {
                let mut s = "WITNESS".to_string();
                for v in w {
                    s.push(' ');
                    s.push_str(&v.to_string());
                }
                s
            }
        }
    }
}

impl fmt::Display for DetectionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.color {
            Some(c) => write!(f, "{} {} {}", self.pattern, c, self.verdict()),
            None => write!(f, "{} - {}", self.pattern, self.verdict()),
        }
    }
}

fn check_color<G: EdgeColoring + ?Sized>(g: &G, c: Color) -> Result<(), DetectError> {
    let k = g.color_count();
    if c == 0 || c > k {
        Err(DetectError::ColorOutOfRange { color: c, k })
    } else {
        Ok(())
    }
}

/// Vertices by descending degree in the class, ties by index.
fn center_order(class: &ColorClassView) -> Vec<Vertex> {
    let mut order: Vec<Vertex> = (0..class.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(class.degree(v)), v));
    order
}

/// Runs `per_center` over `order` in parallel chunks and returns the
/// witness of the earliest successful center. Node counts cover every
/// center up to and including that one.
fn search_centers<F>(order: &[Vertex], per_center: F) -> (u64, Option<Vec<Vertex>>)
where
    F: Fn(Vertex) -> (u64, Option<Vec<Vertex>>) + Sync,
{
    let mut total = 0u64;
    for chunk in order.chunks(CHUNK) {
        let results: Vec<(u64, Option<Vec<Vertex>>)> =
            chunk.par_iter().map(|&v| per_center(v)).collect();
        for (nodes, witness) in results {
            total += nodes;
            if witness.is_some() {
                return (total, witness);
            }
        }
    }
    (total, None)
}

fn report(
    pattern: Pattern,
    color: Option<Color>,
    (nodes, witness): (u64, Option<Vec<Vertex>>),
) -> DetectionReport {
    DetectionReport {
        pattern,
        color,
        witness,
        nodes_explored: nodes,
    }
}

pub fn find_rainbow_triangle<G: EdgeColoring + ?Sized>(g: &G) -> DetectionReport {
    let n = g.vertex_count();
    let k = g.color_count();
    let classes: Vec<ColorClassView> = (1..=k).map(|c| g.color_class(c)).collect();
    let present: Vec<Bitset> = (0..n)
        .map(|v| {
            let mut s = Bitset::new(n);
            for cl in &classes {
                s.union_with(cl.neighbors(v));
            }
            s
        })
        .collect();
    let order: Vec<Vertex> = (0..n).collect();
    let found = search_centers(&order, |u| {
        let mut nodes = 0;
        for v in present[u].iter().filter(|&v| v > u) {
            let a = g.edge_color(u, v).expect("present pair") as usize - 1;
            for b in (0..k as usize).filter(|&b| b != a) {
                nodes += 1;
                let mut s = classes[b].neighbors(u).intersection(&present[v]);
                s.difference_with(classes[a].neighbors(v));
                s.difference_with(classes[b].neighbors(v));
                if let Some(w) = s.first() {
                    return (nodes, Some(vec![u, v, w]));
                }
            }
        }
        (nodes, None)
    });
    report(Pattern::RainbowTriangle, None, found)
}

pub fn find_mono_triangle<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    let class = g.color_class(c);
    let order = center_order(&class);
    let found = search_centers(&order, |u| {
        let mut nodes = 0;
        for w in class.neighbors(u).iter() {
            nodes += 1;
            if let Some(x) = class.neighbors(u).intersection(class.neighbors(w)).first() {
                return (nodes, Some(vec![u, w, x]));
            }
        }
        (nodes, None)
    });
    Ok(report(Pattern::Triangle, Some(c), found))
}

/// Backtracking search for `need` disjoint edges inside `avail`.
fn find_matching(
    class: &ColorClassView,
    avail: &mut Bitset,
    need: usize,
    chosen: &mut Vec<Vertex>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if need == 0 {
        return true;
    }
    if avail.len() < 2 * need {
        return false;
    }
    let Some(u) = avail.first() else { return false };
    avail.remove(u);
    let partners = class.neighbors(u).intersection(avail);
    for w in partners.iter() {
        avail.remove(w);
        chosen.extend([u, w]);
        if find_matching(class, avail, need - 1, chosen, nodes) {
            return true;
        }
        chosen.truncate(chosen.len() - 2);
        avail.insert(w);
    }
    let found = find_matching(class, avail, need, chosen, nodes);
    avail.insert(u);
    found
}

/// Monochromatic fan `F_n = K_1 + nK_2` in color `c`.
pub fn find_mono_fan<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    n: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::Fan(n).validate()?;
    let class = g.color_class(c);
    let order = center_order(&class);
    let found = search_centers(&order, |v| {
        let mut nodes = 0;
        let nbhd = class.neighbors(v);
        if nbhd.len() < 2 * n {
            return (1, None);
        }
        // vertices with no partner inside the neighborhood can never be matched
        let mut avail = Bitset::new(class.n());
        for u in nbhd.iter() {
            if class.neighbors(u).intersects(nbhd) {
                avail.insert(u);
            }
        }
        let mut chosen = Vec::with_capacity(2 * n);
        if find_matching(&class, &mut avail, n, &mut chosen, &mut nodes) {
            let mut w = vec![v];
            w.extend(chosen);
            (nodes, Some(w))
        } else {
            (nodes, None)
        }
    });
    Ok(report(Pattern::Fan(n), Some(c), found))
}

/// Number of vertices of `avail` reachable from `from` (excluding `from`).
fn reachable_len(class: &ColorClassView, from: Vertex, avail: &Bitset) -> usize {
    let mut seen = class.neighbors(from).intersection(avail);
    let mut frontier = seen.clone();
    while !frontier.is_empty() {
        let mut next = Bitset::new(class.n());
        for u in frontier.iter() {
            next.union_with(class.neighbors(u));
        }
        next.intersect_with(avail);
        next.difference_with(&seen);
        seen.union_with(&next);
        frontier = next;
    }
    seen.len()
}

/// Extends `path` to `target` vertices inside `avail`; when `close_to` is
/// set the last vertex must also be adjacent to it.
fn extend_path(
    class: &ColorClassView,
    path: &mut Vec<Vertex>,
    avail: &mut Bitset,
    target: usize,
    close_to: Option<Vertex>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    let last = *path.last().expect("non-empty path");
    let remaining = target - path.len();
    if remaining == 0 {
        return close_to.map_or(true, |s| class.adjacent(last, s));
    }
    if remaining >= 2 && reachable_len(class, last, avail) < remaining {
        return false;
    }
    let next = class.neighbors(last).intersection(avail);
    for w in next.iter() {
        avail.remove(w);
        path.push(w);
        if extend_path(class, path, avail, target, close_to, nodes) {
            return true;
        }
        path.pop();
        avail.insert(w);
    }
    false
}

/// Path on `m` vertices inside `within`, searched component by component.
fn path_within(
    class: &ColorClassView,
    within: &Bitset,
    m: usize,
    nodes: &mut u64,
) -> Option<Vec<Vertex>> {
    for comp in class.components_within(within) {
        if comp.len() < m {
            continue;
        }
        let comp_set: Bitset = {
            let mut s = Bitset::new(class.n());
            comp.iter().for_each(|&v| s.insert(v));
            s
        };
        for &start in &comp {
            let mut avail = comp_set.clone();
            avail.remove(start);
            let mut path = vec![start];
            if extend_path(class, &mut path, &mut avail, m, None, nodes) {
                return Some(path);
            }
        }
    }
    None
}

/// Cycle on `m` vertices inside `within`; the cycle's smallest vertex is
/// its starting point, which removes rotations from the search.
fn cycle_within(
    class: &ColorClassView,
    within: &Bitset,
    m: usize,
    nodes: &mut u64,
) -> Option<Vec<Vertex>> {
    for comp in class.components_within(within) {
        if comp.len() < m {
            continue;
        }
        for (i, &start) in comp.iter().enumerate() {
            if comp.len() - i < m {
                break;
            }
            let mut avail = Bitset::new(class.n());
            comp[i + 1..].iter().for_each(|&v| avail.insert(v));
            let mut path = vec![start];
            if extend_path(class, &mut path, &mut avail, m, Some(start), nodes) {
                return Some(path);
            }
        }
    }
    None
}

/// Monochromatic kipas `K_1 + P_m` in color `c`: a center plus an
/// `m`-vertex path inside its color-`c` neighborhood.
pub fn find_mono_kipas<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    m: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::Kipas(m).validate()?;
    let class = g.color_class(c);
    Ok(kipas_in_class(&class, m))
}

pub(crate) fn kipas_in_class(class: &ColorClassView, m: usize) -> DetectionReport {
    let order = center_order(class);
    let found = search_centers(&order, |v| {
        let nbhd = class.neighbors(v);
        if nbhd.len() < m {
            return (1, None);
        }
        let mut nodes = 0;
        let path = path_within(class, nbhd, m, &mut nodes);
        (nodes, path.map(|p| std::iter::once(v).chain(p).collect()))
    });
    report(Pattern::Kipas(m), Some(class.color), found)
}

/// Monochromatic wheel `K_1 + C_m` in color `c`.
pub fn find_mono_wheel<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    m: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::Wheel(m).validate()?;
    let class = g.color_class(c);
    let order = center_order(&class);
    let found = search_centers(&order, |v| {
        let nbhd = class.neighbors(v);
        if nbhd.len() < m {
            return (1, None);
        }
        let mut nodes = 0;
        let cycle = cycle_within(&class, nbhd, m, &mut nodes);
        (nodes, cycle.map(|p| std::iter::once(v).chain(p).collect()))
    });
    Ok(report(Pattern::Wheel(m), Some(c), found))
}

/// Monochromatic path on `m` vertices in color `c`.
pub fn find_mono_path<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    m: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::Path(m).validate()?;
    let class = g.color_class(c);
    let mut nodes = 0;
    let path = path_within(&class, &Bitset::full(class.n()), m, &mut nodes);
    Ok(report(Pattern::Path(m), Some(c), (nodes, path)))
}

/// Monochromatic star `K_{1,n}`: some vertex of color degree at least `n`.
pub fn find_mono_star<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    n: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::Star(n).validate()?;
    let class = g.color_class(c);
    let order = center_order(&class);
    let mut nodes = 0;
    let mut witness = None;
    for &v in &order {
        nodes += 1;
        if class.degree(v) >= n {
            witness = Some(
                std::iter::once(v)
                    .chain(class.neighbors(v).iter().take(n))
                    .collect(),
            );
            break;
        }
    }
    Ok(report(Pattern::Star(n), Some(c), (nodes, witness)))
}

/// Monochromatic subdivided star `K^+_{1,n}`: center `v`, leaf `u`, and a
/// vertex `x` hanging off `u`, with `n` leaves available once `x` is taken.
pub fn find_mono_subdivided_star<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    n: usize,
) -> Result<DetectionReport, DetectError> {
    check_color(g, c)?;
    Pattern::SubdividedStar(n).validate()?;
    let class = g.color_class(c);
    let order = center_order(&class);
    let mut nodes = 0;
    let mut witness = None;
    'centers: for &v in &order {
        let nbhd = class.neighbors(v);
        let d = nbhd.len();
        if d < n {
            break;
        }
        for u in nbhd.iter() {
            for x in class.neighbors(u).iter().filter(|&x| x != v) {
                nodes += 1;
                let usable = if nbhd.contains(x) { d - 1 } else { d };
                if usable >= n {
                    let mut w = vec![v, u];
                    w.extend(nbhd.iter().filter(|&y| y != u && y != x).take(n - 1));
                    w.push(x);
                    witness = Some(w);
                    break 'centers;
                }
            }
        }
    }
    Ok(report(
        Pattern::SubdividedStar(n),
        Some(c),
        (nodes, witness),
    ))
}

/// Pattern vertex order for embedding: breadth-first from high-degree
/// vertices so most positions have an already-placed neighbor.
fn embedding_order(pattern: &SmallGraph) -> Vec<usize> {
    let p = pattern.n();
    let mut order = Vec::with_capacity(p);
    let mut placed = vec![false; p];
    while order.len() < p {
        let root = (0..p)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut nbrs: Vec<usize> = (0..p)
                .filter(|&w| pattern.adjacent(u, w) && !placed[w])
                .collect();
            nbrs.sort_by_key(|&w| (std::cmp::Reverse(pattern.degree(w)), w));
            for w in nbrs {
                placed[w] = true;
                order.push(w);
            }
        }
    }
    order
}

struct Embedder<'a> {
    class: &'a ColorClassView,
    pattern: &'a SmallGraph,
    order: Vec<usize>,
    /// Earlier-placed pattern neighbors of each position.
    back_edges: Vec<Vec<usize>>,
    image: Vec<Vertex>,
    used: Bitset,
    nodes: u64,
}

impl<'a> Embedder<'a> {
    fn new(class: &'a ColorClassView, pattern: &'a SmallGraph) -> Self {
        let order = embedding_order(pattern);
        let back_edges = (0..order.len())
            .map(|i| {
                order[..i]
                    .iter()
                    .copied()
                    .filter(|&w| pattern.adjacent(order[i], w))
                    .collect()
            })
            .collect();
        Self {
            class,
            pattern,
            back_edges,
            image: vec![usize::MAX; pattern.n()],
            used: Bitset::new(class.n()),
            order,
            nodes: 0,
        }
    }

    fn run(&mut self, pos: usize) -> bool {
        self.nodes += 1;
        if pos == self.order.len() {
            return true;
        }
        let pv = self.order[pos];
        let need_degree = self.pattern.degree(pv);
        let candidates: Vec<Vertex> = match self.back_edges[pos].first() {
            Some(&anchor) => self.class.neighbors(self.image[anchor]).iter().collect(),
            None => (0..self.class.n()).collect(),
        };
        for cand in candidates {
            if self.used.contains(cand) || self.class.degree(cand) < need_degree {
                continue;
            }
            if !self.back_edges[pos]
                .iter()
                .all(|&w| self.class.adjacent(cand, self.image[w]))
            {
                continue;
            }
            self.image[pv] = cand;
            self.used.insert(cand);
            if self.run(pos + 1) {
                return true;
            }
            self.used.remove(cand);
        }
        self.image[pv] = usize::MAX;
        false
    }
}

/// Plain backtracking embedding of `pattern` into one color class; the
/// witness lists the image of each pattern vertex in pattern order.
pub fn embed_in_class(class: &ColorClassView, pattern: &SmallGraph) -> (u64, Option<Vec<Vertex>>) {
    if pattern.n() > class.n() {
        return (1, None);
    }
    let mut e = Embedder::new(class, pattern);
    let found = e.run(0);
    (e.nodes, found.then(|| e.image.clone()))
}

/// Ground-truth subgraph search used to cross-check the specialized
/// detectors. Patterns are limited to 9 vertices.
pub fn embed_oracle<G: EdgeColoring + ?Sized>(
    g: &G,
    c: Color,
    pattern: &SmallGraph,
) -> Result<DetectionReport, DetectError> {
    if pattern.n() > ORACLE_MAX_VERTICES {
        return Err(DetectError::PatternTooLarge(pattern.n()));
    }
    check_color(g, c)?;
    let class = g.color_class(c);
    Ok(report(
        Pattern::Custom(pattern.clone()),
        Some(c),
        embed_in_class(&class, pattern),
    ))
}

/// Dispatches to the specialized detector for `pattern`. Custom patterns go
/// through the embedding search; the rainbow triangle ignores `color`.
pub fn detect<G: EdgeColoring + ?Sized>(
    g: &G,
    pattern: &Pattern,
    color: Color,
) -> Result<DetectionReport, DetectError> {
    match *pattern {
        Pattern::RainbowTriangle => Ok(find_rainbow_triangle(g)),
        Pattern::Triangle => find_mono_triangle(g, color),
        Pattern::Fan(n) => find_mono_fan(g, color, n),
        Pattern::Kipas(m) => find_mono_kipas(g, color, m),
        Pattern::Wheel(m) => find_mono_wheel(g, color, m),
        Pattern::Star(n) => find_mono_star(g, color, n),
        Pattern::SubdividedStar(n) => find_mono_subdivided_star(g, color, n),
        Pattern::Path(m) => find_mono_path(g, color, m),
        Pattern::Custom(ref sg) => {
            check_color(g, color)?;
            let class = g.color_class(color);
            Ok(report(
                pattern.clone(),
                Some(color),
                embed_in_class(&class, sg),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredCompleteGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pentagon() -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_fn(5, 2, |u, v| {
            if matches!((v + 5 - u) % 5, 1 | 4) {
                1
            } else {
                2
            }
        })
        .unwrap()
    }

    fn random_graph(n: usize, k: Color, rng: &mut ChaCha8Rng) -> ColoredCompleteGraph {
        ColoredCompleteGraph::from_fn(n, k, |_, _| rng.gen_range(1..=k)).unwrap()
    }

    #[test]
    fn rainbow_examples() {
        let k3 = ColoredCompleteGraph::from_fn(3, 3, |u, v| (u + v) as Color).unwrap();
        let r = find_rainbow_triangle(&k3);
        assert_eq!(r.witness.as_ref().map(Vec::len), Some(3));
        assert!(r.validate(&k3));
        assert!(find_rainbow_triangle(&pentagon()).is_absent());
    }

    #[test]
    fn complete_mono_graph_contains_everything() {
        let k7 = ColoredCompleteGraph::new_complete(7, 1, 1).unwrap();
        for r in [
            find_mono_fan(&k7, 1, 3).unwrap(),
            find_mono_kipas(&k7, 1, 6).unwrap(),
            find_mono_wheel(&k7, 1, 6).unwrap(),
            find_mono_triangle(&k7, 1).unwrap(),
        ] {
            assert!(!r.is_absent(), "{r}");
            assert!(r.validate(&k7), "{r}");
        }
        let k14 = ColoredCompleteGraph::new_complete(14, 1, 1).unwrap();
        let star = find_mono_star(&k14, 1, 12).unwrap();
        let plus = find_mono_subdivided_star(&k14, 1, 12).unwrap();
        assert!(star.validate(&k14) && !star.is_absent());
        assert!(plus.validate(&k14) && !plus.is_absent());
    }

    #[test]
    fn pentagon_paths_and_triangles() {
        let p = pentagon();
        let path = find_mono_path(&p, 1, 4).unwrap();
        assert!(!path.is_absent() && path.validate(&p));
        assert!(find_mono_path(&p, 1, 6).unwrap().is_absent());
        assert!(find_mono_triangle(&p, 1).unwrap().is_absent());
        assert!(
            find_mono_triangle(&ColoredCompleteGraph::new_complete(3, 1, 1).unwrap(), 1)
                .unwrap()
                .witness
                .is_some()
        );
    }

    #[test]
    fn subdivided_star_needs_the_extra_vertex_outside() {
        // K_{1,3} plus x adjacent to a leaf; x also adjacent to the center
        // makes only 3 usable leaves after removing x.
        let mut g = ColoredCompleteGraph::new_complete(5, 2, 2).unwrap();
        for v in 1..=3 {
            g.set_color(0, v, 1).unwrap();
        }
        g.set_color(1, 4, 1).unwrap();
        let r = find_mono_subdivided_star(&g, 1, 3).unwrap();
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3, 4]));
        g.set_color(0, 4, 1).unwrap();
        g.set_color(1, 4, 2).unwrap();
        g.set_color(2, 3, 1).unwrap();
        // center 0 has leaves {1,2,3,4}; x=3 via leaf 2 leaves {1,2,4}
        let r = find_mono_subdivided_star(&g, 1, 3).unwrap();
        assert!(r.validate(&g) && !r.is_absent());
        assert!(find_mono_subdivided_star(&g, 1, 4).unwrap().is_absent());
    }

    #[test]
    fn oracle_rejects_oversized_patterns() {
        let g = pentagon();
        assert_eq!(
            embed_oracle(&g, 1, &SmallGraph::path(10)).unwrap_err(),
            DetectError::PatternTooLarge(10)
        );
        let edge = SmallGraph::complete(2);
        assert!(embed_oracle(&g, 1, &edge).unwrap().witness.is_some());
        assert!(find_mono_fan(&g, 3, 1).is_err());
    }

    #[test]
    fn detectors_agree_with_oracle_on_random_k8() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = random_graph(8, 2, &mut rng);
            for c in 1..=2 {
                let fan = find_mono_fan(&g, c, 3).unwrap();
                let oracle = embed_oracle(&g, c, &Pattern::Fan(3).graph().unwrap()).unwrap();
                assert_eq!(fan.is_absent(), oracle.is_absent());
                assert!(fan.validate(&g));
                let wheel = find_mono_wheel(&g, c, 4).unwrap();
                let oracle = embed_oracle(&g, c, &Pattern::Wheel(4).graph().unwrap()).unwrap();
                assert_eq!(wheel.is_absent(), oracle.is_absent());
                assert!(wheel.validate(&g));
            }
        }
    }

    #[test]
    fn kipas_absence_is_monotone_and_implies_wheel_absence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let g = random_graph(9, 3, &mut rng);
            for c in 1..=3 {
                let mut absent_from = None;
                for m in 2..=7 {
                    let kipas = find_mono_kipas(&g, c, m).unwrap();
                    if kipas.is_absent() {
                        absent_from.get_or_insert(m);
                        if m >= 3 {
                            assert!(find_mono_wheel(&g, c, m).unwrap().is_absent());
                        }
                    } else {
                        assert!(absent_from.is_none(), "kipas reappeared at m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn witness_validation_catches_tampering() {
        let k7 = ColoredCompleteGraph::new_complete(7, 2, 1).unwrap();
        let mut r = find_mono_fan(&k7, 1, 3).unwrap();
        assert!(r.validate(&k7));
        let mut g = k7.clone();
        let w = r.witness.clone().unwrap();
        g.set_color(w[1], w[2], 2).unwrap();
        assert!(!r.validate(&g));
        r.witness = Some(vec![0, 0, 1, 2, 3, 4, 5]);
        assert!(!r.validate(&k7));
    }
}
