//! Tree-shaped construction plans that expand to colored complete graphs.
//!
//! Expansion numbers vertices depth-first: the blocks of a blow-up are laid
//! out contiguously in base-vertex order, a join puts the left side first,
//! and an apex is always the last vertex. Shared subtrees (`Arc`) are
//! expanded once.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::graph::{Color, ColoredCompleteGraph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("blow-up base has {expected} vertices but {got} parts were given")]
    PartsMismatch { expected: usize, got: usize },
    #[error("circulant on {size} vertices needs {expected} distance colors, got {got}")]
    CirculantDistances {
        size: usize,
        expected: usize,
        got: usize,
    },
    #[error("{0} must have at least one vertex")]
    Empty(&'static str),
    #[error("color {color} outside the ambient range [1, {k}]")]
    ColorOutOfRange { color: Color, k: Color },
    #[error("pentagon needs two distinct colors, got {0} twice")]
    PentagonColors(Color),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone)]
pub enum Recipe {
    /// `K_5` whose `cycle` edges form `v1 v2 v3 v4 v5 v1` and whose `chord`
    /// edges form `v1 v3 v5 v2 v4 v1`.
    Pentagon {
        cycle: Color,
        chord: Color,
    },
    Clique {
        size: usize,
        color: Color,
    },
    /// `distance_colors[d - 1]` colors every pair at cyclic distance `d`.
    Circulant {
        size: usize,
        distance_colors: Vec<Color>,
    },
    /// Each base vertex replaced by the matching part; cross edges inherit
    /// the base edge color.
    BlowUp {
        base: Arc<Recipe>,
        parts: Vec<Arc<Recipe>>,
    },
    Join {
        left: Arc<Recipe>,
        right: Arc<Recipe>,
        color: Color,
    },
    AddApex {
        base: Arc<Recipe>,
        color: Color,
    },
    /// An externally supplied coloring, such as a two-color base.
    Fixed {
        name: String,
        graph: Arc<ColoredCompleteGraph>,
    },
}

impl fmt::Debug for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

type Memo<T> = HashMap<*const Recipe, T>;

impl Recipe {
    pub fn pentagon(cycle: Color, chord: Color) -> Arc<Self> {
        Arc::new(Recipe::Pentagon { cycle, chord })
    }

    pub fn clique(size: usize, color: Color) -> Arc<Self> {
        Arc::new(Recipe::Clique { size, color })
    }

    pub fn circulant(size: usize, distance_colors: Vec<Color>) -> Arc<Self> {
        Arc::new(Recipe::Circulant {
            size,
            distance_colors,
        })
    }

    pub fn blow_up(base: Arc<Self>, parts: Vec<Arc<Self>>) -> Arc<Self> {
        Arc::new(Recipe::BlowUp { base, parts })
    }

    pub fn join(left: Arc<Self>, right: Arc<Self>, color: Color) -> Arc<Self> {
        Arc::new(Recipe::Join { left, right, color })
    }

    pub fn add_apex(base: Arc<Self>, color: Color) -> Arc<Self> {
        Arc::new(Recipe::AddApex { base, color })
    }

    pub fn fixed(name: impl Into<String>, graph: ColoredCompleteGraph) -> Arc<Self> {
        Arc::new(Recipe::Fixed {
            name: name.into(),
            graph: Arc::new(graph),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.count_memo(&mut HashMap::new())
    }

    fn count_memo(&self, memo: &mut Memo<usize>) -> usize {
        let key = self as *const Recipe;
        if let Some(&n) = memo.get(&key) {
            return n;
        }
        let n = match self {
            Recipe::Pentagon { .. } => 5,
            Recipe::Clique { size, .. } | Recipe::Circulant { size, .. } => *size,
            Recipe::BlowUp { parts, .. } => parts.iter().map(|p| p.count_memo(memo)).sum(),
            Recipe::Join { left, right, .. } => left.count_memo(memo) + right.count_memo(memo),
            Recipe::AddApex { base, .. } => base.count_memo(memo) + 1,
            Recipe::Fixed { graph, .. } => graph.n(),
        };
        memo.insert(key, n);
        n
    }

    /// Largest color referenced anywhere in the tree.
    pub fn max_color(&self) -> Color {
        self.max_color_memo(&mut HashMap::new())
    }

    fn max_color_memo(&self, memo: &mut Memo<Color>) -> Color {
        let key = self as *const Recipe;
        if let Some(&c) = memo.get(&key) {
            return c;
        }
        let c = match self {
            Recipe::Pentagon { cycle, chord } => (*cycle).max(*chord),
            Recipe::Clique { color, .. } => *color,
            Recipe::Circulant {
                distance_colors, ..
            } => distance_colors.iter().copied().max().unwrap_or(0),
            Recipe::BlowUp { base, parts } => {
                let mut c = base.max_color_memo(memo);
                for p in parts {
                    c = c.max(p.max_color_memo(memo));
                }
                c
            }
            Recipe::Join { left, right, color } => (*color)
                .max(left.max_color_memo(memo))
                .max(right.max_color_memo(memo)),
            Recipe::AddApex { base, color } => (*color).max(base.max_color_memo(memo)),
            Recipe::Fixed { graph, .. } => graph.max_color_used().unwrap_or(0),
        };
        memo.insert(key, c);
        c
    }

    /// Checks structural invariants and that every color lies in `[1, k]`.
    pub fn validate(&self, k: Color) -> Result<(), RecipeError> {
        self.validate_memo(k, &mut HashMap::new())
    }

    fn validate_memo(&self, k: Color, memo: &mut Memo<()>) -> Result<(), RecipeError> {
        let key = self as *const Recipe;
        if memo.contains_key(&key) {
            return Ok(());
        }
        let color_ok = |color: Color| {
            if color == 0 || color > k {
                Err(RecipeError::ColorOutOfRange { color, k })
            } else {
                Ok(())
            }
        };
        match self {
            Recipe::Pentagon { cycle, chord } => {
                color_ok(*cycle)?;
                color_ok(*chord)?;
                if cycle == chord {
                    return Err(RecipeError::PentagonColors(*cycle));
                }
            }
            Recipe::Clique { size, color } => {
                if *size == 0 {
                    return Err(RecipeError::Empty("clique"));
                }
                color_ok(*color)?;
            }
            Recipe::Circulant {
                size,
                distance_colors,
            } => {
                if *size == 0 {
                    return Err(RecipeError::Empty("circulant"));
                }
                if distance_colors.len() != size / 2 {
                    return Err(RecipeError::CirculantDistances {
                        size: *size,
                        expected: size / 2,
                        got: distance_colors.len(),
                    });
                }
                distance_colors.iter().try_for_each(|&c| color_ok(c))?;
            }
            Recipe::BlowUp { base, parts } => {
                let expected = base.vertex_count();
                if parts.len() != expected {
                    return Err(RecipeError::PartsMismatch {
                        expected,
                        got: parts.len(),
                    });
                }
                base.validate_memo(k, memo)?;
                for p in parts {
                    p.validate_memo(k, memo)?;
                }
            }
            Recipe::Join { left, right, color } => {
                color_ok(*color)?;
                left.validate_memo(k, memo)?;
                right.validate_memo(k, memo)?;
            }
            Recipe::AddApex { base, color } => {
                color_ok(*color)?;
                base.validate_memo(k, memo)?;
            }
            Recipe::Fixed { graph, .. } => {
                if let Some(c) = graph.max_color_used() {
                    color_ok(c)?;
                }
            }
        }
        memo.insert(key, ());
        Ok(())
    }

    /// Expands with the ambient color count set to the largest color used.
    pub fn expand(&self) -> Result<ColoredCompleteGraph, RecipeError> {
        self.expand_with_colors(self.max_color().max(1))
    }

    pub fn expand_with_colors(&self, k: Color) -> Result<ColoredCompleteGraph, RecipeError> {
        self.validate(k)?;
        let g = self.expand_memo(k, &mut HashMap::new())?;
        Ok(Arc::try_unwrap(g).unwrap_or_else(|shared| (*shared).clone()))
    }

    fn expand_memo(
        &self,
        k: Color,
        memo: &mut Memo<Arc<ColoredCompleteGraph>>,
    ) -> Result<Arc<ColoredCompleteGraph>, RecipeError> {
        let key = self as *const Recipe;
        if let Some(g) = memo.get(&key) {
            return Ok(Arc::clone(g));
        }
        let g = match self {
            Recipe::Pentagon { cycle, chord } => ColoredCompleteGraph::from_fn(5, k, |u, v| {
                if matches!((v + 5 - u) % 5, 1 | 4) {
                    *cycle
                } else {
                    *chord
                }
            })?,
            Recipe::Clique { size, color } => ColoredCompleteGraph::new_complete(*size, k, *color)?,
            Recipe::Circulant {
                size,
                distance_colors,
            } => ColoredCompleteGraph::from_fn(*size, k, |u, v| {
                let d = v.abs_diff(u);
                distance_colors[d.min(size - d) - 1]
            })?,
            Recipe::BlowUp { base, parts } => {
                let base_g = base.expand_memo(k, memo)?;
                let part_gs = parts
                    .iter()
                    .map(|p| p.expand_memo(k, memo))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut block = Vec::new();
                let mut local = Vec::new();
                for (i, pg) in part_gs.iter().enumerate() {
                    for j in 0..pg.n() {
                        block.push(i);
                        local.push(j);
                    }
                }
                ColoredCompleteGraph::from_fn(block.len(), k, |u, v| {
                    if block[u] == block[v] {
                        part_gs[block[u]].color(local[u], local[v])
                    } else {
                        base_g.color(block[u], block[v])
                    }
                })?
            }
            Recipe::Join { left, right, color } => {
                let l = left.expand_memo(k, memo)?;
                let r = right.expand_memo(k, memo)?;
                let nl = l.n();
                ColoredCompleteGraph::from_fn(nl + r.n(), k, |u, v| match (u < nl, v < nl) {
                    (true, true) => l.color(u, v),
                    (false, false) => r.color(u - nl, v - nl),
                    _ => *color,
                })?
            }
            Recipe::AddApex { base, color } => {
                let b = base.expand_memo(k, memo)?;
                let nb = b.n();
                ColoredCompleteGraph::from_fn(nb + 1, k, |u, v| {
                    if v == nb {
                        *color
                    } else {
                        b.color(u, v)
                    }
                })?
            }
            Recipe::Fixed { graph, .. } => {
                if graph.k() == k {
                    (**graph).clone()
                } else {
                    (**graph).clone().with_color_count(k)?
                }
            }
        };
        let g = Arc::new(g);
        memo.insert(key, Arc::clone(&g));
        Ok(g)
    }

    /// Vertex ranges of the outermost decomposition: blow-up blocks, the
    /// two sides of a join, or the base plus the apex.
    pub fn top_level_blocks(&self) -> Option<Vec<Range<usize>>> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut push = |len: usize| {
            out.push(start..start + len);
            start += len;
        };
        match self {
            Recipe::BlowUp { parts, .. } => parts.iter().for_each(|p| push(p.vertex_count())),
            Recipe::Join { left, right, .. } => {
                push(left.vertex_count());
                push(right.vertex_count());
            }
            Recipe::AddApex { base, .. } => {
                push(base.vertex_count());
                push(1);
            }
            _ => return None,
        }
        Some(out)
    }

    /// One node per line, children indented; shared subtrees are printed in
    /// full each time they occur, so deep blow-ups print compactly only up
    /// to `depth`.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        self.write_sexpr(&mut out, 0, 4);
        out
    }

    fn write_sexpr(&self, out: &mut String, indent: usize, depth: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Recipe::Pentagon { cycle, chord } => {
                out.push_str(&format!("{pad}(pentagon {cycle} {chord})"))
            }
            Recipe::Clique { size, color } => {
                out.push_str(&format!("{pad}(clique {size} {color})"))
            }
            Recipe::Circulant {
                size,
                distance_colors,
            } => {
                let ds: Vec<String> = distance_colors.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("{pad}(circulant {size} {})", ds.join(" ")));
            }
            Recipe::Fixed { name, graph } => {
                out.push_str(&format!("{pad}(fixed {name} {})", graph.n()))
            }
            _ if depth == 0 => {
                out.push_str(&format!("{pad}(... {} vertices)", self.vertex_count()))
            }
            Recipe::BlowUp { base, parts } => {
                out.push_str(&format!("{pad}(blowup\n"));
                base.write_sexpr(out, indent + 1, depth - 1);
                // collapse runs of the same shared part
                let mut i = 0;
                while i < parts.len() {
                    let mut j = i + 1;
                    while j < parts.len() && Arc::ptr_eq(&parts[i], &parts[j]) {
                        j += 1;
                    }
                    out.push('\n');
                    if j - i > 1 {
                        out.push_str(&format!("{}(repeat {}\n", "  ".repeat(indent + 1), j - i));
                        parts[i].write_sexpr(out, indent + 2, depth - 1);
                        out.push(')');
                    } else {
                        parts[i].write_sexpr(out, indent + 1, depth - 1);
                    }
                    i = j;
                }
                out.push(')');
            }
            Recipe::Join { left, right, color } => {
                out.push_str(&format!("{pad}(join {color}\n"));
                left.write_sexpr(out, indent + 1, depth - 1);
                out.push('\n');
                right.write_sexpr(out, indent + 1, depth - 1);
                out.push(')');
            }
            Recipe::AddApex { base, color } => {
                out.push_str(&format!("{pad}(apex {color}\n"));
                base.write_sexpr(out, indent + 1, depth - 1);
                out.push(')');
            }
        }
    }
}

/// Parses the s-expression form produced by [`Recipe::to_sexpr`] (without
/// `fixed` or elided nodes): `(pentagon a b)`, `(clique s c)`,
/// `(circulant s c1 c2 ...)`, `(blowup BASE PART...)`, `(repeat r PART)`
/// inside a blow-up, `(join c L R)`, `(apex c BASE)`.
pub fn parse_sexpr(text: &str) -> Result<Arc<Recipe>, String> {
    let tokens: Vec<String> = text
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
        .map(str::to_string)
        .collect();
    let mut pos = 0;
    let nodes = parse_node(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(format!("unexpected trailing token {:?}", tokens[pos]));
    }
    match nodes.as_slice() {
        [single] => Ok(Arc::clone(single)),
        _ => Err("`repeat` is only allowed inside a blowup".into()),
    }
}

fn parse_num<T: std::str::FromStr>(tokens: &[String], pos: &mut usize) -> Result<T, String> {
    let tok = tokens.get(*pos).ok_or("unexpected end of recipe")?;
    *pos += 1;
    tok.parse()
        .map_err(|_| format!("expected a number, got {tok:?}"))
}

/// Returns one node, or several for `(repeat r X)`.
fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Vec<Arc<Recipe>>, String> {
    if tokens.get(*pos).map(String::as_str) != Some("(") {
        return Err(format!("expected `(` at token {pos}"));
    }
    *pos += 1;
    let head = tokens.get(*pos).ok_or("unexpected end of recipe")?.clone();
    *pos += 1;
    let node = match head.as_str() {
        "pentagon" => vec![Recipe::pentagon(
            parse_num(tokens, pos)?,
            parse_num(tokens, pos)?,
        )],
        "clique" => vec![Recipe::clique(
            parse_num(tokens, pos)?,
            parse_num(tokens, pos)?,
        )],
        "circulant" => {
            let size = parse_num(tokens, pos)?;
            let mut ds = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                ds.push(parse_num(tokens, pos)?);
            }
            vec![Recipe::circulant(size, ds)]
        }
        "blowup" => {
            let base = parse_single(tokens, pos)?;
            let mut parts = Vec::new();
            while tokens.get(*pos).map(String::as_str) == Some("(") {
                parts.extend(parse_node(tokens, pos)?);
            }
            vec![Recipe::blow_up(base, parts)]
        }
        "repeat" => {
            let r: usize = parse_num(tokens, pos)?;
            let inner = parse_single(tokens, pos)?;
            vec![inner; r]
        }
        "join" => {
            let color = parse_num(tokens, pos)?;
            let l = parse_single(tokens, pos)?;
            let r = parse_single(tokens, pos)?;
            vec![Recipe::join(l, r, color)]
        }
        "apex" => {
            let color = parse_num(tokens, pos)?;
            vec![Recipe::add_apex(parse_single(tokens, pos)?, color)]
        }
        other => return Err(format!("unknown recipe node {other:?}")),
    };
    if tokens.get(*pos).map(String::as_str) != Some(")") {
        return Err(format!("expected `)` after {head}"));
    }
    *pos += 1;
    Ok(node)
}

fn parse_single(tokens: &[String], pos: &mut usize) -> Result<Arc<Recipe>, String> {
    let mut nodes = parse_node(tokens, pos)?;
    if nodes.len() != 1 {
        return Err("`repeat` is only allowed directly inside a blowup".into());
    }
    Ok(nodes.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_classes_are_five_cycles() {
        let g = Recipe::pentagon(1, 2).expand().unwrap();
        for c in 1..=2 {
            for v in 0..5 {
                assert_eq!(g.color_degree(v, c).unwrap(), 2);
            }
            assert_eq!(g.mono_components(c).unwrap().len(), 1);
        }
        assert_eq!(g.color(0, 1), 1);
        assert_eq!(g.color(0, 2), 2);
    }

    #[test]
    fn singleton_parts_are_identity() {
        let p = Recipe::pentagon(1, 2);
        let b = Recipe::blow_up(Arc::clone(&p), vec![Recipe::clique(1, 1); 5]);
        assert_eq!(b.expand().unwrap(), p.expand().unwrap());
    }

    #[test]
    fn blow_up_of_cliques_by_block_arithmetic() {
        let r = Recipe::blow_up(Recipe::pentagon(3, 4), vec![Recipe::clique(5, 1); 5]);
        let g = r.expand().unwrap();
        assert_eq!(g.n(), 25);
        for (u, v, c) in g.edges() {
            let (bu, bv) = (u / 5, v / 5);
            if bu == bv {
                assert_eq!(c, 1);
            } else {
                let d = bv.abs_diff(bu);
                assert_eq!(c, if d == 1 || d == 4 { 3 } else { 4 });
            }
        }
    }

    #[test]
    fn join_and_apex_layout() {
        let r = Recipe::add_apex(
            Recipe::join(Recipe::clique(2, 1), Recipe::clique(3, 2), 3),
            4,
        );
        let g = r.expand().unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.k(), 4);
        assert_eq!(g.color(0, 1), 1);
        assert_eq!(g.color(2, 4), 2);
        assert_eq!(g.color(1, 2), 3);
        assert!((0..5).all(|v| g.color(v, 5) == 4));
        assert_eq!(r.top_level_blocks().unwrap(), vec![0..5, 5..6]);
    }

    #[test]
    fn invalid_recipes_are_rejected() {
        let bad = Recipe::blow_up(Recipe::pentagon(1, 2), vec![Recipe::clique(1, 1); 4]);
        assert_eq!(
            bad.expand().unwrap_err(),
            RecipeError::PartsMismatch {
                expected: 5,
                got: 4
            }
        );
        let bad = Recipe::circulant(7, vec![1, 2]);
        assert!(matches!(
            bad.expand(),
            Err(RecipeError::CirculantDistances { .. })
        ));
        let bad = Recipe::clique(3, 5);
        assert!(matches!(
            bad.expand_with_colors(4),
            Err(RecipeError::ColorOutOfRange { color: 5, k: 4 })
        ));
        assert!(Recipe::pentagon(2, 2).expand().is_err());
    }

    #[test]
    fn sexpr_round_trip() {
        let r = Recipe::blow_up(
            Recipe::pentagon(3, 4),
            vec![
                Recipe::clique(2, 1),
                Recipe::circulant(5, vec![1, 2]),
                Recipe::circulant(5, vec![1, 2]),
                Recipe::join(Recipe::clique(1, 1), Recipe::clique(2, 2), 1),
                Recipe::add_apex(Recipe::clique(2, 2), 1),
            ],
        );
        let text = r.to_sexpr();
        let back = parse_sexpr(&text).unwrap();
        assert_eq!(back.expand().unwrap(), r.expand().unwrap());
        let rep = parse_sexpr("(blowup (pentagon 1 2) (repeat 5 (clique 2 3)))").unwrap();
        assert_eq!(rep.vertex_count(), 10);
        assert!(parse_sexpr("(blowup (pentagon 1 2) (clique 1 1)").is_err());
        assert!(parse_sexpr("(hexagon 1 2)").is_err());
    }

    #[test]
    fn expansion_is_deterministic() {
        let r = Recipe::blow_up(
            Recipe::pentagon(1, 2),
            vec![Recipe::circulant(9, vec![1, 1, 2, 2]); 5],
        );
        assert_eq!(r.expand().unwrap(), r.expand().unwrap());
    }
}
