//! Gallai partitions: checking a claimed partition and, for small graphs,
//! finding one by exhaustive search.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Color, ColoredCompleteGraph, Vertex};

/// Largest vertex count accepted by [`find_partition`].
pub const FIND_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a Gallai partition needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {0} appears in more than one part")]
    Overlap(Vertex),
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex {0} is not covered by any part")]
    Uncovered(Vertex),
    #[error("exhaustive search is limited to {FIND_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    pub parts: Vec<Vec<Vertex>>,
}

impl PartitionSpec {
    pub fn new(parts: Vec<Vec<Vertex>>) -> Self {
        Self { parts }
    }

    pub fn from_ranges(ranges: &[std::ops::Range<Vertex>]) -> Self {
        Self {
            parts: ranges.iter().map(|r| r.clone().collect()).collect(),
        }
    }

    /// Block index of every vertex, after checking the partition covers
    /// `0..n` with at least two disjoint nonempty parts.
    pub fn block_map(&self, n: usize) -> Result<Vec<usize>, PartitionError> {
        if self.parts.len() < 2 {
            return Err(PartitionError::TooFewParts(self.parts.len()));
        }
        let mut block = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(i));
            }
            for &v in part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if block[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                block[v] = i;
            }
        }
        if let Some(v) = block.iter().position(|&b| b == usize::MAX) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(block)
    }

    /// One part per line, vertices separated by whitespace; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut parts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let part = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<Vertex>().map_err(|_| PartitionError::Parse {
                        line: i + 1,
                        msg: format!("bad vertex {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            parts.push(part);
        }
        Ok(Self { parts })
    }
}

impl fmt::Display for PartitionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for part in &self.parts {
            let line: Vec<String> = part.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionCheck {
    pub valid: bool,
    pub cross_colors: BTreeSet<Color>,
    /// Human-readable reason when invalid.
    pub violation: Option<String>,
}

/// True iff every pair of parts is joined in a single color and at most two
/// colors appear between parts overall.
pub fn verify_partition(
    g: &ColoredCompleteGraph,
    p: &PartitionSpec,
) -> Result<PartitionCheck, PartitionError> {
    p.block_map(g.n())?;
    let mut cross_colors = BTreeSet::new();
    for i in 0..p.parts.len() {
        for j in i + 1..p.parts.len() {
            let mut pair_color = None;
            for &u in &p.parts[i] {
                for &v in &p.parts[j] {
                    let c = g.color(u, v);
                    match pair_color {
                        None => pair_color = Some(c),
                        Some(pc) if pc != c => {
                            return Ok(PartitionCheck {
                                valid: false,
                                cross_colors,
                                violation: Some(format!(
                                    "parts {i} and {j} are joined in colors {pc} and {c} (edge {u}-{v})"
                                )),
                            });
                        }
                        _ => {}
                    }
                }
            }
            cross_colors.insert(pair_color.expect("parts are nonempty"));
        }
    }
    if cross_colors.len() > 2 {
        let violation = Some(format!(
            "{} colors between parts: {:?}",
            cross_colors.len(),
            cross_colors
        ));
        return Ok(PartitionCheck {
            valid: false,
            cross_colors,
            violation,
        });
    }
    Ok(PartitionCheck {
        valid: true,
        cross_colors,
        violation: None,
    })
}

struct Finder<'a> {
    g: &'a ColoredCompleteGraph,
    block: Vec<usize>,
    /// Color between blocks `a` and `b`, 0 if not fixed yet.
    pair: Vec<Vec<Color>>,
    /// Multiplicity of each cross color among fixed block pairs.
    color_uses: Vec<usize>,
    distinct: usize,
    blocks: usize,
}

impl Finder<'_> {
    fn search(&mut self, v: Vertex) -> bool {
        let n = self.g.n();
        if v == n {
            return self.blocks >= 2;
        }
        // v either opens a new block or joins an existing one
        for b in 0..=self.blocks {
            let mut newly_fixed: Vec<(usize, usize)> = Vec::new();
            let mut ok = true;
            for u in 0..v {
                let bu = self.block[u];
                if bu == b {
                    continue;
                }
                let c = self.g.color(u, v);
                let (x, y) = (bu.min(b), bu.max(b));
                let fixed = self.pair[x][y];
                if fixed == 0 {
                    self.pair[x][y] = c;
                    if self.color_uses[c as usize] == 0 {
                        self.distinct += 1;
                    }
                    self.color_uses[c as usize] += 1;
                    newly_fixed.push((x, y));
                    if self.distinct > 2 {
                        ok = false;
                        break;
                    }
                } else if fixed != c {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.block[v] = b;
                let opened = b == self.blocks;
                if opened {
                    self.blocks += 1;
                }
                if self.search(v + 1) {
                    return true;
                }
                if opened {
                    self.blocks -= 1;
                }
            }
            for (x, y) in newly_fixed {
                let c = self.pair[x][y] as usize;
                self.color_uses[c] -= 1;
                if self.color_uses[c] == 0 {
                    self.distinct -= 1;
                }
                self.pair[x][y] = 0;
            }
        }
        false
    }
}

/// Exhaustive search over set partitions (at most 12 vertices), pruned as
/// soon as a block pair sees two colors or a third cross color appears.
pub fn find_partition(g: &ColoredCompleteGraph) -> Result<Option<PartitionSpec>, PartitionError> {
    let n = g.n();
    if n > FIND_MAX_VERTICES {
        return Err(PartitionError::TooLarge(n));
    }
    if n < 2 {
        return Ok(None);
    }
    let mut f = Finder {
        g,
        block: vec![usize::MAX; n],
        pair: vec![vec![0; n]; n],
        color_uses: vec![0; g.k() as usize + 1],
        distinct: 0,
        blocks: 0,
    };
    if !f.search(0) {
        return Ok(None);
    }
    let mut parts = vec![Vec::new(); f.blocks];
    for (v, &b) in f.block.iter().enumerate() {
        parts[b].push(v);
    }
    Ok(Some(PartitionSpec { parts }))
}
