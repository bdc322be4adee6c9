//! The explicit colorings: fan towers, the kipas/wheel tower with its
//! gadgets, and the subdivided-star graph.
//!
//! Every `*_recipe` function returns the plan; the matching `build_*`
//! expands it. Color-count parameters are the number of colors of the
//! finished graph (so `g_even_recipe(4, ..)` is the four-colored tower).

use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::detectors::{find_mono_kipas, DetectionReport};
use crate::graph::{
    Color, ColoredCompleteGraph, EdgeColoring, GraphError, PartialColoring, Vertex,
};
use crate::recipe::{Recipe, RecipeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("base coloring uses color {0}; only colors 1 and 2 are allowed")]
    BaseColors(Color),
    #[error("base coloring contains a monochromatic kipas: {0}")]
    BaseHasKipas(DetectionReport),
    #[error("contraction endpoints {0} and {1} disagree on vertex {2}")]
    ContractionMismatch(Vertex, Vertex, Vertex),
    #[error(transparent)]
    Recipe(#[from] RecipeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn param(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::Parameter(msg.into())
}

fn color(c: usize) -> Result<Color, ConstructionError> {
    Color::try_from(c).map_err(|_| param(format!("color {c} does not fit the color type")))
}

fn check_even_m(m: usize) -> Result<(), ConstructionError> {
    if m < 6 || m % 2 != 0 {
        return Err(param(format!("m must be even and at least 6, got {m}")));
    }
    Ok(())
}

/// `H_{k2}`: `H_2` is the pentagon, `H_{2j}` blows `Pentagon(2j-1, 2j)` up
/// with five copies of `H_{2j-2}`. `5^{k2/2}` vertices.
pub fn h_recipe(k2: usize) -> Result<Arc<Recipe>, ConstructionError> {
    if k2 < 2 || k2 % 2 != 0 {
        return Err(param(format!(
            "H needs an even color count of at least 2, got {k2}"
        )));
    }
    let mut h = Recipe::pentagon(1, 2);
    for top in (4..=k2).step_by(2) {
        h = Recipe::blow_up(Recipe::pentagon(color(top - 1)?, color(top)?), vec![h; 5]);
    }
    Ok(h)
}

pub fn build_h(k2: usize) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(h_recipe(k2)?.expand()?)
}

/// The two-color gadget `F(p, q)` for even `m >= 6`.
///
/// `m = 0 mod 4`: two `p`-cliques on `m/2 - 1` vertices joined in `q`.
/// `m = 2 mod 4`: circulant on `m - 1` vertices, distances `1..=(m-2)/4`
/// in `p` and the rest in `q`; both classes are `(m/2 - 1)`-regular.
pub fn f_recipe(p: Color, q: Color, m: usize) -> Result<Arc<Recipe>, ConstructionError> {
    check_even_m(m)?;
    if p == q {
        return Err(param(format!("F needs two distinct colors, got {p} twice")));
    }
    if m % 4 == 0 {
        let half = Recipe::clique(m / 2 - 1, p);
        Ok(Recipe::join(Arc::clone(&half), half, q))
    } else {
        let size = m - 1;
        let low = (m - 2) / 4;
        let ds = (1..=size / 2)
            .map(|d| if d <= low { p } else { q })
            .collect();
        Ok(Recipe::circulant(size, ds))
    }
}

pub fn build_f(p: Color, q: Color, m: usize) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(f_recipe(p, q, m)?.expand()?)
}

/// `H_{k2}[F(p, q)]`: every vertex of `H_{k2}` replaced by `F(p, q)`;
/// `H_0[F] = F`.
pub fn h_of_f_recipe(
    k2: usize,
    p: Color,
    q: Color,
    m: usize,
) -> Result<Arc<Recipe>, ConstructionError> {
    let f = f_recipe(p, q, m)?;
    if k2 == 0 {
        return Ok(f);
    }
    let h = h_recipe(k2)?;
    let parts = vec![f; h.vertex_count()];
    Ok(Recipe::blow_up(h, parts))
}

pub fn build_h_of_f(
    k2: usize,
    p: Color,
    q: Color,
    m: usize,
) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(h_of_f_recipe(k2, p, q, m)?.expand()?)
}

/// `G_{k2}(ell)` with `ell` outside `[1, k2]`. `G_0(ell)` is a `K_{m/2}` in
/// `ell`; otherwise `Pentagon(k2-1, k2)` is blown up with `v1 -> G_{k2-2}(ell)`,
/// `v2, v5 -> H_{k2-2}[F(ell, k2-1)]`, `v3, v4 -> H_{k2-2}[F(ell, k2)]`.
pub fn g_ell_recipe(k2: usize, ell: Color, m: usize) -> Result<Arc<Recipe>, ConstructionError> {
    check_even_m(m)?;
    if k2 % 2 != 0 {
        return Err(param(format!("G(ell) needs an even color count, got {k2}")));
    }
    if ell == 0 || (ell as usize) <= k2 {
        return Err(param(format!("ell = {ell} must lie outside [1, {k2}]")));
    }
    let mut g = Recipe::clique(m / 2, ell);
    for top in (2..=k2).step_by(2) {
        let (a, b) = (color(top - 1)?, color(top)?);
        let fa = h_of_f_recipe(top - 2, ell, a, m)?;
        let fb = h_of_f_recipe(top - 2, ell, b, m)?;
        g = Recipe::blow_up(
            Recipe::pentagon(a, b),
            vec![g, Arc::clone(&fa), Arc::clone(&fb), fb, fa],
        );
    }
    Ok(g)
}

pub fn build_g_ell(
    k2: usize,
    ell: Color,
    m: usize,
) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(g_ell_recipe(k2, ell, m)?.expand()?)
}

/// Checks that `base` is a 2-coloring without a monochromatic `K_1 + P_m`.
pub fn verify_two_color_base(
    base: &ColoredCompleteGraph,
    m: usize,
) -> Result<(), ConstructionError> {
    if let Some(c) = base.max_color_used().filter(|&c| c > 2) {
        return Err(ConstructionError::BaseColors(c));
    }
    let base = if base.k() < 2 {
        base.clone().with_color_count(2)?
    } else {
        base.clone()
    };
    for c in 1..=2 {
        let r = find_mono_kipas(&base, c, m).expect("valid color");
        if !r.is_absent() {
            return Err(ConstructionError::BaseHasKipas(r));
        }
    }
    Ok(())
}

/// The even tower with gadgets sized for `gadget_m`; the base is taken as is.
fn g_even_tower(
    k: usize,
    gadget_m: usize,
    base: Arc<Recipe>,
) -> Result<Arc<Recipe>, ConstructionError> {
    if k < 2 || k % 2 != 0 {
        return Err(param(format!(
            "the even tower needs an even color count of at least 2, got {k}"
        )));
    }
    check_even_m(gadget_m)?;
    let mut g = base;
    for top in (4..=k).step_by(2) {
        let (a, b) = (color(top - 1)?, color(top)?);
        let ga = g_ell_recipe(top - 2, a, gadget_m)?;
        let gb = g_ell_recipe(top - 2, b, gadget_m)?;
        g = Recipe::blow_up(
            Recipe::pentagon(a, b),
            vec![g, Arc::clone(&ga), Arc::clone(&gb), gb, ga],
        );
    }
    Ok(g)
}

/// `G_k` for even `k`: `G_2` is the verified two-color base; `G_{2j}` blows
/// up `Pentagon(2j-1, 2j)` with `v1 -> G_{2j-2}`, `v2, v5 -> G_{2j-2}(2j-1)`,
/// `v3, v4 -> G_{2j-2}(2j)`.
pub fn g_even_recipe(
    k: usize,
    m: usize,
    base: &ColoredCompleteGraph,
) -> Result<Arc<Recipe>, ConstructionError> {
    check_even_m(m)?;
    verify_two_color_base(base, m)?;
    g_even_tower(k, m, Recipe::fixed("base", base.clone()))
}

pub fn build_g_even(
    k: usize,
    m: usize,
    base: &ColoredCompleteGraph,
) -> Result<ColoredCompleteGraph, ConstructionError> {
    let k_colors = color(k)?;
    Ok(g_even_recipe(k, m, base)?.expand_with_colors(k_colors)?)
}

/// Three colors: the pentagon blown up with `K_m` cliques in color 3.
pub fn kipas_k3_recipe(m: usize) -> Result<Arc<Recipe>, ConstructionError> {
    if m < 2 {
        return Err(param(format!("m must be at least 2, got {m}")));
    }
    Ok(Recipe::blow_up(
        Recipe::pentagon(1, 2),
        vec![Recipe::clique(m, 3); 5],
    ))
}

/// Odd `k`. With `base = None` and `k = 3` this is the pentagon variant on
/// `5m` vertices; otherwise two copies of `G_{k-1}` joined in color `k`.
pub fn g_odd_recipe(
    k: usize,
    m: usize,
    base: Option<&ColoredCompleteGraph>,
) -> Result<Arc<Recipe>, ConstructionError> {
    if k < 3 || k % 2 == 0 {
        return Err(param(format!(
            "odd construction needs an odd color count of at least 3, got {k}"
        )));
    }
    check_even_m(m)?;
    match base {
        None if k == 3 => kipas_k3_recipe(m),
        None => Err(param(format!("k = {k} needs a two-color base"))),
        Some(base) => {
            let half = g_even_recipe(k - 1, m, base)?;
            Ok(Recipe::join(Arc::clone(&half), half, color(k)?))
        }
    }
}

pub fn build_g_odd(
    k: usize,
    m: usize,
    base: Option<&ColoredCompleteGraph>,
) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(g_odd_recipe(k, m, base)?.expand_with_colors(color(k)?)?)
}

/// Both three-color constructions, the larger first (ties keep the pentagon).
pub fn kipas_k3_candidates(
    m: usize,
    base: Option<&ColoredCompleteGraph>,
) -> Result<Vec<Arc<Recipe>>, ConstructionError> {
    let mut out = vec![g_odd_recipe(3, m, None)?];
    if let Some(b) = base {
        out.push(g_odd_recipe(3, m, Some(b))?);
    }
    out.sort_by_key(|r| std::cmp::Reverse(r.vertex_count()));
    Ok(out)
}

/// Odd `m >= 7`: the `m - 1` construction with every two-color base slot
/// filled by `base`, which must avoid monochromatic `K_1 + P_m`.
pub fn odd_m_kipas_recipe(
    k: usize,
    m: usize,
    base: &ColoredCompleteGraph,
) -> Result<Arc<Recipe>, ConstructionError> {
    if m < 7 || m % 2 == 0 {
        return Err(param(format!("m must be odd and at least 7, got {m}")));
    }
    if k < 2 {
        return Err(param(format!("k must be at least 2, got {k}")));
    }
    verify_two_color_base(base, m)?;
    let fixed = Recipe::fixed("base", base.clone());
    if k % 2 == 0 {
        g_even_tower(k, m - 1, fixed)
    } else {
        let half = g_even_tower(k - 1, m - 1, fixed)?;
        Ok(Recipe::join(Arc::clone(&half), half, color(k)?))
    }
}

pub fn build_odd_m_kipas(
    k: usize,
    m: usize,
    base: &ColoredCompleteGraph,
) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(odd_m_kipas_recipe(k, m, base)?.expand_with_colors(color(k)?)?)
}

/// `G_3^i`: the pentagon in colors 1, 2 with `v1 -> K_2` in color `i`,
/// `v2, v5 -> K_3` in color 1 and `v3, v4 -> K_3` in color 2.
pub fn fan_g3_recipe(i: Color) -> Result<Arc<Recipe>, ConstructionError> {
    if !(3..=4).contains(&i) {
        return Err(param(format!("G_3^i needs i in {{3, 4}}, got {i}")));
    }
    let red = Recipe::clique(3, 1);
    let blue = Recipe::clique(3, 2);
    Ok(Recipe::blow_up(
        Recipe::pentagon(1, 2),
        vec![
            Recipe::clique(2, i),
            Arc::clone(&red),
            Arc::clone(&blue),
            blue,
            red,
        ],
    ))
}

pub fn build_fan_g3(i: Color) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(fan_g3_recipe(i)?.expand_with_colors(4)?)
}

/// `G_4`: `Pentagon(3, 4)` with `v1, v3, v4 -> G_3^3` and `v2, v5 -> G_3^4`.
pub fn fan_g4_recipe() -> Arc<Recipe> {
    let g33 = fan_g3_recipe(3).expect("valid");
    let g34 = fan_g3_recipe(4).expect("valid");
    Recipe::blow_up(
        Recipe::pentagon(3, 4),
        vec![
            Arc::clone(&g33),
            Arc::clone(&g34),
            Arc::clone(&g33),
            g33,
            g34,
        ],
    )
}

pub fn build_fan_g4() -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(fan_g4_recipe().expand_with_colors(4)?)
}

/// `G_k` for even `k >= 4`: `Pentagon(k-1, k)` blown up with five copies
/// of `G_{k-2}`. `14 * 5^{(k-2)/2}` vertices.
pub fn fan_gk_recipe(k: usize) -> Result<Arc<Recipe>, ConstructionError> {
    if k < 4 || k % 2 != 0 {
        return Err(param(format!(
            "fan tower needs an even k of at least 4, got {k}"
        )));
    }
    let mut g = fan_g4_recipe();
    for top in (6..=k).step_by(2) {
        g = Recipe::blow_up(Recipe::pentagon(color(top - 1)?, color(top)?), vec![g; 5]);
    }
    Ok(g)
}

pub fn build_fan_gk(k: usize) -> Result<ColoredCompleteGraph, ConstructionError> {
    Ok(fan_gk_recipe(k)?.expand_with_colors(color(k)?)?)
}

/// The 13-vertex two-coloring obtained from `G_3^3` by merging the two
/// vertices of the `v1` block into vertex 0.
pub fn contract_fan_base() -> Result<ColoredCompleteGraph, ConstructionError> {
    let g = fan_g3_recipe(3)?.expand()?;
    let (a, b) = (0, 1);
    for x in 2..g.n() {
        if g.color(a, x) != g.color(b, x) {
            return Err(ConstructionError::ContractionMismatch(a, b, x));
        }
    }
    let keep: Vec<Vertex> = std::iter::once(a).chain(2..g.n()).collect();
    let merged = g.induced(&keep)?;
    Ok(merged.with_color_count(2)?)
}

/// The subdivided-star graph `H` and its block layout.
#[derive(Clone, Debug)]
pub struct StarConstruction {
    pub graph: ColoredCompleteGraph,
    pub n: usize,
    pub k: usize,
    /// `V_1 .. V_5`.
    pub blocks: Vec<Range<Vertex>>,
    /// `v_1 .. v_{k-3}`; `v_i` is joined to everything before it in color `i + 3`.
    pub apexes: Vec<Vertex>,
}

pub fn star_h_recipe(n: usize, k: usize) -> Result<Arc<Recipe>, ConstructionError> {
    if n < 12 || n % 2 != 0 {
        return Err(param(format!("n must be even and at least 12, got {n}")));
    }
    if k < 3 {
        return Err(param(format!("k must be at least 3, got {k}")));
    }
    let small = Recipe::clique(n / 2 - 1, 3);
    let mut h = Recipe::blow_up(
        Recipe::pentagon(1, 2),
        vec![
            Recipe::clique(n / 2, 3),
            Arc::clone(&small),
            Arc::clone(&small),
            Arc::clone(&small),
            small,
        ],
    );
    for i in 1..=k - 3 {
        h = Recipe::add_apex(h, color(i + 3)?);
    }
    Ok(h)
}

/// `H` on `5n/2 + k - 7` vertices: the pentagon blown up with `K_{n/2}` and
/// four `K_{n/2-1}` in color 3, then `k - 3` apex vertices in colors `4..=k`.
pub fn build_star_h(n: usize, k: usize) -> Result<StarConstruction, ConstructionError> {
    let graph = star_h_recipe(n, k)?.expand_with_colors(color(k)?)?;
    let sizes = [n / 2, n / 2 - 1, n / 2 - 1, n / 2 - 1, n / 2 - 1];
    let mut blocks = Vec::with_capacity(5);
    let mut start = 0;
    for s in sizes {
        blocks.push(start..start + s);
        start += s;
    }
    let apexes = (start..start + k - 3).collect();
    Ok(StarConstruction {
        graph,
        n,
        k,
        blocks,
        apexes,
    })
}

/// Adds `w` joined to `v_i` in color `i + 3`, to `V_1 ∪ V_3` in color 1 and
/// to `V_2 ∪ V_5` in color 2; pairs between `w` and `V_4` stay absent.
/// Returns the coloring and the degree of `w`.
pub fn extend_with_w(h: &StarConstruction) -> Result<(PartialColoring, usize), ConstructionError> {
    let n = h.graph.n();
    let w = n;
    let mut p = PartialColoring::from_complete(&h.graph, n + 1)?;
    for (i, &apex) in h.apexes.iter().enumerate() {
        p.set_color(w, apex, Some(color(i + 4)?))?;
    }
    for (block, c) in [(0, 1), (2, 1), (1, 2), (4, 2)] {
        for v in h.blocks[block].clone() {
            p.set_color(w, v, Some(c))?;
        }
    }
    let degree = (0..n).filter(|&v| p.edge_color(w, v).is_some()).count();
    Ok((p, degree))
}
