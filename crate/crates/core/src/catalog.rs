//! Named constructions with their parameter schemas and the detector checks
//! that certify them. Every `*_recipe` builder in [`crate::constructions`]
//! has exactly one entry here.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::bounds::{certify, certify_extension, Certification, CertifyError, VerificationRequest};
use crate::certificate::{write_certificate, write_partial_certificate, CertificateFile};
use crate::constructions::{self as cons, ConstructionError};
use crate::graph::{Color, ColoredCompleteGraph, GraphError, PartialColoring, Vertex};
use crate::oracle::{trivial_base, OracleError};
use crate::pattern::Pattern;
use crate::recipe::Recipe;

/// Recipes longer than this are left out of certificate metadata.
const RECIPE_METADATA_LIMIT: usize = 4096;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown construction {0:?}; see the catalog listing")]
    UnknownEntry(String),
    #[error("{entry}: missing required parameter --{param}")]
    MissingParam {
        entry: &'static str,
        param: &'static str,
    },
    #[error("{entry}: unknown parameter --{param}")]
    UnknownParam { entry: &'static str, param: String },
    #[error("{entry}: parameter --{param} = {value} is out of range")]
    BadParam {
        entry: &'static str,
        param: &'static str,
        value: i64,
    },
    #[error("{0}: does not take a base coloring")]
    UnexpectedBase(&'static str),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    /// Present or absent; stored as 1 or 0.
    Flag,
}

#[derive(Clone, Copy, Debug)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    /// `None` makes the parameter required.
    pub default: Option<i64>,
    pub help: &'static str,
}

const fn int(name: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Int,
        default: None,
        help,
    }
}

const fn flag(name: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Flag,
        default: Some(0),
        help,
    }
}

/// Resolved parameters handed to a factory.
pub struct Args {
    entry: &'static str,
    values: BTreeMap<&'static str, i64>,
    base: Option<ColoredCompleteGraph>,
}

impl Args {
    fn get(&self, name: &'static str) -> i64 {
        self.values[name]
    }

    fn usize_at_least(&self, name: &'static str, min: i64) -> Result<usize, CatalogError> {
        let v = self.get(name);
        if v < min {
            return Err(CatalogError::BadParam {
                entry: self.entry,
                param: name,
                value: v,
            });
        }
        usize::try_from(v).map_err(|_| CatalogError::BadParam {
            entry: self.entry,
            param: name,
            value: v,
        })
    }

    fn color(&self, name: &'static str) -> Result<Color, CatalogError> {
        let v = self.get(name);
        Color::try_from(v)
            .ok()
            .filter(|&c| c >= 1)
            .ok_or(CatalogError::BadParam {
                entry: self.entry,
                param: name,
                value: v,
            })
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    /// The mathematical object this entry builds.
    pub describes: &'static str,
    pub params: &'static [ParamSpec],
    /// Whether `--base` is accepted; entries that take one fall back to
    /// [`trivial_base`].
    pub takes_base: bool,
    /// Human summary of the checks in [`Built::requests`].
    pub verifies: &'static str,
    factory: fn(&Args) -> Result<Built, CatalogError>,
}

impl CatalogEntry {
    /// Checks `values` against the schema, fills defaults and builds.
    pub fn build(
        &self,
        values: &BTreeMap<String, i64>,
        base: Option<ColoredCompleteGraph>,
    ) -> Result<Built, CatalogError> {
        if let Some(extra) = values
            .keys()
            .find(|k| !self.params.iter().any(|p| p.name == k.as_str()))
        {
            return Err(CatalogError::UnknownParam {
                entry: self.name,
                param: extra.clone(),
            });
        }
        if base.is_some() && !self.takes_base {
            return Err(CatalogError::UnexpectedBase(self.name));
        }
        let mut resolved = BTreeMap::new();
        for p in self.params {
            let v =
                values
                    .get(p.name)
                    .copied()
                    .or(p.default)
                    .ok_or(CatalogError::MissingParam {
                        entry: self.name,
                        param: p.name,
                    })?;
            resolved.insert(p.name, v);
        }
        (self.factory)(&Args {
            entry: self.name,
            values: resolved,
            base,
        })
    }
}

#[derive(Clone, Debug)]
pub enum BuiltColoring {
    Complete(ColoredCompleteGraph),
    /// A complete graph plus one extra vertex `w` missing some pairs.
    Extended {
        coloring: PartialColoring,
        w: Vertex,
    },
}

#[derive(Clone, Debug)]
pub struct Built {
    pub entry: &'static str,
    pub params: Vec<(String, i64)>,
    pub coloring: BuiltColoring,
    pub recipe: Option<Arc<Recipe>>,
    pub requests: Vec<VerificationRequest>,
    /// Provenance of the base and variant choices.
    pub metadata: Vec<(String, String)>,
}

impl Built {
    pub fn vertex_count(&self) -> usize {
        match &self.coloring {
            BuiltColoring::Complete(g) => g.n(),
            BuiltColoring::Extended { coloring, .. } => coloring.n(),
        }
    }

    pub fn graph(&self) -> Option<&ColoredCompleteGraph> {
        match &self.coloring {
            BuiltColoring::Complete(g) => Some(g),
            BuiltColoring::Extended { .. } => None,
        }
    }

    fn all_metadata(&self) -> Vec<(String, String)> {
        let mut meta = self.metadata.clone();
        if let Some(r) = &self.recipe {
            let text = r
                .to_sexpr()
                .split_whitespace()
                .collect::<Vec<_>>()
                .join(" ");
            if text.len() <= RECIPE_METADATA_LIMIT {
                meta.push(("recipe-tree".into(), text));
            }
        }
        meta
    }

    /// The certificate written by `construct`: the coloring, its parameters
    /// and the checks still to be run.
    pub fn certificate(&self) -> CertificateFile {
        let mut meta = vec![("recipe".to_string(), self.entry.to_string())];
        for (k, v) in &self.params {
            meta.push((format!("param.{k}"), v.to_string()));
        }
        for req in &self.requests {
            meta.push(("requires".to_string(), request_text(req)));
        }
        meta.extend(self.all_metadata());
        match &self.coloring {
            BuiltColoring::Complete(g) => write_certificate(g, &meta),
            BuiltColoring::Extended { coloring, w } => {
                meta.push(("extra-vertex".into(), w.to_string()));
                write_partial_certificate(coloring, &meta)
            }
        }
    }

    /// Runs every required check and concludes the lower bound.
    pub fn certify(&self) -> Result<Certification, CertifyError> {
        let meta = self.all_metadata();
        match &self.coloring {
            BuiltColoring::Complete(g) => {
                certify(self.entry, self.params.clone(), g, &self.requests, &meta)
            }
            BuiltColoring::Extended { coloring, w } => certify_extension(
                self.entry,
                self.params.clone(),
                coloring,
                *w,
                &self.requests,
                &meta,
            ),
        }
    }
}

/// `pattern colors` as stored in certificate metadata, e.g. `kipas:6 1-4`.
pub fn request_text(req: &VerificationRequest) -> String {
    let cs = &req.colors;
    let contiguous = cs.windows(2).all(|w| w[1] == w[0] + 1);
    let colors = match (cs.first(), cs.last()) {
        (Some(a), Some(b)) if contiguous && cs.len() > 1 => format!("{a}-{b}"),
        _ => cs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(","),
    };
    format!("{} {}", req.pattern, colors)
}

fn colors_up_to(k: usize) -> impl Iterator<Item = Color> {
    (1..=k).map(|c| c as Color)
}

fn built(
    args: &Args,
    recipe: Arc<Recipe>,
    k: usize,
    requests: Vec<VerificationRequest>,
    metadata: Vec<(String, String)>,
) -> Result<Built, CatalogError> {
    let k = Color::try_from(k).map_err(|_| CatalogError::BadParam {
        entry: args.entry,
        param: "k",
        value: k as i64,
    })?;
    let graph = recipe
        .expand_with_colors(k.max(recipe.max_color()))
        .map_err(ConstructionError::from)?;
    Ok(Built {
        entry: args.entry,
        params: args
            .values
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect(),
        coloring: BuiltColoring::Complete(graph),
        recipe: Some(recipe),
        requests,
        metadata,
    })
}

fn base_for(
    args: &Args,
    m: usize,
) -> Result<(ColoredCompleteGraph, Vec<(String, String)>), CatalogError> {
    match &args.base {
        Some(b) => {
            let meta = vec![
                ("base".into(), "supplied".into()),
                ("base-size".into(), b.n().to_string()),
                ("base-digest".into(), write_certificate(b, &[]).digest()),
            ];
            Ok((b.clone(), meta))
        }
        None => {
            let b = trivial_base(m)?;
            let meta = vec![
                ("base".into(), "two-cliques".into()),
                ("base-size".into(), b.n().to_string()),
            ];
            Ok((b, meta))
        }
    }
}

fn kipas_requests(m: usize, k: usize, with_wheel: bool) -> Vec<VerificationRequest> {
    let mut out = vec![VerificationRequest::new(Pattern::Kipas(m), colors_up_to(k))];
    if with_wheel {
        out.push(VerificationRequest::new(Pattern::Wheel(m), colors_up_to(k)));
    }
    out
}

fn fan_g3(a: &Args) -> Result<Built, CatalogError> {
    let i = a.color("i")?;
    let recipe = cons::fan_g3_recipe(i)?;
    built(
        a,
        recipe,
        4,
        vec![VerificationRequest::new(Pattern::Fan(3), 1..=4)],
        vec![],
    )
}

fn fan_g4(a: &Args) -> Result<Built, CatalogError> {
    built(
        a,
        cons::fan_g4_recipe(),
        4,
        vec![VerificationRequest::new(Pattern::Fan(3), 1..=4)],
        vec![],
    )
}

fn fan_gk(a: &Args) -> Result<Built, CatalogError> {
    let k = a.usize_at_least("k", 4)?;
    let recipe = cons::fan_gk_recipe(k)?;
    built(
        a,
        recipe,
        k,
        vec![VerificationRequest::new(Pattern::Fan(3), colors_up_to(k))],
        vec![],
    )
}

fn contract_fan_base(a: &Args) -> Result<Built, CatalogError> {
    let g = cons::contract_fan_base()?;
    Ok(Built {
        entry: a.entry,
        params: vec![],
        coloring: BuiltColoring::Complete(g),
        recipe: None,
        requests: vec![VerificationRequest::new(Pattern::Fan(3), 1..=2)],
        metadata: vec![],
    })
}

fn h_graph(a: &Args) -> Result<Built, CatalogError> {
    let k2 = a.usize_at_least("k2", 2)?;
    let recipe = cons::h_recipe(k2)?;
    built(
        a,
        recipe,
        k2,
        vec![VerificationRequest::new(
            Pattern::Triangle,
            colors_up_to(k2),
        )],
        vec![],
    )
}

fn f_gadget(a: &Args) -> Result<Built, CatalogError> {
    let (p, q, m) = (a.color("p")?, a.color("q")?, a.usize_at_least("m", 6)?);
    let recipe = cons::f_recipe(p, q, m)?;
    let k = p.max(q) as usize;
    built(
        a,
        recipe,
        k,
        vec![VerificationRequest::new(Pattern::Kipas(m), [p, q])],
        vec![],
    )
}

fn h_of_f(a: &Args) -> Result<Built, CatalogError> {
    let (k2, p, q, m) = (
        a.usize_at_least("k2", 0)?,
        a.color("p")?,
        a.color("q")?,
        a.usize_at_least("m", 6)?,
    );
    let recipe = cons::h_of_f_recipe(k2, p, q, m)?;
    let k = recipe.max_color() as usize;
    built(a, recipe, k, kipas_requests(m, k, false), vec![])
}

fn g_ell(a: &Args) -> Result<Built, CatalogError> {
    let (k2, ell, m) = (
        a.usize_at_least("k2", 0)?,
        a.color("ell")?,
        a.usize_at_least("m", 6)?,
    );
    let recipe = cons::g_ell_recipe(k2, ell, m)?;
    let k = recipe.max_color() as usize;
    built(a, recipe, k, kipas_requests(m, k, false), vec![])
}

fn kipas_even(a: &Args) -> Result<Built, CatalogError> {
    let (k, m) = (a.usize_at_least("k", 2)?, a.usize_at_least("m", 6)?);
    let (base, meta) = base_for(a, m)?;
    let recipe = cons::g_even_recipe(k, m, &base)?;
    built(a, recipe, k, kipas_requests(m, k, true), meta)
}

fn kipas_k3(a: &Args) -> Result<Built, CatalogError> {
    let m = a.usize_at_least("m", 6)?;
    let candidates = cons::kipas_k3_candidates(m, a.base.as_ref())?;
    let best = Arc::clone(&candidates[0]);
    let variant = if matches!(*best, Recipe::Join { .. }) {
        "doubled-base"
    } else {
        "pentagon"
    };
    let mut meta = vec![("variant".to_string(), variant.to_string())];
    if variant == "doubled-base" {
        meta.extend(base_for(a, m)?.1);
    }
    built(a, best, 3, kipas_requests(m, 3, true), meta)
}

fn odd_double(a: &Args) -> Result<Built, CatalogError> {
    let (k, m) = (a.usize_at_least("k", 3)?, a.usize_at_least("m", 6)?);
    let (base, meta) = base_for(a, m)?;
    let recipe = cons::g_odd_recipe(k, m, Some(&base))?;
    built(a, recipe, k, kipas_requests(m, k, true), meta)
}

fn kipas_oddm(a: &Args) -> Result<Built, CatalogError> {
    let (k, m) = (a.usize_at_least("k", 2)?, a.usize_at_least("m", 7)?);
    let (base, meta) = base_for(a, m)?;
    let recipe = cons::odd_m_kipas_recipe(k, m, &base)?;
    built(a, recipe, k, kipas_requests(m, k, false), meta)
}

fn star_h(a: &Args) -> Result<Built, CatalogError> {
    let (n, k) = (a.usize_at_least("n", 12)?, a.usize_at_least("k", 3)?);
    let h = cons::build_star_h(n, k)?;
    let requests = vec![VerificationRequest::new(
        Pattern::SubdividedStar(n),
        colors_up_to(k),
    )];
    let mut metadata: Vec<(String, String)> = h
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            (
                format!("block.{}", i + 1),
                format!("{}..{}", b.start, b.end),
            )
        })
        .collect();
    let coloring = if a.get("with-w") != 0 {
        let (p, degree) = cons::extend_with_w(&h)?;
        metadata.push(("w-degree".into(), degree.to_string()));
        BuiltColoring::Extended {
            coloring: p,
            w: h.graph.n(),
        }
    } else {
        BuiltColoring::Complete(h.graph.clone())
    };
    Ok(Built {
        entry: a.entry,
        params: a.values.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        coloring,
        recipe: Some(cons::star_h_recipe(n, k)?),
        requests,
        metadata,
    })
}

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "fan-g3",
        describes: "14-vertex pentagon blow-up G_3^i without a monochromatic F_3, i in {3, 4}",
        params: &[int("i", "color of the K_2 block, 3 or 4")],
        takes_base: false,
        verifies: "fan:3 in colors 1-4",
        factory: fan_g3,
    },
    CatalogEntry {
        name: "fan-g4",
        describes: "70-vertex four-colored graph without a monochromatic F_3",
        params: &[],
        takes_base: false,
        verifies: "fan:3 in colors 1-4",
        factory: fan_g4,
    },
    CatalogEntry {
        name: "fan-gk",
        describes: "even-k fan tower on 14 * 5^((k-2)/2) vertices",
        params: &[int("k", "even number of colors, at least 4")],
        takes_base: false,
        verifies: "fan:3 in colors 1-k",
        factory: fan_gk,
    },
    CatalogEntry {
        name: "contract-fan-base",
        describes: "13-vertex two-coloring without a monochromatic F_3",
        params: &[],
        takes_base: false,
        verifies: "fan:3 in colors 1-2",
        factory: contract_fan_base,
    },
    CatalogEntry {
        name: "h-graph",
        describes: "iterated pentagon blow-up H_k2 on 5^(k2/2) vertices",
        params: &[int("k2", "even number of colors")],
        takes_base: false,
        verifies: "triangle in colors 1-k2",
        factory: h_graph,
    },
    CatalogEntry {
        name: "f-gadget",
        describes: "two-color gadget F(p, q) with bounded p-degree",
        params: &[
            int("p", "first color"),
            int("q", "second color"),
            int("m", "even kipas order, at least 6"),
        ],
        takes_base: false,
        verifies: "kipas:m in colors p, q",
        factory: f_gadget,
    },
    CatalogEntry {
        name: "h-of-f",
        describes: "H_k2 with every vertex replaced by F(p, q)",
        params: &[
            int("k2", "even number of H colors (0 gives F itself)"),
            int("p", "first gadget color"),
            int("q", "second gadget color"),
            int("m", "even kipas order, at least 6"),
        ],
        takes_base: false,
        verifies: "kipas:m in every color used",
        factory: h_of_f,
    },
    CatalogEntry {
        name: "g-ell",
        describes: "gadget G_k2(ell) whose color-ell class has small degree",
        params: &[
            int("k2", "even number of colors below ell"),
            int("ell", "the special color, above k2"),
            int("m", "even kipas order, at least 6"),
        ],
        takes_base: false,
        verifies: "kipas:m in every color used",
        factory: g_ell,
    },
    CatalogEntry {
        name: "kipas-even",
        describes: "even-k kipas/wheel tower G_k over a two-colored base",
        params: &[
            int("k", "even number of colors"),
            int("m", "even kipas order, at least 6"),
        ],
        takes_base: true,
        verifies: "kipas:m and wheel:m in colors 1-k",
        factory: kipas_even,
    },
    CatalogEntry {
        name: "kipas-k3",
        describes:
            "three-colored kipas construction, larger of the pentagon and doubled-base variants",
        params: &[int("m", "even kipas order, at least 6")],
        takes_base: true,
        verifies: "kipas:m and wheel:m in colors 1-3",
        factory: kipas_k3,
    },
    CatalogEntry {
        name: "odd-double",
        describes: "odd-k construction: two copies of G_(k-1) joined in color k",
        params: &[
            int("k", "odd number of colors"),
            int("m", "even kipas order, at least 6"),
        ],
        takes_base: true,
        verifies: "kipas:m and wheel:m in colors 1-k",
        factory: odd_double,
    },
    CatalogEntry {
        name: "kipas-oddm",
        describes: "odd-m kipas tower: the (m-1) gadgets over a base without K_1 + P_m",
        params: &[
            int("k", "number of colors"),
            int("m", "odd kipas order, at least 7"),
        ],
        takes_base: true,
        verifies: "kipas:m in colors 1-k",
        factory: kipas_oddm,
    },
    CatalogEntry {
        name: "star-h",
        describes: "subdivided-star graph H on 5n/2 + k - 7 vertices, optionally extended by w",
        params: &[
            int("n", "even star size, at least 12"),
            int("k", "number of colors, at least 3"),
            flag(
                "with-w",
                "add the extra vertex w (pairs to V_4 stay absent)",
            ),
        ],
        takes_base: false,
        verifies: "star-plus:n in colors 1-k",
        factory: star_h,
    },
];

pub fn entries() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn lookup(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
}

/// Builds `name` with integer parameters given as `(name, value)` pairs.
pub fn build(
    name: &str,
    params: &[(&str, i64)],
    base: Option<ColoredCompleteGraph>,
) -> Result<Built, CatalogError> {
    let values = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    lookup(name)?.build(&values, base)
}
