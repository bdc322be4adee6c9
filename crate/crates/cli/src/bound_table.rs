//! `grc bound`: conjectured value, theorem value, certified value and the
//! theorem-minus-conjecture delta for one target.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use gallai_ramsey::bounds::{self, sizes, BoundError};
use gallai_ramsey::catalog;
use gallai_ramsey::certificate::CertificateFile;
use gallai_ramsey::oracle::trivial_base;
use gallai_ramsey::ColoredCompleteGraph;

use crate::Format;

/// Constructions above this size are not certified by `bound`.
const CERTIFY_LIMIT: i64 = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Fan,
    Kipas,
    Wheel,
    Star,
    StarPlus,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub target: Target,
    /// Number of colors.
    #[arg(long)]
    pub k: i64,
    /// Kipas or wheel order.
    #[arg(long)]
    pub m: Option<i64>,
    /// Star size.
    #[arg(long)]
    pub n: Option<i64>,
    /// Two-color Ramsey number of the target; only known values are defaulted.
    #[arg(long)]
    pub r2: Option<i64>,
    /// Also build and verify the matching construction.
    #[arg(long)]
    pub certify: bool,
    /// Two-colored base for the kipas and wheel towers (default: two cliques).
    #[arg(long)]
    pub base: Option<PathBuf>,
}

struct Row {
    quantity: &'static str,
    conjectured: Option<i64>,
    theorem: Option<i64>,
    certified: Option<i64>,
}

fn opt(v: Option<i64>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

fn need(v: Option<i64>, flag: &str, target: Target) -> Result<i64> {
    v.with_context(|| format!("--{flag} is required for {target:?}").to_lowercase())
}

fn ok_or_none(r: Result<i64, BoundError>) -> Option<i64> {
    r.ok()
}

fn certified(
    name: &str,
    params: &[(&str, i64)],
    base: Option<ColoredCompleteGraph>,
) -> Result<Option<i64>> {
    let built = catalog::build(name, params, base)?;
    match built.certify() {
        Ok(c) => Ok(Some(c.record.value)),
        Err(e) => bail!("{name} failed certification: {e}"),
    }
}

fn load_base(args: &BoundArgs, m: i64) -> Result<ColoredCompleteGraph> {
    match &args.base {
        Some(p) => Ok(CertificateFile::load(p)?.to_graph()?),
        None => Ok(trivial_base(m as usize)?),
    }
}

/// Size of the kipas/wheel construction for `k` colors, and the catalog
/// entry with its parameters.
fn tower_plan(k: i64, m: i64, base_n: i64) -> (i64, &'static str) {
    let gadget_m = if m % 2 == 0 { m } else { m - 1 };
    let size = match k {
        2 => base_n,
        3 if m % 2 == 0 => (5 * m).max(2 * base_n),
        _ if k % 2 == 0 => sizes::g_even(k, gadget_m, base_n),
        _ => sizes::g_odd_doubled(k, gadget_m, base_n),
    };
    let name = match (m % 2 == 0, k) {
        (true, 3) => "kipas-k3",
        (true, _) if k % 2 == 0 => "kipas-even",
        (true, _) => "odd-double",
        (false, _) => "kipas-oddm",
    };
    (size, name)
}

fn rows(args: &BoundArgs) -> Result<(Vec<Row>, Vec<(&'static str, i64)>, Option<String>)> {
    let k = args.k;
    let mut note = None;
    let mut shown = vec![("k", k)];
    let rows = match args.target {
        Target::Fan => {
            let certified = if args.certify {
                match k {
                    2 => certified("contract-fan-base", &[], None)?,
                    4 => certified("fan-g4", &[], None)?,
                    _ if k >= 6 && k % 2 == 0 && sizes::fan_gk(k) <= CERTIFY_LIMIT => {
                        certified("fan-gk", &[("k", k)], None)?
                    }
                    _ => None,
                }
            } else {
                None
            };
            vec![Row {
                quantity: "GR",
                conjectured: ok_or_none(bounds::conj_fan(k)),
                theorem: ok_or_none(bounds::thm_fan_lower(k)),
                certified,
            }]
        }
        Target::Kipas | Target::Wheel => {
            let m = need(args.m, "m", args.target)?;
            shown.push(("m", m));
            let r2 = match (args.r2, args.target, m) {
                (Some(r), _, _) => r,
                (None, Target::Wheel, 6) => bounds::known_value("R2(W6)").expect("tabulated"),
                _ => bail!("--r2 is required: R_2 of this target is not a tabulated value"),
            };
            shown.push(("r2", r2));
            let (conjectured, theorem) = if args.target == Target::Kipas {
                let thm = if m % 2 == 0 {
                    bounds::thm_kipas_wheel_lower(k, m, r2)
                } else {
                    bounds::thm_odd_m_lower(k, m, r2)
                };
                (ok_or_none(bounds::conj_kipas(k, m, r2)), ok_or_none(thm))
            } else {
                (
                    ok_or_none(bounds::conj_wheel(k, m, r2)),
                    ok_or_none(bounds::thm_kipas_wheel_lower(k, m, r2)),
                )
            };
            let mut cert = None;
            if args.certify && m >= 6 && k >= 2 && !(args.target == Target::Wheel && m % 2 == 1) {
                let base = load_base(args, m)?;
                let (size, name) = tower_plan(k, m, base.n() as i64);
                note = Some(format!("certified relative to a {}-vertex base", base.n()));
                if size <= CERTIFY_LIMIT {
                    let params: Vec<(&str, i64)> = if name == "kipas-k3" {
                        vec![("m", m)]
                    } else {
                        vec![("k", k), ("m", m)]
                    };
                    let base_arg = (name != "kipas-k3" || args.base.is_some()).then_some(base);
                    cert = certified(name, &params, base_arg)?;
                } else {
                    note = Some(format!(
                        "construction has {size} vertices; above the certification limit"
                    ));
                }
            }
            vec![Row {
                quantity: "GR",
                conjectured,
                theorem,
                certified: cert,
            }]
        }
        Target::Star | Target::StarPlus => {
            let n = need(args.n, "n", args.target)?;
            shown.push(("n", n));
            let v = bounds::star_values(n, k)?;
            if args.target == Target::Star {
                vec![
                    Row {
                        quantity: "GR",
                        conjectured: None,
                        theorem: Some(v.star_gr),
                        certified: None,
                    },
                    // Gallai-Ramsey-full would force GR* = GR
                    Row {
                        quantity: "GR*",
                        conjectured: Some(v.star_gr),
                        theorem: Some(v.star_gr_star),
                        certified: None,
                    },
                ]
            } else {
                let (gr, gr_star) = if args.certify {
                    (
                        certified("star-h", &[("n", n), ("k", k)], None)?,
                        certified("star-h", &[("n", n), ("k", k), ("with-w", 1)], None)?,
                    )
                } else {
                    (None, None)
                };
                vec![
                    Row {
                        quantity: "GR",
                        conjectured: None,
                        theorem: Some(v.subdivided_gr),
                        certified: gr,
                    },
                    Row {
                        quantity: "GR*",
                        conjectured: Some(v.subdivided_gr),
                        theorem: Some(v.subdivided_gr_star),
                        certified: gr_star,
                    },
                ]
            }
        }
    };
    Ok((rows, shown, note))
}

pub fn run(args: &BoundArgs, fmt: Format) -> Result<bool> {
    let (rows, shown, note) = rows(args)?;
    let target = format!("{:?}", args.target)
        .to_lowercase()
        .replace("starplus", "star-plus");
    let params: String = shown.iter().map(|(k, v)| format!(" {k}={v}")).collect();
    match fmt {
        Format::Table => {
            println!("target {target}{params}");
            println!(
                "{:<9} {:>12} {:>12} {:>12} {:>12}",
                "quantity", "conjectured", "theorem", "certified", "delta"
            );
            for r in &rows {
                let delta = r.theorem.zip(r.conjectured).map(|(t, c)| t - c);
                println!(
                    "{:<9} {:>12} {:>12} {:>12} {:>12}",
                    r.quantity,
                    opt(r.conjectured),
                    opt(r.theorem),
                    opt(r.certified),
                    opt(delta)
                );
            }
            if let Some(n) = note {
                println!("note: {n}");
            }
        }
        Format::Records => {
            for r in &rows {
                let delta = r.theorem.zip(r.conjectured).map(|(t, c)| t - c);
                println!(
                    "bound target={target} quantity={}{params} conjectured={} theorem={} certified={} delta={}",
                    r.quantity,
                    opt(r.conjectured),
                    opt(r.theorem),
                    opt(r.certified),
                    opt(delta)
                );
            }
        }
    }
    Ok(true)
}
