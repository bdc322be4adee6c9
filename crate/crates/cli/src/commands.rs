use std::path::Path;

use anyhow::{bail, Context, Result};
use gallai_ramsey::bounds::{CertifyError, VerificationRequest};
use gallai_ramsey::catalog::{self, ParamKind};
use gallai_ramsey::certificate::CertificateFile;
use gallai_ramsey::detectors::{detect, DetectionReport};
use gallai_ramsey::gallai::{find_partition, verify_partition, PartitionSpec};
use gallai_ramsey::oracle::{self, SearchBudget, Threshold};
use gallai_ramsey::{write_certificate, ColoredCompleteGraph, EdgeColoring, Pattern};

use crate::params::{parse_catalog_flags, parse_colors};
use crate::{
    bound_table, CatalogCommand, Cli, Command, Format, OracleCommand, PartitionArgs, VerifyArgs,
};

/// `Ok(true)` for success, `Ok(false)` for a failed verification.
pub fn run(cli: &Cli) -> Result<bool> {
    let fmt = cli.format;
    match &cli.command {
        Command::Construct(c) => construct(c, fmt),
        Command::Verify(v) => verify(v, fmt),
        Command::Certify(c) => certify(c, fmt),
        Command::Bound(b) => bound_table::run(b, fmt),
        Command::Partition(p) => partition(p, fmt),
        Command::Oracle { command } => oracle_cmd(command, fmt),
        Command::Catalog => {
            list_catalog(fmt);
            Ok(true)
        }
    }
}

fn load_certificate(path: &Path) -> Result<CertificateFile> {
    CertificateFile::load(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<ColoredCompleteGraph> {
    load_certificate(path)?
        .to_graph()
        .with_context(|| format!("{} is not a complete coloring", path.display()))
}

fn build(c: &CatalogCommand) -> Result<(catalog::Built, Option<std::path::PathBuf>)> {
    let entry = catalog::lookup(&c.name)?;
    let flags = parse_catalog_flags(entry, &c.rest)?;
    let base = flags.base.as_deref().map(load_graph).transpose()?;
    let built = entry.build(&flags.values, base)?;
    Ok((built, flags.out))
}

fn params_text(params: &[(String, i64)]) -> String {
    params.iter().map(|(k, v)| format!(" {k}={v}")).collect()
}

fn construct(c: &CatalogCommand, fmt: Format) -> Result<bool> {
    let (built, out) = build(c)?;
    let out = out.context("construct needs --out FILE")?;
    let cert = built.certificate();
    cert.save(&out)?;
    match fmt {
        Format::Table => println!(
            "{}{}: {} vertices, {} colors -> {} (sha256 {})",
            built.entry,
            params_text(&built.params),
            cert.n,
            cert.k,
            out.display(),
            cert.digest()
        ),
        Format::Records => println!(
            "construct name={}{} vertices={} colors={} file={} sha256={}",
            built.entry,
            params_text(&built.params),
            cert.n,
            cert.k,
            out.display(),
            cert.digest()
        ),
    }
    Ok(true)
}

fn report_line(r: &DetectionReport, fmt: Format) -> String {
    match fmt {
        Format::Table => r.to_string(),
        Format::Records => {
            let color = r.color.map_or("-".to_string(), |c| c.to_string());
            let mut s = format!("detect pattern={} color={color}", r.pattern);
            match &r.witness {
                None => s.push_str(" result=ABSENT"),
                Some(w) => {
                    let w: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                    s.push_str(&format!(" result=WITNESS witness={}", w.join(",")));
                }
            }
            s
        }
    }
}

/// The `requires` metadata lines of a certificate, e.g. `kipas:6 1-4`.
fn required_requests(cert: &CertificateFile) -> Result<Vec<VerificationRequest>> {
    cert.metadata
        .iter()
        .filter(|(k, _)| k == "requires")
        .map(|(_, v)| {
            let (p, cs) = v
                .split_once(' ')
                .with_context(|| format!("bad requires line {v:?}"))?;
            Ok(VerificationRequest::new(
                p.parse::<Pattern>()?,
                parse_colors(cs)?,
            ))
        })
        .collect()
}

fn run_requests<G: EdgeColoring + ?Sized>(
    g: &G,
    requests: &[VerificationRequest],
    fmt: Format,
) -> Result<bool> {
    let mut all_absent = true;
    for req in requests {
        let colors: &[_] = if req.pattern == Pattern::RainbowTriangle {
            &req.colors[..1]
        } else {
            &req.colors
        };
        for &c in colors {
            let r = detect(g, &req.pattern, c)?;
            if !r.is_absent() {
                if !r.validate(g) {
                    bail!("internal error: detector returned an invalid witness: {r}");
                }
                all_absent = false;
            }
            println!("{}", report_line(&r, fmt));
        }
    }
    Ok(all_absent)
}

fn verify(v: &VerifyArgs, fmt: Format) -> Result<bool> {
    let cert = load_certificate(&v.file)?;
    let all_colors: Vec<_> = (1..=cert.k).collect();
    let colors = match &v.colors {
        Some(s) => parse_colors(s)?,
        None => all_colors,
    };
    if let Some(&c) = colors.iter().find(|&&c| c > cert.k) {
        bail!("color {c} exceeds the certificate's {} colors", cert.k);
    }
    let requests = if v.patterns.is_empty() {
        let reqs = required_requests(&cert)?;
        if reqs.is_empty() {
            bail!(
                "{} lists no required checks; pass --pattern",
                v.file.display()
            );
        }
        reqs
    } else {
        v.patterns
            .iter()
            .map(|p| {
                Ok(VerificationRequest::new(
                    p.parse::<Pattern>()?,
                    colors.iter().copied(),
                ))
            })
            .collect::<Result<Vec<_>>>()?
    };
    if cert.partial {
        run_requests(&cert.to_partial()?, &requests, fmt)
    } else {
        run_requests(&cert.to_graph()?, &requests, fmt)
    }
}

fn certify(c: &CatalogCommand, fmt: Format) -> Result<bool> {
    let (built, out) = build(c)?;
    let cert = match built.certify() {
        Ok(cert) => cert,
        Err(CertifyError::Witness(r)) => {
            println!("{}", report_line(&r, fmt));
            eprintln!(
                "certification failed: {} has a forbidden subgraph",
                built.entry
            );
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(path) = &out {
        cert.certificate.save(path)?;
    }
    match fmt {
        Format::Table => {
            println!(
                "{}{}: {} vertices",
                built.entry,
                params_text(&built.params),
                built.vertex_count()
            );
            for r in &cert.reports {
                println!("  {}", report_line(r, fmt));
            }
            println!(
                "bound {}  (sha256 {})",
                cert.record.value,
                cert.certificate.digest()
            );
        }
        Format::Records => {
            for r in &cert.reports {
                println!("{}", report_line(r, fmt));
            }
            println!("{}", cert.record.to_record_line());
        }
    }
    Ok(true)
}

fn partition(p: &PartitionArgs, fmt: Format) -> Result<bool> {
    let g = load_graph(&p.file)?;
    if let Some(path) = &p.verify {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let spec = PartitionSpec::parse(&text)?;
        let check = verify_partition(&g, &spec)?;
        let colors: Vec<String> = check.cross_colors.iter().map(|c| c.to_string()).collect();
        match (fmt, check.valid) {
            (Format::Table, true) => println!(
                "valid Gallai partition: {} parts, cross colors {}",
                spec.parts.len(),
                colors.join(",")
            ),
            (Format::Table, false) => {
                println!("invalid: {}", check.violation.as_deref().unwrap_or(""))
            }
            (Format::Records, _) => println!(
                "partition valid={} parts={} cross_colors={}",
                check.valid,
                spec.parts.len(),
                colors.join(",")
            ),
        }
        return Ok(check.valid);
    }
    match find_partition(&g)? {
        Some(spec) => {
            match fmt {
                Format::Table => print!("{spec}"),
                Format::Records => {
                    for (i, part) in spec.parts.iter().enumerate() {
                        let vs: Vec<String> = part.iter().map(|v| v.to_string()).collect();
                        println!("part index={i} vertices={}", vs.join(","));
                    }
                }
            }
            Ok(true)
        }
        None => {
            println!("no Gallai partition");
            Ok(false)
        }
    }
}

fn relation(t: Threshold) -> String {
    match t {
        Threshold::Exact(n) => format!("= {n}"),
        Threshold::AtLeast(n) => format!(">= {n}"),
    }
}

fn oracle_cmd(cmd: &OracleCommand, fmt: Format) -> Result<bool> {
    match cmd {
        OracleCommand::Ramsey2 {
            p1,
            p2,
            nmax,
            max_colorings,
        } => {
            let (a, b): (Pattern, Pattern) = (p1.parse()?, p2.parse()?);
            let budget = SearchBudget {
                max_colorings: *max_colorings,
                ..SearchBudget::exhaustive(*nmax)
            };
            let r = oracle::ramsey2_exact(&a, &b, &budget)?;
            match fmt {
                Format::Table => println!("R({a}, {b}) {}", relation(r.value)),
                Format::Records => println!("ramsey2 p1={a} p2={b} nmax={nmax} value={}", r.value),
            }
        }
        OracleCommand::Gallai {
            pattern,
            k,
            nmax,
            max_nodes,
        } => {
            let p: Pattern = pattern.parse()?;
            let budget = SearchBudget {
                max_colorings: *max_nodes,
                ..SearchBudget::exhaustive(*nmax)
            };
            let r = oracle::gallai_ramsey_exhaustive(&p, *k, &budget)?;
            match fmt {
                Format::Table => println!("GR_{k}({p}) {}", relation(r.value)),
                Format::Records => println!(
                    "gallai-ramsey pattern={p} k={k} nmax={nmax} value={}",
                    r.value
                ),
            }
        }
        OracleCommand::FanWitness => {
            let r = oracle::fan_lower_witness_check()?;
            println!("{}", report_line(&r.rainbow, fmt));
            for (d, o) in r.detector.iter().zip(&r.oracle) {
                println!("{}", report_line(d, fmt));
                println!("{}", report_line(o, fmt));
            }
            return Ok(r.confirms_lower_bound());
        }
        OracleCommand::Base {
            m,
            steps,
            seed,
            restarts,
            out,
        } => {
            let budget = SearchBudget {
                steps: *steps,
                seed: *seed,
                restarts: *restarts,
                ..SearchBudget::default()
            };
            let r = oracle::heuristic_base_search(*m, &budget)?;
            let cert = write_certificate(&r.graph, &r.metadata());
            if let Some(path) = out {
                cert.save(path)?;
            }
            match fmt {
                Format::Table => println!(
                    "base for kipas:{m}: {} vertices (seed {seed}, {steps} steps x {restarts} restarts, sha256 {})",
                    r.graph.n(),
                    cert.digest()
                ),
                Format::Records => println!(
                    "base m={m} vertices={} seed={seed} steps={steps} restarts={restarts} sha256={}",
                    r.graph.n(),
                    cert.digest()
                ),
            }
        }
    }
    Ok(true)
}

fn list_catalog(fmt: Format) {
    for e in catalog::entries() {
        let mut flags: Vec<String> = e
            .params
            .iter()
            .map(|p| match p.kind {
                ParamKind::Int => format!("--{} N", p.name),
                ParamKind::Flag => format!("[--{}]", p.name),
            })
            .collect();
        if e.takes_base {
            flags.push("[--base FILE]".into());
        }
        match fmt {
            Format::Table => {
                println!("{:<18} {}", e.name, flags.join(" "));
                println!("{:<18} {}; checks {}", "", e.describes, e.verifies);
            }
            Format::Records => println!(
                "entry name={} flags={:?} checks={:?}",
                e.name,
                flags.join(" "),
                e.verifies
            ),
        }
    }
}
