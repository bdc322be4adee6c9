//! Parsing of the free-form catalog flags and of color lists.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use gallai_ramsey::catalog::{CatalogEntry, ParamKind};
use gallai_ramsey::Color;

#[derive(Debug, Default)]
pub struct CatalogFlags {
    pub values: BTreeMap<String, i64>,
    pub base: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

/// Splits `--name value` / `--flag` tokens according to the entry's schema.
pub fn parse_catalog_flags(entry: &CatalogEntry, rest: &[String]) -> Result<CatalogFlags> {
    let mut flags = CatalogFlags::default();
    let mut tokens = rest.iter();
    while let Some(tok) = tokens.next() {
        let (name, inline) = match tok.strip_prefix("--") {
            Some(body) => match body.split_once('=') {
                Some((n, v)) => (n, Some(v.to_string())),
                None => (body, None),
            },
            None => bail!("{}: unexpected argument {tok:?}", entry.name),
        };
        let mut value = |what: &str| -> Result<String> {
            match &inline {
                Some(v) => Ok(v.clone()),
                None => tokens
                    .next()
                    .cloned()
                    .with_context(|| format!("--{name} needs {what}")),
            }
        };
        match name {
            "base" => flags.base = Some(PathBuf::from(value("a file")?)),
            "out" => flags.out = Some(PathBuf::from(value("a file")?)),
            _ => {
                let Some(spec) = entry.params.iter().find(|p| p.name == name) else {
                    let known: Vec<String> = entry
                        .params
                        .iter()
                        .map(|p| format!("--{}", p.name))
                        .collect();
                    bail!(
                        "{}: unknown flag --{name} (expected {})",
                        entry.name,
                        known.join(", ")
                    );
                };
                let v = match spec.kind {
                    ParamKind::Flag if inline.is_none() => 1,
                    _ => {
                        let raw = value("an integer")?;
                        raw.parse()
                            .with_context(|| format!("--{name}: {raw:?} is not an integer"))?
                    }
                };
                if flags.values.insert(name.to_string(), v).is_some() {
                    bail!("--{name} given twice");
                }
            }
        }
    }
    Ok(flags)
}

/// `1-4`, `1,3`, `2` or a mix such as `1,3-5`.
pub fn parse_colors(spec: &str) -> Result<Vec<Color>> {
    let mut out = Vec::new();
    for piece in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let parse = |s: &str| -> Result<Color> {
            let c: Color = s
                .trim()
                .parse()
                .with_context(|| format!("bad color {s:?}"))?;
            if c == 0 {
                bail!("colors start at 1");
            }
            Ok(c)
        };
        match piece.split_once('-') {
            Some((a, b)) => {
                let (a, b) = (parse(a)?, parse(b)?);
                if a > b {
                    bail!("empty color range {piece:?}");
                }
                out.extend(a..=b);
            }
            None => out.push(parse(piece)?),
        }
    }
    if out.is_empty() {
        bail!("no colors in {spec:?}");
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gallai_ramsey::catalog::lookup;

    fn strings(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn catalog_flags() {
        let e = lookup("star-h").unwrap();
        let f = parse_catalog_flags(
            e,
            &strings(&["--n", "12", "--k=3", "--with-w", "--out", "h.grc"]),
        )
        .unwrap();
        assert_eq!(f.values["n"], 12);
        assert_eq!(f.values["k"], 3);
        assert_eq!(f.values["with-w"], 1);
        assert_eq!(f.out, Some(PathBuf::from("h.grc")));
        assert!(parse_catalog_flags(e, &strings(&["--m", "6"])).is_err());
        assert!(parse_catalog_flags(e, &strings(&["--n"])).is_err());
        assert!(parse_catalog_flags(e, &strings(&["12"])).is_err());
    }

    #[test]
    fn color_lists() {
        assert_eq!(parse_colors("1-4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_colors("3,1").unwrap(), vec![1, 3]);
        assert_eq!(parse_colors("1,3-4").unwrap(), vec![1, 3, 4]);
        assert!(parse_colors("0").is_err());
        assert!(parse_colors("4-1").is_err());
        assert!(parse_colors("").is_err());
    }
}
