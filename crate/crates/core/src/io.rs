//! Parsers for the two corpus file formats.
//!
//! `.graph` files list one edge per line, `edge <label> <u> <v>`; labels must
//! be contiguous from 0, vertex names are free. `.bases` files start with
//! `elements <n+1>` and then list one basis per line, `basis <e> <e> …`.
//! Blank lines and `#` comments are ignored in both.

use std::path::Path;

use crate::error::{Error, Result};
use crate::eset::ESet;
use crate::matroid::Matroid;

/// Where a matroid came from, for reports and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSource {
    pub path: String,
}

/// Loads a matroid from a `.graph` or `.bases` file.
pub fn load_matroid(path: &Path) -> Result<(Matroid, MatroidSource)> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        path: display.clone(),
        line: 0,
        message: e.to_string(),
    })?;
    let matroid = match path.extension().and_then(|s| s.to_str()) {
        Some("graph") => parse_graph(&text, &display)?,
        Some("bases") => parse_bases(&text, &display)?,
        _ => {
            return Err(Error::Parse {
                path: display,
                line: 0,
                message: "unknown extension, expected .graph or .bases".into(),
            })
        }
    };
    Ok((matroid, MatroidSource { path: display }))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_graph(text: &str, path: &str) -> Result<Matroid> {
    let mut edges = Vec::new();
    for (line, content) in content_lines(text) {
        let err = |message: String| Error::Parse { path: path.into(), line, message };
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("edge") => {}
            Some(other) => return Err(err(format!("expected `edge`, found `{other}`"))),
            None => unreachable!(),
        }
        let mut num = |what: &str| -> Result<u32> {
            tokens
                .next()
                .ok_or_else(|| err(format!("missing {what}")))?
                .parse()
                .map_err(|_| err(format!("{what} is not a nonnegative integer")))
        };
        let label = num("edge label")?;
        let u = num("first endpoint")?;
        let v = num("second endpoint")?;
        if tokens.next().is_some() {
            return Err(err("trailing tokens after edge".into()));
        }
        edges.push((label, u, v));
    }
    Matroid::from_graph(&edges)
}

pub fn parse_bases(text: &str, path: &str) -> Result<Matroid> {
    let mut n_plus_1: Option<usize> = None;
    let mut bases: Vec<ESet> = Vec::new();
    for (line, content) in content_lines(text) {
        let err = |message: String| Error::Parse { path: path.into(), line, message };
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("elements") => {
                if n_plus_1.is_some() {
                    return Err(err("duplicate `elements` line".into()));
                }
                let n: usize = tokens
                    .next()
                    .ok_or_else(|| err("missing element count".into()))?
                    .parse()
                    .map_err(|_| err("element count is not an integer".into()))?;
                if tokens.next().is_some() {
                    return Err(err("trailing tokens after element count".into()));
                }
                n_plus_1 = Some(n);
            }
            Some("basis") => {
                let n = n_plus_1
                    .ok_or_else(|| err("`basis` line before `elements`".into()))?;
                let mut b = ESet::EMPTY;
                for tok in tokens {
                    let e: usize = tok
                        .parse()
                        .map_err(|_| err(format!("`{tok}` is not an element index")))?;
                    if e >= n {
                        return Err(err(format!("element {e} out of range 0..{n}")));
                    }
                    if b.contains(e as u8) {
                        return Err(err(format!("repeated element {e}")));
                    }
                    b = b.with(e as u8);
                }
                bases.push(b);
            }
            Some(other) => {
                return Err(err(format!("expected `elements` or `basis`, found `{other}`")))
            }
            None => unreachable!(),
        }
    }
    let n = n_plus_1.ok_or(Error::Parse {
        path: path.into(),
        line: 0,
        message: "missing `elements` line".into(),
    })?;
    Matroid::from_bases(n, &bases)
}
