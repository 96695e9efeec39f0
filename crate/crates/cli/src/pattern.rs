//! Exponent patterns for `poly --find`, e.g. `x=0,y=1,rest<=2` or `v3<=1`.

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    /// Upper bound per variable (15 = unbounded).
    pub bounds: Vec<u8>,
    pub exact: Vec<Option<u8>>,
}

const UNBOUNDED: u8 = 15;

impl Pattern {
    /// Caps implied by the pattern: each constrained variable is capped at its
    /// largest allowed exponent, which keeps every matching term exact.
    pub fn caps(&self) -> Vec<Option<u8>> {
        self.bounds
            .iter()
            .zip(&self.exact)
            .map(|(&b, &e)| match e {
                Some(v) => Some(v),
                None if b < UNBOUNDED => Some(b),
                None => None,
            })
            .collect()
    }
}

pub fn parse(text: &str, n: usize, x: usize, y: usize) -> Result<Pattern> {
    let mut bounds: Vec<Option<u8>> = vec![None; n];
    let mut exact = vec![None; n];
    let mut named = vec![false; n];
    let mut rest: Option<(bool, u8)> = None;
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, is_exact, value) = if let Some((a, b)) = item.split_once("<=") {
            (a.trim(), false, b.trim())
        } else if let Some((a, b)) = item.split_once('=') {
            (a.trim(), true, b.trim())
        } else {
            bail!("pattern item {item:?} needs `=` or `<=`");
        };
        let value: u8 = value
            .parse()
            .with_context(|| format!("bad exponent in {item:?}"))?;
        if value > UNBOUNDED {
            bail!("exponent {value} in {item:?} exceeds {UNBOUNDED}");
        }
        if name == "rest" {
            rest = Some((is_exact, value));
            continue;
        }
        let v = match name {
            "x" => x,
            "y" => y,
            _ => name
                .trim_start_matches('v')
                .parse::<usize>()
                .with_context(|| format!("unknown variable {name:?} (use x, y, rest, v<i> or <i>)"))?,
        };
        if v >= n {
            bail!("variable {name:?} is out of range for {n} vertices");
        }
        named[v] = true;
        if is_exact {
            exact[v] = Some(value);
        } else {
            bounds[v] = Some(value);
        }
    }
    if let Some((is_exact, value)) = rest {
        for v in (0..n).filter(|&v| !named[v]) {
            if is_exact {
                exact[v] = Some(value);
            } else {
                bounds[v] = Some(value);
            }
        }
    }
    Ok(Pattern {
        bounds: bounds.into_iter().map(|b| b.unwrap_or(UNBOUNDED)).collect(),
        exact,
    })
}

/// Parses `--caps`: `none` or a comma list with one integer per vertex.
pub fn parse_caps(text: &str, n: usize) -> Result<Vec<Option<u8>>> {
    if text.trim() == "none" {
        return Ok(vec![None; n]);
    }
    text.split(',')
        .map(|s| {
            let s = s.trim();
            if s == "-" {
                Ok(None)
            } else {
                s.parse::<u8>()
                    .map(Some)
                    .with_context(|| format!("bad cap {s:?}"))
            }
        })
        .collect()
}
