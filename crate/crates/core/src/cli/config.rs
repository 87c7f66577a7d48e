//! Derivator config files.
//!
//! ```text
//! stieltjes-derivator v1
//! # comments start with '#', blank lines are ignored
//! horizon = 8.5
//! continuous.kind = saw            # identity | saw | piecewise_linear | zero
//! continuous.params = [(0, 1), (2, 0.5)]   # piecewise_linear only: (t, slope) knots
//! jumps = [(0.785398, 0.3333), (1.570796, 0.3333)]
//! ```
//!
//! `horizon` and `continuous.kind` are required. `jumps` defaults to none.
//! Every jump must lie strictly inside `(0, horizon)`.

use crate::derivator::{ContinuousKind, ContinuousPart, Derivator, JumpSet};
use crate::error::{Error, Result};

pub const HEADER: &str = "stieltjes-derivator v1";

fn cfg(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

/// Parses `[(a, b), (c, d), ...]`. An empty list `[]` is allowed.
pub fn parse_pairs(s: &str) -> Result<Vec<(f64, f64)>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| cfg(format!("expected a bracketed list, got '{s}'")))?
        .trim();
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| cfg(format!("expected '(' in pair list near '{rest}'")))?;
        let close = body.find(')').ok_or_else(|| cfg("unterminated pair"))?;
        let (a, b) = body[..close]
            .split_once(',')
            .ok_or_else(|| cfg(format!("pair '({})' needs two entries", &body[..close])))?;
        out.push((parse_num(a)?, parse_num(b)?));
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(cfg(format!("expected ',' between pairs near '{rest}'")));
        }
    }
    Ok(out)
}

fn parse_num(s: &str) -> Result<f64> {
    let s = s.trim();
    let v: f64 = s.parse().map_err(|_| cfg(format!("'{s}' is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(cfg(format!("'{s}' is not finite")))
    }
}

/// Parses the text of a config file into a validated derivator.
pub fn parse_derivator(text: &str) -> Result<Derivator> {
    let mut lines = text
        .lines()
        .map(|l| l.split_once('#').map_or(l, |(a, _)| a).trim())
        .filter(|l| !l.is_empty());
    match lines.next() {
        Some(HEADER) => {}
        Some(other) => return Err(cfg(format!("expected header '{HEADER}', found '{other}'"))),
        None => return Err(cfg("empty derivator file")),
    }
    let (mut horizon, mut kind, mut params, mut jumps) = (None, None, None, None);
    for line in lines {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| cfg(format!("expected 'key = value', got '{line}'")))?;
        let value = value.trim();
        let slot = match key.trim() {
            "horizon" => &mut horizon,
            "continuous.kind" => &mut kind,
            "continuous.params" => &mut params,
            "jumps" => &mut jumps,
            other => return Err(cfg(format!("unknown key '{other}'"))),
        };
        if slot.replace(value.to_string()).is_some() {
            return Err(cfg(format!("duplicate key '{}'", key.trim())));
        }
    }
    let horizon = parse_num(&horizon.ok_or_else(|| cfg("missing key 'horizon'"))?)?;
    let knots = params.as_deref().map(parse_pairs).transpose()?;
    let kind = match kind.as_deref().ok_or_else(|| cfg("missing key 'continuous.kind'"))? {
        "identity" => ContinuousKind::Identity,
        "saw" | "staircase_saw" => ContinuousKind::StaircaseSaw,
        "zero" => ContinuousKind::PiecewiseLinear(vec![(0.0, 0.0)]),
        "piecewise_linear" => ContinuousKind::PiecewiseLinear(
            knots.clone().ok_or_else(|| cfg("piecewise_linear needs continuous.params"))?,
        ),
        other => return Err(cfg(format!("unknown continuous.kind '{other}'"))),
    };
    if knots.is_some() && !matches!(kind, ContinuousKind::PiecewiseLinear(_)) {
        return Err(cfg("continuous.params only applies to piecewise_linear"));
    }
    let jumps = match jumps {
        Some(j) => JumpSet::new(parse_pairs(&j)?)?,
        None => JumpSet::empty(),
    };
    let zero_cont = matches!(&kind, ContinuousKind::PiecewiseLinear(k) if k.iter().all(|p| p.1 == 0.0));
    let cont = ContinuousPart::new(kind, horizon)?;
    if zero_cont {
        Derivator::new_relaxed(cont, jumps)
    } else {
        Derivator::new(cont, jumps)
    }
}

pub fn load_derivator(path: &std::path::Path) -> Result<Derivator> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_derivator(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let d = parse_derivator(
            "stieltjes-derivator v1\n# saw\nhorizon = 8.5\ncontinuous.kind = saw\njumps = [(0.5, 0.25), (2.5, 1)] # two\n",
        )
        .unwrap();
        assert_eq!(d.horizon(), 8.5);
        assert_eq!(d.jumps().len(), 2);
        assert_eq!(d.g_right(2.5), 1.5 + 1.25);
    }

    #[test]
    fn piecewise_linear_and_empty_jumps() {
        let d = parse_derivator(
            "stieltjes-derivator v1\nhorizon=3\ncontinuous.kind=piecewise_linear\ncontinuous.params=[(0,2),(1,0.5)]\njumps=[]",
        )
        .unwrap();
        assert_eq!(d.g(3.0), 3.0);
    }

    #[test]
    fn rejects_bad_files() {
        for text in [
            "",
            "horizon = 1",
            "stieltjes-derivator v2\nhorizon = 1\ncontinuous.kind = identity",
            "stieltjes-derivator v1\ncontinuous.kind = identity",
            "stieltjes-derivator v1\nhorizon = 1\ncontinuous.kind = wobble",
            "stieltjes-derivator v1\nhorizon = 1\nhorizon = 2\ncontinuous.kind = identity",
            "stieltjes-derivator v1\nhorizon = 1\ncontinuous.kind = identity\njumps = [(0.5 0.1)]",
            "stieltjes-derivator v1\nhorizon = 1\ncontinuous.kind = identity\ncolour = red",
        ] {
            assert!(matches!(parse_derivator(text), Err(Error::Config(_))), "{text:?}");
        }
        let out_of_window = "stieltjes-derivator v1\nhorizon = 1\ncontinuous.kind = identity\njumps = [(1.5, 0.1)]";
        assert!(matches!(parse_derivator(out_of_window), Err(Error::InvalidDerivator { .. })));
    }
}
