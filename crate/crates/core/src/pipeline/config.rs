//! Flat `key = value` run configuration.
//!
//! ```text
//! # genus two reference curve
//! p = 101
//! f = x^5 + x + 1
//! seed = 0
//! degree_bound = 6
//! window = 4
//! ```
//!
//! `f` accepts either a polynomial in `x` or a comma-separated list of
//! coefficients in ascending order (`1, 1, 0, 0, 0, 1`).

use std::path::PathBuf;

use serde::Serialize;

use crate::divisor_search::DEFAULT_MAX_TRIES;
use crate::error::{Error, Result};
use crate::section_ring::DEFAULT_DEGREE_BOUND;

pub const DEFAULT_WINDOW: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub p: u64,
    /// Ascending coefficients of `f`, not yet reduced mod `p`.
    pub f: Vec<i64>,
    pub seed: u64,
    pub max_tries: usize,
    pub degree_bound: usize,
    pub window: usize,
    pub strong: bool,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(p: u64, f: Vec<i64>) -> Self {
        RunConfig {
            p,
            f,
            seed: 0,
            max_tries: DEFAULT_MAX_TRIES,
            degree_bound: DEFAULT_DEGREE_BOUND,
            window: DEFAULT_WINDOW,
            strong: false,
            output: None,
        }
    }

    /// Genus-two reference run: `y² = x⁵ + x + 1` over `F_101`.
    pub fn demo_g2() -> Self {
        RunConfig::new(101, vec![1, 1, 0, 0, 0, 1])
    }

    /// Genus-three reference run: `y² = x⁷ + x + 1` over `F_101`.
    pub fn demo_g3() -> Self {
        RunConfig::new(101, vec![1, 1, 0, 0, 0, 0, 0, 1])
    }

    /// Coefficients of `f` reduced into `[0, p)`.
    pub fn curve_coeffs(&self) -> Vec<u64> {
        let p = self.p as i64;
        self.f.iter().map(|c| c.rem_euclid(p) as u64).collect()
    }

    pub fn check(&self) -> Result<()> {
        if self.degree_bound < 3 {
            return Err(Error::Config(format!(
                "degree_bound must be at least 3, got {}",
                self.degree_bound
            )));
        }
        if self.window == 0 || self.window + 2 > self.degree_bound {
            return Err(Error::Config(format!(
                "window must lie in 1..={}, got {}",
                self.degree_bound - 2,
                self.window
            )));
        }
        if self.max_tries == 0 {
            return Err(Error::Config("max_tries must be positive".into()));
        }
        Ok(())
    }

    /// Parses a config file body on top of the defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = None;
        let mut f = None;
        let mut cfg = RunConfig::new(0, Vec::new());
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| {
                Error::Config(format!("line {}: invalid {what} `{value}`", lineno + 1))
            };
            match key {
                "p" | "prime" => p = Some(value.parse().map_err(|_| bad("prime"))?),
                "f" => f = Some(parse_poly(value)?),
                "seed" => cfg.seed = value.parse().map_err(|_| bad("seed"))?,
                "max_tries" => cfg.max_tries = value.parse().map_err(|_| bad("max_tries"))?,
                "degree_bound" | "N" => {
                    cfg.degree_bound = value.parse().map_err(|_| bad("degree_bound"))?
                }
                "window" | "i_max" => cfg.window = value.parse().map_err(|_| bad("window"))?,
                "strong" => cfg.strong = parse_bool(value).ok_or_else(|| bad("strong"))?,
                "out" | "output" => cfg.output = Some(PathBuf::from(value)),
                _ => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{key}`",
                        lineno + 1
                    )))
                }
            }
        }
        cfg.p = p.ok_or_else(|| Error::Config("missing key `p`".into()))?;
        cfg.f = f.ok_or_else(|| Error::Config("missing key `f`".into()))?;
        Ok(cfg)
    }
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Some(true),
        "false" | "no" | "0" | "off" => Some(false),
        _ => None,
    }
}

/// `x^5 + 3x - 2` or `1, 1, 0, 0, 0, 1` (ascending) to ascending coefficients.
pub fn parse_poly(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Config("empty polynomial".into()));
    }
    let bad = || Error::Config(format!("cannot parse polynomial `{s}`"));
    if !s.contains('x') {
        return s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect();
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in compact.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(term)),
        };
        let (coef, exp) = match body.split_once('x') {
            None => (body.parse::<i64>().map_err(|_| bad())?, 0),
            Some((c, e)) => {
                let c = c.trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse::<i64>().map_err(|_| bad())?
                };
                let e = match e.strip_prefix('^') {
                    Some(e) => e.parse::<usize>().map_err(|_| bad())?,
                    None if e.is_empty() => 1,
                    None => return Err(bad()),
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_forms_agree() {
        assert_eq!(parse_poly("x^5 + x + 1").unwrap(), vec![1, 1, 0, 0, 0, 1]);
        assert_eq!(
            parse_poly("1, 1, 0, 0, 0, 1").unwrap(),
            vec![1, 1, 0, 0, 0, 1]
        );
        assert_eq!(
            parse_poly("x^7-3*x^2+2x-5").unwrap(),
            vec![-5, 2, -3, 0, 0, 0, 0, 1]
        );
        assert!(parse_poly("x^^2").is_err());
    }

    #[test]
    fn parses_file() {
        let cfg =
            RunConfig::parse("# demo\np = 101\nf = x^5+x+1\nseed = 3\nstrong = true\n").unwrap();
        assert_eq!(cfg.p, 101);
        assert_eq!(cfg.seed, 3);
        assert!(cfg.strong);
        assert_eq!(cfg.degree_bound, DEFAULT_DEGREE_BOUND);
        assert_eq!(cfg.curve_coeffs(), vec![1, 1, 0, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("p = 101").is_err());
        assert!(RunConfig::parse("p = 101\nf = x^5+1\ncolor = red").is_err());
        let mut cfg = RunConfig::demo_g2();
        cfg.window = 5;
        assert!(cfg.check().is_err());
    }

    #[test]
    fn negative_coefficients_reduce() {
        let mut cfg = RunConfig::demo_g2();
        cfg.f = vec![-1, 0, 0, 0, 0, 1];
        assert_eq!(cfg.curve_coeffs()[0], 100);
    }
}
