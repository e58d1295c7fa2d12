//! Plain-text instance files.
//!
//! ```text
//! # theta(4), six subrepresentations
//! vertices 2
//! arrow 0 1
//! arrow 0 1
//! arrow 0 1
//! arrow 0 1
//! alpha 3 3
//! beta 1 2
//! ```
//!
//! Optional `mu <vertex>:<partition>` lines give a vertex labeling; vertices
//! without one get `()`. Everything after `#` on a line is ignored.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::covariants::VertexLabeling;
use crate::partition::Partition;
use crate::quiver::{euler_form_unchecked, DimVector, Quiver, QuiverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("beta exceeds alpha at vertex {0}")]
    BetaExceedsAlpha(usize),
}

/// A quiver with `β ⊆ α` and an optional vertex labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub quiver: Quiver,
    pub beta: DimVector,
    pub alpha: DimVector,
    pub mu: Option<VertexLabeling>,
}

impl Instance {
    pub fn new(quiver: Quiver, beta: DimVector, alpha: DimVector) -> Self {
        Instance {
            quiver,
            beta,
            alpha,
            mu: None,
        }
    }

    pub fn with_mu(mut self, mu: VertexLabeling) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn gamma(&self) -> DimVector {
        self.alpha.checked_sub(&self.beta).expect("beta fits in alpha")
    }

    /// `⟨β, γ⟩`.
    pub fn pairing(&self) -> i64 {
        euler_form_unchecked(&self.quiver, &self.beta, &self.gamma())
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &DimVector| v.0.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        write!(f, "{}", self.quiver)?;
        writeln!(f, "alpha {}", join(&self.alpha))?;
        writeln!(f, "beta {}", join(&self.beta))?;
        if let Some(mu) = &self.mu {
            for (x, p) in mu.0.iter().enumerate() {
                writeln!(f, "mu {x}:{p}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Instance {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut nvertices = None;
        let mut arrows = Vec::new();
        let mut alpha = None;
        let mut beta = None;
        let mut mu: Vec<(usize, usize, Partition)> = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| ParseError::Line { line, message };
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (key, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
            let rest = rest.trim();
            let numbers = || -> Result<Vec<usize>, ParseError> {
                rest.split_whitespace()
                    .map(|t| {
                        t.parse::<usize>()
                            .map_err(|_| err(format!("expected a nonnegative integer, got {t:?}")))
                    })
                    .collect()
            };
            match key {
                "vertices" => {
                    let v = numbers()?;
                    if v.len() != 1 || nvertices.is_some() {
                        return Err(err("expected a single `vertices N` line".into()));
                    }
                    nvertices = Some(v[0]);
                }
                "arrow" => {
                    let v = numbers()?;
                    if v.len() != 2 {
                        return Err(err("expected `arrow <tail> <head>`".into()));
                    }
                    arrows.push((v[0], v[1]));
                }
                "alpha" | "beta" => {
                    let slot = if key == "alpha" { &mut alpha } else { &mut beta };
                    if slot.is_some() {
                        return Err(err(format!("duplicate `{key}` line")));
                    }
                    *slot = Some((line, DimVector(numbers()?)));
                }
                "mu" => {
                    let (v, p) = rest
                        .split_once(':')
                        .ok_or_else(|| err("expected `mu <vertex>:<partition>`".into()))?;
                    let v: usize = v.trim().parse().map_err(|_| err(format!("bad vertex {v:?}")))?;
                    let p: Partition = p.trim().parse().map_err(|e| err(format!("{e}")))?;
                    mu.push((line, v, p));
                }
                other => return Err(err(format!("unknown keyword {other:?}"))),
            }
        }
        let n = nvertices.ok_or(ParseError::Missing("vertices"))?;
        let quiver = Quiver::new(n, arrows)?;
        let (aline, alpha) = alpha.ok_or(ParseError::Missing("alpha"))?;
        let (bline, beta) = beta.ok_or(ParseError::Missing("beta"))?;
        for (line, v) in [(aline, &alpha), (bline, &beta)] {
            if v.len() != n {
                return Err(ParseError::Line {
                    line,
                    message: format!("expected {n} entries, got {}", v.len()),
                });
            }
        }
        if let Some(x) = (0..n).find(|&x| beta[x] > alpha[x]) {
            return Err(ParseError::BetaExceedsAlpha(x));
        }
        let mu = if mu.is_empty() {
            None
        } else {
            let mut labels = vec![None; n];
            for (line, v, p) in mu {
                let slot = labels.get_mut(v).ok_or_else(|| ParseError::Line {
                    line,
                    message: format!("vertex {v} out of range"),
                })?;
                if slot.replace(p).is_some() {
                    return Err(ParseError::Line {
                        line,
                        message: format!("vertex {v} labelled twice"),
                    });
                }
            }
            Some(VertexLabeling(
                labels.into_iter().map(Option::unwrap_or_default).collect(),
            ))
        };
        Ok(Instance {
            quiver,
            beta,
            alpha,
            mu,
        })
    }
}
