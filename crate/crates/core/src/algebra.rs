//! Descriptors for the concrete Jordan algebra families.
//!
//! Four families are supported: the orthant algebra `R^n` with pointwise
//! product, real symmetric matrices `Sym(n)` with the symmetrized product,
//! spin factors `R^n (+) R`, and finite direct sums of those.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Norm carried by a direct sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SumNorm {
    /// Supremum of the summand norms; the sum is a JB-algebra.
    Inf,
    /// Hilbert sum; the sum is a JH-algebra.
    #[serde(rename = "2")]
    L2,
}

/// One of the supported Jordan algebra instances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AlgebraRepr", into = "AlgebraRepr")]
pub enum Algebra {
    Orthant(usize),
    Sym(usize),
    /// Spin factor over `H = R^n`; coordinates are `(a_1, .., a_n, alpha)`.
    Spin(usize),
    Sum {
        parts: Vec<Algebra>,
        norm: SumNorm,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum AlgebraRepr {
    Orthant {
        n: usize,
    },
    Sym {
        n: usize,
    },
    Spin {
        n: usize,
    },
    Sum {
        parts: Vec<AlgebraRepr>,
        #[serde(default = "default_sum_norm")]
        norm: SumNorm,
    },
}

fn default_sum_norm() -> SumNorm {
    SumNorm::Inf
}

impl TryFrom<AlgebraRepr> for Algebra {
    type Error = Error;

    fn try_from(repr: AlgebraRepr) -> Result<Self> {
        let alg = match repr {
            AlgebraRepr::Orthant { n } => Algebra::Orthant(n),
            AlgebraRepr::Sym { n } => Algebra::Sym(n),
            AlgebraRepr::Spin { n } => Algebra::Spin(n),
            AlgebraRepr::Sum { parts, norm } => Algebra::Sum {
                parts: parts
                    .into_iter()
                    .map(Algebra::try_from)
                    .collect::<Result<_>>()?,
                norm,
            },
        };
        alg.validate()?;
        Ok(alg)
    }
}

impl From<Algebra> for AlgebraRepr {
    fn from(alg: Algebra) -> Self {
        match alg {
            Algebra::Orthant(n) => AlgebraRepr::Orthant { n },
            Algebra::Sym(n) => AlgebraRepr::Sym { n },
            Algebra::Spin(n) => AlgebraRepr::Spin { n },
            Algebra::Sum { parts, norm } => AlgebraRepr::Sum {
                parts: parts.into_iter().map(AlgebraRepr::from).collect(),
                norm,
            },
        }
    }
}

impl Algebra {
    /// Direct sum with the supremum norm.
    pub fn sum_inf(parts: Vec<Algebra>) -> Result<Self> {
        let alg = Algebra::Sum {
            parts,
            norm: SumNorm::Inf,
        };
        alg.validate()?;
        Ok(alg)
    }

    /// Direct sum with the Hilbert (l2) norm.
    pub fn sum_l2(parts: Vec<Algebra>) -> Result<Self> {
        let alg = Algebra::Sum {
            parts,
            norm: SumNorm::L2,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Algebra::Orthant(n) | Algebra::Sym(n) | Algebra::Spin(n) => {
                if *n == 0 {
                    return Err(Error::InvalidDescriptor(format!(
                        "{self}: size must be positive"
                    )));
                }
                Ok(())
            }
            Algebra::Sum { parts, .. } => {
                if parts.is_empty() {
                    return Err(Error::InvalidDescriptor(
                        "direct sum needs at least one part".into(),
                    ));
                }
                for part in parts {
                    if part.is_sum() {
                        return Err(Error::InvalidDescriptor(
                            "direct sums may not be nested".into(),
                        ));
                    }
                    part.validate()?;
                }
                Ok(())
            }
        }
    }

    /// Coordinate dimension of the underlying vector space.
    pub fn dim(&self) -> usize {
        match self {
            Algebra::Orthant(n) => *n,
            Algebra::Sym(n) => n * (n + 1) / 2,
            Algebra::Spin(n) => n + 1,
            Algebra::Sum { parts, .. } => parts.iter().map(Algebra::dim).sum(),
        }
    }

    /// Number of elements in a Jordan frame (the rank of the algebra).
    pub fn rank(&self) -> usize {
        match self {
            Algebra::Orthant(n) | Algebra::Sym(n) => *n,
            Algebra::Spin(_) => 2,
            Algebra::Sum { parts, .. } => parts.iter().map(Algebra::rank).sum(),
        }
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, Algebra::Sum { .. })
    }

    /// Whether the coordinate inner product is the algebra's Hilbert structure.
    ///
    /// Every simple instance carries both structures; a direct sum carries the
    /// one named by its norm.
    pub fn is_inner_product_mode(&self) -> bool {
        !matches!(
            self,
            Algebra::Sum {
                norm: SumNorm::Inf,
                ..
            }
        )
    }

    /// Whether the declared norm is the order-unit (JB) norm.
    pub fn is_order_unit_mode(&self) -> bool {
        !matches!(
            self,
            Algebra::Sum {
                norm: SumNorm::L2,
                ..
            }
        )
    }

    /// Summands paired with their coordinate ranges. A simple algebra is its own single part.
    pub fn parts(&self) -> Vec<(&Algebra, Range<usize>)> {
        match self {
            Algebra::Sum { parts, .. } => {
                let mut start = 0;
                parts
                    .iter()
                    .map(|p| {
                        let r = start..start + p.dim();
                        start = r.end;
                        (p, r)
                    })
                    .collect()
            }
            _ => vec![(self, 0..self.dim())],
        }
    }

    /// Parses the `kind:n` shorthand used on the command line.
    pub fn parse_shorthand(s: &str) -> Result<Self> {
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidDescriptor(format!("expected `kind:n`, got `{s}`")))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidDescriptor(format!("bad size in `{s}`")))?;
        let alg = match kind.trim() {
            "orthant" => Algebra::Orthant(n),
            "sym" => Algebra::Sym(n),
            "spin" => Algebra::Spin(n),
            other => {
                return Err(Error::InvalidDescriptor(format!(
                    "unknown algebra kind `{other}` (expected orthant, sym or spin)"
                )))
            }
        };
        alg.validate()?;
        Ok(alg)
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Orthant(n) => write!(f, "orthant:{n}"),
            Algebra::Sym(n) => write!(f, "sym:{n}"),
            Algebra::Spin(n) => write!(f, "spin:{n}"),
            Algebra::Sum { parts, norm } => {
                write!(f, "sum[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                let tag = match norm {
                    SumNorm::Inf => "inf",
                    SumNorm::L2 => "l2",
                };
                write!(f, "]_{tag}")
            }
        }
    }
}
