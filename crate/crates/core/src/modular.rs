//! q-expansions of the level-one generators `c₄ = E₄`, `c₆ = E₆` and `Δ = η²⁴`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{rat, Coeff, LaurentSeries};

/// A q-series (no y-variables) tagged with its doubled weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub weight2: i32,
    pub series: LaurentSeries,
}

impl QSeries {
    pub fn new(weight2: i32, series: LaurentSeries) -> Result<Self> {
        if series.nvars() != 0 {
            return Err(Error::VarMismatch {
                left: 0,
                right: series.nvars(),
            });
        }
        Ok(QSeries { weight2, series })
    }

    pub fn qmax(&self) -> u32 {
        self.series.qmax()
    }

    pub fn coeff(&self, n: u32) -> Coeff {
        self.series.coeff(n, &[])
    }

    /// Coefficients `c₀ … c_qmax`, including zeros.
    pub fn coefficients(&self) -> Vec<Coeff> {
        (0..=self.qmax()).map(|n| self.coeff(n)).collect()
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        QSeries {
            weight2: self.weight2 + other.weight2,
            series: &self.series * &other.series,
        }
    }

    pub fn pow(&self, e: u32) -> QSeries {
        QSeries {
            weight2: self.weight2 * e as i32,
            series: self.series.pow(e),
        }
    }

    pub fn scale(&self, c: &Coeff) -> QSeries {
        QSeries {
            weight2: self.weight2,
            series: self.series.scale(c),
        }
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        if self.weight2 != other.weight2 {
            return Err(Error::InvalidArgument(format!(
                "cannot add weights {}/2 and {}/2",
                self.weight2, other.weight2
            )));
        }
        Ok(QSeries {
            weight2: self.weight2,
            series: self.series.checked_add(&other.series)?,
        })
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.scale(&rat(-1)))
    }

    /// True when every coefficient above q⁰ vanishes.
    pub fn is_constant(&self) -> bool {
        self.series.terms().all(|(n, _, _)| n == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularGenerator {
    E4,
    E6,
    Delta,
    Eta24,
}

impl FromStr for ModularGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e4" | "c4" => Ok(Self::E4),
            "e6" | "c6" => Ok(Self::E6),
            "delta" => Ok(Self::Delta),
            "eta24" => Ok(Self::Eta24),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for ModularGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::E4 => "E4",
            Self::E6 => "E6",
            Self::Delta => "Delta",
            Self::Eta24 => "Eta24",
        })
    }
}

/// σₖ(n), the sum of k-th powers of the divisors of n.
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

fn eisenstein(weight: u32, factor: i64, qmax: u32) -> LaurentSeries {
    let mut s = LaurentSeries::one(0, qmax);
    for n in 1..=qmax {
        let c = Coeff::from_integer(divisor_sigma(weight - 1, n as u64) * factor);
        s.add_term(n, vec![], c);
    }
    s
}

/// `q·∏_{m≥1}(1 − qᵐ)²⁴`.
fn eta24(qmax: u32) -> LaurentSeries {
    let mut s = LaurentSeries::monomial(0, qmax, 1, vec![], rat(1));
    let one = rat(1);
    for m in 1..qmax {
        for _ in 0..24 {
            s.mul_one_minus(m, &[], &one);
        }
    }
    s
}

pub fn mf_generator(gen: ModularGenerator, qmax: u32) -> QSeries {
    match gen {
        ModularGenerator::E4 => QSeries {
            weight2: 8,
            series: eisenstein(4, 240, qmax),
        },
        ModularGenerator::E6 => QSeries {
            weight2: 12,
            series: eisenstein(6, -504, qmax),
        },
        ModularGenerator::Delta | ModularGenerator::Eta24 => QSeries {
            weight2: 24,
            series: eta24(qmax),
        },
    }
}

/// Per-order residuals of `E₄³ − E₆² − 1728·Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub residuals: Vec<Coeff>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }

    /// Orders with a nonzero residual.
    pub fn failures(&self) -> Vec<u32> {
        self.residuals
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, _)| n as u32)
            .collect()
    }
}

pub fn verify_ring_relation_with(e4: &QSeries, e6: &QSeries, delta: &QSeries) -> Result<RelationReport> {
    let lhs = e4.pow(3).sub(&e6.pow(2))?;
    let res = lhs.sub(&delta.scale(&rat(1728)))?;
    Ok(RelationReport {
        residuals: res.coefficients(),
    })
}

pub fn mf_verify_ring_relation(qmax: u32) -> RelationReport {
    verify_ring_relation_with(
        &mf_generator(ModularGenerator::E4, qmax),
        &mf_generator(ModularGenerator::E6, qmax),
        &mf_generator(ModularGenerator::Delta, qmax),
    )
    .expect("generators have matching weights")
}
