use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Lowest representable finite perversity value.
pub const PERVERSITY_FLOOR: i64 = -1_000_000;

/// An integer extended by `-∞` and `+∞`.
///
/// Addition treats `-∞` as absorbing (`-∞ + +∞ = -∞`), which is the
/// convention for perverse degrees of vanishing cochains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtendedInt {
    pub const ZERO: Self = Self::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Self::Finite(v) => Some(v),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        match (self, other) {
            (Self::NegInf, _) | (_, Self::NegInf) => Self::NegInf,
            (Self::PosInf, _) | (_, Self::PosInf) => Self::PosInf,
            (Self::Finite(a), Self::Finite(b)) => Self::Finite(a.saturating_add(b)),
        }
    }

    pub fn add_int(self, k: i64) -> Self {
        self.add(Self::Finite(k))
    }
}

impl From<i64> for ExtendedInt {
    fn from(v: i64) -> Self {
        Self::Finite(v)
    }
}

impl fmt::Display for ExtendedInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInf => f.write_str("-inf"),
            Self::PosInf => f.write_str("inf"),
            Self::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtendedInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(Self::PosInf),
            "-inf" => Ok(Self::NegInf),
            t => t
                .parse::<i64>()
                .map(Self::Finite)
                .map_err(|_| Error::Perversity(format!("cannot parse value {t:?}"))),
        }
    }
}

/// A loose perversity `p̄: {1,…,n} → ℤ ∪ {+∞}`, with `p̄(0) = 0` implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perversity {
    values: Vec<ExtendedInt>,
}

impl Perversity {
    /// Finite values are clamped to [`PERVERSITY_FLOOR`]; `-∞` is rejected.
    pub fn new(values: Vec<ExtendedInt>) -> Result<Self> {
        values
            .into_iter()
            .map(|v| match v {
                ExtendedInt::NegInf => {
                    Err(Error::Perversity("-inf is not a perversity value".into()))
                }
                ExtendedInt::Finite(x) => Ok(ExtendedInt::Finite(x.max(PERVERSITY_FLOOR))),
                ExtendedInt::PosInf => Ok(v),
            })
            .collect::<Result<Vec<_>>>()
            .map(|values| Self { values })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| ExtendedInt::Finite(v)).collect())
            .expect("finite values are valid")
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, ExtendedInt::ZERO)
    }

    pub fn infinite(n: usize) -> Self {
        Self::constant(n, ExtendedInt::PosInf)
    }

    pub fn constant(n: usize, v: ExtendedInt) -> Self {
        Self::new(vec![v; n]).expect("constant perversity")
    }

    /// `t̄(ℓ) = ℓ − 2`.
    pub fn top(n: usize) -> Self {
        Self::from_ints(&(1..=n as i64).map(|l| l - 2).collect::<Vec<_>>())
    }

    /// Comma-separated values for `ℓ = 1..n`, `inf` allowed.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let values: Vec<ExtendedInt> = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',').map(str::parse).collect::<Result<_>>()?
        };
        if values.len() != n {
            return Err(Error::FormalDimension {
                expected: n,
                found: values.len(),
            });
        }
        Self::new(values)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[ExtendedInt] {
        &self.values
    }

    /// `p̄(ℓ)` for `0 ≤ ℓ ≤ n`.
    pub fn value(&self, l: usize) -> ExtendedInt {
        if l == 0 {
            ExtendedInt::ZERO
        } else {
            self.values[l - 1]
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n() == other.n() {
            Ok(())
        } else {
            Err(Error::FormalDimension {
                expected: self.n(),
                found: other.n(),
            })
        }
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(ExtendedInt, ExtendedInt) -> ExtendedInt,
    ) -> Result<Self> {
        self.check(other)?;
        Self::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.zip(other, ExtendedInt::add)
    }

    /// Pointwise minimum.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip(other, std::cmp::min)
    }

    /// Pointwise maximum.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip(other, std::cmp::max)
    }

    pub fn double(&self) -> Self {
        self.sum(self).expect("same dimension")
    }

    /// `p̄ + i` pointwise.
    pub fn shift(&self, i: i64) -> Self {
        Self::new(self.values.iter().map(|v| v.add_int(i)).collect()).expect("shift")
    }

    /// `L(p̄, i) = min(2p̄, p̄ + i)`.
    pub fn lifting(&self, i: i64) -> Self {
        self.double().meet(&self.shift(i)).expect("same dimension")
    }

    /// Pointwise `≤`.
    pub fn le(&self, other: &Self) -> bool {
        self.n() == other.n() && self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Pointwise comparison, `None` when incomparable or of different size.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        match (self.le(other), other.le(self)) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// `p̄(ℓ) ≤ p̄(ℓ+1) ≤ p̄(ℓ) + 1` for consecutive defined values.
    pub fn is_perversity(&self) -> bool {
        self.values
            .windows(2)
            .all(|w| w[0] <= w[1] && w[1] <= w[0].add_int(1))
    }

    /// A perversity with `p̄(1) = p̄(2) = 0` (where defined).
    pub fn is_gm(&self) -> bool {
        self.is_perversity() && self.values.iter().take(2).all(|&v| v == ExtendedInt::ZERO)
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
