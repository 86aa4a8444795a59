//! Exact edge lengths: a positive rational coefficient times a declared unit.
//!
//! Units are tokens the user declares pairwise incommensurable (for example
//! `one`, `sqrt3`, `pi`). Every divisibility question is answered on the
//! rational coefficients alone; the decimal approximation of a unit is only
//! used for ordering and reporting.

mod lambda;

pub use lambda::{
    build_lambda_subgraph, build_lambda_subgraph_numeric, candidate_steps, cycle_unit, lambda_g,
    CandidateStep, LambdaG, LambdaSubgraph, Member, StepSource, DEFAULT_NUMERIC_REL_TOL,
};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::scalar::Real;

/// Index of a unit in a [`UnitTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitId(pub usize);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LengthError {
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("unit `{0}` declared twice")]
    DuplicateUnit(String),
    #[error("unit `{token}` must have a positive finite approximation, got {value}")]
    NonpositiveUnit { token: String, value: f64 },
    #[error("coefficient must be positive, got {0}")]
    NonpositiveCoefficient(BigRational),
}

#[derive(Clone, Debug, PartialEq)]
struct UnitEntry {
    token: String,
    value: f64,
}

/// Declared units with their decimal approximations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UnitTable {
    entries: Vec<UnitEntry>,
}

impl UnitTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, token: &str, value: f64) -> Result<UnitId, LengthError> {
        if self.id(token).is_some() {
            return Err(LengthError::DuplicateUnit(token.to_string()));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(LengthError::NonpositiveUnit {
                token: token.to_string(),
                value,
            });
        }
        self.entries.push(UnitEntry {
            token: token.to_string(),
            value,
        });
        Ok(UnitId(self.entries.len() - 1))
    }

    pub fn id(&self, token: &str) -> Option<UnitId> {
        self.entries.iter().position(|u| u.token == token).map(UnitId)
    }

    pub fn token(&self, id: UnitId) -> &str {
        &self.entries[id.0].token
    }

    pub fn value(&self, id: UnitId) -> f64 {
        self.entries[id.0].value
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (UnitId, &str, f64)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, u)| (UnitId(i), u.token.as_str(), u.value))
    }

    /// Replaces the approximation of a unit. Exact results never depend on it.
    pub fn set_value(&mut self, id: UnitId, value: f64) -> Result<(), LengthError> {
        if !(value.is_finite() && value > 0.0) {
            return Err(LengthError::NonpositiveUnit {
                token: self.token(id).to_string(),
                value,
            });
        }
        self.entries[id.0].value = value;
        Ok(())
    }
}

/// `coeff * unit` with `coeff > 0` kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Measure {
    coeff: BigRational,
    unit: UnitId,
}

impl Measure {
    pub fn new(coeff: BigRational, unit: UnitId) -> Result<Self, LengthError> {
        if !coeff.is_positive() {
            return Err(LengthError::NonpositiveCoefficient(coeff));
        }
        // BigRational normalises on construction, so the invariant gcd(p, q) = 1 holds.
        Ok(Self { coeff, unit })
    }

    pub fn from_ratio(p: i64, q: i64, unit: UnitId) -> Result<Self, LengthError> {
        if q == 0 {
            return Err(LengthError::NonpositiveCoefficient(BigRational::zero()));
        }
        Self::new(BigRational::new(BigInt::from(p), BigInt::from(q)), unit)
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn unit(&self) -> UnitId {
        self.unit
    }

    pub fn numer(&self) -> &BigInt {
        self.coeff.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.coeff.denom()
    }

    /// Numeric value from the unit approximation.
    pub fn approx<T: Real>(&self, units: &UnitTable) -> T {
        T::of(ratio_to_f64(&self.coeff) * units.value(self.unit))
    }

    /// `self / n`.
    pub fn divided_by(&self, n: u64) -> Self {
        Self {
            coeff: &self.coeff / BigRational::from_integer(BigInt::from(n)),
            unit: self.unit,
        }
    }

    /// `Some(n)` when `self = n * other` for a positive integer `n`.
    pub fn multiple_of(&self, other: &Measure) -> Option<BigUint> {
        if self.unit != other.unit {
            return None;
        }
        let q = &self.coeff / &other.coeff;
        if q.is_integer() && q.is_positive() {
            q.to_integer().to_biguint()
        } else {
            None
        }
    }

    /// Renders as `p/q token`.
    pub fn display<'a>(&'a self, units: &'a UnitTable) -> MeasureDisplay<'a> {
        MeasureDisplay {
            measure: self,
            units,
        }
    }
}

pub struct MeasureDisplay<'a> {
    measure: &'a Measure,
    units: &'a UnitTable,
}

impl fmt::Display for MeasureDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} {}",
            self.measure.numer(),
            self.measure.denom(),
            self.units.token(self.measure.unit)
        )
    }
}

/// Length `L(e)` of an edge.
pub type ExactLength = Measure;

/// Half-wavelength `s = pi / sqrt(lambda)`; encodes the candidate `lambda = pi^2 / s^2`.
pub type Step = Measure;

/// `pi^2 / s^2` evaluated from the unit approximation.
pub fn step_lambda<T: Real>(step: &Step, units: &UnitTable) -> T {
    let s: T = step.approx(units);
    T::PI() * T::PI() / (s * s)
}

/// gcd of positive rationals: `gcd(p1, p2) / lcm(q1, q2)` for values in lowest terms.
pub fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    BigRational::new(num, den)
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large parts: scale via bit lengths before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub(crate) fn biguint_is_odd(n: &BigUint) -> bool {
    n.is_odd()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(&r(1, 2), &r(1, 3)), r(1, 6));
        assert_eq!(rational_gcd(&r(2, 3), &r(4, 9)), r(2, 9));
        assert_eq!(rational_gcd(&r(3, 1), &r(3, 1)), r(3, 1));
    }

    #[test]
    fn multiple_test_is_exact() {
        let mut units = UnitTable::new();
        let one = units.declare("one", 1.0).unwrap();
        let pi = units.declare("pi", std::f64::consts::PI).unwrap();
        let l = Measure::from_ratio(3, 2, one).unwrap();
        let s = Measure::from_ratio(1, 4, one).unwrap();
        assert_eq!(l.multiple_of(&s), Some(BigUint::from(6u32)));
        assert_eq!(s.multiple_of(&l), None);
        let other = Measure::from_ratio(1, 4, pi).unwrap();
        assert_eq!(l.multiple_of(&other), None);
    }

    #[test]
    fn rejects_bad_declarations() {
        let mut units = UnitTable::new();
        units.declare("one", 1.0).unwrap();
        assert!(units.declare("one", 2.0).is_err());
        assert!(units.declare("neg", -1.0).is_err());
        assert!(Measure::from_ratio(0, 1, UnitId(0)).is_err());
        assert!(Measure::from_ratio(-1, 2, UnitId(0)).is_err());
    }

    #[test]
    fn normalises_coefficients() {
        let m = Measure::from_ratio(4, 6, UnitId(0)).unwrap();
        assert_eq!(m.numer(), &BigInt::from(2));
        assert_eq!(m.denom(), &BigInt::from(3));
    }
}
