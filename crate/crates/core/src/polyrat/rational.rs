use std::fmt;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::roots::{roots, PoleSet, Root};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

/// Which transform a rational function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// z-transform of a causal sequence; limit point z = 1.
    Z,
    /// Laplace transform of a causal function; limit point s = 0.
    S,
}

impl Domain {
    /// Point at which the final-value limit is taken.
    pub fn limit_point<T: Scalar>(self) -> Complex<T> {
        match self {
            Domain::Z => Complex::one(),
            Domain::S => Complex::zero(),
        }
    }

    pub fn variable(self) -> &'static str {
        match self {
            Domain::Z => "z",
            Domain::S => "s",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.variable())
    }
}

/// A ratio of polynomials tagged with its transform domain.
#[derive(Clone, PartialEq)]
pub struct Rational<T> {
    numerator: Poly<T>,
    denominator: Poly<T>,
    domain: Domain,
}

impl<T: Scalar> Rational<T> {
    pub fn new(numerator: Poly<T>, denominator: Poly<T>, domain: Domain) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { numerator, denominator, domain })
    }

    /// Builds from ascending real coefficient lists.
    pub fn from_coeffs(numerator: &[T], denominator: &[T], domain: Domain) -> Result<Self> {
        Self::new(Poly::from_real(numerator), Poly::from_real(denominator), domain)
    }

    /// Builds a z-domain transform written in powers of `z^{-1}`:
    /// `(b0 + b1 z^-1 + ...) / (a0 + a1 z^-1 + ...)`, cleared to positive powers.
    pub fn from_z_inverse(numerator: &[T], denominator: &[T]) -> Result<Self> {
        let len = numerator.len().max(denominator.len());
        let clear = |c: &[T]| {
            let mut v: Vec<T> = c.to_vec();
            v.resize(len, T::zero());
            v.reverse();
            Poly::from_real(&v)
        };
        Self::new(clear(numerator), clear(denominator), Domain::Z)
    }

    pub fn zero(domain: Domain) -> Self {
        Self { numerator: Poly::zero(), denominator: Poly::one(), domain }
    }

    pub fn constant(c: Complex<T>, domain: Domain) -> Self {
        Self { numerator: Poly::constant(c), denominator: Poly::one(), domain }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.denominator
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// `numerator(x) / denominator(x)`; infinite or NaN at a pole.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.numerator.eval(x) / self.denominator.eval(x)
    }

    /// Proper iff numerator degree does not exceed denominator degree.
    pub fn is_proper(&self) -> bool {
        self.numerator.degree().unwrap_or(0) <= self.denominator.degree().unwrap_or(0)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.is_zero()
            || self.numerator.degree().unwrap_or(0) < self.denominator.degree().unwrap_or(0)
    }

    pub fn ensure_domain(&self, expected: Domain) -> Result<()> {
        if self.domain == expected {
            Ok(())
        } else {
            Err(Error::WrongDomain { expected, found: self.domain })
        }
    }

    fn check_same_domain(&self, other: &Self) -> Result<()> {
        other.ensure_domain(self.domain)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_domain(other)?;
        if self.denominator == other.denominator {
            return Self::new(&self.numerator + &other.numerator, self.denominator.clone(), self.domain);
        }
        let numerator = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        Self::new(numerator, &self.denominator * &other.denominator, self.domain)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_domain(other)?;
        Self::new(
            &self.numerator * &other.numerator,
            &self.denominator * &other.denominator,
            self.domain,
        )
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { numerator: self.numerator.scale(c), ..self.clone() }
    }

    pub fn mul_poly(&self, p: &Poly<T>) -> Self {
        Self { numerator: &self.numerator * p, ..self.clone() }
    }

    /// Deflates `(x - x0)` from both numerator and denominator as long as both
    /// vanish at `x0`. Returns the reduced transform and the number of
    /// cancelled factors.
    pub fn reduce_at_point(&self, x0: Complex<T>, tol: T) -> (Self, usize) {
        if self.numerator.is_zero() {
            return (Self::zero(self.domain), 0);
        }
        let mut numerator = self.numerator.clone();
        let mut denominator = self.denominator.clone();
        let mut cancelled = 0;
        while numerator.degree().unwrap_or(0) >= 1
            && denominator.degree().unwrap_or(0) >= 1
            && numerator.vanishes_at(x0, tol)
            && denominator.vanishes_at(x0, tol)
        {
            numerator = numerator.divide_linear(x0).0;
            denominator = denominator.divide_linear(x0).0;
            cancelled += 1;
        }
        (Self { numerator, denominator, domain: self.domain }, cancelled)
    }

    /// Cancels every root shared by numerator and denominator (matched within
    /// the clustering tolerance) by synthetic division at the pole location.
    /// Returns the reduced transform and the cancelled factors.
    pub fn cancel_common_roots(&self, tol: &Tolerances) -> Result<(Self, Vec<Root<T>>)> {
        if self.numerator.is_zero() {
            return Ok((Self::zero(self.domain), Vec::new()));
        }
        let zeros = roots(&self.numerator, tol)?;
        let poles = roots(&self.denominator, tol)?;
        let cluster = T::lit(tol.cluster);
        let mut numerator = self.numerator.clone();
        let mut denominator = self.denominator.clone();
        let mut cancelled = Vec::new();
        for pole in &poles {
            let scale = T::one().max(pole.location.norm());
            let shared: usize = zeros
                .iter()
                .filter(|z| (z.location - pole.location).norm() <= cluster * scale)
                .map(|z| z.multiplicity)
                .sum();
            let count = shared.min(pole.multiplicity);
            for _ in 0..count {
                numerator = numerator.divide_linear(pole.location).0;
                denominator = denominator.divide_linear(pole.location).0;
            }
            if count > 0 {
                cancelled.push(Root { location: pole.location, multiplicity: count });
            }
        }
        Ok((Self { numerator, denominator, domain: self.domain }, cancelled))
    }

    /// Poles of the transform as written (no cancellation).
    pub fn poles(&self, tol: &Tolerances) -> Result<PoleSet<T>> {
        Ok(PoleSet {
            poles: roots(&self.denominator, tol)?,
            tolerance_used: T::lit(tol.cluster),
        })
    }

    /// Drops imaginary parts of every coefficient.
    pub fn real_part(&self) -> Self {
        Self {
            numerator: self.numerator.real_part(),
            denominator: self.denominator.real_part(),
            domain: self.domain,
        }
    }

    /// Multiplies numerator and denominator by the same constant so the
    /// denominator's leading coefficient is one.
    pub fn monic(&self) -> Self {
        let lead = self.denominator.leading();
        let inv = lead.inv();
        Self {
            numerator: self.numerator.scale(inv),
            denominator: self.denominator.scale(inv),
            domain: self.domain,
        }
    }

    pub fn cast<U: Scalar>(&self) -> Rational<U> {
        Rational {
            numerator: self.numerator.cast(),
            denominator: self.denominator.cast(),
            domain: self.domain,
        }
    }

    /// Cross-multiplication check `a/b == c/d` at `points`.
    pub fn agrees_with(&self, other: &Self, points: &[Complex<T>], tol: T) -> bool {
        points.iter().all(|&x| {
            let lhs = self.numerator.eval(x) * other.denominator.eval(x);
            let rhs = other.numerator.eval(x) * self.denominator.eval(x);
            let scale = self.numerator.magnitude_at(x) * other.denominator.magnitude_at(x)
                + other.numerator.magnitude_at(x) * self.denominator.magnitude_at(x);
            (lhs - rhs).norm() <= tol * scale.max(T::min_positive_value())
        })
    }
}

impl<T: Scalar> fmt::Debug for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:?}] / [{:?}] in {}",
            self.numerator, self.denominator, self.domain
        )
    }
}
