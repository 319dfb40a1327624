use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Scalar;

/// Dense polynomial with complex coefficients, stored in ascending degree.
///
/// The zero polynomial has no coefficients. Every constructor and every
/// arithmetic result strips exactly-zero leading coefficients, so a nonzero
/// polynomial always has a nonzero top coefficient.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex::new(T::one(), T::zero()))
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Complex<T>, k: usize) -> Self {
        let mut coeffs = vec![Complex::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic linear factor `x - root`.
    pub fn linear(root: Complex<T>) -> Self {
        Self::new(vec![-root, Complex::new(T::one(), T::zero())])
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        roots.iter().fold(Self::one(), |acc, &r| &acc * &Self::linear(r))
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Complex<T> {
        self.coeffs.last().copied().unwrap_or_else(Complex::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, &c| acc * x + c)
    }

    /// `sum |a_k| |x|^k`, the magnitude against which `|p(x)|` is judged.
    pub fn magnitude_at(&self, x: Complex<T>) -> T {
        let r = x.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * r + c.norm())
    }

    pub fn max_coeff_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    /// True when `|p(x)| <= tol * sum |a_k| |x|^k`. The zero polynomial vanishes everywhere.
    pub fn vanishes_at(&self, x: Complex<T>, tol: T) -> bool {
        if self.is_zero() {
            return true;
        }
        self.eval(x).norm() <= tol * self.magnitude_at(x)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * T::from_usize(k).unwrap())
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Synthetic division by `(x - x0)`: returns the quotient and the remainder `p(x0)`.
    pub fn divide_linear(&self, x0: Complex<T>) -> (Self, Complex<T>) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Self::zero(), Complex::zero());
        }
        let mut quotient = vec![Complex::zero(); n - 1];
        let mut carry = Complex::zero();
        for k in (0..n).rev() {
            let value = self.coeffs[k] + carry * x0;
            if k == 0 {
                return (Self::new(quotient), value);
            }
            quotient[k - 1] = value;
            carry = value;
        }
        unreachable!()
    }

    /// Replaces coefficients by their real parts.
    pub fn real_part(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| Complex::new(c.re, T::zero()))
                .collect(),
        )
    }

    /// Largest imaginary part relative to the largest coefficient.
    pub fn relative_imaginary(&self) -> T {
        let scale = self.max_coeff_norm();
        if scale.is_zero() {
            return T::zero();
        }
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.im.abs())) / scale
    }

    /// Coefficients in powers of `x^{-1}` after multiplying by `x^{-degree}`:
    /// index `i` holds the coefficient of `x^{degree - i}`, padded to `len`.
    pub fn reversed_padded(&self, len: usize) -> Vec<Complex<T>> {
        let mut out: Vec<Complex<T>> = self.coeffs.iter().rev().copied().collect();
        out.resize(len.max(out.len()), Complex::zero());
        out
    }

    pub fn cast<U: Scalar>(&self) -> Poly<U> {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| Complex::new(U::lit(c.re.as_f64()), U::lit(c.im.as_f64())))
                .collect(),
        )
    }
}

impl<T: Scalar> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or_else(Complex::zero);
                let b = rhs.coeffs.get(k).copied().unwrap_or_else(Complex::zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Complex::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}
