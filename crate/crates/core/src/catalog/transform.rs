use num_complex::Complex;
use num_traits::Zero;

use super::{same_point, ExpPolyTerm, SignalBody, SignalSpec, TimeDomain};
use crate::error::{Error, Result};
use crate::polyrat::{Domain, Poly};
use crate::RationalTransform;

/// Closed-form rational transform of a term-sum or periodic spec.
///
/// Terms sharing a base are combined over a single `(x - base)^{K+1}`
/// denominator so the result carries no spurious repeated poles. Since the
/// signal is real, the imaginary parts left over from conjugate pairs are
/// roundoff and are dropped.
pub fn transform_of(spec: &SignalSpec) -> Result<RationalTransform> {
    match spec.body() {
        SignalBody::Product(..) => Err(Error::UnsupportedComposition),
        SignalBody::Periodic(pattern) => periodic_transform(pattern),
        SignalBody::Terms(terms) => {
            let domain = spec.domain().transform_domain();
            let mut total = RationalTransform::zero(domain);
            for (base, group) in group_by_base(terms) {
                let piece = match spec.domain() {
                    TimeDomain::Discrete => discrete_group(base, &group),
                    TimeDomain::Continuous => continuous_group(base, &group),
                };
                total = total.add(&piece)?;
            }
            Ok(total.real_part())
        }
    }
}

fn group_by_base(terms: &[ExpPolyTerm]) -> Vec<(Complex<f64>, Vec<ExpPolyTerm>)> {
    let mut groups: Vec<(Complex<f64>, Vec<ExpPolyTerm>)> = Vec::new();
    for t in terms.iter().filter(|t| !t.amplitude.is_zero()) {
        match groups.iter_mut().find(|(b, _)| same_point(*b, t.base)) {
            Some((_, g)) => g.push(*t),
            None => groups.push((t.base, vec![*t])),
        }
    }
    // Representative base: the mean of the merged bases, snapped to the real
    // axis when the imaginary part is roundoff.
    for (base, group) in &mut groups {
        let mean = group.iter().fold(Complex::zero(), |acc, t| acc + t.base) / group.len() as f64;
        *base = if mean.im.abs() <= 1e-12 * 1f64.max(mean.norm()) { Complex::new(mean.re, 0.0) } else { mean };
    }
    groups
}

/// Numerator of `Z{n^k p^n} = N_k(z) / (z - p)^{k+1}`, from
/// `n x[n] <-> -z X'(z)`: `N_{k+1} = z ((k+1) N_k - (z - p) N_k')`.
fn geometric_moment_numerator(base: Complex<f64>, k: u32) -> Poly<f64> {
    let z = Poly::monomial(Complex::new(1.0, 0.0), 1);
    let shift = Poly::linear(base);
    let mut n = z.clone();
    for j in 0..k {
        let grown = n.scale(Complex::new(f64::from(j + 1), 0.0));
        n = &z * &(&grown - &(&shift * &n.derivative()));
    }
    n
}

fn discrete_group(base: Complex<f64>, group: &[ExpPolyTerm]) -> RationalTransform {
    let top = group.iter().map(|t| t.power).max().unwrap_or(0);
    let shift = Poly::linear(base);
    let numerator = group.iter().fold(Poly::zero(), |acc, t| {
        let piece = &geometric_moment_numerator(base, t.power) * &shift.pow((top - t.power) as usize);
        &acc + &piece.scale(t.amplitude)
    });
    RationalTransform::new(numerator, shift.pow(top as usize + 1), Domain::Z).expect("nonzero denominator")
}

fn continuous_group(rate: Complex<f64>, group: &[ExpPolyTerm]) -> RationalTransform {
    // L{t^k e^{at}} = k! / (s - a)^{k+1}
    let top = group.iter().map(|t| t.power).max().unwrap_or(0);
    let shift = Poly::linear(rate);
    let numerator = group.iter().fold(Poly::zero(), |acc, t| {
        let factorial: f64 = (1..=t.power).map(f64::from).product();
        let piece = shift.pow((top - t.power) as usize).scale(t.amplitude * factorial);
        &acc + &piece
    });
    RationalTransform::new(numerator, shift.pow(top as usize + 1), Domain::S).expect("nonzero denominator")
}

/// Transform of the N-periodic sequence repeating `pattern` from n = 0:
/// `(sum_m x[m] z^{-m}) / (1 - z^{-N})`, returned in positive powers as
/// `(sum_m x[m] z^{N-m}) / (z^N - 1)`. No common factors are removed.
pub fn periodic_transform(pattern: &[f64]) -> Result<RationalTransform> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = pattern.len();
    let mut numerator = vec![0.0; n + 1];
    for (m, &x) in pattern.iter().enumerate() {
        numerator[n - m] = x;
    }
    let mut denominator = vec![0.0; n + 1];
    denominator[0] = -1.0;
    denominator[n] = 1.0;
    RationalTransform::from_coeffs(&numerator, &denominator, Domain::Z)
}

/// `Z{cos(n w) u[n]} = (1 - z^{-1} cos w) / (1 - 2 z^{-1} cos w + z^{-2})`.
pub fn cosine_transform(w: f64) -> RationalTransform {
    let c = w.cos();
    RationalTransform::from_z_inverse(&[1.0, -c], &[1.0, -2.0 * c, 1.0]).expect("nonzero denominator")
}

/// First `count` terms of the `z^{-1}` power series of a z-domain transform,
/// by long division (the difference-equation recursion of the denominator).
pub fn coefficients_from_transform(r: &RationalTransform, count: usize) -> Result<Vec<f64>> {
    r.ensure_domain(Domain::Z)?;
    if r.is_zero() {
        return Ok(vec![0.0; count]);
    }
    let num_degree = r.numerator().degree().unwrap_or(0);
    let den_degree = r.denominator().degree().unwrap_or(0);
    if num_degree > den_degree {
        return Err(Error::ImproperTransform { numerator: num_degree, denominator: den_degree });
    }
    // In z^{-1}: b[i] multiplies z^{-i} after dividing through by z^{den_degree}.
    let width = den_degree + 1;
    let b: Vec<Complex<f64>> = {
        let mut v = vec![Complex::zero(); width];
        for (j, &c) in r.numerator().coeffs().iter().enumerate() {
            v[den_degree - j] = c;
        }
        v
    };
    let a = r.denominator().reversed_padded(width);
    let lead = a[0];
    let mut out: Vec<Complex<f64>> = Vec::with_capacity(count);
    for n in 0..count {
        let mut acc = b.get(n).copied().unwrap_or_else(Complex::zero);
        for i in 1..width.min(n + 1) {
            acc -= a[i] * out[n - i];
        }
        out.push(acc / lead);
    }
    Ok(out.into_iter().map(|c| c.re).collect())
}
