use std::fmt;

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polyrat::{roots, Domain, PoleSet, Poly, Rational, Root};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

/// Whether `lim (x - x0) F(x)` at the limit point is the signal's time average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Applicability {
    /// The time average exists and equals the limit.
    Applicable,
    /// The limit is finite but the signal has no time average.
    FormalOnly,
    /// The limit is infinite (a pole of order two or more at the limit point).
    Divergent,
}

impl fmt::Display for Applicability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Applicability::Applicable => "Applicable",
            Applicability::FormalOnly => "FormalOnly",
            Applicability::Divergent => "Divergent",
        };
        f.write_str(s)
    }
}

/// Result of a generalized final-value evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict<T> {
    /// The time average; present only for [`Applicability::Applicable`].
    pub value: Option<T>,
    /// `lim (z-1)F(z)` or `lim sF(s)` whenever it is finite.
    pub formal_limit: Option<Complex<T>>,
    pub applicability: Applicability,
    /// Poles of `(x - x0) F(x)` after every cancellation.
    pub diagnostics: PoleSet<T>,
    pub notes: Vec<String>,
}

/// Everything the classifier worked out; [`Verdict`] is a projection of it.
#[derive(Debug, Clone)]
pub(crate) struct Analysis<T> {
    pub applicability: Applicability,
    pub formal_limit: Option<Complex<T>>,
    pub poles: PoleSet<T>,
    pub notes: Vec<String>,
}

enum Region {
    Inside,
    Boundary,
    Outside,
}

fn region<T: Scalar>(domain: Domain, p: Complex<T>, tol: &Tolerances) -> Region {
    match domain {
        Domain::Z => {
            let band = T::lit(tol.unit_circle);
            let r = p.norm();
            if (r - T::one()).abs() <= band {
                Region::Boundary
            } else if r < T::one() {
                Region::Inside
            } else {
                Region::Outside
            }
        }
        Domain::S => {
            let band = T::lit(tol.imaginary_axis);
            if p.re.abs() <= band {
                Region::Boundary
            } else if p.re < T::zero() {
                Region::Inside
            } else {
                Region::Outside
            }
        }
    }
}

fn at_limit_point<T: Scalar>(domain: Domain, p: Complex<T>, tol: &Tolerances) -> bool {
    let x0: Complex<T> = domain.limit_point();
    let band = match domain {
        Domain::Z => T::lit(tol.unit_circle),
        Domain::S => T::lit(tol.imaginary_axis),
    };
    (p - x0).norm() <= band
}

fn fmt_point<T: Scalar>(p: Complex<T>) -> String {
    let re = p.re.as_f64();
    let im = p.im.as_f64();
    format!("{re:.6}{im:+.6}i")
}

/// Applies the pole-geometry criterion to `F`.
///
/// `(x - x0) F` is formed, deflated at `x0`, and stripped of every remaining
/// pole-zero cancellation. A surviving pole at `x0` means the limit is
/// infinite. Otherwise the limit is an average iff no pole lies outside the
/// closed stability region (unit disk for z, left half-plane for s) and the
/// boundary poles are simple.
pub(crate) fn analyze<T: Scalar>(f: &Rational<T>, tol: &Tolerances) -> Result<Analysis<T>> {
    let domain = f.domain();
    let x = domain.variable();
    let x0: Complex<T> = domain.limit_point();
    let vanish = T::lit(tol.vanish).max(T::epsilon() * T::lit(64.0));
    let mut notes = Vec::new();

    if f.is_zero() {
        return Ok(Analysis {
            applicability: Applicability::Applicable,
            formal_limit: Some(Complex::zero()),
            poles: PoleSet::empty(T::lit(tol.cluster)),
            notes: vec!["zero transform".into()],
        });
    }
    if !f.is_proper() {
        notes.push(format!("transform is improper in {x}; the polynomial part is not a causal signal"));
    }

    let multiplied = f.mul_poly(&Poly::linear(x0));
    let (deflated, cancelled) = multiplied.reduce_at_point(x0, vanish);
    let limit_label = match domain {
        Domain::Z => "(z-1)",
        Domain::S => "s",
    };
    if cancelled > 0 {
        let what = if cancelled == 1 { "factor" } else { "factors" };
        notes.push(format!("cancelled {cancelled} {what} of {limit_label} at the limit point"));
    }
    let (reduced, common) = deflated.cancel_common_roots(tol)?;
    for c in &common {
        notes.push(format!(
            "cancelled pole-zero pair at {} (multiplicity {})",
            fmt_point(c.location),
            c.multiplicity
        ));
    }
    let poles = PoleSet {
        poles: roots(reduced.denominator(), tol)?,
        tolerance_used: T::lit(tol.cluster),
    };

    let surviving: Vec<&Root<T>> = poles.iter().filter(|p| at_limit_point(domain, p.location, tol)).collect();
    if reduced.denominator().vanishes_at(x0, vanish) || !surviving.is_empty() {
        let order = surviving.iter().map(|p| p.multiplicity).sum::<usize>().max(1);
        notes.push(format!(
            "pole of order {} at {x} = {} survives; {limit_label}F has no finite limit",
            order,
            fmt_point(x0)
        ));
        return Ok(Analysis { applicability: Applicability::Divergent, formal_limit: None, poles, notes });
    }

    let formal = reduced.eval(x0);
    let mut blocked = false;
    let mut boundary_simple = Vec::new();
    for p in poles.iter() {
        match region(domain, p.location, tol) {
            Region::Inside => {}
            Region::Outside => {
                blocked = true;
                notes.push(match domain {
                    Domain::Z => format!("pole outside closed unit disk at {}", fmt_point(p.location)),
                    Domain::S => format!("pole in open right half-plane at {}", fmt_point(p.location)),
                });
            }
            Region::Boundary if p.multiplicity > 1 => {
                blocked = true;
                let where_ = match domain {
                    Domain::Z => "unit circle",
                    Domain::S => "imaginary axis",
                };
                notes.push(format!(
                    "repeated pole (multiplicity {}) on the {where_} at {}",
                    p.multiplicity,
                    fmt_point(p.location)
                ));
            }
            Region::Boundary => boundary_simple.push(fmt_point(p.location)),
        }
    }
    if !boundary_simple.is_empty() {
        let where_ = match domain {
            Domain::Z => "unit circle",
            Domain::S => "imaginary axis",
        };
        notes.push(format!("simple poles on the {where_}: {}", boundary_simple.join(", ")));
    }

    let imag_tol = T::lit(1e-9).max(T::epsilon() * T::lit(100.0));
    let applicability = if blocked {
        Applicability::FormalOnly
    } else if formal.im.abs() > imag_tol * T::one().max(formal.norm()) {
        notes.push("limit is not real; no real time average".into());
        Applicability::FormalOnly
    } else {
        Applicability::Applicable
    };
    if applicability == Applicability::FormalOnly {
        notes.push("formal limit exists but is not a time average".into());
    }
    notes.push(integral_note(&reduced, formal, x0, vanish));

    Ok(Analysis { applicability, formal_limit: Some(formal), poles, notes })
}

/// How the running-average transform integral behaves near the limit point.
/// Recorded for information only; it does not gate the verdict.
fn integral_note<T: Scalar>(reduced: &Rational<T>, formal: Complex<T>, x0: Complex<T>, vanish: T) -> String {
    let x = reduced.domain().variable();
    let kernel = match reduced.domain() {
        Domain::Z => "F(w)/(w-1)",
        Domain::S => "F(w)/w",
    };
    if formal.norm() > vanish {
        return format!("integral of {kernel} from {x} to infinity diverges like 1/({x}-{}) at the limit point", fmt_point(x0));
    }
    // F(x0) = d/dx [(x-x0)F] at x0 when the limit is zero.
    let (q, _) = reduced.numerator().divide_linear(x0);
    let value_at_limit = q.eval(x0) / reduced.denominator().eval(x0);
    if value_at_limit.norm() > vanish {
        format!("integral of {kernel} from {x} to infinity diverges logarithmically at the limit point")
    } else {
        format!("integral of {kernel} from {x} to infinity stays finite at the limit point")
    }
}

/// Classification alone, without the limit value.
pub fn classify_applicability<T: Scalar>(
    f: &Rational<T>,
    tol: &Tolerances,
) -> Result<(Applicability, PoleSet<T>, Vec<String>)> {
    let a = analyze(f, tol)?;
    Ok((a.applicability, a.poles, a.notes))
}

pub(crate) fn verdict_from<T: Scalar>(a: Analysis<T>) -> Verdict<T> {
    let value = match a.applicability {
        Applicability::Applicable => a.formal_limit.map(|c| c.re),
        _ => None,
    };
    Verdict {
        value,
        formal_limit: a.formal_limit,
        applicability: a.applicability,
        diagnostics: a.poles,
        notes: a.notes,
    }
}

/// `lim_{z->1} (z-1) F(z)` with its applicability class.
pub fn final_value_z<T: Scalar>(f: &Rational<T>, tol: &Tolerances) -> Result<Verdict<T>> {
    f.ensure_domain(Domain::Z)?;
    Ok(verdict_from(analyze(f, tol)?))
}

/// `lim_{s->0} s F(s)` with its applicability class.
pub fn final_value_s<T: Scalar>(f: &Rational<T>, tol: &Tolerances) -> Result<Verdict<T>> {
    f.ensure_domain(Domain::S)?;
    Ok(verdict_from(analyze(f, tol)?))
}

/// Dispatches on the transform's own domain.
pub fn final_value<T: Scalar>(f: &Rational<T>, tol: &Tolerances) -> Result<Verdict<T>> {
    Ok(verdict_from(analyze(f, tol)?))
}

/// Mean of one period of an N-periodic sequence.
pub fn periodic_average<T: Scalar>(pattern: &[T]) -> Result<T> {
    if pattern.is_empty() {
        return Err(crate::Error::EmptyPattern);
    }
    let sum = pattern.iter().fold(T::zero(), |acc, &x| acc + x);
    Ok(sum / T::from_usize(pattern.len()).unwrap())
}
