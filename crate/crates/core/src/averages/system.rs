use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyrat::{Domain, PoleSet, Rational};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stability {
    /// Every pole strictly inside the unit disk / open left half-plane.
    Stable,
    /// No pole outside, at least one on the boundary band.
    Marginal,
    Unstable,
}

/// A linear time-invariant system given by its transfer function.
#[derive(Debug, Clone)]
pub struct System<T: Scalar> {
    transfer: Rational<T>,
    poles: PoleSet<T>,
    stability: Stability,
}

impl<T: Scalar> System<T> {
    /// Cancels common pole-zero pairs and classifies the remaining poles.
    pub fn new(transfer: Rational<T>, tol: &Tolerances) -> Result<Self> {
        let (transfer, _) = transfer.cancel_common_roots(tol)?;
        let poles = transfer.poles(tol)?;
        let mut stability = Stability::Stable;
        for p in poles.iter() {
            let (inside, boundary) = match transfer.domain() {
                Domain::Z => {
                    let band = T::lit(tol.unit_circle);
                    let r = p.location.norm();
                    (r < T::one() - band, (r - T::one()).abs() <= band)
                }
                Domain::S => {
                    let band = T::lit(tol.imaginary_axis);
                    (p.location.re < -band, p.location.re.abs() <= band)
                }
            };
            if boundary {
                stability = Stability::Marginal;
            } else if !inside {
                stability = Stability::Unstable;
                break;
            }
        }
        Ok(Self { transfer, poles, stability })
    }

    pub fn transfer(&self) -> &Rational<T> {
        &self.transfer
    }

    pub fn poles(&self) -> &PoleSet<T> {
        &self.poles
    }

    pub fn stability(&self) -> Stability {
        self.stability
    }

    pub fn domain(&self) -> Domain {
        self.transfer.domain()
    }

    /// `H(1)` for z-domain systems, `H(0)` for s-domain systems.
    pub fn dc_gain(&self, tol: &Tolerances) -> Result<Complex<T>> {
        let x0: Complex<T> = self.domain().limit_point();
        let vanish = T::lit(tol.vanish).max(T::epsilon() * T::lit(64.0));
        if self.transfer.denominator().vanishes_at(x0, vanish) {
            return Err(match self.domain() {
                Domain::Z => Error::PoleAtOne,
                Domain::S => Error::PoleAtZero,
            });
        }
        Ok(self.transfer.eval(x0))
    }

    /// Output average `DC gain * input average`; rejects anything but stable systems.
    pub fn output_average(&self, input_average: T, tol: &Tolerances) -> Result<T> {
        let gain = self.dc_gain(tol)?;
        if self.stability != Stability::Stable {
            return Err(Error::UnstableSystem {
                poles: self
                    .poles
                    .iter()
                    .map(|p| (p.location.re.as_f64(), p.location.im.as_f64()))
                    .collect(),
            });
        }
        Ok(gain.re * input_average)
    }
}

/// `<y[n]> = H(1) <x[n]>` for a stable discrete system.
pub fn system_average_z<T: Scalar>(h: &System<T>, x_avg: T, tol: &Tolerances) -> Result<T> {
    h.transfer.ensure_domain(Domain::Z)?;
    h.output_average(x_avg, tol)
}

/// `<y(t)> = H(0) <x(t)>` for a stable continuous system.
pub fn system_average_s<T: Scalar>(h: &System<T>, x_avg: T, tol: &Tolerances) -> Result<T> {
    h.transfer.ensure_domain(Domain::S)?;
    h.output_average(x_avg, tol)
}
