//! All-roots solver: Aberth–Ehrlich simultaneous iteration with a
//! companion-matrix fallback, followed by clustering into multiple roots.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex;
use num_traits::Zero;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tolerance::Tolerances;

/// A root (or pole) location with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub location: Complex<T>,
    pub multiplicity: usize,
}

/// Distinct pole locations of a denominator, with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSet<T> {
    pub poles: Vec<Root<T>>,
    pub tolerance_used: T,
}

impl<T: Scalar> PoleSet<T> {
    pub fn empty(tolerance_used: T) -> Self {
        Self { poles: Vec::new(), tolerance_used }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.poles.iter().map(|p| p.multiplicity).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Root<T>> {
        self.poles.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }
}

/// Grouping radius before a group is checked against the rounding-level split.
const LOOSE_CLUSTER: f64 = 1e-3;

/// Finds every root of `p` with multiplicity.
///
/// Exact zero roots are split off first. The remaining factor is solved by
/// Aberth iteration; if any approximation has not reached the rounding-level
/// residual within `tol.max_iterations`, the eigenvalues of the companion
/// matrix are used instead. Approximations within `tol.cluster` of each other
/// are merged and the merged location is polished on the matching derivative.
pub fn roots<T: Scalar>(p: &Poly<T>, tol: &Tolerances) -> Result<Vec<Root<T>>> {
    let Some(degree) = p.degree() else {
        return Ok(Vec::new());
    };
    if degree == 0 {
        return Ok(Vec::new());
    }

    let leading_zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = Poly::new(p.coeffs()[leading_zeros..].to_vec());

    let mut approximations = match aberth(&reduced, tol.max_iterations) {
        Some(found) => found,
        None => companion_eigenvalues(&reduced).ok_or(Error::NonConvergence {
            iterations: tol.max_iterations,
            residual: f64::INFINITY,
        })?,
    };
    approximations.extend(std::iter::repeat_n(Complex::zero(), leading_zeros));

    let mut found = cluster_verified(p, &approximations, T::lit(tol.cluster));
    for root in &mut found {
        if !root.location.is_zero() || leading_zeros == 0 {
            // a multiple root's centroid may sit as far off as the group spread
            let reach = if root.multiplicity > 1 { T::lit(tol.cluster).max(T::lit(LOOSE_CLUSTER)) } else { T::lit(tol.cluster) };
            root.location = polish(p, root.location, root.multiplicity, reach);
        }
    }

    let residual_tol = T::lit(tol.root_residual).max(T::epsilon() * T::lit(64.0));
    let worst = found
        .iter()
        .map(|r| relative_residual(p, r.location))
        .fold(T::zero(), |a, b| a.max(b));
    if !(worst <= residual_tol) {
        return Err(Error::NonConvergence {
            iterations: tol.max_iterations,
            residual: worst.as_f64(),
        });
    }

    found.sort_by(|a, b| {
        (a.location.re, a.location.im)
            .partial_cmp(&(b.location.re, b.location.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}

/// `|p(x)| / sum |a_k| max(1, |x|)^k`.
pub fn relative_residual<T: Scalar>(p: &Poly<T>, x: Complex<T>) -> T {
    let r = T::one().max(x.norm());
    let scale = p.magnitude_at(Complex::new(r, T::zero()));
    if scale.is_zero() {
        return T::zero();
    }
    p.eval(x).norm() / scale
}

fn eval_with_derivative<T: Scalar>(p: &Poly<T>, x: Complex<T>) -> (Complex<T>, Complex<T>, T) {
    let r = x.norm();
    let mut value = Complex::zero();
    let mut slope = Complex::zero();
    let mut bound = T::zero();
    for &c in p.coeffs().iter().rev() {
        slope = slope * x + value;
        value = value * x + c;
        bound = bound * r + c.norm();
    }
    (value, slope, bound)
}

fn aberth<T: Scalar>(p: &Poly<T>, max_iterations: usize) -> Option<Vec<Complex<T>>> {
    let n = p.degree()?;
    let coeffs = p.coeffs();
    if n == 1 {
        return Some(vec![-coeffs[0] / coeffs[1]]);
    }

    let radius = (coeffs[0].norm() / coeffs[n].norm())
        .powf(T::one() / T::from_usize(n).unwrap());
    let radius = if radius.is_finite() && radius > T::zero() { radius } else { T::one() };
    let tau = T::TAU();
    let step = tau / T::from_usize(n).unwrap();
    let offset = T::lit(0.4);
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| Complex::from_polar(radius, step * T::from_usize(k).unwrap() + offset))
        .collect();
    let mut frozen = vec![false; n];

    // Rounding level of Horner's scheme, with head room for the degree.
    let noise = T::epsilon() * T::from_usize(4 * n + 4).unwrap();

    for _ in 0..max_iterations {
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (value, slope, bound) = eval_with_derivative(p, z[i]);
            if value.norm() <= noise * bound {
                frozen[i] = true;
                continue;
            }
            let ratio = if slope.is_zero() {
                // Stationary point: nudge off it.
                Complex::new(radius * T::lit(1e-3), radius * T::lit(1e-3))
            } else {
                value / slope
            };
            let repulsion = (0..n)
                .filter(|&j| j != i)
                .fold(Complex::zero(), |acc, j| acc + (z[i] - z[j]).inv());
            let correction = ratio / (Complex::new(T::one(), T::zero()) - ratio * repulsion);
            if !correction.re.is_finite() || !correction.im.is_finite() {
                return None;
            }
            z[i] -= correction;
            if correction.norm() <= T::epsilon() * z[i].norm() {
                frozen[i] = true;
            }
        }
        if frozen.iter().all(|&f| f) {
            return Some(z);
        }
    }
    None
}

fn companion_eigenvalues<T: Scalar>(p: &Poly<T>) -> Option<Vec<Complex<T>>> {
    let n = p.degree()?;
    let coeffs: Vec<Complex<f64>> = p
        .coeffs()
        .iter()
        .map(|c| Complex::new(c.re.as_f64(), c.im.as_f64()))
        .collect();
    let lead = coeffs[n];
    let mut m = DMatrix::<Complex<f64>>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)?;
    let eigen = schur.eigenvalues()?;
    let mut out: Vec<Complex<T>> = eigen
        .iter()
        .map(|e| Complex::new(T::lit(e.re), T::lit(e.im)))
        .collect();
    for z in &mut out {
        *z = polish(p, *z, 1, T::lit(1e-6));
    }
    Some(out)
}

/// Single-linkage clustering: approximations within `tol * max(1, |z|)` of
/// one another become one root whose multiplicity is the cluster size.
fn cluster<T: Scalar>(approximations: &[Complex<T>], tol: T) -> Vec<Root<T>> {
    cluster_members(approximations, tol)
        .into_iter()
        .map(|g| {
            let m = g.len();
            let sum = g.iter().fold(Complex::zero(), |a, &i| a + approximations[i]);
            Root { location: sum / T::from_usize(m).unwrap(), multiplicity: m }
        })
        .collect()
}

/// Groups approximations loosely, then keeps a group as one multiple root
/// only if its spread is consistent with how far rounding alone splits an
/// `m`-fold root: `(noise * sum|a_k||c|^k / |p^(m)(c)/m!|)^(1/m)`. Groups
/// that fail are re-clustered at the strict tolerance.
fn cluster_verified<T: Scalar>(p: &Poly<T>, approximations: &[Complex<T>], tol: T) -> Vec<Root<T>> {
    let loose = tol.max(T::lit(LOOSE_CLUSTER));
    let n = p.degree().unwrap_or(0).max(1);
    let noise = T::epsilon() * T::from_usize(4 * n + 4).unwrap();
    let mut out = Vec::new();
    for group in cluster_members(approximations, loose) {
        let m = group.len();
        let members: Vec<Complex<T>> = group.iter().map(|&i| approximations[i]).collect();
        let centroid = members.iter().fold(Complex::zero(), |a, &b| a + b) / T::from_usize(m).unwrap();
        if m == 1 {
            out.push(Root { location: centroid, multiplicity: 1 });
            continue;
        }
        let spread = members.iter().fold(T::zero(), |s, z| s.max((*z - centroid).norm()));
        let mut taylor = p.clone();
        let mut factorial = T::one();
        for k in 1..=m {
            taylor = taylor.derivative();
            factorial *= T::from_usize(k).unwrap();
        }
        let top = taylor.eval(centroid).norm() / factorial;
        let predicted = (noise * p.magnitude_at(centroid) / top).powf(T::one() / T::from_usize(m).unwrap());
        let scale = T::one().max(centroid.norm());
        if spread <= tol * scale || spread <= T::lit(10.0) * predicted {
            out.push(Root { location: centroid, multiplicity: m });
        } else {
            out.extend(cluster(&members, tol));
        }
    }
    out
}

fn cluster_members<T: Scalar>(approximations: &[Complex<T>], tol: T) -> Vec<Vec<usize>> {
    let n = approximations.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = T::one().max(approximations[i].norm().max(approximations[j].norm()));
            if (approximations[i] - approximations[j]).norm() <= tol * scale {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Newton steps on the `(m-1)`-th derivative, which has a simple root at an
/// `m`-fold root of `p`. Steps are kept only while they reduce the residual
/// and stay within `reach` of the start.
fn polish<T: Scalar>(p: &Poly<T>, start: Complex<T>, multiplicity: usize, reach: T) -> Complex<T> {
    let mut target = p.clone();
    for _ in 1..multiplicity {
        target = target.derivative();
    }
    let slope_poly = target.derivative();
    if slope_poly.is_zero() {
        return start;
    }
    let limit = reach * T::one().max(start.norm());
    let mut z = start;
    let mut residual = target.eval(z).norm();
    for _ in 0..8 {
        let slope = slope_poly.eval(z);
        if slope.is_zero() {
            break;
        }
        let next = z - target.eval(z) / slope;
        let next_residual = target.eval(next).norm();
        if !(next_residual < residual) || (next - start).norm() > limit {
            break;
        }
        z = next;
        residual = next_residual;
    }
    z
}
