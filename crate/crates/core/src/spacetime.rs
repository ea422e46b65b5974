//! Kerr-Newman geometry in Boyer-Lindquist coordinates.
//!
//! Geometric units (G = c = 1). Coordinates are ordered `(t, r, θ, φ)` and
//! local frame indices `(0, 1, 2, 3)` with η = diag(−1, 1, 1, 1).
//!
//! The metric and frame are written once as generic kernels over [`Real`];
//! all coordinate derivatives come from evaluating those kernels on
//! [`Dual`] numbers. The metric is stationary and axisymmetric, so the
//! kernels only take `(r, θ)` and `∂_t`, `∂_φ` of every field vanish
//! identically.

use nalgebra::Matrix4;

use crate::dual::{Dual, Real};
use crate::error::{PhysicsError, Result};

/// η_ab, diagonal of the Minkowski metric.
pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Relative tolerance used to decide that a radius lies on a horizon.
pub const HORIZON_TOLERANCE: f64 = 1e-12;

/// Discriminants below this (relative to M²) are treated as extremal.
const EXTREMAL_TOLERANCE: f64 = 1e-14;

/// Index of each coordinate in four-vectors and tensors.
pub mod coord {
    pub const T: usize = 0;
    pub const R: usize = 1;
    pub const THETA: usize = 2;
    pub const PHI: usize = 3;
}

/// Outer and inner horizon radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horizons {
    pub plus: f64,
    pub minus: f64,
}

/// Roots of Δ(r) = r² − 2Mr + a² + Q².
pub fn horizons(mass: f64, spin: f64, charge: f64) -> Result<Horizons> {
    let mass_sq = mass * mass;
    let spin_charge_sq = spin * spin + charge * charge;
    let mut disc = mass_sq - spin_charge_sq;
    if disc < 0.0 {
        if disc >= -EXTREMAL_TOLERANCE * mass_sq {
            disc = 0.0;
        } else {
            return Err(PhysicsError::NakedSingularity {
                mass_sq,
                spin_charge_sq,
            });
        }
    }
    let root = disc.sqrt();
    let plus = mass + root;
    // r₋ = (a² + Q²) / r₊ avoids cancellation when a² + Q² ≪ M².
    let minus = if plus > 0.0 {
        spin_charge_sq / plus
    } else {
        0.0
    };
    Ok(Horizons { plus, minus })
}

/// The (M, a, Q) family of Kerr-Newman black holes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackHoleParams {
    mass: f64,
    spin: f64,
    charge: f64,
    horizons: Horizons,
}

impl BlackHoleParams {
    pub fn new(mass: f64, spin: f64, charge: f64) -> Result<Self> {
        if !(mass.is_finite() && spin.is_finite() && charge.is_finite()) {
            return Err(PhysicsError::InvalidParams(
                "M, a and Q must be finite".into(),
            ));
        }
        if mass < 0.0 || spin < 0.0 || charge < 0.0 {
            return Err(PhysicsError::InvalidParams(format!(
                "M, a, Q must be non-negative (got M={mass}, a={spin}, Q={charge})"
            )));
        }
        let horizons = horizons(mass, spin, charge)?;
        Ok(BlackHoleParams {
            mass,
            spin,
            charge,
            horizons,
        })
    }

    /// Parameters given as a/M and Q/M, the way figure captions quote them.
    pub fn from_ratios(mass: f64, spin_ratio: f64, charge_ratio: f64) -> Result<Self> {
        Self::new(mass, spin_ratio * mass, charge_ratio * mass)
    }

    /// Flat spacetime in spherical coordinates.
    pub fn minkowski() -> Self {
        Self::new(0.0, 0.0, 0.0).expect("flat parameters are valid")
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spin(&self) -> f64 {
        self.spin
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn horizons(&self) -> Horizons {
        self.horizons
    }

    pub fn r_plus(&self) -> f64 {
        self.horizons.plus
    }

    pub fn is_flat(&self) -> bool {
        self.mass == 0.0
    }

    pub fn is_extremal(&self) -> bool {
        self.mass > 0.0 && self.horizons.plus == self.horizons.minus
    }

    /// Rejects the extremal boundary, which is only meaningful for [`horizons`].
    pub fn require_subextremal(&self) -> Result<()> {
        if self.is_extremal() {
            Err(PhysicsError::ExtremalUnsupported)
        } else {
            Ok(())
        }
    }

    /// Δ(r), evaluated in factored form (r − r₊)(r − r₋) for accuracy near
    /// the horizons.
    #[inline]
    pub fn delta<T: Real>(&self, r: T) -> T {
        (r - self.horizons.plus) * (r - self.horizons.minus)
    }

    /// Δ(r) from the expanded polynomial; used to check the roots.
    pub fn delta_expanded(&self, r: f64) -> f64 {
        r * r - 2.0 * self.mass * r + self.spin * self.spin + self.charge * self.charge
    }

    pub fn on_horizon(&self, r: f64) -> bool {
        let scale = (self.mass * self.mass).max(r * r);
        self.delta(r).abs() < HORIZON_TOLERANCE * scale
    }
}

/// A point in Boyer-Lindquist coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SpacetimePoint {
    pub fn new(t: f64, r: f64, theta: f64, phi: f64) -> Self {
        SpacetimePoint { t, r, theta, phi }
    }

    /// Point on the equatorial plane θ = π/2.
    pub fn equatorial(r: f64) -> Self {
        SpacetimePoint::new(0.0, r, std::f64::consts::FRAC_PI_2, 0.0)
    }

    fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.theta.is_finite()) {
            return Err(PhysicsError::InvalidPoint(format!("{self:?}")));
        }
        if !(self.theta > 0.0 && self.theta < std::f64::consts::PI) {
            return Err(PhysicsError::InvalidPoint(format!(
                "theta = {} outside (0, pi)",
                self.theta
            )));
        }
        Ok(())
    }
}

/// Symmetric metric g_μν at a point together with its inverse g^μν.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTensor {
    pub lower: Matrix4<f64>,
    pub upper: Matrix4<f64>,
}

impl MetricTensor {
    /// Symmetrizes `lower` and inverts it; `None` if singular.
    pub fn from_lower(lower: Matrix4<f64>) -> Option<Self> {
        let lower = (lower + lower.transpose()) * 0.5;
        let upper = lower.try_inverse()?;
        let upper = (upper + upper.transpose()) * 0.5;
        Some(MetricTensor { lower, upper })
    }

    #[inline]
    pub fn g(&self, mu: usize, nu: usize) -> f64 {
        self.lower[(mu, nu)]
    }

    #[inline]
    pub fn g_inv(&self, mu: usize, nu: usize) -> f64 {
        self.upper[(mu, nu)]
    }

    /// max |g_μν g^νλ − δ_μ^λ|.
    pub fn inverse_residual(&self) -> f64 {
        (self.lower * self.upper - Matrix4::identity()).amax()
    }

    /// Number of (negative, positive) eigenvalues.
    pub fn signature(&self) -> (usize, usize) {
        let eig = self.lower.symmetric_eigen().eigenvalues;
        let neg = eig.iter().filter(|&&e| e < 0.0).count();
        let pos = eig.iter().filter(|&&e| e > 0.0).count();
        (neg, pos)
    }

    /// g_μν X^μ Y^ν.
    pub fn dot(&self, x: &[f64; 4], y: &[f64; 4]) -> f64 {
        let mut s = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                s += self.lower[(mu, nu)] * x[mu] * y[nu];
            }
        }
        s
    }

    /// X_μ = g_μν X^ν.
    pub fn lower_index(&self, x: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|nu| self.lower[(mu, nu)] * x[nu]).sum();
        }
        out
    }
}

/// Orthonormal frame at a point.
///
/// Row `a` of `frame` holds the vector e_a^μ; row `a` of `coframe` holds the
/// one-form e^a_μ.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameField {
    pub frame: Matrix4<f64>,
    pub coframe: Matrix4<f64>,
}

impl FrameField {
    /// max |e^a_μ e_b^μ − δ^a_b|.
    pub fn duality_residual(&self) -> f64 {
        (self.coframe * self.frame.transpose() - Matrix4::identity()).amax()
    }

    /// max |g_μν e_a^μ e_b^ν − η_ab|.
    pub fn orthonormality_residual(&self, metric: &MetricTensor) -> f64 {
        let eta = Matrix4::from_diagonal(&ETA.into());
        (self.frame * metric.lower * self.frame.transpose() - eta).amax()
    }

    /// Metric rebuilt from the coframe, η_ab e^a_μ e^b_ν.
    pub fn reconstructed_metric(&self) -> Matrix4<f64> {
        let eta = Matrix4::from_diagonal(&ETA.into());
        self.coframe.transpose() * eta * self.coframe
    }

    /// Local components V^a = e^a_μ V^μ.
    pub fn to_local(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|mu| self.coframe[(a, mu)] * v[mu]).sum();
        }
        out
    }

    /// Coordinate components V^μ = e_a^μ V^a.
    pub fn to_coordinate(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (mu, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|a| self.frame[(a, mu)] * v[a]).sum();
        }
        out
    }
}

/// Γ^λ_μν at a point, stored as `gamma[λ][μ][ν]`, plus the metric gradient
/// ∂_λ g_μν it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct ChristoffelField {
    pub gamma: [[[f64; 4]; 4]; 4],
    pub metric_gradient: [Matrix4<f64>; 4],
}

impl ChristoffelField {
    #[inline]
    pub fn get(&self, lambda: usize, mu: usize, nu: usize) -> f64 {
        self.gamma[lambda][mu][nu]
    }

    /// max |∇_λ g_μν| divided by max |∂_λ g_μν|.
    pub fn compatibility_residual(&self, metric: &MetricTensor) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let dg = self.metric_gradient[l][(m, n)];
                    scale = scale.max(dg.abs());
                    let mut cov = dg;
                    for s in 0..4 {
                        cov -= self.gamma[s][l][m] * metric.g(s, n);
                        cov -= self.gamma[s][l][n] * metric.g(m, s);
                    }
                    worst = worst.max(cov.abs());
                }
            }
        }
        if scale > 0.0 {
            worst / scale
        } else {
            worst
        }
    }
}

// ---------------------------------------------------------------------------
// Generic kernels
// ---------------------------------------------------------------------------

struct Scalars<T> {
    sigma: T,
    delta: T,
    /// (r² + a²)² − a² Δ sin²θ
    big_a: T,
    sin_th: T,
    /// 2Mr − Q²
    mass_term: T,
}

fn scalars<T: Real>(p: &BlackHoleParams, r: T, theta: T) -> Scalars<T> {
    let a = p.spin;
    let sin_th = theta.sin();
    let cos_th = theta.cos();
    let r2a2 = r * r + a * a;
    let sigma = r * r + cos_th * cos_th * (a * a);
    let delta = p.delta(r);
    let big_a = r2a2 * r2a2 - delta * sin_th * sin_th * (a * a);
    let mass_term = r * (2.0 * p.mass) - p.charge * p.charge;
    Scalars {
        sigma,
        delta,
        big_a,
        sin_th,
        mass_term,
    }
}

/// g_μν from the Boyer-Lindquist line element.
pub fn metric_components<T: Real>(p: &BlackHoleParams, r: T, theta: T) -> [[T; 4]; 4] {
    let a = p.spin;
    let s = scalars(p, r, theta);
    let sin2 = s.sin_th * s.sin_th;
    let zero = T::constant(0.0);
    let mut g = [[zero; 4]; 4];
    g[0][0] = -(s.delta - sin2 * (a * a)) / s.sigma;
    g[0][3] = -(sin2 * s.mass_term * a) / s.sigma;
    g[3][0] = g[0][3];
    g[1][1] = s.sigma / s.delta;
    g[2][2] = s.sigma;
    g[3][3] = sin2 * s.big_a / s.sigma;
    g
}

/// Frame vectors e_a^μ of the zero-angular-momentum observer (row = a).
pub fn frame_components<T: Real>(p: &BlackHoleParams, r: T, theta: T) -> [[T; 4]; 4] {
    let a = p.spin;
    let s = scalars(p, r, theta);
    let zero = T::constant(0.0);
    let inv_lapse = (s.big_a / (s.delta * s.sigma)).sqrt();
    let frame_drag = s.mass_term * a / s.big_a;
    let mut e = [[zero; 4]; 4];
    e[0][0] = inv_lapse;
    e[0][3] = inv_lapse * frame_drag;
    e[1][1] = (s.delta / s.sigma).sqrt();
    e[2][2] = s.sigma.sqrt().recip();
    e[3][3] = (s.sigma / s.big_a).sqrt() / s.sin_th;
    e
}

/// Dual one-forms e^a_μ of [`frame_components`] (row = a).
pub fn coframe_components<T: Real>(p: &BlackHoleParams, r: T, theta: T) -> [[T; 4]; 4] {
    let a = p.spin;
    let s = scalars(p, r, theta);
    let zero = T::constant(0.0);
    let frame_drag = s.mass_term * a / s.big_a;
    let rho_phi = s.sin_th * (s.big_a / s.sigma).sqrt();
    let mut e = [[zero; 4]; 4];
    e[0][0] = (s.delta * s.sigma / s.big_a).sqrt();
    e[1][1] = (s.sigma / s.delta).sqrt();
    e[2][2] = s.sigma.sqrt();
    e[3][0] = -(rho_phi * frame_drag);
    e[3][3] = rho_phi;
    e
}

fn to_matrix(m: [[f64; 4]; 4]) -> Matrix4<f64> {
    Matrix4::from_fn(|i, j| m[i][j])
}

/// ∂_μ of a 4×4 field kernel; the t and φ slots are identically zero.
pub(crate) fn gradient<F>(r: f64, theta: f64, kernel: F) -> [Matrix4<f64>; 4]
where
    F: Fn(Dual, Dual) -> [[Dual; 4]; 4],
{
    let d_r = kernel(Dual::variable(r), Dual::constant(theta));
    let d_th = kernel(Dual::constant(r), Dual::variable(theta));
    let mut out = [Matrix4::zeros(); 4];
    out[coord::R] = Matrix4::from_fn(|i, j| d_r[i][j].du);
    out[coord::THETA] = Matrix4::from_fn(|i, j| d_th[i][j].du);
    out
}

fn check_point(p: &BlackHoleParams, x: &SpacetimePoint) -> Result<()> {
    x.validate()?;
    let sigma = x.r * x.r + (p.spin * x.theta.cos()).powi(2);
    // cos(π/2) is 6e-17 in floating point, so compare relative to r² + a².
    if sigma <= 1e-24 * (x.r * x.r + p.spin * p.spin) {
        return Err(PhysicsError::RingSingularity {
            r: x.r,
            theta: x.theta,
        });
    }
    if p.on_horizon(x.r) {
        return Err(PhysicsError::HorizonSingular {
            r: x.r,
            delta: p.delta(x.r),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Kerr-Newman metric and its inverse at `x`.
pub fn metric_at(p: &BlackHoleParams, x: &SpacetimePoint) -> Result<MetricTensor> {
    check_point(p, x)?;
    let g = to_matrix(metric_components(p, x.r, x.theta));
    MetricTensor::from_lower(g).ok_or(PhysicsError::HorizonSingular {
        r: x.r,
        delta: p.delta(x.r),
    })
}

/// ∂_λ g_μν by automatic differentiation.
pub fn metric_gradient(p: &BlackHoleParams, x: &SpacetimePoint) -> [Matrix4<f64>; 4] {
    gradient(x.r, x.theta, |r, th| metric_components(p, r, th))
}

/// Christoffel symbols of the second kind at `x`.
pub fn christoffels_at(p: &BlackHoleParams, x: &SpacetimePoint) -> Result<ChristoffelField> {
    let metric = metric_at(p, x)?;
    let dg = metric_gradient(p, x);
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for (l, gl) in gamma.iter_mut().enumerate() {
        for m in 0..4 {
            for n in m..4 {
                let mut sum = 0.0;
                for s in 0..4 {
                    let gi = metric.g_inv(l, s);
                    if gi == 0.0 {
                        continue;
                    }
                    sum += gi * (dg[m][(s, n)] + dg[n][(s, m)] - dg[s][(m, n)]);
                }
                gl[m][n] = 0.5 * sum;
                gl[n][m] = 0.5 * sum;
            }
        }
    }
    Ok(ChristoffelField {
        gamma,
        metric_gradient: dg,
    })
}

/// Orthonormal frame of the locally non-rotating observer at `x`.
///
/// Requires Δ > 0: the frame inherits the Boyer-Lindquist horizon
/// singularities and is not real between the horizons.
pub fn tetrad_at(p: &BlackHoleParams, x: &SpacetimePoint) -> Result<FrameField> {
    check_point(p, x)?;
    let delta = p.delta(x.r);
    if delta <= 0.0 {
        return Err(PhysicsError::HorizonSingular { r: x.r, delta });
    }
    Ok(FrameField {
        frame: to_matrix(frame_components(p, x.r, x.theta)),
        coframe: to_matrix(coframe_components(p, x.r, x.theta)),
    })
}

pub(crate) fn frame_gradient(p: &BlackHoleParams, x: &SpacetimePoint) -> [Matrix4<f64>; 4] {
    gradient(x.r, x.theta, |r, th| frame_components(p, r, th))
}

pub(crate) fn coframe_gradient(p: &BlackHoleParams, x: &SpacetimePoint) -> [Matrix4<f64>; 4] {
    gradient(x.r, x.theta, |r, th| coframe_components(p, r, th))
}
