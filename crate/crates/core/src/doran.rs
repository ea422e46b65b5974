//! Horizon-regular chart of a freely falling observer.
//!
//! Coordinates are (T, R, θ, φ). With Ω = √(R² + a²), b = √(2MR − Q²)/Ω and
//! ρ = √(R² + a² cos²θ) the line element is
//!
//! ds² = −dT² + [ρ/Ω dR + bΩ/ρ (dT − a sin²θ dφ)]² + ρ² dθ² + Ω² sin²θ dφ².
//!
//! Note that ρ here is the square root of the Boyer-Lindquist Σ.

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{PhysicsError, Result};
use crate::spacetime::{BlackHoleParams, FrameField, MetricTensor};

/// Scalar fields of the chart at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoranFields {
    /// Ω = √(R² + a²)
    pub omega: f64,
    /// b = √(2MR − Q²)/Ω
    pub b: f64,
    /// ρ = √(R² + a² cos²θ)
    pub rho: f64,
}

pub fn doran_fields(p: &BlackHoleParams, r: f64, theta: f64) -> Result<DoranFields> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(PhysicsError::InvalidPoint(format!(
            "R = {r} must be positive"
        )));
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(PhysicsError::InvalidPoint(format!(
            "theta = {theta} outside (0, pi)"
        )));
    }
    let (m, a, q) = (p.mass(), p.spin(), p.charge());
    let mass_term = 2.0 * m * r - q * q;
    if mass_term < 0.0 {
        return Err(PhysicsError::ComplexLapse {
            r,
            value: mass_term,
        });
    }
    let omega = (r * r + a * a).sqrt();
    Ok(DoranFields {
        omega,
        b: mass_term.sqrt() / omega,
        rho: (r * r + (a * theta.cos()).powi(2)).sqrt(),
    })
}

/// The chart's coframe ẽ^a_μ, row a.
fn coframe(p: &BlackHoleParams, f: &DoranFields, theta: f64) -> Matrix4<f64> {
    let s = theta.sin();
    let mut e = Matrix4::zeros();
    e[(0, 0)] = 1.0;
    e[(1, 0)] = f.b * f.omega / f.rho;
    e[(1, 1)] = f.rho / f.omega;
    e[(1, 3)] = -p.spin() * f.b * s * s * f.omega / f.rho;
    e[(2, 2)] = f.rho;
    e[(3, 3)] = f.omega * s;
    e
}

/// Metric components from the expanded line element.
pub fn doran_metric_at(p: &BlackHoleParams, r: f64, theta: f64) -> Result<MetricTensor> {
    let f = doran_fields(p, r, theta)?;
    let a = p.spin();
    let s2 = theta.sin().powi(2);
    // ds² = −dT² + (α dT + β dR + γ dφ)² + ρ² dθ² + Ω² sin²θ dφ²
    let alpha = f.b * f.omega / f.rho;
    let beta = f.rho / f.omega;
    let gamma = -a * s2 * alpha;
    let mut g = Matrix4::zeros();
    g[(0, 0)] = alpha * alpha - 1.0;
    g[(0, 1)] = alpha * beta;
    g[(0, 3)] = alpha * gamma;
    g[(1, 1)] = beta * beta;
    g[(1, 3)] = beta * gamma;
    g[(2, 2)] = f.rho * f.rho;
    g[(3, 3)] = gamma * gamma + f.omega * f.omega * s2;
    g[(1, 0)] = g[(0, 1)];
    g[(3, 0)] = g[(0, 3)];
    g[(3, 1)] = g[(1, 3)];
    MetricTensor::from_lower(g).ok_or_else(|| PhysicsError::InvalidPoint(format!("R = {r}")))
}

/// Orthonormal frame of the infalling observer. Regular on both horizons.
pub fn doran_vierbein_at(p: &BlackHoleParams, r: f64, theta: f64) -> Result<FrameField> {
    let f = doran_fields(p, r, theta)?;
    let co = coframe(p, &f, theta);
    let inv = co
        .try_inverse()
        .ok_or_else(|| PhysicsError::InvalidPoint(format!("R = {r}")))?;
    Ok(FrameField {
        frame: inv.transpose(),
        coframe: co,
    })
}

/// Lapse Ñ and shift Ñ^φ (both branches) of the infalling circular motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfallingLapseShift {
    pub radius: f64,
    /// Δ(R)
    pub delta: f64,
    /// −2a²RM + a²Q² − a²R² − R⁴
    pub radicand: f64,
    pub lapse: f64,
    pub shift_plus: Complex64,
    pub shift_minus: Complex64,
}

impl InfallingLapseShift {
    /// True when the shift is real, i.e. radicand/Δ ≥ 0.
    pub fn shift_is_real(&self) -> bool {
        self.shift_plus.im == 0.0
    }
}

/// Evaluates Ñ and Ñ^φ = ±√(radicand)/(R√Δ) over complex intermediates.
/// Fails with `HorizonSingular` when Δ(R) vanishes.
pub fn infalling_lapse_shift(p: &BlackHoleParams, r: f64) -> Result<InfallingLapseShift> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(PhysicsError::InvalidPoint(format!(
            "R = {r} must be positive"
        )));
    }
    let (m, a, q) = (p.mass(), p.spin(), p.charge());
    let delta = p.delta(r);
    if p.on_horizon(r) {
        return Err(PhysicsError::HorizonSingular { r, delta });
    }
    let (a2, q2) = (a * a, q * q);
    let radicand = -2.0 * a2 * r * m + a2 * q2 - a2 * r * r - r.powi(4);
    let lapse = a * (q2 - 2.0 * m * r) / radicand;
    let shift = Complex64::new(radicand, 0.0).sqrt() / (Complex64::new(delta, 0.0).sqrt() * r);
    Ok(InfallingLapseShift {
        radius: r,
        delta,
        radicand,
        lapse,
        shift_plus: shift,
        shift_minus: -shift,
    })
}

/// ũ in one branch of the shift, with its normalization g_μν ũ^μ ũ^ν.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfallingVelocity {
    pub u_t: Complex64,
    pub u_phi: Complex64,
    /// Complex bilinear ũ·ũ; −1 for a properly normalized four-velocity.
    pub norm: Complex64,
}

impl InfallingVelocity {
    pub fn normalization_residual(&self) -> f64 {
        (self.norm + 1.0).norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfallingCircular {
    pub fields: InfallingLapseShift,
    pub plus: InfallingVelocity,
    pub minus: InfallingVelocity,
}

/// ũ^T = cosh ζ̃/Ñ, ũ^φ = Ñ^φ cosh ζ̃/Ñ + sinh ζ̃/√g_φφ on the equator.
pub fn infalling_circular_velocity(
    p: &BlackHoleParams,
    r: f64,
    rapidity: f64,
) -> Result<InfallingCircular> {
    let fields = infalling_lapse_shift(p, r)?;
    if fields.lapse == 0.0 {
        return Err(PhysicsError::DegenerateLapse { r });
    }
    let g = doran_metric_at(p, r, std::f64::consts::FRAC_PI_2)?;
    let (sh, ch) = (rapidity.sinh(), rapidity.cosh());
    let velocity = |shift: Complex64| {
        let u_t = Complex64::new(ch / fields.lapse, 0.0);
        let u_phi = shift * ch / fields.lapse + sh / g.g(3, 3).sqrt();
        let norm =
            u_t * u_t * g.g(0, 0) + u_t * u_phi * (2.0 * g.g(0, 3)) + u_phi * u_phi * g.g(3, 3);
        InfallingVelocity { u_t, u_phi, norm }
    };
    Ok(InfallingCircular {
        fields,
        plus: velocity(fields.shift_plus),
        minus: velocity(fields.shift_minus),
    })
}
