//! Circular equatorial orbits seen from infinity.
//!
//! The particle moves with rapidity ζ relative to the locally non-rotating
//! observer, so in that observer's frame its momentum is the constant
//! p^a = (m cosh ζ, 0, 0, m sinh ζ).

use crate::error::{PhysicsError, Result};
use crate::spacetime::{christoffels_at, metric_at, BlackHoleParams, SpacetimePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitState {
    pub rapidity: f64,
    pub speed: f64,
    pub radius: f64,
    /// Particle rest mass.
    pub mass: f64,
    /// u^μ in Boyer-Lindquist components.
    pub four_velocity: [f64; 4],
    /// p^a in the local frame.
    pub momentum: [f64; 4],
    /// N = 1/√(−g^tt)
    pub lapse: f64,
    /// N^φ = g_tφ / g_φφ
    pub shift: f64,
}

impl OrbitState {
    pub fn point(&self) -> SpacetimePoint {
        SpacetimePoint::equatorial(self.radius)
    }

    pub fn u_phi(&self) -> f64 {
        self.four_velocity[3]
    }

    /// p_a = η_ab p^b.
    pub fn momentum_lowered(&self) -> [f64; 4] {
        let p = self.momentum;
        [-p[0], p[1], p[2], p[3]]
    }
}

/// Circular orbit at radius `r` with local speed `v` (v = tanh ζ).
pub fn circular_orbit(p: &BlackHoleParams, r: f64, v: f64, mass: f64) -> Result<OrbitState> {
    if !(v.abs() < 1.0) {
        return Err(PhysicsError::Superluminal(v.abs()));
    }
    circular_orbit_rapidity(p, r, v.atanh(), mass)
}

/// Circular orbit parameterized directly by the rapidity ζ.
pub fn circular_orbit_rapidity(
    p: &BlackHoleParams,
    r: f64,
    rapidity: f64,
    mass: f64,
) -> Result<OrbitState> {
    p.require_subextremal()?;
    if !rapidity.is_finite() {
        return Err(PhysicsError::Superluminal(1.0));
    }
    if !(mass > 0.0) {
        return Err(PhysicsError::NonPositiveMass(mass));
    }
    if !(r > p.r_plus()) {
        return Err(PhysicsError::InsideHorizon {
            r,
            r_plus: p.r_plus(),
        });
    }
    let g = metric_at(p, &SpacetimePoint::equatorial(r))?;
    let lapse = 1.0 / (-g.g_inv(0, 0)).sqrt();
    let shift = g.g(0, 3) / g.g(3, 3);
    let (sh, ch) = (rapidity.sinh(), rapidity.cosh());
    let u_t = ch / lapse;
    let u_phi = -shift * ch / lapse + sh / g.g(3, 3).sqrt();
    Ok(OrbitState {
        rapidity,
        speed: rapidity.tanh(),
        radius: r,
        mass,
        four_velocity: [u_t, 0.0, 0.0, u_phi],
        momentum: [mass * ch, 0.0, 0.0, mass * sh],
        lapse,
        shift,
    })
}

/// a^μ = u^ν ∇_ν u^μ.
///
/// u^μ depends on (r, θ) only and has no r or θ component, so the transport
/// term u^ν ∂_ν u^μ vanishes and a^μ = Γ^μ_νσ u^ν u^σ.
pub fn acceleration(p: &BlackHoleParams, orbit: &OrbitState) -> Result<[f64; 4]> {
    let gamma = christoffels_at(p, &orbit.point())?;
    let u = &orbit.four_velocity;
    let mut acc = [0.0; 4];
    for (mu, a) in acc.iter_mut().enumerate() {
        for nu in 0..4 {
            for s in 0..4 {
                *a += gamma.get(mu, nu, s) * u[nu] * u[s];
            }
        }
    }
    Ok(acc)
}
