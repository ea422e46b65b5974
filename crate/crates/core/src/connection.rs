//! Spin connection of the orbit frame and the frame-change generator χ.

use nalgebra::Matrix4;

use crate::error::Result;
use crate::orbit::OrbitState;
use crate::spacetime::{
    christoffels_at, coframe_gradient, frame_gradient, tetrad_at, BlackHoleParams, SpacetimePoint,
    ETA,
};

/// Infinitesimal Lorentz generator X^a_b, stored with `a` as the row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzGenerator(pub Matrix4<f64>);

impl LorentzGenerator {
    pub fn zero() -> Self {
        LorentzGenerator(Matrix4::zeros())
    }

    /// Rotation generator in the 1-3 plane: X^1_3 = −X^3_1 = `rate`.
    pub fn rotation_13(rate: f64) -> Self {
        let mut m = Matrix4::zeros();
        m[(1, 3)] = rate;
        m[(3, 1)] = -rate;
        LorentzGenerator(m)
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.0[(a, b)]
    }

    /// X_ab = η_ac X^c_b.
    pub fn lowered(&self) -> Matrix4<f64> {
        let mut m = self.0;
        for b in 0..4 {
            m[(0, b)] = -m[(0, b)];
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        self.0.amax()
    }

    /// max |X_ab + X_ba| relative to the largest entry.
    pub fn antisymmetry_residual(&self) -> f64 {
        let low = self.lowered();
        let res = (low + low.transpose()).amax();
        scaled(res, self.max_abs())
    }

    /// X^a_b V^b.
    pub fn apply(&self, v: &[f64; 4]) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|b| self.0[(a, b)] * v[b]).sum();
        }
        out
    }
}

pub(crate) fn scaled(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

/// Pairs `(μ, a, b)` of ω_μ^a_b that may be nonzero on the equatorial plane.
pub const EQUATORIAL_NONZERO: [(usize, usize, usize); 6] = [
    (0, 0, 1),
    (2, 1, 2),
    (3, 1, 3),
    (0, 1, 3),
    (3, 0, 1),
    (1, 0, 3),
];

/// ω_μ^a_b at a point, stored as `omega[μ][a][b]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionField {
    pub omega: [[[f64; 4]; 4]; 4],
}

impl ConnectionField {
    #[inline]
    pub fn get(&self, mu: usize, a: usize, b: usize) -> f64 {
        self.omega[mu][a][b]
    }

    pub fn max_abs(&self) -> f64 {
        self.omega
            .iter()
            .flatten()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// max over μ of |ω_μab + ω_μba|, relative to the largest entry.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for om in &self.omega {
            for a in 0..4 {
                for b in 0..4 {
                    worst = worst.max((ETA[a] * om[a][b] + ETA[b] * om[b][a]).abs());
                }
            }
        }
        scaled(worst, self.max_abs())
    }

    /// Largest entry outside [`EQUATORIAL_NONZERO`] (and its mirror pairs),
    /// relative to the largest entry.
    pub fn off_pattern_residual(&self) -> f64 {
        let allowed = |mu: usize, a: usize, b: usize| {
            EQUATORIAL_NONZERO
                .iter()
                .any(|&(m, x, y)| m == mu && ((x, y) == (a, b) || (x, y) == (b, a)))
        };
        let mut worst: f64 = 0.0;
        for (mu, om) in self.omega.iter().enumerate() {
            for a in 0..4 {
                for b in 0..4 {
                    if !allowed(mu, a, b) {
                        worst = worst.max(om[a][b].abs());
                    }
                }
            }
        }
        scaled(worst, self.max_abs())
    }
}

/// ω_μ^a_b = e^a_ν (∂_μ e_b^ν + Γ^ν_μσ e_b^σ).
pub fn spin_connection_at(p: &BlackHoleParams, x: &SpacetimePoint) -> Result<ConnectionField> {
    let tetrad = tetrad_at(p, x)?;
    let gamma = christoffels_at(p, x)?;
    let de = frame_gradient(p, x);
    let e = &tetrad.frame;
    let co = &tetrad.coframe;
    let mut omega = [[[0.0; 4]; 4]; 4];
    for (mu, om) in omega.iter_mut().enumerate() {
        for b in 0..4 {
            // ∇_μ e_b^ν
            let mut cov = [0.0; 4];
            for (nu, c) in cov.iter_mut().enumerate() {
                *c = de[mu][(b, nu)]
                    + (0..4)
                        .map(|s| gamma.get(nu, mu, s) * e[(b, s)])
                        .sum::<f64>();
            }
            for (a, row) in om.iter_mut().enumerate() {
                row[b] = (0..4).map(|nu| co[(a, nu)] * cov[nu]).sum();
            }
        }
    }
    Ok(ConnectionField { omega })
}

/// χ^a_b = −u^ν ω_ν^a_b along the orbit.
pub fn frame_change_chi(p: &BlackHoleParams, orbit: &OrbitState) -> Result<LorentzGenerator> {
    let omega = spin_connection_at(p, &orbit.point())?;
    let u = &orbit.four_velocity;
    Ok(LorentzGenerator(Matrix4::from_fn(|a, b| {
        -(0..4).map(|nu| u[nu] * omega.get(nu, a, b)).sum::<f64>()
    })))
}

/// χ^a_b = u^ν e_b^μ ∇_ν e^a_μ, differentiating the coframe instead of the
/// frame. Must agree with [`frame_change_chi`].
pub fn frame_change_chi_via_coframe(
    p: &BlackHoleParams,
    orbit: &OrbitState,
) -> Result<LorentzGenerator> {
    let x = orbit.point();
    let tetrad = tetrad_at(p, &x)?;
    let gamma = christoffels_at(p, &x)?;
    let dco = coframe_gradient(p, &x);
    let u = &orbit.four_velocity;
    let e = &tetrad.frame;
    let co = &tetrad.coframe;
    let mut chi = Matrix4::zeros();
    for a in 0..4 {
        // u^ν ∇_ν e^a_μ
        let mut transported = [0.0; 4];
        for (mu, t) in transported.iter_mut().enumerate() {
            for nu in 0..4 {
                if u[nu] == 0.0 {
                    continue;
                }
                let cov = dco[nu][(a, mu)]
                    - (0..4)
                        .map(|s| gamma.get(s, nu, mu) * co[(a, s)])
                        .sum::<f64>();
                *t += u[nu] * cov;
            }
        }
        for b in 0..4 {
            chi[(a, b)] = (0..4).map(|mu| e[(b, mu)] * transported[mu]).sum();
        }
    }
    Ok(LorentzGenerator(chi))
}
