//! Local Lorentz transformation, Wigner rotation generator and the finite
//! spin-precession angle accumulated between source and observers.

use nalgebra::Matrix4;

use crate::connection::{frame_change_chi, LorentzGenerator};
use crate::error::{PhysicsError, Result};
use crate::expm::expm;
use crate::orbit::{acceleration, circular_orbit, circular_orbit_rapidity, OrbitState};
use crate::spacetime::{tetrad_at, BlackHoleParams, ETA};

/// Standard boost L^a_b(p) taking (m, 0, 0, 0) to p^a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardBoost {
    pub matrix: Matrix4<f64>,
    pub gamma: f64,
}

impl StandardBoost {
    pub fn new(p: &[f64; 4], mass: f64) -> Self {
        let p2: f64 = p[1..].iter().map(|x| x * x).sum();
        let gamma = (p2 + mass * mass).sqrt() / mass;
        let mut l = Matrix4::identity();
        l[(0, 0)] = gamma;
        for i in 1..4 {
            l[(0, i)] = p[i] / mass;
            l[(i, 0)] = p[i] / mass;
            if p2 > 0.0 {
                for k in 1..4 {
                    l[(i, k)] += (gamma - 1.0) * p[i] * p[k] / p2;
                }
            }
        }
        StandardBoost { matrix: l, gamma }
    }

    /// max |L^a_c L^b_d η_ab − η_cd|.
    pub fn lorentz_residual(&self) -> f64 {
        let eta = Matrix4::from_diagonal(&ETA.into());
        (self.matrix.transpose() * eta * self.matrix - eta).amax()
    }
}

/// λ^a_b = −(1/m)(a^a p_b − p^a a_b) + χ^a_b.
pub fn llt_lambda(p: &BlackHoleParams, orbit: &OrbitState) -> Result<LorentzGenerator> {
    let tetrad = tetrad_at(p, &orbit.point())?;
    let acc_local = tetrad.to_local(&acceleration(p, orbit)?);
    let chi = frame_change_chi(p, orbit)?;
    Ok(assemble_lambda(&acc_local, orbit, &chi))
}

fn assemble_lambda(
    acc_local: &[f64; 4],
    orbit: &OrbitState,
    chi: &LorentzGenerator,
) -> LorentzGenerator {
    let m = orbit.mass;
    let pu = &orbit.momentum;
    let pl = orbit.momentum_lowered();
    let al = [-acc_local[0], acc_local[1], acc_local[2], acc_local[3]];
    LorentzGenerator(Matrix4::from_fn(|a, b| {
        -(acc_local[a] * pl[b] - pu[a] * al[b]) / m + chi.get(a, b)
    }))
}

/// ϑ^i_k = λ^i_k + (λ^i_0 p_k − λ_k0 p^i)/(p^0 + m); time row and column zero.
pub fn wigner_generator(lambda: &LorentzGenerator, p: &[f64; 4], mass: f64) -> LorentzGenerator {
    let denom = p[0] + mass;
    let mut out = Matrix4::zeros();
    for i in 1..4 {
        for k in 1..4 {
            // Spatial indices: p_k = p^k and λ_k0 = λ^k_0.
            out[(i, k)] =
                lambda.get(i, k) + (lambda.get(i, 0) * p[k] - lambda.get(k, 0) * p[i]) / denom;
        }
    }
    LorentzGenerator(out)
}

/// Trivial frame rotation along the orbit, φ^1_3 = −φ^3_1 = u^φ.
pub fn trivial_generator(orbit: &OrbitState) -> LorentzGenerator {
    LorentzGenerator::rotation_13(orbit.u_phi())
}

/// Finite local Wigner rotation over a flight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    pub matrix: Matrix4<f64>,
    /// Rotation angle about the 2-axis, ϑ^1_3 · τ.
    pub theta: f64,
}

impl WignerRotation {
    /// Largest deviation from a pure spatial rotation: W^0_0 = 1, no
    /// time-space mixing, orthogonal spatial block with unit determinant.
    pub fn rotation_residual(&self) -> f64 {
        let w = &self.matrix;
        let mut worst = (w[(0, 0)] - 1.0).abs();
        for i in 1..4 {
            worst = worst.max(w[(0, i)].abs()).max(w[(i, 0)].abs());
        }
        let block = w.fixed_view::<3, 3>(1, 1).into_owned();
        let ortho = (block.transpose() * block - nalgebra::Matrix3::identity()).amax();
        worst.max(ortho).max((block.determinant() - 1.0).abs())
    }
}

/// W = exp(ϑ τ). ϑ is constant along the circular orbit, so no time
/// ordering is needed.
pub fn wigner_finite(vartheta: &LorentzGenerator, proper_time: f64) -> WignerRotation {
    WignerRotation {
        matrix: expm(&(vartheta.0 * proper_time)),
        theta: vartheta.get(1, 3) * proper_time,
    }
}

/// Closed-form rotation about the 2-axis through Θ, as seen by the observer
/// at +Φ. The observer at −Φ sees the rotation through −Θ.
pub fn rotation_about_2(theta: f64) -> Matrix4<f64> {
    let (s, c) = theta.sin_cos();
    let mut w = Matrix4::identity();
    w[(1, 1)] = c;
    w[(1, 3)] = s;
    w[(3, 1)] = -s;
    w[(3, 3)] = c;
    w
}

/// How the flight's proper time is turned into a precession angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleConvention {
    /// τ = Φ/u^φ, the proper time the particle needs to sweep azimuth Φ.
    ProperTime,
    /// τ = Φ r / sinh ζ, the published shortcut; equal to the proper-time
    /// form only for a = Q = 0.
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerAngles {
    /// Total precession Θ, unwrapped.
    pub theta: f64,
    /// Θ − Φ: precession left after removing the trivial frame rotation.
    pub delta: f64,
    pub phi: f64,
    pub proper_time: f64,
}

/// Every generator along the orbit at one radius.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPrecession {
    pub orbit: OrbitState,
    /// a^μ in coordinate components.
    pub acceleration: [f64; 4],
    /// a^a in the local frame.
    pub local_acceleration: [f64; 4],
    pub chi: LorentzGenerator,
    pub lambda: LorentzGenerator,
    pub vartheta: LorentzGenerator,
}

impl LocalPrecession {
    pub fn new(p: &BlackHoleParams, orbit: OrbitState) -> Result<Self> {
        let tetrad = tetrad_at(p, &orbit.point())?;
        let acc = acceleration(p, &orbit)?;
        let acc_local = tetrad.to_local(&acc);
        let chi = frame_change_chi(p, &orbit)?;
        let lambda = assemble_lambda(&acc_local, &orbit, &chi);
        let vartheta = wigner_generator(&lambda, &orbit.momentum, orbit.mass);
        Ok(LocalPrecession {
            orbit,
            acceleration: acc,
            local_acceleration: acc_local,
            chi,
            lambda,
            vartheta,
        })
    }

    pub fn trivial(&self) -> LorentzGenerator {
        trivial_generator(&self.orbit)
    }

    /// Precession accumulated while each particle sweeps azimuth `phi`.
    pub fn angles(&self, phi: f64, convention: AngleConvention) -> Result<WignerAngles> {
        let proper_time = match convention {
            AngleConvention::ProperTime => {
                let u_phi = self.orbit.u_phi();
                if !(u_phi > 0.0) {
                    return Err(PhysicsError::NoAzimuthalProgress { u_phi });
                }
                phi / u_phi
            }
            AngleConvention::Printed => {
                let sh = self.orbit.rapidity.sinh();
                if !(sh > 0.0) {
                    return Err(PhysicsError::NoAzimuthalProgress {
                        u_phi: self.orbit.u_phi(),
                    });
                }
                phi * self.orbit.radius / sh
            }
        };
        let theta = self.vartheta.get(1, 3) * proper_time;
        Ok(WignerAngles {
            theta,
            delta: theta - phi,
            phi,
            proper_time,
        })
    }

    pub fn rotation(&self, angles: &WignerAngles) -> WignerRotation {
        wigner_finite(&self.vartheta, angles.proper_time)
    }
}

/// Full local analysis at radius `r` for local speed `v`.
pub fn local_precession(p: &BlackHoleParams, r: f64, v: f64, mass: f64) -> Result<LocalPrecession> {
    LocalPrecession::new(p, circular_orbit(p, r, v, mass)?)
}

/// Both sides of the low-velocity Thomas precession relation in flat space,
/// per unit coordinate time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThomasPrecession {
    /// (ϑ^3_1 − χ^3_1) dτ/dt
    pub lhs: f64,
    /// −v |a| / 2
    pub rhs: f64,
}

impl ThomasPrecession {
    /// |lhs/rhs − 1|; zero when both sides vanish.
    pub fn relative_error(&self) -> f64 {
        if self.lhs == 0.0 && self.rhs == 0.0 {
            0.0
        } else {
            (self.lhs / self.rhs - 1.0).abs()
        }
    }
}

pub fn thomas_precession_check(r: f64, rapidity: f64) -> Result<ThomasPrecession> {
    let flat = BlackHoleParams::minkowski();
    let orbit = circular_orbit_rapidity(&flat, r, rapidity, 1.0)?;
    let lp = LocalPrecession::new(&flat, orbit)?;
    let spin_minus_frame = lp.vartheta.get(3, 1) - lp.chi.get(3, 1);
    // dt = cosh ζ dτ
    let lhs = spin_minus_frame / rapidity.cosh();
    let rhs = -rapidity.tanh() * lp.acceleration[1].abs() / 2.0;
    Ok(ThomasPrecession { lhs, rhs })
}
