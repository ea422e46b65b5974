//! Two-spin states of the EPR pair and their CHSH correlators.
//!
//! Basis order is {↑↑, ↑↓, ↓↑, ↓↓}; the first factor is the particle that
//! travels to the observer at +Φ. Measurement directions are unit vectors
//! in the local frame with axes (1, 2, 3) mapped to (σ_x, σ_y, σ_z).

use num_complex::Complex64;

use crate::error::{PhysicsError, Result};

const DIRECTION_TOLERANCE: f64 = 1e-9;

/// Pure state of the two spins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoSpinState(pub [Complex64; 4]);

impl TwoSpinState {
    pub fn from_real(amps: [f64; 4]) -> Self {
        TwoSpinState(amps.map(|x| Complex64::new(x, 0.0)))
    }

    /// Singlet (|↑↓⟩ − |↓↑⟩)/√2.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real([0.0, h, -h, 0.0])
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Concurrence of a pure state, |⟨ψ|σ_y⊗σ_y|ψ*⟩| = 2|c₀₀c₁₁ − c₀₁c₁₀|.
    pub fn concurrence(&self) -> f64 {
        let [a, b, c, d] = self.0;
        2.0 * (a * d - b * c).norm()
    }

    /// Tr ρ_A² of the reduced state of the first spin.
    pub fn reduced_purity(&self) -> f64 {
        let [a, b, c, d] = self.0;
        let r00 = a.norm_sqr() + b.norm_sqr();
        let r11 = c.norm_sqr() + d.norm_sqr();
        let r01 = a * c.conj() + b * d.conj();
        r00 * r00 + r11 * r11 + 2.0 * r01.norm_sqr()
    }

    /// Apply U_A ⊗ U_B for real 2×2 factors.
    fn apply_local(&self, ua: &[[f64; 2]; 2], ub: &[[f64; 2]; 2]) -> Self {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        out[2 * i + j] += self.0[2 * k + l] * (ua[i][k] * ub[j][l]);
                    }
                }
            }
        }
        TwoSpinState(out)
    }

    /// ⟨ψ|O|ψ⟩ for a Hermitian 4×4 operator.
    pub fn expectation(&self, op: &[[Complex64; 4]; 4]) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                acc += self.0[i].conj() * op[i][j] * self.0[j];
            }
        }
        acc.re
    }
}

/// exp(−iσ_y α/2); real because σ_y is imaginary.
pub fn spin_rotation(alpha: f64) -> [[f64; 2]; 2] {
    let (s, c) = (alpha / 2.0).sin_cos();
    [[c, -s], [s, c]]
}

/// Spin-½ image of the Wigner rotations at ±Φ:
/// exp(−iσ_yΘ/2) ⊗ exp(+iσ_yΘ/2).
pub fn evolve_pair(state: &TwoSpinState, theta: f64) -> TwoSpinState {
    state.apply_local(&spin_rotation(theta), &spin_rotation(-theta))
}

/// Rotate the spin bases by ∓Φ about the 2-axis at φ = ±Φ, removing the
/// trivial frame rotation of the orbit.
pub fn remove_trivial_rotation(state: &TwoSpinState, phi: f64) -> TwoSpinState {
    state.apply_local(&spin_rotation(-phi), &spin_rotation(phi))
}

/// Local-frame unit vector for a spin measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDirection {
    pub label: String,
    pub vec: [f64; 3],
}

impl MeasurementDirection {
    pub fn new(label: impl Into<String>, vec: [f64; 3]) -> Result<Self> {
        let label = label.into();
        let norm = vec.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= DIRECTION_TOLERANCE) {
            return Err(PhysicsError::NonUnitDirection { label, norm });
        }
        Ok(MeasurementDirection { label, vec })
    }

    /// n̂·σ⃗.
    pub fn pauli(&self) -> [[Complex64; 2]; 2] {
        let [x, y, z] = self.vec;
        [
            [Complex64::new(z, 0.0), Complex64::new(x, -y)],
            [Complex64::new(x, y), Complex64::new(-z, 0.0)],
        ]
    }
}

/// The four CHSH directions: Q, R measure the particle at +Φ, S, T the one
/// at −Φ.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    pub q: MeasurementDirection,
    pub r: MeasurementDirection,
    pub s: MeasurementDirection,
    pub t: MeasurementDirection,
}

impl DirectionSet {
    pub fn new(
        q: MeasurementDirection,
        r: MeasurementDirection,
        s: MeasurementDirection,
        t: MeasurementDirection,
    ) -> Self {
        DirectionSet { q, r, s, t }
    }

    /// Q = (1,0,0), R = (0,1,0), S = (−1,−1,0)/√2, T = (1,−1,0)/√2.
    pub fn standard() -> Self {
        Self::rotated(0.0, ["Q", "R", "S", "T"])
    }

    /// Directions compensating the trivial rotation through Φ.
    pub fn primed(phi: f64) -> Self {
        Self::rotated(phi, ["Q'", "R'", "S'", "T'"])
    }

    /// Directions compensating the full precession Θ.
    pub fn corrected(theta: f64) -> Self {
        Self::rotated(theta, ["Q''", "R''", "S''", "T''"])
    }

    /// Q and R turned by −α, S and T by +α about the 2-axis.
    fn rotated(alpha: f64, labels: [&str; 4]) -> Self {
        let (s, c) = alpha.sin_cos();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let dir = |label: &str, v: [f64; 3]| MeasurementDirection {
            label: label.to_string(),
            vec: v,
        };
        DirectionSet {
            q: dir(labels[0], [c, 0.0, -s]),
            r: dir(labels[1], [0.0, 1.0, 0.0]),
            s: dir(labels[2], [-c * h, -h, -s * h]),
            t: dir(labels[3], [c * h, -h, s * h]),
        }
    }

    fn validate(&self) -> Result<()> {
        for d in [&self.q, &self.r, &self.s, &self.t] {
            MeasurementDirection::new(d.label.clone(), d.vec)?;
        }
        Ok(())
    }
}

/// (â·σ) ⊗ (b̂·σ) as an explicit 4×4 matrix.
pub fn correlation_operator(
    a: &MeasurementDirection,
    b: &MeasurementDirection,
) -> [[Complex64; 4]; 4] {
    let (pa, pb) = (a.pauli(), b.pauli());
    let mut op = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    op[2 * i + j][2 * k + l] = pa[i][k] * pb[j][l];
                }
            }
        }
    }
    op
}

/// ⟨(â·σ) ⊗ (b̂·σ)⟩.
pub fn correlation(
    state: &TwoSpinState,
    a: &MeasurementDirection,
    b: &MeasurementDirection,
) -> f64 {
    state.expectation(&correlation_operator(a, b))
}

/// ⟨QS⟩ + ⟨RS⟩ + ⟨RT⟩ − ⟨QT⟩ by brute-force operator expectation.
pub fn chsh_value(state: &TwoSpinState, dirs: &DirectionSet) -> Result<f64> {
    dirs.validate()?;
    let DirectionSet { q, r, s, t } = dirs;
    Ok(
        correlation(state, q, s) + correlation(state, r, s) + correlation(state, r, t)
            - correlation(state, q, t),
    )
}

/// CHSH in the primed directions for a state still written in the unprimed
/// bases; equals `chsh_value(remove_trivial_rotation(state, Φ), standard)`.
pub fn chsh_primed(state: &TwoSpinState, phi: f64) -> Result<f64> {
    chsh_value(state, &DirectionSet::primed(phi))
}

/// CHSH with the Θ-corrected directions.
pub fn chsh_corrected(state: &TwoSpinState, theta: f64) -> Result<f64> {
    chsh_value(state, &DirectionSet::corrected(theta))
}

/// 2√2 cos²(angle), the value a singlet rotated through `angle` gives in
/// the standard directions.
pub fn chsh_closed_form(angle: f64) -> f64 {
    2.0 * std::f64::consts::SQRT_2 * angle.cos().powi(2)
}

/// d/dΔ of [`chsh_closed_form`]; multiplied by dΔ/dr it gives the
/// measurement sensitivity to a radial misplacement.
pub fn chsh_angle_derivative(angle: f64) -> f64 {
    -2.0 * std::f64::consts::SQRT_2 * (2.0 * angle).sin()
}
