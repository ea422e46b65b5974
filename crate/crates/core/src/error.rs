use thiserror::Error;

pub type Result<T, E = PhysicsError> = std::result::Result<T, E>;

/// Domain errors raised by the geometry and spin pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhysicsError {
    #[error("invalid black-hole parameters: {0}")]
    InvalidParams(String),

    #[error("naked singularity: M^2 = {mass_sq} < a^2 + Q^2 = {spin_charge_sq}")]
    NakedSingularity { mass_sq: f64, spin_charge_sq: f64 },

    #[error("extremal black hole (r+ = r-) is not supported for orbit analysis")]
    ExtremalUnsupported,

    #[error("point r = {r} lies on a coordinate horizon (Delta = {delta})")]
    HorizonSingular { r: f64, delta: f64 },

    #[error("invalid spacetime point: {0}")]
    InvalidPoint(String),

    #[error("ring singularity: Sigma vanishes at r = {r}, theta = {theta}")]
    RingSingularity { r: f64, theta: f64 },

    #[error("radius r = {r} is not outside the outer horizon r+ = {r_plus}")]
    InsideHorizon { r: f64, r_plus: f64 },

    #[error("speed |v| = {0} is not below the speed of light")]
    Superluminal(f64),

    #[error("particle mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("no azimuthal progress (u^phi = {u_phi}); flight time to the observers is undefined")]
    NoAzimuthalProgress { u_phi: f64 },

    #[error("2MR - Q^2 = {value} < 0 at R = {r}; infalling lapse b is not real")]
    ComplexLapse { r: f64, value: f64 },

    #[error("infalling lapse vanishes at R = {r}; four-velocity undefined")]
    DegenerateLapse { r: f64 },

    #[error("measurement direction {label} has norm {norm}, expected 1")]
    NonUnitDirection { label: String, norm: f64 },
}

impl PhysicsError {
    /// Short machine-readable tag, used in CSV error columns.
    pub fn tag(&self) -> &'static str {
        match self {
            PhysicsError::InvalidParams(_) => "invalid_params",
            PhysicsError::NakedSingularity { .. } => "naked_singularity",
            PhysicsError::ExtremalUnsupported => "extremal_unsupported",
            PhysicsError::HorizonSingular { .. } => "horizon_singular",
            PhysicsError::InvalidPoint(_) => "invalid_point",
            PhysicsError::RingSingularity { .. } => "ring_singularity",
            PhysicsError::InsideHorizon { .. } => "inside_horizon",
            PhysicsError::Superluminal(_) => "superluminal",
            PhysicsError::NonPositiveMass(_) => "non_positive_mass",
            PhysicsError::NoAzimuthalProgress { .. } => "no_azimuthal_progress",
            PhysicsError::ComplexLapse { .. } => "complex_lapse",
            PhysicsError::DegenerateLapse { .. } => "degenerate_lapse",
            PhysicsError::NonUnitDirection { .. } => "non_unit_direction",
        }
    }
}
