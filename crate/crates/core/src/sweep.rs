//! Grid evaluation of the orbit pipeline and the infalling-chart scan, with
//! CSV output.
//!
//! Rows come out in grid order (radius ascending, then speed in the order
//! given) regardless of how many threads evaluated them, so the CSV is
//! byte-identical across runs and thread counts.

use std::io::{self, Write};

use crate::config::{ConfigError, Output, ScenarioConfig};
use crate::doran::{doran_fields, infalling_lapse_shift};
use crate::epr::{
    chsh_corrected, chsh_primed, chsh_value, evolve_pair, DirectionSet, TwoSpinState,
};
use crate::error::PhysicsError;
use crate::spacetime::BlackHoleParams;
use crate::wigner::{local_precession, AngleConvention};

/// How grid points are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Rayon pool; `None` uses the global pool. Falls back to sequential
    /// when the `parallel` feature is off.
    Parallel {
        threads: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        Execution::Parallel { threads: None }
    }
}

/// Ordered map over `items`.
pub fn evaluate<T, R, F>(items: &[T], exec: Execution, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        Execution::Parallel { threads } => parallel_map(items, threads, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(items: &[T], threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    let run = || items.par_iter().map(&f).collect();
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(items: &[T], _threads: Option<usize>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Everything computed for one (r, v) grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitValues {
    pub lambda01: f64,
    pub lambda13: f64,
    pub vartheta13: f64,
    pub theta_printed: f64,
    pub theta_tau: f64,
    /// Θ_tau − Φ
    pub delta_angle: f64,
    pub chsh: f64,
    pub chsh_primed: f64,
    pub chsh_corrected: f64,
}

impl OrbitValues {
    fn all_finite(&self) -> bool {
        [
            self.lambda01,
            self.lambda13,
            self.vartheta13,
            self.theta_printed,
            self.theta_tau,
            self.delta_angle,
            self.chsh,
            self.chsh_primed,
            self.chsh_corrected,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRow {
    pub r: f64,
    pub v: f64,
    pub values: Result<OrbitValues, PhysicsError>,
}

/// Full pipeline at one grid point. The proper-time angle drives the EPR
/// columns; the printed-formula angle is reported alongside.
pub fn orbit_point(
    p: &BlackHoleParams,
    r: f64,
    v: f64,
    phi: f64,
    particle_mass: f64,
) -> Result<OrbitValues, PhysicsError> {
    let lp = local_precession(p, r, v, particle_mass)?;
    let tau = lp.angles(phi, AngleConvention::ProperTime)?;
    let printed = lp.angles(phi, AngleConvention::Printed)?;
    let evolved = evolve_pair(&TwoSpinState::bell(), tau.theta);
    Ok(OrbitValues {
        lambda01: lp.lambda.get(0, 1),
        lambda13: lp.lambda.get(1, 3),
        vartheta13: lp.vartheta.get(1, 3),
        theta_printed: printed.theta,
        theta_tau: tau.theta,
        delta_angle: tau.delta,
        chsh: chsh_value(&evolved, &DirectionSet::standard())?,
        chsh_primed: chsh_primed(&evolved, phi)?,
        chsh_corrected: chsh_corrected(&evolved, tau.theta)?,
    })
}

/// Result table of an orbit sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSweep {
    pub r_plus: f64,
    pub outputs: Vec<Output>,
    pub rows: Vec<OrbitRow>,
}

pub fn run_sweep(cfg: &ScenarioConfig, exec: Execution) -> Result<OrbitSweep, SweepError> {
    cfg.validate()?;
    if cfg.is_doran_scan() {
        return Err(ConfigError::Invalid("doran output needs run_doran_scan".into()).into());
    }
    let params = cfg.params()?;
    let radii = cfg.grid.radii(&params)?;
    let points: Vec<(f64, f64)> = radii
        .iter()
        .flat_map(|&r| cfg.speeds.iter().map(move |&v| (r, v)))
        .collect();
    let rows = evaluate(&points, exec, |&(r, v)| {
        let values = orbit_point(&params, r, v, cfg.phi, cfg.particle_mass).and_then(|x| {
            if x.all_finite() {
                Ok(x)
            } else {
                Err(PhysicsError::InvalidPoint(format!(
                    "non-finite result at r = {r}"
                )))
            }
        });
        OrbitRow { r, v, values }
    });
    Ok(OrbitSweep {
        r_plus: params.r_plus(),
        outputs: cfg.outputs.iter().copied().collect(),
        rows,
    })
}

impl OrbitSweep {
    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.values.is_err()).count()
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec!["r", "r_over_rplus", "v"];
        for o in &self.outputs {
            h.extend_from_slice(match o {
                Output::Lambda => &["lambda01", "lambda13", "vartheta13"][..],
                Output::Theta => &["theta_printed", "theta_tau"],
                Output::Delta => &["delta_angle"],
                Output::Chsh => &["chsh"],
                Output::ChshPrimed => &["chsh_primed"],
                Output::ChshCorrected => &["chsh_corrected"],
                Output::Doran => &[],
            });
        }
        h.push("error");
        h
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.header().join(","))?;
        for row in &self.rows {
            let mut cells = vec![
                num(row.r),
                if self.r_plus > 0.0 {
                    num(row.r / self.r_plus)
                } else {
                    String::new()
                },
                num(row.v),
            ];
            let x = row.values.as_ref().ok();
            let cell = |f: fn(&OrbitValues) -> f64| x.map(|x| num(f(x))).unwrap_or_default();
            for o in &self.outputs {
                match o {
                    Output::Lambda => {
                        cells.push(cell(|x| x.lambda01));
                        cells.push(cell(|x| x.lambda13));
                        cells.push(cell(|x| x.vartheta13));
                    }
                    Output::Theta => {
                        cells.push(cell(|x| x.theta_printed));
                        cells.push(cell(|x| x.theta_tau));
                    }
                    Output::Delta => cells.push(cell(|x| x.delta_angle)),
                    Output::Chsh => cells.push(cell(|x| x.chsh)),
                    Output::ChshPrimed => cells.push(cell(|x| x.chsh_primed)),
                    Output::ChshCorrected => cells.push(cell(|x| x.chsh_corrected)),
                    Output::Doran => {}
                }
            }
            cells.push(
                row.values
                    .as_ref()
                    .err()
                    .map(|e| e.tag())
                    .unwrap_or("")
                    .to_string(),
            );
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// One radius of the infalling-chart scan.
#[derive(Debug, Clone, PartialEq)]
pub struct DoranRow {
    pub r: f64,
    pub delta: f64,
    /// Ω = √(R² + a²)
    pub omega: f64,
    /// b, or the reason it is not real.
    pub b: Result<f64, PhysicsError>,
    /// (Ñ, Ñ^φ₊, Ñ^φ₋) or the horizon singularity.
    pub velocity: Result<(f64, [f64; 2], [f64; 2]), PhysicsError>,
}

impl DoranRow {
    pub fn singular(&self) -> bool {
        matches!(self.velocity, Err(PhysicsError::HorizonSingular { .. }))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoranScan {
    pub rows: Vec<DoranRow>,
}

pub fn doran_point(p: &BlackHoleParams, r: f64) -> DoranRow {
    let theta = std::f64::consts::FRAC_PI_2;
    let b = doran_fields(p, r, theta).map(|f| f.b);
    let velocity = infalling_lapse_shift(p, r).map(|f| {
        (
            f.lapse,
            [f.shift_plus.re, f.shift_plus.im],
            [f.shift_minus.re, f.shift_minus.im],
        )
    });
    DoranRow {
        r,
        delta: p.delta(r),
        omega: r.hypot(p.spin()),
        b,
        velocity,
    }
}

pub fn run_doran_scan(cfg: &ScenarioConfig, exec: Execution) -> Result<DoranScan, SweepError> {
    cfg.validate()?;
    // Same subextremality requirement as orbit runs.
    let params = cfg.params()?;
    let radii = cfg.grid.radii(&params)?;
    let rows = evaluate(&radii, exec, |&r| doran_point(&params, r));
    Ok(DoranScan { rows })
}

impl DoranScan {
    pub const HEADER: [&'static str; 12] = [
        "R",
        "Delta",
        "b",
        "Omega",
        "N",
        "Nphi_plus_re",
        "Nphi_plus_im",
        "Nphi_minus_re",
        "Nphi_minus_im",
        "shift_real",
        "singular",
        "error",
    ];

    pub fn singular_radii(&self) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| r.singular())
            .map(|r| r.r)
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", Self::HEADER.join(","))?;
        for row in &self.rows {
            let mut cells = vec![num(row.r), num(row.delta)];
            cells.push(row.b.as_ref().map(|b| num(*b)).unwrap_or_default());
            cells.push(num(row.omega));
            match &row.velocity {
                Ok((n, plus, minus)) => {
                    cells.extend([n, &plus[0], &plus[1], &minus[0], &minus[1]].map(|x| num(*x)));
                    cells.push(u8::from(plus[1] == 0.0).to_string());
                }
                Err(_) => cells.extend(std::iter::repeat_n(String::new(), 6)),
            }
            cells.push(u8::from(row.singular()).to_string());
            let err = row
                .velocity
                .as_ref()
                .err()
                .or(row.b.as_ref().err())
                .map(|e| e.tag())
                .unwrap_or("");
            cells.push(err.to_string());
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// 17 significant digits, enough to round-trip any f64. Negative zero is
/// written as zero.
pub fn num(x: f64) -> String {
    debug_assert!(x.is_finite());
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}
