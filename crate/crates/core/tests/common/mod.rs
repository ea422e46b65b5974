//! Structural invariants shared by the acceptance target and the property
//! tests.

use kerr_epr::connection::spin_connection_at;
use kerr_epr::epr::{evolve_pair, remove_trivial_rotation, TwoSpinState};
use kerr_epr::spacetime::{metric_at, tetrad_at, BlackHoleParams};
use kerr_epr::wigner::{local_precession, AngleConvention};

pub const FRAME_TOL: f64 = 1e-10;
pub const ANTISYM_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-10;
pub const STATE_TOL: f64 = 1e-12;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

/// Checks every structural invariant of the pipeline at one grid point.
pub fn check_point(p: &BlackHoleParams, r: f64, v: f64, phi: f64) -> Result<(), String> {
    let at = format!("M={} a={} Q={} r={r} v={v}", p.mass(), p.spin(), p.charge());
    let lp = local_precession(p, r, v, 1.0).map_err(|e| format!("{at}: {e}"))?;
    let x = lp.orbit.point();
    let g = metric_at(p, &x).map_err(|e| e.to_string())?;
    let e = tetrad_at(p, &x).map_err(|e| e.to_string())?;

    ensure!(
        e.orthonormality_residual(&g) < FRAME_TOL,
        "{at}: tetrad not orthonormal"
    );
    ensure!(e.duality_residual() < FRAME_TOL, "{at}: tetrad duality");

    let omega = spin_connection_at(p, &x).map_err(|e| e.to_string())?;
    ensure!(
        omega.antisymmetry_residual() < ANTISYM_TOL,
        "{at}: omega not antisymmetric"
    );
    ensure!(
        lp.chi.antisymmetry_residual() < ANTISYM_TOL,
        "{at}: chi not antisymmetric"
    );
    // λ is a near-cancelling sum of O(|χ|) terms close to the horizon, so its
    // residual is measured against the larger of the two.
    let low = lp.lambda.lowered();
    let lambda_scale = lp.lambda.max_abs().max(lp.chi.max_abs());
    let lambda_res = (low + low.transpose()).amax() / lambda_scale.max(f64::MIN_POSITIVE);
    ensure!(
        lambda_res < ANTISYM_TOL,
        "{at}: lambda not antisymmetric ({lambda_res:.1e})"
    );
    // Only λ^0_1 = λ^1_0 and λ^1_3 = −λ^3_1 survive on a circular orbit.
    let pattern = [(0, 1), (1, 0), (1, 3), (3, 1)];
    for a in 0..4 {
        for b in 0..4 {
            if !pattern.contains(&(a, b)) {
                let x = lp.lambda.get(a, b).abs() / lambda_scale;
                ensure!(
                    x < ANTISYM_TOL,
                    "{at}: lambda^{a}_{b} = {x:.1e} off pattern"
                );
            }
        }
    }

    let u = lp.orbit.four_velocity;
    ensure!(
        (g.dot(&u, &u) + 1.0).abs() < NORM_TOL,
        "{at}: u.u = {}",
        g.dot(&u, &u)
    );
    let a = lp.local_acceleration;
    let ul = lp.orbit.momentum.map(|c| c / lp.orbit.mass);
    let au = -a[0] * ul[0] + a[1] * ul[1] + a[2] * ul[2] + a[3] * ul[3];
    let scale: f64 = (0..4).map(|i| (a[i] * ul[i]).abs()).sum();
    ensure!(
        au.abs() <= 1e-9 * scale.max(f64::MIN_POSITIVE),
        "{at}: a.u = {au}"
    );

    let th = &lp.vartheta;
    let time_leak = (0..4)
        .map(|i| th.get(0, i).abs().max(th.get(i, 0).abs()))
        .fold(0.0, f64::max);
    ensure!(time_leak == 0.0, "{at}: vartheta has time components");
    ensure!(
        th.antisymmetry_residual() < ANTISYM_TOL,
        "{at}: vartheta not antisymmetric"
    );

    let angles = lp
        .angles(phi, AngleConvention::ProperTime)
        .map_err(|e| e.to_string())?;
    let w = lp.rotation(&angles);
    ensure!(w.rotation_residual() < FRAME_TOL, "{at}: W not a rotation");

    let bell = TwoSpinState::bell();
    let evolved = evolve_pair(&bell, angles.theta);
    let primed = remove_trivial_rotation(&evolved, phi);
    for (name, s) in [("evolved", &evolved), ("primed", &primed)] {
        ensure!((s.norm_sqr() - 1.0).abs() < STATE_TOL, "{at}: {name} norm");
        ensure!(
            (s.concurrence() - 1.0).abs() < STATE_TOL,
            "{at}: {name} concurrence"
        );
    }
    Ok(())
}
