//! The probability Θ(G, q) that one particular labeled q-cycle is present,
//! for the ER model (closed form) and the geometric model (lattice series
//! with controlled truncation).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::geometry::{ball_ft, ball_volume, BallSpec, Sigma};
use crate::specfun::{psi_counts, sinc};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Default absolute truncation target for the series.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default term cap for the per-axis sinc series (σ = ∞).
pub const DEFAULT_K_MAX_INF: usize = 1_000_000;
/// Default shell cap for the ψ-weighted Bessel series (σ = 2).
pub const DEFAULT_K_MAX_SHELL: usize = 100_000;

/// Which random graph a probability refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    /// ER graph: every edge independently present with probability p.
    Er { p: f64 },
    /// Geometric graph: uniform points on the torus, edges within the ball.
    Gr(BallSpec),
}

impl GraphModel {
    pub fn er(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "edge probability must lie in [0, 1], got {p}"
            )));
        }
        Ok(GraphModel::Er { p })
    }

    pub fn gr(d: usize, sigma: Sigma, r: f64) -> Result<Self> {
        Ok(GraphModel::Gr(BallSpec::new(d, sigma, r)?))
    }

    /// Probability that one particular edge is present.
    pub fn edge_probability(&self) -> f64 {
        match self {
            GraphModel::Er { p } => *p,
            GraphModel::Gr(spec) => ball_volume(spec),
        }
    }
}

/// A series sum together with its truncation bookkeeping.
///
/// `truncation_bound` is rigorous for the σ = ∞ series and a heuristic
/// envelope estimate for σ = 2; `converged` records whether the bound
/// dropped below the requested tolerance before the term cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub truncation_bound: f64,
    pub terms_used: usize,
    pub converged: bool,
}

impl SeriesValue {
    fn exact(value: f64) -> Self {
        SeriesValue {
            value,
            truncation_bound: 0.0,
            terms_used: 0,
            converged: true,
        }
    }
}

/// Θ for the ER graph: p for a 2-cycle (a single edge), p^q otherwise.
pub fn theta_er(p: f64, q: usize) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle length must be >= 2, got {q}"
        )));
    }
    Ok(if q == 2 { p } else { p.powi(q as i32) })
}

/// Θ for the σ = ∞ geometric graph via the per-axis sinc series
/// (2r)^{dq} (1 + 2 Σ_k sinc(2πkr)^q)^d.
///
/// The tail is bounded rigorously through |sinc(x)| <= 1/x.
pub fn theta_gr_inf(d: usize, r: f64, q: usize, tol: f64) -> Result<SeriesValue> {
    let spec = BallSpec::new(d, Sigma::Inf, r)?;
    check_q_tol(q, tol)?;
    if q == 2 {
        return Ok(SeriesValue::exact(ball_volume(&spec)));
    }
    let qf = q as f64;
    let prefactor = (2.0 * r).powi((d * q) as i32);
    let mut sum = 1.0f64;
    let mut comp = 0.0f64; // Kahan compensation
    let mut bound = f64::INFINITY;
    let mut terms = 0usize;
    let mut converged = false;
    for k in 1..=DEFAULT_K_MAX_INF {
        let term = 2.0 * sinc(TWO_PI * k as f64 * r).powi(q as i32);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        terms = k;
        // per-axis tail 2 Σ_{j>k} (2πjr)^{-q} <= 2 (2πr)^{-q} k^{1-q} / (q-1),
        // valid once the envelope argument exceeds 1, then propagated
        // through the d-th power of the axis factor
        if TWO_PI * k as f64 * r >= 1.0 {
            let tail = 2.0 * (TWO_PI * r).powi(-(q as i32)) * (k as f64).powf(1.0 - qf)
                / (qf - 1.0);
            bound = prefactor * d as f64 * sum.abs().powi(d as i32 - 1) * tail;
            if bound < tol {
                converged = true;
                break;
            }
        }
    }
    let value = prefactor * sum.powi(d as i32);
    finish(value, bound, terms, converged)
}

/// Θ for the σ = 2 geometric graph via the shell series
/// V^q + Σ_k ψ_d(k) Ξ̂^q(2π√k), Ξ̂ the ball transform.
///
/// Shells are summed in increasing k (which already pairs the oscillating
/// lattice contributions) until the heuristic tail envelope drops below
/// `tol` or `k_max` shells have been used.
pub fn theta_gr_2(d: usize, r: f64, q: usize, tol: f64, k_max: usize) -> Result<SeriesValue> {
    if d < 2 {
        return Err(Error::InvalidArgument(
            "the shell series needs d >= 2; route d = 1 through the σ = ∞ form".into(),
        ));
    }
    let spec = BallSpec::new(d, Sigma::Two, r)?;
    check_q_tol(q, tol)?;
    let volume = ball_volume(&spec);
    if q == 2 {
        return Ok(SeriesValue::exact(volume));
    }
    let psi = shared_psi_table(d, k_max);
    let mut sum = volume.powi(q as i32);
    let mut comp = 0.0f64;
    let mut tail = f64::INFINITY;
    let mut terms = 0usize;
    let mut converged = false;
    for k in 1..=k_max {
        let count = psi[k];
        terms = k;
        if count > 0 {
            let term = count as f64 * ball_ft(&spec, TWO_PI * (k as f64).sqrt())?.powi(q as i32);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        // Trust the asymptotic envelope only once the Bessel argument is
        // past its turning point and a few shells are in.
        if k >= 16 && TWO_PI * r * (k as f64).sqrt() > d as f64 / 2.0 + 2.0 {
            tail = shell_tail_estimate(d, r, q, k as f64);
            if tail < tol {
                converged = true;
                break;
            }
        }
    }
    finish(sum, tail, terms, converged)
}

/// Heuristic tail envelope for the shell series past shell K.
///
/// Uses |J_ν(x)| <= sqrt(2/(πx)) for the transform and the mean shell count
/// ψ_d(k) ≈ π^{d/2} k^{d/2-1} / Γ(d/2), then integrates.
fn shell_tail_estimate(d: usize, r: f64, q: usize, big_k: f64) -> f64 {
    let qf = q as f64;
    let df = d as f64;
    // per-shell transform envelope: (r^{(d-1)/2}/π) k^{-(d+1)/4}, to the q-th power
    let envelope = (r.powf((df - 1.0) / 2.0) / std::f64::consts::PI).powf(qf);
    let density = std::f64::consts::PI.powf(df / 2.0)
        / crate::specfun::gamma_half(d as u32); // Γ(d/2)
    let s = qf * (df + 1.0) / 4.0;
    let decay = s - df / 2.0; // > 0 for every q >= 2
    envelope * density * big_k.powf(df / 2.0 - s) / decay
}

/// Θ under either model, dispatching to the closed form or series.
///
/// A one-dimensional σ = 2 ball is the same interval as the σ = ∞ ball, so
/// d = 1 geometric requests always use the sinc series.
pub fn theta(model: &GraphModel, q: usize, tol: f64) -> Result<SeriesValue> {
    match model {
        GraphModel::Er { p } => Ok(SeriesValue::exact(theta_er(*p, q)?)),
        GraphModel::Gr(spec) => match (spec.d(), spec.sigma()) {
            (_, Sigma::Inf) | (1, Sigma::Two) => theta_gr_inf(spec.d(), spec.r(), q, tol),
            (d, Sigma::Two) => theta_gr_2(d, spec.r(), q, tol, DEFAULT_K_MAX_SHELL),
        },
    }
}

fn check_q_tol(q: usize, tol: f64) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "cycle length must be >= 2, got {q}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Clamp a probability into [0, 1], but only when the overshoot is within
/// the truncation bound plus rounding slack; a larger overshoot means the
/// computation itself went wrong and is reported as such.
fn finish(value: f64, bound: f64, terms: usize, converged: bool) -> Result<SeriesValue> {
    let slack = bound + 1e-9 * value.abs().max(1.0) * f64::EPSILON.sqrt();
    let clamped = if value < 0.0 {
        if -value > slack {
            return Err(Error::NumericalFailure(format!(
                "series value {value} undershoots 0 beyond its truncation bound {bound}"
            )));
        }
        0.0
    } else if value > 1.0 {
        if value - 1.0 > slack {
            return Err(Error::NumericalFailure(format!(
                "series value {value} overshoots 1 beyond its truncation bound {bound}"
            )));
        }
        1.0
    } else {
        value
    };
    Ok(SeriesValue {
        value: clamped,
        truncation_bound: bound,
        terms_used: terms,
        converged,
    })
}

/// Shared ψ_d tables, grown geometrically and reused across series calls.
fn shared_psi_table(d: usize, k_max: usize) -> Arc<Vec<u64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<u64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    match guard.get(&d) {
        Some(t) if t.len() > k_max => Arc::clone(t),
        _ => {
            let size = (k_max + 1).next_power_of_two().max(1024);
            let table = Arc::new(psi_counts(d, size).counts().to_vec());
            guard.insert(d, Arc::clone(&table));
            table
        }
    }
}
