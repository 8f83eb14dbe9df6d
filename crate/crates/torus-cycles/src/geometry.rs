//! L_σ balls in R^d and on the unit torus: volumes, the ball-indicator
//! Fourier transform at lattice frequencies, torus distance, and the
//! radius/edge-probability conversion used for cross-model comparisons.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, gamma_half, sinc, HalfIntOrder};

/// Which L_σ norm a ball (and the graph model built on it) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sigma {
    /// Euclidean balls, σ = 2.
    Two,
    /// Axis-aligned cubes, σ = ∞.
    Inf,
}

impl std::fmt::Display for Sigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sigma::Two => write!(f, "2"),
            Sigma::Inf => write!(f, "inf"),
        }
    }
}

/// An L_σ ball of radius r in dimension d, restricted to 0 < r <= 1/2.
///
/// The radius cap is where the edge probability of the geometric graph
/// equals the ball volume and the cycle-probability series applies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallSpec {
    d: usize,
    sigma: Sigma,
    r: f64,
}

impl BallSpec {
    pub fn new(d: usize, sigma: Sigma, r: f64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if !(r > 0.0 && r <= 0.5) {
            return Err(Error::InvalidArgument(format!(
                "r must lie in (0, 0.5], got {r}"
            )));
        }
        Ok(Self { d, sigma, r })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sigma(&self) -> Sigma {
        self.sigma
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

/// A point on the unit torus T^d; coordinates live in [0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().any(|c| !(0.0..1.0).contains(c)) {
            return Err(Error::InvalidArgument(
                "torus coordinates must lie in [0, 1)".into(),
            ));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }
}

/// Volume of the ball: (2r)^d for σ = ∞, π^{d/2} r^d / Γ(1 + d/2) for σ = 2.
///
/// ```
/// use torus_cycles::geometry::{ball_volume, BallSpec, Sigma};
/// let cube = BallSpec::new(3, Sigma::Inf, 0.2).unwrap();
/// assert!((ball_volume(&cube) - 0.064).abs() < 1e-15);
/// ```
pub fn ball_volume(spec: &BallSpec) -> f64 {
    let d = spec.d as f64;
    match spec.sigma {
        Sigma::Inf => (2.0 * spec.r).powi(spec.d as i32),
        Sigma::Two => {
            let gamma = gamma_half(spec.d as u32 + 2); // Γ(1 + d/2)
            std::f64::consts::PI.powf(d / 2.0) * spec.r.powi(spec.d as i32) / gamma
        }
    }
}

/// Fourier transform of the ball indicator, evaluated at a frequency of
/// Euclidean norm `omega_norm`.
///
/// For σ = 2 this is the radial form (2πr)^{d/2} J_{d/2}(r ω) / ω^{d/2},
/// which tends to the ball volume as ω → 0.  For σ = ∞ it is the
/// one-dimensional factor 2r sinc(ω r); the full transform of the cube is
/// the product of the per-axis factors.
pub fn ball_ft(spec: &BallSpec, omega_norm: f64) -> Result<f64> {
    if !(omega_norm >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "frequency norm must be >= 0, got {omega_norm}"
        )));
    }
    match spec.sigma {
        Sigma::Inf => Ok(2.0 * spec.r * sinc(omega_norm * spec.r)),
        Sigma::Two => {
            if omega_norm == 0.0 {
                return Ok(ball_volume(spec));
            }
            let order = HalfIntOrder::for_dimension(spec.d)?;
            let j = bessel_j(order, spec.r * omega_norm)?;
            let half_d = spec.d as f64 / 2.0;
            Ok((2.0 * std::f64::consts::PI * spec.r).powf(half_d) * j
                / omega_norm.powf(half_d))
        }
    }
}

/// L_σ distance between two torus points, with per-coordinate wraparound
/// min(|δ|, 1 − |δ|).
pub fn torus_distance(x: &TorusPoint, y: &TorusPoint, sigma: Sigma) -> Result<f64> {
    if x.dimension() != y.dimension() {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: {} vs {}",
            x.dimension(),
            y.dimension()
        )));
    }
    Ok(torus_distance_coords(x.coords(), y.coords(), sigma))
}

/// Distance on raw coordinate slices; callers guarantee equal lengths.
pub(crate) fn torus_distance_coords(x: &[f64], y: &[f64], sigma: Sigma) -> f64 {
    match sigma {
        Sigma::Inf => x
            .iter()
            .zip(y)
            .map(|(a, b)| wrap_delta(a - b))
            .fold(0.0, f64::max),
        Sigma::Two => x
            .iter()
            .zip(y)
            .map(|(a, b)| {
                let w = wrap_delta(a - b);
                w * w
            })
            .sum::<f64>()
            .sqrt(),
    }
}

fn wrap_delta(delta: f64) -> f64 {
    let a = delta.abs();
    a.min(1.0 - a)
}

/// The radius whose ball volume equals `p`, i.e. the inverse of
/// [`ball_volume`] in r.
///
/// Fails if the required radius exceeds 1/2, where the model is undefined.
pub fn r_from_p(d: usize, sigma: Sigma, p: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must lie in (0, 1], got {p}"
        )));
    }
    let r = match sigma {
        Sigma::Inf => p.powf(1.0 / d as f64) / 2.0,
        Sigma::Two => {
            let gamma = gamma_half(d as u32 + 2); // Γ(1 + d/2)
            (p * gamma / std::f64::consts::PI.powf(d as f64 / 2.0)).powf(1.0 / d as f64)
        }
    };
    if r > 0.5 {
        return Err(Error::OutOfRange(format!(
            "edge probability {p} needs radius {r:.6} > 1/2 in dimension {d} (σ = {sigma})"
        )));
    }
    Ok(r)
}

/// Largest edge probability the geometric model can represent, i.e. the
/// ball volume at r = 1/2.
pub fn max_edge_probability(d: usize, sigma: Sigma) -> f64 {
    ball_volume(&BallSpec::new(d, sigma, 0.5).expect("r = 1/2 is always valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn euclidean_volumes() {
        let disc = BallSpec::new(2, Sigma::Two, 0.2).unwrap();
        assert_relative_eq!(ball_volume(&disc), std::f64::consts::PI * 0.04, max_relative = 1e-14);
        let ball = BallSpec::new(3, Sigma::Two, 0.3).unwrap();
        assert_relative_eq!(
            ball_volume(&ball),
            4.0 / 3.0 * std::f64::consts::PI * 0.027,
            max_relative = 1e-14
        );
    }

    #[test]
    fn radius_domain_is_validated() {
        assert!(BallSpec::new(2, Sigma::Two, 0.0).is_err());
        assert!(BallSpec::new(2, Sigma::Two, 0.6).is_err());
        assert!(BallSpec::new(0, Sigma::Two, 0.1).is_err());
        assert!(BallSpec::new(2, Sigma::Two, 0.5).is_ok());
    }

    #[test]
    fn transform_tends_to_volume_at_zero_frequency() {
        for d in 1..=8 {
            let spec = BallSpec::new(d, Sigma::Two, 0.3).unwrap();
            let v = ball_volume(&spec);
            assert_eq!(ball_ft(&spec, 0.0).unwrap(), v);
            assert_relative_eq!(ball_ft(&spec, 1e-6).unwrap(), v, max_relative = 1e-9);
        }
    }

    #[test]
    fn transform_closed_form_in_two_dimensions() {
        // (2πr) J_1(r ω) / ω at r = 1/4, ω = 2π
        let spec = BallSpec::new(2, Sigma::Two, 0.25).unwrap();
        let j1 = bessel_j(HalfIntOrder::new(2).unwrap(), std::f64::consts::FRAC_PI_2).unwrap();
        assert_relative_eq!(
            ball_ft(&spec, 2.0 * std::f64::consts::PI).unwrap(),
            0.25 * j1,
            max_relative = 1e-13
        );
    }

    #[test]
    fn cube_transform_is_scaled_sinc() {
        let spec = BallSpec::new(3, Sigma::Inf, 0.2).unwrap();
        assert_relative_eq!(ball_ft(&spec, 5.0).unwrap(), 0.4 * sinc(1.0), max_relative = 1e-14);
    }

    #[test]
    fn radius_from_probability_inverts_volume() {
        for d in 1..=4 {
            for sigma in [Sigma::Two, Sigma::Inf] {
                for i in 1..=8 {
                    let p = 0.05 * i as f64 * max_edge_probability(d, sigma).min(1.0);
                    let r = match r_from_p(d, sigma, p) {
                        Ok(r) => r,
                        Err(_) => continue, // p needs r > 1/2 in this geometry
                    };
                    let spec = BallSpec::new(d, sigma, r).unwrap();
                    assert_relative_eq!(ball_volume(&spec), p, max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn radius_from_probability_rejects_out_of_range() {
        // the unit disc caps the d=2 Euclidean edge probability at π/4
        assert!(matches!(
            r_from_p(2, Sigma::Two, 0.9),
            Err(crate::Error::OutOfRange(_))
        ));
        assert!(r_from_p(2, Sigma::Two, 0.0).is_err());
    }

    #[test]
    fn wraparound_distance() {
        let x = TorusPoint::new(vec![0.95, 0.1]).unwrap();
        let y = TorusPoint::new(vec![0.05, 0.3]).unwrap();
        // deltas wrap to 0.1 and 0.2
        assert_relative_eq!(torus_distance(&x, &y, Sigma::Inf).unwrap(), 0.2, max_relative = 1e-14);
        assert_relative_eq!(
            torus_distance(&x, &y, Sigma::Two).unwrap(),
            (0.01f64 + 0.04).sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn distance_rejects_dimension_mismatch() {
        let x = TorusPoint::new(vec![0.5]).unwrap();
        let y = TorusPoint::new(vec![0.5, 0.5]).unwrap();
        assert!(torus_distance(&x, &y, Sigma::Two).is_err());
    }

    #[test]
    fn point_coordinates_are_validated() {
        assert!(TorusPoint::new(vec![1.0]).is_err());
        assert!(TorusPoint::new(vec![-0.1]).is_err());
        assert!(TorusPoint::new(vec![0.0, 0.999]).is_ok());
    }

    proptest! {
        #[test]
        fn distance_is_symmetric_and_bounded(
            a in proptest::collection::vec(0.0f64..1.0, 1..4),
            b in proptest::collection::vec(0.0f64..1.0, 1..4),
        ) {
            let d = a.len().min(b.len());
            let (a, b) = (&a[..d], &b[..d]);
            for sigma in [Sigma::Two, Sigma::Inf] {
                let xy = torus_distance_coords(a, b, sigma);
                let yx = torus_distance_coords(b, a, sigma);
                prop_assert!((xy - yx).abs() < 1e-15);
                let cap = match sigma {
                    Sigma::Inf => 0.5,
                    Sigma::Two => 0.5 * (d as f64).sqrt(),
                };
                prop_assert!(xy >= 0.0 && xy <= cap + 1e-12);
            }
        }

        #[test]
        fn triangle_inequality(
            a in proptest::collection::vec(0.0f64..1.0, 2),
            b in proptest::collection::vec(0.0f64..1.0, 2),
            c in proptest::collection::vec(0.0f64..1.0, 2),
        ) {
            for sigma in [Sigma::Two, Sigma::Inf] {
                let ab = torus_distance_coords(&a, &b, sigma);
                let bc = torus_distance_coords(&b, &c, sigma);
                let ac = torus_distance_coords(&a, &c, sigma);
                prop_assert!(ac <= ab + bc + 1e-12);
            }
        }
    }
}
