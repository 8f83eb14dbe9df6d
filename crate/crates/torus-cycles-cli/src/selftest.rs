//! The built-in oracle-equivalence suite: every analytic code path is
//! checked against an independent reference at run time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use torus_cycles::cycleprob::{theta, theta_gr_inf, GraphModel};
use torus_cycles::geometry::Sigma;
use torus_cycles::oracle;
use torus_cycles::specfun::{bessel_j, psi_counts, HalfIntOrder};
use torus_cycles::spectral::{expected_poly, PolyKind, ThetaSource};
use torus_cycles::{Error, Result};

fn check(name: &str, ok: bool, detail: String) -> Result<()> {
    if ok {
        println!("ok: {name}");
        Ok(())
    } else {
        Err(Error::NumericalFailure(format!("selftest {name}: {detail}")))
    }
}

pub fn run(seed: u64) -> Result<()> {
    // lattice counts vs brute-force box scan
    let mut ok = true;
    for d in 1..=3 {
        ok &= psi_counts(d, 100).counts() == &oracle::psi_bruteforce_table(d, 100)?[..];
    }
    check("lattice counts match brute force (d <= 3, k <= 100)", ok, String::new())?;

    // recurrence vs total ER enumeration
    let mut ok = true;
    for n in 2..=4usize {
        for denom in [2i64, 4] {
            let p = BigRational::new(BigInt::from(1), BigInt::from(denom));
            let exact = oracle::exact_er_expectations(n, &p)?;
            let source = ThetaSource::ExactEr(p);
            let lambda = expected_poly(PolyKind::Lambda, &source, n, 256, 1e-12)?;
            let gamma = expected_poly(PolyKind::Gamma, &source, n, 256, 1e-12)?;
            ok &= lambda.coeffs() == &exact.poly_lambda[..];
            ok &= gamma.coeffs() == &exact.poly_gamma[..];
        }
    }
    check("recurrence matches exhaustive ER enumeration (n <= 4)", ok, String::new())?;

    // complete-graph identities
    let mut ok = true;
    for n in 2..=10usize {
        let lambda = expected_poly(PolyKind::Lambda, &ThetaSource::One, n, 256, 1e-12)?;
        let sign = if n % 2 == 1 { 1i64 } else { -1 };
        ok &= lambda.constant_term()
            == &BigRational::new(BigInt::from(sign * (n as i64 - 1)), BigInt::from(1));
        let gamma = expected_poly(PolyKind::Gamma, &ThetaSource::One, n, 256, 1e-12)?;
        ok &= gamma.constant_term()
            == &BigRational::new(BigInt::from(oracle::derangements(n)?), BigInt::from(1));
    }
    check("complete-graph determinant and permanent identities", ok, String::new())?;

    // triangle closed form on the interval model
    let mut worst = 0.0f64;
    for r in [0.1, 0.2] {
        let sv = theta_gr_inf(1, r, 3, 1e-11)?;
        worst = worst.max((sv.value - 3.0 * r * r).abs());
    }
    check(
        "interval triangle probability equals 3r^2",
        worst < 1e-10,
        format!("worst deviation {worst:.3e}"),
    )?;

    // series vs Monte Carlo
    let mut ok = true;
    let mut detail = String::new();
    for (d, sigma, r) in [(2, Sigma::Two, 0.2), (1, Sigma::Inf, 0.1)] {
        let model = GraphModel::gr(d, sigma, r)?;
        let series = theta(&model, 3, 1e-10)?.value;
        let spec = match model {
            GraphModel::Gr(spec) => spec,
            _ => unreachable!(),
        };
        let mc = oracle::mc_cycle_prob(&spec, 3, 200_000, seed)?;
        let sigma_true = (series * (1.0 - series) / 200_000.0).sqrt();
        if (series - mc.mean).abs() > 5.0 * mc.stderr.max(sigma_true) {
            ok = false;
            detail = format!("d={d} sigma={sigma} r={r}: {series} vs {} +- {}", mc.mean, mc.stderr);
        }
    }
    check("lattice series within 5 sigma of Monte Carlo", ok, detail)?;

    // Bessel evaluation against the half-order closed form
    let mut worst = 0.0f64;
    let half = HalfIntOrder::new(1)?;
    for i in 1..=60 {
        let x = i as f64;
        let exact = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
        worst = worst.max((bessel_j(half, x)? - exact).abs());
    }
    check(
        "bessel evaluation matches the half-order closed form",
        worst < 1e-13,
        format!("worst deviation {worst:.3e}"),
    )?;

    // recurrence vs matrix Monte Carlo on a geometric model
    let model = GraphModel::gr(2, Sigma::Inf, 0.35)?;
    let lambda = expected_poly(PolyKind::Lambda, &ThetaSource::Model(model), 7, 128, 1e-10)?;
    let e_det = lambda.constant_term().to_f64().unwrap();
    let (det, _) = oracle::mc_matrix_expectations(&model, 7, 200_000, seed)?;
    check(
        "expected determinant within 5 sigma of matrix Monte Carlo",
        (det.mean - e_det).abs() <= 5.0 * det.stderr.max(1e-6),
        format!("{} vs {e_det} +- {}", det.mean, det.stderr),
    )?;

    println!("selftest passed (7 checks)");
    Ok(())
}
