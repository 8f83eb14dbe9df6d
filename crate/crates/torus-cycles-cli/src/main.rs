//! Command-line front end: cycle probabilities, Hamilton-cycle expectations,
//! thresholds, expected-polynomial sweeps, Monte Carlo cross-checks, lattice
//! counts, figure presets, and a built-in selftest.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical failure
//! (including absent thresholds), 4 capacity of an exact algorithm exceeded.

mod selftest;

use torus_cycles_cli::{csv, svg};

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use torus_cycles::cycleprob::{theta, GraphModel, DEFAULT_TOL};
use torus_cycles::geometry::{r_from_p, Sigma};
use torus_cycles::oracle;
use torus_cycles::specfun::psi_counts;
use torus_cycles::spectral::{
    esf_from_lambda, expected_poly, hamilton_expectation_tol, threshold, ModelFamily, PolyKind,
    Quantity, ThetaSource, DEFAULT_PRECISION_BITS,
};
use torus_cycles::Error;

use crate::csv::{fmt_f64, Table};
use crate::svg::{emit_svg, Axes, Series};

#[derive(Parser)]
#[command(name = "torus-cycles", version, about = "Exact cycle statistics for random graphs on the unit torus")]
struct Cli {
    /// Worker threads for sweeps and Monte Carlo (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Er,
    Gr,
}

#[derive(Clone, Copy)]
enum SigmaArg {
    Two,
    Inf,
}

impl std::str::FromStr for SigmaArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "2" => Ok(SigmaArg::Two),
            "inf" => Ok(SigmaArg::Inf),
            other => Err(format!("sigma must be \"2\" or \"inf\", got \"{other}\"")),
        }
    }
}

impl From<SigmaArg> for Sigma {
    fn from(s: SigmaArg) -> Sigma {
        match s {
            SigmaArg::Two => Sigma::Two,
            SigmaArg::Inf => Sigma::Inf,
        }
    }
}

#[derive(Args)]
struct ModelArgs {
    /// Graph model
    #[arg(long, value_enum)]
    model: ModelKind,

    /// Edge probability: the ER parameter, or mapped to a radius for gr
    #[arg(long)]
    p: Option<f64>,

    /// Torus dimension (gr)
    #[arg(long)]
    d: Option<usize>,

    /// Ball norm, "2" or "inf" (gr)
    #[arg(long)]
    sigma: Option<SigmaArg>,

    /// Ball radius in (0, 1/2] (gr)
    #[arg(long)]
    r: Option<f64>,
}

impl ModelArgs {
    fn resolve(&self) -> Result<GraphModel, Error> {
        match self.model {
            ModelKind::Er => {
                let p = self.p.ok_or_else(|| {
                    Error::InvalidArgument("--model er requires --p".into())
                })?;
                GraphModel::er(p)
            }
            ModelKind::Gr => {
                let d = self.d.ok_or_else(|| {
                    Error::InvalidArgument("--model gr requires --d".into())
                })?;
                let sigma: Sigma = self
                    .sigma
                    .ok_or_else(|| Error::InvalidArgument("--model gr requires --sigma".into()))?
                    .into();
                let r = match (self.r, self.p) {
                    (Some(r), _) => r,
                    (None, Some(p)) => r_from_p(d, sigma, p)?,
                    (None, None) => {
                        return Err(Error::InvalidArgument(
                            "--model gr requires --r (or --p to derive it)".into(),
                        ))
                    }
                };
                GraphModel::gr(d, sigma, r)
            }
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Probability that one labeled q-cycle is present
    CycleProb {
        #[command(flatten)]
        model: ModelArgs,
        /// Cycle length, >= 2
        #[arg(long)]
        q: usize,
        /// Series truncation target
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// On a non-converged series, fall back to Monte Carlo
        #[arg(long)]
        mc_fallback: bool,
        /// Monte Carlo samples for the fallback
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// RNG seed (fallback: TORUS_CYCLES_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Expected number of Hamilton cycles on n vertices
    Hamilton {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of vertices, >= 3
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Smallest edge probability where an expectation reaches 1, ER vs GR
    Threshold {
        /// Target expectation
        #[arg(long, value_enum, default_value_t = QuantityArg::Hamilton)]
        quantity: QuantityArg,
        /// Torus dimension of the geometric column
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Ball norm of the geometric column, "2" or "inf"
        #[arg(long, default_value = "2")]
        sigma: SigmaArg,
        /// Single vertex count
        #[arg(long, conflicts_with_all = ["n_start", "n_stop"])]
        n: Option<usize>,
        /// Sweep start (inclusive)
        #[arg(long, requires = "n_stop")]
        n_start: Option<usize>,
        /// Sweep stop (inclusive)
        #[arg(long, requires = "n_start")]
        n_stop: Option<usize>,
        /// Also write an SVG line plot here
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Expected characteristic/permanental polynomial or ESF values
    Spectral {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of vertices
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Lambda)]
        kind: KindArg,
        /// Significand bits for the recurrence arithmetic
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Sweep the edge probability from here (constant term only)
        #[arg(long, requires = "p_stop")]
        p_start: Option<f64>,
        /// Sweep stop (inclusive)
        #[arg(long, requires = "p_start")]
        p_stop: Option<f64>,
        /// Sweep points
        #[arg(long, default_value_t = 101)]
        p_points: usize,
        /// Also write an SVG line plot of the sweep here
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo estimates: cycle probability (--q) or det/per (--n)
    Mc {
        #[command(flatten)]
        model: ModelArgs,
        /// Cycle length for a cycle-probability estimate (gr only)
        #[arg(long, conflicts_with = "n")]
        q: Option<usize>,
        /// Order for determinant/permanent estimates
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sum-of-d-squares lattice counts psi_d(0..=k_max)
    Psi {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the oracle-equivalence suite
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Reproduce one of the four reference figures (CSV + SVG)
    Plot {
        /// Figure number, 1..=4
        #[arg(long)]
        figure: u32,
        /// Vertex count for the sweeps and threshold upper end
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Sweep points for figures 2 and 3
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// SVG path (default: figure<N>.svg)
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum QuantityArg {
    Hamilton,
    Permanent,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Quantity {
        match q {
            QuantityArg::Hamilton => Quantity::Hamilton,
            QuantityArg::Permanent => Quantity::Permanent,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum KindArg {
    Lambda,
    Gamma,
    Esf,
}

fn main() {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // a later subcommand may be the second one in-process during tests;
        // a pre-built global pool is fine to keep then
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    if let Err(e) = dispatch(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(match e {
            Error::InvalidArgument(_) | Error::OutOfRange(_) => 2,
            Error::NumericalFailure(_) | Error::NoThreshold(_) => 3,
            Error::Capacity(_) => 4,
        });
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.or_else(|| {
        std::env::var("TORUS_CYCLES_SEED").ok().and_then(|s| s.parse().ok())
    })
    .unwrap_or(0)
}

fn write_text(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("cannot write stdout: {e}")))
        }
    }
}

/// model,d,sigma,r,p columns shared by several schemas.
fn model_fields(model: &GraphModel) -> [String; 5] {
    match model {
        GraphModel::Er { p } => {
            ["er".into(), String::new(), String::new(), String::new(), fmt_f64(*p)]
        }
        GraphModel::Gr(spec) => [
            "gr".into(),
            spec.d().to_string(),
            spec.sigma().to_string(),
            fmt_f64(spec.r()),
            fmt_f64(model.edge_probability()),
        ],
    }
}

fn dispatch(command: Command) -> Result<(), Error> {
    match command {
        Command::CycleProb { model, q, tol, mc_fallback, samples, seed, output } => {
            cycle_prob(&model.resolve()?, q, tol, mc_fallback, samples, resolve_seed(seed), &output)
        }
        Command::Hamilton { model, n, tol, output } => {
            let model = model.resolve()?;
            let tau = hamilton_expectation_tol(&model, n, tol)?;
            let mut table = Table::new(&["model", "d", "sigma", "r", "p", "n", "expected_hamilton_cycles"]);
            let mut row = model_fields(&model).to_vec();
            row.push(n.to_string());
            row.push(fmt_f64(tau.to_f64().unwrap_or(f64::INFINITY)));
            table.push(row);
            write_text(output.out.as_ref(), &table.emit())
        }
        Command::Threshold { quantity, d, sigma, n, n_start, n_stop, plot, output } => {
            let range = match (n, n_start, n_stop) {
                (Some(n), _, _) => (n, n, false),
                (None, Some(a), Some(b)) => (a, b, true),
                _ => {
                    return Err(Error::InvalidArgument(
                        "threshold needs --n or --n-start/--n-stop".into(),
                    ))
                }
            };
            thresholds(quantity.into(), d, sigma.into(), range, plot.as_ref(), &output)
        }
        Command::Spectral {
            model, n, kind, precision_bits, tol, p_start, p_stop, p_points, plot, output,
        } => match (p_start, p_stop) {
            (Some(a), Some(b)) => spectral_sweep(
                &model, n, kind, precision_bits, tol, a, b, p_points, plot.as_ref(), &output,
            ),
            _ => spectral_table(&model.resolve()?, n, kind, precision_bits, tol, &output),
        },
        Command::Mc { model, q, n, samples, seed, output } => {
            mc(&model.resolve()?, q, n, samples, resolve_seed(seed), &output)
        }
        Command::Psi { d, k_max, output } => {
            if d < 1 {
                return Err(Error::InvalidArgument("psi requires --d >= 1".into()));
            }
            let counts = psi_counts(d, k_max);
            let mut table = Table::new(&["k", "psi"]);
            for (k, c) in counts.counts().iter().enumerate() {
                table.push(vec![k.to_string(), c.to_string()]);
            }
            write_text(output.out.as_ref(), &table.emit())
        }
        Command::Selftest { seed } => selftest::run(resolve_seed(seed)),
        Command::Plot { figure, n, points, plot, output } => {
            figures(figure, n, points, plot, &output)
        }
    }
}

fn cycle_prob(
    model: &GraphModel,
    q: usize,
    tol: f64,
    mc_fallback: bool,
    samples: u64,
    seed: u64,
    output: &OutputArgs,
) -> Result<(), Error> {
    let header = [
        "model", "d", "sigma", "r", "p", "q", "method", "value", "stderr",
        "truncation_bound", "terms_used", "converged",
    ];
    let mut table = Table::new(&header);
    let mut row = model_fields(model).to_vec();
    row.push(q.to_string());
    let sv = theta(model, q, tol)?;
    if sv.converged {
        row.extend([
            "series".into(),
            fmt_f64(sv.value),
            String::new(),
            fmt_f64(sv.truncation_bound),
            sv.terms_used.to_string(),
            "true".into(),
        ]);
    } else if mc_fallback {
        let spec = match model {
            GraphModel::Gr(spec) => *spec,
            GraphModel::Er { .. } => unreachable!("ER probabilities are closed-form"),
        };
        eprintln!(
            "warning: series not converged (bound {:.3e}); falling back to Monte Carlo",
            sv.truncation_bound
        );
        let est = oracle::mc_cycle_prob(&spec, q, samples, seed)?;
        row.extend([
            "mc".into(),
            fmt_f64(est.mean),
            fmt_f64(est.stderr),
            String::new(),
            est.samples.to_string(),
            String::new(),
        ]);
    } else {
        return Err(Error::NumericalFailure(format!(
            "series did not reach tolerance {tol} (truncation bound {:.3e}); \
             rerun with --mc-fallback or a looser --tol",
            sv.truncation_bound
        )));
    }
    table.push(row);
    write_text(output.out.as_ref(), &table.emit())
}

fn thresholds(
    quantity: Quantity,
    d: usize,
    sigma: Sigma,
    (n_lo, n_hi, sweep): (usize, usize, bool),
    plot: Option<&PathBuf>,
    output: &OutputArgs,
) -> Result<(), Error> {
    if n_lo > n_hi {
        return Err(Error::InvalidArgument(format!(
            "empty vertex range {n_lo}..={n_hi}"
        )));
    }
    let gr_family = ModelFamily::Gr { d, sigma };
    let mut table = Table::new(&["n", "threshold_er", "threshold_gr"]);
    let mut er_series = Vec::new();
    let mut gr_series = Vec::new();
    for n in n_lo..=n_hi {
        let er = threshold(&ModelFamily::Er, n, quantity);
        let gr = threshold(&gr_family, n, quantity);
        if !sweep {
            // a single requested point propagates the failure
            let (er, gr) = (er?, gr?);
            table.push(vec![
                n.to_string(),
                fmt_f64(er.edge_probability),
                fmt_f64(gr.edge_probability),
            ]);
            er_series.push((n as f64, er.edge_probability));
            gr_series.push((n as f64, gr.edge_probability));
            continue;
        }
        match (er, gr) {
            (Ok(er), Ok(gr)) => {
                table.push(vec![
                    n.to_string(),
                    fmt_f64(er.edge_probability),
                    fmt_f64(gr.edge_probability),
                ]);
                er_series.push((n as f64, er.edge_probability));
                gr_series.push((n as f64, gr.edge_probability));
            }
            (er, gr) => {
                for r in [er, gr].iter().filter_map(|r| r.as_ref().err()) {
                    eprintln!("warning: skipping n = {n}: {r}");
                }
            }
        }
    }
    if let Some(path) = plot {
        let series = vec![
            Series { name: "ER".into(), points: er_series },
            Series { name: format!("GR d={d} \u{3c3}={sigma}"), points: gr_series },
        ];
        let axes = Axes {
            x_label: "n".into(),
            y_label: format!("{quantity} threshold (edge probability)"),
            log_y: false,
        };
        write_text(Some(path), &emit_svg(&series, &axes)?)?;
    }
    write_text(output.out.as_ref(), &table.emit())
}

fn poly_for(
    model: &GraphModel,
    n: usize,
    kind: PolyKind,
    precision_bits: u32,
    tol: f64,
) -> Result<torus_cycles::spectral::ExpectedPolynomial, Error> {
    expected_poly(kind, &ThetaSource::Model(*model), n, precision_bits, tol)
}

fn spectral_table(
    model: &GraphModel,
    n: usize,
    kind: KindArg,
    precision_bits: u32,
    tol: f64,
    output: &OutputArgs,
) -> Result<(), Error> {
    let mut table = Table::new(&["k", "value"]);
    match kind {
        KindArg::Lambda | KindArg::Gamma => {
            let pk = if kind == KindArg::Lambda { PolyKind::Lambda } else { PolyKind::Gamma };
            let poly = poly_for(model, n, pk, precision_bits, tol)?;
            for k in 0..=n {
                table.push(vec![k.to_string(), fmt_f64(poly.coeff_f64(k))]);
            }
        }
        KindArg::Esf => {
            let lambda = poly_for(model, n, PolyKind::Lambda, precision_bits, tol)?;
            let esf = esf_from_lambda(&lambda);
            for k in 0..=n {
                table.push(vec![k.to_string(), fmt_f64(esf.value_f64(k))]);
            }
        }
    }
    write_text(output.out.as_ref(), &table.emit())
}

/// Maximal-determinant comparison constants for order n.
fn det_bounds(n: usize) -> (f64, f64) {
    let faddeev = ((n + 1) as f64).powf((n + 1) as f64 / 2.0) / 2f64.powi(n as i32);
    let fallat = if n >= 4 {
        (n as f64 - 3.0) * 3f64.powi(n as i32 / 4 - 1)
    } else {
        f64::NAN
    };
    (faddeev, fallat)
}

#[allow(clippy::too_many_arguments)]
fn spectral_sweep(
    model_args: &ModelArgs,
    n: usize,
    kind: KindArg,
    precision_bits: u32,
    tol: f64,
    p_start: f64,
    p_stop: f64,
    p_points: usize,
    plot: Option<&PathBuf>,
    output: &OutputArgs,
) -> Result<(), Error> {
    if kind == KindArg::Esf {
        return Err(Error::InvalidArgument(
            "sweeps cover the constant term only; use --kind lambda or gamma".into(),
        ));
    }
    if !(p_start < p_stop) || p_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "sweep needs p_start < p_stop and >= 2 points, got [{p_start}, {p_stop}] x {p_points}"
        )));
    }
    let pk = if kind == KindArg::Lambda { PolyKind::Lambda } else { PolyKind::Gamma };
    let ps: Vec<f64> = (0..p_points)
        .map(|i| p_start + (p_stop - p_start) * i as f64 / (p_points - 1) as f64)
        .collect();
    use rayon::prelude::*;
    let values: Vec<Result<f64, Error>> = ps
        .par_iter()
        .map(|&p| {
            let model = ModelArgs {
                model: match model_args.model {
                    ModelKind::Er => ModelKind::Er,
                    ModelKind::Gr => ModelKind::Gr,
                },
                p: Some(p),
                d: model_args.d,
                sigma: model_args.sigma,
                r: None,
            }
            .resolve()?;
            Ok(poly_for(&model, n, pk, precision_bits, tol)?
                .constant_term()
                .to_f64()
                .unwrap_or(f64::NAN))
        })
        .collect();
    let label = if pk == PolyKind::Lambda { "expected_det" } else { "expected_per" };
    let mut table = if pk == PolyKind::Lambda {
        Table::new(&["p", label, "faddeev_bound", "fallat_bound"])
    } else {
        Table::new(&["p", label])
    };
    let (faddeev, fallat) = det_bounds(n);
    let mut points = Vec::new();
    for (p, v) in ps.iter().zip(values) {
        let v = v?;
        let mut row = vec![fmt_f64(*p), fmt_f64(v)];
        if pk == PolyKind::Lambda {
            row.push(fmt_f64(faddeev));
            row.push(if fallat.is_nan() { String::new() } else { fmt_f64(fallat) });
        }
        table.push(row);
        points.push((*p, v));
    }
    if let Some(path) = plot {
        let series = vec![Series { name: label.into(), points }];
        let axes = Axes {
            x_label: "edge probability p".into(),
            y_label: label.into(),
            log_y: pk == PolyKind::Gamma,
        };
        write_text(Some(path), &emit_svg(&series, &axes)?)?;
    }
    write_text(output.out.as_ref(), &table.emit())
}

fn mc(
    model: &GraphModel,
    q: Option<usize>,
    n: Option<usize>,
    samples: u64,
    seed: u64,
    output: &OutputArgs,
) -> Result<(), Error> {
    match (q, n) {
        (Some(q), None) => {
            let spec = match model {
                GraphModel::Gr(spec) => *spec,
                GraphModel::Er { .. } => {
                    return Err(Error::InvalidArgument(
                        "--q estimates a geometric cycle probability; use --model gr".into(),
                    ))
                }
            };
            let est = oracle::mc_cycle_prob(&spec, q, samples, seed)?;
            let mut table = Table::new(&[
                "model", "d", "sigma", "r", "p", "q", "samples", "seed", "mean", "stderr",
            ]);
            let mut row = model_fields(model).to_vec();
            row.extend([
                q.to_string(),
                est.samples.to_string(),
                est.seed.to_string(),
                fmt_f64(est.mean),
                fmt_f64(est.stderr),
            ]);
            table.push(row);
            write_text(output.out.as_ref(), &table.emit())
        }
        (None, Some(n)) => {
            let (det, per) = oracle::mc_matrix_expectations(model, n, samples, seed)?;
            let mut table = Table::new(&[
                "model", "d", "sigma", "r", "p", "n", "quantity", "samples", "seed", "mean",
                "stderr",
            ]);
            for (quantity, est) in [("det", det), ("per", per)] {
                let mut row = model_fields(model).to_vec();
                row.extend([
                    n.to_string(),
                    quantity.into(),
                    est.samples.to_string(),
                    est.seed.to_string(),
                    fmt_f64(est.mean),
                    fmt_f64(est.stderr),
                ]);
                table.push(row);
            }
            write_text(output.out.as_ref(), &table.emit())
        }
        _ => Err(Error::InvalidArgument(
            "mc needs exactly one of --q (cycle probability) or --n (det/per)".into(),
        )),
    }
}

/// Figure presets.  Each writes the underlying CSV (stdout or --out) and an
/// SVG chart.
fn figures(
    figure: u32,
    n: usize,
    points: usize,
    plot: Option<PathBuf>,
    output: &OutputArgs,
) -> Result<(), Error> {
    let svg_path = plot.unwrap_or_else(|| PathBuf::from(format!("figure{figure}.svg")));
    // series tolerance for the p sweeps: small probes map to small radii
    // where tighter targets would blow past the term caps
    let tol = 1e-7;
    match figure {
        // Hamilton-cycle thresholds over n: ER vs GR d=2 sigma=2
        1 => thresholds(
            Quantity::Hamilton,
            2,
            Sigma::Two,
            (5, n.max(6), true),
            Some(&svg_path),
            output,
        ),
        // expected determinant over p at order n: ER vs GR d=3 sigma=inf
        2 => sweep_figure(
            figure, n, points, tol, PolyKind::Lambda, 3, Sigma::Inf, &svg_path, output,
        ),
        // expected permanent over p at order n: ER vs GR d=1 sigma=inf
        3 => sweep_figure(
            figure, n, points, tol, PolyKind::Gamma, 1, Sigma::Inf, &svg_path, output,
        ),
        // permanent thresholds over n: ER vs GR d=2 sigma=inf
        4 => thresholds(
            Quantity::Permanent,
            2,
            Sigma::Inf,
            (5, n.max(6), true),
            Some(&svg_path),
            output,
        ),
        other => Err(Error::InvalidArgument(format!(
            "figure must be 1..=4, got {other}"
        ))),
    }
}

#[allow(clippy::too_many_arguments)]
fn sweep_figure(
    figure: u32,
    n: usize,
    points: usize,
    tol: f64,
    kind: PolyKind,
    d: usize,
    sigma: Sigma,
    svg_path: &PathBuf,
    output: &OutputArgs,
) -> Result<(), Error> {
    if points < 2 {
        return Err(Error::InvalidArgument("sweep needs >= 2 points".into()));
    }
    use rayon::prelude::*;
    let ps: Vec<f64> = (1..=points).map(|i| i as f64 / points as f64).collect();
    let rows: Vec<Result<(f64, f64, f64), Error>> = ps
        .par_iter()
        .map(|&p| {
            let er = GraphModel::er(p)?;
            let gr = GraphModel::gr(d, sigma, r_from_p(d, sigma, p)?)?;
            let ev = poly_for(&er, n, kind, DEFAULT_PRECISION_BITS, tol)?
                .constant_term()
                .to_f64()
                .unwrap_or(f64::NAN);
            let gv = poly_for(&gr, n, kind, DEFAULT_PRECISION_BITS, tol)?
                .constant_term()
                .to_f64()
                .unwrap_or(f64::NAN);
            Ok((p, ev, gv))
        })
        .collect();
    let quantity = if kind == PolyKind::Lambda { "det" } else { "per" };
    let mut table = if kind == PolyKind::Lambda {
        Table::new(&["p", "det_er", "det_gr", "faddeev_bound", "fallat_bound"])
    } else {
        Table::new(&["p", "per_er", "per_gr"])
    };
    let (faddeev, fallat) = det_bounds(n);
    let mut er_points = Vec::new();
    let mut gr_points = Vec::new();
    for row in rows {
        let (p, ev, gv) = row?;
        let mut fields = vec![fmt_f64(p), fmt_f64(ev), fmt_f64(gv)];
        if kind == PolyKind::Lambda {
            fields.push(fmt_f64(faddeev));
            fields.push(if fallat.is_nan() { String::new() } else { fmt_f64(fallat) });
        }
        table.push(fields);
        er_points.push((p, ev));
        gr_points.push((p, gv));
    }
    let series = vec![
        Series { name: "ER".into(), points: er_points },
        Series { name: format!("GR d={d} \u{3c3}={sigma}"), points: gr_points },
    ];
    let axes = Axes {
        x_label: "edge probability p".into(),
        y_label: format!("expected {quantity}, n = {n} (figure {figure})"),
        log_y: kind == PolyKind::Gamma,
    };
    write_text(Some(svg_path), &emit_svg(&series, &axes)?)?;
    write_text(output.out.as_ref(), &table.emit())
}
