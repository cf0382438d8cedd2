use std::cmp::Ordering;
use std::fmt::Write as _;

use fracineq::functions::{certify, is_harmonically_s_convex, lookup, probe, ConvexityVerdict, MIN_GRID_DENSITY};
use fracineq::ostrowski::{evaluate_all_bounds, s_f, s_f_rhs};
use fracineq::quadrature::{rl_left, rl_right};
use fracineq::specfun::{beta_fn, gamma_fn, hyp2f1};
use fracineq::{FractionalOrder, HypArgs, Interval, Params, QuadConfig, TestFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig, Tolerances};
use crate::error::{exit, CliError, CliResult};
use crate::output::{emit, format_sig, sweep_csv, SweepRow, CSV_DIGITS};
use crate::{sampling, Command, PointArgs, Side, SpecKind};

/// Largest identity residual still accepted.
pub const IDENTITY_TOL: f64 = 1e-8;

/// Significant digits for single values printed to the terminal.
pub const PRINT_DIGITS: usize = 15;

pub fn dispatch(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Specfun { kind, args } => cmd_specfun(kind, &args),
        Command::Frint { side, function, c, y, alpha, rel_tol, abs_tol } => {
            let tol = Tolerances::default();
            let cfg = quad_config(rel_tol.unwrap_or(tol.rel), abs_tol.unwrap_or(tol.abs))?;
            cmd_frint(side, &function, c, y, alpha, &cfg)
        }
        Command::Identity { run, random } => cmd_identity(&run.resolve()?, random),
        Command::Bounds { run, point, force, grid_density } => {
            cmd_bounds(&run.resolve()?, point, force, grid_density)
        }
        Command::Sweep { run, random_points, force, grid_density } => {
            cmd_sweep(&run.resolve()?, random_points, force, grid_density)
        }
        Command::Certify { function, a, b, s, q, grid_density, format } => {
            cmd_certify(&function, a, b, s, q, grid_density, format.unwrap_or_default())
        }
    }
}

fn quad_config(rel: f64, abs: f64) -> CliResult<QuadConfig> {
    if !(rel > 0.0 && abs > 0.0 && rel.is_finite() && abs.is_finite()) {
        return Err(CliError::Usage(format!("tolerances must be positive, got rel {rel}, abs {abs}")));
    }
    Ok(QuadConfig::with_tolerances(rel, abs))
}

fn check_density(grid_density: usize) -> CliResult<()> {
    if grid_density < MIN_GRID_DENSITY {
        return Err(CliError::Usage(format!("--grid-density must be at least {MIN_GRID_DENSITY}")));
    }
    Ok(())
}

pub fn cmd_specfun(kind: SpecKind, args: &[f64]) -> CliResult<i32> {
    let arity = match kind {
        SpecKind::Gamma => 1,
        SpecKind::Beta => 2,
        SpecKind::Hyp2f1 => 4,
    };
    if args.len() != arity {
        return Err(CliError::Usage(format!("{kind:?} takes {arity} argument(s), got {}", args.len())));
    }
    let value = match kind {
        SpecKind::Gamma => gamma_fn(args[0])?,
        SpecKind::Beta => beta_fn(args[0], args[1])?,
        SpecKind::Hyp2f1 => hyp2f1(HypArgs::new(args[0], args[1], args[2], args[3])?)?,
    };
    println!("{}", format_sig(value, PRINT_DIGITS));
    Ok(exit::OK)
}

pub fn cmd_frint(side: Side, function: &str, c: f64, y: f64, alpha: f64, cfg: &QuadConfig) -> CliResult<i32> {
    let tf = lookup(function)?;
    let order = FractionalOrder::new(alpha)?;
    let h = |t: f64| tf.eval(t);
    let value = match side {
        Side::Left => rl_left(h, c, order, y, cfg)?,
        Side::Right => rl_right(h, c, order, y, cfg)?,
    };
    println!("{}", format_sig(value, PRINT_DIGITS));
    Ok(exit::OK)
}

fn lexicographic(a: &[f64], b: &[f64]) -> Ordering {
    a.iter().zip(b).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityRow {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub s_f: f64,
    pub rhs: f64,
    pub residual: f64,
}

const IDENTITY_COLUMNS: [&str; 7] = ["alpha", "a", "b", "x", "s_f", "rhs", "residual"];

impl IdentityRow {
    fn record(&self) -> Vec<String> {
        [self.alpha, self.a, self.b, self.x, self.s_f, self.rhs, self.residual]
            .iter()
            .map(|v| format_sig(*v, CSV_DIGITS))
            .collect()
    }
}

fn identity_row(tf: &TestFunction, [alpha, a, b, x]: [f64; 4], cfg: &QuadConfig) -> CliResult<IdentityRow> {
    let iv = Interval::new(a, b, x)?;
    let lhs = s_f(tf, &iv, alpha, cfg)?;
    let rhs = s_f_rhs(tf, &iv, alpha, cfg)?;
    Ok(IdentityRow { alpha, a, b, x, s_f: lhs, rhs, residual: (lhs - rhs).abs() / lhs.abs().max(1.0) })
}

pub fn cmd_identity(cfg: &RunConfig, random: usize) -> CliResult<i32> {
    let tf = lookup(&cfg.function_name)?;
    let grid = &cfg.grid;
    let mut points: Vec<[f64; 4]> = Vec::new();
    for &alpha in &grid.alphas {
        for &(a, b) in &grid.intervals {
            points.extend(grid.xs(a, b).into_iter().map(|x| [alpha, a, b, x]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..random {
        let alpha = sampling::alpha(&mut rng);
        let (a, b, x) = sampling::interval(&mut rng);
        points.push([alpha, a, b, x]);
    }
    points.sort_by(|p, q| lexicographic(p, q));
    points.dedup();

    let quad = cfg.quad();
    let rows = points
        .par_iter()
        .map(|p| identity_row(&tf, *p, &quad))
        .collect::<CliResult<Vec<_>>>()?;

    let content = match cfg.output.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut buf = String::new();
            if random > 0 {
                writeln!(buf, "# seed={}", cfg.seed).expect("string write");
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(IDENTITY_COLUMNS)?;
            for row in &rows {
                w.write_record(row.record())?;
            }
            buf + &String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
                .map_err(|e| CliError::Io(e.to_string()))?
        }
    };
    emit(cfg.output.path.as_deref(), &content)?;

    let worst = rows.iter().max_by(|a, b| a.residual.total_cmp(&b.residual));
    match worst {
        Some(w) if w.residual > IDENTITY_TOL => {
            eprintln!(
                "identity residual {} exceeds {IDENTITY_TOL:e} at alpha={}, a={}, b={}, x={} (s_f={}, rhs={})",
                format_sig(w.residual, 6),
                w.alpha,
                w.a,
                w.b,
                w.x,
                w.s_f,
                w.rhs
            );
            Ok(exit::CHECK_FAILED)
        }
        Some(w) => {
            eprintln!("{} cases, max residual {}", rows.len(), format_sig(w.residual, 6));
            Ok(exit::OK)
        }
        None => Ok(exit::OK),
    }
}

fn describe_failure(verdict: &ConvexityVerdict) -> String {
    match verdict.witness {
        Some(w) => format!("witness x={}, y={}, t={}, violation={}", w.x, w.y, w.t, format_sig(w.violation, 6)),
        None => "no witness".into(),
    }
}

// Certifies |f'|^q on [a, b]; an error names the failing cell.
fn gate(tf: &TestFunction, a: f64, b: f64, s: f64, q: f64, grid_density: usize) -> CliResult<()> {
    let verdict = certify(tf, a, b, s, q, grid_density)?;
    if verdict.passed {
        Ok(())
    } else {
        Err(CliError::Gate(format!(
            "|{}'|^{q} is not harmonically {s}-convex on [{a}, {b}] ({}); pass --force to evaluate anyway",
            tf.name,
            describe_failure(&verdict)
        )))
    }
}

#[derive(Serialize)]
struct BoundsJson<'a> {
    function: &'a str,
    alpha: f64,
    s: f64,
    q: f64,
    a: f64,
    b: f64,
    x: f64,
    #[serde(flatten)]
    report: &'a fracineq::BoundReport,
}

pub fn cmd_bounds(cfg: &RunConfig, point: PointArgs, force: bool, grid_density: usize) -> CliResult<i32> {
    check_density(grid_density)?;
    let tf = lookup(&cfg.function_name)?;
    let PointArgs { alpha, s, q, a, b, x } = point;
    let iv = Interval::new(a, b, x)?;
    let pr = Params::new(alpha, s, q)?;
    if !force {
        gate(&tf, a, b, s, q, grid_density)?;
    }
    let report = evaluate_all_bounds(&tf, &iv, &pr, &cfg.quad())?;
    let content = match cfg.output.format {
        Format::Csv => sweep_csv(&[SweepRow::new([alpha, s, q, a, b, x], &report)], None)?,
        Format::Json => {
            let doc = BoundsJson { function: &tf.name, alpha, s, q, a, b, x, report: &report };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    emit(cfg.output.path.as_deref(), &content)?;
    if report.violations.is_empty() {
        Ok(exit::OK)
    } else {
        let ids: Vec<_> = report.violations.iter().map(|id| id.label()).collect();
        eprintln!("|S_f| = {} exceeds {}", report.abs_sf, ids.join(", "));
        Ok(exit::CHECK_FAILED)
    }
}

/// Grid points (plus seeded random points) in lexicographic order.
pub fn sweep_points(cfg: &RunConfig, random_points: usize) -> Vec<[f64; 6]> {
    let grid = &cfg.grid;
    let mut points = Vec::new();
    for &alpha in &grid.alphas {
        for &s in &grid.ss {
            for &q in &grid.qs {
                for &(a, b) in &grid.intervals {
                    points.extend(grid.xs(a, b).into_iter().map(|x| [alpha, s, q, a, b, x]));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    points.extend((0..random_points).map(|_| sampling::point(&mut rng)));
    points.sort_by(|p, q| lexicographic(p, q));
    points.dedup();
    points
}

pub fn cmd_sweep(cfg: &RunConfig, random_points: usize, force: bool, grid_density: usize) -> CliResult<i32> {
    check_density(grid_density)?;
    let tf = lookup(&cfg.function_name)?;
    let points = sweep_points(cfg, random_points);

    if !force {
        // one certificate per distinct (s, q, a, b) cell
        let mut cells: Vec<[f64; 4]> = points.iter().map(|p| [p[1], p[2], p[3], p[4]]).collect();
        cells.sort_by(|u, v| lexicographic(u, v));
        cells.dedup();
        cells
            .par_iter()
            .map(|&[s, q, a, b]| gate(&tf, a, b, s, q, grid_density))
            .collect::<CliResult<Vec<()>>>()?;
    }

    let quad = cfg.quad();
    let rows = points
        .par_iter()
        .map(|&p| {
            let [alpha, s, q, a, b, x] = p;
            let report = evaluate_all_bounds(&tf, &Interval::new(a, b, x)?, &Params::new(alpha, s, q)?, &quad)?;
            Ok(SweepRow::new(p, &report))
        })
        .collect::<CliResult<Vec<_>>>()?;

    let content = match cfg.output.format {
        Format::Csv => sweep_csv(&rows, (random_points > 0).then_some(cfg.seed))?,
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
    };
    emit(cfg.output.path.as_deref(), &content)?;

    let violations = rows.iter().filter(|r| r.violation != 0).count();
    if violations > 0 {
        eprintln!("{violations} of {} rows violate a bound", rows.len());
        Ok(exit::CHECK_FAILED)
    } else {
        Ok(exit::OK)
    }
}

#[derive(Serialize)]
struct CertifyJson<'a> {
    function: &'a str,
    a: f64,
    b: f64,
    s: f64,
    q: f64,
    #[serde(flatten)]
    verdict: &'a ConvexityVerdict,
}

pub fn cmd_certify(function: &str, a: f64, b: f64, s: f64, q: f64, grid_density: usize, format: Format) -> CliResult<i32> {
    check_density(grid_density)?;
    let verdict = match probe(function) {
        Some(g) => is_harmonically_s_convex(&*g, a, b, s, grid_density)?,
        None => certify(&lookup(function)?, a, b, s, q, grid_density)?,
    };
    match format {
        Format::Json => {
            let doc = CertifyJson { function, a, b, s, q, verdict: &verdict };
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Csv if verdict.passed => println!("passed"),
        Format::Csv => println!("failed: {}", describe_failure(&verdict)),
    }
    Ok(if verdict.passed { exit::OK } else { exit::CHECK_FAILED })
}
