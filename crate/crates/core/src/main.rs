use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvecov::antichain::antichain_of_maxima;
use curvecov::covers::{lift_curve, project_curve, CoverSpec};
use curvecov::experiments::{
    self, check_retraction, farey_ball, geodesic_profile, profile_report, render, with_chord, Cell,
    ExperimentConfig, FiniteGraphMapCheck, Format, Report, Verdict, SHADOW_STEP,
};
use curvecov::farey::{bfs_distance_oracle, farey_distance, intersection_number};
use curvecov::par::Execution;
use curvecov::teich::geodesic_between;
use curvecov::{Error, Result, Slope, SurfaceModel};

#[derive(Parser)]
#[command(
    name = "curvecov",
    version,
    about = "Curve-complex distances, covers and thick/thin estimates"
)]
struct Cli {
    /// Seed for sampled sweeps (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Surface model: torus, orbifold2222 or annulus.
    #[arg(long, global = true, default_value = "torus")]
    model: String,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Svg,
}

#[derive(Args, Clone)]
struct SweepArgs {
    /// `key = value` config file; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    slope_bound: Option<u64>,
    #[arg(long)]
    oracle_bound: Option<u64>,
    #[arg(long)]
    threshold: Option<i64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    min_length: Option<f64>,
    /// Cover as `[[a,c],[b,d]]` (columns) or `pillowcase`.
    #[arg(long)]
    cover: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Farey distance and intersection number of two slopes.
    Dist {
        a: Slope,
        b: Slope,
        /// Also run the bounded BFS oracle.
        #[arg(long)]
        oracle_bound: Option<u64>,
    },
    /// Lift a base slope through a lattice cover.
    Lift { cover: String, slope: Slope },
    /// Project a slope upstairs down a lattice cover.
    Project { cover: String, slope: Slope },
    /// Axes with large annular projection between two slopes.
    Antichain {
        a: Slope,
        b: Slope,
        #[arg(long, default_value_t = 4)]
        threshold: i64,
    },
    /// Systole and thin curves along the geodesic between two slopes.
    Profile {
        a: Slope,
        b: Slope,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Two-sided distance estimate sweep.
    Estimate(SweepArgs),
    /// Quasi-isometry check of the covering relation.
    CoverQi(SweepArgs),
    /// Bounded geodesic image sweep.
    Bgi(SweepArgs),
    /// Shadow backtracking sweep.
    Backtrack {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value_t = SHADOW_STEP)]
        step: f64,
    },
    /// Retraction checker on a boxed Farey ball.
    RetractionCheck {
        #[arg(long, default_value = "0/1")]
        center: Slope,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, default_value_t = 12)]
        box_bound: u64,
        /// Add a chord to the target graph, which must be rejected.
        #[arg(long)]
        chord: bool,
    },
}

fn config(cli: &Cli, args: &SweepArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    cfg.model = cli.model.parse()?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    let overrides: [(&str, Option<String>); 7] = [
        ("sample_count", args.samples.map(|v| v.to_string())),
        ("slope_size_bound", args.slope_bound.map(|v| v.to_string())),
        ("oracle_bound", args.oracle_bound.map(|v| v.to_string())),
        ("threshold", args.threshold.map(|v| v.to_string())),
        ("epsilon", args.epsilon.map(|v| v.to_string())),
        ("min_length", args.min_length.map(|v| v.to_string())),
        ("cover", args.cover.clone()),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cfg.set(key, &v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn with_pass(mut r: Report, pass: bool) -> (Report, bool) {
    r.summary.push(("pass", pass.into()));
    (r, pass)
}

fn run(cli: &Cli) -> Result<(Report, bool)> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let model: SurfaceModel = cli.model.parse()?;
    Ok(match &cli.command {
        Command::Dist { a, b, oracle_bound } => {
            let mut r = Report::new(
                "dist",
                vec!["a", "b", "distance", "intersection", "oracle_distance"],
            );
            let oracle = match oracle_bound {
                Some(bound) => Cell::from(bfs_distance_oracle(a, b, *bound)?),
                None => Cell::Null,
            };
            r.push_row(vec![
                a.to_string().into(),
                b.to_string().into(),
                farey_distance(a, b).into(),
                intersection_number(model, a, b)?.to_string().into(),
                oracle,
            ]);
            (r, true)
        }
        Command::Lift { cover, slope } => {
            let mut r = Report::new(
                "lift",
                vec!["cover", "slope", "lifted", "wrap", "components"],
            );
            let (lifted, wrap, components) = match cover.parse::<CoverSpec>()? {
                CoverSpec::Lattice(c) => {
                    let l = lift_curve(&c, slope);
                    (l.lifted, l.wrap, l.components)
                }
                spec @ CoverSpec::Pillowcase(_) => (spec.lift(slope), 1, 1),
            };
            r.push_row(vec![
                cover.as_str().into(),
                slope.to_string().into(),
                lifted.to_string().into(),
                wrap.into(),
                components.into(),
            ]);
            (r, true)
        }
        Command::Project { cover, slope } => {
            let CoverSpec::Lattice(c) = cover.parse::<CoverSpec>()? else {
                return Err(Error::InvalidParameter(
                    "projection needs a lattice cover".into(),
                ));
            };
            let (base, wrap) = project_curve(&c, slope);
            let mut r = Report::new("project", vec!["cover", "slope", "projected", "wrap"]);
            r.push_row(vec![
                cover.as_str().into(),
                slope.to_string().into(),
                base.to_string().into(),
                wrap.into(),
            ]);
            (r, true)
        }
        Command::Antichain { a, b, threshold } => {
            let ch = antichain_of_maxima(a, b, *threshold)?;
            let mut r = Report::new("antichain", vec!["a", "b", "threshold", "member"]);
            for m in &ch.members {
                r.push_row(vec![
                    a.to_string().into(),
                    b.to_string().into(),
                    (*threshold).into(),
                    m.to_string().into(),
                ]);
            }
            r.summary = vec![
                ("size", ch.len().into()),
                ("distance", farey_distance(a, b).into()),
            ];
            (r, true)
        }
        Command::Profile {
            a,
            b,
            step,
            epsilon,
        } => {
            let rows = geodesic_profile(&geodesic_between(a, b)?, *step, *epsilon)?;
            (profile_report(a, b, *epsilon, &rows), true)
        }
        Command::Estimate(args) => {
            let sweep = experiments::run_estimate_sweep(&config(cli, args)?, exec)?;
            let pass = sweep.test_violations == 0 && sweep.fitted_k.map_or(true, |k| k <= 50.0);
            with_pass(sweep.to_report(), pass)
        }
        Command::CoverQi(args) => {
            let rep = experiments::run_cover_qi(&config(cli, args)?, exec)?;
            let pass = rep.violations == 0;
            with_pass(rep.to_report(), pass)
        }
        Command::Bgi(args) => {
            let rep = experiments::run_bgi_test(&config(cli, args)?, exec)?;
            let pass = rep.passes(6);
            with_pass(rep.to_report(), pass)
        }
        Command::Backtrack { sweep, step } => {
            let rep = experiments::run_backtrack_test(&config(cli, sweep)?, *step, exec)?;
            let pass = rep.passes(10);
            with_pass(rep.to_report(), pass)
        }
        Command::RetractionCheck {
            center,
            radius,
            box_bound,
            chord,
        } => {
            let (slopes, g) = farey_ball(center, *radius, *box_bound)?;
            let h = if *chord {
                with_chord(&g)
                    .map(|(h, _)| h)
                    .ok_or_else(|| Error::InvalidParameter("ball too small for a chord".into()))?
            } else {
                g.clone()
            };
            let n = g.len();
            let verdict = check_retraction(&FiniteGraphMapCheck {
                g,
                h,
                pi: (0..n).collect(),
                p: (0..n).collect(),
            })?;
            let expected = if *chord {
                matches!(verdict, Verdict::Counterexample { .. })
            } else {
                matches!(verdict, Verdict::Isometric { .. })
            };
            with_pass(verdict.to_report(&slopes), expected)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
        FormatArg::Svg => Format::Svg,
    };
    let outcome = run(&cli).and_then(|(report, pass)| {
        let text = render(&report, format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(pass)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
