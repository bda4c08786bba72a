use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cgdg::cgdg::GeneralPositionPolicy;
use cgdg::generate::generate_instance;
use cgdg::io::{load_instance, save_instance, ShapeSpec};
use cgdg::report::{
    build_for_spec, run_sweep, Pipeline, RunOptions, SweepSpec, Tolerances, SCHEMA_VERSION,
};
use cgdg::svg::{render_svg, SvgOptions};
use cgdg::{Instance, Result};

#[derive(Parser)]
#[command(
    name = "cgdg",
    version,
    about = "Constrained generalized Delaunay graphs: build, verify, sweep"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance.
    Generate {
        #[command(flatten)]
        gen: GenArgs,
        /// Destination file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the graph and write its edges and witnesses.
    Build(RunArgs),
    /// Build the graph and run every check.
    Verify(RunArgs),
    /// Run checks over a matrix of shapes and seeds.
    Sweep {
        /// `SHAPE[,SHAPE...][;SEEDS]`, seeds as a count or `a..b`.
        #[arg(long)]
        sweep: Option<String>,
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long, default_value_t = 5)]
        constraints: usize,
        #[arg(long)]
        out_report: Option<PathBuf>,
        #[command(flatten)]
        knobs: Knobs,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 30)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    constraints: usize,
}

#[derive(Args)]
struct Knobs {
    /// Override a numeric knob, `key=value`: resolution, grid_step, half_empty_grid.
    #[arg(long = "tolerance", value_name = "KEY=VALUE")]
    tolerance: Vec<String>,
    /// Cross-check every edge decision against a brute-force grid scan.
    #[arg(long)]
    grid_oracle: bool,
    /// Drop degenerate pairs instead of failing on them.
    #[arg(long)]
    lenient: bool,
}

impl Knobs {
    fn options(&self) -> Result<RunOptions> {
        let mut tolerances = Tolerances::default();
        for t in &self.tolerance {
            tolerances.set(t)?;
        }
        let policy = if self.lenient {
            GeneralPositionPolicy::Lenient
        } else {
            GeneralPositionPolicy::Strict
        };
        Ok(RunOptions {
            tolerances,
            grid_oracle: self.grid_oracle,
            policy,
        })
    }
}

#[derive(Args)]
struct RunArgs {
    /// `square`, `rect:L:S`, `equilateral`, `ngon:K` or a polygon JSON file.
    #[arg(long, default_value = "square")]
    shape: String,
    /// Instance file; a generated instance is used when omitted.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[command(flatten)]
    gen: GenArgs,
    #[arg(long)]
    out_report: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    #[command(flatten)]
    knobs: Knobs,
}

impl RunArgs {
    fn instance(&self) -> Result<Instance> {
        match &self.instance {
            Some(path) => load_instance(path),
            None => generate_instance(self.gen.seed, self.gen.n, self.gen.constraints),
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| cgdg::Error::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { gen, out } => {
            let inst = generate_instance(gen.seed, gen.n, gen.constraints)?;
            match out {
                Some(path) => save_instance(&inst, &path)?,
                None => println!("{}", inst.to_json_string()),
            }
            Ok(true)
        }
        Command::Build(args) => {
            let spec: ShapeSpec = args.shape.parse()?;
            let inst = args.instance()?;
            let options = args.knobs.options()?;
            let g = build_for_spec(&spec, &spec.build()?, &inst, options.policy)?;
            let edges: Vec<_> = g
                .edges
                .iter()
                .map(|e| json!({ "u": e.u, "v": e.v, "forced": e.forced, "center": e.witness.center, "scale": e.witness.scale }))
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "shape": spec.to_string(),
                "n": inst.len(),
                "edges": edges,
                "diagnostics": g.diagnostics,
            });
            emit(
                args.out_report.as_ref(),
                &(serde_json::to_string_pretty(&doc)? + "\n"),
            )?;
            if let Some(path) = &args.out_svg {
                emit(
                    Some(path),
                    &render_svg(
                        &g,
                        SvgOptions {
                            highlight: None,
                            witnesses: true,
                        },
                    ),
                )?;
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let spec: ShapeSpec = args.shape.parse()?;
            let inst = args.instance()?;
            let pipeline = Pipeline::new(spec, args.knobs.options()?)?;
            let (report, g) = pipeline.run(&inst)?;
            emit(args.out_report.as_ref(), &report.to_json())?;
            if let Some(path) = &args.out_svg {
                let opts = SvgOptions {
                    highlight: report.stretch.argmax_pair,
                    witnesses: false,
                };
                emit(Some(path), &render_svg(&g, opts))?;
            }
            for v in report.failed_checks() {
                eprintln!(
                    "FAIL {}: {}",
                    v.property,
                    v.counterexample
                        .as_ref()
                        .map_or(String::new(), |c| c.to_string())
                );
            }
            Ok(report.passed)
        }
        Command::Sweep {
            sweep,
            n,
            constraints,
            out_report,
            knobs,
        } => {
            let spec = match sweep {
                Some(s) => s.parse()?,
                None => SweepSpec::default(),
            };
            let report = run_sweep(&spec, n, constraints, knobs.options()?)?;
            eprint!("{}", report.table());
            emit(out_report.as_ref(), &report.to_json())?;
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
