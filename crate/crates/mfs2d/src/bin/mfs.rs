//! Command-line experiment runner: `solve`, `sweep`, `disc-model`, `shapes`.

use clap::{Parser, Subcommand};
use mfs2d::config::ExperimentConfig;
use mfs2d::runner::{self, DiscModelArgs};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mfs",
    about = "Method-of-fundamental-solutions experiments for 2-D interior Helmholtz problems",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output directory (overrides config and MFS_OUT_DIR).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Concurrency bound for sweep rows.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-epsilon parameter of the halting model.
    #[arg(long, global = true, default_value_t = 1e-16)]
    eps: f64,
}

#[derive(Subcommand)]
enum Cmd {
    /// One boundary-value solve from a config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Convergence (N) or growth (R) sweep from a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Disc spectrum tables, halting prediction, predicted curves.
    DiscModel {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        r: f64,
        /// Radius of the fundamental data source (alternative to --config).
        #[arg(long)]
        rho: Option<f64>,
        /// Config supplying the boundary data instead of --rho.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Highest order in the spectrum table.
        #[arg(long)]
        m_max: Option<usize>,
        /// Largest N of the predicted curves.
        #[arg(long)]
        n_max: Option<usize>,
        /// Data radii of the halting surface (comma separated).
        #[arg(long, value_delimiter = ',')]
        rho_list: Vec<f64>,
        /// Charge radii of the halting surface (comma separated).
        #[arg(long, value_delimiter = ',')]
        r_list: Vec<f64>,
    },
    /// Boundary polyline, singularity catalog and adaptive-curve profile.
    Shapes {
        /// Catalog shape id (disc, rounded-triangle, inverted-ellipse,
        /// crescent, generalized-crescent, radial-star).
        #[arg(long)]
        shape: Option<String>,
        /// Wavenumber for the adaptive-curve profile.
        #[arg(long)]
        k: Option<f64>,
        /// Config supplying the shape instead of --shape.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().ok();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> mfs2d::Result<()> {
    match &cli.cmd {
        Cmd::Solve { config } => {
            let cfg = ExperimentConfig::from_file(config)?;
            let out = runner::resolve_out_dir(cli.out.as_deref(), cfg.outputs.out_dir.as_deref());
            runner::cmd_solve(&cfg, &out)?;
        }
        Cmd::Sweep { config } => {
            let cfg = ExperimentConfig::from_file(config)?;
            let out = runner::resolve_out_dir(cli.out.as_deref(), cfg.outputs.out_dir.as_deref());
            runner::cmd_sweep(&cfg, &out)?;
        }
        Cmd::DiscModel { k, r, rho, config, m_max, n_max, rho_list, r_list } => {
            let data = match config {
                Some(path) => Some(ExperimentConfig::from_file(path)?.build_data()?),
                None => None,
            };
            let out = runner::resolve_out_dir(cli.out.as_deref(), None);
            let args = DiscModelArgs {
                k: *k,
                r: *r,
                rho: *rho,
                eps: cli.eps,
                m_max: *m_max,
                n_max: *n_max,
                rho_list: rho_list.clone(),
                r_list: r_list.clone(),
            };
            runner::cmd_disc_model(&args, data.as_ref(), &out)?;
        }
        Cmd::Shapes { shape, k, config } => {
            let sh = match (shape, config) {
                (Some(kind), _) => shape_from_kind(kind)?,
                (None, Some(path)) => ExperimentConfig::from_file(path)?.build_shape()?,
                (None, None) => {
                    return Err(mfs2d::Error::Config(
                        "shapes needs --shape KIND or --config PATH".into(),
                    ))
                }
            };
            let out = runner::resolve_out_dir(cli.out.as_deref(), None);
            runner::cmd_shapes(&sh, *k, &out)?;
        }
    }
    Ok(())
}

fn shape_from_kind(kind: &str) -> mfs2d::Result<mfs2d::geometry::Shape> {
    use mfs2d::geometry::Shape;
    use num_complex::Complex64;
    match kind {
        "disc" => Ok(Shape::disc()),
        "rounded-triangle" => Shape::rounded_triangle(0.3),
        "inverted-ellipse" => Shape::inverted_ellipse(0.25),
        "crescent" => Shape::crescent(0.1, 0.9),
        "generalized-crescent" => Shape::generalized_crescent(
            Complex64::new(0.9, 0.0),
            Complex64::new(-0.8, -0.2),
            Complex64::new(-0.2, 0.5),
        ),
        "radial-star" => Shape::radial_star(0.3, 5),
        other => Err(mfs2d::Error::Config(format!("unknown shape \"{other}\""))),
    }
}
