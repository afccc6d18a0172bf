use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use meissner_core::generators::{format_vertex_file, load_vertex_file, regular_pyramid, regular_tetrahedron};
use meissner_core::mesh::{self, MeshFormat};
use meissner_core::optimizer::{optimize_meissner, optimize_pyramid, Gauge, OptimizationProblem, OptimizationReport};
use meissner_core::oracle::{mc_volume, BallSystem};
use meissner_core::polytope::{enumerate_smoothings, reuleaux_area, write_report, MeissnerPolyhedron, SmoothingChoice};
use meissner_core::spherical::{f_pair, f_partial_x};
use meissner_core::{Error, PairLengths, VertexSet, DEFAULT_TOL};

const EXIT_USAGE: u8 = 64;

const CSV_SCHEMAS: &str = "\
CSV schemas:
  analyze --csv    row,retained,smoothed,theta,theta_dual,phi,phi_dual,alpha,value
                   (rows pair_<i>, then area, volume, reuleaux_area in `value`)
  enumerate        choice,area,optimal
  mc-check         samples,seed,hits,volume_estimate,std_error,closed_form,deviation_sigma
  pyramid/search   restart,value,area,residual,iterations,converged,above_tetrahedron
  f-table          x,y,f,df_dx,increasing_x,increasing_y,convex_x,convex_y,swap_ok

Environment:
  MEISSNER_TOL     unit-distance tolerance used when --tol is absent (default 1e-9)

Exit status: 0 success, 1 internal error, 2 invalid input, 64 usage error.";

#[derive(Parser)]
#[command(name = "meissner", version, about = "Meissner and Reuleaux polyhedra: areas, volumes, oracles, search and meshes", after_help = CSV_SCHEMAS)]
struct Cli {
    /// Worker threads (results do not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Absolute tolerance for unit distances.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SmoothingArg {
    /// `optimal`, or `bits:<01...>` with one bit per dual pair (1 keeps the
    /// first edge of the pair and smooths the second).
    #[arg(long, default_value = "optimal")]
    smoothing: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a vertex file is an extremal diameter-one set.
    Validate { file: PathBuf },
    /// Per-pair table with surface area and volume.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        smoothing: SmoothingArg,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Areas of all smoothing choices, as CSV on stdout.
    Enumerate { file: PathBuf },
    /// Monte Carlo volume against the closed form, as one CSV row.
    McCheck {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        smoothing: SmoothingArg,
    },
    /// Write a generated vertex set: `tetra`, or `pyramid:<k>` with 2k+1 base vertices.
    Gen {
        kind: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search Meissner pyramids over an odd number of base vertices.
    Pyramid {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-restart CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the best configuration as a vertex file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local area minimization from a vertex file, keeping its diameter graph.
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate f on a grid over [0, pi/3]^2 with property verdicts.
    FTable {
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Triangle mesh of the surface.
    Mesh {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        refine: u32,
        #[arg(long)]
        out: PathBuf,
        /// `obj` or `ply`; inferred from the output extension when absent.
        #[arg(long)]
        format: Option<String>,
        /// Mesh the Reuleaux polyhedron instead.
        #[arg(long)]
        reuleaux: bool,
        #[command(flatten)]
        smoothing: SmoothingArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_validation() => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn tolerance(flag: Option<f64>) -> anyhow::Result<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var("MEISSNER_TOL") {
            Ok(s) => s.trim().parse().with_context(|| format!("invalid MEISSNER_TOL {s:?}"))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol > 0.0) {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(tol)
}

fn load(file: &Path, tol: f64) -> anyhow::Result<VertexSet> {
    Ok(load_vertex_file(file, tol)?)
}

fn polyhedron(vs: VertexSet, smoothing: &SmoothingArg) -> anyhow::Result<MeissnerPolyhedron> {
    let m = MeissnerPolyhedron::with_optimal_smoothing(vs)?;
    match smoothing.smoothing.as_str() {
        "optimal" => Ok(m),
        s => match s.strip_prefix("bits:") {
            Some(bits) => Ok(m.with_choice(bits.parse::<SmoothingChoice>()?)?),
            None => Err(Error::InvalidArgument(format!("unknown smoothing {s:?}")).into()),
        },
    }
}

fn create(path: &Path) -> anyhow::Result<File> {
    File::create(path).with_context(|| format!("cannot create {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let tol = tolerance(cli.tol)?;
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Validate { file } => {
            let vs = load(&file, tol)?;
            let m = MeissnerPolyhedron::with_optimal_smoothing(vs)?;
            let vs = m.vertices();
            writeln!(
                out,
                "valid: m = {}, diameters = {}, dual pairs = {}, max distance = {:.12}",
                vs.len(),
                vs.diameter_count(),
                m.pairs().len(),
                vs.max_distance()
            )?;
        }
        Command::Analyze { file, smoothing, csv } => {
            let m = polyhedron(load(&file, tol)?, &smoothing)?;
            writeln!(out, "pair  retained  smoothed  theta       theta_dual  f")?;
            for (i, o) in m.oriented().enumerate() {
                writeln!(
                    out,
                    "{i:<5} {:<9} {:<9} {:<11.8} {:<11.8} {:.8}",
                    format!("{}-{}", o.retained.0, o.retained.1),
                    format!("{}-{}", o.smoothed.0, o.smoothed.1),
                    o.lengths.theta,
                    o.lengths.theta_dual,
                    o.f()
                )?;
            }
            writeln!(out, "smoothing {}", m.choice())?;
            writeln!(out, "area {:.12}", m.area())?;
            writeln!(out, "volume {:.12}", m.volume())?;
            writeln!(out, "reuleaux_area {:.12}", reuleaux_area(m.pairs()))?;
            if let Some(path) = csv {
                write_report(&m, create(&path)?)?;
            }
        }
        Command::Enumerate { file } => {
            let m = MeissnerPolyhedron::with_optimal_smoothing(load(&file, tol)?)?;
            let table = enumerate_smoothings(m.pairs())?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["choice", "area", "optimal"])?;
            for (choice, area) in &table {
                w.write_record([
                    choice.to_string(),
                    format!("{area:.15}"),
                    (choice == m.choice()).to_string(),
                ])?;
            }
            w.flush()?;
            return Ok(());
        }
        Command::McCheck {
            file,
            samples,
            seed,
            smoothing,
        } => {
            let m = polyhedron(load(&file, tol)?, &smoothing)?;
            let r = mc_volume(&BallSystem::meissner(&m), samples, seed)?;
            let exact = m.volume();
            let sigma = if r.std_error > 0.0 {
                (r.volume_estimate - exact) / r.std_error
            } else {
                0.0
            };
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "samples",
                "seed",
                "hits",
                "volume_estimate",
                "std_error",
                "closed_form",
                "deviation_sigma",
            ])?;
            w.write_record([
                r.samples.to_string(),
                r.seed.to_string(),
                r.hits.to_string(),
                format!("{:.12}", r.volume_estimate),
                format!("{:.12}", r.std_error),
                format!("{exact:.12}"),
                format!("{sigma:.4}"),
            ])?;
            w.flush()?;
            return Ok(());
        }
        Command::Gen { kind, out: path } => {
            let vs = match kind.as_str() {
                "tetra" => regular_tetrahedron(),
                s => match s.strip_prefix("pyramid:").map(str::parse::<usize>) {
                    Some(Ok(k)) => regular_pyramid(k)?,
                    _ => bail!(Error::InvalidArgument(format!(
                        "unknown generator {s:?}; use tetra or pyramid:<k>"
                    ))),
                },
            };
            let graph = meissner_core::build_diameter_graph(&vs)?;
            std::fs::write(&path, format_vertex_file(vs.points(), Some(graph.edges())))
                .with_context(|| format!("cannot write {}", path.display()))?;
            writeln!(out, "wrote {} vertices to {}", vs.len(), path.display())?;
        }
        Command::Pyramid {
            n,
            restarts,
            seed,
            csv,
            out: best,
        } => {
            let report = optimize_pyramid(n, restarts, seed)?;
            print_report(&mut out, &report)?;
            finish_report(&report, csv.as_deref(), best.as_deref())?;
        }
        Command::Search {
            file,
            restarts,
            seed,
            csv,
            out: best,
        } => {
            let vs = load(&file, tol)?;
            let problem = OptimizationProblem::from_vertex_set(&vs, Gauge::General)?;
            let report = optimize_meissner(&problem, restarts, seed)?;
            print_report(&mut out, &report)?;
            finish_report(&report, csv.as_deref(), best.as_deref())?;
        }
        Command::FTable { grid, csv } => {
            let violations = f_table(grid, create(&csv)?)?;
            writeln!(
                out,
                "{grid}x{grid} grid written to {}; {violations} property violations",
                csv.display()
            )?;
        }
        Command::Mesh {
            file,
            refine,
            out: path,
            format,
            reuleaux,
            smoothing,
        } => {
            let m = polyhedron(load(&file, tol)?, &smoothing)?;
            let format: MeshFormat = match format {
                Some(f) => f.parse()?,
                None => match path.extension().and_then(|e| e.to_str()) {
                    Some("ply") => MeshFormat::Ply,
                    _ => MeshFormat::Obj,
                },
            };
            let (mesh, target) = if reuleaux {
                (mesh::tessellate_reuleaux(&m, refine)?, reuleaux_area(m.pairs()))
            } else {
                (mesh::tessellate(&m, refine)?, m.area())
            };
            mesh::write_mesh(&mesh, &path, format)?;
            writeln!(
                out,
                "{} vertices, {} triangles, euler {}, mesh area {:.9}, closed form {:.9}",
                mesh.vertices.len(),
                mesh.triangles.len(),
                mesh::euler_characteristic(&mesh),
                mesh::mesh_area(&mesh),
                target
            )?;
        }
    }
    out.flush()?;
    Ok(())
}

fn print_report(out: &mut impl Write, r: &OptimizationReport) -> anyhow::Result<()> {
    writeln!(out, "best sum f     {:.12}", r.best_value)?;
    writeln!(out, "best area      {:.12}", r.best_area)?;
    writeln!(out, "best volume    {:.12}", r.best_volume)?;
    if let Some(p) = r.pyramid_objective {
        writeln!(out, "perimeter      {p:.12}")?;
    }
    writeln!(out, "residual       {:.3e}", r.constraint_residual)?;
    writeln!(out, "evaluations    {}", r.iterations)?;
    writeln!(out, "converged      {}", r.converged)?;
    writeln!(
        out,
        "runs above the Meissner tetrahedron: {}/{}",
        r.runs.iter().filter(|x| x.above_tetrahedron).count(),
        r.runs.len()
    )?;
    Ok(())
}

fn finish_report(r: &OptimizationReport, csv: Option<&Path>, best: Option<&Path>) -> anyhow::Result<()> {
    if let Some(path) = csv {
        let mut w = csv::Writer::from_writer(create(path)?);
        w.write_record([
            "restart",
            "value",
            "area",
            "residual",
            "iterations",
            "converged",
            "above_tetrahedron",
        ])?;
        for run in &r.runs {
            w.write_record([
                run.restart.to_string(),
                format!("{:.15}", run.value),
                format!("{:.15}", run.area),
                format!("{:.3e}", run.residual),
                run.iterations.to_string(),
                run.converged.to_string(),
                run.above_tetrahedron.to_string(),
            ])?;
        }
        w.flush()?;
    }
    if let Some(path) = best {
        std::fs::write(path, format_vertex_file(&r.best_points, None))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

/// Writes the f table and returns the number of failed property checks.
fn f_table(grid: usize, file: File) -> anyhow::Result<usize> {
    if grid < 3 {
        bail!(Error::InvalidArgument(format!("grid must be at least 3, got {grid}")));
    }
    let h = std::f64::consts::FRAC_PI_3 / (grid - 1) as f64;
    let f = |i: usize, j: usize| f_pair(PairLengths { theta: i as f64 * h, theta_dual: j as f64 * h });
    let tol = 1e-13;
    let mut violations = 0;
    let mut verdict = |ok: Option<bool>| match ok {
        None => String::new(),
        Some(ok) => {
            if !ok {
                violations += 1;
            }
            ok.to_string()
        }
    };
    let mut w = csv::Writer::from_writer(file);
    w.write_record([
        "x",
        "y",
        "f",
        "df_dx",
        "increasing_x",
        "increasing_y",
        "convex_x",
        "convex_y",
        "swap_ok",
    ])?;
    for i in 0..grid {
        for j in 0..grid {
            let v = f(i, j);
            let lengths = PairLengths::new(i as f64 * h, j as f64 * h)?;
            let inc_x = (i + 1 < grid).then(|| f(i + 1, j) >= v - tol);
            let inc_y = (j + 1 < grid).then(|| f(i, j + 1) >= v - tol);
            let cvx_x = (i > 0 && i + 1 < grid).then(|| f(i + 1, j) - 2.0 * v + f(i - 1, j) >= -tol);
            let cvx_y = (j > 0 && j + 1 < grid).then(|| f(i, j + 1) - 2.0 * v + f(i, j - 1) >= -tol);
            let swap = (i <= j).then(|| v >= f(j, i) - tol);
            w.write_record([
                format!("{:.15}", lengths.theta),
                format!("{:.15}", lengths.theta_dual),
                format!("{v:.15}"),
                format!("{:.15}", f_partial_x(lengths)?),
                verdict(inc_x),
                verdict(inc_y),
                verdict(cvx_x),
                verdict(cvx_y),
                verdict(swap),
            ])?;
        }
    }
    w.flush()?;
    Ok(violations)
}
