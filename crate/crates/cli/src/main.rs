//! `gdraw`: analyze, realize and render rotation systems of complete graphs,
//! and run or verify the census of realizable ones.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use gdraw_core::{
    analyze, parse_rot, realize, Census, CensusError, Claim, Enumerator, Frontier, Progress, Realization,
    RotationSystem,
};

#[derive(Parser)]
#[command(name = "gdraw", version, about = "Good drawings of complete graphs from their rotation systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Empty triangles, per-vertex t, l and luckiness, crossings
    Analyze {
        #[arg(long)]
        rotation: PathBuf,
    },
    /// Realize as a planarized drawing (.draw); exit 1 if unrealizable
    Realize {
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the planarization as an SVG image; exit 1 if unrealizable
    Render {
        #[arg(long)]
        rotation: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Enumerate all realizable classes on N vertices
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Census output, one record per line
        #[arg(long)]
        out: PathBuf,
        /// Continue from the checkpoint instead of starting over
        #[arg(long)]
        resume: bool,
        /// Worker threads (0 = one per core)
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Snapshot file, default: OUT with extension .snap
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Stop after extending this many classes, leaving a checkpoint
        #[arg(long)]
        stop_after: Option<usize>,
        /// Classes per work batch (and per checkpoint)
        #[arg(long, default_value_t = 256)]
        batch: usize,
    },
    /// Check claims on the census at N; exit 1 if one fails
    Verify {
        #[arg(long)]
        n: usize,
        /// Claim id, repeatable, or "all"
        #[arg(long, required = true)]
        claim: Vec<String>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Write a rotation system of a known family
    Generate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Errors that mean "bad input" exit with 2; a negative answer is exit 1.
const NEGATIVE: u8 = 1;
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze { rotation } => analyze_cmd(&read_rot(&rotation)?),
        Command::Realize { rotation, out } => realize_cmd(&read_rot(&rotation)?, out.as_deref()),
        Command::Render { rotation, out } => render_cmd(&read_rot(&rotation)?, &out),
        Command::Enumerate { n, out, resume, workers, checkpoint, stop_after, batch } => {
            let checkpoint = checkpoint.unwrap_or_else(|| out.with_extension("snap"));
            enumerate_cmd(n, &out, resume, workers, &checkpoint, stop_after, batch)
        }
        Command::Verify { n, claim, workers } => verify_cmd(n, &claim, workers),
        Command::Generate { family, n, out } => generate_cmd(&family, n, out.as_deref()),
    }
}

fn read_rot(path: &Path) -> Result<RotationSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_rot(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn analyze_cmd(rs: &RotationSystem) -> Result<ExitCode> {
    let n = rs.n();
    let empty = gdraw_core::empty_triangles(rs);
    println!("n={n}");
    println!("empty={}", empty.len());
    let list: Vec<String> = empty.iter().map(|t| t.to_string()).collect();
    println!("empty triangles: {}", list.join(" "));
    if n >= 4 {
        let a = analyze(rs)?;
        for (v, s) in rs.vertices().zip(&a.stats) {
            println!("vertex {v}: t={} l={}{}", s.t, s.l, if s.lucky { " lucky" } else { "" });
        }
        let lucky = a.lucky_count();
        let summary = match lucky {
            _ if lucky == n => "all vertices lucky",
            0 => "no vertex lucky",
            _ => "some vertices lucky",
        };
        println!("lucky={lucky} ({summary})");
    }
    match realize(rs)? {
        Realization::Realized(d) => println!("crossings={}", d.crossing_count()),
        Realization::Unrealizable => println!("unrealizable"),
    }
    Ok(ExitCode::SUCCESS)
}

fn realize_cmd(rs: &RotationSystem, out: Option<&Path>) -> Result<ExitCode> {
    match realize(rs)? {
        Realization::Realized(d) => {
            write_or_print(out, &d.to_draw_string())?;
            eprintln!("realized with {} crossings", d.crossing_count());
            Ok(ExitCode::SUCCESS)
        }
        Realization::Unrealizable => {
            eprintln!("unrealizable");
            Ok(ExitCode::from(NEGATIVE))
        }
    }
}

fn render_cmd(rs: &RotationSystem, out: &Path) -> Result<ExitCode> {
    match realize(rs)? {
        Realization::Realized(d) => {
            fs::write(out, render::to_svg(&d)).with_context(|| format!("cannot write {}", out.display()))?;
            eprintln!("{} crossings drawn", d.crossing_count());
            Ok(ExitCode::SUCCESS)
        }
        Realization::Unrealizable => {
            eprintln!("unrealizable");
            Ok(ExitCode::from(NEGATIVE))
        }
    }
}

fn summary(c: &Census) -> String {
    let free = c.records.iter().filter(|r| r.lucky == 0).count();
    let min = c.min_empty().map_or("-".to_string(), |m| m.to_string());
    format!(
        "n={} classes={} unfolded={} min_empty={min} without_lucky_vertex={free}",
        c.n,
        c.records.len(),
        c.unfolded
    )
}

fn enumerate_cmd(
    n: usize,
    out: &Path,
    resume: bool,
    workers: usize,
    checkpoint: &Path,
    stop_after: Option<usize>,
    batch: usize,
) -> Result<ExitCode> {
    if n < 3 {
        bail!("--n must be at least 3");
    }
    let en = Enumerator::new(workers)?.with_batch(batch);
    let mut frontier = if resume && checkpoint.exists() {
        let f = Frontier::load(checkpoint)?;
        eprintln!("resuming at n={} ({} of {} classes extended)", f.n(), f.cursor(), f.classes().len());
        f
    } else {
        Frontier::k3()
    };
    if frontier.n() > n {
        bail!("checkpoint is already at n={}", frontier.n());
    }
    let progress = en.grow_to(&mut frontier, n, stop_after, |f| {
        if f.cursor() == 0 {
            eprintln!("n={} classes={}", f.n(), f.classes().len());
        }
        f.save(checkpoint)
    })?;
    if progress == Progress::Interrupted {
        eprintln!(
            "stopped at n={} after {} of {} classes; resume with --resume (checkpoint {})",
            frontier.n(),
            frontier.cursor(),
            frontier.classes().len(),
            checkpoint.display()
        );
        return Ok(ExitCode::SUCCESS);
    }
    frontier.save(checkpoint)?;
    let census = en.census(&frontier)?;
    fs::write(out, census.to_text()).with_context(|| format!("cannot write {}", out.display()))?;
    println!("{}", summary(&census));
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(n: usize, ids: &[String], workers: usize) -> Result<ExitCode> {
    if n < 3 {
        bail!("--n must be at least 3");
    }
    let all = ids.iter().any(|c| c.eq_ignore_ascii_case("all"));
    let claims: Vec<Claim> = if all {
        Claim::ALL.to_vec()
    } else {
        ids.iter().map(|c| c.parse::<Claim>()).collect::<Result<_, _>>()?
    };
    let en = Enumerator::new(workers)?;
    let census = en.enumerate(n)?;
    println!("{}", summary(&census));
    let mut failed = false;
    for claim in claims {
        match en.verify(&census, claim) {
            Ok(report) => {
                println!("{report}");
                failed |= !report.passed();
            }
            Err(CensusError::NotApplicable { .. }) if all => println!("SKIP {claim} n={n}"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(if failed { ExitCode::from(NEGATIVE) } else { ExitCode::SUCCESS })
}

fn generate_cmd(family: &str, n: usize, out: Option<&Path>) -> Result<ExitCode> {
    let rs = match family {
        "convex" => RotationSystem::convex(n)?,
        other => bail!("unknown family {other:?}; available: convex"),
    };
    write_or_print(out, &rs.to_rot_string())?;
    Ok(ExitCode::SUCCESS)
}
