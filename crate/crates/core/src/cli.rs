//! Command line front end.

use crate::check::check_all;
use crate::error::{Error, Result};
use crate::io::{read_pvol, read_surface, write_pvol, write_surface, Format, SurfaceFile};
use crate::solid::{boolean, extract_skin, make_solid, resolve_self_intersections, BoolOp, PipelineOptions, PipelineStats, Solid};
use clap::{Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "polycell", version, about = "Exact polyhedral cell meshing, repair and booleans for triangle soups")]
pub struct Cli {
    /// Insert Delaunay vertices in input order instead of a spatial sort.
    #[arg(long, global = true)]
    pub no_presort: bool,
    /// Print phase timings, counters and peak memory to stderr.
    #[arg(long, global = true)]
    pub stats: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input format, when the file extension does not tell.
    #[arg(long, global = true, value_parser = ["off", "obj", "stl", "pvol"])]
    pub format: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the labeled volume mesh of a soup.
    Mesh {
        input: PathBuf,
        /// Volume mesh output (PVOL).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Surface of the enclosed volume (OFF or OBJ).
        #[arg(long)]
        skin: Option<PathBuf>,
    },
    /// Closed, outward-oriented surface of the volume enclosed by a soup.
    Repair {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Boolean of the volumes enclosed by two soups.
    Bool {
        op: Op,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// The input surface with self-intersections resolved into a conforming mesh.
    Resolve {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the invariant checks on a soup or a PVOL file.
    Check {
        input: PathBuf,
        /// Sample points per input triangle for the conformity check.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Op {
    Union,
    Inter,
    Diff,
}

impl From<Op> for BoolOp {
    fn from(o: Op) -> BoolOp {
        match o {
            Op::Union => BoolOp::Union,
            Op::Inter => BoolOp::Intersection,
            Op::Diff => BoolOp::Difference,
        }
    }
}

fn print_stats(st: &PipelineStats) {
    let mut e = std::io::stderr().lock();
    for (name, d) in &st.phases {
        let _ = writeln!(e, "phase {name} {:.6} s", d.as_secs_f64());
    }
    let i = &st.input;
    let _ = writeln!(
        e,
        "input {} triangles, {} degenerate, {} duplicates, {} vertices merged",
        i.input_triangles, i.degenerate_triangles, i.duplicate_triangles, i.merged_vertices
    );
    let _ = writeln!(e, "points {}", st.points);
    let _ = writeln!(e, "tets {}", st.tets);
    let _ = writeln!(
        e,
        "constraints {} ({} virtual; witnesses {} local, {} global)",
        st.constraints, st.virtual_constraints, st.witnesses.local, st.witnesses.global
    );
    let _ = writeln!(e, "splits {} ({} without effect)", st.splits, st.noop_splits);
    let _ = writeln!(e, "cells {} facets {} vertices {}", st.cells, st.facets, st.vertices);
    let c = &st.colors;
    let _ = writeln!(
        e,
        "colors {} black, {} white; decided by vertex {}, barycenter {}, witnesses {}",
        c.black, c.white, c.by_vertex, c.by_barycenter, c.by_witness
    );
    match st.peak_rss_kib {
        Some(k) => {
            let _ = writeln!(e, "peak_rss {k} KiB");
        }
        None => {
            let _ = writeln!(e, "peak_rss unavailable");
        }
    }
}

struct Ctx {
    opts: PipelineOptions,
    stats: bool,
    format: Option<Format>,
}

impl Ctx {
    fn soup(&self, p: &Path) -> Result<crate::Soup> {
        Ok(read_surface(p, self.format)?.to_soup())
    }

    fn report(&self, st: &PipelineStats) {
        if self.stats {
            print_stats(st);
        }
    }
}

fn write_solid(s: &Solid, out: &Path) -> Result<()> {
    if Format::from_path(out)? == Format::Pvol {
        std::fs::write(out, write_pvol(&s.complex, Some(&s.inside)))?;
    } else {
        write_surface(&SurfaceFile::from(&s.skin), out, None)?;
    }
    Ok(())
}

fn require_manifold(s: &Solid) -> Result<()> {
    s.skin.check_manifold()
}

fn run_command(cli: &Cli) -> Result<i32> {
    let format = cli.format.as_deref().map(Format::from_name).transpose()?;
    let ctx = Ctx {
        opts: PipelineOptions { presort: !cli.no_presort },
        stats: cli.stats,
        format,
    };
    match &cli.command {
        Command::Mesh { input, output, skin } => {
            let s = make_solid(&ctx.soup(input)?, ctx.opts)?;
            ctx.report(&s.stats);
            if let Some(o) = output {
                std::fs::write(o, write_pvol(&s.complex, Some(&s.inside)))?;
            }
            if let Some(o) = skin {
                write_surface(&SurfaceFile::from(&s.skin), o, None)?;
            }
            println!(
                "cells {} ({} inside), facets {}, volume {}",
                s.complex.cells.len(),
                s.inside.iter().filter(|&&x| x).count(),
                s.complex.facets.len(),
                s.skin.volume()
            );
            require_manifold(&s)?;
        }
        Command::Repair { input, output } => {
            let s = make_solid(&ctx.soup(input)?, ctx.opts)?;
            ctx.report(&s.stats);
            write_solid(&s, output)?;
            require_manifold(&s)?;
        }
        Command::Bool { op, a, b, output } => {
            let s = boolean(&ctx.soup(a)?, &ctx.soup(b)?, (*op).into(), ctx.opts)?;
            ctx.report(&s.stats);
            write_solid(&s, output)?;
            require_manifold(&s)?;
        }
        Command::Resolve { input, output } => {
            let (mesh, cx, st) = resolve_self_intersections(&ctx.soup(input)?, ctx.opts)?;
            ctx.report(&st);
            if Format::from_path(output)? == Format::Pvol {
                std::fs::write(output, write_pvol(&cx, None))?;
            } else {
                write_surface(&SurfaceFile::from(&mesh), output, None)?;
            }
        }
        Command::Check { input, samples } => {
            let fmt = match ctx.format {
                Some(f) => f,
                None => Format::from_path(input)?,
            };
            let report = if fmt == Format::Pvol {
                let (cx, labels) = read_pvol(&std::fs::read_to_string(input)?)?;
                let approx = cx.approximate_vertices()?;
                let skin = labels.map(|l| extract_skin(&cx, &l, &approx));
                check_all(&cx, skin.as_ref(), &approx, *samples, cli.seed)
            } else {
                let s = make_solid(&ctx.soup(input)?, ctx.opts)?;
                ctx.report(&s.stats);
                let approx = s.complex.approximate_vertices()?;
                check_all(&s.complex, Some(&s.skin), &approx, *samples, cli.seed)
            };
            print!("{}", report.render());
            if !report.passed() {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

/// Runs the tool on the given arguments and returns the process exit code:
/// 0 on success, 1 for input errors, 2 for invariant violations.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run_command(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => 1,
                e => e.exit_code(),
            }
        }
    }
}
