use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use toric_width::admissible::{build_profile_with_ramp, verify_profile, Ramp};
use toric_width::affine::{apply_affine, UnimodularMap};
use toric_width::delzant::{validate_delzant, ValidationReport};
use toric_width::lattice::{pick_check, LatticePolygon};
use toric_width::ratgeom::{parse_polytope, parse_rational, polytope_to_json};
use toric_width::render::{self, to_json};
use toric_width::width::{direction_report_with, ensure_delzant, toric_width_lb, KMethod, WidthOptions};
use toric_width::{fixtures, Error, IntVector, Polytope, Rational};

#[derive(Parser)]
#[command(name = "toric-width", version, about = "Exact toric-width lower bounds for Delzant polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KArg {
    LatticeCount,
    Pairing,
}

impl From<KArg> for KMethod {
    fn from(k: KArg) -> Self {
        match k {
            KArg::LatticeCount => KMethod::LatticeCount,
            KArg::Pairing => KMethod::Pairing,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RampArg {
    Blended,
    Smoothstep,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Delzant conditions; exits 1 if any fails.
    Validate {
        /// Polytope JSON file, or - for stdin
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Scan primitive directions up to a radius and report the best T_u.
    Width {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
        /// Run on polytopes that fail validation (results are marked unvalidated)
        #[arg(long)]
        skip_validation: bool,
        #[arg(long, value_enum, default_value = "lattice-count")]
        k_method: KArg,
    },
    /// Per-edge stabilizer orders, m_u and T_u for one direction.
    Direction {
        input: PathBuf,
        /// Primitive direction, e.g. 1,-2
        #[arg(long, allow_hyphen_values = true, value_parser = parse_vector)]
        u: IntVector,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        skip_validation: bool,
        #[arg(long, value_enum, default_value = "lattice-count")]
        k_method: KArg,
    },
    /// Apply x -> Mx + t with M unimodular.
    Transform {
        input: PathBuf,
        /// Row-major integer entries of M, comma separated
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Rational entries of t, comma separated (default zero)
        #[arg(long, allow_hyphen_values = true)]
        translate: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check Pick's theorem on a convex lattice polygon.
    Pick {
        /// Vertices as x,y pairs separated by ';' or spaces, e.g. "0,0;2,0;0,2"
        #[arg(long, allow_hyphen_values = true)]
        vertices: String,
        /// Take the convex hull of the points instead of requiring a convex polygon
        #[arg(long)]
        hull: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sample a plateau profile with slope below one as CSV (x,f).
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        min: String,
        #[arg(long, allow_hyphen_values = true)]
        max: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        delta: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_enum, default_value = "blended")]
        ramp: RampArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a catalog polytope (cp2, box, hirzebruch) as JSON.
    Fixture {
        name: String,
        /// Comma-separated key=value pairs, e.g. n=2,a=1,b=1
        #[arg(long, default_value = "")]
        params: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a polygon with arrows along its best directions.
    Svg {
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Markdown table of m_u and T_u over all directions up to a radius.
    Table {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long, value_enum, default_value = "lattice-count")]
        k_method: KArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_vector(s: &str) -> Result<IntVector, String> {
    s.parse::<IntVector>().map_err(|e| e.to_string())
}

fn read_input(path: &Path) -> Result<String, Error> {
    let io_err = |e: io::Error| Error::InvalidArgument(format!("{}: {e}", path.display()));
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &Path) -> Result<Polytope, Error> {
    parse_polytope(&read_input(path)?)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Error> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Decimal or `p/q`; only the profile subcommand takes floating input.
fn float_arg(name: &str, s: &str) -> Result<f64, Error> {
    let bad = || Error::InvalidArgument(format!("--{name}: cannot parse {s:?} as a number"));
    if let Ok(v) = s.trim().parse::<f64>() {
        return Ok(v);
    }
    parse_rational(s).ok().and_then(|q| q.to_f64()).ok_or_else(bad)
}

fn parse_points(s: &str) -> Result<Vec<(i64, i64)>, Error> {
    s.split(|c: char| c == ';' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim_matches(|c| c == '(' || c == ')');
            let (x, y) = t
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument(format!("expected x,y, got {t:?}")))?;
            let p = |v: &str| {
                v.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::InvalidArgument(format!("{v:?}: {e}")))
            };
            Ok((p(x)?, p(y)?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate { input, json } => {
            let report = match load(&input) {
                Ok(p) => validate_delzant(&p),
                Err(e @ Error::InvalidArgument(_)) | Err(e @ Error::Malformed(_)) => return Err(e),
                Err(e) => ValidationReport::structural(&e),
            };
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", render::validation_text(&report));
            }
            Ok(if report.is_delzant { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Width {
            input,
            radius,
            threads,
            json,
            skip_validation,
            k_method,
        } => {
            let p = load(&input)?;
            let opts = WidthOptions {
                threads: threads.max(1),
                k_method: k_method.into(),
                skip_validation,
            };
            let report = toric_width_lb(&p, radius, &opts)?;
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", render::width_text(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Direction {
            input,
            u,
            json,
            skip_validation,
            k_method,
        } => {
            let p = load(&input)?;
            ensure_delzant(&p, skip_validation)?;
            let report = direction_report_with(&p, &u, k_method.into())?;
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", render::direction_text(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            input,
            matrix,
            translate,
            output,
        } => {
            let p = load(&input)?;
            let entries = matrix
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("matrix entry {e:?} is not an integer")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let t = match translate {
                Some(t) => t.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?,
                None => vec![Rational::from_integer(0.into()); p.dimension()],
            };
            let f = UnimodularMap::from_row_major(&entries, t)?;
            let image = apply_affine(&p, &f)?;
            emit(&(polytope_to_json(&image) + "\n"), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pick { vertices, hull, json } => {
            let pts = parse_points(&vertices)?;
            let poly = if hull {
                LatticePolygon::convex_hull(&pts)?
            } else {
                LatticePolygon::new(pts)?
            };
            let report = pick_check(&poly);
            if json {
                println!("{}", to_json(&report));
            } else {
                print!("{}", render::pick_text(&report));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Profile {
            min,
            max,
            epsilon,
            delta,
            samples,
            ramp,
            output,
        } => {
            let ramp = match ramp {
                RampArg::Blended => Ramp::Blended,
                RampArg::Smoothstep => Ramp::Smoothstep,
            };
            let prof = build_profile_with_ramp(
                float_arg("min", &min)?,
                float_arg("max", &max)?,
                float_arg("epsilon", &epsilon)?,
                float_arg("delta", &delta)?,
                samples,
                ramp,
            )?;
            let check = verify_profile(&prof)?;
            eprintln!(
                "rise {} plateau_ok {} monotone_ok {} slope_ok {} max_slope {}",
                prof.rise(),
                check.plateau_ok,
                check.monotone_ok,
                check.slope_ok,
                check.max_slope
            );
            emit(&prof.to_csv(), output.as_deref())?;
            Ok(if check.all_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Fixture { name, params, output } => {
            let p = fixtures::generate(&name, &fixtures::parse_params(&params)?)?;
            emit(&(polytope_to_json(&p) + "\n"), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Svg { input, radius, output } => {
            let p = load(&input)?;
            if p.dimension() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "svg needs a 2-dimensional polytope, got dimension {}",
                    p.dimension()
                )));
            }
            let best = toric_width_lb(&p, radius, &WidthOptions::default())?;
            emit(&render::render_svg(&p, &best.best_directions)?, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table {
            input,
            radius,
            k_method,
            output,
        } => {
            let p = load(&input)?;
            ensure_delzant(&p, false)?;
            emit(&render::markdown_table(&p, radius, k_method.into())?, output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
