mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use equicut::boundary::{clock_turning, extract_boundary, find_lemma_pattern, region_svg, LatticeRegion};
use equicut::dissect::{self, standard_dissection, verify_dissection_with, VerifyOptions};
use equicut::exact::{parse_number, TowerReal};
use equicut::relations::{angle_relation_report, side_relation_report, Status};
use equicut::search::{search_for_count, Limits, SearchSpec};
use equicut::trispace::{sample_with_attempts, SampleMode, Triangle};

#[derive(Parser)]
#[command(
    name = "equicut",
    version,
    about = "Dissections of a triangle into congruent triangles"
)]
struct Cli {
    /// Starting interval precision in bits.
    #[arg(long, global = true, env = "EQUICUT_PRECISION_BITS", default_value_t = 256)]
    precision: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report angle and side relations of bounded height.
    Analyze {
        /// Sides a,b of the region (c = 1).
        #[arg(long)]
        region: String,
        #[arg(long, default_value_t = 8)]
        height: u32,
        /// Height for side relations; defaults to --height.
        #[arg(long)]
        side_height: Option<u32>,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,5")]
        basis: Vec<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Write the standard n²-piece dissection as JSON and SVG.
    Standard {
        /// Sides a,b of the region (c = 1).
        #[arg(long)]
        region: String,
        /// Cells per side; the dissection has n² pieces.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Verify a dissection file.
    Verify {
        file: PathBuf,
        /// Reject mirror-image pieces.
        #[arg(long)]
        direct_only: bool,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustively search for dissections into m congruent pieces.
    Search {
        /// Sides a,b of the region (c = 1).
        #[arg(long)]
        region: String,
        /// Number of pieces m.
        #[arg(long)]
        pieces: usize,
        /// Extra tile sides s1,s2,s3; repeatable.
        #[arg(long)]
        tile: Vec<String>,
        #[arg(long)]
        no_reflections: bool,
        #[arg(long)]
        quotient_symmetry: bool,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_results: Option<usize>,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        time_budget: Option<f64>,
        /// Directory for one JSON and one SVG file per result.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Trace the boundary of a lattice region file.
    Boundary {
        file: PathBuf,
        /// Write an SVG of the region and its loops.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Sample random triangles and count bounded-height relations.
    Sample {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::UniformM)]
        mode: Mode,
        #[arg(long, default_value_t = 12)]
        angle_height: u32,
        #[arg(long, default_value_t = 8)]
        side_height: u32,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,5")]
        basis: Vec<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    UniformM,
    UniformN,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_region(s: &str) -> Result<Triangle> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        bail!("region must be two side lengths a,b");
    };
    let a = parse_number(a).with_context(|| format!("side {a:?}"))?;
    let b = parse_number(b).with_context(|| format!("side {b:?}"))?;
    Ok(Triangle::exact(a, b)?)
}

fn parse_tile(s: &str) -> Result<[TowerReal; 3]> {
    let sides = s
        .split(',')
        .map(|x| parse_number(x.trim()).with_context(|| format!("tile side {x:?}")))
        .collect::<Result<Vec<_>>>()?;
    match <[TowerReal; 3]>::try_from(sides) {
        Ok(mut t) => {
            t.sort();
            Ok(t)
        }
        Err(_) => bail!("tile must be three side lengths"),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<Verdict> {
    let precision = cli.precision;
    if precision < 64 {
        bail!("precision must be at least 64 bits");
    }
    match cli.command {
        Command::Analyze {
            region,
            height,
            side_height,
            basis,
            json,
        } => {
            let t = parse_region(&region)?;
            let angles = angle_relation_report(&t, height, precision)?;
            let sides = side_relation_report(&t, side_height.unwrap_or(height), &basis, precision)?;
            if json {
                let v = serde_json::json!({
                    "region": region,
                    "angles": report::relation_json(&angles),
                    "sides": report::relation_json(&sides),
                });
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                println!("region: {region},1");
                print!("{}", report::relation_text("Σ1 angles", &angles));
                print!("{}", report::relation_text("Σ2 sides", &sides));
            }
            Ok(Verdict::Pass)
        }
        Command::Standard { region, n, out } => {
            let t = parse_region(&region)?;
            let d = standard_dissection(&t, n)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let text = dissect::to_json(&d);
            let json_path = out.join(format!("standard-{n}.json"));
            write(&json_path, &text)?;
            write(&out.join(format!("standard-{n}.svg")), &dissect::svg(&d))?;
            let back = dissect::from_json(&fs::read_to_string(&json_path)?)?;
            let rep = verify_dissection_with(&back, VerifyOptions::default());
            let round_trip = dissect::to_json(&back) == text;
            println!(
                "wrote {} pieces to {}; reload valid: {}, byte-identical: {}",
                d.pieces.len(),
                json_path.display(),
                rep.valid,
                round_trip
            );
            Ok(if rep.valid && round_trip {
                Verdict::Pass
            } else {
                Verdict::Fail
            })
        }
        Command::Verify {
            file,
            direct_only,
            json,
        } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let d = dissect::from_json(&text)?;
            let rep = verify_dissection_with(&d, VerifyOptions { direct_only });
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report::verification_json(&d, &rep))?
                );
            } else {
                print!("{}", report::verification_text(&d, &rep));
            }
            Ok(if rep.valid { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Search {
            region,
            pieces,
            tile,
            no_reflections,
            quotient_symmetry,
            max_nodes,
            max_results,
            time_budget,
            out,
            json,
        } => {
            let t = parse_region(&region)?;
            let extra = tile.iter().map(|s| parse_tile(s)).collect::<Result<Vec<_>>>()?;
            let budget = match time_budget {
                Some(s) if !(s.is_finite() && s > 0.0) => bail!("time budget must be positive"),
                Some(s) => Some(Duration::from_secs_f64(s)),
                None => None,
            };
            let mut template = SearchSpec::new(
                t.clone(),
                [TowerReal::one(), TowerReal::one(), TowerReal::one()],
                pieces,
            );
            template.allow_reflections = !no_reflections;
            template.symmetry_quotient = quotient_symmetry;
            template.limits = Limits {
                max_nodes,
                max_results,
                time_budget: budget,
            };
            let outcomes = search_for_count(&t, pieces, &extra, &template)?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (ti, o) in outcomes.iter().enumerate() {
                    for (k, d) in o.result.iter().flat_map(|r| &r.dissections).enumerate() {
                        let stem = format!("search-m{pieces}-t{ti}-{k}");
                        write(&dir.join(format!("{stem}.json")), &dissect::to_json(d))?;
                        write(&dir.join(format!("{stem}.svg")), &dissect::svg(d))?;
                    }
                }
            }
            if json {
                let v: Vec<_> = outcomes.iter().map(report::outcome_json).collect();
                println!("{}", serde_json::to_string_pretty(&v)?);
            } else {
                for o in &outcomes {
                    print!("{}", report::outcome_text(o));
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Boundary { file, svg, json } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let r = LatticeRegion::parse(&text)?;
            let loops = extract_boundary(&r);
            let mut ok = true;
            for l in loops.iter().filter(|l| l.is_outer()) {
                ok &= clock_turning(l)? == 6 && find_lemma_pattern(l).is_some();
            }
            if let Some(path) = svg {
                write(&path, &region_svg(&r, &loops))?;
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&report::boundary_json(&r, &loops)?)?);
            } else {
                print!("{}", report::boundary_text(&r, &loops)?);
            }
            Ok(if ok { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Sample {
            count,
            seed,
            mode,
            angle_height,
            side_height,
            basis,
        } => {
            let mode = match mode {
                Mode::UniformM => SampleMode::UniformM,
                Mode::UniformN => SampleMode::UniformN,
            };
            let mut hits = 0;
            let mut attempts = 0;
            for k in 0..count {
                let (t, tries) = sample_with_attempts(seed.wrapping_add(k), mode);
                attempts += tries as u64;
                let angles = angle_relation_report(&t, angle_height, precision)?;
                let sides = side_relation_report(&t, side_height, &basis, precision)?;
                let hit = angles.status != Status::NoneUpToHeight || sides.status != Status::NoneUpToHeight;
                if hit {
                    hits += 1;
                    let (a, b) = t.to_f64();
                    println!(
                        "hit: seed {} sides ({a:.6}, {b:.6}, 1) angles {} sides {}",
                        seed.wrapping_add(k),
                        angles.status,
                        sides.status
                    );
                }
            }
            println!(
                "hit rate: {hits}/{count} ({:.4}); acceptance {count}/{attempts}",
                if count == 0 { 0.0 } else { hits as f64 / count as f64 }
            );
            Ok(Verdict::Pass)
        }
    }
}
