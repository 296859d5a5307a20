//! Argument definitions and subcommand implementations.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use klein168::apolarity::{catalecticant, final_hexagon, powersum_solve, z4_hexagon};
use klein168::characters::{eval_character, CharacterTable, SL_COLUMNS};
use klein168::data;
use klein168::diophantine::rh_enumerate;
use klein168::geometry::{conditions_rank, min_orbit_size_p2, parse_points, OrbitRecord};
use klein168::groebner::{projective_dimension_report, smoothness_report};
use klein168::groups::FiniteMatrixGroup;
use klein168::invariants::{catalog, invariant_dim_by_character, invariant_dim_by_reynolds, SparsePoly, CATALOG_NAMES};
use serde_json::{json, Value};

use crate::config::Config;
use crate::context::Context;
use crate::report::{run_report, select};

#[derive(Parser, Debug)]
#[command(name = "klein168", version, about = "Exact computations for PSL(2,7) and SL(2,7)")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// TOML file of `key = value` settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for randomized spot checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GroupName {
    Sl27,
    Psl27P3,
    Psl27P2,
    KleinP2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableName {
    Psl,
    Sl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Space {
    P3,
    P2,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum HexagonCase {
    Z4,
    Final,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order, conductor and conjugacy classes of a bundled group.
    GroupInfo {
        #[arg(long, value_enum, default_value = "sl27")]
        group: GroupName,
    },
    /// Character table of PSL(2,7) or SL(2,7).
    CharTable {
        #[arg(long, value_enum, default_value = "psl")]
        table: TableName,
    },
    /// Decomposes a character expression such as `sym(U4,4)`.
    Decompose {
        expr: String,
        #[arg(long, value_enum, default_value = "sl")]
        table: TableName,
    },
    /// Invariant dimensions by degree, or the named invariants.
    Invariants {
        #[arg(long, value_enum, default_value = "p3")]
        space: Space,
        /// Largest degree; defaults to the configured value.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Print a catalog polynomial, or `all`.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Small orbits on P^3 or the smallest orbit on P^2.
    Orbits {
        #[arg(long, value_enum, default_value = "p3")]
        space: Space,
    },
    /// Number of conditions imposed on degree-d forms by a point set.
    Conditions {
        /// sigma8, sigma24, sigma28 or sigma28p.
        #[arg(long, conflicts_with = "points")]
        orbit: Option<String>,
        /// File with one point per line.
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        degree: u32,
    },
    /// Riemann-Hurwitz branch data up to a genus bound.
    Rh {
        #[arg(long)]
        gmax: Option<u32>,
    },
    /// Projective dimension of an ideal over prime fields.
    IdealDim {
        /// Comma-separated catalog names (f4, f6, f8, f8p, f14, klein, ...).
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        /// File with one polynomial per line.
        #[arg(long)]
        poly: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        nvars: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Smoothness certificate for a hypersurface.
    Smooth {
        /// File holding one polynomial.
        #[arg(long, conflicts_with = "name")]
        poly: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 4)]
        nvars: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Power-sum system of six lines for a quartic.
    Hexagon {
        #[arg(long, value_enum, conflicts_with = "lines")]
        case: Option<HexagonCase>,
        /// File with six linear forms, one per line.
        #[arg(long, requires = "quartic")]
        lines: Option<PathBuf>,
        /// File holding the quartic; defaults to the epsilon model.
        #[arg(long)]
        quartic: Option<PathBuf>,
    },
    /// Catalecticant matrix and determinant of a ternary quartic.
    Catalecticant {
        #[arg(long)]
        quartic: Option<PathBuf>,
    },
    /// Runs the verification ledger.
    Report {
        /// Check ids; repeatable. Defaults to the configured selection.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the check ids and exit.
        #[arg(long)]
        list: bool,
        /// Write JSON to this file as well.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Result of a subcommand: JSON body, human text and exit code.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, code: 0 }
    }
}

fn group(name: GroupName) -> &'static FiniteMatrixGroup {
    match name {
        GroupName::Sl27 => data::sl27(),
        GroupName::Psl27P3 => data::psl27_p3(),
        GroupName::Psl27P2 => data::psl27_p2(),
        GroupName::KleinP2 => data::klein_p2(),
    }
}

fn read_polys(path: &Path, nvars: usize) -> Result<Vec<SparsePoly>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| SparsePoly::parse(l, nvars).map_err(|e| anyhow!("{}: {e}", path.display())))
        .collect()
}

fn read_one(path: &Path, nvars: usize) -> Result<SparsePoly> {
    let mut v = read_polys(path, nvars)?;
    if v.len() != 1 {
        bail!("{}: expected one polynomial, found {}", path.display(), v.len());
    }
    Ok(v.remove(0))
}

/// Catalog lookup accepting `f4`-style shorthands.
fn named_poly(name: &str) -> Result<SparsePoly> {
    let key = match name.to_ascii_lowercase().as_str() {
        "f4" | "phi4" => "Phi4",
        "f6" | "phi6" => "Phi6",
        "f8" | "phi8" => "Phi8",
        "f8p" | "phi8p" => "Phi8p",
        "f14" | "phi14" => "Phi14",
        "klein" => "Klein",
        "klein-eps" | "kleineps" => "KleinEps",
        "hessian" => "Hessian",
        _ => bail!("unknown polynomial {name}; known: {}", CATALOG_NAMES.join(", ")),
    };
    Ok(catalog().get(key).expect("catalog entry").clone())
}

fn primes_or_default(primes: &[u64], cfg: &Config) -> Vec<u64> {
    if primes.is_empty() {
        cfg.primes.clone()
    } else {
        primes.to_vec()
    }
}

fn table_of(ctx: &Context, t: TableName) -> Result<&CharacterTable> {
    Ok(match t {
        TableName::Psl => &ctx.psl_table()?.table,
        TableName::Sl => &ctx.sl_table()?.table,
    })
}

fn orbit_json(r: &OrbitRecord) -> Value {
    json!({
        "label": r.label,
        "size": r.size(),
        "stabilizer_order": r.stabilizer_order,
        "stabilizer": r.stabilizer_label.to_string(),
        "representative": r.representative().to_string(),
    })
}

pub fn execute(cli: &Cli, ctx: &Context) -> Result<Output> {
    match &cli.command {
        Command::GroupInfo { group: name } => {
            let g = group(*name);
            let cs = g.classes();
            let mut classes: Vec<(u32, usize)> = cs.classes.iter().map(|c| (c.order, c.size())).collect();
            classes.sort_unstable();
            let text = format!(
                "order {} (dimension {}, conductor {}, {})\nclasses (element order, size): {:?}",
                g.order(),
                g.dim(),
                g.conductor(),
                g.label(),
                classes
            );
            let classes_json: Vec<Value> = classes.iter().map(|(o, s)| json!({ "order": o, "size": s })).collect();
            Ok(Output::ok(
                json!({
                    "order": g.order(),
                    "dimension": g.dim(),
                    "conductor": g.conductor(),
                    "label": g.label().to_string(),
                    "classes": classes_json,
                }),
                text,
            ))
        }
        Command::CharTable { table } => {
            let (labels, columns, rows): (Vec<String>, Vec<String>, Vec<Vec<String>>) = match table {
                TableName::Psl => {
                    let psl = ctx.psl_table()?;
                    let cols = ["id", "(2)", "(3)", "(4)", "(7)", "(7')"].map(String::from).to_vec();
                    let rows = psl
                        .table
                        .labels
                        .iter()
                        .map(|l| psl.labeled_row(l).expect("row").iter().map(|v| v.to_string()).collect())
                        .collect();
                    (psl.table.labels.clone(), cols, rows)
                }
                TableName::Sl => {
                    let sl = ctx.sl_table()?;
                    let rows = sl
                        .table
                        .labels
                        .iter()
                        .map(|l| sl.labeled_row(l).expect("row").iter().map(|v| v.to_string()).collect())
                        .collect();
                    (sl.table.labels.clone(), SL_COLUMNS.map(String::from).to_vec(), rows)
                }
            };
            let mut text = format!("{:6} {}\n", "", columns.join("  "));
            for (l, r) in labels.iter().zip(&rows) {
                text.push_str(&format!("{l:6} {}\n", r.join("  ")));
            }
            Ok(Output::ok(json!({ "columns": columns, "labels": labels, "rows": rows }), text.trim_end().into()))
        }
        Command::Decompose { expr, table } => {
            let t = table_of(ctx, *table)?;
            let env = t.labels.iter().cloned().zip(t.rows.iter().cloned()).collect();
            let chi = eval_character(expr, &env)?;
            let mult = t.decompose(&chi)?;
            let s = t.format_decomposition(&mult);
            Ok(Output::ok(json!({ "character": expr, "multiplicities": mult, "decomposition": s }), format!("{expr} = {s}")))
        }
        Command::Invariants { space, max_degree, emit } => {
            if let Some(name) = emit {
                let c = catalog();
                let names: Vec<&str> = if name == "all" { CATALOG_NAMES.to_vec() } else { vec![name.as_str()] };
                let mut obj = serde_json::Map::new();
                let mut text = String::new();
                for n in names {
                    let f = match c.get(n) {
                        Some(f) => f.clone(),
                        None => named_poly(n)?,
                    };
                    text.push_str(&format!("{n} = {f}\n"));
                    obj.insert(n.to_string(), json!(f.to_string()));
                }
                return Ok(Output::ok(Value::Object(obj), text.trim_end().into()));
            }
            let g = match space {
                Space::P3 => data::sl27(),
                Space::P2 => data::psl27_p2(),
            };
            let top = max_degree.unwrap_or(ctx.config.max_degree);
            let mut rows = Vec::new();
            let mut text = String::from("degree  character  reynolds\n");
            for d in 1..=top {
                let a = invariant_dim_by_character(g, d)?;
                let b = invariant_dim_by_reynolds(g, d)?;
                text.push_str(&format!("{d:6}  {a:9}  {b:8}\n"));
                rows.push(json!({ "degree": d, "character": a, "reynolds": b }));
            }
            let agree = rows.iter().all(|r| r["character"] == r["reynolds"]);
            Ok(Output { json: json!({ "dimensions": rows, "agree": agree }), text: text.trim_end().into(), code: if agree { 0 } else { 1 } })
        }
        Command::Orbits { space } => match space {
            Space::P3 => {
                let o = ctx.special_orbits()?;
                let list: Vec<Value> = o.all().iter().map(|r| orbit_json(r)).collect();
                let text = o
                    .all()
                    .iter()
                    .map(|r| format!("{}: size {}, stabilizer {} of order {}", r.label, r.size(), r.stabilizer_label, r.stabilizer_order))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Output::ok(json!(list), text))
            }
            Space::P2 => {
                let m = min_orbit_size_p2(data::psl27_p2())?;
                let sizes: Vec<usize> = m.sizes.keys().copied().collect();
                Ok(Output::ok(
                    json!({
                        "min_size": m.size,
                        "stabilizer_order": m.stabilizer_order,
                        "representative": m.representative.as_ref().map(|p| p.to_string()),
                        "orbit_sizes": sizes,
                    }),
                    format!("smallest orbit: {} points (stabilizer order {}); sizes seen {:?}", m.size, m.stabilizer_order, sizes),
                ))
            }
        },
        Command::Conditions { orbit, points, degree } => {
            let pts = match (orbit, points) {
                (Some(name), None) => ctx.orbit(name)?.points.clone(),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    parse_points(&text)?
                }
                _ => bail!("give exactly one of --orbit or --points"),
            };
            let r = conditions_rank(&pts, *degree)?;
            Ok(Output::ok(json!({ "points": pts.len(), "degree": degree, "rank": r }), format!("{} points impose {r} conditions on degree-{degree} forms", pts.len())))
        }
        Command::Rh { gmax } => {
            let rows = rh_enumerate(gmax.unwrap_or(ctx.config.rh_gmax))?;
            let list: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "genus": r.genus, "quotient_genus": r.quotient_genus, "orbits_24_42_56_84": r.table_row() }))
                .collect();
            let text = rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Output::ok(json!(list), text))
        }
        Command::IdealDim { set, poly, nvars, primes } => {
            let mut gens: Vec<SparsePoly> = set.iter().map(|n| named_poly(n)).collect::<Result<_>>()?;
            if let Some(path) = poly {
                gens.extend(read_polys(path, *nvars)?);
            }
            if gens.is_empty() {
                bail!("no generators: give --set or --poly");
            }
            let primes = primes_or_default(primes, &ctx.config);
            let r = projective_dimension_report(&gens, &primes)?;
            let runs: Vec<Value> = r
                .runs
                .iter()
                .map(|x| json!({ "prime": x.prime, "dimension": x.dimension, "basis_size": x.basis_size, "millis": x.millis }))
                .collect();
            let text = format!(
                "projective dimension {} at primes {:?}",
                r.dimension,
                r.runs.iter().map(|x| x.prime).collect::<Vec<_>>()
            );
            Ok(Output::ok(json!({ "dimension": r.dimension, "runs": runs }), text))
        }
        Command::Smooth { poly, name, nvars, primes } => {
            let f = match (poly, name) {
                (Some(path), None) => read_one(path, *nvars)?,
                (None, Some(n)) => named_poly(n)?,
                _ => bail!("give exactly one of --poly or --name"),
            };
            let primes = primes_or_default(primes, &ctx.config);
            let r = smoothness_report(&f, &primes)?;
            let smooth = r.dimension < 0;
            Ok(Output::ok(
                json!({ "smooth": smooth, "singular_locus_dimension": r.dimension, "primes": primes }),
                format!("smooth: {smooth} (primes {primes:?})"),
            ))
        }
        Command::Hexagon { case, lines, quartic } => {
            let f = match quartic {
                Some(p) => read_one(p, 3)?,
                None => catalog().klein_eps.clone(),
            };
            let ls = match (case, lines) {
                (Some(HexagonCase::Z4), None) => z4_hexagon(),
                (Some(HexagonCase::Final), None) => final_hexagon(),
                (None, Some(path)) => read_polys(path, 3)?,
                _ => bail!("give --case or --lines"),
            };
            let r = powersum_solve(&f, &ls)?;
            let mu = r.multipliers.as_ref().map(|m| m.iter().map(|x| x.to_string()).collect::<Vec<_>>());
            Ok(Output::ok(
                json!({
                    "status": r.status(),
                    "rank": r.rank,
                    "augmented_rank": r.augmented_rank,
                    "unique": r.unique,
                    "multipliers": mu,
                }),
                format!("{} (rank {}, augmented rank {})", r.status(), r.rank, r.augmented_rank),
            ))
        }
        Command::Catalecticant { quartic } => {
            let f = match quartic {
                Some(p) => read_one(p, 3)?,
                None => catalog().klein_eps.clone(),
            };
            let c = catalecticant(&f)?;
            let rows: Vec<Vec<String>> = c.matrix().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let det = c.det();
            let text = format!(
                "{}\ndeterminant {det}\nrank {}",
                rows.iter().map(|r| r.join("  ")).collect::<Vec<_>>().join("\n"),
                c.rank()
            );
            Ok(Output::ok(json!({ "matrix": rows, "determinant": det.to_string(), "rank": c.rank(), "degenerate": det.is_zero() }), text))
        }
        Command::Report { checks, list, output } => {
            if *list {
                let ids: Vec<&str> = crate::checks::CHECKS.iter().map(|(k, _)| *k).collect();
                return Ok(Output::ok(json!(ids), ids.join("\n")));
            }
            let wanted = if checks.is_empty() { &ctx.config.checks } else { checks };
            let ids = select(wanted)?;
            let report = run_report(ctx, &ids);
            let body = json!(report);
            if let Some(path) = output {
                std::fs::write(path, serde_json::to_string_pretty(&body)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut text = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    crate::checks::Status::Pass => "PASS",
                    crate::checks::Status::Fail => "FAIL",
                    crate::checks::Status::Reported => "INFO",
                };
                text.push_str(&format!("{tag} {:45} {}\n", c.id, c.payload));
            }
            text.push_str(&format!("{} passed, {} failed, {} reported", report.passed, report.failed, report.reported));
            Ok(Output { json: body, text, code: report.exit_code() })
        }
    }
}

/// Parses configuration and runs the command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let mut config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e:#}");
                return 2;
            }
        },
        None => Config::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let ctx = Context::new(config);
    match execute(&cli, &ctx) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            out.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
