//! `latglue`: recompute the tables and certificates of the glued lattice
//! `L12` and the packing `Q10` from the command line.
//!
//! Exit status: 0 on success, 1 when a certificate fails, 2 on usage or
//! input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latglue::glue::{orbits, GlueElement};
use latglue::laminate::GluedLattice;
use latglue::project::lemma1_scan;
use latglue::report::{all_tables, render_all, Format, Table};
use latglue::windowq::{
    complete_disc_sq, density_from_patch, exact_density, extract_tiling, generate_patch, kissing_configuration,
    patch_svg, read_patch_json, tiling_svg, verify_packing, write_patch_json, PackedPoint, WindowSpec,
};
use latglue::{Error, ExactScalar, Rational};

/// Coordinate bound of `latglue patch` when `--bound` is not given.
const DEFAULT_BOUND: i64 = 10;

#[derive(Parser)]
#[command(name = "latglue", version, about = "Exact certificates for the glued lattice L12 and the packing Q10")]
struct Cli {
    /// Output format; svg applies to `patch` and `tiling`.
    #[arg(long, value_enum, default_value_t = OutFormat::Text, global = true)]
    format: OutFormat,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// The four tables: glue orbits in L8 and L4, short vectors of L12, minimal-vector splits.
    Tables,
    /// Kissing number of L12 with its breakdown by glue orbit.
    KissingL12,
    /// Exhaustive scan of the minimal-vector lemma over all 36 glue classes.
    Lemma,
    /// Generate the admitted fibers with coordinates in [-bound, bound].
    Patch {
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: i64,
        /// Window centering: four exact scalars over u1..u4 (⊥ images), e.g. "0,1/3,0,-1/2+1/6√3".
        #[arg(long)]
        centering: Option<String>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact pairwise minimum distance of a patch; exit 0 iff it is 4.
    Verify {
        patch: PathBuf,
        #[arg(long)]
        centering: Option<String>,
        /// Fiber pairs up to this squared distance are examined and reported.
        #[arg(long, default_value = "4")]
        shell: String,
    },
    /// The 378 spheres touching a sphere at singular centering and their cosines.
    #[command(name = "kissing-q10", alias = "kissing")]
    KissingQ10 {
        /// Center the window on the origin fiber (the only supported centering).
        #[arg(long)]
        singular: bool,
    },
    /// Tiling by the special centers of a patch.
    Tiling {
        patch: PathBuf,
        #[arg(long)]
        centering: Option<String>,
        /// Also write the tiling as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Integer Gram matrix of an L12 basis.
    Gram,
    /// Center densities of L8, L4, L12 and Q10.
    Densities {
        /// Also estimate the Q10 density from a patch with this coordinate bound.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Cosine census of the singular kissing configuration.
    Cosines,
}

enum Failure {
    Certificate(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certificate(_) | Error::TableMismatch { .. } | Error::Construction(_) => {
                Failure::Certificate(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<String, Failure>;

fn table_format(f: OutFormat) -> Result<Format, Failure> {
    match f {
        OutFormat::Text => Ok(Format::Text),
        OutFormat::Csv => Ok(Format::Csv),
        OutFormat::Json => Ok(Format::Json),
        OutFormat::Svg => Err(Failure::Usage("svg output is only available for patch and tiling".into())),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Run {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Failure::Usage(e.to_string()))
}

fn window(centering: Option<&str>) -> Result<WindowSpec, Failure> {
    let Some(text) = centering else {
        return Ok(WindowSpec::singular()?);
    };
    let c: Vec<ExactScalar> = text.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?;
    Ok(WindowSpec::new(c)?)
}

fn load_patch(path: &Path, w: &WindowSpec) -> Result<Vec<PackedPoint>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(read_patch_json(&text, w.grams())?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// The coordinate bound a patch was cut with, as far as its fibers show.
fn inferred_bound(patch: &[PackedPoint]) -> i64 {
    patch.iter().flat_map(|p| p.c4).map(i64::abs).max().unwrap_or(0)
}

fn tables(format: OutFormat) -> Run {
    let l12 = GluedLattice::build()?;
    Ok(render_all(&all_tables(&l12)?, table_format(format)?)?)
}

fn kissing_l12(format: OutFormat) -> Run {
    let l12 = GluedLattice::build()?;
    let m = l12.minimal_norm();
    let mut parts = vec![(GlueElement::ZERO.to_string(), l12.class_minimum(&GlueElement::ZERO).tau)];
    for r in l12.table3()? {
        if r.norm == m {
            parts.push((r.h.to_string(), r.total));
        }
    }
    let total = l12.kissing_number();
    if parts.iter().map(|p| p.1).sum::<usize>() != total {
        return Err(Failure::Certificate("orbit breakdown does not add up to the kissing number".into()));
    }
    match format {
        OutFormat::Text => {
            let terms: Vec<String> = parts.iter().map(|p| p.1.to_string()).collect();
            Ok(format!("{total}\n{} = {total}\nminimal norm {m}\n", terms.join("+")))
        }
        OutFormat::Json => json(&serde_json::json!({
            "kissing": total,
            "minimal_norm": m,
            "by_orbit": parts.iter().map(|(h, n)| serde_json::json!({"glue": h, "count": n})).collect::<Vec<_>>(),
        })),
        f => {
            let mut t = Table::new("L12 kissing number by glue orbit", &["glue", "count"]);
            for (h, n) in &parts {
                t.push(vec![h.clone(), n.to_string()]);
            }
            Ok(t.render(table_format(f)?)?)
        }
    }
}

fn lemma(format: OutFormat) -> Run {
    let scan = lemma1_scan()?;
    let out = match format {
        OutFormat::Json => json(&scan)?,
        _ => {
            let mut s = format!(
                "candidates {}\nnorm 4 {}\nviolations {}\n",
                scan.candidates,
                scan.minimal,
                scan.violations.len()
            );
            for v in &scan.violations {
                let _ = writeln!(s, "  {} x8={:?} x4={:?} norm {}", v.h, v.x8, v.x4, v.norm);
            }
            s
        }
    };
    if let Some(v) = scan.violations.first() {
        eprint!("{out}");
        return Err(Failure::Certificate(format!("class {} has a vector of norm {}", v.h, v.norm)));
    }
    Ok(out)
}

fn patch(format: OutFormat, bound: i64, centering: Option<&str>, out: Option<&Path>) -> Run {
    let w = window(centering)?;
    let pts = generate_patch(&w, bound)?;
    let text = match format {
        OutFormat::Svg => patch_svg(&pts, w.grams()),
        OutFormat::Json | OutFormat::Text => write_patch_json(&pts, w.grams())? + "\n",
        OutFormat::Csv => {
            let mut t = Table::new("patch", &["glue", "c4", "perp_norm"]);
            for p in &pts {
                let c: Vec<String> = p.c4.iter().map(ToString::to_string).collect();
                t.push(vec![
                    p.h.to_string(),
                    c.join(" "),
                    w.grams().norm(latglue::project::Plane::Perp, &p.x4()).to_string(),
                ]);
            }
            t.render(Format::Csv)?
        }
    };
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Ok(format!("{} fibers written to {}\n", pts.len(), path.display()))
        }
        None => Ok(text),
    }
}

fn verify(format: OutFormat, path: &Path, centering: Option<&str>, shell: &str) -> Run {
    let w = window(centering)?;
    let pts = load_patch(path, &w)?;
    let shell: Rational = shell.parse()?;
    let cert = verify_packing(&w, &pts, &shell)?;
    let four = ExactScalar::from_int(4);
    if cert.min_dist_sq != four {
        return Err(Failure::Certificate(format!("minimum squared distance is {}", cert.min_dist_sq)));
    }
    match format {
        OutFormat::Json => json(&serde_json::json!({
            "fibers": cert.fibers,
            "min_dist_sq": cert.min_dist_sq,
            "intra_fiber": cert.intra_fiber,
            "witness_pairs": cert.witnesses.len(),
            "shell_census": cert.shell_census.iter().map(|(d, n)| serde_json::json!({"dist_sq": d, "pairs": n})).collect::<Vec<_>>(),
            "forbidden_pairs": cert.forbidden_pairs.len(),
        })),
        OutFormat::Text => {
            let mut s = format!(
                "fibers {}\nmin squared distance {}\nwithin a fiber {}\nfiber pairs at the minimum {}\n",
                cert.fibers,
                cert.min_dist_sq,
                cert.intra_fiber,
                cert.witnesses.len()
            );
            for (d, n) in &cert.shell_census {
                let _ = writeln!(s, "  pairs at {d}: {n}");
            }
            Ok(s)
        }
        f => {
            let mut t = Table::new("fiber pairs by squared distance", &["dist_sq", "pairs"]);
            for (d, n) in &cert.shell_census {
                t.push(vec![d.to_string(), n.to_string()]);
            }
            Ok(t.render(table_format(f)?)?)
        }
    }
}

fn kissing_q10(format: OutFormat) -> Run {
    let w = WindowSpec::singular()?;
    let k = kissing_configuration(&w)?;
    let orbs = orbits()?;
    let orbit_of = |h: &GlueElement| orbs.iter().find(|o| o.members.contains(h)).map(|o| o.representative.to_string());
    match format {
        OutFormat::Json => json(&serde_json::json!({
            "count": k.count,
            "fibers": k.fibers.iter().map(|f| serde_json::json!({
                "glue_orbit": orbit_of(&f.h),
                "x4": f.x4,
                "perp_norm": f.n_perp,
                "contacts": f.contacts,
            })).collect::<Vec<_>>(),
            "cosines": k.cosines.iter().map(|(c, n)| serde_json::json!({"cosine": c, "pairs": n})).collect::<Vec<_>>(),
        })),
        OutFormat::Text => {
            let mut s = format!("{}\n", k.count);
            let mut by: std::collections::BTreeMap<(usize, String), usize> = Default::default();
            for f in &k.fibers {
                *by.entry((f.contacts, f.n_perp.to_string())).or_insert(0) += 1;
            }
            let terms: Vec<String> = by.iter().rev().map(|((c, _), n)| format!("{n}·{c}")).collect();
            let _ = writeln!(s, "{} = {}", terms.join(" + "), k.count);
            let _ = writeln!(s, "cosine census (pairs):");
            for (c, n) in &k.cosines {
                let _ = writeln!(s, "  {c}: {n}");
            }
            Ok(s)
        }
        f => cosine_table(&k).render(table_format(f)?).map_err(Failure::from),
    }
}

fn cosine_table(k: &latglue::windowq::KissingConfiguration) -> Table {
    let mut t = Table::new("cosines between contact points", &["cosine", "pairs"]);
    for (c, n) in &k.cosines {
        t.push(vec![c.to_string(), n.to_string()]);
    }
    t
}

fn cosines(format: OutFormat) -> Run {
    let k = kissing_configuration(&WindowSpec::singular()?)?;
    match format {
        OutFormat::Json => json(&serde_json::json!({
            "set": k.cosine_set(),
            "census": k.cosines.iter().map(|(c, n)| serde_json::json!({"cosine": c, "pairs": n})).collect::<Vec<_>>(),
        })),
        f => Ok(cosine_table(&k).render(table_format(f)?)?),
    }
}

fn tiling(format: OutFormat, path: &Path, centering: Option<&str>, svg: Option<&Path>) -> Run {
    let w = window(centering)?;
    let pts = load_patch(path, &w)?;
    let t = extract_tiling(&w, &pts, inferred_bound(&pts))?;
    if let Some(p) = svg {
        write_file(p, &tiling_svg(&t))?;
    }
    let counts = t.face_counts();
    match format {
        OutFormat::Svg => Ok(tiling_svg(&t)),
        OutFormat::Json => json(&serde_json::json!({
            "vertices": t.vertices.len(),
            "edges": t.edges.len(),
            "edge_len_sq": t.edge_len_sq,
            "min_separation": t.min_separation,
            "faces": counts.iter().map(|(k, n)| (format!("{k:?}"), *n)).collect::<std::collections::BTreeMap<_, _>>(),
            "rings": t.rings.len(),
            "special_separations": t.special_separations.iter().map(|(d, n)| serde_json::json!({"sep": d, "pairs": n})).collect::<Vec<_>>(),
            "special_by_orbit": t.special_by_orbit,
        })),
        OutFormat::Text => {
            let mut s = format!(
                "special centers {}\nedges {}\nedge squared length {}\nsmallest separation {}\n",
                t.vertices.len(),
                t.edges.len(),
                t.edge_len_sq,
                t.min_separation
            );
            for (k, n) in &counts {
                let _ = writeln!(s, "  {k:?}: {n}");
            }
            let _ = writeln!(s, "complete 12-point rings {}", t.rings.len());
            let _ = writeln!(s, "special / all fibers by glue orbit:");
            for (o, (a, b)) in &t.special_by_orbit {
                let _ = writeln!(s, "  {o}: {a} / {b}");
            }
            Ok(s)
        }
        f => {
            let mut tab = Table::new("tiles", &["kind", "count"]);
            for (k, n) in &counts {
                tab.push(vec![format!("{k:?}"), n.to_string()]);
            }
            Ok(tab.render(table_format(f)?)?)
        }
    }
}

fn gram(format: OutFormat) -> Run {
    let l12 = GluedLattice::build()?;
    let g = l12.export_gram()?;
    match format {
        OutFormat::Json => json(&g),
        OutFormat::Text => {
            let rows: Vec<String> =
                g.iter().map(|r| r.iter().map(|v| format!("{v:3}")).collect::<Vec<_>>().join(" ")).collect();
            Ok(rows.join("\n") + "\n")
        }
        f => {
            let heads: Vec<String> = (1..=g.len()).map(|i| format!("b{i}")).collect();
            let refs: Vec<&str> = heads.iter().map(String::as_str).collect();
            let mut t = Table::new("Gram matrix of L12", &refs);
            for r in &g {
                t.push(r.iter().map(ToString::to_string).collect());
            }
            Ok(t.render(table_format(f)?)?)
        }
    }
}

fn densities(format: OutFormat, bound: Option<i64>) -> Run {
    let l12 = GluedLattice::build()?;
    let d = l12.densities()?;
    let w = WindowSpec::singular()?;
    let d10 = exact_density(&w, &l12)?;
    let est = match bound {
        Some(b) => Some(density_from_patch(&w, &generate_patch(&w, b)?, b, &l12, d10.clone())),
        None => None,
    };
    match format {
        OutFormat::Json => json(&serde_json::json!({
            "l8": d.l8, "l4": d.l4, "l12": d.l12, "q10": d10,
            "estimate": est.as_ref().map(|e| serde_json::json!({
                "bound": bound, "fibers": e.fibers, "disc_radius_sq": e.radius_sq,
                "empirical": format!("{:.6}", e.empirical), "relative_error": format!("{:.6}", e.relative_error),
            })),
        })),
        OutFormat::Text => {
            let mut s = format!("δ8={} δ4={} δ12={} δ10={}\n", d.l8, d.l4, d.l12, d10);
            if let (Some(e), Some(b)) = (&est, bound) {
                let _ = writeln!(
                    s,
                    "bound {b}: {} fibers with x∥·x∥ ≤ {} give {:.6} (relative error {:.4})",
                    e.fibers,
                    complete_disc_sq(&w, b),
                    e.empirical,
                    e.relative_error
                );
            }
            Ok(s)
        }
        f => {
            let mut t = Table::new("center densities", &["packing", "density"]);
            for (n, v) in [("L8", &d.l8), ("L4", &d.l4), ("L12", &d.l12), ("Q10", &d10)] {
                t.push(vec![n.to_string(), v.to_string()]);
            }
            Ok(t.render(table_format(f)?)?)
        }
    }
}

fn run(cli: Cli) -> Run {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let f = cli.format;
    if f == OutFormat::Svg && !matches!(cli.command, Command::Patch { .. } | Command::Tiling { .. }) {
        return Err(Failure::Usage("svg output is only available for patch and tiling".into()));
    }
    match cli.command {
        Command::Tables => tables(f),
        Command::KissingL12 => kissing_l12(f),
        Command::Lemma => lemma(f),
        Command::Patch { bound, centering, out } => patch(f, bound, centering.as_deref(), out.as_deref()),
        Command::Verify { patch, centering, shell } => verify(f, &patch, centering.as_deref(), &shell),
        Command::KissingQ10 { singular: _ } => kissing_q10(f),
        Command::Tiling { patch, centering, svg } => tiling(f, &patch, centering.as_deref(), svg.as_deref()),
        Command::Gram => gram(f),
        Command::Densities { bound } => densities(f, bound),
        Command::Cosines => cosines(f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Certificate(msg)) => {
            eprintln!("latglue: certificate failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("latglue: {msg}");
            ExitCode::from(2)
        }
    }
}
