use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use singstar::graph::{parse_graph, star_to_plumbing, ChainGraph, CurveLocation, GraphFile, PlumbingGraph, StarGraph};
use singstar::lattice::{discriminant_group, intersection_matrix, link_homology, torsion_action_faithful};
use singstar::moebius::{cross_ratio, describe_group, j_invariant, label_preserving_group, parse_points, Modulus};
use singstar::quotient::{
    family_tetrahedral, family_triangle, family_triangle_quotients, parse_action, star_quotient, QuotientGraph,
};
use singstar::seifert::{canonical_pp, hj_evaluate, hj_expand, seifert_degree, seifert_pairs};
use singstar::symmetry::{aut_gamma, fermat_symmetry, symmetry_report, JClass, SymmetryOptions};
use singstar::Error;

#[derive(Parser)]
#[command(name = "singstar", version, about = "Star-shaped resolution graphs: invariants, symmetries and quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a star-graph or chain file.
    Validate {
        file: PathBuf,
        /// List the curve ids used by annotation files.
        #[arg(long)]
        ids: bool,
    },
    /// Seifert invariants, intersection lattice and link homology.
    Invariants { file: PathBuf },
    /// The finite symmetry group G/G_1.
    Symmetry(SymmetryArgs),
    /// Quotient graph under an annotated action of order 2 or 3.
    Quotient {
        file: PathBuf,
        #[arg(long, value_name = "AFILE")]
        action: PathBuf,
    },
    /// Named families of singularities.
    #[command(subcommand)]
    Family(Family),
    /// Finite groups of Moebius transformations and cross ratios.
    #[command(subcommand)]
    Moebius(Moebius),
    /// Hirzebruch-Jung continued fractions.
    #[command(subcommand)]
    Hj(Hj),
}

#[derive(Args)]
struct SymmetryArgs {
    file: PathBuf,
    /// Positions of the branch points, in branch order.
    #[arg(long, value_name = "PFILE")]
    points: Option<PathBuf>,
    /// Cross ratio of the four branch points.
    #[arg(long, value_name = "A/B", value_parser = parse_rational, group = "modulus", allow_hyphen_values = true)]
    lambda: Option<BigRational>,
    /// j invariant of the four branch points.
    #[arg(long, value_name = "A/B", value_parser = parse_rational, group = "modulus", allow_hyphen_values = true)]
    j: Option<BigRational>,
    /// j class of an elliptic central curve.
    #[arg(long, value_enum, group = "modulus")]
    j_class: Option<JClassArg>,
    /// Ganter's epsilon; adds the order bound to the report.
    #[arg(long, value_name = "N")]
    epsilon: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum JClassArg {
    Zero,
    One,
    Generic,
}

#[derive(Subcommand)]
enum Family {
    /// Triangle singularity D_{p,q,r}.
    #[command(name = "D")]
    Triangle {
        p: u64,
        q: u64,
        r: u64,
        /// Quotients by the graph symmetries.
        #[arg(long)]
        quotients: bool,
    },
    /// Tetrahedral singularity T_m and its octahedral quotient.
    #[command(name = "T")]
    Tetrahedral { m: u64 },
    /// Fermat singularity x^d + y^d + z^d.
    Fermat { d: u64 },
}

#[derive(Subcommand)]
enum Moebius {
    /// Maps permuting the points and preserving labels.
    Group { file: PathBuf },
    /// Cross ratio and j of the first four points.
    Crossratio { file: PathBuf },
    /// j of a cross ratio.
    J {
        #[arg(value_parser = parse_rational, allow_hyphen_values = true)]
        lambda: BigRational,
    },
}

#[derive(Subcommand)]
enum Hj {
    /// Weights of the chain of N/Q.
    Expand {
        #[arg(value_name = "N/Q", value_parser = parse_pair)]
        fraction: (BigInt, BigInt),
    },
    /// N/Q of a chain of weights.
    #[command(alias = "evaluate")]
    Eval {
        #[arg(required = true)]
        weights: Vec<u64>,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("`{s}` is not a fraction A/B"))?;
    let d: BigInt = d.parse().map_err(|_| format!("`{s}` is not a fraction A/B"))?;
    if d == BigInt::from(0) {
        return Err(format!("`{s}` has zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (n, q) = s.split_once('/').ok_or_else(|| format!("`{s}` is not of the form N/Q"))?;
    let n = n.parse().map_err(|_| format!("`{n}` is not an integer"))?;
    let q = q.parse().map_err(|_| format!("`{q}` is not an integer"))?;
    Ok((n, q))
}

/// A failed command: exit status and a single diagnostic line.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_syntax() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn with_path<T>(path: &Path, r: singstar::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| {
        let mut f = Failure::from(e);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn read_graph(path: &Path) -> Result<GraphFile, Failure> {
    with_path(path, parse_graph(&read(path)?))
}

fn read_star(path: &Path) -> Result<StarGraph, Failure> {
    match read_graph(path)? {
        GraphFile::Star(g) => Ok(g),
        GraphFile::Chain(_) => Err(domain(format!("{}: expected a star graph, found a chain", path.display()))),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn list_or_none(s: String) -> String {
    if s.is_empty() {
        "none".to_string()
    } else {
        s
    }
}

fn validate(out: &mut String, path: &Path, ids: bool) -> Outcome {
    let text = read(path)?;
    let g = match with_path(path, parse_graph(&text)) {
        Ok(GraphFile::Chain(c)) => {
            let (n, q) = hj_evaluate(c.weights())?;
            writeln!(out, "OK").unwrap();
            writeln!(out, "kind: chain").unwrap();
            writeln!(out, "fraction: {n}/{q}").unwrap();
            writeln!(out, "definite: yes").unwrap();
            if ids {
                for (i, w) in c.weights().iter().enumerate() {
                    writeln!(out, "curve {i}: weight -{w}").unwrap();
                }
            }
            return Ok(());
        }
        Ok(GraphFile::Star(g)) => g,
        Err(f) => {
            if let Some(Error::NotDefinite { .. }) = not_definite(&text) {
                writeln!(out, "definite: no").unwrap();
            }
            return Err(f);
        }
    };
    writeln!(out, "OK").unwrap();
    writeln!(out, "kind: star").unwrap();
    writeln!(out, "genus: {}", g.genus()).unwrap();
    writeln!(out, "branches: {}", g.branch_count()).unwrap();
    writeln!(out, "seifert_pairs: {}", list_or_none(join(seifert_pairs(&g)))).unwrap();
    writeln!(out, "definite: yes").unwrap();
    if ids {
        for (id, loc, w) in g.curve_ids() {
            match loc {
                CurveLocation::Center => writeln!(out, "curve {id}: center weight -{w}").unwrap(),
                CurveLocation::Branch { branch, position } => {
                    writeln!(out, "curve {id}: branch {branch} position {position} weight -{w}").unwrap()
                }
            }
        }
    }
    Ok(())
}

/// The invariant violation of a syntactically valid star file, if it is
/// non-definiteness.
fn not_definite(text: &str) -> Option<Error> {
    let parts = singstar::graph::parse_star_parts(text).ok()?;
    match parts.build() {
        Err(e @ Error::NotDefinite { .. }) => Some(e),
        _ => None,
    }
}

fn lattice_lines(out: &mut String, p: &PlumbingGraph) -> Outcome {
    let m = intersection_matrix(p);
    writeln!(out, "determinant: {}", m.determinant()).unwrap();
    let disc = discriminant_group(p)?;
    writeln!(out, "invariant_factors: {}", list_or_none(join(disc.invariant_factors()))).unwrap();
    writeln!(out, "discriminant_group: {disc}").unwrap();
    Ok(())
}

fn invariants(out: &mut String, path: &Path) -> Outcome {
    match read_graph(path)? {
        GraphFile::Chain(c) => chain_invariants(out, &c),
        GraphFile::Star(g) => {
            writeln!(out, "genus: {}", g.genus()).unwrap();
            writeln!(out, "central: {}", g.central_weight()).unwrap();
            writeln!(out, "seifert_pairs: {}", list_or_none(join(seifert_pairs(&g)))).unwrap();
            writeln!(out, "degree: {}", seifert_degree(&g)).unwrap();
            writeln!(out, "pp: {}", canonical_pp(&g)).unwrap();
            lattice_lines(out, &star_to_plumbing(&g))?;
            let h = link_homology(&g);
            writeln!(out, "free_rank: {}", h.free_rank).unwrap();
            writeln!(out, "link_homology: {h}").unwrap();
            let aut = aut_gamma(&g);
            writeln!(out, "aut_gamma: {}", aut.group()).unwrap();
            writeln!(out, "aut_gamma_order: {}", aut.order()).unwrap();
            writeln!(out, "faithful_on_torsion: {}", yes_no(torsion_action_faithful(&g))).unwrap();
            writeln!(out, "note: faithfulness is checked for branch permutations acting on the torsion of H_1 only").unwrap();
            Ok(())
        }
    }
}

fn chain_invariants(out: &mut String, c: &ChainGraph) -> Outcome {
    let (n, q) = hj_evaluate(c.weights())?;
    writeln!(out, "fraction: {n}/{q}").unwrap();
    lattice_lines(out, &PlumbingGraph::from(c))
}

fn symmetry(out: &mut String, args: &SymmetryArgs) -> Outcome {
    let g = read_star(&args.file)?;
    let points = match &args.points {
        Some(p) => Some(with_path(p, parse_points(&read(p)?))?),
        None => None,
    };
    let modulus = match (&args.lambda, &args.j) {
        (Some(l), _) => Some(Modulus::Lambda(l.clone())),
        (_, Some(j)) if *j == BigRational::from_integer(0.into()) => Some(Modulus::Equianharmonic),
        (_, Some(j)) => Some(Modulus::J(j.clone())),
        _ => None,
    };
    let j_class = args.j_class.map(|j| match j {
        JClassArg::Zero => JClass::Zero,
        JClassArg::One => JClass::One,
        JClassArg::Generic => JClass::Generic,
    });
    let opts = SymmetryOptions {
        points,
        modulus,
        j_class,
        epsilon: args.epsilon,
    };
    write!(out, "{}", symmetry_report(&g, &opts)?).unwrap();
    Ok(())
}

fn quotient(out: &mut String, path: &Path, action: &Path) -> Outcome {
    let g = read_star(path)?;
    let spec = with_path(action, parse_action(&read(action)?))?;
    let r = star_quotient(&g, &spec)?;
    let shape = match &r.graph {
        QuotientGraph::Chain(c) if c.is_smooth() => "smooth",
        QuotientGraph::Chain(_) => "chain",
        QuotientGraph::Star(_) => "star",
        QuotientGraph::Plumbing(_) => "tree",
    };
    writeln!(out, "shape: {shape}").unwrap();
    writeln!(out, "cyclic: {}", yes_no(r.graph.is_cyclic())).unwrap();
    if let QuotientGraph::Chain(c) = &r.graph {
        let (n, q) = hj_evaluate(c.weights())?;
        writeln!(out, "fraction: {n}/{q}").unwrap();
    }
    for c in &r.blowdown_log {
        writeln!(out, "blowdown: {c}").unwrap();
    }
    writeln!(out).unwrap();
    write!(out, "{}", r.graph).unwrap();
    if !out.ends_with('\n') {
        out.push('\n');
    }
    Ok(())
}

fn triangle_name(g: &StarGraph) -> String {
    let ws: Vec<String> = g.branches().iter().map(|b| join(b.weights())).collect();
    format!("D_{{{}}}", ws.join(","))
}

fn family(out: &mut String, f: &Family) -> Outcome {
    match *f {
        Family::Triangle { p, q, r, quotients } => {
            let g = family_triangle(p, q, r)?;
            writeln!(out, "graph: {}", triangle_name(&g)).unwrap();
            writeln!(out, "degree: {}", seifert_degree(&g)).unwrap();
            writeln!(out, "aut_gamma: {}", aut_gamma(&g).group()).unwrap();
            if quotients {
                let rows = family_triangle_quotients(p, q, r)?;
                if rows.is_empty() {
                    writeln!(out, "quotients: none").unwrap();
                }
                for row in rows {
                    writeln!(out, "quotient {}: {}", row.group, triangle_name(&row.graph)).unwrap();
                }
            }
        }
        Family::Tetrahedral { m } => {
            let (t, o) = family_tetrahedral(m)?;
            write!(out, "# T_{m}\n{t}\n# T_{m}/sigma3\n{o}").unwrap();
        }
        Family::Fermat { d } => write!(out, "{}", fermat_symmetry(d)?).unwrap(),
    }
    Ok(())
}

fn moebius(out: &mut String, m: &Moebius) -> Outcome {
    match m {
        Moebius::Group { file } => {
            let cfg = with_path(file, parse_points(&read(file)?))?;
            let group = label_preserving_group(&cfg);
            let desc = describe_group(&group);
            writeln!(out, "group: {desc}").unwrap();
            writeln!(out, "order: {}", desc.order).unwrap();
            for g in &group {
                writeln!(out, "element: {g}").unwrap();
            }
        }
        Moebius::Crossratio { file } => {
            let cfg = with_path(file, parse_points(&read(file)?))?;
            let pts = cfg.points();
            if pts.len() < 4 {
                return Err(domain(format!("{}: need four points, found {}", file.display(), pts.len())));
            }
            let lambda = cross_ratio(&pts[0].0, &pts[1].0, &pts[2].0, &pts[3].0)?;
            writeln!(out, "cross_ratio: {lambda}").unwrap();
            writeln!(out, "j: {}", j_invariant(&lambda)?).unwrap();
        }
        Moebius::J { lambda } => writeln!(out, "j: {}", j_invariant(lambda)?).unwrap(),
    }
    Ok(())
}

fn hj(out: &mut String, h: &Hj) -> Outcome {
    match h {
        Hj::Expand { fraction: (n, q) } => writeln!(out, "{}", join(hj_expand(n.clone(), q.clone())?)).unwrap(),
        Hj::Eval { weights } => {
            let (n, q) = hj_evaluate(weights)?;
            let r = BigRational::new(n, q);
            writeln!(out, "{r}").unwrap();
        }
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut String) -> Outcome {
    match &cli.command {
        Command::Validate { file, ids } => validate(out, file, *ids),
        Command::Invariants { file } => invariants(out, file),
        Command::Symmetry(args) => symmetry(out, args),
        Command::Quotient { file, action } => quotient(out, file, action),
        Command::Family(f) => family(out, f),
        Command::Moebius(m) => moebius(out, m),
        Command::Hj(h) => hj(out, h),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
