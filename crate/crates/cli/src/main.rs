//! `metpoly`: command-line access to the metric-polytope library.
//!
//! Exit codes: 0 when the command succeeds and the tested property holds,
//! 1 when the property fails or the input is not a vertex, 2 on usage or
//! parse errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use metric_polytope::cone::{self, neighbors_from_cone};
use metric_polytope::enumeration::{self, EnumerationOptions};
use metric_polytope::symmetry::{self, MAX_ORBIT_NODES};
use metric_polytope::{
    check_domination, check_fractional_connectivity, diameter, tangent_cone, CutSet,
    EmbeddedFixture, Error, MetricPolytope, MetricVector, VertexSet,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "metpoly", version, about = "Exact computations on the metric polytope m_n")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Append the elapsed wall time in milliseconds.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the triangle and perimeter facets of m_n.
    Facets { n: usize },
    /// List the 2^(n-1) cuts of m_n.
    Cuts { n: usize },
    /// Check a vertex: incidence, tangent cone, ray shooting, cut adjacency.
    Verify(VertexInput),
    /// Print every vertex adjacent to the input vertex.
    Neighbors(VertexInput),
    /// Print the facets tight at the input point.
    Incidence(VertexInput),
    /// Test whether two vertex files hold adjacent vertices.
    Adjacent { first: PathBuf, second: PathBuf },
    /// Enumerate all vertices of m_n and summarize the vertex graph.
    Enumerate {
        n: usize,
        /// Where to write the vertex set (default: m<n>-vertices.txt).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Permit n = 7, which takes hours.
        #[arg(long)]
        allow_long: bool,
    },
    /// Diameter of the vertex graph of a vertex set file, or of m_n.
    Diameter(SetInput),
    /// Canonical orbit representative of the input point.
    Canon(VertexInput),
    /// Laurent-Poljak check: does every fractional vertex have a cut neighbor?
    CheckLp {
        #[command(flatten)]
        vertex: VertexInput,
        /// Check every fractional vertex of a vertex set file instead.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["file", "fixture"])]
        vertex_set: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VertexInput {
    /// Vertex file: n on the first line, then C(n,2) rationals.
    file: Option<PathBuf>,
    /// Use a built-in vertex instead of a file.
    #[arg(long, value_name = "NAME", conflicts_with = "file")]
    fixture: Option<String>,
}

#[derive(Args, Debug)]
struct SetInput {
    /// Vertex set file.
    file: Option<PathBuf>,
    /// Enumerate m_n instead of reading a file.
    #[arg(long, conflicts_with = "file")]
    n: Option<usize>,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Input(_) | Error::Capability(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

/// Text or JSON output plus the exit code it implies.
struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("thread pool is configured once");
    }
    let start = Instant::now();
    match run(&cli.command) {
        Ok(mut out) => {
            if cli.timing {
                let ms = start.elapsed().as_millis();
                let _ = writeln!(out.text, "time: {ms} ms");
                if let Value::Object(map) = &mut out.json {
                    map.insert("milliseconds".into(), json!(ms as u64));
                }
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            if cli.json {
                println!("{}", json!({ "error": f.message, "exit_code": f.code }));
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Facets { n } => facets(*n),
        Command::Cuts { n } => cuts(*n),
        Command::Verify(input) => verify(&load_vertex(input)?),
        Command::Neighbors(input) => neighbors(&load_vertex(input)?),
        Command::Incidence(input) => incidence(&load_vertex(input)?),
        Command::Adjacent { first, second } => adjacent(&read_vertex(first)?, &read_vertex(second)?),
        Command::Enumerate {
            n,
            output,
            allow_long,
        } => enumerate(*n, output.clone(), *allow_long),
        Command::Diameter(input) => diameter_cmd(input),
        Command::Canon(input) => canon(&load_vertex(input)?),
        Command::CheckLp { vertex, vertex_set } => match vertex_set {
            Some(path) => check_lp_set(path),
            None => check_lp(&load_vertex(vertex)?),
        },
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_vertex(path: &PathBuf) -> Result<MetricVector, Failure> {
    Ok(MetricVector::parse_vertex_file(&read_file(path)?)?)
}

fn load_vertex(input: &VertexInput) -> Result<MetricVector, Failure> {
    match (&input.file, &input.fixture) {
        (Some(path), None) => read_vertex(path),
        (None, Some(name)) => Ok(EmbeddedFixture::by_name(name)?.vertex),
        _ => Err(usage("give a vertex file or --fixture NAME")),
    }
}

fn coords_json(v: &MetricVector) -> Value {
    json!(v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn facets(n: usize) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(n)?;
    let mut text = String::new();
    let mut list = Vec::new();
    for f in poly.facets() {
        let normal = f.normal();
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t<= {}",
            f.id(),
            f.kind(),
            f.kind().delta_name(),
            normal.coords_line(),
            f.rhs()
        );
        list.push(json!({
            "id": f.id().0,
            "name": f.kind().to_string(),
            "delta_name": f.kind().delta_name(),
            "normal": coords_json(&normal),
            "rhs": f.rhs().to_string(),
        }));
    }
    Ok(Outcome {
        text,
        json: json!({ "n": n, "count": list.len(), "facets": list }),
        code: 0,
    })
}

fn cuts(n: usize) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let mut list = Vec::new();
    for s in CutSet::all(n)? {
        let v = s.cut_vector();
        let _ = writeln!(text, "{}\t{}", s, v.coords_line());
        list.push(json!({ "set": s.members(), "vector": coords_json(&v) }));
    }
    Ok(Outcome {
        text,
        json: json!({ "n": n, "count": list.len(), "cuts": list }),
        code: 0,
    })
}

fn not_a_vertex(poly: &MetricPolytope, x: &MetricVector) -> Result<Option<Outcome>, Failure> {
    match poly.vertex_incidence(x) {
        Ok(_) => Ok(None),
        Err(e @ Error::NotAVertex { tight, rank, dimension }) => Ok(Some(Outcome {
            text: format!("vertex: no\n{e}\ntight rank: {rank} of {dimension}\n"),
            json: json!({
                "vertex": false,
                "tight": tight,
                "rank": rank,
                "dimension": dimension,
            }),
            code: 1,
        })),
        Err(e) => Err(e.into()),
    }
}

fn verify(x: &MetricVector) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(x.n())?;
    if let Some(out) = not_a_vertex(&poly, x)? {
        return Ok(out);
    }
    let cone = tangent_cone(&poly, x)?;
    let nbrs = neighbors_from_cone(&poly, &cone)?;
    let cut_adjacent = cone::adjacent_to_some_cut(&poly, x)?;

    // ray shooting and the rank test must agree on every neighbor
    let mut consistent = cut_adjacent == nbrs.iter().any(MetricVector::is_integral);
    for w in &nbrs {
        consistent &= poly.are_adjacent(x, w).unwrap_or(false);
    }

    let integral = nbrs.iter().filter(|w| w.is_integral()).count();
    let mut text = String::new();
    let _ = writeln!(text, "n: {}", x.n());
    let _ = writeln!(
        text,
        "vertex: yes{}",
        if cone.is_quasi_simple() { " (quasi-simple)" } else { "" }
    );
    let _ = writeln!(text, "integral: {}", yes_no(x.is_integral()));
    let _ = writeln!(text, "tight facets: {}", cone.tight.len());
    for &id in &cone.tight {
        let k = poly.facet(id).kind();
        let _ = writeln!(text, "  {}\t{}", k, k.delta_name());
    }
    let _ = writeln!(text, "rays: {}", cone.rays.len());
    let _ = writeln!(
        text,
        "neighbors: {} ({} integral, {} fractional)",
        nbrs.len(),
        integral,
        nbrs.len() - integral
    );
    for w in &nbrs {
        let kind = if w.is_integral() { "integral" } else { "fractional" };
        let _ = writeln!(text, "  {}\t{}", w.coords_line(), kind);
    }
    let _ = writeln!(text, "cut-adjacent: {}", verdict(cut_adjacent));
    let _ = writeln!(text, "consistency: {}", if consistent { "ok" } else { "FAILED" });

    let json = json!({
        "n": x.n(),
        "vertex": true,
        "quasi_simple": cone.is_quasi_simple(),
        "integral": x.is_integral(),
        "tight": cone.tight.iter().map(|&id| poly.facet(id).kind().to_string()).collect::<Vec<_>>(),
        "rays": cone.rays.len(),
        "neighbors": nbrs.iter().map(|w| json!({
            "coords": coords_json(w),
            "integral": w.is_integral(),
        })).collect::<Vec<_>>(),
        "cut_adjacent": cut_adjacent,
        "consistent": consistent,
    });
    Ok(Outcome {
        text,
        json,
        code: if consistent { 0 } else { 1 },
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Headline verdicts are shouted so they stand out in long reports.
fn verdict(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn neighbors(x: &MetricVector) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(x.n())?;
    if let Some(out) = not_a_vertex(&poly, x)? {
        return Ok(out);
    }
    let nbrs = cone::neighbors(&poly, x)?;
    let mut text = format!("n {} count {}\n", x.n(), nbrs.len());
    for w in &nbrs {
        text.push_str(&w.coords_line());
        text.push('\n');
    }
    Ok(Outcome {
        text,
        json: json!({
            "n": x.n(),
            "count": nbrs.len(),
            "neighbors": nbrs.iter().map(coords_json).collect::<Vec<_>>(),
        }),
        code: 0,
    })
}

fn incidence(x: &MetricVector) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(x.n())?;
    let tight = poly.incidence(x)?;
    let mut text = format!("tight facets: {}\n", tight.len());
    for &id in &tight {
        let k = poly.facet(id).kind();
        let _ = writeln!(text, "{}\t{}\t{}", id, k, k.delta_name());
    }
    Ok(Outcome {
        text,
        json: json!({
            "n": x.n(),
            "count": tight.len(),
            "tight": tight.iter().map(|&id| json!({
                "id": id.0,
                "name": poly.facet(id).kind().to_string(),
            })).collect::<Vec<_>>(),
        }),
        code: 0,
    })
}

fn adjacent(u: &MetricVector, v: &MetricVector) -> Result<Outcome, Failure> {
    if u.n() != v.n() {
        return Err(usage("vertices come from different n"));
    }
    let poly = MetricPolytope::new(u.n())?;
    for x in [u, v] {
        if let Some(out) = not_a_vertex(&poly, x)? {
            return Ok(out);
        }
    }
    let adj = poly.are_adjacent(u, v)?;
    Ok(Outcome {
        text: format!("adjacent: {}\n", yes_no(adj)),
        json: json!({ "adjacent": adj }),
        code: if adj { 0 } else { 1 },
    })
}

fn summarize(poly: &MetricPolytope, vs: &VertexSet) -> Result<(String, Value, bool), Failure> {
    let graph = metric_polytope::build_graph(poly, vs)?;
    let diam = diameter(&graph);
    let dom = check_domination(poly, vs)?;
    let conn = check_fractional_connectivity(&graph);
    let orbits = if vs.n() <= MAX_ORBIT_NODES {
        Some(metric_polytope::orbit_summary(vs)?)
    } else {
        None
    };

    let diam_text = match &diam {
        Ok(d) => format!("diameter {d}"),
        Err(e) => e.to_string(),
    };
    let mut text = format!(
        "{} vertices ({} cuts), {}, domination {}\n",
        vs.len(),
        vs.cut_count(),
        diam_text,
        if dom.holds() { "holds" } else { "fails" }
    );
    let _ = writeln!(text, "edges: {}", graph.edge_count());
    let _ = writeln!(text, "{dom}");
    for v in &dom.violators {
        let _ = writeln!(text, "  violator: {}", v.coords_line());
    }
    let _ = writeln!(text, "{conn}");
    match &orbits {
        Some(o) => {
            let _ = writeln!(text, "orbits: {o}");
        }
        None => {
            let _ = writeln!(text, "orbits: skipped (n > {MAX_ORBIT_NODES})");
        }
    }
    let json = json!({
        "n": vs.n(),
        "vertices": vs.len(),
        "cuts": vs.cut_count(),
        "fractional": vs.len() - vs.cut_count(),
        "edges": graph.edge_count(),
        "diameter": diam.as_ref().ok(),
        "domination_holds": dom.holds(),
        "domination_violators": dom.violators.iter().map(coords_json).collect::<Vec<_>>(),
        "fractional_connectivity": conn.verdict(),
        "fractional_components": conn.component_sizes,
        "orbits": orbits.as_ref().map(|o| o.orbits.iter().map(|info| json!({
            "representative": coords_json(&info.representative),
            "size": info.size,
        })).collect::<Vec<_>>()),
    });
    Ok((text, json, dom.holds()))
}

fn enumerate(n: usize, output: Option<PathBuf>, allow_long: bool) -> Result<Outcome, Failure> {
    let vs = enumeration::enumerate_vertices_with(n, EnumerationOptions { allow_long })?;
    let poly = MetricPolytope::new(n)?;
    let path = output.unwrap_or_else(|| PathBuf::from(format!("m{n}-vertices.txt")));
    std::fs::write(&path, vs.to_file())
        .map_err(|e| Failure { code: 1, message: format!("cannot write {}: {e}", path.display()) })?;
    let (mut text, mut json, _) = summarize(&poly, &vs)?;
    let _ = writeln!(text, "wrote {}", path.display());
    if let Value::Object(map) = &mut json {
        map.insert("output".into(), json!(path.display().to_string()));
    }
    Ok(Outcome { text, json, code: 0 })
}

fn load_set(input: &SetInput) -> Result<(MetricPolytope, VertexSet), Failure> {
    match (&input.file, input.n) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let (n, _) = enumeration::parse_vertex_list(&text)?;
            let poly = MetricPolytope::new(n)?;
            let vs = VertexSet::parse(&poly, &text)?;
            Ok((poly, vs))
        }
        (None, Some(n)) => {
            let vs = metric_polytope::enumerate_vertices(n)?;
            Ok((MetricPolytope::new(n)?, vs))
        }
        _ => Err(usage("give a vertex set file or --n N")),
    }
}

fn diameter_cmd(input: &SetInput) -> Result<Outcome, Failure> {
    let (poly, vs) = load_set(input)?;
    let graph = metric_polytope::build_graph(&poly, &vs)?;
    let d = diameter(&graph)?;
    Ok(Outcome {
        text: format!("diameter: {d}\n"),
        json: json!({ "n": vs.n(), "vertices": vs.len(), "edges": graph.edge_count(), "diameter": d }),
        code: 0,
    })
}

fn canon(x: &MetricVector) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(x.n())?;
    if let Some((id, slack)) = poly.violated(x)? {
        return Err(Error::Infeasible {
            facet: poly.facet(id).kind().to_string(),
            slack: slack.to_string(),
        }
        .into());
    }
    let c = symmetry::canonical_form(x)?;
    let size = if x.n() <= MAX_ORBIT_NODES {
        Some(symmetry::orbit(x)?.len())
    } else {
        None
    };
    let mut text = format!("canonical: {}\n", c.coords_line());
    match size {
        Some(s) => {
            let _ = writeln!(text, "orbit size: {s}");
        }
        None => {
            let _ = writeln!(text, "orbit size: not computed (n > {MAX_ORBIT_NODES})");
        }
    }
    let _ = writeln!(text, "group order: {}", symmetry::group_order(x.n()));
    Ok(Outcome {
        text,
        json: json!({
            "n": x.n(),
            "canonical": coords_json(&c),
            "orbit_size": size,
            "group_order": symmetry::group_order(x.n()).to_string(),
        }),
        code: 0,
    })
}

fn check_lp(x: &MetricVector) -> Result<Outcome, Failure> {
    let poly = MetricPolytope::new(x.n())?;
    if let Some(out) = not_a_vertex(&poly, x)? {
        return Ok(out);
    }
    let cuts = cone::adjacent_cuts(&poly, x)?;
    let holds = !cuts.is_empty();
    let mut text = format!(
        "cuts tested: {}\nadjacent cuts: {}\n",
        CutSet::all(x.n())?.len(),
        cuts.len()
    );
    for s in &cuts {
        let _ = writeln!(text, "  {s}");
    }
    let _ = writeln!(text, "cut-adjacent: {}", verdict(holds));
    Ok(Outcome {
        text,
        json: json!({
            "n": x.n(),
            "cut_adjacent": holds,
            "adjacent_cuts": cuts.iter().map(|s| s.members()).collect::<Vec<_>>(),
        }),
        code: if holds { 0 } else { 1 },
    })
}

fn check_lp_set(path: &Path) -> Result<Outcome, Failure> {
    let (poly, vs) = load_set(&SetInput {
        file: Some(path.to_path_buf()),
        n: None,
    })?;
    let dom = check_domination(&poly, &vs)?;
    let mut text = format!("{dom}\n");
    for v in &dom.violators {
        let _ = writeln!(text, "  violator: {}", v.coords_line());
    }
    Ok(Outcome {
        text,
        json: json!({
            "n": vs.n(),
            "fractional": dom.fractional,
            "holds": dom.holds(),
            "violators": dom.violators.iter().map(coords_json).collect::<Vec<_>>(),
        }),
        code: if dom.holds() { 0 } else { 1 },
    })
}
