mod args;

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, ExploreArgs, Family, MovesArgs, PathKind, SampleArgs};
use lattice_moves::constructions::{
    cartesian_product, corner_simplex, empty_simplex, flatten_pentagon, make_strongly_flat, pn_polygon,
    saturating_polytope, shear_to_oblique, simplex_to_corner_path,
};
use lattice_moves::graph::{
    bfs_closure, bfs_distance, build_graph, connected_components, enumerate_polytopes, GraphCache, MoveGraph,
    VertexFilter, ENUMERATION_BUDGET,
};
use lattice_moves::kernel::{points_from_json, polytope_from_json, polytope_to_json};
use lattice_moves::moves::{deletable_vertices, insertable_cells_2d, insertable_points};
use lattice_moves::sampler::{run_chain, tv_distance_to_uniform};
use lattice_moves::verify::run_suite;
use lattice_moves::{convex_hull, Error, MoveTrace, Polytope};

/// Failure with its exit status.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::IllegalMove(_) | Error::Overflow => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_polytope(path: &Path, canonicalize: bool) -> Result<Polytope, Failure> {
    polytope_from_json(&read_input(path)?, canonicalize)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str) -> Outcome {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(true)
}

fn emit_trace(t: &MoveTrace) -> Outcome {
    emit(&serde_json::to_string(t).expect("trace serializes"))
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Hull { input } => {
            let (points, d) = points_from_json(&read_input(&input)?)?;
            if !(2..=8).contains(&d) {
                return Err(Failure::Usage(format!("field `dim`: {d} outside the supported range 2..=8")));
            }
            emit(&polytope_to_json(&convex_hull(&points, d)?))
        }
        Command::Moves(a) => moves(a),
        Command::Construct { family } => construct(family),
        Command::Path { kind } => path(kind),
        Command::Explore(a) => explore(a),
        Command::Sample(a) => sample(a),
        Command::Verify { suite, quiet } => {
            let progress = |line: &str| {
                if !quiet {
                    eprintln!("{line}");
                }
            };
            let report = run_suite(&suite.name(), &progress)?;
            if !quiet {
                eprint!("{}", report.to_table());
            }
            emit(&report.to_json())?;
            Ok(report.passed())
        }
    }
}

fn moves(a: MovesArgs) -> Outcome {
    let p = read_polytope(&a.input, a.opts.canonicalize)?;
    let all = !(a.list_insertable || a.list_deletable || a.cells2d);
    let mut out = serde_json::Map::new();
    if a.list_deletable || all {
        out.insert("deletable".into(), json!(deletable_vertices(&p)));
    }
    if a.list_insertable || (all && a.k.is_some()) {
        let k = a
            .k
            .ok_or_else(|| Failure::Usage("--list-insertable needs --box".into()))?;
        out.insert("insertable".into(), json!(insertable_points(&p, k)?));
    }
    if a.cells2d {
        let cells: Vec<Value> = insertable_cells_2d(&p)?.iter().map(|c| c.to_json()).collect();
        out.insert("cells".into(), Value::Array(cells));
    }
    emit(&Value::Object(out).to_string())
}

fn construct(family: Family) -> Outcome {
    let p = match family {
        Family::Corner { dim, k } => corner_simplex(dim, k)?,
        Family::Pn { n } => pn_polygon(n)?,
        Family::EmptySimplex { k } => empty_simplex(k)?,
        Family::Saturating { dim, k } => saturating_polytope(dim, k)?,
        Family::Product { a, b, opts } => cartesian_product(
            &read_polytope(&a, opts.canonicalize)?,
            &read_polytope(&b, opts.canonicalize)?,
        )?,
    };
    emit(&polytope_to_json(&p))
}

fn path(kind: PathKind) -> Outcome {
    match kind {
        PathKind::SimplexToCorner { simplex, k, opts } => {
            let s = read_polytope(&simplex, opts.canonicalize)?;
            emit_trace(&simplex_to_corner_path(&s, k)?)
        }
        PathKind::PentagonPipeline { pentagon, opts } => {
            let p = read_polytope(&pentagon, opts.canonicalize)?;
            let mut trace = flatten_pentagon(&p)?;
            let strong = make_strongly_flat(&trace.end()?)?;
            trace.extend(&strong);
            trace.extend(&shear_to_oblique(&strong.end()?)?);
            emit_trace(&trace)
        }
    }
}

fn build_explored(a: &ExploreArgs, filter: Option<&VertexFilter>) -> Result<MoveGraph, Failure> {
    let build = || -> lattice_moves::Result<MoveGraph> {
        match enumerate_polytopes(a.dim, a.k, filter) {
            Ok(nodes) => build_graph(&nodes, a.k, filter),
            Err(Error::TooLarge(_)) => {
                eprintln!(
                    "note: [0,{}]^{} exceeds the {ENUMERATION_BUDGET}-point enumeration budget; \
                     exploring the component of the corner simplex",
                    a.k, a.dim
                );
                bfs_closure(&corner_simplex(a.dim, a.k)?, a.k, filter)
            }
            Err(e) => Err(e),
        }
    };
    Ok(match &a.cache {
        Some(dir) => GraphCache::new(dir).load_or_build(a.dim, a.k, filter, build)?,
        None => build()?,
    })
}

fn explore(a: ExploreArgs) -> Outcome {
    let filter: Option<VertexFilter> = a.vertices.as_ref().map(|v| v.iter().copied().collect());
    let g = build_explored(&a, filter.as_ref())?;
    if let Some(path) = &a.out {
        g.write_jsonl(path)?;
    }
    if let Some(path) = &a.dot {
        g.write_dot(path)?;
    }
    if a.components {
        let n = connected_components(&g).len();
        let plural = |n: usize, w: &str| format!("{n} {w}{}", if n == 1 { "" } else { "s" });
        emit(&format!("{}, {}", plural(n, "component"), plural(g.num_nodes(), "node")))?;
    }
    if let Some(pair) = &a.distance {
        let p = read_polytope(&pair[0], a.opts.canonicalize)?;
        let q = read_polytope(&pair[1], a.opts.canonicalize)?;
        match bfs_distance(&g, &p, &q)? {
            Some(d) => emit(&d.to_string())?,
            None => emit("unreachable")?,
        };
    }
    if !a.components && a.distance.is_none() {
        emit(
            &json!({
                "dim": g.dim(),
                "box": g.box_size(),
                "nodes": g.num_nodes(),
                "edges": g.num_edges(),
                "max_degree": g.max_degree(),
                "vertex_counts": g.vertex_count_census(),
            })
            .to_string(),
        )?;
    }
    Ok(true)
}

fn sample(a: SampleArgs) -> Outcome {
    let h = run_chain(a.dim, a.k, a.steps, a.burnin, a.seed)?;
    if let Some(path) = &a.report {
        fs::write(path, h.to_csv())?;
    }
    let support = enumerate_polytopes(a.dim, a.k, None).ok().map(|all| all.len());
    let tv = support
        .map(|n| tv_distance_to_uniform(&h, n))
        .transpose()?
        .map(|tv| tv.to_string());
    emit(
        &json!({
            "dim": a.dim,
            "box": a.k,
            "steps": a.steps,
            "burnin": a.burnin,
            "seed": a.seed,
            "total": h.total(),
            "distinct_states": h.distinct(),
            "support_size": support,
            "tv_to_uniform": tv,
        })
        .to_string(),
    )
}
