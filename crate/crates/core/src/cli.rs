//! Command-line front door: file-based workflows over the library with
//! deterministic, fingerprinted outputs.
//!
//! Exit codes: 0 success (negative mathematical verdicts included), 2 invalid
//! input, 3 resource cap exceeded, 4 internal cross-validation failure.

use crate::betti::{hochster_betti_table, poincare_duality_check, BettiOptions};
use crate::building::{two_truncated_cube_certificate, BuildingSet, CubeCertificate};
use crate::canon::are_isomorphic;
use crate::census::{enumerate_2spheres, enumerate_graphs, scan_spheres_for_massey};
use crate::complex::SimplicialComplex;
use crate::error::{internal, invalid, Result};
use crate::graph::Graph;
use crate::homology::{reduced_cohomology_under, CoefficientChoice};
use crate::io::{BuildingSetFile, ComplexFile, GraphFile, LabeledComplexFile, OutputMeta};
use crate::koszul::{parse_cochain, Koszul};
use crate::massey::{canonical_pcube_classes, higher_massey, triple_massey};
use crate::nerve::{nerve_of_nestohedron, nerve_via_truncations, pcube_nerve, LabeledComplex};
use crate::obstruction::{
    cached_obstruction_catalog, derive_obstruction_catalog, derived_catalog_note,
    detect_obstruction, direct_triple_search, ObstructionCatalog,
};
use crate::subset::Subset;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "macx", version = crate::VERSION)]
#[command(about = "Exact toolkit for moment-angle complexes: nerves of nestohedra, \
bigraded Betti numbers, Koszul cohomology, Massey products")]
pub struct Cli {
    /// Worker threads (default: MACX_THREADS, then 1). Outputs never depend
    /// on it; the flag exists for compatibility.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the nerve complex of a polytope, with facet labels.
    Nerve(NerveArgs),
    /// Bigraded Betti numbers of the moment-angle complex.
    Betti(BettiArgs),
    /// Reduced cohomology of one induced subcomplex K_J.
    Cohomology(CohomologyArgs),
    /// Massey products from explicit classes or the canonical instances.
    Massey(MasseyArgs),
    /// Search a complex for an induced obstruction graph.
    Obstructions(ObstructionsArgs),
    /// Enumerate 2-spheres or graphs up to isomorphism; derive the catalog.
    Census(CensusArgs),
    /// Present a building set as a 2-truncated cube, or refute flagness.
    #[command(name = "certify-2tc")]
    Certify2tc(CertifyArgs),
    /// Special subgraph statistics of a graph.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Route {
    /// Nested-set complex of the building set.
    NestedSets,
    /// Stellar subdivisions along a truncation sequence.
    Truncations,
}

#[derive(Args, Debug)]
struct NerveArgs {
    /// Graph file; builds the graph-associahedron nerve.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Building set file; builds the nestohedron nerve.
    #[arg(long)]
    building_set: Option<PathBuf>,
    /// 2-truncated cube of dimension n.
    #[arg(long)]
    pcube: Option<usize>,
    /// Permutohedron of dimension n.
    #[arg(long)]
    permutohedron: Option<usize>,
    /// Associahedron of dimension n.
    #[arg(long)]
    associahedron: Option<usize>,
    /// Cyclohedron of dimension n.
    #[arg(long)]
    cyclohedron: Option<usize>,
    /// Stellahedron of dimension n.
    #[arg(long)]
    stellahedron: Option<usize>,
    /// Construction path (default: nested-sets; truncations for --pcube).
    #[arg(long, value_enum)]
    via: Option<Route>,
    /// Build through both paths and require isomorphic results.
    #[arg(long)]
    check_both: bool,
}

#[derive(Args, Debug)]
struct BettiArgs {
    /// Complex file.
    #[arg(long)]
    complex: PathBuf,
    /// rational | f2 | fp:<p> | int.
    #[arg(long, default_value = "rational")]
    coefficients: String,
    /// Only the strip entries, by component counting.
    #[arg(long)]
    strip: bool,
    /// Record the multigraded refinement per subset.
    #[arg(long)]
    multigraded: bool,
    /// Override the vertex cap.
    #[arg(long)]
    cap: Option<usize>,
    /// Append the Poincaré duality symmetry report.
    #[arg(long)]
    check_duality: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
struct CohomologyArgs {
    /// Complex file.
    #[arg(long)]
    complex: PathBuf,
    /// Vertex subset J, comma separated (e.g. 1,3,4), or "full".
    #[arg(long)]
    subset: String,
    /// rational | f2 | fp:<p> | int.
    #[arg(long, default_value = "int")]
    coefficients: String,
}

#[derive(Args, Debug)]
struct MasseyArgs {
    /// Complex file (not with --canonical-pcube).
    #[arg(long)]
    complex: Option<PathBuf>,
    /// A cocycle, e.g. "v1 u4" or "+ v1 u2 u3 - v2 u1 u3"; repeat per slot.
    #[arg(long = "class")]
    classes: Vec<String>,
    /// Expected order; checked against the number of classes.
    #[arg(long)]
    order: Option<usize>,
    /// Run the canonical n-product on the 2-truncated cube nerve end to end.
    #[arg(long)]
    canonical_pcube: Option<usize>,
    /// rational | f2 | fp:<p>.
    #[arg(long, default_value = "rational")]
    coefficients: String,
}

#[derive(Args, Debug)]
struct ObstructionsArgs {
    /// Complex file to search.
    #[arg(long)]
    complex: PathBuf,
    /// Catalog file; derived in process when absent.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Also run the direct triple-product oracle on the complex.
    #[arg(long)]
    direct: bool,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Enumerate the simplicial 2-spheres on v vertices (4..=8).
    #[arg(long)]
    spheres: Option<usize>,
    /// Enumerate the graphs on v vertices (1..=6).
    #[arg(long)]
    graphs: Option<usize>,
    /// Derive the six-vertex obstruction catalog by the triple-product oracle.
    #[arg(long)]
    derive_obstructions: bool,
    /// Annotate each sphere with flagness and Massey verdicts (--spheres).
    #[arg(long)]
    scan_massey: bool,
    /// Also write one file per object into this directory.
    #[arg(long)]
    emit_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Building set file; must be connected.
    #[arg(long)]
    building_set: PathBuf,
    /// Search state cap.
    #[arg(long, default_value_t = 1 << 20)]
    state_cap: usize,
}

#[derive(Args, Debug)]
struct StatsArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
}

/// Parses the process arguments, runs the command, prints the result, and
/// returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let to_stdout = cli.output.is_none();
    match execute(cli) {
        Ok(text) => {
            if to_stdout {
                print!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one parsed command and returns its output text (also written to
/// `--output` when given).
pub fn execute(cli: Cli) -> Result<String> {
    resolve_threads(cli.threads)?;
    let text = match cli.command {
        Command::Nerve(args) => cmd_nerve(args)?,
        Command::Betti(args) => cmd_betti(args)?,
        Command::Cohomology(args) => cmd_cohomology(args)?,
        Command::Massey(args) => cmd_massey(args)?,
        Command::Obstructions(args) => cmd_obstructions(args)?,
        Command::Census(args) => cmd_census(args)?,
        Command::Certify2tc(args) => cmd_certify(args)?,
        Command::Stats(args) => cmd_stats(args)?,
    };
    if let Some(path) = &cli.output {
        std::fs::write(path, &text)?;
    }
    Ok(text)
}

/// The computation is single-threaded and canonical; the count is validated
/// and otherwise ignored.
fn resolve_threads(flag: Option<usize>) -> Result<usize> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("MACX_THREADS") {
            Ok(s) => s
                .parse()
                .map_err(|_| invalid(format!("MACX_THREADS is not a number: `{s}`")))?,
            Err(_) => 1,
        },
    };
    if n == 0 {
        return Err(invalid("thread count must be positive"));
    }
    Ok(n)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    read_json::<ComplexFile>(path)?.into_complex()
}

fn read_graph(path: &Path) -> Result<Graph> {
    read_json::<GraphFile>(path)?.into_graph()
}

fn read_building_set(path: &Path) -> Result<BuildingSet> {
    read_json::<BuildingSetFile>(path)?.into_building_set()
}

fn pretty(value: serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("serializable value");
    text.push('\n');
    text
}

/// Inserts the standard header into a JSON object.
fn with_meta(mut value: serde_json::Value, meta: OutputMeta) -> serde_json::Value {
    value["meta"] = json!({
        "tool_version": meta.tool_version,
        "input_fingerprint": meta.input_fingerprint,
    });
    value
}

/// Header for outputs whose input is a parameter set rather than a complex.
fn param_meta(stamp: &str) -> OutputMeta {
    OutputMeta {
        tool_version: crate::VERSION.to_string(),
        input_fingerprint: stamp.to_string(),
    }
}

fn parse_coefficients(s: &str) -> Result<CoefficientChoice> {
    CoefficientChoice::parse(s)
}

/// What the nerve subcommand was asked to build.
enum NerveTarget {
    BuildingSet(BuildingSet),
    Pcube(usize),
}

fn nerve_target(args: &NerveArgs) -> Result<(String, NerveTarget)> {
    let mut picked: Vec<(String, NerveTarget)> = Vec::new();
    if let Some(path) = &args.graph {
        let g = read_graph(path)?;
        picked.push(("graph".to_string(), NerveTarget::BuildingSet(BuildingSet::graphical(&g))));
    }
    if let Some(path) = &args.building_set {
        picked.push((
            "building-set".to_string(),
            NerveTarget::BuildingSet(read_building_set(path)?),
        ));
    }
    if let Some(n) = args.pcube {
        picked.push((format!("pcube {n}"), NerveTarget::Pcube(n)));
    }
    let families: [(&str, Option<usize>, fn(usize) -> Graph, usize); 4] = [
        ("permutohedron", args.permutohedron, Graph::complete, 1),
        ("associahedron", args.associahedron, Graph::chain, 1),
        ("cyclohedron", args.cyclohedron, Graph::cycle, 2),
        ("stellahedron", args.stellahedron, Graph::star, 1),
    ];
    for (name, dim, make, least) in families {
        if let Some(n) = dim {
            if n < least {
                return Err(invalid(format!("the {name} family starts at dimension {least}")));
            }
            picked.push((
                format!("{name} {n}"),
                NerveTarget::BuildingSet(BuildingSet::graphical(&make(n + 1))),
            ));
        }
    }
    if picked.len() != 1 {
        return Err(invalid(
            "pick exactly one of --graph, --building-set, --pcube, --permutohedron, \
             --associahedron, --cyclohedron, --stellahedron",
        ));
    }
    Ok(picked.remove(0))
}

fn build_nerve(target: &NerveTarget, route: Route) -> Result<LabeledComplex> {
    match (target, route) {
        (NerveTarget::BuildingSet(b), Route::NestedSets) => nerve_of_nestohedron(b),
        (NerveTarget::BuildingSet(b), Route::Truncations) => {
            nerve_via_truncations(&BuildingSet::simplex(b.ground())?, b)
        }
        (NerveTarget::Pcube(n), Route::Truncations) => pcube_nerve(*n),
        (NerveTarget::Pcube(n), Route::NestedSets) => {
            if *n >= 4 {
                return Err(invalid(format!(
                    "the union-closed building set of the dimension-{n} 2-truncated cube \
                     gains members beyond the cube and its cuts, so its nested-set complex \
                     is a different polytope; use --via truncations"
                )));
            }
            nerve_of_nestohedron(&BuildingSet::pcube_closed(*n)?)
        }
    }
}

fn cmd_nerve(args: NerveArgs) -> Result<String> {
    let (source, target) = nerve_target(&args)?;
    let default_route = match target {
        NerveTarget::Pcube(_) => Route::Truncations,
        NerveTarget::BuildingSet(_) => Route::NestedSets,
    };
    let route = args.via.unwrap_or(default_route);
    let nerve = build_nerve(&target, route)?;
    let mut cross_validated = false;
    if args.check_both {
        let other_route = match route {
            Route::NestedSets => Route::Truncations,
            Route::Truncations => Route::NestedSets,
        };
        let other = build_nerve(&target, other_route)?;
        if !are_isomorphic(&nerve.complex, &other.complex) {
            return Err(internal(format!(
                "construction paths disagree for {source}: the two nerves are not isomorphic"
            )));
        }
        cross_validated = true;
    }
    let file = LabeledComplexFile::from_labeled(&nerve);
    let route_name = match route {
        Route::NestedSets => "nested-sets",
        Route::Truncations => "truncations",
    };
    let value = json!({
        "source": source,
        "route": route_name,
        "cross_validated": cross_validated,
        "m": file.m,
        "facets": file.facets,
        "labels": file.labels,
    });
    Ok(pretty(with_meta(value, OutputMeta::new(&nerve.complex))))
}

fn cmd_betti(args: BettiArgs) -> Result<String> {
    let k = read_complex(&args.complex)?;
    let coeff = parse_coefficients(&args.coefficients)?;
    let options = BettiOptions {
        strip_only: args.strip,
        cap: args.cap,
        multigraded: args.multigraded,
    };
    let table = hochster_betti_table(&k, coeff, options)?;
    let duality = if args.check_duality {
        Some(poincare_duality_check(&k, coeff)?)
    } else {
        None
    };
    match args.format {
        Format::Json => {
            let mut value = table.to_json();
            if let Some(report) = &duality {
                value["duality"] = serde_json::to_value(report)?;
            }
            Ok(pretty(with_meta(value, OutputMeta::new(&k))))
        }
        Format::Tsv => {
            let mut out = format!(
                "# macx {}\n# fingerprint\t{}\n{}",
                crate::VERSION,
                table.fingerprint(),
                table.to_tsv()
            );
            if let Some(report) = &duality {
                out.push_str(&format!(
                    "duality\tsymmetric\t{}\nduality\tmanifold_dim\t{}\n",
                    report.symmetric, report.manifold_dim
                ));
                if let Some((p, a, b)) = report.first_violation {
                    out.push_str(&format!("duality\tfirst_violation\t{p}\t{a}\t{b}\n"));
                }
            }
            Ok(out)
        }
    }
}

fn cmd_cohomology(args: CohomologyArgs) -> Result<String> {
    let k = read_complex(&args.complex)?;
    let coeff = parse_coefficients(&args.coefficients)?;
    let j = if args.subset == "full" {
        Subset::full(k.m())
    } else {
        let vertices: Vec<usize> = args
            .subset
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad vertex `{t}` in --subset")))
            })
            .collect::<Result<_>>()?;
        Subset::try_from_vertices(&vertices, k.m())?
    };
    let summary = reduced_cohomology_under(&k, j, coeff);
    let rows: Vec<_> = summary
        .by_degree
        .iter()
        .filter(|(_, s)| s.rank > 0 || !s.torsion.is_empty())
        .map(|(&d, s)| {
            let torsion: Vec<String> = s.torsion.iter().map(|t| t.to_string()).collect();
            if torsion.is_empty() {
                json!({"degree": d, "rank": s.rank})
            } else {
                json!({"degree": d, "rank": s.rank, "torsion": torsion})
            }
        })
        .collect();
    let value = json!({
        "subset": j.to_vec(),
        "coefficients": coeff.label(),
        "reduced_cohomology": rows,
        "total_rank": summary.total_rank(),
    });
    Ok(pretty(with_meta(value, OutputMeta::new(&k))))
}

fn cmd_massey(args: MasseyArgs) -> Result<String> {
    let field = parse_coefficients(&args.coefficients)?.field();
    let (alg, classes) = match args.canonical_pcube {
        Some(n) => {
            if args.complex.is_some() || !args.classes.is_empty() {
                return Err(invalid("--canonical-pcube replaces --complex and --class"));
            }
            canonical_pcube_classes(n, field)?
        }
        None => {
            let path = args
                .complex
                .as_ref()
                .ok_or_else(|| invalid("--complex is required without --canonical-pcube"))?;
            let k = read_complex(path)?;
            if args.classes.len() < 2 {
                return Err(invalid("a Massey product needs at least two --class inputs"));
            }
            let alg = Koszul::new(k, field);
            let classes = args
                .classes
                .iter()
                .map(|text| parse_cochain(text, alg.complex(), field))
                .collect::<Result<Vec<_>>>()?;
            (alg, classes)
        }
    };
    if let Some(order) = args.order {
        if order != classes.len() {
            return Err(invalid(format!(
                "--order {order} does not match the {} classes given",
                classes.len()
            )));
        }
    }
    let verdict = if classes.len() == 3 {
        triple_massey(&alg, &classes[0], &classes[1], &classes[2])?
    } else {
        higher_massey(&alg, &classes)?
    };
    let value = verdict.to_json();
    Ok(pretty(with_meta(value, OutputMeta::new(alg.complex()))))
}

fn load_catalog(path: &Path) -> Result<ObstructionCatalog> {
    let value: serde_json::Value = read_json(path)?;
    let rows = value["graphs"]
        .as_array()
        .ok_or_else(|| invalid("catalog file has no `graphs` array"))?;
    let mut graphs = Vec::with_capacity(rows.len());
    for row in rows {
        let edges = row["edges"]
            .as_array()
            .ok_or_else(|| invalid("catalog graph has no `edges` array"))?;
        let pairs = edges
            .iter()
            .map(|e| {
                let pair = e.as_array().filter(|p| p.len() == 2)?;
                Some((pair[0].as_u64()? as usize, pair[1].as_u64()? as usize))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| invalid("catalog edges must be pairs of vertex numbers"))?;
        graphs.push(Graph::new(crate::obstruction::OBSTRUCTION_VERTEX_COUNT, &pairs)?);
    }
    ObstructionCatalog::from_graphs(graphs)
}

fn cmd_obstructions(args: ObstructionsArgs) -> Result<String> {
    let k = read_complex(&args.complex)?;
    let loaded;
    let catalog = match &args.catalog {
        Some(path) => {
            loaded = load_catalog(path)?;
            &loaded
        }
        None => cached_obstruction_catalog()?,
    };
    let witness = detect_obstruction(&k, catalog);
    let mut value = json!({
        "catalog_count": catalog.len(),
        "detected": witness.is_some(),
        "witness": witness.map(|w| w.to_vec()),
    });
    if let Some(note) = derived_catalog_note(catalog) {
        value["catalog_note"] = json!(note);
    }
    if args.direct {
        value["direct"] = json!(direct_triple_search(&k, crate::linalg::FieldSpec::Rational)?);
    }
    Ok(pretty(with_meta(value, OutputMeta::new(&k))))
}

fn emit_objects(dir: &Path, stem: &str, files: Vec<(String, String)>) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, text) in files {
        std::fs::write(dir.join(format!("{stem}_{name}.json")), text)?;
    }
    Ok(())
}

fn cmd_census(args: CensusArgs) -> Result<String> {
    let modes = usize::from(args.spheres.is_some())
        + usize::from(args.graphs.is_some())
        + usize::from(args.derive_obstructions);
    if modes != 1 {
        return Err(invalid(
            "pick exactly one of --spheres, --graphs, --derive-obstructions",
        ));
    }
    if args.scan_massey && args.spheres.is_none() {
        return Err(invalid("--scan-massey only applies to --spheres"));
    }

    if let Some(v) = args.spheres {
        let census = enumerate_2spheres(v)?;
        if let Some(dir) = &args.emit_dir {
            let files = census
                .spheres
                .iter()
                .enumerate()
                .map(|(i, k)| {
                    let file = ComplexFile::from_complex(k);
                    (format!("{v}_{:02}", i + 1), pretty(serde_json::json!({
                        "m": file.m,
                        "facets": file.facets,
                    })))
                })
                .collect();
            emit_objects(dir, "sphere", files)?;
        }
        let value = if args.scan_massey {
            let catalog = cached_obstruction_catalog()?;
            scan_spheres_for_massey(census, catalog)?.to_json()
        } else {
            census.to_json()
        };
        return Ok(pretty(with_meta(value, param_meta(&format!("census:spheres:{v}")))));
    }

    if let Some(v) = args.graphs {
        let census = enumerate_graphs(v)?;
        if let Some(dir) = &args.emit_dir {
            let files = census
                .graphs
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let file = GraphFile::from_graph(g);
                    (format!("{v}_{:03}", i + 1), pretty(serde_json::json!({
                        "n": file.n,
                        "edges": file.edges,
                    })))
                })
                .collect();
            emit_objects(dir, "graph", files)?;
        }
        return Ok(pretty(with_meta(
            census.to_json(),
            param_meta(&format!("census:graphs:{v}")),
        )));
    }

    let catalog = derive_obstruction_catalog()?;
    if let Some(note) = derived_catalog_note(&catalog) {
        eprintln!("note: {note}");
    }
    if let Some(dir) = &args.emit_dir {
        let files = catalog
            .graphs()
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let file = GraphFile::from_graph(g);
                (format!("{:02}", i + 1), pretty(serde_json::json!({
                    "n": file.n,
                    "edges": file.edges,
                })))
            })
            .collect();
        emit_objects(dir, "obstruction", files)?;
    }
    Ok(pretty(with_meta(
        catalog.to_json(),
        param_meta("census:derive-obstructions:6"),
    )))
}

fn cmd_certify(args: CertifyArgs) -> Result<String> {
    let b = read_building_set(&args.building_set)?;
    let certificate = two_truncated_cube_certificate(&b, args.state_cap)?;
    let nerve = nerve_of_nestohedron(&b)?;
    let body = match &certificate {
        CubeCertificate::Chain { base, steps } => json!({
            "kind": "chain",
            "base": base.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
            "steps": steps
                .iter()
                .map(|s| {
                    json!({
                        "added": s.added.to_vec(),
                        "part1": s.part1.to_vec(),
                        "part2": s.part2.to_vec(),
                    })
                })
                .collect::<Vec<_>>(),
        }),
        CubeCertificate::NotFlag { witness } => json!({
            "kind": "not-flag",
            "witness": witness.to_vec(),
        }),
    };
    let value = json!({
        "ground": b.ground(),
        "flag": matches!(certificate, CubeCertificate::Chain { .. }),
        "certificate": body,
    });
    Ok(pretty(with_meta(value, OutputMeta::new(&nerve.complex))))
}

fn cmd_stats(args: StatsArgs) -> Result<String> {
    let g = read_graph(&args.graph)?;
    let stats = g.special_subgraph_stats();
    let value = json!({
        "n": g.n(),
        "edges": g.edges().iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        "i_max": stats.i_max,
        "count": stats.count,
        "specials": stats.specials.iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
    });
    Ok(pretty(with_meta(value, OutputMeta::new(&g.to_complex()))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<String> {
        execute(Cli::parse_from(args))
    }

    fn write_file(dir: &Path, name: &str, text: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    #[test]
    fn nerve_families_have_the_advertised_sizes() {
        for (args, m) in [
            (vec!["macx", "nerve", "--pcube", "3"], 8),
            (vec!["macx", "nerve", "--associahedron", "3"], 9),
            (vec!["macx", "nerve", "--permutohedron", "3"], 14),
        ] {
            let out = run_args(&args).unwrap();
            let v: serde_json::Value = serde_json::from_str(&out).unwrap();
            assert_eq!(v["m"], json!(m), "{args:?}");
            assert_eq!(v["labels"].as_object().unwrap().len(), m as usize);
            assert_eq!(v["meta"]["tool_version"], json!(crate::VERSION));
        }
    }

    #[test]
    fn nerve_requires_exactly_one_source() {
        let err = run_args(&["macx", "nerve"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err =
            run_args(&["macx", "nerve", "--pcube", "3", "--associahedron", "2"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn nerve_check_both_validates_the_small_cube() {
        let out = run_args(&["macx", "nerve", "--pcube", "3", "--check-both"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["cross_validated"], json!(true));
    }

    #[test]
    fn nerve_nested_set_route_refuses_the_large_cube() {
        let err =
            run_args(&["macx", "nerve", "--pcube", "4", "--via", "nested-sets"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(run_args(&["macx", "nerve", "--pcube", "4"]).is_ok());
    }

    #[test]
    fn nerve_rejects_a_disconnected_building_set() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "b.json",
            r#"{"ground": 3, "sets": [[1, 2]]}"#,
        );
        let err = run_args(&["macx", "nerve", "--building-set", path.to_str().unwrap()])
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn betti_reports_the_square_in_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "square.json",
            r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#,
        );
        let p = path.to_str().unwrap();
        let tsv = run_args(&["macx", "betti", "--complex", p, "--check-duality"]).unwrap();
        assert!(tsv.starts_with(&format!("# macx {}\n# fingerprint\t", crate::VERSION)));
        assert!(tsv.contains("total\t1\t0\t0\t2\t0\t0\t1\n"));
        assert!(tsv.contains("duality\tsymmetric\ttrue\n"));
        let out = run_args(&["macx", "betti", "--complex", p, "--format", "json"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["total"], json!([1, 0, 0, 2, 0, 0, 1]));
        let again = run_args(&["macx", "betti", "--complex", p, "--format", "json"]).unwrap();
        assert_eq!(out, again, "byte-identical across runs");
    }

    #[test]
    fn betti_cap_exceeded_is_a_resource_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "edge.json",
            r#"{"m": 2, "facets": [[1, 2]]}"#,
        );
        let err = run_args(&[
            "macx", "betti", "--complex", path.to_str().unwrap(), "--cap", "1",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn cohomology_answers_a_subset_query() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "square.json",
            r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#,
        );
        let p = path.to_str().unwrap();
        let out = run_args(&["macx", "cohomology", "--complex", p, "--subset", "1,3"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["reduced_cohomology"], json!([{"degree": 0, "rank": 1}]));
        let full =
            run_args(&["macx", "cohomology", "--complex", p, "--subset", "full"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&full).unwrap();
        assert_eq!(v["reduced_cohomology"], json!([{"degree": 1, "rank": 1}]));
        let err = run_args(&["macx", "cohomology", "--complex", p, "--subset", "1,9"])
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn massey_canonical_pcube_3_is_nontrivial() {
        let out = run_args(&["macx", "massey", "--canonical-pcube", "3"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["defined"], json!(true));
        assert_eq!(v["contains_zero"], json!(false));
        assert!(v["certificate"].is_object());
    }

    #[test]
    fn massey_parses_classes_and_reports_verdicts() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "square.json",
            r#"{"m": 4, "facets": [[1, 2], [2, 3], [3, 4], [1, 4]]}"#,
        );
        let p = path.to_str().unwrap();
        let out = run_args(&[
            "macx", "massey", "--complex", p,
            "--class", "v1 u3", "--class", "v2 u4", "--class", "v1 u3",
            "--order", "3",
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], json!(3));
        let err = run_args(&[
            "macx", "massey", "--complex", p, "--class", "v1 w3", "--class", "v2 u4",
        ])
        .unwrap_err();
        assert_eq!(err.exit_code(), 2, "bad cochain syntax");
    }

    #[test]
    fn census_counts_and_emitted_files_match() {
        let dir = tempfile::tempdir().unwrap();
        let emit = dir.path().join("objects");
        let out = run_args(&[
            "macx", "census", "--spheres", "6",
            "--emit-dir", emit.to_str().unwrap(),
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], json!(2));
        assert_eq!(std::fs::read_dir(&emit).unwrap().count(), 2);
        let err = run_args(&["macx", "census", "--spheres", "9"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run_args(&["macx", "census"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn certify_separates_flag_from_non_flag() {
        let dir = tempfile::tempdir().unwrap();
        let flag = write_file(
            dir.path(),
            "flag.json",
            r#"{"ground": 3, "sets": [[1, 2], [1, 2, 3]]}"#,
        );
        let out =
            run_args(&["macx", "certify-2tc", "--building-set", flag.to_str().unwrap()])
                .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["flag"], json!(true));
        assert_eq!(v["certificate"]["kind"], json!("chain"));

        let simplex = write_file(
            dir.path(),
            "simplex.json",
            r#"{"ground": 3, "sets": [[1, 2, 3]]}"#,
        );
        let out = run_args(&[
            "macx", "certify-2tc", "--building-set", simplex.to_str().unwrap(),
        ])
        .unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["flag"], json!(false));
        assert_eq!(v["certificate"]["witness"], json!([1, 2, 3]));
    }

    #[test]
    fn stats_reports_the_chain_specials() {
        let dir = tempfile::tempdir().unwrap();
        let path = write_file(
            dir.path(),
            "chain.json",
            r#"{"n": 4, "edges": [[1, 2], [2, 3], [3, 4]]}"#,
        );
        let out = run_args(&["macx", "stats", "--graph", path.to_str().unwrap()]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["i_max"], json!(4));
        assert_eq!(v["specials"], json!([[1, 2], [2, 3], [3, 4]]));
    }

    #[test]
    fn output_flag_writes_the_same_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let dest = dir.path().join("out.json");
        let text = run_args(&[
            "macx", "nerve", "--pcube", "2", "--output", dest.to_str().unwrap(),
        ])
        .unwrap();
        assert_eq!(std::fs::read_to_string(&dest).unwrap(), text);
    }

    #[test]
    fn threads_flag_is_validated_but_inert() {
        let a = run_args(&["macx", "nerve", "--pcube", "2", "--threads", "4"]).unwrap();
        let b = run_args(&["macx", "nerve", "--pcube", "2", "--threads", "1"]).unwrap();
        assert_eq!(a, b);
        let err = run_args(&["macx", "nerve", "--pcube", "2", "--threads", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
