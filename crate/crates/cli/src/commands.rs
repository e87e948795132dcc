use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use svdyn::entropy::{theorem_c_study, EntropyMethod, EntropyReport};
use svdyn::oracle::oracle_check as compare_with_oracle;
use svdyn::recurrence::{condense, final_classes, final_recurrent_set, recurrent_set};
use svdyn::shadowing::{theorem_a_certificate, ShadowError, ToralAuto};
use svdyn::spectral::decompose as cyclic_decomposition;
use svdyn::svmap::BINARY_MAGIC;
use svdyn::{explicit_graph, fatten, BaseMap, CellSpace, TransitionGraph};

use crate::error::CliError;
use crate::output::{document, emit, write_atomic, InputDigest};
use crate::{AnosovArgs, BuildArgs, DecomposeArgs, EntropyArgs, Method, OracleArgs};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildConfig {
    pub space: CellSpace,
    pub map: BaseMap,
    pub epsilon: f64,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn load_graph(path: &Path) -> Result<(TransitionGraph, InputDigest), CliError> {
    let bytes = read(path)?;
    let parsed = if bytes.starts_with(BINARY_MAGIC) {
        TransitionGraph::from_binary(&bytes)
    } else {
        let text = std::str::from_utf8(&bytes)
            .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
        TransitionGraph::from_json(text)
    };
    let graph = parsed.map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    Ok((graph, InputDigest::of("graph", &bytes)))
}

fn load_config(path: &Path) -> Result<(BuildConfig, InputDigest), CliError> {
    let bytes = read(path)?;
    let config: BuildConfig = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))?;
    Ok((config, InputDigest::of("config", &bytes)))
}

#[derive(Serialize)]
struct BuildSummary {
    cells: usize,
    edges: usize,
    format: &'static str,
    sha256: String,
}

pub fn build(args: &BuildArgs) -> Result<(), CliError> {
    let (config, digest) = load_config(&args.config)?;
    let graph = fatten(&config.space, &config.map, config.epsilon)
        .map_err(|e| CliError::Domain(e.into()))?;
    let bytes = if args.binary {
        graph.to_binary()
    } else {
        let mut text = graph.to_json();
        text.push('\n');
        text.into_bytes()
    };
    write_atomic(&args.out, &bytes)?;
    let summary = BuildSummary {
        cells: graph.len(),
        edges: graph.edge_count(),
        format: if args.binary { "binary" } else { "json" },
        sha256: crate::output::sha256_hex(&bytes),
    };
    let text = document("build", &config, &[digest], serde_json::to_string(&summary).expect("serializes"));
    emit(None, text.as_bytes())
}

#[derive(Serialize)]
struct DecomposeConfig {
    full: bool,
}

pub fn decompose(args: &DecomposeArgs) -> Result<(), CliError> {
    let (graph, digest) = load_graph(&args.graph)?;
    let condensation = condense(&graph);
    let classes = final_classes(&graph, &condensation)?;
    let mut result = serde_json::json!({
        "omega": recurrent_set(&condensation).to_vec(),
        "omega_final": final_recurrent_set(&condensation).to_vec(),
        "classes": classes.iter().map(|c| c.to_vec()).collect::<Vec<_>>(),
    });
    if args.full || args.dot.is_some() {
        let d = cyclic_decomposition(&graph)?;
        if let Some(path) = &args.dot {
            write_atomic(path, d.to_dot().as_bytes())?;
        }
        if args.full {
            result["decomposition"] = serde_json::from_str(&d.to_json()).expect("valid JSON");
        }
    }
    let config = DecomposeConfig { full: args.full };
    let text = document("decompose", &config, &[digest], result.to_string());
    emit(args.out.as_deref(), text.as_bytes())
}

#[derive(Serialize)]
struct EntropyConfig {
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    subdivisions: Option<Vec<usize>>,
}

pub fn entropy(args: &EntropyArgs) -> Result<(), CliError> {
    if args.method == Method::Theoremc {
        return theorem_c(args);
    }
    let path = args
        .graph
        .as_deref()
        .ok_or_else(|| CliError::Usage(format!("--graph is required for --method {:?}", args.method).to_lowercase()))?;
    let (graph, digest) = load_graph(path)?;
    let domain = match args.class {
        None => None,
        Some(j) => {
            let classes = final_classes(&graph, &condense(&graph))?;
            let count = classes.len();
            Some(classes.into_iter().nth(j).ok_or_else(|| {
                CliError::Usage(format!("--class {j} out of range: the graph has {count} final classes"))
            })?)
        }
    };
    let need_eps = || {
        args.eps
            .ok_or_else(|| CliError::Usage("--eps is required for the separated and spanning methods".into()))
    };
    let report = match args.method {
        Method::Count => EntropyReport::path_count(&graph, args.n, domain.as_ref())?,
        Method::Spectral => EntropyReport::spectral(&graph, domain.as_ref()),
        Method::Separated => EntropyReport::greedy(&graph, EntropyMethod::Separated, args.n, need_eps()?, args.budget, domain.as_ref())?,
        Method::Spanning => EntropyReport::greedy(&graph, EntropyMethod::Spanning, args.n, need_eps()?, args.budget, domain.as_ref())?,
        Method::Theoremc => unreachable!("handled above"),
    };
    let config = EntropyConfig {
        method: args.method,
        n: (args.method != Method::Spectral).then_some(args.n),
        eps: report.epsilon,
        budget: args.budget,
        class: args.class,
        subdivisions: None,
    };
    if let Some(csv_path) = &args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "value"]).map_err(csv_error)?;
        for (n, v) in report.table() {
            w.write_record([n, v]).map_err(csv_error)?;
        }
        write_atomic(csv_path, &w.into_inner().map_err(|e| csv_error(e.into_error().into()))?)?;
    }
    let text = document("entropy", &config, &[digest], report.to_json());
    emit(args.out.as_deref(), text.as_bytes())
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Schema(format!("csv: {e}"))
}

fn theorem_c(args: &EntropyArgs) -> Result<(), CliError> {
    let path = args
        .config
        .as_deref()
        .ok_or_else(|| CliError::Usage("--config is required for --method theoremc".into()))?;
    let (build, digest) = load_config(path)?;
    let eps = args.eps.unwrap_or(build.epsilon);
    let rows = theorem_c_study(&build.map, eps, &args.subdivisions)?;
    if let Some(csv_path) = &args.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &rows {
            w.serialize(row).map_err(csv_error)?;
        }
        write_atomic(csv_path, &w.into_inner().map_err(|e| csv_error(e.into_error().into()))?)?;
    }
    let config = EntropyConfig {
        method: Method::Theoremc,
        n: None,
        eps: Some(eps),
        budget: None,
        class: None,
        subdivisions: Some(args.subdivisions.clone()),
    };
    let result = serde_json::json!({ "map": build.map, "rows": rows });
    let text = document("entropy", &config, &[digest], result.to_string());
    emit(args.out.as_deref(), text.as_bytes())
}

#[derive(Serialize)]
struct AnosovConfig {
    matrix: [[i64; 2]; 2],
    grid: usize,
    delta: f64,
    eps: f64,
    steps: usize,
    seed: u64,
}

pub fn anosov(args: &AnosovArgs) -> Result<(), CliError> {
    let [a, b, c, d] = args.matrix[..] else {
        return Err(CliError::Usage("--matrix takes four integers a,b,c,d".into()));
    };
    let matrix = [[a, b], [c, d]];
    let auto = ToralAuto::new(matrix)?;
    let (report, failure) = match theorem_a_certificate(&auto, args.grid, args.delta, args.eps, args.steps, args.seed) {
        Ok(r) => (r, None),
        Err(ShadowError::DensityNotAchieved { report }) => {
            let err = ShadowError::DensityNotAchieved { report: report.clone() };
            (*report, Some(CliError::from(err)))
        }
        Err(e) => return Err(e.into()),
    };
    if let Some(csv_path) = &args.orbit_csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["k", "x", "y"]).map_err(csv_error)?;
        for (k, p) in report.shadow_orbit.iter().enumerate() {
            w.write_record([k.to_string(), format!("{:?}", p[0]), format!("{:?}", p[1])])
                .map_err(csv_error)?;
        }
        write_atomic(csv_path, &w.into_inner().map_err(|e| csv_error(e.into_error().into()))?)?;
    }
    let config = AnosovConfig {
        matrix,
        grid: args.grid,
        delta: args.delta,
        eps: args.eps,
        steps: args.steps,
        seed: args.seed,
    };
    let result = serde_json::json!({ "automorphism": auto, "certificate": report });
    let text = document("anosov", &config, &[], result.to_string());
    emit(args.out.as_deref(), text.as_bytes())?;
    failure.map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct OracleConfig {
    random: usize,
    seed: u64,
}

#[derive(Serialize)]
struct OracleEntry {
    graph: String,
    agree: bool,
    items: Vec<svdyn::oracle::OracleItem>,
}

/// A seeded explicit graph on at most 12 cells; every row is nonempty.
pub fn random_graph(rng: &mut ChaCha8Rng) -> TransitionGraph {
    let n = rng.gen_range(1..=12);
    let rows = (0..n)
        .map(|_| {
            let mut row: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.25)).collect();
            if row.is_empty() {
                row.push(rng.gen_range(0..n));
            }
            row
        })
        .collect();
    let space = CellSpace::interval(0.0, 1.0, n).expect("valid interval");
    explicit_graph(&space, rows).expect("rows are in range")
}

pub fn oracle_check(args: &OracleArgs) -> Result<(), CliError> {
    if args.graph.is_empty() && args.random == 0 {
        return Err(CliError::Usage("give --graph files, --random N, or both".into()));
    }
    let mut entries = Vec::new();
    let mut digests = Vec::new();
    for path in &args.graph {
        let (graph, digest) = load_graph(path)?;
        digests.push(digest);
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
        let items = compare_with_oracle(&graph)?;
        entries.push(OracleEntry {
            graph: name,
            agree: items.iter().all(|i| i.agree),
            items,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for i in 0..args.random {
        let items = compare_with_oracle(&random_graph(&mut rng))?;
        entries.push(OracleEntry {
            graph: format!("random-{i}"),
            agree: items.iter().all(|i| i.agree),
            items,
        });
    }
    let total: usize = entries.iter().map(|e| e.items.len()).sum();
    let failed: usize = entries.iter().flat_map(|e| &e.items).filter(|i| !i.agree).count();
    let config = OracleConfig {
        random: args.random,
        seed: args.seed,
    };
    let text = document("oracle-check", &config, &digests, serde_json::to_string(&entries).expect("serializes"));
    emit(args.out.as_deref(), text.as_bytes())?;
    if failed > 0 {
        return Err(CliError::OracleDisagreement { failed, total });
    }
    Ok(())
}
