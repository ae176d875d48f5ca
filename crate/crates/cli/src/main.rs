use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};

use siltlab::algebra::{build_bound_quiver_algebra, make_lambda, make_linear_a, parse_orientation, Algebra, QuiverSpec};
use siltlab::arcoords::{hammock_table, survivor_orbits, survivors_csv, z_hom_clauses, ZBox, ZCoord, ZParams};
use siltlab::io::{algebra_from_doc, algebra_to_doc, dump_objects, AlgebraDoc, PosetDoc, SiltingSetDoc};
use siltlab::pairsposet::{build_pairs_poset, PairsPoset, BOTTOM_KEY};
use siltlab::silting::{silting_predicate_exact, Direction, Silting, SiltingObject, SiltingPair};
use siltlab::stability::{
    appendix_a_window, classify_ids, classify_objects, embedding_report, linear_a_window, mutation_window,
    tags_to_tsv, vertex_charge,
};
use siltlab::topology::{contractibility_check, homology, order_complex, ContractibilityVerdict, HomologyProfile};
use siltlab::{SiltError, SCHEMA};

#[derive(Parser)]
#[command(name = "siltlab", version, about = "Silting pairs, their CW poset and the stability embedding")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra and write its JSON.
    Algebra(AlgebraArgs),
    /// Enumerate the silting objects N with Σ^{-k}M ≤ N ≤ M.
    Enumerate(EnumerateArgs),
    /// Build the pairs poset of an interval.
    Poset(PosetArgs),
    /// Check the CW-poset axioms of a poset file; exits 1 on any violation.
    VerifyCw(VerifyArgs),
    /// Integral homology of an interval's order complex.
    Homology(HomologyArgs),
    /// Vertex charges, sampled chain points, injectivity and real values.
    Embed(EmbedArgs),
    /// Aisle, co-aisle, heart and co-t aisle tags of window objects, as TSV.
    Classify(ClassifyArgs),
    /// Hom-hammock queries on Z components and finiteness survivor dumps.
    Hammock(HammockArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent. A manifest is written next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long, num_args = 3, value_names = ["R", "N", "M"], conflicts_with_all = ["linear_a", "file"])]
    lambda: Option<Vec<usize>>,
    #[arg(long, value_name = "L", conflicts_with = "file")]
    linear_a: Option<usize>,
    /// Arrow orientations for --linear-a, e.g. f,b; all forward by default.
    #[arg(long, requires = "linear_a")]
    orient: Option<String>,
    /// A quiver spec JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Only `standard` is supported.
    #[arg(long, default_value = "standard")]
    base: String,
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Write the silting quiver of the interval as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct PosetArgs {
    #[arg(long)]
    algebra: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long, default_value = "standard")]
    base: String,
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    /// Write the Hasse diagram as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    poset: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long)]
    poset: PathBuf,
    /// LOW..HIGH with node keys; TOP names the unique maximal node.
    #[arg(long, conflicts_with = "full")]
    interval: Option<String>,
    /// Use the open interval.
    #[arg(long, requires = "interval")]
    open: bool,
    /// The whole poset minus 0hat, with a contractibility verdict.
    #[arg(long)]
    full: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    poset: PathBuf,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    algebra: PathBuf,
    /// Summand positions of M' (comma separated); the table is then for the right mutation μ_{M'}(M).
    #[arg(long, value_delimiter = ',')]
    mutate_keep: Option<Vec<usize>>,
    /// Mutation depth of the window for algebras without an interval-module dictionary.
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct HammockArgs {
    #[arg(long, num_args = 3, value_names = ["R", "N", "M"], required = true)]
    rnm: Vec<i64>,
    /// Source coordinate k,i,j.
    #[arg(long, value_delimiter = ',', num_args = 1, required = true)]
    from: Vec<i64>,
    /// Target coordinate k,i,j for a single Hom query.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    to: Option<Vec<i64>>,
    /// Dump the survivor table for M_0 = FROM and this k.
    #[arg(long)]
    survivors: Option<i64>,
    #[arg(long, default_value_t = 12)]
    radius: i64,
    #[command(flatten)]
    out: Output,
}

/// Exit status carried through anyhow.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(Exit(c, _)) = e.downcast_ref::<Exit>() {
        return *c;
    }
    if let Some(s) = e.downcast_ref::<SiltError>() {
        return s.exit_code() as u8;
    }
    2
}

#[derive(Serialize)]
struct RunManifest {
    schema: &'static str,
    command: Vec<String>,
    config_hash: String,
    algebra_hash: Option<String>,
    seed: Option<u64>,
    version: &'static str,
    wall_time_ms: u128,
    outputs: BTreeMap<String, String>,
}

fn sha(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Collects outputs and the hashes that go into the manifest.
struct Run {
    start: Instant,
    algebra_hash: Option<String>,
    seed: Option<u64>,
    outputs: BTreeMap<String, String>,
}

impl Run {
    fn new() -> Self {
        Run { start: Instant::now(), algebra_hash: None, seed: None, outputs: BTreeMap::new() }
    }

    fn emit(&mut self, path: Option<&Path>, text: &str) -> anyhow::Result<()> {
        match path {
            Some(p) => {
                std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                self.outputs.insert(p.display().to_string(), sha(text.as_bytes()));
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn finish(self, main_out: Option<&Path>) -> anyhow::Result<()> {
        let Some(out) = main_out else { return Ok(()) };
        let args: Vec<String> = std::env::args().collect();
        let m = RunManifest {
            schema: SCHEMA,
            config_hash: sha(args[1..].join("\0").as_bytes()),
            command: args,
            algebra_hash: self.algebra_hash,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION"),
            wall_time_ms: self.start.elapsed().as_millis(),
            outputs: self.outputs,
        };
        let mut path = out.as_os_str().to_owned();
        path.push(".manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(&m)? + "\n")?;
        Ok(())
    }
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<(T, Vec<u8>)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let v = serde_json::from_slice(&bytes).map_err(|e| SiltError::Parse(format!("{}: {e}", path.display())))?;
    Ok((v, bytes))
}

fn load_algebra(path: &Path, run: &mut Run) -> anyhow::Result<Algebra> {
    let (doc, bytes): (AlgebraDoc, _) = read_json(path)?;
    run.algebra_hash = Some(sha(&bytes));
    Ok(algebra_from_doc(&doc)?)
}

fn load_poset(path: &Path, run: &mut Run) -> anyhow::Result<(Silting, PairsPoset)> {
    let (doc, _): (PosetDoc, _) = read_json(path)?;
    run.algebra_hash = Some(sha(serde_json::to_string(&doc.algebra)?.as_bytes()));
    Ok(doc.load()?)
}

fn base_object(s: &Silting, base: &str) -> anyhow::Result<SiltingObject> {
    match base {
        "standard" => Ok(s.standard()),
        other => Err(SiltError::Parse(format!("unsupported base `{other}`; only `standard`")).into()),
    }
}

fn predicate_label(alg: &Algebra) -> &'static str {
    if silting_predicate_exact(alg) {
        "exact"
    } else {
        "heuristic"
    }
}

fn cmd_algebra(a: AlgebraArgs, run: &mut Run) -> anyhow::Result<()> {
    let alg = if let Some(v) = &a.lambda {
        make_lambda(v[0], v[1], v[2])?
    } else if let Some(l) = a.linear_a {
        let orient = match &a.orient {
            Some(o) => parse_orientation(o)?,
            None => vec![siltlab::algebra::Orientation::Fwd; l.saturating_sub(1)],
        };
        make_linear_a(l, &orient)?
    } else if let Some(f) = &a.file {
        let bytes = std::fs::read(f).with_context(|| format!("reading {}", f.display()))?;
        let spec: QuiverSpec =
            serde_json::from_slice(&bytes).map_err(|e| SiltError::Parse(format!("{}: {e}", f.display())))?;
        build_bound_quiver_algebra(spec)?
    } else {
        bail!(Exit(2, "one of --lambda, --linear-a or --file is required".into()));
    };
    let text = to_json(&algebra_to_doc(&alg))?;
    run.algebra_hash = Some(sha(text.as_bytes()));
    run.emit(a.out.out.as_deref(), &text)
}

fn cmd_enumerate(a: EnumerateArgs, run: &mut Run) -> anyhow::Result<()> {
    let alg = load_algebra(&a.algebra, run)?;
    let s = Silting::from_algebra(alg);
    let base = base_object(&s, &a.base)?;
    let mut found = s.enumerate_interval(&base, a.k, a.budget)?;
    found.sort();
    if let Some(dot) = &a.dot {
        let index: BTreeMap<&SiltingObject, usize> = found.iter().enumerate().map(|(i, n)| (n, i)).collect();
        let mut text = String::from("digraph silting_quiver {\n");
        for (i, n) in found.iter().enumerate() {
            text.push_str(&format!("  s{i} [label=\"{n}\"];\n"));
        }
        for (i, n) in found.iter().enumerate() {
            for (_, r) in s.irreducible_mutations(n, Direction::Right)? {
                if let Some(j) = index.get(&r) {
                    text.push_str(&format!("  s{i} -> s{j};\n"));
                }
            }
        }
        text.push_str("}\n");
        run.emit(Some(dot), &text)?;
    }
    let doc = SiltingSetDoc {
        schema: SCHEMA.into(),
        algebra: algebra_to_doc(s.algebra()),
        k: a.k,
        base,
        predicate: predicate_label(s.algebra()).into(),
        objects: dump_objects(s.category()),
        silting: found,
    };
    run.emit(a.out.out.as_deref(), &to_json(&doc)?)
}

fn cmd_poset(a: PosetArgs, run: &mut Run) -> anyhow::Result<()> {
    let alg = load_algebra(&a.algebra, run)?;
    let s = Silting::from_algebra(alg);
    let base = base_object(&s, &a.base)?;
    let p = build_pairs_poset(&s, &base, a.k, a.budget)?;
    if let Some(dot) = &a.dot {
        run.emit(Some(dot), &p.to_dot())?;
    }
    run.emit(a.out.out.as_deref(), &to_json(&PosetDoc::new(&s, a.k, &base, &p))?)
}

fn cmd_verify_cw(a: VerifyArgs, run: &mut Run) -> anyhow::Result<bool> {
    let (_, p) = load_poset(&a.poset, run)?;
    let report = p.verify_cw_poset();
    run.emit(a.out.out.as_deref(), &to_json(&report)?)?;
    Ok(report.pass)
}

#[derive(Serialize)]
struct HomologyDoc {
    schema: &'static str,
    interval: String,
    open: bool,
    vertices: usize,
    facets: usize,
    dimension: i32,
    profile: HomologyProfile,
    /// S^d when the profile is that of a d-sphere, d ≥ −1.
    sphere_dimension: Option<i32>,
    verdict: Option<ContractibilityVerdict>,
}

fn resolve_node(p: &PairsPoset, key: &str) -> anyhow::Result<usize> {
    if key == "TOP" {
        let tops: Vec<usize> = (0..p.len()).filter(|&x| p.upper_covers(x).is_empty()).collect();
        if tops.len() != 1 {
            bail!(Exit(2, format!("TOP is ambiguous: {} maximal nodes", tops.len())));
        }
        return Ok(tops[0]);
    }
    Ok(p.node_index(key)?)
}

fn cmd_homology(a: HomologyArgs, run: &mut Run) -> anyhow::Result<()> {
    let (_, p) = load_poset(&a.poset, run)?;
    let (label, subset) = if a.full {
        (format!("{BOTTOM_KEY}<"), (0..p.len()).filter(|&x| p.lt(0, x)).collect::<Vec<_>>())
    } else {
        let iv = a.interval.as_deref().ok_or_else(|| Exit(2, "--interval or --full is required".into()))?;
        let (lo, hi) = iv.split_once("..").ok_or_else(|| Exit(2, format!("interval `{iv}` is not LOW..HIGH")))?;
        let (x, y) = (resolve_node(&p, lo)?, resolve_node(&p, hi)?);
        let sub = if a.open { p.open_interval(x, y) } else { p.interval(x, y) };
        (iv.to_string(), sub)
    };
    let c = order_complex(&p, &subset);
    let (profile, verdict) = if a.full {
        let (v, h) = contractibility_check(&c);
        (h, Some(v))
    } else {
        (homology(&c), None)
    };
    let sphere_dimension = (-1..=c.dimension().max(-1)).find(|&d| profile.is_sphere(d));
    let doc = HomologyDoc {
        schema: SCHEMA,
        interval: label,
        open: a.open,
        vertices: subset.len(),
        facets: c.facets.len(),
        dimension: c.dimension(),
        profile,
        sphere_dimension,
        verdict,
    };
    run.emit(a.out.out.as_deref(), &to_json(&doc)?)
}

#[derive(Serialize)]
struct EmbedDoc {
    schema: &'static str,
    seed: u64,
    report: siltlab::stability::EmbeddingReport,
    vertex_charges: BTreeMap<String, siltlab::stability::StabilityPoint>,
}

fn cmd_embed(a: EmbedArgs, run: &mut Run) -> anyhow::Result<bool> {
    let (s, p) = load_poset(&a.poset, run)?;
    run.seed = Some(a.seed);
    let report = embedding_report(&s, &p, a.samples, a.seed)?;
    let mut vertex_charges = BTreeMap::new();
    for x in 0..p.len() {
        if let siltlab::pairsposet::Node::Pair(pair) = &p.nodes[x] {
            vertex_charges.insert(p.key(x), vertex_charge(&s, pair)?);
        }
    }
    let pass = report.pass;
    run.emit(a.out.out.as_deref(), &to_json(&EmbedDoc { schema: SCHEMA, seed: a.seed, report, vertex_charges })?)?;
    Ok(pass)
}

fn cmd_classify(a: ClassifyArgs, run: &mut Run) -> anyhow::Result<()> {
    let alg = load_algebra(&a.algebra, run)?;
    let s = Silting::from_algebra(alg);
    let mut m = s.standard();
    if let Some(keep) = &a.mutate_keep {
        if keep.iter().any(|&i| i >= m.rank()) {
            bail!(Exit(2, format!("summand positions must be below {}", m.rank())));
        }
        let sub = SiltingObject::new(keep.iter().map(|&i| m.summands()[i]));
        m = s.mutate(&SiltingPair::new(m.clone(), sub)?, Direction::Right)?;
    }
    let mut text = format!("# silting object {m}\n");
    if let Ok(window) = appendix_a_window(s.algebra()) {
        // the drawn AR window, with coordinates
        let objects: Vec<_> = window.iter().map(|(_, x)| x.clone()).collect();
        let tags = classify_objects(&s, &m, &objects)?;
        let labels: Vec<String> = window.iter().map(|(p, _)| p.to_string()).collect();
        text.push_str(&tags_to_tsv(&labels, &tags));
    } else if let Ok(window) = linear_a_window(s.algebra(), -2..=2) {
        let objects: Vec<_> = window.iter().map(|(_, x)| x.clone()).collect();
        let tags = classify_objects(&s, &m, &objects)?;
        let labels: Vec<String> = window.into_iter().map(|(l, _)| l).collect();
        text.push_str(&tags_to_tsv(&labels, &tags));
    } else {
        let ids = mutation_window(&s, &m, a.depth, -1..=1)?;
        let objs: Vec<Vec<_>> = ids.iter().map(|&x| vec![x]).collect();
        let tags = classify_ids(&s, &m, &objs)?;
        let labels: Vec<String> = ids.iter().map(|x| x.to_string()).collect();
        text.push_str(&tags_to_tsv(&labels, &tags));
    }
    run.emit(a.out.out.as_deref(), &text)
}

fn coord(p: ZParams, v: &[i64]) -> anyhow::Result<ZCoord> {
    if v.len() != 3 {
        bail!(Exit(2, "coordinates are k,i,j".into()));
    }
    Ok(ZCoord::new(p, v[0], v[1], v[2])?)
}

#[derive(Serialize)]
struct HammockDoc {
    schema: &'static str,
    from: String,
    to: String,
    nonzero: bool,
    forward: bool,
    suspended: bool,
}

fn cmd_hammock(a: HammockArgs, run: &mut Run) -> anyhow::Result<()> {
    let p = ZParams::new(a.rnm[0], a.rnm[1], a.rnm[2])?;
    let from = coord(p, &a.from)?;
    if let Some(k) = a.survivors {
        if k < 1 {
            bail!(Exit(2, "--survivors needs k >= 1".into()));
        }
        let bx = ZBox::around(from, a.radius);
        let rows = hammock_table(from, k, &bx)?;
        let orbits = survivor_orbits(from, k, &bx)?;
        log::info!("{} survivors in {} suspension orbits", rows.iter().filter(|r| r.survives()).count(), orbits.len());
        return run.emit(a.out.out.as_deref(), &survivors_csv(&rows));
    }
    let to = coord(p, a.to.as_deref().ok_or_else(|| Exit(2, "--to or --survivors is required".into()))?)?;
    let c = z_hom_clauses(from, to)?;
    let doc = HammockDoc {
        schema: SCHEMA,
        from: from.to_string(),
        to: to.to_string(),
        nonzero: c.any(),
        forward: c.forward,
        suspended: c.suspended,
    };
    run.emit(a.out.out.as_deref(), &to_json(&doc)?)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut run = Run::new();
    let (ok, out) = match cli.cmd {
        Cmd::Algebra(a) => {
            let out = a.out.out.clone();
            cmd_algebra(a, &mut run)?;
            (true, out)
        }
        Cmd::Enumerate(a) => {
            let out = a.out.out.clone();
            cmd_enumerate(a, &mut run)?;
            (true, out)
        }
        Cmd::Poset(a) => {
            let out = a.out.out.clone();
            cmd_poset(a, &mut run)?;
            (true, out)
        }
        Cmd::VerifyCw(a) => {
            let out = a.out.out.clone();
            (cmd_verify_cw(a, &mut run)?, out)
        }
        Cmd::Homology(a) => {
            let out = a.out.out.clone();
            cmd_homology(a, &mut run)?;
            (true, out)
        }
        Cmd::Embed(a) => {
            let out = a.out.out.clone();
            (cmd_embed(a, &mut run)?, out)
        }
        Cmd::Classify(a) => {
            let out = a.out.out.clone();
            cmd_classify(a, &mut run)?;
            (true, out)
        }
        Cmd::Hammock(a) => {
            let out = a.out.out.clone();
            cmd_hammock(a, &mut run)?;
            (true, out)
        }
    };
    run.finish(out.as_deref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
