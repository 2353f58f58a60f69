use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use iso_core::corpus::{max_order_from_env, GroupSpec, RingSpec};
use iso_core::group_iso::generator_enumeration;
use iso_core::ring::ring_generator_enumeration;
use iso_core::series::{compute_t, SeriesTower};
use iso_core::tablefile::{group_to_string, ring_to_string};
use iso_core::{
    is_isomorphic_groups, is_isomorphic_rings, p_group_iso_via_series, parse_table_file, CayleyTable, ChunkPlan,
    IsoDecision, RingTable, RunReport, TableFile,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXIT_ISOMORPHIC: u8 = 0;
const EXIT_NOT_ISOMORPHIC: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "iso", version, about = "Isomorphism testing for finite groups and rings given by their tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two group tables are isomorphic.
    Group(PairArgs),
    /// Decide whether two ring tables are isomorphic.
    Ring(PairArgs),
    /// Decide p-group isomorphism through composition series.
    Pgroup {
        a: String,
        b: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Print t(G) and the sizes of Alice's and Bob's series sets.
    Series {
        a: String,
        /// Split index; defaults to t(G).
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write a constructed group (or ring, with --ring) to a table file.
    Gen {
        spec: String,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        ring: bool,
    },
    /// Measure search cost across chunk sizes and print CSV.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Elementary2)]
        family: Family,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Comma-separated chunk sizes; `all` means unbounded.
        #[arg(long, value_delimiter = ',', default_value = "1,16,all")]
        deltas: Vec<Delta>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(clap::Args)]
struct PairArgs {
    /// Table file, or `spec:<constructor>` such as `spec:cyclic 4`.
    a: String,
    b: String,
    #[arg(long, value_enum, default_value_t = Algo::Bidi)]
    algo: Algo,
    /// Fingerprints held per side; `all` means unbounded.
    #[arg(long, default_value = "all")]
    delta: Delta,
    #[arg(long)]
    json: bool,
    /// Print the isomorphism when one is found.
    #[arg(long)]
    witness: bool,
    /// Worker threads for chunk comparison.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Genenum,
    Bidi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// (Z2)^k
    Elementary2,
    /// (Z3)^k
    Elementary3,
    /// Z_{2^k}
    Cyclic2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Delta {
    Bounded(usize),
    All,
}

impl FromStr for Delta {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "all" => Ok(Delta::All),
            other => match other.parse::<usize>() {
                Ok(0) | Err(_) => Err(format!("expected a positive integer or `all`, got `{other}`")),
                Ok(d) => Ok(Delta::Bounded(d)),
            },
        }
    }
}

impl Delta {
    fn plan(self, threads: usize) -> ChunkPlan {
        match self {
            Delta::Bounded(d) => ChunkPlan::new(d),
            Delta::All => ChunkPlan::unbounded(),
        }
        .with_threads(threads.max(1))
    }

    fn label(self) -> String {
        match self {
            Delta::Bounded(d) => d.to_string(),
            Delta::All => "all".into(),
        }
    }
}

fn load(source: &str) -> Result<TableFile, String> {
    let cap = max_order_from_env();
    if let Some(spec) = source.strip_prefix("spec:") {
        if let Ok(parsed) = GroupSpec::parse(spec) {
            return parsed.build(cap).map(TableFile::Group).map_err(|e| format!("{spec}: {e}"));
        }
        let parsed = RingSpec::parse(spec).map_err(|e| format!("{spec}: {e}"))?;
        return parsed.build(cap).map(TableFile::Ring).map_err(|e| format!("{spec}: {e}"));
    }
    let file = parse_table_file(Path::new(source)).map_err(|e| format!("{source}: {e}"))?;
    if file.order() > cap {
        return Err(format!("{source}: order {} exceeds the cap of {cap} (set ISO_MAX_ORDER)", file.order()));
    }
    Ok(file)
}

fn load_group(source: &str) -> Result<CayleyTable, String> {
    match load(source)? {
        TableFile::Group(g) => Ok(g),
        TableFile::Ring(_) => Err(format!("{source}: expected a group table, found a ring")),
    }
}

fn load_ring(source: &str) -> Result<RingTable, String> {
    match load(source)? {
        TableFile::Ring(r) => Ok(r),
        TableFile::Group(_) => Err(format!("{source}: expected a ring table, found a group")),
    }
}

fn emit(decision: &IsoDecision, n: usize, json: bool, witness: bool) -> Result<u8, String> {
    let report = RunReport::new(decision, n);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
    } else {
        println!("{}", if report.isomorphic { "isomorphic" } else { "not isomorphic" });
        println!(
            "algorithm={} n={} p={} d={} delta={} |A|={} |B|={} chunk_pairs={} peak={} millis={}",
            report.algorithm,
            report.n,
            opt(report.p),
            opt(report.d),
            report.delta.map_or_else(|| "all".into(), |d| d.to_string()),
            report.a_count,
            report.b_count,
            report.chunk_pairs,
            report.peak_fingerprints,
            report.millis,
        );
        if let (true, Some(w)) = (witness, &report.witness) {
            let pairs: Vec<String> = w.iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
            println!("witness {}", pairs.join(" "));
        }
    }
    Ok(if report.isomorphic { EXIT_ISOMORPHIC } else { EXIT_NOT_ISOMORPHIC })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn with_delta(mut d: IsoDecision, plan: &ChunkPlan) -> IsoDecision {
    d.stats.delta = Some(plan.delta());
    d
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Group(args) => {
            let (g, h) = (load_group(&args.a)?, load_group(&args.b)?);
            let plan = args.delta.plan(args.threads);
            let decision = match args.algo {
                Algo::Bidi => is_isomorphic_groups(&g, &h, &plan),
                Algo::Genenum => generator_enumeration(&g, &h),
            };
            emit(&decision, g.order(), args.json, args.witness)
        }
        Command::Ring(args) => {
            let (r, s) = (load_ring(&args.a)?, load_ring(&args.b)?);
            let plan = args.delta.plan(args.threads);
            let decision = match args.algo {
                Algo::Bidi => is_isomorphic_rings(&r, &s, &plan),
                Algo::Genenum => ring_generator_enumeration(&r, &s),
            };
            emit(&decision, r.order(), args.json, args.witness)
        }
        Command::Pgroup { a, b, json, witness } => {
            let (g, h) = (load_group(&a)?, load_group(&b)?);
            let decision = p_group_iso_via_series(&g, &h).map_err(|e| e.to_string())?;
            emit(&decision, g.order(), json, witness)
        }
        Command::Series { a, t, json } => {
            let g = load_group(&a)?;
            let params = compute_t(&g).map_err(|e| e.to_string())?;
            let t = t.unwrap_or(params.t);
            let tower = SeriesTower::new(&g).map_err(|e| e.to_string())?;
            let alice = tower.all_choices(1, Some(t)).map_err(|e| e.to_string())?;
            let bob = tower.all_choices(t + 1, None).map_err(|e| e.to_string())?;
            let full = tower.all_choices(1, None).map_err(|e| e.to_string())?;
            if json {
                let value = serde_json::json!({
                    "n": g.order(),
                    "p": params.p,
                    "ell": params.ell,
                    "m": params.m,
                    "s": params.s,
                    "N": params.n.to_string(),
                    "r": params.r,
                    "u": params.u,
                    "t_g": params.t,
                    "t": t,
                    "alice": alice.series.len(),
                    "bob": bob.series.len(),
                    "full_tree_leaves": full.runs,
                    "full_tree_nodes": full.nodes,
                });
                println!("{}", serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?);
            } else {
                println!(
                    "n={} p={} ell={} m={:?} s={:?} N={} r={} u={} t(G)={}",
                    g.order(),
                    params.p,
                    params.ell,
                    params.m,
                    params.s,
                    params.n,
                    params.r,
                    params.u,
                    params.t
                );
                println!(
                    "t={t} |Alice|={} |Bob|={} full tree: {} leaves, {} nodes",
                    alice.series.len(),
                    bob.series.len(),
                    full.runs,
                    full.nodes
                );
            }
            Ok(0)
        }
        Command::Gen { spec, output, ring } => {
            let cap = max_order_from_env();
            let text = if ring {
                let r = RingSpec::parse(&spec).and_then(|s| s.build(cap)).map_err(|e| format!("{spec}: {e}"))?;
                ring_to_string(&r)
            } else {
                let g = GroupSpec::parse(&spec).and_then(|s| s.build(cap)).map_err(|e| format!("{spec}: {e}"))?;
                group_to_string(&g)
            };
            std::fs::write(&output, text).map_err(|e| format!("{}: {e}", output.display()))?;
            Ok(0)
        }
        Command::Bench { family, max_order, deltas, threads } => bench(family, max_order, &deltas, threads),
    }
}

fn bench(family: Family, max_order: usize, deltas: &[Delta], threads: usize) -> Result<u8, String> {
    let (p, make): (usize, fn(u32) -> String) = match family {
        Family::Elementary2 => (2, |k| format!("elementary 2 {k}")),
        Family::Elementary3 => (3, |k| format!("elementary 3 {k}")),
        Family::Cyclic2 => (2, |k| format!("cyclic {}", 1usize << k)),
    };
    let cap = max_order_from_env();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    println!("n,algo,delta,a_count,b_count,candidates,chunk_pairs,peak_fingerprints,millis,isomorphic");
    let mut k = 1;
    while p.pow(k) <= max_order {
        let spec = make(k);
        let g = GroupSpec::parse(&spec).and_then(|s| s.build(cap)).map_err(|e| format!("{spec}: {e}"))?;
        let mut perm: Vec<usize> = g.elements().collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        let n = g.order();

        let start = Instant::now();
        let base = generator_enumeration(&g, &h);
        let millis = start.elapsed().as_millis();
        let s = &base.stats;
        println!("{n},genenum,,,,{},,,{millis},{}", s.candidates, base.isomorphic);

        for &delta in deltas {
            let plan = delta.plan(threads);
            let d = with_delta(is_isomorphic_groups(&g, &h, &plan), &plan);
            let s = &d.stats;
            println!(
                "{n},bidi,{},{},{},{},{},{},{},{}",
                delta.label(),
                s.a_count,
                s.b_count,
                s.candidates,
                s.chunk_pairs,
                s.peak_fingerprints,
                s.millis,
                d.isomorphic
            );
            if d.isomorphic != base.isomorphic {
                return Err(format!("n={n}: decision changed at delta {}", delta.label()));
            }
        }
        k += 1;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
