use clap::{Args, Parser, Subcommand, ValueEnum};
use qahh::arc::{ArcAlgebra, ArcCategory};
use qahh::category::{coherence_sweep, CoherenceReport, GradingCategory, Trivialized};
use qahh::cohomology::{center, CochainComplex, Route};
use qahh::complex::ComplexR;
use qahh::graded::{GradedBimodule, Vector};
use qahh::hochschild::HochschildComplex;
use qahh::homology::{laurent_to_string, HomologyTable};
use qahh::link::{build_link_cube, parse_pd, parse_pd_file, LinkDiagram, LinkError};
use qahh::ring::Spec;
use qahh::topography::TopographyComplex;
use serde_json::{json, Value};
use std::fmt::Display;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "qahh", version, about = "Quasi-associative Hochschild and unified Khovanov computations")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Tables {
    /// Specialization `even`, `odd` or `X,Y,Z` with entries ±1; repeatable.
    #[arg(long = "spec", default_value = "even")]
    specs: Vec<String>,
    /// Print homology tables as TSV instead of JSON.
    #[arg(long)]
    tsv: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basis and structure constants of the arc algebra H^n.
    ArcAlgebra {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        /// Run the quasi-associative algebra axiom check.
        #[arg(long)]
        check: bool,
    },
    /// The graded center of H^n.
    Center {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
    /// Hochschild homology of H^n with coefficients in itself.
    Hochschild {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[command(flatten)]
        tables: Tables,
    },
    /// Grading-preserving Hochschild cohomology of H^n.
    Cohomology {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Also build the explicit differentials and compare them.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        tables: Tables,
    },
    /// Unified Khovanov homology of links given by PD codes.
    Khovanov {
        /// A PD code, or a file with one PD code per line.
        #[arg(long)]
        pd: String,
        /// Include the graded Euler characteristic.
        #[arg(long)]
        euler: bool,
        #[command(flatten)]
        tables: Tables,
    },
    /// The 2-complex of topographies on an n-partitioned loop.
    Topography {
        #[arg(long)]
        n: usize,
    },
    /// Coherence sweep of a grading category over the support of H^n.
    CheckGrading {
        #[arg(long, value_enum, default_value = "g")]
        category: Category,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
        n: u8,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Category {
    G,
    Trivial,
}

enum Failure {
    Input(String),
    Internal(Value),
}

type Outcome = Result<String, Failure>;

fn parse_specs(names: &[String]) -> Result<Vec<Spec>, Failure> {
    names.iter().map(|s| Spec::parse(s).ok_or_else(|| Failure::Input(format!("unknown specialization `{s}`")))).collect()
}

fn render<G: Ord + Clone + Display>(out: Vec<(String, HomologyTable<G>)>, tsv: bool) -> Vec<Value> {
    out.into_iter().map(|(name, t)| if tsv { Value::String(format!("# {name}\n{}", t.to_tsv())) } else { t.to_json(&name) }).collect()
}

fn emit_tables(header: Value, tables: Vec<Value>, tsv: bool) -> String {
    if tsv {
        tables.iter().map(|t| t.as_str().unwrap_or_default().to_string()).collect::<Vec<_>>().join("\n")
    } else {
        let mut v = header;
        v["homology"] = Value::Array(tables);
        pretty(&v)
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn homology_tables<G: Ord + Clone + Display + Send + Sync>(c: &ComplexR<G>, specs: &[Spec]) -> Vec<(String, HomologyTable<G>)> {
    specs.iter().map(|s| (s.name(), c.specialize(s.x, s.y, s.z).homology().nonzero())).collect()
}

fn vector_json(labels: &[String], v: &Vector) -> Value {
    let mut keys: Vec<&usize> = v.keys().collect();
    keys.sort();
    Value::Object(keys.into_iter().map(|k| (labels[*k].clone(), Value::String(v[k].to_string()))).collect())
}

fn arc_algebra(n: usize, check: bool) -> Outcome {
    let h = ArcAlgebra::new(n);
    let mut out = json!({ "n": n, "dim": h.alg.dim(), "algebra": h.alg.to_json() });
    if check {
        let r = h.alg.check();
        let summary = json!({
            "pass": r.ok(),
            "checked": r.checked,
            "violations": r.violations.len(),
            "associativity_failures": h.alg.associativity_failures().len(),
        });
        if !r.ok() {
            return Err(Failure::Internal(json!({ "check": summary, "first_violations": r.violations.iter().take(10).collect::<Vec<_>>() })));
        }
        out["check"] = summary;
    }
    Ok(pretty(&out))
}

fn center_cmd(n: usize) -> Outcome {
    let h = ArcAlgebra::new(n);
    let z = center(&h.alg);
    let labels: Vec<String> = h.alg.module.basis.iter().map(|b| b.label.clone()).collect();
    let gens: Vec<Value> = z.generators().iter().map(|g| vector_json(&labels, g)).collect();
    let out = json!({
        "n": n,
        "rank": z.kernel.rank(),
        "free": z.kernel.is_free(),
        "generators": gens,
        "contains_unit": z.contains(&h.unit_sum()),
        "window": [z.kernel.window.0, z.kernel.window.1],
    });
    if !z.validated() {
        return Err(Failure::Internal(json!({ "error": "center generators fail substitution", "report": out })));
    }
    Ok(pretty(&out))
}

fn hochschild(n: usize, nmax: usize, t: &Tables) -> Outcome {
    let specs = parse_specs(&t.specs)?;
    let bim = Arc::new(GradedBimodule::regular(Arc::new(ArcAlgebra::new(n).alg)));
    let c = HochschildComplex::new(bim, nmax).complex();
    let defects = c.d_squared_defects();
    if defects != 0 {
        return Err(Failure::Internal(json!({ "error": "b² ≠ 0", "nonzero_entries": defects })));
    }
    let dims: Vec<usize> = (0..=nmax as i64).map(|k| c.dim(k)).collect();
    let header = json!({ "n": n, "nmax": nmax, "chain_ranks": dims });
    Ok(emit_tables(header, render(homology_tables(&c, &specs), t.tsv), t.tsv))
}

fn cohomology(n: usize, nmax: usize, check: bool, t: &Tables) -> Outcome {
    let specs = parse_specs(&t.specs)?;
    let bim = Arc::new(GradedBimodule::regular(Arc::new(ArcAlgebra::new(n).alg)));
    let cc = CochainComplex::new(bim, nmax);
    let c = cc.complex(Route::Definition);
    let defects = c.d_squared_defects();
    if defects != 0 {
        return Err(Failure::Internal(json!({ "error": "𝖽² ≠ 0", "nonzero_entries": defects })));
    }
    if check {
        for k in 1..=nmax {
            let d = cc.differential(k, Route::Definition);
            for e in [qahh::cohomology::EmptyPrefix::One, qahh::cohomology::EmptyPrefix::Identity] {
                if cc.differential(k, Route::Explicit(e)).entries != d.entries {
                    return Err(Failure::Internal(json!({ "error": "differential routes disagree", "degree": k - 1, "route": format!("{e:?}") })));
                }
            }
        }
    }
    let dims: Vec<usize> = (0..=nmax as i64).map(|k| c.dim(k)).collect();
    let header = json!({ "n": n, "nmax": nmax, "cochain_ranks": dims, "routes_checked": check });
    Ok(emit_tables(header, render(homology_tables(&c, &specs), t.tsv), t.tsv))
}

fn link_failure(e: LinkError) -> Failure {
    match e {
        LinkError::Defect { .. } | LinkError::Unsolved { .. } => Failure::Internal(json!({ "error": e.to_string() })),
        _ => Failure::Input(e.to_string()),
    }
}

fn read_diagrams(pd: &str) -> Result<Vec<LinkDiagram>, Failure> {
    let path = std::path::Path::new(pd);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{pd}: {e}")))?;
        let ds = parse_pd_file(&text).map_err(link_failure)?;
        if ds.is_empty() {
            return Err(Failure::Input(format!("{pd}: no diagrams")));
        }
        Ok(ds)
    } else {
        Ok(vec![parse_pd(pd).map_err(link_failure)?])
    }
}

fn khovanov(pd: &str, euler: bool, t: &Tables) -> Outcome {
    let specs = parse_specs(&t.specs)?;
    let diagrams = read_diagrams(pd)?;
    let mut reports = Vec::new();
    let mut tsv = Vec::new();
    for d in &diagrams {
        let (cube, c) = build_link_cube(d).map_err(link_failure)?;
        let defects = c.d_squared_defects();
        if defects != 0 {
            return Err(Failure::Internal(json!({ "error": "d² ≠ 0", "diagram": d.name, "nonzero_entries": defects })));
        }
        let tables = homology_tables(&c, &specs);
        let mut chi = serde_json::Map::new();
        if euler {
            for (name, tab) in &tables {
                chi.insert(name.clone(), Value::String(laurent_to_string(&tab.euler_characteristic())));
            }
        }
        if t.tsv {
            for (name, tab) in &tables {
                tsv.push(format!("# {} {}\n{}", d.name.as_deref().unwrap_or("link"), name, tab.to_tsv()));
            }
        } else {
            let mut r = json!({
                "name": d.name,
                "crossings": cube.crossings(),
                "n_plus": cube.n_plus,
                "n_minus": cube.n_minus,
                "homology": render(tables, false),
            });
            if euler {
                r["euler"] = Value::Object(chi);
            }
            reports.push(r);
        }
    }
    Ok(if t.tsv { tsv.join("\n") } else { pretty(&Value::Array(reports)) })
}

fn topography(n: usize) -> Outcome {
    let t = TopographyComplex::new(n).map_err(|e| Failure::Input(e.to_string()))?;
    let mut v = serde_json::to_value(&t).expect("json");
    v["euler_characteristic"] = json!(t.euler_characteristic());
    Ok(pretty(&v))
}

fn report_json(r: &CoherenceReport) -> Value {
    json!({ "pass": r.ok(), "report": r })
}

fn check_grading(category: Category, n: usize) -> Outcome {
    let h = ArcAlgebra::new(n);
    let support = h.degree_support();
    match category {
        Category::Trivial => {
            let r = coherence_sweep(&Trivialized(h.category().clone()), &support);
            let out = json!({ "category": "trivial", "n": n, "coherence": report_json(&r) });
            if r.ok() {
                Ok(pretty(&out))
            } else {
                Err(Failure::Internal(out))
            }
        }
        Category::G => {
            let c: &Arc<ArcCategory> = h.category();
            let r = coherence_sweep(c, &support);
            let mut log: Vec<Value> = c.iota_log().iter().map(|x| serde_json::to_value(x).expect("json")).collect();
            log.sort_by_key(|v| v.to_string());
            let bad: Vec<&Value> = log
                .iter()
                .filter(|v| {
                    let local = &v["local"];
                    !v["error"].is_null() || local.is_null() || !v["global"].as_array().is_some_and(|g| g.contains(local))
                })
                .collect();
            let chart_mismatch = log.iter().filter(|v| !v["chart"].is_null() && v["chart"] != v["local"]).count();
            let out = json!({
                "category": "g",
                "n": n,
                "objects": h.matchings.len(),
                "support": support.len(),
                "identity_loops": support.iter().filter(|f| c.is_loop(f)).count(),
                "coherence": report_json(&r),
                "iota": { "evaluations": log.len(), "inconsistent": bad.len(), "chart_mismatches": chart_mismatch },
            });
            if r.ok() && bad.is_empty() && chart_mismatch == 0 {
                Ok(pretty(&out))
            } else {
                Err(Failure::Internal(json!({ "summary": out, "inconsistent_iota": bad })))
            }
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::ArcAlgebra { n, check } => arc_algebra(n as usize, check),
        Cmd::Center { n } => center_cmd(n as usize),
        Cmd::Hochschild { n, nmax, tables } => hochschild(n as usize, nmax, &tables),
        Cmd::Cohomology { n, nmax, check, tables } => cohomology(n as usize, nmax, check, &tables),
        Cmd::Khovanov { pd, euler, tables } => khovanov(&pd, euler, &tables),
        Cmd::Topography { n } => topography(n),
        Cmd::CheckGrading { category, n } => check_grading(category, n as usize),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool");
    }
    match run(cli) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(payload)) => {
            println!("{}", pretty(&payload));
            eprintln!("error: internal consistency check failed");
            ExitCode::from(1)
        }
    }
}
