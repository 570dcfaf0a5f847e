//! Command-line front end: parses surface descriptions, dispatches the
//! computations, manages caches, and emits JSON / CSV / human-readable
//! polynomials.
//!
//! Exit codes: 0 success; 2 validation errors (non-generic input, schema
//! violations) with a machine-readable error document; 1 internal assertion
//! failures; 64 usage errors.

mod input;
mod output;

use charvar_core::cache::CacheDir;
use charvar_core::charvar::{
    self, e_polynomial, mixed_hodge_conjectural, poincare_ih, poincare_ss, trivial_eta,
    twisted_poincare, SurfaceData,
};
use charvar_core::fq;
use charvar_core::jsonio;
use charvar_core::macdonald;
use charvar_core::partition::Partition;
use charvar_core::Error as CoreError;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "charvar",
    about = "Exact cohomological polynomials of character varieties",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Cache directory (default: $CHARVAR_CACHE_DIR, else ~/.cache/charvar)
    #[arg(long)]
    cache_dir: Option<String>,
    /// Disable the on-disk cache entirely
    #[arg(long)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection-cohomology Poincaré polynomial of a character variety
    Poincare {
        #[arg(long)]
        genus: u32,
        /// Rank n (required when punctures use {"auto": true})
        #[arg(long)]
        rank: Option<u32>,
        /// Puncture JSON (inline or @file)
        #[arg(long)]
        punctures: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Poincaré polynomial for semisimple classes given by multiplicities
    PoincareSs {
        #[arg(long)]
        genus: u32,
        /// Multiplicity partitions, one per puncture, e.g. `[[1,1],[2]]`
        #[arg(long)]
        nus: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Twisted Poincaré polynomial for a relative Weyl group class
    Twisted {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        punctures: String,
        /// Class label: nested arrays keyed `[puncture][eigenvalue][slot]`,
        /// each slot a partition; omit for the trivial class
        #[arg(long)]
        eta: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// E-polynomial (proved specialization)
    Epoly {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        punctures: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Conjectural mixed-Hodge polynomial in (q, v)
    MixedHodge {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        rank: Option<u32>,
        #[arg(long)]
        punctures: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The degree-n kernel coefficients (power-sum multi-basis)
    Kernel {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Schur expansion of a modified Macdonald polynomial
    Macdonald {
        /// Partition, e.g. `"2"` or `"2,1"` or `"[2,1]"`
        #[arg(long)]
        partition: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Brute-force point counts over prime fields
    CountPoints {
        #[arg(long)]
        genus: u32,
        /// Primes, e.g. "3,5,7"
        #[arg(long)]
        q: String,
        /// Class JSON: `[{"eigenvalues": [{"value": 2, "jordan": [1]}, ...]}, ...]`
        #[arg(long)]
        classes: Option<String>,
        /// Instead of --classes: search generic rank-2 regular semisimple
        /// data with this many punctures per prime
        #[arg(long)]
        auto_rss_k: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Point count of a Fricke cubic surface
    FrickeCount {
        #[arg(long)]
        q: u64,
        /// Trace parameters `[tr X1, tr X2, tr X3, tr X1X2X3]`
        #[arg(long)]
        traces: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Runs the identity suites over small ranks
    CheckIdentities {
        #[arg(long, default_value = "2")]
        max_rank: u32,
        #[arg(long, default_value = "0")]
        genus: u32,
        /// Number of punctures
        #[arg(long, default_value = "1")]
        punctures: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Cache administration
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand)]
enum CacheAction {
    /// Report entry counts and file sizes
    Status {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Remove versioned cache files
    Clear {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Precompute Macdonald tables to degree n and the (n, g, k) kernel
    Warm {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(64);
                }
            }
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let (code, kind) = classify(&e);
            let doc = json!({
                "error": {
                    "kind": kind,
                    "message": e.to_string(),
                }
            });
            eprintln!("{}", jsonio::to_canonical_string(&doc));
            std::process::exit(code);
        }
    }
}

fn classify(e: &CoreError) -> (i32, &'static str) {
    match e {
        CoreError::NonGeneric => (2, "non_generic"),
        CoreError::InvalidInput(_) => (2, "invalid_input"),
        CoreError::SizeMismatch(_) | CoreError::ShapeMismatch(_) => (2, "shape"),
        CoreError::DegreeBound { .. } | CoreError::SizeGuard(_) => (2, "size_guard"),
        CoreError::CacheVersion { .. } => (2, "cache_version"),
        _ => (1, "internal"),
    }
}

fn cache_for(common: &CommonOpts) -> Result<Option<CacheDir>, CoreError> {
    if common.no_cache {
        return Ok(None);
    }
    Ok(Some(CacheDir::resolve(common.cache_dir.as_deref())?))
}

/// Loads cached tables relevant to a kernel computation, runs it, saves back.
fn with_cache<T>(
    common: &CommonOpts,
    n: u32,
    g: u32,
    k: usize,
    f: impl FnOnce() -> Result<T, CoreError>,
) -> Result<T, CoreError> {
    let cache = cache_for(common)?;
    if let Some(c) = &cache {
        c.load_macdonald()?;
        c.load_kernel(n, g, k)?;
    }
    let out = f()?;
    if let Some(c) = &cache {
        c.save_macdonald()?;
        if let Ok(kr) = charvar_core::kernel::hlv_kernel(n, g, k) {
            c.save_kernel(&kr)?;
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<i32, CoreError> {
    match cli.command {
        Command::Poincare {
            genus,
            rank,
            punctures,
            common,
        } => {
            let s = input::parse_surface(genus, rank, &punctures)?;
            let poly = with_cache(&common, s.rank(), genus, s.punctures().len(), || {
                poincare_ih(&s)
            })?;
            let doc = output::surface_poly_doc(&s, "poincare", &poly, None)?;
            output::emit(
                common.format,
                &doc,
                || output::poly_csv(&poly),
                || format!("P_c = {}", poly.render("v")),
            );
            Ok(0)
        }
        Command::PoincareSs { genus, nus, common } => {
            let nus = input::parse_partition_list(&nus)?;
            let n: u32 = nus.first().map(|p| p.size()).unwrap_or(0);
            let poly = with_cache(&common, n, genus, nus.len(), || poincare_ss(genus, &nus))?;
            let doc = json!({
                "n": n,
                "genus": genus,
                "nus": nus.iter().map(jsonio::partition_to_json).collect::<Vec<_>>(),
                "poincare": output::poly_json_checked(&poly)?,
            });
            output::emit(
                common.format,
                &doc,
                || output::poly_csv(&poly),
                || format!("P_c = {}", poly.render("v")),
            );
            Ok(0)
        }
        Command::Twisted {
            genus,
            rank,
            punctures,
            eta,
            common,
        } => {
            let s = input::parse_surface(genus, rank, &punctures)?;
            let eta = match eta {
                Some(text) => input::parse_eta(&text)?,
                None => trivial_eta(&s),
            };
            let poly = with_cache(&common, s.rank(), genus, s.punctures().len(), || {
                twisted_poincare(&s, &eta)
            })?;
            let doc = output::surface_poly_doc(&s, "twisted_poincare", &poly, None)?;
            output::emit(
                common.format,
                &doc,
                || output::poly_csv(&poly),
                || format!("P_c^eta = {}", poly.render("v")),
            );
            Ok(0)
        }
        Command::Epoly {
            genus,
            rank,
            punctures,
            common,
        } => {
            let s = input::parse_surface(genus, rank, &punctures)?;
            let poly = with_cache(&common, s.rank(), genus, s.punctures().len(), || {
                e_polynomial(&s)
            })?;
            let doc = output::surface_poly_doc(&s, "epoly", &poly, Some(false))?;
            output::emit(
                common.format,
                &doc,
                || output::poly_csv(&poly),
                || format!("E = {}", poly.render("q")),
            );
            Ok(0)
        }
        Command::MixedHodge {
            genus,
            rank,
            punctures,
            common,
        } => {
            let s = input::parse_surface(genus, rank, &punctures)?;
            let mh = with_cache(&common, s.rank(), genus, s.punctures().len(), || {
                mixed_hodge_conjectural(&s)
            })?;
            let doc = json!({
                "n": s.rank(),
                "dim": s.dim_charvar()?,
                "generic": true,
                "mixed_hodge": jsonio::bipoly_to_json(&mh),
                "conjectural": true,
            });
            let mh_csv = mh.clone();
            output::emit(
                common.format,
                &doc,
                move || {
                    let mut rows = String::from("q_exp,v_exp,coeff\n");
                    for (&(a, b), c) in mh_csv.terms() {
                        rows.push_str(&format!(
                            "{a},{b},{}\n",
                            charvar_core::rat::rat_to_string(c)
                        ));
                    }
                    rows
                },
                || format!("IH_c (CONJECTURAL) = {}", mh.render("q", "v", false)),
            );
            Ok(0)
        }
        Command::Kernel {
            n,
            genus,
            k,
            common,
        } => {
            let kr = with_cache(&common, n, genus, k, || {
                charvar_core::kernel::hlv_kernel(n, genus, k).map(|a| (*a).clone())
            })?;
            let doc = json!({
                "n": n,
                "g": genus,
                "k": k,
                "kernel": jsonio::multisym_to_json(kr.kernel()),
            });
            output::emit(
                common.format,
                &doc,
                String::new,
                || format!("{}", kr.kernel()),
            );
            Ok(0)
        }
        Command::Macdonald { partition, common } => {
            let lam = input::parse_partition(&partition)?;
            let cache = cache_for(&common)?;
            if let Some(c) = &cache {
                c.load_macdonald()?;
            }
            let h = macdonald::htilde(&lam)?;
            if let Some(c) = &cache {
                c.save_macdonald()?;
            }
            let mut obj = serde_json::Map::new();
            for (key, coeff) in h.terms() {
                let parts: Vec<String> = key.parts().iter().map(|x| x.to_string()).collect();
                let name = format!("s[{}]", parts.join(","));
                let rendered = coeff.poly()?.render("q", "t", true);
                obj.insert(name, Value::String(rendered));
            }
            let doc = Value::Object(obj);
            let doc_csv = doc.clone();
            output::emit(
                common.format,
                &doc,
                move || {
                    let mut rows = String::new();
                    if let Value::Object(o) = &doc_csv {
                        for (k, v) in o {
                            rows.push_str(&format!("{k},{}\n", v.as_str().unwrap_or("")));
                        }
                    }
                    rows
                },
                || format!("Htilde_{lam} = {}", *h),
            );
            Ok(0)
        }
        Command::CountPoints {
            genus,
            q,
            classes,
            auto_rss_k,
            common,
        } => {
            let primes = input::parse_primes(&q)?;
            let mut samples = Vec::new();
            for &prime in &primes {
                let specs = match (&classes, auto_rss_k) {
                    (Some(text), None) => input::parse_classes(text, prime)?,
                    (None, Some(k)) => fq::search_generic_rss_rank2(k, prime)
                        .ok_or(CoreError::NonGeneric)?,
                    _ => {
                        return Err(CoreError::InvalidInput(
                            "provide exactly one of --classes or --auto-rss-k".to_string(),
                        ))
                    }
                };
                let count = fq::count_points(genus, prime, &specs)?;
                samples.push((prime, count));
            }
            let interpolated = if samples.len() >= 2 {
                Some(fq::lagrange_interpolate(&samples))
            } else {
                None
            };
            let mut doc = serde_json::Map::new();
            doc.insert(
                "samples".to_string(),
                Value::Array(
                    samples
                        .iter()
                        .map(|&(q, c)| json!({"q": q, "count": c}))
                        .collect(),
                ),
            );
            if samples.len() == 1 {
                doc.insert("q".to_string(), json!(samples[0].0));
                doc.insert("count".to_string(), json!(samples[0].1));
            }
            if let Some(e) = &interpolated {
                doc.insert("interpolated_E".to_string(), output::poly_json_checked(e)?);
            }
            let doc = Value::Object(doc);
            let rows_samples = samples.clone();
            output::emit(
                common.format,
                &doc,
                move || {
                    let mut rows = String::from("q,count\n");
                    for &(q, c) in &rows_samples {
                        rows.push_str(&format!("{q},{c}\n"));
                    }
                    rows
                },
                || {
                    samples
                        .iter()
                        .map(|&(q, c)| format!("q={q}: {c}"))
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            Ok(0)
        }
        Command::FrickeCount { q, traces, common } => {
            if !fq::is_prime(q) {
                return Err(CoreError::InvalidInput(format!("{q} is not prime")));
            }
            let t = input::parse_traces(&traces)?;
            let count = fq::fricke_count(q, t);
            let doc = json!({"q": q, "count": count});
            output::emit(
                common.format,
                &doc,
                || format!("q,count\n{q},{count}\n"),
                || format!("q={q}: {count}"),
            );
            Ok(0)
        }
        Command::CheckIdentities {
            max_rank,
            genus,
            punctures,
            common,
        } => {
            let report = with_cache(&common, max_rank, genus, punctures, || {
                run_identity_suite(max_rank, genus, punctures)
            })?;
            let ok = report["resolution_identity"] == "pass"
                && report["twisted_trivial"] == "pass";
            let pretty = jsonio::to_canonical_string(&report);
            output::emit(common.format, &report, String::new, || pretty.clone());
            Ok(if ok { 0 } else { 1 })
        }
        Command::Cache { action } => {
            let (doc, common) = match action {
                CacheAction::Status { common } => {
                    let cache = CacheDir::resolve(common.cache_dir.as_deref())?;
                    (cache.status()?, common)
                }
                CacheAction::Clear { common } => {
                    let cache = CacheDir::resolve(common.cache_dir.as_deref())?;
                    let removed = cache.clear()?;
                    (json!({"cleared": removed}), common)
                }
                CacheAction::Warm {
                    n,
                    genus,
                    k,
                    common,
                } => {
                    let cache = CacheDir::resolve(common.cache_dir.as_deref())?;
                    (cache.warm(n, genus, k)?, common)
                }
            };
            let pretty = jsonio::to_canonical_string(&doc);
            output::emit(common.format, &doc, String::new, || pretty.clone());
            Ok(0)
        }
    }
}

/// Resolution identity and trivial-eta twisted consistency, exhaustively
/// over Jordan structures with rank <= max_rank at the given genus and
/// puncture count.
fn run_identity_suite(max_rank: u32, genus: u32, punctures: usize) -> Result<Value, CoreError> {
    let mut cases = 0u32;
    let mut res_pass = true;
    let mut tw_pass = true;
    for n in 1..=max_rank {
        let structures = charvar::all_jordan_structures(n);
        let mut combos: Vec<Vec<Vec<Partition>>> = vec![Vec::new()];
        for _ in 0..punctures {
            let mut next = Vec::new();
            for prefix in &combos {
                for s in &structures {
                    let mut v = prefix.clone();
                    v.push(s.clone());
                    next.push(v);
                }
            }
            combos = next;
        }
        for jordan in combos {
            let s = SurfaceData::with_auto_eigenvalues(genus, jordan)?;
            cases += 1;
            let rep = charvar::resolution_identity_check(&s)?;
            if !rep.passed {
                res_pass = false;
            }
            // trivial-eta twist must equal the h-probe (resolution) polynomial
            let tw = twisted_poincare(&s, &trivial_eta(&s))?;
            let kr = charvar_core::kernel::hlv_kernel(n, genus, punctures)?;
            let v = charvar_core::UniPoly::var();
            let neg1 = charvar_core::UniPoly::constant(charvar_core::rat::rat_int(-1));
            let h = charvar_core::kernel::specialize_pair(
                &kr,
                &charvar::h_mu_prime(&s)?,
                &neg1,
                &v,
            )?;
            let d = s.dim_charvar()?;
            if d >= 0 {
                if tw != h.shift(d as usize) {
                    tw_pass = false;
                }
            } else if !tw.is_zero() || !h.is_zero() {
                tw_pass = false;
            }
        }
    }
    Ok(json!({
        "resolution_identity": if res_pass { "pass" } else { "fail" },
        "twisted_trivial": if tw_pass { "pass" } else { "fail" },
        "cases": cases,
    }))
}
