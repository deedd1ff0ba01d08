//! `robcirc`: circuits, robustness and robust fractions from the shell.
//!
//! Exit status is 0 on success, 2 when a budget is exceeded and 1 on any
//! other failure (bad input or a failed check).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use robcirc::circuits::symmetry::{classify_by_entry_pattern, classify_circuits, entry_pattern, SymmetryGroup};
use robcirc::circuits::{
    circuits_of_model, column_deletion_circuits, restrict_circuits, EnumerationOptions, Strategy,
    DEFAULT_PRIMAL_BUDGET,
};
use robcirc::design::catalog::{self, catalog};
use robcirc::design::{corpus, model_matrix, submatrix, CandidateSet, Coding, FactorSpec, Fraction};
use robcirc::design::{ModelMatrix, ModelSpec};
use robcirc::linalg::{self, IntMatrix};
use robcirc::optimizer::{optimize, ExchangeConfig, TieRule, Variant};
use robcirc::robustness::{
    budget_from_env, d_efficiency, robustness_with, tu_equivalence_check, Method, DEFAULT_ENUMERATION_BUDGET,
};
use robcirc::{io, sim};

#[derive(Parser)]
#[command(name = "robcirc", version, about = "Circuit bases and robustness of experimental designs")]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
#[group(id = "source", multiple = false)]
struct Source {
    /// Full factorial with these level counts, e.g. 2,3,4.
    #[arg(long, value_delimiter = ',')]
    full: Option<Vec<usize>>,
    /// Named candidate set (see `robcirc catalog`).
    #[arg(long)]
    catalog: Option<String>,
    /// Named design/model pair (see `robcirc catalog`).
    #[arg(long)]
    corpus: Option<String>,
    /// Candidate-set CSV with header f1,...,fm.
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Model matrix in 4ti2 text, one row per point.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Design {
    #[command(flatten)]
    source: Source,
    /// main, 2way, 3way or a model JSON file. Defaults to main, or to the
    /// corpus model with --corpus.
    #[arg(long)]
    model: Option<String>,
    #[arg(long, value_enum, default_value = "indicator")]
    coding: CodingArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodingArg {
    Indicator,
    Pm1,
}

impl From<CodingArg> for Coding {
    fn from(c: CodingArg) -> Coding {
        match c {
            CodingArg::Indicator => Coding::Indicator01,
            CodingArg::Pm1 => Coding::PlusMinusOne,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Primal,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Rank,
    Circuit,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Full,
    Reduced,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::Reduced => Variant::Reduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TieArg {
    Lexicographic,
    SeededRandom,
}

impl From<TieArg> for TieRule {
    fn from(t: TieArg) -> TieRule {
        match t {
            TieArg::Lexicographic => TieRule::Lexicographic,
            TieArg::SeededRandom => TieRule::SeededRandom,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// List named designs, or print one as CSV.
    Catalog { name: Option<String> },
    /// Export the model matrix in 4ti2 text.
    Matrix {
        #[command(flatten)]
        design: Design,
        /// Write the transpose (one column per point), as 4ti2 expects.
        #[arg(long)]
        transpose: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the circuit basis.
    Circuits {
        #[command(flatten)]
        design: Design,
        /// Keep circuits with support at most this size.
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        /// Circuit file; metadata goes to <out>.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against an external 4ti2 circuit file.
        #[arg(long)]
        diff: Option<PathBuf>,
    },
    /// Group circuits into symmetry classes.
    Classify {
        #[command(flatten)]
        design: Design,
        #[arg(long)]
        bound: Option<usize>,
        /// Print one line per class.
        #[arg(long)]
        verbose: bool,
    },
    /// Robustness of a fraction (default: the whole candidate set).
    Robustness {
        #[command(flatten)]
        design: Design,
        /// File of 0-based row indices.
        #[arg(long)]
        fraction: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "rank")]
        method: MethodArg,
    },
    /// det(X^t X) and D-efficiency of a fraction.
    DEff {
        #[command(flatten)]
        design: Design,
        #[arg(long)]
        fraction: Option<PathBuf>,
    },
    /// Run the circuit exchange from a given or seeded random start.
    Optimize {
        #[command(flatten)]
        design: Design,
        /// Size of the random start.
        #[arg(long)]
        n: Option<usize>,
        /// Start fraction file instead of a random one.
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 20)]
        max_iter: usize,
        #[arg(long, value_enum, default_value = "lexicographic")]
        tie_rule: TieArg,
        /// Support bound of the working basis (reduced variant only).
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Random-start study; prints the summary table as CSV.
    Simulate {
        /// JSON config: one object or an array of them.
        #[arg(long, conflicts_with_all = ["design", "n"])]
        config: Option<PathBuf>,
        /// Corpus name.
        #[arg(long)]
        design: Option<String>,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, default_value_t = 1000)]
        replicates: usize,
        #[arg(long)]
        table: Option<PathBuf>,
        /// Per-replicate CSV; needs a single size.
        #[arg(long)]
        scatter: Option<PathBuf>,
    },
    /// Identity and consistency checks.
    Verify(VerifyArgs),
    /// Column-deletion circuits of a saturated fraction.
    Coldel {
        #[command(flatten)]
        design: Design,
        #[arg(long)]
        fraction: Option<PathBuf>,
    },
    /// D-efficiency against robustness for random fractions and the D-optimum.
    Scatter {
        #[command(flatten)]
        design: Design,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Skip the exhaustive D-optimal search.
        #[arg(long)]
        sample_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    tu: bool,
    #[arg(long)]
    cauchy_binet: bool,
    #[arg(long)]
    coding_invariance: bool,
    #[arg(long)]
    restriction: bool,
    #[command(flatten)]
    design: Design,
    #[arg(long)]
    fraction: Option<PathBuf>,
    /// Sub-fraction for --restriction.
    #[arg(long)]
    sub: Option<PathBuf>,
    /// Random +/-1 matrix ROWSxCOLS for --cauchy-binet.
    #[arg(long)]
    random: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
}

struct Loaded {
    candidates: Option<CandidateSet>,
    mm: ModelMatrix,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn model_spec(name: &str, factors: &FactorSpec, coding: Coding) -> Result<ModelSpec> {
    Ok(match name {
        "main" => ModelSpec::main_effects(factors, coding),
        "2way" => ModelSpec::hierarchical(factors, coding, 2),
        "3way" => ModelSpec::hierarchical(factors, coding, 3),
        path => io::parse_model_spec(&read(Path::new(path))?)?,
    })
}

fn load(d: &Design) -> Result<Loaded> {
    let s = &d.source;
    let coding = Coding::from(d.coding);
    let cs = if let Some(levels) = &s.full {
        robcirc::build_full_factorial(&FactorSpec::new(levels.clone())?)?
    } else if let Some(name) = &s.catalog {
        catalog(name)?
    } else if let Some(name) = &s.corpus {
        let c = corpus::corpus(name)?;
        let mm = match &d.model {
            None => c.model_matrix()?,
            Some(m) => model_matrix(&c.candidates, &model_spec(m, c.candidates.factors(), coding)?)?,
        };
        return Ok(Loaded {
            candidates: Some(c.candidates),
            mm,
        });
    } else if let Some(path) = &s.candidates {
        io::parse_candidate_csv_with(&read(path)?, None)?
    } else if let Some(path) = &s.matrix {
        let x = io::parse_matrix_4ti2(&read(path)?)?;
        let labels = (0..x.cols()).map(|j| format!("c{}", j + 1)).collect();
        let rows = (0..x.rows()).collect();
        return Ok(Loaded {
            candidates: None,
            mm: ModelMatrix::from_matrix(x, rows, labels)?,
        });
    } else {
        bail!("no design given; use --full, --catalog, --corpus, --candidates or --matrix");
    };
    let spec = model_spec(d.model.as_deref().unwrap_or("main"), cs.factors(), coding)?;
    let mm = model_matrix(&cs, &spec)?;
    Ok(Loaded {
        candidates: Some(cs),
        mm,
    })
}

fn load_fraction(path: Option<&Path>, k: usize) -> Result<Fraction> {
    match path {
        Some(p) => Ok(io::parse_fraction(&read(p)?, k)?),
        None => Ok(Fraction::new(k, (0..k).collect())?),
    }
}

fn enum_options(strategy: StrategyArg) -> EnumerationOptions {
    EnumerationOptions {
        strategy: match strategy {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Primal => Strategy::Primal,
            StrategyArg::Dual => Strategy::Dual,
        },
        budget: budget_from_env(DEFAULT_PRIMAL_BUDGET),
    }
}

fn require_seed(seed: Option<u64>, cmd: &str) -> Result<u64> {
    seed.ok_or_else(|| anyhow!("{cmd} needs --seed"))
}

fn rows_text(f: &Fraction) -> String {
    f.rows().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Catalog { name: None } => {
            for n in catalog::NAMES {
                let cs = catalog(n)?;
                println!("catalog={n} points={} levels={:?}", cs.len(), cs.factors().levels());
            }
            for n in corpus::CORPUS_NAMES {
                let c = corpus::corpus(n)?;
                println!("corpus={n} points={} p={}", c.candidates.len(), c.model.num_terms());
            }
        }
        Cmd::Catalog { name: Some(n) } => {
            let cs = match catalog(&n) {
                Ok(cs) => cs,
                Err(_) => corpus::corpus(&n)?.candidates,
            };
            print!("{}", io::write_candidate_csv(&cs));
        }
        Cmd::Matrix { design, transpose, out } => {
            let l = load(&design)?;
            let m = if transpose { l.mm.transpose() } else { l.mm.matrix().clone() };
            write_or_print(out.as_deref(), &io::write_matrix_4ti2(&m))?;
        }
        Cmd::Circuits {
            design,
            bound,
            strategy,
            out,
            diff,
        } => {
            let l = load(&design)?;
            let basis = circuits_of_model(&l.mm, bound, &enum_options(strategy))?;
            println!("{}", basis.summary_line());
            println!(
                "strategy={} exhaustive={} fingerprint={}",
                serde_json::to_value(basis.strategy())?.as_str().unwrap_or("?"),
                basis.is_exhaustive(),
                basis.fingerprint()
            );
            if let Some(out) = out {
                fs::write(&out, basis.to_4ti2())?;
                let mut side = out.clone().into_os_string();
                side.push(".json");
                fs::write(&side, serde_json::to_string_pretty(&basis.metadata())?)?;
            }
            if let Some(path) = diff {
                let (len, vs) = io::parse_vectors_4ti2(&read(&path)?)?;
                if len != basis.num_points() {
                    bail!(
                        "external file has vectors of length {len}, the design has {} points",
                        basis.num_points()
                    );
                }
                let d = basis.diff(&vs)?;
                println!(
                    "diff only_ours={} only_theirs={} equal={}",
                    d.only_ours.len(),
                    d.only_theirs.len(),
                    d.is_equal()
                );
                if !d.is_equal() {
                    bail!("circuit sets differ");
                }
            }
        }
        Cmd::Classify { design, bound, verbose } => {
            let l = load(&design)?;
            let basis = circuits_of_model(&l.mm, bound, &enum_options(StrategyArg::Auto))?;
            println!("{}", basis.summary_line());
            let patterns = classify_by_entry_pattern(&basis);
            let group = l.candidates.as_ref().map(SymmetryGroup::for_candidate_set);
            let orbits = match group {
                Some(Ok(g)) => classify_circuits(&basis, &g).ok(),
                _ => None,
            };
            match &orbits {
                Some(o) => println!("patterns={} orbits={}", patterns.len(), o.len()),
                None => println!("patterns={} orbits=unavailable", patterns.len()),
            }
            if verbose {
                for (i, c) in patterns.iter().enumerate() {
                    let pat: Vec<String> = entry_pattern(&c.representative).iter().map(|x| x.to_string()).collect();
                    println!(
                        "pattern={i} size={} support={} entries={}",
                        c.size,
                        c.support_size,
                        pat.join(",")
                    );
                }
                for (i, o) in orbits.iter().flatten().enumerate() {
                    println!("orbit={i} size={} support={}", o.size, o.support_size);
                }
            }
        }
        Cmd::Robustness {
            design,
            fraction,
            method,
        } => {
            let l = load(&design)?;
            let frac = load_fraction(fraction.as_deref(), l.mm.n())?;
            let x = submatrix(&l.mm, &frac)?;
            let budget = budget_from_env(DEFAULT_ENUMERATION_BUDGET);
            let rank = || robustness_with(&x, Method::RankEnumeration, None, budget);
            let circuit = || -> Result<_> {
                let basis = circuits_of_model(&l.mm, None, &enum_options(StrategyArg::Auto))?;
                Ok(robustness_with(&x, Method::CircuitCheck, Some(&basis), budget)?)
            };
            match method {
                MethodArg::Rank => println!("{}", rank()?),
                MethodArg::Circuit => println!("{}", circuit()?),
                MethodArg::Both => {
                    let (a, b) = (rank()?, circuit()?);
                    println!("{a}\n{b}");
                    let agree = a.saturated_count == b.saturated_count;
                    println!("agree={agree}");
                    if !agree {
                        bail!("methods disagree");
                    }
                }
            }
        }
        Cmd::DEff { design, fraction } => {
            let l = load(&design)?;
            let frac = load_fraction(fraction.as_deref(), l.mm.n())?;
            let e = d_efficiency(&submatrix(&l.mm, &frac)?)?;
            println!("n={} p={} det_xtx={} d_eff={:.4}", e.n, e.p, e.det_xtx, e.d_efficiency);
        }
        Cmd::Optimize {
            design,
            n,
            start,
            variant,
            seed,
            max_iter,
            tie_rule,
            bound,
            out,
            trace,
        } => {
            let seed = require_seed(seed, "optimize")?;
            let l = load(&design)?;
            let k = l.mm.n();
            let start = match (start, n) {
                (Some(p), _) => io::parse_fraction(&read(&p)?, k)?,
                (None, Some(n)) => sim::seeded_fraction(k, n, seed)?,
                (None, None) => bail!("optimize needs --n or --start"),
            };
            let basis = match bound {
                Some(b) => circuits_of_model(&l.mm, Some(b), &enum_options(StrategyArg::Auto))?,
                None => sim::exchange_basis(&l.mm, budget_from_env(DEFAULT_PRIMAL_BUDGET))?,
            };
            let cfg = ExchangeConfig {
                max_iter,
                variant: variant.into(),
                seed,
                tie_rule: tie_rule.into(),
            };
            let (end, tr) = optimize(&start, &basis, &cfg)?;
            let budget = budget_from_env(DEFAULT_ENUMERATION_BUDGET);
            let before = robustness_with(&submatrix(&l.mm, &start)?, Method::RankEnumeration, None, budget)?;
            let after = robustness_with(&submatrix(&l.mm, &end)?, Method::RankEnumeration, None, budget)?;
            println!("start {before}");
            println!("final {after}");
            println!(
                "iterations={} termination={} rows={}",
                tr.steps.len(),
                serde_json::to_value(tr.termination)?.as_str().unwrap_or("?"),
                rows_text(&end)
            );
            if let Some(p) = out {
                fs::write(p, io::write_fraction(&end))?;
            }
            if let Some(p) = trace {
                fs::write(p, tr.to_json_lines()?)?;
            }
        }
        Cmd::Simulate {
            config,
            design,
            n,
            seed,
            variant,
            replicates,
            table,
            scatter,
        } => {
            let configs: Vec<sim::SimConfig> = match config {
                Some(p) => {
                    let v: serde_json::Value = serde_json::from_str(&read(&p)?)?;
                    if v.is_array() {
                        serde_json::from_value(v)?
                    } else {
                        vec![serde_json::from_value(v)?]
                    }
                }
                None => {
                    let design = design.ok_or_else(|| anyhow!("simulate needs --config or --design"))?;
                    let seed = require_seed(seed, "simulate")?;
                    if n.is_empty() {
                        bail!("simulate needs --n");
                    }
                    n.iter()
                        .map(|&n| sim::SimConfig {
                            replicates,
                            ..sim::SimConfig::new(&design, n, seed, variant.into())
                        })
                        .collect()
                }
            };
            if scatter.is_some() && configs.len() != 1 {
                bail!("--scatter needs exactly one simulation size");
            }
            let mut rows = Vec::new();
            for cfg in &configs {
                let (summary, records) = sim::run_simulation(cfg)?;
                if let Some(p) = &scatter {
                    fs::write(p, sim::scatter_csv(&records))?;
                }
                rows.push(summary);
            }
            write_or_print(table.as_deref(), &sim::table_csv(&rows))?;
        }
        Cmd::Verify(v) => verify(v)?,
        Cmd::Coldel { design, fraction } => {
            let l = load(&design)?;
            let frac = load_fraction(fraction.as_deref(), l.mm.n())?;
            let cols = column_deletion_circuits(&submatrix(&l.mm, &frac)?)?;
            for c in &cols {
                let entries: Vec<String> = c.circuit.0.iter().map(|x| x.to_string()).collect();
                println!(
                    "column={} label={} zeros={} circuit={}",
                    c.column,
                    c.label,
                    c.zeros,
                    entries.join(",")
                );
            }
            let zeros: usize = cols.iter().map(|c| c.zeros).sum();
            if zeros == 0 {
                println!("circuits={} zeros=0 verdict=\"fully column-deletion robust\"", cols.len());
            } else {
                println!("circuits={} zeros={zeros} verdict=\"singular sub-fractions present\"", cols.len());
            }
        }
        Cmd::Scatter {
            design,
            n,
            samples,
            seed,
            sample_only,
            out,
        } => {
            let seed = require_seed(seed, "scatter")?;
            let l = load(&design)?;
            let cs = l
                .candidates
                .ok_or_else(|| anyhow!("scatter needs a candidate set, not a bare matrix"))?;
            let pts = sim::dopt_scatter(&cs, &l.mm, n, samples, seed, sample_only)?;
            write_or_print(out.as_deref(), &sim::dopt_csv(&pts))?;
        }
    }
    Ok(())
}

fn verify(v: VerifyArgs) -> Result<()> {
    let checks = [v.tu, v.cauchy_binet, v.coding_invariance, v.restriction];
    if checks.iter().filter(|&&c| c).count() != 1 {
        bail!("verify needs exactly one of --tu, --cauchy-binet, --coding-invariance, --restriction");
    }
    let src = &v.design.source;
    let given = src.full.is_some()
        || src.catalog.is_some()
        || src.corpus.is_some()
        || src.candidates.is_some()
        || src.matrix.is_some();
    let loaded = if given { Some(load(&v.design)?) } else { None };
    let need = || loaded.as_ref().ok_or_else(|| anyhow!("this check needs a design"));
    let (kind, pass, detail) = if v.tu {
        let l = need()?;
        let frac = load_fraction(v.fraction.as_deref(), l.mm.n())?;
        let x = submatrix(&l.mm, &frac)?;
        let r = tu_equivalence_check(&x)?;
        (
            "tu",
            r.holds(),
            format!(
                "det_xtx={} saturated={} r={} d_eff={:.4}",
                r.det_xtx, r.saturated_count, r.robustness, r.d_efficiency
            ),
        )
    } else if v.cauchy_binet {
        let m = match (&v.random, &loaded) {
            (Some(shape), _) => {
                let (r, c) = shape
                    .split_once('x')
                    .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                    .ok_or_else(|| anyhow!("--random expects ROWSxCOLS"))?;
                let seed = require_seed(v.seed, "verify --random")?;
                random_pm1(r, c, seed)
            }
            (None, Some(l)) => {
                let frac = load_fraction(v.fraction.as_deref(), l.mm.n())?;
                submatrix(&l.mm, &frac)?.matrix().clone()
            }
            (None, None) => bail!("--cauchy-binet needs a design or --random"),
        };
        let (det, sum) = linalg::cauchy_binet_verify(&m)?;
        ("cauchy_binet", det == sum, format!("det_xtx={det} minor_sum={sum}"))
    } else if v.coding_invariance {
        let d = &v.design;
        let l = need()?;
        let cs = l.candidates.as_ref().ok_or_else(|| anyhow!("needs a candidate set"))?;
        if cs.factors().levels().iter().any(|&s| s != 2) {
            bail!("coding invariance applies to two-level designs");
        }
        let order = match d.model.as_deref().unwrap_or("main") {
            "main" => 1,
            "2way" => 2,
            "3way" => 3,
            other => bail!("coding invariance needs main, 2way or 3way, not `{other}`"),
        };
        let a = model_matrix(cs, &ModelSpec::hierarchical(cs.factors(), Coding::Indicator01, order))?;
        let b = model_matrix(cs, &ModelSpec::hierarchical(cs.factors(), Coding::PlusMinusOne, order))?;
        let opts = enum_options(StrategyArg::Auto);
        let (ba, bb) = (circuits_of_model(&a, None, &opts)?, circuits_of_model(&b, None, &opts)?);
        let frac = load_fraction(v.fraction.as_deref(), cs.len())?;
        let budget = budget_from_env(DEFAULT_ENUMERATION_BUDGET);
        let ra = robustness_with(&submatrix(&a, &frac)?, Method::RankEnumeration, None, budget)?;
        let rb = robustness_with(&submatrix(&b, &frac)?, Method::RankEnumeration, None, budget)?;
        let same_circuits = ba.circuits() == bb.circuits();
        let same_r = ra.robustness == rb.robustness;
        (
            "coding_invariance",
            same_circuits && same_r,
            format!("circuits={} same_circuits={same_circuits} r={} same_r={same_r}", ba.len(), ra.robustness),
        )
    } else {
        let l = need()?;
        let sub = load_fraction(v.sub.as_deref(), l.mm.n())?;
        let opts = enum_options(StrategyArg::Auto);
        let full = circuits_of_model(&l.mm, None, &opts)?;
        let restricted = restrict_circuits(&full, &sub)?;
        let direct = circuits_of_model(&submatrix(&l.mm, &sub)?, None, &opts)?;
        let same = restricted.circuits() == direct.circuits();
        (
            "restriction",
            same,
            format!("restricted={} recomputed={}", restricted.len(), direct.len()),
        )
    };
    println!("verify={kind} result={} {detail}", if pass { "pass" } else { "fail" });
    if !pass {
        bail!("{kind} check failed");
    }
    Ok(())
}

fn random_pm1(rows: usize, cols: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if rng.gen() { 1 } else { -1 }).collect())
        .collect();
    IntMatrix::from_rows(&data)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let capacity = e
        .chain()
        .any(|c| matches!(c.downcast_ref::<robcirc::Error>(), Some(robcirc::Error::Capacity { .. })));
    if capacity {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    // Die quietly when the reader of stdout goes away, e.g. `| head`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_errors_map_to_exit_two() {
        let cap = anyhow::Error::new(robcirc::Error::Capacity {
            what: "x".into(),
            needed: 10,
            budget: 1,
        })
        .context("while computing");
        assert_eq!(exit_code(&cap), 2);
        assert_eq!(exit_code(&anyhow!("bad input")), 1);
    }

    #[test]
    fn random_matrices_are_seeded() {
        let a = random_pm1(5, 3, 9);
        assert_eq!(a, random_pm1(5, 3, 9));
        assert_eq!((a.rows(), a.cols()), (5, 3));
        assert!(a.entries().iter().all(|x| x == &1.into() || x == &(-1).into()));
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from(["robcirc", "--jobs", "2", "circuits", "--full", "2,3", "--bound", "4"]).unwrap();
        assert_eq!(cli.jobs, Some(2));
        assert!(Cli::try_parse_from(["robcirc", "circuits", "--full", "2", "--corpus", "2pow4_main"]).is_err());
    }

    #[test]
    fn rows_render_comma_separated() {
        assert_eq!(rows_text(&Fraction::new(8, vec![5, 1, 3]).unwrap()), "1,3,5");
    }
}
