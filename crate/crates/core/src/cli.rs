//! Command-line front end and the JSON file formats it reads and writes.
//!
//! Exit codes: 0 success, 2 domain rejection, 3 budget exhausted,
//! 4 input error, 5 theorem violation (a defect signal).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{ModextError, Result};
use crate::forge::{
    coarse_unextendable_length, incidence_matrix, minimal_unextendable_length, search_kernel, wood_counterexample,
    SearchResult,
};
use crate::linalg::{cauchy_identities_check, FqMatrix};
use crate::mds::{exhaustive_isometry_scan, is_mds, mds_extension_check, MdsCheck};
use crate::modcode::{
    extend_to_monomial, is_isometry_bruteforce, is_isometry_criterion, kernel_tuple, Alphabet, Code, Extension,
    KernelDiff, MonomialMap, SupportEntry,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

/// On-disk code: alphabet header plus one `t x k` generator per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub q: u64,
    pub m: usize,
    pub k: usize,
    pub t: usize,
    pub generators: Vec<Vec<Vec<u64>>>,
}

impl CodeFile {
    pub fn from_code(code: &Code) -> Self {
        CodeFile {
            q: code.alphabet.q() as u64,
            m: code.alphabet.m,
            k: code.alphabet.k,
            t: code.space.t,
            generators: code
                .generators()
                .map(|g| g.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect())
                .collect(),
        }
    }

    pub fn to_code(&self) -> Result<Code> {
        let alphabet = Alphabet::new(self.q, self.m, self.k)?;
        let mut gens = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.t || g.iter().any(|r| r.len() != self.k) {
                return Err(ModextError::Shape(format!("generator {i} is not {}x{}", self.t, self.k)));
            }
            let data: Vec<u32> = g
                .iter()
                .flatten()
                .map(|&v| {
                    if v >= self.q {
                        Err(ModextError::Input(format!("generator {i}: entry {v} not in [0, {})", self.q)))
                    } else {
                        Ok(v as u32)
                    }
                })
                .collect::<Result<_>>()?;
            gens.push(FqMatrix::from_residues(alphabet.field, self.t, self.k, data)?);
        }
        Code::new(alphabet, self.t, gens)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| ModextError::Input(format!("code file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn load(path: &Path) -> Result<Code> {
        let raw = std::fs::read_to_string(path).map_err(|e| ModextError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&raw)?.to_code()
    }

    pub fn store(code: &Code, path: &Path) -> Result<()> {
        std::fs::write(path, Self::from_code(code).to_json() + "\n")
            .map_err(|e| ModextError::Input(format!("{}: {e}", path.display())))
    }
}

/// Machine-readable output of one command.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub verdicts: Value,
    pub timing_ms: f64,
    pub budget: BudgetUsage,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetUsage {
    pub subspaces: u64,
    pub vectors: u64,
    pub search_nodes: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(name = "modext", version, about = "Hamming isometries of codes over matrix-module alphabets")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the minimum-length unextendable isometry over M_{m x k}(F_q).
    Forge {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out_lambda: Option<PathBuf>,
        #[arg(long)]
        out_mu: Option<PathBuf>,
    },
    /// Decide whether λ(w) ↦ μ(w) is an isometry and whether it extends.
    Check {
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        /// Also run the brute-force isometry oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// Search the shortest nontrivial solution inside W = M_{m x t}(F_q).
    Minlen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        /// Defaults to m + 1.
        #[arg(long)]
        t: Option<usize>,
        /// Largest solution length to search; defaults to N + 5.
        #[arg(long)]
        bound: Option<u64>,
        /// Only allow cyclic supports (dimension <= m).
        #[arg(long)]
        cyclic_only: bool,
    },
    /// Singleton data and MDS status of a code; --scan enumerates all isometries.
    Mds {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        scan: bool,
    },
    /// Exact check of the Cauchy binomial identities for t = 1..=tmax.
    Identities {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        tmax: u64,
    },
}

struct Outcome {
    verdicts: Value,
    text: String,
    exit: i32,
    nodes: Option<u64>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    if let Some(j) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
    let budget = match Budget::from_env() {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli.command, &budget);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let (outcome, error) = match result {
        Ok(o) => (o, None),
        Err(e) => {
            let o = Outcome {
                verdicts: json!({ "error": e.to_string() }),
                text: String::new(),
                exit: e.exit_code(),
                nodes: None,
            };
            (o, Some(e))
        }
    };
    if let Some(e) = &error {
        let _ = writeln!(err, "error: {e}");
    }
    if cli.json {
        let report = Report {
            command: echo,
            verdicts: outcome.verdicts,
            timing_ms,
            budget: BudgetUsage { subspaces: budget.subspaces, vectors: budget.vectors, search_nodes: outcome.nodes },
            exit_code: outcome.exit,
        };
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        let _ = write!(out, "{}", outcome.text);
    }
    outcome.exit
}

fn dispatch(cmd: &Command, budget: &Budget) -> Result<Outcome> {
    match cmd {
        Command::Forge { q, m, k, out_lambda, out_mu } => {
            cmd_forge(*q, *m, *k, out_lambda.as_deref(), out_mu.as_deref(), budget)
        }
        Command::Check { lambda, mu, oracle } => cmd_check(lambda, mu, *oracle, budget),
        Command::Minlen { q, m, t, bound, cyclic_only } => cmd_minlen(*q, *m, *t, *bound, *cyclic_only, budget),
        Command::Mds { code, scan } => cmd_mds(code, *scan, budget),
        Command::Identities { q, tmax } => cmd_identities(*q, *tmax),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn map_json(map: &MonomialMap) -> Value {
    json!({
        "permutation": map.permutation,
        "automorphisms": map.autos.iter().map(FqMatrix::to_rows).collect::<Vec<_>>(),
    })
}

fn map_text(map: &MonomialMap) -> String {
    let mut s = format!("permutation: {:?}\n", map.permutation);
    for (i, a) in map.autos.iter().enumerate() {
        s += &format!("  g_{i} = {a:?}\n");
    }
    s
}

fn diff_json(diff: &KernelDiff) -> Value {
    let side = |v: &[(crate::linalg::Subspace, usize)]| -> Vec<SupportEntry> {
        v.iter().map(|(s, n)| SupportEntry::new(s, *n)).collect()
    };
    json!({ "only_lambda": side(&diff.only_lambda), "only_mu": side(&diff.only_mu) })
}

fn diff_text(diff: &KernelDiff) -> String {
    let mut s = String::from("kernel multiset difference:\n");
    for (name, v) in [("lambda", &diff.only_lambda), ("mu", &diff.only_mu)] {
        for (sub, n) in v {
            s += &format!("  only in {name}: {n} x {sub:?}\n");
        }
    }
    s
}

fn cmd_forge(
    q: u64,
    m: usize,
    k: usize,
    out_lambda: Option<&Path>,
    out_mu: Option<&Path>,
    budget: &Budget,
) -> Result<Outcome> {
    let (lam, mu) = wood_counterexample(q, m, k, budget)?;
    let criterion = is_isometry_criterion(&lam, &mu, budget)?;
    let oracle = match is_isometry_bruteforce(&lam, &mu, budget) {
        Ok(b) => Some(b),
        Err(ModextError::Budget { .. }) => None,
        Err(e) => return Err(e),
    };
    let extension = extend_to_monomial(&lam, &mu, budget)?;
    if let Some(p) = out_lambda {
        CodeFile::store(&lam, p)?;
    }
    if let Some(p) = out_mu {
        CodeFile::store(&mu, p)?;
    }
    let n = lam.len();
    let big_n = minimal_unextendable_length(q, m);
    let big_k = coarse_unextendable_length(q, k);
    let mut text = format!("N={n}, unextendable\n");
    text += &format!("alphabet M_{m}x{k}(F_{q}), W = M_{m}x{}(F_{q})\n", m + 1);
    text += &format!("formula N = prod_(i=1..m)(1+q^i) = {big_n}; K = prod_(i=1..k-1)(1+q^i) = {big_k}\n");
    text += &format!("isometry: {} (criterion)", yes(criterion));
    if let Some(o) = oracle {
        text += &format!(", {} (brute force)", yes(o));
    }
    text += &format!("\nextendable: {}\n", yes(extension.is_extendable()));
    let mut diff = Value::Null;
    if let Extension::Unextendable(d) = &extension {
        text += &diff_text(d);
        diff = diff_json(d);
    }
    Ok(Outcome {
        verdicts: json!({
            "n": n,
            "formula_n": big_n.to_string(),
            "formula_k": big_k.to_string(),
            "isometry": criterion,
            "oracle": oracle,
            "extendable": extension.is_extendable(),
            "kernel_diff": diff,
        }),
        text,
        exit: EXIT_OK,
        nodes: None,
    })
}

fn cmd_check(lambda: &Path, mu: &Path, oracle: bool, budget: &Budget) -> Result<Outcome> {
    let lam = CodeFile::load(lambda)?;
    let mu = CodeFile::load(mu)?;
    if lam.alphabet != mu.alphabet || lam.space != mu.space || lam.len() != mu.len() {
        return Err(ModextError::Shape("lambda and mu have different shapes".into()));
    }
    let criterion = is_isometry_criterion(&lam, &mu, budget)?;
    let oracle_verdict = if oracle { Some(is_isometry_bruteforce(&lam, &mu, budget)?) } else { None };
    let mut text = format!("isometry: {}", yes(criterion));
    if let Some(o) = oracle_verdict {
        text += &format!(" (oracle: {})", yes(o));
    }
    let mut verdicts = json!({ "isometry": criterion, "oracle": oracle_verdict });
    if !criterion {
        text += "; extendable: n/a\n";
        verdicts["extendable"] = Value::Null;
        return Ok(Outcome { verdicts, text, exit: EXIT_OK, nodes: None });
    }
    match extend_to_monomial(&lam, &mu, budget)? {
        Extension::Extendable(map) => {
            text += "; extendable: yes\n";
            text += &map_text(&map);
            verdicts["extendable"] = json!(true);
            verdicts["monomial_map"] = map_json(&map);
        }
        Extension::Unextendable(diff) => {
            text += "; extendable: no\n";
            text += &diff_text(&diff);
            verdicts["extendable"] = json!(false);
            verdicts["kernel_diff"] = diff_json(&diff);
        }
    }
    Ok(Outcome { verdicts, text, exit: EXIT_OK, nodes: None })
}

fn cmd_minlen(
    q: u64,
    m: usize,
    t: Option<usize>,
    bound: Option<u64>,
    cyclic_only: bool,
    budget: &Budget,
) -> Result<Outcome> {
    let t = t.unwrap_or(m + 1);
    let formula = minimal_unextendable_length(q, m);
    let bound = match bound {
        Some(b) => b,
        None => {
            num_traits::ToPrimitive::to_u64(&formula)
                .ok_or_else(|| ModextError::Input("default bound overflows".into()))?
                + 5
        }
    };
    if t == 0 || bound == 0 {
        return Err(ModextError::Input("t and bound must be positive".into()));
    }
    let sys = incidence_matrix(q, m, t, budget)?;
    let allowed = if cyclic_only { sys.cyclic_columns() } else { vec![true; sys.cols.len()] };
    let kernel_dim = sys.kernel_dimension(&allowed);
    let res: SearchResult = search_kernel(&sys, &allowed, bound, budget);

    let mut summary = Vec::new();
    if let Some(w) = &res.witness {
        for d in (0..=t).rev() {
            let (mut pos, mut neg) = (0i64, 0i64);
            for (s, &c) in sys.cols.iter().zip(w) {
                if s.dim() == d {
                    if c > 0 {
                        pos += c;
                    } else {
                        neg -= c;
                    }
                }
            }
            if pos + neg > 0 {
                summary.push(json!({ "dim": d, "lambda_side": pos, "mu_side": neg }));
            }
        }
    }
    let mut text = match res.min_length {
        Some(l) => format!("min_length: {l}\n"),
        None => format!("min_length: none <= {bound}\n"),
    };
    text += &format!("q={q} m={m} t={t} bound={bound} formula N={formula}\n");
    text +=
        &format!("incidence system: {}x{}, rational kernel dimension {kernel_dim}\n", sys.rows.len(), sys.cols.len());
    for s in &summary {
        text += &format!("  dim {}: lambda side {}, mu side {}\n", s["dim"], s["lambda_side"], s["mu_side"]);
    }
    text += &format!("exhausted: {} ({} nodes)\n", yes(res.exhausted), res.nodes);
    Ok(Outcome {
        verdicts: json!({
            "q": q, "m": m, "t": t, "bound": bound,
            "cyclic_only": cyclic_only,
            "min_length": res.min_length,
            "formula_n": formula.to_string(),
            "kernel_dimension": kernel_dim,
            "witness": res.witness,
            "witness_summary": summary,
            "exhausted": res.exhausted,
        }),
        text,
        exit: if res.exhausted { EXIT_OK } else { EXIT_BUDGET },
        nodes: Some(res.nodes),
    })
}

fn cmd_mds(path: &Path, scan: bool, budget: &Budget) -> Result<Outcome> {
    let code = CodeFile::load(path)?;
    let report = is_mds(&code, budget)?;
    let mut text = format!(
        "n={} d={} kappa={} MDS: {} (lemma conditions: {}), Singleton: {}\n",
        report.n,
        report.d,
        report.kappa,
        yes(report.is_mds),
        yes(report.lemma_conditions),
        yes(report.singleton_holds)
    );
    let mut verdicts = json!({ "mds": report });
    let mut exit = EXIT_OK;
    if scan {
        let entries = exhaustive_isometry_scan(&code, budget)?;
        let unextendable = entries.iter().filter(|e| !e.extendable).count();
        text += &format!("scan: {} isometries, {} unextendable\n", entries.len(), unextendable);
        let mut violations = 0;
        let mut theorem = Value::Null;
        if report.is_mds && report.kappa == 2 {
            text += "extension theorem check refused: MDS dimension 2 is excluded\n";
            theorem = json!("refused: dimension 2");
        } else if report.is_mds {
            for e in &entries {
                if let MdsCheck::TheoremViolation(_) = mds_extension_check(&code, &e.mu, budget)? {
                    violations += 1;
                }
            }
            text += &format!("extension theorem: {violations} violations\n");
            theorem = json!({ "violations": violations });
        }
        verdicts["scan"] = json!({
            "isometries": entries.len(),
            "unextendable": unextendable,
            "theorem_check": theorem,
        });
        if violations > 0 {
            exit = EXIT_VIOLATION;
        }
    }
    Ok(Outcome { verdicts, text, exit, nodes: None })
}

fn cmd_identities(q: u64, tmax: u64) -> Result<Outcome> {
    crate::linalg::PrimeField::new(q)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut all = true;
    for t in 1..=tmax {
        let ok = cauchy_identities_check(t, q);
        all &= ok;
        text += &format!("t={t} q={q}: {}\n", if ok { "pass" } else { "FAIL" });
        rows.push(json!({ "t": t, "q": q, "pass": ok }));
    }
    Ok(Outcome {
        verdicts: json!({ "all_pass": all, "cases": rows }),
        text,
        exit: if all { EXIT_OK } else { EXIT_VIOLATION },
        nodes: None,
    })
}

/// Kernel multiset of a code file as JSON, for inspection.
pub fn kernel_summary(code: &Code) -> Value {
    serde_json::to_value(kernel_tuple(code)).expect("serializes")
}
