use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use weyman::cech::{CechContext, CechError, PivotPolicy, StrandStore, CACHE_ENV};
use weyman::complexes::json::ComplexJson;
use weyman::complexes::ComplexError;
use weyman::exactarith::ArithError;
use weyman::resultant::json::{ProblemFile, ResultantJson};
use weyman::resultant::{a_resultant_with, problem_koszul, ResultantError, ResultantProblem, TwistSpec};
use weyman::toric::{ToricData, ToricError};
use weyman::verify::{run_all, VerifyOptions};
use weyman::weyman::json::WeymanJson;
use weyman::weyman::{weyman_differential, E1Page, WeymanError, WeymanOptions};

use crate::{CacheAction, Cli, Command, Level};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError { code: 2, msg: msg.into() }
    }

    fn math(msg: impl Into<String>) -> Self {
        CliError { code: 1, msg: msg.into() }
    }

    pub fn code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

fn arith_code(e: &ArithError) -> u8 {
    match e {
        ArithError::Parse(_) | ArithError::UnknownVariable(_) | ArithError::Dimension(_) => 2,
        _ => 1,
    }
}

fn toric_code(e: &ToricError) -> u8 {
    match e {
        ToricError::Resource(_) => 3,
        ToricError::Internal(_) => 1,
        _ => 2,
    }
}

fn cech_code(e: &CechError) -> u8 {
    match e {
        CechError::Toric(t) => toric_code(t),
        CechError::Io(_) | CechError::Resource(_) => 3,
        CechError::NotRefinement(..) => 2,
        CechError::NoStableTruncation(_) => 1,
    }
}

fn complex_code(e: &ComplexError) -> u8 {
    match e {
        ComplexError::Toric(t) => toric_code(t),
        ComplexError::Arith(a) => arith_code(a),
        _ => 2,
    }
}

fn weyman_code(e: &WeymanError) -> u8 {
    match e {
        WeymanError::Cech(c) => cech_code(c),
        WeymanError::Complex(c) => complex_code(c),
        WeymanError::Arith(a) => arith_code(a),
        WeymanError::Toric(t) => toric_code(t),
        WeymanError::Invalid(_) => 2,
        WeymanError::Resource(_) => 3,
        WeymanError::Window(_) | WeymanError::Model(_) => 1,
    }
}

fn resultant_code(e: &ResultantError) -> u8 {
    match e {
        ResultantError::Weyman(w) => weyman_code(w),
        ResultantError::Complex(c) => complex_code(c),
        ResultantError::Toric(t) => toric_code(t),
        ResultantError::Arith(a) => arith_code(a),
        ResultantError::Cech(c) => cech_code(c),
        ResultantError::Invalid(_) => 2,
        _ => 1,
    }
}

impl From<ResultantError> for CliError {
    fn from(e: ResultantError) -> Self {
        CliError { code: resultant_code(&e), msg: e.to_string() }
    }
}

impl From<WeymanError> for CliError {
    fn from(e: WeymanError) -> Self {
        CliError { code: weyman_code(&e), msg: e.to_string() }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        CliError { code: complex_code(&e), msg: e.to_string() }
    }
}

impl From<CechError> for CliError {
    fn from(e: CechError) -> Self {
        CliError { code: cech_code(&e), msg: e.to_string() }
    }
}

/// Parses a JSON file, reporting the path of the offending key on failure.
fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| CliError::input(format!("{}: at `{}`: {}", path.display(), e.path(), e.inner())))
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn parse_vector(s: &str, what: &str) -> Result<Vec<i64>, CliError> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t);
    t.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<i64>().map_err(|e| CliError::input(format!("{what} {s:?}: {e}"))))
        .collect()
}

fn parse_twist(s: &str) -> Result<TwistSpec, CliError> {
    if s == "default" {
        return Ok(TwistSpec::Default);
    }
    match s.strip_prefix("vector:") {
        Some(v) => Ok(TwistSpec::Class(parse_vector(v, "--twist")?)),
        None => Err(CliError::input(format!("--twist {s:?}: expected `default` or `vector:[...]`"))),
    }
}

fn parse_e(s: &str) -> Result<Vec<u32>, CliError> {
    parse_vector(s, "--e-min")?
        .into_iter()
        .map(|v| u32::try_from(v).map_err(|_| CliError::input(format!("--e-min {s:?}: entries must be nonnegative"))))
        .collect()
}

fn context(cli: &Cli, toric: Arc<ToricData>, store: Arc<StrandStore>, policy: PivotPolicy) -> CechContext {
    let mut ctx = CechContext::with_store(toric, store).with_policy(policy);
    if cli.heavy {
        ctx.point_limit *= 8;
    }
    ctx
}

fn problem(cli: &Cli, path: &Path) -> Result<ResultantProblem, CliError> {
    let file: ProblemFile = read_json(path)?;
    let mut prob = file.to_problem()?;
    if let Some(s) = cli.seed {
        prob.seed = s;
    }
    if let Some(t) = &cli.twist {
        prob.twist = parse_twist(t)?;
    }
    if let Some(e) = &cli.e_min {
        prob.e = Some(parse_e(e)?);
    }
    Ok(prob)
}

fn count_word(n: usize) -> String {
    const WORDS: [&str; 10] = ["no", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine"];
    WORDS.get(n).map(|w| w.to_string()).unwrap_or_else(|| n.to_string())
}

fn ranks_summary(ranks: &std::collections::BTreeMap<i64, usize>) -> String {
    let nonzero: Vec<(i64, usize)> = ranks.iter().filter(|(_, r)| **r > 0).map(|(i, r)| (*i, *r)).collect();
    let noun = if nonzero.len() == 1 { "term" } else { "terms" };
    let mut s = format!("{} {noun}", count_word(nonzero.len()));
    let all: Vec<usize> = nonzero.iter().map(|(_, r)| *r).collect();
    if !all.is_empty() && all.iter().all(|r| *r == all[0]) {
        s.push_str(&format!(", rank {}", all[0]));
    }
    let by_degree: Vec<String> = nonzero.iter().map(|(i, r)| format!("{i}:{r}")).collect();
    format!("{s} (degree:rank {})", by_degree.join(" "))
}

fn page_summary(page: &E1Page) -> String {
    page.entries.iter().filter(|(_, v)| **v > 0).map(|((p, q), v)| format!("({p},{q})={v}")).collect::<Vec<_>>().join(" ")
}

fn cache_summary(store: &StrandStore) -> String {
    let s = store.stats();
    format!("cache: {} memory hits, {} disk hits, {} computed, {} corrupt", s.memory_hits, s.disk_hits, s.misses, s.corrupt)
}

fn resultant(cli: &Cli, path: &Path, store: Arc<StrandStore>) -> Result<(), CliError> {
    let prob = problem(cli, path)?;
    let (k, _) = problem_koszul(&prob)?;
    let ctx = context(cli, k.toric.clone(), store.clone(), prob.policy);
    let out = a_resultant_with(&ctx, &prob)?;
    print_json(&ResultantJson::from_output(&out));
    eprintln!("complex: {}", ranks_summary(&out.report.term_ranks));
    eprintln!("E1 page: {}", page_summary(&out.report.page));
    eprintln!("determinant: {} terms, multiplicity {}", out.delta.num_terms(), out.multiplicity);
    if out.multiplicity > 1 {
        eprintln!("eliminant: {}", out.eliminant);
    } else if out.delta.num_terms() <= 20 {
        eprintln!("Δ = {}", out.delta);
    }
    eprintln!("{}", cache_summary(&store));
    Ok(())
}

fn direct_image(cli: &Cli, path: &Path, store: Arc<StrandStore>) -> Result<(), CliError> {
    let file: ComplexJson = read_json(path)?;
    let mut c = file.to_complex()?;
    if let Some(t) = &cli.twist {
        let class = parse_twist(t)?.resolve(&c.toric)?;
        c = c.twist(&class)?;
    }
    let opts = WeymanOptions { policy: PivotPolicy::default(), e: cli.e_min.as_deref().map(parse_e).transpose()? };
    let ctx = context(cli, c.toric.clone(), store.clone(), opts.policy);
    let w = weyman_differential(&ctx, &c, &opts)?;
    let j = WeymanJson::from_complex(&w);
    print_json(&j);
    eprintln!("complex: {}", ranks_summary(&j.term_ranks));
    eprintln!("E1 page: {}", page_summary(&w.page));
    eprintln!("{}", cache_summary(&store));
    Ok(())
}

fn verify(cli: &Cli, level: Level, store: Arc<StrandStore>) -> Result<(), CliError> {
    let opts = VerifyOptions { heavy: cli.heavy || level == Level::Full, store };
    let outcomes = run_all(&opts);
    for o in &outcomes {
        eprintln!("{o}");
    }
    print_json(&outcomes);
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::math(format!("failed criteria: {failed:?}")))
    }
}

fn cache(cli: &Cli, action: &CacheAction, store: Arc<StrandStore>) -> Result<(), CliError> {
    if store.dir().is_none() {
        return Err(CliError::input(format!("{CACHE_ENV} is not set")));
    }
    match action {
        CacheAction::Warm { file } => {
            // the resultant run stores every strand it touches
            let prob = problem(cli, file)?;
            let (k, _) = problem_koszul(&prob)?;
            let ctx = context(cli, k.toric.clone(), store.clone(), prob.policy);
            a_resultant_with(&ctx, &prob)?;
            print_json(&store.stats());
            eprintln!("{}", cache_summary(&store));
        }
        CacheAction::Stats => print_json(&store.stats()),
        CacheAction::Clear => {
            let removed = store.clear()?;
            print_json(&serde_json::json!({ "removed": removed }));
        }
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError { code: 3, msg: e.to_string() })?;
    }
    let store = Arc::new(StrandStore::from_env());
    match &cli.command {
        Command::Resultant { file } => resultant(cli, file, store),
        Command::DirectImage { file } => direct_image(cli, file, store),
        Command::Verify { level } => verify(cli, *level, store),
        Command::Cache { action } => cache(cli, action, store),
    }
}
