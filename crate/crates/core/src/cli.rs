//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a check found a violation
//! (or a counterexample), 3 the threshold bracket holds no single transition.
//! Thread count follows `RAYON_NUM_THREADS`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::admissibility::{check_admissible, min_over_t, GridSpec, Witness};
use crate::boundary::{make_triple, theta_grid, THETA_MARGIN};
use crate::catalog::{LemmaId, LemmaParams, StatedBound, ThresholdCriterion};
use crate::error::{Error, Result};
use crate::geometry::{lemniscate_boundary, ComplexValue};
use crate::psi::evaluate;
use crate::series::TruncatedSeries;
use crate::thresholds::{find_beta_threshold, find_beta_threshold_with, ThresholdResult, DEFAULT_BRACKET, DEFAULT_TOL};
use crate::verifier::{random_normalized_p, verify_implication, ImplicationReport, ImplicationStatus, ProbeSpec};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_BRACKET: i32 = 3;

/// Agreement with the stated constant required for a threshold row to read OK.
const TABLE_TOL: f64 = 5e-3;

#[derive(Debug, Parser)]
#[command(name = "lemniscate", version, about = "Admissibility checks for the lemniscate of Bernoulli")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check whether a catalogued form is admissible
    Check(CheckArgs),
    /// Locate the beta threshold of a lemma by bisection
    Threshold(ThresholdArgs),
    /// Test a lemma's implication on a concrete p
    Verify(VerifyArgs),
    /// Summarize every catalogued lemma
    Table(TableArgs),
    /// Sample the lemniscate boundary, optionally with a psi image
    Boundary(BoundaryArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Lemma id, e.g. first3, sq-1, second-weighted
    #[arg(long)]
    pub lemma: String,
    /// Real part of beta (defaults to the lemma's reference value)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Imaginary part of beta, only meaningful for sq-1
    #[arg(long, allow_negative_numbers = true)]
    pub beta_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub theta_points: Option<usize>,
    #[arg(long)]
    pub m_min: Option<f64>,
    #[arg(long)]
    pub m_max: Option<f64>,
    #[arg(long)]
    pub m_points: Option<usize>,
    #[arg(long)]
    pub eps_adm: Option<f64>,
    /// Roughly double the θ and m resolution
    #[arg(long)]
    pub refine: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    /// Write to this path instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Add wall-clock timing to the report (breaks byte determinism)
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Admissibility,
    MinimizerAtZero,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub lemma: String,
    #[arg(long, default_value_t = DEFAULT_BRACKET.0)]
    pub lo: f64,
    #[arg(long, default_value_t = DEFAULT_BRACKET.1)]
    pub hi: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Override the predicate that is bisected
    #[arg(long, value_enum)]
    pub criterion: Option<CriterionArg>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Taylor coefficients of p as `re` or `re:im`, comma separated
    #[arg(long, conflicts_with = "seed")]
    pub coeffs: Option<String>,
    /// Draw a random normalized p from this seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 8)]
    pub degree: usize,
    /// Probe radii, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.9, 0.99, 0.999])]
    pub radii: Vec<f64>,
    #[arg(long, default_value_t = 4096)]
    pub angular_points: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
    /// Keep only lemmas whose id contains this substring
    #[arg(long)]
    pub lemma_filter: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub format: DataFormat,
    /// Add ψ-image columns for this lemma at m = 1
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Parse a lemma id, also accepting camelCase spellings like `secondWeighted`.
pub fn parse_lemma(s: &str) -> Result<LemmaId> {
    if let Ok(id) = s.parse() {
        return Ok(id);
    }
    let mut kebab = String::with_capacity(s.len() + 4);
    for ch in s.chars() {
        if ch.is_ascii_uppercase() {
            kebab.push('-');
            kebab.push(ch.to_ascii_lowercase());
        } else {
            kebab.push(ch);
        }
    }
    kebab.parse().map_err(|_| Error::UnknownLemma(s.to_string()))
}

fn resolve_params(lemma: LemmaId, beta: Option<f64>, beta_im: Option<f64>, gamma: Option<f64>) -> LemmaParams {
    let reference = lemma.reference_params();
    let re = beta.unwrap_or(reference.beta.re);
    let im = match (beta, beta_im) {
        (_, Some(im)) => im,
        (None, None) => reference.beta.im,
        (Some(_), None) => 0.0,
    };
    LemmaParams {
        beta: ComplexValue::new(re, im),
        gamma: gamma.unwrap_or(reference.gamma),
    }
}

fn resolve_grid(args: &GridArgs, lemma: LemmaId) -> Result<GridSpec> {
    let mut grid = GridSpec::default().with_m_min(lemma.class_index() as f64);
    if let Some(v) = args.theta_points {
        grid.theta_points = v;
    }
    if let Some(v) = args.m_min {
        grid.m_min = v;
    }
    if let Some(v) = args.m_max {
        grid.m_max = v;
    }
    if let Some(v) = args.m_points {
        grid.m_points = v;
    }
    if let Some(v) = args.eps_adm {
        grid.eps_adm = v;
    }
    if args.refine {
        grid = grid.refined();
    }
    grid.validate()?;
    Ok(grid)
}

#[derive(Debug, Serialize)]
struct ParamsOut {
    beta: f64,
    #[serde(skip_serializing_if = "is_zero")]
    beta_im: f64,
    gamma: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

impl From<&LemmaParams> for ParamsOut {
    fn from(p: &LemmaParams) -> Self {
        ParamsOut {
            beta: p.beta.re,
            beta_im: p.beta.im,
            gamma: p.gamma,
        }
    }
}

#[derive(Debug, Serialize)]
struct VerdictOut {
    admissible: bool,
    min_objective_seen: f64,
    tail_monotone: bool,
    region: String,
    psi: String,
}

#[derive(Debug, Serialize)]
struct Report<'a, B: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<ParamsOut>,
    #[serde(flatten)]
    body: B,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
struct VerdictBody {
    verdict: VerdictOut,
}

#[derive(Debug, Serialize)]
struct ThresholdBody {
    threshold: ThresholdResult,
}

#[derive(Debug, Serialize)]
struct VerifyBody {
    report: ImplicationReport,
}

#[derive(Debug, Serialize)]
struct RowsBody<T: Serialize> {
    rows: Vec<T>,
}

struct Timer(Instant);

impl Timer {
    fn start() -> Self {
        Timer(Instant::now())
    }

    fn ms(&self, enabled: bool) -> Option<f64> {
        enabled.then(|| self.0.elapsed().as_secs_f64() * 1e3)
    }
}

fn emit(out: &OutputArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Configuration(format!("cannot write output: {e}"));
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => stdout.write_all(text.as_bytes()).map_err(io),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Shortest form for text, 17 significant digits for CSV.
fn csv_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cmd_check(args: &CheckArgs, stdout: &mut dyn Write) -> Result<i32> {
    let timer = Timer::start();
    let lemma = parse_lemma(&args.params.lemma)?;
    let params = resolve_params(lemma, args.params.beta, args.params.beta_im, args.params.gamma);
    let grid = resolve_grid(&args.grid, lemma)?;
    let form = lemma.form(&params)?;
    let region = lemma.region();
    let verdict = check_admissible(&form, &region, &grid)?;
    let code = if verdict.admissible { EXIT_OK } else { EXIT_VIOLATED };
    let report = Report {
        schema: SCHEMA_VERSION,
        command: "check",
        lemma: Some(lemma.as_str()),
        params: Some((&params).into()),
        body: VerdictBody {
            verdict: VerdictOut {
                admissible: verdict.admissible,
                min_objective_seen: verdict.min_objective_seen,
                tail_monotone: verdict.tail_monotone,
                region: region.name(),
                psi: form.label(),
            },
        },
        grid: Some(grid),
        witness: verdict.witness,
        timing_ms: timer.ms(args.out.timing),
    };
    emit(&args.out, &to_json(&report), stdout)?;
    Ok(code)
}

fn cmd_threshold(args: &ThresholdArgs, stdout: &mut dyn Write) -> Result<i32> {
    let timer = Timer::start();
    let lemma = parse_lemma(&args.lemma)?;
    let grid = resolve_grid(&args.grid, lemma)?;
    let bracket = (args.lo, args.hi);
    let result = match args.criterion {
        None => find_beta_threshold(lemma, bracket, args.tol, &grid)?,
        Some(c) => {
            let criterion = match c {
                CriterionArg::Admissibility => ThresholdCriterion::Admissibility,
                CriterionArg::MinimizerAtZero => ThresholdCriterion::MinimizerAtZero,
            };
            find_beta_threshold_with(lemma, criterion, bracket, args.tol, &grid)?
        }
    };
    let report = Report {
        schema: SCHEMA_VERSION,
        command: "threshold",
        lemma: Some(lemma.as_str()),
        params: None,
        body: ThresholdBody { threshold: result },
        grid: Some(grid),
        witness: None,
        timing_ms: timer.ms(args.out.timing),
    };
    emit(&args.out, &to_json(&report), stdout)?;
    Ok(EXIT_OK)
}

/// Parse `re` or `re:im` entries separated by commas.
pub fn parse_coeffs(s: &str) -> Result<TruncatedSeries> {
    let bad = |tok: &str| Error::Configuration(format!("bad coefficient '{tok}'"));
    let coeffs = s
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (re, im) = match tok.split_once(':') {
                Some((re, im)) => (re, im),
                None => (tok, "0"),
            };
            let re: f64 = re.trim().parse().map_err(|_| bad(tok))?;
            let im: f64 = im.trim().parse().map_err(|_| bad(tok))?;
            Ok(ComplexValue::new(re, im))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedSeries::new(coeffs))
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write) -> Result<i32> {
    let timer = Timer::start();
    let lemma = parse_lemma(&args.params.lemma)?;
    let params = resolve_params(lemma, args.params.beta, args.params.beta_im, args.params.gamma);
    let p = match (&args.coeffs, args.seed) {
        (Some(c), _) => parse_coeffs(c)?,
        (None, Some(seed)) => random_normalized_p(seed, args.degree, lemma.class_index(), args.degree),
        (None, None) => return Err(Error::Configuration("verify needs --coeffs or --seed".into())),
    };
    let probe = ProbeSpec {
        radii: args.radii.clone(),
        angular_points: args.angular_points,
    };
    let report = verify_implication(lemma, &p, &params, &probe)?;
    let code = if report.status == ImplicationStatus::Counterexample {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    };
    let out = Report {
        schema: SCHEMA_VERSION,
        command: "verify",
        lemma: Some(lemma.as_str()),
        params: Some((&params).into()),
        body: VerifyBody { report },
        grid: None,
        witness: None,
        timing_ms: timer.ms(args.out.timing),
    };
    emit(&args.out, &to_json(&out), stdout)?;
    Ok(code)
}

/// One summary line of the lemma table.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub id: String,
    pub expression: String,
    pub region: String,
    pub stated_bound: String,
    /// bisected β for threshold lemmas
    pub computed_bound: Option<f64>,
    pub criterion: Option<ThresholdCriterion>,
    /// where plain admissibility starts, when that differs from the stated criterion
    pub admissibility_beta: Option<f64>,
    /// admissible sample parameter sets out of those tried
    pub samples_admissible: usize,
    pub samples: usize,
    pub status: String,
}

pub const TABLE_HEADER: [&str; 10] = [
    "id",
    "expression",
    "region",
    "stated_bound",
    "computed_bound",
    "criterion",
    "admissibility_beta",
    "samples_admissible",
    "samples",
    "status",
];

fn sample_params(lemma: LemmaId) -> Vec<LemmaParams> {
    let c = |re, im| LemmaParams {
        beta: ComplexValue::new(re, im),
        gamma: 1.0,
    };
    match lemma.stated_bound() {
        StatedBound::BetaPositive => [0.1, 1.0, 10.0].map(LemmaParams::real).to_vec(),
        StatedBound::ReBetaPositive => vec![c(0.1, 1.0), c(1.0, -2.0), c(10.0, 5.0)],
        StatedBound::BetaGammaPositive => vec![
            LemmaParams::with_gamma(0.1, 10.0),
            LemmaParams::with_gamma(1.0, 1.0),
            LemmaParams::with_gamma(10.0, 0.1),
        ],
        StatedBound::WeightedCondition => vec![
            LemmaParams::with_gamma(0.25, 0.5),
            LemmaParams::with_gamma(1.0, 1.0),
            LemmaParams::with_gamma(2.0, 5.0),
        ],
        StatedBound::Beta { .. } | StatedBound::Fixed => vec![lemma.reference_params()],
    }
}

/// Build the summary row for one lemma.
pub fn table_row(lemma: LemmaId) -> Result<TableRow> {
    let grid = GridSpec::default().with_m_min(lemma.class_index() as f64);
    let region = lemma.region();
    let samples = sample_params(lemma);
    let mut admissible = 0;
    for params in &samples {
        if check_admissible(&lemma.form(params)?, &region, &grid)?.admissible {
            admissible += 1;
        }
    }
    let mut ok = admissible == samples.len();
    let criterion = lemma.threshold_criterion();
    let mut computed = None;
    let mut admissibility_beta = None;
    if criterion.is_some() {
        let r = find_beta_threshold(lemma, DEFAULT_BRACKET, DEFAULT_TOL, &grid)?;
        if let StatedBound::Beta { value } = lemma.stated_bound() {
            ok &= (r.beta_star - value).abs() <= TABLE_TOL;
        }
        computed = Some(r.beta_star);
    }
    if criterion == Some(ThresholdCriterion::MinimizerAtZero) {
        let r = find_beta_threshold_with(
            lemma,
            ThresholdCriterion::Admissibility,
            DEFAULT_BRACKET,
            DEFAULT_TOL,
            &grid,
        )?;
        admissibility_beta = Some(r.beta_star);
    }
    Ok(TableRow {
        id: lemma.as_str().to_string(),
        expression: lemma.hypothesis().to_string(),
        region: region.name(),
        stated_bound: lemma.stated_bound().describe(),
        computed_bound: computed,
        criterion,
        admissibility_beta,
        samples_admissible: admissible,
        samples: samples.len(),
        status: if ok { "OK" } else { "FAIL" }.to_string(),
    })
}

fn criterion_name(c: Option<ThresholdCriterion>) -> &'static str {
    match c {
        Some(ThresholdCriterion::Admissibility) => "admissibility",
        Some(ThresholdCriterion::MinimizerAtZero) => "minimizer_at_zero",
        None => "",
    }
}

fn render_text(rows: &[TableRow]) -> String {
    let opt = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.5}"));
    let cells: Vec<[String; 7]> = rows
        .iter()
        .map(|r| {
            [
                r.id.clone(),
                r.region.clone(),
                r.stated_bound.clone(),
                opt(r.computed_bound),
                opt(r.admissibility_beta),
                format!("{}/{}", r.samples_admissible, r.samples),
                r.status.clone(),
            ]
        })
        .collect();
    let head = ["id", "region", "stated bound", "computed", "admissible from", "samples", "status"];
    let mut widths = head.map(|h| h.chars().count());
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cols: Vec<&str>| {
        let mut s = cols
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ");
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(head.to_vec());
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn render_csv(rows: &[TableRow]) -> Result<String> {
    let err = |e: csv::Error| Error::Configuration(format!("csv: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TABLE_HEADER).map_err(err)?;
    let opt = |x: Option<f64>| x.map(csv_num).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.id.clone(),
            r.expression.clone(),
            r.region.clone(),
            r.stated_bound.clone(),
            opt(r.computed_bound),
            criterion_name(r.criterion).to_string(),
            opt(r.admissibility_beta),
            r.samples_admissible.to_string(),
            r.samples.to_string(),
            r.status.clone(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Configuration(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<i32> {
    let timer = Timer::start();
    let lemmas: Vec<LemmaId> = LemmaId::all()
        .iter()
        .copied()
        .filter(|id| args.lemma_filter.as_ref().is_none_or(|f| id.as_str().contains(f.as_str())))
        .collect();
    let rows = lemmas.into_iter().map(table_row).collect::<Result<Vec<_>>>()?;
    let text = match args.format {
        TableFormat::Text => render_text(&rows),
        TableFormat::Csv => render_csv(&rows)?,
        TableFormat::Json => to_json(&Report {
            schema: SCHEMA_VERSION,
            command: "table",
            lemma: None,
            params: None,
            body: RowsBody { rows },
            grid: Some(GridSpec::default()),
            witness: None,
            timing_ms: timer.ms(args.out.timing),
        }),
    };
    emit(&args.out, &text, stdout)?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRow {
    pub theta: f64,
    pub re_w: f64,
    pub im_w: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub re_psi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub im_psi: Option<f64>,
    /// region margin of ψ; positive means outside Ω as admissibility requires
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
}

/// Boundary samples, with ψ at `m = 1` (and the minimizing t for second-order
/// forms) when a lemma is given.
pub fn boundary_rows(points: usize, psi: Option<(LemmaId, LemmaParams)>) -> Result<Vec<BoundaryRow>> {
    if points < 2 {
        return Err(Error::Configuration("boundary needs at least 2 points".into()));
    }
    let form = psi.map(|(lemma, params)| lemma.form(&params).map(|f| (f, lemma.region()))).transpose()?;
    theta_grid(points, THETA_MARGIN)
        .into_iter()
        .map(|theta| {
            let w = lemniscate_boundary(theta)?;
            let mut row = BoundaryRow {
                theta,
                re_w: w.re,
                im_w: w.im,
                re_psi: None,
                im_psi: None,
                margin: None,
            };
            if let Some((form, region)) = &form {
                let triple = make_triple(theta, 1.0)?;
                let t = if form.order() == 2 {
                    Some(min_over_t(form, &triple, region)?.t_star)
                } else {
                    None
                };
                let value = evaluate(form, &triple, t)?;
                row.re_psi = Some(value.re);
                row.im_psi = Some(value.im);
                row.margin = Some(region.margin(value).unwrap_or(f64::INFINITY));
            }
            Ok(row)
        })
        .collect()
}

fn cmd_boundary(args: &BoundaryArgs, stdout: &mut dyn Write) -> Result<i32> {
    let psi = match &args.psi {
        Some(id) => {
            let lemma = parse_lemma(id)?;
            Some((lemma, resolve_params(lemma, args.beta, args.beta_im, args.gamma)))
        }
        None => None,
    };
    let rows = boundary_rows(args.points, psi)?;
    let text = match args.format {
        DataFormat::Json => to_json(&Report {
            schema: SCHEMA_VERSION,
            command: "boundary",
            lemma: psi.map(|(l, _)| l.as_str()),
            params: psi.as_ref().map(|(_, p)| p.into()),
            body: RowsBody { rows },
            grid: None,
            witness: None,
            timing_ms: None,
        }),
        DataFormat::Csv => {
            let err = |e: csv::Error| Error::Configuration(format!("csv: {e}"));
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["theta", "re_w", "im_w"];
            if psi.is_some() {
                header.extend(["re_psi", "im_psi", "margin"]);
            }
            w.write_record(&header).map_err(err)?;
            for r in &rows {
                let mut rec = vec![csv_num(r.theta), csv_num(r.re_w), csv_num(r.im_w)];
                if psi.is_some() {
                    rec.extend([r.re_psi, r.im_psi, r.margin].map(|x| csv_num(x.unwrap_or(f64::NAN))));
                }
                w.write_record(&rec).map_err(err)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Configuration(format!("csv: {e}")))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
    };
    emit(&args.out, &text, stdout)?;
    Ok(EXIT_OK)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Bracket { .. } | Error::Monotonicity(_) => EXIT_BRACKET,
        _ => EXIT_USAGE,
    }
}

/// Run the CLI on `args` (program name first) and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a, stdout),
        Command::Threshold(a) => cmd_threshold(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout),
        Command::Table(a) => cmd_table(a, stdout),
        Command::Boundary(a) => cmd_boundary(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["lemniscate"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn lemma_aliases() {
        assert_eq!(parse_lemma("secondWeighted").unwrap(), LemmaId::SecondWeighted);
        assert_eq!(parse_lemma("second-sqsum").unwrap(), LemmaId::SecondSqSum);
        assert_eq!(parse_lemma("sq-1").unwrap(), LemmaId::SqMinus1);
        assert!(parse_lemma("third9").is_err());
    }

    #[test]
    fn coefficient_parsing() {
        let p = parse_coeffs("1, 0.5:-0.25,0").unwrap();
        assert_eq!(p.coeff(1), ComplexValue::new(0.5, -0.25));
        assert_eq!(p.order(), 2);
        assert!(parse_coeffs("1,x").is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["check"]).0, EXIT_USAGE);
        let (code, _, err) = run_capture(&["check", "--lemma", "nope"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("nope"));
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        assert_eq!(run_capture(&["boundary", "--points", "1"]).0, EXIT_USAGE);
    }

    #[test]
    fn boundary_middle_row() {
        let rows = boundary_rows(5, None).unwrap();
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[2].theta, 0.0);
        assert!((rows[2].re_w - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(rows[2].im_w, 0.0);
    }

    #[test]
    fn bracket_error_exit_three() {
        let (code, _, _) = run_capture(&["threshold", "--lemma", "one0", "--lo", "2", "--hi", "5"]);
        assert_eq!(code, EXIT_BRACKET);
    }
}
