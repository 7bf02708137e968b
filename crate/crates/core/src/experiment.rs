//! The sweep behind `fcarel experiment`: every requested method at every size
//! `1..=max_size`, one CSV row per (size, method).
//!
//! Random selection contributes one summary row per size whose relevance is
//! the mean over its trials. A failing cell does not stop the sweep; its row
//! carries the error kind in the `error` column and the error is returned
//! alongside the records.
//!
//! Output is deterministic for a fixed seed except for `runtime_ms`.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::selection::{Objective, RandomBaseline, SelectionMethod, SelectionOptions, SelectionResult, Selector};

pub const CSV_HEADER: [&str; 13] = [
    "context",
    "method",
    "size",
    "attributes",
    "relevance",
    "relevance_exact",
    "score",
    "concepts_sub",
    "trials",
    "mean",
    "std",
    "runtime_ms",
    "error",
];

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub max_size: usize,
    pub methods: Vec<SelectionMethod>,
    pub seed: u64,
    /// Random trials per size; `None` means `10·|M|`.
    pub trials: Option<usize>,
    pub objective: Objective,
    pub options: SelectionOptions,
}

impl ExperimentConfig {
    pub fn new(max_size: usize, methods: Vec<SelectionMethod>) -> Self {
        ExperimentConfig {
            max_size,
            methods,
            seed: 0,
            trials: None,
            objective: Objective::Maximize,
            options: SelectionOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSummary {
    pub trials: usize,
    pub mean: f64,
    pub std: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRecord {
    pub context_name: String,
    pub method: SelectionMethod,
    pub size: usize,
    pub attributes: Vec<String>,
    /// `None` on error rows.
    pub relevance: Option<f64>,
    /// For random rows, the exact mean over the trials.
    pub relevance_exact: Option<Ratio<u64>>,
    /// ERA score, for the entropic methods.
    pub score: Option<f64>,
    pub concepts_sub: Option<usize>,
    pub random: Option<RandomSummary>,
    pub runtime_ms: u64,
    pub error: Option<String>,
}

impl ExperimentRecord {
    fn empty(context_name: &str, method: SelectionMethod, size: usize) -> Self {
        ExperimentRecord {
            context_name: context_name.to_owned(),
            method,
            size,
            attributes: Vec::new(),
            relevance: None,
            relevance_exact: None,
            score: None,
            concepts_sub: None,
            random: None,
            runtime_ms: 0,
            error: None,
        }
    }

    fn fill_selection(&mut self, r: SelectionResult) {
        self.attributes = r.names;
        self.relevance = Some(r.relevance.to_f64());
        self.relevance_exact = Some(r.relevance.value());
        self.score = r.era;
        self.concepts_sub = Some(r.subcontext_concepts);
    }

    fn fill_random(&mut self, b: RandomBaseline) {
        let (lost, total) = b.per_trial.iter().fold((0u128, 0u128), |(l, t), (_, r)| {
            (
                l + (r.total_extent_sum() - r.surviving_extent_sum()) as u128,
                t + r.total_extent_sum() as u128,
            )
        });
        let mean = Ratio::new(lost, total);
        self.relevance = Some(b.mean);
        self.relevance_exact = match (u64::try_from(*mean.numer()), u64::try_from(*mean.denom())) {
            (Ok(n), Ok(d)) => Some(Ratio::new_raw(n, d)),
            _ => None,
        };
        self.random = Some(RandomSummary {
            trials: b.trials,
            mean: b.mean,
            std: b.std,
        });
    }

    pub fn is_error(&self) -> bool {
        self.error.is_some()
    }

    fn fields(&self) -> [String; 13] {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        [
            self.context_name.clone(),
            self.method.to_string(),
            self.size.to_string(),
            self.attributes.join(";"),
            opt(&self.relevance),
            opt(&self.relevance_exact),
            opt(&self.score),
            opt(&self.concepts_sub),
            opt(&self.random.map(|r| r.trials)),
            opt(&self.random.map(|r| r.mean)),
            opt(&self.random.map(|r| r.std)),
            self.runtime_ms.to_string(),
            opt(&self.error),
        ]
    }
}

#[derive(Debug)]
pub struct ExperimentOutcome {
    pub records: Vec<ExperimentRecord>,
    /// Errors of the failed cells, in row order.
    pub errors: Vec<Error>,
}

/// Runs the sweep. Fails as a whole only when `max_size` is outside
/// `1..=|M|` or the lattice of `ctx` cannot be built.
pub fn run_experiment(ctx: &FormalContext, config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let attributes = ctx.attribute_count();
    if config.max_size == 0 || config.max_size > attributes {
        return Err(Error::SizeOutOfRange {
            size: config.max_size,
            max: attributes,
        });
    }
    let selector = Selector::new(ctx, config.options)?;
    let trials = config.trials.unwrap_or_else(|| selector.default_trials());

    let mut records = Vec::new();
    let mut errors = Vec::new();
    for size in 1..=config.max_size {
        for &method in &config.methods {
            let mut record = ExperimentRecord::empty(ctx.name(), method, size);
            let start = Instant::now();
            let result = match method {
                SelectionMethod::Exhaustive => selector.exhaustive(size).map(|r| record.fill_selection(r)),
                SelectionMethod::Imrs => selector.imrs(size).map(|r| record.fill_selection(r)),
                SelectionMethod::EraSe | SelectionMethod::EraOe => {
                    let kind = method.entropy_kind().expect("entropic method");
                    selector
                        .era(size, kind, config.objective)
                        .map(|r| record.fill_selection(r))
                }
                SelectionMethod::Random => selector
                    .random(size, trials, config.seed)
                    .map(|b| record.fill_random(b)),
            };
            record.runtime_ms = start.elapsed().as_millis() as u64;
            if let Err(e) = result {
                record.error = Some(e.kind().to_owned());
                errors.push(e);
            }
            records.push(record);
        }
    }
    Ok(ExperimentOutcome { records, errors })
}

pub fn write_csv(records: &[ExperimentRecord]) -> Result<Vec<u8>> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    for r in records {
        writer.write_record(r.fields())?;
    }
    writer.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn bad(line: u64, message: impl Into<String>) -> Error {
    Error::Malformed {
        line: line as usize,
        message: message.into(),
    }
}

fn field<T: FromStr>(s: &str, line: u64, name: &str) -> Result<Option<T>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse()
        .map(Some)
        .map_err(|_| bad(line, format!("bad {name} value {s:?}")))
}

fn required<T: FromStr>(s: &str, line: u64, name: &str) -> Result<T> {
    field(s, line, name)?.ok_or_else(|| bad(line, format!("missing {name}")))
}

/// Parses CSV produced by [`write_csv`] and checks the record invariants.
pub fn read_csv(bytes: &[u8]) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::ReaderBuilder::new().from_reader(bytes);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(bad(1, "unexpected experiment header"));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line());
        let method: SelectionMethod = row[1].parse().map_err(|e: String| bad(line, e))?;
        let random = match (
            field::<usize>(&row[8], line, "trials")?,
            field::<f64>(&row[9], line, "mean")?,
            field::<f64>(&row[10], line, "std")?,
        ) {
            (Some(trials), Some(mean), Some(std)) => Some(RandomSummary { trials, mean, std }),
            (None, None, None) => None,
            _ => return Err(bad(line, "trials, mean and std must appear together")),
        };
        let attributes = if row[3].is_empty() {
            Vec::new()
        } else {
            row[3].split(';').map(str::to_owned).collect()
        };
        records.push(ExperimentRecord {
            context_name: row[0].to_owned(),
            method,
            size: required(&row[2], line, "size")?,
            attributes,
            relevance: field(&row[4], line, "relevance")?,
            relevance_exact: field(&row[5], line, "relevance_exact")?,
            score: field(&row[6], line, "score")?,
            concepts_sub: field(&row[7], line, "concepts_sub")?,
            random,
            runtime_ms: required(&row[11], line, "runtime_ms")?,
            error: (!row[12].is_empty()).then(|| row[12].to_owned()),
        });
    }
    validate(&records)?;
    Ok(records)
}

/// One record per (method, size); relevance in `[0, 1)`; random summaries
/// exactly on random rows without an error.
pub fn validate(records: &[ExperimentRecord]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (i, r) in records.iter().enumerate() {
        let line = i as u64 + 2;
        if !seen.insert((r.method, r.size)) {
            return Err(bad(line, format!("duplicate row for {} at size {}", r.method, r.size)));
        }
        if r.is_error() {
            if r.relevance.is_some() || r.random.is_some() {
                return Err(bad(line, "error row carries results"));
            }
            continue;
        }
        match r.relevance {
            Some(v) if (0.0..1.0).contains(&v) => {}
            _ => return Err(bad(line, "relevance missing or outside [0, 1)")),
        }
        if r.random.is_some() != (r.method == SelectionMethod::Random) {
            return Err(bad(line, "trials, mean and std belong to random rows only"));
        }
        if r.method != SelectionMethod::Random && r.attributes.len() != r.size {
            return Err(bad(line, "attribute list does not match size"));
        }
    }
    Ok(())
}

/// A static line chart of relevance against size, one line per method.
pub fn svg_chart(records: &[ExperimentRecord]) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#7f7f7f"];

    let max_size = records.iter().map(|r| r.size).max().unwrap_or(1).max(2);
    let x = |size: usize| PAD + (size - 1) as f64 / (max_size - 1) as f64 * (W - 2.0 * PAD);
    let y = |r: f64| H - PAD - r * (H - 2.0 * PAD);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    for tick in 0..=4 {
        let v = tick as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="end">{v}</text>"#,
            PAD - 6.0,
            y(v) + 4.0
        );
    }
    for size in 1..=max_size {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" text-anchor="middle">{size}</text>"#,
            x(size),
            H - PAD + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">size</text>"#,
        W / 2.0,
        H - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="14" y="{}" transform="rotate(-90 14 {})" text-anchor="middle">relative relevance</text>"#,
        H / 2.0,
        H / 2.0
    );

    let methods: Vec<SelectionMethod> = SelectionMethod::ALL
        .into_iter()
        .filter(|m| records.iter().any(|r| r.method == *m))
        .collect();
    for (i, method) in methods.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let points: Vec<String> = records
            .iter()
            .filter(|r| r.method == *method)
            .filter_map(|r| r.relevance.map(|v| format!("{:.2},{:.2}", x(r.size), y(v))))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            points.join(" ")
        );
        let ly = PAD + 16.0 * i as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{method}</text>"#,
            W - PAD - 90.0,
            W - PAD - 70.0,
            W - PAD - 64.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
