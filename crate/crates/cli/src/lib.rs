//! Request handling for the `lpa-matrix` command-line tool.

mod args;
mod caps;
mod render;

use std::path::PathBuf;

use clap::Parser;
use lpa_core::error::ErrorKind;
use lpa_core::talented::MonoidElement;
use lpa_core::{aperiodicity, crosscheck, cycles, ideals, paths, regression, talented, Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Value};

pub use args::{Cli, Command, Format, GlobalArgs};
pub use caps::{Caps, CAPS_ENV};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lpa_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0} worked example check(s) failed")]
    ExamplesFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Input => 3,
                ErrorKind::Precondition => 4,
                ErrorKind::Cap => 5,
            },
            CliError::ExamplesFailed(_) => 6,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            3 => "input",
            4 => "precondition",
            5 => "cap",
            _ => "check",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() } })
    }
}

#[derive(Debug, Clone)]
pub enum Input {
    File(PathBuf),
    Inline(String),
    None,
}

#[derive(Debug, Clone)]
pub struct AnalysisRequest {
    pub input: Input,
    pub command: Command,
    pub format: Format,
    pub caps: Caps,
    pub seed: u64,
}

impl AnalysisRequest {
    /// Builds a request from parsed arguments and the value of the caps
    /// environment variable.
    pub fn from_cli(cli: Cli, env_caps: Option<&str>) -> Result<Self, CliError> {
        let g = cli.global;
        let caps = Caps::resolve(env_caps, g.cap_lattice, g.cap_census, g.cap_monomials)?;
        let input = match (g.input, g.graph) {
            (Some(path), None) => Input::File(path),
            (None, Some(text)) => Input::Inline(text),
            (None, None) => Input::None,
            (Some(_), Some(_)) => return Err(CliError::Usage("give either --input or --graph, not both".into())),
        };
        if cli.command.needs_graph() && matches!(input, Input::None) {
            return Err(CliError::Usage(format!("`{}` needs --input FILE or --graph JSON", cli.command.name())));
        }
        Ok(AnalysisRequest { input, command: cli.command, format: g.format, caps, seed: g.seed })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<Value>,
    pub payload: Value,
    pub provenance: Value,
}

impl Report {
    /// Sorted keys, two-space indentation, trailing newline.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("reports are plain data");
        let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
        text.push('\n');
        text
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json_string(),
            Format::Table => render::table(&serde_json::to_value(self).expect("reports are plain data")),
        }
    }
}

fn load_graph(input: &Input) -> Result<Option<Graph>, CliError> {
    let text = match input {
        Input::File(path) => {
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?
        }
        Input::Inline(text) => text.clone(),
        Input::None => return Ok(None),
    };
    Ok(Some(Graph::from_json_str(&text)?))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn names(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Vec<String> {
    vs.into_iter().map(|v| g.vertex_name(v).to_string()).collect()
}

fn set_names(g: &Graph, h: &VertexSet) -> Vec<String> {
    names(g, h.iter())
}

fn summary(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "sinks": names(g, g.sinks()),
        "sources": names(g, g.sources()),
        "strongly_connected": g.is_strongly_connected(),
    })
}

fn element(g: &Graph, x: &MonoidElement) -> Value {
    Value::Array(
        x.terms()
            .map(|((v, i), m)| json!({ "vertex": g.vertex_name(v), "shift": i, "multiplicity": m.to_string() }))
            .collect(),
    )
}

fn ideals_payload(g: &Graph, caps: &Caps, set: Option<&[String]>) -> Result<Value, CliError> {
    let lattice = ideals::enumerate_lattice(g, caps.lattice)?;
    let (shortest, longest) = lattice.chain_length_range();
    let mut payload = json!({
        "lattice": lattice.sets.iter().map(|h| set_names(g, h)).collect::<Vec<_>>(),
        "hasse": lattice.hasse,
        "atoms": lattice.atoms().into_iter().map(|h| set_names(g, h)).collect::<Vec<_>>(),
        "chain_length": { "min": shortest, "max": longest },
    });
    if let Some(set) = set {
        let h = g.vertex_set(set)?;
        let w = ideals::block_form(g, &h);
        payload["set"] = json!({
            "members": set_names(g, &h),
            "hereditary": ideals::is_hereditary(g, &h),
            "saturated": ideals::is_saturated(g, &h),
            "block_hereditary": w.hereditary_form,
            "block_saturated": w.saturated_form,
            "closure": set_names(g, &ideals::closure(g, &h)),
            "permutation": names(g, w.permutation.iter()),
            "blocks": { "h": to_value(&w.top_left), "c": to_value(&w.top_right), "a": to_value(&w.bottom_left), "b": to_value(&w.bottom_right) },
        });
    }
    Ok(payload)
}

fn series_payload(g: &Graph, caps: &Caps) -> Result<Value, CliError> {
    let s = ideals::composition_series(g, caps.lattice)?;
    Ok(json!({
        "chain": s.chain.iter().map(|h| set_names(g, h)).collect::<Vec<_>>(),
        "length": s.length,
        "permutation": names(g, s.permutation.iter()),
        "permuted": to_value(&s.permuted),
        "steps": s.steps.iter().map(|st| json!({
            "added": names(g, st.added.iter().copied()),
            "diagonal": to_value(&st.diagonal),
            "feed": to_value(&st.feed),
        })).collect::<Vec<_>>(),
        "nested_form_holds": s.nested_form_holds,
    }))
}

fn cycles_payload(
    g: &Graph,
    caps: &Caps,
    total: bool,
    census: bool,
    acyclic: bool,
    exitless: bool,
) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    if total || !(census || acyclic || exitless) {
        let c = cycles::total_cycles(g, caps.census)?;
        out.insert("total".into(), json!(c.total.to_string()));
        out.insert(
            "by_subset".into(),
            Value::Array(
                c.subsets
                    .iter()
                    .map(|s| json!({ "subset": names(g, s.subset.iter().copied()), "count": s.count.to_string() }))
                    .collect(),
            ),
        );
    }
    if census {
        let rows = cycles::census_table(g, caps.census)?;
        out.insert(
            "census".into(),
            Value::Array(
                rows.iter()
                    .map(|r| json!({ "order": names(g, r.arrangement.order().iter().copied()), "product": r.product.to_string() }))
                    .collect(),
            ),
        );
    }
    if acyclic {
        let r = cycles::is_acyclic_equiv(g, caps.lattice, caps.census)?;
        let mut v = to_value(&r);
        v["comet_quotients"] = json!(r.comet_quotients.iter().map(|h| names(g, h.iter().copied())).collect::<Vec<_>>());
        out.insert("acyclicity".into(), v);
    }
    if exitless {
        let found = cycles::exitless_cycles(g);
        let forms = found
            .iter()
            .map(|c| {
                let f = cycles::circulant_block_form(g, c)?;
                let mut v = to_value(&f);
                v["cycle"] = json!(c.describe(g));
                v["permutation"] = json!(names(g, f.permutation.iter()));
                Ok(v)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        out.insert("exitless".into(), Value::Array(forms));
        let ideal = cycles::cyclic_minimal_ideal_form(g, caps.lattice)?.map(|f| {
            let mut v = to_value(&f);
            v["cycle"] = json!(names(g, f.cycle.iter().copied()));
            v["ideal"] = json!(names(g, f.ideal.iter().copied()));
            v["permutation"] = json!(names(g, f.permutation.iter()));
            v
        });
        out.insert("cyclic_minimal_ideal".into(), ideal.unwrap_or(Value::Null));
    }
    Ok(Value::Object(out))
}

fn paths_payload(g: &Graph, caps: &Caps, k: usize, oracle: bool, table: bool) -> Result<Value, CliError> {
    let b = paths::p_k_breakdown(g, k)?;
    let mut v = json!({ "k": k, "formula": b.total.to_string(), "breakdown": to_value(&b) });
    if oracle {
        let count = paths::enumerate_monomials(g, k, caps.monomials)?.len();
        v["oracle"] = json!(count.to_string());
        v["match"] = json!(b.total == count.into());
    }
    if table {
        v["norms"] = to_value(&paths::norm_table(g, k)?);
    }
    Ok(v)
}

fn talented_payload(g: &Graph, verify: Option<u32>, coefficients: Option<&[String]>) -> Result<Value, CliError> {
    let mut out = serde_json::Map::new();
    if let Some(k) = verify {
        let r = talented::verify_shift_identity(g, k)?;
        out.insert("shift_identity".into(), json!({ "k": k, "holds": r.holds, "counterexample": r.counterexample }));
    }
    if let Some([vertex, k]) = coefficients {
        let v = g.vertex_index(vertex)?;
        let k: u32 = k.parse().map_err(|_| CliError::Usage(format!("`{k}` is not a level")))?;
        let split = talented::coefficients_at_level(g, v, k)?;
        let level: serde_json::Map<String, Value> = split
            .level
            .iter()
            .enumerate()
            .map(|(w, c)| (g.vertex_name(w).to_string(), json!(c.to_string())))
            .collect();
        out.insert(
            "coefficients".into(),
            json!({ "vertex": vertex, "k": k, "level": level, "remainder": element(g, &split.remainder) }),
        );
    }
    if out.is_empty() {
        return Err(CliError::Usage("talented needs --verify-shift K or --coefficients VERTEX K".into()));
    }
    Ok(Value::Object(out))
}

fn aperiodicity_payload(g: &Graph, strict: bool) -> Result<Value, CliError> {
    let mut v = to_value(&aperiodicity::analyze(g)?);
    if strict {
        let k0 = aperiodicity::aperiodic_index(g)?;
        v["positive_representation"] = json!(aperiodicity::verify_positive_representation(g, k0)?);
    }
    Ok(v)
}

/// Runs one section of `analyze`, turning cap violations into a skip note.
fn section(result: Result<Value, CliError>) -> Result<Value, CliError> {
    match result {
        Err(CliError::Core(e)) if e.kind() == ErrorKind::Cap => Ok(json!({ "skipped": e.to_string() })),
        other => other,
    }
}

fn analyze_payload(g: &Graph, caps: &Caps, all: bool) -> Result<Value, CliError> {
    let mut v = json!({
        "ideals": section(ideals_payload(g, caps, None))?,
        "series": section(series_payload(g, caps))?,
        "aperiodicity": to_value(&aperiodicity::analyze(g)?),
        "cycles": section(cycles_payload(g, caps, true, false, true, all))?,
        "rank": lpa_core::matrix::adjacency(g).rank(),
    });
    if all {
        let counts = (0..=3)
            .map(|k| Ok((k.to_string(), json!(paths::p_k(g, k)?.to_string()))))
            .collect::<Result<serde_json::Map<_, _>, CliError>>()?;
        v["monomials"] = Value::Object(counts);
        v["norms"] = to_value(&paths::norm_table(g, 3)?);
    }
    Ok(v)
}

pub fn run(req: &AnalysisRequest) -> Result<Report, CliError> {
    let graph = load_graph(&req.input)?;
    let need = || graph.as_ref().ok_or_else(|| CliError::Usage("no graph given".into()));
    let caps = &req.caps;
    let payload = match &req.command {
        Command::Analyze { all } => analyze_payload(need()?, caps, *all)?,
        Command::Ideals { set } => ideals_payload(need()?, caps, set.as_deref())?,
        Command::Series => series_payload(need()?, caps)?,
        Command::Aperiodicity { strict } => aperiodicity_payload(need()?, *strict)?,
        Command::Cycles { total, census, acyclic_report, exitless } => {
            cycles_payload(need()?, caps, *total, *census, *acyclic_report, *exitless)?
        }
        Command::Paths { k, oracle, table } => paths_payload(need()?, caps, *k, *oracle, *table)?,
        Command::Talented { verify_shift, coefficients } => {
            talented_payload(need()?, *verify_shift, coefficients.as_deref())?
        }
        Command::PaperExamples => {
            let checks = regression::run_worked_examples()?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            json!({ "checks": to_value(&checks), "failed": failed, "passed": checks.len() - failed })
        }
        Command::Selftest { trials } => {
            let checks = crosscheck::run(req.seed, *trials)?;
            let mismatches: usize = checks.iter().map(|c| c.mismatches).sum();
            json!({ "checks": to_value(&checks), "mismatches": mismatches })
        }
    };
    let mut provenance = json!({
        "tool": "lpa-matrix",
        "version": env!("CARGO_PKG_VERSION"),
        "caps": { "lattice": caps.lattice, "census": caps.census, "monomials": caps.monomials.to_string() },
    });
    if matches!(req.command, Command::Selftest { .. }) {
        provenance["seed"] = json!(req.seed);
    }
    Ok(Report {
        subcommand: req.command.name().to_string(),
        graph: graph.as_ref().map(summary),
        payload,
        provenance,
    })
}

/// Everything `main` does, minus touching the process: returns the text for
/// stdout and the exit code.
pub fn execute<I, T>(args: I, env_caps: Option<&str>) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    let format = cli.global.format;
    let outcome = AnalysisRequest::from_cli(cli, env_caps).and_then(|req| {
        let report = run(&req)?;
        Ok((report, req))
    });
    match outcome {
        Ok((report, req)) => {
            let text = report.render(format);
            let failed = match &req.command {
                Command::PaperExamples => report.payload["failed"].as_u64().unwrap_or(0) as usize,
                Command::Selftest { .. } => report.payload["mismatches"].as_u64().unwrap_or(0) as usize,
                _ => 0,
            };
            if failed > 0 {
                (text, CliError::ExamplesFailed(failed).exit_code())
            } else {
                (text, 0)
            }
        }
        Err(e) => {
            let mut text = serde_json::to_string_pretty(&e.to_json()).expect("error objects serialize");
            text.push('\n');
            (text, e.exit_code())
        }
    }
}
