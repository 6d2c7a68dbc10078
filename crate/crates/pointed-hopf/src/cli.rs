//! Command-line surface of `phopf`.
//!
//! Every command produces a [`Report`]: keyed fields followed by named
//! checks. Exit codes are 0 when every check passes, 1 when a check fails
//! and 2 on invalid input or an exceeded bound.

use crate::abelian::{AbelianGroup, Character, GroupElement};
use crate::classify::{build_p3_list, census_report, distinguish, theta_search_with, CensusType, ThetaConfig};
use crate::cyclotomic::Cyclotomic;
use crate::hopfcore::{AxiomReport, IsoOutcome, IsoSearchConfig, StructureHopf};
use crate::lifting::{
    build_family_b, build_lifting, diagonal_automorphisms, family_iso, predicted_filtration, CompatibleDatum,
    FamilyParams, Lifting, RawDatum,
};
use crate::qls::{bosonize, build_qls, validate_datum, verify_braided};
use crate::rewrite::{check_overlaps, reference_constraints, OverlapReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const GRAMMAR: &str = "Scalars: a sum of terms c, zN, zN^k or c*zN^k with c an integer or a/b \
(zN^k is exp(2 pi i k/N)). \
Groups: comma-separated cyclic orders, e.g. 3,5 for Z/3 + Z/5. \
Group elements and characters: exponent vectors separated by ';', e.g. --g '1,0;0,1'.";

#[derive(Parser, Debug)]
#[command(name = "phopf", about = "Construct, verify and classify pointed Hopf algebras", after_help = GRAMMAR)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub output: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantum linear spaces.
    #[command(subcommand)]
    Qls(QlsCmd),
    /// Liftings of quantum linear spaces.
    #[command(subcommand)]
    Lift(LiftCmd),
    /// Overlap ambiguities of a lifting presentation.
    #[command(subcommand)]
    Overlaps(OverlapsCmd),
    /// The family B(M, N, q, lambda).
    #[command(subcommand)]
    Family(FamilyCmd),
    /// The list of pointed Hopf algebras of dimension p^3.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Largest rank of a quantum linear space datum over a group.
    Theta {
        #[arg(long)]
        group: String,
        #[arg(long = "max-rank", default_value_t = 6)]
        max_rank: usize,
        /// Largest group order searched exhaustively.
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
    /// Isomorphism search between two algebras in structure JSON.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long = "max-candidates", default_value_t = 10_000)]
        max_candidates: usize,
    },
    /// Dual Hopf algebra of an algebra in structure JSON.
    Dual {
        a: PathBuf,
        /// Write the dual's structure JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Isomorphism invariants of an algebra in structure JSON.
    Invariants { a: PathBuf },
}

/// A datum given as a JSON file or inline.
#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Datum JSON: {"group": "9", "qls": {"g": [[1]], "chi": [[3]]}, "mu": [1], "lambda": {"1,2": "z3"}}.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    #[arg(long)]
    pub group: Option<String>,
    /// Group-likes g_i as exponent vectors, ';'-separated.
    #[arg(long)]
    pub g: Option<String>,
    /// Characters chi_i as exponent vectors, ';'-separated.
    #[arg(long)]
    pub chi: Option<String>,
    /// mu_i in {0, 1}, comma-separated.
    #[arg(long)]
    pub mu: Option<String>,
    /// Entries i,j=value, ';'-separated, 1-based.
    #[arg(long)]
    pub lambda: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum QlsCmd {
    /// Build the braided Hopf algebra of a datum and its bosonization.
    Build {
        #[command(flatten)]
        datum: DatumArgs,
        /// Write the braided structure JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
        /// Write the bosonization's structure JSON here.
        #[arg(long = "save-bosonization")]
        save_bosonization: Option<PathBuf>,
    },
    /// Verify the axioms of an algebra in structure JSON.
    Verify { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum LiftCmd {
    /// Build the lifting of a compatible datum.
    Build {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Verify a lifting given as a datum or as structure JSON.
    Verify { file: PathBuf },
    /// Coradical filtration and skew-primitives, predicted and computed.
    Filtration {
        #[command(flatten)]
        datum: DatumArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum OverlapsCmd {
    /// Resolve every overlap of the presentation.
    Check {
        #[command(flatten)]
        datum: DatumArgs,
        /// Treat every mu_i and lambda_ij as an indeterminate.
        #[arg(long)]
        symbolic: bool,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long = "M")]
    pub m: u32,
    #[arg(long = "N")]
    pub n: u32,
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub lambda: String,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    Build {
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Decide B(M,N,q,lambda) = B(M,N,q,lambda2) by the criterion and by search.
    Iso {
        #[command(flatten)]
        params: FamilyArgs,
        #[arg(long)]
        lambda2: String,
    },
    /// Count the automorphisms fixing the group-likes and scaling each a_i.
    Aut {
        #[command(flatten)]
        params: FamilyArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CensusCmd {
    P3 {
        #[arg(long)]
        p: u32,
    },
}

/// Invalid input, with exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON in {path}: {msg}")]
    Json { path: String, msg: String },
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("invalid datum: {0}")]
    Datum(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("bound exceeded: {0}")]
    Bound(String),
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Keyed fields followed by named checks.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Value)>,
    /// Fields emitted in JSON output only.
    pub json_fields: Vec<(String, Value)>,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.into(),
            fields: Vec::new(),
            json_fields: Vec::new(),
            checks: Vec::new(),
        }
    }

    fn field(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.push((key.into(), v.into()));
    }

    fn json_field(&mut self, key: &str, v: Value) {
        self.json_fields.push((key.into(), v));
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn axioms(&mut self, prefix: &str, r: &AxiomReport) {
        for c in &r.checks {
            let name = format!("{prefix}{}", c.axiom);
            self.check(&name, c.passed, c.witness.clone().unwrap_or_default());
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let mut fields = Map::new();
        for (k, v) in self.fields.iter().chain(&self.json_fields) {
            fields.insert(k.clone(), v.clone());
        }
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({"command": self.command, "fields": fields, "checks": checks, "ok": self.ok()})
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.fields {
            let _ = writeln!(s, "  {k:<width$}  {}", render_value(v, width + 4));
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                let _ = writeln!(s, "  [{mark}] {}", c.name);
            } else {
                let _ = writeln!(s, "  [{mark}] {} ({})", c.name, c.detail);
            }
        }
        s
    }
}

fn render_value(v: &Value, indent: usize) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if !items.is_empty() && items.iter().all(|x| x.is_string()) => {
            let pad = " ".repeat(indent);
            items
                .iter()
                .map(|x| x.as_str().unwrap().to_string())
                .collect::<Vec<_>>()
                .join(&format!("\n{pad}"))
        }
        other => other.to_string(),
    }
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            let stdout = match cli.output {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Table => report.to_table(),
            };
            Outcome {
                code: if report.ok() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn execute(cmd: &Command) -> Result<Report, InputError> {
    match cmd {
        Command::Qls(QlsCmd::Build { datum, save, save_bosonization }) => qls_build(datum, save, save_bosonization),
        Command::Qls(QlsCmd::Verify { file }) => verify_structure("qls verify", file),
        Command::Lift(LiftCmd::Build { datum, save }) => lift_build(datum, save),
        Command::Lift(LiftCmd::Verify { file }) => lift_verify(file),
        Command::Lift(LiftCmd::Filtration { datum }) => lift_filtration(datum),
        Command::Overlaps(OverlapsCmd::Check { datum, symbolic }) => overlaps_check(datum, *symbolic),
        Command::Family(FamilyCmd::Build { params, save }) => family_build(params, save),
        Command::Family(FamilyCmd::Iso { params, lambda2 }) => family_iso_cmd(params, lambda2),
        Command::Family(FamilyCmd::Aut { params }) => family_aut(params),
        Command::Census(CensusCmd::P3 { p }) => census(*p),
        Command::Theta { group, max_rank, bound } => theta(group, *max_rank, *bound),
        Command::Iso { a, b, max_candidates } => iso(a, b, *max_candidates),
        Command::Dual { a, save } => dual(a, save),
        Command::Invariants { a } => invariants(a),
    }
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| InputError::Json {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn read_structure(path: &Path) -> Result<StructureHopf, InputError> {
    let v = read_json(path)?;
    StructureHopf::from_json_str(&v.to_string()).map_err(|e| InputError::Json {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), InputError> {
    std::fs::write(path, text).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn parse_vectors(s: &str) -> Result<Vec<Vec<i64>>, InputError> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| InputError::Argument(format!("`{part}` is not an exponent vector")))
                })
                .collect()
        })
        .collect()
}

fn parse_scalar(s: &str) -> Result<Cyclotomic, InputError> {
    Cyclotomic::parse(s).map_err(|e| InputError::Argument(format!("scalar `{s}`: {e}")))
}

/// Datum JSON from `--datum` or assembled from the inline flags.
fn datum_json(d: &DatumArgs) -> Result<Value, InputError> {
    if let Some(path) = &d.datum {
        return read_json(path);
    }
    let (group, g, chi) = match (&d.group, &d.g, &d.chi) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(InputError::Argument(
                "give --datum FILE or all of --group, --g, --chi".into(),
            ))
        }
    };
    let g = parse_vectors(g)?;
    let chi = parse_vectors(chi)?;
    let mut v = json!({"group": group, "qls": {"g": g, "chi": chi}});
    if let Some(mu) = &d.mu {
        let vals: Vec<u64> = mu
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| InputError::Argument(format!("mu `{mu}`"))))
            .collect::<Result<_, _>>()?;
        v["mu"] = json!(vals);
    }
    if let Some(l) = &d.lambda {
        let mut obj = Map::new();
        for entry in l.split(';').filter(|e| !e.trim().is_empty()) {
            let (k, val) = entry
                .split_once('=')
                .ok_or_else(|| InputError::Argument(format!("lambda entry `{entry}` is not i,j=value")))?;
            parse_scalar(val.trim())?;
            obj.insert(k.trim().to_string(), Value::String(val.trim().to_string()));
        }
        v["lambda"] = Value::Object(obj);
    }
    Ok(v)
}

fn raw_datum(d: &DatumArgs) -> Result<RawDatum, InputError> {
    RawDatum::from_json(&datum_json(d)?).map_err(InputError::Datum)
}

fn compatible_datum(d: &DatumArgs) -> Result<CompatibleDatum, InputError> {
    CompatibleDatum::from_json(&datum_json(d)?).map_err(InputError::Datum)
}

fn describe_qls(r: &mut Report, q: &crate::qls::QlsDatum) {
    r.field("group", q.group.spec_string());
    r.field("g", q.g.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    r.field(
        "chi",
        q.chi.iter().map(|x| GroupElement(x.0.clone()).to_string()).collect::<Vec<_>>(),
    );
    r.field("q", q.q.iter().map(|x| x.root_label()).collect::<Vec<_>>());
    r.field("N", q.n.clone());
}

fn qls_build(d: &DatumArgs, save: &Option<PathBuf>, save_b: &Option<PathBuf>) -> Result<Report, InputError> {
    let raw = raw_datum(d)?;
    let mut r = Report::new("qls build");
    describe_qls(&mut r, &raw.qls);
    let qls = build_qls(&raw.qls);
    r.field("dimension", qls.dim());
    r.axioms("braided ", &verify_braided(&qls));
    let b = bosonize(&qls).map_err(|e| InputError::Datum(e.to_string()))?;
    r.field("bosonization dimension", b.dim());
    r.axioms("bosonization ", &b.verify_axioms());
    let expected = raw.qls.dim() * raw.qls.group.order() as usize;
    r.check("bosonization dimension", b.dim() == expected, format!("{} = {} x {}", b.dim(), raw.qls.dim(), raw.qls.group.order()));
    if let Some(p) = save {
        write_file(p, &qls.to_json_string())?;
    }
    if let Some(p) = save_b {
        write_file(p, &b.to_json_string())?;
    }
    Ok(r)
}

fn verify_structure(name: &str, file: &Path) -> Result<Report, InputError> {
    let h = read_structure(file)?;
    let mut r = Report::new(name);
    r.field("dimension", h.dim());
    r.field("braided", h.is_braided());
    let rep = if h.is_braided() { verify_braided(&h) } else { h.verify_axioms() };
    r.axioms("", &rep);
    Ok(r)
}

fn lifting_checks(r: &mut Report, l: &Lifting) {
    let d = &l.datum;
    let expected = d.qls.dim() * d.qls.group.order() as usize;
    r.field("dimension", l.hopf.dim());
    r.check(
        "dimension |G| prod N_i",
        l.hopf.dim() == expected,
        format!("{} vs {}", l.hopf.dim(), expected),
    );
    r.axioms("", &l.hopf.verify_axioms());
    r.check("antipode powers S(a_i)^n", l.antipode_powers_hold(), "");
}

fn lift_build(d: &DatumArgs, save: &Option<PathBuf>) -> Result<Report, InputError> {
    let cd = compatible_datum(d)?;
    let l = build_lifting(&cd).map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("lift build");
    describe_qls(&mut r, &cd.qls);
    r.field("datum", cd.to_json());
    let names: Vec<String> = l.words.iter().map(|w| l.presentation.render_word(w)).collect();
    r.field("basis", names);
    lifting_checks(&mut r, &l);
    if let Some(p) = save {
        write_file(p, &l.hopf.to_json_string())?;
    }
    Ok(r)
}

fn lift_verify(file: &Path) -> Result<Report, InputError> {
    let v = read_json(file)?;
    if v.get("mult").is_some() {
        return verify_structure("lift verify", file);
    }
    let cd = CompatibleDatum::from_json(&v).map_err(InputError::Datum)?;
    let l = build_lifting(&cd).map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("lift verify");
    describe_qls(&mut r, &cd.qls);
    lifting_checks(&mut r, &l);
    let ov = check_overlaps(&l.presentation, false);
    r.check("overlaps resolve", ov.confluent(), format!("{} overlaps", ov.overlaps.len()));
    Ok(r)
}

fn lift_filtration(d: &DatumArgs) -> Result<Report, InputError> {
    let cd = compatible_datum(d)?;
    let l = build_lifting(&cd).map_err(|e| InputError::Datum(e.to_string()))?;
    let h = &l.hopf;
    let mut r = Report::new("lift filtration");
    describe_qls(&mut r, &cd.qls);
    let pred = predicted_filtration(&cd.qls);
    let filt = h.coradical_filtration().map_err(|e| InputError::Datum(e.to_string()))?;
    let got: Vec<usize> = filt.iter().map(|s| s.dim()).collect();
    r.field("predicted filtration", pred.dims.clone());
    r.field("computed filtration", got.clone());
    r.check("coradical filtration: predicted vs computed", pred.dims == got, format!("{:?} vs {:?}", pred.dims, got));
    let unit = h.unit_vec();
    let mut rows = Vec::new();
    let mut all = true;
    for (g, want) in &pred.skew_primitive_dims {
        let have = h.skew_primitives(&l.group_element(g), &unit).dim();
        all &= have == *want;
        rows.push(format!("P_{{{g},1}}: predicted {want}, computed {have}"));
    }
    r.field("skew-primitives", rows);
    r.check("skew-primitives: predicted vs computed", all, "");
    Ok(r)
}

fn overlap_fields(r: &mut Report, rep: &OverlapReport) {
    let mut by_family: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for o in &rep.overlaps {
        let e = by_family.entry(o.family.to_string()).or_default();
        e.0 += 1;
        if o.resolved {
            e.1 += 1;
        }
    }
    let fam: Vec<String> = by_family
        .iter()
        .map(|(f, (n, ok))| format!("{f}: {ok}/{n} resolved"))
        .collect();
    r.field("families", fam);
    let unresolved: Vec<Value> = rep
        .overlaps
        .iter()
        .filter(|o| !o.resolved)
        .map(|o| json!({"family": o.family.to_string(), "word": o.word, "residual": o.residual, "constraints": o.constraints}))
        .collect();
    r.field("unresolved", unresolved);
    r.field("constraints", rep.constraints().into_iter().collect::<Vec<_>>());
}

fn overlaps_check(d: &DatumArgs, symbolic: bool) -> Result<Report, InputError> {
    let raw = raw_datum(d)?;
    let p = raw.presentation().map_err(|e| InputError::Datum(e.to_string()))?;
    let rep = check_overlaps(&p, symbolic);
    let mut r = Report::new(if symbolic { "overlaps check --symbolic" } else { "overlaps check" });
    describe_qls(&mut r, &raw.qls);
    r.field("overlaps", rep.overlaps.len());
    overlap_fields(&mut r, &rep);
    if symbolic {
        let shape = raw.qls.shape();
        let reference = reference_constraints(&shape);
        let names: Vec<String> = reference.iter().map(|&k| format!("{} = 0", shape.scalar_names()[k])).collect();
        r.field("compatibility conditions", names);
        r.check(
            "constraints equivalent to the compatibility conditions",
            rep.equivalent_to(&reference),
            "",
        );
    } else {
        r.check("confluent", rep.confluent(), rep.constraints().into_iter().collect::<Vec<_>>().join("; "));
    }
    Ok(r)
}

fn family_params(a: &FamilyArgs, lambda: &str) -> Result<FamilyParams, InputError> {
    FamilyParams::new(a.m, a.n, parse_scalar(&a.q)?, parse_scalar(lambda)?)
        .map_err(|e| InputError::Argument(e.to_string()))
}

fn family_label(p: &FamilyParams) -> String {
    format!("B({}, {}, {}, {})", p.m, p.n, p.q.root_label(), p.lambda.root_label())
}

fn family_build(a: &FamilyArgs, save: &Option<PathBuf>) -> Result<Report, InputError> {
    let params = family_params(a, &a.lambda)?;
    let l = build_family_b(&params).map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("family build");
    r.field("algebra", family_label(&params));
    lifting_checks(&mut r, &l);
    let expected = (params.m * params.n.pow(3)) as usize;
    r.check("dimension M N^3", l.hopf.dim() == expected, format!("{expected}"));
    if let Some(p) = save {
        write_file(p, &l.hopf.to_json_string())?;
    }
    Ok(r)
}

fn family_iso_cmd(a: &FamilyArgs, lambda2: &str) -> Result<Report, InputError> {
    let p1 = family_params(a, &a.lambda)?;
    let p2 = family_params(a, lambda2)?;
    let by_criterion = family_iso(p1.n, &p1.lambda, &p2.lambda);
    let l1 = build_family_b(&p1).map_err(|e| InputError::Datum(e.to_string()))?;
    let l2 = build_family_b(&p2).map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("family iso");
    r.field("left", family_label(&p1));
    r.field("right", family_label(&p2));
    r.field("criterion", if by_criterion { "isomorphic" } else { "not isomorphic" });
    let outcome = l1.hopf.find_isomorphism(&l2.hopf, &IsoSearchConfig::default());
    let by_search = match &outcome {
        IsoOutcome::Found(iso) => {
            r.field("search", "isomorphic");
            r.field("map", iso.describe());
            true
        }
        IsoOutcome::NoneFound(why) => {
            r.field("search", "not isomorphic");
            r.field("obstruction", why.clone());
            false
        }
        IsoOutcome::BoundExceeded(why) => return Err(InputError::Bound(why.clone())),
    };
    r.field("result", if by_criterion { "isomorphic" } else { "not isomorphic" });
    r.check("criterion and search agree", by_criterion == by_search, "");
    Ok(r)
}

fn family_aut(a: &FamilyArgs) -> Result<Report, InputError> {
    let params = family_params(a, &a.lambda)?;
    let l = build_family_b(&params).map_err(|e| InputError::Datum(e.to_string()))?;
    let auts = diagonal_automorphisms(&l);
    let mut r = Report::new("family aut");
    r.field("algebra", family_label(&params));
    r.field("automorphisms", auts.len());
    let list: Vec<String> = auts
        .iter()
        .map(|x| x.scalars.iter().map(|c| c.root_label()).collect::<Vec<_>>().join(", "))
        .map(|s| format!("a_i -> ({s}) a_i"))
        .collect();
    r.field("scalars", list);
    Ok(r)
}

fn census(p: u32) -> Result<Report, InputError> {
    if p > 7 {
        return Err(InputError::Bound(format!("census at p = {p} exceeds p <= 7")));
    }
    let entries = build_p3_list(p).map_err(|e| InputError::Argument(e.to_string()))?;
    let matrix = distinguish(&entries, &IsoSearchConfig::default());
    let mut r = Report::new("census p3");
    let report = census_report(p, &entries, &matrix);
    r.field("p", p);
    let rows: Vec<String> = entries
        .iter()
        .map(|e| {
            let i = &e.invariants;
            format!(
                "{}: dim {}, group-likes {:?}, filtration {:?}, one-dim reps {}, dual pointed {}",
                e.label, i.dimension, i.group_invariants, i.filtration_dims, i.one_dim_reps, i.dual_pointed
            )
        })
        .collect();
    r.field("entries", rows);
    let pairs: Vec<String> = matrix
        .pairs
        .iter()
        .map(|v| format!("{} | {} | {}", matrix.labels[v.left], matrix.labels[v.right], v.verdict))
        .collect();
    r.field("distinction", pairs);
    r.json_field("census", report);
    let n = p * p * p;
    let dims_ok = entries.iter().all(|e| e.hopf.dim() == n as usize);
    r.check("every entry has dimension p^3", dims_ok, format!("{n}"));
    let groups_ok = entries.iter().all(|e| {
        let kind = e.spec.as_ref().map(|s| s.kind).unwrap_or(CensusType::A);
        e.invariants.pointed && e.invariants.group_invariants == kind.grouplike_invariants(p)
    });
    r.check("coradical is the listed group algebra", groups_ok, "");
    let axioms_ok = entries.iter().all(|e| e.hopf.verify_axioms().all_passed());
    r.check("Hopf axioms on every entry", axioms_ok, "");
    r.check("no undecided pair", matrix.undecided() == 0, format!("{} pairs", matrix.pairs.len()));
    let books_ok = entries.iter().enumerate().all(|(i, e)| {
        let Some(partner) = e.spec.as_ref().and_then(|s| s.book_partner()) else { return true };
        let j = entries.iter().position(|f| f.spec.as_ref() == Some(&partner)).expect("partner listed");
        i == j || matrix.get(i, j).is_some_and(|v| v.is_isomorphic())
    });
    r.check("book identification h(q,m) = h(q^(-m^2), m^(-1))", books_ok, "");
    Ok(r)
}

fn theta(group: &str, max_rank: usize, bound: u64) -> Result<Report, InputError> {
    let gr = AbelianGroup::parse(group).map_err(|e| InputError::Argument(e.to_string()))?;
    let cfg = ThetaConfig {
        group_bound: bound,
        ..ThetaConfig::new(max_rank)
    };
    let res = theta_search_with(&gr, &cfg);
    let mut r = Report::new("theta");
    r.field("group", gr.spec_string());
    r.field("theta", res.theta);
    let status = if res.theta == max_rank {
        "at least (search capped at max rank)"
    } else if res.exact {
        "exact"
    } else {
        "lower bound"
    };
    r.field("status", status);
    if let Some(w) = &res.witness {
        let rows: Vec<String> = (0..w.theta())
            .map(|i| format!("g = {}, chi = {}, q = {}", w.g[i], GroupElement(w.chi[i].0.clone()), w.q[i].root_label()))
            .collect();
        r.field("witness", rows);
        let g: Vec<GroupElement> = w.g.clone();
        let chi: Vec<Character> = w.chi.clone();
        r.check("witness is a datum", validate_datum(&gr, &g, &chi).is_ok(), "");
    }
    r.field("nodes", res.nodes);
    if let Some(note) = &res.note {
        r.field("note", note.clone());
    }
    Ok(r)
}

fn iso(a: &Path, b: &Path, max_candidates: usize) -> Result<Report, InputError> {
    let ha = read_structure(a)?;
    let hb = read_structure(b)?;
    let mut r = Report::new("iso");
    r.field("dimensions", vec![ha.dim(), hb.dim()]);
    match ha.find_isomorphism(&hb, &IsoSearchConfig { max_candidates }) {
        IsoOutcome::Found(iso) => {
            r.field("result", "isomorphic");
            r.field("map", iso.describe());
            r.check("isomorphism verified", true, "");
        }
        IsoOutcome::NoneFound(why) => {
            r.field("result", "not isomorphic");
            r.check("isomorphic", false, why);
        }
        IsoOutcome::BoundExceeded(why) => return Err(InputError::Bound(why)),
    }
    Ok(r)
}

fn dual(a: &Path, save: &Option<PathBuf>) -> Result<Report, InputError> {
    let h = read_structure(a)?;
    let d = h.dual().map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("dual");
    r.field("dimension", d.dim());
    let gl = d.grouplikes();
    r.field("group-likes", gl.count());
    r.field("pointed", gl.pointed());
    r.axioms("", &d.verify_axioms());
    if let Some(p) = save {
        write_file(p, &d.to_json_string())?;
    }
    Ok(r)
}

fn invariants(a: &Path) -> Result<Report, InputError> {
    let h = read_structure(a)?;
    let inv = h.invariants().map_err(|e| InputError::Datum(e.to_string()))?;
    let mut r = Report::new("invariants");
    let v = serde_json::to_value(&inv).expect("serializable");
    if let Value::Object(m) = v {
        for (k, x) in m {
            r.field(&k, x);
        }
    }
    Ok(r)
}
