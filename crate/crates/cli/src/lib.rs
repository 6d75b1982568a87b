//! Command-line front end for `kei`.
//!
//! Every subcommand produces a serialisable report. Exit codes are shared:
//! 0 when the run succeeds and the tested property holds, 1 when it fails
//! with a witness, 2 on usage, input or parse errors.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kei::format::{parse_group_with_limits, parse_quandle_with_limits};
use kei::models::ev::{ev_alphabet, ev_standard_evaluator};
use kei::models::semidirect::{verify_laurent, SignedAction};
use kei::{
    are_isomorphic, ball_enumerate, derive_equal, enumerate_homs, enveloping_presentation_named,
    fiq_ball, freeness_probe, hom_count, orbits, replay, universal_extend, verify_certificate,
    Alphabet, DerivationCertificate, DeriveBounds, Error, FiniteGroup, FiniteQuandle, Limits, Mode,
    RackViolation, Relation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "kei", version, about = "Finite and free involutory quandles")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check rack, quandle and involutory axioms of a table.
    Check(CheckArgs),
    /// Verify the finite Laurent isomorphism for Z/n ⋊ G.
    Laurent(LaurentArgs),
    /// Search for a relation among the images of free canonical forms.
    Freeprobe(FreeprobeArgs),
    /// Orbit partition of a quandle.
    Orbits(SourceArgs),
    /// Count quandle morphisms.
    Homcount(HomcountArgs),
    /// Decide isomorphism of two quandles.
    Iso(IsoArgs),
    /// List a ball of reduced words or free involutory quandle elements.
    Enumerate(EnumerateArgs),
    /// Certify an equality of generators in the enveloping group.
    Envelope(EnvelopeArgs),
    /// Reduce a word.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Table file (text or JSON) or builtin name such as `dihedral5`.
    pub source: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub source: String,
    /// Also require x▷x = x.
    #[arg(long)]
    pub quandle: bool,
    /// Also require x▷x = x and x▷(x▷y) = y.
    #[arg(long)]
    pub involutory: bool,
}

#[derive(Debug, Args)]
pub struct LaurentArgs {
    #[arg(long)]
    pub n: usize,
    /// Builtin group name or group-table file.
    #[arg(long, default_value = "z2")]
    pub group: String,
    /// Character as a `+`/`-` string indexed by element.
    #[arg(long)]
    pub character: Option<String>,
}

#[derive(Debug, Args)]
pub struct FreeprobeArgs {
    /// Named model; `ev` is the word group where ρ swaps σ and τ.
    #[arg(long, conflicts_with = "file")]
    pub model: Option<String>,
    /// Target quandle, file or builtin.
    #[arg(long)]
    pub file: Option<String>,
    /// Generator images in the target, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub gens: Option<Vec<usize>>,
    /// Depth bound; forms of expansion length up to 2·depth + 1 are tried.
    #[arg(long, default_value_t = 4)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct HomcountArgs {
    pub source: String,
    pub target: String,
    /// Also list up to this many morphisms.
    #[arg(long)]
    pub list: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    pub left: String,
    pub right: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Coxeter,
    Free,
    Fiq,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, value_enum, default_value = "coxeter")]
    pub kind: BallKind,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Keep only involutions.
    #[arg(long)]
    pub involutions: bool,
    /// Print only the count.
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    pub source: String,
    /// Generator names, comma separated; default `g0,g1,…`.
    #[arg(long, value_delimiter = ',')]
    pub labels: Option<Vec<String>>,
    /// The two generators to equate, by name or index.
    #[arg(long, value_delimiter = ',', num_args = 1, required_unless_present_any = ["verify", "presentation"])]
    pub equate: Option<Vec<String>>,
    #[arg(long, default_value_t = 8)]
    pub depth: usize,
    #[arg(long, default_value_t = 24)]
    pub max_len: usize,
    /// Replay a certificate file instead of searching.
    #[arg(long)]
    pub verify: Option<String>,
    /// Print the presentation and stop.
    #[arg(long)]
    pub presentation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WordMode {
    Free,
    Coxeter,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub word: String,
    #[arg(long, value_enum, default_value = "free")]
    pub mode: WordMode,
    /// Generator names, comma separated; default `s,t,u,…` up to `--rank`.
    #[arg(long, value_delimiter = ',')]
    pub alphabet: Option<Vec<String>>,
    #[arg(long, default_value_t = 3)]
    pub rank: usize,
}

/// What a run printed and how it should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Size caps, overridable through `KEI_MAX_ORDER`, `KEI_MAX_WORD_LEN` and
/// `KEI_MAX_BALL`.
pub fn limits_from_env() -> CliResult<Limits> {
    limits_from(|k| std::env::var(k).ok())
}

pub fn limits_from(get: impl Fn(&str) -> Option<String>) -> CliResult<Limits> {
    let mut limits = Limits::default();
    for (key, slot) in [
        ("KEI_MAX_ORDER", &mut limits.max_order),
        ("KEI_MAX_WORD_LEN", &mut limits.max_word_len),
        ("KEI_MAX_BALL", &mut limits.max_ball_size),
    ] {
        if let Some(v) = get(key) {
            match v.trim().parse::<usize>() {
                Ok(x) if x > 0 => *slot = x,
                _ => {
                    return Err(CliError(format!(
                        "{key} must be a positive integer, got `{v}`"
                    )))
                }
            }
        }
    }
    Ok(limits)
}

pub fn run(cli: &Cli) -> Outcome {
    let result = limits_from_env().and_then(|limits| dispatch(cli, &limits));
    match result {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(CliError(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn emit<R: Serialize>(json: bool, report: &R, text: impl FnOnce(&R) -> String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
        s.push('\n');
        s
    } else {
        text(report)
    }
}

fn dispatch(cli: &Cli, limits: &Limits) -> CliResult<(i32, String)> {
    let json = cli.json;
    match &cli.command {
        Command::Check(a) => {
            let r = cmd_check(a, limits)?;
            Ok((
                if r.ok { EXIT_OK } else { EXIT_FAIL },
                emit(json, &r, CheckReport::text),
            ))
        }
        Command::Laurent(a) => {
            let r = cmd_laurent(a, limits)?;
            let code = if r.iso_verified && r.formula_verified {
                EXIT_OK
            } else {
                EXIT_FAIL
            };
            Ok((code, emit(json, &r, LaurentJson::text)))
        }
        Command::Freeprobe(a) => {
            let r = cmd_freeprobe(a, limits)?;
            let code = if r.relation.is_some() {
                EXIT_FAIL
            } else {
                EXIT_OK
            };
            Ok((code, emit(json, &r, ProbeJson::text)))
        }
        Command::Orbits(a) => {
            let r = cmd_orbits(&a.source, limits)?;
            Ok((EXIT_OK, emit(json, &r, OrbitsReport::text)))
        }
        Command::Homcount(a) => {
            let r = cmd_homcount(a, limits)?;
            Ok((EXIT_OK, emit(json, &r, HomcountReport::text)))
        }
        Command::Iso(a) => {
            let r = cmd_iso(a, limits)?;
            Ok((
                if r.isomorphic { EXIT_OK } else { EXIT_FAIL },
                emit(json, &r, IsoReport::text),
            ))
        }
        Command::Enumerate(a) => {
            let r = cmd_enumerate(a, limits)?;
            Ok((EXIT_OK, emit(json, &r, |r| r.text(a.count))))
        }
        Command::Envelope(a) => {
            let r = cmd_envelope(a, limits)?;
            let code = match (&r.mode[..], r.certified) {
                ("presentation", _) | (_, true) => EXIT_OK,
                _ => EXIT_FAIL,
            };
            Ok((code, emit(json, &r, EnvelopeReport::text)))
        }
        Command::Reduce(a) => {
            let r = cmd_reduce(a)?;
            Ok((EXIT_OK, emit(json, &r, ReduceReport::text)))
        }
    }
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("cannot read `{path}`: {e}")))
}

fn located(path: &str, e: Error) -> CliError {
    match e {
        Error::Parse(p) => CliError(format!("{path}:{p}")),
        other => CliError(format!("{path}: {other}")),
    }
}

/// A readable file wins over a builtin of the same name.
pub fn load_quandle(source: &str, limits: &Limits) -> CliResult<FiniteQuandle> {
    if Path::new(source).is_file() {
        let text = read_file(source)?;
        return parse_quandle_with_limits(&text, limits).map_err(|e| located(source, e));
    }
    FiniteQuandle::builtin(source).map_err(|_| {
        CliError(format!(
            "cannot read `{source}`: no such file or builtin quandle"
        ))
    })
}

pub fn load_group(source: &str, limits: &Limits) -> CliResult<FiniteGroup> {
    if Path::new(source).is_file() {
        let text = read_file(source)?;
        return parse_group_with_limits(&text, limits).map_err(|e| located(source, e));
    }
    FiniteGroup::builtin(source).map_err(|_| {
        CliError(format!(
            "cannot read `{source}`: no such file or builtin group"
        ))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub source: String,
    pub order: usize,
    pub rack: bool,
    pub rack_witness: Option<RackViolation>,
    pub quandle: Option<bool>,
    pub quandle_witness: Option<usize>,
    pub involutory: Option<bool>,
    pub involutory_witness: Option<(usize, usize)>,
    pub ok: bool,
}

impl CheckReport {
    fn text(&self) -> String {
        let mut s = format!("{}: order {}\n", self.source, self.order);
        match self.rack_witness {
            None => s.push_str("rack: ok\n"),
            Some(RackViolation::NonBijectiveRow { row }) => {
                let _ = writeln!(s, "rack: FAIL (row {row} is not a permutation)");
            }
            Some(RackViolation::SelfDistributivity { x, y, z }) => {
                let _ = writeln!(
                    s,
                    "rack: FAIL (x▷(y▷z) ≠ (x▷y)▷(x▷z) at x={x}, y={y}, z={z})"
                );
            }
        }
        match (self.quandle, self.quandle_witness) {
            (Some(true), _) => s.push_str("quandle: ok\n"),
            (Some(false), Some(x)) => {
                let _ = writeln!(s, "quandle: FAIL (x▷x ≠ x at x={x})");
            }
            _ => {}
        }
        match (self.involutory, self.involutory_witness) {
            (Some(true), _) => s.push_str("involutory: ok\n"),
            (Some(false), Some((x, y))) => {
                let _ = writeln!(s, "involutory: FAIL (x▷(x▷y) ≠ y at x={x}, y={y})");
            }
            _ => {}
        }
        s
    }
}

pub fn cmd_check(a: &CheckArgs, limits: &Limits) -> CliResult<CheckReport> {
    let q = load_quandle(&a.source, limits)?;
    let rack = q.check_rack();
    let want_quandle = a.quandle || a.involutory;
    let mut report = CheckReport {
        source: a.source.clone(),
        order: q.len(),
        rack: rack.is_rack,
        rack_witness: rack.witness,
        quandle: None,
        quandle_witness: None,
        involutory: None,
        involutory_witness: None,
        ok: rack.is_rack,
    };
    if rack.is_rack && want_quandle {
        let qr = q.check_quandle()?;
        report.quandle = Some(qr.is_quandle);
        report.quandle_witness = qr.witness;
        report.ok &= qr.is_quandle;
    }
    if rack.is_rack && a.involutory {
        let ir = q.check_involutory()?;
        report.involutory = Some(ir.is_involutory);
        report.involutory_witness = ir.witness;
        report.ok &= ir.is_involutory;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoPair {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub theorem: String,
    pub n: usize,
    pub group: String,
    pub character: String,
    pub involutions: usize,
    pub iso_verified: bool,
    pub formula_verified: bool,
    pub pairs_checked: usize,
    pub first_violation: Option<(usize, usize)>,
    pub iso: Vec<IsoPair>,
}

impl LaurentJson {
    fn text(&self) -> String {
        let mut s = format!(
            "Z/{} ⋊ {} (character {}): {} involutions, {} pairs checked\n",
            self.n, self.group, self.character, self.involutions, self.pairs_checked
        );
        let verdict = |b: bool| if b { "verified" } else { "FAILED" };
        let _ = writeln!(
            s,
            "(a,s)▷(b,t) = (2a−b, sts): {}",
            verdict(self.formula_verified)
        );
        let _ = writeln!(
            s,
            "(a,s) ↦ (s,a) onto Inv(G) × R_{}: {}",
            self.n,
            verdict(self.iso_verified)
        );
        if let Some((x, y)) = self.first_violation {
            let _ = writeln!(s, "first mismatch at pair ({x}, {y})");
        }
        for p in &self.iso {
            let _ = writeln!(s, "  {} ↦ {}", p.from, p.to);
        }
        s
    }
}

pub fn cmd_laurent(a: &LaurentArgs, limits: &Limits) -> CliResult<LaurentJson> {
    kei::models::semidirect::check_odd(a.n)?;
    let g = load_group(&a.group, limits)?;
    let order = a.n.saturating_mul(g.order());
    if order > limits.max_order {
        return Err(Error::OrderCap {
            order,
            cap: limits.max_order,
        }
        .into());
    }
    let action = match &a.character {
        Some(signs) => SignedAction::from_signs(g.clone(), signs)?,
        None => SignedAction::unique(g.clone())?,
    };
    let character = action.signs();
    let r = verify_laurent(a.n, action)?;
    let inv = g.involutions();
    let iso = (0..r.involutions)
        .map(|i| {
            let (a_, s) = r.labels[i];
            let to = r.iso.apply(i);
            let (s2, b) = (inv[to / a.n], to % a.n);
            IsoPair {
                from: format!("({a_},{})", g.label(s)),
                to: format!("({},{b})", g.label(s2)),
            }
        })
        .collect();
    Ok(LaurentJson {
        theorem: "laurent".into(),
        n: a.n,
        group: a.group.clone(),
        character,
        involutions: r.involutions,
        iso_verified: r.iso_verified,
        formula_verified: r.formula_verified,
        pairs_checked: r.pairs_checked,
        first_violation: r.first_violation,
        iso,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    /// Operation form, e.g. `ρ▷σ = τ`.
    pub expression: String,
    pub lhs: String,
    pub rhs: String,
    pub depth: usize,
    pub value: String,
    /// Both sides re-evaluated to the same value.
    pub replayed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeJson {
    pub target: String,
    pub generators: Vec<String>,
    pub depth: usize,
    pub elements_checked: usize,
    pub relation: Option<RelationJson>,
}

impl ProbeJson {
    fn text(&self) -> String {
        match &self.relation {
            Some(r) => format!(
                "relation at depth {}: {}\n  {} and {} both evaluate to {}\n{} elements checked\n",
                r.depth, r.expression, r.lhs, r.rhs, r.value, self.elements_checked
            ),
            None => format!(
                "no relation within depth {} ({} elements checked)\n",
                self.depth, self.elements_checked
            ),
        }
    }
}

fn relation_json<T: kei::QuandleOp>(
    ev: &kei::Evaluator<'_, T>,
    rel: &Relation,
    alphabet: &Alphabet,
    show: impl Fn(&T::Element) -> String,
) -> CliResult<RelationJson> {
    let l = ev.evaluate(&rel.lhs)?;
    let r = ev.evaluate(&rel.rhs)?;
    Ok(RelationJson {
        expression: rel.expression(alphabet),
        lhs: rel.lhs.display(alphabet).to_string(),
        rhs: rel.rhs.display(alphabet).to_string(),
        depth: rel.depth(),
        value: show(&l),
        replayed: l == r && rel.lhs != rel.rhs,
    })
}

pub fn cmd_freeprobe(a: &FreeprobeArgs, limits: &Limits) -> CliResult<ProbeJson> {
    match (&a.model, &a.file) {
        (Some(model), None) => {
            if model != "ev" {
                return Err(CliError(format!("unknown model `{model}` (known: ev)")));
            }
            if a.gens.is_some() {
                return Err(CliError("--gens applies to --file targets".into()));
            }
            let ev = ev_standard_evaluator();
            let alphabet = ev_alphabet();
            let report = freeness_probe(&ev, a.depth, limits)?;
            let relation = match &report.relation {
                Some(rel) => Some(relation_json(&ev, rel, &alphabet, |x| x.to_string())?),
                None => None,
            };
            Ok(ProbeJson {
                target: "ev".into(),
                generators: alphabet.names().to_vec(),
                depth: a.depth,
                elements_checked: report.elements_checked,
                relation,
            })
        }
        (None, Some(file)) => {
            let q = load_quandle(file, limits)?;
            let gens = a.gens.clone().unwrap_or_else(|| (0..q.len()).collect());
            if gens.is_empty() {
                return Err(CliError("at least one generator is needed".into()));
            }
            let ev = universal_extend(&q, &gens)?;
            let alphabet = Alphabet::standard(gens.len());
            let report = freeness_probe(&ev, a.depth, limits)?;
            let relation = match &report.relation {
                Some(rel) => Some(relation_json(&ev, rel, &alphabet, |x| x.to_string())?),
                None => None,
            };
            Ok(ProbeJson {
                target: file.clone(),
                generators: gens.iter().map(|g| g.to_string()).collect(),
                depth: a.depth,
                elements_checked: report.elements_checked,
                relation,
            })
        }
        _ => Err(CliError("give exactly one of --model or --file".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsReport {
    pub source: String,
    pub order: usize,
    pub count: usize,
    pub classes: Vec<Vec<usize>>,
}

impl OrbitsReport {
    fn text(&self) -> String {
        let mut s = format!("{} orbit(s)\n", self.count);
        for c in &self.classes {
            let items: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "  {{{}}}", items.join(", "));
        }
        s
    }
}

pub fn cmd_orbits(source: &str, limits: &Limits) -> CliResult<OrbitsReport> {
    let q = load_quandle(source, limits)?;
    let p = orbits(&q)?;
    Ok(OrbitsReport {
        source: source.into(),
        order: q.len(),
        count: p.len(),
        classes: p.classes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomcountReport {
    pub source_order: usize,
    pub target_order: usize,
    pub count: u64,
    pub maps: Option<Vec<Vec<usize>>>,
}

impl HomcountReport {
    fn text(&self) -> String {
        let mut s = format!("{} morphism(s)\n", self.count);
        for m in self.maps.iter().flatten() {
            let _ = writeln!(s, "  {m:?}");
        }
        s
    }
}

pub fn cmd_homcount(a: &HomcountArgs, limits: &Limits) -> CliResult<HomcountReport> {
    let src = load_quandle(&a.source, limits)?;
    let tgt = load_quandle(&a.target, limits)?;
    let count = hom_count(&src, &tgt)?;
    let maps = match a.list {
        Some(k) => Some(
            enumerate_homs(&src, &tgt, Some(k))?
                .into_iter()
                .map(|m| m.map)
                .collect(),
        ),
        None => None,
    };
    Ok(HomcountReport {
        source_order: src.len(),
        target_order: tgt.len(),
        count,
        maps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub isomorphic: bool,
    pub map: Option<Vec<usize>>,
}

impl IsoReport {
    fn text(&self) -> String {
        match &self.map {
            Some(m) => format!("isomorphic via {m:?}\n"),
            None => "not isomorphic\n".into(),
        }
    }
}

pub fn cmd_iso(a: &IsoArgs, limits: &Limits) -> CliResult<IsoReport> {
    let l = load_quandle(&a.left, limits)?;
    let r = load_quandle(&a.right, limits)?;
    let found = are_isomorphic(&l, &r)?;
    Ok(IsoReport {
        isomorphic: found.is_some(),
        map: found.map(|m| m.map),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub kind: BallKind,
    pub rank: usize,
    pub radius: usize,
    pub involutions_only: bool,
    pub count: usize,
    pub elements: Vec<String>,
}

impl EnumerateReport {
    fn text(&self, count_only: bool) -> String {
        if count_only {
            return format!("{}\n", self.count);
        }
        let mut s = String::new();
        for e in &self.elements {
            s.push_str(e);
            s.push('\n');
        }
        s
    }
}

pub fn cmd_enumerate(a: &EnumerateArgs, limits: &Limits) -> CliResult<EnumerateReport> {
    if a.rank == 0 {
        return Err(CliError("rank must be positive".into()));
    }
    let alphabet = Alphabet::standard(a.rank);
    let elements: Vec<String> = match a.kind {
        BallKind::Fiq => fiq_ball(a.rank, a.radius, limits)?
            .iter()
            .map(|e| e.display(&alphabet).to_string())
            .collect(),
        BallKind::Coxeter | BallKind::Free => {
            let mode = if a.kind == BallKind::Free {
                Mode::Free
            } else {
                Mode::Coxeter
            };
            ball_enumerate(a.rank, mode, a.radius, limits)?
                .iter()
                .filter(|w| !a.involutions || w.is_involution())
                .map(|w| alphabet.format_word(w))
                .collect()
        }
    };
    Ok(EnumerateReport {
        kind: a.kind,
        rank: a.rank,
        radius: a.radius,
        involutions_only: a.involutions || a.kind == BallKind::Fiq,
        count: elements.len(),
        elements,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeReport {
    /// `search`, `verify` or `presentation`.
    pub mode: String,
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub equate: Option<(String, String)>,
    pub depth: usize,
    pub max_len: usize,
    pub certified: bool,
    pub certificate: Option<DerivationCertificate>,
    /// Words visited by the certificate, start first.
    pub trace: Vec<String>,
}

impl EnvelopeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        if self.mode == "presentation" {
            for g in &self.generators {
                let _ = writeln!(s, "gen {g}");
            }
            for r in &self.relators {
                let _ = writeln!(s, "rel {r}");
            }
            return s;
        }
        match (&self.equate, &self.certificate) {
            (Some((a, b)), Some(c)) if self.certified => {
                let _ = writeln!(s, "certified {a} = {b} in {} step(s)", c.steps.len());
                for (i, w) in self.trace.iter().enumerate() {
                    if i == 0 {
                        let _ = writeln!(s, "  start  {w}");
                    } else {
                        let st = c.steps[i - 1];
                        let _ = writeln!(
                            s,
                            "  {i}. relator {} rotation {}{} at {}  →  {w}",
                            st.relator,
                            st.rotation,
                            if st.inverse { " inverted" } else { "" },
                            st.position
                        );
                    }
                }
            }
            (_, Some(_)) if self.mode == "verify" => {
                let verdict = if self.certified {
                    "accepted"
                } else {
                    "REJECTED"
                };
                let _ = writeln!(s, "certificate {verdict}");
            }
            (Some((a, b)), _) => {
                let _ = writeln!(
                    s,
                    "no derivation of {a} = {b} within depth {} and length {}",
                    self.depth, self.max_len
                );
            }
            _ => {}
        }
        s
    }
}

fn resolve_generator(alphabet: &Alphabet, token: &str) -> CliResult<usize> {
    let token = token.trim();
    if let Some(i) = alphabet.index_of(token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < alphabet.len() => Ok(i),
        _ => Err(CliError(format!("unknown generator `{token}`"))),
    }
}

pub fn cmd_envelope(a: &EnvelopeArgs, limits: &Limits) -> CliResult<EnvelopeReport> {
    let q = load_quandle(&a.source, limits)?;
    let names: Vec<String> = match &a.labels {
        Some(l) => l.clone(),
        None => (0..q.len()).map(|i| format!("g{i}")).collect(),
    };
    let alphabet = Alphabet::new(names)?;
    let p = enveloping_presentation_named(&q, alphabet.clone())?;
    let mut report = EnvelopeReport {
        mode: "presentation".into(),
        generators: alphabet.names().to_vec(),
        relators: p
            .relators()
            .iter()
            .map(|r| alphabet.format_word(r))
            .collect(),
        equate: None,
        depth: a.depth,
        max_len: a.max_len,
        certified: false,
        certificate: None,
        trace: Vec::new(),
    };
    if a.presentation {
        return Ok(report);
    }
    let cert = if let Some(path) = &a.verify {
        report.mode = "verify".into();
        let text = read_file(path)?;
        let cert = DerivationCertificate::from_json(&text).map_err(|e| located(path, e))?;
        report.certified = verify_certificate(&p, &cert)?;
        cert
    } else {
        report.mode = "search".into();
        let pair = a.equate.as_deref().unwrap_or_default();
        let [x, y] = pair else {
            return Err(CliError("--equate takes exactly two generators".into()));
        };
        let (x, y) = (
            resolve_generator(&alphabet, x)?,
            resolve_generator(&alphabet, y)?,
        );
        report.equate = Some((alphabet.name(x).to_string(), alphabet.name(y).to_string()));
        let bounds = DeriveBounds {
            depth: a.depth,
            max_len: a.max_len,
            ..DeriveBounds::default()
        };
        match derive_equal(&p, x, y, &bounds)? {
            Some(c) => {
                report.certified = verify_certificate(&p, &c)?;
                c
            }
            None => return Ok(report),
        }
    };
    report.trace = replay(&p, &cert)?
        .iter()
        .map(|w| alphabet.format_word(w))
        .collect();
    report.certificate = Some(cert);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReduceReport {
    pub input: String,
    pub mode: String,
    pub reduced: String,
    pub length: usize,
    pub involution: bool,
}

impl ReduceReport {
    fn text(&self) -> String {
        format!("{}\n", self.reduced)
    }
}

pub fn cmd_reduce(a: &ReduceArgs) -> CliResult<ReduceReport> {
    let alphabet = match &a.alphabet {
        Some(names) => Alphabet::new(names.clone())?,
        None => Alphabet::standard(a.rank),
    };
    let mode = match a.mode {
        WordMode::Free => Mode::Free,
        WordMode::Coxeter => Mode::Coxeter,
    };
    let w = alphabet.parse_word(&a.word, mode)?;
    Ok(ReduceReport {
        input: a.word.clone(),
        mode: if mode == Mode::Free {
            "free"
        } else {
            "coxeter"
        }
        .into(),
        reduced: alphabet.format_word(&w),
        length: w.len(),
        involution: w.is_involution(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("kei").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn caps_come_from_the_environment() {
        let l = limits_from(|k| (k == "KEI_MAX_ORDER").then(|| "12".to_string())).unwrap();
        assert_eq!(l.max_order, 12);
        assert!(limits_from(|_| Some("0".into())).is_err());
        assert!(limits_from(|_| Some("many".into())).is_err());
    }

    #[test]
    fn check_codes() {
        assert_eq!(
            run(&parse(&["check", "dihedral5", "--involutory"])).code,
            EXIT_OK
        );
        assert_eq!(
            run(&parse(&["check", "conj-s3", "--involutory"])).code,
            EXIT_FAIL
        );
        assert_eq!(run(&parse(&["check", "no/such/file.qdl"])).code, EXIT_USAGE);
    }

    #[test]
    fn laurent_rejects_even_moduli() {
        let out = run(&parse(&["laurent", "--n", "4"]));
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("odd"), "{}", out.stderr);
    }

    #[test]
    fn reduce_free_word() {
        let out = run(&parse(&["reduce", "s t t^-1 s^-1 t"]));
        assert_eq!(out.stdout, "t\n");
        let out = run(&parse(&["reduce", "--mode", "coxeter", "s t t s"]));
        assert_eq!(out.stdout, "e\n");
    }

    #[test]
    fn envelope_requires_a_pair() {
        let out = run(&parse(&["envelope", "swap3", "--equate", "0"]));
        assert_eq!(out.code, EXIT_USAGE);
    }
}
