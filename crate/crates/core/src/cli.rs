//! The `prk` command line. [`run`] parses arguments, executes one command
//! and returns the exit status together with everything it printed, so the
//! binary and the tests drive exactly the same code.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canonicity::{canonicalize, disjunction_choice, existential_witness, witness, Head};
use crate::embeddings::{embed, Logic};
use crate::encodings::{describe, simulate, EncConn, Outcome};
use crate::intuitionistic::{check_prj_verdict, check_prjv, PrjVerdict, Violation};
use crate::reduction::{erase, normalize, unormalize, Status, Strategy, DEFAULT_FUEL};
use crate::selftest::{self, Suite, SuiteConfig};
use crate::surface::{parse_file, Decl, ParseError, SourceFile};
use crate::syntax::pretty::{mty_to_string, term_to_string, ty_to_string, Style};
use crate::syntax::{Context, MTy, Path, Sign, Term, Ty};
use crate::typecheck::{check, infer, TypeError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "prk", version, about = "Proof-term laboratory for a calculus of proofs and refutations")]
pub struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print terms and types with ASCII keywords (the input syntax).
    #[arg(long, global = true)]
    pub ascii: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// The classical system.
    Prk,
    /// Classical typing plus the intuitionistic occurrence condition.
    Prj,
    /// The inductive counterfactual system.
    Prjv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicArg {
    Nj,
    Nk,
}

impl From<LogicArg> for Logic {
    fn from(l: LogicArg) -> Logic {
        match l {
            LogicArg::Nj => Logic::NJ,
            LogicArg::Nk => Logic::NK,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check every term and proof in FILE, or only FILE#name.
    Check {
        #[arg(long, value_enum, default_value = "prk")]
        system: System,
        /// Counterfactual variables for `--system prjv`, comma separated.
        #[arg(long, value_delimiter = ',')]
        counterfactuals: Vec<String>,
        target: String,
    },
    /// Reduce a term to normal form, printing one step per line.
    Normalize {
        /// lo, ri, random or random:SEED
        #[arg(long, default_value = "lo")]
        strategy: String,
        /// Seed for `--strategy random`.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Also contract η-redexes.
        #[arg(long)]
        eta: bool,
        target: String,
    },
    /// Erase a term to the untyped λ-calculus with pairs.
    Erase {
        /// Also normalize the erased term.
        #[arg(long)]
        normalize: bool,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        target: String,
    },
    /// Embed a natural-deduction proof.
    Embed {
        #[arg(long, value_enum)]
        logic: LogicArg,
        target: String,
    },
    /// Normalize a closed term to its canonical form.
    Canon { target: String },
    /// Extract the canonical body of a closed term of weak type.
    Witness { target: String },
    /// Run the simulation experiment for an encoded connective.
    Encode {
        #[arg(long)]
        connective: EncConn,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
        sign: Sign,
    },
    /// Run the property suites.
    Selftest {
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        /// Use a tenth of the default sample sizes.
        #[arg(long)]
        quick: bool,
        /// Run only these suites.
        #[arg(long)]
        suite: Vec<Suite>,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "pos" => Ok(Sign::Pos),
        "-" | "neg" => Ok(Sign::Neg),
        _ => Err(format!("expected + or -, got {s:?}")),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{file}:{err}")]
    Parse { file: String, err: ParseError },
    #[error("{file}: {err}")]
    Io { file: String, err: std::io::Error },
}

/// Exit status and the text written to each stream.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Accumulates output either as text lines or JSON records.
struct Out {
    json: bool,
    style: Style,
    command: &'static str,
    input_hash: String,
    text: String,
    failed: bool,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        if !self.json {
            self.text.push_str(s.as_ref());
            self.text.push('\n');
        }
    }

    fn record(&mut self, ok: bool, payload: Value) {
        if !ok {
            self.failed = true;
        }
        if self.json {
            let r = json!({ "command": self.command, "input_hash": self.input_hash, "ok": ok, "payload": payload });
            self.text.push_str(&r.to_string());
            self.text.push('\n');
        }
    }

    fn term(&self, t: &Term) -> String {
        term_to_string(t, self.style)
    }

    fn mty(&self, p: &MTy) -> String {
        mty_to_string(p, self.style)
    }

    fn ty(&self, a: &Ty) -> String {
        ty_to_string(a, self.style)
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn path_string(p: &Path) -> String {
    if p.is_empty() {
        "ε".to_string()
    } else {
        p.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn sign_str(g: Sign) -> &'static str {
    g.pick("+", "-")
}

fn head_name(h: Head, g: Sign) -> String {
    let base = match h {
        Head::Pair => "pair".to_string(),
        Head::Inj(i) => format!("inj{}", i.index()),
        Head::Lam => "lam".into(),
        Head::Copair => "copair".into(),
        Head::NegI => "negi".into(),
        Head::TLam => "tlam".into(),
        Head::Pack => "pack".into(),
        Head::WLam => "wlam".into(),
    };
    format!("{base}{}", sign_str(g))
}

/// A parsed input file and the declaration selected by `FILE#name`.
struct Target {
    file: SourceFile,
    decl: Option<String>,
    hash: String,
}

impl Target {
    fn load(spec: &str) -> Result<Target, CliError> {
        let (path, decl) = match spec.rsplit_once('#') {
            Some((p, d)) => (p, Some(d.to_string())),
            None => (spec, None),
        };
        let bytes = std::fs::read(PathBuf::from(path)).map_err(|err| CliError::Io { file: path.into(), err })?;
        let text = String::from_utf8(bytes.clone())
            .map_err(|e| CliError::Usage(format!("{path}: not UTF-8 ({e})")))?;
        let file = parse_file(&text).map_err(|err| CliError::Parse { file: path.into(), err })?;
        if let Some(d) = &decl {
            if file.get(d).is_none() {
                return Err(CliError::Usage(format!("{path}: no declaration named {d:?}")));
            }
        }
        Ok(Target { file, decl, hash: sha256_hex(&bytes) })
    }

    /// The selected declaration, or the last one.
    fn selected(&self) -> Result<&Decl, CliError> {
        match &self.decl {
            Some(d) => Ok(self.file.get(d).expect("checked on load")),
            None => self.file.decls.last().ok_or_else(|| CliError::Usage("file has no declarations".into())),
        }
    }
}

/// A term with its context and, when known, its declared type.
struct Subject {
    name: String,
    ctx: Context,
    term: Term,
    ty: Option<MTy>,
}

fn subject_of(d: &Decl) -> Result<Result<Subject, String>, CliError> {
    match d {
        Decl::Type { name, .. } => Err(CliError::Usage(format!("{name} is a type alias, not a term"))),
        Decl::Term { name, ctx, ty, term } => {
            Ok(Ok(Subject { name: name.clone(), ctx: ctx.clone(), term: term.clone(), ty: ty.clone() }))
        }
        Decl::NdProof { name, deriv, concl } => Ok(embed_decl(deriv, concl.as_ref(), Logic::NK).map(|e| Subject {
            name: name.clone(),
            ctx: e.ctx,
            term: e.term,
            ty: Some(e.ty),
        })),
    }
}

fn embed_decl(
    deriv: &crate::embeddings::NdDerivation,
    concl: Option<&Ty>,
    logic: Logic,
) -> Result<crate::embeddings::Embedded, String> {
    let e = embed(deriv, logic).map_err(|e| e.to_string())?;
    if let Some(c) = concl {
        if *c != e.sequent.concl {
            return Err(format!(
                "proof concludes {}, declared {}",
                ty_to_string(&e.sequent.concl, Style::Unicode),
                ty_to_string(c, Style::Unicode)
            ));
        }
    }
    Ok(e)
}

/// Checks a subject classically, returning its type.
fn typed(s: &Subject) -> Result<MTy, TypeError> {
    match &s.ty {
        Some(p) => check(&s.ctx, &s.term, p).map(|_| p.clone()),
        None => infer(&s.ctx, &s.term),
    }
}

fn violation_text(v: &Violation) -> String {
    match v {
        Violation::ForbiddenEliminator { path, rule } => {
            format!("eliminator {rule} at {} is not intuitionistic", path_string(path))
        }
        Violation::CounterfactualVariable { path, name } => {
            format!("counterfactual variable {name} used at {}", path_string(path))
        }
        Violation::CounterfactualBinder { path, binder } => {
            format!("variable bound by the weak abstraction at {} used at {}", path_string(binder), path_string(path))
        }
    }
}

pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunOutput { code, stdout: String::new(), stderr: text }
            } else {
                RunOutput { code, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> RunOutput {
    let command = match &cli.command {
        Command::Check { .. } => "check",
        Command::Normalize { .. } => "normalize",
        Command::Erase { .. } => "erase",
        Command::Embed { .. } => "embed",
        Command::Canon { .. } => "canon",
        Command::Witness { .. } => "witness",
        Command::Encode { .. } => "encode",
        Command::Selftest { .. } => "selftest",
    };
    let mut out = Out {
        json: cli.json,
        style: if cli.ascii { Style::Ascii } else { Style::Unicode },
        command,
        input_hash: String::new(),
        text: String::new(),
        failed: false,
    };
    let res = match &cli.command {
        Command::Check { system, counterfactuals, target } => cmd_check(&mut out, *system, counterfactuals, target),
        Command::Normalize { strategy, seed, fuel, eta, target } => {
            cmd_normalize(&mut out, strategy, *seed, *fuel, *eta, target)
        }
        Command::Erase { normalize, fuel, target } => cmd_erase(&mut out, *normalize, *fuel, target),
        Command::Embed { logic, target } => cmd_embed(&mut out, (*logic).into(), target),
        Command::Canon { target } => cmd_canon(&mut out, target),
        Command::Witness { target } => cmd_witness(&mut out, target),
        Command::Encode { connective, sign } => cmd_encode(&mut out, *connective, *sign),
        Command::Selftest { seed, quick, suite } => cmd_selftest(&mut out, *seed, *quick, suite),
    };
    match res {
        Ok(()) => RunOutput {
            code: if out.failed { EXIT_FAILURE } else { EXIT_OK },
            stdout: out.text,
            stderr: String::new(),
        },
        Err(e) => {
            let stderr = if cli.json {
                let r = json!({ "command": command, "input_hash": out.input_hash, "ok": false,
                                "payload": { "error": e.to_string() } });
                out.text.push_str(&r.to_string());
                out.text.push('\n');
                String::new()
            } else {
                format!("prk: {e}\n")
            };
            RunOutput { code: EXIT_USAGE, stdout: out.text, stderr }
        }
    }
}

/// Reports a failure that stops a single-subject command.
fn fail(out: &mut Out, name: &str, msg: String) {
    out.line(format!("{name}: {msg}"));
    out.record(false, json!({ "name": name, "error": msg }));
}

fn cmd_check(out: &mut Out, system: System, xs: &[String], target: &str) -> Result<(), CliError> {
    let tg = Target::load(target)?;
    out.input_hash = tg.hash.clone();
    let decls: Vec<&Decl> = match &tg.decl {
        Some(_) => vec![tg.selected()?],
        None => tg.file.checkable().collect(),
    };
    if decls.is_empty() {
        return Err(CliError::Usage("nothing to check".into()));
    }
    let xs: BTreeSet<String> = xs.iter().cloned().collect();
    let sys = format!("{system:?}").to_lowercase();
    for d in decls {
        let s = match subject_of(d)? {
            Ok(s) => s,
            Err(msg) => {
                fail(out, d.name(), msg);
                continue;
            }
        };
        let ty = match typed(&s) {
            Ok(p) => p,
            Err(e) => {
                out.line(format!("{}: ill-typed: {e}", s.name));
                out.record(false, json!({ "name": s.name, "system": sys, "error": e }));
                continue;
            }
        };
        let verdict: Result<(), String> = match system {
            System::Prk => Ok(()),
            System::Prj => match check_prj_verdict(&s.ctx, &s.term, &ty) {
                Ok(PrjVerdict::Intuitionistic) => Ok(()),
                Ok(PrjVerdict::Classical(v)) => Err(violation_text(&v)),
                Err(e) => Err(e.to_string()),
            },
            System::Prjv => match check_prjv(&xs, &s.ctx, &s.term, &ty) {
                Ok(true) => Ok(()),
                Ok(false) => Err("not derivable in the counterfactual system".into()),
                Err(e) => Err(e.to_string()),
            },
        };
        match verdict {
            Ok(()) => {
                out.line(format!("{} : {}", s.name, out.mty(&ty)));
                out.record(true, json!({ "name": s.name, "system": sys, "type": mty_to_string(&ty, Style::Unicode) }));
            }
            Err(msg) => {
                out.line(format!("{} : {} rejected by {sys}: {msg}", s.name, out.mty(&ty)));
                out.record(
                    false,
                    json!({ "name": s.name, "system": sys, "type": mty_to_string(&ty, Style::Unicode), "error": msg }),
                );
            }
        }
    }
    Ok(())
}

/// Loads the selected term and checks it classically. `None` means the
/// failure has already been reported.
fn load_typed(out: &mut Out, target: &str) -> Result<Option<(Subject, MTy)>, CliError> {
    let tg = Target::load(target)?;
    out.input_hash = tg.hash.clone();
    let d = tg.selected()?;
    let s = match subject_of(d)? {
        Ok(s) => s,
        Err(msg) => {
            fail(out, d.name(), msg);
            return Ok(None);
        }
    };
    match typed(&s) {
        Ok(p) => Ok(Some((s, p))),
        Err(e) => {
            fail(out, &s.name, format!("ill-typed: {e}"));
            Ok(None)
        }
    }
}

fn cmd_normalize(
    out: &mut Out,
    strategy: &str,
    seed: Option<u64>,
    fuel: usize,
    eta: bool,
    target: &str,
) -> Result<(), CliError> {
    let strategy = match (strategy.parse::<Strategy>().map_err(CliError::Usage)?, seed) {
        (Strategy::Random(_), Some(n)) if strategy == "random" => Strategy::Random(n),
        (s, _) => s,
    };
    let Some((s, ty)) = load_typed(out, target)? else { return Ok(()) };
    let tr = normalize(&s.term, strategy, fuel, eta);
    out.line(format!("0\t-\t-\t{}", out.term(&tr.initial)));
    for (i, st) in tr.steps.iter().enumerate() {
        let text = out.term(&st.term);
        out.line(format!("{}\t{}\t{}\t{}", i + 1, st.redex.rule, path_string(&st.redex.path), text));
        out.record(
            true,
            json!({ "kind": "step", "index": i + 1, "rule": st.redex.rule, "path": st.redex.path, "term": text }),
        );
    }
    let ok = tr.status == Status::Normal;
    let status = match tr.status {
        Status::Normal => "normal",
        Status::FuelExhausted => "fuel-exhausted",
    };
    out.line(format!("{status} after {} steps : {}", tr.len(), out.mty(&ty)));
    out.record(
        ok,
        json!({ "kind": "result", "name": s.name, "status": status, "steps": tr.len(),
                "type": mty_to_string(&ty, Style::Unicode), "term": out.term(tr.result()) }),
    );
    Ok(())
}

fn cmd_erase(out: &mut Out, normalize_it: bool, fuel: usize, target: &str) -> Result<(), CliError> {
    let tg = Target::load(target)?;
    out.input_hash = tg.hash.clone();
    let d = tg.selected()?;
    let s = match subject_of(d)? {
        Ok(s) => s,
        Err(msg) => {
            fail(out, d.name(), msg);
            return Ok(());
        }
    };
    let u = erase(&s.term);
    out.line(u.to_string());
    let mut payload = json!({ "name": s.name, "erased": u.to_string() });
    let mut ok = true;
    if normalize_it {
        let tr = unormalize(&u, fuel);
        ok = matches!(tr.status, crate::reduction::UStatus::Normal);
        out.line(format!("{} steps: {}", tr.steps.len(), tr.result()));
        payload["steps"] = json!(tr.steps.len());
        payload["normal_form"] = json!(tr.result().to_string());
    }
    out.record(ok, payload);
    Ok(())
}

fn cmd_embed(out: &mut Out, logic: Logic, target: &str) -> Result<(), CliError> {
    let tg = Target::load(target)?;
    out.input_hash = tg.hash.clone();
    let Decl::NdProof { name, deriv, concl } = tg.selected()? else {
        return Err(CliError::Usage(format!("{} is not an ndproof", tg.selected()?.name())));
    };
    let e = match embed_decl(deriv, concl.as_ref(), logic) {
        Ok(e) => e,
        Err(msg) => {
            fail(out, name, msg);
            return Ok(());
        }
    };
    let checked = check(&e.ctx, &e.term, &e.ty);
    let intuitionistic = check_prj_verdict(&e.ctx, &e.term, &e.ty).ok().map(|v| v == PrjVerdict::Intuitionistic);
    out.line(format!("{name} : {}", e.sequent));
    let ctx: Vec<String> = e.ctx.entries().iter().map(|(x, p)| format!("{x} : {}", out.mty(p))).collect();
    out.line(format!("  context   [{}]", ctx.join(", ")));
    out.line(format!("  term      {}", out.term(&e.term)));
    out.line(format!("  type      {}", out.mty(&e.ty)));
    match &checked {
        Ok(_) => out.line(format!("  checks    yes{}", if intuitionistic == Some(true) { ", intuitionistic" } else { "" })),
        Err(err) => out.line(format!("  checks    no: {err}")),
    }
    out.record(
        checked.is_ok(),
        json!({
            "name": name,
            "logic": e_logic(logic),
            "sequent": e.sequent.to_string(),
            "context": e.ctx.entries().iter().map(|(x, p)| json!([x, mty_to_string(p, Style::Unicode)])).collect::<Vec<_>>(),
            "term": out.term(&e.term),
            "type": mty_to_string(&e.ty, Style::Unicode),
            "intuitionistic": intuitionistic,
        }),
    );
    Ok(())
}

fn e_logic(l: Logic) -> &'static str {
    match l {
        Logic::NJ => "nj",
        Logic::NK => "nk",
    }
}

fn cmd_canon(out: &mut Out, target: &str) -> Result<(), CliError> {
    let Some((s, ty)) = load_typed(out, target)? else { return Ok(()) };
    match canonicalize(&s.term, &ty) {
        Ok(c) => {
            out.line(format!("{} : {}", s.name, out.mty(&ty)));
            out.line(format!("  normal form  {}", out.term(&c.term)));
            out.line(format!("  head         {}", head_name(c.head, c.sign)));
            out.line(format!("  steps        {}", c.steps));
            out.record(
                true,
                json!({ "name": s.name, "type": mty_to_string(&ty, Style::Unicode), "term": out.term(&c.term),
                        "head": head_name(c.head, c.sign), "steps": c.steps }),
            );
        }
        Err(e) => fail(out, &s.name, e.to_string()),
    }
    Ok(())
}

fn cmd_witness(out: &mut Out, target: &str) -> Result<(), CliError> {
    let Some((s, ty)) = load_typed(out, target)? else { return Ok(()) };
    let w = match witness(&s.term, &ty) {
        Ok(w) => w,
        Err(e) => {
            fail(out, &s.name, e.to_string());
            return Ok(());
        }
    };
    out.line(format!("{} : {}", s.name, out.mty(&ty)));
    out.line(format!("  counterfactual  {} : {}", w.var, out.mty(&w.var_ty)));
    out.line(format!("  body            {}", out.term(&w.body)));
    out.line(format!("  head            {}", head_name(w.head, w.var_ty.sign().flip())));
    out.line(format!("  rounds          {}", w.rounds));
    let mut payload = json!({
        "name": s.name,
        "type": mty_to_string(&ty, Style::Unicode),
        "var": w.var,
        "var_type": mty_to_string(&w.var_ty, Style::Unicode),
        "body": out.term(&w.body),
        "closed": out.term(&w.closed()),
        "head": head_name(w.head, w.var_ty.sign().flip()),
        "rounds": w.rounds,
        "steps": w.steps,
    });
    let mut ok = true;
    match (&ty.ty, ty.sign()) {
        (Ty::Or(..), Sign::Pos) => match disjunction_choice(&s.term, &ty) {
            Ok(c) => {
                out.line(format!("  injection       {}", c.index()));
                payload["injection"] = json!(c.index());
            }
            Err(e) => {
                ok = false;
                out.line(format!("  injection       failed: {e}"));
            }
        },
        (Ty::Exists(..), Sign::Pos) => match existential_witness(&s.term, &ty) {
            Ok(x) => {
                out.line(format!("  packed type     {}", out.ty(&x.ty)));
                payload["packed_type"] = json!(ty_to_string(&x.ty, Style::Unicode));
            }
            Err(e) => {
                ok = false;
                out.line(format!("  packed type     failed: {e}"));
            }
        },
        _ => {}
    }
    out.record(ok, payload);
    Ok(())
}

fn cmd_encode(out: &mut Out, conn: EncConn, sign: Sign) -> Result<(), CliError> {
    out.input_hash = sha256_hex(format!("encode {conn} {}", sign_str(sign)).as_bytes());
    let r = match simulate(conn, sign) {
        Ok(r) => r,
        Err(e) => {
            fail(out, &conn.to_string(), e.to_string());
            return Ok(());
        }
    };
    let verdict = if r.simulates() {
        "simulates"
    } else if r.stuck() {
        "stuck"
    } else {
        "mixed"
    };
    out.line(format!("{conn}{} encoded as {}", sign_str(sign), describe(conn)));
    for side in &r.sides {
        out.line(format!("  side {}", side.side));
        out.line(format!("    composite  {}", side.composite));
        out.line(format!("    expected   {}", side.expected));
        match &side.outcome {
            Outcome::Simulates { steps, rules } => {
                out.line(format!("    simulates in {steps} steps ({})", rules.join(" ")))
            }
            Outcome::Stuck { normal_form, path } => {
                out.line(format!("    stuck at {}: {normal_form}", path_string(path)))
            }
        }
    }
    out.line(format!("verdict: {verdict}{}", if r.typed { "" } else { " (untyped)" }));
    out.record(true, json!({ "encoding": describe(conn), "verdict": verdict, "report": r }));
    Ok(())
}

fn cmd_selftest(out: &mut Out, seed: u64, quick: bool, suites: &[Suite]) -> Result<(), CliError> {
    let cfg = SuiteConfig { seed, ..if quick { SuiteConfig::quick() } else { SuiteConfig::default() } };
    out.input_hash = sha256_hex(format!("selftest {cfg:?}").as_bytes());
    let chosen: Vec<Suite> = if suites.is_empty() { Suite::ALL.to_vec() } else { suites.to_vec() };
    for s in chosen {
        let r = selftest::run(s, &cfg);
        let mut line = String::new();
        let _ = write!(
            line,
            "{:<18} {:<4} cases={:<5} checks={:<6} failures={} ({} ms)",
            r.suite.name(),
            if r.passed() { "ok" } else { "FAIL" },
            r.cases,
            r.checks,
            r.failures,
            r.millis
        );
        for (k, v) in &r.stats {
            let _ = write!(line, " {k}={v}");
        }
        out.line(line);
        for e in &r.examples {
            out.line(format!("    {e}"));
        }
        out.record(r.passed(), json!(r));
    }
    Ok(())
}
