//! Acceptance run. Prints one line per criterion and exits non-zero when any
//! criterion fails. Sample sizes and fuel bounds are pinned below.

use std::path::PathBuf;
use std::process::ExitCode;

use prk_lab::canonicity::{canonicalize, disjunction_choice, witness};
use prk_lab::cli;
use prk_lab::embeddings::{embed, lem_p, Logic};
use prk_lab::encodings::{experiment, simulate, EncConn};
use prk_lab::golden::{reduction_result, REDUCTION_RULES};
use prk_lab::intuitionistic::check_prj;
use prk_lab::reduction::{erase, normalize, ustep, Status, DEFAULT_FUEL};
use prk_lab::selftest::{run, Suite, SuiteConfig, SuiteReport, STRATEGIES};
use prk_lab::surface::{parse_file, Decl};
use prk_lab::syntax::pretty::{term_to_string, Style};
use prk_lab::syntax::{Context, MTy, Sign, Side, Term, Ty};
use prk_lab::typecheck::{check, infer};

const RANDOM_TYPES: usize = 50;
const SR_TERMS: usize = 500;
const CONFLUENCE_TERMS: usize = 200;
const JOIN_FUEL: usize = 10_000;
const SN_FUEL: usize = 100_000;
const WITNESS_PROOFS: usize = 100;
const PRJ_INSTANCES: usize = 500;
const MAX_FAILURES: usize = 0;

fn config() -> SuiteConfig {
    SuiteConfig {
        seed: 2024,
        types: RANDOM_TYPES,
        terms: SR_TERMS,
        confluence: CONFLUENCE_TERMS,
        witnesses: WITNESS_PROOFS,
        instances: PRJ_INSTANCES,
        proofs: 100,
        fuel: SN_FUEL,
        join_fuel: JOIN_FUEL,
    }
}

fn examples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> String {
    examples_dir().join(name).to_string_lossy().into_owned()
}

/// A corpus term with its file, context and type.
struct Entry {
    origin: String,
    ctx: Context,
    term: Term,
    ty: MTy,
}

fn corpus() -> Vec<Entry> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(examples_dir())
        .expect("examples directory")
        .map(|e| e.expect("dir entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "prk"))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f).expect("readable corpus file");
        let file = parse_file(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        let stem = f.file_name().unwrap().to_string_lossy().into_owned();
        for d in &file.decls {
            let origin = format!("{stem}#{}", d.name());
            match d {
                Decl::Type { .. } => {}
                Decl::Term { ctx, ty, term, .. } => {
                    let ty = match ty {
                        Some(p) => p.clone(),
                        None => infer(ctx, term).unwrap_or_else(|e| panic!("{origin}: {e}")),
                    };
                    out.push(Entry { origin, ctx: ctx.clone(), term: term.clone(), ty });
                }
                Decl::NdProof { deriv, .. } => {
                    let e = embed(deriv, Logic::NK).unwrap_or_else(|e| panic!("{origin}: {e}"));
                    out.push(Entry { origin, ctx: e.ctx, term: e.term, ty: e.ty });
                }
            }
        }
    }
    out
}

struct Row {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn suite_ok(r: &SuiteReport) -> bool {
    r.failures == MAX_FAILURES && r.checks > 0
}

fn suite_detail(r: &SuiteReport) -> String {
    let mut s = format!("{} cases, {} checks, {} failures", r.cases, r.checks, r.failures);
    if let Some(e) = r.examples.first() {
        s.push_str(&format!("; first: {e}"));
    }
    s
}

fn golden(cfg: &SuiteConfig) -> Row {
    let r = run(Suite::Golden, cfg);
    let files = ["top.prk", "exfalso.prk", "lemp.prk", "lemn.prk", "reduction.prk"];
    let bad: Vec<&str> = files.iter().copied().filter(|f| cli::run(["prk", "check", &example(f)]).code != 0).collect();
    let expected = [("top.prk", "top : (∀c. c → c)⊕"), ("exfalso.prk", "exfalso : a⊕"), ("lemp.prk", "lemp : (a ∨ ¬a)⊕")];
    let wrong: Vec<&str> = expected
        .iter()
        .filter(|(f, line)| !cli::run(["prk", "check", &example(f)]).stdout.lines().any(|l| l == *line))
        .map(|(f, _)| *f)
        .collect();
    Row {
        id: 1,
        title: "golden judgments",
        pass: suite_ok(&r) && r.cases == RANDOM_TYPES && bad.is_empty() && wrong.is_empty(),
        detail: format!("{}; corpus files failing: {bad:?}; wrong reported types: {wrong:?}", suite_detail(&r)),
    }
}

fn prj_matrix() -> Row {
    let expected: &[(&str, bool)] = &[
        ("lemp.prk#lemp", false),
        ("witness.prk#lemp", false),
        ("lemn.prk#lemn", true),
        ("top.prk#top", true),
        ("nk.prk#coimp", true),
        ("nk.prk#dne", false),
        ("nk.prk#peirce", false),
        ("nk.prk#lem", false),
        ("nj.prk#identity", true),
        ("nj.prk#swap", true),
        ("nj.prk#orswap", true),
        ("nj.prk#contra", true),
        ("nj.prk#exfalso", true),
        ("nj.prk#allid", true),
        ("nj.prk#exintro", true),
        ("nj.prk#exelim", true),
    ];
    let mut mismatches = Vec::new();
    for (target, accept) in expected {
        let code = cli::run(["prk", "check", "--system", "prj", &example(target)]).code;
        let want = if *accept { 0 } else { 1 };
        if code != want {
            mismatches.push(format!("{target}: exit {code}, expected {want}"));
        }
    }
    let text = std::fs::read_to_string(examples_dir().join("nj.prk")).unwrap();
    let nj = parse_file(&text).unwrap();
    let mut nj_count = 0;
    for d in &nj.decls {
        if let Decl::NdProof { name, deriv, .. } = d {
            nj_count += 1;
            let ok = embed(deriv, Logic::NJ).is_ok_and(|e| check_prj(&e.ctx, &e.term, &e.ty) == Ok(true));
            if !ok {
                mismatches.push(format!("nj.prk#{name}: NJ embedding not accepted"));
            }
        }
    }
    Row {
        id: 2,
        title: "PRJ rejection matrix",
        pass: mismatches.is_empty() && nj_count == 8,
        detail: format!("{} CLI entries, {nj_count} NJ embeddings; mismatches: {mismatches:?}", expected.len()),
    }
}

fn subject_reduction(cfg: &SuiteConfig, corpus: &[Entry]) -> Row {
    let r = run(Suite::SubjectReduction, cfg);
    let mut bad = Vec::new();
    for e in corpus {
        for s in STRATEGIES {
            let tr = normalize(&e.term, s, SN_FUEL, false);
            if tr.steps.iter().any(|st| check(&e.ctx, &st.term, &e.ty).is_err()) {
                bad.push(format!("{} under {s:?}", e.origin));
            }
        }
    }
    Row {
        id: 3,
        title: "subject reduction",
        pass: suite_ok(&r) && r.cases == SR_TERMS && bad.is_empty(),
        detail: format!("{}; corpus violations: {bad:?}", suite_detail(&r)),
    }
}

fn confluence(cfg: &SuiteConfig) -> Row {
    let r = run(Suite::Confluence, cfg);
    let pairs = r.stats.get("pairs").copied().unwrap_or(0);
    Row {
        id: 4,
        title: "local confluence",
        pass: suite_ok(&r) && r.cases == CONFLUENCE_TERMS,
        detail: format!("{}; {pairs} reduct pairs joined within fuel {JOIN_FUEL}", suite_detail(&r)),
    }
}

fn normalization(cfg: &SuiteConfig, corpus: &[Entry]) -> Row {
    let r = run(Suite::Normalization, cfg);
    let exhausted = r.stats.get("fuel-exhausted").copied().unwrap_or(0);
    let mut corpus_exhausted = 0;
    for e in corpus {
        for s in STRATEGIES {
            if normalize(&e.term, s, SN_FUEL, false).status != Status::Normal {
                corpus_exhausted += 1;
            }
        }
    }
    Row {
        id: 5,
        title: "strong normalization",
        pass: suite_ok(&r) && exhausted == 0 && corpus_exhausted == 0,
        detail: format!(
            "{}; FuelExhausted generated={exhausted} corpus={corpus_exhausted} over {} corpus terms x 3 strategies",
            suite_detail(&r),
            corpus.len()
        ),
    }
}

fn erasure(cfg: &SuiteConfig, corpus: &[Entry]) -> Row {
    let r = run(Suite::Erasure, cfg);
    let mut mismatches = 0;
    for e in corpus {
        for s in STRATEGIES {
            let tr = normalize(&e.term, s, SN_FUEL, false);
            let mut prev = erase(&tr.initial);
            for st in &tr.steps {
                let next = erase(&st.term);
                if !ustep(&prev).contains(&next) {
                    mismatches += 1;
                }
                prev = next;
            }
        }
    }
    Row {
        id: 6,
        title: "erasure simulation",
        pass: suite_ok(&r) && mismatches == 0,
        detail: format!("{}; corpus mismatches {mismatches}", suite_detail(&r)),
    }
}

fn canonicity(cfg: &SuiteConfig, corpus: &[Entry]) -> Row {
    let r = run(Suite::Canonicity, cfg);
    let mut bad = Vec::new();
    let mut closed = 0;
    let mut rounds = 0;
    for e in corpus.iter().filter(|e| e.ctx.is_empty() && e.term.free_vars().is_empty()) {
        closed += 1;
        if let Err(err) = canonicalize(&e.term, &e.ty) {
            bad.push(format!("{}: {err}", e.origin));
        }
        if e.ty.is_weak() {
            match witness(&e.term, &e.ty) {
                Ok(w) => {
                    rounds += w.rounds;
                    let ctx = Context::new().with(&w.var, w.var_ty.clone());
                    if check(&ctx, &w.body, &e.ty.to_strong()).is_err() {
                        bad.push(format!("{}: witness body does not re-check", e.origin));
                    }
                }
                Err(err) => bad.push(format!("{}: {err}", e.origin)),
            }
        }
    }
    let a = Ty::var("a");
    let choice = disjunction_choice(&lem_p(&a), &MTy::wpos(Ty::or(a.clone(), Ty::neg(a)))).map(|c| c.index());
    Row {
        id: 7,
        title: "canonicity and witnesses",
        pass: suite_ok(&r) && bad.is_empty() && closed > 0 && rounds > 0 && choice == Ok(2),
        detail: format!(
            "{}; {closed} closed corpus proofs, capsule rounds {rounds}, lemP chooses {choice:?}; failures: {bad:?}",
            suite_detail(&r)
        ),
    }
}

fn prj_equivalence(cfg: &SuiteConfig) -> Row {
    let r = run(Suite::PrjEquivalence, cfg);
    let split = format!(
        "intuitionistic {} / classical {}",
        r.stats.get("intuitionistic").copied().unwrap_or(0),
        r.stats.get("classical").copied().unwrap_or(0)
    );
    Row {
        id: 8,
        title: "PRJ and PRJ* agree",
        pass: suite_ok(&r) && r.cases == PRJ_INSTANCES,
        detail: format!("{}; {split}", suite_detail(&r)),
    }
}

fn bb_matrix() -> Row {
    let expected =
        [(EncConn::And, Sign::Pos, true), (EncConn::Or, Sign::Pos, true), (EncConn::Exists, Sign::Pos, true), (EncConn::And, Sign::Neg, false)];
    let mut cells = Vec::new();
    let mut pass = true;
    for (conn, sign, simulates) in expected {
        let label = format!("({conn},{})", sign.pick("+", "-"));
        let Ok(rep) = simulate(conn, sign) else {
            pass = false;
            cells.push(format!("{label} error"));
            continue;
        };
        let ok = if simulates { rep.simulates() } else { rep.stuck() };
        let sides = if conn == EncConn::Exists { vec![Side::Left] } else { vec![Side::Left, Side::Right] };
        let agree = sides.iter().all(|&side| {
            let ex = experiment(conn, sign, side).expect("experiment");
            let lhs = normalize(&ex.composite, STRATEGIES[0], DEFAULT_FUEL, true);
            let rhs = normalize(&ex.expected, STRATEGIES[0], DEFAULT_FUEL, true);
            (lhs.result() == rhs.result()) == simulates
        });
        pass &= ok && agree && rep.typed;
        cells.push(format!("{label} {}", if rep.simulates() { "Simulates" } else { "Stuck" }));
    }
    let stuck_exit = cli::run(["prk", "encode", "--connective", "and", "--sign", "-"]).code;
    Row {
        id: 9,
        title: "encoding simulation matrix",
        pass: pass && stuck_exit == 0,
        detail: format!("{}; CLI exit for (and,-) {stuck_exit}", cells.join(", ")),
    }
}

fn worked_reduction() -> Row {
    let out = cli::run(["prk", "--json", "normalize", &example("reduction.prk")]);
    let records: Vec<serde_json::Value> =
        out.stdout.lines().map(|l| serde_json::from_str(l).expect("json record")).collect();
    let rules: Vec<String> = records
        .iter()
        .filter(|r| r["payload"]["kind"] == "step")
        .map(|r| r["payload"]["rule"].as_str().unwrap_or_default().to_string())
        .collect();
    let want: Vec<String> = REDUCTION_RULES.iter().map(|r| r.name().to_string()).collect();
    let fields_ok = records.iter().all(|r| {
        r["command"] == "normalize" && r["input_hash"].as_str().is_some_and(|h| h.len() == 64) && r["ok"] == true
    });
    let final_term = records.last().map(|r| r["payload"]["term"].as_str().unwrap_or_default().to_string());
    let target = reduction_result(MTy::pos(Ty::var("c")), Term::var("t"), Term::var("s"));
    let want_final = term_to_string(&target, Style::Unicode);
    Row {
        id: 10,
        title: "worked reduction trace",
        pass: out.code == 0 && rules == want && fields_ok && final_term.as_deref() == Some(want_final.as_str()),
        detail: format!("rules {} ending at {}", rules.join(" "), final_term.unwrap_or_default()),
    }
}

fn main() -> ExitCode {
    let cfg = config();
    let corpus = corpus();
    let rows = vec![
        golden(&cfg),
        prj_matrix(),
        subject_reduction(&cfg, &corpus),
        confluence(&cfg),
        normalization(&cfg, &corpus),
        erasure(&cfg, &corpus),
        canonicity(&cfg, &corpus),
        prj_equivalence(&cfg),
        bb_matrix(),
        worked_reduction(),
    ];
    let mut failed = 0;
    for r in &rows {
        println!("criterion {:>2} {} {}: {}", r.id, if r.pass { "PASS" } else { "FAIL" }, r.title, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} of {} criteria pass", rows.len() - failed, rows.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
