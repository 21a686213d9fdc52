//! Property suites over generated corpora. Each suite draws its inputs from
//! a seeded generator, checks them in parallel and reports failure counts
//! together with a few counterexamples.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::batch;
use crate::canonicity::{canonicalize, disjunction_choice, witness};
use crate::embeddings::{embed, lem_p, Logic};
use crate::generate::{gen_nd, gen_pure_types, rng, GenConfig, TermGen, Typed};
use crate::golden::{lemmas, reduction_example, reduction_result, REDUCTION_RULES};
use crate::intuitionistic::{check_prj, check_prjv, is_intuitionistic};
use crate::reduction::{erase, joinable, normalize, one_step_reducts, ustep, Status, Strategy, DEFAULT_FUEL};
use crate::surface::{parse_mty, parse_term};
use crate::syntax::pretty::{mty_to_string, term_to_string, Style};
use crate::syntax::{Context, MTy, Term, Ty};
use crate::typecheck::check;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random pure types for the golden judgments.
    pub types: usize,
    /// Terms whose traces are checked for subject reduction, normalization
    /// and erasure.
    pub terms: usize,
    pub confluence: usize,
    /// Closed weak proofs handed to witness extraction.
    pub witnesses: usize,
    pub instances: usize,
    pub proofs: usize,
    pub fuel: usize,
    pub join_fuel: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2024,
            types: 50,
            terms: 500,
            confluence: 200,
            witnesses: 100,
            instances: 500,
            proofs: 100,
            fuel: DEFAULT_FUEL,
            join_fuel: 10_000,
        }
    }
}

impl SuiteConfig {
    /// A tenth of the default sizes.
    pub fn quick() -> Self {
        SuiteConfig {
            types: 5,
            terms: 50,
            confluence: 20,
            witnesses: 10,
            instances: 50,
            proofs: 10,
            ..SuiteConfig::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Suite {
    Golden,
    SubjectReduction,
    Confluence,
    Normalization,
    Erasure,
    Canonicity,
    PrjEquivalence,
    Embedding,
    RoundTrip,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Golden,
        Suite::SubjectReduction,
        Suite::Confluence,
        Suite::Normalization,
        Suite::Erasure,
        Suite::Canonicity,
        Suite::PrjEquivalence,
        Suite::Embedding,
        Suite::RoundTrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::SubjectReduction => "subject-reduction",
            Suite::Confluence => "confluence",
            Suite::Normalization => "normalization",
            Suite::Erasure => "erasure",
            Suite::Canonicity => "canonicity",
            Suite::PrjEquivalence => "prj-equivalence",
            Suite::Embedding => "embedding",
            Suite::RoundTrip => "round-trip",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
            format!("unknown suite {s:?} (expected one of {})", names.join(", "))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Generated inputs.
    pub cases: usize,
    /// Individual assertions made over those inputs.
    pub checks: usize,
    pub failures: usize,
    /// The first few failures.
    pub examples: Vec<String>,
    pub stats: BTreeMap<String, usize>,
    pub millis: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

const MAX_EXAMPLES: usize = 5;

/// Outcome of one case: assertions made, failure messages, named counters.
#[derive(Default)]
struct Case {
    checks: usize,
    failures: Vec<String>,
    stats: Vec<(&'static str, usize)>,
}

impl Case {
    fn assert(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn count(&mut self, key: &'static str, n: usize) {
        self.stats.push((key, n));
    }
}

fn collect(suite: Suite, started: Instant, cases: Vec<Case>) -> SuiteReport {
    let mut report = SuiteReport {
        suite,
        cases: cases.len(),
        checks: 0,
        failures: 0,
        examples: Vec::new(),
        stats: BTreeMap::new(),
        millis: 0,
    };
    for c in cases {
        report.checks += c.checks;
        report.failures += c.failures.len();
        for f in c.failures {
            if report.examples.len() < MAX_EXAMPLES {
                report.examples.push(f);
            }
        }
        for (k, n) in c.stats {
            *report.stats.entry(k.to_string()).or_default() += n;
        }
    }
    report.millis = started.elapsed().as_millis();
    report
}

fn show(t: &Term) -> String {
    term_to_string(t, Style::Ascii)
}

fn judgment(j: &Typed) -> String {
    format!("{} : {}", show(&j.term), mty_to_string(&j.ty, Style::Ascii))
}

/// `n` well-typed terms from the generator seeded with `seed`.
pub fn typed_corpus(seed: u64, n: usize) -> Vec<Typed> {
    let mut g = TermGen::new(seed, GenConfig::default());
    (0..n).map(|_| g.typed(true)).collect()
}

pub const STRATEGIES: [Strategy; 3] = [Strategy::LeftmostOutermost, Strategy::RightmostInnermost, Strategy::Random(17)];

pub fn run(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let started = Instant::now();
    let cases = match suite {
        Suite::Golden => golden(cfg),
        Suite::SubjectReduction => subject_reduction(cfg),
        Suite::Confluence => confluence(cfg),
        Suite::Normalization => normalization(cfg),
        Suite::Erasure => erasure(cfg),
        Suite::Canonicity => canonicity(cfg),
        Suite::PrjEquivalence => prj_equivalence(cfg),
        Suite::Embedding => embedding(cfg),
        Suite::RoundTrip => round_trip(cfg),
    };
    collect(suite, started, cases)
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<SuiteReport> {
    Suite::ALL.iter().map(|s| run(*s, cfg)).collect()
}

fn golden(cfg: &SuiteConfig) -> Vec<Case> {
    let tys = gen_pure_types(cfg.seed, 2 * cfg.types, 2);
    let pairs: Vec<(Ty, Ty)> = tys.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    batch::map(&pairs, |(a, b)| {
        let mut c = Case::default();
        for l in lemmas(a, b) {
            let r = check(&l.ctx, &l.term, &l.ty);
            c.assert(r.is_ok(), || format!("{} at A = {}: {}", l.name, a, r.unwrap_err()));
        }
        let (t, s) = (Term::var("t"), Term::var("s"));
        let q = MTy::pos(b.clone());
        let ex = reduction_example(a, q.clone(), t.clone(), s.clone());
        let ctx = Context::from_entries(vec![("t".into(), MTy::wpos(a.clone())), ("s".into(), MTy::wneg(a.clone()))]);
        c.assert(check(&ctx, &ex, &q).is_ok(), || format!("reduction example at A = {a} is ill-typed"));
        let tr = normalize(&ex, Strategy::LeftmostOutermost, cfg.fuel, false);
        c.assert(tr.rules() == REDUCTION_RULES.to_vec(), || format!("reduction example rules {:?}", tr.rules()));
        c.assert(*tr.result() == reduction_result(q, t, s), || "reduction example result differs".into());
        c
    })
}

fn subject_reduction(cfg: &SuiteConfig) -> Vec<Case> {
    let corpus = typed_corpus(cfg.seed, cfg.terms);
    batch::map(&corpus, |j| {
        let mut c = Case::default();
        for s in STRATEGIES {
            let tr = normalize(&j.term, s, cfg.fuel, false);
            c.count("steps", tr.len());
            for (i, st) in tr.steps.iter().enumerate() {
                let r = check(&j.ctx, &st.term, &j.ty);
                c.assert(r.is_ok(), || {
                    format!("{} step {} ({}) loses its type: {}", judgment(j), i + 1, st.redex.rule, r.unwrap_err())
                });
            }
        }
        c
    })
}

fn normalization(cfg: &SuiteConfig) -> Vec<Case> {
    let corpus = typed_corpus(cfg.seed, cfg.terms);
    batch::map(&corpus, |j| {
        let mut c = Case::default();
        for s in STRATEGIES {
            let tr = normalize(&j.term, s, cfg.fuel, false);
            let ok = tr.status == Status::Normal;
            c.count("steps", tr.len());
            c.count("fuel-exhausted", usize::from(!ok));
            c.assert(ok, || format!("{} exhausts fuel under {s:?}", judgment(j)));
        }
        c
    })
}

fn erasure(cfg: &SuiteConfig) -> Vec<Case> {
    let corpus = typed_corpus(cfg.seed, cfg.terms);
    batch::map(&corpus, |j| {
        let mut c = Case::default();
        for s in STRATEGIES {
            let tr = normalize(&j.term, s, cfg.fuel, false);
            let mut prev = erase(&tr.initial);
            for st in &tr.steps {
                let next = erase(&st.term);
                let ok = ustep(&prev).contains(&next);
                c.assert(ok, || format!("{} step {} does not erase to an untyped step", judgment(j), st.redex.rule));
                prev = next;
            }
        }
        c
    })
}

fn confluence(cfg: &SuiteConfig) -> Vec<Case> {
    let corpus = typed_corpus(cfg.seed ^ 0x5eed, cfg.confluence);
    batch::map(&corpus, |j| {
        let mut c = Case::default();
        let reducts = one_step_reducts(&j.term, false);
        c.count("redexes", reducts.len());
        for i in 0..reducts.len() {
            for k in i + 1..reducts.len() {
                let (a, b) = (&reducts[i].1, &reducts[k].1);
                if a == b {
                    continue;
                }
                c.count("pairs", 1);
                c.assert(joinable(a, b, cfg.join_fuel), || {
                    format!("{}: reducts at {:?} and {:?} do not join", judgment(j), reducts[i].0.path, reducts[k].0.path)
                });
            }
        }
        c
    })
}

fn canonicity(cfg: &SuiteConfig) -> Vec<Case> {
    let mut g = TermGen::new(cfg.seed ^ 0xca11, GenConfig::default());
    let mut closed: Vec<Typed> = (0..cfg.witnesses).map(|_| g.closed_weak()).collect();
    let mut r = rng(cfg.seed ^ 0xe3b);
    for i in 0..cfg.proofs {
        let logic = if i % 2 == 0 { Logic::NJ } else { Logic::NK };
        let d = gen_nd(&mut r, logic, 10);
        if let Ok(e) = embed(&d, logic) {
            closed.push(Typed { ctx: e.ctx, term: e.term, ty: e.ty });
        }
    }
    let mut cases = batch::map(&closed, |j| {
        let mut c = Case::default();
        let can = canonicalize(&j.term, &j.ty);
        c.assert(can.is_ok(), || format!("{}: {}", judgment(j), can.as_ref().unwrap_err()));
        let w = witness(&j.term, &j.ty);
        c.assert(w.is_ok(), || format!("{}: {}", judgment(j), w.as_ref().unwrap_err()));
        if let Ok(w) = w {
            c.count("capsule-rounds", w.rounds);
            let strong = j.ty.to_strong();
            let ctx = Context::new().with(&w.var, j.ty.opposite());
            c.assert(check(&ctx, &w.body, &strong).is_ok(), || format!("{}: witness body does not re-check", judgment(j)));
        }
        c
    });
    let mut fixed = Case::default();
    let a = Ty::var("a");
    let lem_ty = MTy::wpos(Ty::or(a.clone(), Ty::neg(a.clone())));
    match disjunction_choice(&lem_p(&a), &lem_ty) {
        Ok(ch) => fixed.assert(ch.index() == 2, || format!("lemP chooses disjunct {}", ch.index())),
        Err(e) => fixed.assert(false, || format!("lemP: {e}")),
    }
    cases.push(fixed);
    cases
}

fn prj_equivalence(cfg: &SuiteConfig) -> Vec<Case> {
    let mut g = TermGen::new(cfg.seed ^ 0x9e1, GenConfig::default());
    let inst: Vec<_> = (0..cfg.instances).map(|_| g.instance()).collect();
    batch::map(&inst, |i| {
        let mut c = Case::default();
        let lhs = is_intuitionistic(&i.term, &i.xs) && check(&i.ctx, &i.term, &i.ty).is_ok();
        let rhs = check_prjv(&i.xs, &i.ctx, &i.term, &i.ty);
        c.count(if lhs { "intuitionistic" } else { "classical" }, 1);
        c.assert(rhs.as_ref().ok() == Some(&lhs), || {
            format!("X = {:?}, {} : {}: direct {lhs}, inductive {rhs:?}", i.xs, show(&i.term), mty_to_string(&i.ty, Style::Ascii))
        });
        c
    })
}

fn embedding(cfg: &SuiteConfig) -> Vec<Case> {
    let mut r = rng(cfg.seed ^ 0xe4b);
    let proofs: Vec<_> = (0..2 * cfg.proofs)
        .map(|i| {
            let logic = if i % 2 == 0 { Logic::NJ } else { Logic::NK };
            (logic, gen_nd(&mut r, logic, 12))
        })
        .collect();
    batch::map(&proofs, |(logic, d)| {
        let mut c = Case::default();
        match embed(d, *logic) {
            Ok(e) => {
                let r = check(&e.ctx, &e.term, &e.ty);
                c.assert(r.is_ok(), || format!("{:?} embedding of {} is ill-typed: {}", logic, e.sequent, r.unwrap_err()));
                if *logic == Logic::NJ {
                    let prj = check_prj(&e.ctx, &e.term, &e.ty);
                    c.assert(prj == Ok(true), || format!("NJ embedding of {} is not intuitionistic", e.sequent));
                    c.count("nj", 1);
                } else {
                    c.count("nk", 1);
                    c.count("uses-lem", usize::from(d.proof.uses_lem()));
                }
            }
            Err(e) => c.assert(false, || format!("embedding failed: {e}")),
        }
        c
    })
}

fn round_trip(cfg: &SuiteConfig) -> Vec<Case> {
    let corpus = typed_corpus(cfg.seed ^ 0x7e7, cfg.terms);
    batch::map(&corpus, |j| {
        let mut c = Case::default();
        let text = show(&j.term);
        let back = parse_term(&text);
        c.assert(back.as_ref() == Ok(&j.term), || format!("{text} reads back as {back:?}"));
        let ty = mty_to_string(&j.ty, Style::Ascii);
        c.assert(parse_mty(&ty).as_ref() == Ok(&j.ty), || format!("{ty} does not read back"));
        c
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suites_pass() {
        let cfg = SuiteConfig::quick();
        for r in run_all(&cfg) {
            assert!(r.passed(), "{}: {:?}", r.suite, r.examples);
            assert!(r.checks > 0, "{} made no checks", r.suite);
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
