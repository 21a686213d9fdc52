//! Seeded random generation of types, well-typed terms, natural-deduction
//! proofs and counterfactual instances for the property suites.
//!
//! Terms are produced goal-first: the generator picks a moded type and
//! builds a term of exactly that type, preferring introduction forms so
//! that eliminations land on constructors and leave redexes behind. Every
//! output is re-checked before it is returned.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embeddings::{validate_nd, Logic, NdDerivation, NdFormula, NdProof, NdRule, BOTTOM};
use crate::intuitionistic::CounterfactualSet;
use crate::syntax::{Context, MTy, Mode, Quant, Side, Sign, Term, Ty};
use crate::typecheck::check;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    /// Upper bound on the number of nodes of a generated term.
    pub max_size: usize,
    /// Depth of the types of contexts and targets.
    pub ty_depth: usize,
    /// Free type variables drawn from.
    pub atoms: Vec<String>,
    /// Attempts before a request is reported as failed.
    pub retries: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { max_size: 60, ty_depth: 2, atoms: vec!["a".into(), "b".into()], retries: 8 }
    }
}

/// A random pure type of the given depth over `atoms`.
pub fn gen_ty(rng: &mut Rng64, depth: usize, atoms: &[String]) -> Ty {
    let mut scope: Vec<String> = atoms.to_vec();
    gen_ty_in(rng, depth, &mut scope, &mut 0)
}

fn gen_ty_in(rng: &mut Rng64, depth: usize, scope: &mut Vec<String>, counter: &mut usize) -> Ty {
    if depth == 0 || rng.gen_bool(0.25) {
        return Ty::var(scope.choose(rng).expect("nonempty atoms").clone());
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 | 1 => Ty::and(gen_ty_in(rng, d, scope, counter), gen_ty_in(rng, d, scope, counter)),
        2 => Ty::or(gen_ty_in(rng, d, scope, counter), gen_ty_in(rng, d, scope, counter)),
        3 | 4 => Ty::imp(gen_ty_in(rng, d, scope, counter), gen_ty_in(rng, d, scope, counter)),
        5 => Ty::coimp(gen_ty_in(rng, d, scope, counter), gen_ty_in(rng, d, scope, counter)),
        6 => Ty::neg(gen_ty_in(rng, d, scope, counter)),
        q => {
            *counter += 1;
            let name = format!("q{counter}");
            scope.push(name.clone());
            let body = gen_ty_in(rng, d, scope, counter);
            scope.pop();
            if q == 7 {
                Ty::forall(&name, body)
            } else {
                Ty::exists(&name, body)
            }
        }
    }
}

/// `n` random pure types of depth at most `depth`.
pub fn gen_pure_types(seed: u64, n: usize, depth: usize) -> Vec<Ty> {
    let mut r = rng(seed);
    let atoms = GenConfig::default().atoms;
    (0..n).map(|_| gen_ty(&mut r, depth, &atoms)).collect()
}

fn random_mode(rng: &mut Rng64) -> Mode {
    *[Mode::STRONG_POS, Mode::STRONG_NEG, Mode::WEAK_POS, Mode::WEAK_NEG].choose(rng).expect("four modes")
}

fn random_sign(rng: &mut Rng64) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A generated judgment `Γ ⊢ t : P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Typed {
    pub ctx: Context,
    pub term: Term,
    pub ty: MTy,
}

/// A generated instance of the counterfactual system `X ; Γ ⊢ t : P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub xs: CounterfactualSet,
    pub ctx: Context,
    pub term: Term,
    pub ty: MTy,
}

pub struct TermGen {
    rng: Rng64,
    cfg: GenConfig,
    counter: usize,
    /// Work left in the current attempt; backtracking stops at zero.
    work: usize,
}

impl TermGen {
    pub fn new(seed: u64, cfg: GenConfig) -> TermGen {
        TermGen { rng: rng(seed), cfg, counter: 0, work: 0 }
    }

    pub fn rng(&mut self) -> &mut Rng64 {
        &mut self.rng
    }

    fn fresh(&mut self, base: &str) -> String {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    pub fn ty(&mut self, depth: usize) -> Ty {
        let atoms = self.cfg.atoms.clone();
        gen_ty(&mut self.rng, depth, &atoms)
    }

    /// A small random context, weak unless `strong_ok`. Half of the time it
    /// carries both weak modes of one atom, which makes every type inhabited.
    pub fn context(&mut self, strong_ok: bool) -> Context {
        let mut ctx = Context::new();
        let n = self.rng.gen_range(0..=3);
        for _ in 0..n {
            let ty = self.ty(self.cfg.ty_depth);
            let mode = if strong_ok { random_mode(&mut self.rng) } else { Mode::weak(random_sign(&mut self.rng)) };
            let x = self.fresh("h");
            ctx.push(x, MTy::new(ty, mode));
        }
        if self.rng.gen_bool(0.5) {
            let a = Ty::var(self.cfg.atoms.choose(&mut self.rng).expect("atoms").clone());
            let (p, n) = (self.fresh("p"), self.fresh("n"));
            ctx.push(p, MTy::wpos(a.clone()));
            ctx.push(n, MTy::wneg(a));
        }
        ctx
    }

    /// A term of type `p` under `ctx` with at most `max_size` nodes.
    pub fn term_of(&mut self, ctx: &Context, p: &MTy) -> Option<Term> {
        for _ in 0..self.cfg.retries {
            self.work = 800;
            let mut env: Vec<(String, MTy)> = ctx.entries().to_vec();
            let budget = self.rng.gen_range(self.cfg.max_size / 4..=self.cfg.max_size);
            if let Some(t) = self.go(&mut env, p, budget) {
                if t.size() <= self.cfg.max_size && check(ctx, &t, p).is_ok() {
                    return Some(t);
                }
            }
        }
        None
    }

    /// A judgment with a random context and a random target.
    pub fn typed(&mut self, strong_ctx: bool) -> Typed {
        loop {
            let ctx = self.context(strong_ctx);
            let ty = MTy::new(self.ty(self.cfg.ty_depth), random_mode(&mut self.rng));
            if let Some(term) = self.term_of(&ctx, &ty) {
                return Typed { ctx, term, ty };
            }
        }
    }

    /// A closed proof of a random weak type.
    pub fn closed_weak(&mut self) -> Typed {
        loop {
            let ty = MTy::weak(self.ty(self.cfg.ty_depth), random_sign(&mut self.rng));
            if let Some(term) = self.term_of(&Context::new(), &ty) {
                return Typed { ctx: Context::new(), term, ty };
            }
        }
    }

    /// A judgment with a random counterfactual subset of its context.
    pub fn instance(&mut self) -> Instance {
        let Typed { ctx, term, ty } = self.typed(false);
        let xs = ctx.entries().iter().filter(|_| self.rng.gen_bool(0.4)).map(|(x, _)| x.clone()).collect();
        Instance { xs, ctx, term, ty }
    }

    fn split(&mut self, budget: usize, k: usize) -> Vec<usize> {
        let rest = budget.saturating_sub(1);
        (0..k)
            .map(|_| {
                let share = rest / k;
                if share == 0 {
                    0
                } else {
                    self.rng.gen_range(share / 2..=share)
                }
            })
            .collect()
    }

    fn go(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        if self.work == 0 {
            return None;
        }
        self.work -= 1;
        let vars: Vec<String> = env.iter().filter(|(_, q)| q == p).map(|(x, _)| x.clone()).collect();
        if budget <= 1 {
            return vars.choose(&mut self.rng).map(Term::var);
        }
        #[derive(Clone, Copy)]
        enum Move {
            Var,
            Intro,
            Cut,
            ElimWeak,
            ElimAny,
            Abort,
        }
        let mut moves: Vec<(Move, u32)> = vec![(Move::Intro, 6), (Move::ElimAny, 1), (Move::Abort, 1)];
        if !vars.is_empty() {
            moves.push((Move::Var, if budget < 6 { 8 } else { 2 }));
        }
        if p.is_weak() {
            moves.push((Move::ElimWeak, 2));
        } else {
            moves.push((Move::Cut, 2));
        }
        while !moves.is_empty() {
            let i = {
                let total: u32 = moves.iter().map(|m| m.1).sum();
                let mut pick = self.rng.gen_range(0..total);
                moves.iter().position(|m| {
                    if pick < m.1 {
                        true
                    } else {
                        pick -= m.1;
                        false
                    }
                })?
            };
            let (mv, _) = moves.swap_remove(i);
            let r = match mv {
                Move::Var => vars.choose(&mut self.rng).map(Term::var),
                Move::Intro => self.intro(env, p, budget),
                Move::Cut => self.cut(env, p, budget),
                Move::ElimWeak => self.elim_weak(env, p, budget),
                Move::ElimAny => self.elim_any(env, p, budget),
                Move::Abort => self.abort(env, p, budget),
            };
            if r.is_some() {
                return r;
            }
            if self.work == 0 {
                return None;
            }
        }
        None
    }

    fn under(&mut self, env: &mut Vec<(String, MTy)>, binds: &[(String, MTy)], p: &MTy, budget: usize) -> Option<Term> {
        let n = env.len();
        env.extend(binds.iter().cloned());
        let r = self.go(env, p, budget);
        env.truncate(n);
        r
    }

    fn intro(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        let g = p.sign();
        if p.is_weak() {
            let x = self.fresh("x");
            let xty = MTy::weak(p.ty.clone(), g.flip());
            let body = self.under(env, &[(x.clone(), xty.clone())], &MTy::strong(p.ty.clone(), g), budget - 1)?;
            return Some(Term::wlam(g, &x, xty, body));
        }
        let w = |t: &Ty, s: Sign| MTy::weak(t.clone(), s);
        match (&p.ty, g) {
            (Ty::And(a, b), Sign::Pos) | (Ty::Or(a, b), Sign::Neg) => {
                let bs = self.split(budget, 2);
                let l = self.go(env, &w(a, g), bs[0])?;
                let r = self.go(env, &w(b, g), bs[1])?;
                Some(Term::pair(g, l, r))
            }
            (Ty::Or(a, b), Sign::Pos) | (Ty::And(a, b), Sign::Neg) => {
                let side = if self.rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let s = self.go(env, &w(side.pick(a, b), g), budget - 1)?;
                Some(Term::inj(g, side, s))
            }
            (Ty::Imp(a, b), Sign::Pos) | (Ty::Coimp(a, b), Sign::Neg) => {
                let x = self.fresh("x");
                let body = self.under(env, &[(x.clone(), w(a, g))], &w(b, g), budget - 1)?;
                Some(Term::lam(g, &x, w(a, g), body))
            }
            (Ty::Coimp(a, b), Sign::Pos) | (Ty::Imp(a, b), Sign::Neg) => {
                let bs = self.split(budget, 2);
                let l = self.go(env, &w(a, g.flip()), bs[0])?;
                let r = self.go(env, &w(b, g), bs[1])?;
                Some(Term::copair(g, l, r))
            }
            (Ty::Neg(a), _) => {
                let s = self.go(env, &w(a, g.flip()), budget - 1)?;
                Some(Term::negi(g, s))
            }
            (Ty::Forall(_, body), Sign::Pos) | (Ty::Exists(_, body), Sign::Neg) => {
                let alpha = self.fresh("g");
                let inner = self.go(env, &w(&body.open(&Ty::var(&alpha)), g), budget - 1)?;
                Some(Term::tlam(g, &alpha, inner))
            }
            (Ty::Exists(_, body), Sign::Pos) | (Ty::Forall(_, body), Sign::Neg) => {
                let witness = self.ty(1);
                let s = self.go(env, &w(&body.open(&witness), g), budget - 1)?;
                Some(Term::pack(g, witness, s))
            }
            _ => None,
        }
    }

    fn cut(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        let g = p.sign();
        let bs = self.split(budget, 2);
        let l = self.go(env, &MTy::weak(p.ty.clone(), g), bs[0])?;
        let r = self.go(env, &MTy::weak(p.ty.clone(), g.flip()), bs[1])?;
        Some(Term::wapp(g, l, r))
    }

    fn elim_weak(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        let h = p.sign();
        let c = p.ty.clone();
        match self.rng.gen_range(0..4) {
            0 => {
                let other = self.ty(1);
                let side = if self.rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let (a, b) = side.pick((c.clone(), other.clone()), (other, c));
                let pair = match h {
                    Sign::Pos => Ty::and(a, b),
                    Sign::Neg => Ty::or(a, b),
                };
                let s = self.go(env, &MTy::strong(pair, h), budget - 1)?;
                Some(Term::proj(h, side, s))
            }
            1 => {
                let dom = self.ty(1);
                let fty = h.pick(Ty::imp(dom.clone(), c.clone()), Ty::coimp(dom.clone(), c.clone()));
                let bs = self.split(budget, 2);
                let f = self.go(env, &MTy::strong(fty, h), bs[0])?;
                let a = self.go(env, &MTy::weak(dom, h), bs[1])?;
                Some(Term::app(h, f, a))
            }
            2 => {
                let g = h.flip();
                let s = self.go(env, &MTy::strong(Ty::neg(c), g), budget - 1)?;
                Some(Term::nege(g, s))
            }
            _ => {
                let q = h.pick(Quant::Forall, Quant::Exists);
                let ftv: Vec<String> = c.ftv().into_iter().collect();
                let v = match ftv.choose(&mut self.rng) {
                    Some(v) => v.clone(),
                    None => self.fresh("v"),
                };
                let s = self.go(env, &MTy::strong(Ty::quant(q, &v, c), h), budget - 1)?;
                Some(Term::tapp(h, s, Ty::var(v)))
            }
        }
    }

    fn elim_any(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        let g = random_sign(&mut self.rng);
        let bs = self.split(budget, 2);
        match self.rng.gen_range(0..3) {
            0 => {
                let (a, b) = (self.ty(1), self.ty(1));
                let scrut = g.pick(Ty::or(a.clone(), b.clone()), Ty::and(a.clone(), b.clone()));
                let s = self.go(env, &MTy::strong(scrut, g), bs[0])?;
                let (x, y) = (self.fresh("x"), self.fresh("y"));
                let (xa, yb) = (MTy::weak(a, g), MTy::weak(b, g));
                let half = bs[1] / 2 + 1;
                let l = self.under(env, &[(x.clone(), xa.clone())], p, half)?;
                let r = self.under(env, &[(y.clone(), yb.clone())], p, half)?;
                Some(Term::case(g, s, &x, xa, l, &y, yb, r))
            }
            1 => {
                let (a, b) = (self.ty(1), self.ty(1));
                let scrut = g.pick(Ty::coimp(a.clone(), b.clone()), Ty::imp(a.clone(), b.clone()));
                let s = self.go(env, &MTy::strong(scrut, g), bs[0])?;
                let (x, y) = (self.fresh("x"), self.fresh("y"));
                let (xa, yb) = (MTy::weak(a, g.flip()), MTy::weak(b, g));
                let body = self.under(env, &[(x.clone(), xa.clone()), (y.clone(), yb.clone())], p, bs[1])?;
                Some(Term::colam(g, s, &x, xa, &y, yb, body))
            }
            _ => {
                let alpha = self.fresh("e");
                let mut scope = self.cfg.atoms.clone();
                scope.push(alpha.clone());
                let mut counter = self.counter;
                let inner = gen_ty_in(&mut self.rng, 1, &mut scope, &mut counter);
                self.counter = counter;
                let q = g.pick(Quant::Exists, Quant::Forall);
                let s = self.go(env, &MTy::strong(Ty::quant(q, &alpha, inner.clone()), g), bs[0])?;
                let x = self.fresh("x");
                let xty = MTy::weak(inner, g);
                let body = self.under(env, &[(x.clone(), xty.clone())], p, bs[1])?;
                Some(Term::unpack(g, s, &alpha, &x, xty, body))
            }
        }
    }

    fn abort(&mut self, env: &mut Vec<(String, MTy)>, p: &MTy, budget: usize) -> Option<Term> {
        let a = self.ty(1);
        let bs = self.split(budget, 2);
        let l = self.go(env, &MTy::pos(a.clone()), bs[0])?;
        let r = self.go(env, &MTy::neg(a), bs[1])?;
        Some(Term::abort(p.clone(), l, r))
    }
}

/// A closed natural-deduction derivation built forward from random
/// hypotheses, which are discharged at the end.
pub fn gen_nd(rng: &mut Rng64, logic: Logic, steps: usize) -> NdDerivation {
    loop {
        if let Some(d) = try_gen_nd(rng, logic, steps) {
            return d;
        }
    }
}

fn nd_formula(rng: &mut Rng64, depth: usize) -> NdFormula {
    let atoms: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
    let t = gen_ty(rng, depth, &atoms);
    if rng.gen_bool(0.15) {
        Ty::imp(t, Ty::var(BOTTOM))
    } else {
        t
    }
}

fn try_gen_nd(rng: &mut Rng64, logic: Logic, steps: usize) -> Option<NdDerivation> {
    let hyps: Vec<NdFormula> = (0..rng.gen_range(1..=3)).map(|_| nd_formula(rng, 2)).collect();
    let n = hyps.len();
    let mut pool: Vec<(NdProof, NdFormula)> =
        hyps.iter().enumerate().map(|(i, h)| (NdProof::leaf(NdRule::Ax(i + 1)), h.clone())).collect();
    let hyp_ftv: BTreeSet<String> = hyps.iter().flat_map(|h| h.ftv()).collect();
    let mut eigen = 0;
    let node = |r: NdRule, ps: Vec<NdProof>| NdProof::new(r, ps);
    for _ in 0..steps {
        let k = rng.gen_range(0..pool.len());
        let (p, a) = pool[k].clone();
        let made: Option<(NdProof, NdFormula)> = match rng.gen_range(0..14) {
            0 => {
                let (q, b) = pool.choose(rng).cloned()?;
                Some((node(NdRule::AndI, vec![p, q]), Ty::and(a, b)))
            }
            1 => match &a {
                Ty::And(l, r) => {
                    let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                    Some((node(NdRule::AndE(side), vec![p]), side.pick((**l).clone(), (**r).clone())))
                }
                _ => None,
            },
            2 => {
                let other = nd_formula(rng, 1);
                let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let c = side.pick(Ty::or(a.clone(), other.clone()), Ty::or(other.clone(), a));
                Some((node(NdRule::OrI(side, other), vec![p]), c))
            }
            3 => {
                let arg = pool.iter().find(|(_, b)| matches!(&a, Ty::Imp(d, _) if **d == *b)).cloned();
                match (&a, arg) {
                    (Ty::Imp(_, cod), Some((q, _))) => Some((node(NdRule::ImpE, vec![p, q]), (**cod).clone())),
                    _ => None,
                }
            }
            4 => {
                let hyp = nd_formula(rng, 1);
                Some((node(NdRule::ImpI(hyp.clone()), vec![p]), Ty::imp(hyp, a)))
            }
            5 => match &a {
                Ty::Or(l, r) => {
                    let (l, r) = ((**l).clone(), (**r).clone());
                    let m = n + 1;
                    let b1 = node(NdRule::OrI(Side::Right, r.clone()), vec![NdProof::leaf(NdRule::Ax(m))]);
                    let b2 = node(NdRule::OrI(Side::Left, l.clone()), vec![NdProof::leaf(NdRule::Ax(m))]);
                    Some((node(NdRule::OrE, vec![p, b1, b2]), Ty::or(r, l)))
                }
                _ => None,
            },
            6 => match &a {
                Ty::Neg(inner) => {
                    let arg = pool.iter().find(|(_, b)| **inner == *b).cloned()?;
                    Some((node(NdRule::NotE, vec![p, arg.0]), Ty::var(BOTTOM)))
                }
                _ => {
                    let neg = pool.iter().find(|(_, b)| *b == Ty::neg(a.clone())).cloned()?;
                    Some((node(NdRule::NotE, vec![neg.0, p]), Ty::var(BOTTOM)))
                }
            },
            7 if a == Ty::var(BOTTOM) => {
                if rng.gen_bool(0.5) {
                    let c = nd_formula(rng, 1);
                    Some((node(NdRule::BotE(c.clone()), vec![p]), c))
                } else {
                    let c = nd_formula(rng, 1);
                    Some((node(NdRule::NotI(c.clone()), vec![p]), Ty::neg(c)))
                }
            }
            8 => {
                let na = pool.iter().find(|(_, b)| matches!(b, Ty::Neg(_))).cloned()?;
                let Ty::Neg(inner) = &na.1 else { return None };
                Some((node(NdRule::CoimpI, vec![na.0.clone(), p]), Ty::coimp((**inner).clone(), a)))
            }
            9 => match &a {
                Ty::Coimp(l, r) => {
                    let (l, r) = ((**l).clone(), (**r).clone());
                    let body = node(
                        NdRule::CoimpI,
                        vec![NdProof::leaf(NdRule::Ax(n + 1)), NdProof::leaf(NdRule::Ax(n + 2))],
                    );
                    Some((node(NdRule::CoimpE, vec![p, body]), Ty::coimp(l, r)))
                }
                _ => None,
            },
            10 => {
                let candidates: Vec<String> = a.ftv().into_iter().filter(|v| !hyp_ftv.contains(v) && v != BOTTOM).collect();
                let v = candidates.choose(rng)?.clone();
                Some((node(NdRule::AllI(v.clone()), vec![p]), Ty::forall(&v, a)))
            }
            11 => match &a {
                Ty::Forall(_, body) => {
                    let arg = nd_formula(rng, 1);
                    Some((node(NdRule::AllE(arg.clone()), vec![p]), body.open(&arg)))
                }
                _ => {
                    let v = a.ftv().into_iter().filter(|v| v != BOTTOM).collect::<Vec<_>>().choose(rng)?.clone();
                    let ex = Ty::exists(&v, a.clone());
                    Some((node(NdRule::ExI(Ty::var(&v), ex.clone()), vec![p]), ex))
                }
            },
            12 => match &a {
                Ty::Exists(..) => {
                    eigen += 1;
                    let v = format!("e{eigen}");
                    let inside = node(
                        NdRule::ExI(Ty::var(&v), a.clone()),
                        vec![NdProof::leaf(NdRule::Ax(n + 1))],
                    );
                    Some((node(NdRule::ExE(v), vec![p, inside]), a.clone()))
                }
                _ => None,
            },
            _ if logic == Logic::NK => {
                let f = nd_formula(rng, 1);
                Some((NdProof::leaf(NdRule::Lem(f.clone())), Ty::or(f.clone(), Ty::neg(f))))
            }
            _ => None,
        };
        if let Some(m) = made {
            if m.0.size() <= 40 {
                pool.push(m);
            }
        }
    }
    let (mut proof, _) = pool.choose(rng).cloned()?;
    for h in hyps.iter().rev() {
        proof = NdProof::new(NdRule::ImpI(h.clone()), vec![proof]);
    }
    let d = NdDerivation { name: "gen".into(), hyps: Vec::new(), proof };
    validate_nd(&d, logic).ok().map(|_| d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_check() {
        let mut g = TermGen::new(7, GenConfig::default());
        for _ in 0..40 {
            let t = g.typed(true);
            assert!(check(&t.ctx, &t.term, &t.ty).is_ok());
            assert!(t.term.size() <= 60);
        }
    }

    #[test]
    fn closed_weak_terms_are_closed() {
        let mut g = TermGen::new(11, GenConfig::default());
        for _ in 0..10 {
            let t = g.closed_weak();
            assert!(t.term.free_vars().is_empty());
            assert!(t.ty.is_weak());
        }
    }

    #[test]
    fn generated_proofs_validate() {
        let mut r = rng(3);
        for logic in [Logic::NJ, Logic::NK] {
            for _ in 0..30 {
                let d = gen_nd(&mut r, logic, 12);
                assert!(validate_nd(&d, logic).is_ok());
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let a = TermGen::new(5, GenConfig::default()).typed(false);
        let b = TermGen::new(5, GenConfig::default()).typed(false);
        assert_eq!(a, b);
    }
}
