//! Semantics of terms, formulas and sequents in concrete models.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::carrier::{probe, Budget, Carrier};
use crate::lgroup::LGroup;
use crate::mv::MvStructure;
use crate::report::{Binding, Report, Stop, Tally};

use super::ast::{Bound, Formula, Op, Scalar, Sequent, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("symbol {symbol} is not in the signature {signature} of the model")]
    SignatureMismatch { symbol: String, signature: Signature },
}

/// Three-valued truth: existentials over infinite carriers and `auto`
/// bounds without a witness may be undecided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Unknown => "unknown",
        })
    }
}

/// A structure for one of the two signatures.
pub trait Model {
    type Elem: Clone + fmt::Debug + PartialEq;

    fn signature(&self) -> Signature;
    fn describe(&self) -> String;
    fn render(&self, x: &Self::Elem) -> String;
    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn zero(&self) -> Self::Elem;

    /// `None` when the symbol is not in the signature.
    fn unit(&self) -> Option<Self::Elem>;
    fn apply(&self, op: Op, args: &[Self::Elem]) -> Option<Self::Elem>;
    fn times(&self, n: u64, x: &Self::Elem) -> Option<Self::Elem>;
    fn unit_bound(&self, x: &Self::Elem) -> Option<u64>;

    /// Elements that variables range over, and whether that is all of them.
    fn universe(&self, budget: &Budget) -> (Vec<Self::Elem>, bool);
}

/// An MV-algebra as a Σ_MV-structure (`≤` is the derived order).
pub struct MvModel<'a, A>(pub &'a A);

/// An ℓ-group with unit as a Σ_Lu-structure.
pub struct LuModel<'a, G>(pub &'a G);

fn universe_of<C: Carrier>(c: &C, budget: &Budget) -> (Vec<C::Elem>, bool) {
    let p = probe(c, budget, &mut budget.rng());
    (p.elems, p.exhaustive)
}

impl<A: MvStructure> Model for MvModel<'_, A> {
    type Elem = A::Elem;

    fn signature(&self) -> Signature {
        Signature::Mv
    }
    fn describe(&self) -> String {
        self.0.describe()
    }
    fn render(&self, x: &A::Elem) -> String {
        self.0.render(x)
    }
    fn same(&self, x: &A::Elem, y: &A::Elem) -> bool {
        self.0.same(x, y)
    }
    fn leq(&self, x: &A::Elem, y: &A::Elem) -> bool {
        self.0.leq(x, y)
    }
    fn zero(&self) -> A::Elem {
        self.0.zero()
    }
    fn unit(&self) -> Option<A::Elem> {
        None
    }
    fn apply(&self, op: Op, args: &[A::Elem]) -> Option<A::Elem> {
        let a = self.0;
        Some(match (op, args) {
            (Op::Neg, [x]) => a.neg(x),
            (Op::Oplus, [x, y]) => a.oplus(x, y),
            (Op::Odot, [x, y]) => a.odot(x, y),
            _ => return None,
        })
    }
    fn times(&self, _: u64, _: &A::Elem) -> Option<A::Elem> {
        None
    }
    fn unit_bound(&self, _: &A::Elem) -> Option<u64> {
        None
    }
    fn universe(&self, budget: &Budget) -> (Vec<A::Elem>, bool) {
        universe_of(self.0, budget)
    }
}

impl<G: LGroup> Model for LuModel<'_, G> {
    type Elem = G::Elem;

    fn signature(&self) -> Signature {
        Signature::Lu
    }
    fn describe(&self) -> String {
        self.0.describe()
    }
    fn render(&self, x: &G::Elem) -> String {
        self.0.render(x)
    }
    fn same(&self, x: &G::Elem, y: &G::Elem) -> bool {
        self.0.same(x, y)
    }
    fn leq(&self, x: &G::Elem, y: &G::Elem) -> bool {
        self.0.leq(x, y)
    }
    fn zero(&self) -> G::Elem {
        self.0.zero()
    }
    fn unit(&self) -> Option<G::Elem> {
        Some(self.0.unit())
    }
    fn apply(&self, op: Op, args: &[G::Elem]) -> Option<G::Elem> {
        let g = self.0;
        Some(match (op, args) {
            (Op::Add, [x, y]) => g.add(x, y),
            (Op::Minus, [x]) => g.neg(x),
            (Op::Inf, [x, y]) => g.inf(x, y),
            (Op::Sup, [x, y]) => g.sup(x, y),
            _ => return None,
        })
    }
    fn times(&self, n: u64, x: &G::Elem) -> Option<G::Elem> {
        Some(self.0.times(n, x))
    }
    fn unit_bound(&self, x: &G::Elem) -> Option<u64> {
        self.0.unit_bound(x)
    }
    fn universe(&self, budget: &Budget) -> (Vec<G::Elem>, bool) {
        universe_of(self.0, budget)
    }
}

/// Variable and index bindings; later bindings shadow earlier ones.
#[derive(Debug, Clone)]
pub struct Env<E> {
    vars: Vec<(String, E)>,
    indices: Vec<(String, u64)>,
}

impl<E: Clone> Env<E> {
    pub fn new() -> Self {
        Env { vars: Vec::new(), indices: Vec::new() }
    }

    pub fn from_pairs(names: &[String], values: &[E]) -> Self {
        Env { vars: names.iter().cloned().zip(values.iter().cloned()).collect(), indices: Vec::new() }
    }

    pub fn with(mut self, name: &str, value: E) -> Self {
        self.vars.push((name.to_string(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<&E> {
        self.vars.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    fn index(&self, name: &str) -> Option<u64> {
        self.indices.iter().rev().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

impl<E: Clone> Default for Env<E> {
    fn default() -> Self {
        Self::new()
    }
}

fn mismatch<M: Model>(m: &M, symbol: &str) -> EvalError {
    EvalError::SignatureMismatch { symbol: symbol.to_string(), signature: m.signature() }
}

pub fn eval_term<M: Model>(m: &M, env: &Env<M::Elem>, t: &Term) -> Result<M::Elem, EvalError> {
    match t {
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Term::Zero => Ok(m.zero()),
        Term::Unit => m.unit().ok_or_else(|| mismatch(m, "u")),
        Term::App(op, args) => {
            let vals = args.iter().map(|a| eval_term(m, env, a)).collect::<Result<Vec<_>, _>>()?;
            m.apply(*op, &vals).ok_or_else(|| mismatch(m, op.name()))
        }
        Term::Times(k, t) => {
            let n = match k {
                Scalar::Lit(n) => *n,
                Scalar::Index(i) => env.index(i).ok_or_else(|| EvalError::UnboundVariable(i.clone()))?,
            };
            let x = eval_term(m, env, t)?;
            m.times(n, &x).ok_or_else(|| mismatch(m, "times"))
        }
    }
}

/// Candidate witnesses for `exists`: the whole carrier when it is finite,
/// otherwise its landmarks and `search_bound` seeded samples.
pub struct Search<E> {
    elems: Vec<E>,
    exhaustive: bool,
}

impl<E> Search<E> {
    pub fn over<M: Model<Elem = E>>(m: &M, search_bound: usize) -> Self {
        let (elems, exhaustive) = m.universe(&Budget::new(search_bound, 0, 3));
        Search { elems, exhaustive }
    }
}

/// Truth of `f` under `env`.
pub fn holds<M: Model>(m: &M, env: &Env<M::Elem>, f: &Formula, search: &Search<M::Elem>) -> Result<Truth, EvalError> {
    Ok(match f {
        Formula::Top => Truth::True,
        Formula::Bottom => Truth::False,
        Formula::Eq(a, b) => truth(m.same(&eval_term(m, env, a)?, &eval_term(m, env, b)?)),
        Formula::Leq(a, b) => truth(m.leq(&eval_term(m, env, a)?, &eval_term(m, env, b)?)),
        Formula::And(a, b) => {
            let left = holds(m, env, a, search)?;
            if left == Truth::False {
                return Ok(Truth::False);
            }
            left.and(holds(m, env, b, search)?)
        }
        Formula::Or(a, b) => {
            let left = holds(m, env, a, search)?;
            if left == Truth::True {
                return Ok(Truth::True);
            }
            left.or(holds(m, env, b, search)?)
        }
        Formula::Exists(x, body) => {
            let mut acc = Truth::False;
            for c in &search.elems {
                acc = acc.or(holds(m, &env.clone().with(x, c.clone()), body, search)?);
                if acc == Truth::True {
                    return Ok(Truth::True);
                }
            }
            if search.exhaustive {
                acc
            } else {
                Truth::Unknown
            }
        }
        Formula::BigVee { index, bound, body } => {
            let n = match bound {
                Bound::Lit(n) => *n,
                Bound::Auto => match auto_bound(m, env) {
                    Some(n) => n,
                    None => return Ok(Truth::Unknown),
                },
            };
            let mut acc = Truth::False;
            for k in 0..=n {
                let mut e = env.clone();
                e.indices.push((index.clone(), k));
                acc = acc.or(holds(m, &e, body, search)?);
                if acc == Truth::True {
                    break;
                }
            }
            acc
        }
    })
}

fn truth(b: bool) -> Truth {
    if b {
        Truth::True
    } else {
        Truth::False
    }
}

/// The largest unit bound of the values bound in `env`.
fn auto_bound<M: Model>(m: &M, env: &Env<M::Elem>) -> Option<u64> {
    env.vars.iter().try_fold(0, |acc, (_, v)| m.unit_bound(v).map(|n| acc.max(n)))
}

const EXHAUSTIVE_ENVS: usize = 1_000_000;

/// Assignments to `k` variables drawn from `elems`: all of them when few
/// enough and `complete`, otherwise `samples` random ones.
pub fn assignments<E: Clone>(elems: &[E], k: usize, complete: bool, samples: usize, seed: u64) -> (Vec<Vec<E>>, bool) {
    let total = (elems.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if k == 0 {
        return (vec![Vec::new()], true);
    }
    if elems.is_empty() {
        return (Vec::new(), complete);
    }
    if complete && total <= EXHAUSTIVE_ENVS as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; k];
        loop {
            out.push(idx.iter().map(|&i| elems[i].clone()).collect());
            let mut pos = 0;
            loop {
                if pos == k {
                    return (out, true);
                }
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    let mut rng = Budget::new(samples, seed, 0).rng();
    let out = (0..samples).map(|_| (0..k).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect()).collect();
    (out, false)
}

pub(crate) const VALIDITY_NOTE: &str = "validity in this model, not provability in the theory";

/// Outcome of a sequent at one assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The premise fails.
    Vacuous,
    Holds,
    Violated,
    Undecided,
}

pub fn verdict<M: Model>(m: &M, env: &Env<M::Elem>, s: &Sequent, search: &Search<M::Elem>) -> Result<Verdict, EvalError> {
    Ok(match holds(m, env, &s.premise, search)? {
        Truth::False => Verdict::Vacuous,
        Truth::Unknown => Verdict::Undecided,
        Truth::True => match holds(m, env, &s.conclusion, search)? {
            Truth::True => Verdict::Holds,
            Truth::False => Verdict::Violated,
            Truth::Unknown => Verdict::Undecided,
        },
    })
}

fn env_witness<M: Model>(m: &M, names: &[String], values: &[M::Elem]) -> Vec<Binding> {
    names.iter().zip(values).map(|(n, v)| Binding::new(n.clone(), m.render(v))).collect()
}

/// Checks `s` at every given assignment of its context.
pub fn check_sequent_at<M: Model>(
    m: &M,
    s: &Sequent,
    envs: &[Vec<M::Elem>],
    exhaustive: bool,
    budget: &Budget,
) -> Result<Report, EvalError> {
    let mut t = Tally::new("sequent", format!("{s}  in {}", m.describe()), budget.seed);
    t.set_exhaustive(exhaustive);
    t.note(VALIDITY_NOTE);
    let search = Search::over(m, budget.samples);
    let mut error = None;
    let _ = (|| -> Result<(), Stop> {
        for values in envs {
            let env = Env::from_pairs(&s.context, values);
            match verdict(m, &env, s, &search) {
                Ok(Verdict::Vacuous) | Ok(Verdict::Holds) => t.ensure(true, "", Vec::new)?,
                Ok(Verdict::Violated) => {
                    t.ensure(false, "premise ⊢ conclusion", || env_witness(m, &s.context, values))?
                }
                Ok(Verdict::Undecided) => t.unknown(),
                Err(e) => {
                    error = Some(e);
                    return Err(Stop);
                }
            }
        }
        Ok(())
    })();
    match error {
        Some(e) => Err(e),
        None => Ok(t.finish()),
    }
}

/// Checks `s` over all assignments (finite models) or `budget.samples`
/// random ones drawn from landmarks and samples.
pub fn check_sequent<M: Model>(m: &M, s: &Sequent, budget: &Budget) -> Result<Report, EvalError> {
    let (elems, complete) = m.universe(budget);
    let (envs, exhaustive) = assignments(&elems, s.context.len(), complete, budget.samples, budget.seed);
    check_sequent_at(m, s, &envs, exhaustive, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgroup::{LGroupElement, LGroupU};
    use crate::logic::parse::{parse_formula, parse_sequent, parse_term};
    use crate::mv::{MvAlgebra, MvElement};

    #[test]
    fn eval_examples() {
        let l2 = MvAlgebra::chain(2);
        let m = MvModel(&l2);
        let env = Env::new().with("x", MvElement::ratio(1, 2));
        assert_eq!(eval_term(&m, &env, &parse_term("neg(x)").unwrap()).unwrap(), MvElement::ratio(1, 2));
        assert_eq!(eval_term(&m, &env, &Term::Zero).unwrap(), MvElement::ratio(0, 1));
        assert_eq!(eval_term(&m, &env, &parse_term("odot(x, neg(0))").unwrap()).unwrap(), MvElement::ratio(1, 2));
        let z3 = LGroupU::scaled_int(3).unwrap();
        let g = LuModel(&z3);
        let env = Env::new().with("x", LGroupElement::Int(2));
        assert_eq!(eval_term(&g, &env, &parse_term("inf(u, add(x,x))").unwrap()).unwrap(), LGroupElement::Int(3));
        assert_eq!(eval_term(&g, &env, &parse_term("times(4, minus(x))").unwrap()).unwrap(), LGroupElement::Int(-8));
    }

    #[test]
    fn eval_errors() {
        let l2 = MvAlgebra::chain(2);
        let m = MvModel(&l2);
        let env = Env::new();
        assert_eq!(eval_term(&m, &env, &Term::var("y")), Err(EvalError::UnboundVariable("y".into())));
        assert!(matches!(
            eval_term(&m, &env, &parse_term("add(0,0)").unwrap()),
            Err(EvalError::SignatureMismatch { .. })
        ));
        assert!(matches!(eval_term(&m, &env, &Term::Unit), Err(EvalError::SignatureMismatch { .. })));
        let z = LGroupU::scaled_int(1).unwrap();
        let g = LuModel(&z);
        assert!(matches!(
            eval_term(&g, &Env::new(), &parse_term("oplus(0,0)").unwrap()),
            Err(EvalError::SignatureMismatch { .. })
        ));
        assert_eq!(
            eval_term(&g, &Env::new(), &parse_term("times(n, u)").unwrap()),
            Err(EvalError::UnboundVariable("n".into()))
        );
    }

    #[test]
    fn holds_examples() {
        let l2 = MvAlgebra::chain(2);
        let m = MvModel(&l2);
        let search = Search::over(&m, 10);
        let half = Env::new().with("x", MvElement::ratio(1, 2));
        assert_eq!(holds(&m, &half, &parse_formula("x = 0").unwrap(), &search).unwrap(), Truth::False);
        assert_eq!(holds(&m, &half, &parse_formula("exists y. oplus(y, y) = x").unwrap(), &search).unwrap(), Truth::False);
        assert_eq!(holds(&m, &half, &parse_formula("exists y. oplus(x, y) = neg(0)").unwrap(), &search).unwrap(), Truth::True);
        let z1 = LGroupU::scaled_int(1).unwrap();
        let g = LuModel(&z1);
        let gs = Search::over(&g, 10);
        let five = Env::new().with("x", LGroupElement::Int(5));
        let f = parse_formula("bigvee n<=8. x <= times(n,u)").unwrap();
        assert_eq!(holds(&g, &five, &f, &gs).unwrap(), Truth::True);
        let f4 = parse_formula("bigvee n<=4. x <= times(n,u)").unwrap();
        assert_eq!(holds(&g, &five, &f4, &gs).unwrap(), Truth::False);
        let auto = parse_formula("bigvee n<=auto. x <= times(n,u)").unwrap();
        assert_eq!(holds(&g, &five, &auto, &gs).unwrap(), Truth::True);
        // no landmark or small sample of ℤ halves 7
        let half7 = parse_formula("exists y. add(y,y) = x").unwrap();
        let seven = Env::new().with("x", LGroupElement::Int(7));
        assert_eq!(holds(&g, &seven, &half7, &gs).unwrap(), Truth::Unknown);
        let non_strong = LGroupU::free_pointwise(vec![1, 0]).unwrap();
        let ns = LuModel(&non_strong);
        let e = Env::new().with("x", LGroupElement::Ints(vec![0, 1]));
        assert_eq!(holds(&ns, &e, &auto, &Search::over(&ns, 5)).unwrap(), Truth::Unknown);
    }

    #[test]
    fn truth_tables() {
        use Truth::*;
        assert_eq!(Unknown.and(False), False);
        assert_eq!(Unknown.and(True), Unknown);
        assert_eq!(Unknown.or(True), True);
        assert_eq!(Unknown.or(False), Unknown);
    }

    #[test]
    fn sequent_examples() {
        let b = Budget::default();
        let l2 = MvAlgebra::chain(2);
        let rep = check_sequent(&MvModel(&l2), &parse_sequent("tt |- [x] x = 0").unwrap(), &b).unwrap();
        assert!(rep.is_fail());
        assert_eq!(rep.failure.as_ref().unwrap().value("x"), Some("1/2"));
        assert!(rep.notes.iter().any(|n| n == VALIDITY_NOTE));
        let l4 = MvAlgebra::chain(4);
        let comm = parse_sequent("tt |- [x,y] oplus(x,y) = oplus(y,x)").unwrap();
        let rep = check_sequent(&MvModel(&l4), &comm, &b).unwrap();
        assert!(rep.is_pass() && rep.exhaustive && rep.checked == 25);
        let lex = LGroupU::lex2((1, 0));
        let ax14 = parse_sequent("0 <= x |- [x] bigvee n<=auto. x <= times(n,u)").unwrap();
        let rep = check_sequent(&LuModel(&lex), &ax14, &b).unwrap();
        assert!(rep.is_pass() && !rep.exhaustive);
        let bad = parse_sequent("tt |- [x] add(x, 0) = oplus(x, 0)").unwrap();
        assert!(check_sequent(&LuModel(&lex), &bad, &b).is_err());
    }

    #[test]
    fn undecided_sequents_are_unknown() {
        let z = LGroupU::scaled_int(1).unwrap();
        let s = parse_sequent("tt |- [x] exists y. add(y, y) = add(x, minus(u))").unwrap();
        let rep = check_sequent(&LuModel(&z), &s, &Budget::new(20, 0, 3)).unwrap();
        assert_eq!(rep.status, crate::Status::Unknown);
    }

    #[test]
    fn assignment_enumeration() {
        let (all, ex) = assignments(&[1, 2, 3], 2, true, 5, 0);
        assert!(ex);
        assert_eq!(all.len(), 9);
        let (some, ex) = assignments(&[1, 2, 3], 2, false, 5, 0);
        assert!(!ex);
        assert_eq!(some.len(), 5);
        assert_eq!(assignments::<i32>(&[], 0, true, 5, 0).0, vec![Vec::<i32>::new()]);
    }
}
