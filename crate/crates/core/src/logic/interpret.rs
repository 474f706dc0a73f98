//! The interpretation `I` of Σ_MV in Σ_Lu and its soundness check.

use thiserror::Error;

use crate::carrier::{Budget, Carrier};
use crate::functors::gamma;
use crate::lgroup::LGroup;
use crate::report::{witness, Binding, Report, Stop, Tally};

use super::ast::{Formula, Op, Sequent, Signature, Term};
use super::eval::{assignments, check_sequent_at, verdict, EvalError, LuModel, Model, MvModel, Search, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InterpretError {
    #[error("{0} is not a Σ_MV symbol")]
    NotMv(String),
}

/// `0 ↦ 0`, `¬t ↦ u − I(t)`, `s ⊕ t ↦ inf(u, I(s) + I(t))`, with
/// `s ⊙ t` expanded to `¬(¬s ⊕ ¬t)` first.
pub fn interpret_term(t: &Term) -> Result<Term, InterpretError> {
    Ok(match t {
        Term::Var(_) | Term::Zero => t.clone(),
        Term::Unit => return Err(InterpretError::NotMv("u".into())),
        Term::Times(..) => return Err(InterpretError::NotMv("times".into())),
        Term::App(op, args) => match (op, args.as_slice()) {
            (Op::Neg, [a]) => Term::app2(Op::Add, Term::Unit, Term::app1(Op::Minus, interpret_term(a)?)),
            (Op::Oplus, [a, b]) => {
                Term::app2(Op::Inf, Term::Unit, Term::app2(Op::Add, interpret_term(a)?, interpret_term(b)?))
            }
            (Op::Odot, [a, b]) => {
                let neg = |x: &Term| Term::app1(Op::Neg, x.clone());
                interpret_term(&neg(&Term::app2(Op::Oplus, neg(a), neg(b))))?
            }
            _ => return Err(InterpretError::NotMv(op.name().into())),
        },
    })
}

fn interval(x: &str) -> Formula {
    Formula::and(Formula::Leq(Term::Zero, Term::var(x)), Formula::Leq(Term::var(x), Term::Unit))
}

/// Homomorphic on connectives; quantifiers are relativized to `[0,u]`.
pub fn interpret_formula(f: &Formula) -> Result<Formula, InterpretError> {
    Ok(match f {
        Formula::Top | Formula::Bottom => f.clone(),
        Formula::Eq(a, b) => Formula::Eq(interpret_term(a)?, interpret_term(b)?),
        Formula::Leq(a, b) => Formula::Leq(interpret_term(a)?, interpret_term(b)?),
        Formula::And(a, b) => Formula::and(interpret_formula(a)?, interpret_formula(b)?),
        Formula::Or(a, b) => Formula::or(interpret_formula(a)?, interpret_formula(b)?),
        Formula::Exists(x, body) => Formula::Exists(x.clone(), Box::new(Formula::and(interval(x), interpret_formula(body)?))),
        Formula::BigVee { index, bound, body } => {
            Formula::BigVee { index: index.clone(), bound: *bound, body: Box::new(interpret_formula(body)?) }
        }
    })
}

/// `I(σ)`: same context, premise and conclusion translated.
pub fn interpret(s: &Sequent) -> Result<Sequent, InterpretError> {
    Ok(Sequent {
        context: s.context.clone(),
        premise: interpret_formula(&s.premise)?,
        conclusion: interpret_formula(&s.conclusion)?,
    })
}

/// Adds `0 ≤ x ∧ x ≤ u` for every context variable to the premise.
pub fn guard(s: &Sequent) -> Sequent {
    let mut parts: Vec<Formula> = s.context.iter().map(|x| interval(x)).collect();
    if s.premise != Formula::Top {
        parts.push(s.premise.clone());
    }
    Sequent { context: s.context.clone(), premise: Formula::conj(parts), conclusion: s.conclusion.clone() }
}

/// The three reports of a soundness check.
#[derive(Debug, Clone)]
pub struct Soundness {
    /// `σ` over `Γ(G)`.
    pub mv: Report,
    /// `guard(I(σ))` over `G`, at the same assignments.
    pub lu: Report,
    /// Assignment-by-assignment agreement of the two.
    pub agreement: Report,
}

impl Soundness {
    pub fn is_pass(&self) -> bool {
        self.agreement.is_pass()
    }
}

/// Checks `σ` over `Γ(G)` and `guard(I(σ))` over `G` at the same
/// assignments of interval elements, and that they agree at each one.
pub fn check_interpretation_soundness<G: LGroup + Clone>(
    g: &G,
    s: &Sequent,
    budget: &Budget,
) -> Result<Soundness, SoundnessError> {
    if s.signatures().contains(&Signature::Lu) {
        return Err(SoundnessError::Interpret(InterpretError::NotMv(format!("{s}"))));
    }
    let translated = guard(&interpret(s)?);
    let gam = gamma(g.clone());
    let mv_model = MvModel(&gam);
    let lu_model = LuModel(g);
    let (elems, complete) = mv_model.universe(budget);
    let (envs, exhaustive) = assignments(&elems, s.context.len(), complete, budget.samples, budget.seed);
    let mv = check_sequent_at(&mv_model, s, &envs, exhaustive, budget)?;
    let lu = check_sequent_at(&lu_model, &translated, &envs, exhaustive, budget)?;
    let mut t = Tally::new("interpretation-soundness", format!("I({s})  in {}", g.describe()), budget.seed);
    t.set_exhaustive(exhaustive);
    t.note(format!("σ over {}: {}", gam.describe(), mv.status));
    t.note(format!("guard(I(σ)) over {}: {}", g.describe(), lu.status));
    let search_mv = Search::over(&mv_model, budget.samples);
    let search_lu = Search::over(&lu_model, budget.samples);
    let mut error = None;
    let _ = (|| -> Result<(), Stop> {
        t.ensure(mv.status == lu.status, "σ valid in Γ(G) ⇔ guard(I(σ)) valid in G", Vec::new)?;
        for values in &envs {
            let env = super::eval::Env::from_pairs(&s.context, values);
            let pair = verdict(&mv_model, &env, s, &search_mv).and_then(|a| Ok((a, verdict(&lu_model, &env, &translated, &search_lu)?)));
            let (a, b) = match pair {
                Ok(p) => p,
                Err(e) => {
                    error = Some(e);
                    return Err(Stop);
                }
            };
            let same = matches!((a, b), (Verdict::Violated, Verdict::Violated) | (Verdict::Undecided, Verdict::Undecided))
                || (holds_or_vacuous(a) && holds_or_vacuous(b));
            t.ensure(same, "σ and guard(I(σ)) agree at every assignment", || {
                let mut w: Vec<Binding> =
                    s.context.iter().zip(values).map(|(n, v)| Binding::new(n.clone(), g.render(v))).collect();
                w.extend(witness([("Γ(G)", format!("{a:?}")), ("G", format!("{b:?}"))]));
                w
            })?;
        }
        Ok(())
    })();
    if let Some(e) = error {
        return Err(e.into());
    }
    Ok(Soundness { mv, lu, agreement: t.finish() })
}

fn holds_or_vacuous(v: Verdict) -> bool {
    matches!(v, Verdict::Holds | Verdict::Vacuous)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SoundnessError {
    #[error(transparent)]
    Interpret(#[from] InterpretError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgroup::LGroupU;
    use crate::logic::parse::{parse_formula, parse_sequent, parse_term};
    use crate::logic::{interval_sequents, mv_axiom_sequents};

    #[test]
    fn interpret_examples() {
        assert_eq!(interpret_term(&parse_term("neg(0)").unwrap()).unwrap().to_string(), "add(u, minus(0))");
        let f = interpret_formula(&parse_formula("oplus(x, neg(x)) = neg(0)").unwrap()).unwrap();
        assert_eq!(f, parse_formula("inf(u, add(x, add(u, minus(x)))) = add(u, minus(0))").unwrap());
        let odot = interpret_term(&parse_term("odot(x,y)").unwrap()).unwrap();
        assert_eq!(
            odot,
            parse_term("add(u, minus(inf(u, add(add(u, minus(x)), add(u, minus(y))))))").unwrap()
        );
        assert!(interpret_term(&parse_term("add(x,y)").unwrap()).is_err());
        let e = interpret_formula(&parse_formula("exists y. y = x").unwrap()).unwrap();
        assert_eq!(e, parse_formula("exists y. (0 <= y & y <= u) & y = x").unwrap());
    }

    #[test]
    fn interpretation_preserves_free_variables() {
        for s in mv_axiom_sequents() {
            let i = interpret(&s).unwrap();
            assert_eq!(i.free_vars(), s.free_vars());
            assert_eq!(i.context, s.context);
            assert!(!i.signatures().contains(&Signature::Mv));
        }
    }

    #[test]
    fn guarded_axiom_2_is_sequent_ii() {
        let ax2 = &mv_axiom_sequents()[1];
        let ii = &interval_sequents()[1];
        assert_eq!(&guard(&interpret(ax2).unwrap()), ii);
        assert_eq!(
            ii,
            &parse_sequent("0 <= x & x <= u & (0 <= y & y <= u) |- [x,y] inf(u, add(x,y)) = inf(u, add(y,x))").unwrap()
        );
    }

    #[test]
    fn soundness_examples() {
        let b = Budget::default();
        let z3 = LGroupU::scaled_int(3).unwrap();
        let ax6 = &mv_axiom_sequents()[5];
        let s = check_interpretation_soundness(&z3, ax6, &b).unwrap();
        assert!(s.is_pass() && s.mv.is_pass() && s.lu.is_pass());
        let trivial = parse_sequent("tt |- [] 0 = 0").unwrap();
        let s = check_interpretation_soundness(&z3, &trivial, &b).unwrap();
        assert!(s.is_pass() && s.mv.is_pass() && s.lu.is_pass());
        let z2 = LGroupU::scaled_int(2).unwrap();
        let zero = parse_sequent("tt |- [x] x = 0").unwrap();
        let s = check_interpretation_soundness(&z2, &zero, &b).unwrap();
        assert!(s.is_pass(), "{}", s.agreement);
        assert!(s.mv.is_fail() && s.lu.is_fail());
        assert_eq!(s.mv.failure.unwrap().value("x"), Some("1"));
        assert_eq!(s.lu.failure.unwrap().value("x"), Some("1"));
        let lu = parse_sequent("tt |- [x] add(x, x) = x").unwrap();
        assert!(check_interpretation_soundness(&z2, &lu, &b).is_err());
    }
}
