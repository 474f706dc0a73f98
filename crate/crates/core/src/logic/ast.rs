use std::collections::BTreeSet;
use std::fmt;

/// Function symbols of both signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Neg,
    Oplus,
    Odot,
    Add,
    Minus,
    Inf,
    Sup,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Neg => "neg",
            Op::Oplus => "oplus",
            Op::Odot => "odot",
            Op::Add => "add",
            Op::Minus => "minus",
            Op::Inf => "inf",
            Op::Sup => "sup",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Some(match name {
            "neg" => Op::Neg,
            "oplus" => Op::Oplus,
            "odot" => Op::Odot,
            "add" => Op::Add,
            "minus" => Op::Minus,
            "inf" => Op::Inf,
            "sup" => Op::Sup,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Op::Neg | Op::Minus => 1,
            _ => 2,
        }
    }

    pub fn signature(self) -> Signature {
        match self {
            Op::Neg | Op::Oplus | Op::Odot => Signature::Mv,
            _ => Signature::Lu,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Signature {
    /// `⊕, ¬, 0` (with `⊙` as an abbreviation)
    Mv,
    /// `+, −, inf, sup, 0, u`
    Lu,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Mv => "Σ_MV",
            Signature::Lu => "Σ_Lu",
        })
    }
}

/// The multiplier of `times(k, t)`: a literal or a `bigvee` index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Lit(u64),
    Index(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    /// The unit `u` of Σ_Lu.
    Unit,
    App(Op, Vec<Term>),
    /// `k·t`, an abbreviation over Σ_Lu.
    Times(Scalar, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn app1(op: Op, a: Term) -> Term {
        Term::App(op, vec![a])
    }

    pub fn app2(op: Op, a: Term, b: Term) -> Term {
        Term::App(op, vec![a, b])
    }

    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::Unit => {}
            Term::App(_, args) => args.iter().for_each(|a| a.vars(out)),
            Term::Times(_, t) => t.vars(out),
        }
    }

    /// Every signature whose symbols occur in the term.
    pub fn signatures(&self, out: &mut BTreeSet<Signature>) {
        match self {
            Term::Var(_) | Term::Zero => {}
            Term::Unit | Term::Times(..) => {
                out.insert(Signature::Lu);
                if let Term::Times(_, t) = self {
                    t.signatures(out);
                }
            }
            Term::App(op, args) => {
                out.insert(op.signature());
                args.iter().for_each(|a| a.signatures(out));
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bound {
    Lit(u64),
    /// The largest unit bound of the values in scope.
    Auto,
}

/// Geometric formulas; `BigVee` is the bounded stand-in for `⋁_{n∈ℕ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Eq(Term, Term),
    Leq(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    BigVee { index: String, bound: Bound, body: Box<Formula> },
}

impl Formula {
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Formula::Exists(x, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
            Formula::BigVee { body, .. } => body.collect_free(out),
        }
    }

    pub fn signatures(&self, out: &mut BTreeSet<Signature>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                a.signatures(out);
                b.signatures(out);
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.signatures(out);
                b.signatures(out);
            }
            Formula::Exists(_, body) | Formula::BigVee { body, .. } => body.signatures(out),
        }
    }
}

/// `premise ⊢_context conclusion`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub context: Vec<String>,
    pub premise: Formula,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(context: &[&str], premise: Formula, conclusion: Formula) -> Self {
        Sequent { context: context.iter().map(|s| s.to_string()).collect(), premise, conclusion }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = self.premise.free_vars();
        out.extend(self.conclusion.free_vars());
        out
    }

    pub fn signatures(&self) -> BTreeSet<Signature> {
        let mut out = BTreeSet::new();
        self.premise.signatures(&mut out);
        self.conclusion.signatures(&mut out);
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Lit(n) => write!(f, "{n}"),
            Scalar::Index(i) => f.write_str(i),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::Unit => f.write_str("u"),
            Term::App(op, args) => {
                let parts: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "{}({})", op.name(), parts.join(", "))
            }
            Term::Times(k, t) => write!(f, "times({k}, {t})"),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Lit(n) => write!(f, "{n}"),
            Bound::Auto => f.write_str("auto"),
        }
    }
}

fn binds(f: &Formula) -> bool {
    matches!(f, Formula::Exists(..) | Formula::BigVee { .. })
}

struct Wrapped<'a>(&'a Formula, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Printed so that parsing gives back the same tree: `\/` binds loosest,
/// both connectives associate to the left, and quantifiers extend as far
/// right as possible.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Top => f.write_str("tt"),
            Formula::Bottom => f.write_str("ff"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Leq(a, b) => write!(f, "{a} <= {b}"),
            Formula::And(a, b) => {
                let left = Wrapped(a, matches!(**a, Formula::Or(..)) || binds(a));
                let right = Wrapped(b, matches!(**b, Formula::And(..) | Formula::Or(..)) || binds(b));
                write!(f, "{left} & {right}")
            }
            Formula::Or(a, b) => {
                let left = Wrapped(a, binds(a));
                let right = Wrapped(b, matches!(**b, Formula::Or(..)) || binds(b));
                write!(f, "{left} \\/ {right}")
            }
            Formula::Exists(x, body) => write!(f, "exists {x}. {body}"),
            Formula::BigVee { index, bound, body } => write!(f, "bigvee {index}<={bound}. {body}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- [{}] {}", self.premise, self.context.join(","), self.conclusion)
    }
}
