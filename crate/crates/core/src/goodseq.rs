//! Good sequences over an MV-algebra and the monoid they form.
//!
//! A good sequence is stored in trimmed form: trailing zeros are dropped,
//! so the empty list is the zero sequence `(0)` and two sequences that
//! differ only by zero padding are equal.

use std::fmt;

use rand::{Rng, RngCore};
use thiserror::Error;

use crate::carrier::{tuples, Budget, Carrier};
use crate::mv::MvStructure;
use crate::report::{witness, Report, Stop, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoodSeqError {
    /// `index` is 1-based: `a_index ⊕ a_{index+1} ≠ a_index`.
    #[error("not a good sequence: absorption fails at index {index}")]
    NotAGoodSequence { index: usize },
    #[error("component {element} is not in the carrier of {algebra}")]
    AlgebraMismatch { element: String, algebra: String },
    #[error("sum of good sequences is not good at index {index}")]
    SumNotGood { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoodSequence<E> {
    comps: Vec<E>,
}

impl<E> GoodSequence<E> {
    pub fn zero() -> Self {
        GoodSequence { comps: Vec::new() }
    }

    pub fn components(&self) -> &[E] {
        &self.comps
    }

    /// Number of stored (nonzero) components.
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn into_components(self) -> Vec<E> {
        self.comps
    }
}

/// The monoid `M_A` of good sequences over `alg`.
///
/// `max_len` bounds enumeration and the length of random samples.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodSeqMonoid<A> {
    pub alg: A,
    pub max_len: usize,
}

impl<A: MvStructure> GoodSeqMonoid<A> {
    pub fn new(alg: A, max_len: usize) -> Self {
        GoodSeqMonoid { alg, max_len }
    }

    /// Drops trailing zeros without validating absorption.
    pub fn trimmed(&self, mut comps: Vec<A::Elem>) -> GoodSequence<A::Elem> {
        while comps.last().is_some_and(|c| self.alg.is_zero(c)) {
            comps.pop();
        }
        GoodSequence { comps }
    }

    fn at<'s>(&self, x: &'s GoodSequence<A::Elem>, i: usize, zero: &'s A::Elem) -> &'s A::Elem {
        x.comps.get(i).unwrap_or(zero)
    }

    /// First 1-based index where absorption fails, on the zero-padded list.
    fn absorption_failure(&self, comps: &[A::Elem]) -> Option<usize> {
        let zero = self.alg.zero();
        (0..comps.len()).find(|&i| {
            let next = comps.get(i + 1).unwrap_or(&zero);
            !self.alg.same(&self.alg.oplus(&comps[i], next), &comps[i])
        }).map(|i| i + 1)
    }

    /// Trims trailing zeros and validates absorption.
    pub fn normalize(&self, raw: Vec<A::Elem>) -> Result<GoodSequence<A::Elem>, GoodSeqError> {
        if let Some(bad) = raw.iter().find(|c| !self.alg.contains(c)) {
            return Err(GoodSeqError::AlgebraMismatch {
                element: format!("{bad:?}"),
                algebra: self.alg.describe(),
            });
        }
        if let Some(index) = self.absorption_failure(&raw) {
            return Err(GoodSeqError::NotAGoodSequence { index });
        }
        Ok(self.trimmed(raw))
    }

    pub fn is_good(&self, x: &GoodSequence<A::Elem>) -> bool {
        self.absorption_failure(&x.comps).is_none()
    }

    /// `(a)`; always good.
    pub fn singleton(&self, a: A::Elem) -> GoodSequence<A::Elem> {
        self.trimmed(vec![a])
    }

    /// `1^m = (1, …, 1)` with `m` ones.
    pub fn ones(&self, m: usize) -> GoodSequence<A::Elem> {
        self.trimmed(vec![self.alg.one(); m])
    }

    /// `c_i = a_i ⊕ (a_{i−1}⊙b_1) ⊕ … ⊕ (a_1⊙b_{i−1}) ⊕ b_i` for
    /// `i = 1..n+m`, trimmed. No validation.
    pub fn sum(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>) -> GoodSequence<A::Elem> {
        let (zero, one) = (self.alg.zero(), self.alg.one());
        let (n, m) = (x.len(), y.len());
        let comps = (1..=n + m)
            .map(|i| {
                let mut c = self.alg.oplus(self.at(x, i - 1, &zero), self.at(y, i - 1, &zero));
                for j in i.saturating_sub(n).max(1)..=m.min(i - 1) {
                    if self.alg.same(&c, &one) {
                        break;
                    }
                    let t = self.alg.odot(&x.comps[i - j - 1], &y.comps[j - 1]);
                    c = self.alg.oplus(&c, &t);
                }
                c
            })
            .collect();
        self.trimmed(comps)
    }

    fn pointwise<F>(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>, f: F) -> GoodSequence<A::Elem>
    where
        F: Fn(&A::Elem, &A::Elem) -> A::Elem,
    {
        let zero = self.alg.zero();
        let n = x.len().max(y.len());
        self.trimmed((0..n).map(|i| f(self.at(x, i, &zero), self.at(y, i, &zero))).collect())
    }

    pub fn inf(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>) -> GoodSequence<A::Elem> {
        self.pointwise(x, y, |a, b| self.alg.inf(a, b))
    }

    pub fn sup(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>) -> GoodSequence<A::Elem> {
        self.pointwise(x, y, |a, b| self.alg.sup(a, b))
    }

    pub fn leq(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>) -> bool {
        let zero = self.alg.zero();
        (0..x.len().max(y.len())).all(|i| self.alg.leq(self.at(x, i, &zero), self.at(y, i, &zero)))
    }

    fn member(&self, x: &GoodSequence<A::Elem>) -> Result<(), GoodSeqError> {
        match x.comps.iter().find(|c| !self.alg.contains(c)) {
            Some(bad) => Err(GoodSeqError::AlgebraMismatch { element: format!("{bad:?}"), algebra: self.alg.describe() }),
            None => Ok(()),
        }
    }

    /// [`sum`](Self::sum) with membership checks and a closure assertion.
    pub fn good_sum(
        &self,
        x: &GoodSequence<A::Elem>,
        y: &GoodSequence<A::Elem>,
    ) -> Result<GoodSequence<A::Elem>, GoodSeqError> {
        self.member(x)?;
        self.member(y)?;
        let s = self.sum(x, y);
        match self.absorption_failure(&s.comps) {
            Some(index) => Err(GoodSeqError::SumNotGood { index }),
            None => Ok(s),
        }
    }

    pub fn good_inf(
        &self,
        x: &GoodSequence<A::Elem>,
        y: &GoodSequence<A::Elem>,
    ) -> Result<GoodSequence<A::Elem>, GoodSeqError> {
        self.member(x)?;
        self.member(y)?;
        Ok(self.inf(x, y))
    }

    pub fn good_sup(
        &self,
        x: &GoodSequence<A::Elem>,
        y: &GoodSequence<A::Elem>,
    ) -> Result<GoodSequence<A::Elem>, GoodSeqError> {
        self.member(x)?;
        self.member(y)?;
        Ok(self.sup(x, y))
    }

    pub fn good_leq(&self, x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>) -> Result<bool, GoodSeqError> {
        self.member(x)?;
        self.member(y)?;
        Ok(self.leq(x, y))
    }

    /// Every good sequence of length at most `max_len`, when `alg` is finite.
    ///
    /// After the first zero component all later ones are zero, so it
    /// suffices to extend nonzero prefixes.
    pub fn enumerate(&self, max_len: usize) -> Option<Vec<GoodSequence<A::Elem>>> {
        let nonzero: Vec<A::Elem> = self.alg.elements()?.into_iter().filter(|e| !self.alg.is_zero(e)).collect();
        let mut out = vec![GoodSequence::zero()];
        let mut frontier: Vec<Vec<A::Elem>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for prefix in &frontier {
                for e in &nonzero {
                    let ok = prefix.last().is_none_or(|l| self.alg.same(&self.alg.oplus(l, e), l));
                    if ok {
                        let mut p = prefix.clone();
                        p.push(e.clone());
                        out.push(GoodSequence { comps: p.clone() });
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        Some(out)
    }
}

impl<A: MvStructure> Carrier for GoodSeqMonoid<A> {
    type Elem = GoodSequence<A::Elem>;

    fn contains(&self, x: &Self::Elem) -> bool {
        x.comps.iter().all(|c| self.alg.contains(c))
            && x.comps.last().is_none_or(|c| !self.alg.is_zero(c))
            && self.is_good(x)
    }

    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x.len() == y.len() && x.comps.iter().zip(&y.comps).all(|(a, b)| self.alg.same(a, b))
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        self.enumerate(self.max_len)
    }

    /// A sum of up to `max_len` random singletons.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        let k = rng.gen_range(0..=self.max_len);
        (0..k).fold(GoodSequence::zero(), |acc, _| {
            let a = self.alg.sample(rng);
            self.sum(&acc, &self.singleton(a))
        })
    }

    fn landmarks(&self) -> Vec<Self::Elem> {
        let mut out = vec![GoodSequence::zero(), self.ones(1)];
        if self.max_len >= 2 {
            out.push(self.ones(2));
        }
        out.extend(self.alg.landmarks().into_iter().map(|a| self.singleton(a)));
        out
    }

    fn render(&self, x: &Self::Elem) -> String {
        if x.is_empty() {
            return format!("({})", self.alg.render(&self.alg.zero()));
        }
        let parts: Vec<String> = x.comps.iter().map(|c| self.alg.render(c)).collect();
        format!("({})", parts.join(","))
    }

    fn describe(&self) -> String {
        format!("M({})", self.alg.describe())
    }
}

impl<E: fmt::Display> fmt::Display for GoodSequence<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.comps.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

const EXHAUSTIVE_TRIPLES: usize = 1_000_000;
const EXISTENTIAL_PAIRS: usize = 10_000;

struct SeqProbe<E> {
    elems: Vec<GoodSequence<E>>,
    exhaustive: bool,
}

fn seq_probe<A: MvStructure>(m: &GoodSeqMonoid<A>, budget: &Budget, rng: &mut dyn RngCore) -> SeqProbe<A::Elem> {
    if let Some(elems) = m.elements() {
        return SeqProbe { elems, exhaustive: true };
    }
    let mut elems = m.landmarks();
    elems.extend((0..budget.samples).map(|_| m.sample(rng)));
    SeqProbe { elems, exhaustive: false }
}

/// Verifies the ordered-monoid laws of `M_A` on good sequences of length at
/// most `budget.max_len` (all of them when `alg` is finite).
pub fn check_monoid_laws<A: MvStructure + Clone>(alg: &A, budget: &Budget) -> Report {
    let m = GoodSeqMonoid::new(alg.clone(), budget.max_len);
    let mut rng = budget.rng();
    let mut t = Tally::new("monoid-laws", m.describe(), budget.seed);
    let p = seq_probe(&m, budget, &mut rng);
    let limit = if p.exhaustive { EXHAUSTIVE_TRIPLES } else { budget.samples };
    let (triples, all) = tuples::<3>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let _ = run_monoid_laws(&m, &p, &triples, &mut t, &mut rng);
    t.finish()
}

fn run_monoid_laws<A: MvStructure>(
    m: &GoodSeqMonoid<A>,
    p: &SeqProbe<A::Elem>,
    triples: &[[usize; 3]],
    t: &mut Tally,
    rng: &mut dyn RngCore,
) -> Result<(), Stop> {
    let r = |x: &GoodSequence<A::Elem>| m.render(x);
    let eq = |x: &GoodSequence<A::Elem>, y: &GoodSequence<A::Elem>| m.same(x, y);
    let zero = GoodSequence::zero();
    for x in &p.elems {
        let w = || witness([("x", r(x))]);
        t.ensure(m.is_good(x), "good: a_i ⊕ a_{i+1} = a_i", w)?;
        t.ensure(eq(&m.sum(x, &zero), x) && eq(&m.sum(&zero, x), x), "identity: x+(0) = x", w)?;
        t.ensure(m.leq(&zero, x), "(0) ≤ x", w)?;
        t.ensure(eq(&m.inf(x, x), x) && eq(&m.sup(x, x), x), "idempotence", w)?;
    }
    let n = p.elems.len();
    let pair_limit = if p.exhaustive { EXHAUSTIVE_TRIPLES } else { triples.len() * 5 };
    let (pairs, _) = tuples::<2>(n, pair_limit, rng);
    for &[i, j] in &pairs {
        let (x, y) = (&p.elems[i], &p.elems[j]);
        let w = || witness([("x", r(x)), ("y", r(y))]);
        let s = m.sum(x, y);
        t.ensure(m.is_good(&s), "closure: x+y is good", w)?;
        t.ensure(s.len() <= x.len() + y.len(), "support: len(x+y) ≤ len(x)+len(y)", w)?;
        t.ensure(eq(&s, &m.sum(y, x)), "commutativity: x+y = y+x", w)?;
        let (inf, sup) = (m.inf(x, y), m.sup(x, y));
        t.ensure(m.is_good(&inf) && m.is_good(&sup), "closure: inf and sup are good", w)?;
        t.ensure(eq(&inf, &m.inf(y, x)) && eq(&sup, &m.sup(y, x)), "lattice: inf, sup commute", w)?;
        t.ensure(eq(&m.inf(x, &sup), x) && eq(&m.sup(x, &inf), x), "lattice: absorption", w)?;
        t.ensure(m.leq(x, y) == eq(&inf, x), "order: x ≤ y ⇔ inf(x,y) = x", w)?;
        t.ensure(m.leq(x, &s), "order: x ≤ x+y", w)?;
    }
    for &[i, j, k] in triples {
        let (x, y, z) = (&p.elems[i], &p.elems[j], &p.elems[k]);
        let w = || witness([("x", r(x)), ("y", r(y)), ("z", r(z))]);
        t.ensure(eq(&m.sum(&m.sum(x, y), z), &m.sum(x, &m.sum(y, z))), "associativity: (x+y)+z = x+(y+z)", w)?;
        t.ensure(
            eq(&m.inf(&m.inf(x, y), z), &m.inf(x, &m.inf(y, z))),
            "lattice: inf associative",
            w,
        )?;
        t.ensure(
            eq(&m.sum(x, &m.inf(y, z)), &m.inf(&m.sum(x, y), &m.sum(x, z))),
            "translation: x+inf(y,z) = inf(x+y,x+z)",
            w,
        )?;
        t.ensure(
            eq(&m.sum(x, &m.sup(y, z)), &m.sup(&m.sum(x, y), &m.sum(x, z))),
            "translation: x+sup(y,z) = sup(x+y,x+z)",
            w,
        )?;
        if m.leq(x, y) {
            t.ensure(m.leq(&m.sum(x, z), &m.sum(y, z)), "monotonicity: x ≤ y ⊢ x+z ≤ y+z", w)?;
        }
    }
    if p.exhaustive {
        // c ≤ y whenever x + c = y, so the enumerated set contains every
        // candidate difference.
        let (pairs, _) = tuples::<2>(n, EXISTENTIAL_PAIRS, rng);
        for &[i, j] in &pairs {
            let (x, y) = (&p.elems[i], &p.elems[j]);
            let exists = p.elems.iter().any(|c| eq(&m.sum(x, c), y));
            t.ensure(m.leq(x, y) == exists, "order: x ≤ y ⇔ ∃c. x+c = y", || {
                witness([("x", r(x)), ("y", r(y))])
            })?;
        }
    }
    Ok(())
}

/// Verifies `a+b = a+c ⊢ b = c`.
///
/// For each probed `a` all sums `a+b` are formed and every pair of equal
/// sums is compared, which is where a violation would show. On infinite
/// carriers only the first `budget.samples / 10` elements serve as `a`.
pub fn check_cancellation<A: MvStructure + Clone>(alg: &A, budget: &Budget) -> Report {
    let m = GoodSeqMonoid::new(alg.clone(), budget.max_len);
    let mut rng = budget.rng();
    let mut t = Tally::new("cancellation", m.describe(), budget.seed);
    let p = seq_probe(&m, budget, &mut rng);
    t.set_exhaustive(p.exhaustive);
    let anchors = if p.exhaustive { p.elems.len() } else { (budget.samples / 10).max(1).min(p.elems.len()) };
    let _ = (|| -> Result<(), Stop> {
        let r = |x: &GoodSequence<A::Elem>| m.render(x);
        for a in &p.elems[..anchors] {
            let sums: Vec<GoodSequence<A::Elem>> = p.elems.iter().map(|b| m.sum(a, b)).collect();
            for (j, sb) in sums.iter().enumerate() {
                for (k, sc) in sums.iter().enumerate().skip(j + 1) {
                    let (b, c) = (&p.elems[j], &p.elems[k]);
                    t.ensure(!m.same(sb, sc) || m.same(b, c), "cancellation: a+b = a+c ⊢ b = c", || {
                        witness([("a", r(a)), ("b", r(b)), ("c", r(c))])
                    })?;
                }
            }
        }
        Ok(())
    })();
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mv::{MvAlgebra, MvElement};
    use crate::rational::{self, Q};

    fn l(n: u32) -> GoodSeqMonoid<MvAlgebra> {
        GoodSeqMonoid::new(MvAlgebra::chain(n), 3)
    }

    fn seq(m: &GoodSeqMonoid<MvAlgebra>, v: &[(i64, i64)]) -> GoodSequence<MvElement> {
        m.normalize(v.iter().map(|&(p, q)| MvElement::ratio(p, q)).collect()).unwrap()
    }

    /// Over a chain, a good sequence encodes the rational Σ a_i.
    fn total(x: &GoodSequence<MvElement>) -> Q {
        x.components().iter().fold(rational::int(0), |acc, c| match c {
            MvElement::Rational(r) => acc + r,
            _ => unreachable!(),
        })
    }

    /// The good sequence of a nonnegative rational over a chain.
    fn digits(mut v: Q) -> Vec<MvElement> {
        let one = rational::int(1);
        let mut out = Vec::new();
        while v > rational::int(0) {
            let d = if v > one { one.clone() } else { v.clone() };
            v -= &d;
            out.push(MvElement::Rational(d));
        }
        out
    }

    #[test]
    fn normalize_examples() {
        let m = l(2);
        assert_eq!(seq(&m, &[(1, 2), (0, 1), (0, 1)]), seq(&m, &[(1, 2)]));
        assert_eq!(seq(&m, &[(1, 2)]).len(), 1);
        let err = m.normalize(vec![MvElement::ratio(1, 2), MvElement::ratio(1, 2)]).unwrap_err();
        assert_eq!(err, GoodSeqError::NotAGoodSequence { index: 1 });
        assert_eq!(m.normalize(vec![]).unwrap(), GoodSequence::zero());
        let err = m.normalize(vec![MvElement::ratio(1, 3)]).unwrap_err();
        assert!(matches!(err, GoodSeqError::AlgebraMismatch { .. }));
        // a zero followed by a nonzero component violates absorption
        let err = m.normalize(vec![MvElement::ratio(1, 1), MvElement::ratio(0, 1), MvElement::ratio(1, 2)]);
        assert_eq!(err.unwrap_err(), GoodSeqError::NotAGoodSequence { index: 2 });
    }

    #[test]
    fn sum_examples() {
        let m = l(2);
        let half = seq(&m, &[(1, 2)]);
        assert_eq!(m.good_sum(&half, &half).unwrap(), seq(&m, &[(1, 1)]));
        assert_eq!(m.good_sum(&half, &GoodSequence::zero()).unwrap(), half);
        let x = seq(&m, &[(1, 1), (1, 2)]);
        assert_eq!(m.good_sum(&x, &half).unwrap(), seq(&m, &[(1, 1), (1, 1)]));
        let other = GoodSeqMonoid::new(MvAlgebra::chain(3), 3);
        let third = other.singleton(MvElement::ratio(1, 3));
        assert!(matches!(m.good_sum(&half, &third), Err(GoodSeqError::AlgebraMismatch { .. })));
    }

    #[test]
    fn sum_matches_rational_addition_on_chains() {
        for n in 1..=5u32 {
            let m = GoodSeqMonoid::new(MvAlgebra::chain(n), 3);
            let all = m.enumerate(3).unwrap();
            for x in &all {
                for y in &all {
                    let s = m.good_sum(x, y).unwrap();
                    assert_eq!(s.components(), digits(total(x) + total(y)).as_slice(), "{x} + {y}");
                }
            }
        }
    }

    #[test]
    fn lattice_examples() {
        let m = l(2);
        let x = seq(&m, &[(1, 1), (1, 2)]);
        let one = m.ones(1);
        assert!(m.good_leq(&GoodSequence::zero(), &x).unwrap());
        assert_eq!(m.good_inf(&x, &one).unwrap(), one);
        assert_eq!(m.good_sup(&x, &one).unwrap(), x);
        assert!(m.good_leq(&one, &x).unwrap());
        assert!(!m.good_leq(&x, &one).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        // Ł₂ sequences of length ≤ 3: (0), (1/2), (1), (1,1/2), (1,1), (1,1,1/2), (1,1,1)
        assert_eq!(l(2).enumerate(3).unwrap().len(), 7);
        // over a chain, good sequences of length ≤ L are the multiples of 1/n in [0, L]
        for n in 1..=6u32 {
            assert_eq!(l(n).enumerate(3).unwrap().len(), 3 * n as usize + 1);
        }
        assert!(GoodSeqMonoid::new(MvAlgebra::Chang, 3).enumerate(3).is_none());
        let prod = GoodSeqMonoid::new(MvAlgebra::product(vec![MvAlgebra::chain(1), MvAlgebra::chain(1)]), 2);
        // pairs of Ł₁-sequences of length ≤ 2: 3 × 3
        assert_eq!(prod.enumerate(2).unwrap().len(), 9);
    }

    #[test]
    fn samples_are_good() {
        let m = GoodSeqMonoid::new(MvAlgebra::Chang, 4);
        let mut rng = Budget::default().rng();
        for _ in 0..200 {
            let x = m.sample(&mut rng);
            assert!(m.contains(&x), "{}", m.render(&x));
            assert!(x.len() <= 4);
            for w in x.components().windows(2) {
                assert!(m.alg.leq(&w[1], &w[0]));
            }
        }
    }

    #[test]
    fn monoid_laws_hold() {
        let b = Budget::default();
        let rep = check_monoid_laws(&MvAlgebra::chain(2), &b);
        assert!(rep.is_pass() && rep.exhaustive, "{rep}");
        assert!(check_monoid_laws(&MvAlgebra::chain(3), &Budget::new(200, 0, 4)).is_pass());
        for alg in [MvAlgebra::Chang, MvAlgebra::rational_interval()] {
            let rep = check_monoid_laws(&alg, &b);
            assert!(rep.is_pass() && !rep.exhaustive, "{rep}");
        }
    }

    #[test]
    fn cancellation_holds() {
        let b = Budget::default();
        let rep = check_cancellation(&MvAlgebra::chain(2), &b);
        assert!(rep.is_pass() && rep.exhaustive, "{rep}");
        assert!(check_cancellation(&MvAlgebra::Chang, &b).is_pass());
        assert!(check_cancellation(&MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]), &b).is_pass());
    }

    /// Ł₂ with a planted ⊙.
    #[derive(Clone)]
    struct Planted {
        inner: MvAlgebra,
        odot: fn(&MvAlgebra, &MvElement, &MvElement) -> MvElement,
    }

    impl Carrier for Planted {
        type Elem = MvElement;
        fn contains(&self, x: &MvElement) -> bool {
            self.inner.contains(x)
        }
        fn elements(&self) -> Option<Vec<MvElement>> {
            self.inner.elements()
        }
        fn sample(&self, rng: &mut dyn RngCore) -> MvElement {
            self.inner.sample(rng)
        }
        fn render(&self, x: &MvElement) -> String {
            self.inner.render(x)
        }
        fn describe(&self) -> String {
            "planted".into()
        }
    }

    impl MvStructure for Planted {
        fn zero(&self) -> MvElement {
            self.inner.zero()
        }
        fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement {
            self.inner.oplus(x, y)
        }
        fn neg(&self, x: &MvElement) -> MvElement {
            self.inner.neg(x)
        }
        fn odot(&self, x: &MvElement, y: &MvElement) -> MvElement {
            (self.odot)(&self.inner, x, y)
        }
        fn leq(&self, x: &MvElement, y: &MvElement) -> bool {
            self.inner.leq(x, y)
        }
        fn inf(&self, x: &MvElement, y: &MvElement) -> MvElement {
            self.inner.inf(x, y)
        }
        fn sup(&self, x: &MvElement, y: &MvElement) -> MvElement {
            self.inner.sup(x, y)
        }
    }

    #[test]
    fn planted_odot_breaks_monoid_laws() {
        let bad = Planted { inner: MvAlgebra::chain(2), odot: |a, x, y| a.oplus(x, y) };
        let rep = check_monoid_laws(&bad, &Budget::default());
        assert!(rep.is_fail());
        let fail = rep.failure.unwrap();
        assert!(!fail.witness.is_empty());
    }

    #[test]
    fn planted_odot_breaks_cancellation() {
        let bad = Planted { inner: MvAlgebra::chain(2), odot: |a, _, _| a.zero() };
        let rep = check_cancellation(&bad, &Budget::default());
        assert!(rep.is_fail(), "{rep}");
        assert_eq!(rep.law(), Some("cancellation: a+b = a+c ⊢ b = c"));
        let m = GoodSeqMonoid::new(bad, 3);
        // (1) + (0) = (1) = (1) + (1) once a⊙b is forced to 0
        assert_eq!(m.sum(&m.ones(1), &m.ones(1)), m.ones(1));
    }
}
