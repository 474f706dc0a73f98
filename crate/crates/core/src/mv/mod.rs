//! MV-algebras: the [`MvStructure`] interface, concrete carriers, checked
//! derived operations and axiom verification.

mod algebra;

pub use algebra::{FiniteTable, MvAlgebra, MvElement};

use thiserror::Error;

use crate::carrier::{probe, tuples, Budget, Carrier};
use crate::report::{witness, Report, Stop, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MvError {
    #[error("element {element} is not in the carrier of {algebra}")]
    ElementNotInCarrier { element: String, algebra: String },
    #[error("invalid finite table: {0}")]
    InvalidTable(String),
}

/// An algebra `(A, ⊕, ¬, 0)`.
///
/// The operations are total on the carrier and are not required to check
/// membership; use the free functions of this module for checked access.
/// The derived operations follow the usual definitions and may be
/// overridden only for efficiency (or, in tests, to plant defects).
pub trait MvStructure: Carrier {
    fn zero(&self) -> Self::Elem;
    fn oplus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.neg(&self.zero())
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`
    fn odot(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.oplus(&self.neg(x), &self.neg(y)))
    }

    /// Natural order: `x ≤ y` iff `¬x ⊕ y = 1`.
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.same(&self.oplus(&self.neg(x), y), &self.one())
    }

    /// `(x ⊙ ¬y) ⊕ y`
    fn sup(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.oplus(&self.odot(x, &self.neg(y)), y)
    }

    /// `x ⊙ (¬x ⊕ y)`
    fn inf(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.odot(x, &self.oplus(&self.neg(x), y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.same(x, &self.zero())
    }
}

fn member<A: MvStructure + ?Sized>(a: &A, x: &A::Elem) -> Result<(), MvError> {
    if a.contains(x) {
        Ok(())
    } else {
        Err(MvError::ElementNotInCarrier { element: format!("{x:?}"), algebra: a.describe() })
    }
}

pub fn odot<A: MvStructure + ?Sized>(a: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem, MvError> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.odot(x, y))
}

pub fn mv_leq<A: MvStructure + ?Sized>(a: &A, x: &A::Elem, y: &A::Elem) -> Result<bool, MvError> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.leq(x, y))
}

pub fn mv_sup<A: MvStructure + ?Sized>(a: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem, MvError> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.sup(x, y))
}

pub fn mv_inf<A: MvStructure + ?Sized>(a: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem, MvError> {
    member(a, x)?;
    member(a, y)?;
    Ok(a.inf(x, y))
}

/// Cap on exhaustively enumerated triples; larger finite carriers are sampled.
const EXHAUSTIVE_TRIPLES: usize = 2_000_000;

/// Verifies the six MV axioms plus closure of ⊕ and ¬.
///
/// Finite carriers are checked on every triple; infinite ones on
/// `budget.samples` random triples drawn from landmarks and samples.
pub fn check_mv_axioms<A: MvStructure + ?Sized>(a: &A, budget: &Budget) -> Report {
    let mut rng = budget.rng();
    let mut t = Tally::new("mv-axioms", a.describe(), budget.seed);
    let p = probe(a, budget, &mut rng);
    let limit = if p.exhaustive { EXHAUSTIVE_TRIPLES } else { budget.samples };
    let (triples, all) = tuples::<3>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let _ = run_mv_axioms(a, &p.elems, &triples, &mut t);
    t.finish()
}

fn run_mv_axioms<A: MvStructure + ?Sized>(
    a: &A,
    elems: &[A::Elem],
    triples: &[[usize; 3]],
    t: &mut Tally,
) -> Result<(), Stop> {
    let r = |x: &A::Elem| a.render(x);
    let zero = a.zero();
    let one = a.one();
    t.ensure(a.contains(&zero), "closure: 0 in carrier", Vec::new)?;
    for x in elems {
        let nx = a.neg(x);
        t.ensure(a.contains(&nx), "closure: ¬x in carrier", || witness([("x", r(x))]))?;
        t.ensure(a.same(&a.oplus(x, &zero), x), "axiom 3: x⊕0=x", || witness([("x", r(x))]))?;
        t.ensure(a.same(&a.neg(&nx), x), "axiom 4: ¬¬x=x", || witness([("x", r(x))]))?;
        t.ensure(a.same(&a.oplus(x, &one), &one), "axiom 5: x⊕¬0=¬0", || witness([("x", r(x))]))?;
    }
    for &[i, j, k] in triples {
        let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
        let w3 = || witness([("x", r(x)), ("y", r(y)), ("z", r(z))]);
        let w2 = || witness([("x", r(x)), ("y", r(y))]);
        let xy = a.oplus(x, y);
        t.ensure(a.contains(&xy), "closure: x⊕y in carrier", w2)?;
        let lhs = a.oplus(x, &a.oplus(y, z));
        let rhs = a.oplus(&xy, z);
        t.ensure(a.same(&lhs, &rhs), "axiom 1: x⊕(y⊕z)=(x⊕y)⊕z", w3)?;
        t.ensure(a.same(&xy, &a.oplus(y, x)), "axiom 2: x⊕y=y⊕x", w2)?;
        let lhs = a.oplus(&a.neg(&a.oplus(&a.neg(x), y)), y);
        let rhs = a.oplus(&a.neg(&a.oplus(&a.neg(y), x)), x);
        t.ensure(a.same(&lhs, &rhs), "axiom 6: ¬(¬x⊕y)⊕y=¬(¬y⊕x)⊕x", w2)?;
    }
    Ok(())
}

/// Verifies that the natural order is a partial order, that `sup`/`inf`
/// are its join and meet, and that `¬` reverses it.
pub fn check_mv_order<A: MvStructure + ?Sized>(a: &A, budget: &Budget) -> Report {
    let mut rng = budget.rng();
    let mut t = Tally::new("mv-order", a.describe(), budget.seed);
    let p = probe(a, budget, &mut rng);
    let limit = if p.exhaustive { EXHAUSTIVE_TRIPLES } else { budget.samples };
    let (triples, all) = tuples::<3>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let _ = run_mv_order(a, &p.elems, &triples, &mut t);
    t.finish()
}

fn run_mv_order<A: MvStructure + ?Sized>(
    a: &A,
    elems: &[A::Elem],
    triples: &[[usize; 3]],
    t: &mut Tally,
) -> Result<(), Stop> {
    let r = |x: &A::Elem| a.render(x);
    for &[i, j, k] in triples {
        let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
        let w2 = || witness([("x", r(x)), ("y", r(y))]);
        let w3 = || witness([("x", r(x)), ("y", r(y)), ("z", r(z))]);
        t.ensure(a.leq(x, x), "≤ reflexive", || witness([("x", r(x))]))?;
        if a.leq(x, y) && a.leq(y, x) {
            t.ensure(a.same(x, y), "≤ antisymmetric", w2)?;
        }
        if a.leq(x, y) && a.leq(y, z) {
            t.ensure(a.leq(x, z), "≤ transitive", w3)?;
        }
        let s = a.sup(x, y);
        let m = a.inf(x, y);
        t.ensure(a.leq(x, &s) && a.leq(y, &s), "sup is an upper bound", w2)?;
        t.ensure(a.leq(&m, x) && a.leq(&m, y), "inf is a lower bound", w2)?;
        if a.leq(x, z) && a.leq(y, z) {
            t.ensure(a.leq(&s, z), "sup is least", w3)?;
        }
        if a.leq(z, x) && a.leq(z, y) {
            t.ensure(a.leq(z, &m), "inf is greatest", w3)?;
        }
        t.ensure(a.leq(x, y) == a.leq(&a.neg(y), &a.neg(x)), "¬ order-reversing", w2)?;
    }
    Ok(())
}

/// Searches for an MV-isomorphism between two finite algebras by
/// backtracking. Returns the image of each element of `a` in `elements()`
/// order, or `None` when none exists (or a carrier is not enumerable).
pub fn find_isomorphism<A, B>(a: &A, b: &B) -> Option<Vec<B::Elem>>
where
    A: MvStructure + ?Sized,
    B: MvStructure + ?Sized,
{
    let xs = a.elements()?;
    let ys = b.elements()?;
    if xs.len() != ys.len() {
        return None;
    }
    let pos_a = |x: &A::Elem| xs.iter().position(|e| a.same(e, x));
    let pos_b = |y: &B::Elem| ys.iter().position(|e| b.same(e, y));
    let n = xs.len();
    let oplus_a: Vec<Vec<usize>> =
        xs.iter().map(|x| xs.iter().map(|y| pos_a(&a.oplus(x, y)).unwrap_or(n)).collect()).collect();
    let oplus_b: Vec<Vec<usize>> =
        ys.iter().map(|x| ys.iter().map(|y| pos_b(&b.oplus(x, y)).unwrap_or(n)).collect()).collect();
    let neg_a: Vec<usize> = xs.iter().map(|x| pos_a(&a.neg(x)).unwrap_or(n)).collect();
    let neg_b: Vec<usize> = ys.iter().map(|x| pos_b(&b.neg(x)).unwrap_or(n)).collect();
    let zero_a = pos_a(&a.zero())?;
    let zero_b = pos_b(&b.zero())?;

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[zero_a] = zero_b;
    used[zero_b] = true;
    let consistent = |map: &[usize], i: usize| -> bool {
        let mi = map[i];
        if neg_a[i] < n && map[neg_a[i]] != usize::MAX && neg_b[mi] != map[neg_a[i]] {
            return false;
        }
        for j in 0..n {
            let mj = map[j];
            if mj == usize::MAX {
                continue;
            }
            for (p, q, mp, mq) in [(i, j, mi, mj), (j, i, mj, mi)] {
                let r = oplus_a[p][q];
                if r >= n || oplus_b[mp][mq] >= n {
                    return false;
                }
                if map[r] != usize::MAX && map[r] != oplus_b[mp][mq] {
                    return false;
                }
            }
        }
        true
    };
    fn search(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        let n = map.len();
        if i == n {
            return (0..n).all(|k| consistent(map, k));
        }
        if map[i] != usize::MAX {
            return consistent(map, i) && search(i + 1, map, used, consistent);
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            map[i] = cand;
            used[cand] = true;
            if consistent(map, i) && search(i + 1, map, used, consistent) {
                return true;
            }
            used[cand] = false;
            map[i] = usize::MAX;
        }
        false
    }
    if search(0, &mut map, &mut used, &consistent) {
        Some(map.into_iter().map(|k| ys[k].clone()).collect())
    } else {
        None
    }
}
