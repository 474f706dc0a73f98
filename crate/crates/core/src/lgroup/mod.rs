//! Abelian lattice-ordered groups with unit.
//!
//! The strong-unit axiom (`x ≥ 0 ⊢ ⋁ₙ x ≤ n·u`) is infinitary; it is made
//! checkable by requiring every representation to produce a bound witness
//! through [`LGroup::unit_bound`].

mod finite;
mod repr;

pub use finite::FiniteAbelian;
pub use repr::{LGroupElement, LGroupU};

use thiserror::Error;

use crate::carrier::{probe, tuples, Budget, Carrier};
use crate::report::{witness, Report, Stop, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LGroupError {
    #[error("element {element} is not in the carrier of {group}")]
    ElementNotInCarrier { element: String, group: String },
    #[error("invalid group: {0}")]
    Invalid(String),
}

/// `(G, +, −, 0)`.
pub trait AbelianGroup: Carrier {
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    /// `n·x`
    fn times(&self, n: u64, x: &Self::Elem) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = x.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.same(x, &self.zero())
    }
}

/// An abelian ℓ-group with a distinguished unit `u ≥ 0`.
pub trait LGroup: AbelianGroup {
    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool;
    fn inf(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sup(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn unit(&self) -> Self::Elem;

    /// Some `n` with `|x| ≤ n·u`; `None` when the unit is not strong enough
    /// to bound `x`.
    fn unit_bound(&self, x: &Self::Elem) -> Option<u64>;

    /// The elements of `[0, u]`, when that interval is finite.
    fn interval_elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// A random element of `[0, u]`.
    fn sample_interval(&self, rng: &mut dyn rand::RngCore) -> Self::Elem {
        let x = self.sample(rng);
        self.inf(&self.unit(), &self.sup(&self.zero(), &x))
    }

    /// `|x| = sup(x, −x)`
    fn abs(&self, x: &Self::Elem) -> Self::Elem {
        self.sup(x, &self.neg(x))
    }

    /// `x⁺ = sup(x, 0)`
    fn pos_part(&self, x: &Self::Elem) -> Self::Elem {
        self.sup(x, &self.zero())
    }

    /// `x⁻ = sup(−x, 0)`
    fn neg_part(&self, x: &Self::Elem) -> Self::Elem {
        self.sup(&self.neg(x), &self.zero())
    }

    fn in_unit_interval(&self, x: &Self::Elem) -> bool {
        self.leq(&self.zero(), x) && self.leq(x, &self.unit())
    }
}

fn member<G: LGroup + ?Sized>(g: &G, x: &G::Elem) -> Result<(), LGroupError> {
    if g.contains(x) {
        Ok(())
    } else {
        Err(LGroupError::ElementNotInCarrier { element: format!("{x:?}"), group: g.describe() })
    }
}

pub fn abs<G: LGroup + ?Sized>(g: &G, x: &G::Elem) -> Result<G::Elem, LGroupError> {
    member(g, x)?;
    Ok(g.abs(x))
}

pub fn pos_part<G: LGroup + ?Sized>(g: &G, x: &G::Elem) -> Result<G::Elem, LGroupError> {
    member(g, x)?;
    Ok(g.pos_part(x))
}

pub fn neg_part<G: LGroup + ?Sized>(g: &G, x: &G::Elem) -> Result<G::Elem, LGroupError> {
    member(g, x)?;
    Ok(g.neg_part(x))
}

/// Verifies axioms 1–14 of abelian ℓ-groups with strong unit on sampled
/// elements, plus closure, the decomposition `x = x⁺ − x⁻`, and soundness
/// of `unit_bound` in the `|x| ≤ n·u` form.
///
/// Conditional axioms are exercised both on raw samples and on instances
/// built to satisfy their premises (e.g. `z = inf(x, y)` for axiom 9).
pub fn check_lu_axioms<G: LGroup + ?Sized>(g: &G, budget: &Budget) -> Report {
    let mut rng = budget.rng();
    let mut t = Tally::new("lu-axioms", g.describe(), budget.seed);
    let p = probe(g, budget, &mut rng);
    let limit = if p.exhaustive { 1_000_000 } else { budget.samples };
    let (triples, all) = tuples::<3>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let _ = run_lu_axioms(g, &p.elems, &triples, &mut t);
    t.finish()
}

fn run_lu_axioms<G: LGroup + ?Sized>(
    g: &G,
    elems: &[G::Elem],
    triples: &[[usize; 3]],
    t: &mut Tally,
) -> Result<(), Stop> {
    let r = |x: &G::Elem| g.render(x);
    let zero = g.zero();
    let u = g.unit();
    t.ensure(g.contains(&zero) && g.contains(&u), "closure: 0, u in carrier", Vec::new)?;
    t.ensure(g.leq(&zero, &u), "axiom 13: u ≥ 0", || witness([("u", r(&u))]))?;
    for x in elems {
        let w = || witness([("x", r(x))]);
        let nx = g.neg(x);
        t.ensure(g.contains(&nx), "closure: −x in carrier", w)?;
        t.ensure(g.same(&g.add(x, &zero), x), "axiom 2: x+0=x", w)?;
        t.ensure(g.same(&g.add(x, &nx), &zero), "axiom 3: x+(−x)=0", w)?;
        t.ensure(g.leq(x, x), "axiom 5: x≤x", w)?;
        let (xp, xm) = (g.pos_part(x), g.neg_part(x));
        t.ensure(g.same(x, &g.sub(&xp, &xm)), "x = x⁺ − x⁻", w)?;
        t.ensure(g.same(&g.inf(&xp, &xm), &zero), "inf(x⁺, x⁻) = 0", w)?;
    }
    for x in elems.iter().filter(|x| g.leq(&zero, x)) {
        let w = || witness([("x", r(x))]);
        let n = g.unit_bound(x);
        t.ensure(n.is_some_and(|n| g.leq(x, &g.times(n, &u))), "axiom 14: x≥0 ⊢ ⋁ₙ x≤n·u", w)?;
    }
    for x in elems {
        let w = || witness([("x", r(x))]);
        let n = g.unit_bound(x);
        t.ensure(n.is_some_and(|n| g.leq(&g.abs(x), &g.times(n, &u))), "unit bound: |x| ≤ n·u", w)?;
    }
    for &[i, j, k] in triples {
        let (x, y, z) = (&elems[i], &elems[j], &elems[k]);
        let w2 = || witness([("x", r(x)), ("y", r(y))]);
        let w3 = || witness([("x", r(x)), ("y", r(y)), ("z", r(z))]);
        let xy = g.add(x, y);
        t.ensure(g.contains(&xy), "closure: x+y in carrier", w2)?;
        t.ensure(
            g.same(&g.add(x, &g.add(y, z)), &g.add(&xy, z)),
            "axiom 1: x+(y+z)=(x+y)+z",
            w3,
        )?;
        t.ensure(g.same(&xy, &g.add(y, x)), "axiom 4: x+y=y+x", w2)?;
        let m = g.inf(x, y);
        let s = g.sup(x, y);
        t.ensure(g.contains(&m) && g.contains(&s), "closure: inf, sup in carrier", w2)?;
        t.ensure(g.leq(&m, x) && g.leq(&m, y), "axiom 8: inf(x,y)≤x ∧ inf(x,y)≤y", w2)?;
        t.ensure(g.leq(x, &s) && g.leq(y, &s), "axiom 10: x≤sup(x,y) ∧ y≤sup(x,y)", w2)?;

        // conditional axioms on raw samples, then on constructed instances
        let lower = g.inf(&m, z);
        let upper = g.sup(&s, z);
        for (a, b) in [(x, y), (x, x)] {
            if g.leq(a, b) && g.leq(b, a) {
                t.ensure(g.same(a, b), "axiom 6: x≤y ∧ y≤x ⊢ x=y", || witness([("x", r(a)), ("y", r(b))]))?;
            }
        }
        for (a, b, c) in [(x, y, z), (x, &s, &upper)] {
            if g.leq(a, b) && g.leq(b, c) {
                t.ensure(g.leq(a, c), "axiom 7: x≤y ∧ y≤z ⊢ x≤z", || {
                    witness([("x", r(a)), ("y", r(b)), ("z", r(c))])
                })?;
            }
        }
        for c in [z, &m, &lower] {
            if g.leq(c, x) && g.leq(c, y) {
                t.ensure(g.leq(c, &m), "axiom 9: z≤x ∧ z≤y ⊢ z≤inf(x,y)", || {
                    witness([("x", r(x)), ("y", r(y)), ("z", r(c))])
                })?;
            }
        }
        for c in [z, &s, &upper] {
            if g.leq(x, c) && g.leq(y, c) {
                t.ensure(g.leq(&s, c), "axiom 11: x≤z ∧ y≤z ⊢ sup(x,y)≤z", || {
                    witness([("x", r(x)), ("y", r(y)), ("z", r(c))])
                })?;
            }
        }
        for (a, b) in [(x, y), (x, &s), (&m, x)] {
            if g.leq(a, b) {
                t.ensure(g.leq(&g.add(z, a), &g.add(z, b)), "axiom 12: x≤y ⊢ t+x≤t+y", || {
                    witness([("x", r(a)), ("y", r(b)), ("t", r(z))])
                })?;
            }
        }
    }
    Ok(())
}

/// Largest multiplier tried by [`check_torsion_free`] unless overridden.
pub const TORSION_MULTIPLIER: u64 = 50;

/// Checks `n·x ≠ 0` for every probed `x ≠ 0` and `n` in `1..=max_n`.
pub fn check_torsion_free<G: AbelianGroup + ?Sized>(g: &G, budget: &Budget, max_n: u64) -> Report {
    let mut rng = budget.rng();
    let mut t = Tally::new("torsion-free", g.describe(), budget.seed);
    let p = probe(g, budget, &mut rng);
    t.set_exhaustive(p.exhaustive);
    t.note(format!("multipliers 1..={max_n}"));
    let _ = (|| -> Result<(), Stop> {
        for x in p.elems.iter().filter(|x| !g.is_zero(x)) {
            let mut acc = g.zero();
            for n in 1..=max_n {
                acc = g.add(&acc, x);
                t.ensure(!g.is_zero(&acc), "torsion-free: n·x ≠ 0", || {
                    witness([("x", g.render(x)), ("n", n.to_string())])
                })?;
            }
        }
        Ok(())
    })();
    t.finish()
}

#[cfg(test)]
mod tests;
