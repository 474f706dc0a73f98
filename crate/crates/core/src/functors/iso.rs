use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::carrier::{probe, tuples, Budget, Carrier};
use crate::goodseq::{GoodSeqMonoid, GoodSequence};
use crate::hom::{check_l_hom, check_mv_hom, Hom};
use crate::lgroup::{AbelianGroup, LGroup};
use crate::mv::MvStructure;
use crate::report::{witness, Failure, Report, Stop, Tally};

use super::{gamma, l_group, FunctorError, Gamma, GroupElement, LGroupOfAlgebra, Owned};

/// A pair of mutually inverse maps together with the report that checks
/// they are isomorphisms.
pub struct IsoWitness<S: Carrier, T: Carrier> {
    pub forward: Hom<S, T>,
    pub backward: Hom<T, S>,
    pub report: Report,
}

/// The JSON face of an [`IsoWitness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoSummary {
    pub iso: bool,
    pub checked: u64,
    pub witness: Option<Failure>,
}

impl<S: Carrier, T: Carrier> IsoWitness<S, T> {
    pub fn is_iso(&self) -> bool {
        self.report.is_pass()
    }

    pub fn summary(&self) -> IsoSummary {
        IsoSummary { iso: self.is_iso(), checked: self.report.checked, witness: self.report.failure.clone() }
    }
}

const EXHAUSTIVE_PAIRS: usize = 1_000_000;
/// Greedy steps allowed when no unit bound is available.
const FALLBACK_STEPS: u64 = 64;

fn absorb_hom(t: &mut Tally, law: &str, r: Result<Report, crate::hom::HomError>) -> Result<(), Stop> {
    match r {
        Ok(rep) => t.absorb(&rep),
        Err(e) => t.ensure(false, law, || witness([("error", e.to_string())])),
    }
}

// ---------------------------------------------------------------- φ

/// `φ⁻¹([p,q]) = ⊕ᵢ (pᵢ ⊙ ¬qᵢ)`, the element `a` with `[(a),(0)] ~ [p,q]`
/// when `[p,q]` lies in `[0,u]`.
pub fn phi_inverse<A: MvStructure>(alg: &A, x: &GroupElement<A::Elem>) -> A::Elem {
    let zero = alg.zero();
    let n = x.pos.len().max(x.neg.len());
    (0..n).fold(alg.zero(), |acc, i| {
        let p = x.pos.components().get(i).unwrap_or(&zero);
        let q = x.neg.components().get(i).unwrap_or(&zero);
        alg.oplus(&acc, &alg.odot(p, &alg.neg(q)))
    })
}

/// `φ_A: A → ΓL(A)`, `a ↦ [(a),(0)]`, verified as an MV-isomorphism.
///
/// On finite `A` every pair of good sequences of length at most
/// `budget.max_len` lying in `[0,u]` is checked to be hit; otherwise
/// random interval elements are.
pub fn phi<A>(alg: &A, budget: &Budget) -> IsoWitness<A, Gamma<LGroupOfAlgebra<A>>>
where
    A: MvStructure + Owned,
{
    let l = l_group(alg.clone(), budget.max_len);
    let target = gamma(l.clone());
    let fl = l.clone();
    let forward = Hom::new(alg.clone(), target.clone(), "φ", move |a: &A::Elem| fl.embed(a.clone()));
    let ba = alg.clone();
    let backward = Hom::new(target.clone(), alg.clone(), "φ⁻¹", move |x: &GroupElement<A::Elem>| phi_inverse(&ba, x));
    let mut t = Tally::new("phi-iso", format!("φ: {} → {}", alg.describe(), target.describe()), budget.seed);
    let _ = run_phi(alg, &l, &target, &forward, &backward, budget, &mut t);
    let report = t.finish();
    IsoWitness { forward, backward, report }
}

fn run_phi<A: MvStructure + Owned>(
    alg: &A,
    l: &LGroupOfAlgebra<A>,
    target: &Gamma<LGroupOfAlgebra<A>>,
    forward: &Hom<A, Gamma<LGroupOfAlgebra<A>>>,
    backward: &Hom<Gamma<LGroupOfAlgebra<A>>, A>,
    budget: &Budget,
    t: &mut Tally,
) -> Result<(), Stop> {
    let mut rng = budget.rng();
    absorb_hom(t, "φ lands in ΓL(A)", check_mv_hom(forward, budget))?;
    let p = probe(alg, budget, &mut rng);
    let r = |a: &A::Elem| alg.render(a);
    let images: Vec<_> = p.elems.iter().map(|a| forward.apply(a)).collect();
    for (a, fa) in p.elems.iter().zip(&images) {
        t.ensure(alg.same(&backward.apply(fa), a), "φ⁻¹(φ(a)) = a", || witness([("a", r(a))]))?;
    }
    let limit = if p.exhaustive { EXHAUSTIVE_PAIRS } else { budget.samples };
    let (pairs, all) = tuples::<2>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    for &[i, j] in &pairs {
        let (a, b) = (&p.elems[i], &p.elems[j]);
        let w = || witness([("a", r(a)), ("b", r(b))]);
        if target.same(&images[i], &images[j]) {
            t.ensure(alg.same(a, b), "φ injective", w)?;
        }
        t.ensure(alg.leq(a, b) == l.leq(&images[i], &images[j]), "a ≤ b ⇔ φ(a) ≤ φ(b)", w)?;
    }
    let rl = |x: &GroupElement<A::Elem>| l.render(x);
    match l.monoid.enumerate(budget.max_len) {
        Some(seqs) => {
            let mut inside = 0usize;
            for pseq in &seqs {
                for qseq in &seqs {
                    let x = GroupElement::new(pseq.clone(), qseq.clone());
                    if !target.contains(&x) {
                        continue;
                    }
                    inside += 1;
                    t.ensure(target.same(&forward.apply(&backward.apply(&x)), &x), "φ surjective: φ(φ⁻¹(x)) = x", || {
                        witness([("x", rl(&x))])
                    })?;
                }
            }
            t.note(format!(
                "{inside} pairs of good sequences of length ≤ {} lie in [0,u], all in the image",
                budget.max_len
            ));
        }
        None => {
            t.set_exhaustive(false);
            for _ in 0..budget.samples {
                let x = target.sample(&mut rng);
                t.ensure(target.same(&forward.apply(&backward.apply(&x)), &x), "φ surjective: φ(φ⁻¹(x)) = x", || {
                    witness([("x", rl(&x))])
                })?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- ψ

fn greedy<G: LGroup>(g: &G, b: &G::Elem, steps: u64) -> (Vec<G::Elem>, bool) {
    let u = g.unit();
    let mut rem = b.clone();
    let mut out = Vec::new();
    for _ in 0..steps {
        if g.is_zero(&rem) {
            break;
        }
        let c = g.inf(&u, &rem);
        rem = g.sub(&rem, &c);
        out.push(c);
    }
    let done = g.is_zero(&rem);
    (out, done)
}

/// The good sequence `(b₁, …, bₙ)` over `Γ(G)` with `b₁ + … + bₙ = b`,
/// computed greedily as `bᵢ = inf(u, b − Σ_{j<i} b_j)`.
pub fn good_decompose<G: LGroup + Clone>(g: &G, b: &G::Elem) -> Result<GoodSequence<G::Elem>, FunctorError> {
    if !g.contains(b) {
        return Err(FunctorError::ElementNotInCarrier { element: format!("{b:?}"), structure: g.describe() });
    }
    if !g.leq(&g.zero(), b) {
        return Err(FunctorError::NegativeElement { element: g.render(b) });
    }
    let n = g.unit_bound(b).ok_or_else(|| FunctorError::Unbounded { element: g.render(b) })?;
    let (comps, done) = greedy(g, b, n);
    if !done {
        return Err(FunctorError::Invariant(format!("greedy decomposition of {} exceeds {n} steps", g.render(b))));
    }
    GoodSeqMonoid::new(gamma(g.clone()), 0)
        .normalize(comps)
        .map_err(|e| FunctorError::Invariant(format!("decomposition of {} is not good: {e}", g.render(b))))
}

/// `ψ_G(a) = [g(a⁺), g(a⁻)]`. Total: when the unit does not bound `a`, the
/// truncated greedy output is returned and the verification catches it.
pub fn psi_map<G: LGroup>(g: &G, l: &LGroupOfAlgebra<Gamma<G>>, a: &G::Elem) -> GroupElement<G::Elem> {
    let part = |x: G::Elem| {
        let steps = g.unit_bound(&x).map_or(FALLBACK_STEPS, |n| n + 1);
        l.monoid.trimmed(greedy(g, &x, steps).0)
    };
    GroupElement::new(part(g.pos_part(a)), part(g.neg_part(a)))
}

/// `f_G([p,q]) = Σp − Σq`
pub fn f_map<G: LGroup>(g: &G, x: &GroupElement<G::Elem>) -> G::Elem {
    let total = |s: &GoodSequence<G::Elem>| s.components().iter().fold(g.zero(), |acc, c| g.add(&acc, c));
    g.sub(&total(&x.pos), &total(&x.neg))
}

/// `ψ_G: G → LΓ(G)` with inverse `f_G`, verified as a unital
/// ℓ-isomorphism on sampled elements.
pub fn psi<G>(g: &G, budget: &Budget) -> IsoWitness<G, LGroupOfAlgebra<Gamma<G>>>
where
    G: LGroup + Owned,
{
    let l = l_group(gamma(g.clone()), budget.max_len);
    let (fg, fl) = (g.clone(), l.clone());
    let forward = Hom::new(g.clone(), l.clone(), "ψ", move |a: &G::Elem| psi_map(&fg, &fl, a));
    let bg = g.clone();
    let backward = Hom::new(l.clone(), g.clone(), "f", move |x: &GroupElement<G::Elem>| f_map(&bg, x));
    let mut t = Tally::new("psi-iso", format!("ψ: {} → {}", g.describe(), l.describe()), budget.seed);
    let _ = run_psi(g, &l, &forward, &backward, budget, &mut t);
    let report = t.finish();
    IsoWitness { forward, backward, report }
}

fn run_psi<G: LGroup + Owned>(
    g: &G,
    l: &LGroupOfAlgebra<Gamma<G>>,
    forward: &Hom<G, LGroupOfAlgebra<Gamma<G>>>,
    backward: &Hom<LGroupOfAlgebra<Gamma<G>>, G>,
    budget: &Budget,
    t: &mut Tally,
) -> Result<(), Stop> {
    let mut rng = budget.rng();
    let r = |x: &G::Elem| g.render(x);
    let rl = |x: &GroupElement<G::Elem>| l.render(x);
    let u_seq = l.unit();
    t.ensure(g.same(&backward.apply(&u_seq), &g.unit()), "f((u)) = u", || witness([("f((u))", r(&backward.apply(&u_seq)))]))?;
    let p = probe(g, budget, &mut rng);
    t.set_exhaustive(p.exhaustive);
    let images: Vec<_> = p.elems.iter().map(|a| forward.apply(a)).collect();
    for (a, pa) in p.elems.iter().zip(&images) {
        let w = || witness([("a", r(a)), ("ψ(a)", rl(pa))]);
        t.ensure(l.contains(pa), "ψ(a) is a pair of good sequences over Γ(G)", w)?;
        t.ensure(g.same(&backward.apply(pa), a), "f(ψ(a)) = a", w)?;
    }
    let back_probe = probe(l, budget, &mut rng);
    for y in &back_probe.elems {
        t.ensure(l.same(&forward.apply(&backward.apply(y)), y), "ψ(f(y)) = y", || witness([("y", rl(y))]))?;
    }
    let (pairs, _) = tuples::<2>(p.elems.len(), budget.samples, &mut rng);
    for &[i, j] in &pairs {
        let (a, b) = (&p.elems[i], &p.elems[j]);
        t.ensure(g.leq(a, b) == l.leq(&images[i], &images[j]), "a ≤ b ⇔ ψ(a) ≤ ψ(b)", || {
            witness([("a", r(a)), ("b", r(b))])
        })?;
    }
    absorb_hom(t, "ψ lands in LΓ(G)", check_l_hom(forward, budget))?;
    absorb_hom(t, "f lands in G", check_l_hom(backward, budget))?;
    Ok(())
}

// ---------------------------------------------------------------- functoriality

/// `Γ(h) = h|[0,u]`, after checking on probed interval elements that the
/// image stays in the target interval.
pub fn gamma_hom<G, H>(h: &Hom<G, H>, budget: &Budget) -> Result<Hom<Gamma<G>, Gamma<H>>, FunctorError>
where
    G: LGroup + Owned,
    H: LGroup + Owned,
{
    let (src, tgt) = (gamma(h.source.clone()), gamma(h.target.clone()));
    let mut rng = budget.rng();
    for x in probe(&src, budget, &mut rng).elems {
        let y = h.apply(&x);
        if !tgt.contains(&y) {
            return Err(FunctorError::ImageEscapesInterval {
                element: src.render(&x),
                image: format!("{y:?}"),
                target: tgt.describe(),
            });
        }
    }
    let inner = h.clone();
    Ok(Hom::new(src, tgt, format!("Γ({})", h.label), move |x: &G::Elem| inner.apply(x)))
}

/// `L(f)`: `f` applied to every component of both sequences.
pub fn l_hom<A, B>(f: &Hom<A, B>, max_len: usize) -> Hom<LGroupOfAlgebra<A>, LGroupOfAlgebra<B>>
where
    A: MvStructure + Owned,
    B: MvStructure + Owned,
{
    let (la, lb) = (l_group(f.source.clone(), max_len), l_group(f.target.clone(), max_len));
    let inner = f.clone();
    let m = lb.monoid.clone();
    Hom::new(la, lb, format!("L({})", f.label), move |x: &GroupElement<A::Elem>| {
        let map = |s: &GoodSequence<A::Elem>| m.trimmed(s.components().iter().map(|c| inner.apply(c)).collect());
        GroupElement::new(map(&x.pos), map(&x.neg))
    })
}

/// `φ_B ∘ h = ΓL(h) ∘ φ_A` on probed elements of `A`.
pub fn check_phi_naturality<A, B>(h: &Hom<A, B>, budget: &Budget) -> Report
where
    A: MvStructure + Owned,
    B: MvStructure + Owned,
{
    let lh = l_hom(h, budget.max_len);
    let (la, lb) = (&lh.source, &lh.target);
    let mut rng = budget.rng();
    let mut t = Tally::new("phi-naturality", format!("h = {}", h.label), budget.seed);
    let p = probe(&h.source, budget, &mut rng);
    t.set_exhaustive(p.exhaustive);
    let _ = (|| -> Result<(), Stop> {
        for a in &p.elems {
            let left = lb.embed(h.apply(a));
            let right = lh.apply(&la.embed(a.clone()));
            t.ensure(lb.contains(&right) && lb.same(&left, &right), "φ_B(h(a)) = ΓL(h)(φ_A(a))", || {
                witness([("a", h.source.render(a)), ("left", lb.render(&left)), ("right", lb.render(&right))])
            })?;
        }
        Ok(())
    })();
    t.finish()
}

/// `ψ_H ∘ h = LΓ(h) ∘ ψ_G` on probed elements of `G`.
pub fn check_psi_naturality<G, H>(h: &Hom<G, H>, budget: &Budget) -> Report
where
    G: LGroup + Owned,
    H: LGroup + Owned,
{
    let mut t = Tally::new("psi-naturality", format!("h = {}", h.label), budget.seed);
    let gh = match gamma_hom(h, budget) {
        Ok(gh) => gh,
        Err(e) => {
            let _ = t.ensure(false, "Γ(h) is defined", || witness([("error", e.to_string())]));
            return t.finish();
        }
    };
    let lgh = l_hom(&gh, budget.max_len);
    let (lg, lh) = (&lgh.source, &lgh.target);
    let mut rng = budget.rng();
    let p = probe(&h.source, budget, &mut rng);
    t.set_exhaustive(p.exhaustive);
    let _ = (|| -> Result<(), Stop> {
        for x in &p.elems {
            let left = psi_map(&h.target, lh, &h.apply(x));
            let right = lgh.apply(&psi_map(&h.source, lg, x));
            t.ensure(lh.contains(&right) && lh.same(&left, &right), "ψ_H(h(x)) = LΓ(h)(ψ_G(x))", || {
                witness([("x", h.source.render(x)), ("left", lh.render(&left)), ("right", lh.render(&right))])
            })?;
        }
        Ok(())
    })();
    t.finish()
}

// ---------------------------------------------------------------- L(A) internals

const SEARCH_LIMIT: usize = 100_000;

/// A good sequence `e` with `[e,(0)] ~ x`, for `x ≥ 0` in `L(A)`.
///
/// Finite algebras are searched for `e` with `q + e = p`; otherwise `x` is
/// decomposed greedily in `L(A)` and each component pulled back along φ.
pub fn positive_representative<A: MvStructure + Clone>(
    l: &LGroupOfAlgebra<A>,
    x: &GroupElement<A::Elem>,
) -> Result<GoodSequence<A::Elem>, FunctorError> {
    if !l.contains(x) {
        return Err(FunctorError::ElementNotInCarrier { element: format!("{x:?}"), structure: l.describe() });
    }
    if !l.leq(&l.zero(), x) {
        return Err(FunctorError::NegativeElement { element: l.render(x) });
    }
    let m = &l.monoid;
    let found = match m.enumerate(x.pos.len()) {
        Some(all) if all.len() <= SEARCH_LIMIT => all.into_iter().find(|e| m.same(&m.sum(&x.neg, e), &x.pos)),
        _ => {
            let (comps, _) = greedy(l, x, l.unit_bound(x).unwrap_or(0) + 1);
            let pulled: Vec<A::Elem> = comps.iter().map(|c| phi_inverse(l.algebra(), c)).collect();
            m.normalize(pulled).ok().filter(|e| m.same(&m.sum(&x.neg, e), &x.pos))
        }
    };
    found.ok_or_else(|| FunctorError::Invariant(format!("no positive representative for {}", l.render(x))))
}

/// For `x ≥ 0` in `L(A)` with positive representative `e`: `x ≤ len(e)·u`.
pub fn check_strong_unit<A: MvStructure + Clone>(alg: &A, budget: &Budget) -> Report {
    let l = l_group(alg.clone(), budget.max_len);
    let mut rng = budget.rng();
    let mut t = Tally::new("strong-unit", l.describe(), budget.seed);
    let p = probe(&l, budget, &mut rng);
    t.set_exhaustive(false);
    let _ = (|| -> Result<(), Stop> {
        for x in &p.elems {
            let y = l.pos_part(x);
            let w = || witness([("x", l.render(&y))]);
            match positive_representative(&l, &y) {
                Ok(e) => {
                    let bound = l.times(e.len() as u64, &l.unit());
                    t.ensure(l.leq(&y, &bound), "x ≥ 0 ⊢ x ≤ len(e)·u", w)?;
                }
                Err(_) => t.ensure(false, "x ≥ 0 has a positive representative", w)?,
            }
        }
        Ok(())
    })();
    t.finish()
}

/// Cross-sum equality is an equivalence and a congruence for `+`, `−`,
/// `inf`, `sup`. Equal pairs are manufactured as `[p+r, q+r]`.
pub fn check_congruence<A: MvStructure + Clone>(alg: &A, budget: &Budget) -> Report {
    let l = l_group(alg.clone(), budget.max_len);
    let mut rng = budget.rng();
    let mut t = Tally::new("group-eq-congruence", l.describe(), budget.seed);
    t.set_exhaustive(false);
    let shift = |x: &GroupElement<A::Elem>, rng: &mut dyn RngCore| {
        let r = l.monoid.sample(rng);
        GroupElement::new(l.monoid.sum(&x.pos, &r), l.monoid.sum(&x.neg, &r))
    };
    let _ = (|| -> Result<(), Stop> {
        for _ in 0..budget.samples {
            let (x, z) = (l.sample(&mut rng), l.sample(&mut rng));
            let (x1, x2) = (shift(&x, &mut rng), shift(&x, &mut rng));
            let w = || witness([("x", l.render(&x)), ("x'", l.render(&x1)), ("z", l.render(&z))]);
            t.ensure(l.same(&x, &x), "reflexive", w)?;
            t.ensure(l.same(&x, &x1) && l.same(&x1, &x), "symmetric", w)?;
            t.ensure(l.same(&x1, &x2), "transitive", w)?;
            t.ensure(l.same(&l.add(&x, &z), &l.add(&x1, &z)), "congruence for +", w)?;
            t.ensure(l.same(&l.neg(&x), &l.neg(&x1)), "congruence for −", w)?;
            t.ensure(l.same(&l.inf(&x, &z), &l.inf(&x1, &z)), "congruence for inf", w)?;
            t.ensure(l.same(&l.sup(&x, &z), &l.sup(&x1, &z)), "congruence for sup", w)?;
            t.ensure(l.leq(&x, &z) == l.leq(&x1, &z), "congruence for ≤", w)?;
        }
        Ok(())
    })();
    t.finish()
}
