use std::convert::Infallible;

use crate::carrier::{probe, tuples, Budget, Carrier};
use crate::functors::{gamma, gamma_hom, l_group, l_hom, phi, phi_inverse, psi, psi_map, Gamma, GroupElement};
use crate::functors::{good_decompose, LGroupOfAlgebra, Owned};
use crate::hom::{check_l_hom, check_mv_hom, Hom, HomError};
use crate::lgroup::{check_lu_axioms, AbelianGroup, LGroup};
use crate::mv::{check_mv_axioms, MvStructure};
use crate::report::{witness, Binding, Report, Stop, Tally};

use super::{ContinuousMap, FiniteSpace, Sheaf, SheafError};

/// Stalkwise `Γ`, with each restriction restricted to the unit intervals.
pub fn gamma_sheaf<G: LGroup + Owned>(f: &Sheaf<G>, budget: &Budget) -> Result<Sheaf<Gamma<G>>, SheafError> {
    let space = &f.space;
    f.map_stalks(
        |_, g| Ok(gamma(g.clone())),
        |(x, y), r| {
            gamma_hom(r, budget).map_err(|source| SheafError::RestrictionEscapesInterval {
                from: space.name(x).into(),
                to: space.name(y).into(),
                source,
            })
        },
    )
}

/// Stalkwise `L`, with `L(r)` as restrictions.
pub fn l_sheaf<A: MvStructure + Owned>(g: &Sheaf<A>, max_len: usize) -> Sheaf<LGroupOfAlgebra<A>> {
    let out: Result<_, Infallible> =
        g.map_stalks(|_, a| Ok(l_group(a.clone(), max_len)), |_, r| Ok(l_hom(r, max_len)));
    match out {
        Ok(s) => s,
        Err(never) => match never {},
    }
}

/// `f*F`: the stalk at `x` is `F_{f(x)}`.
pub fn inverse_image<S: Carrier + Owned>(f: &ContinuousMap, sheaf: &Sheaf<S>) -> Result<Sheaf<S>, SheafError> {
    if f.target != sheaf.space {
        return Err(SheafError::SpaceMismatch);
    }
    let stalks = (0..f.source.len()).map(|x| sheaf.stalk(f.apply(x)).clone()).collect();
    let restrictions =
        f.source.strict_pairs().into_iter().map(|(x, y)| ((x, y), sheaf.restriction(f.apply(x), f.apply(y)))).collect();
    Sheaf::new(f.source.clone(), stalks, restrictions)
}

fn absorb_hom(t: &mut Tally, law: &str, r: Result<Report, HomError>) -> Result<(), Stop> {
    match r {
        Ok(rep) => t.absorb(&rep),
        Err(e) => t.ensure(false, law, || witness([("error", e.to_string())])),
    }
}

fn pair_law(space: &FiniteSpace, x: usize, y: usize) -> Vec<Binding> {
    witness([("x", space.name(x).to_string()), ("y", space.name(y).to_string())])
}

/// `r(y,z) ∘ r(x,y) = r(x,z)` on probed elements of every `F_x`.
fn functoriality<S: Carrier + Owned>(f: &Sheaf<S>, budget: &Budget, t: &mut Tally) -> Result<(), Stop> {
    let space = &f.space;
    let n = space.len();
    let mut rng = budget.rng();
    for x in 0..n {
        let p = probe(f.stalk(x), budget, &mut rng);
        if !p.exhaustive {
            t.set_exhaustive(false);
        }
        for y in (0..n).filter(|&y| y != x && space.leq(x, y)) {
            for z in (0..n).filter(|&z| z != y && space.leq(y, z)) {
                for a in &p.elems {
                    let two = f.restrict(y, z, &f.restrict(x, y, a));
                    t.ensure(f.stalk(z).same(&two, &f.restrict(x, z, a)), "r(y,z) ∘ r(x,y) = r(x,z)", || {
                        let mut w = pair_law(space, x, y);
                        w.push(Binding::new("z", space.name(z)));
                        w.push(Binding::new("a", f.stalk(x).render(a)));
                        w
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Every stalk is an MV-algebra, every restriction an MV-homomorphism, and
/// restrictions compose.
pub fn check_mv_sheaf<A: MvStructure + Owned>(f: &Sheaf<A>, budget: &Budget) -> Report {
    let mut t = Tally::new("mv-sheaf", f.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        for s in &f.stalks {
            t.absorb(&check_mv_axioms(s, budget))?;
        }
        for (x, y) in f.space.strict_pairs() {
            absorb_hom(&mut t, "restriction lands in the stalk", check_mv_hom(&f.restriction(x, y), budget))?;
        }
        functoriality(f, budget, &mut t)
    })();
    t.finish()
}

/// Every stalk is an ℓ-group with strong unit, every restriction a unital
/// ℓ-homomorphism, and restrictions compose.
pub fn check_l_sheaf<G: LGroup + Owned>(f: &Sheaf<G>, budget: &Budget) -> Report {
    let mut t = Tally::new("l-sheaf", f.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        for s in &f.stalks {
            t.absorb(&check_lu_axioms(s, budget))?;
        }
        for (x, y) in f.space.strict_pairs() {
            absorb_hom(&mut t, "restriction lands in the stalk", check_l_hom(&f.restriction(x, y), budget))?;
        }
        functoriality(f, budget, &mut t)
    })();
    t.finish()
}

/// `ΓL(G) ≅ G` stalkwise via `φ`, and the isomorphisms commute with
/// restrictions: `ΓL(r)(φ_x(a)) = φ_y(r(a))`.
pub fn check_phi_sheaf<A: MvStructure + Owned>(g: &Sheaf<A>, budget: &Budget) -> Report {
    let mut t = Tally::new("sheaf-phi-roundtrip", g.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        let h = match gamma_sheaf(&l_sheaf(g, budget.max_len), budget) {
            Ok(h) => h,
            Err(e) => return t.ensure(false, "Γ(L(G)) is defined", || witness([("error", e.to_string())])),
        };
        let space = &g.space;
        let mut rng = budget.rng();
        for x in 0..space.len() {
            let w = phi(g.stalk(x), budget);
            t.absorb(&w.report)?;
            let p = probe(g.stalk(x), budget, &mut rng);
            if !p.exhaustive {
                t.set_exhaustive(false);
            }
            for a in &p.elems {
                let image = w.forward.apply(a);
                t.ensure(h.stalk(x).contains(&image), "φ_x(a) ∈ ΓL(G)_x", || {
                    witness([("x", space.name(x).to_string()), ("a", g.stalk(x).render(a))])
                })?;
                for y in (0..space.len()).filter(|&y| y != x && space.leq(x, y)) {
                    let target = h.stalk(y);
                    let left = h.restrict(x, y, &image);
                    let right = target.group.embed(g.restrict(x, y, a));
                    t.ensure(target.same(&left, &right), "ΓL(r)(φ_x(a)) = φ_y(r(a))", || {
                        let mut v = pair_law(space, x, y);
                        v.push(Binding::new("a", g.stalk(x).render(a)));
                        v
                    })?;
                }
            }
        }
        Ok(())
    })();
    t.finish()
}

/// `LΓ(F) ≅ F` stalkwise via `ψ`, and the isomorphisms commute with
/// restrictions: `LΓ(r)(ψ_x(a)) = ψ_y(r(a))`.
pub fn check_psi_sheaf<G: LGroup + Owned>(f: &Sheaf<G>, budget: &Budget) -> Report {
    let mut t = Tally::new("sheaf-psi-roundtrip", f.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        let k = match gamma_sheaf(f, budget) {
            Ok(gf) => l_sheaf(&gf, budget.max_len),
            Err(e) => return t.ensure(false, "Γ(F) is defined", || witness([("error", e.to_string())])),
        };
        let space = &f.space;
        let mut rng = budget.rng();
        for x in 0..space.len() {
            t.absorb(&psi(f.stalk(x), budget).report)?;
            let p = probe(f.stalk(x), budget, &mut rng);
            if !p.exhaustive {
                t.set_exhaustive(false);
            }
            for a in &p.elems {
                let image = psi_map(f.stalk(x), k.stalk(x), a);
                for y in (0..space.len()).filter(|&y| y != x && space.leq(x, y)) {
                    let left = k.restrict(x, y, &image);
                    let right = psi_map(f.stalk(y), k.stalk(y), &f.restrict(x, y, a));
                    t.ensure(k.stalk(y).same(&left, &right), "LΓ(r)(ψ_x(a)) = ψ_y(r(a))", || {
                        let mut v = pair_law(space, x, y);
                        v.push(Binding::new("a", f.stalk(x).render(a)));
                        v
                    })?;
                }
            }
        }
        Ok(())
    })();
    t.finish()
}

/// For every open `U`: the unit interval of `F(U)` and the sections of
/// `Γ(F)` over `U` have the same elements and the same `⊕`, `¬`.
pub fn check_gamma_sections<G: LGroup + Owned>(f: &Sheaf<G>, budget: &Budget) -> Report {
    let mut t = Tally::new("gamma-sections", f.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        let gf = match gamma_sheaf(f, budget) {
            Ok(gf) => gf,
            Err(e) => return t.ensure(false, "Γ(F) is defined", || witness([("error", e.to_string())])),
        };
        let mut rng = budget.rng();
        for open in f.space.opens() {
            let left = gamma(f.sections(&open).expect("listed opens are open"));
            let right = gf.sections(&open).expect("listed opens are open");
            let u = || witness([("U", format!("{{{}}}", f.space.render_set(&open)))]);
            let lp = probe(&left, budget, &mut rng);
            let rp = probe(&right, budget, &mut rng);
            if !(lp.exhaustive && rp.exhaustive) {
                t.set_exhaustive(false);
            }
            for s in &lp.elems {
                t.ensure(right.contains(s), "[0,u] in F(U) ⊆ Γ(F)(U)", || {
                    let mut w = u();
                    w.push(Binding::new("s", left.render(s)));
                    w
                })?;
            }
            for s in &rp.elems {
                t.ensure(left.contains(s), "Γ(F)(U) ⊆ [0,u] in F(U)", || {
                    let mut w = u();
                    w.push(Binding::new("s", right.render(s)));
                    w
                })?;
                t.ensure(left.same(&left.neg(s), &right.neg(s)), "¬ agrees", u)?;
            }
            let (pairs, _) = tuples::<2>(rp.elems.len(), budget.samples, &mut rng);
            for &[i, j] in &pairs {
                let (a, b) = (&rp.elems[i], &rp.elems[j]);
                t.ensure(left.same(&left.oplus(a, b), &right.oplus(a, b)), "⊕ agrees", || {
                    let mut w = u();
                    w.extend(witness([("s", right.render(a)), ("t", right.render(b))]));
                    w
                })?;
            }
        }
        Ok(())
    })();
    t.finish()
}

/// Stalk descriptions agree and restrictions agree on probed elements.
fn same_sheaf<S: Carrier + Owned>(
    left: &Sheaf<S>,
    right: &Sheaf<S>,
    law: &str,
    budget: &Budget,
    t: &mut Tally,
) -> Result<(), Stop> {
    let space = &left.space;
    let mut rng = budget.rng();
    for x in 0..space.len() {
        let (ls, rs) = (left.stalk(x), right.stalk(x));
        t.ensure(ls.describe() == rs.describe(), law, || {
            witness([("x", space.name(x).to_string()), ("left", ls.describe()), ("right", rs.describe())])
        })?;
        let p = probe(ls, budget, &mut rng);
        if !p.exhaustive {
            t.set_exhaustive(false);
        }
        for y in (0..space.len()).filter(|&y| y != x && space.leq(x, y)) {
            for a in &p.elems {
                let (l, r) = (left.restrict(x, y, a), right.restrict(x, y, a));
                t.ensure(left.stalk(y).same(&l, &r), law, || {
                    let mut w = pair_law(space, x, y);
                    w.push(Binding::new("a", ls.render(a)));
                    w
                })?;
            }
        }
    }
    Ok(())
}

/// Naturality of the equivalence in the space: `L(f*G) = f*(L(G))` and
/// `Γ(f*F) = f*(Γ(F))` for `F = L(G)`, stalk by stalk and restriction by
/// restriction; and pulling sections back along `f` is an MV-homomorphism
/// `G(V) → f*G(f⁻¹V)` for every open `V`.
pub fn check_sheaf_naturality<A: MvStructure + Owned>(f: &ContinuousMap, g: &Sheaf<A>, budget: &Budget) -> Report {
    let mut t = Tally::new("sheaf-naturality", format!("f = {}; G = {}", f.describe(), g.describe()), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        let fail = |t: &mut Tally, e: SheafError| t.ensure(false, "inverse image is defined", || witness([("error", e.to_string())]));
        let pulled = match inverse_image(f, g) {
            Ok(p) => p,
            Err(e) => return fail(&mut t, e),
        };
        let lg = l_sheaf(g, budget.max_len);
        let right = match inverse_image(f, &lg) {
            Ok(r) => r,
            Err(e) => return fail(&mut t, e),
        };
        same_sheaf(&l_sheaf(&pulled, budget.max_len), &right, "L(f*G) = f*L(G)", budget, &mut t)?;
        let gammas = inverse_image(f, &lg).and_then(|p| Ok((gamma_sheaf(&p, budget)?, gamma_sheaf(&lg, budget)?)));
        let (left, gl) = match gammas {
            Ok(v) => v,
            Err(e) => return fail(&mut t, e),
        };
        let right = match inverse_image(f, &gl) {
            Ok(r) => r,
            Err(e) => return fail(&mut t, e),
        };
        same_sheaf(&left, &right, "Γ(f*F) = f*Γ(F)", budget, &mut t)?;
        for v in f.target.opens() {
            let pre: Vec<usize> = (0..f.source.len()).filter(|&x| v.contains(&f.apply(x))).collect();
            let src = g.sections(&v).expect("listed opens are open");
            let tgt = match pulled.sections(&pre) {
                Ok(s) => s,
                Err(e) => return fail(&mut t, e),
            };
            let (fm, sp) = (f.clone(), src.clone());
            let pull = Hom::new(src, tgt, "f*", move |s: &Vec<A::Elem>| {
                (0..fm.source.len())
                    .filter_map(|x| sp.project(s, fm.apply(x)))
                    .collect::<Vec<_>>()
            });
            absorb_hom(&mut t, "f* maps sections to sections", check_mv_hom(&pull, budget))?;
        }
        Ok(())
    })();
    t.finish()
}

/// On the one-point space the sheaf functors are the classical ones:
/// sections of `L` of the constant sheaf `A` are `L(A)`, and sections of
/// `Γ` of the constant sheaf `L(A)` are `ΓL(A)`, operation for operation.
pub fn check_point_reduction<A: MvStructure + Owned>(alg: &A, budget: &Budget) -> Report {
    let mut t = Tally::new("point-reduction", alg.describe(), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        let pt = FiniteSpace::point();
        let g = Sheaf::constant(pt.clone(), alg.clone());
        let ls = l_sheaf(&g, budget.max_len);
        let classical = l_group(alg.clone(), budget.max_len);
        let sec = ls.sections(&[0]).expect("point is open");
        let mut rng = budget.rng();
        t.ensure(ls.stalk(0).describe() == classical.describe(), "L-stalk = L(A)", Vec::new)?;
        t.ensure(sec.same(&sec.unit(), &vec![classical.unit()]), "unit agrees", Vec::new)?;
        let p = probe(&classical, budget, &mut rng);
        t.set_exhaustive(false);
        let one = |x: &GroupElement<A::Elem>| vec![x.clone()];
        let (pairs, _) = tuples::<2>(p.elems.len(), budget.samples, &mut rng);
        for &[i, j] in &pairs {
            let (x, y) = (&p.elems[i], &p.elems[j]);
            let w = || witness([("x", classical.render(x)), ("y", classical.render(y))]);
            t.ensure(sec.same(&sec.add(&one(x), &one(y)), &one(&classical.add(x, y))), "+ agrees", w)?;
            t.ensure(sec.same(&sec.inf(&one(x), &one(y)), &one(&classical.inf(x, y))), "inf agrees", w)?;
            t.ensure(sec.same(&sec.sup(&one(x), &one(y)), &one(&classical.sup(x, y))), "sup agrees", w)?;
            t.ensure(LGroup::leq(&sec, &one(x), &one(y)) == classical.leq(x, y), "≤ agrees", w)?;
        }
        let gs = match gamma_sheaf(&ls, budget) {
            Ok(gs) => gs,
            Err(e) => return t.ensure(false, "Γ(L(A)) is defined", || witness([("error", e.to_string())])),
        };
        let gsec = gs.sections(&[0]).expect("point is open");
        let cg = gamma(classical.clone());
        let p = probe(&cg, budget, &mut rng);
        let (pairs, _) = tuples::<2>(p.elems.len(), budget.samples, &mut rng);
        for &[i, j] in &pairs {
            let (x, y) = (&p.elems[i], &p.elems[j]);
            let w = || witness([("x", cg.render(x)), ("y", cg.render(y))]);
            t.ensure(gsec.contains(&one(x)), "[0,u] agrees", w)?;
            t.ensure(gsec.same(&gsec.oplus(&one(x), &one(y)), &one(&cg.oplus(x, y))), "⊕ agrees", w)?;
            t.ensure(gsec.same(&MvStructure::neg(&gsec, &one(x)), &one(&MvStructure::neg(&cg, x))), "¬ agrees", w)?;
        }
        let asec = g.sections(&[0]).expect("point is open");
        let p = probe(alg, budget, &mut rng);
        let (pairs, _) = tuples::<2>(p.elems.len(), budget.samples, &mut rng);
        for &[i, j] in &pairs {
            let (a, b) = (&p.elems[i], &p.elems[j]);
            let w = || witness([("a", alg.render(a)), ("b", alg.render(b))]);
            t.ensure(
                asec.same(&asec.oplus(&vec![a.clone()], &vec![b.clone()]), &vec![alg.oplus(a, b)]),
                "sections of the constant sheaf are A",
                w,
            )?;
        }
        Ok(())
    })();
    t.finish()
}

/// Compares `L(G(U))` with the sections of `L(G)` over `U` through the
/// canonical map `[p, q] ↦ ([p_x, q_x])_x`: it is a unital ℓ-homomorphism,
/// injective on probed pairs, and every probed section has a preimage
/// built from its greedy decomposition. The result is a record; nothing in
/// the equivalence forces it either way.
pub fn compare_l_sections<A: MvStructure + Owned>(
    g: &Sheaf<A>,
    open: &[usize],
    budget: &Budget,
) -> Result<Report, SheafError> {
    let secs = g.sections(open)?;
    let lg = l_sheaf(g, budget.max_len);
    let target = lg.sections(open)?;
    let lsec = l_group(secs.clone(), budget.max_len);
    let stalks: Vec<LGroupOfAlgebra<A>> = secs.points().iter().map(|&x| lg.stalk(x).clone()).collect();
    let kstalks = stalks.clone();
    let kappa = Hom::new(lsec.clone(), target.clone(), "κ", move |x: &GroupElement<Vec<A::Elem>>| {
        kstalks
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let proj = |s: &crate::goodseq::GoodSequence<Vec<A::Elem>>| {
                    l.monoid.trimmed(s.components().iter().map(|c| c[i].clone()).collect())
                };
                GroupElement::new(proj(&x.pos), proj(&x.neg))
            })
            .collect()
    });
    let mut t = Tally::new("l-sections", format!("L({}) vs L(G)({{{}}})", secs.describe(), g.space.render_set(open)), budget.seed);
    let _ = (|| -> Result<(), Stop> {
        absorb_hom(&mut t, "κ lands in the sections", check_l_hom(&kappa, budget))?;
        let mut rng = budget.rng();
        let p = probe(&lsec, budget, &mut rng);
        let images: Vec<_> = p.elems.iter().map(|x| kappa.apply(x)).collect();
        let (pairs, _) = tuples::<2>(p.elems.len(), budget.samples, &mut rng);
        for &[i, j] in &pairs {
            if target.same(&images[i], &images[j]) {
                t.ensure(lsec.same(&p.elems[i], &p.elems[j]), "κ injective", || {
                    witness([("x", lsec.render(&p.elems[i])), ("y", lsec.render(&p.elems[j]))])
                })?;
            }
        }
        let q = probe(&target, budget, &mut rng);
        for s in &q.elems {
            let pre = preimage(&secs, &lsec, &stalks, &target, s);
            t.ensure(pre.as_ref().is_some_and(|x| target.same(&kappa.apply(x), s)), "κ surjective", || {
                witness([("s", target.render(s))])
            })?;
        }
        Ok(())
    })();
    Ok(t.finish())
}

type LFamily<A> = Vec<GroupElement<<A as crate::carrier::Carrier>::Elem>>;

fn preimage<A: MvStructure + Owned>(
    secs: &super::Sections<A>,
    lsec: &LGroupOfAlgebra<super::Sections<A>>,
    stalks: &[LGroupOfAlgebra<A>],
    target: &super::Sections<LGroupOfAlgebra<A>>,
    s: &LFamily<A>,
) -> Option<GroupElement<Vec<A::Elem>>> {
    let part = |x: LFamily<A>| {
        let seq = good_decompose(target, &x).ok()?;
        let comps: Vec<Vec<A::Elem>> = seq
            .components()
            .iter()
            .map(|c| c.iter().zip(stalks).map(|(e, l)| phi_inverse(l.algebra(), e)).collect())
            .collect();
        if comps.iter().any(|c| !secs.contains(c)) {
            return None;
        }
        lsec.monoid.normalize(comps).ok()
    };
    Some(GroupElement::new(part(target.pos_part(s))?, part(target.neg_part(s))?))
}
