//! Structure-preserving maps and their verification.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::carrier::{probe, tuples, Budget, Carrier};
use crate::lgroup::LGroup;
use crate::mv::MvStructure;
use crate::report::{witness, Report, Stop, Tally};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("image {image} of {element} is not in the target {target}")]
    SourceTargetMismatch { element: String, image: String, target: String },
}

type MapFn<S, T> = dyn Fn(&<S as Carrier>::Elem) -> <T as Carrier>::Elem + Send + Sync;

/// A map between carriers. Whether it is an MV- or ℓ-homomorphism is a
/// property checked by [`check_mv_hom`] / [`check_l_hom`], not an
/// invariant of the type.
pub struct Hom<S: Carrier, T: Carrier> {
    pub source: S,
    pub target: T,
    pub label: String,
    map: Arc<MapFn<S, T>>,
}

impl<S: Carrier + Clone, T: Carrier + Clone> Clone for Hom<S, T> {
    fn clone(&self) -> Self {
        Hom { source: self.source.clone(), target: self.target.clone(), label: self.label.clone(), map: self.map.clone() }
    }
}

impl<S: Carrier, T: Carrier> fmt::Debug for Hom<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({}: {} → {})", self.label, self.source.describe(), self.target.describe())
    }
}

impl<S: Carrier, T: Carrier> Hom<S, T> {
    pub fn new<F>(source: S, target: T, label: impl Into<String>, map: F) -> Self
    where
        F: Fn(&S::Elem) -> T::Elem + Send + Sync + 'static,
    {
        Hom { source, target, label: label.into(), map: Arc::new(map) }
    }

    pub fn apply(&self, x: &S::Elem) -> T::Elem {
        (self.map)(x)
    }

    /// `other ∘ self`
    pub fn then<U>(&self, other: &Hom<T, U>) -> Hom<S, U>
    where
        S: Clone,
        U: Carrier + Clone,
        S::Elem: 'static,
        T::Elem: 'static,
        U::Elem: 'static,
        S: 'static,
        T: 'static,
        U: 'static,
    {
        let f = self.map.clone();
        let g = other.map.clone();
        Hom::new(
            self.source.clone(),
            other.target.clone(),
            format!("{}∘{}", other.label, self.label),
            move |x| g(&f(x)),
        )
    }

    /// The image of `x`, or `SourceTargetMismatch` when it leaves the target.
    pub fn checked_apply(&self, x: &S::Elem) -> Result<T::Elem, HomError> {
        let y = self.apply(x);
        if self.target.contains(&y) {
            Ok(y)
        } else {
            Err(HomError::SourceTargetMismatch {
                element: self.source.render(x),
                image: format!("{y:?}"),
                target: self.target.describe(),
            })
        }
    }
}

impl<S: Carrier + Clone> Hom<S, S>
where
    S::Elem: 'static,
{
    pub fn identity(s: S) -> Self {
        Hom::new(s.clone(), s, "id", |x: &S::Elem| x.clone())
    }
}

impl<S: Carrier, T: Carrier> Hom<S, T> {
    fn subject(&self) -> String {
        format!("{}: {} → {}", self.label, self.source.describe(), self.target.describe())
    }
}

const EXHAUSTIVE_PAIRS: usize = 1_000_000;

/// Checks that `h` preserves `0`, `¬` and `⊕` on every probed element/pair.
pub fn check_mv_hom<S, T>(h: &Hom<S, T>, budget: &Budget) -> Result<Report, HomError>
where
    S: MvStructure,
    T: MvStructure,
{
    let mut rng = budget.rng();
    let mut t = Tally::new("mv-hom", h.subject(), budget.seed);
    let p = probe(&h.source, budget, &mut rng);
    let images = p.elems.iter().map(|x| h.checked_apply(x)).collect::<Result<Vec<_>, _>>()?;
    let limit = if p.exhaustive { EXHAUSTIVE_PAIRS } else { budget.samples };
    let (pairs, all) = tuples::<2>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let (s, tg) = (&h.source, &h.target);
    let _ = (|| -> Result<(), Stop> {
        t.ensure(tg.same(&h.apply(&s.zero()), &tg.zero()), "h(0) = 0", Vec::new)?;
        for (x, hx) in p.elems.iter().zip(&images) {
            t.ensure(tg.same(&h.apply(&s.neg(x)), &tg.neg(hx)), "h(¬x) = ¬h(x)", || {
                witness([("x", s.render(x))])
            })?;
        }
        for &[i, j] in &pairs {
            let (x, y) = (&p.elems[i], &p.elems[j]);
            t.ensure(
                tg.same(&h.apply(&s.oplus(x, y)), &tg.oplus(&images[i], &images[j])),
                "h(x⊕y) = h(x)⊕h(y)",
                || witness([("x", s.render(x)), ("y", s.render(y))]),
            )?;
        }
        Ok(())
    })();
    Ok(t.finish())
}

/// Checks that `h` preserves `0`, `u`, `+`, `−`, `inf` and `sup`.
pub fn check_l_hom<S, T>(h: &Hom<S, T>, budget: &Budget) -> Result<Report, HomError>
where
    S: LGroup,
    T: LGroup,
{
    let mut rng = budget.rng();
    let mut t = Tally::new("l-hom", h.subject(), budget.seed);
    let p = probe(&h.source, budget, &mut rng);
    let images = p.elems.iter().map(|x| h.checked_apply(x)).collect::<Result<Vec<_>, _>>()?;
    let limit = if p.exhaustive { EXHAUSTIVE_PAIRS } else { budget.samples };
    let (pairs, all) = tuples::<2>(p.elems.len(), limit, &mut rng);
    t.set_exhaustive(p.exhaustive && all);
    let (s, tg) = (&h.source, &h.target);
    let _ = (|| -> Result<(), Stop> {
        t.ensure(tg.same(&h.apply(&s.zero()), &tg.zero()), "h(0) = 0", Vec::new)?;
        t.ensure(tg.same(&h.apply(&s.unit()), &tg.unit()), "h(u) = u", || {
            witness([("h(u)", tg.render(&h.apply(&s.unit())))])
        })?;
        for (x, hx) in p.elems.iter().zip(&images) {
            t.ensure(tg.same(&h.apply(&s.neg(x)), &tg.neg(hx)), "h(−x) = −h(x)", || {
                witness([("x", s.render(x))])
            })?;
        }
        for &[i, j] in &pairs {
            let (x, y) = (&p.elems[i], &p.elems[j]);
            let (hx, hy) = (&images[i], &images[j]);
            let w = || witness([("x", s.render(x)), ("y", s.render(y))]);
            t.ensure(tg.same(&h.apply(&s.add(x, y)), &tg.add(hx, hy)), "h(x+y) = h(x)+h(y)", w)?;
            t.ensure(tg.same(&h.apply(&s.inf(x, y)), &tg.inf(hx, hy)), "h(inf) = inf(h, h)", w)?;
            t.ensure(tg.same(&h.apply(&s.sup(x, y)), &tg.sup(hx, hy)), "h(sup) = sup(h, h)", w)?;
        }
        Ok(())
    })();
    Ok(t.finish())
}
