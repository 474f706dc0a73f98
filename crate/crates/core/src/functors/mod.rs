//! The functors Γ (ℓ-groups → MV-algebras) and L (MV-algebras → ℓ-groups),
//! and the natural isomorphisms `φ: A → ΓL(A)` and `ψ: G → LΓ(G)`.

mod iso;

pub use iso::{
    check_congruence, check_phi_naturality, check_psi_naturality, check_strong_unit, f_map, gamma_hom,
    good_decompose, l_hom, phi, phi_inverse, positive_representative, psi, psi_map, IsoSummary, IsoWitness,
};

use std::fmt;

use rand::RngCore;
use thiserror::Error;

use crate::carrier::Carrier;
use crate::goodseq::{GoodSeqMonoid, GoodSequence};
use crate::lgroup::{AbelianGroup, LGroup};
use crate::mv::MvStructure;

/// Bounds needed to capture a structure inside a [`Hom`](crate::Hom).
pub trait Owned: Clone + Send + Sync + 'static {}

impl<T: Clone + Send + Sync + 'static> Owned for T {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("{element} is not an element of {structure}")]
    ElementNotInCarrier { element: String, structure: String },
    #[error("image {image} of {element} escapes the unit interval of {target}")]
    ImageEscapesInterval { element: String, image: String, target: String },
    #[error("{element} is not ≥ 0")]
    NegativeElement { element: String },
    #[error("{element} is not bounded by a multiple of the unit")]
    Unbounded { element: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// `Γ(G) = [0, u]` with `x ⊕ y = inf(u, x+y)` and `¬x = u − x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gamma<G> {
    pub group: G,
}

pub fn gamma<G: LGroup>(group: G) -> Gamma<G> {
    Gamma { group }
}

impl<G: LGroup> Carrier for Gamma<G> {
    type Elem = G::Elem;

    fn contains(&self, x: &G::Elem) -> bool {
        self.group.contains(x) && self.group.in_unit_interval(x)
    }

    fn same(&self, x: &G::Elem, y: &G::Elem) -> bool {
        self.group.same(x, y)
    }

    fn elements(&self) -> Option<Vec<G::Elem>> {
        self.group.interval_elements()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> G::Elem {
        self.group.sample_interval(rng)
    }

    fn landmarks(&self) -> Vec<G::Elem> {
        let mut out = vec![self.group.zero(), self.group.unit()];
        out.extend(self.group.landmarks().into_iter().filter(|x| self.group.in_unit_interval(x)));
        out
    }

    fn render(&self, x: &G::Elem) -> String {
        self.group.render(x)
    }

    fn describe(&self) -> String {
        format!("Γ{}", parenthesize(&self.group.describe()))
    }
}

impl<G: LGroup> MvStructure for Gamma<G> {
    fn zero(&self) -> G::Elem {
        self.group.zero()
    }

    fn oplus(&self, x: &G::Elem, y: &G::Elem) -> G::Elem {
        self.group.inf(&self.group.unit(), &self.group.add(x, y))
    }

    fn neg(&self, x: &G::Elem) -> G::Elem {
        self.group.sub(&self.group.unit(), x)
    }
}

fn parenthesize(s: &str) -> String {
    if s.starts_with('(') && s.ends_with(')') {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// The formal difference `[pos, neg]` of two good sequences.
///
/// Equality is semantic (`a+d = b+c`) and lives in
/// [`LGroupOfAlgebra::same`](Carrier::same); the derived `PartialEq` is
/// structural.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<E> {
    pub pos: GoodSequence<E>,
    pub neg: GoodSequence<E>,
}

impl<E> GroupElement<E> {
    pub fn new(pos: GoodSequence<E>, neg: GoodSequence<E>) -> Self {
        GroupElement { pos, neg }
    }
}

impl<E: fmt::Display> fmt::Display for GroupElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.pos, self.neg)
    }
}

/// `L(A)`: formal differences of good sequences over `A` with unit `[(1),(0)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LGroupOfAlgebra<A> {
    pub monoid: GoodSeqMonoid<A>,
}

/// `L(A)`; `max_len` bounds the length of sampled good sequences.
pub fn l_group<A: MvStructure>(alg: A, max_len: usize) -> LGroupOfAlgebra<A> {
    LGroupOfAlgebra { monoid: GoodSeqMonoid::new(alg, max_len) }
}

type Elem<A> = GroupElement<<A as Carrier>::Elem>;

impl<A: MvStructure> LGroupOfAlgebra<A> {
    pub fn algebra(&self) -> &A {
        &self.monoid.alg
    }

    /// `[(a), (0)]`
    pub fn embed(&self, a: A::Elem) -> Elem<A> {
        GroupElement::new(self.monoid.singleton(a), GoodSequence::zero())
    }

    /// `[p, (0)]`
    pub fn positive(&self, p: GoodSequence<A::Elem>) -> Elem<A> {
        GroupElement::new(p, GoodSequence::zero())
    }

    /// Cross-sum equality `[a,b] ~ [c,d]` iff `a+d = b+c`.
    pub fn group_eq(&self, x: &Elem<A>, y: &Elem<A>) -> bool {
        let m = &self.monoid;
        m.same(&m.sum(&x.pos, &y.neg), &m.sum(&x.neg, &y.pos))
    }
}

impl<A: MvStructure> Carrier for LGroupOfAlgebra<A> {
    type Elem = Elem<A>;

    fn contains(&self, x: &Elem<A>) -> bool {
        self.monoid.contains(&x.pos) && self.monoid.contains(&x.neg)
    }

    fn same(&self, x: &Elem<A>, y: &Elem<A>) -> bool {
        self.group_eq(x, y)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Elem<A> {
        GroupElement::new(self.monoid.sample(rng), self.monoid.sample(rng))
    }

    fn landmarks(&self) -> Vec<Elem<A>> {
        let mut out = vec![self.zero(), self.unit(), self.neg(&self.unit())];
        for a in self.algebra().landmarks() {
            let x = self.embed(a);
            out.push(GroupElement::new(self.monoid.ones(1), x.pos.clone()));
            out.push(x);
        }
        out
    }

    fn render(&self, x: &Elem<A>) -> String {
        format!("[{} | {}]", self.monoid.render(&x.pos), self.monoid.render(&x.neg))
    }

    fn describe(&self) -> String {
        format!("L{}", parenthesize(&self.algebra().describe()))
    }
}

impl<A: MvStructure> AbelianGroup for LGroupOfAlgebra<A> {
    fn zero(&self) -> Elem<A> {
        GroupElement::new(GoodSequence::zero(), GoodSequence::zero())
    }

    fn add(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        GroupElement::new(self.monoid.sum(&x.pos, &y.pos), self.monoid.sum(&x.neg, &y.neg))
    }

    fn neg(&self, x: &Elem<A>) -> Elem<A> {
        GroupElement::new(x.neg.clone(), x.pos.clone())
    }
}

impl<A: MvStructure> LGroup for LGroupOfAlgebra<A> {
    /// `[a,b] ≤ [c,d]` iff `a+d ≤ c+b`
    fn leq(&self, x: &Elem<A>, y: &Elem<A>) -> bool {
        let m = &self.monoid;
        m.leq(&m.sum(&x.pos, &y.neg), &m.sum(&y.pos, &x.neg))
    }

    /// `inf([a,b],[c,d]) = [inf(a+d, c+b), b+d]`
    fn inf(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        let m = &self.monoid;
        GroupElement::new(m.inf(&m.sum(&x.pos, &y.neg), &m.sum(&y.pos, &x.neg)), m.sum(&x.neg, &y.neg))
    }

    /// `sup([a,b],[c,d]) = [sup(a+d, c+b), b+d]`
    fn sup(&self, x: &Elem<A>, y: &Elem<A>) -> Elem<A> {
        let m = &self.monoid;
        GroupElement::new(m.sup(&m.sum(&x.pos, &y.neg), &m.sum(&y.pos, &x.neg)), m.sum(&x.neg, &y.neg))
    }

    fn unit(&self) -> Elem<A> {
        self.positive(self.monoid.ones(1))
    }

    /// `[p,q] ≤ [p,(0)] ≤ len(p)·u` and `−[p,q] ≤ len(q)·u`.
    fn unit_bound(&self, x: &Elem<A>) -> Option<u64> {
        Some(x.pos.len().max(x.neg.len()) as u64)
    }

    /// The image of `A` under `a ↦ [(a),(0)]`; that this exhausts `[0,u]`
    /// is what [`phi`] verifies.
    fn interval_elements(&self) -> Option<Vec<Elem<A>>> {
        Some(self.algebra().elements()?.into_iter().map(|a| self.embed(a)).collect())
    }
}
