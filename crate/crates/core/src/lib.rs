//! Exact MV-algebras, abelian lattice-ordered groups with strong unit, and
//! Mundici's equivalence between them.
//!
//! The crate is organised bottom-up:
//!
//! * [`mv`] – MV-algebra carriers (finite tables, Łukasiewicz chains, the
//!   rational unit interval, products, Chang's algebra) and axiom checks.
//! * [`lgroup`] – ℓ-groups with unit (ℤᵏ, lexicographic ℤ², scaled ℤ, ℚᵏ),
//!   strong-unit bound witnesses and axiom checks.
//! * [`goodseq`] – good sequences and the cancellative lattice-ordered
//!   monoid they form.
//! * [`functors`] – Γ, the good-sequence group L, the isomorphisms φ and ψ,
//!   and naturality checks.
//! * [`logic`] – terms, geometric formulas and sequents over both
//!   signatures, model checking, and the interpretation of MV into ℓ-groups.
//! * [`sheaf`] – sheaves of both kinds over finite Alexandrov spaces.
//! * [`spec`] and [`zoo`] – JSON descriptions of structures and the built-in
//!   test zoo used by the CLI.
//!
//! All arithmetic is exact. Checks over infinite carriers are sampled with a
//! seeded generator, so every [`Report`] is reproducible.

pub mod carrier;
pub mod functors;
pub mod goodseq;
pub mod hom;
pub mod lgroup;
pub mod logic;
pub mod mv;
pub mod rational;
pub mod report;
pub mod sheaf;
pub mod spec;
pub mod zoo;

pub use carrier::{Budget, Carrier};
pub use functors::{gamma, l_group, Gamma, GroupElement, LGroupOfAlgebra};
pub use goodseq::{GoodSeqMonoid, GoodSequence};
pub use hom::Hom;
pub use lgroup::{AbelianGroup, LGroup, LGroupElement, LGroupU};
pub use mv::{MvAlgebra, MvElement, MvStructure};
pub use report::{Report, Status};
