//! Sheaves of MV-algebras and ℓ-groups over finite Alexandrov spaces.
//!
//! A finite space is a preorder on its points; the opens are the up-sets
//! and the smallest open around `x` is `↑x`. A sheaf is stored by its stalks
//! `F_x = F(↑x)` together with a restriction `F_x → F_y` for every `x ≤ y`.
//! Sections over an open `U` are the compatible families.

mod functors;
mod sections;

pub use functors::{
    check_gamma_sections, check_l_sheaf, check_mv_sheaf, check_phi_sheaf, check_point_reduction, check_psi_sheaf,
    check_sheaf_naturality, compare_l_sections, gamma_sheaf, inverse_image, l_sheaf,
};
pub use sections::Sections;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::carrier::Carrier;
use crate::functors::{FunctorError, Owned};
use crate::hom::Hom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("{{{0}}} is not an up-set")]
    NotOpen(String),
    #[error("map is not monotone: {x} ≤ {y} but f({x}) ≰ f({y})")]
    NotContinuous { x: String, y: String },
    #[error("expected {expected} stalks, got {got}")]
    StalkCount { expected: usize, got: usize },
    #[error("missing restriction {from} → {to}")]
    MissingRestriction { from: String, to: String },
    #[error("restriction {from} → {to} given but {from} ≰ {to}")]
    NotSpecialization { from: String, to: String },
    #[error("the sheaf lives on a different space than the map's target")]
    SpaceMismatch,
    #[error("restriction {from} → {to}: {source}")]
    RestrictionEscapesInterval {
        from: String,
        to: String,
        #[source]
        source: FunctorError,
    },
}

/// A finite set of points with a specialization preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FiniteSpace {
    /// `leq[i][j]` is `i ≤ j`; must be reflexive and transitive.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, SheafError> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(SheafError::InvalidSpace(format!("relation is not {n}×{n}")));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(SheafError::InvalidSpace(format!("duplicate point {name}")));
            }
            if !leq[i][i] {
                return Err(SheafError::InvalidSpace(format!("not reflexive at {name}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(SheafError::InvalidSpace(format!(
                            "not transitive: {} ≤ {} ≤ {}",
                            names[i], names[j], names[k]
                        )));
                    }
                }
            }
        }
        Ok(FiniteSpace { names, leq })
    }

    /// Builds the preorder generated by the given pairs.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, SheafError> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(SheafError::InvalidSpace(format!("pair ({i}, {j}) out of range")));
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        FiniteSpace::new(names, leq)
    }

    pub fn point() -> Self {
        FiniteSpace::from_pairs(vec!["*".into()], &[]).expect("one point")
    }

    /// Points `o` (open) and `c` (closed), `c ≤ o`; opens `∅, {o}, X`.
    pub fn sierpinski() -> Self {
        FiniteSpace::from_pairs(vec!["o".into(), "c".into()], &[(1, 0)]).expect("sierpinski")
    }

    /// `0 ≤ 1 ≤ … ≤ n−1`
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FiniteSpace::from_pairs((0..n).map(|i| i.to_string()).collect(), &pairs).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        FiniteSpace::from_pairs((0..n).map(|i| format!("a{i}")).collect(), &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index(&self, name: &str) -> Result<usize, SheafError> {
        self.names.iter().position(|n| n == name).ok_or_else(|| SheafError::UnknownPoint(name.to_string()))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.leq
    }

    /// Pairs `x ≤ y` with `x ≠ y`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| x != y && self.leq[x][y]).collect()
    }

    /// `U_x = ↑x`
    pub fn up(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    pub fn is_open(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| x < self.len() && self.up(x).iter().all(|y| set.contains(y)))
    }

    pub fn whole(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Every up-set, smallest first.
    pub fn opens(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        assert!(n <= 16, "too many points to list opens");
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| self.is_open(s))
            .collect();
        out.sort_by_key(|s| s.len());
        out
    }

    /// The points of `U` with nothing strictly below them in `U`. In a
    /// preorder only the first of each equivalent group is kept.
    pub fn minimal(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for &x in set {
            let dominated = set.iter().any(|&y| y != x && self.leq[y][x] && !self.leq[x][y]);
            let duplicate = out.iter().any(|&m| self.leq[m][x] && self.leq[x][m]);
            if !dominated && !duplicate {
                out.push(x);
            }
        }
        out
    }

    pub fn render_set(&self, set: &[usize]) -> String {
        set.iter().map(|&i| self.names[i].as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> =
            self.strict_pairs().iter().map(|&(x, y)| format!("{}≤{}", self.names[x], self.names[y])).collect();
        write!(f, "{{{}}}", self.render_set(&self.whole()))?;
        if !rel.is_empty() {
            write!(f, " with {}", rel.join(", "))?;
        }
        Ok(())
    }
}

/// A monotone map between finite spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuousMap {
    pub source: FiniteSpace,
    pub target: FiniteSpace,
    map: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, map: Vec<usize>) -> Result<Self, SheafError> {
        if map.len() != source.len() {
            return Err(SheafError::InvalidSpace(format!("map has {} values for {} points", map.len(), source.len())));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
            return Err(SheafError::UnknownPoint(bad.to_string()));
        }
        for (x, y) in source.strict_pairs() {
            if !target.leq(map[x], map[y]) {
                return Err(SheafError::NotContinuous { x: source.name(x).into(), y: source.name(y).into() });
            }
        }
        Ok(ContinuousMap { source, target, map })
    }

    pub fn identity(space: FiniteSpace) -> Self {
        let map = space.whole();
        ContinuousMap { source: space.clone(), target: space, map }
    }

    pub fn constant(source: FiniteSpace, target: FiniteSpace, y: usize) -> Result<Self, SheafError> {
        let map = vec![y; source.len()];
        ContinuousMap::new(source, target, map)
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = (0..self.source.len())
            .map(|x| format!("{}↦{}", self.source.name(x), self.target.name(self.map[x])))
            .collect();
        parts.join(", ")
    }
}

/// Stalks and restrictions. Restrictions are stored for `x ≤ y`, `x ≠ y`;
/// `r(x, x)` is the identity.
pub struct Sheaf<S: Carrier> {
    pub space: FiniteSpace,
    pub stalks: Vec<S>,
    restrictions: BTreeMap<(usize, usize), Hom<S, S>>,
}

impl<S: Carrier + Clone> Clone for Sheaf<S> {
    fn clone(&self) -> Self {
        Sheaf { space: self.space.clone(), stalks: self.stalks.clone(), restrictions: self.restrictions.clone() }
    }
}

impl<S: Carrier> fmt::Debug for Sheaf<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sheaf({})", self.describe())
    }
}

impl<S: Carrier + Owned> Sheaf<S> {
    pub fn new(
        space: FiniteSpace,
        stalks: Vec<S>,
        restrictions: BTreeMap<(usize, usize), Hom<S, S>>,
    ) -> Result<Self, SheafError> {
        if stalks.len() != space.len() {
            return Err(SheafError::StalkCount { expected: space.len(), got: stalks.len() });
        }
        for &(x, y) in restrictions.keys() {
            if x >= space.len() || y >= space.len() || x == y || !space.leq(x, y) {
                let name = |i: usize| space.names().get(i).cloned().unwrap_or_else(|| i.to_string());
                return Err(SheafError::NotSpecialization { from: name(x), to: name(y) });
            }
        }
        for (x, y) in space.strict_pairs() {
            if !restrictions.contains_key(&(x, y)) {
                return Err(SheafError::MissingRestriction { from: space.name(x).into(), to: space.name(y).into() });
            }
        }
        Ok(Sheaf { space, stalks, restrictions })
    }

    /// The same stalk everywhere with identity restrictions.
    pub fn constant(space: FiniteSpace, stalk: S) -> Self {
        let restrictions =
            space.strict_pairs().into_iter().map(|p| (p, identity(&stalk))).collect::<BTreeMap<_, _>>();
        let stalks = vec![stalk; space.len()];
        Sheaf { space, stalks, restrictions }
    }

    pub fn stalk(&self, x: usize) -> &S {
        &self.stalks[x]
    }

    /// `F_x → F_y` for `x ≤ y`.
    pub fn restriction(&self, x: usize, y: usize) -> Hom<S, S> {
        assert!(self.space.leq(x, y), "{} ≰ {}", self.space.name(x), self.space.name(y));
        if x == y {
            identity(&self.stalks[x])
        } else {
            self.restrictions[&(x, y)].clone()
        }
    }

    /// Applies `r(x, y)` to `a`.
    pub fn restrict(&self, x: usize, y: usize, a: &S::Elem) -> S::Elem {
        if x == y {
            a.clone()
        } else {
            self.restrictions[&(x, y)].apply(a)
        }
    }

    /// `F(U)`
    pub fn sections(&self, open: &[usize]) -> Result<Sections<S>, SheafError> {
        Sections::new(self.clone(), open)
    }

    /// Rebuilds the sheaf stalk by stalk and restriction by restriction.
    pub fn map_stalks<T, E>(
        &self,
        mut stalk: impl FnMut(usize, &S) -> Result<T, E>,
        mut restriction: impl FnMut((usize, usize), &Hom<S, S>) -> Result<Hom<T, T>, E>,
    ) -> Result<Sheaf<T>, E>
    where
        T: Carrier + Owned,
    {
        let stalks = self.stalks.iter().enumerate().map(|(x, s)| stalk(x, s)).collect::<Result<Vec<_>, E>>()?;
        let mut restrictions = BTreeMap::new();
        for (&k, r) in &self.restrictions {
            restrictions.insert(k, restriction(k, r)?);
        }
        Ok(Sheaf { space: self.space.clone(), stalks, restrictions })
    }
}

impl<S: Carrier> Sheaf<S> {
    pub fn describe(&self) -> String {
        let stalks: Vec<String> = (0..self.space.len())
            .map(|x| format!("{}: {}", self.space.name(x), self.stalks[x].describe()))
            .collect();
        format!("sheaf on {} [{}]", self.space, stalks.join("; "))
    }
}

fn identity<S: Carrier + Owned>(s: &S) -> Hom<S, S> {
    Hom::new(s.clone(), s.clone(), "id", |x: &S::Elem| x.clone())
}
