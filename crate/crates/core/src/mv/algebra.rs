use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use crate::carrier::Carrier;
use crate::rational::{self, Q};

use super::{MvError, MvStructure};

/// An MV-algebra given by explicit operation tables over `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTable {
    oplus: Vec<Vec<usize>>,
    neg: Vec<usize>,
    zero: usize,
    labels: Option<Vec<String>>,
}

impl FiniteTable {
    /// Validates shapes and index ranges only; the MV axioms are left to
    /// [`check_mv_axioms`](super::check_mv_axioms).
    pub fn new(oplus: Vec<Vec<usize>>, neg: Vec<usize>, zero: usize) -> Result<Self, MvError> {
        let k = neg.len();
        if k == 0 {
            return Err(MvError::InvalidTable("empty carrier".into()));
        }
        if oplus.len() != k || oplus.iter().any(|row| row.len() != k) {
            return Err(MvError::InvalidTable(format!("oplus must be {k}x{k}")));
        }
        if zero >= k {
            return Err(MvError::InvalidTable(format!("zero index {zero} out of range")));
        }
        if neg.iter().chain(oplus.iter().flatten()).any(|&i| i >= k) {
            return Err(MvError::InvalidTable(format!("table entry out of range 0..{k}")));
        }
        Ok(FiniteTable { oplus, neg, zero, labels: None })
    }

    /// Cosmetic names for the indices.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, MvError> {
        if labels.len() != self.size() {
            return Err(MvError::InvalidTable("label count differs from size".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.neg.len()
    }

    pub fn oplus_table(&self) -> &[Vec<usize>] {
        &self.oplus
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn zero_index(&self) -> usize {
        self.zero
    }

    /// Overwrites one ⊕ entry, for planting defects in tests.
    pub fn set_oplus(&mut self, i: usize, j: usize, value: usize) {
        self.oplus[i][j] = value;
    }
}

/// The concrete MV-algebra representations.
#[derive(Debug, Clone, PartialEq)]
pub enum MvAlgebra {
    Finite(FiniteTable),
    /// Rationals in `[0,1]` with truncated addition; restricted to
    /// denominators dividing `n` this is the chain Łₙ.
    Interval { denominator: Option<u32> },
    Product(Vec<MvAlgebra>),
    /// Unit interval of ℤ ×lex ℤ under the unit (1,0).
    Chang,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MvElement {
    Index(usize),
    Rational(Q),
    Tuple(Vec<MvElement>),
    /// `(0,k)` with `k ≥ 0` or `(1,-k)` with `k ≥ 0`.
    Lex(i64, i64),
}

impl MvElement {
    pub fn ratio(numer: i64, denom: i64) -> Self {
        MvElement::Rational(rational::q(numer, denom))
    }
}

impl fmt::Display for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MvElement::Index(i) => write!(f, "#{i}"),
            MvElement::Rational(r) => f.write_str(&rational::render(r)),
            MvElement::Tuple(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            MvElement::Lex(a, b) => write!(f, "<{a},{b}>"),
        }
    }
}

const LEX_SAMPLE_RANGE: i64 = 20;
const INTERVAL_SAMPLE_DENOM: i64 = 12;

impl MvAlgebra {
    /// The chain Łₙ = {0, 1/n, …, 1}.
    ///
    /// Panics if `n == 0`.
    pub fn chain(n: u32) -> Self {
        assert!(n >= 1, "Łₙ needs n ≥ 1");
        MvAlgebra::Interval { denominator: Some(n) }
    }

    pub fn rational_interval() -> Self {
        MvAlgebra::Interval { denominator: None }
    }

    pub fn product(factors: Vec<MvAlgebra>) -> Self {
        MvAlgebra::Product(factors)
    }

    /// Operation tables of a finite algebra, indexed in `elements()` order.
    pub fn to_table(&self) -> Option<FiniteTable> {
        let elems = self.elements()?;
        let index = |x: &MvElement| elems.iter().position(|e| e == x).expect("closed operation");
        let oplus = elems.iter().map(|x| elems.iter().map(|y| index(&self.oplus(x, y))).collect()).collect();
        let neg = elems.iter().map(|x| index(&self.neg(x))).collect();
        let labels = elems.iter().map(|x| self.render(x)).collect();
        FiniteTable::new(oplus, neg, index(&self.zero())).ok()?.with_labels(labels).ok()
    }

    fn lex_oplus(x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let s = (x.0 + y.0, x.1 + y.1);
        if s <= (1, 0) {
            s
        } else {
            (1, 0)
        }
    }
}

fn carrier_violation(alg: &MvAlgebra, x: &MvElement) -> ! {
    panic!("element {x} is not in the carrier of {}", alg.describe())
}

impl Carrier for MvAlgebra {
    type Elem = MvElement;

    fn contains(&self, x: &MvElement) -> bool {
        match (self, x) {
            (MvAlgebra::Finite(t), MvElement::Index(i)) => *i < t.size(),
            (MvAlgebra::Interval { denominator }, MvElement::Rational(r)) => {
                rational::in_unit_interval(r)
                    && denominator.is_none_or(|n| (r * rational::int(n.into())).is_integer())
            }
            (MvAlgebra::Product(fs), MvElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (MvAlgebra::Chang, MvElement::Lex(a, b)) => (*a == 0 && *b >= 0) || (*a == 1 && *b <= 0),
            _ => false,
        }
    }

    fn elements(&self) -> Option<Vec<MvElement>> {
        match self {
            MvAlgebra::Finite(t) => Some((0..t.size()).map(MvElement::Index).collect()),
            MvAlgebra::Interval { denominator: Some(n) } => {
                let n = i64::from(*n);
                Some((0..=n).map(|k| MvElement::ratio(k, n)).collect())
            }
            MvAlgebra::Interval { denominator: None } | MvAlgebra::Chang => None,
            MvAlgebra::Product(fs) => {
                let mut out = vec![Vec::new()];
                for f in fs {
                    let elems = f.elements()?;
                    out = out
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut t = prefix.clone();
                                t.push(e.clone());
                                t
                            })
                        })
                        .collect();
                }
                Some(out.into_iter().map(MvElement::Tuple).collect())
            }
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> MvElement {
        match self {
            MvAlgebra::Finite(t) => MvElement::Index(rng.gen_range(0..t.size())),
            MvAlgebra::Interval { denominator: Some(n) } => {
                let n = i64::from(*n);
                MvElement::ratio(rng.gen_range(0..=n), n)
            }
            MvAlgebra::Interval { denominator: None } => {
                let d = rng.gen_range(1..=INTERVAL_SAMPLE_DENOM);
                MvElement::ratio(rng.gen_range(0..=d), d)
            }
            MvAlgebra::Product(fs) => MvElement::Tuple(fs.iter().map(|f| f.sample(rng)).collect()),
            MvAlgebra::Chang => {
                let k = rng.gen_range(0..=LEX_SAMPLE_RANGE);
                if rng.gen_bool(0.5) {
                    MvElement::Lex(0, k)
                } else {
                    MvElement::Lex(1, -k)
                }
            }
        }
    }

    fn landmarks(&self) -> Vec<MvElement> {
        let mut out = vec![self.zero(), self.one()];
        match self {
            MvAlgebra::Interval { denominator: None } => {
                out.extend([MvElement::ratio(1, 2), MvElement::ratio(1, 3), MvElement::ratio(2, 3)]);
            }
            MvAlgebra::Chang => out.extend([MvElement::Lex(0, 1), MvElement::Lex(1, -1)]),
            MvAlgebra::Product(fs) => {
                for (i, f) in fs.iter().enumerate() {
                    for l in f.landmarks() {
                        let mut t: Vec<MvElement> = fs.iter().map(|g| g.zero()).collect();
                        t[i] = l;
                        out.push(MvElement::Tuple(t));
                    }
                }
            }
            _ => {}
        }
        out
    }

    fn render(&self, x: &MvElement) -> String {
        match (self, x) {
            (MvAlgebra::Finite(t), MvElement::Index(i)) => match &t.labels {
                Some(labels) if *i < labels.len() => labels[*i].clone(),
                _ => i.to_string(),
            },
            (MvAlgebra::Product(fs), MvElement::Tuple(xs)) if fs.len() == xs.len() => {
                let parts: Vec<String> = fs.iter().zip(xs).map(|(f, x)| f.render(x)).collect();
                format!("({})", parts.join(","))
            }
            (MvAlgebra::Chang, MvElement::Lex(a, b)) => format!("({a},{b})"),
            _ => x.to_string(),
        }
    }

    fn describe(&self) -> String {
        match self {
            MvAlgebra::Finite(t) => format!("finite({})", t.size()),
            MvAlgebra::Interval { denominator: Some(n) } => format!("Ł{n}"),
            MvAlgebra::Interval { denominator: None } => "[0,1]∩ℚ".to_string(),
            MvAlgebra::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.describe()).collect();
                parts.join("×")
            }
            MvAlgebra::Chang => "Chang".to_string(),
        }
    }
}

impl MvStructure for MvAlgebra {
    fn zero(&self) -> MvElement {
        match self {
            MvAlgebra::Finite(t) => MvElement::Index(t.zero),
            MvAlgebra::Interval { .. } => MvElement::Rational(Q::zero()),
            MvAlgebra::Product(fs) => MvElement::Tuple(fs.iter().map(|f| f.zero()).collect()),
            MvAlgebra::Chang => MvElement::Lex(0, 0),
        }
    }

    fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement {
        match (self, x, y) {
            (MvAlgebra::Finite(t), MvElement::Index(i), MvElement::Index(j))
                if *i < t.size() && *j < t.size() =>
            {
                MvElement::Index(t.oplus[*i][*j])
            }
            (MvAlgebra::Interval { .. }, MvElement::Rational(a), MvElement::Rational(b)) => {
                let s = a + b;
                MvElement::Rational(if s > Q::one() { Q::one() } else { s })
            }
            (MvAlgebra::Product(fs), MvElement::Tuple(xs), MvElement::Tuple(ys))
                if xs.len() == fs.len() && ys.len() == fs.len() =>
            {
                MvElement::Tuple(fs.iter().zip(xs.iter().zip(ys)).map(|(f, (a, b))| f.oplus(a, b)).collect())
            }
            (MvAlgebra::Chang, MvElement::Lex(a1, b1), MvElement::Lex(a2, b2)) => {
                let (a, b) = Self::lex_oplus((*a1, *b1), (*a2, *b2));
                MvElement::Lex(a, b)
            }
            _ => carrier_violation(self, if self.contains(x) { y } else { x }),
        }
    }

    fn neg(&self, x: &MvElement) -> MvElement {
        match (self, x) {
            (MvAlgebra::Finite(t), MvElement::Index(i)) if *i < t.size() => MvElement::Index(t.neg[*i]),
            (MvAlgebra::Interval { .. }, MvElement::Rational(a)) => MvElement::Rational(Q::one() - a),
            (MvAlgebra::Product(fs), MvElement::Tuple(xs)) if xs.len() == fs.len() => {
                MvElement::Tuple(fs.iter().zip(xs).map(|(f, a)| f.neg(a)).collect())
            }
            (MvAlgebra::Chang, MvElement::Lex(a, b)) => MvElement::Lex(1 - a, -b),
            _ => carrier_violation(self, x),
        }
    }

    fn odot(&self, x: &MvElement, y: &MvElement) -> MvElement {
        match (self, x, y) {
            (MvAlgebra::Interval { .. }, MvElement::Rational(a), MvElement::Rational(b)) => {
                let s = a + b - Q::one();
                MvElement::Rational(if s < Q::zero() { Q::zero() } else { s })
            }
            _ => self.neg(&self.oplus(&self.neg(x), &self.neg(y))),
        }
    }

    fn leq(&self, x: &MvElement, y: &MvElement) -> bool {
        match (self, x, y) {
            (MvAlgebra::Interval { .. }, MvElement::Rational(a), MvElement::Rational(b)) => a <= b,
            _ => self.same(&self.oplus(&self.neg(x), y), &self.one()),
        }
    }

    fn inf(&self, x: &MvElement, y: &MvElement) -> MvElement {
        match (self, x, y) {
            (MvAlgebra::Interval { .. }, MvElement::Rational(a), MvElement::Rational(b)) => {
                MvElement::Rational(a.min(b).clone())
            }
            _ => self.odot(x, &self.oplus(&self.neg(x), y)),
        }
    }

    fn sup(&self, x: &MvElement, y: &MvElement) -> MvElement {
        match (self, x, y) {
            (MvAlgebra::Interval { .. }, MvElement::Rational(a), MvElement::Rational(b)) => {
                MvElement::Rational(a.max(b).clone())
            }
            _ => self.oplus(&self.odot(x, &self.neg(y)), y),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_shortcuts_agree_with_definitions() {
        let a = MvAlgebra::chain(6);
        let elems = a.elements().unwrap();
        for x in &elems {
            for y in &elems {
                let odot = a.neg(&a.oplus(&a.neg(x), &a.neg(y)));
                assert_eq!(a.odot(x, y), odot);
                assert_eq!(a.leq(x, y), a.oplus(&a.neg(x), y) == a.one());
                assert_eq!(a.inf(x, y), a.neg(&a.oplus(&a.neg(x), &a.neg(&a.oplus(&a.neg(x), y)))));
                assert_eq!(a.sup(x, y), a.oplus(&odot_def(&a, x, &a.neg(y)), y));
            }
        }
    }

    fn odot_def(a: &MvAlgebra, x: &MvElement, y: &MvElement) -> MvElement {
        a.neg(&a.oplus(&a.neg(x), &a.neg(y)))
    }

    #[test]
    fn chain_elements_are_multiples_of_one_over_n() {
        let l3 = MvAlgebra::chain(3);
        let elems = l3.elements().unwrap();
        assert_eq!(elems.len(), 4);
        assert_eq!(elems[1], MvElement::ratio(1, 3));
        assert!(l3.contains(&MvElement::ratio(2, 3)));
        assert!(!l3.contains(&MvElement::ratio(1, 2)));
        assert!(!l3.contains(&MvElement::ratio(4, 3)));
    }

    #[test]
    fn chang_negation_and_truncation() {
        let c = MvAlgebra::Chang;
        assert_eq!(c.neg(&MvElement::Lex(0, 1)), MvElement::Lex(1, -1));
        // (0,3) ⊕ (1,-1) = (1,2) > (1,0), truncated to u
        assert_eq!(c.oplus(&MvElement::Lex(0, 3), &MvElement::Lex(1, -1)), MvElement::Lex(1, 0));
        assert_eq!(c.oplus(&MvElement::Lex(0, 3), &MvElement::Lex(0, 4)), MvElement::Lex(0, 7));
        assert!(!c.contains(&MvElement::Lex(0, -1)));
        assert!(!c.contains(&MvElement::Lex(1, 1)));
    }

    #[test]
    fn product_enumerates_cartesian_product() {
        let p = MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]);
        assert_eq!(p.elements().unwrap().len(), 12);
        assert_eq!(p.describe(), "Ł2×Ł3");
    }

    #[test]
    fn table_roundtrip_preserves_operations() {
        let l2 = MvAlgebra::chain(2);
        let t = MvAlgebra::Finite(l2.to_table().unwrap());
        // indices follow elements(): 0, 1/2, 1
        assert_eq!(t.oplus(&MvElement::Index(1), &MvElement::Index(1)), MvElement::Index(2));
        assert_eq!(t.neg(&MvElement::Index(0)), MvElement::Index(2));
        assert_eq!(t.render(&MvElement::Index(1)), "1/2");
    }

    #[test]
    fn table_validation() {
        assert!(FiniteTable::new(vec![vec![0, 1], vec![1, 1]], vec![1, 0], 0).is_ok());
        assert!(FiniteTable::new(vec![vec![0, 2], vec![1, 1]], vec![1, 0], 0).is_err());
        assert!(FiniteTable::new(vec![vec![0, 1]], vec![1, 0], 0).is_err());
        assert!(FiniteTable::new(vec![], vec![], 0).is_err());
    }
}
