use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use rand::{Rng, RngCore};

use crate::carrier::Carrier;
use crate::rational::{self, Q};

use super::{AbelianGroup, LGroup, LGroupError};

/// The concrete ℓ-group representations.
#[derive(Debug, Clone, PartialEq)]
pub enum LGroupU {
    /// ℤᵏ with the coordinatewise order. The unit is strong iff every
    /// coordinate is ≥ 1; other units are accepted but flagged.
    FreePointwise { unit: Vec<i64> },
    /// ℤ² with the lexicographic order.
    LexZ2 { unit: (i64, i64) },
    /// ℤ with unit `n ≥ 1`, i.e. (1/n)ℤ with unit 1.
    ScaledInt { n: i64 },
    /// ℚᵏ with the coordinatewise order.
    RationalVec { unit: Vec<Q> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LGroupElement {
    Int(i64),
    Ints(Vec<i64>),
    Rats(Vec<Q>),
}

impl fmt::Display for LGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LGroupElement::Int(n) => write!(f, "{n}"),
            LGroupElement::Ints(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            LGroupElement::Rats(xs) => {
                let parts: Vec<String> = xs.iter().map(rational::render).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

const SAMPLE_RANGE: i64 = 20;

impl LGroupU {
    pub fn free_pointwise(unit: Vec<i64>) -> Result<Self, LGroupError> {
        if unit.is_empty() {
            return Err(LGroupError::Invalid("ℤᵏ needs k ≥ 1".into()));
        }
        Ok(LGroupU::FreePointwise { unit })
    }

    pub fn lex2(unit: (i64, i64)) -> Self {
        LGroupU::LexZ2 { unit }
    }

    pub fn scaled_int(n: i64) -> Result<Self, LGroupError> {
        if n < 1 {
            return Err(LGroupError::Invalid(format!("(ℤ,n) needs n ≥ 1, got {n}")));
        }
        Ok(LGroupU::ScaledInt { n })
    }

    pub fn rational_vec(unit: Vec<Q>) -> Result<Self, LGroupError> {
        if unit.is_empty() {
            return Err(LGroupError::Invalid("ℚᵏ needs k ≥ 1".into()));
        }
        Ok(LGroupU::RationalVec { unit })
    }

    /// True when the unit is known not to be strong (a coordinate is
    /// non-positive, or the lexicographic leading entry is < 1).
    pub fn flagged_non_strong(&self) -> bool {
        match self {
            LGroupU::FreePointwise { unit } => unit.iter().any(|&c| c < 1),
            LGroupU::LexZ2 { unit } => unit.0 < 1,
            LGroupU::ScaledInt { n } => *n < 1,
            LGroupU::RationalVec { unit } => unit.iter().any(|c| !c.is_positive()),
        }
    }

    fn dim(&self) -> usize {
        match self {
            LGroupU::FreePointwise { unit } => unit.len(),
            LGroupU::LexZ2 { .. } => 2,
            LGroupU::ScaledInt { .. } => 1,
            LGroupU::RationalVec { unit } => unit.len(),
        }
    }

    fn ints<'a>(&self, x: &'a LGroupElement) -> &'a [i64] {
        match x {
            LGroupElement::Ints(v) if v.len() == self.dim() => v,
            _ => panic!("element {x} is not in the carrier of {}", self.describe()),
        }
    }

    fn rats<'a>(&self, x: &'a LGroupElement) -> &'a [Q] {
        match x {
            LGroupElement::Rats(v) if v.len() == self.dim() => v,
            _ => panic!("element {x} is not in the carrier of {}", self.describe()),
        }
    }

    fn int(&self, x: &LGroupElement) -> i64 {
        match x {
            LGroupElement::Int(n) => *n,
            _ => panic!("element {x} is not in the carrier of {}", self.describe()),
        }
    }

    fn lex(&self, x: &LGroupElement) -> (i64, i64) {
        let v = self.ints(x);
        (v[0], v[1])
    }

    fn zip_ints(&self, x: &LGroupElement, y: &LGroupElement, f: impl Fn(i64, i64) -> i64) -> LGroupElement {
        LGroupElement::Ints(self.ints(x).iter().zip(self.ints(y)).map(|(a, b)| f(*a, *b)).collect())
    }

    fn zip_rats(&self, x: &LGroupElement, y: &LGroupElement, f: impl Fn(&Q, &Q) -> Q) -> LGroupElement {
        LGroupElement::Rats(self.rats(x).iter().zip(self.rats(y)).map(|(a, b)| f(a, b)).collect())
    }

    fn lattice(&self, x: &LGroupElement, y: &LGroupElement, keep: Ordering) -> LGroupElement {
        let pick = |o: Ordering| if o == keep { x.clone() } else { y.clone() };
        match self {
            LGroupU::FreePointwise { .. } => self.zip_ints(x, y, |a, b| if a.cmp(&b) == keep { a } else { b }),
            LGroupU::RationalVec { .. } => {
                self.zip_rats(x, y, |a, b| if a.cmp(b) == keep { a.clone() } else { b.clone() })
            }
            LGroupU::LexZ2 { .. } => pick(self.lex(x).cmp(&self.lex(y))),
            LGroupU::ScaledInt { .. } => pick(self.int(x).cmp(&self.int(y))),
        }
    }
}

impl Carrier for LGroupU {
    type Elem = LGroupElement;

    fn contains(&self, x: &LGroupElement) -> bool {
        match (self, x) {
            (LGroupU::FreePointwise { unit }, LGroupElement::Ints(v)) => v.len() == unit.len(),
            (LGroupU::LexZ2 { .. }, LGroupElement::Ints(v)) => v.len() == 2,
            (LGroupU::ScaledInt { .. }, LGroupElement::Int(_)) => true,
            (LGroupU::RationalVec { unit }, LGroupElement::Rats(v)) => v.len() == unit.len(),
            _ => false,
        }
    }

    fn sample(&self, rng: &mut dyn RngCore) -> LGroupElement {
        let int = |rng: &mut dyn RngCore| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
        match self {
            LGroupU::ScaledInt { .. } => LGroupElement::Int(int(rng)),
            LGroupU::FreePointwise { .. } | LGroupU::LexZ2 { .. } => {
                LGroupElement::Ints((0..self.dim()).map(|_| int(rng)).collect())
            }
            LGroupU::RationalVec { .. } => LGroupElement::Rats(
                (0..self.dim())
                    .map(|_| {
                        let d = rng.gen_range(1..=4);
                        rational::q(rng.gen_range(-2 * SAMPLE_RANGE..=2 * SAMPLE_RANGE), d)
                    })
                    .collect(),
            ),
        }
    }

    fn landmarks(&self) -> Vec<LGroupElement> {
        let u = self.unit();
        let mut out = vec![self.zero(), u.clone(), self.neg(&u)];
        match self {
            LGroupU::FreePointwise { unit } => {
                for i in 0..unit.len() {
                    let mut e = vec![0; unit.len()];
                    e[i] = 1;
                    out.push(LGroupElement::Ints(e.clone()));
                    e[i] = -1;
                    out.push(LGroupElement::Ints(e));
                }
            }
            LGroupU::LexZ2 { .. } => {
                for (a, b) in [(1, 0), (0, 1), (0, -1), (-1, 0), (0, -5), (2, -3), (-1, 7)] {
                    out.push(LGroupElement::Ints(vec![a, b]));
                }
            }
            LGroupU::ScaledInt { n } => {
                out.extend([1, -1, n + 1, -3].map(LGroupElement::Int));
            }
            LGroupU::RationalVec { unit } => {
                out.push(LGroupElement::Rats(vec![rational::q(1, 2); unit.len()]));
                out.push(LGroupElement::Rats(vec![rational::q(-7, 3); unit.len()]));
            }
        }
        out
    }

    fn render(&self, x: &LGroupElement) -> String {
        x.to_string()
    }

    fn describe(&self) -> String {
        match self {
            LGroupU::FreePointwise { unit } => {
                format!("ℤ{} pointwise u={}", superscript(unit.len()), LGroupElement::Ints(unit.clone()))
            }
            LGroupU::LexZ2 { unit } => format!("ℤ²lex u=({},{})", unit.0, unit.1),
            LGroupU::ScaledInt { n } => format!("(ℤ,{n})"),
            LGroupU::RationalVec { unit } => {
                format!("ℚ{} u={}", superscript(unit.len()), LGroupElement::Rats(unit.clone()))
            }
        }
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if k == 1 {
        return String::new();
    }
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize]).collect()
}

impl AbelianGroup for LGroupU {
    fn zero(&self) -> LGroupElement {
        match self {
            LGroupU::ScaledInt { .. } => LGroupElement::Int(0),
            LGroupU::FreePointwise { .. } | LGroupU::LexZ2 { .. } => LGroupElement::Ints(vec![0; self.dim()]),
            LGroupU::RationalVec { .. } => LGroupElement::Rats(vec![Q::zero(); self.dim()]),
        }
    }

    fn add(&self, x: &LGroupElement, y: &LGroupElement) -> LGroupElement {
        match self {
            LGroupU::ScaledInt { .. } => LGroupElement::Int(self.int(x) + self.int(y)),
            LGroupU::FreePointwise { .. } | LGroupU::LexZ2 { .. } => self.zip_ints(x, y, |a, b| a + b),
            LGroupU::RationalVec { .. } => self.zip_rats(x, y, |a, b| a + b),
        }
    }

    fn neg(&self, x: &LGroupElement) -> LGroupElement {
        match self {
            LGroupU::ScaledInt { .. } => LGroupElement::Int(-self.int(x)),
            LGroupU::FreePointwise { .. } | LGroupU::LexZ2 { .. } => {
                LGroupElement::Ints(self.ints(x).iter().map(|a| -a).collect())
            }
            LGroupU::RationalVec { .. } => LGroupElement::Rats(self.rats(x).iter().map(|a| -a).collect()),
        }
    }

    fn times(&self, n: u64, x: &LGroupElement) -> LGroupElement {
        let k = i64::try_from(n).expect("multiplier fits in i64");
        match self {
            LGroupU::ScaledInt { .. } => LGroupElement::Int(k * self.int(x)),
            LGroupU::FreePointwise { .. } | LGroupU::LexZ2 { .. } => {
                LGroupElement::Ints(self.ints(x).iter().map(|a| k * a).collect())
            }
            LGroupU::RationalVec { .. } => {
                LGroupElement::Rats(self.rats(x).iter().map(|a| a * rational::int(k)).collect())
            }
        }
    }
}

impl LGroup for LGroupU {
    fn leq(&self, x: &LGroupElement, y: &LGroupElement) -> bool {
        match self {
            LGroupU::ScaledInt { .. } => self.int(x) <= self.int(y),
            LGroupU::FreePointwise { .. } => self.ints(x).iter().zip(self.ints(y)).all(|(a, b)| a <= b),
            LGroupU::LexZ2 { .. } => self.lex(x) <= self.lex(y),
            LGroupU::RationalVec { .. } => self.rats(x).iter().zip(self.rats(y)).all(|(a, b)| a <= b),
        }
    }

    fn inf(&self, x: &LGroupElement, y: &LGroupElement) -> LGroupElement {
        self.lattice(x, y, Ordering::Less)
    }

    fn sup(&self, x: &LGroupElement, y: &LGroupElement) -> LGroupElement {
        self.lattice(x, y, Ordering::Greater)
    }

    fn unit(&self) -> LGroupElement {
        match self {
            LGroupU::FreePointwise { unit } => LGroupElement::Ints(unit.clone()),
            LGroupU::LexZ2 { unit } => LGroupElement::Ints(vec![unit.0, unit.1]),
            LGroupU::ScaledInt { n } => LGroupElement::Int(*n),
            LGroupU::RationalVec { unit } => LGroupElement::Rats(unit.clone()),
        }
    }

    /// Minimal coordinatewise witnesses: `ceil(|x_i| / u_i)` for the
    /// pointwise orders, `ceil(|x| / n)` for (ℤ,n), and `|a| div p + 1` for
    /// `x = (a, b)` in lexicographic ℤ² with unit `(p, q)`, `p ≥ 1`.
    fn unit_bound(&self, x: &LGroupElement) -> Option<u64> {
        match self {
            LGroupU::FreePointwise { unit } => {
                let mut n = 0u64;
                for (&c, &ui) in self.ints(x).iter().zip(unit) {
                    if c == 0 {
                        continue;
                    }
                    if ui < 1 {
                        return None;
                    }
                    n = n.max(c.unsigned_abs().div_ceil(ui as u64));
                }
                Some(n)
            }
            LGroupU::ScaledInt { n } => Some(self.int(x).unsigned_abs().div_ceil(*n as u64)),
            LGroupU::LexZ2 { unit: (p, q) } => {
                let (a, b) = self.lex(x);
                if *p >= 1 {
                    Some(a.unsigned_abs() / (*p as u64) + 1)
                } else if a == 0 && *p == 0 && (b == 0 || *q > 0) {
                    Some(if b == 0 { 0 } else { b.unsigned_abs().div_ceil(*q as u64) })
                } else {
                    None
                }
            }
            LGroupU::RationalVec { unit } => {
                let mut n = 0u64;
                for (c, ui) in self.rats(x).iter().zip(unit) {
                    if c.is_zero() {
                        continue;
                    }
                    if !ui.is_positive() {
                        return None;
                    }
                    n = n.max(rational::ceil_ratio(c, ui));
                }
                Some(n)
            }
        }
    }

    fn interval_elements(&self) -> Option<Vec<LGroupElement>> {
        match self {
            LGroupU::ScaledInt { n } => Some((0..=*n).map(LGroupElement::Int).collect()),
            LGroupU::FreePointwise { unit } => {
                if unit.iter().any(|&c| c < 0) {
                    return None;
                }
                let size: u128 = unit.iter().map(|&c| c as u128 + 1).product();
                if size > 100_000 {
                    return None;
                }
                let mut out = vec![Vec::new()];
                for &c in unit {
                    out = out
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (0..=c).map(move |v| {
                                let mut p = prefix.clone();
                                p.push(v);
                                p
                            })
                        })
                        .collect();
                }
                Some(out.into_iter().map(LGroupElement::Ints).collect())
            }
            _ => None,
        }
    }

    fn sample_interval(&self, rng: &mut dyn RngCore) -> LGroupElement {
        match self {
            LGroupU::ScaledInt { n } => LGroupElement::Int(rng.gen_range(0..=*n)),
            LGroupU::FreePointwise { unit } => {
                LGroupElement::Ints(unit.iter().map(|&c| rng.gen_range(0..=c.max(0))).collect())
            }
            LGroupU::LexZ2 { unit: (p, q) } if *p >= 1 => {
                let hi = rng.gen_range(0..=*p);
                let k = rng.gen_range(0..=SAMPLE_RANGE);
                let lo = if hi == 0 {
                    k
                } else if hi == *p {
                    q - k
                } else {
                    rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)
                };
                LGroupElement::Ints(vec![hi, lo])
            }
            LGroupU::RationalVec { unit } => LGroupElement::Rats(
                unit.iter()
                    .map(|c| {
                        if !c.is_positive() {
                            return Q::zero();
                        }
                        let d = rng.gen_range(1..=6);
                        c * rational::q(rng.gen_range(0..=d), d)
                    })
                    .collect(),
            ),
            LGroupU::LexZ2 { .. } => {
                let x = self.sample(rng);
                self.inf(&self.unit(), &self.sup(&self.zero(), &x))
            }
        }
    }
}
