//! The element-level interface shared by every algebraic structure.

use std::fmt;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A set of elements with exact (possibly semantic) equality.
pub trait Carrier {
    type Elem: Clone + fmt::Debug + PartialEq;

    fn contains(&self, x: &Self::Elem) -> bool;

    /// Equality of elements. Structural by default; quotient carriers
    /// override it.
    fn same(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        x == y
    }

    /// All elements, when the carrier is finite and small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Distinguished elements that sampled checks always include.
    fn landmarks(&self) -> Vec<Self::Elem> {
        Vec::new()
    }

    fn render(&self, x: &Self::Elem) -> String;

    fn describe(&self) -> String;
}

/// Sample count, seed, and good-sequence length bound for a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub samples: usize,
    pub seed: u64,
    pub max_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { samples: 200, seed: 0, max_len: 3 }
    }
}

impl Budget {
    pub fn new(samples: usize, seed: u64, max_len: usize) -> Self {
        Budget { samples, seed, max_len }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Elements a check ranges over.
pub struct Probe<E> {
    pub elems: Vec<E>,
    pub exhaustive: bool,
}

/// Every element of a finite carrier, otherwise landmarks followed by
/// `budget.samples` random draws.
pub fn probe<C: Carrier + ?Sized>(c: &C, budget: &Budget, rng: &mut dyn RngCore) -> Probe<C::Elem> {
    if let Some(elems) = c.elements() {
        return Probe { elems, exhaustive: true };
    }
    let mut elems = c.landmarks();
    elems.extend((0..budget.samples).map(|_| c.sample(rng)));
    Probe { elems, exhaustive: false }
}

/// Up to `limit` index tuples into a probe of size `n`: all of them when
/// there are at most `limit`, otherwise random ones.
pub fn tuples<const K: usize>(n: usize, limit: usize, rng: &mut dyn RngCore) -> (Vec<[usize; K]>, bool) {
    use rand::Rng;
    let total = (n as u128).checked_pow(K as u32).unwrap_or(u128::MAX);
    if total <= limit as u128 {
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = [0usize; K];
        if n == 0 {
            return (out, true);
        }
        loop {
            out.push(idx);
            let mut k = 0;
            loop {
                if k == K {
                    return (out, true);
                }
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
    let out = (0..limit)
        .map(|_| {
            let mut t = [0usize; K];
            for slot in t.iter_mut() {
                *slot = rng.gen_range(0..n);
            }
            t
        })
        .collect();
    (out, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_enumerate_when_small() {
        let mut rng = Budget::default().rng();
        let (t, all) = tuples::<2>(3, 100, &mut rng);
        assert!(all);
        assert_eq!(t.len(), 9);
        assert!(t.contains(&[2, 1]));
        let (t, all) = tuples::<3>(10, 50, &mut rng);
        assert!(!all);
        assert_eq!(t.len(), 50);
    }
}
