use rand::{Rng, RngCore};

use crate::carrier::Carrier;

use super::AbelianGroup;

/// ℤ/m₁ × … × ℤ/mₖ. Not an ℓ-group unless trivial; used to exhibit the
/// torsion that rules out finite ℓ-groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelian {
    moduli: Vec<u64>,
}

impl FiniteAbelian {
    /// Panics on a zero modulus.
    pub fn new(moduli: Vec<u64>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1), "moduli must be ≥ 1");
        FiniteAbelian { moduli }
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    /// Every product of cyclic groups of order at most `max_order`, with
    /// non-decreasing moduli ≥ 2 (so every isomorphism class appears),
    /// starting with the trivial group.
    pub fn all_up_to(max_order: u64) -> Vec<FiniteAbelian> {
        fn go(min: u64, budget: u64, prefix: &mut Vec<u64>, out: &mut Vec<FiniteAbelian>) {
            out.push(FiniteAbelian::new(prefix.clone()));
            for m in min.max(2)..=budget {
                prefix.push(m);
                go(m, budget / m, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(2, max_order, &mut Vec::new(), &mut out);
        out
    }
}

impl Carrier for FiniteAbelian {
    type Elem = Vec<u64>;

    fn contains(&self, x: &Vec<u64>) -> bool {
        x.len() == self.moduli.len() && x.iter().zip(&self.moduli).all(|(a, m)| a < m)
    }

    fn elements(&self) -> Option<Vec<Vec<u64>>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    (0..m).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        Some(out)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        self.moduli.iter().map(|&m| rng.gen_range(0..m)).collect()
    }

    fn render(&self, x: &Vec<u64>) -> String {
        let parts: Vec<String> = x.iter().map(|a| a.to_string()).collect();
        format!("({})", parts.join(","))
    }

    fn describe(&self) -> String {
        if self.moduli.is_empty() {
            return "trivial group".to_string();
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("ℤ/{m}")).collect();
        parts.join("×")
    }
}

impl AbelianGroup for FiniteAbelian {
    fn zero(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }

    fn add(&self, x: &Vec<u64>, y: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(y).zip(&self.moduli).map(|((a, b), m)| (a + b) % m).collect()
    }

    fn neg(&self, x: &Vec<u64>) -> Vec<u64> {
        x.iter().zip(&self.moduli).map(|(a, m)| (m - a) % m).collect()
    }
}
