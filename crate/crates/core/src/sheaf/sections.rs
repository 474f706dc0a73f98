use rand::RngCore;

use crate::carrier::Carrier;
use crate::functors::Owned;
use crate::lgroup::{AbelianGroup, LGroup};
use crate::mv::MvStructure;

use super::{Sheaf, SheafError};

const ENUMERATION_LIMIT: usize = 100_000;
const SAMPLE_TRIES: usize = 64;

/// `F(U)`: families `(s_x)_{x∈U}` with `r(x, y)(s_x) = s_y` whenever
/// `x ≤ y`, under pointwise operations. A family is determined by its
/// values at the minimal points of `U`.
pub struct Sections<S: Carrier> {
    sheaf: Sheaf<S>,
    points: Vec<usize>,
    mins: Vec<usize>,
    /// For each entry of `points`, the position in `mins` of a point below it.
    anchor: Vec<usize>,
}

impl<S: Carrier + Clone> Clone for Sections<S> {
    fn clone(&self) -> Self {
        Sections {
            sheaf: self.sheaf.clone(),
            points: self.points.clone(),
            mins: self.mins.clone(),
            anchor: self.anchor.clone(),
        }
    }
}

impl<S: Carrier + Owned> Sections<S> {
    pub(super) fn new(sheaf: Sheaf<S>, open: &[usize]) -> Result<Self, SheafError> {
        let space = &sheaf.space;
        let mut points = open.to_vec();
        points.sort_unstable();
        points.dedup();
        if !space.is_open(&points) {
            let names = points.iter().map(|&i| space.names().get(i).cloned().unwrap_or_else(|| i.to_string()));
            return Err(SheafError::NotOpen(names.collect::<Vec<_>>().join(", ")));
        }
        let mins = space.minimal(&points);
        let anchor = points
            .iter()
            .map(|&y| mins.iter().position(|&m| space.leq(m, y)).expect("every point lies above a minimal one"))
            .collect();
        Ok(Sections { sheaf, points, mins, anchor })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn sheaf(&self) -> &Sheaf<S> {
        &self.sheaf
    }

    /// The stalk at the `i`-th point of `U`.
    pub fn stalk_at(&self, i: usize) -> &S {
        self.sheaf.stalk(self.points[i])
    }

    /// The family determined by values at the minimal points; not checked
    /// for compatibility.
    pub fn extend(&self, at_mins: &[S::Elem]) -> Vec<S::Elem> {
        self.points
            .iter()
            .zip(&self.anchor)
            .map(|(&y, &a)| self.sheaf.restrict(self.mins[a], y, &at_mins[a]))
            .collect()
    }

    /// Projection to the stalk at `x ∈ U`.
    pub fn project(&self, s: &[S::Elem], x: usize) -> Option<S::Elem> {
        self.points.iter().position(|&p| p == x).map(|i| s[i].clone())
    }

    fn compatible_mins(&self, chosen: &[S::Elem]) -> bool {
        let space = &self.sheaf.space;
        let k = chosen.len();
        let m = &self.mins;
        (0..k).all(|i| {
            (0..i).all(|j| {
                self.points.iter().filter(|&&y| space.leq(m[i], y) && space.leq(m[j], y)).all(|&y| {
                    self.sheaf.stalk(y).same(
                        &self.sheaf.restrict(m[i], y, &chosen[i]),
                        &self.sheaf.restrict(m[j], y, &chosen[j]),
                    )
                })
            })
        })
    }

    fn product(&self, choices: Vec<Vec<S::Elem>>) -> Option<Vec<Vec<S::Elem>>> {
        let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()))?;
        if total > ENUMERATION_LIMIT {
            return None;
        }
        let mut partial: Vec<Vec<S::Elem>> = vec![Vec::new()];
        for c in &choices {
            let mut next = Vec::new();
            for p in &partial {
                for v in c {
                    let mut q = p.clone();
                    q.push(v.clone());
                    if self.compatible_mins(&q) {
                        next.push(q);
                    }
                }
            }
            partial = next;
        }
        Some(partial.iter().map(|p| self.extend(p)).filter(|s| self.contains(s)).collect())
    }
}

impl<S: Carrier + Owned> Carrier for Sections<S> {
    type Elem = Vec<S::Elem>;

    fn contains(&self, s: &Vec<S::Elem>) -> bool {
        if s.len() != self.points.len() {
            return false;
        }
        let space = &self.sheaf.space;
        self.points.iter().zip(s).all(|(&x, v)| self.sheaf.stalk(x).contains(v))
            && self.points.iter().enumerate().all(|(i, &x)| {
                self.points.iter().enumerate().all(|(j, &y)| {
                    x == y || !space.leq(x, y) || self.sheaf.stalk(y).same(&self.sheaf.restrict(x, y, &s[i]), &s[j])
                })
            })
    }

    fn same(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> bool {
        a.len() == b.len() && self.points.iter().zip(a.iter().zip(b)).all(|(&x, (p, q))| self.sheaf.stalk(x).same(p, q))
    }

    fn elements(&self) -> Option<Vec<Vec<S::Elem>>> {
        let choices = self.mins.iter().map(|&m| self.sheaf.stalk(m).elements()).collect::<Option<Vec<_>>>()?;
        self.product(choices)
    }

    /// Values at the minimal points are sampled one at a time and kept when
    /// compatible with the earlier ones; landmarks are the fallback.
    fn sample(&self, rng: &mut dyn RngCore) -> Vec<S::Elem> {
        let mut chosen: Vec<S::Elem> = Vec::new();
        for &m in &self.mins {
            let stalk = self.sheaf.stalk(m);
            let candidates = (0..SAMPLE_TRIES).map(|_| stalk.sample(rng)).chain(stalk.landmarks());
            let mut picked = None;
            for c in candidates {
                chosen.push(c);
                if self.compatible_mins(&chosen) {
                    picked = chosen.pop();
                    break;
                }
                chosen.pop();
            }
            chosen.push(picked.expect("no compatible value at a minimal point"));
        }
        self.extend(&chosen)
    }

    fn landmarks(&self) -> Vec<Vec<S::Elem>> {
        let lists: Vec<Vec<S::Elem>> = self.mins.iter().map(|&m| self.sheaf.stalk(m).landmarks()).collect();
        let longest = lists.iter().map(Vec::len).max().unwrap_or(0);
        (0..longest)
            .filter_map(|k| {
                let pick: Option<Vec<S::Elem>> = lists.iter().map(|l| l.get(k).cloned()).collect();
                pick.filter(|p| self.compatible_mins(p)).map(|p| self.extend(&p))
            })
            .collect()
    }

    fn render(&self, s: &Vec<S::Elem>) -> String {
        let parts: Vec<String> = self
            .points
            .iter()
            .zip(s)
            .map(|(&x, v)| format!("{}={}", self.sheaf.space.name(x), self.sheaf.stalk(x).render(v)))
            .collect();
        format!("({})", parts.join(", "))
    }

    fn describe(&self) -> String {
        format!("F({{{}}})", self.sheaf.space.render_set(&self.points))
    }
}

impl<S: MvStructure + Owned> MvStructure for Sections<S> {
    fn zero(&self) -> Vec<S::Elem> {
        self.points.iter().map(|&x| MvStructure::zero(self.sheaf.stalk(x))).collect()
    }

    fn oplus(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| s.oplus(p, q))
    }

    fn neg(&self, a: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.points.iter().zip(a).map(|(&x, p)| MvStructure::neg(self.sheaf.stalk(x), p)).collect()
    }

    fn leq(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> bool {
        self.points.iter().zip(a.iter().zip(b)).all(|(&x, (p, q))| MvStructure::leq(self.sheaf.stalk(x), p, q))
    }

    fn inf(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| MvStructure::inf(s, p, q))
    }

    fn sup(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| MvStructure::sup(s, p, q))
    }
}

impl<S: Carrier> Sections<S> {
    fn pointwise(
        &self,
        a: &[S::Elem],
        b: &[S::Elem],
        op: impl Fn(&S, &S::Elem, &S::Elem) -> S::Elem,
    ) -> Vec<S::Elem> {
        self.points.iter().zip(a.iter().zip(b)).map(|(&x, (p, q))| op(&self.sheaf.stalks[x], p, q)).collect()
    }
}

impl<S: LGroup + Owned> AbelianGroup for Sections<S> {
    fn zero(&self) -> Vec<S::Elem> {
        self.points.iter().map(|&x| AbelianGroup::zero(self.sheaf.stalk(x))).collect()
    }

    fn add(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| s.add(p, q))
    }

    fn neg(&self, a: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.points.iter().zip(a).map(|(&x, p)| AbelianGroup::neg(self.sheaf.stalk(x), p)).collect()
    }
}

impl<S: LGroup + Owned> LGroup for Sections<S> {
    fn leq(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> bool {
        self.points.iter().zip(a.iter().zip(b)).all(|(&x, (p, q))| LGroup::leq(self.sheaf.stalk(x), p, q))
    }

    fn inf(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| LGroup::inf(s, p, q))
    }

    fn sup(&self, a: &Vec<S::Elem>, b: &Vec<S::Elem>) -> Vec<S::Elem> {
        self.pointwise(a, b, |s, p, q| LGroup::sup(s, p, q))
    }

    fn unit(&self) -> Vec<S::Elem> {
        self.points.iter().map(|&x| self.sheaf.stalk(x).unit()).collect()
    }

    /// The largest stalk bound: `|s| ≤ n·u` holds pointwise.
    fn unit_bound(&self, a: &Vec<S::Elem>) -> Option<u64> {
        self.points.iter().zip(a).try_fold(0, |acc, (&x, p)| Some(acc.max(self.sheaf.stalk(x).unit_bound(p)?)))
    }

    fn interval_elements(&self) -> Option<Vec<Vec<S::Elem>>> {
        let choices =
            self.mins.iter().map(|&m| self.sheaf.stalk(m).interval_elements()).collect::<Option<Vec<_>>>()?;
        self.product(choices)
    }
}
