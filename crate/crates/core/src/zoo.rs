//! The built-in structures every check is run against, and the sheaf
//! examples on small spaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::carrier::Budget;
use crate::functors::{phi, psi, IsoSummary};
use crate::goodseq::{check_cancellation, check_monoid_laws};
use crate::lgroup::{check_lu_axioms, check_torsion_free, LGroupU, TORSION_MULTIPLIER};
use crate::logic::{check_interpretation_soundness, check_sequent, interval_sequents, mv_axiom_sequents, LuModel};
use crate::mv::{check_mv_axioms, MvAlgebra};
use crate::report::Report;
use crate::sheaf::{
    check_gamma_sections, check_l_sheaf, check_mv_sheaf, check_phi_sheaf, check_point_reduction, check_psi_sheaf,
    check_sheaf_naturality, ContinuousMap, FiniteSpace, Sheaf,
};
use crate::spec::HomSpec;
use crate::Status;

/// Ł₁ … Ł₆ and Ł₂×Ł₃.
pub fn finite_algebras() -> Vec<MvAlgebra> {
    let mut out: Vec<MvAlgebra> = (1..=6).map(MvAlgebra::chain).collect();
    out.push(MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]));
    out
}

/// The finite algebras, Chang's algebra, and `[0,1] ∩ ℚ`.
pub fn algebras() -> Vec<MvAlgebra> {
    let mut out = finite_algebras();
    out.push(MvAlgebra::Chang);
    out.push(MvAlgebra::rational_interval());
    out
}

/// `(ℤ,n)` for `n ≤ 4`, `ℤ²` with `u = (1,1)`, `ℤ ×lex ℤ` with `u = (1,0)`,
/// and `ℚ` with `u = 1`.
pub fn groups() -> Vec<LGroupU> {
    let mut out: Vec<LGroupU> = (1..=4).map(|n| LGroupU::scaled_int(n).expect("n ≥ 1")).collect();
    out.push(LGroupU::free_pointwise(vec![1, 1]).expect("strong unit"));
    out.push(LGroupU::lex2((1, 0)));
    out.push(LGroupU::rational_vec(vec![crate::rational::int(1)]).expect("positive unit"));
    out
}

fn mv_sheaf(space: FiniteSpace, chains: &[u32]) -> Sheaf<MvAlgebra> {
    let stalks: Vec<MvAlgebra> = chains.iter().map(|&n| MvAlgebra::chain(n)).collect();
    let rs = space
        .strict_pairs()
        .into_iter()
        .map(|(x, y)| ((x, y), HomSpec::Inclusion.build_mv(&stalks[x], &stalks[y]).expect("inclusion")))
        .collect::<BTreeMap<_, _>>();
    Sheaf::new(space, stalks, rs).expect("valid sheaf")
}

fn l_sheaf(space: FiniteSpace, units: &[i64]) -> Sheaf<LGroupU> {
    let stalks: Vec<LGroupU> = units.iter().map(|&n| LGroupU::scaled_int(n).expect("n ≥ 1")).collect();
    let rs = space
        .strict_pairs()
        .into_iter()
        .map(|(x, y)| {
            let h = HomSpec::Scale { factor: units[y] / units[x] };
            ((x, y), h.build_l(&stalks[x], &stalks[y]).expect("scale"))
        })
        .collect::<BTreeMap<_, _>>();
    Sheaf::new(space, stalks, rs).expect("valid sheaf")
}

/// Sierpiński space, `o ↦ Ł₄`, `c ↦ Ł₂`, inclusion.
pub fn sierpinski_mv() -> Sheaf<MvAlgebra> {
    mv_sheaf(FiniteSpace::sierpinski(), &[4, 2])
}

/// Sierpiński space, `o ↦ (ℤ,4)`, `c ↦ (ℤ,2)`, doubling.
pub fn sierpinski_l() -> Sheaf<LGroupU> {
    l_sheaf(FiniteSpace::sierpinski(), &[4, 2])
}

/// The chain `0 ≤ 1 ≤ 2` with `Ł₁ ⊆ Ł₂ ⊆ Ł₄`.
pub fn chain_mv() -> Sheaf<MvAlgebra> {
    mv_sheaf(FiniteSpace::chain(3), &[1, 2, 4])
}

/// The chain `0 ≤ 1 ≤ 2` with `(ℤ,1) → (ℤ,2) → (ℤ,4)` by doubling.
pub fn chain_l() -> Sheaf<LGroupU> {
    l_sheaf(FiniteSpace::chain(3), &[1, 2, 4])
}

/// Identity, constant and chain-collapse maps, each with a sheaf on its
/// target.
pub fn sheaf_maps() -> Vec<(ContinuousMap, Sheaf<MvAlgebra>)> {
    let chain = chain_mv();
    vec![
        (ContinuousMap::identity(chain.space.clone()), chain.clone()),
        (ContinuousMap::identity(FiniteSpace::sierpinski()), sierpinski_mv()),
        (ContinuousMap::constant(FiniteSpace::chain(2), chain.space.clone(), 1).expect("monotone"), chain),
        (
            ContinuousMap::constant(FiniteSpace::sierpinski(), FiniteSpace::point(), 0).expect("monotone"),
            Sheaf::constant(FiniteSpace::point(), MvAlgebra::chain(2)),
        ),
        (
            ContinuousMap::new(FiniteSpace::chain(3), FiniteSpace::chain(2), vec![0, 0, 1]).expect("monotone"),
            mv_sheaf(FiniteSpace::chain(2), &[2, 4]),
        ),
    ]
}

/// The reports of one command, with the budget they ran under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
    pub reports: Vec<Report>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isos: Vec<IsoSummary>,
    pub all_pass: bool,
}

impl RunReport {
    pub fn new(command: &str, budget: &Budget, reports: Vec<Report>) -> Self {
        let all_pass = reports.iter().all(Report::is_pass);
        RunReport {
            tool: "mundici".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            seed: budget.seed,
            samples: budget.samples,
            max_len: budget.max_len,
            reports,
            isos: Vec::new(),
            all_pass,
        }
    }
}

pub fn run_zoo(budget: &Budget) -> RunReport {
    let mut reports = Vec::new();
    for a in algebras() {
        reports.push(check_mv_axioms(&a, budget));
    }
    for g in groups() {
        reports.push(check_lu_axioms(&g, budget));
        reports.push(check_torsion_free(&g, budget, TORSION_MULTIPLIER));
    }
    for a in [MvAlgebra::chain(2), MvAlgebra::chain(3), MvAlgebra::Chang] {
        reports.push(check_monoid_laws(&a, budget));
        reports.push(check_cancellation(&a, budget));
    }
    for a in finite_algebras() {
        reports.push(phi(&a, budget).report);
    }
    reports.push(phi(&MvAlgebra::Chang, budget).report);
    for g in groups() {
        reports.push(psi(&g, budget).report);
    }
    let axioms = mv_axiom_sequents();
    for g in groups() {
        for s in &axioms {
            reports.push(match check_interpretation_soundness(&g, s, budget) {
                Ok(sound) => sound.agreement,
                Err(e) => internal("interpretation-soundness", &format!("{s}"), budget, e.to_string()),
            });
        }
        for s in interval_sequents() {
            reports.push(check_sequent(&LuModel(&g), &s, budget).unwrap_or_else(|e| {
                internal("sequent", &format!("{s}"), budget, e.to_string())
            }));
        }
    }
    for f in [sierpinski_mv(), chain_mv()] {
        reports.push(check_mv_sheaf(&f, budget));
        reports.push(check_phi_sheaf(&f, budget));
    }
    for f in [sierpinski_l(), chain_l()] {
        reports.push(check_l_sheaf(&f, budget));
        reports.push(check_psi_sheaf(&f, budget));
        reports.push(check_gamma_sections(&f, budget));
    }
    for (f, g) in sheaf_maps() {
        reports.push(check_sheaf_naturality(&f, &g, budget));
    }
    reports.push(check_point_reduction(&MvAlgebra::chain(2), budget));
    RunReport::new("zoo", budget, reports)
}

/// A failing report standing in for a check that could not be run.
pub fn internal(check: &str, subject: &str, budget: &Budget, error: String) -> Report {
    Report {
        check: check.into(),
        subject: subject.into(),
        status: Status::Fail,
        exhaustive: false,
        checked: 0,
        seed: budget.seed,
        failure: Some(crate::report::Failure {
            law: "check could not be run".into(),
            witness: vec![crate::report::Binding::new("error", error)],
        }),
        notes: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Carrier;

    #[test]
    fn zoo_contents() {
        let names: Vec<String> = algebras().iter().map(|a| a.describe()).collect();
        assert_eq!(names, ["Ł1", "Ł2", "Ł3", "Ł4", "Ł5", "Ł6", "Ł2×Ł3", "Chang", "[0,1]∩ℚ"]);
        assert_eq!(groups().len(), 7);
        assert_eq!(sheaf_maps().len(), 5);
    }

    #[test]
    fn example_sheaves_are_valid() {
        let b = Budget::default();
        assert!(check_mv_sheaf(&sierpinski_mv(), &b).is_pass());
        assert!(check_l_sheaf(&chain_l(), &b).is_pass());
    }
}
