//! Geometric logic over the signatures of MV-algebras and of ℓ-groups with
//! unit: syntax, a text format, evaluation in concrete models, and the
//! interpretation of the first theory in the second.
//!
//! Checking a sequent means checking its validity in one model on
//! enumerated or sampled assignments; nothing here searches for proofs.

pub mod ast;
pub mod eval;
pub mod interpret;
pub mod parse;

pub use ast::{Bound, Formula, Op, Scalar, Sequent, Signature, Term};
pub use eval::{check_sequent, eval_term, holds, Env, EvalError, LuModel, Model, MvModel, Search, Truth};
pub use interpret::{
    check_interpretation_soundness, guard, interpret, interpret_formula, interpret_term, InterpretError, Soundness,
    SoundnessError,
};
pub use parse::{parse_formula, parse_sequent, parse_sequents, parse_term, ParseError};

fn parse_all(src: &[&str]) -> Vec<Sequent> {
    src.iter().map(|s| parse_sequent(s).expect("built-in sequent parses")).collect()
}

/// The six MV axioms.
pub fn mv_axiom_sequents() -> Vec<Sequent> {
    parse_all(&[
        "tt |- [x,y,z] oplus(x, oplus(y, z)) = oplus(oplus(x, y), z)",
        "tt |- [x,y] oplus(x, y) = oplus(y, x)",
        "tt |- [x] oplus(x, 0) = x",
        "tt |- [x] neg(neg(x)) = x",
        "tt |- [x] oplus(x, neg(0)) = neg(0)",
        "tt |- [x,y] oplus(neg(oplus(neg(x), y)), y) = oplus(neg(oplus(neg(y), x)), x)",
    ])
}

/// The MV axioms written out over Σ_Lu on the interval `[0,u]`: the
/// sequents (i)–(vi) whose validity makes `[0,u]` an MV-algebra.
pub fn interval_sequents() -> Vec<Sequent> {
    const X: &str = "0 <= x & x <= u";
    const XY: &str = "0 <= x & x <= u & (0 <= y & y <= u)";
    const XYZ: &str = "0 <= x & x <= u & (0 <= y & y <= u) & (0 <= z & z <= u)";
    let not = |t: &str| format!("add(u, minus({t}))");
    let plus = |a: &str, b: &str| format!("inf(u, add({a}, {b}))");
    let vi = |x: &str, y: &str| plus(&not(&plus(&not(x), y)), y);
    let src = [
        format!("{XYZ} |- [x,y,z] {} = {}", plus("x", &plus("y", "z")), plus(&plus("x", "y"), "z")),
        format!("{XY} |- [x,y] {} = {}", plus("x", "y"), plus("y", "x")),
        format!("{X} |- [x] {} = x", plus("x", "0")),
        format!("{X} |- [x] {} = x", not(&not("x"))),
        format!("{X} |- [x] {} = {}", plus("x", &not("0")), not("0")),
        format!("{XY} |- [x,y] {} = {}", vi("x", "y"), vi("y", "x")),
    ];
    src.iter().map(|s| parse_sequent(s).expect("built-in sequent parses")).collect()
}

/// Axioms 1–14 of ℓ-groups with strong unit; axiom 14 uses an `auto`
/// bound, resolved by the model's unit-bound witnesses.
pub fn lu_axiom_sequents() -> Vec<Sequent> {
    parse_all(&[
        "tt |- [x,y,z] add(x, add(y, z)) = add(add(x, y), z)",
        "tt |- [x] add(x, 0) = x",
        "tt |- [x] add(x, minus(x)) = 0",
        "tt |- [x,y] add(x, y) = add(y, x)",
        "tt |- [x] x <= x",
        "x <= y & y <= x |- [x,y] x = y",
        "x <= y & y <= z |- [x,y,z] x <= z",
        "tt |- [x,y] inf(x, y) <= x & inf(x, y) <= y",
        "z <= x & z <= y |- [x,y,z] z <= inf(x, y)",
        "tt |- [x,y] x <= sup(x, y) & y <= sup(x, y)",
        "x <= z & y <= z |- [x,y,z] sup(x, y) <= z",
        "x <= y |- [x,y,t] add(t, x) <= add(t, y)",
        "tt |- [] 0 <= u",
        "0 <= x |- [x] bigvee n<=auto. x <= times(n, u)",
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::{Budget, Carrier};
    use crate::functors::{gamma, l_group};
    use crate::lgroup::LGroupU;
    use crate::mv::MvAlgebra;

    #[test]
    fn interval_sequents_are_the_guarded_translations() {
        for (ax, seq) in mv_axiom_sequents().iter().zip(interval_sequents()) {
            assert_eq!(guard(&interpret(ax).unwrap()), seq);
        }
    }

    #[test]
    fn mv_axioms_hold_on_chains_and_gamma() {
        let b = Budget::default();
        let l4 = MvAlgebra::chain(4);
        let g = gamma(LGroupU::lex2((1, 0)));
        for s in mv_axiom_sequents() {
            let rep = check_sequent(&MvModel(&l4), &s, &b).unwrap();
            assert!(rep.is_pass() && rep.exhaustive, "{rep}");
            assert!(check_sequent(&MvModel(&g), &s, &b).unwrap().is_pass());
        }
    }

    #[test]
    fn lu_axioms_hold_on_groups_and_l_of_finite_algebras() {
        let b = Budget::new(60, 0, 3);
        let lex = LGroupU::lex2((1, 0));
        let l3 = l_group(MvAlgebra::chain(3), 3);
        let l23 = l_group(MvAlgebra::product(vec![MvAlgebra::chain(2), MvAlgebra::chain(3)]), 2);
        for s in lu_axiom_sequents() {
            assert!(check_sequent(&LuModel(&lex), &s, &b).unwrap().is_pass(), "{s}");
            assert!(check_sequent(&LuModel(&l3), &s, &b).unwrap().is_pass(), "{s}");
            assert!(check_sequent(&LuModel(&l23), &s, &b).unwrap().is_pass(), "{s}");
        }
    }

    #[test]
    fn non_strong_unit_leaves_axiom_14_undecided() {
        let g = LGroupU::free_pointwise(vec![1, 0]).unwrap();
        let ax14 = lu_axiom_sequents().pop().unwrap();
        let rep = check_sequent(&LuModel(&g), &ax14, &Budget::default()).unwrap();
        assert_eq!(rep.status, crate::Status::Unknown);
        // with an explicit bound the failure becomes a witness
        let explicit = parse_sequent("0 <= x |- [x] bigvee n<=40. x <= times(n, u)").unwrap();
        let rep = check_sequent(&LuModel(&g), &explicit, &Budget::default()).unwrap();
        assert!(rep.is_fail());
    }

    #[test]
    fn interval_sequents_hold_on_the_group_zoo() {
        let b = Budget::default();
        let groups = vec![
            LGroupU::scaled_int(1).unwrap(),
            LGroupU::scaled_int(4).unwrap(),
            LGroupU::free_pointwise(vec![1, 1]).unwrap(),
            LGroupU::lex2((1, 0)),
            LGroupU::rational_vec(vec![crate::rational::int(1)]).unwrap(),
        ];
        for g in &groups {
            for s in interval_sequents() {
                assert!(check_sequent(&LuModel(g), &s, &b).unwrap().is_pass(), "{s} in {}", g.describe());
            }
        }
    }
}
