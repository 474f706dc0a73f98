//! One line per acceptance criterion; exits non-zero if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use serde_json::Value;

use mundici::functors::{f_map, phi, psi, psi_map, GroupElement};
use mundici::goodseq::{check_cancellation, check_monoid_laws};
use mundici::lgroup::{check_lu_axioms, check_torsion_free, TORSION_MULTIPLIER};
use mundici::logic::{
    check_interpretation_soundness, check_sequent, guard, interpret, interval_sequents, mv_axiom_sequents, LuModel,
    MvModel,
};
use mundici::mv::{check_mv_axioms, find_isomorphism};
use mundici::rational::{self, Q};
use mundici::sheaf::{
    check_gamma_sections, check_l_sheaf, check_mv_sheaf, check_phi_sheaf, check_point_reduction, check_psi_sheaf,
    check_sheaf_naturality, gamma_sheaf, l_sheaf,
};
use mundici::zoo::{self, RunReport};
use mundici::{
    gamma, l_group, AbelianGroup, Budget, Carrier, GoodSequence, LGroup, LGroupElement, LGroupU, MvAlgebra,
    MvElement, Report,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(r: &Report) -> Result<(), String> {
    if r.is_pass() {
        Ok(())
    } else {
        Err(r.to_string())
    }
}

fn require_exhaustive(r: &Report) -> Result<(), String> {
    require(r)?;
    if r.exhaustive {
        Ok(())
    } else {
        Err(format!("expected an exhaustive run: {r}"))
    }
}

fn mv_axioms() -> Outcome {
    let b = Budget::default();
    for a in zoo::finite_algebras() {
        require_exhaustive(&check_mv_axioms(&a, &b))?;
    }
    for a in [MvAlgebra::Chang, MvAlgebra::rational_interval()] {
        let r = check_mv_axioms(&a, &b);
        require(&r)?;
        if r.exhaustive {
            return Err(format!("{} cannot be enumerated", a.describe()));
        }
    }
    Ok("Ł1..Ł6, Ł2×Ł3 exhaustive; Chang, [0,1]∩ℚ with 200 samples".into())
}

fn lu_axioms() -> Outcome {
    let b = Budget::default();
    let groups = zoo::groups();
    for g in &groups {
        require(&check_lu_axioms(g, &b))?;
    }
    let planted = LGroupU::free_pointwise(vec![1, 0]).map_err(|e| e.to_string())?;
    let r = check_lu_axioms(&planted, &b);
    let f = r.failure.as_ref().ok_or("ℤ² with u=(1,0) passed")?;
    if !f.law.starts_with("axiom 14") {
        return Err(format!("wrong law violated: {}", f.law));
    }
    let w: Vec<(&str, &str)> = f.witness.iter().map(|x| (x.var.as_str(), x.value.as_str())).collect();
    if w != [("x", "(0,1)")] {
        return Err(format!("wrong witness {w:?}"));
    }
    Ok(format!("{} groups pass; u=(1,0) on ℤ² fails axiom 14 at x=(0,1)", groups.len()))
}

fn monoid() -> Outcome {
    let b = Budget::default();
    let l2 = MvAlgebra::chain(2);
    require_exhaustive(&check_monoid_laws(&l2, &b))?;
    require_exhaustive(&check_cancellation(&l2, &b))?;
    for a in [MvAlgebra::chain(3), MvAlgebra::Chang] {
        require(&check_monoid_laws(&a, &b))?;
        require(&check_cancellation(&a, &b))?;
    }
    Ok("Ł2 exhaustive at length ≤ 3; Ł3 and Chang".into())
}

fn phi_roundtrip() -> Outcome {
    let b = Budget::default();
    let algs = zoo::finite_algebras();
    for a in &algs {
        let w = phi(a, &b);
        require_exhaustive(&w.report)?;
    }
    Ok(format!("φ an MV-isomorphism on {} finite algebras", algs.len()))
}

fn psi_roundtrip() -> Outcome {
    let b = Budget::default();
    let mut groups: Vec<LGroupU> = (1..=4).map(|n| LGroupU::scaled_int(n).unwrap()).collect();
    groups.push(LGroupU::free_pointwise(vec![1, 1]).unwrap());
    groups.push(LGroupU::lex2((1, 0)));
    let mut checked = 0;
    for g in &groups {
        require(&psi(g, &b).report)?;
        let l = l_group(gamma(g.clone()), b.max_len);
        let u = l.positive(l.monoid.ones(1));
        if !g.same(&f_map(g, &u), &g.unit()) {
            return Err(format!("f((u)) ≠ u in {}", g.describe()));
        }
        let mut rng = b.rng();
        for _ in 0..b.samples {
            let a = g.sample(&mut rng);
            if !g.same(&f_map(g, &psi_map(g, &l, &a)), &a) {
                return Err(format!("f(ψ(a)) ≠ a at a={} in {}", g.render(&a), g.describe()));
            }
            let x = l.sample(&mut rng);
            if !l.same(&psi_map(g, &l, &f_map(g, &x)), &x) {
                return Err(format!("ψ(f(x)) ≠ x at x={} in {}", l.render(&x), g.describe()));
            }
            checked += 2;
        }
    }
    Ok(format!("{checked} sampled round trips on {} groups; f((u)) = u", groups.len()))
}

/// `n·(Σp − Σq)` for `[p,q]` over `Łₙ`, by rational arithmetic on the
/// components.
fn oracle(n: i64, pos: &GoodSequence<MvElement>, neg: &GoodSequence<MvElement>) -> Result<i64, String> {
    let total = |s: &GoodSequence<MvElement>| -> Result<Q, String> {
        s.components().iter().try_fold(rational::int(0), |acc, c| match c {
            MvElement::Rational(r) => Ok(acc + r),
            other => Err(format!("unexpected component {other:?}")),
        })
    };
    let v = rational::int(n) * (total(pos)? - total(neg)?);
    let bound = 4 * n * 3;
    (-bound..=bound).find(|&k| rational::int(k) == v).ok_or_else(|| format!("{v} is not a small integer"))
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=4i64 {
        let l = l_group(MvAlgebra::chain(n as u32), 3);
        let z = LGroupU::scaled_int(n).unwrap();
        let seqs = l.monoid.enumerate(3).ok_or("Łn sequences are finite")?;
        let elems: Vec<_> = seqs
            .iter()
            .flat_map(|p| seqs.iter().map(move |q| GroupElement::new(p.clone(), q.clone())))
            .collect();
        let o = |x: &GroupElement<MvElement>| oracle(n, &x.pos, &x.neg).map(LGroupElement::Int);
        let values = elems.iter().map(o).collect::<Result<Vec<_>, _>>()?;
        if o(&l.unit())? != z.unit() {
            return Err(format!("unit of L(Ł{n}) does not map to {n}"));
        }
        for k in -3 * n..=3 * n {
            if !values.contains(&LGroupElement::Int(k)) {
                return Err(format!("{k} not hit in (ℤ,{n})"));
            }
        }
        for (x, vx) in elems.iter().zip(&values) {
            for (y, vy) in elems.iter().zip(&values) {
                let at = || format!("x={}, y={} in L(Ł{n})", l.render(x), l.render(y));
                if l.same(x, y) != (vx == vy) {
                    return Err(format!("not injective or not well defined at {}", at()));
                }
                if l.leq(x, y) != z.leq(vx, vy) {
                    return Err(format!("order not preserved at {}", at()));
                }
                if o(&l.add(x, y))? != z.add(vx, vy) {
                    return Err(format!("+ not preserved at {}", at()));
                }
                if o(&l.inf(x, y))? != z.inf(vx, vy) || o(&l.sup(x, y))? != z.sup(vx, vy) {
                    return Err(format!("lattice operations not preserved at {}", at()));
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("[p,q] ↦ n·(Σp−Σq) a unital ℓ-isomorphism onto its range, n ≤ 4, {pairs} pairs"))
}

fn soundness() -> Outcome {
    let b = Budget::default();
    let groups = zoo::groups();
    let axioms = mv_axiom_sequents();
    for g in &groups {
        let gam = gamma(g.clone());
        for s in &axioms {
            let mv = check_sequent(&MvModel(&gam), s, &b).map_err(|e| e.to_string())?;
            let guarded = guard(&interpret(s).map_err(|e| e.to_string())?);
            let lu = check_sequent(&LuModel(g), &guarded, &b).map_err(|e| e.to_string())?;
            if mv.status != lu.status {
                return Err(format!("{s} in {}: {} vs {}", g.describe(), mv, lu));
            }
            require(&mv)?;
            let sound = check_interpretation_soundness(g, s, &b).map_err(|e| e.to_string())?;
            require(&sound.agreement)?;
        }
        for s in interval_sequents() {
            require(&check_sequent(&LuModel(g), &s, &b).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(format!("{} MV axioms agree on {} groups; interval sequents hold", axioms.len(), groups.len()))
}

fn torsion() -> Outcome {
    let b = Budget::default();
    for g in zoo::groups() {
        require(&check_torsion_free(&g, &b, TORSION_MULTIPLIER))?;
    }
    let (l2, l3) = (MvAlgebra::chain(2), MvAlgebra::chain(3));
    let (e2, e3) = (l2.elements().ok_or("Ł2 infinite")?, l3.elements().ok_or("Ł3 infinite")?);
    if find_isomorphism(&l2, &l3).is_some() {
        return Err("Ł2 ≅ Ł3".into());
    }
    if find_isomorphism(&l3, &l3).is_none() {
        return Err("isomorphism search misses the identity on Ł3".into());
    }
    Ok(format!("zoo torsion-free up to n={TORSION_MULTIPLIER}; |Ł2|={}, |Ł3|={}, not isomorphic", e2.len(), e3.len()))
}

fn sheaves() -> Outcome {
    let b = Budget::default();
    for f in [zoo::sierpinski_mv(), zoo::chain_mv()] {
        require(&check_mv_sheaf(&f, &b))?;
        require(&check_phi_sheaf(&f, &b))?;
        require(&check_l_sheaf(&l_sheaf(&f, b.max_len), &b))?;
    }
    for f in [zoo::sierpinski_l(), zoo::chain_l()] {
        require(&check_l_sheaf(&f, &b))?;
        require(&check_psi_sheaf(&f, &b))?;
        require(&check_gamma_sections(&f, &b))?;
        let gf = gamma_sheaf(&f, &b).map_err(|e| e.to_string())?;
        require(&check_mv_sheaf(&gf, &b))?;
    }
    let maps = zoo::sheaf_maps();
    for (f, g) in &maps {
        require(&check_sheaf_naturality(f, g, &b))?;
    }
    for a in [MvAlgebra::chain(2), MvAlgebra::chain(3), MvAlgebra::Chang] {
        require(&check_point_reduction(&a, &b))?;
    }
    Ok(format!("Sierpiński and 3-chain round trips; naturality along {} maps; one-point reduction", maps.len()))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mundici")).args(args).output().expect("binary runs")
}

fn with_file(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).expect("temp file");
    p.to_string_lossy().into_owned()
}

fn expect_witness(out: &Output, what: &str, var: &str, value: &str) -> Result<(), String> {
    if out.status.code() != Some(1) {
        return Err(format!("{what}: exit {:?}", out.status.code()));
    }
    let run: RunReport = serde_json::from_slice(&out.stdout).map_err(|e| format!("{what}: {e}"))?;
    let found = run
        .reports
        .iter()
        .filter_map(|r| r.failure.as_ref())
        .flat_map(|f| &f.witness)
        .any(|w| w.var == var && w.value == value);
    if run.all_pass || !found {
        return Err(format!("{what}: no witness {var}={value}"));
    }
    Ok(())
}

fn cli_contract() -> Outcome {
    let out = run(&["zoo", "--json"]);
    if !out.status.success() {
        return Err(format!("zoo exited {:?}", out.status.code()));
    }
    let value: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let schema: Value = serde_json::from_str(include_str!("../report.schema.json")).map_err(|e| e.to_string())?;
    let compiled = jsonschema::JSONSchema::compile(&schema).map_err(|e| e.to_string())?;
    if let Err(errors) = compiled.validate(&value) {
        return Err(errors.map(|e| e.to_string()).collect::<Vec<_>>().join("; "));
    }
    let report: RunReport = serde_json::from_value(value).map_err(|e| e.to_string())?;
    if !report.all_pass || report.reports.is_empty() {
        return Err("zoo report not all passing".into());
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let table = with_file(dir.path(), "xor.json", r#"{"kind":"finite","size":2,"oplus":[[0,1],[1,0]],"neg":[1,0],"zero":0}"#);
    expect_witness(&run(&["--json", "mv-axioms", &table]), "corrupted table", "x", "1")?;
    let z2 = with_file(dir.path(), "z2.json", r#"{"kind":"zk","k":2,"unit":[1,0]}"#);
    expect_witness(&run(&["--json", "lu-axioms", &z2]), "non-strong unit", "x", "(0,1)")?;
    let zu3 = with_file(dir.path(), "zu3.json", r#"{"kind":"zu","n":3}"#);
    let out = run(&["--json", "sequent", "--model", &zu3, "tt |- [x] x = 0"]);
    let x = serde_json::from_slice::<RunReport>(&out.stdout)
        .ok()
        .and_then(|r| r.reports.into_iter().find_map(|r| r.failure))
        .and_then(|f| f.witness.into_iter().find(|w| w.var == "x"))
        .ok_or("invalid sequent: no witness for x")?;
    expect_witness(&out, "invalid sequent", "x", &x.value)?;
    if x.value == "0" {
        return Err("invalid sequent: witness x=0 satisfies x = 0".into());
    }
    let missing = run(&["mv-axioms", &dir.path().join("absent.json").to_string_lossy()]);
    if missing.status.code() != Some(2) {
        return Err(format!("missing file: exit {:?}", missing.status.code()));
    }
    Ok(format!("zoo --json valid with {} reports; 3 planted defects exit 1 with witnesses", report.reports.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("MV axiom suite", mv_axioms),
        ("ℓ-group axiom suite", lu_axioms),
        ("monoid laws and cancellation", monoid),
        ("A → ΓL(A)", phi_roundtrip),
        ("G → LΓ(G)", psi_roundtrip),
        ("oracle equivalence L(Łn) ≅ (ℤ,n)", oracle_equivalence),
        ("interpretation soundness", soundness),
        ("torsion obstruction", torsion),
        ("sheaf suite", sheaves),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
