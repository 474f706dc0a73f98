//! JSON descriptions of algebras, groups, homomorphisms, spaces and sheaves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carrier::Carrier;
use crate::hom::Hom;
use crate::lgroup::{LGroupElement, LGroupError, LGroupU};
use crate::mv::{FiniteTable, MvAlgebra, MvElement, MvError};
use crate::rational;
use crate::sheaf::{ContinuousMap, FiniteSpace, Sheaf, SheafError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Mv(#[from] MvError),
    #[error(transparent)]
    Group(#[from] LGroupError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for SpecError {
    fn from(e: serde_json::Error) -> Self {
        SpecError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraSpec {
    Finite {
        size: usize,
        oplus: Vec<Vec<usize>>,
        neg: Vec<usize>,
        zero: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    /// `Łₙ = {0, 1/n, …, 1}`
    Chain { n: u32 },
    Product { factors: Vec<AlgebraSpec> },
    Chang,
    /// All of `[0,1] ∩ ℚ`.
    Rational,
}

impl AlgebraSpec {
    pub fn build(&self) -> Result<MvAlgebra, SpecError> {
        Ok(match self {
            AlgebraSpec::Finite { size, oplus, neg, zero, labels } => {
                if oplus.len() != *size || neg.len() != *size {
                    return Err(SpecError::Invalid(format!("tables do not have size {size}")));
                }
                let table = FiniteTable::new(oplus.clone(), neg.clone(), *zero)?;
                let table = match labels {
                    Some(l) => table.with_labels(l.clone())?,
                    None => table,
                };
                MvAlgebra::Finite(table)
            }
            AlgebraSpec::Chain { n: 0 } => return Err(SpecError::Invalid("a chain needs n ≥ 1".into())),
            AlgebraSpec::Chain { n } => MvAlgebra::chain(*n),
            AlgebraSpec::Product { factors } => {
                MvAlgebra::product(factors.iter().map(AlgebraSpec::build).collect::<Result<_, _>>()?)
            }
            AlgebraSpec::Chang => MvAlgebra::Chang,
            AlgebraSpec::Rational => MvAlgebra::rational_interval(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    /// `ℤᵏ` with the coordinatewise order.
    Zk { k: usize, unit: Vec<i64> },
    /// `ℤ ×lex ℤ`
    Lex2 { unit: [i64; 2] },
    /// `ℤ` with unit `n`.
    Zu { n: i64 },
    /// `ℚᵏ`, coordinates written `"p/q"`.
    Qk { k: usize, unit: Vec<String> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<LGroupU, SpecError> {
        Ok(match self {
            GroupSpec::Zk { k, unit } => {
                check_dim(*k, unit.len())?;
                LGroupU::free_pointwise(unit.clone())?
            }
            GroupSpec::Lex2 { unit } => LGroupU::lex2((unit[0], unit[1])),
            GroupSpec::Zu { n } => LGroupU::scaled_int(*n)?,
            GroupSpec::Qk { k, unit } => {
                check_dim(*k, unit.len())?;
                let unit = unit
                    .iter()
                    .map(|s| rational::parse(s).ok_or_else(|| SpecError::Invalid(format!("not a rational: {s}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                LGroupU::rational_vec(unit)?
            }
        })
    }
}

fn check_dim(k: usize, len: usize) -> Result<(), SpecError> {
    if k == len {
        Ok(())
    } else {
        Err(SpecError::Invalid(format!("k = {k} but the unit has {len} coordinates")))
    }
}

/// Either kind of structure; the `kind` tags are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructureSpec {
    Algebra(AlgebraSpec),
    Group(GroupSpec),
}

pub enum Structure {
    Algebra(MvAlgebra),
    Group(LGroupU),
}

impl StructureSpec {
    pub fn build(&self) -> Result<Structure, SpecError> {
        Ok(match self {
            StructureSpec::Algebra(a) => Structure::Algebra(a.build()?),
            StructureSpec::Group(g) => Structure::Group(g.build()?),
        })
    }
}

/// A homomorphism between two given structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum HomSpec {
    Identity,
    /// Elements are kept as they are, e.g. `Łₘ ⊆ Łₙ` for `m | n`.
    Inclusion,
    /// Every coordinate multiplied by `factor`, e.g. `(ℤ,2) → (ℤ,4)`.
    Scale { factor: i64 },
    /// `map[i]` is the image of the `i`-th element, both in listing order.
    Table { map: Vec<usize> },
}

impl HomSpec {
    pub fn build_mv(&self, source: &MvAlgebra, target: &MvAlgebra) -> Result<Hom<MvAlgebra, MvAlgebra>, SpecError> {
        let (s, t) = (source.clone(), target.clone());
        Ok(match self {
            HomSpec::Identity if source != target => {
                return Err(SpecError::Invalid("identity between different algebras".into()))
            }
            HomSpec::Identity => Hom::new(s, t, "id", |x: &MvElement| x.clone()),
            HomSpec::Inclusion => Hom::new(s, t, "incl", |x: &MvElement| x.clone()),
            HomSpec::Scale { .. } => return Err(SpecError::Invalid("scale is a group homomorphism".into())),
            HomSpec::Table { map } => table(s, t, map)?,
        })
    }

    pub fn build_l(&self, source: &LGroupU, target: &LGroupU) -> Result<Hom<LGroupU, LGroupU>, SpecError> {
        let (s, t) = (source.clone(), target.clone());
        Ok(match self {
            HomSpec::Identity if source != target => {
                return Err(SpecError::Invalid("identity between different groups".into()))
            }
            HomSpec::Identity => Hom::new(s, t, "id", |x: &LGroupElement| x.clone()),
            HomSpec::Inclusion => Hom::new(s, t, "incl", |x: &LGroupElement| x.clone()),
            HomSpec::Scale { factor } => {
                let k = *factor;
                Hom::new(s, t, format!("×{k}"), move |x: &LGroupElement| scale(k, x))
            }
            HomSpec::Table { .. } => return Err(SpecError::Invalid("table maps need a finite source".into())),
        })
    }
}

pub fn scale(k: i64, x: &LGroupElement) -> LGroupElement {
    match x {
        LGroupElement::Int(v) => LGroupElement::Int(k * v),
        LGroupElement::Ints(vs) => LGroupElement::Ints(vs.iter().map(|v| k * v).collect()),
        LGroupElement::Rats(vs) => LGroupElement::Rats(vs.iter().map(|v| v * rational::int(k)).collect()),
    }
}

fn table(s: MvAlgebra, t: MvAlgebra, map: &[usize]) -> Result<Hom<MvAlgebra, MvAlgebra>, SpecError> {
    let finite = |a: &MvAlgebra| a.elements().ok_or_else(|| SpecError::Invalid(format!("{} is not finite", a.describe())));
    let (xs, ys) = (finite(&s)?, finite(&t)?);
    if map.len() != xs.len() {
        return Err(SpecError::Invalid(format!("table has {} entries for {} elements", map.len(), xs.len())));
    }
    let images = map
        .iter()
        .map(|&j| ys.get(j).cloned().ok_or_else(|| SpecError::Invalid(format!("index {j} out of range"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Hom::new(s, t, "table", move |x: &MvElement| {
        xs.iter().position(|e| e == x).map_or_else(|| x.clone(), |i| images[i].clone())
    }))
}

/// Points and the pairs `[x, y]` meaning `x ≤ y`; the preorder generated
/// by them is used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<FiniteSpace, SpecError> {
        let index = |n: &str| {
            self.points.iter().position(|p| p == n).ok_or_else(|| SheafError::UnknownPoint(n.to_string()))
        };
        let pairs = self.leq.iter().map(|[x, y]| Ok((index(x)?, index(y)?))).collect::<Result<Vec<_>, SheafError>>()?;
        Ok(FiniteSpace::from_pairs(self.points.clone(), &pairs)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafSpec {
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
    pub stalks: BTreeMap<String, StructureSpec>,
    /// Keyed `"(x,y)"`.
    #[serde(default)]
    pub restrictions: BTreeMap<String, HomSpec>,
}

pub enum AnySheaf {
    Mv(Sheaf<MvAlgebra>),
    L(Sheaf<LGroupU>),
}

impl SheafSpec {
    pub fn space(&self) -> Result<FiniteSpace, SpecError> {
        SpaceSpec { points: self.points.clone(), leq: self.leq.clone() }.build()
    }

    pub fn build(&self) -> Result<AnySheaf, SpecError> {
        let space = self.space()?;
        let stalks = space
            .names()
            .iter()
            .map(|n| {
                let s = self.stalks.get(n).ok_or_else(|| SpecError::Invalid(format!("no stalk for {n}")))?;
                s.build()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(extra) = self.stalks.keys().find(|k| !space.names().contains(k)) {
            return Err(SheafError::UnknownPoint(extra.clone()).into());
        }
        let mut keyed = BTreeMap::new();
        for (key, h) in &self.restrictions {
            let (x, y) = parse_pair(key)?;
            keyed.insert((space.index(x)?, space.index(y)?), h.clone());
        }
        if stalks.iter().all(|s| matches!(s, Structure::Algebra(_))) {
            let algs: Vec<MvAlgebra> =
                stalks.into_iter().filter_map(|s| if let Structure::Algebra(a) = s { Some(a) } else { None }).collect();
            let mut rs = BTreeMap::new();
            for ((x, y), h) in keyed {
                rs.insert((x, y), h.build_mv(&algs[x], &algs[y])?);
            }
            Ok(AnySheaf::Mv(Sheaf::new(space, algs, rs)?))
        } else if stalks.iter().all(|s| matches!(s, Structure::Group(_))) {
            let groups: Vec<LGroupU> =
                stalks.into_iter().filter_map(|s| if let Structure::Group(g) = s { Some(g) } else { None }).collect();
            let mut rs = BTreeMap::new();
            for ((x, y), h) in keyed {
                rs.insert((x, y), h.build_l(&groups[x], &groups[y])?);
            }
            Ok(AnySheaf::L(Sheaf::new(space, groups, rs)?))
        } else {
            Err(SpecError::Invalid("stalks mix MV-algebras and ℓ-groups".into()))
        }
    }
}

fn parse_pair(key: &str) -> Result<(&str, &str), SpecError> {
    key.trim()
        .strip_prefix('(')
        .and_then(|k| k.strip_suffix(')'))
        .and_then(|k| k.split_once(','))
        .map(|(x, y)| (x.trim(), y.trim()))
        .ok_or_else(|| SpecError::Invalid(format!("restriction key {key:?} is not of the form \"(x,y)\"")))
}

/// A monotone map into a given space: the source space and the image of
/// each source point by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: SpaceSpec,
    pub map: BTreeMap<String, String>,
}

impl MapSpec {
    pub fn build(&self, target: &FiniteSpace) -> Result<ContinuousMap, SpecError> {
        let source = self.source.build()?;
        let values = source
            .names()
            .iter()
            .map(|n| {
                let y = self.map.get(n).ok_or_else(|| SpecError::Invalid(format!("no image for {n}")))?;
                Ok(target.index(y)?)
            })
            .collect::<Result<Vec<_>, SpecError>>()?;
        Ok(ContinuousMap::new(source, target.clone(), values)?)
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, SpecError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::Budget;
    use crate::hom::{check_l_hom, check_mv_hom};
    use crate::sheaf::{check_l_sheaf, check_mv_sheaf};

    #[test]
    fn algebra_specs() {
        let a: AlgebraSpec = parse(r#"{"kind":"chain","n":4}"#).unwrap();
        assert_eq!(a.build().unwrap(), MvAlgebra::chain(4));
        let p: AlgebraSpec = parse(r#"{"kind":"product","factors":[{"kind":"chain","n":2},{"kind":"chain","n":3}]}"#).unwrap();
        assert_eq!(p.build().unwrap().describe(), "Ł2×Ł3");
        let t: AlgebraSpec =
            parse(r#"{"kind":"finite","size":2,"oplus":[[0,1],[1,1]],"neg":[1,0],"zero":0}"#).unwrap();
        assert_eq!(t.build().unwrap().elements().unwrap().len(), 2);
        assert_eq!(parse::<AlgebraSpec>(r#"{"kind":"chang"}"#).unwrap().build().unwrap(), MvAlgebra::Chang);
        assert!(parse::<AlgebraSpec>(r#"{"kind":"chain","n":4,"extra":1}"#).is_err());
        assert!(parse::<AlgebraSpec>(r#"{"kind":"chain","n":0}"#).unwrap().build().is_err());
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(parse::<AlgebraSpec>(&s).unwrap(), a);
    }

    #[test]
    fn group_specs() {
        let cases = [
            (r#"{"kind":"zk","k":2,"unit":[1,1]}"#, "ℤ² pointwise u=(1,1)"),
            (r#"{"kind":"lex2","unit":[1,0]}"#, "ℤ²lex u=(1,0)"),
            (r#"{"kind":"zu","n":3}"#, "(ℤ,3)"),
            (r#"{"kind":"qk","k":1,"unit":["1/1"]}"#, "ℚ u=(1)"),
        ];
        for (text, describe) in cases {
            let g = parse::<GroupSpec>(text).unwrap().build().unwrap();
            assert_eq!(g.describe(), describe);
        }
        assert!(parse::<GroupSpec>(r#"{"kind":"zk","k":3,"unit":[1,1]}"#).unwrap().build().is_err());
        assert!(parse::<GroupSpec>(r#"{"kind":"qk","k":1,"unit":["x"]}"#).unwrap().build().is_err());
        match parse::<StructureSpec>(r#"{"kind":"zu","n":2}"#).unwrap() {
            StructureSpec::Group(_) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hom_specs() {
        let b = Budget::default();
        let (l2, l4) = (MvAlgebra::chain(2), MvAlgebra::chain(4));
        let incl = HomSpec::Inclusion.build_mv(&l2, &l4).unwrap();
        assert!(check_mv_hom(&incl, &b).unwrap().is_pass());
        let t = HomSpec::Table { map: vec![0, 2, 4] }.build_mv(&l2, &l4).unwrap();
        assert!(check_mv_hom(&t, &b).unwrap().is_pass());
        let bad = HomSpec::Table { map: vec![0, 1, 4] }.build_mv(&l2, &l4).unwrap();
        assert!(check_mv_hom(&bad, &b).unwrap().is_fail());
        let (z2, z4) = (LGroupU::scaled_int(2).unwrap(), LGroupU::scaled_int(4).unwrap());
        let dbl = HomSpec::Scale { factor: 2 }.build_l(&z2, &z4).unwrap();
        assert!(check_l_hom(&dbl, &b).unwrap().is_pass());
        assert!(HomSpec::Identity.build_l(&z2, &z4).is_err());
    }

    #[test]
    fn sheaf_specs() {
        let b = Budget::default();
        let text = r#"{
            "points": ["o", "c"],
            "leq": [["c", "o"]],
            "stalks": {"o": {"kind":"chain","n":4}, "c": {"kind":"chain","n":2}},
            "restrictions": {"(c,o)": {"kind":"inclusion"}}
        }"#;
        match parse::<SheafSpec>(text).unwrap().build().unwrap() {
            AnySheaf::Mv(f) => assert!(check_mv_sheaf(&f, &b).is_pass()),
            AnySheaf::L(_) => panic!("expected an MV sheaf"),
        }
        let text = r#"{
            "points": ["o", "c"],
            "leq": [["c", "o"]],
            "stalks": {"o": {"kind":"zu","n":4}, "c": {"kind":"zu","n":2}},
            "restrictions": {"(c, o)": {"kind":"scale","factor":2}}
        }"#;
        match parse::<SheafSpec>(text).unwrap().build().unwrap() {
            AnySheaf::L(f) => assert!(check_l_sheaf(&f, &b).is_pass()),
            AnySheaf::Mv(_) => panic!("expected an ℓ-group sheaf"),
        }
        let missing = r#"{"points":["o","c"],"leq":[["c","o"]],"stalks":{"o":{"kind":"chain","n":1},"c":{"kind":"chain","n":1}}}"#;
        assert!(matches!(
            parse::<SheafSpec>(missing).unwrap().build(),
            Err(SpecError::Sheaf(SheafError::MissingRestriction { .. }))
        ));
        let mixed = r#"{"points":["p"],"stalks":{"p":{"kind":"zu","n":1}},"restrictions":{}}"#;
        assert!(parse::<SheafSpec>(mixed).unwrap().build().is_ok());
    }

    #[test]
    fn map_specs() {
        let target = FiniteSpace::chain(2);
        let m: MapSpec = parse(r#"{"source":{"points":["a","b","c"],"leq":[["a","b"],["b","c"]]},"map":{"a":"0","b":"0","c":"1"}}"#)
            .unwrap();
        assert_eq!(m.build(&target).unwrap().values(), &[0, 0, 1]);
        let bad: MapSpec = parse(r#"{"source":{"points":["a","b"],"leq":[["a","b"]]},"map":{"a":"1","b":"0"}}"#).unwrap();
        assert!(matches!(m.build(&FiniteSpace::point()), Err(SpecError::Sheaf(SheafError::UnknownPoint(_)))));
        assert!(matches!(bad.build(&target), Err(SpecError::Sheaf(SheafError::NotContinuous { .. }))));
    }
}
