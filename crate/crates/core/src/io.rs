//! JSON and CSV formats.
//!
//! Rationals travel as canonical strings (`"7/2"`, `"-3"`); integers are
//! accepted on input as well. Every emitted JSON document parses back to an
//! equal value.

use std::fmt::Write as _;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{RationalPolytope, RationalVector};
use crate::monomial::MonomialIdeal;
use crate::multiplicity::{MixedMultiplicityTable, MultiIndex};
use crate::rational::{self, Rational};

/// A rational in its wire form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RationalJson(pub Rational);

impl Serialize for RationalJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_str::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RationalJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::serde_str::deserialize(d).map(RationalJson)
    }
}

impl From<Rational> for RationalJson {
    fn from(q: Rational) -> Self {
        RationalJson(q)
    }
}

/// `{"dim": d, "vertices": [["p/q", ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    pub vertices: Vec<Vec<RationalJson>>,
}

impl PolytopeJson {
    pub fn from_polytope(p: &RationalPolytope) -> Self {
        PolytopeJson {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.coords().iter().cloned().map(RationalJson).collect())
                .collect(),
        }
    }

    /// The hull of the listed points (redundant points are dropped).
    pub fn to_polytope(&self) -> Result<RationalPolytope> {
        if let Some(v) = self.vertices.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let pts: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| RationalVector::new(v.iter().map(|q| q.0.clone()).collect()))
            .collect();
        RationalPolytope::convex_hull(&pts)
    }
}

/// `{"vars": d, "gens": [[e_1, ..., e_d], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: usize,
    pub gens: Vec<Vec<u32>>,
}

impl IdealJson {
    pub fn from_ideal(i: &MonomialIdeal) -> Self {
        IdealJson {
            vars: i.num_vars(),
            gens: i.generators().iter().map(|g| g.exponents().to_vec()).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.vars, self.gens.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntryJson {
    pub d0: u32,
    pub dvec: Vec<u32>,
    pub value: RationalJson,
}

/// `{"d": d, "r": r, "entries": [{"d0": .., "dvec": [..], "value": "p/q"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableJson {
    pub d: usize,
    pub r: usize,
    pub entries: Vec<TableEntryJson>,
}

impl From<MixedMultiplicityTable> for TableJson {
    fn from(t: MixedMultiplicityTable) -> Self {
        TableJson {
            d: t.dim(),
            r: t.r(),
            entries: t
                .entries()
                .iter()
                .map(|(k, v)| TableEntryJson {
                    d0: k.d0,
                    dvec: k.dvec.clone(),
                    value: RationalJson(v.clone()),
                })
                .collect(),
        }
    }
}

impl TryFrom<TableJson> for MixedMultiplicityTable {
    type Error = Error;

    fn try_from(t: TableJson) -> Result<Self> {
        let entries = t
            .entries
            .into_iter()
            .map(|e| {
                (
                    MultiIndex {
                        d0: e.d0,
                        dvec: e.dvec,
                    },
                    e.value.0,
                )
            })
            .collect();
        MixedMultiplicityTable::from_entries(t.d, t.r, entries)
    }
}

pub fn from_json_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// One row per index: `d0,d1,...,dr,value,decimal`.
pub fn table_to_csv(t: &MixedMultiplicityTable) -> String {
    let mut out = String::from("d0");
    for i in 1..=t.r() {
        write!(out, ",d{i}").unwrap();
    }
    out.push_str(",value,decimal\n");
    for (k, v) in t.entries() {
        write!(out, "{}", k.d0).unwrap();
        for x in &k.dvec {
            write!(out, ",{x}").unwrap();
        }
        writeln!(out, ",{},{}", rational::format_rational(v), rational::to_decimal(v)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn polytope_round_trip() {
        let raw = r#"{"dim": 2, "vertices": [["0", 0], ["1/2", "0"], [0, "1/2"], ["1/8", "1/8"]]}"#;
        let pj: PolytopeJson = from_json_str(raw).unwrap();
        let p = pj.to_polytope().unwrap();
        assert_eq!(p.vertices().len(), 3);
        let back = PolytopeJson::from_polytope(&p);
        let text = to_json_string(&back);
        assert!(text.contains("\"1/2\""));
        let again: PolytopeJson = from_json_str(&text).unwrap();
        assert_eq!(again, back);
        assert_eq!(again.to_polytope().unwrap(), p);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(from_json_str::<PolytopeJson>("{"), Err(Error::Parse(_))));
        let bad: PolytopeJson = from_json_str(r#"{"dim": 2, "vertices": [["1"]]}"#).unwrap();
        assert!(bad.to_polytope().is_err());
        assert!(from_json_str::<PolytopeJson>(r#"{"dim": 1, "vertices": [["1/0"]]}"#).is_err());
        let ideal: IdealJson = from_json_str(r#"{"vars": 2, "gens": [[1, 0, 0]]}"#).unwrap();
        assert!(ideal.to_ideal().is_err());
    }

    #[test]
    fn ideal_round_trip() {
        let i = MonomialIdeal::new(2, vec![vec![1, 0], vec![0, 2], vec![3, 3]]).unwrap();
        let j = IdealJson::from_ideal(&i);
        assert_eq!(j.gens, vec![vec![1, 0], vec![0, 2]]);
        let back: IdealJson = from_json_str(&to_json_string(&j)).unwrap();
        assert_eq!(back.to_ideal().unwrap(), i);
    }

    #[test]
    fn rationals_on_the_wire() {
        let q = RationalJson(frac(-6, 4));
        assert_eq!(serde_json::to_string(&q).unwrap(), "\"-3/2\"");
        let z: RationalJson = from_json_str("7").unwrap();
        assert_eq!(z.0, frac(7, 1));
    }
}
