//! Homology tables for braids and alternating diagrams, chain ranks for
//! everything else.
//!
//! For a braid there is a single generator. For an alternating diagram
//! every generator with a given filtration index sits in the same grading,
//! so the differential vanishes and the chain ranks are the homology. No
//! other diagram gets its table labelled as homology.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::torsion::{state_sum, TorsionError};
use crate::weights::IndexVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error("alternating diagram has generators in gradings {gradings:?} at doubled index {index:?}")]
    MixedGradings { index: IndexVector, gradings: Vec<i32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomologyStatus {
    #[serde(rename = "homology (braid)")]
    Braid,
    #[serde(rename = "homology (alternating)")]
    Alternating,
    #[serde(rename = "chain-ranks-only")]
    ChainRanksOnly,
}

impl HomologyStatus {
    pub fn is_homology(self) -> bool {
        self != HomologyStatus::ChainRanksOnly
    }
}

impl fmt::Display for HomologyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomologyStatus::Braid => "homology (braid)",
            HomologyStatus::Alternating => "homology (alternating)",
            HomologyStatus::ChainRanksOnly => "chain-ranks-only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub status: HomologyStatus,
    /// Rank per (doubled filtration index, grading).
    pub entries: BTreeMap<(IndexVector, i32), u64>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    #[serde(rename = "F2")]
    f2: IndexVector,
    d: i32,
    rank: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    status: HomologyStatus,
    entries: Vec<EntryJson>,
}

impl HomologyTable {
    /// Signed rank per index: the Euler characteristic of each summand.
    pub fn euler(&self) -> BTreeMap<IndexVector, i64> {
        let mut out = BTreeMap::new();
        for ((v, d), &rank) in &self.entries {
            let sign = if d.rem_euclid(2) == 0 { 1 } else { -1 };
            *out.entry(v.clone()).or_insert(0) += sign * rank as i64;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Gradings present at each index.
    pub fn gradings(&self) -> BTreeMap<IndexVector, Vec<i32>> {
        let mut out: BTreeMap<IndexVector, Vec<i32>> = BTreeMap::new();
        for (v, d) in self.entries.keys() {
            out.entry(v.clone()).or_default().push(*d);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries = self.entries.iter().map(|((f2, d), &rank)| EntryJson { f2: f2.clone(), d: *d, rank }).collect();
        serde_json::to_value(TableJson { status: self.status, entries }).expect("table serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<HomologyTable, serde_json::Error> {
        let t: TableJson = serde_json::from_value(value.clone())?;
        let entries = t.entries.into_iter().map(|e| ((e.f2, e.d), e.rank)).collect();
        Ok(HomologyTable { status: t.status, entries })
    }
}

/// Renders an index at its true half-integer value, e.g. `(-1/2,0)`.
pub fn format_index(f2: &[i32]) -> String {
    let parts: Vec<String> =
        f2.iter().map(|&x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{x}/2") }).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((v, d), rank) in &self.entries {
            let group = if *rank == 1 { "Z".to_string() } else { format!("Z^{rank}") };
            writeln!(f, "{group} at F={}, d={d} [status: {}]", format_index(v), self.status)?;
        }
        Ok(())
    }
}

/// Counts generators by filtration index and grading.
pub fn chain_ranks(d: &Diagram) -> Result<BTreeMap<(IndexVector, i32), u64>, TorsionError> {
    let mut entries = BTreeMap::new();
    for r in state_sum(d)?.records {
        *entries.entry((r.f2, r.g)).or_insert(0) += 1;
    }
    Ok(entries)
}

pub fn homology_table(d: &Diagram) -> Result<HomologyTable, HomologyError> {
    let entries = chain_ranks(d)?;
    let status = if d.is_braid() {
        HomologyStatus::Braid
    } else if d.is_alternating() {
        HomologyStatus::Alternating
    } else {
        HomologyStatus::ChainRanksOnly
    };
    let table = HomologyTable { status, entries };
    if status.is_homology() {
        if let Some((index, gradings)) = table.gradings().into_iter().find(|(_, g)| g.len() > 1) {
            return Err(HomologyError::MixedGradings { index, gradings });
        }
    }
    Ok(table)
}

/// Signed generator counts per doubled index.
pub fn euler_table(d: &Diagram) -> Result<BTreeMap<IndexVector, i64>, TorsionError> {
    let table = HomologyTable { status: HomologyStatus::ChainRanksOnly, entries: chain_ranks(d)? };
    Ok(table.euler())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_mld;
    use crate::torsion::torsion_polynomial;
    use num_bigint::BigInt;

    const CLASP1: &str = "strands 2\ncap 2\nx- 1\nx- 1\nx+ 2\ncup 3\n";

    fn agrees_with_torsion(d: &Diagram) -> bool {
        let poly = torsion_polynomial(d).unwrap();
        let euler = euler_table(d).unwrap();
        euler.len() == poly.len() && euler.iter().all(|(v, c)| poly.coeff(v) == BigInt::from(*c))
    }

    #[test]
    fn braid_is_one_generator() {
        let d = Diagram::braid(2, &[1, 1, -1]).unwrap();
        let t = homology_table(&d).unwrap();
        assert_eq!(t.status, HomologyStatus::Braid);
        assert_eq!(t.entries, BTreeMap::from([((vec![0, 0], 0), 1)]));
        assert_eq!(t.to_string(), "Z at F=(0,0), d=0 [status: homology (braid)]\n");
    }

    #[test]
    fn clasp_table() {
        let d = parse_mld(CLASP1).unwrap();
        let t = homology_table(&d).unwrap();
        assert_eq!(t.status, HomologyStatus::Alternating);
        let expected = BTreeMap::from([((vec![-2, 0], 0), 1), ((vec![0, -2], 0), 1), ((vec![-2, -2], -1), 1)]);
        assert_eq!(t.entries, expected);
        assert_eq!(euler_table(&d).unwrap(), BTreeMap::from([(vec![-2, 0], 1), (vec![0, -2], 1), (vec![-2, -2], -1)]));
        assert!(agrees_with_torsion(&d));
    }

    #[test]
    fn trivial_euler_table() {
        for k in 1..4 {
            assert_eq!(euler_table(&Diagram::trivial(k)).unwrap(), BTreeMap::from([(vec![0; k], 1)]));
        }
    }

    #[test]
    fn non_alternating_is_not_labelled_homology() {
        let d = parse_mld("strands 1\ncap 1\nx- 2\nx+ 1\nx+ 2\nx+ 2\ncup 1\n").unwrap();
        assert!(!d.is_alternating() && !d.is_braid());
        let t = homology_table(&d).unwrap();
        assert_eq!(t.status, HomologyStatus::ChainRanksOnly);
        assert!(!t.to_string().contains("homology"));
        assert_eq!(t.gradings()[&vec![0]], vec![0, 1]);
        assert!(agrees_with_torsion(&d));
    }

    #[test]
    fn json_round_trip() {
        let t = homology_table(&parse_mld(CLASP1).unwrap()).unwrap();
        let v = t.to_json();
        assert_eq!(v["status"], "homology (alternating)");
        assert_eq!(v["entries"][0]["F2"], serde_json::json!([-2, -2]));
        assert_eq!(HomologyTable::from_json(&v).unwrap(), t);
    }

    #[test]
    fn half_integer_indices_render() {
        assert_eq!(format_index(&[-1, 2, 0]), "(-1/2,1,0)");
    }
}
