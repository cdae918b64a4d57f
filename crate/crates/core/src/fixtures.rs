//! Reference coefficient tables and series, transcribed by hand and shipped
//! with the crate for regression checks.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::largen::{SeriesFamily, TraceSeries};
use crate::partitions::Partition;
use crate::tables::CoeffTable;

pub const REFERENCE_JSON: &str = include_str!("../fixtures/reference_tables.json");

#[derive(Deserialize)]
struct GradeJson {
    grade: usize,
    prefactor: String,
    terms: Vec<TermJson>,
}

#[derive(Deserialize)]
struct TermJson {
    partition: Partition,
    coefficient: i64,
}

#[derive(Deserialize)]
struct ReferenceJson {
    #[serde(rename = "su-shifted")]
    shifted: Vec<serde_json::Value>,
    weingarten: Vec<serde_json::Value>,
    wd: Vec<GradeJson>,
    ww: Vec<GradeJson>,
}

pub struct Reference {
    /// `d_alpha` tables, `n = 1..=4`
    pub d: Vec<CoeffTable>,
    /// `z_alpha` tables, `n = 1..=4`
    pub z: Vec<CoeffTable>,
    pub wd: TraceSeries,
    pub ww: TraceSeries,
}

fn series(family: SeriesFamily, grades: Vec<GradeJson>) -> Result<TraceSeries> {
    let max = grades.iter().map(|g| g.grade).max().unwrap_or(0);
    let mut terms = BTreeMap::new();
    for g in grades {
        let pre = BigRational::from_str(&g.prefactor)
            .map_err(|e| Error::Parse(format!("prefactor '{}': {e}", g.prefactor)))?;
        for t in g.terms {
            if t.partition.weight() != g.grade {
                return Err(Error::Parse(format!("partition '{}' listed under grade {}", t.partition, g.grade)));
            }
            terms.insert(t.partition, &pre * BigRational::from_integer(t.coefficient.into()));
        }
    }
    let mut s = TraceSeries::new(family, max);
    for (p, c) in terms {
        s.insert(p, c);
    }
    Ok(s)
}

pub fn reference() -> Result<Reference> {
    let raw: ReferenceJson = serde_json::from_str(REFERENCE_JSON)?;
    let tables = |v: &[serde_json::Value]| v.iter().map(CoeffTable::from_json).collect::<Result<Vec<_>>>();
    Ok(Reference {
        d: tables(&raw.shifted)?,
        z: tables(&raw.weingarten)?,
        wd: series(SeriesFamily::Wd, raw.wd)?,
        ww: series(SeriesFamily::Ww, raw.ww)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_loads() {
        let r = reference().unwrap();
        assert_eq!(r.d.len(), 4);
        assert_eq!(r.z.len(), 4);
        assert_eq!(r.z[3].len(), 5);
        assert_eq!(r.ww.max_order, 4);
    }
}
