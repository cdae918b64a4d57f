//! Coefficient tables `{alpha -> f_alpha(N)}` for a fixed weight `n` and
//! their JSON, CSV and LaTeX renderings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{parse_ratfunc, RatFuncN};
use crate::partitions::{enumerate_partitions, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `z_alpha` of the ordinary `p = n` sector.
    #[serde(rename = "weingarten")]
    Weingarten,
    /// `d_alpha` of the `p = n + N` sector.
    #[serde(rename = "su-shifted")]
    SuShifted,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Weingarten => "weingarten",
            Family::SuShifted => "su-shifted",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Weingarten => "z",
            Family::SuShifted => "d",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weingarten" => Ok(Family::Weingarten),
            "su-shifted" => Ok(Family::SuShifted),
            _ => Err(Error::Parse(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub n: usize,
    pub family: Family,
    entries: BTreeMap<Partition, RatFuncN>,
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    partition: Partition,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    n: usize,
    family: Family,
    entries: Vec<JsonEntry>,
}

impl CoeffTable {
    /// Builds a table; the keys must be exactly the partitions of `n`.
    pub fn new(n: usize, family: Family, entries: BTreeMap<Partition, RatFuncN>) -> Result<Self> {
        let expected = enumerate_partitions(n);
        if entries.len() != expected.len() || !expected.iter().all(|p| entries.contains_key(p)) {
            return Err(Error::DimensionMismatch(format!(
                "table keys are not the partitions of {n}"
            )));
        }
        Ok(CoeffTable { n, family, entries })
    }

    pub fn get(&self, alpha: &Partition) -> Option<&RatFuncN> {
        self.entries.get(alpha)
    }

    /// Entries in the crate-wide partition order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Partition, &RatFuncN)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// JSON, CSV and LaTeX list entries in reverse partition order, `[n]` first.
    pub fn to_json(&self) -> serde_json::Value {
        let t = JsonTable {
            n: self.n,
            family: self.family,
            entries: self
                .iter()
                .rev()
                .map(|(p, v)| JsonEntry { partition: p.clone(), value: v.to_string() })
                .collect(),
        };
        serde_json::to_value(t).expect("table serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let t: JsonTable = serde_json::from_value(v.clone())?;
        let mut entries = BTreeMap::new();
        for e in t.entries {
            entries.insert(e.partition, parse_ratfunc(&e.value)?);
        }
        Self::new(t.n, t.family, entries)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("partition,value\n");
        for (p, v) in self.iter().rev() {
            out.push_str(&format!("{p},{v}\n"));
        }
        out
    }

    /// One line `n=.. & f_{[..]}=.. \qquad ...` in the layout of a printed
    /// coefficient table, partitions written as `[1^2,2]`.
    pub fn to_latex_row(&self) -> String {
        let sym = self.family.symbol();
        let cells: Vec<String> = self
            .iter()
            .rev()
            .map(|(p, v)| format!("{sym}_{{[{}]}}={}", latex_partition(p), v.to_latex()))
            .collect();
        format!("n={} & {} \\\\", self.n, cells.join(" \\qquad "))
    }
}

pub fn latex_partition(p: &Partition) -> String {
    let items: Vec<String> = p
        .iter()
        .map(|(q, a)| if a == 1 { q.to_string() } else { format!("{q}^{a}") })
        .collect();
    items.join(",")
}

/// LaTeX `eqnarray` block for several tables of the same family.
pub fn latex_block(tables: &[CoeffTable]) -> String {
    let mut out = String::from("\\begin{eqnarray}\n");
    for t in tables {
        out.push_str(&t.to_latex_row());
        out.push('\n');
    }
    out.push_str("\\end{eqnarray}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rejects_wrong_keys() {
        let mut m = BTreeMap::new();
        m.insert(Partition::single(2), RatFuncN::one());
        assert!(CoeffTable::new(2, Family::Weingarten, m).is_err());
    }

    #[test]
    fn json_shape() {
        let mut m = BTreeMap::new();
        m.insert(Partition::single(1), RatFuncN::one().checked_div(&RatFuncN::var()).unwrap());
        let t = CoeffTable::new(1, Family::Weingarten, m).unwrap();
        let j = t.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"entries":[{"partition":"1^1","value":"1/N"}],"family":"weingarten","n":1}"#
        );
        assert_eq!(CoeffTable::from_json(&j).unwrap(), t);
        assert_eq!(t.to_csv(), "partition,value\n1^1,1/N\n");
        assert_eq!(t.to_latex_row(), "n=1 & z_{[1]}=\\frac{1}{N} \\\\");
    }
}
