//! Source matrices `J`, `K` and the trace vector `t_q = tr (JK)^q`.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq)]
pub struct SourceMatrices {
    pub j: CMatrix,
    pub k: CMatrix,
}

/// Either a flat row-major list of `N*N` `[re, im]` pairs or `N` rows of `N` pairs.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonMatrix {
    Flat(Vec<[f64; 2]>),
    Rows(Vec<Vec<[f64; 2]>>),
}

#[derive(Serialize, Deserialize)]
struct JsonSources {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "J")]
    j: JsonMatrix,
    #[serde(rename = "K")]
    k: JsonMatrix,
}

fn matrix_from_json(n: usize, m: JsonMatrix, name: &str) -> Result<CMatrix> {
    let flat: Vec<[f64; 2]> = match m {
        JsonMatrix::Flat(v) => v,
        JsonMatrix::Rows(rows) => {
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::DimensionMismatch(format!("{name}: rows must have length {n}")));
            }
            rows.into_iter().flatten().collect()
        }
    };
    if flat.len() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "{name}: expected {} entries, found {}",
            n * n,
            flat.len()
        )));
    }
    Ok(CMatrix::from_row_iterator(n, n, flat.into_iter().map(|[re, im]| Complex64::new(re, im))))
}

fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    let mut out = Vec::with_capacity(m.len());
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let z = m[(r, c)];
            out.push([z.re, z.im]);
        }
    }
    JsonMatrix::Flat(out)
}

impl SourceMatrices {
    pub fn new(j: CMatrix, k: CMatrix) -> Result<Self> {
        if !j.is_square() || j.shape() != k.shape() {
            return Err(Error::DimensionMismatch(format!(
                "J is {:?}, K is {:?}",
                j.shape(),
                k.shape()
            )));
        }
        Ok(SourceMatrices { j, k })
    }

    pub fn identity(n: usize) -> Self {
        SourceMatrices { j: CMatrix::identity(n, n), k: CMatrix::identity(n, n) }
    }

    /// Entries i.i.d. complex Gaussian with variance `scale^2`, from a seed.
    pub fn random(n: usize, scale: f64, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) * (scale / std::f64::consts::SQRT_2)
        };
        let j = CMatrix::from_fn(n, n, &mut draw);
        let k = CMatrix::from_fn(n, n, &mut draw);
        SourceMatrices { j, k }
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: JsonSources = serde_json::from_str(s)?;
        let j = matrix_from_json(raw.n, raw.j, "J")?;
        let k = matrix_from_json(raw.n, raw.k, "K")?;
        Self::new(j, k)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let raw = JsonSources {
            n: self.dim(),
            j: matrix_to_json(&self.j),
            k: matrix_to_json(&self.k),
        };
        serde_json::to_string(&raw).expect("sources serialize")
    }

    pub fn traces(&self, max_power: usize) -> TraceVector {
        let m = &self.j * &self.k;
        let mut pow = CMatrix::identity(self.dim(), self.dim());
        let mut t = Vec::with_capacity(max_power);
        for _ in 0..max_power {
            pow = &pow * &m;
            t.push(pow.trace());
        }
        TraceVector { t }
    }

    pub fn det_k(&self) -> Complex64 {
        self.k.determinant()
    }
}

/// `t_q = tr (JK)^q` for `q = 1..=len`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceVector {
    t: Vec<Complex64>,
}

impl TraceVector {
    pub fn new(t: Vec<Complex64>) -> Self {
        TraceVector { t }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn get(&self, q: usize) -> Complex64 {
        self.t[q - 1]
    }

    /// `t_alpha = prod_q t_q^{alpha_q}`.
    pub fn monomial(&self, alpha: &Partition) -> Complex64 {
        alpha
            .iter()
            .map(|(q, a)| self.get(q).powu(a))
            .product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_and_nested_rows() {
        let s = SourceMatrices::random(3, 1.0, 7);
        let back = SourceMatrices::from_json_str(&s.to_json_string()).unwrap();
        assert_eq!(back, s);
        let nested = r#"{"N":2,"J":[[[1,0],[0,0]],[[0,0],[1,0]]],"K":[[2,0],[0,0],[0,0],[0,1]]}"#;
        let m = SourceMatrices::from_json_str(nested).unwrap();
        assert_eq!(m.k[(1, 1)], Complex64::new(0.0, 1.0));
        assert_eq!(m.det_k(), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn rejects_wrong_sizes() {
        let bad = r#"{"N":2,"J":[[1,0]],"K":[[1,0],[0,0],[0,0],[1,0]]}"#;
        assert!(matches!(SourceMatrices::from_json_str(bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn traces_of_identity() {
        let t = SourceMatrices::identity(4).traces(3);
        assert_eq!(t.get(3), Complex64::new(4.0, 0.0));
        let alpha: Partition = "1^2 2^1".parse().unwrap();
        assert_eq!(t.monomial(&alpha), Complex64::new(64.0, 0.0));
    }
}
