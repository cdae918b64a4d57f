//! Haar sampling on `U(N)` and `SU(N)` and Monte Carlo estimates of the
//! generating functions and of single monomial integrals.
//!
//! Random numbers come from ChaCha8. Samples are split into fixed blocks of
//! [`BLOCK_SIZE`]; block `b` draws from the generator seeded with `seed` on
//! stream `b`. Per-block statistics are merged in block order, so an
//! estimate depends only on `(seed, samples, spec)` and not on the number of
//! worker threads.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sources::{CMatrix, SourceMatrices};

pub const BLOCK_SIZE: u64 = 4096;

/// Smallest sample count accepted by [`estimate_z`].
pub const MIN_SAMPLES: u64 = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Unitary,
    SpecialUnitary,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Unitary => "U",
            Group::SpecialUnitary => "SU",
        })
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u" | "unitary" => Ok(Group::Unitary),
            "su" | "special_unitary" | "special-unitary" => Ok(Group::SpecialUnitary),
            _ => Err(Error::Parse(format!("unknown group '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub group: Group,
    #[serde(rename = "N")]
    pub n: usize,
}

impl GroupSpec {
    pub fn new(group: Group, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        Ok(GroupSpec { group, n })
    }

    pub fn unitary(n: usize) -> Self {
        Self::new(Group::Unitary, n).expect("N >= 1")
    }

    pub fn special_unitary(n: usize) -> Self {
        Self::new(Group::SpecialUnitary, n).expect("N >= 1")
    }
}

/// Standard complex Gaussian: real and imaginary parts with variance 1/2.
fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// One Haar-distributed matrix.
///
/// QR of a Ginibre matrix, with the columns of `Q` rescaled so that the
/// diagonal of `R` is real positive. For `SU(N)` the result is divided by
/// the principal `N`-th root of its determinant.
pub fn sample_haar<R: Rng + ?Sized>(spec: GroupSpec, rng: &mut R) -> CMatrix {
    let n = spec.n;
    if n == 1 && spec.group == Group::SpecialUnitary {
        return CMatrix::identity(1, 1);
    }
    let qr = ginibre(n, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        let d = r[(c, c)];
        let norm = d.norm();
        if norm > 0.0 {
            let phase = d / norm;
            let mut col = q.column_mut(c);
            col *= phase;
        }
    }
    if spec.group == Group::SpecialUnitary {
        let root = q.determinant().powf(1.0 / n as f64);
        q /= root;
    }
    q
}

/// Streaming mean and variance of a complex observable, real and imaginary
/// parts tracked separately.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Welford {
    count: u64,
    mean: Complex64,
    m2_re: f64,
    m2_im: f64,
}

impl Welford {
    pub fn push(&mut self, x: Complex64) {
        self.count += 1;
        let k = self.count as f64;
        let delta = x - self.mean;
        self.mean += delta / k;
        let delta2 = x - self.mean;
        self.m2_re += delta.re * delta2.re;
        self.m2_im += delta.im * delta2.im;
    }

    pub fn merge(&mut self, other: &Welford) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta = other.mean - self.mean;
        self.mean += delta * (nb / n);
        self.m2_re += other.m2_re + delta.re * delta.re * na * nb / n;
        self.m2_im += other.m2_im + delta.im * delta.im * na * nb / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> Complex64 {
        self.mean
    }

    /// Standard errors of the mean, `sample std / sqrt(count)`.
    pub fn stderr(&self) -> (f64, f64) {
        if self.count < 2 {
            return (0.0, 0.0);
        }
        let n = self.count as f64;
        let se = |m2: f64| (m2.max(0.0) / (n - 1.0) / n).sqrt();
        (se(self.m2_re), se(self.m2_im))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    pub stderr_real: f64,
    pub stderr_imag: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    fn from_welford(w: &Welford, seed: u64) -> Self {
        let (stderr_real, stderr_imag) = w.stderr();
        MCEstimate { mean: w.mean(), stderr_real, stderr_imag, samples: w.count(), seed }
    }
}

/// A function of one Haar sample.
pub type Observable<'a> = &'a (dyn Fn(&CMatrix) -> Complex64 + Sync);

/// Generator for block `block` of a run seeded with `seed`.
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Estimates several observables on the same Haar samples.
pub fn estimate_observables(
    spec: GroupSpec,
    samples: u64,
    seed: u64,
    observables: &[Observable<'_>],
) -> Vec<MCEstimate> {
    let blocks = samples.div_ceil(BLOCK_SIZE);
    let partial: Vec<Vec<Welford>> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let count = BLOCK_SIZE.min(samples - b * BLOCK_SIZE);
            let mut acc = vec![Welford::default(); observables.len()];
            for _ in 0..count {
                let u = sample_haar(spec, &mut rng);
                for (a, f) in acc.iter_mut().zip(observables) {
                    a.push(f(&u));
                }
            }
            acc
        })
        .collect();
    let mut total = vec![Welford::default(); observables.len()];
    for block in &partial {
        for (t, w) in total.iter_mut().zip(block) {
            t.merge(w);
        }
    }
    total.iter().map(|w| MCEstimate::from_welford(w, seed)).collect()
}

pub fn estimate_with(spec: GroupSpec, samples: u64, seed: u64, f: Observable<'_>) -> MCEstimate {
    estimate_observables(spec, samples, seed, &[f]).remove(0)
}

/// `U -> (tr KU)^p (tr JU^+)^n`.
pub fn z_observable(p: usize, n: usize, src: &SourceMatrices) -> impl Fn(&CMatrix) -> Complex64 + Sync + '_ {
    move |u: &CMatrix| {
        // tr KU = sum K_ij U_ji, tr JU^+ = sum J_ij conj(U_ij)
        let mut tk = Complex64::new(0.0, 0.0);
        let mut tj = Complex64::new(0.0, 0.0);
        let dim = u.nrows();
        for i in 0..dim {
            for j in 0..dim {
                tk += src.k[(i, j)] * u[(j, i)];
                tj += src.j[(i, j)] * u[(i, j)].conj();
            }
        }
        tk.powu(p as u32) * tj.powu(n as u32)
    }
}

fn check_dim(spec: GroupSpec, src: &SourceMatrices) -> Result<()> {
    if spec.n != src.dim() {
        return Err(Error::DimensionMismatch(format!(
            "group has N = {}, source matrices have N = {}",
            spec.n,
            src.dim()
        )));
    }
    Ok(())
}

/// Monte Carlo estimate of `Z_{p,n}(J,K) = int dU (tr KU)^p (tr JU^+)^n`.
pub fn estimate_z(
    p: usize,
    n: usize,
    src: &SourceMatrices,
    spec: GroupSpec,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!("at least {MIN_SAMPLES} samples are required")));
    }
    check_dim(spec, src)?;
    Ok(estimate_with(spec, samples, seed, &z_observable(p, n, src)))
}

/// `U -> prod_a U_{i_a j_a} prod_b U^+_{k_b l_b}` with 1-based indices and
/// `U^+_{kl} = conj(U_{lk})`.
pub fn monomial_observable<'a>(
    i: &'a [usize],
    j: &'a [usize],
    k: &'a [usize],
    l: &'a [usize],
) -> impl Fn(&CMatrix) -> Complex64 + Sync + 'a {
    move |u: &CMatrix| {
        let mut x = Complex64::new(1.0, 0.0);
        for (a, b) in i.iter().zip(j) {
            x *= u[(a - 1, b - 1)];
        }
        for (a, b) in k.iter().zip(l) {
            x *= u[(b - 1, a - 1)].conj();
        }
        x
    }
}

pub fn estimate_monomial(
    i: &[usize],
    j: &[usize],
    k: &[usize],
    l: &[usize],
    spec: GroupSpec,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    if i.len() != j.len() || k.len() != l.len() {
        return Err(Error::DimensionMismatch(format!(
            "index lists come in pairs: |i| = {}, |j| = {}, |k| = {}, |l| = {}",
            i.len(),
            j.len(),
            k.len(),
            l.len()
        )));
    }
    for &index in i.iter().chain(j).chain(k).chain(l) {
        if index == 0 || index > spec.n {
            return Err(Error::IndexOutOfRange { index, dim: spec.n });
        }
    }
    Ok(estimate_with(spec, samples, seed, &monomial_observable(i, j, k, l)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub pass: bool,
    pub exact: Complex64,
    /// `|Re(mean - exact)| / stderr_real`; infinite for a mismatch with zero error.
    pub pull_real: f64,
    pub pull_imag: f64,
    pub sigmas: f64,
}

fn pull(diff: f64, stderr: f64) -> f64 {
    if stderr > 0.0 {
        diff / stderr
    } else if diff == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Absolute slack added to the statistical tolerance. Components that are
/// real in exact arithmetic carry rounding noise with standard errors far
/// below this.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Passes iff both components of `est - exact` are within `sigmas` standard
/// errors, up to [`ROUNDOFF_FLOOR`].
pub fn compare(est: &MCEstimate, exact: Complex64, sigmas: f64) -> Comparison {
    let d = est.mean - exact;
    let (dr, di) = (d.re.abs(), d.im.abs());
    Comparison {
        pass: dr <= sigmas * est.stderr_real + ROUNDOFF_FLOOR && di <= sigmas * est.stderr_imag + ROUNDOFF_FLOOR,
        exact,
        pull_real: pull(dr, est.stderr_real),
        pull_imag: pull(di, est.stderr_imag),
        sigmas,
    }
}

/// `max |U^+ U - I|` over entries.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.nrows();
    let g = u.adjoint() * u - CMatrix::identity(n, n);
    g.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn est(mean: f64, se: f64) -> MCEstimate {
        MCEstimate { mean: Complex64::new(mean, 0.0), stderr_real: se, stderr_imag: 0.0, samples: 100, seed: 0 }
    }

    #[test]
    fn compare_examples() {
        let third = Complex64::new(1.0 / 3.0, 0.0);
        let c = compare(&est(0.334, 0.002), third, 5.0);
        assert!(c.pass);
        assert!((c.pull_real - 0.3333).abs() < 1e-3);
        assert!(!compare(&est(0.4, 0.002), third, 5.0).pass);
        assert!(compare(&est(0.5, 0.0), Complex64::new(0.5, 0.0), 5.0).pass);
        assert!(!compare(&est(0.5, 0.0), Complex64::new(0.6, 0.0), 5.0).pass);
    }

    #[test]
    fn su1_is_trivial() {
        let mut rng = block_rng(1, 0);
        let u = sample_haar(GroupSpec::special_unitary(1), &mut rng);
        assert_eq!(u, CMatrix::identity(1, 1));
    }

    #[test]
    fn residuals() {
        let mut rng = block_rng(7, 0);
        for n in 1..=6 {
            for _ in 0..1000 {
                let u = sample_haar(GroupSpec::unitary(n), &mut rng);
                assert!(unitarity_residual(&u) < 1e-12);
                let v = sample_haar(GroupSpec::special_unitary(n), &mut rng);
                assert!(unitarity_residual(&v) < 1e-12);
                assert!((v.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn welford_merge_matches_single_pass() {
        let xs: Vec<Complex64> = (0..1000).map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos())).collect();
        let mut all = Welford::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut a = Welford::default();
        let mut b = Welford::default();
        xs[..337].iter().for_each(|&x| a.push(x));
        xs[337..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert!((a.mean() - all.mean()).norm() < 1e-14);
        assert!((a.stderr().0 - all.stderr().0).abs() < 1e-14);
        assert!((a.stderr().1 - all.stderr().1).abs() < 1e-14);
    }

    #[test]
    fn seed_determinism() {
        let spec = GroupSpec::special_unitary(3);
        let src = SourceMatrices::random(3, 1.0, 3);
        let a = estimate_z(2, 1, &src, spec, 10_000, 11).unwrap();
        let b = estimate_z(2, 1, &src, spec, 10_000, 11).unwrap();
        assert_eq!(a, b);
        let c = estimate_z(2, 1, &src, spec, 10_000, 12).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn worker_count_invariance() {
        let spec = GroupSpec::unitary(2);
        let f = |u: &CMatrix| u[(0, 0)] * u[(1, 1)].conj();
        let a = estimate_with(spec, 9000, 5, &f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| estimate_with(spec, 9000, 5, &f));
        assert_eq!(a, b);
    }

    #[test]
    fn trivial_sector_is_exact() {
        let src = SourceMatrices::random(2, 1.0, 1);
        let e = estimate_z(0, 0, &src, GroupSpec::unitary(2), 100, 0).unwrap();
        assert_eq!(e.mean, Complex64::new(1.0, 0.0));
        assert_eq!((e.stderr_real, e.stderr_imag), (0.0, 0.0));
    }

    #[test]
    fn argument_checks() {
        let src = SourceMatrices::identity(3);
        assert!(matches!(
            estimate_z(1, 1, &src, GroupSpec::unitary(2), 1000, 0),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            estimate_z(1, 1, &src, GroupSpec::unitary(3), 10, 0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            estimate_monomial(&[4], &[1], &[1], &[1], GroupSpec::unitary(3), 100, 0),
            Err(Error::IndexOutOfRange { index: 4, dim: 3 })
        ));
    }

    #[test]
    fn first_moments() {
        let e = estimate_monomial(&[1], &[1], &[1], &[1], GroupSpec::unitary(3), 20_000, 1).unwrap();
        assert!(compare(&e, Complex64::new(1.0 / 3.0, 0.0), 5.0).pass, "{e:?}");
        let tr = |u: &CMatrix| u.trace();
        let e = estimate_with(GroupSpec::special_unitary(2), 20_000, 2, &tr);
        assert!(compare(&e, Complex64::new(0.0, 0.0), 5.0).pass, "{e:?}");
    }

    #[test]
    fn left_invariance() {
        let spec = GroupSpec::special_unitary(3);
        let w = sample_haar(spec, &mut block_rng(99, 0));
        let f = monomial_observable(&[1, 2], &[1, 3], &[2, 1], &[2, 1]);
        let g = |u: &CMatrix| f(&(&w * u));
        let a = estimate_with(spec, 20_000, 3, &f);
        let b = estimate_with(spec, 20_000, 4, &g);
        let d = a.mean - b.mean;
        let sr = a.stderr_real.hypot(b.stderr_real);
        let si = a.stderr_imag.hypot(b.stderr_imag);
        assert!(d.re.abs() <= 5.0 * sr && d.im.abs() <= 5.0 * si, "{a:?} {b:?}");
    }
}
