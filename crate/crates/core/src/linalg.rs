//! Shared numeric helpers: complex aliases, seeded randomness, least squares,
//! and the JSON wire format for complex matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SimError};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const J: C64 = C64::new(0.0, 1.0);

/// Unit-magnitude complex exponential `e^{j theta}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// dBm to linear milliwatts.
#[inline]
pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

/// dB to linear power ratio.
#[inline]
pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One circularly-symmetric complex Gaussian sample CN(0, variance).
pub fn sample_cn(variance: f64, rng: &mut impl Rng) -> C64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(s * re, s * im)
}

/// Vector of i.i.d. CN(0, variance) samples.
pub fn sample_cn_vec(n: usize, variance: f64, rng: &mut impl Rng) -> CVec {
    CVec::from_fn(n, |_, _| sample_cn(variance, rng))
}

/// Matrix with i.i.d. CN(0, variance) entries.
pub fn sample_cn_mat(rows: usize, cols: usize, variance: f64, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| sample_cn(variance, rng))
}

/// Matrix with i.i.d. unit-modulus entries of uniform random phase.
pub fn sample_unit_modulus(rows: usize, cols: usize, rng: &mut impl Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        cis(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
    })
}

/// splitmix64 step, used to derive independent child seeds.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Deterministic child seed from a master seed and a label path.
///
/// Identical inputs give identical children on every platform, and any change
/// to one component changes the child, so concurrent consumers never share a
/// stream.
pub fn child_seed(master: u64, labels: &[u64]) -> u64 {
    let mut state = master ^ 0xD1B54A32D192ED03;
    let mut out = splitmix64(&mut state);
    for &l in labels {
        state ^= l.wrapping_mul(0xA24BAED4963EE407);
        out ^= splitmix64(&mut state);
    }
    out
}

/// Seeded generator for one logical stream.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Squared Frobenius norm.
pub fn fro_norm_sq(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Hermitian transpose helper (`A^H`).
pub fn herm(m: &CMat) -> CMat {
    m.adjoint()
}

/// Solve the least-squares problem `min_X ||Y - A X||_F` through the normal
/// equations. Falls back to a small ridge when the Gram matrix is numerically
/// singular (repeated or near-duplicate atoms must not abort recovery).
pub fn lstsq(a: &CMat, y: &CMat) -> Result<CMat> {
    if a.nrows() != y.nrows() {
        return Err(SimError::dimension(format!(
            "lstsq: lhs has {} rows, rhs has {}",
            a.nrows(),
            y.nrows()
        )));
    }
    let gram = a.adjoint() * a;
    let rhs = a.adjoint() * y;
    solve_hermitian(&gram, &rhs)
}

/// Solve `G X = B` for Hermitian positive semi-definite `G`, with the ridge
/// fallback described above.
pub fn solve_hermitian(gram: &CMat, rhs: &CMat) -> Result<CMat> {
    if let Some(chol) = gram.clone().cholesky() {
        return Ok(chol.solve(rhs));
    }
    let n = gram.nrows();
    let mut ridge = 1e-12;
    for _ in 0..4 {
        let reg = gram + CMat::identity(n, n).scale(ridge);
        if let Some(chol) = reg.cholesky() {
            return Ok(chol.solve(rhs));
        }
        ridge *= 1e3;
    }
    Err(SimError::Degenerate(
        "gram matrix not positive definite even after ridge regularization".into(),
    ))
}

/// Complex matrix in the documented JSON wire format: row-major data,
/// each entry an `[re, im]` pair.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMat) -> Self {
        let mut data = Vec::with_capacity(m.nrows() * m.ncols());
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                data.push([z.re, z.im]);
            }
        }
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> Result<CMat> {
        if self.data.len() != self.rows * self.cols {
            return Err(SimError::dimension(format!(
                "matrix json: {}x{} declared but {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        Ok(CMat::from_fn(self.rows, self.cols, |r, c| {
            let e = self.data[r * self.cols + c];
            C64::new(e[0], e[1])
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn child_seed_changes_with_every_label() {
        let a = child_seed(7, &[1, 2]);
        let b = child_seed(7, &[1, 3]);
        let c = child_seed(7, &[2, 2]);
        let d = child_seed(8, &[1, 2]);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert_eq!(a, child_seed(7, &[1, 2]));
    }

    #[test]
    fn cn_sampler_matches_requested_variance() {
        let mut rng = seeded_rng(3);
        let n = 100_000;
        let var: f64 = 2.5;
        let mean_sq: f64 = (0..n).map(|_| sample_cn(var, &mut rng).norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean_sq - var).abs() / var < 0.02, "got {mean_sq}");
    }

    #[test]
    fn lstsq_recovers_exact_coefficients() {
        let mut rng = seeded_rng(11);
        let a = sample_cn_mat(8, 3, 1.0, &mut rng);
        let x = sample_cn_mat(3, 2, 1.0, &mut rng);
        let y = &a * &x;
        let xh = lstsq(&a, &y).unwrap();
        assert!(fro_norm_sq(&(xh - x)) < 1e-20);
    }

    #[test]
    fn lstsq_survives_duplicate_atoms() {
        let mut rng = seeded_rng(12);
        let col = sample_cn_vec(6, 1.0, &mut rng);
        let mut a = CMat::zeros(6, 2);
        a.set_column(0, &col);
        a.set_column(1, &col);
        let y = CMat::from_column_slice(6, 1, col.as_slice());
        let xh = lstsq(&a, &y).unwrap();
        let resid = &y - &a * &xh;
        assert!(fro_norm_sq(&resid) < 1e-12);
    }

    #[test]
    fn matrix_json_round_trip() {
        let mut rng = seeded_rng(5);
        let m = sample_cn_mat(3, 4, 1.0, &mut rng);
        let js = MatrixJson::from_matrix(&m);
        let back = js.to_matrix().unwrap();
        assert_eq!(m, back);
        let text = serde_json::to_string(&js).unwrap();
        let reparsed: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(js, reparsed);
    }
}
