//! Cauchy inversion in `f64` as a numerical-stability canary.
//!
//! Inverting a Cauchy (or Hilbert) matrix in floating point loses accuracy
//! fast as n grows. Because the entry sum of `C⁻¹` is known exactly
//! (`Σ xₖ + Σ yₖ`), it costs O(n) to score any approximate inverse. This module
//! scores generic Gaussian elimination with partial pivoting against the
//! closed-form inverse evaluated in floats.
//!
//! Residuals use the max-norm.

use std::fmt;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cauchy::{self, CauchySpec};
use crate::densela::Matrix;
use crate::error::{Error, Result};
use crate::ring::{RingContext, Scalar};

/// Dense row-major matrix of finite `f64`s.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl FloatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} values cannot fill a {rows}x{cols} matrix", data.len())));
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(FloatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        FloatMatrix::new(rows.len(), cols, rows.concat())
    }

    /// Rounds every entry of an exact rational matrix to the nearest `f64`.
    pub fn from_exact(m: &Matrix) -> Result<Self> {
        if m.context() != RingContext::Rational {
            return Err(Error::NotRational(m.context()));
        }
        let data = m.entries().iter().map(|s| s.to_f64().unwrap_or(f64::NAN)).collect();
        FloatMatrix::new(m.rows(), m.cols(), data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        FloatMatrix { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn entry_sum(&self) -> f64 {
        self.data.iter().sum()
    }

    /// `|Σ entries − target|` with the sum taken exactly over ℚ, so the result
    /// reflects only the error already present in the entries.
    pub fn entry_sum_error(&self, target: &BigRational) -> f64 {
        let exact: BigRational = self
            .data
            .iter()
            .map(|&v| BigRational::from_float(v).expect("entries are finite"))
            .sum();
        (exact - target).abs().to_f64().unwrap_or(f64::INFINITY)
    }

    /// Product without the finiteness check; overflow shows up as a residual.
    pub fn mul(&self, other: &FloatMatrix) -> Result<Vec<f64>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    out[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// `max |(self · approx_inv − I)ᵢⱼ|`.
    pub fn identity_residual(&self, approx_inv: &FloatMatrix) -> Result<f64> {
        let prod = self.mul(approx_inv)?;
        let n = self.rows;
        Ok(prod
            .iter()
            .enumerate()
            .map(|(k, v)| (v - if k / n == k % n { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max))
    }
}

/// The Cauchy spec `xᵢ = i`, `yⱼ = j − 1` (1-based), whose matrix is the
/// Hilbert matrix `1 / (i + j − 1)`.
pub fn hilbert_spec(n: usize) -> CauchySpec {
    let q = RingContext::Rational;
    let xs = (1..=n as i64).map(|i| q.from_i64(i)).collect();
    let ys = (0..n as i64).map(|j| q.from_i64(j)).collect();
    CauchySpec::new(q, xs, ys).expect("Hilbert pair sums are positive")
}

/// Gauss-Jordan inversion with partial pivoting.
pub fn invert_gauss_pp(m: &FloatMatrix) -> Result<FloatMatrix> {
    if m.rows != m.cols {
        return Err(Error::Shape(format!("cannot invert a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.data.clone();
    let mut inv = FloatMatrix::identity(n).data;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .expect("non-empty range");
        if a[pivot * n + col] == 0.0 {
            return Err(Error::ExactZeroPivot(col));
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col];
        for j in 0..n {
            a[col * n + j] /= p;
            inv[col * n + j] /= p;
        }
        for r in (0..n).filter(|&r| r != col) {
            let factor = a[r * n + col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a[r * n + j] -= factor * a[col * n + j];
                inv[r * n + j] -= factor * inv[col * n + j];
            }
        }
    }
    FloatMatrix::new(n, n, inv)
}

fn float_params(spec: &CauchySpec) -> Result<(Vec<f64>, Vec<f64>)> {
    if spec.context() != RingContext::Rational {
        return Err(Error::NotRational(spec.context()));
    }
    let conv = |v: &[Scalar]| v.iter().map(|s| s.to_f64().expect("rational")).collect();
    Ok((conv(spec.xs()), conv(spec.ys())))
}

/// Closed-form `C⁻¹` evaluated entry by entry in `f64`.
pub fn invert_closed_float(spec: &CauchySpec) -> Result<FloatMatrix> {
    let (xs, ys) = float_params(spec)?;
    let n = xs.len();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut num = 1.0;
            let mut den = xs[j] + ys[i];
            for k in 0..n {
                num *= (xs[j] + ys[k]) * (xs[k] + ys[i]);
                if k != j {
                    den *= xs[j] - xs[k];
                }
                if k != i {
                    den *= ys[i] - ys[k];
                }
            }
            data.push(num / den);
        }
    }
    FloatMatrix::new(n, n, data)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CanaryMethod {
    ClosedForm,
    GaussPp,
}

impl fmt::Display for CanaryMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CanaryMethod::ClosedForm => "closed_form",
            CanaryMethod::GaussPp => "gauss_pp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CanaryReport {
    pub n: usize,
    pub method: CanaryMethod,
    /// `|Σ entries(Ĉ⁻¹) − (Σx + Σy)|`
    pub entry_sum_residual: f64,
    /// `max |C·Ĉ⁻¹ − I|`
    pub identity_residual: f64,
    /// Wall-clock seconds spent inverting.
    pub elapsed: f64,
}

/// Inverts `C` both ways and scores each result against the exact `Σx + Σy`;
/// the residual is rounded to `f64` only at the end.
pub fn run_canary(spec: &CauchySpec) -> Result<(CanaryReport, CanaryReport)> {
    if let Some(w) = cauchy::is_invertible_spec(spec).witness {
        return Err(Error::SingularMatrix { det: format!("0 ({w})") });
    }
    let c = FloatMatrix::from_exact(&cauchy::build(spec))?;
    let truth = spec.parameter_sum().as_rational().expect("rational").clone();

    let score = |method, inv: &FloatMatrix, elapsed: f64| -> Result<CanaryReport> {
        Ok(CanaryReport {
            n: spec.n(),
            method,
            entry_sum_residual: inv.entry_sum_error(&truth),
            identity_residual: c.identity_residual(inv)?,
            elapsed,
        })
    };

    let start = Instant::now();
    let closed = invert_closed_float(spec)?;
    let closed_report = score(CanaryMethod::ClosedForm, &closed, start.elapsed().as_secs_f64())?;

    let start = Instant::now();
    let gauss = invert_gauss_pp(&c)?;
    let gauss_report = score(CanaryMethod::GaussPp, &gauss, start.elapsed().as_secs_f64())?;

    Ok((closed_report, gauss_report))
}

/// CSV with header `n,method,entry_sum_residual,identity_residual,elapsed`.
pub fn reports_to_csv(reports: &[CanaryReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        w.serialize(r).expect("in-memory CSV write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}
