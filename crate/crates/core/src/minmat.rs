//! Min matrices `F = (min(xᵢ, yⱼ))` over ℚ.
//!
//! The tropical counterpart of the Cauchy matrix: its inverse has entry sum
//! `1 / min(all xᵢ, yⱼ)`, and once the parameters are sorted its determinant
//! factors into `f₁₁` times mixed second differences along the diagonal.

use std::cmp::Ordering;

use crate::densela::{self, Matrix};
use crate::error::{Error, Result};
use crate::ring::{RingContext, Scalar};

const Q: RingContext = RingContext::Rational;

/// Parameter vectors of a min matrix. Rational only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinSpec {
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
}

impl MinSpec {
    pub fn new(xs: Vec<Scalar>, ys: Vec<Scalar>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::BadSpecLength { xs: xs.len(), ys: ys.len() });
        }
        if let Some(bad) = xs.iter().chain(&ys).find(|s| !s.context().is_ordered()) {
            return Err(Error::Unordered(bad.context()));
        }
        Ok(MinSpec { xs, ys })
    }

    pub fn from_ints(xs: &[i64], ys: &[i64]) -> Result<Self> {
        MinSpec::new(xs.iter().map(|&k| Q.from_i64(k)).collect(), ys.iter().map(|&k| Q.from_i64(k)).collect())
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[Scalar] {
        &self.xs
    }

    pub fn ys(&self) -> &[Scalar] {
        &self.ys
    }

    /// Smallest of all `2n` parameters.
    pub fn min_value(&self) -> &Scalar {
        self.xs.iter().chain(&self.ys).min_by(|a, b| cmp(a, b)).expect("n >= 1")
    }
}

/// A [`MinSpec`] with `x₁ ≤ … ≤ xₙ`, `y₁ ≤ … ≤ yₙ` and `x₁ ≤ y₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortedMinSpec {
    spec: MinSpec,
    swapped: bool,
}

impl SortedMinSpec {
    /// Checks the ordering hypotheses on already-sorted input.
    pub fn new(spec: MinSpec) -> Result<Self> {
        check_ascending(&spec.xs, "xs")?;
        check_ascending(&spec.ys, "ys")?;
        if cmp(&spec.xs[0], &spec.ys[0]) == Ordering::Greater {
            return Err(Error::Unsorted(format!("x[0] = {} exceeds y[0] = {}", spec.xs[0], spec.ys[0])));
        }
        Ok(SortedMinSpec { spec, swapped: false })
    }

    pub fn spec(&self) -> &MinSpec {
        &self.spec
    }

    /// Whether [`normalize`] exchanged the roles of `xs` and `ys`.
    pub fn swapped(&self) -> bool {
        self.swapped
    }
}

fn cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.try_cmp(b).expect("min specs hold rationals only")
}

fn min<'a>(a: &'a Scalar, b: &'a Scalar) -> &'a Scalar {
    if cmp(a, b) == Ordering::Greater {
        b
    } else {
        a
    }
}

fn check_ascending(v: &[Scalar], name: &str) -> Result<()> {
    match v.windows(2).position(|w| cmp(&w[0], &w[1]) == Ordering::Greater) {
        Some(k) => Err(Error::Unsorted(format!("{name}[{k}] = {} > {name}[{}] = {}", v[k], k + 1, v[k + 1]))),
        None => Ok(()),
    }
}

pub fn build(spec: &MinSpec) -> Matrix {
    let n = spec.n();
    Matrix::from_fn(Q, n, n, |i, j| min(&spec.xs[i], &spec.ys[j]).clone())
}

/// Sorts both vectors and, if `y₁ < x₁`, exchanges them. Row and column
/// permutations and the transpose leave entry sums and `|det F|` unchanged.
pub fn normalize(spec: &MinSpec) -> SortedMinSpec {
    let mut xs = spec.xs.clone();
    let mut ys = spec.ys.clone();
    xs.sort_by(cmp);
    ys.sort_by(cmp);
    let swapped = cmp(&xs[0], &ys[0]) == Ordering::Greater;
    if swapped {
        std::mem::swap(&mut xs, &mut ys);
    }
    SortedMinSpec { spec: MinSpec { xs, ys }, swapped }
}

/// `f₁₁` followed by the factors `f_{k,k} − f_{k,k−1} − f_{k−1,k} + f_{k−1,k−1}`
/// for k = 2..n, with `f_{i,j} = min(xᵢ, yⱼ)`.
fn det_factors(xs: &[Scalar], ys: &[Scalar]) -> Vec<Scalar> {
    let f = |i: usize, j: usize| min(&xs[i], &ys[j]);
    let mut factors = vec![f(0, 0).clone()];
    for k in 1..xs.len() {
        let diag = &(f(k, k) - f(k, k - 1)) - f(k - 1, k);
        factors.push(&diag + f(k - 1, k - 1));
    }
    factors
}

/// Closed-form `det F` for ascending `xs` and `ys` (no condition relating
/// `x₁` and `y₁`).
pub fn det_closed_ascending(xs: &[Scalar], ys: &[Scalar]) -> Result<Scalar> {
    let spec = MinSpec::new(xs.to_vec(), ys.to_vec())?;
    check_ascending(&spec.xs, "xs")?;
    check_ascending(&spec.ys, "ys")?;
    Ok(Q.product(det_factors(&spec.xs, &spec.ys).iter()))
}

pub fn det_closed(sspec: &SortedMinSpec) -> Scalar {
    Q.product(det_factors(&sspec.spec.xs, &sspec.spec.ys).iter())
}

/// Parity of the permutation that stably sorts `v`.
fn sort_parity_odd(v: &[Scalar]) -> bool {
    let mut inversions = 0usize;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if cmp(&v[i], &v[j]) == Ordering::Greater {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Closed-form `det F` for parameters in any order: the sorted closed form,
/// signed by the parities of the row and column sorting permutations.
pub fn det_closed_any(spec: &MinSpec) -> Scalar {
    let sorted = normalize(spec);
    let det = det_closed(&sorted);
    if sort_parity_odd(&spec.xs) != sort_parity_odd(&spec.ys) {
        -det
    } else {
        det
    }
}

/// True iff `f₁₁` or one of the diagonal factors vanishes, i.e. `det F = 0`.
pub fn det_zero_predicate(sspec: &SortedMinSpec) -> bool {
    det_factors(&sspec.spec.xs, &sspec.spec.ys).iter().any(Scalar::is_zero)
}

fn require_invertible(spec: &MinSpec) -> Result<()> {
    let det = densela::det_fast(&build(spec))?;
    if det.is_zero() {
        Err(Error::SingularMatrix { det: det.to_string() })
    } else {
        Ok(())
    }
}

/// Sum of all entries of `F⁻¹`: `1 / min(x₁, …, xₙ, y₁, …, yₙ)`.
pub fn inverse_entry_sum(spec: &MinSpec) -> Result<Scalar> {
    require_invertible(spec)?;
    spec.min_value().inv()
}

/// Column sums of `F⁻¹` for a sorted spec: `(1/x₁, 0, …, 0)`.
pub fn inverse_column_sums(sspec: &SortedMinSpec) -> Result<Vec<Scalar>> {
    require_invertible(&sspec.spec)?;
    let mut sums = vec![Q.zero(); sspec.spec.n()];
    sums[0] = sspec.spec.xs[0].inv()?;
    Ok(sums)
}
