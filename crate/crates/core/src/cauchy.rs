//! Cauchy matrices `C = (1 / (xᵢ + yⱼ))` and their closed forms.
//!
//! All indices are 0-based. Entries use the `+yⱼ` convention; callers holding
//! `1 / (xᵢ − yⱼ)` data should go through [`CauchySpec::with_minus_convention`].

use std::fmt;

use crate::densela::{self, Matrix};
use crate::error::{Error, Result};
use crate::ring::{RingContext, Scalar};

/// Parameter vectors of a Cauchy matrix. Every pair sum `xᵢ + yⱼ` is
/// invertible; this is checked on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchySpec {
    context: RingContext,
    xs: Vec<Scalar>,
    ys: Vec<Scalar>,
}

impl CauchySpec {
    pub fn new(context: RingContext, xs: Vec<Scalar>, ys: Vec<Scalar>) -> Result<Self> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(Error::BadSpecLength { xs: xs.len(), ys: ys.len() });
        }
        for s in xs.iter().chain(&ys) {
            if s.context() != context {
                return Err(Error::ContextMismatch { left: context, right: s.context() });
            }
        }
        for (i, x) in xs.iter().enumerate() {
            for (j, y) in ys.iter().enumerate() {
                if !(x + y).is_invertible() {
                    return Err(Error::NonInvertiblePairSum { i, j });
                }
            }
        }
        Ok(CauchySpec { context, xs, ys })
    }

    /// Reads `ys` as the subtrahends of `1 / (xᵢ − yⱼ)`.
    pub fn with_minus_convention(context: RingContext, xs: Vec<Scalar>, ys: Vec<Scalar>) -> Result<Self> {
        CauchySpec::new(context, xs, ys.into_iter().map(|y| -y).collect())
    }

    /// Rational spec from integers, for tests and examples.
    pub fn from_ints(xs: &[i64], ys: &[i64]) -> Result<Self> {
        let q = RingContext::Rational;
        CauchySpec::new(q, xs.iter().map(|&k| q.from_i64(k)).collect(), ys.iter().map(|&k| q.from_i64(k)).collect())
    }

    pub fn context(&self) -> RingContext {
        self.context
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

    /// Exchanges the roles of `xs` and `ys`; the matrix becomes its transpose.
    pub fn swapped(&self) -> CauchySpec {
        CauchySpec { context: self.context, xs: self.ys.clone(), ys: self.xs.clone() }
    }

    /// `Σ xₖ + Σ yₖ`.
    pub fn parameter_sum(&self) -> Scalar {
        self.context.sum(self.xs.iter().chain(&self.ys))
    }

    fn pair_sum_inv(&self, i: usize, j: usize) -> Scalar {
        (&self.xs[i] + &self.ys[j]).inv().expect("pair sums validated on construction")
    }
}

/// Which parameter vector a distinctness witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamVector {
    X,
    Y,
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParamVector::X => "x",
            ParamVector::Y => "y",
        })
    }
}

/// Two entries of one vector whose difference is not invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistinctnessWitness {
    pub vector: ParamVector,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for DistinctnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{v}[{}] - {v}[{}] is not invertible", self.i, self.j, v = self.vector)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvertibilityVerdict {
    pub invertible: bool,
    pub witness: Option<DistinctnessWitness>,
}

pub fn build(spec: &CauchySpec) -> Matrix {
    let n = spec.n();
    Matrix::from_fn(spec.context, n, n, |i, j| spec.pair_sum_inv(i, j))
}

/// `∏_{i<j} (xᵢ − xⱼ)(yᵢ − yⱼ) / ∏_{i,j} (xᵢ + yⱼ)`.
pub fn det_closed(spec: &CauchySpec) -> Scalar {
    let ctx = spec.context;
    let n = spec.n();
    let mut num = ctx.one();
    for i in 0..n {
        for j in i + 1..n {
            num = &num * &(&(&spec.xs[i] - &spec.xs[j]) * &(&spec.ys[i] - &spec.ys[j]));
        }
    }
    let mut den = ctx.one();
    for x in &spec.xs {
        for y in &spec.ys {
            den = &den * &(x + y);
        }
    }
    &num * &den.inv().expect("product of invertible pair sums")
}

fn first_non_distinct(v: &[Scalar]) -> Option<(usize, usize)> {
    (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .find(|&(i, j)| !(&v[i] - &v[j]).is_invertible())
}

/// `C` is invertible exactly when the `xs` are pairwise strongly distinct and
/// so are the `ys` (every difference invertible).
pub fn is_invertible_spec(spec: &CauchySpec) -> InvertibilityVerdict {
    let witness = first_non_distinct(&spec.xs)
        .map(|(i, j)| DistinctnessWitness { vector: ParamVector::X, i, j })
        .or_else(|| first_non_distinct(&spec.ys).map(|(i, j)| DistinctnessWitness { vector: ParamVector::Y, i, j }));
    InvertibilityVerdict { invertible: witness.is_none(), witness }
}

fn require_invertible(spec: &CauchySpec) -> Result<()> {
    if is_invertible_spec(spec).invertible {
        Ok(())
    } else {
        Err(Error::SingularMatrix { det: det_closed(spec).to_string() })
    }
}

/// Entry `(i, j)` of `C⁻¹`:
///
/// ```text
///              ∏ₖ (xⱼ + yₖ)(xₖ + yᵢ)
/// ───────────────────────────────────────────────────
/// (xⱼ + yᵢ) · ∏_{k≠j} (xⱼ − xₖ) · ∏_{k≠i} (yᵢ − yₖ)
/// ```
pub fn inverse_entry_closed(spec: &CauchySpec, i: usize, j: usize) -> Result<Scalar> {
    let n = spec.n();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    require_invertible(spec)?;
    let ctx = spec.context;
    let (xs, ys) = (&spec.xs, &spec.ys);
    let mut num = ctx.one();
    let mut den = &xs[j] + &ys[i];
    for k in 0..n {
        num = &num * &(&(&xs[j] + &ys[k]) * &(&xs[k] + &ys[i]));
        if k != j {
            den = &den * &(&xs[j] - &xs[k]);
        }
        if k != i {
            den = &den * &(&ys[i] - &ys[k]);
        }
    }
    num.try_div(&den)
}

/// Full `C⁻¹` from the closed form in O(n²) scalar operations.
///
/// Entry `(i, j)` factors as `a[j] · b[i] / (xⱼ + yᵢ)` with
/// `a[j] = ∏ₖ (xⱼ + yₖ) / ∏_{k≠j} (xⱼ − xₖ)` and
/// `b[i] = ∏ₖ (xₖ + yᵢ) / ∏_{k≠i} (yᵢ − yₖ)`; `1 / (xⱼ + yᵢ)` is `C[j][i]`.
pub fn inverse_closed(spec: &CauchySpec) -> Result<Matrix> {
    require_invertible(spec)?;
    let ctx = spec.context;
    let n = spec.n();
    let (xs, ys) = (&spec.xs, &spec.ys);

    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for m in 0..n {
        let mut col_num = ctx.one();
        let mut col_den = ctx.one();
        let mut row_num = ctx.one();
        let mut row_den = ctx.one();
        for k in 0..n {
            col_num = &col_num * &(&xs[m] + &ys[k]);
            row_num = &row_num * &(&xs[k] + &ys[m]);
            if k != m {
                col_den = &col_den * &(&xs[m] - &xs[k]);
                row_den = &row_den * &(&ys[m] - &ys[k]);
            }
        }
        a.push(col_num.try_div(&col_den)?);
        b.push(row_num.try_div(&row_den)?);
    }

    let c = build(spec);
    Ok(Matrix::from_fn(ctx, n, n, |i, j| &(&a[j] * &b[i]) * c.get(j, i)))
}

/// Sum of all entries of `C⁻¹`, which is `Σ xₖ + Σ yₖ`. Requires an
/// invertible `C`.
pub fn inverse_entry_sum(spec: &CauchySpec) -> Result<Scalar> {
    require_invertible(spec)?;
    Ok(spec.parameter_sum())
}

/// Sum of all entries of `adj C`, which is `(Σ xₖ + Σ yₖ) · det C`. Holds for
/// singular `C` too.
pub fn adjugate_entry_sum_closed(spec: &CauchySpec) -> Scalar {
    &spec.parameter_sum() * &det_closed(spec)
}

/// `C` bordered by a row and column of ones with a zero corner.
pub fn bordered_matrix(spec: &CauchySpec) -> Matrix {
    densela::bordered(&build(spec)).expect("Cauchy matrices are square")
}

/// `det` of [`bordered_matrix`]: `−(Σ xₖ + Σ yₖ) · det C`.
pub fn bordered_det_closed(spec: &CauchySpec) -> Scalar {
    -adjugate_entry_sum_closed(spec)
}
