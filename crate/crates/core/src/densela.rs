//! Generic dense linear algebra over a [`RingContext`].
//!
//! Nothing here knows about Cauchy or min matrices. These routines are the
//! reference every closed form is checked against, so the determinant has two
//! independent paths: Laplace expansion ([`det_cofactor`]) and elimination
//! ([`det_fast`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{RingContext, Scalar};

/// Largest matrix [`det_cofactor`] accepts.
pub const COFACTOR_LIMIT: usize = 8;

/// Dense row-major matrix whose entries all share one ring context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    context: RingContext,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(context: RingContext, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries cannot fill a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.context() != context) {
            return Err(Error::ContextMismatch { left: context, right: bad.context() });
        }
        Ok(Matrix { rows, cols, context, entries })
    }

    pub fn from_rows(context: RingContext, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(context, n, m, rows.into_iter().flatten().collect())
    }

    /// Integer matrix, mostly for tests and examples.
    pub fn from_ints<R: AsRef<[i64]>>(context: RingContext, rows: &[R]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&k| context.from_i64(k)).collect())
            .collect();
        Matrix::from_rows(context, rows)
    }

    /// Builds a matrix from a closure. Panics if the closure yields a scalar
    /// from another context.
    pub fn from_fn(
        context: RingContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let entries: Vec<Scalar> = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Matrix::new(context, rows, cols, entries).expect("from_fn closure produced a foreign scalar")
    }

    pub fn try_from_fn(
        context: RingContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<Scalar>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Matrix::new(context, rows, cols, entries)
    }

    pub fn identity(context: RingContext, n: usize) -> Self {
        Matrix::from_fn(context, n, n, |i, j| context.from_i64((i == j) as i64))
    }

    pub fn zeros(context: RingContext, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, context, entries: vec![context.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> RingContext {
        self.context
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.context, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, k: &Scalar) -> Result<Matrix> {
        check_context(self.context, k.context())?;
        Ok(Matrix { entries: self.entries.iter().map(|e| e * k).collect(), ..self.clone() })
    }

    /// The matrix with row `row` and column `col` removed.
    pub fn minor(&self, row: usize, col: usize) -> Matrix {
        let mut entries = Vec::with_capacity(self.rows.saturating_sub(1) * self.cols.saturating_sub(1));
        for i in (0..self.rows).filter(|&i| i != row) {
            for j in (0..self.cols).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, context: self.context, entries }
    }

    /// Rows of canonical scalar renderings.
    pub fn rendered_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(Scalar::to_string).collect()).collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson { rows: self.rows, cols: self.cols, entries: self.rendered_rows() }
    }

    pub fn from_json(context: RingContext, json: &MatrixJson) -> Result<Matrix> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::Shape(format!("entries do not form a {}x{} grid", json.rows, json.cols)));
        }
        let mut entries = Vec::with_capacity(json.rows * json.cols);
        for s in json.entries.iter().flatten() {
            entries.push(context.parse(s)?);
        }
        Matrix::new(context, json.rows, json.cols, entries)
    }
}

/// Wire form: `{"rows": n, "cols": m, "entries": [["1/2", ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

/// Row and column weights for [`lemma_ab_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVectors {
    pub xs: Vec<Scalar>,
    pub ys: Vec<Scalar>,
}

fn check_context(a: RingContext, b: RingContext) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch { left: a, right: b })
    }
}

fn require_square(a: &Matrix, what: &str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::Shape(format!("{what} needs a square matrix, got {}x{}", a.rows, a.cols)))
    }
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    check_context(a.context, b.context)?;
    if a.cols != b.rows {
        return Err(Error::Shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let ctx = a.context;
    Ok(Matrix::from_fn(ctx, a.rows, b.cols, |i, k| {
        (0..a.cols).fold(ctx.zero(), |acc, j| &acc + &(a.get(i, j) * b.get(j, k)))
    }))
}

/// Determinant by recursive first-row Laplace expansion. Limited to
/// [`COFACTOR_LIMIT`] rows.
pub fn det_cofactor(a: &Matrix) -> Result<Scalar> {
    require_square(a, "det_cofactor")?;
    if a.rows > COFACTOR_LIMIT {
        return Err(Error::SizeGuard { size: a.rows, limit: COFACTOR_LIMIT });
    }
    Ok(laplace(a))
}

fn laplace(a: &Matrix) -> Scalar {
    let ctx = a.context;
    match a.rows {
        0 => ctx.one(),
        1 => a.get(0, 0).clone(),
        n => (0..n).fold(ctx.zero(), |acc, j| {
            let term = a.get(0, j) * &laplace(&a.minor(0, j));
            if j % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            }
        }),
    }
}

/// Determinant by elimination: fraction-free Bareiss over ℚ (after clearing
/// denominators row by row), pivoted Gaussian elimination over 𝔽ₚ.
pub fn det_fast(a: &Matrix) -> Result<Scalar> {
    require_square(a, "det_fast")?;
    Ok(match a.context {
        RingContext::Rational => Scalar::Rational(det_bareiss_rational(a)),
        RingContext::Prime(_) => det_gauss(a),
    })
}

fn det_bareiss_rational(a: &Matrix) -> BigRational {
    let n = a.rows;
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row: Vec<&BigRational> = a.row(i).iter().map(|s| s.as_rational().expect("rational entries")).collect();
        let lcm = row.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
        m.push(row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect());
        scale *= lcm;
    }
    BigRational::new(bareiss(m), scale)
}

/// Integer Bareiss elimination. Every division is exact.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                debug_assert!((&t % &prev).is_zero());
                m[i][j] = t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn det_gauss(a: &Matrix) -> Scalar {
    let ctx = a.context;
    let n = a.rows;
    let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = ctx.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return ctx.zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det = &det * &m[k][k];
        let pivot_inv = m[k][k].inv().expect("nonzero pivot in a field");
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] * &pivot_inv;
            for j in k..n {
                let t = &factor * &m[k][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
    }
    det
}

/// Adjugate: entry `(i, j)` is `(-1)^(i+j)` times the determinant of `a` with
/// row `j` and column `i` removed. The adjugate of a 1x1 matrix is `[[1]]`.
pub fn adjugate(a: &Matrix) -> Result<Matrix> {
    require_square(a, "adjugate")?;
    let n = a.rows;
    Matrix::try_from_fn(a.context, n, n, |i, j| {
        let d = det_fast(&a.minor(j, i))?;
        Ok(if (i + j) % 2 == 0 { d } else { -d })
    })
}

/// Inverse as `det⁻¹ · adj(a)`.
pub fn inverse(a: &Matrix) -> Result<Matrix> {
    require_square(a, "inverse")?;
    let det = det_fast(a)?;
    let det_inv = det.inv().map_err(|_| Error::SingularMatrix { det: det.to_string() })?;
    adjugate(a)?.scale(&det_inv)
}

pub fn entry_sum(a: &Matrix) -> Scalar {
    a.context.sum(a.entries.iter())
}

pub fn column_sum(a: &Matrix, j: usize) -> Result<Scalar> {
    if j >= a.cols {
        return Err(Error::IndexOutOfRange { index: j, len: a.cols });
    }
    Ok(a.context.sum((0..a.rows).map(|i| a.get(i, j))))
}

pub fn trace(a: &Matrix) -> Result<Scalar> {
    require_square(a, "trace")?;
    Ok(a.context.sum((0..a.rows).map(|i| a.get(i, i))))
}

/// Evaluates both sides of the weighted-trace identity
/// `Σᵢⱼ (xᵢ + yⱼ) Aᵢⱼ Bⱼᵢ = Σᵢ xᵢ (AB)ᵢᵢ + Σⱼ yⱼ (BA)ⱼⱼ`
/// for `A` of shape n×m and `B` of shape m×n. Returns `(lhs, rhs)`.
pub fn lemma_ab_check(a: &Matrix, b: &Matrix, w: &WeightVectors) -> Result<(Scalar, Scalar)> {
    let (n, m) = (a.rows, a.cols);
    if b.rows != m || b.cols != n {
        return Err(Error::Shape(format!("A is {n}x{m}, so B must be {m}x{n}, got {}x{}", b.rows, b.cols)));
    }
    if w.xs.len() != n || w.ys.len() != m {
        return Err(Error::Shape(format!(
            "weights must have lengths {n} and {m}, got {} and {}",
            w.xs.len(),
            w.ys.len()
        )));
    }
    check_context(a.context, b.context)?;
    for s in w.xs.iter().chain(&w.ys) {
        check_context(a.context, s.context())?;
    }
    let ctx = a.context;

    let mut lhs = ctx.zero();
    for i in 0..n {
        for j in 0..m {
            let weight = &w.xs[i] + &w.ys[j];
            lhs = &lhs + &(&weight * &(a.get(i, j) * b.get(j, i)));
        }
    }

    let ab = mat_mul(a, b)?;
    let ba = mat_mul(b, a)?;
    let rhs_x = (0..n).fold(ctx.zero(), |acc, i| &acc + &(&w.xs[i] * ab.get(i, i)));
    let rhs_y = (0..m).fold(ctx.zero(), |acc, j| &acc + &(&w.ys[j] * ba.get(j, j)));
    Ok((lhs, &rhs_x + &rhs_y))
}

/// `a` with a row of ones appended at the bottom, a column of ones at the
/// right, and a zero in the new corner.
pub fn bordered(a: &Matrix) -> Result<Matrix> {
    require_square(a, "bordered")?;
    let n = a.rows;
    let ctx = a.context;
    Ok(Matrix::from_fn(ctx, n + 1, n + 1, |i, j| match (i == n, j == n) {
        (true, true) => ctx.zero(),
        (true, false) | (false, true) => ctx.one(),
        (false, false) => a.get(i, j).clone(),
    }))
}

/// Returns `(det(bordered(a)), entry_sum(adjugate(a)))`; the first is always
/// the negative of the second.
pub fn border_det_general(a: &Matrix) -> Result<(Scalar, Scalar)> {
    let det_b = det_fast(&bordered(a)?)?;
    let adj_sum = entry_sum(&adjugate(a)?);
    Ok((det_b, adj_sum))
}

/// `|det|` over ℚ.
pub fn abs_det(a: &Matrix) -> Result<Scalar> {
    det_fast(a)?.try_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: RingContext = RingContext::Rational;
    const F101: RingContext = RingContext::Prime(101);

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::rational(n, d)
    }

    fn ints(rows: &[&[i64]]) -> Matrix {
        Matrix::from_ints(Q, rows).unwrap()
    }

    #[test]
    fn multiply_2x2() {
        let a = ints(&[&[1, 2], &[3, 4]]);
        let b = ints(&[&[5, 6], &[7, 8]]);
        assert_eq!(mat_mul(&a, &b).unwrap(), ints(&[&[19, 22], &[43, 50]]));
        assert_eq!(mat_mul(&b, &a).unwrap(), ints(&[&[23, 34], &[31, 46]]));
    }

    #[test]
    fn multiply_row_by_column() {
        let a = ints(&[&[2, 3]]);
        let b = ints(&[&[4], &[5]]);
        assert_eq!(mat_mul(&a, &b).unwrap(), ints(&[&[23]]));
        assert!(matches!(mat_mul(&a, &a), Err(Error::Shape(_))));
    }

    #[test]
    fn multiply_context_mismatch() {
        let a = ints(&[&[1]]);
        let b = Matrix::from_ints(F101, &[[1]]).unwrap();
        assert!(matches!(mat_mul(&a, &b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Matrix::new(Q, 2, 2, vec![Q.one()]), Err(Error::Shape(_))));
        assert!(matches!(
            Matrix::new(Q, 1, 1, vec![F101.one()]),
            Err(Error::ContextMismatch { .. })
        ));
        assert!(Matrix::from_rows(Q, vec![vec![Q.one()], vec![]]).is_err());
    }

    #[test]
    fn det_small() {
        assert_eq!(det_cofactor(&ints(&[&[7]])).unwrap(), Scalar::integer(7));
        assert_eq!(det_cofactor(&ints(&[&[1, 1], &[2, 3]])).unwrap(), Scalar::integer(1));
        assert_eq!(det_fast(&ints(&[&[1, 1], &[2, 3]])).unwrap(), Scalar::integer(1));
        let dup = ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert!(det_cofactor(&dup).unwrap().is_zero());
        assert!(det_fast(&dup).unwrap().is_zero());
    }

    #[test]
    fn det_singular_4x4() {
        let a = ints(&[&[1, 2, 3, 4], &[0, 1, 5, 2], &[1, 2, 3, 4], &[9, -1, 2, 2]]);
        assert!(det_fast(&a).unwrap().is_zero());
    }

    #[test]
    fn det_prime_diagonal() {
        let a = Matrix::from_ints(F101, &[[2, 0], [0, 3]]).unwrap();
        assert_eq!(det_fast(&a).unwrap(), F101.from_i64(6));
    }

    #[test]
    fn det_needs_pivoting() {
        let a = ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_fast(&a).unwrap(), Scalar::integer(-1));
        let b = Matrix::from_ints(F101, &[[0, 1], [1, 0]]).unwrap();
        assert_eq!(det_fast(&b).unwrap(), F101.from_i64(-1));
    }

    #[test]
    fn det_guards() {
        assert!(matches!(det_cofactor(&ints(&[&[1, 2]])), Err(Error::Shape(_))));
        assert!(matches!(det_fast(&ints(&[&[1, 2]])), Err(Error::Shape(_))));
        let big = Matrix::identity(Q, 9);
        assert!(matches!(det_cofactor(&big), Err(Error::SizeGuard { size: 9, limit: 8 })));
        assert!(det_fast(&big).unwrap().is_one());
    }

    #[test]
    fn det_with_fractions() {
        // 1/28 - 1/30
        let c = Matrix::from_rows(Q, vec![vec![q(1, 4), q(1, 6)], vec![q(1, 5), q(1, 7)]]).unwrap();
        assert_eq!(det_fast(&c).unwrap(), q(1, 420));
        assert_eq!(det_cofactor(&c).unwrap(), q(1, 420));
    }

    #[test]
    fn adjugate_small() {
        assert_eq!(adjugate(&ints(&[&[5]])).unwrap(), ints(&[&[1]]));
        assert_eq!(adjugate(&ints(&[&[1, 1], &[2, 3]])).unwrap(), ints(&[&[3, -1], &[-2, 1]]));
    }

    #[test]
    fn inverse_2x2_cauchy() {
        let c = Matrix::from_rows(Q, vec![vec![q(1, 4), q(1, 6)], vec![q(1, 5), q(1, 7)]]).unwrap();
        assert_eq!(inverse(&c).unwrap(), ints(&[&[60, -70], &[-84, 105]]));
        assert_eq!(inverse(&Matrix::identity(Q, 3)).unwrap(), Matrix::identity(Q, 3));
    }

    #[test]
    fn inverse_singular() {
        let err = inverse(&ints(&[&[1, 2], &[2, 4]])).unwrap_err();
        assert_eq!(err, Error::SingularMatrix { det: "0".into() });
    }

    #[test]
    fn sums() {
        let inv = ints(&[&[60, -70], &[-84, 105]]);
        assert_eq!(entry_sum(&inv), Scalar::integer(11));
        assert!(entry_sum(&Matrix::zeros(Q, 3, 2)).is_zero());
        let f_inv = ints(&[&[3, -1], &[-2, 1]]);
        assert_eq!(column_sum(&f_inv, 0).unwrap(), Scalar::integer(1));
        assert_eq!(column_sum(&f_inv, 1).unwrap(), Scalar::integer(0));
        assert!(matches!(column_sum(&f_inv, 2), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
        assert_eq!(trace(&f_inv).unwrap(), Scalar::integer(4));
    }

    #[test]
    fn lemma_ab_hand_example() {
        let a = ints(&[&[1, 2], &[3, 4]]);
        let b = ints(&[&[5, 6], &[7, 8]]);
        let w = WeightVectors { xs: vec![Q.from_i64(1), Q.from_i64(2)], ys: vec![Q.from_i64(3), Q.from_i64(4)] };
        let (lhs, rhs) = lemma_ab_check(&a, &b, &w).unwrap();
        assert_eq!(lhs, Scalar::integer(372));
        assert_eq!(rhs, Scalar::integer(372));
    }

    #[test]
    fn lemma_ab_zero_and_rectangular() {
        let w = WeightVectors { xs: vec![q(1, 2)], ys: vec![q(-3, 1), q(2, 7)] };
        let (lhs, rhs) = lemma_ab_check(&Matrix::zeros(Q, 1, 2), &ints(&[&[4], &[5]]), &w).unwrap();
        assert!(lhs.is_zero() && rhs.is_zero());

        let a = Matrix::from_rows(Q, vec![vec![q(2, 3), q(-1, 5)]]).unwrap();
        let b = Matrix::from_rows(Q, vec![vec![q(7, 2)], vec![q(3, 1)]]).unwrap();
        let (lhs, rhs) = lemma_ab_check(&a, &b, &w).unwrap();
        // direct expansion: (1/2-3)(2/3)(7/2) + (1/2+2/7)(-1/5)(3)
        let expected = &(&q(-5, 2) * &(&q(2, 3) * &q(7, 2))) + &(&q(11, 14) * &q(-3, 5));
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn lemma_ab_shape_errors() {
        let a = ints(&[&[1, 2]]);
        let w = WeightVectors { xs: vec![Q.one()], ys: vec![Q.one(), Q.one()] };
        assert!(matches!(lemma_ab_check(&a, &a, &w), Err(Error::Shape(_))));
        let short = WeightVectors { xs: vec![Q.one()], ys: vec![Q.one()] };
        assert!(matches!(lemma_ab_check(&a, &a.transpose(), &short), Err(Error::Shape(_))));
    }

    #[test]
    fn border_small() {
        let a = ints(&[&[9]]);
        assert_eq!(bordered(&a).unwrap(), ints(&[&[9, 1], &[1, 0]]));
        assert_eq!(border_det_general(&a).unwrap(), (Scalar::integer(-1), Scalar::integer(1)));
        let i2 = Matrix::identity(Q, 2);
        assert_eq!(border_det_general(&i2).unwrap(), (Scalar::integer(-2), Scalar::integer(2)));
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(Q, vec![vec![q(1, 2), q(-3, 1)]]).unwrap();
        let json = m.to_json();
        assert_eq!(json.entries, vec![vec!["1/2".to_string(), "-3".to_string()]]);
        assert_eq!(Matrix::from_json(Q, &json).unwrap(), m);
        let bad = MatrixJson { rows: 2, cols: 1, entries: vec![vec!["1".into()]] };
        assert!(Matrix::from_json(Q, &bad).is_err());
    }

    fn matrix(ctx: RingContext, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        let entry = match ctx {
            RingContext::Rational => (-9i64..=9, 1i64..=9).prop_map(|(n, d)| Scalar::rational(n, d)).boxed(),
            RingContext::Prime(p) => (0..p as i64).prop_map(move |k| RingContext::Prime(p).from_i64(k)).boxed(),
        };
        proptest::collection::vec(entry, rows * cols).prop_map(move |e| Matrix::new(ctx, rows, cols, e).unwrap())
    }

    fn square(ctx: RingContext, max: usize) -> impl Strategy<Value = Matrix> {
        (1..=max).prop_flat_map(move |n| matrix(ctx, n, n))
    }

    fn either_ring() -> impl Strategy<Value = RingContext> {
        prop_oneof![Just(Q), Just(F101)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn det_paths_agree(a in either_ring().prop_flat_map(|c| square(c, 6))) {
            prop_assert_eq!(det_fast(&a).unwrap(), det_cofactor(&a).unwrap());
        }

        #[test]
        fn adjugate_identity(a in either_ring().prop_flat_map(|c| square(c, 6))) {
            let ctx = a.context();
            let scaled = Matrix::identity(ctx, a.rows()).scale(&det_fast(&a).unwrap()).unwrap();
            let adj = adjugate(&a).unwrap();
            prop_assert_eq!(&mat_mul(&a, &adj).unwrap(), &scaled);
            prop_assert_eq!(&mat_mul(&adj, &a).unwrap(), &scaled);
        }

        #[test]
        fn inverse_is_two_sided(a in either_ring().prop_flat_map(|c| square(c, 5))) {
            if let Ok(inv) = inverse(&a) {
                let id = Matrix::identity(a.context(), a.rows());
                prop_assert_eq!(&mat_mul(&inv, &a).unwrap(), &id);
                prop_assert_eq!(&mat_mul(&a, &inv).unwrap(), &id);
            } else {
                prop_assert!(det_fast(&a).unwrap().is_zero());
            }
        }

        #[test]
        fn lemma_ab_random(
            (a, b, xs, ys) in (either_ring(), 1usize..=6, 1usize..=6).prop_flat_map(|(c, n, m)| {
                (matrix(c, n, m), matrix(c, m, n), matrix(c, 1, n), matrix(c, 1, m))
            })
        ) {
            let w = WeightVectors { xs: xs.entries().to_vec(), ys: ys.entries().to_vec() };
            let (lhs, rhs) = lemma_ab_check(&a, &b, &w).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn border_fact(a in either_ring().prop_flat_map(|c| square(c, 6))) {
            let (det_b, adj_sum) = border_det_general(&a).unwrap();
            prop_assert!((&det_b + &adj_sum).is_zero());
        }

        #[test]
        fn det_multiplicative(
            (a, b) in (either_ring(), 1usize..=5).prop_flat_map(|(c, n)| (matrix(c, n, n), matrix(c, n, n)))
        ) {
            let ab = mat_mul(&a, &b).unwrap();
            prop_assert_eq!(det_fast(&ab).unwrap(), &det_fast(&a).unwrap() * &det_fast(&b).unwrap());
        }
    }
}
