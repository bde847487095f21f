//! Seeded generators for specs and matrices.
//!
//! Rationals have numerators in `[-9, 9]` and denominators in `[1, 9]`;
//! prime-field elements are uniform residues. All generators take the RNG
//! explicitly so a seed pins every value.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cauchy::CauchySpec;
use crate::densela::{Matrix, WeightVectors};
use crate::minmat::MinSpec;
use crate::ring::{RingContext, Scalar};

const MAX_ATTEMPTS: usize = 100_000;

/// What kind of Cauchy spec to draw.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpecOptions {
    /// Accept specs whose `xs` or `ys` repeat (singular `C`).
    pub allow_degenerate: bool,
    /// Always repeat one value in `xs` or `ys` (needs n >= 2).
    pub force_singular: bool,
}

impl SpecOptions {
    pub fn strongly_distinct() -> Self {
        SpecOptions::default()
    }

    pub fn degenerate() -> Self {
        SpecOptions { allow_degenerate: true, force_singular: false }
    }

    pub fn singular() -> Self {
        SpecOptions { allow_degenerate: true, force_singular: true }
    }
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    Scalar::rational(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, ctx: RingContext) -> Scalar {
    match ctx {
        RingContext::Rational => random_rational(rng),
        RingContext::Prime(p) => ctx.from_i64(rng.gen_range(0..p) as i64),
    }
}

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, ctx: RingContext, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| random_scalar(rng, ctx)).collect()
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, ctx: RingContext, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(ctx, rows, cols, |_, _| random_scalar(rng, ctx))
}

pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, ctx: RingContext, n: usize, m: usize) -> WeightVectors {
    WeightVectors { xs: random_vector(rng, ctx, n), ys: random_vector(rng, ctx, m) }
}

fn strongly_distinct(v: &[Scalar]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| (&v[i] - &v[j]).is_invertible()))
}

/// Rejection-samples a valid Cauchy spec of size `n`.
///
/// Panics if no valid spec turns up in a large number of attempts, which only
/// happens for moduli too small to fit `n` strongly distinct values.
pub fn random_cauchy_spec<R: Rng + ?Sized>(rng: &mut R, ctx: RingContext, n: usize, opts: SpecOptions) -> CauchySpec {
    for _ in 0..MAX_ATTEMPTS {
        let mut xs = random_vector(rng, ctx, n);
        let mut ys = random_vector(rng, ctx, n);
        if opts.force_singular && n >= 2 {
            let v = if rng.gen_bool(0.5) { &mut xs } else { &mut ys };
            let src = rng.gen_range(0..n);
            let dst = (src + rng.gen_range(1..n)) % n;
            v[dst] = v[src].clone();
        } else if !opts.allow_degenerate && !(strongly_distinct(&xs) && strongly_distinct(&ys)) {
            continue;
        }
        if let Ok(spec) = CauchySpec::new(ctx, xs, ys) {
            return spec;
        }
    }
    panic!("no valid {n}x{n} Cauchy spec over {ctx} after {MAX_ATTEMPTS} attempts");
}

/// Random min-matrix spec; `sorted` sorts each vector ascending.
pub fn random_min_spec<R: Rng + ?Sized>(rng: &mut R, n: usize, sorted: bool) -> MinSpec {
    let draw = |rng: &mut R| -> Vec<Scalar> {
        let mut v: Vec<Scalar> = (0..n).map(|_| random_rational(rng)).collect();
        if sorted {
            v.sort_by(|a, b| a.try_cmp(b).expect("rationals are ordered"));
        } else {
            v.shuffle(rng);
        }
        v
    };
    let xs = draw(rng);
    let ys = draw(rng);
    MinSpec::new(xs, ys).expect("generated min spec is valid")
}
