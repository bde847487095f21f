//! JSON spec files.
//!
//! ```json
//! {"ring": "rational" | {"prime": 101}, "kind": "cauchy" | "min", "xs": ["1", "2"], "ys": ["3", "5"]}
//! ```
//!
//! `ring` defaults to rational and `kind` to cauchy. Min specs must be
//! rational.

use serde::{Deserialize, Serialize};

use crate::cauchy::CauchySpec;
use crate::error::{Error, Result};
use crate::minmat::MinSpec;
use crate::ring::{RingContext, Scalar};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecKind {
    #[default]
    Cauchy,
    Min,
}

/// `"rational"` or `{"prime": p}` on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingJson {
    Named(RingName),
    Prime { prime: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingName {
    Rational,
}

impl RingJson {
    pub fn context(self) -> Result<RingContext> {
        match self {
            RingJson::Named(RingName::Rational) => Ok(RingContext::Rational),
            RingJson::Prime { prime } => RingContext::prime(prime),
        }
    }
}

impl From<RingContext> for RingJson {
    fn from(ctx: RingContext) -> Self {
        match ctx {
            RingContext::Rational => RingJson::Named(RingName::Rational),
            RingContext::Prime(p) => RingJson::Prime { prime: p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<SpecKind>,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
}

fn render(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

impl SpecFile {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse { input: "spec JSON".into(), reason: e.to_string() })
    }

    pub fn kind(&self) -> SpecKind {
        self.kind.unwrap_or_default()
    }

    /// The ring named in the file, or rational if absent.
    pub fn context(&self) -> Result<RingContext> {
        self.ring.map_or(Ok(RingContext::Rational), RingJson::context)
    }

    fn scalars(&self, ctx: RingContext) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
        let parse = |v: &[String]| v.iter().map(|s| ctx.parse(s)).collect::<Result<Vec<_>>>();
        Ok((parse(&self.xs)?, parse(&self.ys)?))
    }

    /// `ring` overrides the file's ring; `minus_convention` negates `ys`.
    pub fn to_cauchy(&self, ring: Option<RingContext>, minus_convention: bool) -> Result<CauchySpec> {
        let ctx = match ring {
            Some(r) => r,
            None => self.context()?,
        };
        let (xs, ys) = self.scalars(ctx)?;
        if minus_convention {
            CauchySpec::with_minus_convention(ctx, xs, ys)
        } else {
            CauchySpec::new(ctx, xs, ys)
        }
    }

    pub fn to_min(&self, ring: Option<RingContext>) -> Result<MinSpec> {
        let ctx = match ring {
            Some(r) => r,
            None => self.context()?,
        };
        if !ctx.is_ordered() {
            return Err(Error::Unordered(ctx));
        }
        let (xs, ys) = self.scalars(ctx)?;
        MinSpec::new(xs, ys)
    }

    pub fn from_cauchy(spec: &CauchySpec) -> Self {
        SpecFile {
            ring: Some(spec.context().into()),
            kind: Some(SpecKind::Cauchy),
            xs: render(spec.xs()),
            ys: render(spec.ys()),
        }
    }

    pub fn from_min(spec: &MinSpec) -> Self {
        SpecFile {
            ring: Some(RingContext::Rational.into()),
            kind: Some(SpecKind::Min),
            xs: render(spec.xs()),
            ys: render(spec.ys()),
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("spec files serialize")
    }
}
