//! Antilinear conjugation swapping each generator with its declared partner.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::context::Parity;
use crate::error::{Error, Result};
use crate::poly::SuperPoly;
use crate::scalar::GaussianRational;

/// How conjugation treats a product of two odd elements.
///
/// `Multiplicative`: `bar(xy) = bar(x)·bar(y)`.
/// `Graded`: `bar(xy) = (−1)^{|x||y|}·bar(x)·bar(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjugationMode {
    Multiplicative,
    Graded,
}

impl ConjugationMode {
    pub const ALL: [ConjugationMode; 2] = [ConjugationMode::Multiplicative, ConjugationMode::Graded];

    pub fn name(self) -> &'static str {
        match self {
            ConjugationMode::Multiplicative => "multiplicative",
            ConjugationMode::Graded => "graded",
        }
    }
}

impl fmt::Display for ConjugationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConjugationMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "multiplicative" => Ok(ConjugationMode::Multiplicative),
            "graded" => Ok(ConjugationMode::Graded),
            other => Err(format!("unknown conjugation mode `{other}`")),
        }
    }
}

/// Conjugate coefficients and replace every generator by its partner.
///
/// In graded mode a monomial with `k` odd factors picks up `(−1)^{k(k−1)/2}`.
/// Either way the map is an involution.
pub fn conjugate(a: &SuperPoly, mode: ConjugationMode) -> Result<SuperPoly> {
    let ctx = a.context();
    let mut out = SuperPoly::zero(ctx);
    for (m, c) in a.terms() {
        let mut t = SuperPoly::constant(ctx, c.conj());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e != 0 {
                let p = ctx.partner(i).ok_or_else(|| Error::MissingPartner(ctx.generator(i).name.clone()))?;
                t = t.mul(&SuperPoly::gen_pow(ctx, p, e)?)?;
            }
        }
        let mut rest = m.odd_mask();
        while rest != 0 {
            let slot = rest.trailing_zeros();
            rest &= rest - 1;
            let i = ctx.odd_generator(slot);
            let p = ctx.partner(i).ok_or_else(|| Error::MissingPartner(ctx.generator(i).name.clone()))?;
            t = t.mul(&SuperPoly::gen(ctx, p))?;
        }
        let k = m.odd_degree();
        if mode == ConjugationMode::Graded && (k * k.saturating_sub(1) / 2) % 2 == 1 {
            t = t.neg();
        }
        out = out.add(&t)?;
    }
    Ok(out)
}

/// `(−1)^{|x||y|}` for homogeneous inputs, as a scalar.
pub fn koszul_sign(x: Parity, y: Parity) -> GaussianRational {
    if x.koszul(y) {
        -GaussianRational::one()
    } else {
        GaussianRational::one()
    }
}
