//! Random superpolynomials and derivations over `even z; unit w; odd a, b, c`.

use proptest::prelude::*;
use superaudit_core::parse::parse_context;
use superaudit_core::{Ctx, Derivation, GaussianRational, Monomial, Parity, SuperPoly};

pub fn ctx() -> Ctx {
    parse_context("even z; unit w; odd a, b, c;").expect("test context")
}

pub fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -1i64..=1).prop_map(|(re, im)| GaussianRational::from_int(re) + GaussianRational::from_int(im) * GaussianRational::i())
}

fn monomial(parity: Option<Parity>) -> impl Strategy<Value = Monomial> {
    (0i32..=2, -2i32..=2, 0u64..8).prop_map(move |(z, w, mut odd)| {
        if let Some(p) = parity {
            if (odd.count_ones() % 2 == 1) != p.is_odd() {
                odd ^= 1;
            }
        }
        Monomial::from_parts(vec![z, w, 0, 0, 0], odd)
    })
}

fn poly_with(ctx: Ctx, parity: Option<Parity>) -> impl Strategy<Value = SuperPoly> {
    prop::collection::vec((monomial(parity), coeff()), 0..4).prop_map(move |terms| SuperPoly::from_terms(&ctx, terms))
}

pub fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

pub fn poly(ctx: Ctx) -> impl Strategy<Value = SuperPoly> {
    poly_with(ctx, None)
}

/// A homogeneous polynomial and its parity.
pub fn homogeneous(ctx: Ctx) -> impl Strategy<Value = (SuperPoly, Parity)> {
    parity().prop_flat_map(move |p| poly_with(ctx.clone(), Some(p)).prop_map(move |x| (x, p)))
}

pub fn derivation(ctx: Ctx) -> impl Strategy<Value = Derivation> {
    parity().prop_flat_map(move |p| {
        let c = ctx.clone();
        let images: Vec<_> = c.generators().iter().map(|g| poly_with(c.clone(), Some(g.parity + p))).collect();
        images.prop_map(move |imgs| Derivation::new(&c, p, imgs).expect("parity-consistent images"))
    })
}

pub fn sign(neg: bool) -> GaussianRational {
    GaussianRational::from_int(if neg { -1 } else { 1 })
}
