//! Fixtures shared by the benchmarks.

use superaudit_core::parse::{parse_context, parse_poly};
use superaudit_core::SuperPoly;

/// Two dense superpolynomials in `even z; unit w; odd a, b, c, e`.
pub fn dense_pair() -> (SuperPoly, SuperPoly) {
    let ctx = parse_context("even z; unit w; odd a, b, c, e;").expect("fixture context");
    let x = parse_poly(&ctx, "(1 + z + w^-1 + a*b + c*e + 2*a*c)^3").expect("fixture");
    let y = parse_poly(&ctx, "(z^2 - w + b*c + i*a*e)^3").expect("fixture");
    (x, y)
}
