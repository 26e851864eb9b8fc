//! Exact kernels over truncated monomial windows.

use std::collections::BTreeMap;

use crate::context::Ctx;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::maps::{derivation_coords, Derivation};
use crate::poly::{Monomial, SuperPoly};
use crate::scalar::GaussianRational;

/// Exponent ranges for the even generators; every odd subset is included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    ctx: Ctx,
    ranges: Vec<(i32, i32)>,
}

impl Window {
    /// Unlisted even generators get the range `[0, 0]`.
    pub fn new(ctx: &Ctx, ranges: &[(&str, i32, i32)]) -> Result<Self> {
        let mut r = vec![(0, 0); ctx.len()];
        for &(name, lo, hi) in ranges {
            let idx = ctx.require(name)?;
            let g = ctx.generator(idx);
            if g.parity.is_odd() {
                return Err(Error::InfeasibleWindow(format!("`{name}` is odd; odd generators take all subsets")));
            }
            if lo > hi {
                return Err(Error::InfeasibleWindow(format!("empty range [{lo}, {hi}] for `{name}`")));
            }
            if lo < 0 && !g.invertible {
                return Err(Error::InfeasibleWindow(format!("negative exponents on non-invertible `{name}`")));
            }
            r[idx] = (lo, hi);
        }
        Ok(Window { ctx: ctx.clone(), ranges: r })
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    /// All monomials of the window in ascending canonical order.
    pub fn basis(&self) -> Vec<Monomial> {
        let ctx = &self.ctx;
        let mut exps: Vec<Vec<i32>> = vec![vec![0; ctx.len()]];
        for (i, g) in ctx.generators().iter().enumerate() {
            if g.parity.is_odd() {
                continue;
            }
            let (lo, hi) = self.ranges[i];
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    (lo..=hi).map(move |k| {
                        let mut e = e.clone();
                        e[i] = k;
                        e
                    })
                })
                .collect();
        }
        let subsets = 1u64.checked_shl(ctx.odd_count() as u32).map_or(u64::MAX, |n| n - 1);
        let mut out: Vec<Monomial> = exps.iter().flat_map(|e| (0..=subsets).map(move |s| Monomial::from_parts(e.clone(), s))).collect();
        out.sort();
        out
    }
}

type Column = BTreeMap<(usize, Monomial), GaussianRational>;

/// Null space of the linear map sending basis element `k` to `images[k]`.
fn kernel(images: &[Column]) -> Vec<Vec<GaussianRational>> {
    let mut keys: Vec<&(usize, Monomial)> = images.iter().flat_map(|c| c.keys()).collect();
    keys.sort();
    keys.dedup();
    let index: BTreeMap<&(usize, Monomial), usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut rows = vec![vec![GaussianRational::from_int(0); images.len()]; keys.len()];
    for (j, col) in images.iter().enumerate() {
        for (k, c) in col {
            rows[index[k]][j] = c.clone();
        }
    }
    nullspace(&rows, images.len())
}

/// Basis of `{f in window : D f = 0}`.
pub fn kernel_of_derivation(d: &Derivation, w: &Window) -> Result<Vec<SuperPoly>> {
    let ctx = d.context();
    crate::context::check_same(ctx, &w.ctx)?;
    let basis = w.basis();
    let images = basis
        .iter()
        .map(|m| {
            let img = d.apply(&SuperPoly::term(ctx, m.clone(), GaussianRational::from_int(1)))?;
            Ok(img.terms().map(|(m, c)| ((0, m.clone()), c.clone())).collect())
        })
        .collect::<Result<Vec<Column>>>()?;
    Ok(kernel(&images).into_iter().map(|v| SuperPoly::from_terms(ctx, basis.iter().cloned().zip(v))).collect())
}

/// Basis of odd derivations `χ` with coefficients in the window and `[χ, D] = 0`.
pub fn odd_centralizer(d: &Derivation, w: &Window) -> Result<Vec<Derivation>> {
    let ctx = d.context();
    crate::context::check_same(ctx, &w.ctx)?;
    let basis = w.basis();
    let mut candidates = Vec::new();
    for (i, g) in ctx.generators().iter().enumerate() {
        if g.parameter {
            continue;
        }
        for m in &basis {
            // m·∂_x is odd when |m| + |x| is odd
            if (m.parity() + g.parity).is_odd() {
                let coeff = SuperPoly::term(ctx, m.clone(), GaussianRational::from_int(1));
                candidates.push(Derivation::partial(ctx, i).left_mul(&coeff)?);
            }
        }
    }
    let images = candidates.iter().map(|c| Ok(derivation_coords(&c.bracket(d)?))).collect::<Result<Vec<Column>>>()?;
    kernel(&images)
        .into_iter()
        .map(|v| {
            let mut acc = Derivation::zero(ctx, crate::context::Parity::Odd);
            for (c, x) in v.iter().zip(&candidates) {
                if !num_traits::Zero::is_zero(c) {
                    acc = acc.add(&x.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_context, parse_derivation, parse_poly};

    #[test]
    fn kernel_of_translation() {
        let ctx = parse_context("even z;").unwrap();
        let w = Window::new(&ctx, &[("z", 0, 3)]).unwrap();
        let k = kernel_of_derivation(&parse_derivation(&ctx, "d/dz").unwrap(), &w).unwrap();
        assert_eq!(k, vec![SuperPoly::one(&ctx)]);
        let all = kernel_of_derivation(&Derivation::zero(&ctx, crate::context::Parity::Even), &w).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn incidence_kernel() {
        let ctx = parse_context("even z; odd zeta1, zeta2;").unwrap();
        let d1 = parse_derivation(&ctx, "d/dzeta1 + zeta2*d/dz").unwrap();
        let w = Window::new(&ctx, &[("z", 0, 2)]).unwrap();
        let k = kernel_of_derivation(&d1, &w).unwrap();
        for f in &k {
            assert!(d1.apply(f).unwrap().is_zero());
        }
        assert_eq!(k.len(), 6);
        assert!(k.contains(&parse_poly(&ctx, "z - zeta1*zeta2").unwrap()));
        assert!(k.contains(&SuperPoly::one(&ctx)));
    }

    #[test]
    fn centralizer_of_d() {
        let ctx = parse_context("even z; odd zeta;").unwrap();
        let d = parse_derivation(&ctx, "d/dzeta + zeta*d/dz").unwrap();
        for hi in [0, 1, 5] {
            let w = Window::new(&ctx, &[("z", 0, hi)]).unwrap();
            let c = odd_centralizer(&d, &w).unwrap();
            assert_eq!(c.len(), 1, "window deg_z <= {hi}");
            assert!(c[0].bracket(&d).unwrap().is_zero());
            let v = parse_derivation(&ctx, "zeta*d/dz - d/dzeta").unwrap();
            assert!(c[0] == v || c[0] == v.scale(&GaussianRational::from_int(-1)));
        }
        let p = parse_derivation(&ctx, "d/dzeta").unwrap();
        let w = Window::new(&ctx, &[("z", 0, 1)]).unwrap();
        assert!(odd_centralizer(&p, &w).unwrap().contains(&p));
    }

    #[test]
    fn infeasible_windows() {
        let ctx = parse_context("even z; unit v; odd zeta;").unwrap();
        assert!(Window::new(&ctx, &[("z", -1, 2)]).is_err());
        assert!(Window::new(&ctx, &[("zeta", 0, 1)]).is_err());
        assert!(Window::new(&ctx, &[("z", 2, 1)]).is_err());
        assert_eq!(Window::new(&ctx, &[("v", -1, 1)]).unwrap().basis().len(), 6);
    }
}
