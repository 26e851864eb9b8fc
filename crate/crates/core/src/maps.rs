//! Superalgebra morphisms, superderivations and one-forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::conj::koszul_sign;
use crate::context::{check_same, Context, Ctx, Parity};
use crate::error::{Error, Result};
use crate::poly::{render_term, Monomial, SuperPoly};
use crate::scalar::GaussianRational;

/// A parity-preserving algebra map given by generator images.
///
/// `apply` is the pullback `F*`: it substitutes images for generators in a
/// polynomial over `source` and returns a polynomial over `target`.
#[derive(Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Ctx,
    target: Ctx,
    images: Vec<SuperPoly>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({self})")
    }
}

impl Morphism {
    pub fn new(source: &Ctx, target: &Ctx, images: Vec<SuperPoly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::Shape(format!("{} images for {} generators", images.len(), source.len())));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            check_same(img.context(), target)?;
            if !img.has_parity(g.parity) {
                return Err(Error::Parity(format!("image `{img}` of {} generator `{}`", g.parity, g.name)));
            }
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), images })
    }

    /// Images by name; generators not listed map to the same-named
    /// generator of `target`.
    pub fn from_names(source: &Ctx, target: &Ctx, pairs: &[(&str, SuperPoly)]) -> Result<Self> {
        let mut images = Vec::with_capacity(source.len());
        for g in source.generators() {
            match pairs.iter().find(|(n, _)| *n == g.name) {
                Some((_, p)) => images.push(p.clone()),
                None => images.push(SuperPoly::var(target, &g.name)?),
            }
        }
        for (n, _) in pairs {
            source.require(n)?;
        }
        Morphism::new(source, target, images)
    }

    pub fn identity(ctx: &Ctx) -> Self {
        let images = (0..ctx.len()).map(|i| SuperPoly::gen(ctx, i)).collect();
        Morphism { source: ctx.clone(), target: ctx.clone(), images }
    }

    pub fn source(&self) -> &Ctx {
        &self.source
    }

    pub fn target(&self) -> &Ctx {
        &self.target
    }

    pub fn images(&self) -> &[SuperPoly] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&SuperPoly> {
        Ok(&self.images[self.source.require(name)?])
    }

    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        check_same(f.context(), &self.source).map_err(|e| Error::ContextMismatch(format!("morphism applied outside its source: {e}")))?;
        let mut powers: Vec<BTreeMap<i32, SuperPoly>> = vec![BTreeMap::new(); self.source.len()];
        let mut out = SuperPoly::zero(&self.target);
        for (m, c) in f.terms() {
            let mut t = SuperPoly::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !powers[i].contains_key(&e) {
                    let p = self.images[i].powi(e).map_err(|err| match err {
                        Error::NotInvertible(s) | Error::NotEven(s) => {
                            Error::NotInvertible(format!("image of `{}` must be invertible: {s}", self.source.generator(i).name))
                        }
                        other => other,
                    })?;
                    powers[i].insert(e, p);
                }
                t = t.mul(&powers[i][&e])?;
                if t.is_zero() {
                    break;
                }
            }
            let mut rest = m.odd_mask();
            while rest != 0 && !t.is_zero() {
                let slot = rest.trailing_zeros();
                rest &= rest - 1;
                t = t.mul(&self.images[self.source.odd_generator(slot)])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// `x ↦ next(self(x))`, i.e. apply `self` first, then `next`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        check_same(&self.target, &next.source)?;
        let images = self.images.iter().map(|p| next.apply(p)).collect::<Result<_>>()?;
        Morphism::new(&self.source, &next.target, images)
    }

    pub fn is_identity(&self) -> bool {
        Context::same(&self.source, &self.target) && self.images.iter().enumerate().all(|(i, p)| *p == SuperPoly::gen(&self.target, i))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (g, img)) in self.source.generators().iter().zip(&self.images).enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} -> {}", g.name, img)?;
        }
        Ok(())
    }
}

/// A superderivation determined by its generator images.
///
/// Extended to products by the graded Leibniz rule
/// `X(fg) = X(f)g + (−1)^{|X||f|} f X(g)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: Ctx,
    parity: Parity,
    images: Vec<SuperPoly>,
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation[{}]({self})", self.parity)
    }
}

impl Derivation {
    pub fn new(ctx: &Ctx, parity: Parity, images: Vec<SuperPoly>) -> Result<Self> {
        if images.len() != ctx.len() {
            return Err(Error::Shape(format!("{} images for {} generators", images.len(), ctx.len())));
        }
        for (g, img) in ctx.generators().iter().zip(&images) {
            check_same(img.context(), ctx)?;
            if !img.has_parity(g.parity + parity) {
                return Err(Error::Parity(format!("{parity} derivation sends {} generator `{}` to `{img}`", g.parity, g.name)));
            }
        }
        Ok(Derivation { ctx: ctx.clone(), parity, images })
    }

    /// Images by name; unlisted generators map to zero.
    pub fn from_names(ctx: &Ctx, parity: Parity, pairs: &[(&str, SuperPoly)]) -> Result<Self> {
        let mut images = vec![SuperPoly::zero(ctx); ctx.len()];
        for (n, p) in pairs {
            images[ctx.require(n)?] = p.clone();
        }
        Derivation::new(ctx, parity, images)
    }

    pub fn zero(ctx: &Ctx, parity: Parity) -> Self {
        Derivation { ctx: ctx.clone(), parity, images: vec![SuperPoly::zero(ctx); ctx.len()] }
    }

    /// `∂/∂x` for the generator at `idx`; its parity is that of `x`.
    pub fn partial(ctx: &Ctx, idx: usize) -> Self {
        let mut images = vec![SuperPoly::zero(ctx); ctx.len()];
        images[idx] = SuperPoly::one(ctx);
        Derivation { ctx: ctx.clone(), parity: ctx.generator(idx).parity, images }
    }

    pub fn partial_named(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(Derivation::partial(ctx, ctx.require(name)?))
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn images(&self) -> &[SuperPoly] {
        &self.images
    }

    pub fn image(&self, name: &str) -> Result<&SuperPoly> {
        Ok(&self.images[self.ctx.require(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(SuperPoly::is_zero)
    }

    /// Apply to an arbitrary polynomial.
    pub fn apply(&self, f: &SuperPoly) -> Result<SuperPoly> {
        check_same(f.context(), &self.ctx)?;
        let ctx = &self.ctx;
        let mut out = SuperPoly::zero(ctx);
        for (m, c) in f.terms() {
            let exps = m.exponents();
            let odd = m.odd_mask();
            let theta = Monomial::from_parts(vec![0; ctx.len()], odd);
            // even part: Σ e·X(g)·g^{e−1}·(others), then the odd block on the right
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 || self.images[i].is_zero() {
                    continue;
                }
                let mut reduced = exps.to_vec();
                reduced[i] -= 1;
                let even_rest = Monomial::from_parts(reduced, 0);
                let piece = self.images[i]
                    .mul_term(&even_rest, &(c * &GaussianRational::from_int(e as i64)))
                    .mul_term(&theta, &GaussianRational::one());
                out = out.add(&piece)?;
            }
            // odd part: E · Σ_j (−1)^{|X|(j−1)} θ₁…θ_{j−1} X(θ_j) θ_{j+1}…θ_k
            let even = Monomial::from_parts(exps.to_vec(), 0);
            let mut prefix = 0u64;
            let mut rest = odd;
            let mut passed = 0u32;
            while rest != 0 {
                let slot = rest.trailing_zeros();
                let bit = 1u64 << slot;
                rest &= rest - 1;
                let img = &self.images[ctx.odd_generator(slot)];
                if !img.is_zero() {
                    let sign = if self.parity.is_odd() && passed % 2 == 1 { -c.clone() } else { c.clone() };
                    let pre = SuperPoly::term(ctx, Monomial::from_parts(vec![0; ctx.len()], prefix), sign);
                    let piece = pre
                        .mul(img)?
                        .mul_term(&Monomial::from_parts(vec![0; ctx.len()], rest), &GaussianRational::one())
                        .mul_term(&even, &GaussianRational::one());
                    out = out.add(&piece)?;
                }
                prefix |= bit;
                passed += 1;
            }
        }
        Ok(out)
    }

    /// Supercommutator `[X,Y] = XY − (−1)^{|X||Y|} YX`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        check_same(&self.ctx, &other.ctx)?;
        let sign = koszul_sign(self.parity, other.parity);
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(x_g, y_g)| {
                let xy = self.apply(y_g)?;
                let yx = other.apply(x_g)?;
                xy.sub(&yx.scale(&sign))
            })
            .collect::<Result<_>>()?;
        Ok(Derivation { ctx: self.ctx.clone(), parity: self.parity + other.parity, images })
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        check_same(&self.ctx, &other.ctx)?;
        let images: Vec<_> = self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        let parity = if self.is_zero() { other.parity } else { self.parity };
        if !self.is_zero() && !other.is_zero() && self.parity != other.parity {
            return Err(Error::Parity("sum of derivations with different parities".into()));
        }
        Ok(Derivation { ctx: self.ctx.clone(), parity, images })
    }

    pub fn sub(&self, other: &Derivation) -> Result<Derivation> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Derivation {
        Derivation { ctx: self.ctx.clone(), parity: self.parity, images: self.images.iter().map(|p| p.scale(c)).collect() }
    }

    /// The derivation `f·X : g ↦ f·X(g)` for homogeneous `f`.
    pub fn left_mul(&self, f: &SuperPoly) -> Result<Derivation> {
        check_same(&self.ctx, f.context())?;
        let pf = f.parity().ok_or_else(|| Error::Parity(format!("`{f}` is not homogeneous")))?;
        let images = self.images.iter().map(|p| f.mul(p)).collect::<Result<_>>()?;
        Ok(Derivation { ctx: self.ctx.clone(), parity: self.parity + pf, images })
    }

    /// Move to a context with the same generator layout.
    pub fn with_context(&self, ctx: &Ctx) -> Result<Derivation> {
        let images = self.images.iter().map(|p| p.with_context(ctx)).collect::<Result<_>>()?;
        Ok(Derivation { ctx: ctx.clone(), parity: self.parity, images })
    }

    /// Carry the derivation into a context containing every generator of
    /// this one (matched by name); extra generators are sent to zero.
    pub fn embed(&self, ctx: &Ctx) -> Result<Derivation> {
        let inc = Morphism::from_names(&self.ctx, ctx, &[])?;
        let mut images = vec![SuperPoly::zero(ctx); ctx.len()];
        for (g, img) in self.ctx.generators().iter().zip(&self.images) {
            images[ctx.require(&g.name)?] = inc.apply(img)?;
        }
        Derivation::new(ctx, self.parity, images)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, img) in self.ctx.generators().iter().zip(&self.images) {
            if img.is_zero() {
                continue;
            }
            let single = (img.term_count() == 1).then(|| img.terms().next().expect("one term"));
            let (negative, body) = match single {
                Some((m, c)) if c.is_negative_like() && !first => (true, render_term(&self.ctx, m, &-c)),
                Some((m, c)) => (false, render_term(&self.ctx, m, c)),
                None => (false, format!("({img})")),
            };
            if !first {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            write!(f, "{body}*d/d{}", g.name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Pushforward of `X` along the automorphism whose pullback is `f`:
/// `g ↦ f_inv(X(f(g)))`. `f_inv` must be a two-sided inverse of `f`.
pub fn conjugate_derivation(f: &Morphism, f_inv: &Morphism, x: &Derivation) -> Result<Derivation> {
    check_inverse_pair(f, f_inv)?;
    check_same(x.context(), f.target())?;
    let src = f.source();
    let images = (0..src.len()).map(|i| f_inv.apply(&x.apply(&f.apply(&SuperPoly::gen(src, i))?)?)).collect::<Result<_>>()?;
    Derivation::new(src, x.parity(), images)
}

/// Verifies on generators that `f` and `f_inv` compose to the identity both ways.
pub fn check_inverse_pair(f: &Morphism, f_inv: &Morphism) -> Result<()> {
    check_same(f.target(), f_inv.source())?;
    check_same(f_inv.target(), f.source())?;
    let fwd = f.then(f_inv)?;
    let back = f_inv.then(f)?;
    for (name, m) in [("F_inv after F", &fwd), ("F after F_inv", &back)] {
        if !m.is_identity() {
            return Err(Error::NotInverse(format!("{name} is `{m}`")));
        }
    }
    Ok(())
}

/// A one-form `Σ dx·f_x` with coefficients written to the right of the
/// differentials.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    ctx: Ctx,
    coeffs: Vec<SuperPoly>,
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OneForm({self})")
    }
}

impl OneForm {
    pub fn new(ctx: &Ctx, coeffs: Vec<SuperPoly>) -> Result<Self> {
        if coeffs.len() != ctx.len() {
            return Err(Error::Shape(format!("{} coefficients for {} generators", coeffs.len(), ctx.len())));
        }
        for c in &coeffs {
            check_same(c.context(), ctx)?;
        }
        Ok(OneForm { ctx: ctx.clone(), coeffs })
    }

    pub fn from_names(ctx: &Ctx, pairs: &[(&str, SuperPoly)]) -> Result<Self> {
        let mut coeffs = vec![SuperPoly::zero(ctx); ctx.len()];
        for (n, p) in pairs {
            coeffs[ctx.require(n)?] = p.clone();
        }
        OneForm::new(ctx, coeffs)
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coefficients(&self) -> &[SuperPoly] {
        &self.coeffs
    }

    /// `d g = Σ dy·∂g/∂y`, summed over the non-parameter generators.
    pub fn differential(g: &SuperPoly) -> Result<OneForm> {
        let ctx = g.context();
        let coeffs = (0..ctx.len())
            .map(|i| if ctx.generator(i).parameter { Ok(SuperPoly::zero(ctx)) } else { Derivation::partial(ctx, i).apply(g) })
            .collect::<Result<_>>()?;
        Ok(OneForm { ctx: ctx.clone(), coeffs })
    }

    pub fn add(&self, other: &OneForm) -> Result<OneForm> {
        check_same(&self.ctx, &other.ctx)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(OneForm { ctx: self.ctx.clone(), coeffs })
    }

    /// `Σ dx·(f_x·g)`.
    pub fn mul_right(&self, g: &SuperPoly) -> Result<OneForm> {
        let coeffs = self.coeffs.iter().map(|c| c.mul(g)).collect::<Result<_>>()?;
        Ok(OneForm { ctx: self.ctx.clone(), coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperPoly::is_zero)
    }

    /// `F*(Σ dx·f_x) = Σ d(F*x)·F*(f_x)`.
    pub fn pullback(&self, f: &Morphism) -> Result<OneForm> {
        check_same(&self.ctx, f.source())?;
        let mut acc = OneForm { ctx: f.target().clone(), coeffs: vec![SuperPoly::zero(f.target()); f.target().len()] };
        for (x, fx) in self.coeffs.iter().enumerate() {
            if fx.is_zero() {
                continue;
            }
            let dx = OneForm::differential(&f.images()[x])?;
            acc = acc.add(&dx.mul_right(&f.apply(fx)?)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in self.ctx.generators().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "d{}*({c})", g.name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `pull(F, ω)`; free-function form of [`OneForm::pullback`].
pub fn pullback_one_form(f: &Morphism, omega: &OneForm) -> Result<OneForm> {
    omega.pullback(f)
}

/// Coordinates of a derivation as a sparse vector over `(generator, monomial)`.
pub(crate) fn derivation_coords(x: &Derivation) -> BTreeMap<(usize, Monomial), GaussianRational> {
    let mut out = BTreeMap::new();
    for (i, img) in x.images().iter().enumerate() {
        for (m, c) in img.terms() {
            if !c.is_zero() {
                out.insert((i, m.clone()), c.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::Generator;
    use crate::parse::{parse_derivation, parse_poly};

    fn c11() -> Ctx {
        Context::new(vec![Generator::even("z"), Generator::odd("zeta")]).unwrap()
    }

    fn c11_params() -> Ctx {
        Context::new(vec![
            Generator::even("z"),
            Generator::odd("zeta"),
            Generator::unit("r").as_parameter(),
            Generator::even("b").as_parameter(),
        ])
        .unwrap()
    }

    fn p(ctx: &Ctx, s: &str) -> SuperPoly {
        parse_poly(ctx, s).unwrap()
    }

    fn dd(ctx: &Ctx, s: &str) -> Derivation {
        parse_derivation(ctx, s).unwrap()
    }

    fn scaling(ctx: &Ctx) -> (Morphism, Morphism) {
        let f = Morphism::from_names(ctx, ctx, &[("z", p(ctx, "r^2*z + b")), ("zeta", p(ctx, "r*zeta"))]).unwrap();
        let g = Morphism::from_names(ctx, ctx, &[("z", p(ctx, "r^-2*z - r^-2*b")), ("zeta", p(ctx, "r^-1*zeta"))]).unwrap();
        (f, g)
    }

    #[test]
    fn morphism_substitution() {
        let c = c11_params();
        let (f, _) = scaling(&c);
        assert_eq!(f.apply(&p(&c, "z")).unwrap(), p(&c, "r^2*z + b"));
        assert!(f.apply(&p(&c, "zeta*zeta")).unwrap().is_zero());
        let id = Morphism::identity(&c);
        let g = p(&c, "3*z^2*zeta + 1/2*b");
        assert_eq!(id.apply(&g).unwrap(), g);
    }

    #[test]
    fn morphism_rejects_parity_violation() {
        let c = c11();
        let err = Morphism::from_names(&c, &c, &[("zeta", p(&c, "zeta + 1"))]).unwrap_err();
        assert!(matches!(err, Error::Parity(_)));
    }

    #[test]
    fn susy_derivation_on_generators() {
        let c = c11();
        let d = dd(&c, "d/dzeta + zeta*d/dz");
        assert_eq!(d.apply(&p(&c, "z")).unwrap(), p(&c, "zeta"));
        assert_eq!(d.apply(&p(&c, "zeta")).unwrap(), p(&c, "1"));
        assert_eq!(d.apply(&p(&c, "z*zeta")).unwrap(), p(&c, "z"));
    }

    #[test]
    fn leibniz_on_odd_pair() {
        // D = ∂_{ζ₁} + ζ₂∂_z: D(ζ₁ζ₂) = ζ₂ by direct expansion.
        let c = Context::new(vec![Generator::even("z"), Generator::odd("zeta1"), Generator::odd("zeta2")]).unwrap();
        let d = dd(&c, "d/dzeta1 + zeta2*d/dz");
        assert_eq!(d.apply(&p(&c, "zeta1*zeta2")).unwrap(), p(&c, "zeta2"));
        assert!(d.apply(&p(&c, "z - zeta1*zeta2")).unwrap().is_zero());
    }

    #[test]
    fn odd_partials_follow_leibniz() {
        let c = Context::new(vec![Generator::odd("a"), Generator::odd("b")]).unwrap();
        let db = Derivation::partial_named(&c, "b").unwrap();
        // ∂_b(ab) = −a: the odd operator passes a first.
        assert_eq!(db.apply(&p(&c, "a*b")).unwrap(), p(&c, "-1*a"));
    }

    #[test]
    fn brackets() {
        let c = Context::new(vec![Generator::even("z"), Generator::odd("zeta1"), Generator::odd("zeta2")]).unwrap();
        let d1 = dd(&c, "d/dzeta1 + zeta2*d/dz");
        let d2 = dd(&c, "d/dzeta2 + zeta1*d/dz");
        assert_eq!(d1.bracket(&d2).unwrap(), dd(&c, "2*d/dz"));
        assert!(d1.bracket(&d1).unwrap().is_zero());
        let c1 = c11();
        let dz = Derivation::partial_named(&c1, "z").unwrap();
        assert!(dz.bracket(&dz).unwrap().is_zero());
        let d = dd(&c1, "d/dzeta + zeta*d/dz");
        assert_eq!(d.bracket(&d).unwrap(), dd(&c1, "2*d/dz"));
    }

    #[test]
    fn conjugation_by_automorphisms() {
        let c = c11_params();
        let id = Morphism::identity(&c);
        let dz = Derivation::partial_named(&c, "z").unwrap();
        assert_eq!(conjugate_derivation(&id, &id, &dz).unwrap(), dz);

        let (f, g) = scaling(&c);
        let d = dd(&c, "d/dzeta + zeta*d/dz");
        // g ↦ F⁻¹(D(F g)) works out to r·D for this family.
        assert_eq!(conjugate_derivation(&f, &g, &d).unwrap(), d.left_mul(&p(&c, "r")).unwrap());

        let c1 = c11();
        let flip = Morphism::from_names(&c1, &c1, &[("zeta", p(&c1, "-1*zeta"))]).unwrap();
        let dzeta = Derivation::partial_named(&c1, "zeta").unwrap();
        assert_eq!(conjugate_derivation(&flip, &flip, &dzeta).unwrap(), dzeta.scale(&(-GaussianRational::one())));
    }

    #[test]
    fn conjugation_rejects_non_inverse() {
        let c = c11_params();
        let (f, _) = scaling(&c);
        let d = dd(&c, "d/dzeta");
        assert!(matches!(conjugate_derivation(&f, &f, &d), Err(Error::NotInverse(_))));
    }

    #[test]
    fn one_form_pullbacks() {
        let c = c11_params();
        let dz = OneForm::from_names(&c, &[("z", p(&c, "1"))]).unwrap();
        assert_eq!(dz.pullback(&Morphism::identity(&c)).unwrap(), dz);

        let (f, _) = scaling(&c);
        let s = OneForm::from_names(&c, &[("z", p(&c, "1")), ("zeta", p(&c, "-1*zeta"))]).unwrap();
        let pulled = pullback_one_form(&f, &s).unwrap();
        assert_eq!(pulled, s.mul_right(&p(&c, "r^2")).unwrap());

        let dzeta = OneForm::from_names(&c, &[("zeta", p(&c, "1"))]).unwrap();
        let zeta_only = Morphism::from_names(&c, &c, &[("zeta", p(&c, "r*zeta"))]).unwrap();
        assert_eq!(dzeta.pullback(&zeta_only).unwrap(), OneForm::from_names(&c, &[("zeta", p(&c, "r"))]).unwrap());
        assert_eq!(s.to_string(), "dz*(1) + dzeta*(-1*zeta)");
    }

    #[test]
    fn rendering() {
        let c = Context::new(vec![Generator::unit("v"), Generator::odd("xi"), Generator::odd("eta")]).unwrap();
        let d2 = Derivation::from_names(&c, Parity::Odd, &[("v", p(&c, "-1*eta")), ("xi", p(&c, "v + xi*v^-1*eta"))]).unwrap();
        assert_eq!(d2.to_string(), "-1*eta*d/dv + (1*v + 1*v^-1*xi*eta)*d/dxi");
        let e = dd(&c, "v*d/dv + xi*d/dxi + eta*d/deta");
        assert_eq!(e.to_string(), "1*v*d/dv + 1*xi*d/dxi + 1*eta*d/deta");
        assert_eq!(Derivation::zero(&c, Parity::Even).to_string(), "0");
        let neg = dd(&c, "v*d/dv - xi*d/dxi");
        assert_eq!(neg.to_string(), "1*v*d/dv - 1*xi*d/dxi");
    }
}
