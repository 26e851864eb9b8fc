//! Supergroups in coordinates.
//!
//! A presentation lists, for each coordinate `x`, the product `mult[x]` over
//! the doubled context `(x, x')` and the inverse `inv[x]`. Points with values
//! in a context `T` are morphisms `coords → T`; [`GroupPresentation::product`]
//! multiplies two such points, and every axiom check is phrased through it.
//!
//! Convention for invariant fields: the left field of a tangent vector `v`
//! differentiates the primed slot of `mult` at the unit, so
//! `X(x) = Σ_j v_j · ∂_{x'_j} mult[x] |_{x' = e}`; it satisfies
//! `Δ ∘ X = (id ⊗ X) ∘ Δ` with `X` acting on the primed copy. Right fields
//! swap the roles of the two slots.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::context::{check_same, Ctx, Parity};
use crate::error::{Error, Result};
use crate::lie::{structure_constants, LieSuperAlgebra};
use crate::maps::{check_inverse_pair, derivation_coords, Derivation, Morphism};
use crate::matrix::MatrixFamily;
use crate::parse::parse_poly;
use crate::poly::{Monomial, SuperPoly};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// A constant tangent vector at the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector {
    pub parity: Parity,
    pub components: Vec<GaussianRational>,
}

impl TangentVector {
    pub fn new(coords: &Ctx, parity: Parity, components: Vec<GaussianRational>) -> Result<Self> {
        if components.len() != coords.len() {
            return Err(Error::Shape(format!("{} components for {} coordinates", components.len(), coords.len())));
        }
        for (g, c) in coords.generators().iter().zip(&components) {
            if !c.is_zero() && g.parity != parity {
                return Err(Error::Parity(format!("{parity} tangent vector has a component along {} `{}`", g.parity, g.name)));
            }
        }
        Ok(TangentVector { parity, components })
    }

    /// The unit vector along one coordinate.
    pub fn along(coords: &Ctx, name: &str) -> Result<Self> {
        let idx = coords.require(name)?;
        let mut components = vec![GaussianRational::zero(); coords.len()];
        components[idx] = GaussianRational::from_int(1);
        TangentVector::new(coords, coords.generator(idx).parity, components)
    }
}

/// Result of one axiom: the coordinates whose two sides differ, each with
/// the difference as witness.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub defects: Vec<(String, SuperPoly)>,
}

impl AxiomCheck {
    pub fn holds(&self) -> bool {
        self.defects.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    coords: Ctx,
    doubled: Ctx,
    mult: Vec<SuperPoly>,
    unit: Vec<GaussianRational>,
    inv: Vec<SuperPoly>,
}

impl GroupPresentation {
    pub fn new(coords: &Ctx, mult: Vec<SuperPoly>, unit: Vec<GaussianRational>, inv: Vec<SuperPoly>) -> Result<Self> {
        let doubled = coords.copies(2)?;
        let n = coords.len();
        if mult.len() != n || unit.len() != n || inv.len() != n {
            return Err(Error::Shape(format!("presentation on {n} coordinates needs {n} products, units and inverses")));
        }
        for (i, g) in coords.generators().iter().enumerate() {
            check_same(mult[i].context(), &doubled)?;
            check_same(inv[i].context(), coords)?;
            if !mult[i].has_parity(g.parity) || !inv[i].has_parity(g.parity) {
                return Err(Error::Parity(format!("product or inverse of `{}` has the wrong parity", g.name)));
            }
            if g.parity.is_odd() && !unit[i].is_zero() {
                return Err(Error::Malformed(format!("unit of odd coordinate `{}` must be 0", g.name)));
            }
        }
        Ok(GroupPresentation { coords: coords.clone(), doubled, mult, unit, inv })
    }

    /// Convenience constructor from text; products are parsed over `(x, x')`.
    pub fn parse(coords: &Ctx, mult: &[&str], unit: &[i64], inv: &[&str]) -> Result<Self> {
        let doubled = coords.copies(2)?;
        let mult = mult.iter().map(|s| parse_poly(&doubled, s)).collect::<Result<_>>()?;
        let inv = inv.iter().map(|s| parse_poly(coords, s)).collect::<Result<_>>()?;
        let unit = unit.iter().map(|&u| GaussianRational::from_int(u)).collect();
        GroupPresentation::new(coords, mult, unit, inv)
    }

    /// Read the group law off a closed matrix family: the product and the
    /// inverse are the parameters of `T(p)·T(p')` and `T(p)⁻¹`.
    pub fn from_family(family: &MatrixFamily, unit: Vec<GaussianRational>) -> Result<Self> {
        let prod = family.product_closure()?;
        if !prod.closed() {
            return Err(Error::Malformed(format!("family is not closed under products: defect {}", prod.defect)));
        }
        let inv = family.inverse_closure()?;
        if !inv.closed() {
            return Err(Error::Malformed(format!("family is not closed under inverses: defect {}", inv.defect)));
        }
        GroupPresentation::new(family.params(), prod.composed.images().to_vec(), unit, inv.composed.images().to_vec())
    }

    pub fn coords(&self) -> &Ctx {
        &self.coords
    }

    pub fn doubled(&self) -> &Ctx {
        &self.doubled
    }

    pub fn mult(&self) -> &[SuperPoly] {
        &self.mult
    }

    pub fn unit(&self) -> &[GaussianRational] {
        &self.unit
    }

    pub fn inv(&self) -> &[SuperPoly] {
        &self.inv
    }

    /// The `k`-th coordinate copy inside `ctx` (`k = 0` unprimed).
    pub fn slot(&self, ctx: &Ctx, k: usize) -> Result<Morphism> {
        let n = self.coords.len();
        if ctx.len() < (k + 1) * n {
            return Err(Error::Shape(format!("context {} has no copy {k}", ctx.describe())));
        }
        Morphism::new(&self.coords, ctx, (0..n).map(|i| SuperPoly::gen(ctx, k * n + i)).collect())
    }

    /// The unit as a point with values in `ctx`.
    pub fn unit_point(&self, ctx: &Ctx) -> Result<Morphism> {
        Morphism::new(&self.coords, ctx, self.unit.iter().map(|c| SuperPoly::constant(ctx, c.clone())).collect())
    }

    pub fn inverse_morphism(&self) -> Result<Morphism> {
        Morphism::new(&self.coords, &self.coords, self.inv.clone())
    }

    /// The map `(x, x') ↦ (a(x), b(x))` from the doubled context.
    fn pair(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        check_same(a.target(), b.target())?;
        let images = a.images().iter().chain(b.images()).cloned().collect();
        Morphism::new(&self.doubled, a.target(), images)
    }

    /// The product `a·b` of two points with values in the same context.
    pub fn product(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        let p = self.pair(a, b)?;
        let images = self.mult.iter().map(|m| p.apply(m)).collect::<Result<_>>()?;
        Morphism::new(&self.coords, a.target(), images)
    }

    fn compare(&self, axiom: &'static str, lhs: &Morphism, rhs: &Morphism) -> Result<AxiomCheck> {
        let mut defects = Vec::new();
        for (i, (l, r)) in lhs.images().iter().zip(rhs.images()).enumerate() {
            let d = l.sub(r)?;
            if !d.is_zero() {
                defects.push((self.coords.generator(i).name.clone(), d));
            }
        }
        Ok(AxiomCheck { axiom, defects })
    }

    /// Associativity over `(x, x', x'')`, both unit laws and both inverse laws.
    pub fn check_group_axioms(&self) -> Result<Vec<AxiomCheck>> {
        let tripled = self.coords.copies(3)?;
        let (a, b, c) = (self.slot(&tripled, 0)?, self.slot(&tripled, 1)?, self.slot(&tripled, 2)?);
        let assoc_l = self.product(&self.product(&a, &b)?, &c)?;
        let assoc_r = self.product(&a, &self.product(&b, &c)?)?;
        let id = Morphism::identity(&self.coords);
        let e = self.unit_point(&self.coords)?;
        let inv = self.inverse_morphism()?;
        Ok(vec![
            self.compare("associativity", &assoc_l, &assoc_r)?,
            self.compare("left unit", &self.product(&e, &id)?, &id)?,
            self.compare("right unit", &self.product(&id, &e)?, &id)?,
            self.compare("left inverse", &self.product(&inv, &id)?, &e)?,
            self.compare("right inverse", &self.product(&id, &inv)?, &e)?,
        ])
    }

    /// The invariant field generated by `v` on the given side.
    pub fn invariant_field(&self, v: &TangentVector, side: Side) -> Result<Derivation> {
        let n = self.coords.len();
        if v.components.len() != n {
            return Err(Error::Shape("tangent vector does not match the coordinates".into()));
        }
        let id = Morphism::identity(&self.coords);
        let e = self.unit_point(&self.coords)?;
        let (eval, offset) = match side {
            Side::Left => (self.pair(&id, &e)?, n),
            Side::Right => (self.pair(&e, &id)?, 0),
        };
        let mut images = Vec::with_capacity(n);
        for m in &self.mult {
            let mut acc = SuperPoly::zero(&self.coords);
            for (j, c) in v.components.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = Derivation::partial(&self.doubled, offset + j).apply(m)?;
                acc = acc.add(&eval.apply(&d)?.scale(c))?;
            }
            images.push(acc);
        }
        Derivation::new(&self.coords, v.parity, images)
    }

    /// `Δ ∘ X = (id ⊗ X) ∘ Δ` (left) or `Δ ∘ X = (X ⊗ id) ∘ Δ` (right),
    /// checked coordinate by coordinate. Returns the nonzero defects.
    pub fn invariance_defects(&self, x: &Derivation, side: Side) -> Result<Vec<(String, SuperPoly)>> {
        check_same(x.context(), &self.coords)?;
        let n = self.coords.len();
        let copy = match side {
            Side::Left => 1,
            Side::Right => 0,
        };
        let slot = self.slot(&self.doubled, copy)?;
        let mut images = vec![SuperPoly::zero(&self.doubled); 2 * n];
        for (j, img) in x.images().iter().enumerate() {
            images[copy * n + j] = slot.apply(img)?;
        }
        let lifted = Derivation::new(&self.doubled, x.parity(), images)?;
        let delta = Morphism::new(&self.coords, &self.doubled, self.mult.clone())?;
        let mut defects = Vec::new();
        for (i, m) in self.mult.iter().enumerate() {
            let lhs = delta.apply(&x.images()[i])?;
            let rhs = lifted.apply(m)?;
            let d = lhs.sub(&rhs)?;
            if !d.is_zero() {
                defects.push((self.coords.generator(i).name.clone(), d));
            }
        }
        Ok(defects)
    }

    pub fn invariance_check(&self, x: &Derivation, side: Side) -> Result<bool> {
        Ok(self.invariance_defects(x, side)?.is_empty())
    }
}

/// Express every pairwise bracket of `fields` in the basis `fields`.
pub fn structure_constants_from_fields(names: &[&str], fields: &[Derivation]) -> Result<LieSuperAlgebra> {
    let Some(first) = fields.first() else {
        return LieSuperAlgebra::from_table(&[], &[], &[]);
    };
    let ctx = first.context().clone();
    for f in fields {
        check_same(f.context(), &ctx)?;
    }
    // Index the support of the fields; one extra coordinate flags anything
    // outside it, which forces the solve to fail.
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    for f in fields {
        for k in derivation_coords(f).into_keys() {
            let next = index.len();
            index.entry(k).or_insert(next);
        }
    }
    let outside = index.len();
    let parities: Vec<Parity> = fields.iter().map(Derivation::parity).collect();
    structure_constants(
        names,
        &parities,
        fields,
        |d| {
            let mut v = Vec::new();
            let mut escaped = false;
            for (k, c) in derivation_coords(d) {
                match index.get(&k) {
                    Some(&i) => v.push((i, c)),
                    None => escaped = true,
                }
            }
            if escaped {
                v.push((outside, GaussianRational::from_int(1)));
            }
            v
        },
        outside + 1,
        |a, b| a.bracket(b),
        |d| d.to_string(),
    )
}

/// Find the constant-or-unit `k` with `F*(D g) = k · D(F* g)` on every
/// generator `g` of the source.
pub fn susy_scaling_check(f: &Morphism, f_inv: &Morphism, d: &Derivation) -> Result<SuperPoly> {
    check_inverse_pair(f, f_inv)?;
    check_same(d.context(), f.source())?;
    check_same(d.context(), f.target())?;
    let ctx = f.source();
    let mut sides = Vec::new();
    for i in 0..ctx.len() {
        if ctx.generator(i).parameter {
            continue;
        }
        let g = SuperPoly::gen(ctx, i);
        sides.push((ctx.generator(i).name.clone(), f.apply(&d.apply(&g)?)?, d.apply(&f.apply(&g)?)?));
    }
    let mismatch = |name: &str, l: &SuperPoly, r: &SuperPoly| {
        Error::NoConsistentScaling(format!("on `{name}`: F*(D {name}) = {l} but D(F* {name}) = {r}"))
    };
    // Multiplying by an even monomial shifts exponents, which preserves the
    // canonical order, so the leading terms of the two sides determine k.
    let mut k: Option<SuperPoly> = None;
    for (name, l, r) in &sides {
        let Some((rm, rc)) = r.terms().next() else {
            if !l.is_zero() {
                return Err(mismatch(name, l, r));
            }
            continue;
        };
        let candidate = match l.terms().next() {
            Some((lm, lc)) if lm.odd_mask() == rm.odd_mask() => {
                let exps: Vec<i32> = lm.exponents().iter().zip(rm.exponents()).map(|(a, b)| a - b).collect();
                let m = Monomial::from_parts(exps, 0);
                let ok = m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || ctx.generator(i).invertible);
                if !ok {
                    return Err(mismatch(name, l, r));
                }
                let c = lc.clone() / rc.clone();
                SuperPoly::term(ctx, m, c)
            }
            _ => return Err(mismatch(name, l, r)),
        };
        match &k {
            None => k = Some(candidate),
            Some(prev) if *prev == candidate => {}
            Some(prev) => {
                return Err(Error::NoConsistentScaling(format!("`{name}` needs k = {candidate} but an earlier generator needs k = {prev}")))
            }
        }
    }
    let k = k.ok_or_else(|| Error::NoConsistentScaling("D vanishes on every generator".into()))?;
    for (name, l, r) in &sides {
        if *l != k.mul(r)? {
            return Err(mismatch(name, l, r));
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_context, parse_derivation};

    fn sl11_law() -> GroupPresentation {
        let c = parse_context("unit v; odd xi, eta;").unwrap();
        GroupPresentation::parse(
            &c,
            &["v*v' + eta*xi'", "v*xi' + xi*v' + xi*v^-1*eta*xi'", "eta*v' + v*eta' + eta*xi'*v'^-1*eta'"],
            &[1, 0, 0],
            &["v^-1 - v^-3*xi*eta", "-1*v^-2*xi", "-1*v^-2*eta"],
        )
        .unwrap()
    }

    #[test]
    fn sl11_axioms_hold() {
        for a in sl11_law().check_group_axioms().unwrap() {
            assert!(a.holds(), "{} fails: {:?}", a.axiom, a.defects);
        }
    }

    #[test]
    fn broken_inverse_is_reported() {
        let c = parse_context("even z; odd zeta;").unwrap();
        let g = GroupPresentation::parse(&c, &["z + z' + zeta*zeta'", "zeta + zeta'"], &[0, 0], &["-1*z", "zeta"]).unwrap();
        let checks = g.check_group_axioms().unwrap();
        assert!(checks[0].holds());
        assert!(!checks[3].holds());
    }

    #[test]
    fn sl11_left_fields() {
        let g = sl11_law();
        let c = g.coords().clone();
        let d1 = g.invariant_field(&TangentVector::along(&c, "eta").unwrap(), Side::Left).unwrap();
        let d2 = g.invariant_field(&TangentVector::along(&c, "xi").unwrap(), Side::Left).unwrap();
        let e = g.invariant_field(&TangentVector::along(&c, "v").unwrap(), Side::Left).unwrap();
        assert_eq!(d1, parse_derivation(&c, "v*d/deta").unwrap());
        assert_eq!(d2, parse_derivation(&c, "-1*eta*d/dv + (v + xi*v^-1*eta)*d/dxi").unwrap());
        assert_eq!(e, parse_derivation(&c, "v*d/dv + xi*d/dxi + eta*d/deta").unwrap());
        for x in [&d1, &d2, &e] {
            assert!(g.invariance_check(x, Side::Left).unwrap());
        }
        assert!(!g.invariance_check(&parse_derivation(&c, "d/deta").unwrap(), Side::Left).unwrap());
        let table = structure_constants_from_fields(&["D1", "D2", "E"], &[d1, d2, e]).unwrap();
        assert_eq!(table.structure(0, 1), &[0, 0, -1].map(GaussianRational::from_int)[..]);
        assert!(table.check_super_jacobi());
    }

    #[test]
    fn additive_fields_by_side() {
        let c = parse_context("even z; odd zeta;").unwrap();
        let g = GroupPresentation::parse(&c, &["z + z' + zeta*zeta'", "zeta + zeta'"], &[0, 0], &["-1*z", "-1*zeta"]).unwrap();
        let v = TangentVector::along(&c, "zeta").unwrap();
        assert_eq!(g.invariant_field(&v, Side::Left).unwrap(), parse_derivation(&c, "d/dzeta - zeta*d/dz").unwrap());
        assert_eq!(g.invariant_field(&v, Side::Right).unwrap(), parse_derivation(&c, "d/dzeta + zeta*d/dz").unwrap());
        let dz = parse_derivation(&c, "d/dz").unwrap();
        for side in Side::BOTH {
            assert!(g.invariance_check(&dz, side).unwrap());
            assert!(g.invariance_check(&g.invariant_field(&v, side).unwrap(), side).unwrap());
        }
    }

    #[test]
    fn escaping_bracket_is_an_error() {
        let c = parse_context("even z; odd zeta;").unwrap();
        let d = parse_derivation(&c, "d/dzeta + zeta*d/dz").unwrap();
        assert!(matches!(structure_constants_from_fields(&["D"], &[d]), Err(Error::OutsideSpan(_))));
        let dz = parse_derivation(&c, "d/dz").unwrap();
        assert!(matches!(structure_constants_from_fields(&["a", "b"], &[dz.clone(), dz.clone()]), Err(Error::DependentBasis)));
        let t = structure_constants_from_fields(&["dz"], &[dz]).unwrap();
        assert_eq!(t.render_table(), "bracket(dz, dz) = 0\n");
    }

    #[test]
    fn scaling_factors() {
        let c = parse_context("even z; odd zeta;").unwrap();
        let d = parse_derivation(&c, "d/dzeta + zeta*d/dz").unwrap();
        let id = Morphism::identity(&c);
        assert!(susy_scaling_check(&id, &id, &d).unwrap().is_one());
        let two = Morphism::from_names(&c, &c, &[("z", parse_poly(&c, "2*z").unwrap())]).unwrap();
        let half = Morphism::from_names(&c, &c, &[("z", parse_poly(&c, "1/2*z").unwrap())]).unwrap();
        assert!(matches!(susy_scaling_check(&two, &half, &d), Err(Error::NoConsistentScaling(_))));
    }
}
