//! Laurent superpolynomials over the Gaussian rationals.
//!
//! A [`SuperPoly`] is a finite map from [`Monomial`] to nonzero coefficient.
//! Monomials store integer exponents for even generators and a bitmask of odd
//! generators; odd factors are always kept in the context's canonical order,
//! so the map itself is a normal form and equality is structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::context::{check_same, Context, Ctx, Parity};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    /// One entry per generator; odd generators always hold 0.
    exps: Vec<i32>,
    /// Bit `k` set means the odd generator in canonical slot `k` is a factor.
    odd: u64,
}

impl Monomial {
    pub fn one(ctx: &Context) -> Self {
        Monomial { exps: vec![0; ctx.len()], odd: 0 }
    }

    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn parity(&self) -> Parity {
        Parity::from_bit(self.odd.count_ones() % 2 == 1)
    }

    pub fn odd_degree(&self) -> u32 {
        self.odd.count_ones()
    }

    /// A single generator, or `None` for an odd generator with exponent > 1.
    pub fn generator(ctx: &Context, idx: usize, exp: i32) -> Result<Option<Self>> {
        let mut m = Monomial::one(ctx);
        let g = ctx.generator(idx);
        match ctx.odd_slot(idx) {
            Some(slot) => match exp {
                0 => {}
                1 => m.odd = 1 << slot,
                e if e < 0 => return Err(Error::NotInvertible(format!("odd generator `{}` to power {e}", g.name))),
                _ => return Ok(None),
            },
            None => {
                if exp < 0 && !g.invertible {
                    return Err(Error::NotInvertible(format!("negative exponent on non-invertible generator `{}`", g.name)));
                }
                m.exps[idx] = exp;
            }
        }
        Ok(Some(m))
    }

    pub fn from_parts(exps: Vec<i32>, odd: u64) -> Self {
        Monomial { exps, odd }
    }

    /// Product with its Koszul sign, `None` when an odd factor repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut negative = false;
        let mut rest = other.odd;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            let above = if j == 63 { 0 } else { self.odd >> (j + 1) };
            if above.count_ones() % 2 == 1 {
                negative = !negative;
            }
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Some((Monomial { exps, odd: self.odd | other.odd }, negative))
    }

    /// Inverse of a purely even monomial.
    pub fn inverse(&self) -> Option<Monomial> {
        (self.odd == 0).then(|| Monomial { exps: self.exps.iter().map(|e| -e).collect(), odd: 0 })
    }

    /// Canonical order: even exponents lexicographic in generator order,
    /// then odd subsets lexicographic as sorted slot lists.
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps).then_with(|| odd_lex(self.odd, other.odd))
    }

    /// Rendering order: even exponents descending, odd subsets ascending.
    pub fn render_cmp(&self, other: &Monomial) -> Ordering {
        other.exps.cmp(&self.exps).then_with(|| odd_lex(self.odd, other.odd))
    }

    pub fn render(&self, ctx: &Context) -> String {
        let mut parts = Vec::new();
        for (i, g) in ctx.generators().iter().enumerate() {
            match ctx.odd_slot(i) {
                Some(slot) => {
                    if self.odd >> slot & 1 == 1 {
                        parts.push(g.name.clone());
                    }
                }
                None => match self.exps[i] {
                    0 => {}
                    1 => parts.push(g.name.clone()),
                    e => parts.push(format!("{}^{}", g.name, e)),
                },
            }
        }
        parts.join("*")
    }
}

fn odd_lex(a: u64, b: u64) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

/// An element of the Laurent superpolynomial ring of a context.
#[derive(Clone)]
pub struct SuperPoly {
    ctx: Ctx,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for SuperPoly {
    fn eq(&self, other: &Self) -> bool {
        Context::same(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for SuperPoly {}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({})", self)
    }
}

impl SuperPoly {
    pub fn zero(ctx: &Ctx) -> Self {
        SuperPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Ctx, c: GaussianRational) -> Self {
        SuperPoly::term(ctx, Monomial::one(ctx), c)
    }

    pub fn one(ctx: &Ctx) -> Self {
        SuperPoly::constant(ctx, GaussianRational::one())
    }

    pub fn term(ctx: &Ctx, m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SuperPoly { ctx: ctx.clone(), terms }
    }

    /// The generator at `idx` as a polynomial.
    pub fn gen(ctx: &Ctx, idx: usize) -> Self {
        let m = Monomial::generator(ctx, idx, 1).expect("exponent 1").expect("exponent 1");
        SuperPoly::term(ctx, m, GaussianRational::one())
    }

    /// The generator called `name`.
    pub fn var(ctx: &Ctx, name: &str) -> Result<Self> {
        Ok(SuperPoly::gen(ctx, ctx.require(name)?))
    }

    /// `gen^exp`; odd generators with exponent ≥ 2 give zero.
    pub fn gen_pow(ctx: &Ctx, idx: usize, exp: i32) -> Result<Self> {
        Ok(match Monomial::generator(ctx, idx, exp)? {
            Some(m) => SuperPoly::term(ctx, m, GaussianRational::one()),
            None => SuperPoly::zero(ctx),
        })
    }

    pub fn from_terms(ctx: &Ctx, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = SuperPoly::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn context(&self) -> &Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Value of a constant polynomial.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Parity when every monomial shares one; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// True if zero or homogeneous of parity `p`.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.terms.keys().all(|m| m.parity() == p)
    }

    pub fn is_even(&self) -> bool {
        self.has_parity(Parity::Even)
    }

    /// Terms without odd factors.
    pub fn body(&self) -> SuperPoly {
        SuperPoly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.odd == 0).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> SuperPoly {
        self.scale(&-GaussianRational::one())
    }

    pub fn scale(&self, c: &GaussianRational) -> SuperPoly {
        if c.is_zero() {
            return SuperPoly::zero(&self.ctx);
        }
        SuperPoly { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect() }
    }

    /// Supercommutative product in canonical form.
    pub fn mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        check_same(&self.ctx, &other.ctx)?;
        let mut out = SuperPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            if let Some((prod, negative)) = ma.mul(m) {
                let c = ca * c;
                out.add_term(prod, &if negative { -c } else { c });
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> SuperPoly {
        let mut acc = SuperPoly::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Inverse of an even element whose body is a single unit term.
    ///
    /// Writes `a = b·(1 + n)` with `b` the body and `n` nilpotent, then sums
    /// the terminating geometric series `b⁻¹·Σ (−n)ᵏ`.
    pub fn invert_even(&self) -> Result<SuperPoly> {
        if !self.is_even() {
            return Err(Error::NotEven(self.to_string()));
        }
        let body = self.body();
        if body.terms.len() != 1 {
            return Err(Error::NotInvertible(format!("body of `{self}` is not a single unit term")));
        }
        let (bm, bc) = body.terms.iter().next().expect("one term");
        for (i, &e) in bm.exps.iter().enumerate() {
            if e != 0 && !self.ctx.generator(i).invertible {
                return Err(Error::NotInvertible(format!("body of `{self}` contains non-invertible `{}`", self.ctx.generator(i).name)));
            }
        }
        let inv_m = bm.inverse().expect("body is even");
        let inv_c = bc.inv().expect("nonzero coefficient");
        let nil = self.sub(&body)?.mul_term(&inv_m, &inv_c);
        let minus_nil = nil.neg();
        let mut sum = SuperPoly::one(&self.ctx);
        let mut power = SuperPoly::one(&self.ctx);
        loop {
            power = power.mul(&minus_nil)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        Ok(sum.mul_term(&inv_m, &inv_c))
    }

    /// Integer power allowing negative exponents through [`invert_even`](Self::invert_even).
    pub fn powi(&self, n: i32) -> Result<SuperPoly> {
        if n >= 0 {
            Ok(self.pow(n as u32))
        } else {
            Ok(self.invert_even()?.pow(n.unsigned_abs()))
        }
    }

    /// Rebuild over another context that has the same generator layout.
    pub fn with_context(&self, ctx: &Ctx) -> Result<SuperPoly> {
        if ctx.len() != self.ctx.len() || ctx.generators().iter().zip(self.ctx.generators()).any(|(a, b)| a.parity != b.parity) {
            return Err(Error::ContextMismatch("layouts differ".into()));
        }
        Ok(SuperPoly { ctx: ctx.clone(), terms: self.terms.clone() })
    }

    /// Canonical text rendering; see the crate docs for the format.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Renders one `coefficient*monomial` term; constants render as the bare coefficient.
pub(crate) fn render_term(ctx: &Context, m: &Monomial, c: &GaussianRational) -> String {
    let coeff = if c.is_compound() { format!("({c})") } else { c.to_string() };
    if m.is_one() {
        coeff
    } else {
        format!("{coeff}*{}", m.render(ctx))
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| a.0.render_cmp(b.0));
        for (k, (m, c)) in sorted.into_iter().enumerate() {
            if k == 0 {
                f.write_str(&render_term(&self.ctx, m, c))?;
            } else if c.is_negative_like() {
                write!(f, " - {}", render_term(&self.ctx, m, &-c))?;
            } else {
                write!(f, " + {}", render_term(&self.ctx, m, c))?;
            }
        }
        Ok(())
    }
}
