//! Generator contexts: the named even/odd symbols a superpolynomial lives over.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Parity {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign `(−1)^{|a||b|}` as a boolean: true means negative.
    pub fn koszul(self, other: Parity) -> bool {
        self.is_odd() && other.is_odd()
    }
}

/// Addition in ℤ₂.
impl std::ops::Add for Parity {
    type Output = Parity;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.is_odd() ^ rhs.is_odd())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    /// Laurent exponents are allowed only on invertible generators.
    pub invertible: bool,
    pub partner: Option<String>,
    /// Base parameters are constants for the exterior derivative `d`.
    pub parameter: bool,
}

impl Generator {
    pub fn even(name: &str) -> Self {
        Generator { name: name.into(), parity: Parity::Even, invertible: false, partner: None, parameter: false }
    }

    pub fn unit(name: &str) -> Self {
        Generator { invertible: true, ..Generator::even(name) }
    }

    pub fn odd(name: &str) -> Self {
        Generator { parity: Parity::Odd, ..Generator::even(name) }
    }

    pub fn with_partner(mut self, partner: &str) -> Self {
        self.partner = Some(partner.into());
        self
    }

    pub fn as_parameter(mut self) -> Self {
        self.parameter = true;
        self
    }
}

/// An ordered list of generators. The declaration order of the odd generators
/// is the canonical order every Koszul sign is measured against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    gens: Vec<Generator>,
    odd_slot: Vec<Option<u32>>,
    odd_gens: Vec<usize>,
    partner_idx: Vec<Option<usize>>,
}

pub type Ctx = Arc<Context>;

impl Context {
    pub fn new(gens: Vec<Generator>) -> Result<Ctx> {
        let mut odd_slot = Vec::with_capacity(gens.len());
        let mut odd_gens = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let ident = g.name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !ident || g.name == "i" {
                return Err(Error::InvalidContext(format!("`{}` is not a usable generator name", g.name)));
            }
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidContext(format!("duplicate generator `{}`", g.name)));
            }
            if g.parity.is_odd() {
                if g.invertible {
                    return Err(Error::InvalidContext(format!("odd generator `{}` cannot be invertible", g.name)));
                }
                odd_slot.push(Some(odd_gens.len() as u32));
                odd_gens.push(i);
            } else {
                odd_slot.push(None);
            }
        }
        if odd_gens.len() > 64 {
            return Err(Error::InvalidContext("more than 64 odd generators".into()));
        }
        let mut partner_idx = vec![None; gens.len()];
        for (i, g) in gens.iter().enumerate() {
            if let Some(p) = &g.partner {
                let j = gens
                    .iter()
                    .position(|h| &h.name == p)
                    .ok_or_else(|| Error::InvalidContext(format!("partner `{p}` of `{}` not declared", g.name)))?;
                let back = gens[j].partner.as_deref();
                if back != Some(g.name.as_str()) || gens[j].parity != g.parity || gens[j].invertible != g.invertible {
                    return Err(Error::InvalidContext(format!(
                        "conjugate partners `{}` and `{p}` must name each other with matching type",
                        g.name
                    )));
                }
                partner_idx[i] = Some(j);
            }
        }
        Ok(Arc::new(Context { gens, odd_slot, odd_gens, partner_idx }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.gens[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::NotFound(format!("generator `{name}`")))
    }

    pub fn odd_slot(&self, idx: usize) -> Option<u32> {
        self.odd_slot[idx]
    }

    /// Generator index of the odd generator in canonical position `slot`.
    pub fn odd_generator(&self, slot: u32) -> usize {
        self.odd_gens[slot as usize]
    }

    pub fn odd_count(&self) -> usize {
        self.odd_gens.len()
    }

    pub fn partner(&self, idx: usize) -> Option<usize> {
        self.partner_idx[idx]
    }

    /// `n` disjoint copies `x, x', x'', …` laid out copy after copy.
    /// Conjugate partners are dropped; parameter flags are kept.
    pub fn copies(&self, n: usize) -> Result<Ctx> {
        let mut gens = Vec::with_capacity(self.len() * n);
        for k in 0..n {
            for g in &self.gens {
                gens.push(Generator { name: format!("{}{}", g.name, "'".repeat(k)), partner: None, ..g.clone() });
            }
        }
        Context::new(gens)
    }

    pub fn same(a: &Ctx, b: &Ctx) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn describe(&self) -> String {
        let names: Vec<_> = self.gens.iter().map(|g| g.name.as_str()).collect();
        format!("({})", names.join(", "))
    }
}

pub(crate) fn check_same(a: &Ctx, b: &Ctx) -> Result<()> {
    if Context::same(a, b) {
        Ok(())
    } else {
        Err(Error::ContextMismatch(format!("{} vs {}", a.describe(), b.describe())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_generators() {
        assert!(Context::new(vec![Generator::even("z"), Generator::odd("z")]).is_err());
        let mut bad = Generator::odd("zeta");
        bad.invertible = true;
        assert!(Context::new(vec![bad]).is_err());
        assert!(Context::new(vec![Generator::odd("zeta").with_partner("zetabar")]).is_err());
        assert!(Context::new(vec![Generator::odd("zeta").with_partner("zb"), Generator::even("zb").with_partner("zeta"),]).is_err());
    }

    #[test]
    fn copies_are_primed() {
        let c = Context::new(vec![Generator::unit("v"), Generator::odd("xi")]).unwrap();
        let t = c.copies(3).unwrap();
        let names: Vec<_> = t.generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(names, ["v", "xi", "v'", "xi'", "v''", "xi''"]);
        assert_eq!(t.odd_count(), 3);
        assert!(t.generator(4).invertible);
    }
}
