//! Recursive-descent parser for the polynomial / derivation text format.
//!
//! ```text
//! input    := preamble* expr
//! preamble := ("even" | "odd" | "unit") ident ("," ident)* ";"
//! expr     := term (("+" | "-") term)*
//! term     := ("+" | "-")? factor ("*" factor)*
//! factor   := int ("/" int)? | "i" | ident ("^" "-"? int)?
//!           | "(" expr ")" ("^" "-"? int)? | "d/d" ident
//! ```
//!
//! A term holding a `d/dx` factor (which must come last) is a derivation term;
//! an expression is either all polynomial or all derivation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::context::{Context, Ctx, Generator, Parity};
use crate::error::{Error, Result};
use crate::maps::{Derivation, OneForm};
use crate::poly::SuperPoly;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Partial(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Semi,
    Comma,
    End,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Int(text.parse().expect("digits")), pos));
            continue;
        }
        if is_ident_start(c) {
            let start = k;
            while k < chars.len() && is_ident_char(chars[k].1) {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|&(_, c)| c).collect();
            // `d/d<name>` is a partial derivative; division never follows a generator.
            if text == "d" && k + 2 < chars.len() && chars[k].1 == '/' && chars[k + 1].1 == 'd' && is_ident_start(chars[k + 2].1) {
                k += 2;
                let start = k;
                while k < chars.len() && is_ident_char(chars[k].1) {
                    k += 1;
                }
                let name: String = chars[start..k].iter().map(|&(_, c)| c).collect();
                out.push((Tok::Partial(name), pos));
            } else {
                out.push((Tok::Ident(text), pos));
            }
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            other => return Err(Error::Parse { pos, msg: format!("unexpected character `{other}`") }),
        };
        out.push((tok, pos));
        k += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

/// A parsed expression: a polynomial or a derivation.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Poly(SuperPoly),
    Derivation(Derivation),
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Poly(p) => write!(f, "{p}"),
            Expr::Derivation(d) => write!(f, "{d}"),
        }
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ctx: Option<&'a Ctx>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos, msg: msg.into() })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.err(self.pos(), format!("expected {what}"))
        }
    }

    fn ctx(&self) -> &'a Ctx {
        self.ctx.expect("context resolved before parsing expressions")
    }

    fn preamble(&mut self) -> Result<Option<Vec<Generator>>> {
        let mut gens: Vec<Generator> = Vec::new();
        let mut seen = false;
        loop {
            let kw = match (self.peek(), &self.toks.get(self.at + 1).map(|t| &t.0)) {
                (Tok::Ident(k), Some(Tok::Ident(_))) if matches!(k.as_str(), "even" | "odd" | "unit") => k.clone(),
                _ => break,
            };
            seen = true;
            self.bump();
            loop {
                let (tok, pos) = self.bump();
                let Tok::Ident(name) = tok else {
                    return self.err(pos, "expected generator name");
                };
                if gens.iter().any(|g| g.name == name) {
                    return self.err(pos, format!("generator `{name}` declared twice"));
                }
                gens.push(match kw.as_str() {
                    "even" => Generator::even(&name),
                    "odd" => Generator::odd(&name),
                    _ => Generator::unit(&name),
                });
                match self.bump() {
                    (Tok::Comma, _) => continue,
                    (Tok::Semi, _) => break,
                    (_, pos) => return self.err(pos, "expected `,` or `;` in declaration"),
                }
            }
        }
        Ok(seen.then_some(gens))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            let negate = match self.peek() {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => break,
            };
            let pos = self.pos();
            self.bump();
            let mut t = self.term()?;
            if negate {
                t = negate_expr(t);
            }
            acc = self.add(acc, t, pos)?;
        }
        Ok(acc)
    }

    fn add(&self, a: Expr, b: Expr, pos: usize) -> Result<Expr> {
        match (a, b) {
            (Expr::Poly(x), Expr::Poly(y)) => Ok(Expr::Poly(x.add(&y)?)),
            (Expr::Derivation(x), Expr::Derivation(y)) => match x.add(&y) {
                Ok(d) => Ok(Expr::Derivation(d)),
                Err(_) => self.err(pos, "parity-invalid derivation: summands have different parities"),
            },
            (Expr::Poly(p), Expr::Derivation(d)) | (Expr::Derivation(d), Expr::Poly(p)) => {
                if p.is_zero() {
                    Ok(Expr::Derivation(d))
                } else {
                    self.err(pos, "cannot add a polynomial and a derivation")
                }
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                negate = true;
                self.bump();
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let pos = self.pos();
            self.bump();
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Expr::Poly(a), Expr::Poly(b)) => Expr::Poly(a.mul(&b)?),
                (Expr::Poly(a), Expr::Derivation(d)) => match d.left_mul(&a) {
                    Ok(d) => Expr::Derivation(d),
                    Err(_) => return self.err(pos, "parity-invalid derivation: coefficient is not homogeneous"),
                },
                (Expr::Derivation(_), _) => return self.err(pos, "a d/dx factor must be the last factor of its term"),
            };
        }
        Ok(if negate { negate_expr(acc) } else { acc })
    }

    fn exponent(&mut self) -> Result<Option<(i32, usize)>> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (tok, pos) = self.bump();
        let Tok::Int(n) = tok else {
            return self.err(pos, "expected integer exponent");
        };
        let n: i32 = i32::try_from(n).or_else(|_| self.err(pos, "exponent out of range"))?;
        Ok(Some((if neg { -n } else { n }, pos)))
    }

    fn factor(&mut self) -> Result<Expr> {
        let ctx = self.ctx();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Int(n) => {
                let mut q = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let (tok, dpos) = self.bump();
                    let Tok::Int(d) = tok else {
                        return self.err(dpos, "expected denominator");
                    };
                    if d.is_zero() {
                        return self.err(dpos, "zero denominator");
                    }
                    q /= BigRational::from_integer(d);
                }
                Ok(Expr::Poly(SuperPoly::constant(ctx, GaussianRational::real(q))))
            }
            Tok::Ident(name) if name == "i" => Ok(Expr::Poly(SuperPoly::constant(ctx, GaussianRational::i()))),
            Tok::Ident(name) => {
                let Some(idx) = ctx.index_of(&name) else {
                    return self.err(pos, format!("undeclared generator `{name}`"));
                };
                let exp = self.exponent()?;
                let (e, epos) = exp.unwrap_or((1, pos));
                match SuperPoly::gen_pow(ctx, idx, e) {
                    Ok(p) => Ok(Expr::Poly(p)),
                    Err(_) => self.err(epos, format!("negative exponent on non-invertible generator `{name}`")),
                }
            }
            Tok::Partial(name) => {
                let Some(idx) = ctx.index_of(&name) else {
                    return self.err(pos, format!("undeclared generator `{name}`"));
                };
                Ok(Expr::Derivation(Derivation::partial(ctx, idx)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                match self.exponent()? {
                    None => Ok(inner),
                    Some((e, epos)) => match inner {
                        Expr::Poly(p) => match p.powi(e) {
                            Ok(p) => Ok(Expr::Poly(p)),
                            Err(err) => self.err(epos, err.to_string()),
                        },
                        Expr::Derivation(_) => self.err(epos, "cannot raise a derivation to a power"),
                    },
                }
            }
            Tok::End => self.err(pos, "unexpected end of input"),
            other => self.err(pos, format!("unexpected token {other:?}")),
        }
    }
}

fn negate_expr(e: Expr) -> Expr {
    match e {
        Expr::Poly(p) => Expr::Poly(p.neg()),
        Expr::Derivation(d) => Expr::Derivation(d.scale(&-GaussianRational::from_int(1))),
    }
}

/// Parse `src`, taking generators from a leading declaration preamble when
/// present and from `ctx` otherwise.
pub fn parse_expression(ctx: Option<&Ctx>, src: &str) -> Result<(Ctx, Expr)> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, ctx: None };
    let declared = match p.preamble()? {
        Some(gens) => Some(Context::new(gens).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })?),
        None => None,
    };
    let ctx = match (&declared, ctx) {
        (Some(c), _) => c.clone(),
        (None, Some(c)) => c.clone(),
        (None, None) => return Err(Error::Parse { pos: 0, msg: "no context: add a preamble like `even z; odd zeta;`".into() }),
    };
    p.ctx = Some(&ctx);
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err(p.pos(), "trailing input");
    }
    Ok((ctx.clone(), e))
}

pub fn parse_poly(ctx: &Ctx, src: &str) -> Result<SuperPoly> {
    match parse_expression(Some(ctx), src)? {
        (_, Expr::Poly(p)) => Ok(p),
        (_, Expr::Derivation(_)) => Err(Error::Parse { pos: 0, msg: "expected a polynomial, found a derivation".into() }),
    }
}

pub fn parse_derivation(ctx: &Ctx, src: &str) -> Result<Derivation> {
    match parse_expression(Some(ctx), src)? {
        (_, Expr::Derivation(d)) => Ok(d),
        (c, Expr::Poly(p)) if p.is_zero() => Ok(Derivation::zero(&c, Parity::Even)),
        (_, Expr::Poly(_)) => Err(Error::Parse { pos: 0, msg: "expected a derivation, found a polynomial".into() }),
    }
}

/// Parse a one-form written as `dx*(f) + dy*(g) - …`.
pub fn parse_one_form(ctx: &Ctx, src: &str) -> Result<OneForm> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, ctx: Some(ctx) };
    let mut coeffs = vec![SuperPoly::zero(ctx); ctx.len()];
    if matches!(p.peek(), Tok::Int(n) if n.is_zero()) {
        p.bump();
    } else {
        let mut first = true;
        loop {
            let negate = match p.peek() {
                Tok::Minus => true,
                Tok::Plus if !first => false,
                Tok::End if !first => break,
                _ if first => false,
                _ => return p.err(p.pos(), "expected `+` or `-`"),
            };
            if !first || matches!(p.peek(), Tok::Minus) {
                p.bump();
            }
            first = false;
            let (tok, pos) = p.bump();
            let idx = match &tok {
                Tok::Ident(s) => s.strip_prefix('d').and_then(|n| ctx.index_of(n)),
                _ => None,
            };
            let Some(idx) = idx else {
                return p.err(pos, "expected a differential `dx`");
            };
            p.expect(Tok::Star, "`*` after differential")?;
            let coeff = match p.factor()? {
                Expr::Poly(c) => c,
                Expr::Derivation(_) => return p.err(pos, "one-form coefficient must be a polynomial"),
            };
            let coeff = if negate { coeff.neg() } else { coeff };
            coeffs[idx] = coeffs[idx].add(&coeff)?;
        }
    }
    if *p.peek() != Tok::End {
        return p.err(p.pos(), "trailing input");
    }
    OneForm::new(ctx, coeffs)
}

/// Parse a bare declaration preamble such as `unit v; odd xi, eta;`.
pub fn parse_context(src: &str) -> Result<Ctx> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, ctx: None };
    let gens = p.preamble()?.unwrap_or_default();
    if *p.peek() != Tok::End {
        return p.err(p.pos(), "expected only declarations");
    }
    Context::new(gens).map_err(|e| Error::Parse { pos: 0, msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Ctx {
        parse_context("unit v; even z; odd zeta, eta;").unwrap()
    }

    #[test]
    fn parses_polynomials() {
        let c = ctx();
        let p = parse_poly(&c, "zeta*eta + 2*v^-1").unwrap();
        assert_eq!(p.to_string(), "1*zeta*eta + 2*v^-1");
        let q = parse_poly(&c, "-1*zeta*eta + 2*v^-1").unwrap();
        assert_eq!(q.to_string(), "-1*zeta*eta + 2*v^-1");
        assert_eq!(parse_poly(&c, "eta*zeta").unwrap(), q.sub(&parse_poly(&c, "2*v^-1").unwrap()).unwrap());
    }

    #[test]
    fn odd_square_normalises_to_zero() {
        let c = ctx();
        assert!(parse_poly(&c, "zeta^2").unwrap().is_zero());
        assert!(parse_poly(&c, "zeta*zeta").unwrap().is_zero());
    }

    #[test]
    fn parses_derivations_with_preamble() {
        let (c, e) = parse_expression(None, "even z; odd zeta; d/dzeta + zeta*d/dz").unwrap();
        let Expr::Derivation(d) = e else { panic!("expected derivation") };
        assert_eq!(d.parity(), Parity::Odd);
        assert_eq!(d.apply(&SuperPoly::var(&c, "z").unwrap()).unwrap(), SuperPoly::var(&c, "zeta").unwrap());
        assert_eq!(d.to_string(), "1*zeta*d/dz + 1*d/dzeta");
    }

    #[test]
    fn complex_coefficients() {
        let c = ctx();
        let p = parse_poly(&c, "(1+2*i)*z - 1/2*i*zeta*eta + 3/4").unwrap();
        assert_eq!(p.to_string(), "(1+2*i)*z + 3/4 - 1/2*i*zeta*eta");
        assert_eq!(parse_poly(&c, &p.to_string()).unwrap(), p);
        assert_eq!(parse_poly(&c, "(v + zeta*eta)^-1").unwrap().mul(&parse_poly(&c, "v + zeta*eta").unwrap()).unwrap(), SuperPoly::one(&c));
    }

    #[test]
    fn errors_carry_positions() {
        let c = ctx();
        assert!(matches!(parse_poly(&c, "z + q"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly(&c, "z^-1"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly(&c, "z $ 1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_derivation(&c, "d/dzeta + d/dz"), Err(Error::Parse { pos: 8, .. })));
        assert!(matches!(parse_derivation(&c, "(1 + zeta)*d/dz"), Err(Error::Parse { .. })));
        assert!(matches!(parse_derivation(&c, "d/dz*z"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&c, "1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expression(None, "z"), Err(Error::Parse { .. })));
    }

    #[test]
    fn one_forms_round_trip() {
        let c = ctx();
        let w = parse_one_form(&c, "dz*(1) + dzeta*(-1*zeta)").unwrap();
        assert_eq!(w.to_string(), "dz*(1) + dzeta*(-1*zeta)");
        assert_eq!(parse_one_form(&c, "- dv*(eta) - dz*(2)").unwrap().to_string(), "dv*(-1*eta) + dz*(-2)");
        assert!(parse_one_form(&c, "0").unwrap().is_zero());
        assert!(parse_one_form(&c, "dq*(1)").is_err());
    }

    #[test]
    fn primed_and_d_named_generators() {
        let c = parse_context("unit d; odd beta, gamma; unit d';").unwrap();
        let p = parse_poly(&c, "d*d' + beta*d^-1*gamma").unwrap();
        assert_eq!(parse_poly(&c, &p.to_string()).unwrap(), p);
        let dd = parse_derivation(&c, "d*d/dd").unwrap();
        assert_eq!(dd.to_string(), "1*d*d/dd");
    }
}
