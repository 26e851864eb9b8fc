//! Catalog of the named objects: group laws, vector fields, maps, matrix
//! families, Lie algebras, real spans and the contact form.
//!
//! Every entry carries an anchor: a verbatim quote of the display it encodes.

use std::fmt;
use std::sync::OnceLock;

use crate::conj::ConjugationMode;
use crate::context::{Context, Ctx, Generator, Parity};
use crate::error::{Error, Result};
use crate::group::GroupPresentation;
use crate::lie::{LieSuperAlgebra, RealSpan};
use crate::maps::{Derivation, Morphism, OneForm};
use crate::matrix::{BlockFormat, MatrixFamily, SuperMatrix};
use crate::parse::{parse_context, parse_derivation, parse_one_form, parse_poly};
use crate::poly::SuperPoly;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Group,
    Derivation,
    Morphism,
    MatrixShape,
    LieAlgebra,
    Span,
    OneForm,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Group => "group",
            Kind::Derivation => "derivation",
            Kind::Morphism => "morphism",
            Kind::MatrixShape => "matrix-shape",
            Kind::LieAlgebra => "lie-algebra",
            Kind::Span => "span",
            Kind::OneForm => "one-form",
        })
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Group(GroupPresentation),
    Derivation(Derivation),
    /// A pullback with its certified inverse.
    Morphism {
        map: Morphism,
        inverse: Morphism,
    },
    /// `σ(M) = φ(conj M)` on the family, in one conjugation mode.
    Involution {
        template: SuperMatrix,
        mode: ConjugationMode,
    },
    MatrixShape(MatrixFamily),
    LieAlgebra(LieSuperAlgebra),
    Span(RealSpan),
    OneForm(OneForm),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Group(_) => Kind::Group,
            Value::Derivation(_) => Kind::Derivation,
            Value::Morphism { .. } | Value::Involution { .. } => Kind::Morphism,
            Value::MatrixShape(_) => Kind::MatrixShape,
            Value::LieAlgebra(_) => Kind::LieAlgebra,
            Value::Span(_) => Kind::Span,
            Value::OneForm(_) => Kind::OneForm,
        }
    }

    /// Text rendering; multi-line for groups, maps and tables.
    pub fn render(&self) -> String {
        match self {
            Value::Group(g) => {
                let mut out = format!("coords {}\n", g.coords().describe());
                for (x, m) in g.coords().generators().iter().zip(g.mult()) {
                    out.push_str(&format!("mult {} = {m}\n", x.name));
                }
                let unit: Vec<String> = g.unit().iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("unit ({})\n", unit.join(", ")));
                for (x, m) in g.coords().generators().iter().zip(g.inv()) {
                    out.push_str(&format!("inv {} = {m}\n", x.name));
                }
                out
            }
            Value::Derivation(d) => format!("{d}\n"),
            Value::Morphism { map, inverse } => format!("map {map}\ninverse {inverse}\n"),
            Value::Involution { template, mode } => match sigma_matrix(template, *mode) {
                Ok(m) => format!("[{mode}] sigma{template} = {m}\n"),
                Err(e) => format!("[{mode}] error: {e}\n"),
            },
            Value::MatrixShape(f) => format!("{} {}\n", f.template().format(), f.template()),
            Value::LieAlgebra(a) => a.render_table(),
            Value::Span(s) => {
                let mut out = String::new();
                for (n, v) in s.names().iter().zip(s.vectors()) {
                    out.push_str(&format!("{n} = {}\n", s.ambient().render(v)));
                }
                out
            }
            Value::OneForm(w) => format!("{w}\n"),
        }
    }

    /// Re-parse every expression in the rendering and compare with the value.
    pub fn round_trip(&self) -> Result<()> {
        fn poly(p: &SuperPoly) -> Result<()> {
            let back = parse_poly(p.context(), &p.to_string())?;
            if back != *p {
                return Err(Error::Malformed(format!("`{p}` re-parses as `{back}`")));
            }
            Ok(())
        }
        fn matrix(m: &SuperMatrix) -> Result<()> {
            m.entries().iter().flatten().try_for_each(poly)
        }
        match self {
            Value::Group(g) => g.mult().iter().chain(g.inv()).try_for_each(poly),
            Value::Derivation(d) => {
                let back = parse_derivation(d.context(), &d.to_string())?;
                if back != *d {
                    return Err(Error::Malformed(format!("`{d}` re-parses as `{back}`")));
                }
                Ok(())
            }
            Value::Morphism { map, inverse } => map.images().iter().chain(inverse.images()).try_for_each(poly),
            Value::Involution { template, mode } => matrix(&sigma_matrix(template, *mode)?),
            Value::MatrixShape(f) => matrix(f.template()),
            Value::OneForm(w) => {
                let back = parse_one_form(w.context(), &w.to_string())?;
                if back != *w {
                    return Err(Error::Malformed(format!("`{w}` re-parses as `{back}`")));
                }
                Ok(())
            }
            Value::LieAlgebra(_) | Value::Span(_) => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub id: String,
    pub value: Value,
    pub anchor: String,
}

impl RegistryEntry {
    pub fn kind(&self) -> Kind {
        self.value.kind()
    }
}

#[derive(Debug)]
pub struct Registry {
    contexts: Vec<(String, Ctx)>,
    entries: Vec<RegistryEntry>,
}

impl Registry {
    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn contexts(&self) -> &[(String, Ctx)] {
        &self.contexts
    }

    pub fn lookup(&self, id: &str) -> Result<&RegistryEntry> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| Error::NotFound(format!("registry entry `{id}`")))
    }

    pub fn context(&self, id: &str) -> Result<Ctx> {
        self.contexts.iter().find(|(n, _)| n == id).map(|(_, c)| c.clone()).ok_or_else(|| Error::NotFound(format!("context `{id}`")))
    }

    pub fn group(&self, id: &str) -> Result<&GroupPresentation> {
        match &self.lookup(id)?.value {
            Value::Group(g) => Ok(g),
            _ => Err(Error::NotFound(format!("group `{id}`"))),
        }
    }

    pub fn derivation(&self, id: &str) -> Result<&Derivation> {
        match &self.lookup(id)?.value {
            Value::Derivation(d) => Ok(d),
            _ => Err(Error::NotFound(format!("derivation `{id}`"))),
        }
    }

    pub fn morphism(&self, id: &str) -> Result<(&Morphism, &Morphism)> {
        match &self.lookup(id)?.value {
            Value::Morphism { map, inverse } => Ok((map, inverse)),
            _ => Err(Error::NotFound(format!("morphism `{id}`"))),
        }
    }

    pub fn involution(&self, id: &str) -> Result<(&SuperMatrix, ConjugationMode)> {
        match &self.lookup(id)?.value {
            Value::Involution { template, mode } => Ok((template, *mode)),
            _ => Err(Error::NotFound(format!("involution `{id}`"))),
        }
    }

    pub fn family(&self, id: &str) -> Result<&MatrixFamily> {
        match &self.lookup(id)?.value {
            Value::MatrixShape(f) => Ok(f),
            _ => Err(Error::NotFound(format!("matrix shape `{id}`"))),
        }
    }

    pub fn lie_algebra(&self, id: &str) -> Result<&LieSuperAlgebra> {
        match &self.lookup(id)?.value {
            Value::LieAlgebra(a) => Ok(a),
            _ => Err(Error::NotFound(format!("Lie superalgebra `{id}`"))),
        }
    }

    pub fn span(&self, id: &str) -> Result<&RealSpan> {
        match &self.lookup(id)?.value {
            Value::Span(s) => Ok(s),
            _ => Err(Error::NotFound(format!("span `{id}`"))),
        }
    }

    pub fn one_form(&self, id: &str) -> Result<&OneForm> {
        match &self.lookup(id)?.value {
            Value::OneForm(w) => Ok(w),
            _ => Err(Error::NotFound(format!("one-form `{id}`"))),
        }
    }

    pub fn anchor(&self, id: &str) -> String {
        self.lookup(id).map(|e| e.anchor.clone()).unwrap_or_default()
    }

    /// `id  kind  anchor`, one line per entry.
    pub fn list(&self) -> String {
        let w = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{:<w$}  {:<12}  \"{}\"\n", e.id, e.kind().to_string(), e.anchor));
        }
        out
    }

    /// Every rendering, in registry order.
    pub fn render_all(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("== {} ({})\n{}", e.id, e.kind(), e.value.render()));
        }
        out
    }

    /// The shared instance.
    pub fn global() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(build_registry)
    }
}

/// `φ(a, β; γ, d) = (d⁻¹, −i a⁻² γ; −i a⁻² β, a⁻¹)` on any (1|1) matrix.
pub fn phi_matrix(m: &SuperMatrix) -> Result<SuperMatrix> {
    if m.format() != &BlockFormat::square(1, 1) {
        return Err(Error::Shape(format!("phi acts on (1|1) matrices, got {}", m.format())));
    }
    let ctx = m.context();
    let (a, b, g, d) = (m.entry(0, 0), m.entry(0, 1), m.entry(1, 0), m.entry(1, 1));
    let a_inv = a.invert_even()?;
    let mi = SuperPoly::constant(ctx, -GaussianRational::i());
    let a_inv2 = a_inv.mul(&a_inv)?.mul(&mi)?;
    SuperMatrix::new(ctx, BlockFormat::square(1, 1), vec![vec![d.invert_even()?, a_inv2.mul(g)?], vec![a_inv2.mul(b)?, a_inv]])
}

/// `σ(M) = φ(conj M)`.
pub fn sigma_matrix(m: &SuperMatrix, mode: ConjugationMode) -> Result<SuperMatrix> {
    phi_matrix(&m.conjugate(mode)?)
}

fn ctx(src: &str) -> Ctx {
    parse_context(src).expect("static context")
}

fn p(c: &Ctx, s: &str) -> SuperPoly {
    parse_poly(c, s).expect("static polynomial")
}

fn family(c: &Ctx, format: BlockFormat, rows: &[&[&str]], readout: &[(usize, usize)]) -> MatrixFamily {
    let entries = rows.iter().map(|r| r.iter().map(|s| p(c, s)).collect()).collect();
    MatrixFamily::new(SuperMatrix::new(c, format, entries).expect("static matrix"), readout.to_vec()).expect("static family")
}

fn morphism(src: &Ctx, images: &[&str]) -> Morphism {
    Morphism::new(src, src, images.iter().map(|s| p(src, s)).collect()).expect("static morphism")
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// The `(a, β; γ, d)` coordinates of SL(1|1) with barred conjugate partners.
fn sl11_conj_context() -> Ctx {
    Context::new(vec![
        Generator::unit("d").with_partner("dbar"),
        Generator::odd("beta").with_partner("betabar"),
        Generator::odd("gamma").with_partner("gammabar"),
        Generator::unit("dbar").with_partner("d"),
        Generator::odd("betabar").with_partner("beta"),
        Generator::odd("gammabar").with_partner("gamma"),
    ])
    .expect("static context")
}

/// `(z, ζ)` with the scaling parameters `r` (so `a = r²`) and `b`.
fn c11_param_context() -> Ctx {
    Context::new(vec![
        Generator::even("z"),
        Generator::odd("zeta"),
        Generator::unit("r").as_parameter(),
        Generator::even("b").as_parameter(),
    ])
    .expect("static context")
}

pub fn build_registry() -> Registry {
    let c11x = ctx("unit w; odd eta;");
    let c11 = ctx("even z; odd zeta;");
    let c11p = c11_param_context();
    let sl11 = ctx("unit v; odd xi, eta;");
    let c12 = ctx("even z; odd zeta, chi;");
    let susy2 = ctx("even z; odd zeta1, zeta2;");
    let sl11r = ctx("unit d; odd beta, gamma;");
    let sl11c = sl11_conj_context();
    let xctx = ctx("unit x; odd xi;");
    let xhat = ctx("unit y; odd eta;");
    let mgrp = ctx("unit c; even d;");
    let stab = ctx("unit c; even d; odd gamma;");

    let mut entries = Vec::new();
    let mut add = |id: &str, value: Value, anchor: &str| {
        entries.push(RegistryEntry { id: id.into(), value, anchor: anchor.into() });
    };

    let group = |c: &Ctx, mult: &[&str], unit: &[i64], inv: &[&str]| {
        Value::Group(GroupPresentation::parse(c, mult, unit, inv).expect("static group law"))
    };
    add(
        "grp.mult.c11x",
        group(&c11x, &["w*w' + eta*eta'", "w*eta' + eta*w'"], &[1, 0], &["w^-1", "-1*w^-2*eta"]),
        "(ww'+\\eta\\eta', w\\eta'+\\eta w')",
    );
    add(
        "grp.add.c11",
        group(&c11, &["z + z' + zeta*zeta'", "zeta + zeta'"], &[0, 0], &["-1*z", "-1*zeta"]),
        "(z+z'+\\zeta\\zeta', \\zeta+\\zeta')",
    );

    // The inverse of the (v, ξ, η) law is not displayed; read it off the
    // matrix inverse of the SL(1|1) family.
    let sl11_family = family(&sl11, BlockFormat::square(1, 1), &[&["v + xi*v^-1*eta", "xi"], &["eta", "v"]], &[(1, 1), (0, 1), (1, 0)]);
    let sl11_inv = sl11_family.inverse_closure().expect("SL(1|1) inverse").composed.images().to_vec();
    let sl11_doubled = sl11.copies(2).expect("doubled context");
    let sl11_mult = ["v*v' + eta*xi'", "v*xi' + xi*v' + xi*v^-1*eta*xi'", "eta*v' + v*eta' + eta*xi'*v'^-1*eta'"]
        .iter()
        .map(|s| p(&sl11_doubled, s))
        .collect();
    add(
        "grp.mult.sl11",
        Value::Group(GroupPresentation::new(&sl11, sl11_mult, vec![g(1), g(0), g(0)], sl11_inv).expect("static group law")),
        "(vv'+\\eta\\xi'",
    );
    add(
        "grp.add.c12",
        group(&c12, &["z + z' + zeta*chi'", "zeta + zeta'", "chi + chi'"], &[0, 0, 0], &["-1*z + zeta*chi", "-1*zeta", "-1*chi"]),
        "(z,\\zeta,\\chi)\\cdot(z',\\zeta',\\chi')&=(z+z'+\\zeta\\chi', \\zeta+\\zeta',\\chi+\\chi')",
    );

    let der = |c: &Ctx, s: &str| Value::Derivation(parse_derivation(c, s).expect("static derivation"));
    add("der.D.c11", der(&c11, "d/dzeta + zeta*d/dz"), "D=\\partial_\\zeta+\\zeta \\partial_z");
    add("der.D1.susy2", der(&susy2, "d/dzeta1 + zeta2*d/dz"), "D_1=\\partial_{\\zeta_1}+\\zeta_2 \\partial_z");
    add("der.D2.susy2", der(&susy2, "d/dzeta2 + zeta1*d/dz"), "D_2=\\partial_{\\zeta_2}+\\zeta_1 \\partial_z");
    add("der.D1.sl11", der(&sl11, "v*d/deta"), "D_1&=(d \\ell_{(u,\\mu,\\nu)})_{(1,0,0)}\\mathcal{E}_1=v \\partial_\\eta");
    add(
        "der.D2.sl11",
        der(&sl11, "-1*eta*d/dv + (v + xi*v^-1*eta)*d/dxi"),
        "(d \\ell_{(u,\\mu,\\nu)})_{(1,0,0)}\\mathcal{E}_2=-\\eta \\partial_v+",
    );
    add("der.E.sl11", der(&sl11, "v*d/dv + xi*d/dxi + eta*d/deta"), "E&=(d \\ell_{(u,\\mu,\\nu)})_{(1,0,0)}e_1=v \\partial_v+");
    add("der.U1.c11", der(&c11, "2*z*d/dz + zeta*d/dzeta"), "U_1=2z\\partial_z+ \\zeta \\partial_\\zeta");
    add("der.U2.c11", der(&c11, "d/dz"), "U_2=\\partial_z");
    add("der.V.c11", der(&c11, "zeta*d/dz - d/dzeta"), "V=\\zeta \\partial_z - \\partial_\\zeta");

    add(
        "mor.F.c11",
        Value::Morphism {
            map: morphism(&c11p, &["r^2*z + b", "r*zeta", "r", "b"]),
            inverse: morphism(&c11p, &["r^-2*z - r^-2*b", "r^-1*zeta", "r", "b"]),
        },
        "F(z,\\zeta)=(az+b, \\sqrt{a} \\zeta)",
    );
    // φ² flips the sign of the odd coordinates, so φ⁻¹ = φ followed by that flip.
    let a_inv = "(d + beta*d^-1*gamma)^-1";
    let a_inv2 = "(d + beta*d^-1*gamma)^-2";
    let phi = morphism(&sl11r, &[a_inv, &format!("-1*i*{a_inv2}*gamma"), &format!("-1*i*{a_inv2}*beta")]);
    let flip = morphism(&sl11r, &["d", "-1*beta", "-1*gamma"]);
    let phi_inv = phi.then(&flip).expect("composable");
    add(
        "mor.phi.sl11",
        Value::Morphism { map: phi, inverse: phi_inv },
        "\\phi\\begin{pmatrix} a & \\beta \\\\ \\gamma  & d \\end{pmatrix} \\, = \\,",
    );
    let sl11c_template = SuperMatrix::new(
        &sl11c,
        BlockFormat::square(1, 1),
        vec![vec![p(&sl11c, "d + beta*d^-1*gamma"), p(&sl11c, "beta")], vec![p(&sl11c, "gamma"), p(&sl11c, "d")]],
    )
    .expect("static matrix");
    for mode in ConjugationMode::ALL {
        add(&format!("inv.sigma.{mode}"), Value::Involution { template: sl11c_template.clone(), mode }, "\\sigma=c \\circ \\phi");
    }

    add("mat.sl11", Value::MatrixShape(sl11_family), "v^{-1}(u-\\xi v^{-1}\\eta)=1");
    add(
        "mat.sl11.real",
        Value::MatrixShape(family(
            &sl11r,
            BlockFormat::square(1, 1),
            &[&["d + beta*d^-1*gamma", "beta"], &["gamma", "d"]],
            &[(1, 1), (0, 1), (1, 0)],
        )),
        "\\sigma\\begin{pmatrix} a & \\beta \\\\ \\gamma  & d \\end{pmatrix}",
    );
    add(
        "mat.c12",
        Value::MatrixShape(family(
            &c12,
            BlockFormat::square(2, 1),
            &[&["1", "z", "zeta"], &["0", "1", "0"], &["0", "chi", "1"]],
            &[(0, 1), (0, 2), (2, 1)],
        )),
        "\\begin{pmatrix} 1 & z'+z+\\zeta\\chi' & \\zeta+\\zeta' \\\\ 0 & 1 & 0 \\\\ 0 &",
    );
    add(
        "mat.X",
        Value::MatrixShape(family(&xctx, BlockFormat::square(1, 1), &[&["x", "xi"], &["xi", "x"]], &[(0, 0), (0, 1)])),
        "\\begin{pmatrix} x & \\xi \\\\ \\xi & x \\end{pmatrix}",
    );
    add(
        "mat.Xhat",
        Value::MatrixShape(family(&xhat, BlockFormat::square(1, 1), &[&["y", "eta"], &["-1*eta", "y"]], &[(0, 0), (0, 1)])),
        "\\begin{pmatrix} y & \\eta \\\\ -\\eta & y \\end{pmatrix}",
    );
    add(
        "mat.mgrp",
        Value::MatrixShape(family(
            &mgrp,
            BlockFormat::square(2, 1),
            &[&["c", "d", "0"], &["0", "c^-1", "0"], &["0", "0", "1"]],
            &[(0, 0), (0, 1)],
        )),
        "\\begin{pmatrix} c & d & 0\\\\ 0 & c^{-1} & 0 \\\\",
    );
    let stab_family = family(
        &stab,
        BlockFormat::square(2, 1),
        &[&["c", "d", "gamma"], &["0", "c^-1", "0"], &["0", "c^-1*gamma", "1"]],
        &[(0, 0), (0, 1), (0, 2)],
    );
    let stab_anchor = "stabilizer subsupergroup in $\\mathrm{SpO}(2|1)$";
    add(
        "grp.stab.infty",
        Value::Group(GroupPresentation::from_family(&stab_family, vec![g(1), g(0), g(0)]).expect("stabilizer law")),
        stab_anchor,
    );
    add("mat.stab.infty", Value::MatrixShape(stab_family), stab_anchor);

    let sl = LieSuperAlgebra::from_table(&["C", "E", "F"], &[Parity::Even, Parity::Odd, Parity::Odd], &[(1, 2, vec![g(1), g(0), g(0)])])
        .expect("sl(1|1)");
    let i = GaussianRational::i();
    let ic = vec![i.clone(), g(0), g(0)];
    let printed = RealSpan::new(&sl, &["iC", "U", "V"], vec![ic.clone(), vec![g(0), g(1), i.clone()], vec![g(0), i.clone(), g(-1)]])
        .expect("real-independent span");
    let variant =
        RealSpan::new(&sl, &["iC", "U", "V"], vec![ic, vec![g(0), g(1), i.clone()], vec![g(0), g(1), -i]]).expect("real-independent span");
    add("lie.sl11", Value::LieAlgebra(sl), "[C,E]=[C,F]=[E,E]=[F,F]=0, \\qquad [E,F]=C");
    add("span.su11.printed", Value::Span(printed), "\\mathrm{su}(1|1)=\\mathrm{span}_\\mathbb{R} \\{ iC,U=E+iF,V=iE-F \\}");
    add("span.su11.variant", Value::Span(variant), "a unique real form of $\\mathrm{sl}(1|1)$ with compact");

    add("form.s.c11", Value::OneForm(parse_one_form(&c11p, "dz*(1) + dzeta*(-1*zeta)").expect("static one-form")), "s=dz-\\zeta d \\zeta");

    let contexts = [
        ("c11", c11),
        ("c11x", c11x),
        ("c11p", c11p),
        ("c12", c12),
        ("sl11", sl11),
        ("sl11r", sl11r),
        ("sl11c", sl11c),
        ("susy2", susy2),
        ("x", xctx),
        ("xhat", xhat),
        ("mgrp", mgrp),
        ("stab", stab),
    ]
    .into_iter()
    .map(|(n, c)| (n.to_string(), c))
    .collect();
    Registry { contexts, entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::check_inverse_pair;

    #[test]
    fn ids_are_unique_and_lookup_fails_cleanly() {
        let r = Registry::global();
        let mut ids: Vec<_> = r.entries().iter().map(|e| e.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), r.entries().len());
        assert!(matches!(r.lookup("missing"), Err(Error::NotFound(_))));
        assert_eq!(r.derivation("der.D.c11").unwrap().to_string(), "1*zeta*d/dz + 1*d/dzeta");
    }

    #[test]
    fn certified_inverses() {
        let r = Registry::global();
        for id in ["mor.F.c11", "mor.phi.sl11"] {
            let (f, inv) = r.morphism(id).unwrap();
            check_inverse_pair(f, inv).unwrap();
        }
    }

    #[test]
    fn sl11_inverse_from_matrix() {
        let g = Registry::global().group("grp.mult.sl11").unwrap();
        let rendered: Vec<String> = g.inv().iter().map(|p| p.to_string()).collect();
        assert_eq!(rendered, ["1*v^-1 - 1*v^-3*xi*eta", "-1*v^-2*xi", "-1*v^-2*eta"]);
    }

    #[test]
    fn renderings_round_trip() {
        for e in Registry::global().entries() {
            e.value.round_trip().unwrap_or_else(|err| panic!("{}: {err}", e.id));
        }
    }

    #[test]
    fn construction_is_deterministic() {
        assert_eq!(build_registry().render_all(), build_registry().render_all());
    }
}
