//! Named audit suites over the registry, with text and JSON reports.
//!
//! A check ends in `pass`, `fail` (an identity the engine should satisfy
//! broke) or `discrepancy` (the engine result disagrees with a printed value).
//! Discrepancy witnesses always carry the computed value.

use std::fmt::Write as _;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conj::ConjugationMode;
use crate::error::{Error, Result};
use crate::group::{structure_constants_from_fields, susy_scaling_check, GroupPresentation, Side, TangentVector};
use crate::lie::{render_combination, structure_constants, LieSuperAlgebra, Vector};
use crate::linalg::solve;
use crate::maps::{conjugate_derivation, pullback_one_form, Derivation};
use crate::matrix::{matrix_bracket, MatrixFamily, SuperMatrix};
use crate::parse::{parse_derivation, parse_poly};
use crate::poly::{Monomial, SuperPoly};
use crate::registry::{phi_matrix, sigma_matrix, Registry};
use crate::scalar::GaussianRational;
use crate::solver::{kernel_of_derivation, odd_centralizer, Window};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Side convention used for invariant fields, stated in every text report.
pub const CONVENTION: &str = "left-invariant fields X satisfy (id x X) o mult* = mult* o X";

pub const SUITES: [&str; 7] = ["susy1", "susy2", "sl11-matrix", "incidence", "realform", "aut-c11", "stabilizer"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Discrepancy,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub witness: String,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub mode: String,
    pub version: String,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(out, "version: {}", self.version);
        let _ = writeln!(out, "mode: {}", self.mode);
        let _ = writeln!(out, "convention: {CONVENTION}");
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}", c.status.as_str(), c.name);
            let _ = writeln!(out, "    witness: {}", c.witness.replace('\n', "; "));
            let _ = writeln!(out, "    anchor: \"{}\"", c.anchor);
        }
        if !self.checks.is_empty() {
            let _ = writeln!(
                out,
                "summary: {} pass, {} fail, {} discrepancy",
                self.count(Status::Pass),
                self.count(Status::Fail),
                self.count(Status::Discrepancy)
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(src: &str) -> Result<Report> {
        serde_json::from_str(src).map_err(|e| Error::Malformed(format!("report JSON: {e}")))
    }
}

type Outcome = (Status, String);
type Run = fn(&Registry, ConjugationMode) -> Result<Outcome>;

struct Check {
    name: &'static str,
    anchor: &'static str,
    run: Run,
}

const fn check(name: &'static str, anchor: &'static str, run: Run) -> Check {
    Check { name, anchor, run }
}

fn verdict(ok: bool, witness: String) -> Result<Outcome> {
    Ok((if ok { Status::Pass } else { Status::Fail }, witness))
}

fn printed(agrees: bool, witness: String) -> Result<Outcome> {
    Ok((if agrees { Status::Pass } else { Status::Discrepancy }, witness))
}

fn suite_checks(name: &str) -> Result<&'static [Check]> {
    Ok(match name {
        "susy1" => SUSY1,
        "susy2" => SUSY2,
        "sl11-matrix" => SL11_MATRIX,
        "incidence" => INCIDENCE,
        "realform" => REALFORM,
        "aut-c11" => AUT_C11,
        "stabilizer" => STABILIZER,
        _ => return Err(Error::UnknownSuite(name.to_string())),
    })
}

/// Run a suite (or `all`) against the shared registry.
pub fn run_suite(name: &str, mode: ConjugationMode) -> Result<Report> {
    let checks: Vec<&Check> = if name == "all" {
        SUITES.iter().map(|s| suite_checks(s)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect()
    } else {
        suite_checks(name)?.iter().collect()
    };
    let reg = Registry::global();
    let checks = checks
        .par_iter()
        .map(|c| {
            let (status, witness) = (c.run)(reg, mode).unwrap_or_else(|e| (Status::Fail, format!("error: {e}")));
            CheckResult { name: c.name.to_string(), status, witness, anchor: c.anchor.to_string() }
        })
        .collect();
    Ok(Report { suite: name.to_string(), mode: mode.to_string(), version: VERSION.to_string(), checks })
}

// ---------------------------------------------------------------- helpers

fn axioms(reg: &Registry, id: &str) -> Result<Outcome> {
    let checks = reg.group(id)?.check_group_axioms()?;
    let mut parts = Vec::new();
    for c in &checks {
        if c.holds() {
            parts.push(format!("{} holds", c.axiom));
        } else {
            let d: Vec<String> = c.defects.iter().map(|(x, p)| format!("{x}: {p}")).collect();
            parts.push(format!("{} fails ({})", c.axiom, d.join(", ")));
        }
    }
    verdict(checks.iter().all(|c| c.holds()), parts.join("; "))
}

fn fields(g: &GroupPresentation, side: Side) -> Result<Vec<Derivation>> {
    g.coords().generators().iter().map(|x| g.invariant_field(&TangentVector::along(g.coords(), &x.name)?, side)).collect()
}

fn invariance_summary(g: &GroupPresentation, x: &Derivation) -> Result<String> {
    let mut parts = Vec::new();
    for side in Side::BOTH {
        parts.push(format!("{side}-invariant: {}", if g.invariance_check(x, side)? { "yes" } else { "no" }));
    }
    Ok(parts.join(", "))
}

fn table_entry(a: &LieSuperAlgebra, x: &str, y: &str) -> Result<Vector> {
    let (i, j) = (a.index_of(x)?, a.index_of(y)?);
    Ok(a.structure(i, j).to_vec())
}

fn vec_of(a: &LieSuperAlgebra, terms: &[(&str, i64)]) -> Result<Vector> {
    let mut v = vec![GaussianRational::from_int(0); a.dim()];
    for &(n, c) in terms {
        v[a.index_of(n)?] = GaussianRational::from_int(c);
    }
    Ok(v)
}

fn monomial_coords(p: &SuperPoly, index: &mut Vec<Monomial>) -> Vec<(usize, GaussianRational)> {
    p.terms()
        .map(|(m, c)| {
            let k = index.iter().position(|n| n == m).unwrap_or_else(|| {
                index.push(m.clone());
                index.len() - 1
            });
            (k, c.clone())
        })
        .collect()
}

/// Is `target` a linear combination of `basis`?
fn in_span(basis: &[SuperPoly], target: &SuperPoly) -> bool {
    let mut index = Vec::new();
    let sparse: Vec<_> = basis.iter().map(|b| monomial_coords(b, &mut index)).collect();
    let t = monomial_coords(target, &mut index);
    let dense = |s: &[(usize, GaussianRational)]| {
        let mut v = vec![GaussianRational::from_int(0); index.len()];
        for (k, c) in s {
            v[*k] = c.clone();
        }
        v
    };
    let cols: Vec<Vector> = sparse.iter().map(|s| dense(s)).collect();
    solve(&cols, &dense(&t)).is_some()
}

fn render_list<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn one() -> GaussianRational {
    GaussianRational::from_int(1)
}

fn zero() -> GaussianRational {
    GaussianRational::from_int(0)
}

fn const_matrix(rows: &[&[i64]]) -> Vec<Vec<GaussianRational>> {
    rows.iter().map(|r| r.iter().map(|&c| GaussianRational::from_int(c)).collect()).collect()
}

fn render_const(m: &[Vec<GaussianRational>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| render_list(r)).collect();
    format!("[{}]", rows.join("; "))
}

/// Structure constants of constant matrices, solved in their own span.
fn matrix_algebra(names: &[&str], tangents: &[(crate::context::Parity, Vec<Vec<GaussianRational>>)]) -> Result<LieSuperAlgebra> {
    let n = tangents.first().map(|t| t.1.len()).unwrap_or(0);
    let parities: Vec<_> = tangents.iter().map(|t| t.0).collect();
    structure_constants(
        names,
        &parities,
        tangents,
        |(_, m)| m.iter().flatten().cloned().enumerate().collect(),
        n * n,
        |(pa, a), (pb, b)| Ok((*pa + *pb, matrix_bracket(a, *pa, b, *pb))),
        |(_, m)| render_const(m),
    )
}

fn closure_witness(fam: &MatrixFamily) -> Result<(bool, String)> {
    let prod = fam.product_closure()?;
    let inv = fam.inverse_closure()?;
    let ok = prod.closed() && inv.closed();
    let mut w =
        format!("product params ({}); inverse params ({})", render_list(prod.composed.images()), render_list(inv.composed.images()));
    if !prod.closed() {
        w.push_str(&format!("; product defect {}", prod.defect));
    }
    if !inv.closed() {
        w.push_str(&format!("; inverse defect {}", inv.defect));
    }
    Ok((ok, w))
}

fn same_images(a: &[SuperPoly], b: &[SuperPoly]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (x, y) in a.iter().zip(b) {
        if !x.with_context(y.context())?.sub(y)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

// ------------------------------------------------------------------ susy1

const LAW1_MULT: &str = "(ww'+\\eta\\eta', w\\eta'+\\eta w')";
const LAW1_ADD: &str = "(z+z'+\\zeta\\zeta', \\zeta+\\zeta')";
const N1_LIE: &str = "\\mathrm{Lie}(X)=\\langle Z,C \\rangle, \\quad [Z,Z]=0";
const D_C11: &str = "D=\\partial_\\zeta+\\zeta \\partial_z";

static SUSY1: &[Check] = &[
    check("susy1.mult.axioms", LAW1_MULT, |r, _| axioms(r, "grp.mult.c11x")),
    check("susy1.add.axioms", LAW1_ADD, |r, _| axioms(r, "grp.add.c11")),
    check("susy1.mult.fields", LAW1_MULT, |r, _| {
        let g = r.group("grp.mult.c11x")?;
        let f = fields(g, Side::Left)?;
        let ctx = g.coords();
        let e = parse_derivation(ctx, "w*d/dw + eta*d/deta")?;
        let z = parse_derivation(ctx, "-1*eta*d/dw + w*d/deta")?;
        let ok = f[0] == e && f[1] == z;
        verdict(ok, format!("left fields: E = {}; Z = {}; Z {}", f[0], f[1], invariance_summary(g, &f[1])?))
    }),
    check("susy1.add.fields", D_C11, |r, _| {
        let g = r.group("grp.add.c11")?;
        let d = r.derivation("der.D.c11")?;
        let left = fields(g, Side::Left)?;
        let right = fields(g, Side::Right)?;
        let ok = &right[1] == d && g.invariance_check(d, Side::Right)? && !g.invariance_check(d, Side::Left)?;
        verdict(
            ok,
            format!("left field along zeta: {}; right field along zeta: {} (= D); D {}", left[1], right[1], invariance_summary(g, d)?),
        )
    }),
    check("susy1.add.DD", D_C11, |r, _| {
        let d = r.derivation("der.D.c11")?;
        let dd = d.bracket(d)?;
        let expect = parse_derivation(d.context(), "2*d/dz")?;
        verdict(dd == expect, format!("[D, D] = {dd}"))
    }),
    check("susy1.mult.ZZ", N1_LIE, |r, _| {
        let g = r.group("grp.mult.c11x")?;
        let z = &fields(g, Side::Left)?[1];
        let zz = z.bracket(z)?;
        printed(zz.is_zero(), format!("computed [Z, Z] = {zz} (= -2E for the left field Z = {z}); printed [Z, Z] = 0"))
    }),
    check("susy1.add.ZZ", N1_LIE, |r, _| {
        let g = r.group("grp.add.c11")?;
        let z = &fields(g, Side::Left)?[1];
        let zz = z.bracket(z)?;
        printed(zz.is_zero(), format!("computed [Z, Z] = {zz} for the left field Z = {z}; printed [Z, Z] = 0"))
    }),
];

// ------------------------------------------------------------------ susy2

const LAW2_MULT: &str = "(vv'+\\eta\\xi'";
const LAW2_ADD: &str = "(z+z'+\\zeta\\chi', \\zeta+\\zeta',\\chi+\\chi')";
const TABLE2: &str = "As one can readily check $[D_1,D_2]=-2E$";
const SUSY2_MODEL: &str = "Clearly $D_1^2=D_2^2=0$ and $[D_1,D_2]=2\\partial_z$";

fn sl11_fields(r: &Registry) -> Result<[Derivation; 3]> {
    Ok([r.derivation("der.D1.sl11")?.clone(), r.derivation("der.D2.sl11")?.clone(), r.derivation("der.E.sl11")?.clone()])
}

static SUSY2: &[Check] = &[
    check("susy2.mult.axioms", LAW2_MULT, |r, _| axioms(r, "grp.mult.sl11")),
    check("susy2.add.axioms", LAW2_ADD, |r, _| axioms(r, "grp.add.c12")),
    check("susy2.mult.fields", "v \\partial_\\eta", |r, _| {
        let g = r.group("grp.mult.sl11")?;
        let left = fields(g, Side::Left)?;
        let [d1, d2, e] = sl11_fields(r)?;
        let ok = left[0] == e && left[2] == d1 && left[1] == d2;
        let mut w = format!("left fields along (v, xi, eta): {}; {}; {}", left[0], left[1], left[2]);
        for (n, x) in [("D1", &d1), ("D2", &d2), ("E", &e)] {
            w.push_str(&format!("; {n} {}", invariance_summary(g, x)?));
        }
        verdict(ok, w)
    }),
    check("susy2.mult.table", TABLE2, |r, _| {
        let [d1, d2, e] = sl11_fields(r)?;
        let a = structure_constants_from_fields(&["D1", "D2", "E"], &[d1, d2, e])?;
        let got = table_entry(&a, "D1", "D2")?;
        let expect = vec_of(&a, &[("E", -2)])?;
        printed(
            got == expect,
            format!("computed [D1, D2] = {}; printed -2*E; table: {}", a.render(&got), a.render_table().trim_end().replace('\n', "; ")),
        )
    }),
    check("susy2.mult.self_brackets", "$[D_i,D_i]=0$", |r, _| {
        let [d1, d2, e] = sl11_fields(r)?;
        let a = structure_constants_from_fields(&["D1", "D2", "E"], &[d1, d2, e])?;
        let zero = vec![zero(); 3];
        let ok = table_entry(&a, "D1", "D1")? == zero
            && table_entry(&a, "D2", "D2")? == zero
            && table_entry(&a, "E", "D1")? == zero
            && table_entry(&a, "E", "D2")? == zero
            && a.check_super_jacobi();
        verdict(
            ok,
            format!("[D1, D1] = {}; [D2, D2] = {}; E central; Jacobi holds", a.render(a.structure(0, 0)), a.render(a.structure(1, 1))),
        )
    }),
    check("susy2.add.fields", LAW2_ADD, |r, _| {
        let g = r.group("grp.add.c12")?;
        let left = fields(g, Side::Left)?;
        let a = structure_constants_from_fields(&["Z0", "Q1", "Q2"], &left)?;
        let ok = a.check_super_jacobi() && left.iter().all(|x| g.invariance_check(x, Side::Left).unwrap_or(false));
        verdict(ok, format!("left fields {}; table {}", render_list(&left), a.render_table().trim_end().replace('\n', "; ")))
    }),
    check("susy2.model", SUSY2_MODEL, |r, _| {
        let d1 = r.derivation("der.D1.susy2")?;
        let d2 = r.derivation("der.D2.susy2")?;
        let b = d1.bracket(d2)?;
        let expect = parse_derivation(d1.context(), "2*d/dz")?;
        let ok = b == expect && d1.bracket(d1)?.is_zero() && d2.bracket(d2)?.is_zero();
        verdict(
            ok,
            format!(
                "[D1, D2] = {b}; D1^2 = {}; D2^2 = {}",
                d1.bracket(d1)?.scale(&GaussianRational::from_frac(1, 2)),
                d2.bracket(d2)?.scale(&GaussianRational::from_frac(1, 2))
            ),
        )
    }),
];

// ------------------------------------------------------------ sl11-matrix

const BER_SL11: &str = "v^{-1}(u-\\xi v^{-1}\\eta)=1";
const PRECISELY: &str = "which is precisely the multiplication";
const INCLUSIONS: &str = "These inclusions correspond to the Lie superalgebra inclusions";
const PRES_SL: &str = "[C,E]=[C,F]=[E,E]=[F,F]=0, \\qquad [E,F]=C";

fn embedding(r: &Registry, id: &str) -> Result<Outcome> {
    let fam = r.family(id)?;
    let ber = fam.template().berezinian()?;
    let (closed, w) = closure_witness(fam)?;
    verdict(ber.is_one() && closed, format!("Ber = {ber}; {w}"))
}

fn embedding_tangents(r: &Registry, id: &str, name: &str, expect_odd: &[&[i64]]) -> Result<Outcome> {
    let fam = r.family(id)?;
    let unit: Vec<GaussianRational> = fam.params().generators().iter().map(|g| if g.invertible { one() } else { zero() }).collect();
    let t = fam.tangents(&unit)?;
    let ok_shape = t[0].1 == const_matrix(&[&[1, 0], &[0, 1]]) && t[1].1 == const_matrix(expect_odd);
    let a = matrix_algebra(&["C", name], &t)?;
    verdict(
        ok_shape,
        format!(
            "tangents C = {}, {name} = {}; table {}",
            render_const(&t[0].1),
            render_const(&t[1].1),
            a.render_table().trim_end().replace('\n', "; ")
        ),
    )
}

static SL11_MATRIX: &[Check] = &[
    check("sl11.berezinian", BER_SL11, |r, _| {
        let ber = r.family("mat.sl11")?.template().berezinian()?;
        verdict(ber.is_one(), format!("Ber = {ber} with u = v + xi*v^-1*eta"))
    }),
    check("sl11.product", LAW2_MULT, |r, _| {
        let prod = r.family("mat.sl11")?.product_closure()?;
        let g = r.group("grp.mult.sl11")?;
        let ok = prod.closed() && same_images(prod.composed.images(), g.mult())?;
        verdict(ok, format!("product params (v, xi, eta) = ({})", render_list(prod.composed.images())))
    }),
    check("sl11.tangents", PRES_SL, |r, _| {
        let fam = r.family("mat.sl11")?;
        let t = fam.tangents(&[one(), zero(), zero()])?;
        let a = matrix_algebra(&["C", "E", "F"], &t)?;
        let expected = r.lie_algebra("lie.sl11")?;
        let ok = a.homomorphism_defect(expected, &[expected.basis_vector(0), expected.basis_vector(1), expected.basis_vector(2)]).is_none()
            && t[0].1 == const_matrix(&[&[1, 0], &[0, 1]]);
        verdict(
            ok,
            format!(
                "tangents along (v, xi, eta): {}; table {}",
                render_list(&t.iter().map(|x| render_const(&x.1)).collect::<Vec<_>>()),
                a.render_table().trim_end().replace('\n', "; ")
            ),
        )
    }),
    check("c12.product", PRECISELY, |r, _| {
        let prod = r.family("mat.c12")?.product_closure()?;
        let g = r.group("grp.add.c12")?;
        let ok = prod.closed() && same_images(prod.composed.images(), g.mult())?;
        verdict(ok, format!("product params (z, zeta, chi) = ({})", render_list(prod.composed.images())))
    }),
    check("X.embedding", "\\begin{pmatrix} x & \\xi \\\\ \\xi & x \\end{pmatrix}", |r, _| embedding(r, "mat.X")),
    check("Xhat.embedding", "\\begin{pmatrix} y & \\eta \\\\ -\\eta & y \\end{pmatrix}", |r, _| embedding(r, "mat.Xhat")),
    check("X.tangent_span", INCLUSIONS, |r, _| embedding_tangents(r, "mat.X", "U", &[&[0, 1], &[1, 0]])),
    check("Xhat.tangent_span", INCLUSIONS, |r, _| embedding_tangents(r, "mat.Xhat", "V", &[&[0, 1], &[-1, 0]])),
];

// -------------------------------------------------------------- incidence

const INC_REL: &str = "z-z'-\\zeta'\\zeta=0";

fn incidence_kernel(r: &Registry, id: &str, odd_partner: &str) -> Result<Outcome> {
    let d = r.derivation(id)?;
    let ctx = d.context();
    let w = Window::new(ctx, &[("z", 0, 2)])?;
    let ker = kernel_of_derivation(d, &w)?;
    let minus = parse_poly(ctx, "z - zeta1*zeta2")?;
    let plus = parse_poly(ctx, "z + zeta1*zeta2")?;
    let sign = match (in_span(&ker, &minus), in_span(&ker, &plus)) {
        (true, false) => Some(minus),
        (false, true) => Some(plus),
        _ => None,
    };
    let ok = sign.is_some() && in_span(&ker, &SuperPoly::var(ctx, odd_partner)?) && in_span(&ker, &SuperPoly::one(ctx));
    let found = sign.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
    verdict(ok, format!("window deg_z <= 2: dim {}; contains {found}, {odd_partner}, 1; basis {}", ker.len(), render_list(&ker)))
}

static INCIDENCE: &[Check] = &[
    check("incidence.D1.kernel", INC_REL, |r, _| incidence_kernel(r, "der.D1.susy2", "zeta2")),
    check("incidence.D2.kernel", INC_REL, |r, _| incidence_kernel(r, "der.D2.susy2", "zeta1")),
    check("incidence.window_growth", INC_REL, |r, _| {
        let d = r.derivation("der.D1.susy2")?;
        let dims =
            (0..4).map(|k| Ok(kernel_of_derivation(d, &Window::new(d.context(), &[("z", 0, k)])?)?.len())).collect::<Result<Vec<_>>>()?;
        let ok = dims.windows(2).all(|p| p[0] <= p[1]);
        verdict(ok, format!("kernel dimensions for deg_z <= 0..3: {}", render_list(&dims)))
    }),
];

// --------------------------------------------------------------- realform

const PHI_HOM: &str = "\\phi\\left( \\begin{pmatrix} a & \\beta \\\\ \\gamma  & d \\end{pmatrix} \\cdot";
const SIGMA: &str = "\\sigma=c \\circ \\phi";
const SU11_PRINTED: &str = "\\mathrm{su}(1|1)=\\mathrm{span}_\\mathbb{R} \\{ iC,U=E+iF,V=iE-F \\}";
const SU11_UNIQUE: &str = "a unique real form of $\\mathrm{sl}(1|1)$ with compact";

/// `(M, M')` over the doubled coordinates of the real SL(1|1) family.
fn phi_pair(r: &Registry) -> Result<(SuperMatrix, SuperMatrix, GroupPresentation)> {
    let fam = r.family("mat.sl11.real")?;
    let g = GroupPresentation::from_family(fam, vec![one(), zero(), zero()])?;
    let m0 = fam.instantiate(&g.slot(g.doubled(), 0)?)?;
    let m1 = fam.instantiate(&g.slot(g.doubled(), 1)?)?;
    Ok((m0, m1, g))
}

fn sigma_status(r: &Registry, mode: ConjugationMode) -> Result<(bool, bool, String)> {
    let (t, _) = r.involution(&format!("inv.sigma.{mode}"))?;
    let s = sigma_matrix(t, mode)?;
    let ss = sigma_matrix(&s, mode)?;
    let involutive = ss.sub(t)?.entries().iter().flatten().all(SuperPoly::is_zero);
    let ber = s.berezinian()?;
    let w = format!("{mode}: sigma^2 {} (sigma^2 M = {ss}); Ber(sigma M) = {ber}", if involutive { "= id" } else { "!= id" });
    Ok((involutive, ber.is_one(), w))
}

fn sigma_check(r: &Registry, mode: ConjugationMode, pick: fn(&(bool, bool, String)) -> bool) -> Result<Outcome> {
    let own = sigma_status(r, mode)?;
    let other_mode = ConjugationMode::ALL.into_iter().find(|m| *m != mode).expect("two modes");
    let other = sigma_status(r, other_mode)?;
    printed(pick(&own), format!("{}; other mode {}", own.2, other.2))
}

fn span_closure(r: &Registry, id: &str) -> Result<Outcome> {
    let span = r.span(id)?;
    let rep = span.bracket_span_closure();
    let amb = span.ambient();
    let defects: Vec<String> =
        rep.defects.iter().map(|d| format!("[{}, {}] = {} not in the real span", d.left, d.right, amb.render(&d.bracket))).collect();
    let inside: Vec<String> = rep.inside.iter().map(|(a, b, x)| format!("[{a}, {b}] = {}", render_combination(span.names(), x))).collect();
    printed(
        rep.closed(),
        format!("inside: {}; defects: {}", inside.join(", "), if defects.is_empty() { "none".into() } else { defects.join(", ") }),
    )
}

fn span_complexified(r: &Registry, id: &str) -> Result<Outcome> {
    let span = r.span(id)?;
    let full = span.complexified_span_check();
    printed(full, format!("complex span of {{{}}} {} sl(1|1)", render_list(span.names()), if full { "is" } else { "is not" }))
}

static REALFORM: &[Check] = &[
    check("realform.phi.homomorphism", PHI_HOM, |r, _| {
        let (m0, m1, g) = phi_pair(r)?;
        let lhs = phi_matrix(&m0.matmul(&m1)?)?;
        let rhs = phi_matrix(&m0)?.matmul(&phi_matrix(&m1)?)?;
        let matrix_ok = lhs.sub(&rhs)?.entries().iter().flatten().all(SuperPoly::is_zero);
        let (phi, _) = r.morphism("mor.phi.sl11")?;
        let (s0, s1) = (g.slot(g.doubled(), 0)?, g.slot(g.doubled(), 1)?);
        let law_ok = same_images(g.product(&phi.then(&s0)?, &phi.then(&s1)?)?.images(), phi.then(&g.product(&s0, &s1)?)?.images())?;
        verdict(
            matrix_ok && law_ok,
            format!("phi(M M') = phi(M) phi(M'): {matrix_ok}; phi respects the group law: {law_ok}; phi(M) = {}", phi_matrix(&m0)?),
        )
    }),
    check("realform.phi.display", PHI_HOM, |r, _| {
        let (m0, m1, _) = phi_pair(r)?;
        let ctx = m0.context().clone();
        let a1 = m1.entry(0, 0);
        let a1_inv2 = a1.powi(-2)?.mul(&SuperPoly::constant(&ctx, -GaussianRational::i()))?;
        let literal = SuperMatrix::new(
            &ctx,
            m0.format().clone(),
            vec![vec![m1.entry(1, 1).invert_even()?, a1_inv2.mul(m0.entry(1, 0))?], vec![a1_inv2.mul(m0.entry(0, 1))?, a1.invert_even()?]],
        )?;
        let diff = phi_matrix(&m0)?.matmul(&literal)?.sub(&phi_matrix(&m0.matmul(&m1)?)?)?;
        let ok = diff.entries().iter().flatten().all(SuperPoly::is_zero);
        printed(ok, format!("printed second factor uses unprimed beta, gamma; phi(M) * printed - phi(M M') = {diff}"))
    }),
    check("realform.sigma.involution", SIGMA, |r, mode| sigma_check(r, mode, |s| s.0)),
    check("realform.sigma.berezinian", SIGMA, |r, mode| sigma_check(r, mode, |s| s.1)),
    check("realform.sl11.jacobi", PRES_SL, |r, _| {
        let a = r.lie_algebra("lie.sl11")?;
        verdict(
            a.jacobi_defect().is_none(),
            format!("super Jacobi on {}; table {}", render_list(a.names()), a.render_table().trim_end().replace('\n', "; ")),
        )
    }),
    check("realform.span.printed.closure", SU11_PRINTED, |r, _| span_closure(r, "span.su11.printed")),
    check("realform.span.printed.complexified", SU11_PRINTED, |r, _| span_complexified(r, "span.su11.printed")),
    check("realform.span.variant.closure", SU11_UNIQUE, |r, _| span_closure(r, "span.su11.variant")),
    check("realform.span.variant.complexified", SU11_UNIQUE, |r, _| span_complexified(r, "span.su11.variant")),
];

// ---------------------------------------------------------------- aut-c11

const COMM: &str = "F^* \\circ D=kD \\circ F^*";
const S_FORM: &str = "s=dz-\\zeta d \\zeta";
const U_TABLE: &str = "[V,V]=2U_2, \\quad [U_2,U_1]=-2U_1, \\quad [U_2, V]=-V,\\quad [U_1, V]=0";
const MGRP: &str = "identification $a=c^2$ and $b=dc$";

/// A printed bracket `[left, right] = Σ c·name`.
type PrintedEntry = (&'static str, &'static str, &'static [(&'static str, i64)]);

fn swap_u(n: &str) -> &str {
    match n {
        "U1" => "U2",
        "U2" => "U1",
        x => x,
    }
}

fn u_algebra(r: &Registry) -> Result<LieSuperAlgebra> {
    let fields = [r.derivation("der.U1.c11")?.clone(), r.derivation("der.U2.c11")?.clone(), r.derivation("der.V.c11")?.clone()];
    structure_constants_from_fields(&["U1", "U2", "V"], &fields)
}

fn d_on_params(r: &Registry) -> Result<Derivation> {
    let (f, _) = r.morphism("mor.F.c11")?;
    r.derivation("der.D.c11")?.embed(f.source())
}

static AUT_C11: &[Check] = &[
    check("aut.F.scaling", COMM, |r, _| {
        let (f, f_inv) = r.morphism("mor.F.c11")?;
        let k = susy_scaling_check(f, f_inv, &d_on_params(r)?)?;
        verdict(k.term_count() == 1, format!("k = {k} on z and zeta"))
    }),
    check("aut.F.conjugate", COMM, |r, _| {
        let (f, f_inv) = r.morphism("mor.F.c11")?;
        let d = d_on_params(r)?;
        let k = susy_scaling_check(f, f_inv, &d)?;
        let c = conjugate_derivation(f, f_inv, &d)?;
        verdict(c == d.left_mul(&k.invert_even()?)?, format!("F_inv* D F* = {c} = k^-1 D"))
    }),
    check("aut.s.pullback", S_FORM, |r, _| {
        let (f, _) = r.morphism("mor.F.c11")?;
        let s = r.one_form("form.s.c11")?;
        let pulled = pullback_one_form(f, s)?;
        let r2 = parse_poly(s.context(), "r^2")?;
        verdict(pulled == s.mul_right(&r2)?, format!("F* s = {pulled}"))
    }),
    check("aut.centralizer", "V=\\zeta \\partial_z - \\partial_\\zeta", |r, _| {
        let d = r.derivation("der.D.c11")?;
        let basis = odd_centralizer(d, &Window::new(d.context(), &[("z", 0, 5)])?)?;
        let v = r.derivation("der.V.c11")?;
        let ok = basis.len() == 1 && {
            let b = &basis[0];
            let c = b.images().iter().zip(v.images()).find_map(|(x, y)| {
                let m = y.terms().next()?.0.clone();
                Some(x.coefficient(&m) / y.coefficient(&m))
            });
            c.is_some_and(|c| !c.is_zero() && *b == v.scale(&c))
        };
        verdict(ok, format!("deg_z <= 5: dim {}; basis {}", basis.len(), render_list(&basis)))
    }),
    check("aut.U.table", U_TABLE, |r, _| {
        let a = u_algebra(r)?;
        let entries: [PrintedEntry; 4] =
            [("V", "V", &[("U2", 2)]), ("U2", "U1", &[("U1", -2)]), ("U2", "V", &[("V", -1)]), ("U1", "V", &[])];
        let mut lines = Vec::new();
        let (mut direct, mut swapped) = (0, 0);
        for (x, y, rhs) in entries {
            let got = table_entry(&a, x, y)?;
            let want = vec_of(&a, rhs)?;
            let swapped_rhs: Vec<(&str, i64)> = rhs.iter().map(|&(n, c)| (swap_u(n), c)).collect();
            let got_sw = table_entry(&a, swap_u(x), swap_u(y))?;
            let want_sw = vec_of(&a, &swapped_rhs)?;
            direct += usize::from(got == want);
            swapped += usize::from(got_sw == want_sw);
            lines.push(format!("[{x}, {y}]: computed {}, printed {}", a.render(&got), a.render(&want)));
        }
        lines.push(format!("{direct}/4 printed entries match; {swapped}/4 match after swapping U1 and U2"));
        lines.push(format!("computed table {}", a.render_table().trim_end().replace('\n', "; ")));
        printed(direct == 4, lines.join("; "))
    }),
    check("aut.U.jacobi", U_TABLE, |r, _| {
        let a = u_algebra(r)?;
        verdict(a.check_super_jacobi(), "super Jacobi holds on U1, U2, V".to_string())
    }),
    check("aut.mgrp.closed", MGRP, |r, _| {
        let fam = r.family("mat.mgrp")?;
        let (closed, w) = closure_witness(fam)?;
        // (a, b) = (c^2, d c) turns the product into composition of z -> a z + b.
        let prod = fam.product_closure()?;
        let ctx = prod.composed.target().clone();
        let p = |s: &str| parse_poly(&ctx, s);
        let (c2, d2) = (&prod.composed.images()[0], &prod.composed.images()[1]);
        let a_ok = c2.mul(c2)?.sub(&p("c^2*c'^2")?)?.is_zero();
        let b_ok = d2.mul(c2)?.sub(&p("c^2*c'*d' + d*c")?)?.is_zero();
        verdict(closed && a_ok && b_ok, format!("{w}; a = c^2, b = d c compose as affine maps: {}", a_ok && b_ok))
    }),
];

// ------------------------------------------------------------- stabilizer

const STAB: &str = "stabilizer subsupergroup in $\\mathrm{SpO}(2|1)$";

static STABILIZER: &[Check] = &[
    check("stab.closure", STAB, |r, _| {
        let (ok, w) = closure_witness(r.family("mat.stab.infty")?)?;
        verdict(ok, w)
    }),
    check("stab.homogeneous", STAB, |r, _| {
        let fam = r.family("mat.stab.infty")?;
        let g = r.group("grp.stab.infty")?;
        let m0 = fam.instantiate(&g.slot(g.doubled(), 0)?)?;
        let m1 = fam.instantiate(&g.slot(g.doubled(), 1)?)?;
        let prod = m0.matmul(&m1)?;
        let inv = fam.template().inverse()?;
        let ok = fam.template().is_homogeneous() && prod.is_homogeneous() && inv.is_homogeneous();
        verdict(ok, format!("format {}; template, product and inverse homogeneous: {ok}", fam.template().format()))
    }),
    check("stab.axioms", STAB, |r, _| axioms(r, "grp.stab.infty")),
    check("stab.lie", STAB, |r, _| {
        let fam = r.family("mat.stab.infty")?;
        let t = fam.tangents(&[one(), zero(), zero()])?;
        let stab = matrix_algebra(&["Xc", "Xd", "Xg"], &t)?;
        let u = u_algebra(r)?;
        let images = vec![vec_of(&u, &[("U1", -1)])?, vec_of(&u, &[("U2", -1)])?, vec_of(&u, &[("V", 1)])?];
        let iso = stab.homomorphism_defect(&u, &images);
        verdict(
            iso.is_none(),
            format!(
                "tangents {}; table {}; Xc -> -U1, Xd -> -U2, Xg -> V is a homomorphism: {}",
                render_list(&t.iter().map(|x| render_const(&x.1)).collect::<Vec<_>>()),
                stab.render_table().trim_end().replace('\n', "; "),
                iso.is_none()
            ),
        )
    }),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", ConjugationMode::Multiplicative), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = Report { suite: "x".into(), mode: "graded".into(), version: VERSION.into(), checks: vec![] };
        assert_eq!(r.to_text().lines().count(), 4);
    }

    #[test]
    fn json_round_trip() {
        let r = run_suite("susy1", ConjugationMode::Multiplicative).unwrap();
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}
