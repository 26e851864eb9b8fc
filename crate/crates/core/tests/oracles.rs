//! Values checked against independent computations: matrix-side formulas,
//! closed-form counts and hand expansions.

use superaudit_core::audit::{run_suite, Status};
use superaudit_core::group::{GroupPresentation, Side, TangentVector};
use superaudit_core::maps::{Derivation, Morphism};
use superaudit_core::matrix::{MatrixFamily, SuperMatrix};
use superaudit_core::parse::{parse_context, parse_derivation, parse_expression, parse_poly, Expr};
use superaudit_core::registry::{phi_matrix, sigma_matrix};
use superaudit_core::solver::{kernel_of_derivation, odd_centralizer, Window};
use superaudit_core::{ConjugationMode, Error, GaussianRational, Parity, Registry, SuperPoly};

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

/// Left field of a matrix family: `x_ij ↦ Σ_k (−1)^{|X||T_ik|} T_ik A_kj`,
/// the sign coming from moving the field past the entry `T_ik`.
fn matrix_left_field(fam: &MatrixFamily, parity: Parity, a: &[Vec<GaussianRational>]) -> Derivation {
    let t = fam.template();
    let ctx = fam.params();
    let fmt = t.format();
    let images = fam
        .readout()
        .iter()
        .map(|&(i, j)| {
            let mut acc = SuperPoly::zero(ctx);
            for (k, row) in a.iter().enumerate() {
                let entry_parity = fmt.rows()[i] + fmt.cols()[k];
                let sign = g(if parity.koszul(entry_parity) { -1 } else { 1 });
                acc = acc.add(&t.entry(i, k).scale(&(row[j].clone() * sign))).unwrap();
            }
            acc
        })
        .collect();
    Derivation::new(ctx, parity, images).unwrap()
}

#[test]
fn left_fields_match_matrix_multiplication() {
    let reg = Registry::global();
    for (fam_id, grp_id, unit) in [
        ("mat.sl11", "grp.mult.sl11", vec![g(1), g(0), g(0)]),
        ("mat.c12", "grp.add.c12", vec![g(0), g(0), g(0)]),
        ("mat.stab.infty", "grp.stab.infty", vec![g(1), g(0), g(0)]),
    ] {
        let fam = reg.family(fam_id).unwrap();
        let grp = reg.group(grp_id).unwrap();
        for (k, (parity, a)) in fam.tangents(&unit).unwrap().into_iter().enumerate() {
            let name = &fam.params().generator(k).name;
            let from_law = grp.invariant_field(&TangentVector::along(grp.coords(), name).unwrap(), Side::Left).unwrap();
            assert_eq!(from_law, matrix_left_field(fam, parity, &a), "{fam_id} along {name}");
        }
    }
}

#[test]
fn sl11_left_fields_by_hand() {
    let reg = Registry::global();
    let grp = reg.group("grp.mult.sl11").unwrap();
    let c = grp.coords();
    let along = |n: &str| grp.invariant_field(&TangentVector::along(c, n).unwrap(), Side::Left).unwrap();
    assert_eq!(along("eta"), parse_derivation(c, "v*d/deta").unwrap());
    assert_eq!(along("xi"), parse_derivation(c, "-1*eta*d/dv + (v + xi*v^-1*eta)*d/dxi").unwrap());
    assert_eq!(along("v"), parse_derivation(c, "v*d/dv + xi*d/dxi + eta*d/deta").unwrap());
}

#[test]
fn sl11_bracket_of_odd_fields_is_minus_e() {
    // D1 D2 + D2 D1 on the generators: v ↦ v∂η(−η) = −v,
    // ξ ↦ v∂η(ξv⁻¹η) = −ξ, η ↦ (−η∂v)(v) = −η.
    let reg = Registry::global();
    let d1 = reg.derivation("der.D1.sl11").unwrap();
    let d2 = reg.derivation("der.D2.sl11").unwrap();
    let e = reg.derivation("der.E.sl11").unwrap();
    assert_eq!(d1.bracket(d2).unwrap(), e.scale(&g(-1)));
}

#[test]
fn incidence_kernel_dimension_closed_form() {
    // Invariants of ∂ζ1 + ζ2∂z are polynomials in y = z − ζ1ζ2 and ζ2, so a
    // window deg_z ≤ k holds {1, ζ2}·{1, y, …, y^k}: dimension 2(k + 1).
    let reg = Registry::global();
    let d1 = reg.derivation("der.D1.susy2").unwrap();
    for k in 0..5 {
        let ker = kernel_of_derivation(d1, &Window::new(d1.context(), &[("z", 0, k)]).unwrap()).unwrap();
        assert_eq!(ker.len(), 2 * (k as usize + 1));
        for b in &ker {
            assert!(d1.apply(b).unwrap().is_zero());
        }
    }
}

#[test]
fn centralizer_of_d_is_spanned_by_v() {
    let reg = Registry::global();
    let d = reg.derivation("der.D.c11").unwrap();
    let v = reg.derivation("der.V.c11").unwrap();
    for k in [0, 1, 3, 5] {
        let basis = odd_centralizer(d, &Window::new(d.context(), &[("z", 0, k)]).unwrap()).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(basis[0] == *v || basis[0] == v.scale(&g(-1)));
    }
}

#[test]
fn phi_on_constant_matrices() {
    // On diagonal constants φ(a, 0; 0, d) = (d⁻¹, 0; 0, a⁻¹).
    let ctx = parse_context("even t;").unwrap();
    let c = |p: i64, q: i64| SuperPoly::constant(&ctx, GaussianRational::from_frac(p, q));
    let m =
        SuperMatrix::new(&ctx, superaudit_core::BlockFormat::square(1, 1), vec![vec![c(3, 1), c(0, 1)], vec![c(0, 1), c(5, 1)]]).unwrap();
    let p = phi_matrix(&m).unwrap();
    assert_eq!(p.entry(0, 0), &c(1, 5));
    assert_eq!(p.entry(1, 1), &c(1, 3));
    assert!(p.entry(0, 1).is_zero() && p.entry(1, 0).is_zero());
}

#[test]
fn sigma_squares_to_identity_in_both_modes() {
    let reg = Registry::global();
    for mode in ConjugationMode::ALL {
        let (t, m) = reg.involution(&format!("inv.sigma.{mode}")).unwrap();
        assert_eq!(m, mode);
        let ss = sigma_matrix(&sigma_matrix(t, mode).unwrap(), mode).unwrap();
        assert!(ss.sub(t).unwrap().entries().iter().flatten().all(SuperPoly::is_zero));
    }
}

#[test]
fn sigma_berezinian_depends_on_mode() {
    let reg = Registry::global();
    let (t, _) = reg.involution("inv.sigma.multiplicative").unwrap();
    assert!(sigma_matrix(t, ConjugationMode::Multiplicative).unwrap().berezinian().unwrap().is_one());
    let graded = sigma_matrix(t, ConjugationMode::Graded).unwrap().berezinian().unwrap();
    assert_eq!(graded, parse_poly(t.context(), "1 - 2*dbar^-2*betabar*gammabar").unwrap());
}

#[test]
fn scaling_automorphism() {
    let reg = Registry::global();
    let (f, f_inv) = reg.morphism("mor.F.c11").unwrap();
    let d = reg.derivation("der.D.c11").unwrap().embed(f.source()).unwrap();
    let k = superaudit_core::group::susy_scaling_check(f, f_inv, &d).unwrap();
    assert_eq!(k, parse_poly(f.source(), "r^-1").unwrap());
    let s = reg.one_form("form.s.c11").unwrap();
    let pulled = superaudit_core::maps::pullback_one_form(f, s).unwrap();
    assert_eq!(pulled, s.mul_right(&parse_poly(s.context(), "r^2").unwrap()).unwrap());
}

#[test]
fn non_susy_map_has_no_scaling() {
    let reg = Registry::global();
    let (f, _) = reg.morphism("mor.F.c11").unwrap();
    let ctx = f.source().clone();
    let p = |s: &str| parse_poly(&ctx, s).unwrap();
    // z ↦ r²z, ζ ↦ ζ breaks the distribution.
    let bad = Morphism::new(&ctx, &ctx, vec![p("r^2*z"), p("zeta"), p("r"), p("b")]).unwrap();
    let bad_inv = Morphism::new(&ctx, &ctx, vec![p("r^-2*z"), p("zeta"), p("r"), p("b")]).unwrap();
    let d = reg.derivation("der.D.c11").unwrap().embed(&ctx).unwrap();
    assert!(matches!(superaudit_core::group::susy_scaling_check(&bad, &bad_inv, &d), Err(Error::NoConsistentScaling(_))));
}

#[test]
fn stabilizer_inverse_by_hand() {
    // (c, d, γ)⁻¹ = (c⁻¹, −d, −c⁻¹γ): multiply out the 3×3 matrices.
    let reg = Registry::global();
    let grp: &GroupPresentation = reg.group("grp.stab.infty").unwrap();
    let c = grp.coords();
    let inv: Vec<String> = grp.inv().iter().map(|p| p.to_string()).collect();
    assert_eq!(inv, ["1*c^-1", "-1*d", "-1*c^-1*gamma"]);
    let fam = reg.family("mat.stab.infty").unwrap();
    let m = fam.template();
    let mi = fam.instantiate(&grp.inverse_morphism().unwrap()).unwrap();
    assert!(m.matmul(&mi).unwrap().is_identity());
    assert!(Morphism::identity(c).is_identity());
}

#[test]
fn parser_examples() {
    let ctx = parse_context("unit v; odd zeta, eta;").unwrap();
    let p = parse_poly(&ctx, "zeta*eta + 2*v^-1").unwrap();
    assert_eq!(p.to_string(), "1*zeta*eta + 2*v^-1");
    assert!(parse_poly(&ctx, "zeta^2").unwrap().is_zero());
    let (c11, e) = parse_expression(None, "even z; odd zeta; d/dzeta + zeta*d/dz").unwrap();
    let Expr::Derivation(d) = e else { panic!("expected a derivation") };
    assert_eq!(&d, Registry::global().derivation("der.D.c11").unwrap().with_context(&c11).as_ref().unwrap());
    assert!(matches!(parse_poly(&ctx, "zeta*q"), Err(Error::Parse { .. })));
}

#[test]
fn suite_statuses() {
    use Status::*;
    let expect: &[(&str, &[(&str, Status)])] = &[
        ("susy1", &[("susy1.add.DD", Pass), ("susy1.mult.ZZ", Discrepancy), ("susy1.add.ZZ", Discrepancy)]),
        ("susy2", &[("susy2.mult.fields", Pass), ("susy2.mult.table", Discrepancy), ("susy2.model", Pass)]),
        ("sl11-matrix", &[("sl11.berezinian", Pass), ("sl11.product", Pass), ("c12.product", Pass)]),
        ("incidence", &[("incidence.D1.kernel", Pass), ("incidence.D2.kernel", Pass)]),
        (
            "realform",
            &[
                ("realform.phi.homomorphism", Pass),
                ("realform.phi.display", Discrepancy),
                ("realform.sigma.involution", Pass),
                ("realform.sigma.berezinian", Pass),
                ("realform.span.printed.closure", Discrepancy),
                ("realform.span.variant.closure", Pass),
            ],
        ),
        ("aut-c11", &[("aut.F.scaling", Pass), ("aut.centralizer", Pass), ("aut.U.table", Discrepancy)]),
        ("stabilizer", &[("stab.closure", Pass), ("stab.lie", Pass)]),
    ];
    for (suite, checks) in expect {
        let report = run_suite(suite, ConjugationMode::Multiplicative).unwrap();
        assert_eq!(report.count(Fail), 0, "{suite}: {}", report.to_text());
        for (name, status) in *checks {
            assert_eq!(report.check(name).unwrap().status, *status, "{name}");
        }
    }
    let graded = run_suite("realform", ConjugationMode::Graded).unwrap();
    assert_eq!(graded.check("realform.sigma.berezinian").unwrap().status, Discrepancy);
}

#[test]
fn all_suite_is_the_concatenation() {
    let all = run_suite("all", ConjugationMode::Multiplicative).unwrap();
    let parts: usize =
        superaudit_core::audit::SUITES.iter().map(|s| run_suite(s, ConjugationMode::Multiplicative).unwrap().checks.len()).sum();
    assert_eq!(all.checks.len(), parts);
}
