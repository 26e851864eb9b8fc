#[path = "support/strategies.rs"]
mod strategies;

use proptest::prelude::*;
use strategies::*;
use superaudit_core::parse::parse_poly;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn supercommutative((x, px) in homogeneous(ctx()), (y, py) in homogeneous(ctx())) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap().scale(&sign(px.koszul(py))));
    }

    #[test]
    fn associative(x in poly(ctx()), y in poly(ctx()), z in poly(ctx())) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn distributive(x in poly(ctx()), y in poly(ctx()), z in poly(ctx())) {
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn graded_leibniz(d in derivation(ctx()), (x, px) in homogeneous(ctx()), y in poly(ctx())) {
        let lhs = d.apply(&x.mul(&y).unwrap()).unwrap();
        let rhs = d.apply(&x).unwrap().mul(&y).unwrap()
            .add(&x.mul(&d.apply(&y).unwrap()).unwrap().scale(&sign(d.parity().koszul(px)))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_antisymmetric(x in derivation(ctx()), y in derivation(ctx())) {
        let s = sign(!x.parity().koszul(y.parity()));
        prop_assert_eq!(x.bracket(&y).unwrap(), y.bracket(&x).unwrap().scale(&s));
    }

    #[test]
    fn jacobi(x in derivation(ctx()), y in derivation(ctx()), z in derivation(ctx())) {
        let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let rhs = x.bracket(&y).unwrap().bracket(&z).unwrap()
            .add(&y.bracket(&x.bracket(&z).unwrap()).unwrap().scale(&sign(x.parity().koszul(y.parity())))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn render_round_trip(x in poly(ctx())) {
        prop_assert_eq!(parse_poly(x.context(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn unit_inverse(n in -3i32..=3, (x, _) in homogeneous(ctx())) {
        // w^n (1 + nilpotent odd part) is invertible.
        let c = x.context().clone();
        let nil = x.mul(&parse_poly(&c, "a*b").unwrap()).unwrap();
        let u = parse_poly(&c, "w").unwrap().powi(n).unwrap().add(&nil.mul(&parse_poly(&c, "w").unwrap()).unwrap()).unwrap();
        if u.is_even() {
            prop_assert!(u.mul(&u.invert_even().unwrap()).unwrap().is_one());
        }
    }
}
