//! Randomized identities over points and colours.

use coldual::grmat;
use coldual::harness::parse_expression;
use coldual::relations::{self, Ctx};
use coldual::{Colour, Model, ParamPoint, C64};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

/// Keeps Q away from the unit circle's roots of unity and the pole of ℓ.
fn point() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (-0.9f64..0.9, -0.9f64..0.9, -0.9f64..0.9, -0.9f64..0.9).prop_filter("well conditioned", |(tr, ti, _, _)| {
        C64::new(*tr, *ti).norm() > 0.05
    })
}

fn colour() -> impl Strategy<Value = Colour> {
    prop_oneof![Just((1, 1)), Just((2, 1)), Just((-1, 1)), Just((1, 2)), Just((3, 1)), Just((-2, 3)), Just((5, 2))]
        .prop_map(|(n, d)| Colour::frac(n, d))
}

fn model() -> impl Strategy<Value = Model> {
    prop_oneof![Just(Model::Gl2), Just(Model::Gl11)]
}

fn at(m: Model, (tr, ti, pr, pi): (f64, f64, f64, f64)) -> ParamPoint {
    ParamPoint::new(m, C64::new(tr, ti), C64::new(pr, pi))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coloured_ybe(m in model(), p in point(), l in colour(), mu in colour(), nu in colour()) {
        let r = grmat::coloured_ybe_residual(m, &at(m, p), l, mu, nu).unwrap();
        prop_assert!(r < TOL, "{r:e}");
    }

    #[test]
    fn unit_colours_give_standard_r(m in model(), p in point()) {
        let pt = at(m, p);
        let c = grmat::coloured_r_matrix(m, &pt, Colour::ONE, Colour::ONE).unwrap();
        prop_assert!(c.max_abs_diff(&grmat::r_matrix(m, &pt)) < 1e-12);
    }

    #[test]
    fn relations_hold(m in model(), p in point(), l in colour(), mu in colour(), nu in colour()) {
        let ctx = Ctx { base: at(m, p), lambda: l, mu, nu };
        for rel in relations::relations(m) {
            match rel.residual(&ctx) {
                Ok(r) => prop_assert!(r < TOL, "{}: {r:e}", rel.id()),
                Err(coldual::Error::DegenerateParameter(_)) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
    }

    #[test]
    fn exchange_relations_by_expression(p in point()) {
        let g = at(Model::Gl2, p);
        for e in ["a*b - q*b*a", "a*c - p*c*a", "b*d - p*d*b", "c*d - q*d*c", "b*c - p*q^(-1)*c*b", "a*d - d*a - (q - p^(-1))*b*c"] {
            let v = parse_expression(e, &g).unwrap();
            prop_assert!(v.is_zero(TOL), "{e}: {v}");
        }
        let s = at(Model::Gl11, p);
        for e in ["a*b - p^(-1)*b*a", "a*c - q^(-1)*c*a", "b*d - p*d*b", "c*d - q*d*c", "b*c + p*q^(-1)*c*b", "a*d - d*a - (q - p^(-1))*b*c", "b*b", "c*c", "det^(1/2)*det^(1/2) - det"] {
            let v = parse_expression(e, &s).unwrap();
            prop_assert!(v.is_zero(TOL), "{e}: {v}");
        }
    }
}
