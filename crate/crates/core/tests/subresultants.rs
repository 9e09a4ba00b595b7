mod common;

use common::{arb_poly, psc_by_minor};
use projcad::subres::{discriminant, psc_chain, resultant, sylvester_resultant};
use projcad::MultiPoly;
use proptest::prelude::*;

fn main_var(f: &MultiPoly, g: &MultiPoly) -> Option<usize> {
    f.mvar().max(g.mvar())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn prs_chain_matches_determinant_minors(f in arb_poly(3, 3, 6), g in arb_poly(3, 3, 6)) {
        let Some(v) = main_var(&f, &g) else { return Ok(()) };
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.degree_in(v) + g.degree_in(v) > 0);
        let chain = psc_chain(&f, &g, v).unwrap();
        let m = f.degree_in(v).min(g.degree_in(v));
        prop_assert_eq!(chain.len(), m + 1);
        for j in 0..=m {
            prop_assert_eq!(chain.get(j).unwrap(), &psc_by_minor(&f, &g, v, j), "j = {}", j);
        }
    }

    #[test]
    fn resultant_matches_sylvester(f in arb_poly(2, 4, 6), g in arb_poly(2, 4, 6)) {
        let Some(v) = main_var(&f, &g) else { return Ok(()) };
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.degree_in(v) + g.degree_in(v) > 0);
        prop_assert_eq!(resultant(&f, &g, v).unwrap(), sylvester_resultant(&f, &g, v).unwrap());
    }

    #[test]
    fn resultant_swap_sign(f in arb_poly(2, 3, 5), g in arb_poly(2, 3, 5)) {
        let Some(v) = main_var(&f, &g) else { return Ok(()) };
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assume!(f.degree_in(v) + g.degree_in(v) > 0);
        let sign = if f.degree_in(v) * g.degree_in(v) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(
            resultant(&f, &g, v).unwrap(),
            resultant(&g, &f, v).unwrap().scale(&sign.into())
        );
    }

    #[test]
    fn resultant_multiplicative(f in arb_poly(2, 3, 4), g in arb_poly(2, 3, 4), h in arb_poly(2, 3, 4)) {
        let v = 1;
        prop_assume!(f.degree_in(v) > 0 && g.degree_in(v) > 0 && h.degree_in(v) > 0);
        let gh = &g * &h;
        prop_assert_eq!(
            resultant(&f, &gh, v).unwrap(),
            &resultant(&f, &g, v).unwrap() * &resultant(&f, &h, v).unwrap()
        );
    }

    #[test]
    fn discriminant_times_lc_is_psc0(f in arb_poly(3, 4, 6)) {
        let Some(v) = f.mvar() else { return Ok(()) };
        prop_assume!(f.degree_in(v) >= 2);
        let lhs = &f.leading_coeff_in(v) * &discriminant(&f, v).unwrap();
        let psc0 = psc_chain(&f, &f.derivative(v), v).unwrap().resultant().clone();
        prop_assert!(lhs == psc0 || lhs == -psc0.clone());
    }
}
