//! Property suites for the pairings over the node k[x,y]/(xy), where Tor
//! between any two modules has finite length in positive degrees.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use torlab_core::homology::{pd_over_ring, tor, Pd};
use torlab_core::module::FpModule;
use torlab_core::pairing::{audit, theta, AuditInput, Bounds, Outcome, Rational};
use torlab_core::poly::PrimeField;
use torlab_core::random::{random_module, RandomParams};
use torlab_core::ring::Ring;

type R = Arc<Ring<PrimeField>>;

fn node() -> R {
    Ring::parse(PrimeField::new(32003).unwrap(), &["x", "y"], &["x*y"]).unwrap()
}

/// Module recipes: cyclic quotients by powers of the branches, their
/// sums, or a seeded random presentation.
#[derive(Clone, Debug)]
enum Recipe {
    X(u32),
    Y(u32),
    XY(u32),
    Random(u64),
}

fn recipe() -> impl Strategy<Value = Recipe> {
    prop_oneof![
        (1u32..4).prop_map(Recipe::X),
        (1u32..4).prop_map(Recipe::Y),
        (1u32..4).prop_map(Recipe::XY),
        any::<u64>().prop_map(Recipe::Random),
    ]
}

fn module(r: &R, how: &Recipe) -> FpModule<PrimeField> {
    let cyc = |gens: &[String]| {
        let ps: Vec<_> = gens.iter().map(|g| r.parse_poly(g).unwrap()).collect();
        FpModule::cyclic(r.clone(), &ps).unwrap()
    };
    match how {
        Recipe::X(a) => cyc(&[format!("x^{a}")]),
        Recipe::Y(b) => cyc(&[format!("y^{b}")]),
        Recipe::XY(a) => cyc(&[format!("x^{a} + y^{a}")]),
        Recipe::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let p = RandomParams { max_gens: 2, max_rels: 2, ..Default::default() };
            random_module(r, &mut rng, &p).unwrap().minimalize().module
        }
    }
}

const DEG: usize = 10;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn theta_is_symmetric(a in recipe(), b in recipe()) {
        let r = node();
        let (m, n) = (module(&r, &a), module(&r, &b));
        let mn = theta(&m, &n, DEG);
        let nm = theta(&n, &m, DEG);
        prop_assume!(mn.is_ok() && nm.is_ok());
        prop_assert_eq!(mn.unwrap().theta, nm.unwrap().theta);
    }

    #[test]
    fn theta_is_additive(a in recipe(), b in recipe(), c in recipe()) {
        let r = node();
        let (m1, m2, n) = (module(&r, &a), module(&r, &b), module(&r, &c));
        let sum = FpModule::direct_sum(&[&m1, &m2]).unwrap();
        let (t1, t2, ts) = (theta(&m1, &n, DEG), theta(&m2, &n, DEG), theta(&sum, &n, DEG));
        prop_assume!(t1.is_ok() && t2.is_ok() && ts.is_ok());
        prop_assert_eq!(&t1.unwrap().theta + &t2.unwrap().theta, ts.unwrap().theta);
    }

    #[test]
    fn finite_pd_forces_vanishing(u in 1i64..100, v in 1i64..100, b in recipe()) {
        let r = node();
        let f = r.parse_poly(&format!("{u}*x + {v}*y")).unwrap();
        let m = FpModule::cyclic(r.clone(), &[f]).unwrap();
        prop_assert_eq!(pd_over_ring(&m, 4).unwrap(), Pd::Exact(1));
        let n = module(&r, &b);
        let p = tor(&m, &n, 6).unwrap();
        prop_assert!(p.vanishes(2, 6));
        prop_assert_eq!(theta(&m, &n, 8).unwrap().theta, Rational::zero());
    }

    #[test]
    fn rigidity_never_fails(a in recipe(), b in recipe()) {
        let r = node();
        let input = AuditInput::new(r.clone()).with_module("M", module(&r, &a)).with_module("N", module(&r, &b));
        let bounds = Bounds { tor_max_deg: DEG, ..Bounds::default() };
        let rep = audit("RIGID", &input, &bounds).unwrap();
        prop_assert_ne!(rep.outcome, Outcome::Fail, "{:?}", rep);
        if rep.outcome == Outcome::Pass {
            let p = tor(&input.modules["M"], &input.modules["N"], DEG).unwrap();
            prop_assert!(p.vanishes(1, DEG));
        }
    }
}
