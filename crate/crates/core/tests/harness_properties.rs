use elliptica_core::evaluator::{
    localized_class_resolution, orbifold_class, orbifold_class_symplectic, TorusPoint,
};
use elliptica_core::harness::{catalog, find, verify, SampleConfig};
use elliptica_core::models::{load_model, presets, Model};
use elliptica_core::numeric::{relative_error, ModularParam, PrecisionConfig};
use elliptica_core::theta::ThetaContext;
use proptest::prelude::*;
use rug::Complex;

fn cfg(samples: usize) -> SampleConfig {
    SampleConfig {
        samples,
        ..SampleConfig::default()
    }
}

#[test]
fn worst_error_is_stable_under_more_samples() {
    for id in catalog() {
        let small = verify(&id, &cfg(32)).unwrap();
        let large = verify(&id, &cfg(64)).unwrap();
        assert!(small.pass && large.pass, "{}", id.id);
        // The 64-sample run contains the 32-sample one, so only growth is possible.
        assert!(large.max_rel_err >= small.max_rel_err);
        // Floor at the working precision so identities exact to roundoff are comparable.
        let floor = 1e-40;
        assert!(
            large.max_rel_err.max(floor) <= 10.0 * small.max_rel_err.max(floor),
            "{}: {:e} vs {:e}",
            id.id,
            large.max_rel_err,
            small.max_rel_err
        );
    }
}

#[test]
fn fixture_model_matches_the_orbifold_preset() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/a2_resolution.json");
    let Model::Resolution(res) = load_model(path).unwrap() else {
        panic!("fixture is a resolution model");
    };
    let orb = presets::a_n_orbifold(2).unwrap();
    let ctx = ThetaContext::new(
        &ModularParam::from_f64(-0.2, 1.4).unwrap(),
        PrecisionConfig::default(),
    )
    .unwrap();
    let bits = ctx.bits();
    let p = TorusPoint::new(
        vec![
            Complex::with_val(bits, (0.13, 0.04)),
            Complex::with_val(bits, (-0.29, 0.1)),
        ],
        Complex::with_val(bits, (0.21, -0.06)),
    );
    let l = localized_class_resolution(&ctx, &res, &p).unwrap();
    let r = orbifold_class(&ctx, &orb, &p).unwrap();
    let s = orbifold_class_symplectic(&ctx, &orb, &p).unwrap();
    assert!(relative_error(&l, &r) < 1e-25);
    assert!(relative_error(&r, &s) < 1e-25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_depend_only_on_the_seed(seed in any::<u64>()) {
        let id = find("fay.symmetric.n2").unwrap();
        let c = SampleConfig { seed, ..cfg(3) };
        let a = verify(&id, &c).unwrap().without_timing();
        let b = verify(&id, &SampleConfig { parallel: false, ..c }).unwrap().without_timing();
        prop_assert!(a.pass);
        prop_assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn wider_tau_ranges_still_verify(lo in 0.5f64..1.0, width in 0.0f64..1.5) {
        let id = find("an.mckay.n2").unwrap();
        let c = SampleConfig { tau_im_range: [lo, lo + width], ..cfg(4) };
        let report = verify(&id, &c).unwrap();
        prop_assert!(report.pass, "{}", report.to_json());
    }
}
