mod common;

use common::{explicit_diffusion, rel_l2};
use mcls_core::texture::aos_diffuse;
use mcls_core::{DiffusionParams, Plane, TensorField};
use proptest::prelude::*;

fn step_field(n: usize) -> TensorField {
    let half = n / 2;
    TensorField::new(
        Plane::from_fn(n, n, |_, c| if c < half { 0.0 } else { 1.0 }),
        Plane::from_fn(n, n, |r, _| if r < half { 0.0 } else { 1.0 }),
        Plane::from_fn(n, n, |r, c| if r + c < n { 0.0 } else { 1.0 }),
    )
    .unwrap()
}

/// Smooth diffusivity (g <= 1) so that the explicit oracle is stable at dt = 0.05.
fn smooth_params(step_size: f64, steps: usize) -> DiffusionParams {
    DiffusionParams {
        tau: 1.0,
        p: 1.6,
        step_size,
        steps,
        ..Default::default()
    }
}

#[test]
fn aos_matches_explicit_euler_on_step_response() {
    let field = step_field(32);
    let aos = aos_diffuse(&field, &smooth_params(0.25, 8)).unwrap();
    let chans = [field.rr.clone(), field.cc.clone(), field.rc2.clone()];
    let reference = explicit_diffusion(&chans, 1.0, 1.6, 0.05, 40);
    for (a, e) in aos.channels().iter().zip(&reference) {
        let err = rel_l2(a, e);
        assert!(err <= 0.02, "relative L2 {err}");
    }
}

#[test]
fn aos_converges_to_explicit_as_step_shrinks() {
    let field = step_field(24);
    let chans = [field.rr.clone(), field.cc.clone(), field.rc2.clone()];
    let reference = explicit_diffusion(&chans, 1.0, 1.6, 0.01, 100);
    let coarse = aos_diffuse(&field, &smooth_params(0.5, 2)).unwrap();
    let fine = aos_diffuse(&field, &smooth_params(0.1, 10)).unwrap();
    let e_coarse = rel_l2(&coarse.rr, &reference[0]);
    let e_fine = rel_l2(&fine.rr, &reference[0]);
    assert!(e_fine < e_coarse, "{e_fine} vs {e_coarse}");
}

fn random_field(w: usize, h: usize, vals: &[f64]) -> TensorField {
    let n = w * h;
    let ch = |k: usize| Plane::new(w, h, vals[k * n..(k + 1) * n].to_vec()).unwrap();
    TensorField::new(ch(0), ch(1), ch(2)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mean_preserved_and_range_kept(
        w in 3usize..12,
        h in 3usize..12,
        seed in proptest::collection::vec(-50.0f64..200.0, 432),
        large_steps in any::<bool>(),
    ) {
        let field = random_field(w, h, &seed);
        let params = if large_steps { DiffusionParams::default() } else { smooth_params(0.3, 3) };
        let out = aos_diffuse(&field, &params).unwrap();
        for (a, b) in out.channels().iter().zip(field.channels()) {
            let (ma, mb) = (a.mean(), b.mean());
            prop_assert!((ma - mb).abs() <= 1e-6 * mb.abs().max(1e-12) + 1e-12, "mean {ma} vs {mb}");
            let (lo, hi) = b.min_max();
            let (olo, ohi) = a.min_max();
            prop_assert!(olo >= lo - 1e-9 && ohi <= hi + 1e-9, "[{olo}, {ohi}] outside [{lo}, {hi}]");
        }
    }

    #[test]
    fn rotation_commutes_with_diffusion(
        w in 3usize..10,
        h in 3usize..10,
        seed in proptest::collection::vec(0.0f64..100.0, 300),
    ) {
        let field = random_field(w, h, &seed);
        let params = smooth_params(0.7, 2);
        let rotated = TensorField::new(field.rr.rotate90(), field.cc.rotate90(), field.rc2.rotate90()).unwrap();
        let a = aos_diffuse(&rotated, &params).unwrap();
        let b = aos_diffuse(&field, &params).unwrap();
        for (x, y) in a.channels().iter().zip(b.channels()) {
            let y = y.rotate90();
            for (u, v) in x.data().iter().zip(y.data()) {
                prop_assert!((u - v).abs() <= 1e-10 * (1.0 + v.abs()));
            }
        }
    }
}
