use fo_poisson::fixtures;
use fo_poisson::polar::{harmonic_check, HarmonicOutcome};
use fo_poisson::rng::SplitMix64;

#[test]
fn random_trials_verify_within_tolerance() {
    let mut rng = SplitMix64::new(2024);
    let (mut verified, mut inconclusive, mut worst) = (0, 0, 0.0f64);
    for _ in 0..60 {
        let pencil = fixtures::random_generic_pencil(&mut rng);
        let p = fixtures::random_float_point(&mut rng);
        let r = harmonic_check(&pencil, p, 1e-9).unwrap();
        match r.outcome {
            HarmonicOutcome::Verified => {
                verified += 1;
                worst = worst.max(r.max_residual);
            }
            HarmonicOutcome::Inconclusive(_) => inconclusive += 1,
            HarmonicOutcome::Refuted => panic!("refuted at {p:?} for {pencil}: {r:?}"),
        }
    }
    assert!(
        verified >= 20,
        "verified {verified}, inconclusive {inconclusive}"
    );
    assert!(worst <= 1e-9);
}

#[test]
fn points_on_the_base_curve_are_inconclusive() {
    let mut rng = SplitMix64::new(8);
    let p = fixtures::base_point();
    let pencil = fixtures::pencil_through_point(&mut rng, &p);
    let r = harmonic_check(&pencil, p.to_f64(), 1e-9).unwrap();
    assert!(matches!(r.outcome, HarmonicOutcome::Inconclusive(_)));
}
