use fo_poisson::fixtures::{random_multivector, random_pencil};
use fo_poisson::fo::{fo_bivector, verify_jacobi};
use fo_poisson::rng::SplitMix64;
use fo_poisson::{MultiPoly, Multivector};
use proptest::prelude::*;

fn poly(s: &str, n: usize) -> MultiPoly {
    MultiPoly::parse(s, n).unwrap()
}

/// `{f, g} = Σ π_ij ∂_i f ∂_j g` straight from the components.
fn pb(pi: &Multivector, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let n = pi.nvars();
    let mut acc = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += &(&pi.component(&[i, j]) * &(&f.diff(i) * &g.diff(j)));
            }
        }
    }
    acc
}

/// Jacobi identity on all triples of coordinate functions.
fn oracle_is_poisson(pi: &Multivector) -> bool {
    let n = pi.nvars();
    let x = |i| MultiPoly::var(n, i);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let j = &(&pb(pi, &x(a), &pb(pi, &x(b), &x(c)))
                    + &pb(pi, &x(b), &pb(pi, &x(c), &x(a))))
                    + &pb(pi, &x(c), &pb(pi, &x(a), &x(b)));
                if !j.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

#[test]
fn rotation_algebra_bivector_is_poisson() {
    // {x1,x2} = x3, {x2,x3} = x1, {x3,x1} = 0 is a Lie–Poisson structure
    let pi = Multivector::from_terms(
        3,
        2,
        [(vec![0, 1], poly("x3", 3)), (vec![1, 2], poly("x1", 3))],
    );
    assert!(oracle_is_poisson(&pi));
    assert!(verify_jacobi(&pi).unwrap().is_poisson);
}

#[test]
fn control_bivector_is_not_poisson() {
    // {x1,x2} = x2, {x2,x3} = x1: the Jacobiator of (x1,x2,x3) is -x1
    let pi = Multivector::from_terms(
        3,
        2,
        [(vec![0, 1], poly("x2", 3)), (vec![1, 2], poly("x1", 3))],
    );
    assert!(!oracle_is_poisson(&pi));
    let r = verify_jacobi(&pi).unwrap();
    assert!(!r.is_poisson);
    assert!(!r.jacobiator.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schouten_square_agrees_with_oracle(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let pi = random_multivector(&mut rng, 3, 2, 2);
        prop_assert_eq!(verify_jacobi(&pi).unwrap().is_poisson, oracle_is_poisson(&pi));
    }

    #[test]
    fn pencil_bivectors_pass_the_oracle(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let p = random_pencil(&mut rng);
        let pi = fo_bivector(p.q1(), p.q2()).unwrap().pi;
        prop_assert!(oracle_is_poisson(&pi));
    }
}
