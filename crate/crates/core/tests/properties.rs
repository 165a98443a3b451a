mod common;

use dioclt::counting::window_counts;
use dioclt::{delta, ApproximationProblem, Mode, QLower, SamplePoint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (ApproximationProblem, SamplePoint, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = common::random_problem(&mut rng);
    let s = common::random_sample(&mut rng, &p);
    let t = common::random_t(&mut rng);
    (p, s, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotone_in_t(seed in any::<u64>(), dt in 0.0f64..4.0) {
        let (p, s, t) = setup(seed);
        let a = delta(&p, &s, t).unwrap().total;
        let b = delta(&p, &s, t + dt).unwrap().total;
        prop_assert!(a <= b);
    }

    #[test]
    fn monotone_in_theta(seed in any::<u64>(), scale in 1.0f64..2.0) {
        let (p, s, t) = setup(seed);
        let mut wider = p.clone();
        wider.thetas.iter_mut().for_each(|x| *x *= scale);
        prop_assert!(delta(&p, &s, t).unwrap().total <= delta(&wider, &s, t).unwrap().total);
    }

    #[test]
    fn integer_shifts_of_parameters(seed in any::<u64>(), i in 0usize..6, k in -3i64..=3) {
        let (p, s, t) = setup(seed);
        let base = delta(&p, &s, t).unwrap().total;
        let mut shifted = s.clone();
        let period = p.u_period();
        let i = i % shifted.u.len();
        shifted.u[i] += k as f64 * period;
        prop_assert_eq!(delta(&p, &shifted, t).unwrap().total, base);
        if !p.mode.is_congruence() {
            let mut sv = s.clone();
            let j = i % sv.v.len();
            sv.v[j] += k as f64;
            prop_assert_eq!(delta(&p, &sv, t).unwrap().total, base);
        }
    }

    #[test]
    fn residues_are_taken_mod_n(seed in any::<u64>(), k in -2i64..=2) {
        let (p, s, t) = setup(seed);
        if let Mode::Congruence { residues, modulus } = &p.mode {
            let moved: Vec<i64> = residues.iter().map(|r| r + k * *modulus as i64).collect();
            let q = p.clone().with_congruence(moved, *modulus);
            prop_assert_eq!(delta(&p, &s, t).unwrap().total, delta(&q, &s, t).unwrap().total);
        }
    }

    #[test]
    fn windows_sum_to_count(seed in any::<u64>(), windows in 1usize..=4) {
        let (p, s, _) = setup(seed);
        let w = window_counts(&p, &s, windows).unwrap();
        let whole = delta(&p.clone().with_q_lower(QLower::Inclusive1), &s, (windows as f64).exp()).unwrap();
        prop_assert_eq!(w.total(), whole.total);
    }

    #[test]
    fn residue_classes_partition(seed in any::<u64>(), modulus in 2u64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ApproximationProblem::new(2, 1, vec![1.3, 0.7]);
        let s = SamplePoint { u: vec![rand::Rng::gen(&mut rng), rand::Rng::gen(&mut rng)], v: vec![0.0, 0.0] };
        let t = 9.5;
        let whole = delta(&p, &s, t).unwrap().total;
        let nm = modulus as i64;
        let mut sum = 0;
        for r0 in 0..nm {
            for r1 in 0..nm {
                for r2 in 0..nm {
                    sum += delta(&p.clone().with_congruence(vec![r0, r1, r2], modulus), &s, t).unwrap().total;
                }
            }
        }
        prop_assert_eq!(sum, whole);
    }
}
