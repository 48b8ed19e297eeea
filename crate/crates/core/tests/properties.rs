use faw_core::fock::{
    build_fock, fock_freeness_defect, fock_moment, second_quantize, second_quantize_ut,
};
use faw_core::hilbert::{RepVector, Representation};
use faw_core::linalg::CMatrix;
use faw_core::measures::{
    bernoulli_product, bernoulli_tail_bound, conv_power, convolve, truncate_bernoulli, SymmetricMeasure,
};
use faw_core::moments::{
    embed, freeness_defect, moment_gram, modular_flow_word, quasi_free_moment, CopyTag, Word, WordPolynomial,
};
use faw_core::sampling::{random_real_vector, random_vector, random_word};
use faw_core::{Representation64, SymmetricMeasure64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Atomic measure with `k` random atoms and a random weight at zero.
fn atomic(seed: u64, k: usize) -> SymmetricMeasure64 {
    use rand::Rng;
    let mut r = rng(seed);
    let raw: Vec<f64> = (0..=k).map(|_| r.random_range(0.1..1.0)).collect();
    let total = raw[0] + 2.0 * raw[1..].iter().sum::<f64>();
    let mut x = 0.0;
    let pairs = raw[1..]
        .iter()
        .map(|w| {
            x += r.random_range(0.2..1.5);
            (x, w / total)
        })
        .collect();
    SymmetricMeasure::atomic(pairs, raw[0] / total).unwrap()
}

fn representation() -> impl Strategy<Value = Representation64> {
    prop_oneof![
        (1usize..4).prop_map(|d| Representation::trivial(d).unwrap()),
        (-3.0f64..3.0, 0usize..2).prop_map(|(w, k)| Representation::finite(vec![w], k).unwrap()),
        (0.1f64..2.0, 0.1f64..2.0).prop_map(|(a, b)| Representation::finite(vec![a, -b], 1).unwrap()),
        (any::<u64>(), 1usize..3).prop_map(|(s, k)| Representation::from_measure(atomic(s, k)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn deformed_inner_product_is_hermitian_and_positive(h in representation(), seed: u64) {
        let mut r = rng(seed);
        let vs: Vec<_> = (0..4).map(|_| random_vector(&h, &mut r)).collect();
        for a in &vs {
            for b in &vs {
                let ab = h.inner_u(a, b).unwrap();
                let ba = h.inner_u(b, a).unwrap();
                prop_assert!((ab - ba.conj()).norm() < 1e-13);
            }
        }
        let g = CMatrix::from_fn(4, 4, |i, j| h.inner_u(&vs[j], &vs[i]).unwrap());
        prop_assert!(g.is_positive_semidefinite(1e-12));
    }

    #[test]
    fn deformed_norm_agrees_on_the_real_subspace(h in representation(), seed: u64) {
        let mut r = rng(seed);
        let (x, y) = (random_real_vector(&h, &mut r).unwrap(), random_real_vector(&h, &mut r).unwrap());
        prop_assert!((h.norm_u(&x).unwrap() - h.norm(&x).unwrap()).abs() < 1e-13);
        prop_assert!((h.inner_u(&x, &y).unwrap().re - h.inner(&x, &y).unwrap().re).abs() < 1e-13);
    }

    #[test]
    fn deformed_inner_product_is_flow_invariant(h in representation(), seed: u64, t in -30.0f64..30.0) {
        let mut r = rng(seed);
        let (x, y) = (random_vector(&h, &mut r), random_vector(&h, &mut r));
        let before = h.inner_u(&x, &y).unwrap();
        let after = h.inner_u(&h.apply_ut(&x, t).unwrap(), &h.apply_ut(&y, t).unwrap()).unwrap();
        prop_assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn moments_are_hermitian(h in representation(), seed: u64, n in 0usize..7) {
        let w = random_word(&h, n, &mut rng(seed)).unwrap();
        let m = quasi_free_moment(&h, &w).unwrap();
        let m_adj = quasi_free_moment(&h, &w.adjoint()).unwrap();
        prop_assert!((m - m_adj.conj()).norm() < 1e-13);
        if n % 2 == 1 {
            prop_assert_eq!(m.norm(), 0.0);
        }
    }

    #[test]
    fn moment_gram_is_positive(h in representation(), seed: u64) {
        let mut r = rng(seed);
        let mut words = vec![Word::unit()];
        for n in 1..=3 {
            words.push(random_word(&h, n, &mut r).unwrap());
        }
        let g = moment_gram(&h, &words).unwrap();
        prop_assert!(g.is_positive_semidefinite(1e-12));
    }

    #[test]
    fn moments_are_flow_invariant(h in representation(), seed: u64, t in -50.0f64..50.0) {
        let w = random_word(&h, 4, &mut rng(seed)).unwrap();
        let a = quasi_free_moment(&h, &w).unwrap();
        let b = quasi_free_moment(&h, &modular_flow_word(&h, &w, t).unwrap()).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn measure_fourier_is_even_bounded_and_normalized(seed: u64, k in 1usize..5, t in -100.0f64..100.0) {
        let mu = atomic(seed, k);
        prop_assert_eq!(mu.fourier(0.0), 1.0);
        prop_assert_eq!(mu.fourier(t), mu.fourier(-t));
        prop_assert!(mu.fourier(t).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn convolution_is_fourier_multiplicative(s1: u64, s2: u64, t in -40.0f64..40.0) {
        let (mu, nu) = (atomic(s1, 3), atomic(s2, 2));
        let c = convolve(&mu, &nu).unwrap();
        prop_assert!((c.fourier(t) - mu.fourier(t) * nu.fourier(t)).abs() <= 1e-12);
    }

    #[test]
    fn bernoulli_truncation_obeys_tail_bound(theta in 1.3f64..4.0, k in 1usize..10, t in -30.0f64..30.0) {
        let full = SymmetricMeasure::bernoulli(theta).unwrap().fourier(t);
        let partial = bernoulli_product(theta, t, k);
        prop_assert!((full - partial).abs() <= bernoulli_tail_bound(theta, t, k) + 1e-13);
        let atoms = truncate_bernoulli(theta, k).unwrap();
        prop_assert!((atoms.fourier(t) - partial).abs() <= 1e-12);
    }

    #[test]
    fn tensor_power_correlation_is_convolution_power(seed: u64, n in 1usize..4, t in -10.0f64..10.0) {
        let mu = atomic(seed, 2);
        let h = Representation::from_measure(mu.clone()).unwrap();
        let ones = vec![RepVector::from_real(&vec![1.0; h.dimension()]); n];
        let z = h.tensor_power_correlation(&ones, &ones, t).unwrap();
        prop_assert!((z - conv_power(&mu, n).unwrap().fourier(t)).norm() <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fock_model_reproduces_the_pairing_formula(h in representation(), seed: u64, n in 1usize..5) {
        prop_assume!(h.dimension() <= 3);
        let w = random_word(&h, n, &mut rng(seed)).unwrap();
        let fock = build_fock(&h, n).unwrap();
        let a = quasi_free_moment(&h, &w).unwrap();
        let b = fock_moment(&fock, &w).unwrap();
        prop_assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()));
        // One more level changes nothing.
        let c = fock_moment(&build_fock(&h, n + 1).unwrap(), &w).unwrap();
        prop_assert!((b - c).norm() <= 1e-14);
    }

    #[test]
    fn second_quantization_is_functorial(omega in 0.1f64..2.0, s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let h = Representation::finite(vec![omega], 1).unwrap();
        let fock = build_fock(&h, 3).unwrap();
        let (fs, ft) = (second_quantize_ut(&fock, s).unwrap(), second_quantize_ut(&fock, t).unwrap());
        let fst = second_quantize_ut(&fock, s + t).unwrap();
        prop_assert!((&fs.compose(&ft).into_matrix() - fst.matrix()).frobenius_norm() < 1e-12);
        let vs = fock.one_particle_matrix(|x| h.apply_ut(x, s)).unwrap();
        let vt = fock.one_particle_matrix(|x| h.apply_ut(x, t)).unwrap();
        let prod = second_quantize(&fock, &vs.matmul(&vt)).unwrap();
        prop_assert!((prod.matrix() - fst.matrix()).frobenius_norm() < 1e-12);
    }

    #[test]
    fn freeness_defect_agrees_with_fock(omega in 0.1f64..2.0, seed: u64) {
        let h = Representation64::rotation(omega).unwrap();
        let doubled = h.direct_sum(&h);
        let mut r = rng(seed);
        let mut factors = Vec::new();
        for (i, tag) in [CopyTag::First, CopyTag::Second, CopyTag::First].into_iter().enumerate() {
            let letters = (0..1 + i % 2)
                .map(|_| embed(tag, &random_real_vector(&h, &mut r).unwrap()))
                .collect();
            let p = WordPolynomial::from_word(Word::new(&doubled, letters).unwrap()).centered(&doubled).unwrap();
            factors.push((tag, p));
        }
        let fock = build_fock(&doubled, 4).unwrap();
        let a = freeness_defect(&doubled, &factors).unwrap();
        let b = fock_freeness_defect(&fock, &factors).unwrap();
        prop_assert!(a <= 1e-12 && b <= 1e-10);
    }
}

#[test]
fn viete_identity_on_a_grid() {
    let mu = SymmetricMeasure::<f64>::bernoulli(2.0).unwrap();
    for i in 0..=2000 {
        let t = -50.0 + 0.05 * i as f64;
        let sinc = if t == 0.0 { 1.0 } else { t.sin() / t };
        assert!((mu.fourier(t) - sinc).abs() <= 1e-12, "t = {t}");
    }
}

#[test]
fn f32_and_f64_instantiations_agree() {
    let h32 = Representation::<f32>::finite(vec![0.7], 1).unwrap();
    let h64 = Representation::<f64>::finite(vec![0.7], 1).unwrap();
    let x32 = RepVector::<f32>::from_real(&[0.3, -0.8, 0.5]);
    let x64 = RepVector::<f64>::from_real(&[0.3, -0.8, 0.5]);
    let y32 = RepVector::<f32>::from_real(&[1.0, 0.2, -0.4]);
    let y64 = RepVector::<f64>::from_real(&[1.0, 0.2, -0.4]);
    let m32 = quasi_free_moment(&h32, &Word::new(&h32, vec![x32.clone(), y32.clone(), x32, y32]).unwrap()).unwrap();
    let m64 = quasi_free_moment(&h64, &Word::new(&h64, vec![x64.clone(), y64.clone(), x64, y64]).unwrap()).unwrap();
    assert!((m32.re as f64 - m64.re).abs() < 1e-6);
    assert!((m32.im as f64 - m64.im).abs() < 1e-6);
}
