use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quivinv::exactalg::{LaurentPolyQ, RationalFunctionQ};
use quivinv::plethlog::{GradedSeries, Truncation};
use quivinv::selftest::{random_coefficient, random_series, random_symfunc};
use quivinv::symfunc::{top_degree_u_limit, u_specialize, u_specialize_slots, HomogSymFunc};

fn random_scalar_series(rng: &mut ChaCha8Rng, bounds: Vec<usize>) -> GradedSeries<RationalFunctionQ> {
    let t = Truncation::boxed(bounds);
    let mut s = GradedSeries::one(Vec::new(), t.clone());
    for v in t.keys().into_iter().skip(1) {
        if rng.gen_bool(0.7) {
            s.insert(v, random_coefficient(rng));
        }
    }
    s
}

/// Two alphabets, one per variable.
fn random_two_slot_series(rng: &mut ChaCha8Rng, bound: usize) -> GradedSeries<HomogSymFunc> {
    let t = Truncation::boxed(vec![bound, bound]);
    let mut s = GradedSeries::one(vec![0, 1], t.clone());
    for v in t.keys().into_iter().skip(1) {
        if rng.gen_bool(0.6) {
            let f = random_symfunc(rng, v[0]).tensor(&random_symfunc(rng, v[1]));
            s.insert(v, f);
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn log_of_product_is_sum_of_logs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_scalar_series(&mut rng, vec![4, 4]);
        let b = random_scalar_series(&mut rng, vec![4, 4]);
        let lhs = a.series_mul(&b).unwrap().pleth_log().unwrap();
        let rhs = a.pleth_log().unwrap().add(&b.pleth_log().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn log_of_symmetric_product(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_series(&mut rng, 4);
        let b = random_series(&mut rng, 4);
        let lhs = a.series_mul(&b).unwrap().pleth_log().unwrap();
        let rhs = a.pleth_log().unwrap().add(&b.pleth_log().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_of_every_alphabet_commutes_with_log(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_two_slot_series(&mut rng, 3);
        let lhs = s.pleth_log().unwrap().convert(Vec::new(), u_specialize_slots);
        let rhs = s.convert(Vec::new(), u_specialize_slots).pleth_log().unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn exp_and_log_are_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe4b);
    for i in 0..50 {
        let s = random_series(&mut rng, 5);
        let log = s.pleth_log().unwrap();
        assert_eq!(log.pleth_exp().unwrap(), s, "series {i}");
        assert_eq!(log.pleth_exp().unwrap().pleth_log().unwrap(), log, "series {i}");
        let scalar = random_scalar_series(&mut rng, vec![3, 3]);
        assert_eq!(scalar.pleth_log().unwrap().pleth_exp().unwrap(), scalar, "scalar series {i}");
    }
}

#[test]
fn log_commutes_with_specialization_and_top_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x31);
    let spec = |f: &HomogSymFunc| u_specialize(f).unwrap();
    for i in 0..50 {
        let s = random_series(&mut rng, 5);
        let log = s.pleth_log().unwrap();
        assert_eq!(
            log.convert(Vec::new(), spec),
            s.convert(Vec::new(), spec).pleth_log().unwrap(),
            "specialization, series {i}"
        );
        assert_eq!(
            log.convert(Vec::new(), top_degree_u_limit),
            s.convert(Vec::new(), top_degree_u_limit).pleth_log().unwrap(),
            "top degree, series {i}"
        );
    }
}

#[test]
fn adams_operations_raise_q() {
    // Exp(qT) = Σ q^n T^n, which holds only if ψ_d sends q to q^d
    let coeffs: Vec<RationalFunctionQ> = (0..=6).map(|n| RationalFunctionQ::monomial(1, n)).collect();
    let s = quivinv::plethlog::scalar_series(&coeffs, 6);
    let log = s.pleth_log().unwrap();
    let mut expected = GradedSeries::zero(Vec::new(), Truncation::boxed(vec![6]));
    expected.insert(vec![1], RationalFunctionQ::q());
    assert_eq!(log, expected);
    // and Log(1/(1 − T)^{(1 + q)}) = (1 + q) T
    let mut v = GradedSeries::zero(Vec::new(), Truncation::boxed(vec![5]));
    v.insert(vec![1], RationalFunctionQ::from_poly(&LaurentPolyQ::one() + &LaurentPolyQ::q()));
    assert_eq!(v.pleth_exp().unwrap().pleth_log().unwrap(), v);
}
