use proptest::prelude::*;

use quivinv::quiver::{columns_multipartition, d_mu_multi, Quiver, RootClass};

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=4)
        .prop_flat_map(|r| (Just(r), prop::collection::vec((0..r, 0..r), 0..7)))
        .prop_map(|(r, arrows)| Quiver::new(r, arrows).unwrap())
}

fn quiver_and_dim() -> impl Strategy<Value = (Quiver, Vec<usize>)> {
    quiver().prop_flat_map(|q| {
        let r = q.num_vertices();
        (Just(q), prop::collection::vec(0usize..=4, r))
    })
}

/// `Σ v_i² − Σ_{i→j} v_i v_j`, straight from the arrow list.
fn tits_by_arrows(q: &Quiver, v: &[usize]) -> i64 {
    let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
    let arrows: i64 = q.arrows().iter().map(|&(i, j)| (v[i] * v[j]) as i64).sum();
    sq - arrows
}

fn reflect(q: &Quiver, v: &[usize], i: usize) -> Option<Vec<usize>> {
    let c = q.cartan();
    let cv: i64 = (0..v.len()).map(|j| c[i][j] * v[j] as i64).sum();
    let new = v[i] as i64 - cv;
    if new < 0 {
        return None;
    }
    let mut w = v.to_vec();
    w[i] = new as usize;
    Some(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn tits_form_matches_arrow_sum((q, v) in quiver_and_dim()) {
        prop_assert_eq!(q.cartan(), q.opposite().cartan());
        let c = q.cartan();
        let half_vcv: i64 = (0..v.len())
            .flat_map(|i| (0..v.len()).map(move |j| (i, j)))
            .map(|(i, j)| c[i][j] * (v[i] * v[j]) as i64)
            .sum::<i64>();
        prop_assert_eq!(half_vcv % 2, 0);
        prop_assert_eq!(q.tits_form(&v), half_vcv / 2);
        prop_assert_eq!(q.tits_form(&v), tits_by_arrows(&q, &v));
        let sq: i64 = v.iter().map(|&x| (x * x) as i64).sum();
        prop_assert_eq!(q.double().tits_form(&v), 2 * q.tits_form(&v) - sq);
    }

    #[test]
    fn text_round_trip_is_exact(q in quiver()) {
        let text = q.serialize();
        let back = Quiver::parse(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(back.serialize(), text);
    }

    #[test]
    fn classification_is_reflection_invariant((q, v) in quiver_and_dim()) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let class = q.classify_root(&v).unwrap();
        let tits = q.tits_form(&v);
        match class {
            RootClass::RealRoot => prop_assert_eq!(tits, 1),
            RootClass::ImaginaryRoot => prop_assert!(tits <= 0),
            RootClass::NotRoot => {}
        }
        for i in 0..q.num_vertices() {
            if q.num_loops(i) > 0 || v[i] == 0 {
                continue;
            }
            if let Some(w) = reflect(&q, &v, i) {
                if w.iter().any(|&x| x > 0) {
                    prop_assert_eq!(q.classify_root(&w).unwrap(), class, "s_{}({:?}) = {:?}", i, v, w);
                }
            }
        }
    }

    #[test]
    fn column_legs_dimension_formula((q, v) in quiver_and_dim(), extra in prop::collection::vec(0usize..=2, 4)) {
        // μ = 1^v hangs a leg with dimensions v_i − 1, …, 1 off vertex i, once per leg,
        // so d = 1 − q_Γ(v) + Σ_i k_i binom(v_i, 2)
        let legs: Vec<usize> = (0..q.num_vertices()).map(|i| 1 + extra[i]).collect();
        let mu = columns_multipartition(&legs, &v);
        let d = d_mu_multi(&q, &legs, &mu).unwrap();
        let correction: i64 = legs.iter().zip(&v).map(|(&k, &n)| (k * n * n.saturating_sub(1) / 2) as i64).sum();
        prop_assert_eq!(d, 1 - q.tits_form(&v) + correction);
        let (g, gv) = q.column_legs(&legs, &v).unwrap();
        prop_assert_eq!(1 - g.tits_form(&gv), d);
    }
}

#[test]
fn simple_roots() {
    let q = Quiver::new(3, vec![(0, 1), (1, 1), (1, 2)]).unwrap();
    assert_eq!(q.classify_root(&[1, 0, 0]).unwrap(), RootClass::RealRoot);
    assert_eq!(q.classify_root(&[0, 1, 0]).unwrap(), RootClass::ImaginaryRoot);
    assert_eq!(q.classify_root(&[1, 0, 1]).unwrap(), RootClass::NotRoot);
    assert_eq!(q.classify_root(&[2, 0, 0]).unwrap(), RootClass::NotRoot);
    // every multiple of a loop vertex is an imaginary root
    for n in 1..=5 {
        assert_eq!(Quiver::loops(2).classify_root(&[n]).unwrap(), RootClass::ImaginaryRoot);
    }
    // affine A1: (n, n) imaginary, (n, n+1) real
    let k = Quiver::kronecker(2);
    assert_eq!(k.classify_root(&[3, 3]).unwrap(), RootClass::ImaginaryRoot);
    assert_eq!(k.classify_root(&[3, 4]).unwrap(), RootClass::RealRoot);
    assert_eq!(k.classify_root(&[1, 3]).unwrap(), RootClass::NotRoot);
}
