use proptest::prelude::*;
use transdeform::algebra::{Field, Scalar};
use transdeform::arrangement::Arrangement;
use transdeform::deformation::Deformations;
use transdeform::identity::{census, verify_decomposition_finite, verify_decomposition_infinite};
use transdeform::matroid::Representation;
use transdeform::nbc::{affine_circuits, affine_nbc_counts, char_poly_nbc, TotalOrder};

fn instance(max_n: usize, max_m: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_n, 1..=max_m).prop_flat_map(|(n, m)| {
        (Just(n), prop::collection::vec(prop::collection::vec(-2i64..=2, n), m)).prop_map(|(n, mut rows)| {
            for row in &mut rows {
                if row.iter().all(|&x| x == 0) {
                    row[0] = 1;
                }
            }
            (n, rows)
        })
    })
}

fn rep(field: Field, n: usize, rows: &[Vec<i64>]) -> Representation {
    let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Representation::from_i64(field, n, &rows).unwrap()
}

fn translation(field: Field, g: &[i64]) -> Vec<Scalar> {
    g.iter().map(|&x| field.from_i64(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn routes_agree((n, rows) in instance(3, 5), g in prop::collection::vec(-2i64..=2, 5)) {
        let rep = rep(Field::Rationals, n, &rows);
        let arr = Arrangement::from_representation(&rep, &translation(Field::Rationals, &g[..rep.m()])).unwrap();
        let chi = arr.char_poly();
        prop_assert_eq!(&chi, &arr.char_poly_whitney());
        prop_assert_eq!(&chi, &char_poly_nbc(&arr, &TotalOrder::natural(arr.len())).unwrap());
        prop_assert!(arr.intersection_semilattice().verify_mobius().is_ok());
    }

    #[test]
    fn affine_circuits_are_consistent_circuits((n, rows) in instance(3, 5), g in prop::collection::vec(-1i64..=1, 5)) {
        let rep = rep(Field::Rationals, n, &rows);
        let g = translation(Field::Rationals, &g[..rep.m()]);
        let dfm = Deformations::new(rep.clone()).unwrap();
        let sig = dfm.consistency_signature(&g).unwrap();
        let arr = Arrangement::from_representation(&rep, &g).unwrap();
        let mut affine: Vec<Vec<usize>> = affine_circuits(&arr).into_iter().map(|c| c.0).collect();
        let mut consistent: Vec<Vec<usize>> = sig.circuits().iter().map(|c| c.indices().to_vec()).collect();
        affine.sort();
        consistent.sort();
        prop_assert_eq!(affine, consistent);
    }

    #[test]
    fn equivalent_translations_share_chi((n, rows) in instance(2, 4), g in prop::collection::vec(-1i64..=1, 4), h in prop::collection::vec(-1i64..=1, 4)) {
        let rep = rep(Field::Rationals, n, &rows);
        let dfm = Deformations::new(rep.clone()).unwrap();
        let (g, h) = (translation(Field::Rationals, &g[..rep.m()]), translation(Field::Rationals, &h[..rep.m()]));
        if dfm.equivalent(&g, &h).unwrap() {
            prop_assert_eq!(dfm.char_poly_at(&g).unwrap(), dfm.char_poly_at(&h).unwrap());
        }
    }

    #[test]
    fn nbc_counts_ignore_order((n, rows) in instance(3, 5), g in prop::collection::vec(-1i64..=1, 5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let rep = rep(Field::Rationals, n, &rows);
        let arr = Arrangement::from_representation(&rep, &translation(Field::Rationals, &g[..rep.m()])).unwrap();
        let mut seq: Vec<usize> = (0..arr.len()).collect();
        seq.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let shuffled = TotalOrder::from_sequence(seq).unwrap();
        prop_assert_eq!(affine_nbc_counts(&arr, &TotalOrder::natural(arr.len())).unwrap(), affine_nbc_counts(&arr, &shuffled).unwrap());
    }

    #[test]
    fn rational_decomposition((n, rows) in instance(3, 4)) {
        let dfm = Deformations::new(rep(Field::Rationals, n, &rows)).unwrap();
        let report = verify_decomposition_infinite(&dfm).unwrap();
        prop_assert!(report.holds(), "{} != {}", report.lhs, report.rhs);
    }

    #[test]
    fn finite_decomposition((n, rows) in instance(2, 3), p in prop::sample::select(vec![2u64, 3, 5])) {
        let field = Field::prime(p).unwrap();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|mut r| {
            if r.iter().all(|&x| x.rem_euclid(p as i64) == 0) {
                r[0] = 1;
            }
            r
        }).collect();
        let rep = rep(field, n, &rows);
        let dfm = Deformations::new(rep.clone()).unwrap();
        let report = verify_decomposition_finite(&dfm).unwrap();
        prop_assert!(report.holds(), "{report:?}");
        prop_assert!(census(&rep).unwrap().holds());
    }
}
