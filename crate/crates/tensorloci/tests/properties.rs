use std::rc::Rc;

use proptest::prelude::*;
use tensorloci::classify::orbit_id;
use tensorloci::exactnum::{q, Modulus};
use tensorloci::linalg::Mat;
use tensorloci::locus::{locus_membership, LambdaWitness, LocusStatus, Strategy as Path};
use tensorloci::normal_forms::normal_form;
use tensorloci::tensorcore::{apply_gl, subtract_scaled, ParametricTensor, RankOneTensor, Tensor};
use tensorloci::Q;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn rank(t: &Tensor<Q>) -> usize {
    if t.is_zero_tensor() {
        0
    } else {
        orbit_id(t).unwrap().rank()
    }
}

/// `L·D·U` with unit triangular `L`, `U` and a nonzero diagonal `D`.
fn invertible(n: usize) -> impl Strategy<Value = Mat<Q>> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], n),
    )
        .prop_map(move |(l, u, d)| {
            let tri = |v: &[i64], lower: bool| {
                Mat::from_rows(
                    (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| match (i == j, (i > j) == lower) {
                                    (true, _) => q(1),
                                    (false, true) => q(v[i * n + j]),
                                    _ => q(0),
                                })
                                .collect()
                        })
                        .collect(),
                )
            };
            let diag = Mat::from_rows((0..n).map(|i| (0..n).map(|j| if i == j { q(d[i]) } else { q(0) }).collect()).collect());
            tri(&l, true).mul(&diag).mul(&tri(&u, false))
        })
}

fn gl_triple(shape: Vec<usize>) -> impl Strategy<Value = Vec<Mat<Q>>> {
    shape.into_iter().map(invertible).collect::<Vec<_>>()
}

fn rank_one(shape: Vec<usize>) -> impl Strategy<Value = RankOneTensor<Q>> {
    shape
        .into_iter()
        .map(|n| {
            prop::collection::vec(-3i64..=3, n)
                .prop_filter("nonzero factor", |v| v.iter().any(|&x| x != 0))
                .prop_map(|v| v.into_iter().map(q).collect::<Vec<Q>>())
        })
        .collect::<Vec<_>>()
        .prop_map(|f| RankOneTensor::new(f).unwrap())
}

/// A normal form moved by a random invertible triple, with a rank-one tensor
/// of the same shape.
fn orbit_sample() -> impl Strategy<Value = (u8, Tensor<Q>, RankOneTensor<Q>)> {
    (1u8..=26).prop_flat_map(|n| {
        let t = normal_form(n);
        let shape = t.shape().to_vec();
        (gl_triple(shape.clone()), rank_one(shape))
            .prop_map(move |(g, p)| (n, apply_gl(&t, &g).unwrap(), p))
    })
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn rank_is_subadditive((_n, t, p) in orbit_sample(), c in prop_oneof![-2i64..=-1, 1i64..=2]) {
        let r = rank(&t);
        let moved = subtract_scaled(&t, &q(c), &p).unwrap();
        let s = rank(&moved);
        prop_assert!(s <= r + 1 && r <= s + 1, "rank {r} became {s}");
    }

    #[test]
    fn verdicts_are_gl_invariant(
        (n, p, g) in (1u8..=26).prop_flat_map(|n| {
            let shape = normal_form(n).shape().to_vec();
            (Just(n), rank_one(shape.clone()), gl_triple(shape))
        }),
    ) {
        let t = normal_form(n);
        let moved = apply_gl(&t, &g).unwrap();
        prop_assert_eq!(orbit_id(&moved).unwrap(), orbit_id(&t).unwrap());
        let before = locus_membership(&t, &p, Path::Specialized).unwrap();
        let after = locus_membership(&moved, &p.transform(&g), Path::Specialized).unwrap();
        prop_assert_eq!(before.status, after.status);
    }

    #[test]
    fn factors_outside_the_concise_space_are_forbidden(
        (n, p, axis) in (1u8..=26).prop_flat_map(|n| {
            let shape: Vec<usize> = normal_form(n).shape().iter().map(|d| d + 1).collect();
            (Just(n), rank_one(shape), 0usize..3)
        }),
        c in prop_oneof![-2i64..=-1, 1i64..=2],
    ) {
        let t = normal_form(n);
        let padded_shape: Vec<usize> = t.shape().iter().map(|d| d + 1).collect();
        let mut padded = Tensor::zeros(&padded_shape);
        for idx in tensorloci::tensorcore::multi_indices(t.shape()) {
            padded.set(&idx, t.get(&idx).clone());
        }
        let mut factors = p.factors.clone();
        let last = factors[axis].len() - 1;
        factors[axis][last] = q(c);
        let p = RankOneTensor::new(factors).unwrap();
        for strategy in [Path::Specialized, Path::Generic] {
            let v = locus_membership(&padded, &p, strategy).unwrap();
            prop_assert_eq!(v.status, LocusStatus::Forbidden);
        }
    }
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn witnesses_drop_the_rank((_n, t, p) in orbit_sample()) {
        let r = rank(&t);
        let v = locus_membership(&t, &p, Path::Specialized).unwrap();
        match &v.witness {
            None => prop_assert_eq!(v.status, LocusStatus::Forbidden),
            Some(LambdaWitness::Value(lam)) => {
                prop_assert!(*lam != q(0));
                prop_assert_eq!(rank(&subtract_scaled(&t, lam, &p).unwrap()), r - 1);
            }
            Some(LambdaWitness::MinimalPoly(f)) => {
                let m: Rc<Modulus> = Modulus::irreducible(f);
                let family = ParametricTensor::new(t.clone(), p.clone()).unwrap();
                prop_assert_eq!(orbit_id(&family.over_extension(&m)).unwrap().rank(), r - 1);
            }
        }
    }
}
