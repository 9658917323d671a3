mod common;

use std::sync::OnceLock;

use common::Naive;
use hullcraft::hullctl::reduce_hull;
use hullcraft::{build_tower, Elt, Field, GfMatrix, LinearCode};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3)]
            .into_iter()
            .map(|(p, m)| build_tower(p, m).unwrap())
            .collect()
    })
}

fn elt(f: &Field) -> impl Strategy<Value = Elt> {
    (0..f.order()).prop_map(Elt)
}

fn unit(f: &Field) -> impl Strategy<Value = Elt> {
    (1..f.order()).prop_map(Elt)
}

fn field_and_pair() -> impl Strategy<Value = (Field, Elt, Elt)> {
    (0..fields().len()).prop_flat_map(|i| {
        let f = fields()[i].clone();
        (Just(f.clone()), elt(&f), elt(&f))
    })
}

fn random_code(f: &Field, n: usize, k: usize, seed: u64) -> LinearCode {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<Elt>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| Elt(rng.random_range(0..f.order())))
                .collect()
        })
        .collect();
    LinearCode::new(&GfMatrix::from_rows(f, n, rows).unwrap())
}

/// A random code of length 2..=12 over one of the test fields.
fn code() -> impl Strategy<Value = LinearCode> {
    (0..fields().len(), 2usize..=12, any::<u64>()).prop_flat_map(|(i, n, seed)| {
        (1..n).prop_map(move |k| random_code(&fields()[i], n, k, seed))
    })
}

fn code_with_units() -> impl Strategy<Value = (LinearCode, Vec<Elt>)> {
    code().prop_flat_map(|c| {
        let f = c.field().clone();
        let n = c.n();
        (Just(c), proptest::collection::vec(unit(&f), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn frobenius_is_an_involutive_automorphism((f, a, b) in field_and_pair()) {
        let fr = |x| f.frobenius(x);
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(fr(a)), a);
        prop_assert_eq!(fr(a) == a, f.in_base_field(a));
    }

    #[test]
    fn norm_is_multiplicative_into_base_field((f, a, b) in field_and_pair()) {
        prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        prop_assert!(f.in_base_field(f.norm(a)));
        prop_assert_eq!(f.norm(a), f.mul(a, f.frobenius(a)));
        if let Some(pre) = f.norm_preimage(f.norm(a)) {
            prop_assert_eq!(f.norm(pre), f.norm(a));
        } else {
            prop_assert!(false, "norm has no preimage");
        }
    }

    #[test]
    fn pow_matches_naive((f, a, _b) in field_and_pair(), e in 0u64..600) {
        let nv = Naive::of(&f);
        prop_assert_eq!(f.pow(a, e), nv.pow(a, e));
    }

    #[test]
    fn dual_dimensions_and_double_dual(c in code()) {
        let e = c.euclidean_dual();
        let h = c.hermitian_dual();
        prop_assert_eq!(c.k() + e.k(), c.n());
        prop_assert_eq!(c.k() + h.k(), c.n());
        prop_assert_eq!(&e.euclidean_dual(), &c);
        prop_assert_eq!(&h.hermitian_dual(), &c);
        prop_assert_eq!(&h, &e.conjugate());
    }

    #[test]
    fn hull_is_shared_with_dual_and_matches_gram(c in code()) {
        let h = c.hull_dim();
        prop_assert_eq!(h, c.hermitian_dual().hull_dim());
        prop_assert_eq!(h, Naive::of(c.field()).gram_hull_dim(&c));
        let report = c.hermitian_hull();
        let hull = LinearCode::new(&report.hull_basis);
        prop_assert_eq!(hull.k(), h);
        prop_assert!(hull.is_subcode_of(&c));
        prop_assert!(hull.is_subcode_of(&c.hermitian_dual()));
    }

    #[test]
    fn scaled_dual((c, v) in code_with_units()) {
        let f = c.field();
        let w: Vec<Elt> = v.iter().map(|&x| f.inv(f.frobenius(x)).unwrap()).collect();
        prop_assert_eq!(
            c.scale(&v).unwrap().hermitian_dual(),
            c.hermitian_dual().scale(&w).unwrap()
        );
        // Norm-one scalars leave the hull untouched.
        let norm_one: Vec<Elt> = v.iter().map(|&x| f.div(x, f.frobenius(x)).unwrap()).collect();
        prop_assert_eq!(c.scale(&norm_one).unwrap().hull_dim(), c.hull_dim());
    }

    #[test]
    fn puncture_shorten_duality(c in code(), picks in proptest::collection::vec(any::<usize>(), 1..4)) {
        let n = c.n();
        let s: Vec<usize> = picks.iter().map(|i| i % n).collect();
        let mut distinct = s.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assume!(distinct.len() < n);
        prop_assert_eq!(
            c.puncture(&s).unwrap().hermitian_dual(),
            c.hermitian_dual().shorten(&s).unwrap()
        );
        prop_assert_eq!(
            c.shorten(&s).unwrap().hermitian_dual(),
            c.hermitian_dual().puncture(&s).unwrap()
        );
    }

    #[test]
    fn grassmann_identity(a in code(), seed in any::<u64>()) {
        let f = a.field();
        let n = a.n();
        let kb = 1 + (seed as usize % (n - 1));
        let b = random_code(f, n, kb, seed);
        let meet = a.intersect(&b).unwrap();
        let sum = LinearCode::new(&a.gen().stack(b.gen()).unwrap());
        prop_assert_eq!(meet.k() + sum.k(), a.k() + b.k());
        prop_assert!(meet.is_subcode_of(&a) && meet.is_subcode_of(&b));
    }

    #[test]
    fn reduce_hull_hits_every_level(c in code()) {
        prop_assume!(c.field().q() >= 3);
        let h = c.hull_dim();
        for target in 0..=h {
            let (scaled, plan) = reduce_hull(&c, target).unwrap();
            prop_assert_eq!(scaled.hull_dim(), target);
            prop_assert_eq!(&c.scale(&plan.vector(c.n())).unwrap(), &scaled);
            prop_assert_eq!(scaled.k(), c.k());
        }
        prop_assert!(reduce_hull(&c, h + 1).is_err());
    }

    #[test]
    fn text_round_trip(c in code()) {
        prop_assert_eq!(LinearCode::parse_text(&c.to_text()).unwrap(), c);
    }
}
