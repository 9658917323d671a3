mod common;

use common::{ceil_div, monomials, Naive};
use hullcraft::code::{is_mds, min_distance};
use hullcraft::field::Op;
use hullcraft::rs::{coset_code, subgroup_candidate, FamilySpec};
use hullcraft::twisted::{twisted_code, twisted_hull_candidate, TwistSpec};
use hullcraft::{build_tower, Elt, Field, GfMatrix, LinearCode, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every (p, m) with p^{2m} ≤ 2^12.
fn small_towers() -> Vec<(u32, u32)> {
    let mut out = vec![
        (2, 1),
        (2, 2),
        (2, 3),
        (2, 4),
        (2, 5),
        (2, 6),
        (3, 1),
        (3, 2),
        (3, 3),
    ];
    out.extend([(5, 1), (5, 2), (7, 1), (7, 2)]);
    out.extend(
        [11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61]
            .into_iter()
            .map(|p| (p, 1)),
    );
    out
}

#[test]
fn arithmetic_matches_schoolbook_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (p, m) in small_towers() {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        assert_eq!(f.order(), nv.order);
        let all: Vec<Elt> = f.elements().collect();
        let partners: Vec<Elt> = if f.order() <= 256 {
            all.clone()
        } else {
            (0..48)
                .map(|_| Elt(rng.random_range(0..f.order())))
                .collect()
        };
        for &a in &all {
            assert_eq!(f.neg(a), nv.neg(a));
            for &b in &partners {
                assert_eq!(f.add(a, b), nv.add(a, b), "GF({p}^{}) {a}+{b}", 2 * m);
                assert_eq!(f.mul(a, b), nv.mul(a, b), "GF({p}^{}) {a}*{b}", 2 * m);
            }
        }
        // Inverses and Frobenius checked by the defining identities.
        for &a in all.iter().skip(1) {
            let inv = f.inv(a).unwrap();
            assert_eq!(nv.mul(a, inv), Elt::ONE);
            assert_eq!(f.frobenius(a), nv.pow(a, u64::from(f.q())));
        }
        assert!(f.inv(Elt::ZERO).is_err());
    }
}

#[test]
fn field_axioms_exhaustive() {
    for (p, m) in [(2, 1), (2, 2), (3, 1), (2, 3), (5, 1), (7, 1), (3, 2)] {
        let f = build_tower(p, m).unwrap();
        let all: Vec<Elt> = f.elements().collect();
        for &a in &all {
            assert_eq!(f.add(a, Elt::ZERO), a);
            assert_eq!(f.mul(a, Elt::ONE), a);
            assert!(f.add(a, f.neg(a)).is_zero());
            for &b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                if !b.is_zero() {
                    assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                    assert_eq!(f.arith(a, b, Op::Div).unwrap(), f.div(a, b).unwrap());
                }
                for &c in &all {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn generator_and_subfield() {
    for (p, m) in small_towers() {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        let g = f.generator();
        // Distinct powers cover the whole multiplicative group.
        let mut seen = vec![false; f.order() as usize];
        let mut x = Elt::ONE;
        for _ in 0..f.order() - 1 {
            assert!(!seen[x.0 as usize]);
            seen[x.0 as usize] = true;
            x = nv.mul(x, g);
        }
        assert_eq!(x, Elt::ONE);
        let base: Vec<Elt> = f.elements().filter(|&a| f.in_base_field(a)).collect();
        assert_eq!(base.len() as u32, f.q());
        for &a in f.elements().collect::<Vec<_>>().iter() {
            assert!(f.in_base_field(f.norm(a)));
        }
    }
}

fn random_code(f: &Field, n: usize, k: usize, rng: &mut ChaCha8Rng) -> LinearCode {
    let rows: Vec<Vec<Elt>> = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| Elt(rng.random_range(0..f.order())))
                .collect()
        })
        .collect();
    LinearCode::new(&GfMatrix::from_rows(f, n, rows).unwrap())
}

#[test]
fn hull_matches_codeword_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2, 1), (3, 1), (2, 2)] {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        for _ in 0..60 {
            let n = rng.random_range(2..=7);
            let k = rng.random_range(1..=n.min(if f.order() > 9 { 3 } else { 4 }));
            let c = random_code(&f, n, k, &mut rng);
            if c.k() == 0 {
                continue;
            }
            let h = c.hull_dim();
            assert_eq!(h, nv.brute_hull_dim(&c), "{}", c.to_text());
            assert_eq!(h, nv.gram_hull_dim(&c));
        }
    }
    // Self-orthogonal line over GF(9).
    let f = build_tower(3, 1).unwrap();
    let c = LinearCode::new(&GfMatrix::from_u32(&f, &[&[1, 4]]));
    assert_eq!(Naive::of(&f).brute_hull_dim(&c), 1);
}

#[test]
fn hermitian_dual_is_orthogonal_complement() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (p, m) in [(3, 1), (2, 2), (5, 1)] {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        for _ in 0..40 {
            let n = rng.random_range(2..=10);
            let k = rng.random_range(1..n);
            let c = random_code(&f, n, k, &mut rng);
            let d = c.hermitian_dual();
            assert_eq!(d.k(), n - c.k());
            for x in c.gen().row_vecs() {
                for y in d.gen().row_vecs() {
                    assert_eq!(nv.herm(&x, &y), Elt::ZERO);
                }
            }
        }
    }
}

#[test]
fn min_distance_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, m) in [(2, 1), (3, 1), (2, 2)] {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        for _ in 0..40 {
            let n = rng.random_range(2..=8);
            let k = rng.random_range(1..=n.min(3));
            let c = random_code(&f, n, k, &mut rng);
            if c.k() == 0 {
                continue;
            }
            let d = nv.brute_min_distance(&c);
            assert_eq!(min_distance(&c, DEFAULT_BUDGET).unwrap(), d);
            assert_eq!(is_mds(&c, DEFAULT_BUDGET).unwrap(), d == c.n() - c.k() + 1);
        }
    }
}

#[test]
fn rs_distance_example() {
    let f = build_tower(3, 1).unwrap();
    let (c, _) = subgroup_candidate(&f, 8, 4).unwrap();
    assert_eq!(Naive::of(&f).brute_min_distance(&c), 5);
}

/// The subgroup construction at q = 5, n = 6, k = 3 has no common monomial
/// and no hull, although k(n−k−2)/q² = 3/25 is positive.
#[test]
fn subgroup_q5_n6_k3_hull_is_zero() {
    let f = build_tower(5, 1).unwrap();
    let nv = Naive::of(&f);
    let (c, r) = subgroup_candidate(&f, 6, 3).unwrap();
    assert_eq!(monomials(5, 6, 1..=3, 0, 2), 0);
    assert_eq!(r.bound_count, Some(0));
    assert_eq!(r.hull_dim, 0);
    assert_eq!(nv.gram_hull_dim(&c), 0);
    assert_eq!(nv.brute_hull_dim(&c), 0);
    assert_eq!(ceil_div(3, 25), 1);
}

#[test]
fn subgroup_hulls_agree_with_gram_rank() {
    for (p, m) in [(3, 1), (2, 2), (5, 1)] {
        let f = build_tower(p, m).unwrap();
        let nv = Naive::of(&f);
        let group = f.order() as usize - 1;
        for n in (4..=group).filter(|n| group.is_multiple_of(*n)) {
            for k in n.div_ceil(2)..=n - 2 {
                let (c, r) = subgroup_candidate(&f, n, k).unwrap();
                assert_eq!(r.hull_dim, nv.gram_hull_dim(&c), "q={} n={n} k={k}", f.q());
                let count = monomials(f.q() as usize, n, 1..=k, 0, n - k - 1);
                assert_eq!(r.bound_count, Some(count));
                // The codes really are (U^{-1}·RS)^q: Hermitian dual RS(n, n−k).
                let pts = f.subgroup_of_order(n as u32).unwrap();
                let rows: Vec<Vec<Elt>> = (0..n - k)
                    .map(|j| pts.iter().map(|&a| nv.pow(a, j as u64)).collect())
                    .collect();
                let rs = LinearCode::new(&GfMatrix::from_rows(&f, n, rows).unwrap());
                assert_eq!(c.hermitian_dual(), rs);
            }
        }
    }
}

/// q = 4, n = 15: hull dimensions of the twisted family for k = 8 and 9.
#[test]
fn twisted_q4_n15_hulls() {
    let f = build_tower(2, 2).unwrap();
    let nv = Naive::of(&f);
    for eta in f.elements().skip(1) {
        for (k, expected) in [(8, 3), (9, 2)] {
            let spec = TwistSpec::new(&f, 15, k, eta).unwrap();
            let (c, r) = twisted_hull_candidate(&f, &spec).unwrap();
            assert_eq!(r.hull_dim, expected, "k={k} eta={eta}");
            assert_eq!(nv.gram_hull_dim(&c), expected);
            assert_eq!(r.bound_count, Some(monomials(4, 15, 2..=k, 0, 15 - k - 2)));
        }
    }
    // The literal exponent range [1..k] would promise four common monomials.
    assert_eq!(monomials(4, 15, 1..=8, 1, 5), 4);
}

#[test]
fn twisted_small_hulls_by_enumeration() {
    let f = build_tower(3, 1).unwrap();
    let nv = Naive::of(&f);
    for n in [4, 8] {
        for k in n / 2..n.min(n / 2 + 2) {
            for eta in [Elt(1), Elt(3), Elt(4)] {
                let spec = TwistSpec::new(&f, n, k, eta).unwrap();
                let (c, r) = twisted_hull_candidate(&f, &spec).unwrap();
                assert_eq!(r.hull_dim, nv.brute_hull_dim(&c));
                let t = twisted_code(&f, &spec).unwrap();
                let rows: Vec<Vec<Elt>> = vec![spec
                    .alpha(&f)
                    .iter()
                    .map(|&a| nv.add(Elt::ONE, nv.mul(eta, nv.pow(a, k as u64))))
                    .collect()];
                assert!(t.contains(&rows[0]));
            }
        }
    }
}

#[test]
fn coset_code_dual_identity() {
    let f = build_tower(2, 2).unwrap();
    let units = f.base_field_units();
    for v in 1usize..=3 {
        for k in (5 * v).div_ceil(2)..5 * v {
            let built = coset_code(&f, 5, &units[..v], k).unwrap();
            assert_eq!(
                built.code.hermitian_dual(),
                built.expected_hermitian_dual(&f).unwrap()
            );
            let spec = FamilySpec::coset(&f, 5, units[..v].to_vec(), k).unwrap();
            let (_, r) = spec.build(&f).unwrap();
            assert_eq!(r.hull_dim, Naive::of(&f).gram_hull_dim(&built.code));
        }
    }
}
