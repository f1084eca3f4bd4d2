use campana::number::is_n_powerful;
use campana::{
    campana_abc_bound_check, campana_abc_bound_exact, enumerate_soft_points, is_soft_integral_3pt,
    is_soft_integral_general, is_soft_integral_weighted, DeltaSupport3, GeneralDelta, Multiplicity, P1Point,
};
use num_integer::Integer;

fn fin(m: u64) -> Multiplicity {
    Multiplicity::Finite(m)
}

#[test]
fn enumerated_points_satisfy_the_bound() {
    for delta in [
        DeltaSupport3::uniform(fin(2)),
        DeltaSupport3::uniform(fin(3)),
        DeltaSupport3::new(fin(2), fin(3), fin(7)),
        DeltaSupport3::new(fin(3), fin(2), fin(2)),
    ] {
        for p in enumerate_soft_points(&delta, 10_000, false) {
            let check = campana_abc_bound_check(&p, &delta).unwrap();
            assert!(check.holds, "{p} for {delta}: {check:?}");
            assert!(campana_abc_bound_exact(&p, &delta).unwrap(), "{p} for {delta}");
        }
    }
}

#[test]
fn three_point_and_general_agree_up_to_ten_thousand() {
    let delta = DeltaSupport3::uniform(fin(2));
    let general = delta.to_general();
    for p in enumerate_soft_points(&delta, 10_000, false) {
        assert!(is_soft_integral_general(&p, &general).unwrap(), "{p}");
    }
    // and on every point, soft or not, with small denominators
    for c in 1..=200i64 {
        for a in -200..=200i64 {
            if a == 0 || a == c || a.unsigned_abs().gcd(&(c as u64)) != 1 {
                continue;
            }
            let p = P1Point::new(a, c).unwrap();
            for d in [
                DeltaSupport3::uniform(fin(2)),
                DeltaSupport3::new(fin(2), fin(3), fin(1)),
                DeltaSupport3::new(Multiplicity::Infinite, fin(2), fin(3)),
            ] {
                assert_eq!(
                    is_soft_integral_3pt(&p, &d).unwrap(),
                    is_soft_integral_general(&p, &d.to_general()).unwrap(),
                    "{p} for {d}"
                );
            }
        }
    }
}

#[test]
fn softness_is_monotone_in_delta() {
    let strong = DeltaSupport3::new(fin(3), fin(2), fin(3));
    let weaker = [
        DeltaSupport3::new(fin(2), fin(2), fin(3)),
        DeltaSupport3::new(fin(3), fin(1), fin(2)),
        DeltaSupport3::uniform(fin(2)),
        DeltaSupport3::uniform(fin(1)),
    ];
    for p in enumerate_soft_points(&strong, 5000, false) {
        for w in &weaker {
            assert!(w.weaker_or_equal(&strong));
            assert!(is_soft_integral_3pt(&p, w).unwrap(), "{p} for {w}");
        }
    }
    let threes = enumerate_soft_points(&DeltaSupport3::uniform(fin(3)), 1000, true);
    let twos = enumerate_soft_points(&DeltaSupport3::uniform(fin(2)), 1000, true);
    assert!(threes.iter().all(|p| twos.contains(p)));
}

#[test]
fn squares_of_pythagorean_triples_are_soft() {
    let delta = DeltaSupport3::uniform(fin(2));
    let mut count = 0;
    for m in 2..100i64 {
        for n in 1..m {
            if (m - n) % 2 == 0 || m.gcd(&n) != 1 {
                continue;
            }
            let c = m * m + n * n;
            if c > 10_000 {
                continue;
            }
            for leg in [m * m - n * n, 2 * m * n] {
                let p = P1Point::new(leg * leg, c * c).unwrap();
                assert_eq!((p.a(), p.c()), (leg * leg, c * c));
                assert!(is_soft_integral_3pt(&p, &delta).unwrap(), "{p}");
                count += 1;
            }
        }
    }
    assert!(count > 2000);
}

#[test]
fn weighted_follows_from_general_under_disjoint_support() {
    let supports = [
        vec![(P1Point::new(1, 2).unwrap(), fin(2)), (P1Point::new(2, 3).unwrap(), fin(3))],
        vec![
            (P1Point::ZERO, fin(2)),
            (P1Point::new(-1, 1).unwrap(), fin(2)),
            (P1Point::INFINITY, fin(3)),
        ],
        vec![(P1Point::new(3, 5).unwrap(), Multiplicity::Infinite), (P1Point::ONE, fin(2))],
    ];
    for support in supports {
        let delta = GeneralDelta::with_disjoint_closure(support, vec![]).unwrap();
        let mut soft = 0;
        for c in 1..=1000i64 {
            for a in 1..c {
                if a.gcd(&c) != 1 {
                    continue;
                }
                let p = P1Point::new(a, c).unwrap();
                let Ok(general) = is_soft_integral_general(&p, &delta) else {
                    continue;
                };
                if general {
                    soft += 1;
                    assert!(is_soft_integral_weighted(&p, &delta).unwrap(), "{p}");
                }
            }
        }
        assert!(soft > 0);
    }
}

#[test]
fn enumeration_is_the_filtered_brute_force() {
    for (delta, bound) in [
        (DeltaSupport3::new(fin(2), fin(3), fin(2)), 300u64),
        (DeltaSupport3::new(Multiplicity::Infinite, fin(2), fin(1)), 200),
        (DeltaSupport3::new(fin(1), fin(1), fin(3)), 100),
    ] {
        let mut expected = vec![];
        for c in 1..=bound as i64 {
            for a in -(bound as i64)..=bound as i64 {
                if a == 0 || a == c || a.unsigned_abs().gcd(&(c as u64)) != 1 {
                    continue;
                }
                let b = (c - a) as i128;
                if is_n_powerful(a as i128, delta.n0).unwrap()
                    && is_n_powerful(b, delta.n1).unwrap()
                    && is_n_powerful(c as i128, delta.n_inf).unwrap()
                {
                    expected.push(P1Point::new(a, c).unwrap());
                }
            }
        }
        assert_eq!(enumerate_soft_points(&delta, bound, false), expected, "{delta}");
    }
}
