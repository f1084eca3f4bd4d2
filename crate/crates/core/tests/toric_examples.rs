//! The worked toric examples: each map's exponent data, the firmament it
//! hangs from, and the constellation that firmament supports.

use campana::{
    base_firmament, curves, delta_from_fibers, induced_membership_grid, morphism_check, multiplicity_at, ray_restriction,
    supported_constellation, ExactRational, ExponentMap, Firmament, LatticeMonoid,
};

struct Example {
    name: &'static str,
    maps: Vec<Vec<Vec<u64>>>,
    firmament: Vec<Vec<Vec<u64>>>,
    deltas: Vec<(Vec<u64>, ExactRational)>,
}

fn q(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n, d)
}

fn examples() -> Vec<Example> {
    let zero = ExactRational::zero();
    vec![
        Example {
            name: "t = x^2",
            maps: vec![vec![vec![2]]],
            firmament: vec![vec![vec![2]]],
            deltas: vec![(vec![1], q(1, 2))],
        },
        Example {
            name: "t = x^2 y",
            maps: vec![vec![vec![2], vec![1]]],
            firmament: vec![vec![vec![1]]],
            deltas: vec![(vec![1], zero.clone())],
        },
        Example {
            name: "t = x^2 y^2",
            maps: vec![vec![vec![2], vec![2]]],
            firmament: vec![vec![vec![2]]],
            deltas: vec![(vec![1], q(1, 2))],
        },
        Example {
            name: "t = x^2 y^3",
            maps: vec![vec![vec![2], vec![3]]],
            firmament: vec![vec![vec![2], vec![3]]],
            deltas: vec![(vec![1], q(1, 2))],
        },
        Example {
            name: "t = x^3 y^4",
            maps: vec![vec![vec![3], vec![4]]],
            firmament: vec![vec![vec![3], vec![4]]],
            deltas: vec![(vec![1], q(2, 3))],
        },
        Example {
            name: "s = x^2, t = y",
            maps: vec![vec![vec![2, 0], vec![0, 1]]],
            firmament: vec![vec![vec![2, 0], vec![0, 1]]],
            deltas: vec![
                (vec![1, 0], q(1, 2)),
                (vec![0, 1], zero.clone()),
                (vec![1, 1], q(1, 2)),
                (vec![2, 1], zero.clone()),
            ],
        },
        Example {
            name: "s = x^2, t = y^2",
            maps: vec![vec![vec![2, 0], vec![0, 2]]],
            firmament: vec![vec![vec![2, 0], vec![0, 2]]],
            deltas: vec![
                (vec![1, 0], q(1, 2)),
                (vec![0, 1], q(1, 2)),
                (vec![1, 1], q(1, 2)),
                (vec![2, 2], zero.clone()),
                (vec![2, 1], q(1, 2)),
            ],
        },
        Example {
            name: "s = x1^2, t = y1 and s = x2, t = y2^2",
            maps: vec![vec![vec![2, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 2]]],
            firmament: vec![vec![vec![2, 0], vec![0, 1]], vec![vec![1, 0], vec![0, 2]]],
            deltas: vec![
                (vec![1, 0], zero.clone()),
                (vec![0, 1], zero.clone()),
                (vec![1, 1], q(1, 2)),
                (vec![2, 1], zero.clone()),
                (vec![3, 5], q(1, 2)),
            ],
        },
        Example {
            name: "C[s, t, sqrt(st)]",
            maps: vec![vec![vec![2, 0], vec![1, 1], vec![0, 2]]],
            firmament: vec![vec![vec![2, 0], vec![1, 1], vec![0, 2]]],
            deltas: vec![
                (vec![1, 0], q(1, 2)),
                (vec![0, 1], q(1, 2)),
                (vec![1, 1], zero.clone()),
                (vec![3, 1], zero.clone()),
                (vec![2, 1], q(1, 2)),
            ],
        },
        Example {
            name: "s = x^2 y^3, t = z",
            maps: vec![vec![vec![2, 0], vec![3, 0], vec![0, 1]]],
            firmament: vec![vec![vec![2, 0], vec![3, 0], vec![0, 1]]],
            deltas: vec![
                (vec![1, 0], q(1, 2)),
                (vec![0, 1], zero.clone()),
                (vec![1, 1], q(1, 2)),
                (vec![2, 0], zero.clone()),
                (vec![3, 7], zero.clone()),
            ],
        },
    ]
}

fn firmament_of(ex: &Example) -> Firmament {
    let maps: Vec<ExponentMap> = ex
        .maps
        .iter()
        .map(|cols| ExponentMap::from_columns(cols.clone()).unwrap())
        .collect();
    base_firmament(&maps).unwrap()
}

#[test]
fn base_firmaments_match_the_stated_monoids() {
    for ex in examples() {
        let f = firmament_of(&ex);
        let dim = f.dim();
        let expected: Vec<LatticeMonoid> = ex
            .firmament
            .iter()
            .map(|g| LatticeMonoid::new(dim, g.clone()).unwrap())
            .collect();
        assert_eq!(f.monoids(), expected.as_slice(), "{}", ex.name);
        for (i, a) in f.monoids().iter().enumerate() {
            for (j, b) in f.monoids().iter().enumerate() {
                if i != j {
                    assert!(!a.contains(b).unwrap(), "{} is redundant", ex.name);
                }
            }
        }
    }
}

#[test]
fn supported_constellations_match_the_stated_deltas() {
    for ex in examples() {
        let f = firmament_of(&ex);
        let rays: Vec<Vec<u64>> = ex.deltas.iter().map(|(r, _)| r.clone()).collect();
        let got = supported_constellation(&f, &rays).unwrap();
        assert_eq!(got, ex.deltas, "{}", ex.name);
    }
}

#[test]
fn text_round_trip_of_every_example() {
    for ex in examples() {
        let f = firmament_of(&ex);
        let text = f.to_string();
        let back: Firmament = text.parse().unwrap();
        assert_eq!(back, f, "{}", ex.name);
        assert_eq!(back.to_string(), text);
    }
}

/// Parity rules stated alongside the examples, checked on a box of rays.
#[test]
fn stated_rules_hold_on_a_box() {
    let by_name = |name: &str| firmament_of(&examples().into_iter().find(|e| e.name == name).unwrap());
    let s_even = by_name("s = x^2, t = y");
    let both_even = by_name("s = x^2, t = y^2");
    let either_even = by_name("s = x1^2, t = y1 and s = x2, t = y2^2");
    let sum_even = by_name("C[s, t, sqrt(st)]");
    let s_not_one = by_name("s = x^2 y^3, t = z");
    for s in 0..12u64 {
        for t in 0..12u64 {
            if s + t == 0 {
                continue;
            }
            let m = |f: &Firmament| multiplicity_at(f, &[s, t]).unwrap();
            assert_eq!(m(&s_even), if s % 2 == 0 { 1 } else { 2 });
            assert_eq!(m(&both_even), if s % 2 == 0 && t % 2 == 0 { 1 } else { 2 });
            assert_eq!(m(&either_even), if s % 2 == 0 || t % 2 == 0 { 1 } else { 2 });
            assert_eq!(m(&sum_even), if (s + t) % 2 == 0 { 1 } else { 2 });
            assert_eq!(m(&s_not_one), if s != 1 { 1 } else { 2 });
        }
    }
}

#[test]
fn one_dimensional_examples_agree_with_fiber_minimum() {
    for (exponents, name) in [
        (vec![2], "t = x^2"),
        (vec![2, 1], "t = x^2 y"),
        (vec![2, 2], "t = x^2 y^2"),
        (vec![2, 3], "t = x^2 y^3"),
        (vec![3, 4], "t = x^3 y^4"),
    ] {
        let map = ExponentMap::from_rows(vec![exponents.clone()]).unwrap();
        let f = base_firmament(&[map]).unwrap();
        let firm_delta = supported_constellation(&f, &[vec![1]]).unwrap()[0].1.clone();
        let marks = delta_from_fibers(&[("0".to_string(), exponents)]).unwrap();
        assert_eq!(firm_delta, marks[0].1.delta(), "{name}");
        let profile = curves::MultiplicityProfile::new(0, marks).unwrap();
        assert_eq!(
            curves::constellation_degree(&profile),
            ExactRational::from_integer(-2) + firm_delta
        );
    }
}

#[test]
fn multiplicity_one_exactly_when_ray_restriction_is_full() {
    for ex in examples() {
        let f = firmament_of(&ex);
        let d = f.dim() as u64;
        for code in 1..36u64 {
            let ray: Vec<u64> = (0..d).map(|i| (code / 6u64.pow(i as u32)) % 6).collect();
            if ray.iter().all(|&x| x == 0) {
                continue;
            }
            let m = multiplicity_at(&f, &ray).unwrap();
            let r = ray_restriction(f.monoids(), &ray, 24).unwrap();
            assert_eq!(m == 1, r.all_true(), "{} at {:?}", ex.name, ray);
            assert_eq!(r.membership.iter().skip(1).position(|&b| b).map(|k| k as u64 + 1), Some(m));
        }
    }
}

#[test]
fn induced_firmament_makes_the_map_a_morphism() {
    // f(x, y) = (2x + y, y) into {2N x N}: the induced monoid on the source
    // is {(x, y) : y even}, generated by (1, 0) and (0, 2).
    let f = ExponentMap::from_rows(vec![vec![2, 1], vec![0, 1]]).unwrap();
    let target = Firmament::new(2, vec![LatticeMonoid::new(2, vec![vec![2, 0], vec![0, 1]]).unwrap()]).unwrap();
    let induced = LatticeMonoid::new(2, vec![vec![1, 0], vec![0, 2]]).unwrap();
    for (v, member) in induced_membership_grid(&f, &target, 12).unwrap() {
        assert_eq!(induced.member(&v).unwrap(), member, "{v:?}");
    }
    let source = Firmament::new(2, vec![induced]).unwrap();
    assert!(morphism_check(&f, &source, &target).unwrap());
    assert!(!morphism_check(&f, &Firmament::trivial(2), &target).unwrap());
}
