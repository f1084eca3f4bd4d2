use campana::heights::eps_prime_for;
use campana::number::canonicalize;
use campana::{
    abc_quality, abc_scan, counting_function, naive_height, radical, AbcTriple, Form, FormDivisor, ProjectivePoint,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coprime_triples(max_c: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (2..=max_c).flat_map(|c| (1..=c / 2).filter(move |a| a.gcd(&c) == 1).map(move |a| (a, c - a, c)))
}

#[test]
fn truncated_counting_is_log_radical_on_the_line() {
    let d = FormDivisor::coordinate_hyperplanes(3);
    for (a, b, c) in coprime_triples(2_000) {
        let t = AbcTriple::new(a, b, c).unwrap();
        let r = counting_function(&d, &t.line_point().unwrap(), &[]).unwrap();
        let rad = radical(a * b * c).unwrap();
        assert_eq!(rad, t.radical());
        let expected = (rad as f64).ln();
        assert!(((r.truncated - expected) / expected).abs() < 1e-12, "{a}+{b}={c}");
        assert!(r.truncated <= r.counting + 1e-12);
        let full = ((a * b * c) as f64).ln();
        assert!((r.counting - full).abs() < 1e-9 * full.max(1.0));
    }
}

#[test]
fn truncated_never_exceeds_full_counting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let forms = FormDivisor::new(vec![
        Form::new(3, vec![(1, vec![1, 1, 0]), (-3, vec![0, 0, 2])]).unwrap(),
        Form::new(3, vec![(1, vec![1, 0, 0]), (1, vec![0, 1, 0]), (5, vec![0, 0, 1])]).unwrap(),
    ])
    .unwrap();
    let mut evaluated = 0;
    while evaluated < 2000 {
        let x: Vec<i64> = (0..3).map(|_| rng.gen_range(-500..=500)).collect();
        let Ok(p) = canonicalize(&x) else { continue };
        let excluded: Vec<u64> = [2, 3, 5, 7].into_iter().filter(|_| rng.gen_bool(0.3)).collect();
        match counting_function(&forms, &p, &excluded) {
            Ok(r) => {
                assert!(r.truncated <= r.counting + 1e-12);
                assert!(r.per_prime.iter().all(|(q, n)| !excluded.contains(q) && *n > 0));
                evaluated += 1;
            }
            Err(campana::Error::PointOnDivisor) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn height_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..2000 {
        let x: Vec<i64> = (0..4).map(|_| rng.gen_range(-1000..=1000)).collect();
        let k = rng.gen_range(1..50) * if rng.gen_bool(0.5) { -1 } else { 1 };
        let Ok(p) = canonicalize(&x) else { continue };
        let scaled: Vec<i64> = x.iter().map(|v| v * k).collect();
        let q: ProjectivePoint = canonicalize(&scaled).unwrap();
        assert_eq!(naive_height(&p), naive_height(&q));
        let h = naive_height(&p);
        assert!(h.log_height >= 0.0);
        assert!((h.log_height - (h.height as f64).ln()).abs() <= 1e-12 * h.log_height.max(1.0));
    }
}

#[test]
fn quality_above_one_iff_c_exceeds_radical() {
    for (a, b, c) in coprime_triples(3_000) {
        let t = AbcTriple::new(a, b, c).unwrap();
        let q = abc_quality(&t);
        if c != 2 {
            assert_eq!(q > 1.0, c > t.radical(), "{a}+{b}={c}");
        }
    }
}

#[test]
fn scan_matches_brute_force_at_five_thousand() {
    let qualities: Vec<((u64, u64, u64), f64)> = coprime_triples(5_000)
        .map(|(a, b, c)| ((a, b, c), abc_quality(&AbcTriple::new(a, b, c).unwrap())))
        .collect();
    for min_q in [1.0, 1.1, 1.3] {
        let mut got: Vec<(u64, u64, u64)> = abc_scan(5_000, min_q).unwrap().iter().map(|h| (h.a, h.b, h.c)).collect();
        let mut expected: Vec<(u64, u64, u64)> =
            qualities.iter().filter(|(_, q)| *q >= min_q).map(|(t, _)| *t).collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected, "min quality {min_q}");
    }
}

/// `h ≤ (1+ε) N + C` and `(1-ε') h ≤ N + C/(1+ε)` are the same inequality
/// once `1 - ε' = 1/(1+ε)`; checked pointwise on the maxima over a scan.
#[test]
fn vojta_and_abc_forms_agree() {
    let d = FormDivisor::coordinate_hyperplanes(3);
    let samples: Vec<(f64, f64)> = coprime_triples(600)
        .map(|(a, b, c)| {
            let p = AbcTriple::new(a, b, c).unwrap().line_point().unwrap();
            (naive_height(&p).log_height, counting_function(&d, &p, &[]).unwrap().truncated)
        })
        .collect();
    for eps in [0.05, 0.1, 0.25, 0.5, 1.0, 2.0] {
        let eps_prime = eps_prime_for(eps);
        assert!((1.0 - eps_prime - 1.0 / (1.0 + eps)).abs() < 1e-15);
        let abc_constant = samples.iter().map(|(h, n)| h - (1.0 + eps) * n).fold(f64::MIN, f64::max);
        let vojta_constant = samples.iter().map(|(h, n)| (1.0 - eps_prime) * h - n).fold(f64::MIN, f64::max);
        assert!((vojta_constant - abc_constant / (1.0 + eps)).abs() < 1e-9);
        for &(h, n) in &samples {
            let abc_holds = h <= (1.0 + eps) * n + abc_constant + 1e-12;
            let vojta_holds = (1.0 - eps_prime) * h <= n + vojta_constant + 1e-12;
            assert!(abc_holds && vojta_holds);
        }
    }
}
