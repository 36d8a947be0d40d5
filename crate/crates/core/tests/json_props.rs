use fibrecheck::fibre::{
    artin_check, corank2_existence, fp_check, greatsph_existence, minus_id_check, TwistMatrix,
};
use fibrecheck::grouplang::SimplicialGraph;
use fibrecheck::json::{load_sigma, sigma_to_json, verdict_from_json, verdict_to_json};
use fibrecheck::lattice::{int_vec, IntMatrix, Subspace};
use fibrecheck::quotient::QuotientDatum;
use fibrecheck::sigma::{raag_sigma_complement, SigmaResult};
use fibrecheck::sphere::{Arc, Ray, SphereSet};
use num::BigInt;
use proptest::prelude::*;
use serde_json::Value;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn nonzero(n: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-bound..=bound, n).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

/// Coordinates that may be far outside the 64-bit range.
fn big_coords(n: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((-5i64..=5, 0u32..=3), n)
        .prop_filter("nonzero", |v| v.iter().any(|&(x, _)| x != 0))
        .prop_map(|v| {
            v.into_iter()
                .map(|(x, e)| BigInt::from(x) * BigInt::from(10).pow(12 * e) + BigInt::from(x.signum()))
                .collect()
        })
}

/// A ray with a zero coordinate; needs `n >= 2`.
fn axis_ray(n: usize) -> impl Strategy<Value = Ray> {
    (0..n, 1..n, prop::collection::vec(-3i64..=3, n), prop_oneof![Just(-1i64), Just(1)]).prop_map(
        move |(z, shift, mut v, sign)| {
            v[z] = 0;
            let other = (z + shift) % n;
            if v[other] == 0 {
                v[other] = sign;
            }
            Ray::from_i64(&v)
        },
    )
}

fn sigma_result(n: usize) -> impl Strategy<Value = SigmaResult> {
    let arcs = if n == 2 {
        prop::collection::vec((big_coords(2), big_coords(2)), 0..3).boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    (
        prop::collection::vec(big_coords(n), 0..4),
        prop::collection::vec(prop::collection::vec(big_coords(n), 1..n.max(2)), 0..3),
        arcs,
        prop::collection::vec(axis_ray(n.max(2)), if n >= 2 { 0..3 } else { 0..1 }),
    )
        .prop_map(move |(rays, subs, arcs, warnings)| {
            let rays = rays.iter().map(|r| Ray::new(r).unwrap()).collect();
            let subspaces = subs
                .iter()
                .map(|vs| Subspace::span_int(n, vs).unwrap())
                .filter(|s| !s.is_full() && !s.is_zero())
                .collect();
            let arcs = arcs
                .iter()
                .filter_map(|(p, q)| Arc::new(Ray::new(p).unwrap(), Ray::new(q).unwrap()).ok())
                .collect();
            let mut warnings = warnings;
            warnings.sort();
            warnings.dedup();
            SigmaResult {
                complement: SphereSet::new(n, subspaces, rays, arcs).unwrap(),
                warnings,
            }
        })
}

fn subspaces_only(s: &SigmaResult) -> SigmaResult {
    let c = &s.complement;
    let complement = SphereSet::new(c.rank(), c.subspaces().to_vec(), vec![], vec![]).unwrap();
    SigmaResult::definite(complement)
}

fn reparse(v: &Value) -> Value {
    serde_json::from_str(&serde_json::to_string_pretty(v).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn sigma_results_round_trip(s in (1usize..=4).prop_flat_map(sigma_result)) {
        let text = reparse(&sigma_to_json(&s));
        prop_assert_eq!(load_sigma(&text).unwrap(), s);
    }

    #[test]
    fn verdicts_round_trip(
        a in sigma_result(2),
        b in sigma_result(2),
        twist in prop::sample::select(vec![[1i64, 0, 0, 1], [0, 1, 1, 0], [1, 8, 0, 1], [2, 1, 1, 1], [-1, 0, 0, -1]]),
        n_gen in nonzero(3, 2),
        c in sigma_result(3),
    ) {
        let q2 = QuotientDatum::commutator(2);
        let q3 = QuotientDatum::new(3, vec![int_vec(&n_gen)]).unwrap();
        let mu = TwistMatrix::from_mu_star(IntMatrix::from_i64(&[&twist[..2], &twist[2..]])).unwrap();
        let verdicts = [
            fp_check(&a, &q2, &b, &q2, &mu).unwrap(),
            corank2_existence(&a, &q2).unwrap(),
            greatsph_existence(&subspaces_only(&c)).unwrap(),
            minus_id_check(&c, &q3).unwrap(),
        ];
        for v in &verdicts {
            let back = verdict_from_json(&reparse(&verdict_to_json(v))).unwrap();
            prop_assert_eq!(&back, v);
        }
    }

    #[test]
    fn artin_verdicts_round_trip(
        (n, bits) in (1usize..=6).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2))),
    ) {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits[k] {
                    edges.push((names[a].clone(), names[b].clone()));
                }
                k += 1;
            }
        }
        let g = SimplicialGraph::new(names, &edges).unwrap();
        let (untwisted, twisted) = artin_check(&g).unwrap();
        for v in [untwisted, twisted] {
            prop_assert_eq!(verdict_from_json(&reparse(&verdict_to_json(&v))).unwrap(), v);
        }
        let s = raag_sigma_complement(&g);
        prop_assert_eq!(load_sigma(&reparse(&sigma_to_json(&s))).unwrap(), s);
    }
}
