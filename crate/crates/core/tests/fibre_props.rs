use fibrecheck::fibre::{
    artin_check, cook_mu, corank2_existence, fp_check, greatsph_existence, max_fg_corank,
    minus_id_check, untwisted_check, Answer, Certificate, TwistMatrix,
};
use fibrecheck::grouplang::SimplicialGraph;
use fibrecheck::lattice::{int_vec, IntMatrix, Subspace};
use fibrecheck::quotient::QuotientDatum;
use fibrecheck::sigma::{raag_sigma_complement, SigmaResult};
use fibrecheck::sphere::{disjoint_pieces, Arc, Piece, Ray, SphereSet};
use num::{One, Signed, Zero};
use proptest::prelude::*;

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

#[derive(Clone, Debug)]
struct RawSet {
    rank: usize,
    rays: Vec<Vec<i64>>,
    subspaces: Vec<Vec<Vec<i64>>>,
    arcs: Vec<(Vec<i64>, Vec<i64>)>,
}

impl RawSet {
    fn build(&self) -> SigmaResult {
        let n = self.rank;
        let rays = self.rays.iter().map(|r| Ray::from_i64(r)).collect();
        let subspaces = self
            .subspaces
            .iter()
            .map(|vs| Subspace::span_int(n, &vs.iter().map(|v| int_vec(v)).collect::<Vec<_>>()).unwrap())
            .filter(|s| !s.is_full() && !s.is_zero())
            .collect();
        let arcs = self
            .arcs
            .iter()
            .filter_map(|(p, q)| Arc::new(Ray::from_i64(p), Ray::from_i64(q)).ok())
            .collect();
        SigmaResult::definite(SphereSet::new(n, subspaces, rays, arcs).unwrap())
    }
}

fn raw_set(rank: usize) -> impl Strategy<Value = RawSet> {
    let arcs = if rank == 2 {
        prop::collection::vec((nonzero(2, 4), nonzero(2, 4)), 0..3).boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    let subspaces = if rank > 2 {
        prop::collection::vec(prop::collection::vec(nonzero(rank, 2), 1..rank), 0..3).boxed()
    } else {
        Just(Vec::new()).boxed()
    };
    (prop::collection::vec(nonzero(rank, 4), 0..4), subspaces, arcs).prop_map(move |(rays, subspaces, arcs)| RawSet {
        rank,
        rays,
        subspaces,
        arcs,
    })
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, 0usize..3, -2i64..=2), 0..7).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, op, f) in ops {
            if i == j {
                continue;
            }
            match op {
                0 => m.swap_rows(i, j),
                1 => m.scale_row(i, &(-1).into()),
                _ => m.add_row_multiple(i, j, &f.into()),
            }
        }
        m
    })
}

fn pair_with_twist() -> impl Strategy<Value = (RawSet, RawSet, IntMatrix)> {
    (2usize..=3).prop_flat_map(|c| (raw_set(c), raw_set(c), unimodular(c)))
}

/// All 2x2 unimodular matrices with entries in `-3..=3`.
fn bounded_twists() -> Vec<TwistMatrix> {
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            for c in -3i64..=3 {
                for d in -3i64..=3 {
                    if (a * d - b * c).abs() == 1 {
                        out.push(TwistMatrix::from_mu_star(IntMatrix::from_i64(&[&[a, b], &[c, d]])).unwrap());
                    }
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn swapping_factors_inverts_the_twist((r1, r2, b) in pair_with_twist()) {
        let (c1, c2) = (r1.build(), r2.build());
        let q = QuotientDatum::commutator(r1.rank);
        let mu = TwistMatrix::new(b).unwrap();
        let forward = fp_check(&c1, &q, &c2, &q, &mu).unwrap();
        let backward = fp_check(&c2, &q, &c1, &q, &mu.inverse()).unwrap();
        prop_assert_eq!(forward.answer, backward.answer);
        if let Some(Certificate::Meeting { image, target }) = &forward.certificate {
            prop_assert!(!disjoint_pieces(image, target).unwrap());
        }
    }

    #[test]
    fn untwisted_equals_identity_twist(r in (2usize..=3).prop_flat_map(raw_set)) {
        let c = r.build();
        let q = QuotientDatum::commutator(r.rank);
        prop_assert_eq!(
            untwisted_check(&c, &q).unwrap().answer,
            fp_check(&c, &q, &c, &q, &TwistMatrix::identity(r.rank)).unwrap().answer
        );
    }

    #[test]
    fn minus_identity_is_emptiness(r in raw_set(3), n_gen in nonzero(3, 3)) {
        let c = r.build();
        let q = QuotientDatum::new(3, vec![int_vec(&n_gen)]).unwrap();
        let empty = c.complement.restrict(&q).unwrap().is_empty();
        let answer = minus_id_check(&c, &q).unwrap().answer;
        prop_assert_eq!(answer == Answer::Fp, empty);
    }

    #[test]
    fn fg_corank_witness_misses_every_piece(r in (2usize..=4).prop_flat_map(raw_set), n_gens in prop::collection::vec(nonzero(4, 2), 0..2)) {
        let c = r.build();
        let n = r.rank;
        let gens: Vec<_> = n_gens.iter().map(|g| int_vec(&g[..n])).filter(|g| g.iter().any(|x| !x.is_zero())).collect();
        let q = QuotientDatum::new(n, gens).unwrap();
        let fg = max_fg_corank(&c.complement, &q).unwrap();
        prop_assert_eq!(fg.witness.dim(), fg.k);
        let w = Piece::Subspace(fg.witness.clone());
        if fg.k > 0 {
            for p in c.complement.restrict(&q).unwrap().pieces() {
                prop_assert!(disjoint_pieces(&w, &p).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn corank2_existence_agrees_with_search(r in raw_set(2)) {
        let c = r.build();
        let q = QuotientDatum::commutator(2);
        let verdict = corank2_existence(&c, &q).unwrap();
        let found = bounded_twists()
            .iter()
            .any(|mu| fp_check(&c, &q, &c, &q, mu).unwrap().answer == Answer::Fp);
        match (verdict.answer, verdict.certificate) {
            (Answer::Exists, Some(Certificate::Ray(chi))) => {
                prop_assert!(!c.complement.contains_ray(&chi) && !c.complement.contains_ray(&chi.neg()));
                if !found {
                    let k = Subspace::span_int(2, &[chi.dir().to_vec()]).unwrap().orthogonal().integer_basis();
                    let cooked = cook_mu(&c, &q, &k, &c, &q, &k).unwrap();
                    prop_assert_eq!(cooked.verdict.answer, Answer::Fp);
                }
            }
            (Answer::NotExists, _) => prop_assert!(!found, "a bounded twist works although none should exist"),
            (other, _) => prop_assert!(false, "unexpected verdict {:?}", other),
        }
    }

    #[test]
    fn cooked_twists_verify(
        c in 2usize..=4,
        split in 0usize..=4,
        w_vecs in prop::collection::vec(nonzero(4, 2), 4),
        u_vecs in prop::collection::vec(nonzero(4, 2), 4),
        rays1 in prop::collection::vec(nonzero(4, 3), 0..3),
        rays2 in prop::collection::vec(nonzero(4, 3), 0..3),
    ) {
        let m = split.min(c);
        let k = c - m;
        let span = |vs: &[Vec<i64>], d: usize| {
            Subspace::span_int(c, &vs[..d].iter().map(|v| int_vec(&v[..c])).collect::<Vec<_>>()).unwrap()
        };
        let w = span(&w_vecs, m);
        let u = span(&u_vecs, k);
        prop_assume!(w.dim() == m && u.dim() == k);
        let outside = |rays: &[Vec<i64>], s: &Subspace| -> Vec<Ray> {
            rays.iter()
                .map(|r| int_vec(&r[..c]))
                .filter(|r| r.iter().any(|x| !x.is_zero()) && !s.contains_int(r))
                .map(|r| Ray::new(&r).unwrap())
                .collect()
        };
        let c1 = SigmaResult::definite(SphereSet::from_rays(c, outside(&rays1, &w)).unwrap());
        let c2 = SigmaResult::definite(SphereSet::from_rays(c, outside(&rays2, &u)).unwrap());
        let q = QuotientDatum::commutator(c);
        let r = cook_mu(&c1, &q, &w.orthogonal().integer_basis(), &c2, &q, &u.orthogonal().integer_basis()).unwrap();
        prop_assert!(r.twist.b().det().unwrap().abs().is_one());
        prop_assert_eq!(fp_check(&c1, &q, &c2, &q, &r.twist).unwrap().answer, Answer::Fp);
    }

    #[test]
    fn artin_twisted_matches_subsphere_check(
        (n, bits) in (1usize..=7).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<bool>(), n * (n - 1) / 2))),
    ) {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        let mut idx = 0;
        for a in 0..n {
            for b in a + 1..n {
                if bits[idx] {
                    edges.push((names[a].clone(), names[b].clone()));
                }
                idx += 1;
            }
        }
        let g = SimplicialGraph::new(names, &edges).unwrap();
        let (_, twisted) = artin_check(&g).unwrap();
        let direct = greatsph_existence(&raag_sigma_complement(&g)).unwrap();
        prop_assert_eq!(twisted.answer, direct.answer);
    }
}
