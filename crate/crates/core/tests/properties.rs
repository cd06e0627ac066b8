mod common;

use dimlab::absorb::{absorb_embed, baker_split, check_partition_hypothesis, find_partition};
use dimlab::boolean::{verify_boolean_representation, BooleanRepresentation};
use dimlab::corpus::RandomPosets;
use dimlab::invariants::bounded_dimension;
use dimlab::io;
use dimlab::order::*;
use dimlab::solver::{dimension, dimension_via_components, realizer_from_embedding, SearchBudget};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>(), 0.0f64..0.8).prop_map(|(n, seed, density)| RandomPosets::new(seed).poset(n, density))
}

fn bounded(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, any::<u64>(), 0.0f64..0.6).prop_map(|(n, seed, density)| RandomPosets::new(seed).bounded(n, density))
}

fn dim(p: &Poset) -> usize {
    dimension_via_components(p, SearchBudget::default()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_posets_satisfy_the_axioms(p in poset(12)) {
        prop_assert!(p.check_axioms());
        for (i, j) in p.cover_pairs() {
            prop_assert!(p.lt(i, j));
            prop_assert!(!(0..p.len()).any(|k| p.lt(i, k) && p.lt(k, j)));
        }
    }

    #[test]
    fn product_is_componentwise(p in poset(5), q in poset(5)) {
        let pq = product(&p, &q).unwrap();
        let nq = q.len();
        for a in 0..pq.len() {
            for b in 0..pq.len() {
                let want = p.leq(a / nq, b / nq) && q.leq(a % nq, b % nq);
                prop_assert_eq!(pq.leq(a, b), want);
            }
        }
    }

    #[test]
    fn lex_sum_orders_blocks_then_parts(index in poset(4), parts in prop::collection::vec(poset(3), 4)) {
        let parts = &parts[..index.len()];
        let s = lex_sum(&index, parts).unwrap();
        let owner: Vec<(usize, usize)> =
            parts.iter().enumerate().flat_map(|(i, q)| (0..q.len()).map(move |k| (i, k))).collect();
        prop_assert_eq!(s.len(), owner.len());
        for a in 0..s.len() {
            for b in 0..s.len() {
                let ((i, x), (j, y)) = (owner[a], owner[b]);
                let want = index.lt(i, j) || (i == j && parts[i].lt(x, y));
                prop_assert_eq!(s.lt(a, b), want);
            }
        }
    }

    #[test]
    fn embedding_check_is_the_iff_condition(p in poset(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = Embedding {
            target_chains: vec![3, 3],
            image: (0..p.len()).map(|_| vec![rand::Rng::gen_range(&mut rng, 0..3), rand::Rng::gen_range(&mut rng, 0..3)]).collect(),
        };
        let iff = (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == e.image_leq(x, y)));
        prop_assert_eq!(is_embedding(&p, &e), iff);
    }

    #[test]
    fn components_partition_the_ground_set(p in poset(10)) {
        let comps = connected_components(&p);
        let mut all: Vec<usize> = comps.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..p.len()).collect::<Vec<_>>());
        for (i, a) in comps.iter().enumerate() {
            for b in &comps[i + 1..] {
                prop_assert!(a.iter().all(|&x| b.iter().all(|&y| p.incomparable(x, y))));
            }
        }
    }

    #[test]
    fn dimension_certificates_verify(p in poset(9)) {
        let r = dimension(&p, SearchBudget::default()).unwrap();
        prop_assert!(r.certificate.is_realizer_of(&p));
        prop_assert_eq!(r.value, dim(&p));
        let rep = BooleanRepresentation::from_realizer(&r.certificate);
        prop_assert!(verify_boolean_representation(&p, &rep).is_ok());
    }

    #[test]
    fn realizer_embeddings_round_trip(p in poset(8)) {
        let r = dimension(&p, SearchBudget::default()).unwrap();
        let e = Embedding {
            target_chains: vec![p.len(); r.certificate.len()],
            image: (0..p.len())
                .map(|x| r.certificate.extensions().iter().map(|ext| ext.positions()[x]).collect())
                .collect(),
        };
        prop_assert!(is_embedding(&p, &e));
        let back = realizer_from_embedding(&p, &e, &[]).unwrap();
        prop_assert!(back.is_realizer_of(&p));
    }

    #[test]
    fn product_dimension_bounds(p in poset(4), q in poset(4)) {
        let (dp, dq) = (dim(&p), dim(&q));
        let dpq = dim(&product(&p, &q).unwrap());
        prop_assert!(dp.max(dq) <= dpq && dpq <= dp + dq);
    }

    #[test]
    fn file_round_trip(p in poset(10)) {
        let q = io::read_poset(&io::write_poset(&p)).unwrap();
        prop_assert_eq!(q.lt_pairs(), p.lt_pairs());
        prop_assert_eq!(q.labels(), p.labels());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn absorption_embeds_or_refuses_with_a_witness(seed in any::<u64>(), d in 1usize..=4, n in 0usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pres = common::random_presentation(&mut rng, d, 3, 10);
        let partition = common::random_partition(&mut rng, &pres, n);
        let chains: Vec<usize> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 1..=3)).collect();
        match check_partition_hypothesis(&pres, &partition) {
            Ok(()) => {
                let cert = absorb_embed(&pres, &partition, &chains).unwrap();
                prop_assert!(is_embedding(&cert.product, &cert.embedding));
                prop_assert_eq!(cert.embedding.dimension(), d);
            }
            Err(w) => {
                prop_assert!(pres.base().leq(w.p, w.q));
                let part = &partition.parts()[w.part];
                let shared = (0..d).any(|i| {
                    let v = pres.coords()[w.p][i];
                    v == pres.coords()[w.q][i] && part.contains(&(i, v))
                });
                prop_assert!(!shared);
                prop_assert!(absorb_embed(&pres, &partition, &chains).is_err());
            }
        }
        if let Some(found) = find_partition(&pres, n, 100_000) {
            prop_assert!(absorb_embed(&pres, &found, &vec![2; n]).unwrap().verify());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimension_adds_over_bounded_products(p in bounded(5), q in bounded(5)) {
        let (dp, dq) = (dim(&p), dim(&q));
        let pq = product(&p, &q).unwrap();
        let r = dimension(&pq, SearchBudget::default()).unwrap();
        prop_assert_eq!(r.value, dp + dq);
        let split = baker_split(&p, &q, &r.certificate).unwrap();
        prop_assert!(split.sizes().0 >= dp && split.sizes().1 >= dq);
    }

    #[test]
    fn bounded_dimension_adds_over_products(p in poset(5), q in poset(5)) {
        let b = SearchBudget::default();
        let bp = bounded_dimension(&p, b).unwrap().value;
        let bq = bounded_dimension(&q, b).unwrap().value;
        let bpq = bounded_dimension(&product(&p, &q).unwrap(), b).unwrap().value;
        prop_assert_eq!(bpq, bp + bq);
        prop_assert!(bp <= dim(&p));
    }
}
