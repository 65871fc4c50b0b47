mod common;

use common::{brute_isomorphic, naive_features};
use glg_core::enumerate::{enumerate_graphs, EnumOptions};
use glg_core::features::Block;
use glg_core::generators::{make_complete, random_gnm};
use glg_core::iso::{collision_scan, test_isomorphism, IsoVerdict, ScanKeys};
use glg_core::{extract_features, GameParams, Permutation};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small(b: &Block) -> Vec<u128> {
    match b {
        Block::Small(v) => v.clone(),
        other => panic!("expected integer block, got {other:?}"),
    }
}

#[test]
fn features_match_naive_propagation() {
    for n in 1..=6 {
        for g in enumerate_graphs(n, EnumOptions::all()).unwrap() {
            let fv = extract_features(&g, 3, false).unwrap();
            let blocks: Vec<Vec<u128>> = fv.blocks().iter().map(small).collect();
            assert_eq!(blocks, naive_features(&g, 3), "{g:?}");
        }
    }
}

#[test]
fn normalized_blocks_are_scaled_integers() {
    for g in enumerate_graphs(5, EnumOptions::connected()).unwrap() {
        let raw = extract_features(&g, 3, false).unwrap();
        let norm = extract_features(&g, 3, true).unwrap();
        for (r, q) in raw.blocks().iter().zip(norm.blocks()) {
            let r = small(r);
            let Block::Normalized(q) = q else { panic!("not normalized") };
            let total: u128 = r.iter().sum();
            let sum_q: f64 = q.iter().map(|x| x.to_f64().unwrap()).sum();
            assert!((sum_q - 1.0).abs() < 1e-12);
            for (x, y) in r.iter().zip(q) {
                assert_eq!(y.numer() * num_bigint::BigUint::from(total), num_bigint::BigUint::from(*x) * y.denom());
            }
        }
    }
}

#[test]
fn labels_are_monotone() {
    for g in enumerate_graphs(6, EnumOptions::connected()).unwrap() {
        let fv = extract_features(&g, 4, false).unwrap();
        for w in fv.blocks().windows(2) {
            let (a, b) = (small(&w[0]), small(&w[1]));
            assert!(a.iter().sum::<u128>() <= b.iter().sum::<u128>());
        }
    }
}

#[test]
fn large_labels_promote_exactly() {
    // every game on K_n stays at two patterns, so labels double each step
    // and pass u128 after about 128 steps
    let g = make_complete(4).unwrap();
    let fv = extract_features(&g, 200, false).unwrap();
    assert!(matches!(fv.block(200).unwrap(), Block::Big(_)));
    let again = glg_core::FeatureVector::parse_line(&fv.to_line()).unwrap();
    assert_eq!(again, fv);
}

#[test]
fn certificates_are_real() {
    // every pair separated at step t really differs, and every pair that
    // survives 3 steps is checked against a brute-force isomorphism test
    let corpus = enumerate_graphs(6, EnumOptions::all()).unwrap();
    for (i, g) in corpus.iter().enumerate() {
        for h in &corpus[i + 1..] {
            match test_isomorphism(g, h, 3) {
                IsoVerdict::NonIsomorphic { step: 0 } => assert!(g.m() != h.m() || g.n() != h.n()),
                IsoVerdict::NonIsomorphic { step } => {
                    let (a, b) = (extract_features(g, step, false).unwrap(), extract_features(h, step, false).unwrap());
                    assert_ne!(a.block(step), b.block(step));
                    assert_eq!(a.block(step - 1), b.block(step - 1));
                }
                IsoVerdict::LikelyIsomorphic { .. } => assert!(!brute_isomorphic(g, h), "distinct corpus entries"),
            }
        }
    }
}

#[test]
fn scan_is_order_invariant_and_chunkable() {
    let corpus = common::corpus("connected7");
    let direct = collision_scan(&corpus, 2).unwrap();
    let mut keys = ScanKeys::new(2, GameParams::DEFAULT);
    for chunk in corpus.chunks(100) {
        keys.extend(chunk).unwrap();
    }
    assert_eq!(keys.finish(), direct);

    let mut reversed = corpus.clone();
    reversed.reverse();
    let last = corpus.len() - 1;
    let mut mapped: Vec<Vec<usize>> = collision_scan(&reversed, 2)
        .unwrap()
        .groups
        .into_iter()
        .map(|g| {
            let mut g: Vec<usize> = g.into_iter().map(|i| last - i).collect();
            g.sort_unstable();
            g
        })
        .collect();
    mapped.sort_unstable_by_key(|g| g[0]);
    assert_eq!(mapped, direct.groups);
    for group in direct.collisions() {
        assert!(!brute_isomorphic(&corpus[group[0]], &corpus[group[1]]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn relabeling_invariance(n in 1usize..12, density in 0.0f64..1.0, seed: u64, k in 1usize..4) {
        let m = ((n * (n - 1) / 2) as f64 * density) as usize;
        let g = random_gnm(n, m, seed).unwrap();
        let p = Permutation::random(n, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        let h = g.apply_permutation(&p).unwrap();
        prop_assert_eq!(h.degree_sequence_sorted(), g.degree_sequence_sorted());
        prop_assert_eq!(h.m(), g.m());
        for normalize in [false, true] {
            prop_assert_eq!(extract_features(&g, k, normalize).unwrap(), extract_features(&h, k, normalize).unwrap());
        }
        prop_assert_eq!(test_isomorphism(&g, &h, k), IsoVerdict::LikelyIsomorphic { k });
    }
}
