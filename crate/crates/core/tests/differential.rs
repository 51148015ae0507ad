//! Cross-checks every builder against the brute-force oracles.

mod common;

use bjpm_core::compact::build_max_table_compact_with;
use bjpm_core::oracle::{
    brute_exists, brute_feasible, brute_tables, brute_witness, build_max_table_quadratic,
    parse_bits,
};
use bjpm_core::table::MaxTableBuilder;
use bjpm_core::{
    build_max_table, build_max_table_compact, build_min_table, build_witness_tables, delta_encode,
    BuildOptions, JumbledIndex, RunLengthString,
};
use common::{all_strings, random_corpus, Recount};
use proptest::prelude::*;

fn rls(s: &str) -> RunLengthString {
    RunLengthString::encode(s.as_bytes()).unwrap()
}

fn check_tables(s: &str) {
    let bits = parse_bits(s).unwrap();
    let r = rls(s);
    let (min, max) = brute_tables(&bits);
    assert_eq!(
        build_max_table(&r).values(),
        max.as_slice(),
        "max table of {s}"
    );
    assert_eq!(
        build_min_table(&r).values(),
        min.as_slice(),
        "min table of {s}"
    );
    assert_eq!(
        build_max_table_quadratic(&bits),
        max,
        "O(n rho) table of {s}"
    );
    let (wmax, wmin, w) = build_witness_tables(&r);
    assert_eq!(wmax.values(), max.as_slice());
    assert_eq!(wmin.values(), min.as_slice());
    let recount = Recount::new(s);
    for k in 1..=s.len() {
        let (pmax, pmin) = (w.p_max(k), w.p_min(k));
        assert!(
            pmax >= 1 && pmax + k - 1 <= s.len(),
            "p_max[{k}] = {pmax} of {s}"
        );
        assert!(
            pmin >= 1 && pmin + k - 1 <= s.len(),
            "p_min[{k}] = {pmin} of {s}"
        );
        assert_eq!(recount.ones(pmax, k), max[k - 1] as usize);
        assert_eq!(recount.ones(pmin, k), min[k - 1] as usize);
    }
}

#[test]
fn exhaustive_tables_up_to_14() {
    for n in 0..=14 {
        for s in all_strings(n) {
            check_tables(&s);
        }
    }
}

#[test]
fn exhaustive_compact_with_small_blocks() {
    for n in 0..=16 {
        for s in all_strings(n) {
            let r = rls(&s);
            let plain = delta_encode(&build_max_table(&r)).unwrap();
            for block in [1, 3, 4, 64] {
                assert_eq!(
                    build_max_table_compact_with(&r, block),
                    plain,
                    "{s} with B = {block}"
                );
            }
        }
    }
}

#[test]
fn exhaustive_queries_against_literal_oracle() {
    for n in 0..=10 {
        for s in all_strings(n) {
            let bits = parse_bits(&s).unwrap();
            let ix = JumbledIndex::from_bits(
                &s,
                BuildOptions {
                    witness: true,
                    compact: false,
                },
            )
            .unwrap();
            for zeros in 0..=n + 1 {
                for ones in 0..=n + 1 - zeros {
                    let expected = brute_exists(&bits, zeros, ones);
                    assert_eq!(ix.exists(zeros, ones), expected, "{s} ({zeros}, {ones})");
                    let got = ix.witness(zeros, ones).unwrap();
                    assert_eq!(got.is_some(), brute_witness(&bits, zeros, ones).is_some());
                }
            }
        }
    }
}

#[test]
fn random_strings_tables_and_queries() {
    for s in random_corpus(300, 512, 11) {
        check_tables(&s);
        let bits = parse_bits(&s).unwrap();
        let feasible = brute_feasible(&bits);
        let ix = JumbledIndex::from_bits(
            &s,
            BuildOptions {
                witness: true,
                compact: true,
            },
        )
        .unwrap();
        let recount = Recount::new(&s);
        for k in 1..=s.len() {
            for ones in 0..=k {
                assert_eq!(ix.exists_len(k, ones), feasible[k - 1][ones]);
                match ix.witness_len(k, ones).unwrap() {
                    Some(q) => assert_eq!(recount.ones(q, k), ones),
                    None => assert!(!feasible[k - 1][ones]),
                }
            }
        }
    }
}

#[test]
fn compact_matches_plain_on_long_inputs() {
    for (i, n) in [4096usize, 10_000, 65_537].into_iter().enumerate() {
        for rho in [1, 17, 300, n / 4] {
            let r = bjpm_core::gen::random_runs(n, rho, i as u64 * 31 + rho as u64).unwrap();
            assert_eq!(
                build_max_table_compact(&r),
                delta_encode(&build_max_table(&r)).unwrap(),
                "n={n} rho={rho}"
            );
        }
    }
}

/// After the backward pass, T[l] is exact whenever some window of length l
/// starts a run of 1s, ends inside a run of 1s and holds f(l) ones.
#[test]
fn backward_pass_fixes_run_anchored_lengths() {
    let mut strings: Vec<String> = (1..=12).flat_map(all_strings).collect();
    strings.extend(random_corpus(200, 200, 5));
    for s in strings {
        let bits = parse_bits(&s).unwrap();
        let (_, f) = brute_tables(&bits);
        let r = rls(&s);
        let mut b = MaxTableBuilder::new(&r);
        b.run_pairs().backward_pass();
        let recount = Recount::new(&s);
        let n = s.len();
        for start in 1..=n {
            if !bits[start - 1] || (start > 1 && bits[start - 2]) {
                continue;
            }
            for end in start..=n {
                let len = end - start + 1;
                if bits[end - 1] && recount.ones(start, len) == f[len - 1] as usize {
                    assert_eq!(b.values()[len - 1], f[len - 1], "{s}: length {len}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn rle_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..300)) {
        let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let r = rls(&s);
        prop_assert_eq!(r.decode(), s.clone());
        prop_assert_eq!(r.total_ones() + r.total_zeros(), r.len());
        let interior = &r.zero_runs()[1..r.rho().max(1)];
        prop_assert!(r.rho() < 2 || interior.iter().all(|&z| z > 0));
        let reparsed: RunLengthString = r.to_string().parse().unwrap();
        prop_assert_eq!(&reparsed, &r);
        prop_assert_eq!(r.complement().decode(), s.chars().map(|c| if c == '1' { '0' } else { '1' }).collect::<String>());
    }

    #[test]
    fn tables_are_unit_step_and_ordered(bits in proptest::collection::vec(any::<bool>(), 1..400)) {
        let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
        let r = rls(&s);
        let (min, max) = (build_min_table(&r), build_max_table(&r));
        let mut prev = (0, 0);
        for k in 1..=r.len() {
            let (lo, hi) = (min.get(k), max.get(k));
            prop_assert!(lo <= hi && hi <= k);
            prop_assert!(lo - prev.0 <= 1 && hi - prev.1 <= 1);
            prev = (lo, hi);
        }
        prop_assert_eq!(max.get(r.len()), r.total_ones());
        let bv = delta_encode(&max).unwrap();
        for k in 1..=r.len() {
            prop_assert_eq!(bv.value(k).unwrap(), max.get(k));
        }
    }
}
