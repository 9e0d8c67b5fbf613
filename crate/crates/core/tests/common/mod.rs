//! Brute-force reference implementations and random instance generators.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

/// Every distinct substring of length <= `max_len` with its sequence-level
/// support, kept when frequent and without an equal-support superstring of
/// length <= `max_len`.
pub fn closed_contiguous(sequences: &[String], threshold: usize, max_len: usize) -> BTreeMap<String, usize> {
    let mut support: BTreeMap<String, usize> = BTreeMap::new();
    for s in sequences {
        let mut seen = BTreeSet::new();
        for i in 0..s.len() {
            for j in i + 1..=s.len().min(i + max_len) {
                seen.insert(&s[i..j]);
            }
        }
        for p in seen {
            *support.entry(p.to_string()).or_insert(0) += 1;
        }
    }
    let frequent: BTreeMap<String, usize> = support.into_iter().filter(|&(_, c)| c >= threshold).collect();
    frequent
        .iter()
        .filter(|(p, &c)| {
            !frequent
                .iter()
                .any(|(q, &d)| q.len() > p.len() && d == c && q.contains(p.as_str()))
        })
        .map(|(p, &c)| (p.clone(), c))
        .collect()
}

/// Exhaustive scan of the itemset lattice over the symbols that occur.
pub fn closed_itemsets(transactions: &[BTreeSet<char>], threshold: usize, max_len: usize) -> BTreeMap<String, usize> {
    let frequent = frequent_itemsets(transactions, threshold);
    frequent
        .iter()
        .filter(|(set, &c)| {
            set.len() <= max_len
                && !frequent
                    .iter()
                    .any(|(other, &d)| d == c && other.len() > set.len() && set.is_subset(other))
        })
        .map(|(set, &c)| (set.iter().collect::<String>(), c))
        .collect()
}

/// All non-empty itemsets with support >= `threshold`.
pub fn frequent_itemsets(transactions: &[BTreeSet<char>], threshold: usize) -> BTreeMap<BTreeSet<char>, usize> {
    let universe: Vec<char> = transactions
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << universe.len()) {
        let set: BTreeSet<char> = (0..universe.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| universe[b])
            .collect();
        let c = transactions.iter().filter(|t| set.is_subset(t)).count();
        if c >= threshold {
            out.insert(set, c);
        }
    }
    out
}

pub fn subsequence_of(p: &str, s: &str) -> bool {
    let mut rest = s.chars();
    p.chars().all(|c| rest.by_ref().any(|d| d == c))
}

/// Length of the longest common subsequence by trying every subsequence of `x`.
pub fn lcs_len_brute(x: &str, y: &str) -> usize {
    let xs: Vec<char> = x.chars().collect();
    let mut best = 0;
    for mask in 0u32..(1 << xs.len()) {
        let n = mask.count_ones() as usize;
        if n <= best {
            continue;
        }
        let sub: String = (0..xs.len()).filter(|b| mask >> b & 1 == 1).map(|b| xs[b]).collect();
        if subsequence_of(&sub, y) {
            best = n;
        }
    }
    best
}

pub fn random_string<R: Rng>(rng: &mut R, alphabet: &[u8], len: usize) -> String {
    (0..len)
        .map(|_| alphabet[rng.gen_range(0..alphabet.len())] as char)
        .collect()
}

/// Alphabet of `size` symbols from the movement alphabet, mixing cases so
/// ASCII ordering matters.
pub fn alphabet(size: usize) -> Vec<u8> {
    b"aGbScTdu".iter().copied().take(size).collect()
}

pub fn transaction(s: &str) -> BTreeSet<char> {
    s.chars().collect()
}
