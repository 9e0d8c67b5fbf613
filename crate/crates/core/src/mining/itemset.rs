//! Frequent closed itemsets over per-sequence symbol sets.
//!
//! The output is exactly the AprioriClose result: every closed itemset whose
//! support reaches the threshold, with sets longer than `max_len` filtered out
//! afterwards. Enumeration walks prefix-preserving closure extensions so each
//! closed set is generated once, without materializing non-closed candidates.

use super::{canonical_order, MinerConfig, Pattern, PatternKind};
use crate::error::{Error, Result};

/// Distinct symbols of one sequence, as a bitset over ASCII.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transaction(u128);

impl Transaction {
    pub fn from_symbols(symbols: &str) -> Result<Self> {
        let mut bits = 0u128;
        for b in symbols.bytes() {
            if !b.is_ascii() {
                return Err(Error::config("itemset symbols must be ASCII"));
            }
            bits |= 1u128 << b;
        }
        Ok(Self(bits))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains_all(self, items: Transaction) -> bool {
        self.0 & items.0 == items.0
    }

    /// Items rendered in ascending ASCII order.
    pub fn render(self) -> String {
        render_bits(self.0)
    }
}

fn render_bits(bits: u128) -> String {
    (0u8..128)
        .filter(|&b| bits & (1u128 << b) != 0)
        .map(|b| b as char)
        .collect()
}

/// One transaction per sequence; repeated symbols collapse.
pub fn to_transactions<S: AsRef<str>>(sequences: &[S]) -> Result<Vec<Transaction>> {
    sequences
        .iter()
        .map(|s| Transaction::from_symbols(s.as_ref()))
        .collect()
}

struct ClosedEnumerator<'a> {
    transactions: &'a [Transaction],
    threshold: usize,
    max_len: usize,
    out: Vec<Pattern>,
}

impl ClosedEnumerator<'_> {
    fn closure(&self, tids: &[u32]) -> u128 {
        tids.iter()
            .fold(u128::MAX, |acc, &t| acc & self.transactions[t as usize].0)
    }

    fn emit(&mut self, items: u128, support: usize) {
        if items != 0 && items.count_ones() as usize <= self.max_len {
            self.out.push(Pattern::new(
                PatternKind::Itemset,
                render_bits(items),
                support,
                self.transactions.len(),
            ));
        }
    }

    /// Extends closed set `items` (supported by `tids`) with items from `start` up.
    fn extend(&mut self, items: u128, tids: &[u32], start: u32, universe: u128) {
        for e in start..128 {
            let bit = 1u128 << e;
            if universe & bit == 0 || items & bit != 0 {
                continue;
            }
            let sub: Vec<u32> = tids
                .iter()
                .copied()
                .filter(|&t| self.transactions[t as usize].0 & bit != 0)
                .collect();
            if sub.len() < self.threshold {
                continue;
            }
            let closed = self.closure(&sub);
            let below = bit - 1;
            // prefix-preserving check: nothing below e may be added
            if closed & below != items & below {
                continue;
            }
            self.emit(closed, sub.len());
            self.extend(closed, &sub, e + 1, universe);
        }
    }
}

/// Mines closed itemsets with support at least `cfg.threshold(n)`; sets with
/// more than `cfg.max_len` items are dropped after closure.
///
/// Output is in canonical order (support descending, length ascending, ASCII).
pub fn mine_closed_itemsets(transactions: &[Transaction], cfg: &MinerConfig) -> Result<Vec<Pattern>> {
    cfg.validate()?;
    if transactions.is_empty() {
        return Err(Error::EmptyInput("no transactions to mine"));
    }
    let mut miner = ClosedEnumerator {
        transactions,
        threshold: cfg.threshold(transactions.len()),
        max_len: cfg.max_len,
        out: Vec::new(),
    };
    let all: Vec<u32> = (0..transactions.len() as u32).collect();
    let root = miner.closure(&all);
    miner.emit(root, all.len());
    let universe = transactions.iter().fold(0u128, |acc, t| acc | t.0);
    miner.extend(root, &all, 0, universe);

    let mut out = miner.out;
    out.sort_by(canonical_order);
    Ok(out)
}
