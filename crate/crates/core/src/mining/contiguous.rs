//! Closed contiguous sequential patterns of bounded length.
//!
//! Patterns are grown one symbol to the right from occurrence lists, so every
//! frequent contiguous pattern up to `max_len` is visited exactly once. A
//! pattern is closed when no one-symbol left or right extension keeps its
//! support; any longer equal-support super-pattern would imply such an
//! extension, so checking one step is enough. Patterns of length `max_len`
//! are closed by definition since nothing longer is in the universe.

use super::{canonical_order, MinerConfig, Pattern, PatternKind};
use crate::error::{Error, Result};

/// Number of sequences containing `pattern` as a contiguous substring.
pub fn support_contiguous<S: AsRef<str>>(pattern: &str, sequences: &[S]) -> usize {
    sequences.iter().filter(|s| s.as_ref().contains(pattern)).count()
}

#[derive(Clone, Copy, Debug)]
struct Occurrence {
    seq: u32,
    start: u32,
}

/// Distinct sequence count of an occurrence list sorted by sequence.
fn support_of(occurrences: &[Occurrence]) -> usize {
    let mut count = 0;
    let mut last = u32::MAX;
    for o in occurrences {
        if o.seq != last {
            count += 1;
            last = o.seq;
        }
    }
    count
}

struct Grower<'a> {
    sequences: Vec<&'a [u8]>,
    threshold: usize,
    max_len: usize,
    prefix: Vec<u8>,
    out: Vec<Pattern>,
}

impl Grower<'_> {
    fn grow(&mut self, occurrences: &[Occurrence]) {
        let len = self.prefix.len();
        let support = support_of(occurrences);
        let mut closed = true;

        if len < self.max_len {
            let mut right: Vec<(u8, Occurrence)> = occurrences
                .iter()
                .filter_map(|&o| {
                    let seq = self.sequences[o.seq as usize];
                    seq.get(o.start as usize + len).map(|&c| (c, o))
                })
                .collect();
            // stable: each group stays sorted by (seq, start)
            right.sort_by_key(|&(c, _)| c);

            let mut i = 0;
            while i < right.len() {
                let c = right[i].0;
                let mut j = i;
                while j < right.len() && right[j].0 == c {
                    j += 1;
                }
                let group: Vec<Occurrence> = right[i..j].iter().map(|&(_, o)| o).collect();
                let ext_support = support_of(&group);
                if ext_support == support {
                    closed = false;
                }
                if ext_support >= self.threshold {
                    self.prefix.push(c);
                    self.grow(&group);
                    self.prefix.pop();
                }
                i = j;
            }

            if closed {
                let mut last_seq = [u32::MAX; 128];
                let mut counts = [0usize; 128];
                for o in occurrences {
                    if o.start == 0 {
                        continue;
                    }
                    let c = self.sequences[o.seq as usize][o.start as usize - 1] as usize;
                    if last_seq[c] != o.seq {
                        last_seq[c] = o.seq;
                        counts[c] += 1;
                    }
                }
                closed = !counts.contains(&support);
            }
        }

        if closed {
            let symbols = String::from_utf8(self.prefix.clone()).expect("ASCII pattern");
            self.out.push(Pattern::new(
                PatternKind::Contiguous,
                symbols,
                support,
                self.sequences.len(),
            ));
        }
    }
}

/// Mines all closed contiguous patterns with support at least
/// `cfg.threshold(n)` and length at most `cfg.max_len`.
///
/// Output is in canonical order (support descending, length ascending, ASCII).
pub fn mine_closed_contiguous<S: AsRef<str>>(sequences: &[S], cfg: &MinerConfig) -> Result<Vec<Pattern>> {
    cfg.validate()?;
    if sequences.is_empty() {
        return Err(Error::EmptyInput("no sequences to mine"));
    }
    let seqs: Vec<&[u8]> = sequences.iter().map(|s| s.as_ref().as_bytes()).collect();
    if seqs.iter().any(|s| !s.is_ascii()) {
        return Err(Error::config("sequences must be ASCII"));
    }
    if seqs.len() > u32::MAX as usize || seqs.iter().any(|s| s.len() > u32::MAX as usize) {
        return Err(Error::config("input too large"));
    }

    let mut by_symbol: Vec<Vec<Occurrence>> = vec![Vec::new(); 128];
    for (si, s) in seqs.iter().enumerate() {
        for (pos, &c) in s.iter().enumerate() {
            by_symbol[c as usize].push(Occurrence {
                seq: si as u32,
                start: pos as u32,
            });
        }
    }

    let mut grower = Grower {
        threshold: cfg.threshold(seqs.len()),
        sequences: seqs,
        max_len: cfg.max_len,
        prefix: Vec::with_capacity(cfg.max_len),
        out: Vec::new(),
    };
    for (c, occurrences) in by_symbol.iter().enumerate() {
        if !occurrences.is_empty() && support_of(occurrences) >= grower.threshold {
            grower.prefix.push(c as u8);
            grower.grow(occurrences);
            grower.prefix.pop();
        }
    }

    let mut out = grower.out;
    out.sort_by(canonical_order);
    Ok(out)
}
