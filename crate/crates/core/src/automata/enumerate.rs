//! Language enumeration and emptiness.

use super::{CompSym, MultiTapeAutomaton};
use crate::error::{Error, Result};
use crate::words::Word;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// All accepted tuples of convolution length at most `maxlen`, in shortlex
/// order of the convolution string.  Each tuple is decoded per tape by
/// dropping `$` entries.
pub fn enumerate(
    a: &MultiTapeAutomaton,
    maxlen: usize,
    cap: usize,
) -> Result<Vec<Vec<Word>>> {
    Ok(enumerate_raw(a, maxlen, cap)?
        .into_iter()
        .map(|s| decode(a, &s))
        .collect())
}

/// The accepted convolution strings themselves.
pub fn enumerate_raw(
    a: &MultiTapeAutomaton,
    maxlen: usize,
    cap: usize,
) -> Result<Vec<Vec<CompSym>>> {
    let mut out: Vec<Vec<CompSym>> = Vec::new();
    let mut frontier: BTreeMap<Vec<CompSym>, BTreeSet<u32>> = BTreeMap::new();
    frontier.insert(Vec::new(), a.start.clone());
    for len in 0..=maxlen {
        for (string, states) in &frontier {
            if states.iter().any(|q| a.accept.contains(q)) {
                if out.len() >= cap {
                    return Err(Error::EnumerationCap(cap));
                }
                out.push(string.clone());
            }
        }
        if len == maxlen {
            break;
        }
        let mut next: BTreeMap<Vec<CompSym>, BTreeSet<u32>> = BTreeMap::new();
        for (string, states) in &frontier {
            let mut moves: BTreeMap<CompSym, BTreeSet<u32>> = BTreeMap::new();
            for &q in states {
                for (sym, targets) in &a.transitions[q as usize] {
                    moves
                        .entry(sym.clone())
                        .or_default()
                        .extend(targets.iter().copied());
                }
            }
            for (sym, targets) in moves {
                let mut s = string.clone();
                s.push(sym);
                next.entry(s).or_default().extend(targets.iter().copied());
            }
            if next.len() > cap {
                return Err(Error::EnumerationCap(cap));
            }
        }
        frontier = next;
    }
    Ok(out)
}

fn decode(a: &MultiTapeAutomaton, string: &[CompSym]) -> Vec<Word> {
    (0..a.tapes())
        .map(|t| {
            Word(
                string
                    .iter()
                    .filter_map(|sym| sym.get(t))
                    .collect(),
            )
        })
        .collect()
}

/// Emptiness by reachability.
pub fn is_empty(a: &MultiTapeAutomaton) -> bool {
    let t = super::determinize::trim(a);
    t.accept.is_empty()
}

/// A shortest accepted convolution string, by BFS over states.
pub fn shortest_accepted(a: &MultiTapeAutomaton) -> Option<Vec<CompSym>> {
    let mut back: Vec<Option<(u32, CompSym)>> = vec![None; a.state_count()];
    let mut seen = vec![false; a.state_count()];
    let mut queue: std::collections::VecDeque<u32> = std::collections::VecDeque::new();
    for &q in &a.start {
        seen[q as usize] = true;
        queue.push_back(q);
    }
    let mut hit = a.start.iter().copied().find(|q| a.accept.contains(q));
    while hit.is_none() {
        let Some(q) = queue.pop_front() else {
            return None;
        };
        for (sym, targets) in &a.transitions[q as usize] {
            for &t in targets {
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    back[t as usize] = Some((q, sym.clone()));
                    if a.accept.contains(&t) {
                        hit = Some(t);
                    }
                    queue.push_back(t);
                }
            }
        }
    }
    let mut string = Vec::new();
    let mut cur = hit.unwrap();
    while let Some((prev, sym)) = back[cur as usize].clone() {
        string.push(sym);
        cur = prev;
    }
    string.reverse();
    Some(string)
}

/// Language equality up to convolution length `maxlen`, by enumeration.
pub fn language_equal_to_len(
    a: &MultiTapeAutomaton,
    b: &MultiTapeAutomaton,
    maxlen: usize,
) -> Result<bool> {
    let la: BTreeSet<Vec<CompSym>> = enumerate_raw(a, maxlen, DEFAULT_ENUM_CAP)?
        .into_iter()
        .collect();
    let lb: BTreeSet<Vec<CompSym>> = enumerate_raw(b, maxlen, DEFAULT_ENUM_CAP)?
        .into_iter()
        .collect();
    Ok(la == lb)
}

/// Number of accepted strings of each convolution length `0..=maxlen`.
pub fn count_by_length(a: &MultiTapeAutomaton, maxlen: usize) -> Result<Vec<usize>> {
    let strings = enumerate_raw(a, maxlen, DEFAULT_ENUM_CAP)?;
    let mut counts = vec![0usize; maxlen + 1];
    for s in strings {
        counts[s.len()] += 1;
    }
    Ok(counts)
}
