//! Finite automata over padded multi-tape alphabets.
//!
//! Composite symbols are `k`-tuples over the base alphabet extended by a
//! padding character `$`; the all-`$` tuple is excluded from transition
//! labels (end of input is implicit in accept-state semantics).  Transitions
//! are stored sparsely per state in ordered maps, so the large composite
//! alphabets of six-tape constructions are never materialized, and every
//! iteration order is deterministic.
//!
//! The tuple languages of the geodesic machinery come in two flavours: the
//! ordinary right-padded convolution (`encode_padded`), and a delayed
//! convolution in which a later tape starts after an earlier one has finished
//! (built by the cone-type constructions).  The engine is agnostic: a tape's
//! content is its non-`$` subsequence.  A separate validator certifies
//! suffix-padding where a construction promises it.

pub mod determinize;
pub mod enumerate;
pub mod io;
pub mod ops;
pub mod padding;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Encoded tape entry: a base symbol index, or `PAD`.
pub const PAD: u16 = u16::MAX;

/// A `k`-tuple over the padded alphabet.  Ordering is lexicographic by tape
/// with `$` last, which makes every enumeration shortlex-stable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompSym(pub Vec<u16>);

impl CompSym {
    pub fn from_parts(parts: &[Option<Symbol>]) -> Self {
        CompSym(parts.iter().map(|p| p.map_or(PAD, |s| s.0)).collect())
    }

    pub fn tapes(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, tape: usize) -> Option<Symbol> {
        match self.0[tape] {
            PAD => None,
            v => Some(Symbol(v)),
        }
    }

    pub fn is_all_pad(&self) -> bool {
        self.0.iter().all(|&v| v == PAD)
    }

    /// The restriction of the tuple to the given tape positions.
    pub fn restrict(&self, positions: &[usize]) -> CompSym {
        CompSym(positions.iter().map(|&t| self.0[t]).collect())
    }

    /// The tuple with one tape removed.
    pub fn remove(&self, tape: usize) -> CompSym {
        let mut v = self.0.clone();
        v.remove(tape);
        CompSym(v)
    }

    /// Concatenation of two tuples (for joins).
    pub fn join(&self, other: &CompSym) -> CompSym {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CompSym(v)
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&v| {
                if v == PAD {
                    "$".to_string()
                } else {
                    alphabet.name(Symbol(v)).to_string()
                }
            })
            .collect();
        if self.0.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("({})", parts.join(","))
        }
    }
}

/// Base alphabet plus tape count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TapeAlphabet {
    base: Alphabet,
    tapes: usize,
}

impl TapeAlphabet {
    pub fn new(base: Alphabet, tapes: usize) -> Self {
        assert!(tapes >= 1);
        TapeAlphabet { base, tapes }
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    /// Number of composite symbols, excluding the all-`$` tuple.
    pub fn symbol_count(&self) -> usize {
        (self.base.len() + 1).pow(self.tapes as u32) - 1
    }

    /// Enumerates every composite symbol in order.  Guarded by a cap since
    /// wide alphabets are normally handled sparsely.
    pub fn all_symbols(&self, cap: usize) -> Result<Vec<CompSym>> {
        let count = self.symbol_count();
        if count > cap {
            return Err(Error::StateBudget { count, cap });
        }
        let mut out = Vec::with_capacity(count);
        let mut digits = vec![0usize; self.tapes];
        let radix = self.base.len() + 1;
        loop {
            let sym = CompSym(
                digits
                    .iter()
                    .map(|&d| if d == self.base.len() { PAD } else { d as u16 })
                    .collect(),
            );
            if !sym.is_all_pad() {
                out.push(sym);
            }
            let mut t = self.tapes;
            loop {
                if t == 0 {
                    out.sort();
                    return Ok(out);
                }
                t -= 1;
                digits[t] += 1;
                if digits[t] < radix {
                    break;
                }
                digits[t] = 0;
            }
        }
    }

    pub fn check_compatible(&self, other: &TapeAlphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!(
                "{} tapes vs {} tapes or different base",
                self.tapes, other.tapes
            )))
        }
    }
}

/// A finite automaton over a padded multi-tape alphabet.
///
/// `transitions[q]` maps composite symbols to successor sets.  The
/// `deterministic` flag promises a single start state and at most one
/// successor per (state, symbol).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiTapeAutomaton {
    pub alphabet: TapeAlphabet,
    pub transitions: Vec<BTreeMap<CompSym, BTreeSet<u32>>>,
    pub start: BTreeSet<u32>,
    pub accept: BTreeSet<u32>,
    pub deterministic: bool,
}

impl MultiTapeAutomaton {
    pub fn new(alphabet: TapeAlphabet) -> Self {
        MultiTapeAutomaton {
            alphabet,
            transitions: Vec::new(),
            start: BTreeSet::new(),
            accept: BTreeSet::new(),
            deterministic: false,
        }
    }

    /// The one-state automaton rejecting everything.
    pub fn empty_language(alphabet: TapeAlphabet) -> Self {
        let mut a = Self::new(alphabet);
        let s = a.add_state();
        a.start.insert(s);
        a.deterministic = true;
        a
    }

    /// The one-state automaton accepting exactly the empty tuple.
    pub fn epsilon_language(alphabet: TapeAlphabet) -> Self {
        let mut a = Self::empty_language(alphabet);
        a.accept.insert(0);
        a
    }

    pub fn add_state(&mut self) -> u32 {
        self.transitions.push(BTreeMap::new());
        (self.transitions.len() - 1) as u32
    }

    pub fn add_transition(&mut self, from: u32, sym: CompSym, to: u32) {
        debug_assert!(!sym.is_all_pad(), "all-pad labels are forbidden");
        debug_assert_eq!(sym.tapes(), self.alphabet.tapes());
        self.transitions[from as usize]
            .entry(sym)
            .or_default()
            .insert(to);
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn tapes(&self) -> usize {
        self.alphabet.tapes()
    }

    /// Runs the automaton on an explicit composite string.
    pub fn run(&self, input: &[CompSym]) -> bool {
        let mut current: BTreeSet<u32> = self.start.clone();
        for sym in input {
            let mut next = BTreeSet::new();
            for &q in &current {
                if let Some(targets) = self.transitions[q as usize].get(sym) {
                    next.extend(targets.iter().copied());
                }
            }
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|q| self.accept.contains(q))
    }

    /// Right-padded convolution of a word tuple.
    pub fn encode_padded(words: &[&Word]) -> Vec<CompSym> {
        let len = words.iter().map(|w| w.len()).max().unwrap_or(0);
        (0..len)
            .map(|i| {
                CompSym(
                    words
                        .iter()
                        .map(|w| w.symbols().get(i).map_or(PAD, |s| s.0))
                        .collect(),
                )
            })
            .collect()
    }

    /// Delayed convolution of a pair: tape 1 carries `x` then pads while
    /// tape 2 pads then carries `y`.
    pub fn encode_delayed_pair(x: &Word, y: &Word) -> Vec<CompSym> {
        let mut out = Vec::with_capacity(x.len() + y.len());
        for &s in x.symbols() {
            out.push(CompSym(vec![s.0, PAD]));
        }
        for &s in y.symbols() {
            out.push(CompSym(vec![PAD, s.0]));
        }
        out
    }

    /// Acceptance of a word tuple under the right-padded convolution.
    pub fn accepts_padded(&self, words: &[&Word]) -> bool {
        self.run(&Self::encode_padded(words))
    }

    /// Every composite symbol that actually appears on a transition.
    pub fn used_symbols(&self) -> BTreeSet<CompSym> {
        self.transitions
            .iter()
            .flat_map(|m| m.keys().cloned())
            .collect()
    }

    /// Total number of (state, symbol, state) transitions.
    pub fn transition_count(&self) -> usize {
        self.transitions
            .iter()
            .map(|m| m.values().map(|v| v.len()).sum::<usize>())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composite_symbol_order_pads_last() {
        let a = CompSym(vec![0, PAD]);
        let b = CompSym(vec![PAD, 0]);
        let c = CompSym(vec![0, 0]);
        assert!(c < a);
        assert!(a < b);
    }

    #[test]
    fn all_symbols_enumeration() {
        let base = Alphabet::lowercase(1, 'a'); // a, A
        let ta = TapeAlphabet::new(base, 2);
        let syms = ta.all_symbols(100).unwrap();
        assert_eq!(syms.len(), 8); // 3^2 - 1
        assert!(syms.iter().all(|s| !s.is_all_pad()));
    }

    #[test]
    fn run_simple_machine() {
        let base = Alphabet::lowercase(1, 'a');
        let ta = TapeAlphabet::new(base.clone(), 1);
        let mut m = MultiTapeAutomaton::new(ta);
        let s0 = m.add_state();
        let s1 = m.add_state();
        m.start.insert(s0);
        m.accept.insert(s1);
        let a = CompSym(vec![0]);
        m.add_transition(s0, a.clone(), s1);
        m.add_transition(s1, a.clone(), s0);
        // Odd number of a's.
        let w1 = Word::parse("a", &base).unwrap();
        let w3 = Word::parse("aaa", &base).unwrap();
        let w2 = Word::parse("aa", &base).unwrap();
        assert!(m.accepts_padded(&[&w1]));
        assert!(m.accepts_padded(&[&w3]));
        assert!(!m.accepts_padded(&[&w2]));
    }
}
