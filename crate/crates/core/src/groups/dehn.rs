//! Dehn's algorithm for the genus-g surface group.
//!
//! The presentation `<a1, b1, ..., ag, bg | [a1,b1]...[ag,bg]>` satisfies the
//! metric small-cancellation condition C'(1/(4g-1)): every piece of the
//! symmetrized relator set has length 1, while relators have length 4g.  Dehn
//! reduction therefore decides the word problem, and Dehn-reduced words are
//! geodesic.  The canonical form of an element is the shortlex-least word in
//! the closure of a Dehn-reduced representative under half-relator swaps.

use crate::error::{Error, Result};
use crate::words::{Alphabet, Symbol, Word};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// Symmetrized relator table: every cyclic permutation of the defining
/// relator and of its inverse, with the replacement rules derived from them.
#[derive(Clone, Debug)]
pub struct RelatorTable {
    relator_len: usize,
    /// Proper prefixes longer than half a relator, mapped to the inverse of
    /// the completing suffix (a strictly shorter word).
    long_prefix: HashMap<Vec<Symbol>, Vec<Symbol>>,
    /// Exactly-half prefixes mapped to the equal-length replacement.
    half_prefix: HashMap<Vec<Symbol>, Vec<Symbol>>,
    relators: Vec<Vec<Symbol>>,
}

impl RelatorTable {
    pub fn for_surface(alphabet: &Alphabet, genus: usize) -> Self {
        // [a1,b1][a2,b2]... spelled with the alphabet's symbol order
        // (generator, inverse, generator, inverse, ...).
        let mut relator = Vec::new();
        for i in 0..genus {
            let a = Symbol((4 * i) as u16);
            let ainv = alphabet.inverse(a);
            let b = Symbol((4 * i + 2) as u16);
            let binv = alphabet.inverse(b);
            relator.extend_from_slice(&[a, b, ainv, binv]);
        }
        Self::from_relator(alphabet, relator)
    }

    pub fn from_relator(alphabet: &Alphabet, relator: Vec<Symbol>) -> Self {
        let n = relator.len();
        let mut relators = BTreeSet::new();
        let inv: Vec<Symbol> = relator.iter().rev().map(|&s| alphabet.inverse(s)).collect();
        for base in [relator, inv] {
            for shift in 0..n {
                let mut rot = base[shift..].to_vec();
                rot.extend_from_slice(&base[..shift]);
                relators.insert(rot);
            }
        }
        let relators: Vec<Vec<Symbol>> = relators.into_iter().collect();

        let mut long_prefix = HashMap::new();
        let mut half_prefix = HashMap::new();
        for r in &relators {
            for cut in n / 2..=n {
                let prefix = r[..cut].to_vec();
                // r = prefix * suffix and r = 1, so prefix = suffix^{-1}.
                let replacement: Vec<Symbol> =
                    r[cut..].iter().rev().map(|&s| alphabet.inverse(s)).collect();
                if cut * 2 == n {
                    half_prefix.insert(prefix, replacement);
                } else {
                    long_prefix.insert(prefix, replacement);
                }
            }
        }
        RelatorTable {
            relator_len: n,
            long_prefix,
            half_prefix,
            relators,
        }
    }

    /// Checks that a user-supplied relator set is closed under inversion and
    /// cyclic permutation.
    pub fn check_symmetrized(alphabet: &Alphabet, relators: &[Vec<Symbol>]) -> Result<()> {
        let set: BTreeSet<&Vec<Symbol>> = relators.iter().collect();
        for r in relators {
            let inv: Vec<Symbol> = r.iter().rev().map(|&s| alphabet.inverse(s)).collect();
            if !set.contains(&inv) {
                return Err(Error::RelatorsNotSymmetrized(
                    "missing an inverse".to_string(),
                ));
            }
            if !r.is_empty() {
                let mut rot = r[1..].to_vec();
                rot.push(r[0]);
                if !set.contains(&rot) {
                    return Err(Error::RelatorsNotSymmetrized(
                        "missing a cyclic permutation".to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn relators(&self) -> &[Vec<Symbol>] {
        &self.relators
    }

    pub fn relator_len(&self) -> usize {
        self.relator_len
    }

    /// One pass of Dehn reduction: replace the leftmost subword that is more
    /// than half of a relator.  Returns true if a replacement happened.
    fn reduce_step(&self, word: &mut Vec<Symbol>, alphabet: &Alphabet) -> bool {
        let n = self.relator_len;
        let max_len = n.min(word.len());
        for start in 0..word.len() {
            for len in (n / 2 + 1..=max_len).rev() {
                if start + len > word.len() {
                    continue;
                }
                if let Some(repl) = self.long_prefix.get(&word[start..start + len]) {
                    let mut next = word[..start].to_vec();
                    next.extend_from_slice(repl);
                    next.extend_from_slice(&word[start + len..]);
                    *word = free_reduce_symbols(&next, alphabet);
                    return true;
                }
            }
        }
        false
    }

    /// Dehn-reduces a word.  The result contains no subword that is more than
    /// half of a relator; it is empty iff the input represents the identity.
    pub fn dehn_reduce(&self, word: &Word, alphabet: &Alphabet) -> Word {
        let mut w = free_reduce_symbols(&word.0, alphabet);
        while self.reduce_step(&mut w, alphabet) {}
        Word(w)
    }

    /// All words of the same minimal length obtainable from `word` by
    /// half-relator swaps, i.e. the full set of geodesic spellings.
    /// If a swap uncovers a further Dehn reduction the search restarts from
    /// the shorter word.
    fn geodesic_class(&self, word: &Word, alphabet: &Alphabet) -> BTreeSet<Vec<Symbol>> {
        let half = self.relator_len / 2;
        let mut current = self.dehn_reduce(word, alphabet).0;
        'restart: loop {
            let mut seen: BTreeSet<Vec<Symbol>> = BTreeSet::new();
            let mut queue = VecDeque::new();
            seen.insert(current.clone());
            queue.push_back(current.clone());
            while let Some(w) = queue.pop_front() {
                for start in 0..w.len().saturating_sub(half - 1) {
                    if start + half > w.len() {
                        break;
                    }
                    let Some(repl) = self.half_prefix.get(&w[start..start + half]) else {
                        continue;
                    };
                    let mut next = w[..start].to_vec();
                    next.extend_from_slice(repl);
                    next.extend_from_slice(&w[start + half..]);
                    let mut next = free_reduce_symbols(&next, alphabet);
                    if next.len() < w.len() || self.reduce_step(&mut next, alphabet) {
                        // Found a strictly shorter spelling; start over.
                        while self.reduce_step(&mut next, alphabet) {}
                        current = next;
                        continue 'restart;
                    }
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            return seen;
        }
    }

    /// Shortlex-least geodesic spelling of the element of `word`.
    pub fn normal_form(&self, word: &Word, alphabet: &Alphabet) -> Word {
        let class = self.geodesic_class(word, alphabet);
        Word(class.into_iter().next().unwrap_or_default())
    }

    /// True iff `word` represents the identity.
    pub fn is_identity(&self, word: &Word, alphabet: &Alphabet) -> bool {
        self.dehn_reduce(word, alphabet).is_empty()
    }
}

/// Free reduction: repeatedly delete adjacent `s s^{-1}` pairs.
pub fn free_reduce_symbols(symbols: &[Symbol], alphabet: &Alphabet) -> Vec<Symbol> {
    let mut stack: Vec<Symbol> = Vec::with_capacity(symbols.len());
    for &s in symbols {
        if stack.last() == Some(&alphabet.inverse(s)) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    stack
}
