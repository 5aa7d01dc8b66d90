//! Suffix-padding validity: once a tape reads `$` it reads `$` forever.

use super::{CompSym, MultiTapeAutomaton};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

fn pads_of(sym: &CompSym) -> u32 {
    let mut mask = 0u32;
    for (t, &v) in sym.0.iter().enumerate() {
        if v == super::PAD {
            mask |= 1 << t;
        }
    }
    mask
}

fn violates(sym: &CompSym, mask: u32) -> bool {
    pads_of(sym) & mask != mask
}

/// Product with the padding-status mask automaton: keeps exactly the
/// suffix-padded convolutions of the language.
pub fn restrict_to_suffix_padded(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
    for &q in &a.start {
        let id = out.add_state();
        ids.insert((q, 0), id);
        out.start.insert(id);
        if a.accept.contains(&q) {
            out.accept.insert(id);
        }
        queue.push_back((q, 0));
    }
    while let Some((q, mask)) = queue.pop_front() {
        let from = ids[&(q, mask)];
        for (sym, targets) in &a.transitions[q as usize] {
            if violates(sym, mask) {
                continue;
            }
            let next_mask = mask | pads_of(sym);
            for &t in targets {
                let key = (t, next_mask);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = out.add_state();
                        ids.insert(key, id);
                        if a.accept.contains(&t) {
                            out.accept.insert(id);
                        }
                        queue.push_back(key);
                        id
                    }
                };
                out.add_transition(from, sym.clone(), id);
            }
        }
    }
    out
}

/// Checks that every accepted convolution is suffix-padded.  The automaton
/// is trimmed first, so any violating transition lies on an accepting path.
pub fn validate_suffix_padding(a: &MultiTapeAutomaton) -> Result<()> {
    let t = super::determinize::trim(a);
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
    for &q in &t.start {
        seen.insert((q, 0), ());
        queue.push_back((q, 0));
    }
    while let Some((q, mask)) = queue.pop_front() {
        for (sym, targets) in &t.transitions[q as usize] {
            if violates(sym, mask) {
                return Err(Error::PaddingViolation(format!(
                    "state {q} resumes a padded tape on {}",
                    sym.display(t.alphabet.base())
                )));
            }
            let next_mask = mask | pads_of(sym);
            for &tt in targets {
                if seen.insert((tt, next_mask), ()).is_none() {
                    queue.push_back((tt, next_mask));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{CompSym, MultiTapeAutomaton, TapeAlphabet, PAD};
    use crate::words::Alphabet;

    #[test]
    fn detects_pad_resumption() {
        let base = Alphabet::lowercase(1, 'a');
        let ta = TapeAlphabet::new(base, 2);
        let mut m = MultiTapeAutomaton::new(ta);
        let q0 = m.add_state();
        let q1 = m.add_state();
        let q2 = m.add_state();
        m.start.insert(q0);
        m.accept.insert(q2);
        // Tape 2 pads then resumes: invalid.
        m.add_transition(q0, CompSym(vec![0, PAD]), q1);
        m.add_transition(q1, CompSym(vec![0, 0]), q2);
        assert!(validate_suffix_padding(&m).is_err());
        let fixed = restrict_to_suffix_padded(&m);
        assert!(crate::automata::enumerate::is_empty(&fixed));
    }

    #[test]
    fn accepts_valid_padding() {
        let base = Alphabet::lowercase(1, 'a');
        let ta = TapeAlphabet::new(base, 2);
        let mut m = MultiTapeAutomaton::new(ta);
        let q0 = m.add_state();
        let q1 = m.add_state();
        m.start.insert(q0);
        m.accept.insert(q1);
        m.add_transition(q0, CompSym(vec![0, 0]), q0);
        m.add_transition(q0, CompSym(vec![0, PAD]), q1);
        m.add_transition(q1, CompSym(vec![0, PAD]), q1);
        assert!(validate_suffix_padding(&m).is_ok());
    }
}
