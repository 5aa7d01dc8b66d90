//! Delayed pair languages over two tapes.
//!
//! A pair `(x, y)` is encoded on the timeline `|x| + |y|`: tape 1 carries `x`
//! and then pads, tape 2 pads and then carries `y`.  This sequential reading
//! is what lets a finite automaton relate the end of `x` to the beginning of
//! `y` (an aligned convolution would have to buffer unboundedly many
//! symbols).

use crate::automata::{CompSym, MultiTapeAutomaton, TapeAlphabet, PAD};
use crate::error::Result;

/// The concatenation language `{(x, y) : xy in L(acceptor)}` for a
/// deterministic one-tape acceptor of a prefix-closed language.  Obtained by
/// running the acceptor first on tape 1, then on tape 2.
pub fn concatenation_pairs(acceptor: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    let alphabet = TapeAlphabet::new(acceptor.alphabet.base().clone(), 2);
    let n = acceptor.state_count();
    let mut m = MultiTapeAutomaton::new(alphabet);
    // State layout: q = first phase, n + q = second phase.
    for _ in 0..2 * n {
        m.add_state();
    }
    for (q, map) in acceptor.transitions.iter().enumerate() {
        for (sym, targets) in map {
            let s = sym.0[0];
            for &t in targets {
                m.add_transition(q as u32, CompSym(vec![s, PAD]), t);
                m.add_transition(q as u32, CompSym(vec![PAD, s]), t + n as u32);
                m.add_transition(q as u32 + n as u32, CompSym(vec![PAD, s]), t + n as u32);
            }
        }
    }
    m.start = acceptor.start.clone();
    for &q in &acceptor.accept {
        m.accept.insert(q);
        m.accept.insert(q + n as u32);
    }
    m.deterministic = acceptor.deterministic;
    Ok(m)
}

/// The delayed product `{(u, v) : u in L(a), v in L(b)}` for one-tape
/// operands.
pub fn delayed_join(
    a: &MultiTapeAutomaton,
    b: &MultiTapeAutomaton,
) -> Result<MultiTapeAutomaton> {
    let alphabet = TapeAlphabet::new(a.alphabet.base().clone(), 2);
    let na = a.state_count();
    let nb = b.state_count();
    let mut m = MultiTapeAutomaton::new(alphabet);
    for _ in 0..na + nb {
        m.add_state();
    }
    let b_state = |q: u32| q + na as u32;
    for (q, map) in a.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                m.add_transition(q as u32, CompSym(vec![sym.0[0], PAD]), t);
            }
        }
    }
    for (q, map) in b.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                m.add_transition(b_state(q as u32), CompSym(vec![PAD, sym.0[0]]), b_state(t));
            }
        }
    }
    // Hand over from an accepting a-state into b's start moves.
    let b_start_accepting = b.start.iter().any(|q| b.accept.contains(q));
    for &qa in &a.accept {
        for &qb in &b.start {
            for (sym, targets) in &b.transitions[qb as usize] {
                for &t in targets {
                    m.add_transition(qa, CompSym(vec![PAD, sym.0[0]]), b_state(t));
                }
            }
        }
        if b_start_accepting {
            m.accept.insert(qa);
        }
    }
    for &q in &b.accept {
        m.accept.insert(b_state(q));
    }
    m.start = a.start.clone();
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::enumerate::enumerate;
    use crate::cayley::{Ball, BallAlphabet};
    use crate::conelang::acceptor::geodesic_acceptor;
    use crate::conelang::cone_types::compute_cone_types;
    use crate::groups::{GroupFamily, GroupOracle};
    use crate::words::Word;

    fn lambda(family: GroupFamily, radius: u32, k: u32) -> (GroupOracle, MultiTapeAutomaton) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        let t = compute_cone_types(&b, &o, k).unwrap();
        let a = geodesic_acceptor(&t, &b).unwrap();
        (o, a)
    }

    #[test]
    fn concatenation_pairs_of_free_group() {
        let (o, lam) = lambda(GroupFamily::Free { rank: 2 }, 5, 1);
        let l0 = concatenation_pairs(&lam).unwrap();
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let enc = MultiTapeAutomaton::encode_delayed_pair;
        // No cancellation at the junction.
        assert!(l0.run(&enc(&w("a"), &w("b"))));
        assert!(l0.run(&enc(&w("ab"), &w("ab"))));
        assert!(!l0.run(&enc(&w("a"), &w("A"))));
        assert!(!l0.run(&enc(&w("ab"), &w("Ba"))));
        // Empty components.
        assert!(l0.run(&enc(&Word::empty(), &w("ab"))));
        assert!(l0.run(&enc(&w("ab"), &Word::empty())));
    }

    #[test]
    fn delayed_join_counts() {
        let (o, lam) = lambda(GroupFamily::Free { rank: 2 }, 5, 1);
        let j = delayed_join(&lam, &lam).unwrap();
        // Timeline length 2: (x, y) with |x| + |y| = 2 and both reduced:
        // 16 with |x|=|y|=1, 12 with |x|=2, 12 with |y|=2.
        let tuples = enumerate(&j, 2, 10_000).unwrap();
        let n2 = tuples
            .iter()
            .filter(|t| t[0].len() + t[1].len() == 2)
            .count();
        assert_eq!(n2, 40);
        let _ = o;
    }
}
