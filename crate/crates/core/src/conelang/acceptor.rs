//! The geodesic word acceptor: one state per cone type.

use super::cone_types::{ConeMove, ConeTypeTable};
use crate::automata::{CompSym, MultiTapeAutomaton, TapeAlphabet};
use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::words::Word;

/// Deterministic one-tape automaton accepting exactly the geodesic words:
/// states are cone-type classes, all accepting; a symbol moves along the
/// validated successor map and anything non-length-increasing rejects.
pub fn geodesic_acceptor(table: &ConeTypeTable, ball: &Ball) -> Result<MultiTapeAutomaton> {
    let alphabet = TapeAlphabet::new(ball.gens().alphabet().clone(), 1);
    let mut m = MultiTapeAutomaton::new(alphabet);
    for _ in 0..table.class_count() {
        m.add_state();
    }
    m.start.insert(table.start_class());
    for class in 0..table.class_count() as u32 {
        m.accept.insert(class);
        for &s in ball.gens().active() {
            match table.move_of(class, s) {
                ConeMove::Up(target) => {
                    m.add_transition(class, CompSym(vec![s.0]), target);
                }
                ConeMove::UpUnobserved => {
                    return Err(Error::ConeSuccessor(format!(
                        "class {class} has an unobserved successor; enlarge the ball radius"
                    )));
                }
                ConeMove::NotUp => {}
            }
        }
    }
    m.deterministic = true;
    Ok(m)
}

/// Compares acceptance with `|w| = |nf(w)|` over every word of length at
/// most `maxlen`, returning the first disagreement.  Non-geodesic prefixes
/// are pruned: geodesic words are closed under prefixes, and the acceptor
/// has no transitions out of a rejected prefix, so once both sides reject
/// no extension can disagree.
pub fn validate_acceptor(
    acceptor: &MultiTapeAutomaton,
    ball: &Ball,
    oracle: &GroupOracle,
    maxlen: u32,
) -> Result<Option<Word>> {
    let start = *acceptor.start.iter().next().expect("deterministic start");
    let mut stack: Vec<(Word, Word, u32, u32)> = vec![(Word::empty(), Word::empty(), start, 0)];
    while let Some((word, key, state, len)) = stack.pop() {
        if len >= maxlen {
            continue;
        }
        for &s in ball.gens().active() {
            let mut w = word.clone();
            w.push(s);
            let new_key = oracle.multiply(&key, ball.gens().element_of(s))?;
            let geodesic = match ball.length_of_key(oracle, &new_key)? {
                Some(l) => l as usize == w.len(),
                None => false,
            };
            let next_state = acceptor.transitions[state as usize]
                .get(&CompSym(vec![s.0]))
                .and_then(|t| t.iter().next().copied());
            match (geodesic, next_state) {
                (true, Some(q)) => stack.push((w, new_key, q, len + 1)),
                (false, None) => {}
                _ => return Ok(Some(w)),
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::BallAlphabet;
    use crate::conelang::cone_types::compute_cone_types;
    use crate::groups::GroupFamily;

    fn acceptor_for(family: GroupFamily, radius: u32, k: u32) -> (GroupOracle, Ball, MultiTapeAutomaton) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        let t = compute_cone_types(&b, &o, k).unwrap();
        let a = geodesic_acceptor(&t, &b).unwrap();
        (o, b, a)
    }

    #[test]
    fn free2_acceptor_is_reduced_word_acceptor() {
        let (o, _, a) = acceptor_for(GroupFamily::Free { rank: 2 }, 5, 1);
        assert_eq!(a.state_count(), 5);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        assert!(a.accepts_padded(&[&w("abA")]));
        assert!(!a.accepts_padded(&[&w("aA")]));
    }

    #[test]
    fn fpc_acceptor_rejects_torsion_overruns() {
        let (o, _, a) = acceptor_for(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 7, 2);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        assert!(!a.accepts_padded(&[&w("bB")]));
        assert!(!a.accepts_padded(&[&w("bbb")]));
        // |b^2| = 1, so the two-letter spelling is not geodesic.
        assert!(!a.accepts_padded(&[&w("bb")]));
        assert!(a.accepts_padded(&[&w("ab")]));
        assert!(a.accepts_padded(&[&w("bab")]));
    }

    #[test]
    fn acceptance_matches_lengths_in_ball() {
        for (family, radius, k) in [
            (GroupFamily::Free { rank: 2 }, 6, 1),
            (GroupFamily::FreeAbelian { rank: 2 }, 6, 1),
            (GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 7, 2),
        ] {
            let (o, b, a) = acceptor_for(family, radius, k);
            let bad = validate_acceptor(&a, &b, &o, radius - k).unwrap();
            assert!(bad.is_none(), "family {family}: {:?}", bad.map(|w| w.to_text(o.alphabet())));
        }
    }

    #[test]
    fn sphere_counts_match_acceptor_counts() {
        let (_, b, a) = acceptor_for(GroupFamily::Free { rank: 2 }, 6, 1);
        let counts = crate::automata::enumerate::count_by_length(&a, 5).unwrap();
        // 4 * 3^(n-1) geodesic words; in a free group geodesics are unique,
        // so the counts equal the sphere sizes.
        assert_eq!(counts, vec![1, 4, 12, 36, 108, 324]);
        assert_eq!(b.sphere_sizes()[..5], [1, 4, 12, 36, 108]);
    }
}
