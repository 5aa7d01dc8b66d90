//! Word-difference machines: two-tape recognizers for multiplier relations.
//!
//! The machine for a multiplier `x` accepts the right-padded convolutions of
//! geodesic pairs `(u, v)` with `u x = v` in the group.  States are the word
//! differences `prefix(u)^{-1} prefix(v)`, kept only while their length stays
//! within a bound `D`; completeness for geodesic pairs is validated against
//! the ball, and a too-small bound fails loudly so the caller can retry with
//! a doubled bound.

use crate::automata::determinize::determinize_minimize_capped;
use crate::automata::ops::constrain;
use crate::automata::{CompSym, MultiTapeAutomaton, TapeAlphabet, DEFAULT_STATE_CAP, PAD};
use crate::cayley::geodesics::enumerate_geodesics;
use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::words::Word;
use std::collections::{HashMap, VecDeque};

/// Pad status of the two tapes; a padded tape never resumes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Phase {
    Both,
    LeftDone,
    RightDone,
}

/// Builds the raw difference machine for `multiplier` with difference bound
/// `bound`, then restricts both tapes to the geodesic language and
/// minimizes.
pub fn build_word_difference_machine(
    ball: &Ball,
    oracle: &GroupOracle,
    geodesic_acceptor: &MultiTapeAutomaton,
    multiplier: &Word,
    bound: u32,
) -> Result<MultiTapeAutomaton> {
    let raw = raw_difference_machine(ball, oracle, multiplier, bound)?;
    let left = constrain(&raw, &[0], geodesic_acceptor)?;
    let both = constrain(&left, &[1], geodesic_acceptor)?;
    let machine = determinize_minimize_capped(&both, DEFAULT_STATE_CAP)?;
    validate_against_ball(&machine, ball, oracle, multiplier, bound)?;
    Ok(machine)
}

fn raw_difference_machine(
    ball: &Ball,
    oracle: &GroupOracle,
    multiplier: &Word,
    bound: u32,
) -> Result<MultiTapeAutomaton> {
    let gens = ball.gens();
    let alphabet = TapeAlphabet::new(gens.alphabet().clone(), 2);
    let mut m = MultiTapeAutomaton::new(alphabet);
    let mut ids: HashMap<(Word, Phase), u32> = HashMap::new();
    let mut queue: VecDeque<(Word, Phase)> = VecDeque::new();
    let target = oracle.normal_form(multiplier)?;

    let intern = |key: (Word, Phase),
                      m: &mut MultiTapeAutomaton,
                      queue: &mut VecDeque<(Word, Phase)>,
                      ids: &mut HashMap<(Word, Phase), u32>|
     -> u32 {
        match ids.get(&key) {
            Some(&id) => id,
            None => {
                let id = m.add_state();
                if key.0 == target {
                    m.accept.insert(id);
                }
                ids.insert(key.clone(), id);
                queue.push_back(key);
                id
            }
        }
    };

    let start = intern((Word::empty(), Phase::Both), &mut m, &mut queue, &mut ids);
    m.start.insert(start);

    while let Some((diff, phase)) = queue.pop_front() {
        let from = ids[&(diff.clone(), phase)];
        for &a in gens.active() {
            let inv_a = oracle.invert(gens.element_of(a))?;
            // (a, b): both tapes read.
            if phase == Phase::Both {
                for &b in gens.active() {
                    let next =
                        oracle.multiply(&oracle.multiply(&inv_a, &diff)?, gens.element_of(b))?;
                    if length_within(ball, oracle, &next, bound)?.is_some() {
                        let to = intern((next, Phase::Both), &mut m, &mut queue, &mut ids);
                        m.add_transition(from, CompSym(vec![a.0, b.0]), to);
                    }
                }
            }
            // (a, $): right tape exhausted.
            if phase == Phase::Both || phase == Phase::RightDone {
                let next = oracle.multiply(&inv_a, &diff)?;
                if length_within(ball, oracle, &next, bound)?.is_some() {
                    let to = intern((next, Phase::RightDone), &mut m, &mut queue, &mut ids);
                    m.add_transition(from, CompSym(vec![a.0, PAD]), to);
                }
            }
            // ($, b): left tape exhausted.
            if phase == Phase::Both || phase == Phase::LeftDone {
                let next = oracle.multiply(&diff, gens.element_of(a))?;
                if length_within(ball, oracle, &next, bound)?.is_some() {
                    let to = intern((next, Phase::LeftDone), &mut m, &mut queue, &mut ids);
                    m.add_transition(from, CompSym(vec![PAD, a.0]), to);
                }
            }
        }
    }
    Ok(m)
}

fn length_within(
    ball: &Ball,
    oracle: &GroupOracle,
    key: &Word,
    bound: u32,
) -> Result<Option<u32>> {
    match ball.length_of_key(oracle, key)? {
        Some(len) if len <= bound => Ok(Some(len)),
        _ => Ok(None),
    }
}

/// Completeness check: every in-ball geodesic pair related by the multiplier
/// must be accepted.  Soundness is checked on the same sweep.
fn validate_against_ball(
    machine: &MultiTapeAutomaton,
    ball: &Ball,
    oracle: &GroupOracle,
    multiplier: &Word,
    bound: u32,
) -> Result<()> {
    let check_radius = ball.radius().min(4);
    let x = oracle.normal_form(multiplier)?;
    let per_pair_cap = 64;
    for g in ball.ball(check_radius) {
        let gx = oracle.multiply(ball.key(g), &x)?;
        let Some(target) = ball.index_of(&gx) else {
            continue;
        };
        if ball.length(target) > check_radius {
            continue;
        }
        let one = ball.index_of(&Word::empty()).unwrap();
        let us = enumerate_geodesics(ball, oracle, one, g, per_pair_cap);
        let vs = enumerate_geodesics(ball, oracle, one, target, per_pair_cap);
        let (Ok(us), Ok(vs)) = (us, vs) else { continue };
        for u in &us {
            for v in &vs {
                if !machine.accepts_padded(&[u, v]) {
                    return Err(Error::DifferenceBound(bound));
                }
            }
        }
    }
    Ok(())
}

/// Builds the machine with the default bound, doubling on failure up to the
/// cap.  Returns the machine and the bound that worked.
pub fn build_with_doubling(
    ball: &Ball,
    oracle: &GroupOracle,
    geodesic_acceptor: &MultiTapeAutomaton,
    multiplier: &Word,
    initial_bound: u32,
    bound_cap: u32,
) -> Result<(MultiTapeAutomaton, u32)> {
    let mut bound = initial_bound.max(1);
    loop {
        match build_word_difference_machine(ball, oracle, geodesic_acceptor, multiplier, bound) {
            Ok(m) => return Ok((m, bound)),
            Err(Error::DifferenceBound(_)) if bound < bound_cap => {
                bound = (bound * 2).min(bound_cap);
            }
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::BallAlphabet;
    use crate::conelang::acceptor::geodesic_acceptor;
    use crate::conelang::cone_types::compute_cone_types;
    use crate::groups::GroupFamily;

    fn setup(family: GroupFamily, radius: u32, k: u32) -> (GroupOracle, Ball, MultiTapeAutomaton) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        let t = compute_cone_types(&b, &o, k).unwrap();
        let a = geodesic_acceptor(&t, &b).unwrap();
        (o, b, a)
    }

    #[test]
    fn equality_machine_of_free_group_is_diagonal() {
        let (o, b, lambda) = setup(GroupFamily::Free { rank: 2 }, 6, 1);
        let (m, _) =
            build_with_doubling(&b, &o, &lambda, &Word::empty(), 2, 3).unwrap();
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        assert!(m.accepts_padded(&[&w("ab"), &w("ab")]));
        assert!(!m.accepts_padded(&[&w("ab"), &w("ba")]));
        assert!(!m.accepts_padded(&[&w("a"), &w("ab")]));
        // Unique geodesics: the language is exactly the diagonal on reduced
        // words; brute force over all reduced pairs up to length 4.
        for g in b.ball(4) {
            for h in b.ball(4) {
                let expect = g == h;
                assert_eq!(
                    m.accepts_padded(&[b.word(g), b.word(h)]),
                    expect,
                    "{} vs {}",
                    b.word(g).to_text(o.alphabet()),
                    b.word(h).to_text(o.alphabet())
                );
            }
        }
    }

    #[test]
    fn multiplier_machine_free_group() {
        let (o, b, lambda) = setup(GroupFamily::Free { rank: 2 }, 6, 1);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let (m, _) = build_with_doubling(&b, &o, &lambda, &w("a"), 2, 3).unwrap();
        assert!(m.accepts_padded(&[&w("b"), &w("ba")]));
        assert!(!m.accepts_padded(&[&w("b"), &w("ab")]));
        // Cancelling multiplication: u = aA...: u ends with A, v = u a.
        assert!(m.accepts_padded(&[&w("bA"), &w("b")]));
    }

    #[test]
    fn equality_machine_zfree_accepts_commuted_spellings() {
        let (o, b, lambda) = setup(GroupFamily::FreeAbelian { rank: 2 }, 6, 1);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        // Word differences between geodesic spellings of one lattice point
        // grow with the ball, so the bound doubles until the in-ball check
        // passes; the result is exact inside the validated region only.
        let (m, bound) = build_with_doubling(&b, &o, &lambda, &Word::empty(), 2, 8).unwrap();
        assert!(bound >= 4);
        assert!(m.accepts_padded(&[&w("xy"), &w("yx")]));
        assert!(m.accepts_padded(&[&w("xyx"), &w("xxy")]));
        assert!(!m.accepts_padded(&[&w("xy"), &w("xY")]));
    }

    #[test]
    fn too_small_bound_fails_loudly() {
        let (o, b, lambda) = setup(GroupFamily::FreeAbelian { rank: 2 }, 6, 1);
        let err =
            build_word_difference_machine(&b, &o, &lambda, &Word::empty(), 1).unwrap_err();
        assert!(matches!(err, Error::DifferenceBound(1)));
    }
}
