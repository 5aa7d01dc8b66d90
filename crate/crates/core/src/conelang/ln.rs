//! The tower of pair languages `L_n = {(x, y) : <x, y> = n}`.
//!
//! `<x, y> = |x| + |y| - |xy|` measures the cancellation at the junction of
//! two geodesic words.  `L_0` comes straight from the geodesic acceptor run
//! sequentially over the two tapes; `L_n` is assembled from the sextuple
//! language, the single-letter classification `P_i(c)`, and `L_{n-i}`, by
//! existential projection onto the `(x, y)` tapes.

use super::cone_types::ConeTypeTable;
use super::pairs::concatenation_pairs;
use super::quadruples::{
    build_r, build_r_c, build_r_prime_c, TAPE_W_PRIME, TAPE_X, TAPE_Y, TAPE_Z, TAPE_Z_PRIME,
};
use super::word_difference::build_with_doubling;
use crate::automata::determinize::{determinize_minimize_capped, trim};
use crate::automata::enumerate::is_empty;
use crate::automata::ops::{constrain, intersect, project, raw_complement, union};
use crate::automata::MultiTapeAutomaton;
use crate::cayley::Ball;
use crate::error::Result;
use crate::groups::GroupOracle;
use crate::words::Symbol;

/// `P_0(c), P_1(c), P_2(c)`: the partition of the geodesic language by
/// `<x, c> = |x| + 1 - |xc|`.
///
/// `P_0` (the letter extends) is the acceptor with accepting classes
/// restricted to those whose cone contains `c`.  Whether a non-extending
/// letter keeps or shrinks the length is not determined by the cone type, so
/// `P_2` follows the multiplier route: `x` lies in `P_2(c)` iff some
/// geodesic spelling `v` of `x c` ends in a class whose cone contains
/// `c^{-1}`.  `P_1` is the complement of both inside the language.
pub fn build_p(
    table: &ConeTypeTable,
    geodesic_acceptor: &MultiTapeAutomaton,
    multiplier_c: &MultiTapeAutomaton,
    c: Symbol,
    state_cap: usize,
) -> Result<[MultiTapeAutomaton; 3]> {
    let cone_filtered = |letter: Symbol| {
        let mut a = geodesic_acceptor.clone();
        a.accept = (0..table.class_count() as u32)
            .filter(|&class| table.move_of(class, letter).is_up())
            .collect();
        a
    };
    let p0 = cone_filtered(c);
    let c_inv = geodesic_acceptor.alphabet.base().inverse(c);
    let targets = cone_filtered(c_inv);
    let with_target = constrain(multiplier_c, &[1], &targets)?;
    let p2 = determinize_minimize_capped(&project(&with_target, &[0])?, state_cap)?;
    let p1 = determinize_minimize_capped(
        &intersect(
            &intersect(geodesic_acceptor, &raw_complement(&p0, state_cap)?)?,
            &raw_complement(&p2, state_cap)?,
        )?,
        state_cap,
    )?;
    Ok([p0, p1, p2])
}

/// Settings for the recursive construction.
#[derive(Clone, Copy, Debug)]
pub struct TowerParams {
    pub state_cap: usize,
    pub difference_bound: u32,
    pub difference_bound_cap: u32,
}

/// The languages `L_0..L_n` and their unions `U_n = L_0 | ... | L_n`, all
/// minimized.
pub struct LnTower {
    pub levels: Vec<MultiTapeAutomaton>,
    pub cumulative: Vec<MultiTapeAutomaton>,
    /// Word-difference bound that sufficed for the multiplier machines.
    pub difference_bound_used: u32,
}

pub fn build_tower(
    ball: &Ball,
    oracle: &GroupOracle,
    table: &ConeTypeTable,
    lambda: &MultiTapeAutomaton,
    max_n: u32,
    params: TowerParams,
) -> Result<LnTower> {
    let l0 = determinize_minimize_capped(&concatenation_pairs(lambda)?, params.state_cap)?;
    let mut levels = vec![l0.clone()];
    let mut cumulative = vec![l0];
    if max_n == 0 {
        return Ok(LnTower {
            levels,
            cumulative,
            difference_bound_used: 0,
        });
    }

    // Per-letter machinery, built once: R'_c already constrained by P_i(c).
    let r = build_r(table, ball, lambda)?;
    let mut pieces: Vec<(Symbol, usize, MultiTapeAutomaton)> = Vec::new();
    let mut bound_used = 0;
    for &c in ball.gens().active() {
        let r_c = build_r_c(&r, c)?;
        if is_empty(&r_c) {
            continue;
        }
        let (m_c, bound) = build_with_doubling(
            ball,
            oracle,
            lambda,
            ball.gens().element_of(c),
            params.difference_bound,
            params.difference_bound_cap,
        )?;
        bound_used = bound_used.max(bound);
        let r_prime = build_r_prime_c(&r_c, &m_c)?;
        let p = build_p(table, lambda, &m_c, c, params.state_cap)?;
        for i in [1usize, 2] {
            let constrained = trim(&constrain(&r_prime, &[TAPE_Z], &p[i])?);
            if !is_empty(&constrained) {
                pieces.push((c, i, constrained));
            }
        }
    }

    for n in 1..=max_n {
        let mut level: Option<MultiTapeAutomaton> = None;
        for (_, i, piece) in &pieces {
            if *i as u32 > n {
                continue;
            }
            let prev = &levels[(n - *i as u32) as usize];
            if is_empty(prev) {
                continue;
            }
            let with_rec = constrain(piece, &[TAPE_Z_PRIME, TAPE_W_PRIME], prev)?;
            let projected = project(&with_rec, &[TAPE_X, TAPE_Y])?;
            level = Some(match level {
                None => projected,
                Some(acc) => union(&acc, &projected)?,
            });
        }
        let level = match level {
            None => MultiTapeAutomaton::empty_language(levels[0].alphabet.clone()),
            Some(l) => determinize_minimize_capped(&l, params.state_cap)?,
        };
        let cum = determinize_minimize_capped(
            &union(cumulative.last().unwrap(), &level)?,
            params.state_cap,
        )?;
        levels.push(level);
        cumulative.push(cum);
    }
    Ok(LnTower {
        levels,
        cumulative,
        difference_bound_used: bound_used,
    })
}

/// Default tower parameters derived from a delta estimate.
pub fn default_params(delta_ceiling: i64, radius: u32) -> TowerParams {
    let initial = (4 * delta_ceiling + 2).max(2) as u32;
    TowerParams {
        state_cap: crate::automata::DEFAULT_STATE_CAP,
        difference_bound: initial.min((radius / 2).max(2)),
        difference_bound_cap: (radius / 2).max(2),
    }
}

/// Brute-force junction cancellation of two geodesic words.
pub fn inner_product(oracle: &GroupOracle, x: &crate::words::Word, y: &crate::words::Word) -> Result<i64> {
    let xy = oracle.multiply(x, y)?;
    Ok(x.len() as i64 + y.len() as i64 - xy.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::enumerate::enumerate_raw;
    use crate::cayley::BallAlphabet;
    use crate::conelang::acceptor;
    use crate::conelang::cone_types::compute_cone_types;
    use crate::groups::GroupFamily;
    use crate::words::Word;

    fn tower(
        family: GroupFamily,
        radius: u32,
        k: u32,
        max_n: u32,
    ) -> (GroupOracle, Ball, LnTower) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        let t = compute_cone_types(&b, &o, k).unwrap();
        let lam = acceptor::geodesic_acceptor(&t, &b).unwrap();
        let tw = build_tower(
            &b,
            &o,
            &t,
            &lam,
            max_n,
            TowerParams {
                state_cap: 500_000,
                difference_bound: 2,
                difference_bound_cap: 8,
            },
        )
        .unwrap();
        (o, b, tw)
    }

    fn p_parts(
        family: GroupFamily,
        radius: u32,
        k: u32,
        letter: char,
    ) -> (GroupOracle, MultiTapeAutomaton, [MultiTapeAutomaton; 3]) {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        let t = compute_cone_types(&b, &o, k).unwrap();
        let lam = acceptor::geodesic_acceptor(&t, &b).unwrap();
        let c = o.alphabet().symbol_by_name(letter).unwrap();
        let (m_c, _) =
            build_with_doubling(&b, &o, &lam, &Word::single(c), 2, radius / 2).unwrap();
        let p = build_p(&t, &lam, &m_c, c, 100_000).unwrap();
        (o, lam, p)
    }

    #[test]
    fn p_partitions_lambda_and_p1_empty_in_free_groups() {
        let (o, lam, p) = p_parts(GroupFamily::Free { rank: 2 }, 6, 1, 'a');
        assert!(is_empty(&p[1]));
        // Partition check by enumeration to length 5.
        let all = enumerate_raw(&lam, 5, 100_000).unwrap();
        for word in all {
            let hits: usize = p.iter().map(|part| usize::from(part.run(&word))).sum();
            assert_eq!(hits, 1);
        }
        // Words not ending in A extend by a (P0); those ending in A cancel.
        let wa = Word::parse("ba", o.alphabet()).unwrap();
        let wend = Word::parse("bA", o.alphabet()).unwrap();
        assert!(p[0].accepts_padded(&[&wa]));
        assert!(p[2].accepts_padded(&[&wend]));
    }

    #[test]
    fn fpc_p1_contains_torsion_midpoint() {
        let (o, lam, p) = p_parts(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 8, 2, 'b');
        // |b * b| = |b|: the letter b sits in P_1(b).
        let wb = Word::parse("b", o.alphabet()).unwrap();
        assert!(p[1].accepts_padded(&[&wb]));
        // The three parts partition the language.
        let all = enumerate_raw(&lam, 5, 100_000).unwrap();
        for word in all {
            let hits: usize = p.iter().map(|part| usize::from(part.run(&word))).sum();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn l0_and_l2_of_free_group() {
        let (o, _, tw) = tower(GroupFamily::Free { rank: 2 }, 6, 1, 2);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let enc = MultiTapeAutomaton::encode_delayed_pair;
        assert!(tw.levels[0].run(&enc(&w("a"), &w("b"))));
        assert!(!tw.levels[0].run(&enc(&w("a"), &w("A"))));
        // Cancellation of one letter: <a, A> = 2 and <a, Ab> = 2.
        assert!(tw.levels[2].run(&enc(&w("a"), &w("A"))));
        assert!(tw.levels[2].run(&enc(&w("a"), &w("Ab"))));
        assert!(!tw.levels[2].run(&enc(&w("a"), &w("b"))));
        // Odd cancellation is impossible in a free group.
        assert!(is_empty(&tw.levels[1]));
    }

    #[test]
    fn ln_matches_bruteforce_partition_free() {
        let (o, b, tw) = tower(GroupFamily::Free { rank: 2 }, 6, 1, 4);
        for x in b.ball(2) {
            for y in b.ball(2) {
                let n = inner_product(&o, b.word(x), b.word(y)).unwrap();
                let enc = MultiTapeAutomaton::encode_delayed_pair(b.word(x), b.word(y));
                for (level, l) in tw.levels.iter().enumerate() {
                    assert_eq!(
                        l.run(&enc),
                        level as i64 == n,
                        "x={} y={} level={level} n={n}",
                        b.word(x).to_text(o.alphabet()),
                        b.word(y).to_text(o.alphabet())
                    );
                }
                // Cumulative language: <x,y> <= n.
                assert_eq!(tw.cumulative[4].run(&enc), n <= 4);
            }
        }
    }

    #[test]
    fn fpc_l1_contains_b_b() {
        let (o, _, tw) = tower(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 7, 2, 1);
        let w = |t: &str| Word::parse(t, o.alphabet()).unwrap();
        let enc = MultiTapeAutomaton::encode_delayed_pair(&w("b"), &w("b"));
        assert!(tw.levels[1].run(&enc));
        assert!(!tw.levels[0].run(&enc));
    }

    #[test]
    fn ln_matches_bruteforce_partition_fpc() {
        let (o, b, tw) = tower(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 7, 2, 3);
        for x in b.ball(2) {
            for y in b.ball(2) {
                let n = inner_product(&o, b.word(x), b.word(y)).unwrap();
                let enc = MultiTapeAutomaton::encode_delayed_pair(b.word(x), b.word(y));
                for (level, l) in tw.levels.iter().enumerate() {
                    assert_eq!(
                        l.run(&enc),
                        level as i64 == n,
                        "x={} y={} level={level} n={n}",
                        b.word(x).to_text(o.alphabet()),
                        b.word(y).to_text(o.alphabet())
                    );
                }
            }
        }
    }
}
