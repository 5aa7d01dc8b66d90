//! Certified checks: the same-coset distance bound, the displacement of the
//! induced action, and the automaton-versus-brute-force crosscheck.

use super::{CosetTable, Section};
use crate::automata::enumerate::enumerate;
use crate::automata::MultiTapeAutomaton;
use crate::cayley::{Ball, BallAlphabet};
use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::words::Word;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Clone, Debug, Serialize)]
pub struct SlackReport {
    /// max of d(x1, x2) - (|x1| + |x2| - 2 sigma) over same-coset pairs.
    pub max_slack: i64,
    /// Largest diameter of `S` within one coset.
    pub max_s_diameter: u32,
    pub pairs_checked: usize,
}

/// Verifies `d(x1, x2) <= C1 + |x1| + |x2| - 2 sigma` over every same-coset
/// in-region pair, and measures the diameter of each `S` slice.
pub fn check_same_coset_bound(
    ball: &Ball,
    oracle: &GroupOracle,
    table: &CosetTable,
) -> Result<SlackReport> {
    let mut by_coset: Vec<Vec<u32>> = vec![Vec::new(); table.coset_count()];
    for (&g, &id) in &table.coset_of {
        by_coset[id as usize].push(g);
    }
    let mut max_slack = i64::MIN;
    let mut pairs = 0usize;
    for (coset, members) in by_coset.iter().enumerate() {
        let sigma = table.sigma[coset] as i64;
        for (ai, &x1) in members.iter().enumerate() {
            for &x2 in &members[ai..] {
                let d = ball
                    .distance_keys(oracle, ball.key(x1), ball.key(x2))?
                    .ok_or_else(|| Error::OutOfBallDistance("same-coset pair".into()))?;
                let slack =
                    d as i64 - (ball.length(x1) as i64 + ball.length(x2) as i64 - 2 * sigma);
                max_slack = max_slack.max(slack);
                pairs += 1;
            }
        }
    }
    let mut max_s_diameter = 0u32;
    for members in &table.s_members {
        for (ai, &x1) in members.iter().enumerate() {
            for &x2 in &members[ai + 1..] {
                let d = ball
                    .distance_keys(oracle, ball.key(x1), ball.key(x2))?
                    .ok_or_else(|| Error::OutOfBallDistance("S pair".into()))?;
                max_s_diameter = max_s_diameter.max(d);
            }
        }
    }
    Ok(SlackReport {
        max_slack: if pairs == 0 { 0 } else { max_slack },
        max_s_diameter,
        pairs_checked: pairs,
    })
}

impl SlackReport {
    pub fn ensure_within(&self, c1: i64) -> Result<()> {
        if self.max_slack > c1 {
            Err(Error::SlackExceedsC1 {
                slack: self.max_slack,
                c1,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    /// max over tested g and cosets of d(s(g xH), g s(xH)).
    pub max_displacement: u32,
    /// The bound C1 + 2 |g| instantiated at the worst tested g.
    pub bound: i64,
    pub cosets_tested: usize,
    pub within_bound: bool,
}

/// Displacement of the induced action `g . s(xH) = s(g xH)` against plain
/// translation, for every `g` in the ball of `g_radius` and every coset
/// whose representative keeps `g x` inside the measured region.
pub fn action_displacement(
    ball: &Ball,
    oracle: &GroupOracle,
    table: &CosetTable,
    section: &Section,
    g_radius: u32,
    c1: i64,
) -> Result<ActionReport> {
    let mut max_disp = 0u32;
    let mut tested = 0usize;
    let mut within = true;
    let mut bound = 0i64;
    for g in ball.ball(g_radius) {
        let g_len = ball.length(g);
        for (coset, &rep) in section.by_coset.iter().enumerate() {
            let x = ball.key(rep);
            if ball.length(rep) + g_len > table.measure_radius {
                continue;
            }
            let gx = oracle.multiply(ball.key(g), x)?;
            let Some(gx_id) = table.coset_of_key(ball, &gx) else {
                return Err(Error::CosetEscapes);
            };
            let s_gx = ball.key(section.by_coset[gx_id as usize]);
            let d = ball
                .distance_keys(oracle, s_gx, &gx)?
                .ok_or_else(|| Error::OutOfBallDistance("action pair".into()))?;
            max_disp = max_disp.max(d);
            tested += 1;
            let this_bound = c1 + 2 * g_len as i64;
            if d as i64 > this_bound {
                within = false;
            }
            bound = bound.max(this_bound);
            let _ = coset;
        }
    }
    Ok(ActionReport {
        max_displacement: max_disp,
        bound,
        cosets_tested: tested,
        within_bound: within,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub agree: bool,
    /// A word over the generators witnessing the first discrepancy, with
    /// which side accepted it.
    pub first_discrepancy: Option<(String, &'static str)>,
    pub elements_compared: usize,
}

/// Compares the element set recognized by the transversal acceptor with the
/// brute-force set, both restricted to the measured ball.
pub fn oracle_crosscheck(
    s_automaton: &MultiTapeAutomaton,
    gens: &BallAlphabet,
    ball: &Ball,
    oracle: &GroupOracle,
    brute: &[u32],
    measure_radius: u32,
) -> Result<CrosscheckReport> {
    let mut from_automaton: BTreeSet<Word> = BTreeSet::new();
    for tuple in enumerate(s_automaton, measure_radius as usize, 2_000_000)? {
        let word = &tuple[0];
        let mut key = Word::empty();
        for &s in word.symbols() {
            key = oracle.multiply(&key, gens.element_of(s))?;
        }
        from_automaton.insert(key);
    }
    let brute_keys: BTreeSet<Word> = brute.iter().map(|&g| ball.key(g).clone()).collect();
    let alphabet = gens.alphabet();
    if let Some(w) = from_automaton.difference(&brute_keys).next() {
        return Ok(CrosscheckReport {
            agree: false,
            first_discrepancy: Some((w.to_text(alphabet), "automaton-only")),
            elements_compared: brute_keys.len(),
        });
    }
    if let Some(w) = brute_keys.difference(&from_automaton).next() {
        return Ok(CrosscheckReport {
            agree: false,
            first_discrepancy: Some((w.to_text(alphabet), "bruteforce-only")),
            elements_compared: brute_keys.len(),
        });
    }
    Ok(CrosscheckReport {
        agree: true,
        first_discrepancy: None,
        elements_compared: brute_keys.len(),
    })
}
