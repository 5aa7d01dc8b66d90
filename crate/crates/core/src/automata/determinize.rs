//! Subset construction, trimming, Moore minimization and canonical
//! renumbering.
//!
//! Minimal automata here are trim (partial) rather than complete: a missing
//! transition is an implicit dead state.  Canonical numbering is the BFS
//! order from the start state following symbols in their natural order, so
//! equal languages yield structurally equal automata and minimization is
//! idempotent.

use super::{CompSym, MultiTapeAutomaton, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

pub fn determinize(a: &MultiTapeAutomaton, cap: usize) -> Result<MultiTapeAutomaton> {
    if a.deterministic {
        return Ok(a.clone());
    }
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    out.deterministic = true;
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();

    let start: Vec<u32> = a.start.iter().copied().collect();
    ids.insert(start.clone(), out.add_state());
    out.start.insert(0);
    if start.iter().any(|q| a.accept.contains(q)) {
        out.accept.insert(0);
    }
    queue.push_back(start);

    while let Some(subset) = queue.pop_front() {
        let from = ids[&subset];
        let mut merged: BTreeMap<CompSym, BTreeSet<u32>> = BTreeMap::new();
        for &q in &subset {
            for (sym, targets) in &a.transitions[q as usize] {
                merged
                    .entry(sym.clone())
                    .or_default()
                    .extend(targets.iter().copied());
            }
        }
        for (sym, targets) in merged {
            let key: Vec<u32> = targets.iter().copied().collect();
            let to = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    if ids.len() >= cap {
                        return Err(Error::StateBudget {
                            count: ids.len() + 1,
                            cap,
                        });
                    }
                    let id = out.add_state();
                    ids.insert(key.clone(), id);
                    if key.iter().any(|q| a.accept.contains(q)) {
                        out.accept.insert(id);
                    }
                    queue.push_back(key);
                    id
                }
            };
            out.add_transition(from, sym, to);
        }
    }
    Ok(out)
}

/// Restricts to states that are reachable from a start state and can reach
/// an accept state.  A single start state is kept even when the language is
/// empty, so the result is never stateless.
pub fn trim(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let n = a.state_count();
    let mut reachable = vec![false; n];
    let mut queue: VecDeque<u32> = a.start.iter().copied().collect();
    for &q in &a.start {
        reachable[q as usize] = true;
    }
    while let Some(q) = queue.pop_front() {
        for targets in a.transitions[q as usize].values() {
            for &t in targets {
                if !reachable[t as usize] {
                    reachable[t as usize] = true;
                    queue.push_back(t);
                }
            }
        }
    }
    // Reverse reachability from accept states.
    let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (q, map) in a.transitions.iter().enumerate() {
        for targets in map.values() {
            for &t in targets {
                rev[t as usize].push(q as u32);
            }
        }
    }
    let mut useful = vec![false; n];
    let mut queue: VecDeque<u32> = a.accept.iter().copied().collect();
    for &q in &a.accept {
        useful[q as usize] = true;
    }
    while let Some(q) = queue.pop_front() {
        for &p in &rev[q as usize] {
            if !useful[p as usize] {
                useful[p as usize] = true;
                queue.push_back(p);
            }
        }
    }

    let keep: Vec<u32> = (0..n as u32)
        .filter(|&q| reachable[q as usize] && useful[q as usize])
        .collect();
    if keep.is_empty() {
        let mut out = MultiTapeAutomaton::empty_language(a.alphabet.clone());
        out.deterministic = a.deterministic;
        return out;
    }
    let mut remap: HashMap<u32, u32> = HashMap::new();
    for (i, &q) in keep.iter().enumerate() {
        remap.insert(q, i as u32);
    }
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    out.deterministic = a.deterministic;
    for _ in &keep {
        out.add_state();
    }
    for &q in &keep {
        for (sym, targets) in &a.transitions[q as usize] {
            for &t in targets {
                if let Some(&nt) = remap.get(&t) {
                    out.add_transition(remap[&q], sym.clone(), nt);
                }
            }
        }
    }
    for &q in &a.start {
        if let Some(&nq) = remap.get(&q) {
            out.start.insert(nq);
        }
    }
    if out.start.is_empty() {
        // All start states were useless; keep one as the dead start.
        let s = out.add_state();
        out.start.insert(s);
    }
    for &q in &a.accept {
        if let Some(&nq) = remap.get(&q) {
            out.accept.insert(nq);
        }
    }
    out
}

/// Moore partition refinement on a trim DFA.
fn minimize_trim_dfa(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let n = a.state_count();
    let mut block: Vec<u32> = (0..n)
        .map(|q| u32::from(a.accept.contains(&(q as u32))))
        .collect();
    loop {
        let mut sig_ids: BTreeMap<(u32, Vec<(CompSym, u32)>), u32> = BTreeMap::new();
        let mut next: Vec<u32> = Vec::with_capacity(n);
        for q in 0..n {
            let sig: Vec<(CompSym, u32)> = a.transitions[q]
                .iter()
                .map(|(sym, targets)| {
                    let t = *targets.iter().next().expect("dfa target");
                    (sym.clone(), block[t as usize])
                })
                .collect();
            let key = (block[q], sig);
            let id = sig_ids.len() as u32;
            let id = *sig_ids.entry(key).or_insert(id);
            next.push(id);
        }
        let stable = sig_ids.len() == block.iter().collect::<BTreeSet<_>>().len();
        block = next;
        if stable {
            break;
        }
    }

    // Rebuild on blocks.
    let block_count = block.iter().collect::<BTreeSet<_>>().len();
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    out.deterministic = true;
    for _ in 0..block_count {
        out.add_state();
    }
    let mut remap: BTreeMap<u32, u32> = BTreeMap::new();
    let mut next_id = 0u32;
    for q in 0..n {
        remap.entry(block[q]).or_insert_with(|| {
            let id = next_id;
            next_id += 1;
            id
        });
    }
    for q in 0..n {
        let from = remap[&block[q]];
        for (sym, targets) in &a.transitions[q] {
            let t = *targets.iter().next().unwrap();
            out.add_transition(from, sym.clone(), remap[&block[t as usize]]);
        }
        if a.accept.contains(&(q as u32)) {
            out.accept.insert(from);
        }
    }
    let s = *a.start.iter().next().expect("dfa start");
    out.start.insert(remap[&block[s as usize]]);
    out
}

/// Renumbers states in BFS order from the start, following symbols in their
/// natural order.  On a minimal DFA this is a canonical form.
pub fn canonical_renumber(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let mut order: Vec<u32> = Vec::new();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &q in &a.start {
        if seen.insert(q) {
            order.push(q);
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        for targets in a.transitions[q as usize].values() {
            for &t in targets {
                if seen.insert(t) {
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
    }
    // Unreachable states (none after trim) go last in numeric order.
    for q in 0..a.state_count() as u32 {
        if seen.insert(q) {
            order.push(q);
        }
    }
    let mut remap = vec![0u32; a.state_count()];
    for (new, &old) in order.iter().enumerate() {
        remap[old as usize] = new as u32;
    }
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    out.deterministic = a.deterministic;
    for _ in 0..a.state_count() {
        out.add_state();
    }
    for (q, map) in a.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                out.add_transition(remap[q], sym.clone(), remap[t as usize]);
            }
        }
    }
    out.start = a.start.iter().map(|&q| remap[q as usize]).collect();
    out.accept = a.accept.iter().map(|&q| remap[q as usize]).collect();
    out
}

/// Deterministic, trim, minimal, canonically numbered automaton with the
/// same language.
pub fn determinize_minimize(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    determinize_minimize_capped(a, DEFAULT_STATE_CAP)
}

pub fn determinize_minimize_capped(
    a: &MultiTapeAutomaton,
    cap: usize,
) -> Result<MultiTapeAutomaton> {
    let dfa = determinize(a, cap)?;
    let trimmed = trim(&dfa);
    let minimal = minimize_trim_dfa(&trimmed);
    Ok(canonical_renumber(&minimal))
}
