//! Boolean, join, projection and closure operations.
//!
//! Products are label-driven: transitions of the result are generated from
//! the explicit transitions of the operands, so nothing is ever enumerated
//! over the full composite alphabet except in complementation, which is
//! guarded by a cap.

use super::determinize::{determinize, determinize_minimize_capped, trim};
use super::{CompSym, MultiTapeAutomaton, TapeAlphabet, DEFAULT_STATE_CAP, PAD};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Intersect,
    Union,
    Difference,
}

/// `L(a) op L(b)`; the result is determinized and minimized.
pub fn combine(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton, op: BoolOp) -> Result<MultiTapeAutomaton> {
    a.alphabet.check_compatible(&b.alphabet)?;
    let raw = match op {
        BoolOp::Intersect => intersect(a, b)?,
        BoolOp::Union => union(a, b)?,
        BoolOp::Difference => intersect(a, &raw_complement(b, DEFAULT_STATE_CAP)?)?,
    };
    determinize_minimize_capped(&raw, DEFAULT_STATE_CAP)
}

/// Synchronous product: both operands consume every symbol.
pub fn intersect(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    a.alphabet.check_compatible(&b.alphabet)?;
    let all: Vec<usize> = (0..a.tapes()).collect();
    constrain(a, &all, b)
}

/// Disjoint union of state sets.
pub fn union(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    a.alphabet.check_compatible(&b.alphabet)?;
    let mut out = MultiTapeAutomaton::new(a.alphabet.clone());
    for _ in 0..a.state_count() + b.state_count() {
        out.add_state();
    }
    let shift = a.state_count() as u32;
    for (q, map) in a.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                out.add_transition(q as u32, sym.clone(), t);
            }
        }
    }
    for (q, map) in b.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                out.add_transition(q as u32 + shift, sym.clone(), t + shift);
            }
        }
    }
    out.start.extend(a.start.iter().copied());
    out.start.extend(b.start.iter().map(|&q| q + shift));
    out.accept.extend(a.accept.iter().copied());
    out.accept.extend(b.accept.iter().map(|&q| q + shift));
    Ok(out)
}

/// Constrains `big` by requiring that the subsequence of steps whose
/// restriction to `positions` is not all-`$`, restricted to those tapes,
/// lies in `L(small)`.  With `positions` covering every tape this is the
/// synchronous product.
pub fn constrain(
    big: &MultiTapeAutomaton,
    positions: &[usize],
    small: &MultiTapeAutomaton,
) -> Result<MultiTapeAutomaton> {
    for &t in positions {
        if t >= big.tapes() {
            return Err(Error::BadTape(t, big.tapes()));
        }
    }
    if small.tapes() != positions.len() {
        return Err(Error::AlphabetMismatch(format!(
            "constraint has {} tapes for {} positions",
            small.tapes(),
            positions.len()
        )));
    }
    let mut out = MultiTapeAutomaton::new(big.alphabet.clone());
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();
    for &qb in &big.start {
        for &qs in &small.start {
            let id = out.add_state();
            ids.insert((qb, qs), id);
            out.start.insert(id);
            if big.accept.contains(&qb) && small.accept.contains(&qs) {
                out.accept.insert(id);
            }
            queue.push_back((qb, qs));
        }
    }
    while let Some((qb, qs)) = queue.pop_front() {
        let from = ids[&(qb, qs)];
        for (sym, targets) in &big.transitions[qb as usize] {
            let v = sym.restrict(positions);
            let small_moves: Vec<u32> = if v.is_all_pad() {
                vec![qs]
            } else {
                match small.transitions[qs as usize].get(&v) {
                    Some(t) => t.iter().copied().collect(),
                    None => continue,
                }
            };
            for &tb in targets {
                for &ts in &small_moves {
                    let id = match ids.get(&(tb, ts)) {
                        Some(&id) => id,
                        None => {
                            let id = out.add_state();
                            ids.insert((tb, ts), id);
                            if big.accept.contains(&tb) && small.accept.contains(&ts) {
                                out.accept.insert(id);
                            }
                            queue.push_back((tb, ts));
                            id
                        }
                    };
                    out.add_transition(from, sym.clone(), id);
                }
            }
        }
    }
    Ok(out)
}

/// Complete-then-flip complement over the raw composite alphabet; the result
/// is only meaningful intersected against a language of valid convolutions.
pub fn raw_complement(a: &MultiTapeAutomaton, cap: usize) -> Result<MultiTapeAutomaton> {
    let symbols = a.alphabet.all_symbols(2_000_000)?;
    let dfa = determinize(a, cap)?;
    let mut out = dfa.clone();
    let dead = out.add_state();
    for sym in &symbols {
        out.add_transition(dead, sym.clone(), dead);
    }
    for q in 0..dfa.state_count() as u32 {
        for sym in &symbols {
            if !out.transitions[q as usize].contains_key(sym) {
                out.add_transition(q, sym.clone(), dead);
            }
        }
    }
    let all: BTreeSet<u32> = (0..out.state_count() as u32).collect();
    out.accept = all.difference(&out.accept).copied().collect();
    Ok(out)
}

/// Complement relative to the padding-valid universe: suffix-padded
/// convolutions not accepted by `a`.
pub fn complement_padded(a: &MultiTapeAutomaton, cap: usize) -> Result<MultiTapeAutomaton> {
    let raw = raw_complement(a, cap)?;
    let masked = super::padding::restrict_to_suffix_padded(&raw);
    determinize_minimize_capped(&masked, cap)
}

/// `L = {(u, v) : u in L(a), v in L(b)}` as right-padded convolutions over
/// the joined tapes.
pub fn pad_join(a: &MultiTapeAutomaton, b: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    if a.alphabet.base() != b.alphabet.base() {
        return Err(Error::AlphabetMismatch("different base alphabets".into()));
    }
    let tapes = a.tapes() + b.tapes();
    let alphabet = TapeAlphabet::new(a.alphabet.base().clone(), tapes);
    let pad_a = CompSym(vec![PAD; a.tapes()]);
    let pad_b = CompSym(vec![PAD; b.tapes()]);
    // Virtual "done" state per side, entered after the side's input ended.
    let done_a = a.state_count() as u32;
    let done_b = b.state_count() as u32;

    let mut out = MultiTapeAutomaton::new(alphabet);
    let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
    let mut queue: VecDeque<(u32, u32)> = VecDeque::new();

    let a_final = |q: u32| q == done_a || a.accept.contains(&q);
    let b_final = |q: u32| q == done_b || b.accept.contains(&q);

    for &qa in &a.start {
        for &qb in &b.start {
            let id = out.add_state();
            ids.insert((qa, qb), id);
            out.start.insert(id);
            if a_final(qa) && b_final(qb) {
                out.accept.insert(id);
            }
            queue.push_back((qa, qb));
        }
    }
    while let Some((qa, qb)) = queue.pop_front() {
        let from = ids[&(qa, qb)];
        // Moves available on each side: real transitions, plus the pad move
        // once the side may finish.
        let mut a_moves: Vec<(CompSym, u32)> = Vec::new();
        if qa != done_a {
            for (sym, targets) in &a.transitions[qa as usize] {
                for &t in targets {
                    a_moves.push((sym.clone(), t));
                }
            }
        }
        if a_final(qa) {
            a_moves.push((pad_a.clone(), done_a));
        }
        let mut b_moves: Vec<(CompSym, u32)> = Vec::new();
        if qb != done_b {
            for (sym, targets) in &b.transitions[qb as usize] {
                for &t in targets {
                    b_moves.push((sym.clone(), t));
                }
            }
        }
        if b_final(qb) {
            b_moves.push((pad_b.clone(), done_b));
        }
        for (sa, ta) in &a_moves {
            for (sb, tb) in &b_moves {
                let sym = sa.join(sb);
                if sym.is_all_pad() {
                    continue;
                }
                let key = (*ta, *tb);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = out.add_state();
                        ids.insert(key, id);
                        if a_final(*ta) && b_final(*tb) {
                            out.accept.insert(id);
                        }
                        queue.push_back(key);
                        id
                    }
                };
                out.add_transition(from, sym, id);
            }
        }
    }
    Ok(out)
}

/// Existential projection onto a subset of tapes.  Steps that become all-`$`
/// turn into epsilon moves, which are eliminated before returning.
pub fn project(a: &MultiTapeAutomaton, keep: &[usize]) -> Result<MultiTapeAutomaton> {
    if keep.is_empty() {
        return Err(Error::BadTape(0, a.tapes()));
    }
    for &t in keep {
        if t >= a.tapes() {
            return Err(Error::BadTape(t, a.tapes()));
        }
    }
    let alphabet = TapeAlphabet::new(a.alphabet.base().clone(), keep.len());
    let mut eps: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); a.state_count()];
    let mut real: Vec<BTreeMap<CompSym, BTreeSet<u32>>> =
        vec![BTreeMap::new(); a.state_count()];
    for (q, map) in a.transitions.iter().enumerate() {
        for (sym, targets) in map {
            let r = sym.restrict(keep);
            if r.is_all_pad() {
                eps[q].extend(targets.iter().copied());
            } else {
                real[q].entry(r).or_default().extend(targets.iter().copied());
            }
        }
    }
    eliminate_epsilon(a, alphabet, &eps, &real)
}

/// Restricts tape `t` to read exactly the word `w` (as its non-`$` content)
/// and projects the tape away.
pub fn fix_tape(a: &MultiTapeAutomaton, tape: usize, w: &crate::words::Word) -> Result<MultiTapeAutomaton> {
    if tape >= a.tapes() {
        return Err(Error::BadTape(tape, a.tapes()));
    }
    if a.tapes() < 2 {
        return Err(Error::BadTape(tape, a.tapes()));
    }
    let alphabet = TapeAlphabet::new(a.alphabet.base().clone(), a.tapes() - 1);
    // Product with the |w|+1 position automaton, tracked inline.
    let mut ids: HashMap<(u32, usize), u32> = HashMap::new();
    let mut eps_edges: Vec<(u32, u32)> = Vec::new();
    let mut real_edges: Vec<(u32, CompSym, u32)> = Vec::new();
    let mut accept: BTreeSet<u32> = BTreeSet::new();
    let mut starts: BTreeSet<u32> = BTreeSet::new();
    let mut queue: VecDeque<(u32, usize)> = VecDeque::new();
    let mut next_id = 0u32;
    let mut intern = |key: (u32, usize),
                      queue: &mut VecDeque<(u32, usize)>,
                      ids: &mut HashMap<(u32, usize), u32>|
     -> u32 {
        match ids.get(&key) {
            Some(&id) => id,
            None => {
                let id = next_id;
                next_id += 1;
                ids.insert(key, id);
                queue.push_back(key);
                id
            }
        }
    };
    for &q in &a.start {
        let id = intern((q, 0), &mut queue, &mut ids);
        starts.insert(id);
    }
    let mut seen: BTreeSet<(u32, usize)> = BTreeSet::new();
    while let Some((q, pos)) = queue.pop_front() {
        if !seen.insert((q, pos)) {
            continue;
        }
        let from = ids[&(q, pos)];
        if a.accept.contains(&q) && pos == w.len() {
            accept.insert(from);
        }
        for (sym, targets) in &a.transitions[q as usize] {
            let (next_pos, ok) = match sym.get(tape) {
                None => (pos, true),
                Some(s) => {
                    if pos < w.len() && w.symbols()[pos] == s {
                        (pos + 1, true)
                    } else {
                        (pos, false)
                    }
                }
            };
            if !ok {
                continue;
            }
            let reduced = sym.remove(tape);
            for &t in targets {
                let to = intern((t, next_pos), &mut queue, &mut ids);
                if reduced.is_all_pad() {
                    eps_edges.push((from, to));
                } else {
                    real_edges.push((from, reduced.clone(), to));
                }
            }
        }
    }
    let n = next_id as usize;
    let mut eps: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for (f, t) in eps_edges {
        eps[f as usize].insert(t);
    }
    let mut real: Vec<BTreeMap<CompSym, BTreeSet<u32>>> = vec![BTreeMap::new(); n];
    for (f, sym, t) in real_edges {
        real[f as usize].entry(sym).or_default().insert(t);
    }
    let shell = ShellNfa {
        states: n,
        start: starts,
        accept,
    };
    eliminate_epsilon_shell(&shell, alphabet, &eps, &real)
}

struct ShellNfa {
    states: usize,
    start: BTreeSet<u32>,
    accept: BTreeSet<u32>,
}

fn eliminate_epsilon(
    a: &MultiTapeAutomaton,
    alphabet: TapeAlphabet,
    eps: &[BTreeSet<u32>],
    real: &[BTreeMap<CompSym, BTreeSet<u32>>],
) -> Result<MultiTapeAutomaton> {
    let shell = ShellNfa {
        states: a.state_count(),
        start: a.start.clone(),
        accept: a.accept.clone(),
    };
    eliminate_epsilon_shell(&shell, alphabet, eps, real)
}

fn eliminate_epsilon_shell(
    a: &ShellNfa,
    alphabet: TapeAlphabet,
    eps: &[BTreeSet<u32>],
    real: &[BTreeMap<CompSym, BTreeSet<u32>>],
) -> Result<MultiTapeAutomaton> {
    let n = a.states;
    // Epsilon closures.
    let mut closure: Vec<BTreeSet<u32>> = Vec::with_capacity(n);
    for q in 0..n as u32 {
        let mut c = BTreeSet::new();
        let mut stack = vec![q];
        c.insert(q);
        while let Some(p) = stack.pop() {
            for &t in &eps[p as usize] {
                if c.insert(t) {
                    stack.push(t);
                }
            }
        }
        closure.push(c);
    }
    let mut out = MultiTapeAutomaton::new(alphabet);
    for _ in 0..n {
        out.add_state();
    }
    for q in 0..n as u32 {
        for &c in &closure[q as usize] {
            for (sym, targets) in &real[c as usize] {
                for &t in targets {
                    for &ct in &closure[t as usize] {
                        out.add_transition(q, sym.clone(), ct);
                    }
                }
            }
        }
        if closure[q as usize].iter().any(|c| a.accept.contains(c)) {
            out.accept.insert(q);
        }
    }
    out.start = a.start.clone();
    Ok(out)
}

/// Marks every state that can reach an accept state as accepting; on a trim
/// automaton this recognizes exactly the prefixes of the language.
pub fn prefix_closure(a: &MultiTapeAutomaton) -> MultiTapeAutomaton {
    let mut out = trim(a);
    if out.accept.is_empty() {
        return out;
    }
    // Trim leaves only states on accepting paths.
    out.accept = (0..out.state_count() as u32).collect();
    out
}

/// Least `D` such that every prefix of the language extends to a full word
/// within `D` further symbols.  Requires a deterministic automaton; the
/// certified bound is the state count of the trim minimal automaton.
pub fn completion_distance(a: &MultiTapeAutomaton) -> Result<u32> {
    if !a.deterministic {
        return Err(Error::NotDeterministic);
    }
    let t = trim(a);
    if t.accept.is_empty() {
        return Err(Error::EmptyLanguage);
    }
    // BFS on reversed edges from accept states.
    let n = t.state_count();
    let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (q, map) in t.transitions.iter().enumerate() {
        for targets in map.values() {
            for &to in targets {
                rev[to as usize].push(q as u32);
            }
        }
    }
    let mut dist = vec![u32::MAX; n];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &q in &t.accept {
        dist[q as usize] = 0;
        queue.push_back(q);
    }
    while let Some(q) = queue.pop_front() {
        for &p in &rev[q as usize] {
            if dist[p as usize] == u32::MAX {
                dist[p as usize] = dist[q as usize] + 1;
                queue.push_back(p);
            }
        }
    }
    Ok(dist.into_iter().filter(|&d| d != u32::MAX).max().unwrap_or(0))
}
