//! The maximal-extension quadruple language and its sextuple refinement.
//!
//! `R` consists of quadruples `(x, y, z, w)` of geodesic words where
//! `z = x y_1..y_i`, `w = y_{i+1}..y_n`, and `i` is the largest index with
//! `x y_1..y_i` geodesic.  Tapes share one timeline of length `|x| + |y|`:
//! `x` then pads, `y` is delayed behind `x`, `z` runs from the start, and
//! `w` is delayed behind `z`.  Greediness is structural: while the cone walk
//! can extend, no transition lets `w` start.
//!
//! `R'_c` adds tapes for `z'` (a geodesic spelling of `z c`, related to `z`
//! by a multiplier machine) and `w'` (`w` without its first letter, which on
//! this timeline means tape 6 equals tape 4 except at `w`'s first step).

use super::cone_types::{ConeMove, ConeTypeTable};
use crate::automata::ops::constrain;
use crate::automata::{CompSym, MultiTapeAutomaton, TapeAlphabet, PAD};
use crate::cayley::Ball;
use crate::error::Result;
use crate::words::Symbol;
use std::collections::{HashMap, VecDeque};

/// Tape indices of the quadruple encoding.
pub const TAPE_X: usize = 0;
pub const TAPE_Y: usize = 1;
pub const TAPE_Z: usize = 2;
pub const TAPE_W: usize = 3;
pub const TAPE_Z_PRIME: usize = 4;
pub const TAPE_W_PRIME: usize = 5;

/// Builds `R` from the cone-type table.  Tape 2 is additionally constrained
/// to the geodesic language, since the machine itself checks geodesy of `y`
/// only up to the split point.
pub fn build_r(
    table: &ConeTypeTable,
    ball: &Ball,
    geodesic_acceptor: &MultiTapeAutomaton,
) -> Result<MultiTapeAutomaton> {
    let alphabet = TapeAlphabet::new(ball.gens().alphabet().clone(), 4);
    let classes = table.class_count() as u32;
    // States: reading x = class; extending y = classes + class; copying the
    // tail of y = 2 * classes.
    let read_x = |c: u32| c;
    let extend = |c: u32| classes + c;
    let tail = 2 * classes;
    let mut m = MultiTapeAutomaton::new(alphabet);
    for _ in 0..2 * classes + 1 {
        m.add_state();
    }
    for q in 0..2 * classes + 1 {
        m.accept.insert(q);
    }
    m.start.insert(read_x(table.start_class()));
    for class in 0..classes {
        for &s in ball.gens().active() {
            match table.move_of(class, s) {
                ConeMove::Up(target) => {
                    // x-phase: (u, $, u, $); y-phase while extendable:
                    // ($, u, u, $).
                    m.add_transition(
                        read_x(class),
                        CompSym(vec![s.0, PAD, s.0, PAD]),
                        read_x(target),
                    );
                    m.add_transition(
                        read_x(class),
                        CompSym(vec![PAD, s.0, s.0, PAD]),
                        extend(target),
                    );
                    m.add_transition(
                        extend(class),
                        CompSym(vec![PAD, s.0, s.0, PAD]),
                        extend(target),
                    );
                }
                ConeMove::NotUp => {
                    // The walk stops: w starts, label ($, u, $, u).
                    let sym = CompSym(vec![PAD, s.0, PAD, s.0]);
                    m.add_transition(read_x(class), sym.clone(), tail);
                    m.add_transition(extend(class), sym, tail);
                }
                ConeMove::UpUnobserved => {
                    return Err(crate::error::Error::ConeSuccessor(format!(
                        "class {class} has an unobserved successor"
                    )));
                }
            }
        }
    }
    for &s in ball.gens().active() {
        m.add_transition(tail, CompSym(vec![PAD, s.0, PAD, s.0]), tail);
    }
    m.deterministic = true;
    // y must be geodesic in full, not only up to the split.
    constrain(&m, &[TAPE_Y], geodesic_acceptor)
}

/// `R_c`: the quadruples whose `w` starts with `c`.
pub fn build_r_c(r: &MultiTapeAutomaton, c: Symbol) -> Result<MultiTapeAutomaton> {
    let base = r.alphabet.base().clone();
    let mut first = MultiTapeAutomaton::new(TapeAlphabet::new(base, 1));
    let q0 = first.add_state();
    let q1 = first.add_state();
    first.start.insert(q0);
    first.accept.insert(q1);
    first.add_transition(q0, CompSym(vec![c.0]), q1);
    for s in r.alphabet.base().symbols() {
        first.add_transition(q1, CompSym(vec![s.0]), q1);
    }
    first.deterministic = true;
    constrain(r, &[TAPE_W], &first)
}

/// `R'_c`: sextuples `(x, y, z, w, z', w')` with `(x, y, z, w)` in `R_c`,
/// `z' = z c` in the group (via the multiplier machine for `c`), and `w'`
/// equal to `w` with its first letter removed.
///
/// The product is label-driven: the multiplier machine watches tapes
/// `(z, z')` and the one-step shift watches `(w, w')`; a watcher whose
/// restriction is all-`$` idles.
pub fn build_r_prime_c(
    r_c: &MultiTapeAutomaton,
    multiplier_c: &MultiTapeAutomaton,
) -> Result<MultiTapeAutomaton> {
    let base = r_c.alphabet.base().clone();
    let alphabet = TapeAlphabet::new(base, 6);
    let mut m = MultiTapeAutomaton::new(alphabet);

    // Index the multiplier machine's labels by their first (z-side) entry.
    let mul_by_first: Vec<HashMap<u16, Vec<(u16, u32)>>> = multiplier_c
        .transitions
        .iter()
        .map(|map| {
            let mut idx: HashMap<u16, Vec<(u16, u32)>> = HashMap::new();
            for (sym, targets) in map {
                for &t in targets {
                    idx.entry(sym.0[0]).or_default().push((sym.0[1], t));
                }
            }
            idx
        })
        .collect();

    // Shift watcher states: 0 = before w, 1 = inside w.
    const SHIFT_PRE: u8 = 0;
    const SHIFT_IN: u8 = 1;

    type State = (u32, u32, u8);
    let mut ids: HashMap<State, u32> = HashMap::new();
    let mut queue: VecDeque<State> = VecDeque::new();
    let accepting = |r_c: &MultiTapeAutomaton, mul: &MultiTapeAutomaton, st: &State| {
        r_c.accept.contains(&st.0) && mul.accept.contains(&st.1) && st.2 == SHIFT_IN
    };
    for &qr in &r_c.start {
        for &qm in &multiplier_c.start {
            let st = (qr, qm, SHIFT_PRE);
            let id = m.add_state();
            ids.insert(st, id);
            m.start.insert(id);
            if accepting(r_c, multiplier_c, &st) {
                m.accept.insert(id);
            }
            queue.push_back(st);
        }
    }
    while let Some(st) = queue.pop_front() {
        let (qr, qm, qs) = st;
        let from = ids[&st];
        for (sym, targets) in &r_c.transitions[qr as usize] {
            let z_entry = sym.0[TAPE_Z];
            let w_entry = sym.0[TAPE_W];
            // Multiplier moves: real transitions on (z_entry, v), or idling
            // when both z and z' pad this step.
            let mut mul_moves: Vec<(u16, u32)> = mul_by_first[qm as usize]
                .get(&z_entry)
                .cloned()
                .unwrap_or_default();
            if z_entry == PAD {
                mul_moves.push((PAD, qm));
            }
            // Shift moves: (w_1, $) enters the tail, then (u, u) copies;
            // idling when both w and w' pad.
            let mut shift_moves: Vec<(u16, u8)> = Vec::new();
            if w_entry == PAD {
                shift_moves.push((PAD, qs));
            } else if qs == SHIFT_PRE {
                shift_moves.push((PAD, SHIFT_IN));
            } else {
                shift_moves.push((w_entry, SHIFT_IN));
            }
            for &tr in targets {
                for &(zp, tm) in &mul_moves {
                    for &(wp, ts) in &shift_moves {
                        if zp == PAD && wp == PAD && sym.is_all_pad() {
                            continue;
                        }
                        let mut full = sym.0.clone();
                        full.push(zp);
                        full.push(wp);
                        let next: State = (tr, tm, ts);
                        let id = match ids.get(&next) {
                            Some(&id) => id,
                            None => {
                                let id = m.add_state();
                                ids.insert(next, id);
                                if accepting(r_c, multiplier_c, &next) {
                                    m.accept.insert(id);
                                }
                                queue.push_back(next);
                                id
                            }
                        };
                        m.add_transition(from, CompSym(full), id);
                    }
                }
            }
        }
    }
    Ok(m)
}
