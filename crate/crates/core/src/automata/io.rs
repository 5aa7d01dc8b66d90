//! JSON and DOT export; JSON import round-trips exactly.

use super::{CompSym, MultiTapeAutomaton, TapeAlphabet, PAD};
use crate::error::{Error, Result};
use crate::words::Alphabet;
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct AutomatonJson {
    pub states: usize,
    pub start: Vec<u32>,
    pub accept: Vec<u32>,
    pub tapes: usize,
    pub transitions: Vec<(u32, Vec<String>, u32)>,
}

pub fn to_json(a: &MultiTapeAutomaton) -> AutomatonJson {
    let base = a.alphabet.base();
    let mut transitions = Vec::new();
    for (q, map) in a.transitions.iter().enumerate() {
        for (sym, targets) in map {
            for &t in targets {
                let labels = sym
                    .0
                    .iter()
                    .map(|&v| {
                        if v == PAD {
                            "$".to_string()
                        } else {
                            base.name(crate::words::Symbol(v)).to_string()
                        }
                    })
                    .collect();
                transitions.push((q as u32, labels, t));
            }
        }
    }
    AutomatonJson {
        states: a.state_count(),
        start: a.start.iter().copied().collect(),
        accept: a.accept.iter().copied().collect(),
        tapes: a.tapes(),
        transitions,
    }
}

pub fn from_json(json: &AutomatonJson, base: &Alphabet) -> Result<MultiTapeAutomaton> {
    let mut a = MultiTapeAutomaton::new(TapeAlphabet::new(base.clone(), json.tapes));
    for _ in 0..json.states {
        a.add_state();
    }
    let bad = |msg: &str| Error::BadEncoding(msg.to_string());
    for (src, labels, dst) in &json.transitions {
        if *src as usize >= json.states || *dst as usize >= json.states {
            return Err(bad("transition endpoint out of range"));
        }
        if labels.len() != json.tapes {
            return Err(bad("label width does not match tape count"));
        }
        let mut sym = Vec::with_capacity(labels.len());
        for l in labels {
            if l == "$" {
                sym.push(PAD);
            } else {
                let mut chars = l.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(bad("labels are single characters"));
                };
                match base.symbol_by_name(c) {
                    Some(s) => sym.push(s.0),
                    None => return Err(bad(&format!("unknown symbol {c:?}"))),
                }
            }
        }
        a.add_transition(*src, CompSym(sym), *dst);
    }
    for &q in &json.start {
        if q as usize >= json.states {
            return Err(bad("start state out of range"));
        }
        a.start.insert(q);
    }
    for &q in &json.accept {
        if q as usize >= json.states {
            return Err(bad("accept state out of range"));
        }
        a.accept.insert(q);
    }
    // Re-derive determinism rather than trusting the file.
    a.deterministic = a.start.len() <= 1
        && a
            .transitions
            .iter()
            .all(|m| m.values().all(|ts| ts.len() <= 1));
    Ok(a)
}

pub fn to_json_string(a: &MultiTapeAutomaton) -> Result<String> {
    Ok(serde_json::to_string_pretty(&to_json(a))?)
}

pub fn to_dot(a: &MultiTapeAutomaton, name: &str) -> String {
    let base = a.alphabet.base();
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n  rankdir=LR;\n"));
    out.push_str("  hidden [shape=point, style=invis];\n");
    for q in 0..a.state_count() as u32 {
        let shape = if a.accept.contains(&q) {
            "doublecircle"
        } else {
            "circle"
        };
        out.push_str(&format!("  s{q} [shape={shape}, label=\"{q}\"];\n"));
    }
    for &q in &a.start {
        out.push_str(&format!("  hidden -> s{q};\n"));
    }
    for (q, map) in a.transitions.iter().enumerate() {
        // Group parallel edges into one label.
        let mut grouped: std::collections::BTreeMap<u32, Vec<String>> =
            std::collections::BTreeMap::new();
        for (sym, targets) in map {
            for &t in targets {
                grouped.entry(t).or_default().push(sym.display(base));
            }
        }
        for (t, labels) in grouped {
            out.push_str(&format!(
                "  s{q} -> s{t} [label=\"{}\"];\n",
                labels.join(" ")
            ));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::ops;

    #[test]
    fn json_roundtrip_is_exact() {
        let base = Alphabet::lowercase(2, 'a');
        let ta = TapeAlphabet::new(base.clone(), 2);
        let mut m = MultiTapeAutomaton::new(ta);
        let q0 = m.add_state();
        let q1 = m.add_state();
        m.start.insert(q0);
        m.accept.insert(q1);
        m.add_transition(q0, CompSym(vec![0, PAD]), q1);
        m.add_transition(q1, CompSym(vec![PAD, 2]), q0);
        m.add_transition(q0, CompSym(vec![1, 1]), q0);
        m.deterministic = true;

        let json = to_json(&m);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: AutomatonJson = serde_json::from_str(&text).unwrap();
        let back = from_json(&parsed, &base).unwrap();
        assert_eq!(m, back);
        assert_eq!(to_json_string(&m).unwrap(), to_json_string(&back).unwrap());
    }

    #[test]
    fn dot_contains_states_and_edges() {
        let base = Alphabet::lowercase(1, 'a');
        let ta = TapeAlphabet::new(base, 1);
        let mut m = MultiTapeAutomaton::new(ta);
        let q0 = m.add_state();
        m.start.insert(q0);
        m.accept.insert(q0);
        m.add_transition(q0, CompSym(vec![0]), q0);
        let dot = to_dot(&m, "loop");
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("s0 -> s0"));
        let _ = ops::prefix_closure(&m);
    }
}
