//! Cone types via bounded-radius extension signatures.
//!
//! The cone type of `x` records which directions continue geodesics from the
//! identity through `x`.  Its radius-`k` approximation is the boolean
//! signature `y -> [|xy| = |x| + |y|]` over all `|y| <= k`; elements with
//! equal signatures are assigned to one class.  For `k` large enough the
//! classes are the true cone types, and the successor of a class under an
//! extending symbol is well defined; the successor map is validated element
//! by element, so a too-small `k` fails loudly instead of silently lying.
//!
//! Whether a non-extending symbol keeps the length or decreases it is not a
//! function of the cone type (two elements of one class may differ), which
//! is why the single-letter classification `P_i(c)` is built from the
//! multiplier machinery rather than from this table.

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::groups::GroupOracle;
use crate::words::Symbol;
use std::collections::HashMap;

/// Effect of appending a symbol to the elements of one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeMove {
    /// Length increases; the successor class is known.
    Up(u32),
    /// Length increases, but no member with an in-domain successor exists.
    UpUnobserved,
    /// Length does not increase.
    NotUp,
}

impl ConeMove {
    pub fn is_up(self) -> bool {
        !matches!(self, ConeMove::NotUp)
    }
}

#[derive(Clone, Debug)]
pub struct ConeTypeTable {
    signature_radius: u32,
    /// Classes partition `B(domain_radius)`.
    domain_radius: u32,
    class_of: Vec<Option<u32>>,
    /// Shortlex-least member of each class.
    representative: Vec<u32>,
    /// Per class, per alphabet symbol (by index): the move.
    moves: Vec<Vec<ConeMove>>,
    /// Distinct classes among `B(r)`, for r = 0..=domain_radius.
    counts_by_radius: Vec<usize>,
}

impl ConeTypeTable {
    pub fn signature_radius(&self) -> u32 {
        self.signature_radius
    }

    pub fn domain_radius(&self) -> u32 {
        self.domain_radius
    }

    pub fn class_count(&self) -> usize {
        self.representative.len()
    }

    pub fn class_of(&self, element: u32) -> Option<u32> {
        self.class_of[element as usize]
    }

    pub fn representative(&self, class: u32) -> u32 {
        self.representative[class as usize]
    }

    pub fn move_of(&self, class: u32, symbol: Symbol) -> ConeMove {
        self.moves[class as usize][symbol.index()]
    }

    pub fn counts_by_radius(&self) -> &[usize] {
        &self.counts_by_radius
    }

    /// The identity's class.
    pub fn start_class(&self) -> u32 {
        self.class_of[0].expect("identity is always in the domain")
    }
}

/// Partitions `B(R - k)` by extension signatures of radius `k` and validates
/// the successor map.
pub fn compute_cone_types(ball: &Ball, oracle: &GroupOracle, k: u32) -> Result<ConeTypeTable> {
    let radius = ball.radius();
    if k == 0 || k >= radius {
        return Err(Error::SignatureRadius { k, radius });
    }
    let domain_radius = radius - k;
    let probes: Vec<u32> = ball.ball(k).collect();
    let domain: Vec<u32> = ball.ball(domain_radius).collect();

    // Signatures in shortlex element order, so class ids are deterministic.
    let mut class_ids: HashMap<Vec<bool>, u32> = HashMap::new();
    let mut class_of: Vec<Option<u32>> = vec![None; ball.len()];
    let mut representative: Vec<u32> = Vec::new();
    for &x in &domain {
        let mut sig = Vec::with_capacity(probes.len());
        for &y in &probes {
            let key = oracle.multiply(ball.key(x), ball.key(y))?;
            let len = ball
                .length_of_key(oracle, &key)?
                .expect("|xy| <= R is always certifiable");
            sig.push(len == ball.length(x) + ball.length(y));
        }
        let next = class_ids.len() as u32;
        let id = *class_ids.entry(sig).or_insert(next);
        if id == next {
            representative.push(x);
        }
        class_of[x as usize] = Some(id);
    }
    let class_count = representative.len();

    // Moves per class and symbol.  Whether a single letter extends is part
    // of the signature (k >= 1), so it is constant per class; the successor
    // class of an extension is validated over every member whose successor
    // still lies in the domain.
    let alphabet = ball.gens().alphabet();
    let active: Vec<Symbol> = ball.gens().active().to_vec();
    let mut moves: Vec<Vec<Option<ConeMove>>> = vec![vec![None; alphabet.len()]; class_count];
    let inner = ball.ball(domain_radius.saturating_sub(1));
    for &x in &domain {
        let class = class_of[x as usize].unwrap() as usize;
        for &s in &active {
            let key = oracle.multiply(ball.key(x), ball.gens().element_of(s))?;
            let len = ball
                .length_of_key(oracle, &key)?
                .expect("|xs| <= R is always certifiable");
            let m = if len == ball.length(x) + 1 {
                if inner.contains(&x) {
                    let succ = ball.index_of(&key).expect("successor inside the ball");
                    let succ_class = class_of[succ as usize].expect("successor inside the domain");
                    ConeMove::Up(succ_class)
                } else {
                    ConeMove::UpUnobserved
                }
            } else {
                ConeMove::NotUp
            };
            match &mut moves[class][s.index()] {
                slot @ None => *slot = Some(m),
                Some(prev) => {
                    let merged = match (*prev, m) {
                        (a, b) if a == b => a,
                        (ConeMove::UpUnobserved, ConeMove::Up(t))
                        | (ConeMove::Up(t), ConeMove::UpUnobserved) => ConeMove::Up(t),
                        (a, b) => {
                            return Err(Error::ConeSuccessor(format!(
                                "class {class} on {:?}: {a:?} vs {b:?}",
                                alphabet.name(s)
                            )))
                        }
                    };
                    *prev = merged;
                }
            }
        }
    }
    // Symbols outside the active generator set never move anything.
    let moves: Vec<Vec<ConeMove>> = moves
        .into_iter()
        .map(|row| row.into_iter().map(|m| m.unwrap_or(ConeMove::NotUp)).collect())
        .collect();

    let mut counts_by_radius = Vec::with_capacity(domain_radius as usize + 1);
    for r in 0..=domain_radius {
        let mut seen = std::collections::BTreeSet::new();
        for x in ball.ball(r) {
            seen.insert(class_of[x as usize].unwrap());
        }
        counts_by_radius.push(seen.len());
    }

    Ok(ConeTypeTable {
        signature_radius: k,
        domain_radius,
        class_of,
        representative,
        moves,
        counts_by_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::BallAlphabet;
    use crate::groups::GroupFamily;

    fn table(family: GroupFamily, radius: u32, k: u32) -> ConeTypeTable {
        let o = GroupOracle::new(family).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), radius).unwrap();
        compute_cone_types(&b, &o, k).unwrap()
    }

    #[test]
    fn free2_has_five_cone_types() {
        for k in [1, 2, 3] {
            let t = table(GroupFamily::Free { rank: 2 }, 6, k);
            assert_eq!(t.class_count(), 5, "k = {k}");
        }
    }

    #[test]
    fn zfree2_has_nine_cone_types() {
        // Origin, four axes, four open quadrants.
        let t = table(GroupFamily::FreeAbelian { rank: 2 }, 5, 1);
        assert_eq!(t.class_count(), 9);
    }

    #[test]
    fn fpc_classes_stabilize() {
        let t7 = table(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 7, 2);
        let t8 = table(GroupFamily::FreeProductCyclic { m: 2, n: 3 }, 8, 2);
        assert_eq!(t7.class_count(), t8.class_count());
        let counts = t8.counts_by_radius();
        assert_eq!(counts[counts.len() - 1], t8.class_count());
    }

    #[test]
    fn signature_radius_bounds_are_checked() {
        let o = GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap();
        let b = Ball::build(&o, BallAlphabet::for_oracle(&o), 3).unwrap();
        assert!(compute_cone_types(&b, &o, 3).is_err());
        assert!(compute_cone_types(&b, &o, 0).is_err());
    }
}
