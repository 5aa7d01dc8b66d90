//! Finitely generated subgroups and exact membership predicates.

use crate::error::Result;
use crate::groups::{GroupFamily, GroupOracle};
use crate::words::Word;
use std::collections::BTreeSet;

/// A subgroup given by generator words, with an exact membership predicate
/// when the family provides one.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    label: String,
    /// Normalized generators, closed under inversion, identity dropped.
    generators: Vec<Word>,
    membership: MembershipRule,
}

#[derive(Clone, Debug)]
enum MembershipRule {
    /// No generators: the trivial subgroup.
    Trivial,
    /// Cyclic subgroup of a free group: test small powers of the generator.
    CyclicFree { gen: Word },
    /// Subgroup of a free abelian group: integer lattice membership.
    Lattice { basis: Vec<Vec<i64>>, rank: usize },
    /// No exact predicate; membership decided by certified subgroup balls.
    BallOnly,
}

impl SubgroupSpec {
    /// Parses a comma-separated list of generator words.
    pub fn parse(text: &str, oracle: &GroupOracle) -> Result<Self> {
        let mut gens = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            gens.push(Word::parse(part, oracle.alphabet())?);
        }
        Self::new(text.to_string(), &gens, oracle)
    }

    pub fn new(label: String, generators: &[Word], oracle: &GroupOracle) -> Result<Self> {
        let mut set = BTreeSet::new();
        for g in generators {
            let nf = oracle.normal_form(g)?;
            if nf.is_empty() {
                continue;
            }
            let inv = oracle.invert(&nf)?;
            set.insert(nf.0);
            set.insert(inv.0);
        }
        let generators: Vec<Word> = set.into_iter().map(Word).collect();
        let membership = Self::detect_rule(&generators, oracle)?;
        Ok(SubgroupSpec {
            label,
            generators,
            membership,
        })
    }

    fn detect_rule(generators: &[Word], oracle: &GroupOracle) -> Result<MembershipRule> {
        if generators.is_empty() {
            return Ok(MembershipRule::Trivial);
        }
        match oracle.family() {
            GroupFamily::Free { .. } if generators.len() <= 2 => {
                // After inverse closure a cyclic subgroup has exactly one
                // generator pair (or one self-inverse word).
                let g = generators[0].clone();
                let inv = oracle.invert(&g)?;
                let all_known = generators.iter().all(|w| *w == g || *w == inv);
                if all_known {
                    Ok(MembershipRule::CyclicFree { gen: g })
                } else {
                    Ok(MembershipRule::BallOnly)
                }
            }
            GroupFamily::FreeAbelian { rank } => {
                let basis = generators
                    .iter()
                    .map(|g| oracle.exponent_vector(g))
                    .collect();
                Ok(MembershipRule::Lattice { basis, rank })
            }
            _ => Ok(MembershipRule::BallOnly),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn has_exact_membership(&self) -> bool {
        !matches!(self.membership, MembershipRule::BallOnly)
    }

    /// Exact membership test, when available.  `elem` must be in normal form.
    pub fn contains(&self, elem: &Word, oracle: &GroupOracle) -> Result<Option<bool>> {
        match &self.membership {
            MembershipRule::Trivial => Ok(Some(elem.is_empty())),
            MembershipRule::CyclicFree { gen } => {
                if elem.is_empty() {
                    return Ok(Some(true));
                }
                // |gen^k| >= |k| in a free group, so |k| <= |elem| suffices.
                let mut pos = Word::empty();
                let mut neg = Word::empty();
                let inv = oracle.invert(gen)?;
                for _ in 0..=elem.len() {
                    if &pos == elem || &neg == elem {
                        return Ok(Some(true));
                    }
                    pos = oracle.multiply(&pos, gen)?;
                    neg = oracle.multiply(&neg, &inv)?;
                }
                Ok(Some(&pos == elem || &neg == elem))
            }
            MembershipRule::Lattice { basis, rank } => {
                let target = oracle.exponent_vector(elem);
                Ok(Some(lattice_contains(basis, &target, *rank)))
            }
            MembershipRule::BallOnly => Ok(None),
        }
    }
}

/// Does the integer span of `basis` contain `target`?  Gaussian elimination
/// over Z via a Hermite-style reduction; ranks here are at most 3.
fn lattice_contains(basis: &[Vec<i64>], target: &[i64], rank: usize) -> bool {
    if target.iter().all(|&c| c == 0) {
        return true;
    }
    let mut rows: Vec<Vec<i64>> = basis.to_vec();
    let mut t = target.to_vec();
    for col in 0..rank {
        loop {
            let mut nonzero: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            nonzero.sort_by_key(|&i| rows[i][col].unsigned_abs());
            let pivot = nonzero[0];
            if nonzero.len() == 1 {
                // Reduce the target against the pivot and move on.
                let p = rows[pivot][col];
                if t[col] % p == 0 {
                    let q = t[col] / p;
                    for c in 0..rank {
                        t[c] -= q * rows[pivot][c];
                    }
                }
                break;
            }
            let p = rows[pivot][col];
            for &i in &nonzero[1..] {
                let q = rows[i][col] / p;
                for c in 0..rank {
                    rows[i][c] -= q * rows[pivot][c];
                }
            }
        }
        let survivors: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
        if t[col] != 0 && survivors.is_empty() {
            return false;
        }
        if t[col] != 0 {
            return false;
        }
        // Drop the pivot row so later columns do not reuse it.
        if let Some(&i) = survivors.first() {
            rows.remove(i);
        }
    }
    t.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free2() -> GroupOracle {
        GroupOracle::new(GroupFamily::Free { rank: 2 }).unwrap()
    }

    #[test]
    fn generators_closed_under_inversion() {
        let o = free2();
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        let texts: Vec<String> = h
            .generators()
            .iter()
            .map(|g| g.to_text(o.alphabet()))
            .collect();
        assert_eq!(texts, vec!["ab".to_string(), "BA".to_string()]);
    }

    #[test]
    fn cyclic_membership_in_free() {
        let o = free2();
        let h = SubgroupSpec::parse("ab", &o).unwrap();
        assert!(h.has_exact_membership());
        let member = Word::parse("ababab", o.alphabet()).unwrap();
        let nonmember = Word::parse("aab", o.alphabet()).unwrap();
        assert_eq!(h.contains(&member, &o).unwrap(), Some(true));
        assert_eq!(h.contains(&nonmember, &o).unwrap(), Some(false));
        assert_eq!(h.contains(&Word::empty(), &o).unwrap(), Some(true));
    }

    #[test]
    fn lattice_membership() {
        let o = GroupOracle::new(GroupFamily::FreeAbelian { rank: 2 }).unwrap();
        let h = SubgroupSpec::parse("x", &o).unwrap();
        let x3 = Word::parse("x^3", o.alphabet()).unwrap();
        let y = Word::parse("y", o.alphabet()).unwrap();
        assert_eq!(h.contains(&x3, &o).unwrap(), Some(true));
        assert_eq!(h.contains(&y, &o).unwrap(), Some(false));

        let h2 = SubgroupSpec::parse("x^2,y^2", &o).unwrap();
        let xxyy = Word::parse("x^2y^2", o.alphabet()).unwrap();
        let xy = Word::parse("xy", o.alphabet()).unwrap();
        assert_eq!(h2.contains(&xxyy, &o).unwrap(), Some(true));
        assert_eq!(h2.contains(&xy, &o).unwrap(), Some(false));
    }

    #[test]
    fn trivial_subgroup() {
        let o = free2();
        let h = SubgroupSpec::parse("", &o).unwrap();
        assert!(h.is_trivial());
        assert_eq!(h.contains(&Word::empty(), &o).unwrap(), Some(true));
        let a = Word::parse("a", o.alphabet()).unwrap();
        assert_eq!(h.contains(&a, &o).unwrap(), Some(false));
    }
}
