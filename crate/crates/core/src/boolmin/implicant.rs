use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::rule::TruthTable;

/// A cube over `arity` variables.
///
/// Bits are stored in table-index order: variable `i` lives at bit
/// `arity - 1 - i`, so a neighborhood index `n` lies in the cube iff
/// `n & mask == value`. A set `mask` bit means the variable is cared for;
/// `value` is zero wherever `mask` is zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Implicant {
    mask: u16,
    value: u16,
    arity: u8,
}

impl Implicant {
    pub fn new(arity: usize, mask: u16, value: u16) -> Self {
        debug_assert!(arity <= crate::rule::MAX_ARITY);
        debug_assert_eq!(value & !mask, 0);
        Implicant {
            mask,
            value,
            arity: arity as u8,
        }
    }

    /// The cube containing exactly one neighborhood index.
    pub fn minterm(arity: usize, index: usize) -> Self {
        let full = ((1u32 << arity) - 1) as u16;
        Implicant::new(arity, full, index as u16)
    }

    /// Cube built from per-variable literals (`None` = don't care).
    pub fn from_literals(literals: &[Option<bool>]) -> Self {
        let m = literals.len();
        let (mut mask, mut value) = (0u16, 0u16);
        for (var, lit) in literals.iter().enumerate() {
            if let Some(pol) = lit {
                let bit = 1u16 << (m - 1 - var);
                mask |= bit;
                if *pol {
                    value |= bit;
                }
            }
        }
        Implicant::new(m, mask, value)
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub fn value(&self) -> u16 {
        self.value
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index as u16 & self.mask == self.value
    }

    /// Polarity of variable `var` in the cube, `None` if it is a don't-care.
    pub fn literal(&self, var: usize) -> Option<bool> {
        let bit = 1u16 << (self.arity() - 1 - var);
        (self.mask & bit != 0).then_some(self.value & bit != 0)
    }

    pub fn literals(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        (0..self.arity()).filter_map(|v| self.literal(v).map(|p| (v, p)))
    }

    pub fn literal_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Every neighborhood index covered by the cube, ascending.
    pub fn minterms(&self) -> impl Iterator<Item = usize> + '_ {
        let free = !self.mask & (((1u32 << self.arity) - 1) as u16);
        // enumerate subsets of the free bits
        let mut sub: Option<u16> = Some(0);
        core::iter::from_fn(move || {
            let s = sub?;
            sub = if s == free {
                None
            } else {
                Some((s.wrapping_sub(free)) & free)
            };
            Some((self.value | s) as usize)
        })
    }

    /// Base-3 ordering key with variable 0 most significant and digits
    /// `0` = negated, `1` = positive, `2` = don't care.
    pub fn key(&self) -> u32 {
        (0..self.arity()).fold(0u32, |acc, v| {
            acc * 3
                + match self.literal(v) {
                    Some(false) => 0,
                    Some(true) => 1,
                    None => 2,
                }
        })
    }
}

impl Ord for Implicant {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity.cmp(&other.arity).then_with(|| self.key().cmp(&other.key()))
    }
}

impl PartialOrd for Implicant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Implicant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.arity() {
            f.write_str(match self.literal(v) {
                Some(false) => "0",
                Some(true) => "1",
                None => "-",
            })?;
        }
        Ok(())
    }
}

/// All prime implicants of the on-set, sorted by [`Implicant::key`].
///
/// Every cube is visited once in ternary order: a cube with a don't-care is
/// an implicant iff both of its halves are, and an implicant is prime iff
/// freeing any one of its literals leaves the on-set. This yields the same
/// set as Quine-McCluskey merging. A constant-0 table has no primes and the
/// result is empty.
pub fn prime_implicants(tt: &TruthTable) -> Vec<Implicant> {
    let m = tt.arity();
    let pow3: Vec<usize> = (0..=m)
        .scan(1usize, |p, _| {
            let cur = *p;
            *p *= 3;
            Some(cur)
        })
        .collect();
    let total = pow3[m];
    let mut implicant = vec![false; total];
    // digit j of the ternary code describes index bit j
    let mut digits = vec![0u8; m];
    let mut primes_at = Vec::new();
    for t in 0..total {
        if t > 0 {
            // odometer increment
            let mut j = 0;
            while digits[j] == 2 {
                digits[j] = 0;
                j += 1;
            }
            digits[j] += 1;
        }
        implicant[t] = match digits.iter().position(|&d| d == 2) {
            None => {
                let idx = digits
                    .iter()
                    .enumerate()
                    .fold(0usize, |acc, (j, &d)| acc | ((d as usize) << j));
                tt.get(idx)
            }
            Some(j) => implicant[t - 2 * pow3[j]] && implicant[t - pow3[j]],
        };
        if implicant[t] {
            primes_at.push(t);
        }
    }
    let mut primes: Vec<Implicant> = Vec::new();
    for &t in &primes_at {
        let mut code = t;
        let (mut mask, mut value) = (0u16, 0u16);
        let mut prime = true;
        for j in 0..m {
            let d = code % 3;
            code /= 3;
            if d != 2 {
                mask |= 1 << j;
                value |= (d as u16) << j;
                if implicant[t + (2 - d) * pow3[j]] {
                    prime = false;
                    break;
                }
            }
        }
        if prime {
            primes.push(Implicant::new(m, mask, value));
        }
    }
    primes.sort();
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Brute force: enumerate every cube, keep implicants not contained in a larger implicant.
    fn brute_primes(tt: &TruthTable) -> BTreeSet<(u16, u16)> {
        let m = tt.arity();
        let full = (1u16 << m) - 1;
        let mut imps = Vec::new();
        for mask in 0..=full {
            for value in 0..=full {
                if value & !mask != 0 {
                    continue;
                }
                if (0..1usize << m)
                    .filter(|&n| n as u16 & mask == value)
                    .all(|n| tt.get(n))
                {
                    imps.push((mask, value));
                }
            }
        }
        imps.iter()
            .filter(|&&(mask, value)| {
                !imps
                    .iter()
                    .any(|&(m2, v2)| (m2, v2) != (mask, value) && m2 & mask == m2 && value & m2 == v2)
            })
            .copied()
            .collect()
    }

    #[test]
    fn matches_brute_force_for_all_elementary_rules() {
        for rule in 0..=255u8 {
            let tt = TruthTable::elementary(rule);
            let got: BTreeSet<_> = prime_implicants(&tt).iter().map(|p| (p.mask(), p.value())).collect();
            assert_eq!(got, brute_primes(&tt), "rule {rule}");
        }
    }

    #[test]
    fn matches_brute_force_on_four_variables() {
        let mut state = 0x1234_5678u32;
        for _ in 0..64 {
            state = state.wrapping_mul(1_664_525).wrapping_add(1_013_904_223);
            let bits = (state >> 8) & 0xffff;
            let tt = TruthTable::from_fn(4, |i| (bits >> i) & 1 == 1).unwrap();
            let got: BTreeSet<_> = prime_implicants(&tt).iter().map(|p| (p.mask(), p.value())).collect();
            assert_eq!(got, brute_primes(&tt));
        }
    }

    #[test]
    fn projection_has_single_prime() {
        let primes = prime_implicants(&TruthTable::elementary(204));
        assert_eq!(primes.len(), 1);
        let q = primes[0];
        assert_eq!(q.literal(0), None);
        assert_eq!(q.literal(1), Some(true));
        assert_eq!(q.literal(2), None);
    }

    #[test]
    fn rule_90_primes() {
        let primes = prime_implicants(&TruthTable::elementary(90));
        let expected = [
            Implicant::from_literals(&[Some(false), None, Some(true)]),
            Implicant::from_literals(&[Some(true), None, Some(false)]),
        ];
        assert_eq!(primes, expected);
    }

    #[test]
    fn tautology_and_contradiction() {
        let all = prime_implicants(&TruthTable::elementary(255));
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].literal_count(), 0);
        assert!(prime_implicants(&TruthTable::elementary(0)).is_empty());
    }

    #[test]
    fn minterm_enumeration() {
        let c = Implicant::from_literals(&[None, Some(true), None]);
        let got: Vec<usize> = c.minterms().collect();
        assert_eq!(got, [2, 3, 6, 7]);
        assert!(got.iter().all(|&n| c.contains(n)));
        assert_eq!(Implicant::minterm(3, 5).minterms().collect::<Vec<_>>(), [5]);
    }

    #[test]
    fn key_is_variable_lexicographic() {
        let np_q = Implicant::from_literals(&[Some(false), Some(true), None]);
        let q_nr = Implicant::from_literals(&[None, Some(true), Some(false)]);
        assert!(np_q < q_nr);
        // base-3 digits 0, 1, 2
        assert_eq!(np_q.key(), 5);
    }
}
