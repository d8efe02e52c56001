//! XOR recovery on top of a two-level cover.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{expr::canonical_cmp, minimize_with, BoolExpr, Implicant, MinimizeOptions, Minimized};
use crate::rule::TruthTable;

/// Lowest-index variable `x` with `f|x=0 == !f|x=1`, i.e. `f = x ^ f|x=0`.
pub fn parity_variable(tt: &TruthTable) -> Option<usize> {
    let m = tt.arity();
    (0..m).find(|&var| {
        let bit = 1usize << (m - 1 - var);
        (0..tt.len())
            .filter(|n| n & bit == 0)
            .all(|n| tt.get(n) != tt.get(n | bit))
    })
}

/// `f|var=0`, still as a function of all `arity` variables.
pub fn cofactor_zero(tt: &TruthTable, var: usize) -> TruthTable {
    let bit = 1usize << (tt.arity() - 1 - var);
    TruthTable::from_fn(tt.arity(), |n| tt.get(n & !bit)).expect("same arity")
}

/// Turns a minimal cover into a mixed expression.
///
/// 1. If some variable splits `f` into complementary cofactors, the result
///    is `x ^ minimize(f|x=0)` for the lowest such `x` (applied recursively).
/// 2. Otherwise terms are merged pairwise: two terms that agree everywhere
///    except on two literals `a`, `b`, appearing as `a & !b` in one and
///    `!a & b` in the other, become one term carrying `a ^ b`. Pairs are
///    scanned in canonical term order and the scan restarts after each merge.
/// 3. What remains is emitted as an OR of ANDs.
pub fn xor_extract(tt: &TruthTable, sop: &[Implicant], opts: &MinimizeOptions) -> Minimized {
    if let Some(var) = parity_variable(tt) {
        let rest = minimize_with(&cofactor_zero(tt, var), opts);
        return Minimized {
            expr: BoolExpr::xor([BoolExpr::var(var), rest.expr]),
            exact: rest.exact,
        };
    }
    Minimized {
        expr: merge_terms(sop),
        exact: true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Term {
    /// (variable, polarity), sorted by variable
    literals: Vec<(u8, bool)>,
    /// (a, b, negated) meaning `a ^ b`, or its complement when negated
    xors: Vec<(u8, u8, bool)>,
}

impl Term {
    fn from_cube(c: &Implicant) -> Self {
        Term {
            literals: c.literals().map(|(v, p)| (v as u8, p)).collect(),
            xors: Vec::new(),
        }
    }

    fn to_expr(&self) -> BoolExpr {
        let lits = self.literals.iter().map(|&(v, p)| BoolExpr::literal(v as usize, p));
        let xors = self.xors.iter().map(|&(a, b, neg)| {
            let x = BoolExpr::xor([BoolExpr::var(a as usize), BoolExpr::var(b as usize)]);
            if neg {
                BoolExpr::not(x)
            } else {
                x
            }
        });
        BoolExpr::and(lits.chain(xors))
    }

    /// Merges `self` and `other` if they differ in exactly two literals,
    /// both with flipped polarity.
    fn merge(&self, other: &Term) -> Option<Term> {
        if self.xors != other.xors || self.literals.len() != other.literals.len() {
            return None;
        }
        let mut diff = Vec::with_capacity(2);
        for (a, b) in self.literals.iter().zip(&other.literals) {
            if a.0 != b.0 {
                return None;
            }
            if a.1 != b.1 {
                if diff.len() == 2 {
                    return None;
                }
                diff.push(*a);
            }
        }
        let [(u, pu), (v, pv)] = diff[..] else {
            return None;
        };
        let mut xors = self.xors.clone();
        xors.push((u, v, pu == pv));
        xors.sort_unstable();
        Some(Term {
            literals: self
                .literals
                .iter()
                .copied()
                .filter(|&(x, _)| x != u && x != v)
                .collect(),
            xors,
        })
    }
}

fn merge_terms(sop: &[Implicant]) -> BoolExpr {
    let mut terms: Vec<(Term, BoolExpr)> = sop
        .iter()
        .map(|c| {
            let t = Term::from_cube(c);
            let e = t.to_expr();
            (t, e)
        })
        .collect();
    let order = |a: &(Term, BoolExpr), b: &(Term, BoolExpr)| -> Ordering { canonical_cmp(&a.1, &b.1) };
    terms.sort_by(order);
    'scan: loop {
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if let Some(merged) = terms[i].0.merge(&terms[j].0) {
                    let e = merged.to_expr();
                    terms.remove(j);
                    terms[i] = (merged, e);
                    terms.sort_by(order);
                    continue 'scan;
                }
            }
        }
        break;
    }
    BoolExpr::or(terms.into_iter().map(|(_, e)| e))
}
