//! Minimal mixed NOT/AND/OR/XOR forms of truth tables.
//!
//! The pipeline is prime implicants, then a minimal cover, then XOR
//! recovery. Every step is deterministic, so the same table always yields
//! the same expression tree.

mod cover;
mod expr;
mod implicant;
mod xor;

pub use cover::{minimal_cover, Cover, CoverMode};
pub use expr::{canonical_cmp, BoolExpr, Display};
pub use implicant::{prime_implicants, Implicant};
pub use xor::{cofactor_zero, parity_variable, xor_extract};

use crate::rule::TruthTable;

/// Branch-and-bound node budget used by [`CoverMode::Exact`] unless overridden.
pub const DEFAULT_EXACT_BUDGET: u64 = 200_000;
/// Node budget used by [`CoverMode::Auto`].
pub const AUTO_BUDGET: u64 = 2_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MinimizeOptions {
    pub mode: CoverMode,
    /// Node budget for exact covers; `None` picks the mode's default.
    pub budget: Option<u64>,
}

impl MinimizeOptions {
    pub const fn new(mode: CoverMode) -> Self {
        MinimizeOptions { mode, budget: None }
    }

    pub fn effective_budget(&self) -> u64 {
        self.budget.unwrap_or(match self.mode {
            CoverMode::Exact => DEFAULT_EXACT_BUDGET,
            CoverMode::Auto => AUTO_BUDGET,
            CoverMode::Greedy => 0,
        })
    }
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions::new(CoverMode::Auto)
    }
}

/// A minimized expression and whether every cover behind it was proven minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minimized {
    pub expr: BoolExpr,
    pub exact: bool,
}

/// Minimal expression with default options.
pub fn minimize(tt: &TruthTable) -> BoolExpr {
    minimize_with(tt, &MinimizeOptions::default()).expr
}

pub fn minimize_with(tt: &TruthTable, opts: &MinimizeOptions) -> Minimized {
    if let Some(b) = tt.constant() {
        return Minimized {
            expr: BoolExpr::Const(b),
            exact: true,
        };
    }
    if let Some(var) = parity_variable(tt) {
        let rest = minimize_with(&cofactor_zero(tt, var), opts);
        return Minimized {
            expr: BoolExpr::xor([BoolExpr::var(var), rest.expr]),
            exact: rest.exact,
        };
    }
    let primes = prime_implicants(tt);
    let mode = match opts.mode {
        CoverMode::Greedy => CoverMode::Greedy,
        _ => CoverMode::Exact,
    };
    let cover = minimal_cover(&primes, tt, mode, opts.effective_budget());
    let out = xor_extract(tt, &cover.cubes, opts);
    Minimized {
        expr: out.expr,
        exact: cover.exact && out.exact,
    }
}

/// Evaluates `expr` at neighborhood index `n` of an `arity`-variable table.
pub fn eval_index(expr: &BoolExpr, n: usize, arity: usize) -> bool {
    let mut a = [false; crate::rule::MAX_ARITY];
    for (v, slot) in a.iter_mut().enumerate().take(arity) {
        *slot = (n >> (arity - 1 - v)) & 1 == 1;
    }
    expr.eval(&a[..arity])
}

/// Standard Boolean evaluation; `assignment[i]` is variable `i`.
pub fn eval_bool(expr: &BoolExpr, assignment: &[bool]) -> bool {
    expr.eval(assignment)
}
