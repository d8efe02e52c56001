//! Six-valued evaluation of minimized expression trees.
//!
//! Leaves map input bit 0 to [`MCode`] 0 and bit 1 to 5. Every node combines
//! the codes of its children through an operator table; n-ary nodes fold
//! left over their canonically ordered children. The state projection of
//! each table is the ordinary Boolean operator, so the root's state is
//! always the rule's output.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::boolmin::{minimize_with, BoolExpr, MinimizeOptions};
use crate::mcode::{Behavior, MCode};
use crate::rule::TruthTable;

/// Operator tables over the six codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTables {
    /// Codes for input bits 0 and 1.
    pub leaf: [MCode; 2],
    pub not: [MCode; 6],
    pub and: [[MCode; 6]; 6],
    pub or: [[MCode; 6]; 6],
    pub xor: [[MCode; 6]; 6],
}

fn severity(b: Behavior) -> u8 {
    match b {
        Behavior::Stable => 0,
        Behavior::Decrease => 1,
        Behavior::Growth => 1,
        Behavior::Chaotic => 2,
    }
}

/// State-0 code with the most severe behavior of the operands
/// (chaotic over decrease over stable).
fn worst_zero(a: MCode, b: MCode) -> MCode {
    match severity(a.behavior()).max(severity(b.behavior())) {
        2 => MCode::CHAOTIC_0,
        1 => MCode::DECREASE,
        _ => MCode::STABLE_0,
    }
}

fn is_chaotic(m: MCode) -> bool {
    m.behavior() == Behavior::Chaotic
}

/// `5 - a`: flips the state and keeps the behavior axis.
pub fn h_not(a: MCode) -> MCode {
    MCode::new(5 - a.value()).expect("5 - a is a code")
}

pub fn h_and(a: MCode, b: MCode) -> MCode {
    match (a.state(), b.state()) {
        (true, true) if a == MCode::STABLE_1 && b == MCode::STABLE_1 => MCode::STABLE_1,
        (true, true) if is_chaotic(a) || is_chaotic(b) => MCode::CHAOTIC_1,
        (true, true) => MCode::GROWTH,
        // a live operand was switched off
        (true, false) | (false, true) => MCode::DECREASE,
        (false, false) => worst_zero(a, b),
    }
}

pub fn h_or(a: MCode, b: MCode) -> MCode {
    if a.state() || b.state() {
        if a == MCode::STABLE_1 && b == MCode::STABLE_1 {
            MCode::STABLE_1
        } else {
            MCode::GROWTH
        }
    } else {
        worst_zero(a, b)
    }
}

pub fn h_xor(a: MCode, b: MCode) -> MCode {
    if a.state() != b.state() {
        MCode::GROWTH
    } else if (a.state() && b.state()) || is_chaotic(a) || is_chaotic(b) {
        MCode::CHAOTIC_0
    } else {
        MCode::STABLE_0
    }
}

fn table(op: fn(MCode, MCode) -> MCode) -> [[MCode; 6]; 6] {
    MCode::ALL.map(|a| MCode::ALL.map(|b| op(a, b)))
}

impl HTables {
    /// The operator tables used throughout the crate.
    pub fn standard() -> Self {
        HTables {
            leaf: [MCode::STABLE_0, MCode::STABLE_1],
            not: MCode::ALL.map(h_not),
            and: table(h_and),
            or: table(h_or),
            xor: table(h_xor),
        }
    }

    #[inline]
    fn bin(t: &[[MCode; 6]; 6], a: MCode, b: MCode) -> MCode {
        t[a.value() as usize][b.value() as usize]
    }

    /// Evaluates `expr` with `input[i]` the bit of variable `i`.
    pub fn eval(&self, expr: &BoolExpr, input: &[bool]) -> MCode {
        match expr {
            BoolExpr::Const(b) => self.leaf[*b as usize],
            BoolExpr::Var(v) => self.leaf[input[*v as usize] as usize],
            BoolExpr::Not(e) => self.not[self.eval(e, input).value() as usize],
            BoolExpr::And(cs) => self.fold(&self.and, cs, input),
            BoolExpr::Or(cs) => self.fold(&self.or, cs, input),
            BoolExpr::Xor(cs) => self.fold(&self.xor, cs, input),
        }
    }

    fn fold(&self, t: &[[MCode; 6]; 6], cs: &[BoolExpr], input: &[bool]) -> MCode {
        let mut it = cs.iter();
        let first = self.eval(it.next().expect("n-ary node has children"), input);
        it.fold(first, |acc, c| Self::bin(t, acc, self.eval(c, input)))
    }

    /// Codes for every neighborhood index of an `arity`-variable expression.
    pub fn code_table(&self, expr: &BoolExpr, arity: usize) -> Vec<MCode> {
        let mut input = [false; crate::rule::MAX_ARITY];
        (0..1usize << arity)
            .map(|n| {
                for (v, slot) in input.iter_mut().enumerate().take(arity) {
                    *slot = (n >> (arity - 1 - v)) & 1 == 1;
                }
                self.eval(expr, &input[..arity])
            })
            .collect()
    }
}

impl Default for HTables {
    fn default() -> Self {
        HTables::standard()
    }
}

/// `g(f, N)`: the code of one neighborhood under the standard tables.
pub fn eval_g(expr: &BoolExpr, input: &[bool]) -> MCode {
    HTables::standard().eval(expr, input)
}

/// Codes of every row of `tt`'s minimized form, in index order.
pub fn m_truth_table(tt: &TruthTable) -> Vec<MCode> {
    m_truth_table_with(tt, &MinimizeOptions::default(), &HTables::standard())
}

pub fn m_truth_table_with(tt: &TruthTable, opts: &MinimizeOptions, tables: &HTables) -> Vec<MCode> {
    let expr = minimize_with(tt, opts).expr;
    tables.code_table(&expr, tt.arity())
}

/// One checked constraint of [`validate_h`].
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Number of rows of `tt` whose code has behavior `b`, under `tables`.
fn behavior_count(tt: &TruthTable, tables: &HTables, b: Behavior) -> usize {
    m_truth_table_with(tt, &MinimizeOptions::default(), tables)
        .iter()
        .filter(|m| m.behavior() == b)
        .count()
}

/// Checks the tables against the defining elementary-rule fractions and the `R_94`
/// example. Fractions are compared as exact rationals over 8 rows.
pub fn validate_h(tables: &HTables) -> Report {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.into(),
            passed,
            detail,
        })
    };

    push(
        "leaves are stable",
        tables.leaf == [MCode::STABLE_0, MCode::STABLE_1],
        format!("0 -> {}, 1 -> {}", tables.leaf[0], tables.leaf[1]),
    );

    // (name, rule, behavior, expected count out of 8)
    let fractions: [(&str, u8, Behavior, usize); 8] = [
        ("xor: R150 chaoticity = 3/8", 150, Behavior::Chaotic, 3),
        ("xor: R90 chaoticity = 2/8", 90, Behavior::Chaotic, 2),
        ("identity: R204 chaoticity = 0", 204, Behavior::Chaotic, 0),
        ("and: R128 decrease = 6/8", 128, Behavior::Decrease, 6),
        ("and: R160 decrease = 4/8", 160, Behavior::Decrease, 4),
        ("identity: R204 decrease = 0", 204, Behavior::Decrease, 0),
        ("or: R254 growth = 6/8", 254, Behavior::Growth, 6),
        ("or: R250 growth = 4/8", 250, Behavior::Growth, 4),
    ];
    for (name, rule, behavior, expected) in fractions {
        let got = behavior_count(&TruthTable::elementary(rule), tables, behavior);
        push(name, got == expected, format!("{got}/8 (expected {expected}/8)"));
    }

    let r94 = TruthTable::elementary(94);
    let codes: Vec<u8> = m_truth_table_with(&r94, &MinimizeOptions::default(), tables)
        .iter()
        .map(|m| m.value())
        .collect();
    push(
        "R94 coded truth table",
        codes == [1, 4, 4, 4, 4, 2, 4, 2],
        format!("{codes:?}"),
    );

    // worked example: input 101 on (q & !p) | (p ^ r)
    let [l0, l1] = tables.leaf;
    let (p, q, r) = (l1, l0, l1);
    let not_p = tables.not[p.value() as usize];
    let and = HTables::bin(&tables.and, q, not_p);
    let xor = HTables::bin(&tables.xor, p, r);
    let or = HTables::bin(&tables.or, and, xor);
    let steps = [(p, 5), (q, 0), (r, 5), (not_p, 0), (and, 0), (xor, 2), (or, 2)];
    push(
        "R94 input 101 step values",
        steps.iter().all(|&(got, want)| got.value() == want),
        format!("leaves {p},{q},{r}; not {not_p}; and {and}; xor {xor}; or {or}"),
    );

    Report { checks }
}
