use alloc::boxed::Box;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// Minimized Boolean expression over variables `x0..x{m-1}`.
///
/// Values built through [`BoolExpr::and`], [`BoolExpr::or`],
/// [`BoolExpr::xor`] and [`BoolExpr::not`] are canonical: n-ary children
/// are flattened, deduplicated and sorted by [`canonical_cmp`]; there is no
/// double negation, and an odd number of negations under an XOR is carried
/// by its first child alone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    Const(bool),
    Var(u8),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    Xor(Vec<BoolExpr>),
}

impl BoolExpr {
    pub fn var(index: usize) -> Self {
        BoolExpr::Var(index as u8)
    }

    pub fn literal(index: usize, positive: bool) -> Self {
        if positive {
            BoolExpr::var(index)
        } else {
            BoolExpr::Not(Box::new(BoolExpr::var(index)))
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: BoolExpr) -> Self {
        match inner {
            BoolExpr::Const(b) => BoolExpr::Const(!b),
            BoolExpr::Not(e) => *e,
            BoolExpr::Xor(children) => Self::xor_with_parity(children, true),
            e => BoolExpr::Not(Box::new(e)),
        }
    }

    pub fn and(children: impl IntoIterator<Item = BoolExpr>) -> Self {
        Self::nary(children, Kind::And)
    }

    pub fn or(children: impl IntoIterator<Item = BoolExpr>) -> Self {
        Self::nary(children, Kind::Or)
    }

    pub fn xor(children: impl IntoIterator<Item = BoolExpr>) -> Self {
        Self::xor_with_parity(children, false)
    }

    fn nary(children: impl IntoIterator<Item = BoolExpr>, kind: Kind) -> Self {
        let (absorbing, neutral) = match kind {
            Kind::And => (false, true),
            _ => (true, false),
        };
        let mut flat = Vec::new();
        for c in children {
            match (c, kind) {
                (BoolExpr::Const(b), _) if b == neutral => {}
                (BoolExpr::Const(b), _) if b == absorbing => return BoolExpr::Const(absorbing),
                (BoolExpr::And(cs), Kind::And) | (BoolExpr::Or(cs), Kind::Or) => flat.extend(cs),
                (c, _) => flat.push(c),
            }
        }
        flat.sort_by(canonical_cmp);
        flat.dedup();
        match flat.len() {
            0 => BoolExpr::Const(neutral),
            1 => flat.pop().expect("one child"),
            _ if kind == Kind::And => BoolExpr::And(flat),
            _ => BoolExpr::Or(flat),
        }
    }

    fn xor_with_parity(children: impl IntoIterator<Item = BoolExpr>, mut parity: bool) -> Self {
        let mut flat = Vec::new();
        let mut stack: Vec<BoolExpr> = children.into_iter().collect();
        stack.reverse();
        while let Some(c) = stack.pop() {
            match c {
                BoolExpr::Const(b) => parity ^= b,
                BoolExpr::Not(e) => {
                    parity = !parity;
                    stack.push(*e);
                }
                BoolExpr::Xor(cs) => stack.extend(cs.into_iter().rev()),
                e => flat.push(e),
            }
        }
        flat.sort_by(canonical_cmp);
        // a ^ a = 0
        let mut reduced: Vec<BoolExpr> = Vec::with_capacity(flat.len());
        for e in flat {
            if reduced.last() == Some(&e) {
                reduced.pop();
            } else {
                reduced.push(e);
            }
        }
        match reduced.len() {
            0 => BoolExpr::Const(parity),
            1 => {
                let e = reduced.pop().expect("one child");
                if parity {
                    BoolExpr::not(e)
                } else {
                    e
                }
            }
            _ => {
                if parity {
                    let first = reduced.remove(0);
                    reduced.insert(0, BoolExpr::not(first));
                    reduced.sort_by(canonical_cmp);
                }
                BoolExpr::Xor(reduced)
            }
        }
    }

    /// Evaluates with `assignment[i]` the value of variable `i`.
    pub fn eval(&self, assignment: &[bool]) -> bool {
        match self {
            BoolExpr::Const(b) => *b,
            BoolExpr::Var(v) => assignment[*v as usize],
            BoolExpr::Not(e) => !e.eval(assignment),
            BoolExpr::And(cs) => cs.iter().all(|c| c.eval(assignment)),
            BoolExpr::Or(cs) => cs.iter().any(|c| c.eval(assignment)),
            BoolExpr::Xor(cs) => cs.iter().fold(false, |acc, c| acc ^ c.eval(assignment)),
        }
    }

    /// Number of variable leaves.
    pub fn literal_count(&self) -> usize {
        match self {
            BoolExpr::Const(_) => 0,
            BoolExpr::Var(_) => 1,
            BoolExpr::Not(e) => e.literal_count(),
            BoolExpr::And(cs) | BoolExpr::Or(cs) | BoolExpr::Xor(cs) => cs.iter().map(BoolExpr::literal_count).sum(),
        }
    }

    fn collect_vars(&self, out: &mut Vec<u8>) {
        match self {
            BoolExpr::Const(_) => {}
            BoolExpr::Var(v) => out.push(*v),
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::And(cs) | BoolExpr::Or(cs) | BoolExpr::Xor(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Sorted, deduplicated variable indices occurring in the expression.
    pub fn variables(&self) -> Vec<u8> {
        let mut v = Vec::new();
        self.collect_vars(&mut v);
        v.sort_unstable();
        v.dedup();
        v
    }

    fn is_literal(&self) -> bool {
        match self {
            BoolExpr::Var(_) => true,
            BoolExpr::Not(e) => matches!(**e, BoolExpr::Var(_)),
            _ => false,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            BoolExpr::Const(_) => 0,
            BoolExpr::Var(_) => 1,
            BoolExpr::Not(_) => 2,
            BoolExpr::Xor(_) => 3,
            BoolExpr::And(_) => 4,
            BoolExpr::Or(_) => 5,
        }
    }

    /// Renders with `p, q, r` for arity 3 and `x0..x8` otherwise.
    pub fn display(&self, arity: usize) -> Display<'_> {
        Display { expr: self, arity }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    And,
    Or,
}

/// Canonical child order.
///
/// Single literals precede compound subtrees; within each group subtrees
/// compare by their sorted variable-index lists (lexicographically), then by
/// node kind, then child by child.
pub fn canonical_cmp(a: &BoolExpr, b: &BoolExpr) -> Ordering {
    b.is_literal()
        .cmp(&a.is_literal())
        .then_with(|| a.variables().cmp(&b.variables()))
        .then_with(|| a.rank().cmp(&b.rank()))
        .then_with(|| match (a, b) {
            (BoolExpr::Const(x), BoolExpr::Const(y)) => x.cmp(y),
            (BoolExpr::Var(x), BoolExpr::Var(y)) => x.cmp(y),
            (BoolExpr::Not(x), BoolExpr::Not(y)) => canonical_cmp(x, y),
            (BoolExpr::And(xs), BoolExpr::And(ys))
            | (BoolExpr::Or(xs), BoolExpr::Or(ys))
            | (BoolExpr::Xor(xs), BoolExpr::Xor(ys)) => {
                for (x, y) in xs.iter().zip(ys) {
                    let o = canonical_cmp(x, y);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                xs.len().cmp(&ys.len())
            }
            _ => Ordering::Equal,
        })
}

pub struct Display<'a> {
    expr: &'a BoolExpr,
    arity: usize,
}

impl Display<'_> {
    fn name(&self, v: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arity == 3 {
            f.write_str(["p", "q", "r"][v as usize])
        } else {
            write!(f, "x{v}")
        }
    }

    fn write(&self, e: &BoolExpr, top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (cs, op) = match e {
            BoolExpr::Const(b) => return f.write_str(if *b { "1" } else { "0" }),
            BoolExpr::Var(v) => return self.name(*v, f),
            BoolExpr::Not(inner) => {
                f.write_str("!")?;
                return self.write(inner, false, f);
            }
            BoolExpr::And(cs) => (cs, " & "),
            BoolExpr::Or(cs) => (cs, " | "),
            BoolExpr::Xor(cs) => (cs, " ^ "),
        };
        if !top {
            f.write_str("(")?;
        }
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                f.write_str(op)?;
            }
            self.write(c, false, f)?;
        }
        if !top {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.expr, true, f)
    }
}
