//! Synchronous evolution on the torus, M-fields and spacetime averages.
//!
//! Stepping walks each bit-packed row with a sliding 9-bit (or 3-bit)
//! neighborhood window and looks the next state up in the truth table.
//! M-fields use a per-rule table of codes computed once from the
//! minimized expression.

use alloc::vec;
use alloc::vec::Vec;

use crate::boolmin::{minimize_with, BoolExpr, MinimizeOptions};
use crate::heval::HTables;
use crate::lattice::{Dims, Lattice, MField};
use crate::mcode::MCode;
use crate::rule::{neighborhood_index, TruthTable};
use crate::{Error, Result};

/// A rule ready for simulation: truth table, minimized form and its code table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledRule {
    tt: TruthTable,
    expr: BoolExpr,
    exact: bool,
    codes: Vec<MCode>,
}

impl CompiledRule {
    pub fn new(tt: &TruthTable) -> Self {
        Self::with_options(tt, &MinimizeOptions::default(), &HTables::standard())
    }

    pub fn with_options(tt: &TruthTable, opts: &MinimizeOptions, tables: &HTables) -> Self {
        let m = minimize_with(tt, opts);
        let codes = tables.code_table(&m.expr, tt.arity());
        CompiledRule {
            tt: tt.clone(),
            expr: m.expr,
            exact: m.exact,
            codes,
        }
    }

    pub fn truth_table(&self) -> &TruthTable {
        &self.tt
    }

    pub fn expr(&self) -> &BoolExpr {
        &self.expr
    }

    /// Whether the minimization behind the codes used proven-minimal covers.
    pub fn exact(&self) -> bool {
        self.exact
    }

    pub fn codes(&self) -> &[MCode] {
        &self.codes
    }

    pub fn arity(&self) -> usize {
        self.tt.arity()
    }
}

fn check_dims(dims: Dims, arity: usize) -> Result<()> {
    if dims.arity() != arity {
        return Err(Error::DimsMismatch { arity });
    }
    Ok(())
}

#[inline]
fn bit(words: &[u64], c: usize) -> usize {
    ((words[c / 64] >> (c % 64)) & 1) as usize
}

/// Calls `visit(row, col, neighborhood_index)` for every cell, row by row.
fn sweep(c: &Lattice, mut visit: impl FnMut(usize, usize, usize)) {
    let (rows, cols) = (c.rows(), c.cols());
    let left = |x: usize| if x == 0 { cols - 1 } else { x - 1 };
    let right = |x: usize| if x + 1 == cols { 0 } else { x + 1 };
    match c.dims() {
        Dims::Line(_) => {
            let w = c.row_words(0);
            let mut idx = (bit(w, left(0)) << 1) | bit(w, 0);
            for x in 0..cols {
                idx = ((idx << 1) & 0b110) | bit(w, right(x));
                visit(0, x, idx);
            }
        }
        Dims::Grid { .. } => {
            for r in 0..rows {
                let up = c.row_words(if r == 0 { rows - 1 } else { r - 1 });
                let mid = c.row_words(r);
                let down = c.row_words(if r + 1 == rows { 0 } else { r + 1 });
                let column = |x: usize| (bit(up, x) << 6) | (bit(mid, x) << 3) | bit(down, x);
                let mut idx = (column(left(0)) << 1) | column(0);
                for x in 0..cols {
                    idx = ((idx << 1) & 0b110_110_110) | column(right(x));
                    visit(r, x, idx);
                }
            }
        }
    }
}

/// One synchronous update of every cell.
pub fn step(c: &Lattice, tt: &TruthTable) -> Result<Lattice> {
    check_dims(c.dims(), tt.arity())?;
    Ok(step_unchecked(c, tt, |_| {}))
}

fn step_unchecked(c: &Lattice, tt: &TruthTable, mut observe: impl FnMut(usize)) -> Lattice {
    let mut next = Lattice::new(c.dims()).expect("same dims");
    let mut cur_row = usize::MAX;
    let mut row_buf: Vec<u64> = vec![0; c.row_words(0).len()];
    sweep(c, |r, x, idx| {
        if r != cur_row {
            if cur_row != usize::MAX {
                next.row_words_mut(cur_row).copy_from_slice(&row_buf);
            }
            row_buf.iter_mut().for_each(|w| *w = 0);
            cur_row = r;
        }
        observe(idx);
        if tt.get(idx) {
            row_buf[x / 64] |= 1 << (x % 64);
        }
    });
    next.row_words_mut(cur_row).copy_from_slice(&row_buf);
    next
}

/// Steps once and adds every cell's code to `counts` (indexed by code value).
pub fn step_counting(c: &Lattice, rule: &CompiledRule, counts: &mut [u64; 6]) -> Result<Lattice> {
    check_dims(c.dims(), rule.arity())?;
    let codes = &rule.codes;
    Ok(step_unchecked(c, &rule.tt, |idx| {
        counts[codes[idx].value() as usize] += 1
    }))
}

/// Reference stepper: gathers each neighborhood cell by cell.
pub fn step_naive(c: &Lattice, tt: &TruthTable) -> Result<Lattice> {
    check_dims(c.dims(), tt.arity())?;
    let mut next = Lattice::new(c.dims())?;
    let mut cells = Vec::with_capacity(9);
    for r in 0..c.rows() {
        for x in 0..c.cols() {
            cells.clear();
            match c.dims() {
                Dims::Line(_) => {
                    for dx in -1..=1 {
                        cells.push(c.get_wrapped(0, x as isize + dx));
                    }
                }
                Dims::Grid { .. } => {
                    for dr in -1..=1 {
                        for dx in -1..=1 {
                            cells.push(c.get_wrapped(r as isize + dr, x as isize + dx));
                        }
                    }
                }
            }
            next.set(r, x, tt.get(neighborhood_index(&cells, tt.arity())?));
        }
    }
    Ok(next)
}

/// `G(C, f)`: the code of every cell's neighborhood.
pub fn m_field(c: &Lattice, rule: &CompiledRule) -> Result<MField> {
    check_dims(c.dims(), rule.arity())?;
    let mut codes = Vec::with_capacity(c.dims().cells());
    sweep(c, |_, _, idx| codes.push(rule.codes[idx]));
    MField::new(c.dims(), codes)
}

/// Frames `C^0..C^T` and, when requested, fields `D^1..D^T` with `D^{t+1} = G(C^t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionHistory {
    pub frames: Vec<Lattice>,
    pub mfields: Vec<MField>,
}

pub fn evolve(c0: &Lattice, rule: &CompiledRule, steps: usize, with_mfields: bool) -> Result<EvolutionHistory> {
    check_dims(c0.dims(), rule.arity())?;
    let mut frames = Vec::with_capacity(steps + 1);
    let mut mfields = Vec::new();
    frames.push(c0.clone());
    for _ in 0..steps {
        let cur = frames.last().expect("non-empty");
        if with_mfields {
            mfields.push(m_field(cur, rule)?);
        }
        let next = step_unchecked(cur, &rule.tt, |_| {});
        frames.push(next);
    }
    Ok(EvolutionHistory { frames, mfields })
}

/// Row-major matrix of intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grayscale {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f64>,
}

impl Grayscale {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.width..(row + 1) * self.width]
    }
}

/// Row `t` holds the per-column mean of frame `t`, so time runs downward.
pub fn averaged_spacetime(h: &EvolutionHistory) -> Result<Grayscale> {
    let first = h.frames.first().ok_or(Error::NotTwoDimensional)?;
    let Dims::Grid { rows, cols } = first.dims() else {
        return Err(Error::NotTwoDimensional);
    };
    let mut values = Vec::with_capacity(cols * h.frames.len());
    for f in &h.frames {
        for c in 0..cols {
            let live = (0..rows).filter(|&r| f.get(r, c)).count();
            values.push(live as f64 / rows as f64);
        }
    }
    Ok(Grayscale {
        width: cols,
        height: h.frames.len(),
        values,
    })
}

/// Raw spacetime diagram of a 1D history: row `t` is frame `t`.
pub fn line_spacetime(h: &EvolutionHistory) -> Result<Grayscale> {
    let first = h.frames.first().ok_or(Error::DimsMismatch { arity: 3 })?;
    let Dims::Line(n) = first.dims() else {
        return Err(Error::DimsMismatch { arity: 3 });
    };
    let values = h
        .frames
        .iter()
        .flat_map(|f| (0..n).map(move |c| if f.get(0, c) { 1.0 } else { 0.0 }))
        .collect();
    Ok(Grayscale {
        width: n,
        height: h.frames.len(),
        values,
    })
}
