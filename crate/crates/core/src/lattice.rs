//! Toroidal binary lattices and fields of M-codes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::mcode::MCode;
use crate::rule::{ELEMENTARY_ARITY, MOORE_ARITY};
use crate::{Error, Result};

/// Shape of a finite cyclic lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dims {
    Line(usize),
    Grid { rows: usize, cols: usize },
}

impl Dims {
    pub fn rows(&self) -> usize {
        match *self {
            Dims::Line(_) => 1,
            Dims::Grid { rows, .. } => rows,
        }
    }

    pub fn cols(&self) -> usize {
        match *self {
            Dims::Line(n) => n,
            Dims::Grid { cols, .. } => cols,
        }
    }

    pub fn cells(&self) -> usize {
        self.rows() * self.cols()
    }

    /// Neighborhood arity of rules that run on this shape.
    pub fn arity(&self) -> usize {
        match self {
            Dims::Line(_) => ELEMENTARY_ARITY,
            Dims::Grid { .. } => MOORE_ARITY,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows() == 0 || self.cols() == 0 {
            return Err(Error::DegenerateLattice(format!("{self}")));
        }
        Ok(())
    }

    /// Default shape for a rule arity: 200 cells in 1D, 100x100 in 2D.
    pub fn default_for_arity(arity: usize) -> Result<Dims> {
        match arity {
            ELEMENTARY_ARITY => Ok(Dims::Line(200)),
            MOORE_ARITY => Ok(Dims::Grid { rows: 100, cols: 100 }),
            other => Err(Error::UnsupportedArity(other)),
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dims::Line(n) => write!(f, "{n}"),
            Dims::Grid { rows, cols } => write!(f, "{rows}x{cols}"),
        }
    }
}

/// Parses `N` (a line) or `RxC` (a grid).
impl core::str::FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad lattice size {s:?}")))
        };
        let dims = match s.split_once(['x', 'X']) {
            Some((r, c)) => Dims::Grid {
                rows: num(r)?,
                cols: num(c)?,
            },
            None => Dims::Line(num(s)?),
        };
        dims.validate()?;
        Ok(dims)
    }
}

/// Bit-packed lattice; every index wraps modulo its dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    dims: Dims,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl Lattice {
    pub fn new(dims: Dims) -> Result<Self> {
        dims.validate()?;
        let words_per_row = dims.cols().div_ceil(64);
        Ok(Lattice {
            dims,
            words_per_row,
            bits: vec![0; words_per_row * dims.rows()],
        })
    }

    /// Lattice with every cell independently alive with probability `density`.
    pub fn random<R: Rng + ?Sized>(dims: Dims, density: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::InvalidParameter(format!("density {density} outside [0, 1]")));
        }
        let mut l = Lattice::new(dims)?;
        for r in 0..dims.rows() {
            for c in 0..dims.cols() {
                if rng.random_bool(density) {
                    l.set(r, c, true);
                }
            }
        }
        Ok(l)
    }

    /// Builds a lattice from equal-length rows. One row gives a 1D lattice
    /// only when `line` is set.
    pub fn from_rows(rows: &[Vec<bool>], line: bool) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DegenerateLattice("ragged rows".into()));
        }
        let dims = if line {
            if rows.len() != 1 {
                return Err(Error::DegenerateLattice("a line has exactly one row".into()));
            }
            Dims::Line(cols)
        } else {
            Dims::Grid { rows: rows.len(), cols }
        };
        let mut l = Lattice::new(dims)?;
        for (r, row) in rows.iter().enumerate() {
            for (c, &b) in row.iter().enumerate() {
                l.set(r, c, b);
            }
        }
        Ok(l)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn rows(&self) -> usize {
        self.dims.rows()
    }

    pub fn cols(&self) -> usize {
        self.dims.cols()
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.bits[r * self.words_per_row + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        let w = &mut self.bits[r * self.words_per_row + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    /// Cell at a signed offset, wrapped onto the torus.
    pub fn get_wrapped(&self, r: isize, c: isize) -> bool {
        let rr = r.rem_euclid(self.rows() as isize) as usize;
        let cc = c.rem_euclid(self.cols() as isize) as usize;
        self.get(rr, cc)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Cyclic translation by `(dr, dc)`: the cell at `(r, c)` moves to `(r + dr, c + dc)`.
    pub fn shifted(&self, dr: isize, dc: isize) -> Lattice {
        let mut out = Lattice::new(self.dims).expect("same dims");
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if self.get(r, c) {
                    let rr = (r as isize + dr).rem_euclid(self.rows() as isize) as usize;
                    let cc = (c as isize + dc).rem_euclid(self.cols() as isize) as usize;
                    out.set(rr, cc, true);
                }
            }
        }
        out
    }

    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| self.get(r, c)).collect())
            .collect()
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lattice({})", self.dims)?;
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                f.write_str(if self.get(r, c) { "#" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One M-code per site, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MField {
    dims: Dims,
    codes: Vec<MCode>,
}

impl MField {
    pub fn new(dims: Dims, codes: Vec<MCode>) -> Result<Self> {
        dims.validate()?;
        if codes.len() != dims.cells() {
            return Err(Error::DegenerateLattice(format!(
                "{} codes for {} cells",
                codes.len(),
                dims.cells()
            )));
        }
        Ok(MField { dims, codes })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn get(&self, r: usize, c: usize) -> MCode {
        self.codes[r * self.dims.cols() + c]
    }

    pub fn codes(&self) -> &[MCode] {
        &self.codes
    }

    /// The lattice of next-state bits.
    pub fn state_projection(&self) -> Lattice {
        let mut l = Lattice::new(self.dims).expect("validated dims");
        for r in 0..self.dims.rows() {
            for c in 0..self.dims.cols() {
                l.set(r, c, self.get(r, c).state());
            }
        }
        l
    }

    /// Occurrences of each code value 0..=5.
    pub fn histogram(&self) -> [u64; 6] {
        let mut h = [0u64; 6];
        for m in &self.codes {
            h[m.value() as usize] += 1;
        }
        h
    }
}
