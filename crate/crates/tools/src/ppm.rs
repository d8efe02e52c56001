//! Binary PPM (P6) rendering of lattices, M-fields and grayscale matrices.

use std::fs;
use std::path::Path;

use ca_core::sim::Grayscale;
use ca_core::{Lattice, MCode, MField};

use crate::error::{io_err, Result};

/// Colors of M = 0..=5.
pub const PALETTE: [[u8; 3]; 6] = [
    [255, 255, 255],
    [255, 255, 0],
    [0, 255, 0],
    [255, 0, 0],
    [0, 0, 255],
    [0, 0, 0],
];

const DEAD: [u8; 3] = [255, 255, 255];
const ALIVE: [u8; 3] = [0, 0, 0];

fn encode(width: usize, height: usize, mut pixel: impl FnMut(usize, usize) -> [u8; 3]) -> Vec<u8> {
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(width * height * 3);
    for r in 0..height {
        for c in 0..width {
            out.extend_from_slice(&pixel(r, c));
        }
    }
    out
}

pub fn code_color(m: MCode) -> [u8; 3] {
    PALETTE[m.value() as usize]
}

pub fn encode_mfield(f: &MField) -> Vec<u8> {
    let d = f.dims();
    encode(d.cols(), d.rows(), |r, c| code_color(f.get(r, c)))
}

/// Rows of codes stacked top to bottom, as for a 1D evolution.
pub fn encode_code_rows(rows: &[&[MCode]]) -> Vec<u8> {
    let width = rows.first().map_or(0, |r| r.len());
    encode(width, rows.len(), |r, c| code_color(rows[r][c]))
}

pub fn encode_lattice(l: &Lattice) -> Vec<u8> {
    encode(l.cols(), l.rows(), |r, c| if l.get(r, c) { ALIVE } else { DEAD })
}

/// Lattice rows stacked top to bottom; each lattice contributes its rows in order.
pub fn encode_lattice_rows(frames: &[Lattice]) -> Vec<u8> {
    let width = frames.first().map_or(0, Lattice::cols);
    let rows: Vec<(usize, usize)> = frames
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.rows()).map(move |r| (i, r)))
        .collect();
    encode(width, rows.len(), |r, c| {
        let (i, fr) = rows[r];
        if frames[i].get(fr, c) {
            ALIVE
        } else {
            DEAD
        }
    })
}

/// Intensity `v` in `[0, 1]` maps to gray level `round(255 v)`.
pub fn encode_grayscale(g: &Grayscale) -> Vec<u8> {
    encode(g.width, g.height, |r, c| {
        let v = (g.get(r, c).clamp(0.0, 1.0) * 255.0).round() as u8;
        [v, v, v]
    })
}

pub fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(io_err(path))
}
