//! Set cover of the on-set by prime implicants.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::implicant::Implicant;
use crate::rule::TruthTable;

/// How the prime cover is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoverMode {
    /// Minimum-cardinality cover found by branch and bound, within the
    /// configured work budget; greedy when the budget runs out.
    Exact,
    /// Deterministic greedy set cover.
    Greedy,
    /// Exact with a small budget: always exact at arity 3, quick fallback on
    /// hard 9-variable functions.
    #[default]
    Auto,
}

impl core::str::FromStr for CoverMode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" => Ok(CoverMode::Exact),
            "greedy" => Ok(CoverMode::Greedy),
            "auto" => Ok(CoverMode::Auto),
            other => Err(crate::Error::InvalidParameter(alloc::format!(
                "unknown cover mode {other:?}"
            ))),
        }
    }
}

/// A chosen cover, sorted by cube key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub cubes: Vec<Implicant>,
    /// `true` when the cover is a proven optimum.
    pub exact: bool,
}

impl Cover {
    pub fn literal_count(&self) -> usize {
        self.cubes.iter().map(Implicant::literal_count).sum()
    }
}

/// Picks a cover of `tt`'s on-set from `primes`.
///
/// Exact covers minimize, in order: cube count, total literal count, and the
/// sorted list of cube keys (lexicographically). `budget` bounds the number
/// of branch-and-bound nodes; exceeding it falls back to greedy with
/// `exact = false`.
pub fn minimal_cover(primes: &[Implicant], tt: &TruthTable, mode: CoverMode, budget: u64) -> Cover {
    let table = Table::new(primes, tt);
    match mode {
        CoverMode::Greedy => Cover {
            cubes: table.to_cubes(table.greedy()),
            exact: false,
        },
        CoverMode::Exact | CoverMode::Auto => match table.exact(budget) {
            Some(cols) => Cover {
                cubes: table.to_cubes(cols),
                exact: true,
            },
            None => Cover {
                cubes: table.to_cubes(table.greedy()),
                exact: false,
            },
        },
    }
}

struct Table<'a> {
    primes: &'a [Implicant],
    /// words per minterm bitset
    words: usize,
    /// flat per-column minterm bitsets
    cols: Vec<u64>,
    onset: Vec<u64>,
    /// columns covering each minterm
    row_cols: Vec<Vec<u32>>,
    cost: Vec<(u32, u32)>,
}

#[derive(Clone)]
struct State {
    uncovered: Vec<u64>,
    active: Vec<bool>,
    chosen: Vec<u32>,
}

#[inline]
fn test(bits: &[u64], i: usize) -> bool {
    (bits[i / 64] >> (i % 64)) & 1 == 1
}

fn is_empty(bits: &[u64]) -> bool {
    bits.iter().all(|&w| w == 0)
}

impl<'a> Table<'a> {
    fn new(primes: &'a [Implicant], tt: &TruthTable) -> Self {
        let words = tt.words().len();
        let mut cols = vec![0u64; primes.len() * words];
        let mut row_cols = vec![Vec::new(); tt.len()];
        for (c, p) in primes.iter().enumerate() {
            for n in p.minterms() {
                cols[c * words + n / 64] |= 1 << (n % 64);
                row_cols[n].push(c as u32);
            }
        }
        let cost = primes.iter().map(|p| (p.literal_count() as u32, p.key())).collect();
        Table {
            primes,
            words,
            cols,
            onset: tt.words().to_vec(),
            row_cols,
            cost,
        }
    }

    fn col(&self, c: usize) -> &[u64] {
        &self.cols[c * self.words..(c + 1) * self.words]
    }

    fn gain(&self, c: usize, uncovered: &[u64]) -> u32 {
        self.col(c)
            .iter()
            .zip(uncovered)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn to_cubes(&self, mut cols: Vec<u32>) -> Vec<Implicant> {
        cols.sort_unstable();
        cols.dedup();
        let mut cubes: Vec<Implicant> = cols.iter().map(|&c| self.primes[c as usize]).collect();
        cubes.sort();
        cubes
    }

    fn greedy(&self) -> Vec<u32> {
        let mut uncovered = self.onset.clone();
        let mut chosen = Vec::new();
        while !is_empty(&uncovered) {
            // primes are sorted by key, so the first maximum wins ties
            let mut best: Option<(usize, u32)> = None;
            for c in 0..self.primes.len() {
                let g = self.gain(c, &uncovered);
                if g > 0 && best.is_none_or(|(_, bg)| g > bg) {
                    best = Some((c, g));
                }
            }
            let (c, _) = best.expect("primes cover the on-set");
            for (u, w) in uncovered.iter_mut().zip(self.col(c)) {
                *u &= !w;
            }
            chosen.push(c as u32);
        }
        chosen
    }

    fn exact(&self, budget: u64) -> Option<Vec<u32>> {
        let state = State {
            uncovered: self.onset.clone(),
            active: vec![true; self.primes.len()],
            chosen: Vec::new(),
        };
        let mut search = Search {
            table: self,
            best: None,
            nodes: 0,
            budget,
            aborted: false,
        };
        search.run(state);
        if search.aborted {
            None
        } else {
            search.best.map(|b| b.cols)
        }
    }

    fn active_cols<'s>(&'s self, st: &'s State, row: usize) -> impl Iterator<Item = usize> + 's {
        self.row_cols[row]
            .iter()
            .map(|&c| c as usize)
            .filter(move |&c| st.active[c])
    }

    fn rows<'s>(&'s self, bits: &'s [u64]) -> impl Iterator<Item = usize> + 's {
        bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    fn choose(&self, st: &mut State, c: usize) {
        st.chosen.push(c as u32);
        st.active[c] = false;
        for (u, w) in st.uncovered.iter_mut().zip(self.col(c)) {
            *u &= !w;
        }
    }

    /// Essential columns, column dominance and row dominance until fixpoint.
    /// Returns `false` if some row can no longer be covered.
    fn reduce(&self, st: &mut State) -> bool {
        loop {
            let mut changed = false;

            let rows: Vec<usize> = self.rows(&st.uncovered).collect();
            for r in rows {
                if !test(&st.uncovered, r) {
                    continue;
                }
                let pair = {
                    let mut it = self.active_cols(st, r);
                    (it.next(), it.next())
                };
                match pair {
                    (None, _) => return false,
                    (Some(c), None) => {
                        self.choose(st, c);
                        changed = true;
                    }
                    _ => {}
                }
            }

            // Column dominance: drop c when an active c2 covers everything c
            // still covers and is no worse on (literal count, key).
            let mut masked = vec![0u64; self.words];
            for c in 0..self.primes.len() {
                if !st.active[c] {
                    continue;
                }
                for (m, (a, b)) in masked.iter_mut().zip(self.col(c).iter().zip(&st.uncovered)) {
                    *m = a & b;
                }
                let Some(first) = self.rows(&masked).next() else {
                    st.active[c] = false;
                    changed = true;
                    continue;
                };
                let dominated = self.active_cols(st, first).any(|c2| {
                    c2 != c && self.cost[c2] < self.cost[c] && masked.iter().zip(self.col(c2)).all(|(m, w)| m & !w == 0)
                });
                if dominated {
                    st.active[c] = false;
                    changed = true;
                }
            }

            // Row dominance: if every column covering r1 also covers r2,
            // covering r1 covers r2, so r2 can be dropped.
            let rows: Vec<usize> = self.rows(&st.uncovered).collect();
            for &r1 in &rows {
                if !test(&st.uncovered, r1) {
                    continue;
                }
                let cols1: Vec<usize> = self.active_cols(st, r1).collect();
                let Some(&c0) = cols1.first() else {
                    return false;
                };
                let candidates: Vec<usize> = self
                    .rows(self.col(c0))
                    .filter(|&r2| r2 != r1 && test(&st.uncovered, r2))
                    .collect();
                for r2 in candidates {
                    if cols1.iter().all(|&c| test(self.col(c), r2)) {
                        let dup = self.active_cols(st, r2).count() == cols1.len();
                        // identical rows: keep the lower index
                        if !dup || r2 > r1 {
                            st.uncovered[r2 / 64] &= !(1 << (r2 % 64));
                            changed = true;
                        }
                    }
                }
            }

            if !changed {
                return true;
            }
        }
    }

    /// Lower bound on additional columns: rows pairwise sharing no column.
    fn independent_rows(&self, st: &State) -> usize {
        let mut rows: Vec<(usize, usize)> = self
            .rows(&st.uncovered)
            .map(|r| (self.active_cols(st, r).count(), r))
            .collect();
        rows.sort_unstable();
        let mut used = vec![false; self.primes.len()];
        let mut count = 0;
        for (_, r) in rows {
            if self.active_cols(st, r).all(|c| !used[c]) {
                count += 1;
                for c in self.active_cols(st, r) {
                    used[c] = true;
                }
            }
        }
        count
    }
}

struct Best {
    cols: Vec<u32>,
    objective: (usize, u32, Vec<u32>),
}

struct Search<'t, 'a> {
    table: &'t Table<'a>,
    best: Option<Best>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Search<'_, '_> {
    fn objective(&self, cols: &[u32]) -> (usize, u32, Vec<u32>) {
        let lits = cols.iter().map(|&c| self.table.cost[c as usize].0).sum();
        let mut keys: Vec<u32> = cols.iter().map(|&c| self.table.cost[c as usize].1).collect();
        keys.sort_unstable();
        (cols.len(), lits, keys)
    }

    fn run(&mut self, mut st: State) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if !self.table.reduce(&mut st) {
            return;
        }
        if is_empty(&st.uncovered) {
            let obj = self.objective(&st.chosen);
            let better = match &self.best {
                None => true,
                Some(b) => obj.cmp(&b.objective) == Ordering::Less,
            };
            if better {
                self.best = Some(Best {
                    cols: st.chosen.clone(),
                    objective: obj,
                });
            }
            return;
        }
        let lb = st.chosen.len() + self.table.independent_rows(&st);
        if let Some(b) = &self.best {
            if lb > b.objective.0 {
                return;
            }
        }
        // branch on the row with the fewest candidate columns
        let row = self
            .table
            .rows(&st.uncovered)
            .min_by_key(|&r| (self.table.active_cols(&st, r).count(), r))
            .expect("uncovered is non-empty");
        let mut cols: Vec<usize> = self.table.active_cols(&st, row).collect();
        cols.sort_by_key(|&c| self.table.cost[c]);
        for c in cols {
            let mut next = st.clone();
            self.table.choose(&mut next, c);
            self.run(next);
            if self.aborted {
                return;
            }
            // later siblings exclude c: covers containing it were explored
            st.active[c] = false;
        }
    }
}
