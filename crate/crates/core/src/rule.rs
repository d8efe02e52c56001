//! Truth tables, rule numbers and neighborhood indexing.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::{Error, Result};

/// Largest arity a [`TruthTable`] may have.
pub const MAX_ARITY: usize = 12;

/// Arity of the elementary (radius-1, 1D) neighborhood `(p, q, r)`.
pub const ELEMENTARY_ARITY: usize = 3;
/// Arity of the 2D Moore neighborhood, scanned row-major `x0..x8` with `x4` the center.
pub const MOORE_ARITY: usize = 9;

/// Integer value of a neighborhood: the first cell is the most significant bit.
pub fn neighborhood_index(cells: &[bool], arity: usize) -> Result<usize> {
    if cells.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: cells.len(),
        });
    }
    if arity > MAX_ARITY {
        return Err(Error::UnsupportedArity(arity));
    }
    Ok(cells.iter().fold(0, |acc, &c| (acc << 1) | c as usize))
}

/// Inverse of [`neighborhood_index`].
pub fn neighborhood_cells(index: usize, arity: usize) -> Vec<bool> {
    (0..arity).map(|i| (index >> (arity - 1 - i)) & 1 == 1).collect()
}

/// Local transition function stored as `2^arity` output bits, indexed by
/// neighborhood value.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    words: Vec<u64>,
}

fn word_count(arity: usize) -> usize {
    (1usize << arity).div_ceil(64)
}

impl TruthTable {
    pub fn zeros(arity: usize) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::UnsupportedArity(arity));
        }
        Ok(TruthTable {
            arity: arity as u8,
            words: vec![0; word_count(arity)],
        })
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut tt = Self::zeros(arity)?;
        for i in 0..tt.len() {
            if f(i) {
                tt.set(i, true);
            }
        }
        Ok(tt)
    }

    /// Builds a table from exactly `2^arity` outputs in index order.
    pub fn from_bits(arity: usize, bits: &[bool]) -> Result<Self> {
        let expected = 1usize
            .checked_shl(arity as u32)
            .filter(|_| arity <= MAX_ARITY)
            .ok_or(Error::UnsupportedArity(arity))?;
        if bits.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: bits.len(),
            });
        }
        Self::from_fn(arity, |i| bits[i])
    }

    /// Builds a table from packed words (bit `i` of the table is bit `i % 64`
    /// of word `i / 64`). Bits past `2^arity` are cleared.
    pub fn from_words(arity: usize, words: &[u64]) -> Result<Self> {
        let mut tt = Self::zeros(arity)?;
        if words.len() != tt.words.len() {
            return Err(Error::TableLength {
                expected: tt.words.len() * 64,
                got: words.len() * 64,
            });
        }
        tt.words.copy_from_slice(words);
        tt.mask_tail();
        Ok(tt)
    }

    /// Elementary rule by its Wolfram number.
    pub fn elementary(rule: u8) -> Self {
        TruthTable {
            arity: ELEMENTARY_ARITY as u8,
            words: vec![rule as u64],
        }
    }

    fn mask_tail(&mut self) {
        let len = self.len();
        if len < 64 {
            self.words[0] &= (1u64 << len) - 1;
        }
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    /// Number of entries, `2^arity`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        1 << self.arity
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        let bit = 1u64 << (index % 64);
        if value {
            self.words[index / 64] |= bit;
        } else {
            self.words[index / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, index: usize) {
        self.words[index / 64] ^= 1u64 << (index % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `Some(bit)` when every output equals `bit`.
    pub fn constant(&self) -> Option<bool> {
        match self.count_ones() {
            0 => Some(false),
            n if n == self.len() => Some(true),
            _ => None,
        }
    }

    /// Output for a neighborhood given cell by cell.
    pub fn eval(&self, cells: &[bool]) -> Result<bool> {
        Ok(self.get(neighborhood_index(cells, self.arity())?))
    }

    /// The same function with the significance of the neighborhood bits reversed.
    pub fn reversed_significance(&self) -> Self {
        let m = self.arity();
        let mut out = TruthTable {
            arity: self.arity,
            words: vec![0; self.words.len()],
        };
        for i in 0..self.len() {
            if self.get(i) {
                out.set(reverse_bits(i, m), true);
            }
        }
        out
    }
}

fn reverse_bits(index: usize, width: usize) -> usize {
    (0..width).fold(0, |acc, b| (acc << 1) | ((index >> b) & 1))
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}:", self.arity)?;
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Which neighborhood cell carries the most significant bit of a rule number's index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum BitOrder {
    /// `x0` (top-left, or `p`) is the most significant bit.
    #[default]
    MsbFirst,
    /// `x0` is the least significant bit.
    LsbFirst,
}

impl FromStr for BitOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "msb-first" | "msb" => Ok(BitOrder::MsbFirst),
            "lsb-first" | "lsb" => Ok(BitOrder::LsbFirst),
            other => Err(Error::InvalidParameter(alloc::format!("unknown bit order {other:?}"))),
        }
    }
}

impl fmt::Display for BitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BitOrder::MsbFirst => "msb-first",
            BitOrder::LsbFirst => "lsb-first",
        })
    }
}

/// Rule number: bit `i` is the output for neighborhood value `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleNumber {
    value: BigUint,
    arity: usize,
}

impl RuleNumber {
    pub fn new(value: BigUint, arity: usize) -> Result<Self> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(Error::UnsupportedArity(arity));
        }
        let bits = 1usize << arity;
        if value.bits() > bits as u64 {
            return Err(Error::RuleOutOfRange { bits });
        }
        Ok(RuleNumber { value, arity })
    }

    pub fn from_decimal(text: &str, arity: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedNumber(text.to_string()));
        }
        let value =
            BigUint::parse_bytes(text.as_bytes(), 10).ok_or_else(|| Error::MalformedNumber(text.to_string()))?;
        Self::new(value, arity)
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn to_decimal(&self) -> alloc::string::String {
        self.value.to_str_radix(10)
    }

    pub fn decode(&self, order: BitOrder) -> TruthTable {
        let mut digits = self.value.to_u64_digits();
        let n = word_count(self.arity);
        digits.resize(n, 0);
        let tt = TruthTable::from_words(self.arity, &digits).expect("range checked at construction");
        match order {
            BitOrder::MsbFirst => tt,
            BitOrder::LsbFirst => tt.reversed_significance(),
        }
    }

    pub fn encode(tt: &TruthTable, order: BitOrder) -> Self {
        let tt = match order {
            BitOrder::MsbFirst => tt.clone(),
            BitOrder::LsbFirst => tt.reversed_significance(),
        };
        let value = if tt.count_ones() == 0 {
            BigUint::zero()
        } else {
            let digits: Vec<u32> = tt.words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
            BigUint::new(digits)
        };
        RuleNumber {
            value,
            arity: tt.arity(),
        }
    }
}

impl fmt::Display for RuleNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Decodes with the default bit order.
pub fn decode_rule_number(rn: &RuleNumber) -> TruthTable {
    rn.decode(BitOrder::MsbFirst)
}

/// Encodes with the default bit order.
pub fn encode_rule_number(tt: &TruthTable) -> RuleNumber {
    RuleNumber::encode(tt, BitOrder::MsbFirst)
}

/// Conway's Game of Life (B3/S23) over the Moore neighborhood.
pub fn gol_truth_table() -> TruthTable {
    TruthTable::from_fn(MOORE_ARITY, |i| {
        let center = (i >> 4) & 1 == 1;
        let live = (i & !(1 << 4)).count_ones();
        live == 3 || (center && live == 2)
    })
    .expect("arity 9 is supported")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gol_brute(cells: &[bool]) -> bool {
        let center = cells[4];
        let live = cells.iter().enumerate().filter(|&(i, &c)| i != 4 && c).count();
        if center {
            live == 2 || live == 3
        } else {
            live == 3
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(neighborhood_index(&[false, false, false], 3), Ok(0));
        assert_eq!(neighborhood_index(&[true, false, true], 3), Ok(5));
        let mut nine = [false; 9];
        nine[8] = true;
        assert_eq!(neighborhood_index(&nine, 9), Ok(1));
        assert!(matches!(
            neighborhood_index(&[true], 3),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn index_is_bijective() {
        for m in [3, 9] {
            let mut seen = vec![false; 1 << m];
            for i in 0..1 << m {
                let cells = neighborhood_cells(i, m);
                let j = neighborhood_index(&cells, m).unwrap();
                assert_eq!(i, j);
                assert!(!seen[j]);
                seen[j] = true;
            }
        }
    }

    #[test]
    fn rule_94_table() {
        let tt = decode_rule_number(&RuleNumber::new(BigUint::from(94u32), 3).unwrap());
        let outs: Vec<bool> = tt.bits().collect();
        let expected = [0, 1, 1, 1, 1, 0, 1, 0].map(|b| b == 1);
        assert_eq!(outs, expected);
        assert_eq!(tt, TruthTable::elementary(94));
        assert_eq!(encode_rule_number(&tt).to_decimal(), "94");
    }

    #[test]
    fn extremes() {
        let zero = decode_rule_number(&RuleNumber::from_decimal("0", 3).unwrap());
        assert_eq!(zero.constant(), Some(false));
        let max = (BigUint::from(1u32) << 512usize) - 1u32;
        let ones = decode_rule_number(&RuleNumber::new(max.clone(), 9).unwrap());
        assert_eq!(ones.constant(), Some(true));
        assert_eq!(encode_rule_number(&ones).value(), &max);
        assert!(matches!(
            RuleNumber::new(max + 1u32, 9),
            Err(Error::RuleOutOfRange { bits: 512 })
        ));
        assert!(RuleNumber::from_decimal("256", 3).is_err());
        assert!(RuleNumber::from_decimal("12a", 3).is_err());
        assert!(RuleNumber::from_decimal("", 3).is_err());
    }

    #[test]
    fn gol_table() {
        let tt = gol_truth_table();
        assert_eq!(tt.count_ones(), 140);
        assert_eq!(28 + 56 + 56, 140);
        for i in 0..512 {
            assert_eq!(tt.get(i), gol_brute(&neighborhood_cells(i, 9)), "index {i}");
        }
        assert!(!tt.get(0));
        // dead center, three live neighbors
        for cells in [
            [true, true, true, false, false, false, false, false, false],
            [true, false, false, false, false, false, false, true, true],
            [false, false, true, false, false, true, false, true, false],
        ] {
            assert!(tt.eval(&cells).unwrap());
        }
    }

    #[test]
    fn gol_rule_number_golden() {
        let rn = encode_rule_number(&gol_truth_table());
        let digits = rn.to_decimal();
        assert_eq!(digits.len(), 140);
        assert_eq!(digits, GOL_DECIMAL);
        assert_eq!(
            decode_rule_number(&RuleNumber::from_decimal(GOL_DECIMAL, 9).unwrap()),
            gol_truth_table()
        );
    }

    const GOL_DECIMAL: &str = "47634829485252037513200973884082471888288955642325528262910887637847274372981720534370017768342996036219492316860704401273651054628223608960";

    #[test]
    fn bit_order_round_trip() {
        let tt = gol_truth_table();
        for order in [BitOrder::MsbFirst, BitOrder::LsbFirst] {
            let rn = RuleNumber::encode(&tt, order);
            assert_eq!(rn.decode(order), tt);
        }
        // the center bit is its own mirror, so reversing keeps GoL's symmetry class
        assert_eq!(tt.reversed_significance().count_ones(), 140);
        assert_eq!(tt.reversed_significance().reversed_significance(), tt);
    }

    proptest::proptest! {
        #[test]
        fn decode_encode_round_trip(words in proptest::collection::vec(proptest::prelude::any::<u64>(), 8), small in 0u8..=255) {
            let tt = TruthTable::from_words(9, &words).unwrap();
            proptest::prop_assert_eq!(decode_rule_number(&encode_rule_number(&tt)), tt);
            let e = TruthTable::elementary(small);
            proptest::prop_assert_eq!(decode_rule_number(&encode_rule_number(&e)), e);
        }
    }
}
