//! `elem:<n>`, `moore2d:<n>` and `table:<path>` rule specs.

use std::fs;
use std::path::Path;

use ca_core::rule::{ELEMENTARY_ARITY, MOORE_ARITY};
use ca_core::{BitOrder, RuleNumber, TruthTable};

use crate::error::{io_err, Result, ToolError};

pub fn parse_rule_spec(text: &str, order: BitOrder) -> Result<TruthTable> {
    let bad = |reason: String| ToolError::RuleSpec {
        spec: text.to_string(),
        reason,
    };
    let (kind, arg) = text
        .split_once(':')
        .ok_or_else(|| bad("expected elem:<n>, moore2d:<n> or table:<path>".into()))?;
    match kind {
        "elem" => {
            let n: u16 = arg
                .parse()
                .map_err(|_| bad(format!("{arg:?} is not an elementary rule number")))?;
            let n = u8::try_from(n).map_err(|_| bad(format!("elementary rule {n} exceeds 255")))?;
            Ok(TruthTable::elementary(n))
        }
        "moore2d" => {
            let rn = RuleNumber::from_decimal(arg, MOORE_ARITY).map_err(|e| bad(e.to_string()))?;
            Ok(rn.decode(order))
        }
        "table" => read_table_file(Path::new(arg)),
        other => Err(bad(format!("unknown rule kind {other:?}"))),
    }
}

/// A single line of `2^m` '0'/'1' characters, index 0 first.
pub fn read_table_file(path: &Path) -> Result<TruthTable> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let line = text.trim_end_matches(['\n', '\r']);
    let format_err = |message: String| ToolError::Format {
        path: path.to_path_buf(),
        line: 1,
        message,
    };
    if line.contains('\n') {
        return Err(format_err("expected a single line".into()));
    }
    let bits = line
        .chars()
        .map(|ch| match ch {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(format_err(format!("unexpected character {other:?}"))),
        })
        .collect::<Result<Vec<bool>>>()?;
    let arity = match bits.len() {
        8 => ELEMENTARY_ARITY,
        512 => MOORE_ARITY,
        n if n.is_power_of_two() && n > 1 => n.trailing_zeros() as usize,
        n => return Err(format_err(format!("{n} entries is not a power of two"))),
    };
    Ok(TruthTable::from_bits(arity, &bits)?)
}

/// Canonical spec text for a table: `elem:<n>` for arity 3, `moore2d:<n>` otherwise.
pub fn spec_string(tt: &TruthTable, order: BitOrder) -> String {
    let rn = RuleNumber::encode(tt, order);
    if tt.arity() == ELEMENTARY_ARITY {
        format!("elem:{}", rn.to_decimal())
    } else {
        format!("moore2d:{}", rn.to_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ca_core::gol_truth_table;
    use std::io::Write;

    #[test]
    fn elementary_specs() {
        let msb = BitOrder::MsbFirst;
        assert_eq!(parse_rule_spec("elem:94", msb).unwrap(), TruthTable::elementary(94));
        assert!(parse_rule_spec("elem:256", msb).is_err());
        assert!(parse_rule_spec("elem:-1", msb).is_err());
        assert!(parse_rule_spec("elem:", msb).is_err());
        assert!(parse_rule_spec("94", msb).is_err());
        assert!(parse_rule_spec("hex:5e", msb).is_err());
    }

    #[test]
    fn moore_spec_and_bit_order() {
        let gol = gol_truth_table();
        for order in [BitOrder::MsbFirst, BitOrder::LsbFirst] {
            let spec = spec_string(&gol, order);
            assert_eq!(parse_rule_spec(&spec, order).unwrap(), gol);
        }
        // GoL is symmetric under the reflection that reverses significance
        assert_eq!(
            spec_string(&gol, BitOrder::MsbFirst),
            spec_string(&gol, BitOrder::LsbFirst)
        );
        assert!(parse_rule_spec("moore2d:12a", BitOrder::MsbFirst).is_err());
        let too_big = format!("moore2d:{}", num_two_pow_512());
        assert!(parse_rule_spec(&too_big, BitOrder::MsbFirst).is_err());
    }

    fn num_two_pow_512() -> String {
        // 2^512 by repeated doubling of a decimal digit vector
        let mut digits = vec![1u8];
        for _ in 0..512 {
            let mut carry = 0;
            for d in digits.iter_mut() {
                let v = *d * 2 + carry;
                *d = v % 10;
                carry = v / 10;
            }
            if carry > 0 {
                digits.push(carry);
            }
        }
        digits.iter().rev().map(|d| char::from(b'0' + d)).collect()
    }

    #[test]
    fn table_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r94.txt");
        // R94 outputs by index 0..7
        std::fs::File::create(&p).unwrap().write_all(b"01111010\n").unwrap();
        let spec = format!("table:{}", p.display());
        assert_eq!(
            parse_rule_spec(&spec, BitOrder::MsbFirst).unwrap(),
            TruthTable::elementary(94)
        );

        for (name, body) in [("short", "0111101"), ("chars", "0111101x"), ("two", "0111\n1010")] {
            let p = dir.path().join(name);
            std::fs::write(&p, body).unwrap();
            assert!(read_table_file(&p).is_err(), "{name}");
        }
        assert!(read_table_file(&dir.path().join("missing")).is_err());
    }
}
