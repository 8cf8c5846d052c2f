//! Byte-exact renderers for grids and sequence tables.

use std::io::{self, Write};

use serde_json::Value;
use squiral::{BinaryGrid, ComplexityTriple, Count};

/// Rows of `0`/`1` characters, row 1 first, one line each.
pub fn write_ascii<W: Write>(out: &mut W, g: &BinaryGrid) -> io::Result<()> {
    let mut line = Vec::with_capacity(g.cols() + 1);
    for r in 1..=g.rows() {
        line.clear();
        line.extend((1..=g.cols()).map(|c| if g.get(r, c).is_one() { b'1' } else { b'0' }));
        line.push(b'\n');
        out.write_all(&line)?;
    }
    Ok(())
}

/// Plain PBM (`P1`): header, then one line of digits per row; 1 is symbol 1.
pub fn write_pbm_plain<W: Write>(out: &mut W, g: &BinaryGrid) -> io::Result<()> {
    writeln!(out, "P1\n{} {}", g.cols(), g.rows())?;
    write_ascii(out, g)
}

/// Raw PBM (`P4`): rows packed MSB-first, each padded to a whole byte.
pub fn write_pbm_raw<W: Write>(out: &mut W, g: &BinaryGrid) -> io::Result<()> {
    writeln!(out, "P4\n{} {}", g.cols(), g.rows())?;
    let mut row = vec![0u8; g.cols().div_ceil(8)];
    for r in 1..=g.rows() {
        row.fill(0);
        for c in 1..=g.cols() {
            if g.get(r, c).is_one() {
                row[(c - 1) / 8] |= 0x80 >> ((c - 1) % 8);
            }
        }
        out.write_all(&row)?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(out: &mut W, rows: &[ComplexityTriple]) -> io::Result<()> {
    out.write_all(b"n,A,B,C\n")?;
    for t in rows {
        writeln!(out, "{},{},{},{}", t.n, t.a, t.b, t.c)?;
    }
    Ok(())
}

pub fn write_table<W: Write>(out: &mut W, rows: &[ComplexityTriple]) -> io::Result<()> {
    writeln!(out, "{:>8} {:>14} {:>14} {:>14}", "n", "A", "B", "C")?;
    for t in rows {
        writeln!(out, "{:>8} {:>14} {:>14} {:>14}", t.n, t.a, t.b, t.c)?;
    }
    Ok(())
}

pub fn write_json<W: Write>(out: &mut W, rows: &[ComplexityTriple]) -> io::Result<()> {
    serde_json::to_writer(&mut *out, rows)?;
    out.write_all(b"\n")
}

/// A count as a JSON number when it fits in 64 bits, else as a decimal string.
pub fn count_value(v: Count) -> Value {
    match i64::try_from(v) {
        Ok(small) => Value::from(small),
        Err(_) => Value::from(v.to_string()),
    }
}
