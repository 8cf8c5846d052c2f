//! Bit-packed binary matrices.
//!
//! Rows are stored LSB-first in 64-bit words and padded to a whole number of
//! words, so a row slice can be pulled out with one shift/or per output word.
//! Padding bits are always zero; equality and hashing rely on that.

use std::fmt;

use crate::error::{Error, Result};

/// One symbol of the binary alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero,
    One,
}

impl Cell {
    pub fn complement(self) -> Cell {
        match self {
            Cell::Zero => Cell::One,
            Cell::One => Cell::Zero,
        }
    }

    pub fn from_bit(bit: bool) -> Cell {
        if bit {
            Cell::One
        } else {
            Cell::Zero
        }
    }

    pub fn is_one(self) -> bool {
        self == Cell::One
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_one() { "1" } else { "0" })
    }
}

pub(crate) const fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// Mask keeping the low `width % 64` bits, or all bits when `width` is a multiple of 64.
pub(crate) const fn tail_mask(width: usize) -> u64 {
    match width % 64 {
        0 => u64::MAX,
        rem => (1u64 << rem) - 1,
    }
}

/// A `rows x cols` matrix over `{0, 1}` addressed 1-based with row 1 on top.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryGrid {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BinaryGrid {
    /// An all-zero grid.
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Argument(format!(
                "grid dimensions must be positive, got {rows}x{cols}"
            )));
        }
        let stride = words_for(cols);
        let len = rows
            .checked_mul(stride)
            .ok_or_else(|| Error::ResourceLimit(format!("{rows}x{cols} grid")))?;
        Ok(BinaryGrid {
            rows,
            cols,
            stride,
            words: vec![0; len],
        })
    }

    /// Builds a grid from rows of `0`/`1` values. Any non-zero value counts as 1.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut grid = BinaryGrid::zeros(rows.len(), cols)?;
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Argument(format!(
                    "ragged rows: row {} has {} cells, expected {cols}",
                    r + 1,
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                grid.set_bit(r, c, v != 0);
            }
        }
        Ok(grid)
    }

    /// Parses rows of `0`/`1` characters separated by newlines or `/`.
    pub fn parse(text: &str) -> Result<Self> {
        let rows = text
            .split(['\n', '/'])
            .map(str::trim)
            .filter(|line| !line.is_empty())
            .map(|line| {
                line.chars()
                    .filter(|ch| !ch.is_whitespace())
                    .map(|ch| match ch {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        other => Err(Error::Argument(format!("unexpected symbol {other:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryGrid::from_rows(&rows)
    }

    pub(crate) fn from_words(rows: usize, cols: usize, words: Vec<u64>) -> Self {
        let stride = words_for(cols);
        debug_assert_eq!(words.len(), rows * stride);
        BinaryGrid {
            rows,
            cols,
            stride,
            words,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of 64-bit words per stored row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn row_words(&self, row0: usize) -> &[u64] {
        &self.words[row0 * self.stride..(row0 + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn bit(&self, row0: usize, col0: usize) -> bool {
        (self.words[row0 * self.stride + col0 / 64] >> (col0 % 64)) & 1 == 1
    }

    #[inline]
    fn set_bit(&mut self, row0: usize, col0: usize, value: bool) {
        let word = &mut self.words[row0 * self.stride + col0 / 64];
        let mask = 1u64 << (col0 % 64);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    /// Cell at 1-based `(r, c)`.
    ///
    /// Panics if the position lies outside the grid.
    pub fn get(&self, r: usize, c: usize) -> Cell {
        assert!(
            (1..=self.rows).contains(&r) && (1..=self.cols).contains(&c),
            "({r}, {c}) outside {}x{} grid",
            self.rows,
            self.cols
        );
        Cell::from_bit(self.bit(r - 1, c - 1))
    }

    /// Sets the cell at 1-based `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, cell: Cell) {
        assert!(
            (1..=self.rows).contains(&r) && (1..=self.cols).contains(&c),
            "({r}, {c}) outside {}x{} grid",
            self.rows,
            self.cols
        );
        self.set_bit(r - 1, c - 1, cell.is_one());
    }

    /// Copies `width` bits of row `row0` starting at column `col0` (both 0-based)
    /// into `out`, LSB-first. `out` must hold exactly `words_for(width)` words.
    #[inline]
    pub(crate) fn extract_bits(&self, row0: usize, col0: usize, width: usize, out: &mut [u64]) {
        debug_assert!(col0 + width <= self.cols);
        debug_assert_eq!(out.len(), words_for(width));
        let src = self.row_words(row0);
        let base = col0 / 64;
        let shift = col0 % 64;
        if shift == 0 {
            out.copy_from_slice(&src[base..base + out.len()]);
        } else {
            for (k, slot) in out.iter_mut().enumerate() {
                let lo = src[base + k] >> shift;
                let hi = src.get(base + k + 1).map_or(0, |w| w << (64 - shift));
                *slot = lo | hi;
            }
        }
        if let Some(last) = out.last_mut() {
            *last &= tail_mask(width);
        }
    }

    /// Cellwise complement; padding stays zero.
    pub fn complement(&self) -> BinaryGrid {
        let mut out = self.clone();
        let mask = tail_mask(self.cols);
        for row in out.words.chunks_exact_mut(self.stride) {
            for w in row.iter_mut() {
                *w = !*w;
            }
            if let Some(last) = row.last_mut() {
                *last &= mask;
            }
        }
        out
    }

    /// Cellwise exclusive or of two equally sized grids.
    pub fn xor(&self, other: &BinaryGrid) -> Result<BinaryGrid> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::Argument(format!(
                "cannot xor {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(BinaryGrid::from_words(self.rows, self.cols, words))
    }

    /// The `h x w` block with its upper left corner at 1-based `(r, c)`.
    pub fn subgrid(&self, r: usize, c: usize, h: usize, w: usize) -> Result<BinaryGrid> {
        self.check_window(r, c, h, w)?;
        let mut out = BinaryGrid::zeros(h, w)?;
        for dr in 0..h {
            let stride = out.stride;
            let dst = &mut out.words[dr * stride..(dr + 1) * stride];
            self.extract_bits(r - 1 + dr, c - 1, w, dst);
        }
        Ok(out)
    }

    pub(crate) fn check_window(&self, r: usize, c: usize, h: usize, w: usize) -> Result<()> {
        if h == 0 || w == 0 {
            return Err(Error::Argument(format!(
                "window dimensions must be positive, got {h}x{w}"
            )));
        }
        let fits = r >= 1 && c >= 1 && r + h - 1 <= self.rows && c + w - 1 <= self.cols;
        if !fits {
            return Err(Error::Bounds {
                r,
                c,
                h,
                w,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Cells as rows of 0/1 bytes, row 1 first.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| u8::from(self.bit(r, c))).collect())
            .collect()
    }
}

impl fmt::Display for BinaryGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            let line: String = (0..self.cols)
                .map(|c| if self.bit(r, c) { '1' } else { '0' })
                .collect();
            f.write_str(&line)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols <= 1024 {
            write!(f, "BinaryGrid({}x{})\n{}", self.rows, self.cols, self)
        } else {
            write!(
                f,
                "BinaryGrid({}x{}, {} ones)",
                self.rows,
                self.cols,
                self.count_ones()
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_complement_is_involution() {
        for cell in [Cell::Zero, Cell::One] {
            assert_eq!(cell.complement().complement(), cell);
            assert_ne!(cell.complement(), cell);
        }
    }

    #[test]
    fn zero_dimensions_rejected() {
        assert!(matches!(BinaryGrid::zeros(0, 3), Err(Error::Argument(_))));
        assert!(matches!(BinaryGrid::zeros(3, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn parse_and_display_agree() {
        let g = BinaryGrid::parse("101/000/101").unwrap();
        assert_eq!(g.dimensions(), (3, 3));
        assert_eq!(g.to_string(), "101\n000\n101");
        assert_eq!(g.get(1, 1), Cell::One);
        assert_eq!(g.get(2, 2), Cell::Zero);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows: [&[u8]; 2] = [&[1, 0], &[1]];
        assert!(BinaryGrid::from_rows(&rows).is_err());
    }

    #[test]
    fn complement_keeps_padding_clear() {
        let g = BinaryGrid::zeros(2, 70).unwrap();
        let c = g.complement();
        assert_eq!(c.count_ones(), 140);
        assert_eq!(c.complement(), g);
    }

    #[test]
    fn extract_across_word_boundary() {
        let mut g = BinaryGrid::zeros(1, 200).unwrap();
        for c in (1..=200).step_by(3) {
            g.set(1, c, Cell::One);
        }
        for col0 in [0, 1, 63, 64, 65, 100, 130] {
            let width = 70.min(200 - col0);
            let mut out = vec![0; words_for(width)];
            g.extract_bits(0, col0, width, &mut out);
            for k in 0..width {
                let got = (out[k / 64] >> (k % 64)) & 1 == 1;
                assert_eq!(got, g.bit(0, col0 + k), "col0={col0} k={k}");
            }
            assert_eq!(out.last().unwrap() & !tail_mask(width), 0);
        }
    }

    #[test]
    fn subgrid_bounds() {
        let g = BinaryGrid::parse("101/000/101").unwrap();
        assert_eq!(g.subgrid(2, 2, 2, 2).unwrap().to_string(), "00\n01");
        assert!(matches!(g.subgrid(2, 2, 3, 1), Err(Error::Bounds { .. })));
        assert!(matches!(g.subgrid(0, 1, 1, 1), Err(Error::Bounds { .. })));
        assert!(matches!(g.subgrid(1, 1, 0, 1), Err(Error::Argument(_))));
    }
}
