//! The squiral block substitution and its supertiles `T_n = mu^n(0)`.

use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grid::{tail_mask, words_for, BinaryGrid, Cell};

/// A 3x3 block substitution on `{0, 1}` whose two images are complements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionRule {
    image0: BinaryGrid,
    image1: BinaryGrid,
    /// `expand[k][byte]`: block row `k` of the images of 8 consecutive cells,
    /// 3 output bits per input bit, LSB-first.
    expand: [[u32; 256]; 3],
}

impl SubstitutionRule {
    /// Builds a rule from its two images. Both must be 3x3 and `image1` must be
    /// the cellwise complement of `image0`.
    pub fn from_images(image0: BinaryGrid, image1: BinaryGrid) -> Result<Self> {
        if image0.dimensions() != (3, 3) || image1.dimensions() != (3, 3) {
            return Err(Error::Argument("rule images must be 3x3".into()));
        }
        if image0.complement() != image1 {
            return Err(Error::Argument(
                "image of 1 must be the complement of the image of 0".into(),
            ));
        }
        let mut expand = [[0u32; 256]; 3];
        for (k, table) in expand.iter_mut().enumerate() {
            for (byte, slot) in table.iter_mut().enumerate() {
                let mut bits = 0u32;
                for t in 0..8 {
                    let image = if (byte >> t) & 1 == 1 {
                        &image1
                    } else {
                        &image0
                    };
                    for dc in 0..3 {
                        if image.bit(k, dc) {
                            bits |= 1 << (3 * t + dc);
                        }
                    }
                }
                *slot = bits;
            }
        }
        Ok(SubstitutionRule {
            image0,
            image1,
            expand,
        })
    }

    pub fn image0(&self) -> &BinaryGrid {
        &self.image0
    }

    pub fn image1(&self) -> &BinaryGrid {
        &self.image1
    }

    pub fn image(&self, cell: Cell) -> &BinaryGrid {
        match cell {
            Cell::Zero => &self.image0,
            Cell::One => &self.image1,
        }
    }

    /// Replaces every cell of `g` by its 3x3 image, subject to `max_side`.
    pub fn inflate_within(&self, g: &BinaryGrid, max_side: usize) -> Result<BinaryGrid> {
        let (rows, cols) = g.dimensions();
        let out_rows = rows.checked_mul(3).filter(|&r| r <= max_side);
        let out_cols = cols.checked_mul(3).filter(|&c| c <= max_side);
        let (Some(out_rows), Some(out_cols)) = (out_rows, out_cols) else {
            return Err(Error::ResourceLimit(format!(
                "inflating a {rows}x{cols} grid exceeds the maximum side length {max_side}"
            )));
        };

        let out_stride = words_for(out_cols);
        let mask = tail_mask(out_cols);
        let src_bytes = cols.div_ceil(8);
        let mut words = vec![0u64; out_rows * out_stride];

        words
            .par_chunks_mut(3 * out_stride)
            .enumerate()
            .for_each(|(row0, block)| {
                let src = g.row_words(row0);
                for (k, out) in block.chunks_exact_mut(out_stride).enumerate() {
                    let table = &self.expand[k];
                    for j in 0..src_bytes {
                        let byte = ((src[j / 8] >> (8 * (j % 8))) & 0xff) as usize;
                        let v = u64::from(table[byte]);
                        let pos = 24 * j;
                        let (w, s) = (pos / 64, pos % 64);
                        out[w] |= v << s;
                        if s > 40 && w + 1 < out_stride {
                            out[w + 1] |= v >> (64 - s);
                        }
                    }
                    // padding cells of the source expand to non-zero blocks
                    if let Some(last) = out.last_mut() {
                        *last &= mask;
                    }
                }
            });

        Ok(BinaryGrid::from_words(out_rows, out_cols, words))
    }
}

/// The rule `0 -> [[1,0,1],[0,0,0],[1,0,1]]`, `1 -> [[0,1,0],[1,1,1],[0,1,0]]`.
pub fn squiral_rule() -> SubstitutionRule {
    let image0 =
        BinaryGrid::from_rows(&[[1u8, 0, 1], [0, 0, 0], [1, 0, 1]]).expect("static rule image");
    let image1 = image0.complement();
    SubstitutionRule::from_images(image0, image1).expect("static rule is complementary")
}

/// One application of `rule` to `g`, bounded by the default maximum side `3^9`.
pub fn inflate(g: &BinaryGrid, rule: &SubstitutionRule) -> Result<BinaryGrid> {
    rule.inflate_within(g, Limits::default().max_side())
}

pub fn complement(g: &BinaryGrid) -> BinaryGrid {
    g.complement()
}

/// `T_n` under the default limits.
pub fn supertile(n: u32) -> Result<BinaryGrid> {
    supertile_within(n, &Limits::default())
}

/// `T_n`, built by inflating `T_0 = 0` `n` times.
pub fn supertile_within(n: u32, limits: &Limits) -> Result<BinaryGrid> {
    check_level(n, limits)?;
    let rule = squiral_rule();
    let mut g = BinaryGrid::zeros(1, 1)?;
    for _ in 0..n {
        g = rule.inflate_within(&g, limits.max_side())?;
    }
    Ok(g)
}

fn check_level(n: u32, limits: &Limits) -> Result<()> {
    if n > limits.max_level {
        return Err(Error::ResourceLimit(format!(
            "supertile level {n} exceeds the maximum level {}",
            limits.max_level
        )));
    }
    Ok(())
}

/// Lazily built, shared supertiles `T_0, T_1, ...`.
#[derive(Debug)]
pub struct Supertiles {
    limits: Limits,
    rule: SubstitutionRule,
    levels: Mutex<Vec<Arc<BinaryGrid>>>,
}

impl Supertiles {
    pub fn new(limits: Limits) -> Self {
        let seed = Arc::new(BinaryGrid::zeros(1, 1).expect("1x1 grid"));
        Supertiles {
            limits,
            rule: squiral_rule(),
            levels: Mutex::new(vec![seed]),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn rule(&self) -> &SubstitutionRule {
        &self.rule
    }

    pub fn get(&self, n: u32) -> Result<Arc<BinaryGrid>> {
        check_level(n, &self.limits)?;
        let mut levels = self.levels.lock().expect("supertile cache poisoned");
        while levels.len() <= n as usize {
            let next = self
                .rule
                .inflate_within(levels.last().expect("seed present"), self.limits.max_side())?;
            levels.push(Arc::new(next));
        }
        Ok(Arc::clone(&levels[n as usize]))
    }
}
