//! Canonical pattern keys, window extraction and exact pattern sets.
//!
//! A key stores the full bit payload of a pattern, one group of
//! `ceil(cols / 64)` words per row. Set membership is decided by comparing
//! payloads, never by a fingerprint alone.

use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grid::{words_for, BinaryGrid, Cell};

/// Exact encoding of one `rows x cols` pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternKey {
    rows: usize,
    cols: usize,
    payload: Box<[u64]>,
}

impl PatternKey {
    pub fn from_grid(g: &BinaryGrid) -> PatternKey {
        PatternKey {
            rows: g.rows(),
            cols: g.cols(),
            payload: g.words().into(),
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

    pub fn payload(&self) -> &[u64] {
        &self.payload
    }

    /// Cell at 1-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> Cell {
        assert!((1..=self.rows).contains(&r) && (1..=self.cols).contains(&c));
        let stride = words_for(self.cols);
        let word = self.payload[(r - 1) * stride + (c - 1) / 64];
        Cell::from_bit((word >> ((c - 1) % 64)) & 1 == 1)
    }

    pub fn to_grid(&self) -> BinaryGrid {
        BinaryGrid::from_words(self.rows, self.cols, self.payload.to_vec())
    }
}

impl fmt::Debug for PatternKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PatternKey({}x{}: {})",
            self.rows,
            self.cols,
            self.to_grid().to_string().replace('\n', "/")
        )
    }
}

/// A deduplicated set of patterns sharing one size.
#[derive(Clone, Debug)]
pub struct PatternSet {
    rows: usize,
    cols: usize,
    members: FxHashSet<Box<[u64]>>,
}

impl PatternSet {
    pub fn new(rows: usize, cols: usize) -> Self {
        PatternSet {
            rows,
            cols,
            members: FxHashSet::default(),
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

    /// Number of distinct patterns.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Adds a key; returns `false` if it was already present.
    pub fn insert(&mut self, key: PatternKey) -> Result<bool> {
        self.check_dims(&key)?;
        Ok(self.members.insert(key.payload))
    }

    pub fn contains(&self, key: &PatternKey) -> bool {
        key.dimensions() == self.dimensions() && self.members.contains(&key.payload[..])
    }

    fn check_dims(&self, key: &PatternKey) -> Result<()> {
        if key.dimensions() != self.dimensions() {
            return Err(Error::Argument(format!(
                "{}x{} key does not belong in a {}x{} set",
                key.rows, key.cols, self.rows, self.cols
            )));
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = PatternKey> + '_ {
        self.members.iter().map(|payload| PatternKey {
            rows: self.rows,
            cols: self.cols,
            payload: payload.clone(),
        })
    }

    /// Members in ascending payload order; stable across runs and thread counts.
    pub fn sorted_keys(&self) -> Vec<PatternKey> {
        let mut keys: Vec<_> = self.iter().collect();
        keys.sort();
        keys
    }

    /// Adds every member of `other`. Sizes must match.
    pub fn union_with(&mut self, other: &PatternSet) -> Result<()> {
        self.check_same_size(other)?;
        self.members.extend(other.members.iter().cloned());
        Ok(())
    }

    fn absorb(&mut self, mut other: PatternSet) {
        if other.members.len() > self.members.len() {
            std::mem::swap(&mut self.members, &mut other.members);
        }
        self.members.extend(other.members);
    }

    fn check_same_size(&self, other: &PatternSet) -> Result<()> {
        if self.dimensions() != other.dimensions() {
            return Err(Error::Argument(format!(
                "cannot combine {}x{} and {}x{} pattern sets",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.dimensions() == other.dimensions() && self.members.is_subset(&other.members)
    }

    pub fn is_disjoint(&self, other: &PatternSet) -> bool {
        self.dimensions() != other.dimensions() || self.members.is_disjoint(&other.members)
    }

    pub fn intersection_len(&self, other: &PatternSet) -> usize {
        if self.dimensions() != other.dimensions() {
            return 0;
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .members
            .iter()
            .filter(|p| large.members.contains(*p))
            .count()
    }

    /// Bytes of pattern payload currently held.
    pub fn payload_bytes(&self) -> u64 {
        self.members.len() as u64 * key_bytes(self.rows, self.cols)
    }
}

impl PartialEq for PatternSet {
    fn eq(&self, other: &Self) -> bool {
        self.dimensions() == other.dimensions() && self.members == other.members
    }
}

impl Eq for PatternSet {}

fn key_bytes(rows: usize, cols: usize) -> u64 {
    (rows * words_for(cols) * 8) as u64
}

/// True iff both sets have the same size and exactly the same members.
pub fn set_equals(a: &PatternSet, b: &PatternSet) -> bool {
    a == b
}

/// The `h x w` pattern with its upper left corner at 1-based `(r, c)`.
pub fn window(g: &BinaryGrid, r: usize, c: usize, h: usize, w: usize) -> Result<PatternKey> {
    g.check_window(r, c, h, w)?;
    let kw = words_for(w);
    let mut payload = vec![0u64; h * kw];
    for (dr, row) in payload.chunks_exact_mut(kw).enumerate() {
        g.extract_bits(r - 1 + dr, c - 1, w, row);
    }
    Ok(PatternKey {
        rows: h,
        cols: w,
        payload: payload.into(),
    })
}

/// All distinct `h x w` windows of `g`, under the default memory budget.
pub fn enumerate_windows(g: &BinaryGrid, h: usize, w: usize) -> Result<PatternSet> {
    enumerate_windows_within(g, h, w, Limits::default().memory_budget)
}

pub fn enumerate_windows_within(
    g: &BinaryGrid,
    h: usize,
    w: usize,
    memory_budget: u64,
) -> Result<PatternSet> {
    scan(g, h, w, Phase::ALL, memory_budget)
}

/// Distinct `h x w` windows whose 1-based top-left corner `(r, c)` satisfies
/// `r = i (mod 3)` and `c = j (mod 3)`, with `i, j` in `1..=3`.
pub fn enumerate_phase_windows(
    g: &BinaryGrid,
    h: usize,
    w: usize,
    i: usize,
    j: usize,
) -> Result<PatternSet> {
    enumerate_phase_windows_within(g, h, w, i, j, Limits::default().memory_budget)
}

pub fn enumerate_phase_windows_within(
    g: &BinaryGrid,
    h: usize,
    w: usize,
    i: usize,
    j: usize,
    memory_budget: u64,
) -> Result<PatternSet> {
    check_phase(i, j)?;
    let phase = Phase {
        row_start: i - 1,
        col_start: j - 1,
        step: 3,
    };
    scan(g, h, w, phase, memory_budget)
}

pub(crate) fn check_phase(i: usize, j: usize) -> Result<()> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::Argument(format!("phase ({i}, {j}) outside 1..=3")));
    }
    Ok(())
}

/// 0-based first row/column and the stride between scanned positions.
#[derive(Clone, Copy)]
struct Phase {
    row_start: usize,
    col_start: usize,
    step: usize,
}

impl Phase {
    const ALL: Phase = Phase {
        row_start: 0,
        col_start: 0,
        step: 1,
    };
}

struct Local {
    set: PatternSet,
    slices: Vec<u64>,
}

fn scan(g: &BinaryGrid, h: usize, w: usize, phase: Phase, budget: u64) -> Result<PatternSet> {
    if h == 0 || w == 0 {
        return Err(Error::Argument(format!(
            "window dimensions must be positive, got {h}x{w}"
        )));
    }
    let (rows, cols) = g.dimensions();
    if h > rows || w > cols {
        return Ok(PatternSet::new(h, w));
    }
    let kw = words_for(w);
    let per_key = key_bytes(h, w);
    let last_col = cols - w;
    let last_row = rows - h;
    if phase.col_start > last_col || phase.row_start > last_row {
        return Ok(PatternSet::new(h, w));
    }
    let col_offsets: Vec<usize> = (phase.col_start..=last_col).step_by(phase.step).collect();

    let merged = col_offsets
        .into_par_iter()
        .try_fold(
            || Local {
                set: PatternSet::new(h, w),
                slices: vec![0u64; rows * kw],
            },
            |mut local, col0| {
                // One slice per row for this column offset; each window is then
                // a contiguous run of `h` slices.
                let rows_needed = rows.min(last_row + h);
                for (row0, out) in local.slices[..rows_needed * kw]
                    .chunks_exact_mut(kw)
                    .enumerate()
                    .skip(phase.row_start)
                {
                    g.extract_bits(row0, col0, w, out);
                }
                for row0 in (phase.row_start..=last_row).step_by(phase.step) {
                    let key = &local.slices[row0 * kw..(row0 + h) * kw];
                    if !local.set.members.contains(key) {
                        local.set.members.insert(key.into());
                        if local.set.members.len() as u64 * per_key > budget {
                            return Err(over_budget(h, w, budget));
                        }
                    }
                }
                Ok(local)
            },
        )
        .map(|local: Result<Local>| local.map(|l| l.set))
        .try_reduce(
            || PatternSet::new(h, w),
            |mut a, b| {
                a.absorb(b);
                if a.payload_bytes() > budget {
                    return Err(over_budget(h, w, budget));
                }
                Ok(a)
            },
        )?;
    Ok(merged)
}

fn over_budget(h: usize, w: usize, budget: u64) -> Error {
    Error::ResourceLimit(format!(
        "{h}x{w} pattern set exceeds the memory budget of {budget} bytes"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::supertile;

    #[test]
    fn corner_window() {
        let t1 = supertile(1).unwrap();
        let key = window(&t1, 1, 1, 1, 1).unwrap();
        assert_eq!(key.dimensions(), (1, 1));
        assert_eq!(key.get(1, 1), Cell::One);
    }

    #[test]
    fn center_window_is_previous_supertile() {
        let t2 = supertile(2).unwrap();
        let key = window(&t2, 4, 4, 3, 3).unwrap();
        assert_eq!(key, PatternKey::from_grid(&supertile(1).unwrap()));
    }

    #[test]
    fn full_window_is_grid() {
        let t3 = supertile(3).unwrap();
        let key = window(&t3, 1, 1, 27, 27).unwrap();
        assert_eq!(key.to_grid(), t3);
    }

    #[test]
    fn window_errors() {
        let t1 = supertile(1).unwrap();
        assert!(matches!(window(&t1, 2, 2, 3, 1), Err(Error::Bounds { .. })));
        assert!(matches!(window(&t1, 1, 1, 0, 2), Err(Error::Argument(_))));
        assert!(matches!(
            enumerate_windows(&t1, 0, 1),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            enumerate_phase_windows(&t1, 1, 1, 0, 1),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            enumerate_phase_windows(&t1, 1, 1, 1, 4),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn small_counts() {
        let t1 = supertile(1).unwrap();
        let t2 = supertile(2).unwrap();
        assert_eq!(enumerate_windows(&t2, 2, 2).unwrap().len(), 14);
        assert_eq!(enumerate_windows(&t1, 1, 1).unwrap().len(), 2);
        assert!(enumerate_windows(&t1, 4, 4).unwrap().is_empty());
    }

    #[test]
    fn plateau_at_two_by_two() {
        let p1 = enumerate_windows(&supertile(1).unwrap(), 2, 2).unwrap();
        let p2 = enumerate_windows(&supertile(2).unwrap(), 2, 2).unwrap();
        let p3 = enumerate_windows(&supertile(3).unwrap(), 2, 2).unwrap();
        assert!(set_equals(&p2, &p3));
        assert!(!set_equals(&p1, &p2));
        assert!(p1.len() <= 4);
        assert!(set_equals(&p1, &p1));
    }

    #[test]
    fn set_equality_needs_same_members() {
        let t = supertile(3).unwrap();
        let mut a = PatternSet::new(2, 2);
        let mut b = PatternSet::new(2, 2);
        a.insert(window(&t, 1, 1, 2, 2).unwrap()).unwrap();
        b.insert(window(&t, 4, 4, 2, 2).unwrap()).unwrap();
        assert_ne!(
            window(&t, 1, 1, 2, 2).unwrap(),
            window(&t, 4, 4, 2, 2).unwrap()
        );
        assert_eq!(a.len(), b.len());
        assert!(!set_equals(&a, &b));
        assert!(!set_equals(&PatternSet::new(2, 3), &PatternSet::new(3, 2)));
    }

    #[test]
    fn duplicate_insert_is_noop() {
        let t = supertile(2).unwrap();
        let mut s = PatternSet::new(2, 2);
        let k = window(&t, 1, 1, 2, 2).unwrap();
        assert!(s.insert(k.clone()).unwrap());
        assert!(!s.insert(k.clone()).unwrap());
        assert_eq!(s.len(), 1);
        assert!(s.contains(&k));
        assert!(s.insert(window(&t, 1, 1, 3, 2).unwrap()).is_err());
    }

    #[test]
    fn phases_partition_positions() {
        let t = supertile(4).unwrap();
        for (h, w) in [(2, 2), (4, 4), (3, 5)] {
            let all = enumerate_windows(&t, h, w).unwrap();
            let mut union = PatternSet::new(h, w);
            for i in 1..=3 {
                for j in 1..=3 {
                    let part = enumerate_phase_windows(&t, h, w, i, j).unwrap();
                    assert!(part.is_subset(&all));
                    union.union_with(&part).unwrap();
                }
            }
            assert!(set_equals(&union, &all), "{h}x{w}");
        }
    }

    #[test]
    fn phase_classes_at_four() {
        let t = supertile(4).unwrap();
        let classes: Vec<_> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .map(|(i, j)| enumerate_phase_windows(&t, 4, 4, i, j).unwrap())
            .collect();
        for (a, class) in classes.iter().enumerate() {
            assert_eq!(class.len(), 14);
            for other in &classes[a + 1..] {
                assert!(class.is_disjoint(other));
            }
        }
    }

    #[test]
    fn memory_budget_enforced() {
        let t = supertile(4).unwrap();
        let err = enumerate_windows_within(&t, 8, 8, 64).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn wide_windows_cross_words() {
        let t = supertile(5).unwrap();
        let key = window(&t, 7, 60, 3, 100).unwrap();
        for r in 1..=3 {
            for c in 1..=100 {
                assert_eq!(key.get(r, c), t.get(6 + r, 59 + c));
            }
        }
    }
}
