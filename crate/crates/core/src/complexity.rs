//! Brute-force pattern counts certified by the plateau argument, and
//! executable checks of the structural lemmas behind the recursions.
//!
//! If two consecutive supertiles carry the same `h x w` pattern set (and the
//! window fits in the smaller one), no larger supertile adds anything, so the
//! set is the pattern set of the whole tiling. [`Oracle`] searches for that
//! plateau and caches the result per window size.

use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grid::BinaryGrid;
use crate::pattern::{
    check_phase, enumerate_phase_windows_within, enumerate_windows_within, set_equals, window,
    PatternSet,
};
use crate::sequences::{ComplexityTriple, Count};
use crate::substitution::Supertiles;

/// A pattern set together with the level at which it stopped growing.
#[derive(Clone, Debug)]
pub struct SaturationResult {
    pub patterns: PatternSet,
    /// The `n` with `P(T_n) = P(T_{n+1})` when certified, else the last level tried.
    pub level: u32,
    pub certified: bool,
}

/// Outcome of checking that the nine phase classes partition a pattern set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub rows: usize,
    pub cols: usize,
    /// `|P_{i,j}|` in row-major `(i, j)` order.
    pub class_sizes: [usize; 9],
    pub total: usize,
    pub non_empty: bool,
    pub pairwise_disjoint: bool,
    pub union_matches: bool,
}

impl PartitionReport {
    pub fn holds(&self) -> bool {
        self.non_empty && self.pairwise_disjoint && self.union_matches
    }
}

/// Outcome of one extension check: `|P_{3,3}((5+3s) x (5+3t))|` against
/// `|P_{i,j}((m+3s) x (n+3t))|` for the nine admissible `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub s: usize,
    pub t: usize,
    pub i: usize,
    pub j: usize,
    pub reference: usize,
    /// `((rows, cols), cardinality)` for each extended size.
    pub extended: Vec<((usize, usize), usize)>,
}

impl ExtensionReport {
    pub fn holds(&self) -> bool {
        self.extended.iter().all(|&(_, n)| n == self.reference)
    }
}

/// Smallest `L` with `3^L >= side`.
pub fn starting_level(side: usize) -> u32 {
    let mut level = 0;
    let mut reach = 1usize;
    while reach < side {
        reach = reach.saturating_mul(3);
        level += 1;
    }
    level
}

/// Brute-force enumerator over shared supertiles.
#[derive(Debug)]
pub struct Oracle {
    limits: Limits,
    tiles: Supertiles,
    saturated: Mutex<FxHashMap<(usize, usize), Arc<SaturationResult>>>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(Limits::default())
    }
}

impl Oracle {
    pub fn new(limits: Limits) -> Self {
        // the search compares level L with L + 1 and the +2 spot check needs one more
        let generation = Limits {
            max_level: limits.max_level.max(limits.saturation_level),
            ..limits
        };
        Oracle {
            limits,
            tiles: Supertiles::new(generation),
            saturated: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn supertile(&self, n: u32) -> Result<Arc<BinaryGrid>> {
        self.tiles.get(n)
    }

    fn windows_at(&self, level: u32, h: usize, w: usize) -> Result<PatternSet> {
        let tile = self.supertile(level)?;
        enumerate_windows_within(&tile, h, w, self.limits.memory_budget)
    }

    /// Searches for the first level `L >= starting_level(max(h, w))` with
    /// `P(T_L, h x w) = P(T_{L+1}, h x w)`, up to the saturation budget.
    pub fn saturated_pattern_set(&self, h: usize, w: usize) -> Result<Arc<SaturationResult>> {
        if h == 0 || w == 0 {
            return Err(Error::Argument(format!(
                "pattern dimensions must be positive, got {h}x{w}"
            )));
        }
        if let Some(hit) = self.cache().get(&(h, w)) {
            return Ok(Arc::clone(hit));
        }
        let budget = self.limits.saturation_level;
        let mut level = starting_level(h.max(w));
        if level > budget {
            return Err(Error::ResourceLimit(format!(
                "{h}x{w} patterns need supertile level {level}, above the budget {budget}"
            )));
        }
        let mut current = self.windows_at(level, h, w)?;
        let result = loop {
            if level + 1 > budget {
                break SaturationResult {
                    patterns: current,
                    level,
                    certified: false,
                };
            }
            let next = self.windows_at(level + 1, h, w)?;
            if set_equals(&current, &next) {
                break SaturationResult {
                    patterns: current,
                    level,
                    certified: true,
                };
            }
            current = next;
            level += 1;
        };
        let result = Arc::new(result);
        if result.certified {
            self.cache().insert((h, w), Arc::clone(&result));
        }
        Ok(result)
    }

    fn cache(&self) -> std::sync::MutexGuard<'_, FxHashMap<(usize, usize), Arc<SaturationResult>>> {
        self.saturated.lock().expect("saturation cache poisoned")
    }

    /// `P(T, h x w)`, or [`Error::Unverified`] when no plateau was found.
    pub fn pattern_set(&self, h: usize, w: usize) -> Result<Arc<SaturationResult>> {
        let sat = self.saturated_pattern_set(h, w)?;
        if !sat.certified {
            return Err(Error::Unverified {
                h,
                w,
                level: sat.level,
            });
        }
        Ok(sat)
    }

    /// `|P(T, h x w)|`.
    pub fn count(&self, h: usize, w: usize) -> Result<usize> {
        Ok(self.pattern_set(h, w)?.patterns.len())
    }

    /// `(A_n, B_n, C_n)` by direct enumeration.
    pub fn brute_force_triple(&self, n: u64) -> Result<ComplexityTriple> {
        if n == 0 {
            return Err(Error::Domain(
                "pattern counts are defined for n >= 1".into(),
            ));
        }
        let side = usize::try_from(n).map_err(|_| Error::ResourceLimit(format!("n = {n}")))?;
        let a = self.count(side, side)?;
        let b = self.count(side, side + 1)?;
        let c = self.count(side + 1, side)?;
        Ok(ComplexityTriple::new(n, a as Count, b as Count, c as Count))
    }

    /// Checks that the certified set at level `L` also equals `P(T_{L+2})`.
    pub fn plateau_holds_two_levels_on(&self, h: usize, w: usize) -> Result<bool> {
        let sat = self.pattern_set(h, w)?;
        let further = self.windows_at(sat.level + 2, h, w)?;
        Ok(set_equals(&sat.patterns, &further))
    }

    /// `P(T_n, m x m) ⊆ P(T_{n+1}, m x m)`.
    pub fn inclusion_holds(&self, m: usize, n: u32) -> Result<bool> {
        let lower = self.windows_at(n, m, m)?;
        let upper = self.windows_at(n + 1, m, m)?;
        Ok(lower.is_subset(&upper))
    }

    /// `{ mu(x)[i, j, h x w] : x in P(T, h x w) }`, computed literally.
    pub fn phase_class_via_mu(&self, h: usize, w: usize, i: usize, j: usize) -> Result<PatternSet> {
        check_phase(i, j)?;
        let sat = self.pattern_set(h, w)?;
        let rule = self.tiles.rule();
        let mut class = PatternSet::new(h, w);
        for x in sat.patterns.iter() {
            let image = rule.inflate_within(&x.to_grid(), usize::MAX)?;
            class.insert(window(&image, i, j, h, w)?)?;
        }
        Ok(class)
    }

    /// Windows of phase `(i, j)` in the supertile one level above the plateau.
    pub fn phase_class_by_position(
        &self,
        h: usize,
        w: usize,
        i: usize,
        j: usize,
    ) -> Result<PatternSet> {
        check_phase(i, j)?;
        let sat = self.pattern_set(h, w)?;
        let tile = self.supertile(sat.level + 1)?;
        enumerate_phase_windows_within(&tile, h, w, i, j, self.limits.memory_budget)
    }

    /// The nine classes `P_{i,j}` in row-major `(i, j)` order.
    pub fn phase_classes(&self, h: usize, w: usize) -> Result<Vec<PatternSet>> {
        let mut classes = Vec::with_capacity(9);
        for i in 1..=3 {
            for j in 1..=3 {
                classes.push(self.phase_class_via_mu(h, w, i, j)?);
            }
        }
        Ok(classes)
    }

    /// Whether the nine phase classes are non-empty, pairwise disjoint and
    /// cover `P(T, h x w)`.
    pub fn verify_partition(&self, h: usize, w: usize) -> Result<PartitionReport> {
        let full = self.pattern_set(h, w)?;
        let classes = self.phase_classes(h, w)?;
        let mut class_sizes = [0usize; 9];
        let mut union = PatternSet::new(h, w);
        let mut pairwise_disjoint = true;
        for (a, class) in classes.iter().enumerate() {
            class_sizes[a] = class.len();
            union.union_with(class)?;
            pairwise_disjoint &= classes[a + 1..]
                .iter()
                .all(|other| class.is_disjoint(other));
        }
        Ok(PartitionReport {
            rows: h,
            cols: w,
            class_sizes,
            total: full.patterns.len(),
            non_empty: class_sizes.iter().all(|&n| n > 0),
            pairwise_disjoint,
            union_matches: set_equals(&union, &full.patterns),
        })
    }

    /// Compares `|P_{3,3}((5+3s) x (5+3t))|` with `|P_{i,j}((m+3s) x (n+3t))|`
    /// for `m in {8-i, 9-i, 10-i}` and `n in {8-j, 9-j, 10-j}`.
    pub fn verify_extension(
        &self,
        s: usize,
        t: usize,
        i: usize,
        j: usize,
    ) -> Result<ExtensionReport> {
        check_phase(i, j)?;
        let reference = self.phase_class_via_mu(5 + 3 * s, 5 + 3 * t, 3, 3)?.len();
        let mut extended = Vec::with_capacity(9);
        for m in (8 - i)..=(10 - i) {
            for n in (8 - j)..=(10 - j) {
                let size = (m + 3 * s, n + 3 * t);
                let count = self.phase_class_via_mu(size.0, size.1, i, j)?.len();
                extended.push((size, count));
            }
        }
        Ok(ExtensionReport {
            s,
            t,
            i,
            j,
            reference,
            extended,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starting_levels() {
        assert_eq!(starting_level(1), 0);
        assert_eq!(starting_level(2), 1);
        assert_eq!(starting_level(3), 1);
        assert_eq!(starting_level(4), 2);
        assert_eq!(starting_level(27), 3);
        assert_eq!(starting_level(28), 4);
    }

    #[test]
    fn saturation_examples() {
        let oracle = Oracle::default();
        let s = oracle.saturated_pattern_set(2, 2).unwrap();
        assert!(s.certified);
        assert_eq!((s.patterns.len(), s.level), (14, 2));
        let s = oracle.saturated_pattern_set(4, 4).unwrap();
        assert_eq!((s.patterns.len(), s.level), (126, 3));
        let s = oracle.saturated_pattern_set(1, 1).unwrap();
        assert_eq!((s.patterns.len(), s.level), (2, 1));
    }

    #[test]
    fn uncertified_is_an_error_for_counts() {
        let oracle = Oracle::new(Limits {
            saturation_level: 2,
            ..Limits::default()
        });
        let s = oracle.saturated_pattern_set(4, 4).unwrap();
        assert!(!s.certified);
        assert_eq!(s.level, 2);
        assert!(matches!(
            oracle.brute_force_triple(4),
            Err(Error::Unverified {
                h: 4,
                w: 4,
                level: 2
            })
        ));
        // too large to even start
        assert!(matches!(
            oracle.saturated_pattern_set(10, 10),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn small_triples() {
        let oracle = Oracle::default();
        let t = oracle.brute_force_triple(2).unwrap();
        assert_eq!((t.a, t.b, t.c), (14, 36, 36));
        assert!(oracle.brute_force_triple(0).is_err());
    }

    #[test]
    fn phase_classes_at_four() {
        let oracle = Oracle::default();
        let report = oracle.verify_partition(4, 4).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.class_sizes, [14; 9]);
        assert_eq!(report.total, 126);
    }

    #[test]
    fn both_phase_constructions_agree() {
        let oracle = Oracle::default();
        for (h, w) in [(2, 2), (3, 4), (4, 4)] {
            for i in 1..=3 {
                for j in 1..=3 {
                    let mu = oracle.phase_class_via_mu(h, w, i, j).unwrap();
                    let pos = oracle.phase_class_by_position(h, w, i, j).unwrap();
                    assert!(set_equals(&mu, &pos), "{h}x{w} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn extension_example() {
        let oracle = Oracle::default();
        let r = oracle.verify_extension(0, 0, 1, 1).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r
            .extended
            .iter()
            .any(|&(size, n)| size == (9, 9) && n == r.reference));
    }

    #[test]
    fn bad_phase_rejected() {
        let oracle = Oracle::default();
        assert!(oracle.phase_class_via_mu(2, 2, 0, 1).is_err());
        assert!(oracle.verify_extension(0, 0, 4, 1).is_err());
    }
}
