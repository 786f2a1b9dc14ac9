//! Bicriterion weights and Pareto frontiers.
//!
//! Every cost in the crate is a [`BiWeight`]: driving time in whole seconds
//! paired with net energy drawn from the battery in whole watt-hours.
//! Charging and regenerative braking appear as negative energy. A
//! [`ParetoSet`] keeps a mutually non-dominated collection of such pairs,
//! sorted by time so that dominance checks are logarithmic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Driving time in seconds. Negative values only occur in synthetic tests.
pub type Seconds = i64;

/// Net battery draw in watt-hours. Negative values model charging.
pub type WattHours = i64;

/// A (time, energy) cost pair, the atom of every edge and path weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiWeight {
    pub time: Seconds,
    pub energy: WattHours,
}

pub const ZERO_WEIGHT: BiWeight = BiWeight { time: 0, energy: 0 };

impl BiWeight {
    pub const fn new(time: Seconds, energy: WattHours) -> Self {
        BiWeight { time, energy }
    }

    /// Component-wise sum; overflow is an error, never a silent wrap.
    pub fn checked_add(self, other: BiWeight) -> Result<BiWeight> {
        let time = self.time.checked_add(other.time).ok_or(Error::Overflow)?;
        let energy = self
            .energy
            .checked_add(other.energy)
            .ok_or(Error::Overflow)?;
        Ok(BiWeight { time, energy })
    }

    /// Weak dominance excluding equality: no worse in both coordinates and
    /// different from `other`.
    pub fn dominates(self, other: BiWeight) -> bool {
        self.time <= other.time && self.energy <= other.energy && self != other
    }
}

impl std::fmt::Display for BiWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} s, {} Wh)", self.time, self.energy)
    }
}

/// A mutually non-dominated set of weights, ordered by ascending time
/// (equivalently, strictly descending energy).
///
/// Insertion rejects any point that is dominated by or equal to a member,
/// and evicts members the newcomer dominates, so the set stays the minimal
/// canonical frontier of everything ever offered to it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParetoSet {
    points: Vec<BiWeight>,
}

impl ParetoSet {
    pub fn new() -> Self {
        ParetoSet { points: Vec::new() }
    }

    /// Offer `p` to the frontier. Returns whether it was kept.
    pub fn insert(&mut self, p: BiWeight) -> bool {
        // The member with the largest time <= p.time has the least energy
        // among potential dominators; checking it alone suffices.
        let after = self.points.partition_point(|m| m.time <= p.time);
        if after > 0 && self.points[after - 1].energy <= p.energy {
            return false;
        }
        // Members at or past p.time with energy >= p.energy form a
        // contiguous dominated run.
        let start = self.points.partition_point(|m| m.time < p.time);
        let mut end = start;
        while end < self.points.len() && self.points[end].energy >= p.energy {
            end += 1;
        }
        self.points.splice(start..end, [p]);
        true
    }

    pub fn contains(&self, p: BiWeight) -> bool {
        self.points
            .binary_search_by(|m| m.time.cmp(&p.time))
            .map(|i| self.points[i] == p)
            .unwrap_or(false)
    }

    /// Least-time member satisfying both bounds, if any.
    pub fn best_within(&self, max_time: Option<Seconds>, max_energy: Option<WattHours>) -> Option<BiWeight> {
        self.points
            .iter()
            .copied()
            .find(|p| max_energy.is_none_or(|y| p.energy <= y))
            .filter(|p| max_time.is_none_or(|x| p.time <= x))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Members in ascending-time order.
    pub fn points(&self) -> &[BiWeight] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = BiWeight> + '_ {
        self.points.iter().copied()
    }
}

impl FromIterator<BiWeight> for ParetoSet {
    fn from_iter<I: IntoIterator<Item = BiWeight>>(iter: I) -> Self {
        let mut set = ParetoSet::new();
        for p in iter {
            set.insert(p);
        }
        set
    }
}

/// Vertices of the lower-left convex hull of `points`, ascending by
/// time. Every minimizer of a nonnegative linear form over the set lies
/// on this chain, so it bounds what scalarized searches can return.
/// Collinear interior points are not vertices and are excluded.
pub fn lower_left_hull(points: &[BiWeight]) -> Vec<BiWeight> {
    // Dominated points never minimize such a form once ties break
    // toward smaller components, so reduce to the frontier first.
    let frontier: ParetoSet = points.iter().copied().collect();
    let pts = frontier.points();
    let mut hull: Vec<BiWeight> = Vec::with_capacity(pts.len().min(8));
    for &p in pts {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.time - o.time) as i128 * (p.energy - o.energy) as i128
                - (a.energy - o.energy) as i128 * (p.time - o.time) as i128;
            // Non-positive cross: `a` sits on or above the o-p chord.
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(time: Seconds, energy: WattHours) -> BiWeight {
        BiWeight::new(time, energy)
    }

    #[test]
    fn add_identity_and_signed_components() {
        assert_eq!(w(0, 0).checked_add(w(5, 7)).unwrap(), w(5, 7));
        assert_eq!(w(1, 10).checked_add(w(7, 4)).unwrap(), w(8, 14));
        assert_eq!(w(100, 8).checked_add(w(60, -10)).unwrap(), w(160, -2));
    }

    #[test]
    fn add_overflow_is_detected() {
        let big = w(i64::MAX, 0);
        assert!(matches!(big.checked_add(w(1, 0)), Err(Error::Overflow)));
        let low = w(0, i64::MIN);
        assert!(matches!(low.checked_add(w(0, -1)), Err(Error::Overflow)));
    }

    #[test]
    fn dominance_examples() {
        assert!(w(3, 5).dominates(w(4, 5)));
        assert!(!w(3, 5).dominates(w(3, 5)));
        assert!(!w(4, 2).dominates(w(2, 4)));
        assert!(!w(2, 4).dominates(w(4, 2)));
    }

    #[test]
    fn insert_into_empty() {
        let mut s = ParetoSet::new();
        assert!(s.insert(w(5, 5)));
        assert_eq!(s.points(), &[w(5, 5)]);
    }

    #[test]
    fn insert_incomparable_coexists() {
        let mut s = ParetoSet::new();
        s.insert(w(5, 5));
        assert!(s.insert(w(4, 6)));
        assert_eq!(s.points(), &[w(4, 6), w(5, 5)]);
    }

    #[test]
    fn insert_evicts_all_dominated() {
        let mut s: ParetoSet = [w(5, 5), w(4, 6)].into_iter().collect();
        assert!(s.insert(w(3, 3)));
        assert_eq!(s.points(), &[w(3, 3)]);
    }

    #[test]
    fn duplicate_and_dominated_are_rejected() {
        let mut s = ParetoSet::new();
        s.insert(w(5, 5));
        assert!(!s.insert(w(5, 5)));
        assert!(!s.insert(w(6, 5)));
        assert!(!s.insert(w(5, 9)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn best_within_bounds() {
        let s: ParetoSet = [w(8, 40), w(14, 25), w(20, 10)].into_iter().collect();
        assert_eq!(s.best_within(Some(15), Some(30)), Some(w(14, 25)));
        assert_eq!(s.best_within(Some(7), Some(30)), None);
        assert_eq!(s.best_within(None, Some(10)), Some(w(20, 10)));
        assert_eq!(s.best_within(None, None), Some(w(8, 40)));
    }

    /// Independent O(k^2) dominance filter used to check ParetoSet.
    fn brute_frontier(points: &[BiWeight]) -> Vec<BiWeight> {
        let mut out: Vec<BiWeight> = Vec::new();
        for &p in points {
            let beaten = points
                .iter()
                .any(|&q| (q.time <= p.time && q.energy <= p.energy) && q != p);
            if !beaten && !out.contains(&p) {
                out.push(p);
            }
        }
        out.sort();
        out
    }

    fn small_weight() -> impl Strategy<Value = BiWeight> {
        (-50i64..=50, -50i64..=50).prop_map(|(t, e)| BiWeight::new(t, e))
    }

    proptest! {
        #[test]
        fn addition_is_associative_with_identity(a in small_weight(), b in small_weight(), c in small_weight()) {
            let left = a.checked_add(b).unwrap().checked_add(c).unwrap();
            let right = a.checked_add(b.checked_add(c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(a.checked_add(ZERO_WEIGHT).unwrap(), a);
            prop_assert_eq!(a.checked_add(b).unwrap(), b.checked_add(a).unwrap());
        }

        #[test]
        fn dominance_is_a_strict_partial_order(a in small_weight(), b in small_weight(), c in small_weight()) {
            prop_assert!(!a.dominates(a));
            if a.dominates(b) {
                prop_assert!(!b.dominates(a));
            }
            if a.dominates(b) && b.dominates(c) {
                prop_assert!(a.dominates(c));
            }
        }

        #[test]
        fn frontier_matches_brute_force_filter(points in prop::collection::vec(small_weight(), 0..40)) {
            let set: ParetoSet = points.iter().copied().collect();
            let mut got: Vec<BiWeight> = set.points().to_vec();
            got.sort();
            prop_assert_eq!(got, brute_frontier(&points));
            // Sorted by time ascending, energy strictly descending.
            for pair in set.points().windows(2) {
                prop_assert!(pair[0].time < pair[1].time);
                prop_assert!(pair[0].energy > pair[1].energy);
            }
        }

        #[test]
        fn insertion_is_idempotent(points in prop::collection::vec(small_weight(), 0..30)) {
            let mut set: ParetoSet = points.iter().copied().collect();
            let frozen = set.clone();
            for &p in &points {
                set.insert(p);
            }
            prop_assert_eq!(set, frozen);
        }

        #[test]
        fn hull_is_convex_and_within_frontier(points in prop::collection::vec(small_weight(), 0..40)) {
            let hull = lower_left_hull(&points);
            let frontier: ParetoSet = points.iter().copied().collect();
            for h in &hull {
                prop_assert!(frontier.contains(*h));
            }
            for trio in hull.windows(3) {
                let (o, a, b) = (trio[0], trio[1], trio[2]);
                let cross = (a.time - o.time) as i128 * (b.energy - o.energy) as i128
                    - (a.energy - o.energy) as i128 * (b.time - o.time) as i128;
                prop_assert!(cross > 0, "collinear or concave hull turn");
            }
        }
    }

    #[test]
    fn hull_drops_the_point_above_the_chord() {
        let pts = [w(3, 19), w(8, 14), w(10, 11), w(15, 6)];
        assert_eq!(lower_left_hull(&pts), vec![w(3, 19), w(10, 11), w(15, 6)]);
    }

    #[test]
    fn hull_excludes_collinear_interior_points() {
        let pts = [w(0, 10), w(5, 5), w(10, 0)];
        assert_eq!(lower_left_hull(&pts), vec![w(0, 10), w(10, 0)]);
    }

    #[test]
    fn hull_of_degenerate_sets() {
        assert_eq!(lower_left_hull(&[]), vec![]);
        assert_eq!(lower_left_hull(&[w(4, 4)]), vec![w(4, 4)]);
        assert_eq!(lower_left_hull(&[w(1, 1), w(2, 2)]), vec![w(1, 1)]);
        assert_eq!(lower_left_hull(&[w(2, 2), w(2, 2)]), vec![w(2, 2)]);
    }
}
