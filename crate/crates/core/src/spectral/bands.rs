use serde::Serialize;

use crate::error::{Error, Result};

/// A finite union of closed intervals, sorted and pairwise separated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSpectrum {
    intervals: Vec<(f64, f64)>,
}

impl BandSpectrum {
    /// Sort and merge intervals whose gap is at most `merge_tolerance`.
    pub fn from_intervals(mut intervals: Vec<(f64, f64)>, merge_tolerance: f64) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        if intervals.iter().any(|&(lo, hi)| !(lo <= hi) || !lo.is_finite() || !hi.is_finite()) {
            return Err(Error::Validation("interval with lo > hi or non-finite end".into()));
        }
        intervals.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (lo, hi) in intervals {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + merge_tolerance => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Ok(Self { intervals: merged })
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.intervals[0].0
    }

    pub fn max(&self) -> f64 {
        self.intervals[self.intervals.len() - 1].1
    }

    pub fn lebesgue_measure(&self) -> f64 {
        self.intervals.iter().map(|(lo, hi)| hi - lo).sum()
    }

    /// Distance from x to the set, by binary search on the sorted intervals.
    pub fn distance_to(&self, x: f64) -> f64 {
        // first interval with lo > x
        let i = self.intervals.partition_point(|&(lo, _)| lo <= x);
        let mut d = f64::INFINITY;
        if i > 0 {
            let (_, hi) = self.intervals[i - 1];
            d = d.min((x - hi).max(0.0));
        }
        if i < self.intervals.len() {
            d = d.min(self.intervals[i].0 - x);
        }
        d
    }

    /// sup over this set of the distance to `other`. The distance function
    /// to a union of intervals is piecewise linear with maxima at gap
    /// midpoints, so interval ends plus the other set's gap midpoints
    /// inside each interval are the only candidates.
    fn directed_distance(&self, other: &Self) -> f64 {
        let mids: Vec<f64> = other.intervals.windows(2).map(|w| 0.5 * (w[0].1 + w[1].0)).collect();
        let mut best: f64 = 0.0;
        for &(lo, hi) in &self.intervals {
            best = best.max(other.distance_to(lo)).max(other.distance_to(hi));
            let start = mids.partition_point(|&m| m < lo);
            for &m in mids[start..].iter().take_while(|&&m| m <= hi) {
                best = best.max(other.distance_to(m));
            }
        }
        best
    }

    pub fn hausdorff_distance(&self, other: &Self) -> f64 {
        self.directed_distance(other).max(other.directed_distance(self))
    }

    /// Shift every interval by c.
    pub fn translate(&self, c: f64) -> Self {
        Self { intervals: self.intervals.iter().map(|&(lo, hi)| (lo + c, hi + c)).collect() }
    }
}
