//! δ-clusters of zeros on the cylinder.
//!
//! For a set `I` of coordinate indices the cluster region is
//! `{w : every g_j, j ∈ I, has a zero within δ of w}`. Only its projection to
//! the t-axis matters for the cluster condition, because every counting
//! function depends on `|w|` alone.

use std::f64::consts::FRAC_PI_2;

use crate::curve::{cylinder_distance, wrap_angle, Curve, LogPoint};
use crate::error::{Error, Result};

/// Slack on disc membership; tangent discs count as intersecting.
pub const DISC_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct ClusterRegion {
    /// Coordinate indices, ascending.
    pub subset: Vec<usize>,
    /// Disjoint closed intervals, ascending.
    pub t_intervals: Vec<(f64, f64)>,
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= FRAC_PI_2) {
        return Err(Error::invalid(format!(
            "delta = {delta} must lie in (0, pi/2]"
        )));
    }
    Ok(())
}

/// Every nonempty subset `I` whose cluster region is nonempty, with the
/// region projected to the t-axis.
pub fn cluster_regions(curve: &Curve, delta: f64) -> Result<Vec<ClusterRegion>> {
    check_delta(delta)?;
    let n = curve.coordinates().len();
    let mut out = Vec::new();
    // subsets in lexicographic order of their sorted index lists
    let mut subsets: Vec<Vec<usize>> = (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|j| mask >> j & 1 == 1).collect())
        .collect();
    subsets.sort();
    for subset in subsets {
        let mut intervals = Vec::new();
        collect_tuples(curve, &subset, delta, &mut Vec::new(), &mut intervals);
        if intervals.is_empty() {
            continue;
        }
        out.push(ClusterRegion {
            subset,
            t_intervals: union(intervals),
        });
    }
    Ok(out)
}

/// Depth-first over one zero per coordinate of `subset`, keeping only
/// tuples whose zeros are pairwise within `2δ`. `chosen` holds lifts to the
/// plane around the first chosen zero.
fn collect_tuples(
    curve: &Curve,
    subset: &[usize],
    delta: f64,
    chosen: &mut Vec<(f64, f64)>,
    out: &mut Vec<(f64, f64)>,
) {
    let depth = chosen.len();
    if depth == subset.len() {
        if let Some(extent) = disc_intersection_t_extent(chosen, delta) {
            out.push(extent);
        }
        return;
    }
    let coord = &curve.coordinates()[subset[depth]];
    let reach = 2.0 * delta + 2.0 * DISC_TOL;
    let candidates = match chosen.first() {
        None => coord.zeros(),
        Some(&(t0, _)) => coord.zeros_in_t_range(t0 - reach, t0 + reach),
    };
    for z in candidates {
        let p = z.point;
        let lifted = match chosen.first() {
            None => (p.t, p.theta),
            Some(&(_, th0)) => (p.t, th0 + wrap_angle(p.theta - th0)),
        };
        let close = chosen.iter().all(|&(t, th)| {
            cylinder_distance(&LogPoint::new(t, th), &p) <= reach
        });
        if close {
            chosen.push(lifted);
            collect_tuples(curve, subset, delta, chosen, out);
            chosen.pop();
        }
    }
}

/// `[min t, max t]` over the intersection of the closed planar discs of
/// radius `δ` around `centers`, or `None` when the intersection is empty.
///
/// The extreme points of an intersection of discs are either extreme points
/// of one disc or pairwise boundary intersections.
pub fn disc_intersection_t_extent(centers: &[(f64, f64)], delta: f64) -> Option<(f64, f64)> {
    let inside = |x: f64, y: f64| {
        centers
            .iter()
            .all(|&(cx, cy)| (x - cx).hypot(y - cy) <= delta + DISC_TOL)
    };
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut take = |x: f64, y: f64| {
        if inside(x, y) {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    };
    for &(cx, cy) in centers {
        take(cx - delta, cy);
        take(cx + delta, cy);
    }
    for (i, &(ax, ay)) in centers.iter().enumerate() {
        for &(bx, by) in &centers[i + 1..] {
            let (dx, dy) = (bx - ax, by - ay);
            let d = dx.hypot(dy);
            if d == 0.0 || d > 2.0 * delta + 2.0 * DISC_TOL {
                continue;
            }
            let half = 0.5 * d;
            let h = (delta * delta - half * half).max(0.0).sqrt();
            let (mx, my) = (ax + 0.5 * dx, ay + 0.5 * dy);
            let (ux, uy) = (-dy / d, dx / d);
            take(mx + h * ux, my + h * uy);
            take(mx - h * ux, my - h * uy);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn union(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (a, b) in intervals {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}
