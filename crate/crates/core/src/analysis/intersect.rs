//! Self-intersection count of the trajectory polyline in the `(x, y)` plane.
//!
//! Segments are bucketed into a uniform grid sized from the mean segment
//! length. A candidate pair is tested only in the grid cell holding the lower
//! corner of the overlap of the two bounding boxes, so each pair is tested once.

use std::collections::HashMap;

use crate::integrator::Trajectory;

type Point = (f64, f64);

#[derive(Clone, Copy)]
struct Seg {
    a: Point,
    b: Point,
}

impl Seg {
    fn bbox(&self) -> (Point, Point) {
        (
            (self.a.0.min(self.b.0), self.a.1.min(self.b.1)),
            (self.a.0.max(self.b.0), self.a.1.max(self.b.1)),
        )
    }
}

fn orient(p: Point, q: Point, r: Point) -> f64 {
    (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
}

fn on_segment(p: Point, q: Point, r: Point) -> bool {
    r.0 >= p.0.min(q.0) && r.0 <= p.0.max(q.0) && r.1 >= p.1.min(q.1) && r.1 <= p.1.max(q.1)
}

/// Closed-segment intersection test, touching and collinear overlap included.
pub(crate) fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a);
    let d2 = orient(c, d, b);
    let d3 = orient(a, b, c);
    let d4 = orient(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

/// Number of intersecting pairs among non-adjacent segments of a polyline.
pub fn polyline_self_intersections(points: &[Point]) -> usize {
    polyline_intersection_pairs(points).len()
}

/// Index pairs `(i, j)`, `i < j`, of intersecting non-adjacent segments, where
/// segment `k` joins `points[k]` and `points[k + 1]`. Sorted.
pub fn polyline_intersection_pairs(points: &[Point]) -> Vec<(usize, usize)> {
    if points.len() < 4 {
        return Vec::new();
    }
    let segs: Vec<Seg> = points
        .windows(2)
        .map(|w| Seg { a: w[0], b: w[1] })
        .collect();
    let total: f64 = segs
        .iter()
        .map(|s| (s.b.0 - s.a.0).hypot(s.b.1 - s.a.1))
        .sum();
    let mean = total / segs.len() as f64;
    let cell = if mean > 0.0 { 2.0 * mean } else { 1.0 };
    let key = |p: Point| ((p.0 / cell).floor() as i64, (p.1 / cell).floor() as i64);

    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, s) in segs.iter().enumerate() {
        let (lo, hi) = s.bbox();
        let (k0, k1) = (key(lo), key(hi));
        for gx in k0.0..=k1.0 {
            for gy in k0.1..=k1.1 {
                grid.entry((gx, gy)).or_default().push(i);
            }
        }
    }

    let mut pairs = Vec::new();
    for (&cell_key, members) in &grid {
        for (ai, &i) in members.iter().enumerate() {
            let (ilo, ihi) = segs[i].bbox();
            for &j in &members[ai + 1..] {
                if i.abs_diff(j) <= 1 {
                    continue;
                }
                let (jlo, jhi) = segs[j].bbox();
                let lo = (ilo.0.max(jlo.0), ilo.1.max(jlo.1));
                if lo.0 > ihi.0.min(jhi.0) || lo.1 > ihi.1.min(jhi.1) {
                    continue;
                }
                if key(lo) != cell_key {
                    continue;
                }
                if segments_intersect(segs[i].a, segs[i].b, segs[j].a, segs[j].b) {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Self-intersections of the sampled path `z(t)`.
pub fn self_intersections(traj: &Trajectory) -> usize {
    let pts: Vec<Point> = traj.samples.iter().map(|s| (s.z.re, s.z.im)).collect();
    polyline_self_intersections(&pts)
}
