use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Scale, SweepResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    /// (axis 1, axis 2) points in parameter units.
    pub points: Vec<[f64; 2]>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    /// Level in model-output units.
    pub level: f64,
    /// Value scale the interpolation ran on.
    pub scale: Scale,
    pub polylines: Vec<Polyline>,
}

/// Crossing location on the lattice. Edges are keyed by their lower corner so
/// neighbouring cells agree on the node and its coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Vertex(usize, usize),
    /// Edge (r, c)–(r, c+1).
    Row(usize, usize),
    /// Edge (r, c)–(r+1, c).
    Col(usize, usize),
}

struct Lattice<'a> {
    v: &'a [f64],
    cols: usize,
    level: f64,
    coords: BTreeMap<Node, [f64; 2]>,
}

impl Lattice<'_> {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.v[r * self.cols + c]
    }

    fn above(&self, r: usize, c: usize) -> bool {
        self.at(r, c) > self.level
    }

    /// Crossing on the edge from `a` to `b`, if their classes differ.
    fn crossing(&mut self, a: (usize, usize), b: (usize, usize)) -> Option<Node> {
        if self.above(a.0, a.1) == self.above(b.0, b.1) {
            return None;
        }
        let (va, vb) = (self.at(a.0, a.1), self.at(b.0, b.1));
        let t = (self.level - va) / (vb - va);
        let node = if t <= 0.0 {
            Node::Vertex(a.0, a.1)
        } else if t >= 1.0 {
            Node::Vertex(b.0, b.1)
        } else if a.0 == b.0 {
            Node::Row(a.0, a.1)
        } else {
            Node::Col(a.0, a.1)
        };
        let p = match node {
            Node::Vertex(r, c) => [r as f64, c as f64],
            Node::Row(r, c) => [r as f64, c as f64 + t],
            Node::Col(r, c) => [r as f64 + t, c as f64],
        };
        self.coords.entry(node).or_insert(p);
        Some(node)
    }
}

/// Marching squares over a row-major `rows × cols` grid. Returns polylines in
/// fractional (row, col) index coordinates. A point is "above" when its value
/// exceeds `level`; saddles are split by the cell-centre mean.
pub fn march(values: &[f64], rows: usize, cols: usize, level: f64) -> Vec<(Vec<[f64; 2]>, bool)> {
    assert_eq!(values.len(), rows * cols);
    let mut lat = Lattice {
        v: values,
        cols,
        level,
        coords: BTreeMap::new(),
    };
    let mut segs: Vec<(Node, Node)> = Vec::new();
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            let top = lat.crossing((r, c), (r, c + 1));
            let right = lat.crossing((r, c + 1), (r + 1, c + 1));
            let bottom = lat.crossing((r + 1, c), (r + 1, c + 1));
            let left = lat.crossing((r, c), (r + 1, c));
            let found: Vec<Node> = [top, right, bottom, left].into_iter().flatten().collect();
            let mut push = |a: Node, b: Node| {
                if a != b {
                    segs.push((a, b));
                }
            };
            match found.len() {
                0 => {}
                2 => push(found[0], found[1]),
                4 => {
                    let (t, rt, b, l) = (found[0], found[1], found[2], found[3]);
                    let centre = 0.25 * (lat.at(r, c) + lat.at(r, c + 1) + lat.at(r + 1, c) + lat.at(r + 1, c + 1));
                    // Corners (r,c) and (r+1,c+1) share a class in a saddle.
                    let diag_above = lat.above(r, c);
                    if (centre > level) == diag_above {
                        // The diagonal pair joins through the centre; cut off the other two corners.
                        push(t, rt);
                        push(b, l);
                    } else {
                        push(t, l);
                        push(rt, b);
                    }
                }
                n => unreachable!("odd crossing count {n}"),
            }
        }
    }
    chain(&segs, &lat.coords)
}

fn chain(segs: &[(Node, Node)], coords: &BTreeMap<Node, [f64; 2]>) -> Vec<(Vec<[f64; 2]>, bool)> {
    let mut adj: BTreeMap<Node, Vec<usize>> = BTreeMap::new();
    for (k, &(a, b)) in segs.iter().enumerate() {
        adj.entry(a).or_default().push(k);
        adj.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];
    let mut out = Vec::new();

    let walk = |start: Node, used: &mut Vec<bool>| -> Vec<Node> {
        let mut path = vec![start];
        let mut here = start;
        while let Some(&k) = adj[&here].iter().find(|&&k| !used[k]) {
            used[k] = true;
            let (a, b) = segs[k];
            here = if a == here { b } else { a };
            path.push(here);
        }
        path
    };

    // Open lines start at odd-degree nodes, then whatever is left is closed.
    let ends: Vec<Node> = adj.iter().filter(|(_, v)| v.len() % 2 == 1).map(|(n, _)| *n).collect();
    for n in ends {
        if adj[&n].iter().any(|&k| !used[k]) {
            let path = walk(n, &mut used);
            out.push((path, false));
        }
    }
    for k in 0..segs.len() {
        if !used[k] {
            let path = walk(segs[k].0, &mut used);
            let closed = path.len() > 2 && path.first() == path.last();
            out.push((path, closed));
        }
    }
    out.into_iter()
        .map(|(path, closed)| (path.iter().map(|n| coords[n]).collect(), closed))
        .collect()
}

/// Iso-level polylines of a 2D sweep in parameter coordinates. With
/// `Scale::Log10` the interpolation runs on log₁₀ of the values (which must
/// then be positive); `level` is always in model-output units.
pub fn extract_contour(result: &SweepResult, level: f64, on: Scale) -> Result<Contour> {
    let [ax0, ax1] = result.axes.as_slice() else {
        return Err(Error::invalid("contour", "needs a 2D sweep"));
    };
    if !level.is_finite() {
        return Err(Error::invalid("contour level", format!("must be finite (got {level})")));
    }
    let (vals, lev) = match on {
        Scale::Linear => (result.values.clone(), level),
        Scale::Log10 => {
            if level <= 0.0 || result.values.iter().any(|&v| v <= 0.0) {
                return Err(Error::invalid(
                    "contour",
                    "log10 contours need positive values and level",
                ));
            }
            (result.values.iter().map(|v| v.log10()).collect(), level.log10())
        }
    };
    let polylines = march(&vals, ax0.n_points, ax1.n_points, lev)
        .into_iter()
        .map(|(pts, closed)| Polyline {
            points: pts.iter().map(|p| [ax0.coord_at(p[0]), ax1.coord_at(p[1])]).collect(),
            closed,
        })
        .collect();
    Ok(Contour {
        level,
        scale: on,
        polylines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snr::{snr_normalized, SnrParameters};
    use crate::sweep::{run_sweep, AxisSpec, SweepModel};
    use proptest::prelude::*;

    fn grid(rows: usize, cols: usize, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i as f64, j as f64))
            .collect()
    }

    #[test]
    fn plane_gives_single_antidiagonal() {
        let v = grid(10, 10, |i, j| i + j);
        let lines = march(&v, 10, 10, 9.0);
        assert_eq!(lines.len(), 1);
        let (pts, closed) = &lines[0];
        assert!(!closed);
        assert_eq!(pts.len(), 10);
        for p in pts {
            // Distance from the line i + j = 9.
            assert!(((p[0] + p[1] - 9.0) / 2f64.sqrt()).abs() < 1e-12);
        }
        let ends = [pts[0], pts[pts.len() - 1]];
        assert!(ends.contains(&[0.0, 9.0]) && ends.contains(&[9.0, 0.0]));
    }

    #[test]
    fn off_lattice_plane() {
        let v = grid(10, 10, |i, j| i + j);
        let lines = march(&v, 10, 10, 4.5);
        assert_eq!(lines.len(), 1);
        assert!(lines[0].0.iter().all(|p| (p[0] + p[1] - 4.5).abs() < 1e-12));
    }

    #[test]
    fn out_of_range_level_is_empty() {
        let v = grid(10, 10, |i, j| i + j);
        assert!(march(&v, 10, 10, -1.0).is_empty());
        assert!(march(&v, 10, 10, 18.0).is_empty());
    }

    #[test]
    fn ring_is_closed() {
        let v = grid(21, 21, |i, j| (i - 10.0).powi(2) + (j - 10.0).powi(2));
        let lines = march(&v, 21, 21, 25.5);
        assert_eq!(lines.len(), 1);
        let (pts, closed) = &lines[0];
        assert!(*closed);
        for p in pts {
            let r = ((p[0] - 10.0).powi(2) + (p[1] - 10.0).powi(2)).sqrt();
            assert!((r - 25.5f64.sqrt()).abs() < 0.1);
        }
    }

    #[test]
    fn saddle_uses_centre_value() {
        // Corners (0,0), (1,1) above; centre mean 0.5 vs level.
        let v = [1.0, 0.0, 0.0, 1.0];
        let low = march(&v, 2, 2, 0.4);
        let high = march(&v, 2, 2, 0.6);
        assert_eq!(low.len(), 2);
        assert_eq!(high.len(), 2);
        // Below the centre the high diagonal connects, isolating the low corners.
        let touches = |l: &Vec<(Vec<[f64; 2]>, bool)>, corner: [f64; 2]| {
            l.iter().any(|(p, _)| {
                p.iter()
                    .all(|q| (q[0] - corner[0]).abs() < 1.0 && (q[1] - corner[1]).abs() < 1.0)
            })
        };
        assert!(touches(&low, [0.0, 1.0]) && touches(&low, [1.0, 0.0]));
        assert!(touches(&high, [0.0, 0.0]) && touches(&high, [1.0, 1.0]));
    }

    #[test]
    fn normalized_contour_passes_reference() {
        let m = SweepModel::SnrNormalized {
            params: SnrParameters::default(),
            noise: None,
        };
        let axes = [
            AxisSpec::log10("n_units", 1.0, 1e4, 101).unwrap(),
            AxisSpec::log10("spacing", 1e-3, 1.0, 101).unwrap(),
        ];
        let r = run_sweep(&m, &axes).unwrap();
        let c = extract_contour(&r, 1.0, Scale::Log10).unwrap();
        assert!(!c.polylines.is_empty());
        // Cell diagonal in log10 units.
        let (dn, dd): (f64, f64) = (4.0 / 100.0, 3.0 / 100.0);
        let diag = (dn * dn + dd * dd).sqrt();
        let best = c
            .polylines
            .iter()
            .flat_map(|p| &p.points)
            .map(|p| ((p[0].log10() - 3.0).powi(2) + (p[1].log10() - 0.05f64.log10()).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!(best < diag, "nearest {best} vs diagonal {diag}");
        let at_ref = snr_normalized(&SnrParameters::default(), None).unwrap();
        assert_eq!(at_ref, 1.0);
    }

    #[test]
    fn contour_requires_2d() {
        let m = SweepModel::Strain {
            delta_r: 1.0,
            length: 1.0,
        };
        let r = run_sweep(&m, &[AxisSpec::linear("length", 1.0, 2.0, 3).unwrap()]).unwrap();
        assert!(extract_contour(&r, 1.0, Scale::Linear).is_err());
    }

    proptest! {
        #[test]
        fn monotone_field_matches_bisection(a in 0.2f64..3.0, b in 0.2f64..3.0, frac in 0.05f64..0.95) {
            // f(x, y) = a·x + b·y², increasing along both axes.
            let f = |x: f64, y: f64| a * x + b * y * y;
            let (n0, n1) = (23usize, 31usize);
            let ax = AxisSpec::linear("x", 0.0, 1.0, n0).unwrap();
            let ay = AxisSpec::linear("y", 0.0, 1.0, n1).unwrap();
            let (xs, ys) = (ax.values(), ay.values());
            let v: Vec<f64> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| f(x, y))).collect();
            let level = frac * (a + b);
            let lines = march(&v, n0, n1, level);
            prop_assert_eq!(lines.len(), 1);
            let dx = 1.0 / (n0 - 1) as f64;
            for p in &lines[0].0 {
                let (x, y) = (ax.coord_at(p[0]), ay.coord_at(p[1]));
                prop_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
                // Bisect along x at this y.
                let (mut lo, mut hi) = (0.0f64, 1.0f64);
                if f(lo, y) > level || f(hi, y) < level {
                    continue;
                }
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if f(mid, y) > level { hi = mid } else { lo = mid }
                }
                prop_assert!((x - lo).abs() <= dx, "x {} vs bisection {}", x, lo);
            }
            // Each row crosses at most once.
            for i in 0..n0 {
                let row = &v[i * n1..(i + 1) * n1];
                let flips = row.windows(2).filter(|w| (w[0] > level) != (w[1] > level)).count();
                prop_assert!(flips <= 1);
            }
        }

        #[test]
        fn contour_points_stay_in_bounds(seed in any::<u64>(), level in -0.5f64..0.5) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v: Vec<f64> = (0..12 * 9).map(|_| rng.random_range(-1.0..1.0)).collect();
            for (pts, closed) in march(&v, 12, 9, level) {
                prop_assert!(pts.len() >= 2);
                if closed {
                    prop_assert_eq!(pts.first(), pts.last());
                }
                for p in pts {
                    prop_assert!((0.0..=11.0).contains(&p[0]) && (0.0..=8.0).contains(&p[1]));
                }
            }
        }
    }
}
