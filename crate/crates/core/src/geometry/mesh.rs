use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holo::{BranchedPoint, Cplx};
use crate::mat2::Mat2;
use crate::weierstrass::{transport, IntegratorOptions, WeierstrassData};

use super::MetricSample;

/// Parameter grid. Both kinds use conformal coordinates `(a, b)`: `(x, y)`
/// for rectangles and `(ln r, θ)` for annuli.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GridSpec {
    Rect {
        x: [f64; 2],
        y: [f64; 2],
        nx: usize,
        ny: usize,
    },
    /// Log-spaced in `r`; `theta: None` is the full circle with wrap-around faces.
    Annulus {
        r: [f64; 2],
        nr: usize,
        ntheta: usize,
        theta: Option<[f64; 2]>,
    },
}

impl GridSpec {
    fn shape(&self) -> (usize, usize, bool) {
        match *self {
            GridSpec::Rect { nx, ny, .. } => (nx, ny, false),
            GridSpec::Annulus { nr, ntheta, theta, .. } => (nr, ntheta, theta.is_none()),
        }
    }

    /// Step sizes in the conformal coordinates.
    fn steps(&self) -> (f64, f64) {
        let step = |lo: f64, hi: f64, n: usize| if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
        match *self {
            GridSpec::Rect { x, y, nx, ny } => (step(x[0], x[1], nx), step(y[0], y[1], ny)),
            GridSpec::Annulus { r, nr, ntheta, theta } => {
                let db = match theta {
                    None => 2.0 * std::f64::consts::PI / ntheta as f64,
                    Some(t) => step(t[0], t[1], ntheta),
                };
                (step(r[0].ln(), r[1].ln(), nr), db)
            }
        }
    }

    fn param(&self, i: usize, j: usize) -> Cplx {
        let (da, db) = self.steps();
        match *self {
            GridSpec::Rect { x, y, .. } => Cplx::new(x[0] + da * i as f64, y[0] + db * j as f64),
            GridSpec::Annulus { r, theta, .. } => {
                let t0 = theta.map_or(0.0, |t| t[0]);
                Cplx::from_polar((r[0].ln() + da * i as f64).exp(), t0 + db * j as f64)
            }
        }
    }

    /// `|dz/da|` at a parameter value.
    fn jacobian(&self, z: Cplx) -> f64 {
        match self {
            GridSpec::Rect { .. } => 1.0,
            GridSpec::Annulus { .. } => z.norm(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (na, nb, _) = self.shape();
        if na == 0 || nb == 0 {
            return Err(Error::Precondition("grid has no vertices".into()));
        }
        match *self {
            GridSpec::Rect { x, y, .. } => {
                if !(x[0] <= x[1] && y[0] <= y[1]) {
                    return Err(Error::Precondition("rectangle bounds out of order".into()));
                }
            }
            GridSpec::Annulus { r, theta, .. } => {
                if !(r[0] > 0.0 && r[0] <= r[1]) {
                    return Err(Error::Precondition("annulus needs 0 < r0 ≤ r1".into()));
                }
                if let Some(t) = theta {
                    if !(t[0] <= t[1]) {
                        return Err(Error::Precondition("angle bounds out of order".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A point on the sphere at infinity of the upper half-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealPoint {
    Finite([f64; 2]),
    Infinity,
}

impl IdealPoint {
    pub fn approx_eq(&self, other: &IdealPoint) -> bool {
        match (self, other) {
            (IdealPoint::Infinity, IdealPoint::Infinity) => true,
            (IdealPoint::Finite(a), IdealPoint::Finite(b)) => (a[0] - b[0]).hypot(a[1] - b[1]) < 1e-6,
            _ => false,
        }
    }
}

/// What lies beyond a boundary loop of the mesh.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Facing {
    /// An end of the surface, limiting to the given ideal point.
    End { ideal: IdealPoint },
    /// An end whose limit point is not known.
    EndUnknownLimit,
    /// More surface (an artificial cut) or nothing is known.
    Unknown,
}

/// Producer-supplied end metadata for the boundary loops of a grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EndHints {
    /// Inner ring of a full annulus.
    pub inner: Facing,
    /// Outer ring of a full annulus, or the whole boundary otherwise.
    pub outer: Facing,
}

impl Default for EndHints {
    fn default() -> Self {
        EndHints { inner: Facing::Unknown, outer: Facing::Unknown }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryLoop {
    pub name: String,
    pub vertices: Vec<usize>,
    pub facing: Facing,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeshDiagnostics {
    /// `|x_a·x_b| / (|x_a|² + |x_b|²)` at interior vertices.
    pub conformality: Vec<Option<f64>>,
    /// Hyperbolic mean curvature from second differences (≈ 1).
    pub mean_curvature: Vec<Option<f64>>,
    /// Discrete hyperbolic metric over the closed-form `ds²` factor (≈ 1).
    pub metric_ratio: Vec<Option<f64>>,
    pub max_det_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub grid: GridSpec,
    pub na: usize,
    pub nb: usize,
    pub wrap: bool,
    pub params: Vec<Cplx>,
    /// Upper-half-space coordinates, index `i·nb + j`.
    pub vertices: Vec<[f64; 3]>,
    /// Euclidean unit normals oriented so that the mean curvature is positive.
    pub normals: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 4]>,
    pub metric: Vec<Option<MetricSample>>,
    pub diagnostics: MeshDiagnostics,
    pub boundary: Vec<BoundaryLoop>,
}

type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}
fn scale(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}
fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

/// Hyperbolic distance in the upper half-space.
pub fn hyperbolic_distance(p: V3, q: V3) -> f64 {
    let d = sub(p, q);
    (1.0 + dot(d, d) / (2.0 * p[2] * q[2])).acosh()
}

/// Integrate the frame over the grid along a spanning tree (a spine in the
/// first coordinate through the vertex nearest the basepoint, then the lines
/// of the second coordinate) and immerse every vertex.
pub fn mesh_generate(data: &WeierstrassData, grid: &GridSpec, hints: &EndHints) -> Result<SurfaceMesh> {
    grid.validate()?;
    let (na, nb, wrap) = grid.shape();
    let idx = |i: usize, j: usize| i * nb + j;
    let params: Vec<Cplx> = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j))).map(|(i, j)| grid.param(i, j)).collect();
    for &p in &params {
        if data.punctures.iter().any(|q| (p - q).norm() < 1e-12) {
            return Err(Error::Precondition(format!("grid vertex {p} is a puncture")));
        }
    }
    let root = (0..params.len())
        .min_by(|&a, &b| (params[a] - data.z0).norm().total_cmp(&(params[b] - data.z0).norm()))
        .unwrap();
    let (ri, rj) = (root / nb, root % nb);

    let opts = IntegratorOptions::default();
    let mut frames: Vec<Option<(Mat2, BranchedPoint)>> = vec![None; params.len()];
    let mut drift: f64 = 0.0;
    let start = BranchedPoint { z: data.z0, winding: 0 };
    let (f, bp, d) = transport(data, Mat2::identity(), start, params[root], &opts)?;
    drift = drift.max(d);
    frames[root] = Some((f, bp));

    let mut step = |frames: &mut Vec<Option<(Mat2, BranchedPoint)>>, from: usize, to: usize| -> Result<()> {
        let (f0, p0) = frames[from].expect("spanning tree visits parents first");
        let (f, p, d) = transport(data, f0, p0, params[to], &opts)?;
        drift = drift.max(d);
        frames[to] = Some((f, p));
        Ok(())
    };
    for i in ri + 1..na {
        step(&mut frames, idx(i - 1, rj), idx(i, rj))?;
    }
    for i in (0..ri).rev() {
        step(&mut frames, idx(i + 1, rj), idx(i, rj))?;
    }
    for i in 0..na {
        if wrap {
            let mut prev = rj;
            for k in 1..nb {
                let j = (rj + k) % nb;
                step(&mut frames, idx(i, prev), idx(i, j))?;
                prev = j;
            }
        } else {
            for j in rj + 1..nb {
                step(&mut frames, idx(i, j - 1), idx(i, j))?;
            }
            for j in (0..rj).rev() {
                step(&mut frames, idx(i, j + 1), idx(i, j))?;
            }
        }
    }

    let mut vertices = Vec::with_capacity(params.len());
    let mut metric = Vec::with_capacity(params.len());
    for fr in &frames {
        let (f, p) = fr.expect("every vertex reached");
        vertices.push(data.upper_half_point(&f)?);
        metric.push(data.metric_at(&f, &p).ok());
    }

    let mut faces = Vec::new();
    let nbf = if wrap { nb } else { nb.saturating_sub(1) };
    for i in 0..na.saturating_sub(1) {
        for j in 0..nbf {
            let j1 = (j + 1) % nb;
            faces.push([idx(i, j), idx(i + 1, j), idx(i + 1, j1), idx(i, j1)]);
        }
    }

    let boundary = boundary_loops(na, nb, wrap, hints);
    let mut mesh = SurfaceMesh {
        grid: *grid,
        na,
        nb,
        wrap,
        params,
        vertices,
        normals: vec![],
        faces,
        metric,
        diagnostics: MeshDiagnostics { max_det_drift: drift, ..Default::default() },
        boundary,
    };
    mesh.compute_normals()?;
    Ok(mesh)
}

fn boundary_loops(na: usize, nb: usize, wrap: bool, hints: &EndHints) -> Vec<BoundaryLoop> {
    let idx = |i: usize, j: usize| i * nb + j;
    if wrap {
        vec![
            BoundaryLoop { name: "inner".into(), vertices: (0..nb).map(|j| idx(0, j)).collect(), facing: hints.inner },
            BoundaryLoop {
                name: "outer".into(),
                vertices: (0..nb).map(|j| idx(na - 1, j)).collect(),
                facing: hints.outer,
            },
        ]
    } else {
        let mut v: Vec<usize> = (0..na * nb)
            .filter(|&k| {
                let (i, j) = (k / nb, k % nb);
                i == 0 || j == 0 || i + 1 == na || j + 1 == nb
            })
            .collect();
        v.dedup();
        vec![BoundaryLoop { name: "outer".into(), vertices: v, facing: hints.outer }]
    }
}

impl SurfaceMesh {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.nb + j
    }

    /// Neighbour indices in the second coordinate, honouring wrap-around.
    fn b_neighbors(&self, j: usize) -> (Option<usize>, Option<usize>) {
        let prev = if j > 0 {
            Some(j - 1)
        } else if self.wrap {
            Some(self.nb - 1)
        } else {
            None
        };
        let next = if j + 1 < self.nb {
            Some(j + 1)
        } else if self.wrap {
            Some(0)
        } else {
            None
        };
        (prev, next)
    }

    /// First derivatives in `(a, b)` (central where possible).
    fn tangents(&self, i: usize, j: usize) -> (V3, V3) {
        let (da, db) = self.grid.steps();
        let x = |i: usize, j: usize| self.vertices[self.index(i, j)];
        let xa = match (i > 0, i + 1 < self.na) {
            (true, true) => scale(sub(x(i + 1, j), x(i - 1, j)), 0.5 / da),
            (false, true) => scale(sub(x(i + 1, j), x(i, j)), 1.0 / da),
            (true, false) => scale(sub(x(i, j), x(i - 1, j)), 1.0 / da),
            (false, false) => [0.0; 3],
        };
        let xb = match self.b_neighbors(j) {
            (Some(p), Some(n)) => scale(sub(x(i, n), x(i, p)), 0.5 / db),
            (None, Some(n)) => scale(sub(x(i, n), x(i, j)), 1.0 / db),
            (Some(p), None) => scale(sub(x(i, j), x(i, p)), 1.0 / db),
            (None, None) => [0.0; 3],
        };
        (xa, xb)
    }

    fn is_interior(&self, i: usize, j: usize) -> bool {
        let (p, n) = self.b_neighbors(j);
        i > 0 && i + 1 < self.na && p.is_some() && n.is_some()
    }

    /// Normals from central-difference tangents, then orientation and the
    /// curvature/conformality diagnostics.
    pub fn compute_normals(&mut self) -> Result<()> {
        if self.na < 2 || self.nb < 2 {
            return Err(Error::Degenerate(format!(
                "{}×{} grid has no tangent plane; normals undefined",
                self.na, self.nb
            )));
        }
        let (da, db) = self.grid.steps();
        let n_v = self.vertices.len();
        let mut normals = vec![[0.0; 3]; n_v];
        for i in 0..self.na {
            for j in 0..self.nb {
                let (xa, xb) = self.tangents(i, j);
                let n = cross(xa, xb);
                let len = norm(n);
                if !(len > 0.0) || !len.is_finite() {
                    return Err(Error::Degenerate(format!("degenerate tangent plane at vertex ({i}, {j})")));
                }
                normals[self.index(i, j)] = scale(n, 1.0 / len);
            }
        }
        let mut conformality = vec![None; n_v];
        let mut h_mean = vec![None; n_v];
        let mut ratio = vec![None; n_v];
        for i in 0..self.na {
            for j in 0..self.nb {
                if !self.is_interior(i, j) {
                    continue;
                }
                let k = self.index(i, j);
                let (p, nx) = self.b_neighbors(j);
                let (p, nx) = (p.unwrap(), nx.unwrap());
                let x = self.vertices[k];
                let (xa, xb) = self.tangents(i, j);
                let trace = dot(xa, xa) + dot(xb, xb);
                conformality[k] = Some(dot(xa, xb).abs() / trace);
                let xaa = scale(
                    add(sub(self.vertices[self.index(i + 1, j)], scale(x, 2.0)), self.vertices[self.index(i - 1, j)]),
                    1.0 / (da * da),
                );
                let xbb = scale(
                    add(sub(self.vertices[self.index(i, nx)], scale(x, 2.0)), self.vertices[self.index(i, p)]),
                    1.0 / (db * db),
                );
                let n = normals[k];
                let h_e = dot(n, add(xaa, xbb)) / trace;
                h_mean[k] = Some(x[2] * h_e + n[2]);
                if let Some(ds2) = self.metric[k].and_then(|m| m.ds2_factor) {
                    let jac = self.grid.jacobian(self.params[k]);
                    ratio[k] = Some(0.5 * trace / (x[2] * x[2]) / (ds2 * jac * jac));
                }
            }
        }
        let mut hs: Vec<f64> = h_mean.iter().flatten().copied().collect();
        if !hs.is_empty() {
            hs.sort_by(f64::total_cmp);
            if hs[hs.len() / 2] < 0.0 {
                for n in normals.iter_mut() {
                    *n = scale(*n, -1.0);
                }
                for h in h_mean.iter_mut().flatten() {
                    *h = -*h;
                }
            }
        }
        self.normals = normals;
        self.diagnostics.conformality = conformality;
        self.diagnostics.mean_curvature = h_mean;
        self.diagnostics.metric_ratio = ratio;
        Ok(())
    }

    /// Intrinsic Gaussian curvature at interior vertices by angle defect,
    /// with hyperbolic edge lengths and both diagonal splits of each quad
    /// averaged.
    pub fn angle_defect_curvature(&self) -> Vec<Option<f64>> {
        let n_v = self.vertices.len();
        let mut out = vec![None; n_v];
        let mut angle = [vec![0.0; n_v], vec![0.0; n_v]];
        let mut area = [vec![0.0; n_v], vec![0.0; n_v]];
        let d = |a: usize, b: usize| hyperbolic_distance(self.vertices[a], self.vertices[b]);
        for q in &self.faces {
            for (split, tris) in
                [[[q[0], q[1], q[2]], [q[0], q[2], q[3]]], [[q[0], q[1], q[3]], [q[1], q[2], q[3]]]].iter().enumerate()
            {
                for t in tris {
                    let (l01, l12, l20) = (d(t[0], t[1]), d(t[1], t[2]), d(t[2], t[0]));
                    let s = 0.5 * (l01 + l12 + l20);
                    let a = (s * (s - l01) * (s - l12) * (s - l20)).max(0.0).sqrt();
                    let ang = |opp: f64, x: f64, y: f64| {
                        ((x * x + y * y - opp * opp) / (2.0 * x * y)).clamp(-1.0, 1.0).acos()
                    };
                    angle[split][t[0]] += ang(l12, l01, l20);
                    angle[split][t[1]] += ang(l20, l01, l12);
                    angle[split][t[2]] += ang(l01, l12, l20);
                    for &v in t {
                        area[split][v] += a / 3.0;
                    }
                }
            }
        }
        for i in 0..self.na {
            for j in 0..self.nb {
                if self.is_interior(i, j) {
                    let k = self.index(i, j);
                    let k0 = (2.0 * std::f64::consts::PI - angle[0][k]) / area[0][k];
                    let k1 = (2.0 * std::f64::consts::PI - angle[1][k]) / area[1][k];
                    out[k] = Some(0.5 * (k0 + k1));
                }
            }
        }
        out
    }

    pub fn is_interior_vertex(&self, k: usize) -> bool {
        self.is_interior(k / self.nb, k % self.nb)
    }
}
