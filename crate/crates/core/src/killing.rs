//! Killing fields of the upper half-space, their normal projections on
//! meshes (Jacobi fields), horizons and vision numbers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::ends::EndData;
use crate::error::{Error, Result};
use crate::geometry::{Facing, IdealPoint, SurfaceMesh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KillingKind {
    /// rotation about the `x3` axis, `(−x2, x1, 0)`
    Rotation,
    /// dilation from the origin, `(x1, x2, x3)`
    Dilation,
    /// translation along the geodesic from `(−1, 0)` to `(1, 0)`; `(1, 0, 0)` at the origin
    Translation,
}

impl std::str::FromStr for KillingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotation" => Ok(KillingKind::Rotation),
            "dilation" => Ok(KillingKind::Dilation),
            "translation" => Ok(KillingKind::Translation),
            other => Err(Error::Precondition(format!("unknown field kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KillingField {
    pub kind: KillingKind,
    pub fixed_points: [IdealPoint; 2],
}

impl KillingField {
    pub fn new(kind: KillingKind) -> Self {
        let fixed_points = match kind {
            KillingKind::Rotation | KillingKind::Dilation => [IdealPoint::Finite([0.0, 0.0]), IdealPoint::Infinity],
            KillingKind::Translation => [IdealPoint::Finite([-1.0, 0.0]), IdealPoint::Finite([1.0, 0.0])],
        };
        KillingField { kind, fixed_points }
    }

    pub fn fixes(&self, p: &IdealPoint) -> bool {
        self.fixed_points.iter().any(|f| f.approx_eq(p))
    }
}

pub fn killing_at(field: &KillingField, x: [f64; 3]) -> Result<[f64; 3]> {
    if !(x[2] > 0.0) {
        return Err(Error::Precondition(format!("x3 = {} is not in the upper half-space", x[2])));
    }
    let [x1, x2, x3] = x;
    Ok(match field.kind {
        KillingKind::Rotation => [-x2, x1, 0.0],
        KillingKind::Dilation => [x1, x2, x3],
        // the quaternionic extension of z ↦ 1 − z²
        KillingKind::Translation => [1.0 - x1 * x1 + x2 * x2 + x3 * x3, -2.0 * x1 * x2, -2.0 * x1 * x3],
    })
}

/// `u = ⟨φ, N⟩` with `N = x3·n` the hyperbolic unit normal: `u = φ·n / x3`.
pub fn normal_projection_field(mesh: &SurfaceMesh, field: &KillingField) -> Result<Vec<f64>> {
    if mesh.normals.len() != mesh.vertices.len() {
        return Err(Error::Precondition("mesh has no normals".into()));
    }
    mesh.vertices
        .iter()
        .zip(&mesh.normals)
        .map(|(x, n)| {
            let phi = killing_at(field, *x)?;
            Ok((phi[0] * n[0] + phi[1] * n[1] + phi[2] * n[2]) / x[2])
        })
        .collect()
}

/// Hyperbolic length `|φ|/x3`: the scale against which `u` is judged small.
fn field_scale(mesh: &SurfaceMesh, field: &KillingField) -> Result<f64> {
    let mut s: f64 = 0.0;
    for x in &mesh.vertices {
        let phi = killing_at(field, *x)?;
        s = s.max((phi[0] * phi[0] + phi[1] * phi[1] + phi[2] * phi[2]).sqrt() / x[2]);
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VisibleComponent {
    pub faces: Vec<usize>,
    pub sign: i8,
    /// boundary loops the component reaches
    pub touches: Vec<String>,
    /// `None` when a reached loop has no usable end metadata
    pub counted_in_adjusted: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HorizonResult {
    pub field: KillingField,
    pub tol: f64,
    pub vertex_u: Vec<f64>,
    /// `−1`, `0` (horizon) or `1` per face
    pub face_sign: Vec<i8>,
    /// mesh edges across which `u` changes sign
    pub horizon_edges: Vec<[usize; 2]>,
    pub components: Vec<VisibleComponent>,
    pub v: usize,
    /// `None` when end metadata is missing for some component
    pub v_adj: Option<usize>,
    pub degenerate: bool,
}

/// Horizon and visible sets of `field` on `mesh`. A face joins the horizon
/// when its vertex-averaged `|u|` is at most `rel_tol` times the largest
/// hyperbolic length of `φ` on the mesh, or when its vertices straddle zero.
pub fn vision_numbers(mesh: &SurfaceMesh, field: &KillingField, rel_tol: f64) -> Result<HorizonResult> {
    if !(rel_tol >= 0.0) {
        return Err(Error::Precondition("tolerance must be nonnegative".into()));
    }
    if mesh.faces.is_empty() {
        return Err(Error::Degenerate("mesh has no faces".into()));
    }
    let u = normal_projection_field(mesh, field)?;
    let tol = rel_tol * field_scale(mesh, field)?;
    let mut small = 0usize;
    let face_sign: Vec<i8> = mesh
        .faces
        .iter()
        .map(|f| {
            let avg = f.iter().map(|&v| u[v]).sum::<f64>() / f.len() as f64;
            if avg.abs() <= tol {
                small += 1;
            }
            let pos = f.iter().any(|&v| u[v] > 0.0);
            let neg = f.iter().any(|&v| u[v] < 0.0);
            if avg.abs() <= tol || (pos && neg) {
                0
            } else if avg > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let degenerate = 2 * small > mesh.faces.len();

    // faces sharing an edge
    let mut edge_faces: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        for k in 0..f.len() {
            let (a, b) = (f[k], f[(k + 1) % f.len()]);
            edge_faces.entry([a.min(b), a.max(b)]).or_default().push(fi);
        }
    }
    let horizon_edges: Vec<[usize; 2]> = edge_faces.keys().filter(|e| u[e[0]] * u[e[1]] < 0.0).copied().collect();

    let mut parent: Vec<usize> = (0..mesh.faces.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for faces in edge_faces.values() {
        for w in faces.windows(2) {
            let (a, b) = (w[0], w[1]);
            if face_sign[a] != 0 && face_sign[a] == face_sign[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (fi, &sign) in face_sign.iter().enumerate() {
        if sign != 0 {
            let r = find(&mut parent, fi);
            groups.entry(r).or_default().push(fi);
        }
    }

    let loop_sets: Vec<BTreeSet<usize>> = mesh.boundary.iter().map(|l| l.vertices.iter().copied().collect()).collect();
    let components: Vec<VisibleComponent> = groups
        .into_values()
        .map(|faces| {
            let mut touches = vec![];
            let mut counted = Some(true);
            for (l, set) in mesh.boundary.iter().zip(&loop_sets) {
                if faces.iter().any(|&fi| mesh.faces[fi].iter().any(|v| set.contains(v))) {
                    touches.push(l.name.clone());
                    counted = match (counted, l.facing) {
                        (None, _) => None,
                        (Some(c), Facing::End { ideal }) => Some(c && field.fixes(&ideal)),
                        (Some(_), Facing::EndUnknownLimit | Facing::Unknown) => None,
                    };
                }
            }
            VisibleComponent { sign: face_sign[faces[0]], faces, touches, counted_in_adjusted: counted }
        })
        .collect();
    let v = components.len();
    let v_adj = components.iter().map(|c| c.counted_in_adjusted.map(usize::from)).sum::<Option<usize>>();
    Ok(HorizonResult { field: *field, tol, vertex_u: u, face_sign, horizon_edges, components, v, v_adj, degenerate })
}

/// Limit of the normal projection approaching an end at the origin of the
/// upper half-space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionLimit {
    pub bounded: bool,
    /// `None` when divergent
    pub limit: Option<f64>,
}

pub fn end_projection_limit(end: &EndData, kind: KillingKind) -> Result<ProjectionLimit> {
    if end.ord_q < -2 || end.m == 0 {
        return Err(Error::NotRegular(format!("end with ord(Q) = {} and m = {}", end.ord_q, end.m)));
    }
    Ok(match kind {
        KillingKind::Translation => ProjectionLimit { bounded: false, limit: None },
        KillingKind::Dilation => ProjectionLimit { bounded: true, limit: Some(-end.mu / end.m as f64) },
        KillingKind::Rotation => ProjectionLimit { bounded: true, limit: Some(0.0) },
    })
}
