//! Metric, curvature and pseudometric of Bryant surfaces; quadrature of the
//! pseudometric; Rayleigh quotients; sampled meshes with normals.

mod mesh;
mod metric;

pub use mesh::{
    hyperbolic_distance, mesh_generate, BoundaryLoop, EndHints, Facing, GridSpec, IdealPoint, MeshDiagnostics,
    SurfaceMesh,
};
pub use metric::{
    log_radius_cutoff, metric_and_curvature, metric_sample, pseudometric_factor, pseudometric_from_values,
    rayleigh_quotient, total_pseudo_area, GridFunction, MetricSample,
};
