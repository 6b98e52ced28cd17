//! Subcommand implementations. Each returns the files it wants written.

use std::path::{Path as FsPath, PathBuf};

use cmc_core::ends::{asymptotic_graph, classify_end, indicial_roots, unnormalized_constants, EndData};
use cmc_core::geometry::{Facing, GridSpec, SurfaceMesh};
use cmc_core::index::{catalog_lookup, CatalogEntry};
use cmc_core::killing::{end_projection_limit, vision_numbers, KillingField, KillingKind, ProjectionLimit};
use cmc_core::spectral::{numeric_spectrum, SpectrumOptions};
use cmc_core::weierstrass::catalog::Example;
use cmc_core::{cplx, monodromy, Cplx, Mat2, Path};
use serde::Serialize;

use crate::config::{parse_grid, Params};
use crate::emit;
use crate::error::CliError;

pub const DEFAULT_GRID: &str = "32x32";
const DEFAULT_HORIZON_TOL: f64 = 1e-6;
const LOOP_POINTS: usize = 256;

/// Where an artifact goes.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Stdout,
    File(PathBuf),
}

pub struct Artifact {
    pub target: Target,
    pub contents: String,
}

fn primary_target(p: &Params) -> Target {
    match &p.out {
        Some(path) if path.as_os_str() != "-" => Target::File(path.clone()),
        _ => Target::Stdout,
    }
}

/// Companion path next to the primary output, e.g. `mesh.obj` → `mesh.ends.json`.
fn sibling(path: &FsPath, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn example(p: &Params) -> Result<Example, CliError> {
    let name = p.example.as_deref().ok_or_else(|| CliError::Config("missing --example".into()))?;
    Ok(Example::from_name(name, p.mu, p.k)?)
}

fn field_kind(p: &Params) -> Result<KillingKind, CliError> {
    let s = p.field.as_deref().unwrap_or("dilation");
    s.parse().map_err(|_| CliError::Config(format!("--field must be rotation, dilation or translation, not {s:?}")))
}

fn q_minus2(p: &Params) -> Result<Cplx, CliError> {
    match p.q_minus2.as_deref() {
        None => Err(CliError::Config("missing --q-minus2".into())),
        Some([re]) => Ok(cplx(*re, 0.0)),
        Some([re, im]) => Ok(cplx(*re, *im)),
        Some(_) => Err(CliError::Config("--q-minus2 takes `re` or `re,im`".into())),
    }
}

/// Fill the defaults a subcommand depends on, so that the embedded config
/// is exactly what ran.
pub fn resolve(cmd: &str, mut p: Params) -> Result<Params, CliError> {
    match cmd {
        "surface" | "horizon" => {
            let ex = example(&p)?;
            p.grid.get_or_insert_with(|| DEFAULT_GRID.to_string());
            match ex {
                Example::CatenoidCousin { .. } | Example::UyExample => {
                    let default = if ex == Example::UyExample { vec![0.1, 10.0] } else { vec![0.01, 100.0] };
                    p.radii.get_or_insert(default);
                }
                _ => {
                    p.rect.get_or_insert(vec![-1.0, 1.0, -1.0, 1.0]);
                }
            }
            if cmd == "horizon" {
                p.field.get_or_insert_with(|| "dilation".into());
                p.tol.get_or_insert(DEFAULT_HORIZON_TOL);
            }
        }
        "spectrum" => {
            if p.mu.is_none() {
                if p.example.is_some() {
                    p.mu = example(&p)?.gauss_exponent();
                }
                if p.mu.is_none() {
                    return Err(CliError::Config("spectrum needs --mu or an example with G = z^μ".into()));
                }
            }
            let d = SpectrumOptions::default();
            p.cutoff.get_or_insert(d.cutoff);
            p.tol.get_or_insert(d.tol);
            p.null_band.get_or_insert(d.null_band);
        }
        "index" => {
            if p.example.is_none() {
                if p.mu.is_none() {
                    return Err(CliError::Config("index needs --example or --mu".into()));
                }
                p.example = Some("catenoid-cousin".into());
            }
        }
        "monodromy" => {
            example(&p)?;
            p.loop_radius.get_or_insert(0.5);
        }
        "ends" => {}
        other => return Err(CliError::Usage(format!("unknown subcommand {other:?}"))),
    }
    Ok(p)
}

fn grid_spec(p: &Params) -> Result<GridSpec, CliError> {
    let (a, b) = parse_grid(p.grid.as_deref().unwrap_or(DEFAULT_GRID))?;
    let grid = if let Some(r) = &p.radii {
        let [r0, r1] = r[..] else {
            return Err(CliError::Config("--radii takes `r0,r1`".into()));
        };
        GridSpec::Annulus { r: [r0, r1], nr: a, ntheta: b, theta: None }
    } else {
        let rect = p.rect.clone().unwrap_or_else(|| vec![-1.0, 1.0, -1.0, 1.0]);
        let [x0, x1, y0, y1] = rect[..] else {
            return Err(CliError::Config("--rect takes `x0,x1,y0,y1`".into()));
        };
        GridSpec::Rect { x: [x0, x1], y: [y0, y1], nx: a, ny: b }
    };
    grid.validate()?;
    Ok(grid)
}

#[derive(Serialize)]
struct LoopMeta<'a> {
    name: &'a str,
    facing: Facing,
    vertices: &'a [usize],
}

#[derive(Serialize)]
struct SurfaceMeta<'a> {
    config: &'a Params,
    example: Example,
    grid: GridSpec,
    vertex_count: usize,
    face_count: usize,
    gauss_exponent: Option<f64>,
    boundary: Vec<LoopMeta<'a>>,
    max_det_drift: f64,
}

fn surface_mesh(p: &Params) -> Result<(Example, SurfaceMesh), CliError> {
    let ex = example(p)?;
    let mesh = ex.mesh(&grid_spec(p)?)?;
    Ok((ex, mesh))
}

pub fn surface(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let (ex, mesh) = surface_mesh(p)?;
    let obj = emit::obj(&mesh, |_| true);
    let meta = SurfaceMeta {
        config: p,
        example: ex,
        grid: mesh.grid,
        vertex_count: mesh.vertices.len(),
        face_count: mesh.faces.len(),
        gauss_exponent: ex.gauss_exponent(),
        boundary: mesh
            .boundary
            .iter()
            .map(|l| LoopMeta { name: &l.name, facing: l.facing, vertices: &l.vertices })
            .collect(),
        max_det_drift: mesh.diagnostics.max_det_drift,
    };
    let path = p.out.clone().unwrap_or_else(|| PathBuf::from("surface.obj"));
    Ok(vec![
        Artifact { target: Target::File(sibling(&path, ".ends.json")), contents: emit::json(&meta)? },
        Artifact { target: Target::File(path), contents: obj },
    ])
}

#[derive(Serialize)]
struct SpectrumSummary<'a> {
    config: &'a Params,
    options: SpectrumOptions,
    threshold: f64,
    ind_u_numeric: u32,
    nullity_numeric: u32,
    modes: Vec<ModeSummary>,
}

#[derive(Serialize)]
struct ModeSummary {
    q: u32,
    s_max: f64,
    nodes: usize,
    shift: f64,
}

pub fn spectrum(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let mu = p.mu.expect("resolved");
    let opts = SpectrumOptions {
        cutoff: p.cutoff.expect("resolved"),
        tol: p.tol.expect("resolved"),
        null_band: p.null_band.expect("resolved"),
        ..SpectrumOptions::default()
    };
    let report = numeric_spectrum(mu, &opts)?;
    let mut out = vec![Artifact { target: primary_target(p), contents: emit::csv(&report.rows) }];
    if let Target::File(path) = primary_target(p) {
        let summary = SpectrumSummary {
            config: p,
            options: opts,
            threshold: report.threshold,
            ind_u_numeric: report.ind_u_numeric,
            nullity_numeric: report.nullity_numeric,
            modes: report
                .modes
                .iter()
                .map(|m| ModeSummary { q: m.q, s_max: m.s_max, nodes: m.n_final, shift: m.shift })
                .collect(),
        };
        out.push(Artifact { target: Target::File(sibling(&path, ".json")), contents: emit::json(&summary)? });
    }
    Ok(out)
}

#[derive(Serialize)]
struct IndexDoc<'a> {
    config: &'a Params,
    entry: CatalogEntry,
    report: cmc_core::index::IndexReport,
}

pub fn index(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let name = p.example.as_deref().expect("resolved");
    let entry = CatalogEntry::from_name(name, p.mu, p.k, p.n, p.small_deformation.unwrap_or(false))?;
    let report = catalog_lookup(&entry)?;
    Ok(vec![Artifact { target: primary_target(p), contents: emit::json(&IndexDoc { config: p, entry, report })? }])
}

#[derive(Serialize)]
struct HorizonDoc<'a> {
    config: &'a Params,
    example: Example,
    grid: GridSpec,
    result: cmc_core::killing::HorizonResult,
}

pub fn horizon(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let (ex, mesh) = surface_mesh(p)?;
    let field = KillingField::new(field_kind(p)?);
    let result = vision_numbers(&mesh, &field, p.tol.expect("resolved"))?;
    // the highlighted OBJ carries only the horizon faces
    let obj = emit::obj(&mesh, |fi| result.face_sign[fi] == 0);
    let path = p.out.clone().unwrap_or_else(|| PathBuf::from("horizon.json"));
    let doc = HorizonDoc { config: p, example: ex, grid: mesh.grid, result };
    Ok(vec![
        Artifact { target: Target::File(sibling(&path, ".obj")), contents: obj },
        Artifact { target: Target::File(path), contents: emit::json(&doc)? },
    ])
}

#[derive(Serialize)]
struct FieldLimit {
    field: KillingKind,
    limit: ProjectionLimit,
}

#[derive(Serialize)]
struct EndsDoc<'a> {
    config: &'a Params,
    end: EndData,
    indicial_roots: [[Cplx; 2]; 2],
    /// `(c₁, c₂)` before normalisation; absent when degenerate
    constants: Option<(f64, f64)>,
    height_factor: Option<f64>,
    correction_exponent: Option<f64>,
    projection_limits: Vec<FieldLimit>,
}

/// End data of the catalog examples at the end `z = 0`.
fn example_end(ex: Example) -> Result<(f64, f64, Cplx), CliError> {
    match ex {
        Example::UyExample => Ok((1.0, -2.0, cplx(2.0, 0.0))),
        Example::CatenoidCousin { mu } => Ok((mu, -mu - 1.0, cplx((1.0 - mu * mu) / 4.0, 0.0))),
        other => Err(CliError::Core(cmc_core::Error::Precondition(format!(
            "{} has no end at z = 0; pass --mu, --nu and --q-minus2",
            other.name()
        )))),
    }
}

pub fn ends(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let (mu, nu, q) = match (&p.example, p.nu) {
        (Some(_), None) => example_end(example(p)?)?,
        _ => (
            p.mu.ok_or_else(|| CliError::Config("ends needs --mu".into()))?,
            p.nu.ok_or_else(|| CliError::Config("ends needs --nu".into()))?,
            q_minus2(p)?,
        ),
    };
    let end = classify_end(mu, nu, q)?;
    let graph = asymptotic_graph(&end, cplx(1.0, 0.0)).ok();
    let projection_limits = [KillingKind::Rotation, KillingKind::Dilation, KillingKind::Translation]
        .into_iter()
        .map(|field| Ok(FieldLimit { field, limit: end_projection_limit(&end, field)? }))
        .collect::<Result<Vec<_>, cmc_core::Error>>()?;
    let doc = EndsDoc {
        config: p,
        end,
        indicial_roots: indicial_roots(&end),
        constants: unnormalized_constants(&end).ok(),
        height_factor: graph.map(|g| g.height_factor),
        correction_exponent: graph.map(|g| g.correction_exponent),
        projection_limits,
    };
    Ok(vec![Artifact { target: primary_target(p), contents: emit::json(&doc)? }])
}

#[derive(Serialize)]
struct MonodromyDoc<'a> {
    config: &'a Params,
    example: Example,
    base: Cplx,
    center: Cplx,
    radius: f64,
    b: Mat2,
    in_su2: bool,
    defect: f64,
    det_defect: f64,
}

pub fn monodromy_cmd(p: &Params) -> Result<Vec<Artifact>, CliError> {
    let ex = example(p)?;
    let data = ex.data()?;
    let radius = p.loop_radius.expect("resolved");
    let center = cplx(0.0, 0.0);
    let path = Path::loop_around(data.z0, center, radius, LOOP_POINTS)?;
    let m = monodromy(&data, &path)?;
    let doc = MonodromyDoc {
        config: p,
        example: ex,
        base: data.z0,
        center,
        radius,
        b: m.b,
        in_su2: m.in_su2,
        defect: m.defect,
        det_defect: m.det_defect,
    };
    Ok(vec![Artifact { target: primary_target(p), contents: emit::json(&doc)? }])
}
