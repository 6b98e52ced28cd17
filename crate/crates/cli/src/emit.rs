//! Deterministic text output: every float carries 17 significant digits.

use std::io::{self, Write};

use cmc_core::geometry::SurfaceMesh;
use cmc_core::spectral::SpectrumRow;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::CliError;

/// `d.dddddddddddddddde±x`
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// Pretty JSON with fixed-precision floats.
struct SigFormatter(PrettyFormatter<'static>);

impl Formatter for SigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(|e| CliError::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

/// `v`, `vn` and quad `f` records of the faces selected by `keep`.
pub fn obj(mesh: &SurfaceMesh, keep: impl Fn(usize) -> bool) -> String {
    let mut s = String::new();
    for v in &mesh.vertices {
        s += &format!("v {} {} {}\n", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
    }
    for n in &mesh.normals {
        s += &format!("vn {} {} {}\n", fmt_f64(n[0]), fmt_f64(n[1]), fmt_f64(n[2]));
    }
    for (fi, f) in mesh.faces.iter().enumerate() {
        if keep(fi) {
            let idx: Vec<String> = f.iter().map(|&k| format!("{0}//{0}", k + 1)).collect();
            s += &format!("f {}\n", idx.join(" "));
        }
    }
    s
}

pub const CSV_HEADER: &str = "q,rank,lambda_numeric,lambda_analytic,abs_err,multiplicity";

pub fn csv(rows: &[SpectrumRow]) -> String {
    let mut s = format!("{CSV_HEADER}\n");
    for r in rows {
        s += &format!(
            "{},{},{},{},{},{}\n",
            r.q,
            r.rank,
            fmt_f64(r.lambda_numeric),
            fmt_f64(r.lambda_analytic),
            fmt_f64(r.abs_err),
            r.multiplicity
        );
    }
    s
}
