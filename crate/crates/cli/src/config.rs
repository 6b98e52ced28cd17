//! Run configuration: JSON file values overridden by command-line flags.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Parameters shared by all subcommands. Every field is optional so that a
/// file and the flags can be merged field by field.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    /// Catalog example name
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    /// Exponent μ of the secondary Gauss map
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    /// Integer parameter k (Enneper and Costa cousins)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    /// Number of ends n (n-noid cousins, G = z^n)
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Catalog surface is a small deformation of its minimal counterpart
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub small_deformation: Option<bool>,
    /// Exponent ν of ω = z^ν·ŵ at an end
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// Leading Hopf coefficient q₋₂ as `re` or `re,im`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_minus2: Option<Vec<f64>>,
    /// Grid size `AxB`
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    /// Annulus radii `r0,r1`
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    /// Rectangle `x0,x1,y0,y1`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rect: Option<Vec<f64>>,
    /// Largest eigenvalue listed
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<f64>,
    /// Convergence tolerance (spectrum) or relative horizon tolerance
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    /// Half-width of the band counted as nullity
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub null_band: Option<f64>,
    /// Killing field: rotation, dilation or translation
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Radius of the monodromy loop around the origin
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_radius: Option<f64>,
    /// Output path; `-` or absent writes the primary artifact to stdout
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($f:ident),*) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f.clone(); } )*
    };
}

impl Params {
    /// Values of `top` win over `self`.
    pub fn overlay(mut self, top: &Params) -> Params {
        overlay!(
            self,
            top,
            example,
            mu,
            k,
            n,
            small_deformation,
            nu,
            q_minus2,
            grid,
            radii,
            rect,
            cutoff,
            tol,
            null_band,
            field,
            loop_radius,
            out
        );
        self
    }

    pub fn from_file(path: &Path) -> Result<Params, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Parse `AxB` into two positive sizes.
pub fn parse_grid(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Config(format!("grid {s:?} is not of the form AxB"));
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a < 2 || b < 2 {
        return Err(CliError::Config(format!("grid {s:?} needs at least 2 points per direction")));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = Params { mu: Some(1.0), cutoff: Some(3.0), ..Params::default() };
        let flags = Params { mu: Some(2.5), ..Params::default() };
        let merged = file.overlay(&flags);
        assert_eq!((merged.mu, merged.cutoff), (Some(2.5), Some(3.0)));
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("16x16").unwrap(), (16, 16));
        assert_eq!(parse_grid("40X32").unwrap(), (40, 32));
        assert!(parse_grid("16").is_err());
        assert!(parse_grid("1x5").is_err());
    }
}
