//! Spectrum of the Jacobi operator in the pseudometric for `G = z^μ`:
//! closed forms and an independent radial finite-element solver.

pub mod eigen;
mod numeric;
mod oracle;

pub use eigen::{eig_gen_sym, symmetric_eigen, TridiagPencil};
pub use numeric::{
    assemble_mode, numeric_spectrum, radial_weight, Boundary, ModeSpectrum, RadialProblem, SpectrumOptions,
    SpectrumReport, SpectrumRow, INDEX_THRESHOLD,
};
pub use oracle::{
    analytic_index, eigenfunction, enumerate_below, lambda_pq, phi_pq, radial_eigenfunction, radial_profile,
    AnalyticIndex, EigenPair, GaussMapZmu, Parity,
};
