//! Laguerre-domain representation of the pure time delay: spectra of signals,
//! polynomial Markov parameters, Toeplitz recovery and closed-form delay extraction.

pub mod delay_estimation;
pub mod delay_operator;
pub mod error;
pub mod experiments;
pub mod io;
pub mod laguerre_basis;
pub mod laguerre_poly;
pub mod quadrature;
pub mod spectral_inversion;

pub use delay_estimation::{estimate_delay, DelayEstimate, Method};
pub use delay_operator::{apply_delay, markov, DelaySpec, MarkovSequence, StateSpaceRealization};
pub use error::{Error, Result};
pub use laguerre_basis::{Domain, LaguerreParams, SampledSignal, Spectrum, TimeGrid};
pub use spectral_inversion::{recover_markov, InverseCoeffs, Recovery};
