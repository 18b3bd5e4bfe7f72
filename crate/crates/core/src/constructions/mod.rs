//! The two distance constructions and the tools around them: transporting
//! vectors, sampling integral generators and testing exponential lengths.

mod harvest;
mod spectrum;
mod thm1;
mod thm2;
mod witt;

pub use harvest::{harvest_generators, Generator, GeneratorSet};
pub use spectrum::{
    exp_length_salem_check, random_words, spectrum_sample, SpectrumEntry, SpectrumReport, UNDETERMINED,
};
pub use thm1::{
    build_thm1_form, rotation_coefficients, rotation_param, thm1_search, Thm1Checks, Thm1Form, Thm1Instance,
};
pub use thm2::{
    build_thm2, displayed_taus, expected_charpoly, second_normal, thm2_gram, Thm2Checks, Thm2Instance,
};
pub use witt::witt_transporter;
