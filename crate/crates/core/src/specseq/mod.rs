//! Bigraded spectral-sequence pages with explicitly specified differentials.

mod bokstedt;
mod page;

pub use bokstedt::{
    bokstedt_e2, bokstedt_pattern, bokstedt_presentation, run_bokstedt, BokstedtVariant, SpectralSequenceRun,
};
pub use page::{
    e_infinity_dims, page_from_presentation, possible_differentials, turn_page, BigradedPage, DifferentialSpec,
    SpecEntry, Spot,
};
