//! Hall algebra of quiver representations over finite fields, the `ε` elements, and naive
//! DT invariants obtained by specializing point counts at `q = 1`.

mod dt;
mod element;
mod epsilon;
mod lie;

pub use dt::{
    dt_invariant, epsilon_series, usable_primes, CountSeries, DtReport, DtSample, RationalFunction,
    SAMPLE_PRIMES,
};
pub use element::{HallElement, MAX_POINTS};
pub use epsilon::{epsilon, epsilon_count, epsilon_terms, same_phase, EpsilonTerm};
pub use lie::{antisym, bracket, euler, LieTerm};
