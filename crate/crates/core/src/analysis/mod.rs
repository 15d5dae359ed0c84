pub mod lower_bound;
pub mod stretch;
pub mod verify;

pub use lower_bound::{lower_bound_instance, LowerBoundInstance};
pub use stretch::{stretch_factor, StretchReport};
pub use verify::{verify_suite, CorpusConfig, Suite};
