mod free;
mod malcev;
mod sparse;

pub use free::{free_lie_dims, lyndon_words, FreeLieTruncation};
pub use malcev::{
    malcev_truncation, morgan_degree_check, relator_logs, DegreeKind, GradedQuotient, MorganVerdict, RelatorLog,
    VarietyClass, MALCEV_DEFAULT_DEGREE, MALCEV_MAX_DEGREE,
};
pub use sparse::SVec;
