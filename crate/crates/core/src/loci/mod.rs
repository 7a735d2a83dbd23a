mod charvar;
mod resonance;
mod subtorus;

pub use charvar::{charvar_ideal, charvar_member, CharVarIdeal};
pub use resonance::{
    generic_multiplication_rank, resonance_components, resonance_member, symbolic_multiplication, LinearComponent,
    ResonanceLocus, SamplerConfig, DEFAULT_SEED,
};
pub use subtorus::{
    charvar_tower, components_through_identity, exp_map, subtorus_level, subtorus_verify, translated_components,
    SubtorusComponent, TorsionScan, Translate, TranslatedScan, VerifiedSubtorus,
};
