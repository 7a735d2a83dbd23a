mod battery;
mod checks;

pub use battery::{
    resonance_levels, run_battery, BatteryInput, BatteryOptions, ComponentRecord, ObstructionReport,
};
pub use checks::{
    check_curve_profiles, check_even_b1, check_isotropy, check_morgan, check_pairwise_intersections, check_raag,
    check_tangent_cone, curve_profiles, isotropy_class, raag_classify, Check, CurveProfile, IsotropyClass,
    LevelComponents, RaagClassification, Verdict,
};
