//! Deliberate defects used to check that the verification suites notice them.
//!
//! Faults are carried by the objects they affect (never global state), so a
//! faulty instance cannot leak into unrelated computations.

/// Switches for seeded defects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Faults {
    /// Barycenter search only considers tuple entries as candidates.
    pub barycenter_entries_only: bool,
    /// Alternation forgets permutation signs (symmetrizes instead).
    pub alternation_drops_sign: bool,
    /// The mapping-cone differential uses `+∂` in the lower-right block.
    pub cone_sign_flip: bool,
}

impl Faults {
    pub const NONE: Faults = Faults {
        barycenter_entries_only: false,
        alternation_drops_sign: false,
        cone_sign_flip: false,
    };

    pub fn by_name(name: &str) -> Option<Faults> {
        let mut f = Faults::NONE;
        match name {
            "none" => {}
            "barycenter-candidates" => f.barycenter_entries_only = true,
            "alternation-sign" => f.alternation_drops_sign = true,
            "cone-sign" => f.cone_sign_flip = true,
            _ => return None,
        }
        Some(f)
    }

    pub const NAMES: [&'static str; 3] = ["barycenter-candidates", "alternation-sign", "cone-sign"];
}
