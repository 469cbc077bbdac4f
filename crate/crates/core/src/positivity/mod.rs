//! Zariski decomposition, volumes, and the piecewise-quadratic volume
//! profile `t ↦ vol(L − tE)` on a Picard-lattice model.

mod profile;
mod zariski;

pub use profile::{
    pseff_threshold, volume_profile, volume_profile_class, Chamber, ChamberReport, ProfileReport,
    VolumeProfile,
};
pub use zariski::{
    germ_zariski, verify_zariski, volume, zariski, AffineClass, GermDecomp, NegTerm, ZariskiDecomp,
};
