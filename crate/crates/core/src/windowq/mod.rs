//! Construction Q: the dodecagonal window `V⊥`, patches of the packing
//! `Q10`, exact packing certificates, the singular kissing configuration,
//! density and the tiling of special centers.

mod density;
mod kissing;
mod patch;
mod svg;
mod tiling;
mod verify;
mod window;

pub use density::{
    complete_disc_sq, density_estimate, density_from_patch, exact_density, find_translation_symmetry, DensityEstimate,
};
pub use kissing::{contact_points, kissing_configuration, ContactPoint, FiberContacts, KissingConfiguration};
pub use patch::{generate_patch, read_patch_json, write_patch_json, PackedPoint, PatchRecord};
pub use svg::{patch_svg, tiling_svg};
pub use tiling::{extract_tiling, Face, FaceKind, Ring, Tiling};
pub use verify::{
    boundary_layer, difference_level, forbidden_partners, neighbor_shell, verify_packing, Neighbor, PackingCertificate,
    PairDistance,
};
pub use window::{window_area, window_contains, Location, WindowSpec};
