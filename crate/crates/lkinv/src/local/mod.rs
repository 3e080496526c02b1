//! Local invariants of conic germs and the integer layer for complex germs.

pub mod complex;
pub mod germ;
pub mod mlcc;
pub mod polar;
pub mod spherical;

pub use complex::{complex_report, euler_obstruction, kashiwara_e, sigma_tilde_from_mu, ComplexGermData, ComplexReport, Stratum};
pub use germ::{conic_intrinsic_volumes, density, germ_intrinsic_volumes, local_lk, local_lk_with, ConicGerm, ConicGermJson};
pub use mlcc::{mlcc_entry, mlcc_matrix, mlcc_verify, MlccMatrix, MlccReport};
pub use polar::{polar_invariant, polar_invariants_exact, pushforward, theta, ConstructibleFn, Sector};
pub use spherical::{spherical_valuations, SphericalValuations};
