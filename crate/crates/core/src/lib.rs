//! Exact cohomology bookkeeping for ACM curves in `P^4` and on the smooth
//! quadric threefold `Q`: Hilbert functions, ideal-sheaf cohomology tables,
//! Castelnuovo–Mumford regularity, complete-intersection liaison, and
//! E-type / N-type resolutions built from twisted line bundles and the
//! rank-2 spinor-type bundle `E0`.

pub mod anchors;
pub mod classification;
pub mod cohomology;
pub mod hilbert;
pub mod liaison;
pub mod sheaf;
pub mod window;

pub use classification::{
    enumerate_rank4_candidates, generator_estimate, kernel_table_from_resolution, match_acm_kernel,
    ClassifyError, Family, GeneratorEstimate, TwistBounds,
};
pub use cohomology::{
    full_ideal_table, ideal_h0_table, regularity, section_table, Cell, CohomError, CohomTable,
    CurveClass, Feasibility, RegularityReport, TableFlag,
};
pub use hilbert::{binom, h0_proj, h0_quadric3, h0_spinor, Ambient, AtomKind, TwistAtom};
pub use liaison::{
    ci_residual, mapping_cone_e_from_n, mapping_cone_n_from_e, resolution_consistency_check,
    CiLinkage, ConeOutput, ConsistencyReport, Flavor, LinkError, Residual, ResolutionTriple,
};
pub use sheaf::{SheafError, SheafExpr};
pub use window::{HilbertRow, Window, WindowError};
