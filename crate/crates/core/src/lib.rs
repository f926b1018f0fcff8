//! Exact computations for 2D reflexive polygons: polar duality, mutations,
//! classical periods, Picard–Fuchs operators and the rational elliptic
//! surfaces attached to the pencil `f_P + λ`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod fibration;
pub mod laurent;
pub mod mordell_weil;
pub mod mutation;
pub mod period;
pub mod polygon;
pub mod report;

pub use algebra::{BiPoly, Poly, Rational, UniPoly};
pub use error::{Error, Result};
pub use polygon::{Edge, Polygon, Pt};
pub use laurent::{ChartBasis, LaurentPoly};
pub use mutation::MutationData;
pub use period::{DiffOperator, PowerSeries};
pub use fibration::{EliminationFactor, FibreConfiguration, KodairaType, Location};
pub use report::{AnalysisReport, RunConfig};
pub use mordell_weil::{MWGroup, MWReport, SectionData};
