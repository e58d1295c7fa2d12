//! Subrepresentation counts and semi-invariant weight spaces of quiver
//! representations, computed from Littlewood-Richardson coefficients.

pub mod counting;
pub mod covariants;
pub mod field;
pub mod instance;
pub mod linalg;
pub mod lr;
pub mod oracles;
pub mod partition;
pub mod quiver;
pub mod suites;

pub use counting::{
    count_subreps, fiber_class, si_dimension, triple_flag_instance, verify_theorem1, weight_of, CountError,
    CountReport, FiberClass,
};
pub use covariants::{build_hat, covariant_count, covariant_multiplicity, CovariantError, HatInstance, VertexLabeling};
pub use field::{Elem, FieldError, FiniteField};
pub use instance::{Instance, ParseError};
pub use linalg::Matrix;
pub use lr::{schubert_multiply, LrEngine, LrError, SchubertElement};
pub use partition::{Partition, PartitionError, Rectangle};
pub use quiver::{euler_form, DimVector, FFRep, Quiver, QuiverError, Weight};

pub use num_bigint::BigUint;
