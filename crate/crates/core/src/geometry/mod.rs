//! Pure, cooperative and noncooperative payoff regions.

pub mod directions;
pub mod hull;
pub mod local;
pub mod membership;
pub mod pure_set;
pub mod sampling;
pub mod support;

pub use hull::{hull_vertices, hull_vertices_of, HullVertex, HullVertexSet};
pub use membership::{membership, membership_exact, MembershipConfig, MembershipWitness};
pub use pure_set::{pure_payoff_set, PurePayoffSet, PurePoint};
pub use sampling::{sample_region, SampleCloud, SampleConfig};
pub use support::{
    support_value, support_value_f64, supporting_hyperplane_check, Hyperplane, HyperplaneReport,
    SupportValue,
};
