//! Integer-relation detection, Dirichlet L-values and supercongruence
//! checks.

pub mod pslq;

pub use pslq::{pslq as find_relation, IntegerRelation};
