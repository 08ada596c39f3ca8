//! Fusion rings given by structure constants, Frobenius–Perron dimensions,
//! double cosets relative to pairs of fusion subrings, and ring-level
//! tensor functors with their kernels, images and normality.

pub mod corpus;
pub mod cosets;
pub mod element;
pub mod error;
pub mod format;
pub mod fp;
pub mod functor;
pub mod grading;
pub mod group;
pub mod partition;
pub mod report;
pub mod ring;
pub mod subring;
pub mod tol;
pub mod verify;

pub use cosets::{double_cosets, CosetDecomposition};
pub use element::RingElement;
pub use error::{Error, ParseError, Result};
pub use fp::{compute_fp_dims, FPData, Start};
pub use functor::RingFunctor;
pub use grading::Grading;
pub use group::FiniteGroup;
pub use partition::Partition;
pub use report::{Report, Status};
pub use ring::{Axiom, FusionRing, UNIT};
pub use subring::Subring;
