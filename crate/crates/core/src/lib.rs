//! Root subsystems of loop extensions of crystallographic root systems.
//!
//! Everything here is exact integer arithmetic over abstract simple-root
//! coordinates. The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use looproot_core::catalog::named;
//! use looproot_core::loop_classifier::{build_root_function, classify_root_function, ClassifiedPair};
//! use looproot_core::{Coweight, HeightBound, RootSystem, Subsystem};
//!
//! let rs = RootSystem::generate(&named("b2").unwrap(), HeightBound::UnboundedFinite).unwrap();
//! let full = Subsystem::generated_by(&rs, rs.roots()).unwrap();
//! let pair = ClassifiedPair::new(full, vec![2, 1], &Coweight(vec![1, 0])).unwrap();
//! let family = build_root_function(&pair).unwrap();
//! assert_eq!(classify_root_function(&family, &rs).unwrap(), pair);
//! ```

#![no_std]

extern crate alloc;

pub mod arith;
pub mod cartan;
pub mod catalog;
pub mod coweight;
pub mod loop_classifier;
pub mod roots;
pub mod scaling;
pub mod subsystems;

pub use cartan::{CartanMatrix, GcmError};
pub use roots::{pairing, reflect, HeightBound, Root, RootSystem, RootSystemError};
pub use subsystems::{Subsystem, SubsystemError};
pub use coweight::{AdmissibleSubgroup, Coweight, CoweightError, CosetRep};
pub use loop_classifier::{AffineRoot, ClassifiedPair, Coset, CosetFamily, LoopError, Violation};
pub use scaling::{ScalingError, ScalingFunction};
