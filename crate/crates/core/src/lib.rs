//! Exact computations with characters of simply connected simple algebraic
//! groups in positive characteristic: Weyl characters, composition factors
//! of Weyl modules via the Jantzen sum formula, simple characters, tensor
//! product decompositions, and closed-form multiplicity-freeness
//! classifications for SL2, SL3, Sp4 and SLn checked against brute force.
//!
//! Weights are always given in the basis of fundamental weights.
//!
//! ```
//! use modrep::{Engine, RootType, Weight};
//! use modrep::tensor::tensor_factors;
//!
//! let e = Engine::for_type(RootType::A(2), 5).unwrap();
//! let d = tensor_factors(&e, &Weight::from_slice(&[1, 0]), &Weight::from_slice(&[0, 4]))
//!     .unwrap()
//!     .resolved()
//!     .unwrap();
//! assert_eq!(d.to_string(), "L(1,4) + L(0,3)");
//! ```

pub mod chars;
pub mod classify;
mod error;
pub mod rootsys;
pub mod tensor;
pub mod weights;
pub mod weylmod;

pub use chars::{Character, WeylCombination, WeylTable};
pub use classify::{Verdict, VerdictValue, VerifyMode, VerifyReport};
pub use error::{Error, Result};
pub use rootsys::{RootSystem, RootType, Q};
pub use weights::{AlcoveLocation, AlcoveName, PAdicExpansion, Weight, MAX_RANK};
pub use weylmod::{Decomposition, Engine, ResolutionOutcome};
