pub mod error;
pub mod hessenberg;
pub mod invariants;
pub mod liealgebra;
pub mod linalg;
pub mod mftranslate;
pub mod polyring;
pub mod rootdata;
pub mod symplectic;
pub mod verifier;
