//! Exact computation in finite commutative rings, trivial ring extensions
//! `A ∝ E`, finitely presented modules, syzygies and minimal free
//! resolutions, plus a scenario harness that replays structural identities
//! about idealizations of local rings on concrete instances.

pub mod arith;
pub mod config;
pub mod error;
pub mod howell;
pub mod lcg;
pub mod module;
pub mod paperlab;
pub mod resolve;
pub mod trivial;
pub mod ring;

pub use config::Config;
pub use error::{Error, Result};
pub use ring::{
    arith, construct_ring, construct_ring_with, decompose_into_local_factors, ArithOp, Cardinality, Elem, ElemExpr,
    Encoding, LocalFactor, ModuleDescriptor, Ring, RingDescriptor, RingElement, RingHandle,
};
