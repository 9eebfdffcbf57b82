//! Linear-programming sphere-packing machinery: Bessel/Laguerre special
//! functions, radial Fourier transforms, lattice theta series with exact
//! shell enumeration, exact modular q-expansions (including the Theta_72
//! combination), scale-invariant Laguerre positivity certification, and the
//! band-limited quadrature identity with its optimality equality case.

pub mod error;
pub mod lattices;
pub mod lpquad;
pub mod qseries;
pub mod quad;
pub mod radial;
pub mod silp;
pub mod specfun;

pub use error::{Error, Result};
