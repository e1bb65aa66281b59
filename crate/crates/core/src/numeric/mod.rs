//! Small numerical building blocks shared by the physics modules.

pub mod dd;
pub mod quad;
pub mod roots;
pub mod sum;

pub use dd::DoubleDouble;
pub use quad::{adaptive_simpson, QuadratureError};
pub use roots::{bisect_sign, brent, RootError};
pub use sum::NeumaierSum;
