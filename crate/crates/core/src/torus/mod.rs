//! Function spaces and frame calculus on the Clifford torus.

pub mod frame;
pub mod section;
pub mod trig;

pub use frame::{clifford_point, connection_table, frame_vector_r5, Direction, FrameIndex, Target};
pub use section::{covariant_derivative, directional, frame_connection, l2_inner, rough_laplacian, Section};
pub use trig::{Kind, Monomial, TrigPoly};
