//! Cylindrical algebraic decomposition by projection and lifting.
//!
//! [`cad_full`] runs the projection phase ([`projection::cad_projection`])
//! and then lifts cell by cell ([`lifting::cad_lifting`]). Sample points are
//! exact: coordinates are rationals or real algebraic numbers given by a
//! defining polynomial and an isolating interval.

pub mod algnum;
pub mod cad;
pub mod error;
pub mod lifting;
pub mod poly;
pub mod projection;
pub mod subres;

pub use algnum::{AlgebraicCoordinate, Rational, SamplePoint};
pub use cad::{cad_full, check_cylindricity, verify_sign_invariance, Cad, CadOptions};
pub use error::{Error, Result};
pub use lifting::{Bound, Cell, RootRef};
pub use poly::{finest_squarefree_basis, MultiPoly, VarOrder};
pub use projection::Method;
