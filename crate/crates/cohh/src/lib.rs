//! Exact computations with finite-dimensional and bounded differential graded
//! coalgebras: cotensor products, coHochschild homology, CoTor, cotraces and
//! colinear traces, together with checks of the associated coherence laws.

pub mod bundled;
pub mod cli;
pub mod coalgebra;
pub mod comodule;
pub mod dg;
pub mod document;
pub mod instances;
pub mod linalg;
pub mod traces;
