//! Maps induced on the system by a joint unitary: construction, application,
//! Choi/CP test, Kraus form and positivity probing.

mod choi;
mod induce;
mod probe;

pub use choi::{apply_kraus, choi, is_cp, kraus_from_choi, ChoiMatrix, CpStatus, CpVerdict};
pub use induce::{induce, induce_with, BlockWeighting, InducedMap, JointUnitary, UNITARY_TOL};
pub use probe::{probe_positivity, Positivity, MAX_REFINE_ITERS};
