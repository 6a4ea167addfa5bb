// SPDX-License-Identifier: Apache-2.0

//! Distances to uniform and mixing times of the walker distribution.

pub mod distance;
pub mod envelope;
pub mod register;
pub mod times;

pub use crate::scan::ScanMeta;
pub use distance::{
    hellinger, hellinger_bound, hellinger_bound_small_z, register_tv, register_tv_bound, single_qubit_tv,
    total_variation,
};
pub use envelope::{envelope_bound, Envelope};
pub use register::{coherent_distribution, RegisterDistribution};
pub use times::{
    average_mixing_time, classical_mixing_time, instantaneous_mixing_time, mixing_report, register_mixing_time, Mixing,
    MixingReport,
};
