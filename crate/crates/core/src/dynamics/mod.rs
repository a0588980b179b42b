//! The four two-qubit processes, fixed-step RK4 evolution in both pictures,
//! and closed-form trajectories used as oracles.

pub mod closed_form;
mod evolve;
mod process;

use std::fmt;
use std::str::FromStr;

pub use closed_form::closed_form;
pub use evolve::{
    default_steps, evolve, rk4_step, Evolvable, Trajectory, CORRECTION_LIMIT, STEPS_PER_UNIT_TIME,
};
pub use process::{adjoint_apply, liouvillian_apply, LocalGenerator, Process, ProcessKind};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Picture {
    Schrodinger,
    Heisenberg,
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Picture::Schrodinger => "schrodinger",
            Picture::Heisenberg => "heisenberg",
        })
    }
}

impl FromStr for Picture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "schrodinger" | "schroedinger" => Ok(Picture::Schrodinger),
            "heisenberg" => Ok(Picture::Heisenberg),
            other => Err(Error::InvalidConfig(format!("unknown picture {other:?}"))),
        }
    }
}
