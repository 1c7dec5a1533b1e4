//! Mapping class group actions on surface groups and their representations.

mod action;
mod orbit;
mod twist;

pub use action::{
    act, find_twist_intertwiner, reducibility_after_cut, CutReducibility, McgError,
    TwistIntertwiner,
};
pub use orbit::{
    format_witness, orbit, parse_witness, replay, witness_label, OrbitConfig, OrbitElement,
    OrbitReport, OrbitStatus, Step,
};
pub use twist::{
    check_surface_automorphism, mcg_generators, transvection_matrix, twist_auto, twist_in,
    MappingClass, TwistError, TwistSpec,
};
