//! Fourier-basis realizations of the free resolvent, the KdV sandwich, the AKNS block and the
//! perturbed-resolvent sandwich, together with the exact lattice quantities they are checked
//! against.

pub mod chain;
pub mod identities;
pub mod kernel;
pub mod line;
pub mod sandwich;

pub use kernel::{hs_closed_form, resolvent_kernel, Geometry, HsClosedForm};
pub use sandwich::{
    akns_trace, akns_trace_complex, akns_trace_via_matrix, build_akns_block, build_akns_half_block,
    build_akns_partner, build_sandwich, multiplication_matrix, operator_hs_sq, operator_trace,
    perturbed_sandwich, trace_power, Complement, Flavor, SandwichMatrix,
};
