//! Strands of the Rees algebra `R_I = (I^t(td))_t` as modules over
//! `B = k[T_1..T_n]`, where `T_i` acts through a general reduction
//! `J = (g_1..g_n)` of `I` in degree `d`.

pub mod ambient;
pub mod cohomology;
pub mod growth;
pub mod koszul;
pub mod reduction;
pub mod strand;
pub mod verify;

pub use ambient::ReesStrand;
pub use cohomology::{h0_end, h1_end, CohEndReport, EndResult};
pub use growth::growth_degree;
pub use koszul::{koszul_betti, BettiTable};
pub use reduction::{sample_general_reduction, Reduction};
pub use strand::{build_strand, StrandKind, StrandModule};
pub use verify::{
    default_cutoff, verify_compcoh, verify_simple_stab, CompCohVerdict, SimpleStabVerdict, StrandContext,
    StrandOptions, StrandReport,
};
