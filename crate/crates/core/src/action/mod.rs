//! The seq-algebra structure on derived transformations and its realized
//! action.

mod diagram;
mod evaluate;
mod hochschild;
mod realized;
mod strict;

pub use diagram::DgDiagram;
pub use evaluate::{act_seq, act_seq_homogeneous, build_k, evaluate_on_chain, homogeneous_parts, Input, KData};
pub use hochschild::{
    cup_and_homotopy, hochschild, interleaving_family, CupHomotopy, CupReport, HochschildComplex, HochschildReport,
    HomotopyWitness,
};
pub use realized::{total_degree_parts, RealizedAction};
pub use strict::{intertwining_sides, paste, strict_at_level, strict_bases, triv_factorization_check, TrivReport};
