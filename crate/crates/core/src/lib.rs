//! Exact key-form computations for plane curve germs and the contractibility
//! of the associated exceptional configurations.

pub mod criteria;
mod display;
pub mod dualgraph;
pub mod error;
pub mod input;
pub mod keyforms;
pub mod laurent;
pub mod lifted;
mod parse;
pub mod puiseux;
pub mod report;
pub mod rat;
pub mod semidegree;

pub use criteria::{
    alpha_invariant, analyze_curve, is_algebraic, is_contractible, random_curve, semigroup_conditions,
    semigroup_membership, single_pair_closed_form, single_pair_test, single_pair_truncation, virtual_poles,
    witness_curves, AlgebraicityReport, Classification, S2Check, SemigroupReport, SinglePairVerdict, UVPoly,
    VirtualPoles, Witness,
};
pub use dualgraph::{build_dual_graph, export_graph, DualGraph, GraphFormat, Vertex};
pub use error::{Error, Result};
pub use input::{parse_pairs, CurveSource, CurveSpec, SpecFields};
pub use keyforms::{all_key_forms, essential_key_forms, is_polynomial, omega_decompose, EssentialKeyForms};
pub use laurent::LaurentPolyXY;
pub use lifted::LiftedPoly;
pub use puiseux::{
    degreewise_to_local, local_to_degreewise, parse_puiseux, puiseux_pairs, CharacteristicData, Orientation,
    PuiseuxPair, PuiseuxPoly,
};
pub use rat::Rat;
pub use semidegree::{generic_dps_from_curve, semidegree_eval, substitute, GenericDPS, XiPoly, XiSeries};
