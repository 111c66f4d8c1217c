//! Distances, diameter, radius, and eccentricities on k-multimode graphs:
//! one vertex set carrying k edge sets, with the distance between two
//! vertices taken as the minimum over the per-mode shortest-path distances.
//!
//! The crate provides exact brute-force oracles, approximation algorithms
//! for the undirected and directed cases, reductions to standard diameter
//! and radius, and generators of labeled hardness instances.

pub mod boolmat;
pub mod diameter;
pub mod directed;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod radius;
pub mod stats;
pub mod stdiam;

pub use boolmat::{bool_matmul, BoolMatrix};
pub use diameter::{
    alpha_structure, binary_search_diameter, sp_alpha_approx, three_approx_2mode,
    three_mode_three_approx_decision, two_approx_decision, two_half_approx_decision, AlphaParams,
    AlphaStructure, BandVariant, DecisionOutcome, DiameterEstimate,
};
pub use directed::{
    condensation, dag_2mode_finite_ecc, dag_min_diameter_2approx, finite_2mode_diameter,
    finite_min_ecc, is_aligned, two_mode_dag_diameter_2approx, Condensation, FinitenessVerdict,
};
pub use exact::{
    kmode_apsp_bounded, kmode_apsp_trivial, leveled_samples, min_plus_product, negtri_to_kmode,
    reduce_to_standard_diameter, reduce_to_standard_radius, signed_apsp_trivial, LeveledSamples,
    NegTriInstance, ReducedGraph, SignedDistance, SignedGraph, SignedMatrix,
};
pub use instances::{
    build_gov, dag_gadget, gen_lower_bound_instance, solve_hse, solve_ov, DagGadget, Family,
    Label, LabeledInstance, OvInstance, ParameterKind,
};
pub use graph::{
    Distance, DistanceMap, DistanceMatrix, ExactParameters, GraphError, InducedSubgraph,
    MultimodeGraph, Source,
};
pub use radius::{binary_search_radius, radius_3approx_decision, RadiusEstimate};
pub use stats::AlgoStats;
pub use stdiam::{st_diameter_2approx, st_diameter_3approx, st_diameter_exact, StDiameterResult};
