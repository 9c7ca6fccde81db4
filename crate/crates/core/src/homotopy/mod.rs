//! Posets of lattice paths and of product cells, the collapse between them,
//! and contractibility of finite posets.

pub mod complex;
pub mod paths;
pub mod poset;
pub mod rcat;

pub use complex::{is_contractible, order_complex, reduced_homology, Contractibility, ReducedHomology};
pub use paths::{delannoy, path_covers, paths_with_terminus, q_poset, QPoset, SEPath, Step};
pub use poset::{
    coslice_initial, is_opfibration, opfibration_failure, poset_functor, FinFunctor, FinPoset,
    FiniteCategory, MissingLift,
};
pub use rcat::{
    cofinality_check, cofinality_over_covers, collapse_opfibration, collapse_path,
    fiber_decomposition_check, fibre_decompositions, r_poset, subdivision, CofinalityIndex,
    CofinalitySummary, RPoset,
};
