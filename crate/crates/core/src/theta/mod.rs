//! Objects and morphisms of the cell category.

pub mod delta;
pub mod globular;
pub mod morphism;
pub mod object;
pub mod wreath;

pub use delta::{compose_gamma, fdelta, DeltaMap, GammaMap};
pub use globular::{is_theta0_object, ElementId, Elements, FinGlobularSet, StreetOrder};
pub use morphism::{
    cospine, factorize, factorizations, hom_set, in_spine, legs, parse_morphism,
    spinal_monos_into, Factorization, ThetaMorphism,
};
pub use object::{parse_theta, GlobularPattern, Theta, Window};
pub use wreath::{
    wreath_decode, wreath_decode_morphism, wreath_encode, wreath_encode_morphism, WreathMorphism,
    WreathObject,
};
