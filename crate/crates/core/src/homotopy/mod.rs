//! The homotopy category of bounded complexes of projectives.
//!
//! Cochain convention: differentials raise degree, (Σ^k X)^d = X^{d+k} with
//! differential (-1)^k d, and cone(f: X -> Y)^d = X^{d+1} ⊕ Y^d.

mod approx;
mod complex;
mod decompose;
mod hom;
mod minimal;
mod pmat;
mod registry;

pub use approx::{
    is_left_approximation, is_right_approximation, minimal_left_approximation, minimal_right_approximation,
};
pub use complex::{cone, hom_window, projective_complex, two_term, ChainMap, Complex, ShapeKey};
pub use decompose::{decompose, end_algebra, is_local, EndAlgebra};
pub use hom::{hom_basis, hom_dim, is_null_homotopic, HomSpace, HomSystem};
pub use minimal::{is_minimal, minimalize};
pub use pmat::{Elem, PMat};
pub use registry::{is_isomorphic, is_isomorphic_indecomposable, Category, ObjId};

use crate::algebra::Algebra;

pub fn shift(x: &Complex, k: i32) -> Complex {
    x.shift(k)
}

pub fn direct_sum(xs: &[Complex]) -> Complex {
    let refs: Vec<&Complex> = xs.iter().collect();
    Complex::direct_sum(&refs)
}

/// Adds the contractible complex P(v) -> P(v) (identity) in degrees (d, d+1).
pub fn inflate(x: &Complex, v: usize, d: i32, alg: &Algebra) -> Complex {
    let c = two_term(v, v, d, Elem::path(alg.lazy(v)));
    Complex::direct_sum(&[x, &c])
}
