//! Workloads shared by the criterion benches.

use nashorder_core::contact::{ArcSampler, SamplerConfig};
use nashorder_core::elimination::MonicPresentation;
use nashorder_core::poly::var_names;
use nashorder_core::{Arc, FieldSpec, MultiPoly, ReesAlgebra};

pub fn xy() -> Vec<String> {
    var_names(&["x", "y"])
}

/// `y^m - x^k` over `field`.
pub fn curve(m: u32, k: u32, field: FieldSpec) -> MultiPoly {
    MultiPoly::parse(&format!("y^{m} - x^{k}"), &xy(), field).expect("valid curve")
}

/// The parametrizing arc `(t^m, t^k)` of `y^m - x^k`, reparametrized by `t^n`.
pub fn curve_arc(m: u32, k: u32, n: usize, field: FieldSpec) -> Arc {
    Arc::parse(&xy(), field, &[&format!("t^{m}"), &format!("t^{k}")])
        .expect("valid arc")
        .reparametrize(n)
}

pub fn hypersurface_algebra(m: u32, k: u32, field: FieldSpec) -> ReesAlgebra {
    ReesAlgebra::hypersurface(&curve(m, k, field), m).expect("nonzero equation")
}

pub fn presentation(m: u32, k: u32, field: FieldSpec) -> MonicPresentation {
    MonicPresentation::new(&curve(m, k, field), "y").expect("monic in y")
}

pub fn sampler(m: u32, k: u32, field: FieldSpec, random_arcs: usize) -> ArcSampler {
    let config = SamplerConfig {
        random_arcs,
        exponent_bound: 6,
        ..SamplerConfig::default()
    };
    ArcSampler::new(&xy(), field, vec![curve(m, k, field)], config).expect("valid sampler")
}
