//! Point blow-ups of affine space and Nash multiplicity sequences.
//!
//! This module is an oracle independent of the Rees-algebra side: it follows
//! an arc through the sequence of point blow-ups of `X × 𝔸¹` directed by the
//! graph arc `Γ₀ = (φ, t)`, recording the multiplicity of the strict
//! transform at each lifted center. Multiplicity of a hypersurface at a
//! point is the order of its defining polynomial there.

use num_traits::Zero;

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Point};
use crate::series::{TruncatedSeries, DEFAULT_PRECISION};
use crate::value::Order;

/// Default cap on the number of blow-ups followed by [`nash_sequence`].
pub const DEFAULT_MAX_STEPS: usize = 32;

/// The `index`-th standard affine chart of the blow-up of the origin,
/// `x_index ↦ x_index`, `x_i ↦ x_i · x_index`, followed by the translation
/// that moves the lifted center to the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartMap {
    index: usize,
    translation: Point,
}

impl ChartMap {
    pub fn new(index: usize, nvars: usize) -> Self {
        ChartMap {
            index,
            translation: Point::origin(nvars),
        }
    }

    pub fn with_translation(index: usize, translation: Point) -> Self {
        assert!(index < translation.len(), "chart index out of range");
        ChartMap { index, translation }
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The exceptional coordinate of this chart.
    pub fn exceptional(&self) -> usize {
        self.index
    }

    /// The lifted center in chart coordinates.
    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn nvars(&self) -> usize {
        self.translation.len()
    }

    /// Total transform `f ∘ chart`, before translation.
    pub fn pull_back(&self, f: &MultiPoly) -> MultiPoly {
        assert_eq!(f.nvars(), self.nvars(), "chart dimension");
        MultiPoly::from_terms(
            f.vars(),
            f.field(),
            f.terms().map(|(e, c)| {
                let mut e2 = e.clone();
                e2[self.index] = e.iter().sum();
                (e2, c.clone())
            }),
        )
    }

    /// Pulls `f` back, divides by the `k`-th power of the exceptional
    /// coordinate and recenters. `None` when the division is not exact.
    pub fn transform(&self, f: &MultiPoly, k: u32) -> Option<MultiPoly> {
        let divided = self.pull_back(f).divide_by_var_power(self.index, k)?;
        Some(
            divided
                .translate(&self.translation)
                .expect("translation matches chart dimension"),
        )
    }
}

/// A fresh variable name for the 𝔸¹ factor of `X × 𝔸¹`.
pub fn fresh_var(vars: &[String]) -> String {
    std::iter::once("w".to_string())
        .chain((1..).map(|i| format!("w{i}")))
        .find(|c| !vars.contains(c))
        .expect("infinitely many candidates")
}

/// `Γ₀ = φ ⊗ i`: appends the coordinate of the 𝔸¹ factor, mapped to `t`.
pub fn graph_arc(phi: &Arc) -> Arc {
    let mut vars = phi.vars().to_vec();
    vars.push(fresh_var(phi.vars()));
    let mut comps = phi.components().to_vec();
    comps.push(TruncatedSeries::monomial(phi.field(), phi.field().one(), 1));
    Arc::new(&vars, phi.field(), comps).expect("graph arc has an order-one component")
}

/// Lifts `Γ` to the blow-up of the origin: picks the chart of a component of
/// least order (ties go to the lowest index), divides the other components
/// by it and recenters at the lifted point.
pub fn blowup_lift(gamma: &Arc, precision: usize) -> Result<(ChartMap, Arc)> {
    let mut best: Option<(usize, u64)> = None;
    let mut undecided: Vec<(usize, usize)> = Vec::new();
    for (i, c) in gamma.components().iter().enumerate() {
        match c.order() {
            Ok(Order::Finite(o)) => {
                if best.is_none_or(|(_, b)| o < b) {
                    best = Some((i, o));
                }
            }
            Ok(Order::Infinite) => {}
            Err(Error::PrecisionExhausted { precision }) => undecided.push((i, precision)),
            Err(e) => return Err(e),
        }
    }
    let (j, oj) = best.ok_or(Error::PrecisionExhausted { precision })?;
    // an undecided component could still win the chart choice
    if let Some(&(_, p)) = undecided
        .iter()
        .find(|&&(i, p)| (p as u64) < oj || ((p as u64) == oj && i < j))
    {
        return Err(Error::PrecisionExhausted { precision: p });
    }
    let field = gamma.field();
    let divisor = gamma.component(j);
    let mut lifted = Vec::with_capacity(gamma.components().len());
    let mut center = Vec::with_capacity(gamma.components().len());
    for (i, c) in gamma.components().iter().enumerate() {
        let q = if i == j { c.clone() } else { c.div(divisor, precision)? };
        let c0 = q.constant_term();
        center.push(c0.clone());
        let recentered = if c0.is_zero() {
            q
        } else {
            q.sub(&TruncatedSeries::monomial(field, c0, 0))
        };
        lifted.push(recentered);
    }
    let chart = ChartMap::with_translation(j, Point::new(center));
    let arc = Arc::new(gamma.vars(), field, lifted)?;
    Ok((chart, arc))
}

/// Strict transform of the hypersurface `f = 0` (centered at the origin)
/// in the given chart: the total transform divided by the exceptional
/// coordinate to the power `ν = ord_0(f)`, then recentered.
pub fn strict_transform(f: &MultiPoly, chart: &ChartMap) -> MultiPoly {
    let nu = match f.order_at_origin() {
        Order::Finite(n) => n as u32,
        Order::Infinite => panic!("strict transform of the zero polynomial"),
    };
    chart
        .transform(f, nu)
        .expect("the total transform is divisible by e^ord")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NashOptions {
    pub max_steps: usize,
    pub precision: usize,
}

impl Default for NashOptions {
    fn default() -> Self {
        NashOptions {
            max_steps: DEFAULT_MAX_STEPS,
            precision: DEFAULT_PRECISION,
        }
    }
}

/// One row of the blow-up trace. Step 0 is the starting point `(X × 𝔸¹, ξ₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashStep {
    pub step: usize,
    /// Chart variable of the blow-up performed at this step.
    pub chart: Option<String>,
    /// New center in the chart coordinates (before recentering).
    pub center: Point,
    /// Strict transform, recentered so the current center is the origin.
    pub transform: MultiPoly,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashReport {
    /// `m₀ ≥ m₁ ≥ …`, ending with the first value below `m₀` unless truncated.
    pub sequence: Vec<u64>,
    /// Persistence: the index of the first multiplicity below `m₀`.
    pub rho: Option<u64>,
    /// The step budget ran out before the multiplicity dropped.
    pub truncated: bool,
    /// `m₀ < 2`: the point is already outside the singular locus; `rho = 0`.
    pub below_threshold: bool,
    pub trace: Vec<NashStep>,
}

impl NashReport {
    pub fn initial_multiplicity(&self) -> u64 {
        self.sequence[0]
    }
}

/// Nash multiplicity sequence of the arc `φ` on `X = {f = 0}` at the origin.
pub fn nash_sequence(f: &MultiPoly, phi: &Arc, opts: NashOptions) -> Result<NashReport> {
    let image = phi.substitute(f)?;
    if !image.is_exact_zero() {
        image.order()?;
        return Err(Error::ArcNotOnVariety(image.to_string()));
    }
    let m0 = match f.order_at_origin() {
        Order::Finite(m) => m,
        Order::Infinite => return Err(Error::InvalidPresentation("f is zero".into())),
    };
    let mut gamma = graph_arc(phi);
    let extra = gamma.vars().last().expect("graph variable").clone();
    let mut current = f.extend_vars(&[extra]);
    let mut trace = vec![NashStep {
        step: 0,
        chart: None,
        center: Point::origin(current.nvars()),
        transform: current.clone(),
        multiplicity: m0,
    }];
    let mut sequence = vec![m0];
    if m0 < 2 {
        return Ok(NashReport {
            sequence,
            rho: Some(0),
            truncated: false,
            below_threshold: true,
            trace,
        });
    }
    for step in 1..=opts.max_steps {
        let (chart, lifted) = blowup_lift(&gamma, opts.precision)?;
        current = strict_transform(&current, &chart);
        let m = current.order_at_origin().finite().expect("strict transform is nonzero");
        debug_assert!(m <= *sequence.last().expect("nonempty"), "multiplicity increased");
        trace.push(NashStep {
            step,
            chart: Some(current.vars()[chart.index()].clone()),
            center: chart.translation().clone(),
            transform: current.clone(),
            multiplicity: m,
        });
        sequence.push(m);
        gamma = lifted;
        if m < m0 {
            return Ok(NashReport {
                sequence,
                rho: Some(step as u64),
                truncated: false,
                below_threshold: false,
                trace,
            });
        }
    }
    Ok(NashReport {
        sequence,
        rho: None,
        truncated: true,
        below_threshold: false,
        trace,
    })
}

/// Persistence `ρ` of `φ`: the number of directed blow-ups needed to lower
/// the multiplicity below `m₀`.
pub fn persistence_oracle(f: &MultiPoly, phi: &Arc, opts: NashOptions) -> Result<u64> {
    let report = nash_sequence(f, phi, opts)?;
    report.rho.ok_or(Error::StepLimit {
        max_steps: opts.max_steps,
    })
}
