//! Order of contact of an arc with a Rees algebra, its normalization, the
//! sampled set of normalized contact orders, and the integral closure check.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::{check_field, check_vars, MultiPoly, Point};
use crate::rees::ReesAlgebra;
use crate::series::TruncatedSeries;
use crate::value::{ExtRational, Order};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContactResult {
    /// `ord_t φ(G)`.
    pub r: ExtRational,
    /// `ν_t(φ)`.
    pub nu: u64,
    pub r_bar: ExtRational,
    /// `⌊r⌋`.
    pub rho: Order,
    /// `ord_t φ(f_i)` for each generator, by index.
    pub per_generator: Vec<(usize, Order)>,
}

fn generator_orders(g: &ReesAlgebra, phi: &Arc) -> Result<Vec<(usize, Result<Order>)>> {
    check_field(g.field(), phi.field())?;
    check_vars(g.vars(), phi.vars())?;
    if g.is_empty() {
        return Err(Error::InvalidAlgebra("the algebra has no generators".into()));
    }
    Ok(g.generators()
        .iter()
        .enumerate()
        .map(|(i, h)| (i, phi.substitute(&h.poly).and_then(|s| s.order())))
        .collect())
}

/// `min_i ord_t φ(f_i) / n_i`, or ∞ when the arc lies inside the singular
/// locus. A generator whose order is hidden by truncation is tolerated only
/// when its known precision already bounds it above the minimum.
pub fn contact_order(g: &ReesAlgebra, phi: &Arc) -> Result<ExtRational> {
    Ok(contact_with_orders(g, phi)?.0)
}

fn contact_with_orders(g: &ReesAlgebra, phi: &Arc) -> Result<(ExtRational, Vec<(usize, Order)>)> {
    let orders = generator_orders(g, phi)?;
    let mut best = ExtRational::Infinite;
    let mut hidden: Option<(ExtRational, usize)> = None;
    let mut known = Vec::with_capacity(orders.len());
    for (i, o) in orders {
        let weight = g.generators()[i].weight;
        match o {
            Ok(o) => {
                best = best.min(o.over(weight));
                known.push((i, o));
            }
            Err(Error::PrecisionExhausted { precision }) => {
                let bound = Order::Finite(precision as u64).over(weight);
                if hidden.as_ref().is_none_or(|(b, _)| bound < *b) {
                    hidden = Some((bound, precision));
                }
            }
            Err(e) => return Err(e),
        }
    }
    if let Some((bound, precision)) = hidden {
        if bound <= best {
            return Err(Error::PrecisionExhausted { precision });
        }
    }
    Ok((best, known))
}

/// Fills `r`, `ν_t(φ)`, `r̄ = r/ν` and `ρ = ⌊r⌋`.
pub fn normalized_contact(g: &ReesAlgebra, phi: &Arc) -> Result<ContactResult> {
    let (r, per_generator) = contact_with_orders(g, phi)?;
    let nu = phi.order()?;
    Ok(ContactResult {
        r_bar: r.div_int(nu),
        rho: r.floor(),
        r,
        nu,
        per_generator,
    })
}

/// A rational curve through the center, `s ↦ (p_1(s), …, p_n(s))`, used to
/// draw random arcs on a variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    parameter: String,
    field: FieldSpec,
    images: Vec<MultiPoly>,
}

impl Parametrization {
    pub fn new(parameter: &str, field: FieldSpec, images: Vec<MultiPoly>) -> Result<Self> {
        let vars = vec![parameter.to_string()];
        for p in &images {
            check_field(field, p.field())?;
            check_vars(&vars, p.vars())?;
        }
        if images.iter().all(MultiPoly::is_constant) {
            return Err(Error::InvalidParametrization("every image is constant".into()));
        }
        Ok(Parametrization {
            parameter: parameter.to_string(),
            field,
            images,
        })
    }

    pub fn parse(parameter: &str, field: FieldSpec, images: &[&str]) -> Result<Self> {
        let vars = vec![parameter.to_string()];
        let images = images
            .iter()
            .map(|s| MultiPoly::parse(s, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parameter, field, images)
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }

    /// The point the curve passes through at `s = 0`.
    pub fn base_point(&self) -> Point {
        Point::new(self.images.iter().map(MultiPoly::constant_term).collect())
    }

    /// Arc `t ↦ p(w(t)) - center`; `None` when the result is the zero arc.
    pub fn arc_through(&self, vars: &[String], w: &TruncatedSeries, center: &Point) -> Result<Option<Arc>> {
        if self.images.len() != vars.len() || center.len() != vars.len() {
            return Err(Error::InvalidParametrization(format!(
                "{} images for {} variables",
                self.images.len(),
                vars.len()
            )));
        }
        if &self.base_point() != center {
            return Err(Error::InvalidParametrization(format!(
                "the curve passes through {} at {} = 0, not through the center {}",
                self.base_point(),
                self.parameter,
                center
            )));
        }
        let mut comps = Vec::with_capacity(vars.len());
        for (p, c) in self.images.iter().zip(center.coords()) {
            let s = w.compose_into(p)?;
            comps.push(s.sub(&TruncatedSeries::monomial(self.field, c.clone(), 0)));
        }
        match Arc::new(vars, self.field, comps) {
            Ok(arc) => Ok(Some(arc)),
            Err(Error::InvalidArc(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Largest exponent of a monomial arc component.
    pub exponent_bound: u32,
    /// Coefficients of monomial arcs over ℚ range over `±1..=±bound`.
    pub monomial_coefficient_bound: u64,
    /// Number of distinct random arcs to admit.
    pub random_arcs: usize,
    pub random_degree: u32,
    /// Coefficients of random arcs over ℚ range over `-bound..=bound`.
    pub random_coefficient_bound: i64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            exponent_bound: 8,
            monomial_coefficient_bound: 4,
            random_arcs: 100,
            random_degree: 8,
            random_coefficient_bound: 3,
            seed: 0,
        }
    }
}

/// Arcs on the variety cut out by `equations`, sampled per `config`.
#[derive(Clone, Debug)]
pub struct ArcSampler {
    pub vars: Vec<String>,
    pub field: FieldSpec,
    pub equations: Vec<MultiPoly>,
    pub parametrization: Option<Parametrization>,
    pub config: SamplerConfig,
}

impl ArcSampler {
    pub fn new(vars: &[String], field: FieldSpec, equations: Vec<MultiPoly>, config: SamplerConfig) -> Result<Self> {
        for f in &equations {
            check_field(field, f.field())?;
            check_vars(vars, f.vars())?;
        }
        Ok(ArcSampler {
            vars: vars.to_vec(),
            field,
            equations,
            parametrization: None,
            config,
        })
    }

    pub fn with_parametrization(mut self, p: Parametrization) -> Result<Self> {
        check_field(self.field, p.field)?;
        if p.images.len() != self.vars.len() {
            return Err(Error::InvalidParametrization(format!(
                "{} images for {} variables",
                p.images.len(),
                self.vars.len()
            )));
        }
        self.parametrization = Some(p);
        Ok(self)
    }

    fn coefficient_set(&self) -> Vec<Scalar> {
        if self.vars.len() >= 3 {
            return vec![self.field.one()];
        }
        self.field.small_units(self.config.monomial_coefficient_bound)
    }

    /// Every arc `x_i = u_i t^{e_i}` with `0 ≤ e_i ≤ bound` (exponent 0 meaning
    /// a zero component), in lexicographic order.
    pub fn monomial_arcs(&self) -> Vec<Arc> {
        let n = self.vars.len();
        let units = self.coefficient_set();
        let mut choices: Vec<Option<(u32, Scalar)>> = vec![None];
        for e in 1..=self.config.exponent_bound {
            for u in &units {
                choices.push(Some((e, u.clone())));
            }
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; n];
        loop {
            if idx.iter().any(|&i| i != 0) {
                let comps = idx
                    .iter()
                    .map(|&i| match &choices[i] {
                        None => TruncatedSeries::zero(self.field),
                        Some((e, u)) => TruncatedSeries::monomial(self.field, u.clone(), *e as usize),
                    })
                    .collect();
                out.push(Arc::new(&self.vars, self.field, comps).expect("centered nonzero arc"));
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn random_series(&self, rng: &mut ChaCha8Rng) -> TruncatedSeries {
        let degree = rng.gen_range(1..=self.config.random_degree.max(1)) as usize;
        let mut coeffs = vec![self.field.zero(); degree + 1];
        for c in coeffs.iter_mut().skip(1) {
            *c = match self.field {
                FieldSpec::Rationals => {
                    let b = self.config.random_coefficient_bound;
                    self.field.int(rng.gen_range(-b..=b))
                }
                FieldSpec::Prime(p) => self.field.int(rng.gen_range(0..p) as i64),
            };
        }
        TruncatedSeries::exact(self.field, coeffs)
    }

    fn random_candidate(&self, rng: &mut ChaCha8Rng, center: &Point) -> Result<Option<Arc>> {
        match &self.parametrization {
            Some(p) => {
                let w = self.random_series(rng);
                if w.is_exact_zero() {
                    return Ok(None);
                }
                p.arc_through(&self.vars, &w, center)
            }
            None => {
                let comps = (0..self.vars.len()).map(|_| self.random_series(rng)).collect();
                match Arc::new(&self.vars, self.field, comps) {
                    Ok(a) => Ok(Some(a)),
                    Err(Error::InvalidArc(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            }
        }
    }

    /// Whether `φ` satisfies every (recentered) equation identically.
    fn lies_on(&self, equations: &[MultiPoly], phi: &Arc) -> Result<bool> {
        for f in equations {
            if !phi.substitute(f)?.is_exact_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SampleSource {
    Monomial,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampledArc {
    pub arc: Arc,
    pub source: SampleSource,
    pub contact: ContactResult,
}

/// A finite sample of `Φ`, sorted by `r̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSample {
    pub entries: Vec<SampledArc>,
    /// Distinct values of `r̄`, ascending.
    pub values: Vec<ExtRational>,
    pub monomial_admitted: usize,
    pub random_admitted: usize,
    pub random_draws: usize,
    pub config: SamplerConfig,
}

impl PhiSample {
    pub fn min(&self) -> &ExtRational {
        &self.values[0]
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn evaluate(
    g: &ReesAlgebra,
    sampler: &ArcSampler,
    equations: &[MultiPoly],
    arcs: Vec<Arc>,
    source: SampleSource,
) -> Result<Vec<SampledArc>> {
    let results: Vec<Result<Option<SampledArc>>> = arcs
        .into_par_iter()
        .map(|arc| {
            if !sampler.lies_on(equations, &arc)? {
                return Ok(None);
            }
            let contact = normalized_contact(g, &arc)?;
            if contact.r.is_infinite() {
                return Ok(None);
            }
            Ok(Some(SampledArc { arc, source, contact }))
        })
        .collect();
    results.into_iter().filter_map(Result::transpose).collect()
}

/// Samples normalized contact orders `r̄` of arcs on the variety centered
/// at `center`, discarding arcs inside the singular locus.
pub fn phi_sample(g: &ReesAlgebra, center: &Point, sampler: &ArcSampler) -> Result<PhiSample> {
    check_field(g.field(), sampler.field)?;
    check_vars(g.vars(), &sampler.vars)?;
    if !g.sing_member(center)? {
        return Err(Error::NotInSingularLocus);
    }
    let local = g.translate(center)?;
    let equations = sampler
        .equations
        .iter()
        .map(|f| f.translate(center))
        .collect::<Result<Vec<_>>>()?;

    let mut entries = evaluate(
        &local,
        sampler,
        &equations,
        sampler.monomial_arcs(),
        SampleSource::Monomial,
    )?;
    let monomial_admitted = entries.len();

    let mut seen: HashSet<Arc> = entries.iter().map(|e| e.arc.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.config.seed);
    let target = sampler.config.random_arcs;
    let max_draws = target.saturating_mul(50);
    let mut draws = 0;
    let mut random_admitted = 0;
    while random_admitted < target && draws < max_draws {
        let batch = (target - random_admitted).max(8).min(max_draws - draws);
        let mut candidates = Vec::with_capacity(batch);
        for _ in 0..batch {
            if let Some(arc) = sampler.random_candidate(&mut rng, center)? {
                if !seen.contains(&arc) {
                    seen.insert(arc.clone());
                    candidates.push(arc);
                }
            }
        }
        draws += batch;
        for e in evaluate(&local, sampler, &equations, candidates, SampleSource::Random)? {
            if random_admitted < target {
                random_admitted += 1;
                entries.push(e);
            }
        }
    }

    if entries.is_empty() {
        return Err(Error::EmptySample);
    }
    entries.sort_by(|a, b| {
        (&a.contact.r_bar, a.source, a.arc.to_string()).cmp(&(&b.contact.r_bar, b.source, b.arc.to_string()))
    });
    let mut values: Vec<ExtRational> = entries.iter().map(|e| e.contact.r_bar.clone()).collect();
    values.dedup();
    Ok(PhiSample {
        entries,
        values,
        monomial_admitted,
        random_admitted,
        random_draws: draws,
        config: sampler.config.clone(),
    })
}

/// `multiplier · Π generators[factors]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTerm {
    pub multiplier: MultiPoly,
    pub factors: Vec<usize>,
}

/// A monic relation `h^l + a_1 h^{l-1} + … + a_l = 0` certifying that `h W^w`
/// is integral over the algebra; `coefficients[i - 1]` expresses `a_i` as a
/// sum of terms of weight exactly `i·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceWitness {
    pub coefficients: Vec<Vec<WitnessTerm>>,
}

impl DependenceWitness {
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// Checks weights and that the relation vanishes identically.
    pub fn validate(&self, g: &ReesAlgebra, extra: &MultiPoly, weight: u32) -> Result<()> {
        let l = self.coefficients.len();
        if l == 0 {
            return Err(Error::DependenceInvalid("the relation has degree 0".into()));
        }
        let one = MultiPoly::one(g.vars(), g.field());
        let mut total = extra.pow(l as u32);
        for (i, terms) in self.coefficients.iter().enumerate() {
            let needed = (i as u32 + 1) * weight;
            let mut a = MultiPoly::zero(g.vars(), g.field());
            for term in terms {
                term.multiplier.is_compatible(&one)?;
                let mut prod = term.multiplier.clone();
                let mut w = 0;
                for &k in &term.factors {
                    let gen = g
                        .generators()
                        .get(k)
                        .ok_or_else(|| Error::DependenceInvalid(format!("no generator with index {k}")))?;
                    prod = &prod * &gen.poly;
                    w += gen.weight;
                }
                if w != needed {
                    return Err(Error::DependenceInvalid(format!(
                        "coefficient a_{} has a term of weight {w}, expected {needed}",
                        i + 1
                    )));
                }
                a = &a + &prod;
            }
            total = &total + &(&a * &extra.pow((l - i - 1) as u32));
        }
        if !total.is_zero() {
            return Err(Error::DependenceInvalid(format!("the relation evaluates to {total}")));
        }
        Ok(())
    }
}

/// Checks that adjoining the integral element `extra W^weight` leaves the
/// contact order of every supplied arc unchanged.
pub fn integral_invariance_check(
    g: &ReesAlgebra,
    extra: (&MultiPoly, u32),
    witness: &DependenceWitness,
    arcs: &[Arc],
) -> Result<bool> {
    let (h, weight) = extra;
    check_field(g.field(), h.field())?;
    check_vars(g.vars(), h.vars())?;
    witness.validate(g, h, weight)?;
    let enlarged = g.odot(&ReesAlgebra::new(g.vars(), g.field(), [(h.clone(), weight)])?)?;
    for phi in arcs {
        if contact_order(g, phi)? != contact_order(&enlarged, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
