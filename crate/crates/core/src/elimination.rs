//! Elimination algebras of monic hypersurface presentations, Hironaka's
//! order function in the base, minimizing arcs and the end-to-end check that
//! the least normalized contact order equals the order of the elimination
//! algebra.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::arc::Arc;
use crate::contact::{contact_order, normalized_contact, phi_sample, ArcSampler, ContactResult, PhiSample};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{MultiPoly, Point};
use crate::rees::{multi_indices, ReesAlgebra};
use crate::series::TruncatedSeries;
use crate::value::{ExtRational, Order};

/// Largest degree of the monomial multipliers used by [`visible_elimination`].
pub const MULTIPLIER_DEGREE: u32 = 2;

/// Bound on `|u_i|` when searching unit tuples over ℚ.
pub const UNIT_SEARCH_BOUND: u64 = 4;

/// `f = z^m + a_1 z^{m-1} + … + a_m` with `a_i` in the base variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPresentation {
    f: MultiPoly,
    fiber: usize,
    base: Vec<String>,
    degree: u32,
}

impl MonicPresentation {
    pub fn new(f: &MultiPoly, fiber: &str) -> Result<Self> {
        let idx = f.var_index(fiber).ok_or_else(|| Error::VariableMismatch {
            expected: f.vars().join(", "),
            found: fiber.to_string(),
        })?;
        let degree = f.degree_in(idx).unwrap_or(0);
        if degree < 2 {
            return Err(Error::InvalidPresentation(format!(
                "{f} has degree {degree} in {fiber}; at least 2 is required"
            )));
        }
        let lead = &f.coefficients_in(idx)[degree as usize];
        if !(lead.is_constant() && lead.constant_term() == f.field().one()) {
            return Err(Error::InvalidPresentation(format!(
                "{f} is not monic in {fiber}: leading coefficient {lead}"
            )));
        }
        let base = f
            .vars()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        Ok(MonicPresentation {
            f: f.clone(),
            fiber: idx,
            base,
            degree,
        })
    }

    pub fn polynomial(&self) -> &MultiPoly {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    pub fn vars(&self) -> &[String] {
        self.f.vars()
    }

    pub fn fiber(&self) -> &str {
        &self.f.vars()[self.fiber]
    }

    pub fn fiber_index(&self) -> usize {
        self.fiber
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient `a_i` of `z^{m-i}`, as a polynomial in all variables.
    pub fn coefficient(&self, i: u32) -> MultiPoly {
        self.f.coefficients_in(self.fiber)[(self.degree - i) as usize].clone()
    }

    /// `Diff(R[f W^m])`.
    pub fn full_algebra(&self) -> ReesAlgebra {
        ReesAlgebra::hypersurface(&self.f, self.degree)
            .expect("nonzero polynomial")
            .diff_closure()
    }

    /// Lifts a base point to the ambient space with fiber coordinate 0.
    pub fn lift_point(&self, base_point: &Point) -> Point {
        let mut coords = base_point.coords().to_vec();
        coords.insert(self.fiber, self.field().zero());
        Point::new(coords)
    }

    /// Whether `f` has order exactly `m` at `p`, i.e. the presentation
    /// realizes the multiplicity there.
    pub fn realizes_multiplicity_at(&self, p: &Point) -> Result<bool> {
        Ok(self.f.order_at(p)? == Order::Finite(self.degree as u64))
    }
}

impl fmt::Display for MonicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (monic of degree {} in {})", self.f, self.degree, self.fiber())
    }
}

/// Substitutes `z ↦ z - a_1/m`, killing the coefficient of `z^{m-1}`.
pub fn tschirnhausen(p: &MonicPresentation) -> Result<MonicPresentation> {
    let field = p.field();
    if field.divides(p.degree as u64) {
        return Err(Error::CharDividesDegree {
            characteristic: field.characteristic(),
            degree: p.degree,
        });
    }
    let a1 = p.coefficient(1);
    if a1.is_zero() {
        return Ok(p.clone());
    }
    let inv_m = field
        .inv(&field.int(p.degree as i64))
        .expect("characteristic does not divide m");
    let vars = p.vars();
    let assignment: Vec<MultiPoly> = (0..vars.len())
        .map(|i| {
            let v = MultiPoly::var(vars, field, i);
            if i == p.fiber {
                &v - &a1.scale(&inv_m)
            } else {
                v
            }
        })
        .collect();
    let g = p.f.substitute(&assignment)?;
    MonicPresentation::new(&g, p.fiber())
}

/// `Diff(S[a_2 W^2, …, a_m W^m])` over the base, for a presentation without
/// a `z^{m-1}` term.
pub fn coefficient_algebra(p: &MonicPresentation) -> Result<ReesAlgebra> {
    if !p.coefficient(1).is_zero() {
        return Err(Error::InvalidPresentation(format!(
            "{} has a nonzero coefficient of {}^{}",
            p.f,
            p.fiber(),
            p.degree - 1
        )));
    }
    let gens = (2..=p.degree)
        .map(|i| {
            let a = p
                .coefficient(i)
                .restrict_to(&p.base)
                .expect("coefficients are free of the fiber");
            (a, i)
        })
        .collect::<Vec<_>>();
    Ok(ReesAlgebra::new(&p.base, p.field(), gens)?.diff_closure())
}

/// Multisets of generator indices whose weights sum to `total`.
fn weighted_products(weights: &[u32], total: u32) -> Vec<Vec<usize>> {
    fn rec(weights: &[u32], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..weights.len() {
            if weights[i] <= left {
                cur.push(i);
                rec(weights, i, left - weights[i], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, total, &mut Vec::new(), &mut out);
    out
}

fn monomials_up_to(vars: &[String], field: FieldSpec, degree: u32) -> Vec<MultiPoly> {
    (0..=degree)
        .flat_map(|d| multi_indices(vars.len(), d))
        .map(|e| MultiPoly::monomial(vars, field, e, field.one()))
        .collect()
}

type Column = (bool, u32, Vec<u32>);

fn to_row(p: &MultiPoly, bad: &[usize]) -> SparseRow<Column> {
    p.terms()
        .map(|(e, c)| {
            let clean = bad.iter().all(|&i| e[i] == 0);
            ((clean, e.iter().sum(), e.clone()), c.clone())
        })
        .collect()
}

fn from_row(row: &SparseRow<Column>, vars: &[String], field: FieldSpec) -> MultiPoly {
    MultiPoly::from_terms(vars, field, row.iter().map(|((_, _, e), c)| (e.clone(), c.clone())))
}

fn product(polys: &[&MultiPoly], factors: &[usize], one: &MultiPoly) -> MultiPoly {
    factors.iter().fold(one.clone(), |acc, &i| &acc * polys[i])
}

/// Elements of `G` free of the `eliminated` variables, found by linear
/// elimination among products of generators of equal total weight (up to the
/// maximal generator weight) times monomials of degree at most
/// [`MULTIPLIER_DEGREE`]. The result is a subalgebra of `G ∩ S[W]`, so its
/// order bounds the true elimination order from above. `G` is used as given;
/// pass a differentially closed algebra.
pub fn visible_elimination(g: &ReesAlgebra, eliminated: &[String]) -> Result<ReesAlgebra> {
    let vars = g.vars();
    let field = g.field();
    for v in eliminated {
        if !vars.contains(v) {
            return Err(Error::VariableMismatch {
                expected: vars.join(", "),
                found: v.clone(),
            });
        }
    }
    let bad: Vec<usize> = (0..vars.len()).filter(|&i| eliminated.contains(&vars[i])).collect();
    let base: Vec<String> = vars.iter().filter(|v| !eliminated.contains(v)).cloned().collect();
    let one = MultiPoly::one(vars, field);
    let base_one = MultiPoly::one(&base, field);
    let polys: Vec<&MultiPoly> = g.generators().iter().map(|h| &h.poly).collect();
    let weights: Vec<u32> = g.generators().iter().map(|h| h.weight).collect();
    let multipliers = monomials_up_to(vars, field, MULTIPLIER_DEGREE);

    let mut kept: Vec<(MultiPoly, u32)> = Vec::new();
    for n in 1..=g.max_weight() {
        let mut echelon: Echelon<Column> = Echelon::new(field);
        for prod in weighted_products(&weights, n) {
            let p = product(&polys, &prod, &one);
            for m in &multipliers {
                echelon.insert(to_row(&(m * &p), &bad));
            }
        }
        let mut candidates: Vec<MultiPoly> = echelon
            .rows()
            .filter(|r| r.keys().next().is_some_and(|k| k.0))
            .map(|r| from_row(r, vars, field).restrict_to(&base).expect("clean row"))
            .collect();
        if candidates.is_empty() {
            continue;
        }
        candidates.sort_by_key(|c| (c.order_at_origin(), c.total_degree(), c.to_string()));
        let top = candidates.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0);

        let mut span: Echelon<Column> = Echelon::new(field);
        let add_multiples = |span: &mut Echelon<Column>, p: &MultiPoly| {
            let room = top.saturating_sub(p.order_at_origin().finite().unwrap_or(0) as u32);
            for m in monomials_up_to(&base, field, room) {
                span.insert(to_row(&(&m * p), &[]));
            }
        };
        let kept_polys: Vec<&MultiPoly> = kept.iter().map(|(p, _)| p).collect();
        let kept_weights: Vec<u32> = kept.iter().map(|(_, w)| *w).collect();
        for prod in weighted_products(&kept_weights, n) {
            add_multiples(&mut span, &product(&kept_polys, &prod, &base_one));
        }
        for c in candidates {
            if span.contains(&to_row(&c, &[])) {
                continue;
            }
            add_multiples(&mut span, &c);
            kept.push((c.monic(), n));
        }
    }
    ReesAlgebra::new(&base, field, kept)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EliminationMethod {
    Tschirnhausen,
    VisibleIntersection,
}

impl fmt::Display for EliminationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EliminationMethod::Tschirnhausen => "tschirnhausen",
            EliminationMethod::VisibleIntersection => "visible-intersection",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    /// Elimination algebra over the base variables.
    pub algebra: ReesAlgebra,
    pub ord_d: BigRational,
    pub method: EliminationMethod,
    /// Center in base coordinates.
    pub center: Point,
}

/// Elimination algebra of the presentation: the coefficient algebra after a
/// Tschirnhausen transformation when the characteristic does not divide `m`,
/// the visible intersection otherwise.
pub fn elimination_algebra(p: &MonicPresentation) -> Result<(ReesAlgebra, EliminationMethod)> {
    if p.field().divides(p.degree as u64) {
        let g = p.full_algebra();
        let e = visible_elimination(&g, &[p.fiber().to_string()])?;
        Ok((e, EliminationMethod::VisibleIntersection))
    } else {
        let t = tschirnhausen(p)?;
        Ok((coefficient_algebra(&t)?, EliminationMethod::Tschirnhausen))
    }
}

/// Hironaka's order function `ord^(d)` at `center` (base coordinates).
pub fn ord_d(p: &MonicPresentation, center: &Point) -> Result<EliminationResult> {
    if center.len() != p.base.len() {
        return Err(Error::VariableMismatch {
            expected: p.base.join(", "),
            found: format!("point with {} coordinates", center.len()),
        });
    }
    let (algebra, method) = elimination_algebra(p)?;
    let ord_d = algebra.ord_at(center)?;
    Ok(EliminationResult {
        algebra,
        ord_d,
        method,
        center: center.clone(),
    })
}

/// The arc `y_i = u_i t^l` on the base (in coordinates centered at
/// `E.center`) where `g W^l` achieves `ord_d` and `in(g)(u) ≠ 0`. Its
/// normalized contact order with the elimination algebra is `ord_d`.
pub fn minimizing_arc(e: &EliminationResult) -> Result<Arc> {
    let local = e.algebra.translate(&e.center)?;
    let target = ExtRational::Finite(e.ord_d.clone());
    let g = local
        .generators()
        .iter()
        .find(|h| h.poly.order_at_origin().over(h.weight) == target)
        .ok_or_else(|| Error::InvalidAlgebra(format!("no generator of {} achieves order {}", e.algebra, e.ord_d)))?;
    let initial = g.poly.initial_form();
    let field = local.field();
    let units = field.small_units(UNIT_SEARCH_BOUND);
    let n = local.vars().len();
    let mut idx = vec![0usize; n];
    loop {
        let u = Point::new(idx.iter().map(|&i| units[i].clone()).collect());
        if !initial.evaluate(&u)?.is_zero() {
            let comps = u
                .coords()
                .iter()
                .map(|c| TruncatedSeries::monomial(field, c.clone(), g.weight as usize))
                .collect();
            return Arc::new(local.vars(), field, comps);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return Err(Error::NoRationalUnit(initial.to_string()));
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < units.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcOrigin {
    Candidate,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcCheck {
    pub arc: Arc,
    pub origin: ArcOrigin,
    pub contact: ContactResult,
}

/// Contact order and arc order of the witness against those of its
/// projection to the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionCheck {
    pub contact_full: ExtRational,
    pub contact_base: ExtRational,
    pub nu_full: u64,
    pub nu_base: u64,
}

impl ProjectionCheck {
    pub fn holds(&self) -> bool {
        self.contact_full == self.contact_base && self.nu_full == self.nu_base
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub elimination: EliminationResult,
    pub candidates: Vec<ArcCheck>,
    pub sample: Option<PhiSample>,
    /// Least `r̄` over candidates and sample.
    pub observed_min: ExtRational,
    pub arcs_checked: usize,
    /// No arc has `r̄ < ord_d`.
    pub lower_bound: bool,
    pub witness: Option<ArcCheck>,
    pub projection: Option<ProjectionCheck>,
    pub minimizing_arc: Arc,
    pub minimizing_r_bar: ExtRational,
    pub verdict: Verdict,
}

fn check_on_variety(f: &MultiPoly, phi: &Arc) -> Result<()> {
    let s = phi.substitute(f)?;
    match s.order()? {
        Order::Infinite => Ok(()),
        Order::Finite(_) => Err(Error::ArcNotOnVariety(s.to_string())),
    }
}

/// Checks, at the origin, that every arc on the hypersurface has
/// `r̄ ≥ ord_d`, that some arc attains it with matching contact and arc
/// orders on the base, and that the minimizing base arc attains it too.
pub fn verify_main_theorem(
    p: &MonicPresentation,
    candidates: &[Arc],
    sampler: Option<&ArcSampler>,
) -> Result<TheoremReport> {
    let origin = Point::origin(p.vars().len());
    if !p.realizes_multiplicity_at(&origin)? {
        return Err(Error::InvalidPresentation(format!(
            "{} does not have order {} at the origin",
            p.f, p.degree
        )));
    }
    let elimination = ord_d(p, &Point::origin(p.base.len()))?;
    let full = p.full_algebra();

    let checked = candidates
        .par_iter()
        .map(|phi| {
            check_on_variety(&p.f, phi)?;
            Ok(ArcCheck {
                arc: phi.clone(),
                origin: ArcOrigin::Candidate,
                contact: normalized_contact(&full, phi)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sample = sampler.map(|s| phi_sample(&full, &origin, s)).transpose()?;

    let mut all: Vec<ArcCheck> = checked.clone();
    if let Some(s) = &sample {
        all.extend(s.entries.iter().map(|e| ArcCheck {
            arc: e.arc.clone(),
            origin: ArcOrigin::Sampled,
            contact: e.contact.clone(),
        }));
    }
    let target = ExtRational::Finite(elimination.ord_d.clone());
    let observed_min = all
        .iter()
        .map(|c| c.contact.r_bar.clone())
        .min()
        .unwrap_or(ExtRational::Infinite);
    let lower_bound = all.iter().all(|c| c.contact.r_bar >= target);
    let witness = all.iter().find(|c| c.contact.r_bar == target).cloned();

    let projection = match &witness {
        Some(w) => {
            let base_arc = w.arc.project(&p.base)?;
            Some(ProjectionCheck {
                contact_full: w.contact.r.clone(),
                contact_base: contact_order(&elimination.algebra, &base_arc)?,
                nu_full: w.contact.nu,
                nu_base: base_arc.order()?,
            })
        }
        None => None,
    };

    let minimizing_arc = minimizing_arc(&elimination)?;
    let local = elimination.algebra.translate(&elimination.center)?;
    let minimizing_r_bar = normalized_contact(&local, &minimizing_arc)?.r_bar;

    let verdict = if !lower_bound || minimizing_r_bar != target {
        Verdict::Fail
    } else {
        match &projection {
            None => Verdict::Inconclusive,
            Some(pc) if pc.holds() => Verdict::Pass,
            Some(_) => Verdict::Fail,
        }
    };
    Ok(TheoremReport {
        arcs_checked: all.len(),
        elimination,
        candidates: checked,
        sample,
        observed_min,
        lower_bound,
        witness,
        projection,
        minimizing_arc,
        minimizing_r_bar,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{Parametrization, SamplerConfig};
    use crate::poly::var_names;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F2: FieldSpec = FieldSpec::Prime(2);
    const F3: FieldSpec = FieldSpec::Prime(3);

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn pres(text: &str, field: FieldSpec) -> MonicPresentation {
        MonicPresentation::new(&MultiPoly::parse(text, &xy(), field).unwrap(), "y").unwrap()
    }

    fn base_alg(text: &str, field: FieldSpec) -> ReesAlgebra {
        ReesAlgebra::parse(text, &var_names(&["x"]), field).unwrap()
    }

    fn same_generators(a: &ReesAlgebra, b: &ReesAlgebra) -> bool {
        a.generators().len() == b.generators().len()
            && b.generators().iter().all(|h| {
                a.generators()
                    .iter()
                    .any(|g| g.weight == h.weight && g.poly.is_scalar_multiple_of(&h.poly))
            })
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn presentation_guards() {
        let f = MultiPoly::parse("y - x^2", &xy(), Q).unwrap();
        assert!(matches!(
            MonicPresentation::new(&f, "y"),
            Err(Error::InvalidPresentation(_))
        ));
        let f = MultiPoly::parse("2*y^2 - x^3", &xy(), Q).unwrap();
        assert!(matches!(
            MonicPresentation::new(&f, "y"),
            Err(Error::InvalidPresentation(_))
        ));
        let f = MultiPoly::parse("x*y^2 - x^3", &xy(), Q).unwrap();
        assert!(MonicPresentation::new(&f, "y").is_err());
        assert!(MonicPresentation::new(&f, "z").is_err());
        assert_eq!(pres("y^3 - x^4", Q).degree(), 3);
    }

    #[test]
    fn tschirnhausen_examples() {
        let s = var_names(&["s", "x"]);
        let f = MultiPoly::parse("x^2 + 2*s*x + s^3", &s, Q).unwrap();
        let t = tschirnhausen(&MonicPresentation::new(&f, "x").unwrap()).unwrap();
        assert_eq!(t.polynomial(), &MultiPoly::parse("x^2 + s^3 - s^2", &s, Q).unwrap());

        let cusp = pres("y^2 - x^3", Q);
        assert_eq!(tschirnhausen(&cusp).unwrap(), cusp);
        assert_eq!(
            tschirnhausen(&pres("y^2 - x^3", F2)),
            Err(Error::CharDividesDegree {
                characteristic: 2,
                degree: 2
            })
        );
    }

    #[test]
    fn coefficient_algebra_examples() {
        let g = coefficient_algebra(&pres("y^2 - x^3", Q)).unwrap();
        assert!(same_generators(&g, &base_alg("[x^3 @ 2, x^2 @ 1]", Q)));

        let g = coefficient_algebra(&pres("y^3 - x^4", Q)).unwrap();
        assert!(same_generators(&g, &base_alg("[x^4 @ 3, x^3 @ 2, x^2 @ 1]", Q)));
        assert_eq!(g.ord_at(&Point::origin(1)).unwrap(), q(4, 3));

        let cy = var_names(&["c", "y"]);
        let f = MultiPoly::parse("y^2 + c", &cy, Q).unwrap();
        let g = coefficient_algebra(&MonicPresentation::new(&f, "y").unwrap()).unwrap();
        assert!(g.is_trivial());
        assert!(!g.sing_member(&Point::origin(1)).unwrap());

        let f = MultiPoly::parse("y^2 + 2*x*y - x^3", &xy(), Q).unwrap();
        assert!(coefficient_algebra(&MonicPresentation::new(&f, "y").unwrap()).is_err());
    }

    #[test]
    fn visible_elimination_examples() {
        let y = vec!["y".to_string()];
        let h = pres("y^2 - x^3", F2).full_algebra();
        assert_eq!(visible_elimination(&h, &y).unwrap(), base_alg("[x^2 @ 1]", F2));

        let g = pres("y^2 - x^3", Q).full_algebra();
        assert!(same_generators(
            &visible_elimination(&g, &y).unwrap(),
            &base_alg("[x^2 @ 1, x^3 @ 2]", Q)
        ));

        for field in [Q, F2, F3] {
            let g = ReesAlgebra::parse("[x @ 1, y^3 @ 2]", &xy(), field).unwrap();
            let e = visible_elimination(&g, &["x".to_string()]).unwrap();
            assert_eq!(e, ReesAlgebra::parse("[y^3 @ 2]", &y, field).unwrap());
        }
    }

    #[test]
    fn routes_agree_when_both_apply() {
        for text in ["y^2 - x^3", "y^3 - x^4", "y^2 - x^5", "y^3 - x^5", "y^2 + 2*x*y - x^3"] {
            let p = pres(text, Q);
            let t = coefficient_algebra(&tschirnhausen(&p).unwrap()).unwrap();
            let v = visible_elimination(&p.full_algebra(), &["y".to_string()]).unwrap();
            let o = Point::origin(1);
            assert_eq!(t.ord_at(&o).unwrap(), v.ord_at(&o).unwrap(), "{text}");
        }
    }

    #[test]
    fn ord_d_examples() {
        let o = Point::origin(1);
        let cases = [
            ("y^2 - x^3", Q, q(3, 2), EliminationMethod::Tschirnhausen),
            ("y^2 - x^3", F2, q(2, 1), EliminationMethod::VisibleIntersection),
            ("y^2 - x^3", F3, q(3, 2), EliminationMethod::Tschirnhausen),
            ("y^3 - x^4", Q, q(4, 3), EliminationMethod::Tschirnhausen),
            ("y^3 - x^4", F2, q(4, 3), EliminationMethod::Tschirnhausen),
            ("y^3 - x^4", F3, q(3, 2), EliminationMethod::VisibleIntersection),
            ("y^2 - x^5", Q, q(5, 2), EliminationMethod::Tschirnhausen),
            ("y^2 - x^5", F2, q(4, 1), EliminationMethod::VisibleIntersection),
            ("y^3 - x^5", Q, q(5, 3), EliminationMethod::Tschirnhausen),
            ("y^3 - x^5", F3, q(2, 1), EliminationMethod::VisibleIntersection),
        ];
        for (text, field, expected, method) in cases {
            let e = ord_d(&pres(text, field), &o).unwrap();
            assert_eq!((e.ord_d, e.method), (expected, method), "{text} over {field}");
        }
        assert_eq!(
            ord_d(&pres("y^2 - x^3", Q), &Point::from_ints(Q, &[1])),
            Err(Error::NotInSingularLocus)
        );
    }

    #[test]
    fn tschirnhausen_invariance() {
        let o = Point::origin(1);
        let plain = ord_d(&pres("y^3 - x^4", Q), &o).unwrap().ord_d;
        let f = MultiPoly::parse("y^3 - x^4", &xy(), Q).unwrap();
        let shift = [
            MultiPoly::parse("x", &xy(), Q).unwrap(),
            MultiPoly::parse("y + x^2", &xy(), Q).unwrap(),
        ];
        let moved = MonicPresentation::new(&f.substitute(&shift).unwrap(), "y").unwrap();
        assert_eq!(ord_d(&moved, &o).unwrap().ord_d, plain);
    }

    #[test]
    fn minimizing_arc_examples() {
        let x = var_names(&["x"]);
        let e = EliminationResult {
            algebra: base_alg("[x^2 @ 1, x^3 @ 2]", Q),
            ord_d: q(3, 2),
            method: EliminationMethod::Tschirnhausen,
            center: Point::origin(1),
        };
        let arc = minimizing_arc(&e).unwrap();
        assert_eq!(arc, Arc::parse(&x, Q, &["t^2"]).unwrap());
        assert_eq!(
            normalized_contact(&e.algebra, &arc).unwrap().r_bar,
            ExtRational::ratio(3, 2)
        );

        let e = ord_d(&pres("y^2 - x^3", F2), &Point::origin(1)).unwrap();
        let arc = minimizing_arc(&e).unwrap();
        assert_eq!(arc, Arc::parse(&x, F2, &["t"]).unwrap());
        assert_eq!(
            normalized_contact(&e.algebra, &arc).unwrap().r_bar,
            ExtRational::integer(2)
        );

        let e = EliminationResult {
            algebra: base_alg("[x @ 1]", Q),
            ord_d: q(1, 1),
            method: EliminationMethod::Tschirnhausen,
            center: Point::origin(1),
        };
        assert_eq!(minimizing_arc(&e).unwrap(), Arc::parse(&x, Q, &["t"]).unwrap());
    }

    #[test]
    fn no_rational_unit_over_f2() {
        let e = EliminationResult {
            algebra: ReesAlgebra::parse("[x + y @ 1]", &xy(), F2).unwrap(),
            ord_d: q(1, 1),
            method: EliminationMethod::VisibleIntersection,
            center: Point::origin(2),
        };
        assert!(matches!(minimizing_arc(&e), Err(Error::NoRationalUnit(_))));
    }

    fn cusp_candidates(field: FieldSpec) -> Vec<Arc> {
        [["t^2", "t^3"], ["t^4", "t^6"], ["t^6", "t^9"]]
            .iter()
            .map(|c| Arc::parse(&xy(), field, c).unwrap())
            .collect()
    }

    #[test]
    fn theorem_on_the_cusp() {
        for (field, expected) in [(Q, ExtRational::ratio(3, 2)), (F2, ExtRational::integer(2))] {
            let r = verify_main_theorem(&pres("y^2 - x^3", field), &cusp_candidates(field), None).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
            assert_eq!(r.observed_min, expected);
            assert_eq!(r.witness.unwrap().arc, cusp_candidates(field)[0]);
            assert!(r.projection.unwrap().holds());
            assert_eq!(r.minimizing_r_bar, expected);
        }
    }

    #[test]
    fn theorem_with_sampling() {
        let p = pres("y^3 - x^5", F3);
        let sampler = ArcSampler::new(&xy(), F3, vec![p.polynomial().clone()], SamplerConfig::default())
            .unwrap()
            .with_parametrization(Parametrization::parse("s", F3, &["s^3", "s^5"]).unwrap())
            .unwrap();
        let r = verify_main_theorem(&p, &[], Some(&sampler)).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.observed_min, ExtRational::integer(2));
        assert!(r.arcs_checked >= 100);
    }

    #[test]
    fn theorem_without_witness_is_inconclusive() {
        let r = verify_main_theorem(&pres("y^2 - x^3", Q), &[], None).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn theorem_rejects_bad_input() {
        let off = Arc::parse(&xy(), Q, &["t^3", "t^2"]).unwrap();
        assert!(matches!(
            verify_main_theorem(&pres("y^2 - x^3", Q), &[off], None),
            Err(Error::ArcNotOnVariety(_))
        ));
        let f = MultiPoly::parse("y^2 + x", &xy(), Q).unwrap();
        let p = MonicPresentation::new(&f, "y").unwrap();
        assert!(matches!(
            verify_main_theorem(&p, &[], None),
            Err(Error::InvalidPresentation(_))
        ));
    }

    #[test]
    fn product_enumeration() {
        assert_eq!(weighted_products(&[1, 2], 2), vec![vec![0, 0], vec![1]]);
        assert_eq!(weighted_products(&[2], 3), Vec::<Vec<usize>>::new());
    }
}
