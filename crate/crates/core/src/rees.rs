//! Rees algebras given by finitely many weighted generators `f_i W^{n_i}`.
//!
//! The graded pieces are never materialized. Everything the engine needs
//! (singular locus, Hironaka order, differential closure, transforms under
//! blow-ups, orders along arcs) is read off the generators.

use std::fmt;

use num_rational::BigRational;

use crate::blowup::ChartMap;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{check_field, check_vars, MultiPoly, Point};
use crate::value::{ExtRational, Order};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPoly {
    pub poly: MultiPoly,
    pub weight: u32,
}

impl WeightedPoly {
    pub fn new(poly: MultiPoly, weight: u32) -> Self {
        WeightedPoly { poly, weight }
    }
}

impl fmt::Display for WeightedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.poly, self.weight)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesAlgebra {
    vars: Vec<String>,
    field: FieldSpec,
    generators: Vec<WeightedPoly>,
}

/// All exponent vectors of length `n` and total degree `total`.
pub(crate) fn multi_indices(n: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=total).rev() {
            prefix.push(k);
            rec(n, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, total, &mut Vec::new(), &mut out);
    out
}

impl ReesAlgebra {
    /// Builds `R[f_1 W^{n_1}, …]`; zero generators are dropped.
    pub fn new(
        vars: &[String],
        field: FieldSpec,
        generators: impl IntoIterator<Item = (MultiPoly, u32)>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for (poly, weight) in generators {
            check_field(field, poly.field())?;
            check_vars(vars, poly.vars())?;
            if weight == 0 {
                return Err(Error::InvalidAlgebra(format!("generator {poly} has weight 0")));
            }
            if !poly.is_zero() {
                gens.push(WeightedPoly::new(poly, weight));
            }
        }
        Ok(ReesAlgebra {
            vars: vars.to_vec(),
            field,
            generators: gens,
        })
    }

    /// `R[f W^weight]`.
    pub fn hypersurface(f: &MultiPoly, weight: u32) -> Result<Self> {
        Self::new(f.vars(), f.field(), [(f.clone(), weight)])
    }

    /// Parses `"[y^2-x^3 @ 2, x @ 1]"`.
    pub fn parse(text: &str, vars: &[String], field: FieldSpec) -> Result<Self> {
        let trimmed = text.trim();
        let lead = text.len() - text.trim_start().len();
        let inner = trimmed
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| {
                crate::parse::Position {
                    line: 1,
                    column: lead + 1,
                }
                .error("a Rees algebra is written as [poly @ weight, ...]")
            })?;
        let mut gens = Vec::new();
        let mut offset = lead + 1;
        for entry in inner.split(',') {
            let here = offset;
            offset += entry.len() + 1;
            if entry.trim().is_empty() {
                continue;
            }
            let (poly_text, weight_text) = entry.rsplit_once('@').ok_or_else(|| {
                crate::parse::Position {
                    line: 1,
                    column: here + 1,
                }
                .error(format!("missing '@ weight' in '{}'", entry.trim()))
            })?;
            let weight: u32 = weight_text.trim().parse().map_err(|_| {
                crate::parse::Position {
                    line: 1,
                    column: here + poly_text.len() + 2,
                }
                .error(format!("invalid weight '{}'", weight_text.trim()))
            })?;
            let poly = MultiPoly::parse(poly_text, vars, field).map_err(|e| match e {
                Error::Parse(mut p) => {
                    p.column += here;
                    Error::Parse(p)
                }
                other => other,
            })?;
            gens.push((poly, weight));
        }
        Self::new(vars, field, gens)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[WeightedPoly] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    /// A unit generator of positive weight: the singular locus is empty.
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().any(|g| g.poly.is_unit())
    }

    /// Membership of `p` in `Sing(G)`: `ν_p(f_i) ≥ n_i` for every generator.
    pub fn sing_member(&self, p: &Point) -> Result<bool> {
        for g in &self.generators {
            if g.poly.order_at(p)? < Order::Finite(g.weight as u64) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Orders of the generators at `p`.
    pub fn generator_orders(&self, p: &Point) -> Result<Vec<Order>> {
        self.generators.iter().map(|g| g.poly.order_at(p)).collect()
    }

    /// Hironaka's order `min_i ν_p(f_i) / n_i` at a point of the singular locus.
    pub fn ord_at(&self, p: &Point) -> Result<BigRational> {
        if self.generators.is_empty() {
            return Err(Error::InvalidAlgebra(
                "the order of an algebra without generators is undefined".into(),
            ));
        }
        if !self.sing_member(p)? {
            return Err(Error::NotInSingularLocus);
        }
        let best = self
            .generators
            .iter()
            .map(|g| g.poly.order_at(p).map(|o| o.over(g.weight)))
            .collect::<Result<Vec<ExtRational>>>()?
            .into_iter()
            .min()
            .expect("nonempty");
        match best {
            ExtRational::Finite(q) => Ok(q),
            ExtRational::Infinite => unreachable!("zero generators are dropped"),
        }
    }

    /// `G₁ ⊙ G₂`, the smallest algebra containing both.
    pub fn odot(&self, other: &ReesAlgebra) -> Result<ReesAlgebra> {
        check_field(self.field, other.field)?;
        check_vars(&self.vars, &other.vars)?;
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(ReesAlgebra {
            vars: self.vars.clone(),
            field: self.field,
            generators,
        })
    }

    /// Adds `∂^[a] f_i W^{n_i - |a|}` for every generator and every multi-index
    /// with `1 ≤ |a| < n_i`. Hasse derivatives compose up to binomial factors,
    /// so one pass is closed; zero derivatives and scalar multiples of an
    /// existing generator of the same weight are skipped.
    pub fn diff_closure(&self) -> ReesAlgebra {
        let n = self.vars.len();
        let mut out: Vec<WeightedPoly> = Vec::new();
        let push = |g: WeightedPoly, out: &mut Vec<WeightedPoly>| {
            if g.poly.is_zero() {
                return;
            }
            let monic = g.poly.monic();
            if out.iter().any(|h| h.weight == g.weight && h.poly.monic() == monic) {
                return;
            }
            out.push(g);
        };
        for g in &self.generators {
            push(g.clone(), &mut out);
        }
        for g in &self.generators {
            for order in 1..g.weight {
                for a in multi_indices(n, order) {
                    push(WeightedPoly::new(g.poly.hasse(&a), g.weight - order), &mut out);
                }
            }
        }
        ReesAlgebra {
            vars: self.vars.clone(),
            field: self.field,
            generators: out,
        }
    }

    /// Moves `p` to the origin.
    pub fn translate(&self, p: &Point) -> Result<ReesAlgebra> {
        Ok(ReesAlgebra {
            vars: self.vars.clone(),
            field: self.field,
            generators: self
                .generators
                .iter()
                .map(|g| Ok(WeightedPoly::new(g.poly.translate(p)?, g.weight)))
                .collect::<Result<_>>()?,
        })
    }

    /// Weighted transform under the blow-up of `center`: each generator is
    /// pulled back through the chart and divided by `e^{n_i}`.
    pub fn weighted_transform(&self, chart: &ChartMap, center: &Point) -> Result<ReesAlgebra> {
        if chart.nvars() != self.vars.len() {
            return Err(Error::VariableMismatch {
                expected: self.vars.join(", "),
                found: format!("chart on {} variables", chart.nvars()),
            });
        }
        let local = self.translate(center)?;
        let mut gens = Vec::with_capacity(local.generators.len());
        for (index, g) in local.generators.iter().enumerate() {
            let t = chart.transform(&g.poly, g.weight).ok_or(Error::NotPermissible {
                index,
                weight: g.weight,
            })?;
            gens.push((t, g.weight));
        }
        Self::new(&self.vars, self.field, gens)
    }

    /// Re-expresses the algebra over `target`, which must contain every
    /// variable occurring in a generator.
    pub fn restrict_to(&self, target: &[String]) -> Option<ReesAlgebra> {
        let generators = self
            .generators
            .iter()
            .map(|g| Some(WeightedPoly::new(g.poly.restrict_to(target)?, g.weight)))
            .collect::<Option<Vec<_>>>()?;
        Some(ReesAlgebra {
            vars: target.to_vec(),
            field: self.field,
            generators,
        })
    }

    /// Same algebra with every generator scaled to be monic.
    pub fn normalized(&self) -> ReesAlgebra {
        ReesAlgebra {
            vars: self.vars.clone(),
            field: self.field,
            generators: self
                .generators
                .iter()
                .map(|g| WeightedPoly::new(g.poly.monic(), g.weight))
                .collect(),
        }
    }
}

impl fmt::Display for ReesAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var_names;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn xy() -> Vec<String> {
        var_names(&["x", "y"])
    }

    fn alg(text: &str, field: FieldSpec) -> ReesAlgebra {
        ReesAlgebra::parse(text, &xy(), field).unwrap()
    }

    fn poly(text: &str, field: FieldSpec) -> MultiPoly {
        MultiPoly::parse(text, &xy(), field).unwrap()
    }

    fn has(g: &ReesAlgebra, text: &str, weight: u32) -> bool {
        let p = poly(text, g.field());
        g.generators()
            .iter()
            .any(|h| h.weight == weight && h.poly.is_scalar_multiple_of(&p))
    }

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(multi_indices(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(3, 1).len(), 3);
        assert_eq!(multi_indices(1, 4), vec![vec![4]]);
    }

    #[test]
    fn singular_locus_membership() {
        let g = alg("[y @ 1, x^2 @ 1, x^3 @ 2]", Q);
        assert!(g.sing_member(&Point::origin(2)).unwrap());
        assert!(!g.sing_member(&Point::from_ints(Q, &[1, 1])).unwrap());
        let line = ReesAlgebra::parse("[x @ 1]", &var_names(&["x"]), Q).unwrap();
        assert!(line.sing_member(&Point::origin(1)).unwrap());
    }

    #[test]
    fn hironaka_orders() {
        let s = var_names(&["x"]);
        let g1 = ReesAlgebra::parse("[x^2 @ 1, x^3 @ 2]", &s, Q).unwrap();
        assert_eq!(
            g1.ord_at(&Point::origin(1)).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        let h1 = ReesAlgebra::parse("[x^2 @ 1]", &s, FieldSpec::Prime(2)).unwrap();
        assert_eq!(
            h1.ord_at(&Point::origin(1)).unwrap(),
            BigRational::from_integer(2.into())
        );
        let r = ReesAlgebra::parse("[x @ 1]", &s, Q).unwrap();
        assert_eq!(
            r.ord_at(&Point::origin(1)).unwrap(),
            BigRational::from_integer(1.into())
        );
        assert_eq!(
            alg("[y @ 1]", Q).ord_at(&Point::from_ints(Q, &[0, 1])),
            Err(Error::NotInSingularLocus)
        );
    }

    #[test]
    fn odot_concatenates_and_intersects() {
        let a = alg("[x @ 1]", Q);
        let b = alg("[y @ 1]", Q);
        let ab = a.odot(&b).unwrap();
        assert_eq!(ab, alg("[x @ 1, y @ 1]", Q));
        assert!(ab.sing_member(&Point::origin(2)).unwrap());
        assert!(!ab.sing_member(&Point::from_ints(Q, &[1, 0])).unwrap());
        assert!(a.odot(&alg("[x @ 1]", FieldSpec::Prime(3))).is_err());
    }

    #[test]
    fn cusp_closure_char_two() {
        let f2 = FieldSpec::Prime(2);
        let g = ReesAlgebra::hypersurface(&poly("y^2 - x^3", f2), 2)
            .unwrap()
            .diff_closure();
        assert!(has(&g, "x^2", 1));
        assert!(has(&g, "y^2 - x^3", 2));
        assert!(!g.generators().iter().any(|h| h.poly.involves(1) && h.weight == 1));
        assert_eq!(g.generators().len(), 2);
    }

    #[test]
    fn cusp_closure_char_zero() {
        let g = ReesAlgebra::hypersurface(&poly("y^2 - x^3", Q), 2)
            .unwrap()
            .diff_closure();
        assert!(has(&g, "2*y", 1));
        assert!(has(&g, "-3*x^2", 1));
        assert!(has(&g, "y^2 - x^3", 2));
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn closure_is_idempotent_on_generators() {
        let g = ReesAlgebra::hypersurface(&poly("y^3 - x^4 + x*y^2", Q), 3)
            .unwrap()
            .diff_closure();
        assert_eq!(g.diff_closure(), g);
    }

    #[test]
    fn transform_examples() {
        let x_chart = ChartMap::new(0, 2);
        let origin = Point::origin(2);
        let g = ReesAlgebra::hypersurface(&poly("y^2 - x^3", Q), 2).unwrap();
        assert_eq!(
            g.weighted_transform(&x_chart, &origin).unwrap(),
            alg("[y^2 - x @ 2]", Q)
        );

        let g = alg("[y @ 1, x^2 @ 1, x^3 @ 2]", Q);
        assert_eq!(
            g.weighted_transform(&x_chart, &origin).unwrap(),
            alg("[y @ 1, x @ 1, x @ 2]", Q)
        );

        let line = ReesAlgebra::parse("[x @ 1]", &var_names(&["x"]), Q).unwrap();
        let t = line
            .weighted_transform(&ChartMap::new(0, 1), &Point::origin(1))
            .unwrap();
        assert!(t.is_trivial());
    }

    #[test]
    fn transform_rejects_non_permissible_centers() {
        let g = alg("[y @ 1, x^2 @ 1, x^3 @ 2]", Q);
        let p = Point::from_ints(Q, &[1, 1]);
        assert!(!g.sing_member(&p).unwrap());
        assert!(matches!(
            g.weighted_transform(&ChartMap::new(0, 2), &p),
            Err(Error::NotPermissible { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match ReesAlgebra::parse("[y^2 @ 2, x^^2 @ 1]", &xy(), Q) {
            Err(Error::Parse(p)) => assert_eq!(p.column, 13),
            other => panic!("unexpected {other:?}"),
        }
        assert!(ReesAlgebra::parse("y @ 1", &xy(), Q).is_err());
        assert!(ReesAlgebra::parse("[y @ 0]", &xy(), Q).is_err());
        assert!(ReesAlgebra::parse("[y]", &xy(), Q).is_err());
    }

    #[test]
    fn display_round_trips() {
        let g = alg("[y^2 - x^3 @ 2, x^2 @ 1]", Q);
        assert_eq!(g.to_string(), "[y^2 - x^3 @ 2, x^2 @ 1]");
        assert_eq!(alg(&g.to_string(), Q), g);
    }
}
