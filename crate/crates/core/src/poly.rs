//! Exact multivariate polynomials over a [`FieldSpec`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{binomial, FieldSpec, Scalar};
use crate::parse::{parse_expr, Expr};
use crate::value::Order;

pub type Exponent = Vec<u32>;

/// A rational point of affine space, one coordinate per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn origin(n: usize) -> Self {
        Point(vec![Scalar::zero(); n])
    }

    pub fn from_ints(field: FieldSpec, coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| field.int(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self, field: FieldSpec) -> Point {
        Point(self.0.iter().map(|c| field.neg(c)).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A polynomial in an ordered list of named variables.
///
/// Terms are kept in a map from exponent vectors to nonzero canonical
/// coefficients, so structural equality is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    field: FieldSpec,
    terms: BTreeMap<Exponent, Scalar>,
}

pub(crate) fn check_vars(expected: &[String], found: &[String]) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::VariableMismatch {
            expected: expected.join(", "),
            found: found.join(", "),
        })
    }
}

pub(crate) fn check_field(a: FieldSpec, b: FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a.to_string(), b.to_string()))
    }
}

impl MultiPoly {
    pub fn zero(vars: &[String], field: FieldSpec) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], field: FieldSpec, c: Scalar) -> Self {
        Self::monomial(vars, field, vec![0; vars.len()], c)
    }

    pub fn one(vars: &[String], field: FieldSpec) -> Self {
        Self::constant(vars, field, Scalar::one())
    }

    pub fn monomial(vars: &[String], field: FieldSpec, exponent: Exponent, c: Scalar) -> Self {
        assert_eq!(exponent.len(), vars.len(), "exponent length");
        let c = field.normalize(c);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        MultiPoly {
            vars: vars.to_vec(),
            field,
            terms,
        }
    }

    /// The coordinate function of variable `index`.
    pub fn var(vars: &[String], field: FieldSpec, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, field, e, Scalar::one())
    }

    pub fn from_terms(vars: &[String], field: FieldSpec, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = Self::zero(vars, field);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length");
            p.add_term(e, &c);
        }
        p
    }

    /// Parses `text` in the ring with the given variables.
    pub fn parse(text: &str, vars: &[String], field: FieldSpec) -> Result<Self> {
        let expr = parse_expr(text)?;
        Self::eval_expr(&expr, vars, field)
    }

    fn eval_expr(expr: &Expr, vars: &[String], field: FieldSpec) -> Result<Self> {
        Ok(match expr {
            Expr::Int(n) => Self::constant(vars, field, field.big_int(n.clone())),
            Expr::Var(name, pos) => {
                let idx = vars.iter().position(|v| v == name).ok_or_else(|| {
                    pos.error(format!(
                        "unknown variable '{name}' (expected one of: {})",
                        vars.join(", ")
                    ))
                })?;
                Self::var(vars, field, idx)
            }
            Expr::Neg(a) => -&Self::eval_expr(a, vars, field)?,
            Expr::Add(a, b) => &Self::eval_expr(a, vars, field)? + &Self::eval_expr(b, vars, field)?,
            Expr::Sub(a, b) => &Self::eval_expr(a, vars, field)? - &Self::eval_expr(b, vars, field)?,
            Expr::Mul(a, b) => &Self::eval_expr(a, vars, field)? * &Self::eval_expr(b, vars, field)?,
            Expr::Pow(a, e) => Self::eval_expr(a, vars, field)?.pow(*e),
        })
    }

    fn add_term(&mut self, e: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                let c = field.normalize(c.clone());
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// A nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars()])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Order at the origin: the least total degree of a term, ∞ for zero.
    pub fn order_at_origin(&self) -> Order {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as u64)
            .min()
            .map_or(Order::Infinite, Order::Finite)
    }

    /// Order of `self` in the local ring at `p`.
    pub fn order_at(&self, p: &Point) -> Result<Order> {
        Ok(self.translate(p)?.order_at_origin())
    }

    /// The sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree homogeneous part (the initial form at the origin).
    pub fn initial_form(&self) -> MultiPoly {
        match self.order_at_origin() {
            Order::Finite(d) => self.homogeneous_part(d as u32),
            Order::Infinite => self.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        let mut out = Self::zero(&self.vars, self.field);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &self.field.mul(a, c));
        }
        out
    }

    /// Scales so that the coefficient of the largest exponent is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.terms.iter().next_back() {
            Some((_, lc)) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn is_scalar_multiple_of(&self, other: &MultiPoly) -> bool {
        !self.is_zero() && !other.is_zero() && self.monic() == other.monic()
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars, self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn evaluate(&self, p: &Point) -> Result<Scalar> {
        if p.len() != self.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.vars.join(", "),
                found: format!("point of length {}", p.len()),
            });
        }
        let f = self.field;
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in p.coords().iter().zip(e) {
                for _ in 0..k {
                    term = f.mul(&term, x);
                }
            }
            acc = f.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Ring homomorphism sending variable `i` to `assignment[i]`; the result
    /// lives in the ring of the assigned polynomials.
    pub fn substitute(&self, assignment: &[MultiPoly]) -> Result<MultiPoly> {
        if assignment.len() != self.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.vars.join(", "),
                found: format!("{} assigned polynomials", assignment.len()),
            });
        }
        let target = match assignment.first() {
            Some(a) => a,
            None => return Ok(self.clone()),
        };
        for a in assignment {
            check_field(self.field, a.field)?;
            check_vars(&target.vars, &a.vars)?;
        }
        let mut powers: Vec<Vec<MultiPoly>> = assignment
            .iter()
            .map(|a| vec![Self::one(&a.vars, a.field), a.clone()])
            .collect();
        let mut out = Self::zero(&target.vars, self.field);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target.vars, self.field, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &assignment[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `f(x + p)`: moves the point `p` to the origin.
    pub fn translate(&self, p: &Point) -> Result<MultiPoly> {
        if p.len() != self.nvars() {
            return Err(Error::VariableMismatch {
                expected: self.vars.join(", "),
                found: format!("point of length {}", p.len()),
            });
        }
        if p.is_origin() {
            return Ok(self.clone());
        }
        let assignment: Vec<MultiPoly> = (0..self.nvars())
            .map(|i| {
                &Self::var(&self.vars, self.field, i) + &Self::constant(&self.vars, self.field, p.coords()[i].clone())
            })
            .collect();
        self.substitute(&assignment)
    }

    /// Hasse (divided-power) derivative `∂^[a]`:
    /// `∂^[a] x^e = Π binomial(e_i, a_i) · x^(e - a)`, binomials reduced in the field.
    pub fn hasse(&self, a: &[u32]) -> MultiPoly {
        assert_eq!(a.len(), self.nvars(), "multi-index length");
        let mut out = Self::zero(&self.vars, self.field);
        for (e, c) in &self.terms {
            if e.iter().zip(a).any(|(ei, ai)| ei < ai) {
                continue;
            }
            let mut coeff = c.clone();
            for (ei, ai) in e.iter().zip(a) {
                let b = self.field.big_int(binomial(*ei as u64, *ai as u64));
                coeff = self.field.mul(&coeff, &b);
            }
            let shifted: Exponent = e.iter().zip(a).map(|(ei, ai)| ei - ai).collect();
            out.add_term(shifted, &coeff);
        }
        out
    }

    /// Exact quotient by `x_var^k`, or `None` if some term has a smaller power.
    pub fn divide_by_var_power(&self, var: usize, k: u32) -> Option<MultiPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] < k {
                return None;
            }
            let mut e = e.clone();
            e[var] -= k;
            terms.insert(e, c.clone());
        }
        Some(MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms,
        })
    }

    /// Coefficients of `self` as a polynomial in `x_var`: entry `k` is the
    /// coefficient of `x_var^k` (in the same ring, free of `x_var`).
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.vars, self.field); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e = e.clone();
            e[var] = 0;
            out[k].add_term(e, c);
        }
        out
    }

    /// Embeds into the ring with `extra` variables appended.
    pub fn extend_vars(&self, extra: &[String]) -> MultiPoly {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().cloned());
        MultiPoly {
            vars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.extend(std::iter::repeat_n(0, extra.len()));
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Re-expresses `self` in the ring with variables `target`, which must
    /// contain every variable that actually occurs in `self`.
    pub fn restrict_to(&self, target: &[String]) -> Option<MultiPoly> {
        let map: Vec<Option<usize>> = self.vars.iter().map(|v| target.iter().position(|t| t == v)).collect();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    ne[map[i]?] = k;
                }
            }
            terms.insert(ne, c.clone());
        }
        Some(MultiPoly {
            vars: target.to_vec(),
            field: self.field,
            terms,
        })
    }

    fn assert_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.vars, other.vars, "variable mismatch");
    }

    pub fn is_compatible(&self, other: &MultiPoly) -> Result<()> {
        check_field(self.field, other.field)?;
        check_vars(&self.vars, &other.vars)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect(),
        }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.assert_compatible(rhs);
        let mut out = MultiPoly::zero(&self.vars, self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &self.field.mul(ca, cb));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    /// Terms by increasing total degree; within a degree, larger powers of
    /// earlier variables first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Exponent, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in ordered.into_iter().enumerate() {
            let negative = self.field.is_negative(c);
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        self.vars[j].clone()
                    } else {
                        format!("{}^{}", self.vars[j], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Helper for building variable lists in tests and callers.
pub fn var_names(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(text, &var_names(vars), FieldSpec::Rationals).unwrap()
    }

    fn fp(p: u64, text: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(text, &var_names(vars), FieldSpec::Prime(p)).unwrap()
    }

    #[test]
    fn cusp_order_at_points() {
        let f = q("y^2 - x^3", &["x", "y"]);
        let ff = FieldSpec::Rationals;
        assert_eq!(f.order_at(&Point::origin(2)).unwrap(), Order::Finite(2));
        assert_eq!(f.order_at(&Point::from_ints(ff, &[1, 1])).unwrap(), Order::Finite(1));
        let unit = q("1", &["x", "y"]);
        assert_eq!(
            unit.order_at(&Point::from_ints(ff, &[3, -2])).unwrap(),
            Order::Finite(0)
        );
        assert_eq!(
            MultiPoly::zero(&var_names(&["x"]), ff)
                .order_at(&Point::origin(1))
                .unwrap(),
            Order::Infinite
        );
        assert!(f.order_at(&Point::origin(3)).is_err());
    }

    #[test]
    fn translated_cusp_has_linear_part() {
        // f(x+1, y+1) = -3x + 2y + ...
        let f = q("y^2 - x^3", &["x", "y"]);
        let g = f.translate(&Point::from_ints(FieldSpec::Rationals, &[1, 1])).unwrap();
        assert_eq!(g.homogeneous_part(1), q("-3*x + 2*y", &["x", "y"]));
        assert_eq!(g.constant_term(), Scalar::zero());
    }

    #[test]
    fn hasse_examples() {
        let x3 = q("x^3", &["x", "y"]);
        assert_eq!(x3.hasse(&[1, 0]), q("3*x^2", &["x", "y"]));
        let y2 = fp(2, "y^2", &["x", "y"]);
        assert!(y2.hasse(&[0, 1]).is_zero());
        assert_eq!(y2.hasse(&[0, 2]), fp(2, "1", &["x", "y"]));
        assert!(x3.hasse(&[4, 0]).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let vars = var_names(&["x"]);
        let x2 = q("x^2", &["x"]);
        let shifted = x2.substitute(&[q("x + 1", &["x"])]).unwrap();
        assert_eq!(shifted, q("x^2 + 2*x + 1", &["x"]));
        assert_eq!(shifted.vars(), &vars[..]);

        let f = q("y^2 - x^3", &["x", "y"]);
        let ring = ["x", "y", "t"];
        let chart = f.substitute(&[q("x*t", &ring), q("y*t", &ring)]).unwrap();
        assert_eq!(chart, q("y^2*t^2 - x^3*t^3", &ring));

        assert_eq!(f.translate(&Point::origin(2)).unwrap(), f);
    }

    #[test]
    fn substitution_checks_fields() {
        let f = q("x", &["x"]);
        let g = fp(3, "x", &["x"]);
        assert!(matches!(f.substitute(&[g]), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn display_and_parse_agree() {
        let f = q("y^2 - x^3 + 3*x*y - 7", &["x", "y"]);
        assert_eq!(f.to_string(), "-7 + 3*x*y + y^2 - x^3");
        assert_eq!(q(&f.to_string(), &["x", "y"]), f);
        assert_eq!(fp(2, "y^2 - x^3", &["x", "y"]).to_string(), "y^2 + x^3");
    }

    #[test]
    fn unknown_variable_is_a_parse_error() {
        let err = MultiPoly::parse("x + z", &var_names(&["x", "y"]), FieldSpec::Rationals).unwrap_err();
        match err {
            Error::Parse(p) => assert_eq!(p.column, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn coefficients_and_restriction() {
        let f = q("y^2 + 2*s*y + s^3", &["s", "y"]);
        let c = f.coefficients_in(1);
        assert_eq!(c.len(), 3);
        assert_eq!(c[1], q("2*s", &["s", "y"]));
        let base = c[0].restrict_to(&var_names(&["s"])).unwrap();
        assert_eq!(base, q("s^3", &["s"]));
        assert!(f.restrict_to(&var_names(&["s"])).is_none());
        assert_eq!(
            q("x^2*y", &["x", "y"]).divide_by_var_power(0, 2),
            Some(q("y", &["x", "y"]))
        );
        assert_eq!(q("x^2*y + y", &["x", "y"]).divide_by_var_power(0, 1), None);
    }
}
