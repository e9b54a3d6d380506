//! Arcs: one power series per ambient variable, centered at the origin.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::poly::{check_field, check_vars, MultiPoly};
use crate::series::TruncatedSeries;
use crate::value::Order;

/// A `k[[t]]`-point of affine space centered at the origin.
///
/// Invariants: one component per variable, every component has zero
/// constant term, and at least one component is known to be nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    vars: Vec<String>,
    field: FieldSpec,
    components: Vec<TruncatedSeries>,
}

impl Arc {
    pub fn new(vars: &[String], field: FieldSpec, components: Vec<TruncatedSeries>) -> Result<Self> {
        let arc = Self::from_parts(vars, field, components)?;
        if let Some(i) = arc.components.iter().position(|c| !c.constant_term().is_zero()) {
            return Err(Error::InvalidArc(format!(
                "component {} = {} has a nonzero constant term",
                arc.vars[i], arc.components[i]
            )));
        }
        let nonzero = arc.components.iter().any(|c| matches!(c.order(), Ok(Order::Finite(_))));
        if !nonzero {
            return Err(Error::InvalidArc("every component is zero".into()));
        }
        Ok(arc)
    }

    /// Builds the tuple without the centering invariants; used while lifting
    /// arcs through blow-up charts before recentering.
    pub(crate) fn from_parts(vars: &[String], field: FieldSpec, components: Vec<TruncatedSeries>) -> Result<Self> {
        if components.len() != vars.len() {
            return Err(Error::VariableMismatch {
                expected: vars.join(", "),
                found: format!("{} components", components.len()),
            });
        }
        for c in &components {
            check_field(field, c.field())?;
        }
        Ok(Arc {
            vars: vars.to_vec(),
            field,
            components,
        })
    }

    /// Parses one series per variable, e.g. `["t^2", "t^3"]`.
    pub fn parse(vars: &[String], field: FieldSpec, components: &[&str]) -> Result<Self> {
        let series = components
            .iter()
            .map(|c| TruncatedSeries::parse(c, field))
            .collect::<Result<Vec<_>>>()?;
        Self::new(vars, field, series)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.components[i]
    }

    pub fn is_exact(&self) -> bool {
        self.components.iter().all(TruncatedSeries::is_exact)
    }

    /// `ν_t`: the order of the image of the maximal ideal, i.e. the least
    /// order of a component.
    pub fn order(&self) -> Result<u64> {
        let mut best: Option<u64> = None;
        let mut undecided: Option<usize> = None;
        for c in &self.components {
            match c.order() {
                Ok(Order::Finite(o)) => best = Some(best.map_or(o, |b| b.min(o))),
                Ok(Order::Infinite) => {}
                Err(Error::PrecisionExhausted { precision }) => {
                    undecided = Some(undecided.map_or(precision, |u| u.min(precision)))
                }
                Err(e) => return Err(e),
            }
        }
        match (best, undecided) {
            (Some(b), Some(p)) if b > p as u64 => Err(Error::PrecisionExhausted { precision: p }),
            (Some(b), _) => Ok(b),
            (None, Some(p)) => Err(Error::PrecisionExhausted { precision: p }),
            (None, None) => Err(Error::InvalidArc("every component is zero".into())),
        }
    }

    /// `φ(f)`: substitutes the components into `f`.
    pub fn substitute(&self, f: &MultiPoly) -> Result<TruncatedSeries> {
        check_field(self.field, f.field())?;
        check_vars(&self.vars, f.vars())?;
        let mut powers: Vec<Vec<TruncatedSeries>> = self
            .components
            .iter()
            .map(|c| vec![TruncatedSeries::one(self.field), c.clone()])
            .collect();
        let mut acc = TruncatedSeries::zero(self.field);
        for (e, c) in f.terms() {
            let mut term = TruncatedSeries::monomial(self.field, c.clone(), 0);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("seeded").mul(&self.components[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// `φ ∘ (t ↦ t^n)`.
    pub fn reparametrize(&self, n: usize) -> Arc {
        Arc {
            vars: self.vars.clone(),
            field: self.field,
            components: self.components.iter().map(|c| c.reparametrize(n)).collect(),
        }
    }

    /// Keeps the components of the named variables, in the given order.
    pub fn project(&self, onto: &[String]) -> Result<Arc> {
        let comps = onto
            .iter()
            .map(|v| {
                self.vars
                    .iter()
                    .position(|w| w == v)
                    .map(|i| self.components[i].clone())
                    .ok_or_else(|| Error::VariableMismatch {
                        expected: self.vars.join(", "),
                        found: v.clone(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Arc::new(onto, self.field, comps)
    }

    /// `name=series` pairs, e.g. `x=t^2, y=t^3`.
    pub fn describe(&self) -> String {
        self.vars
            .iter()
            .zip(&self.components)
            .map(|(v, c)| format!("{v}={c}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
