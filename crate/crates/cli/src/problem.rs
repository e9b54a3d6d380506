//! Problem files: TOML documents naming a hypersurface, arcs on it and the
//! analyses to run.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use toml::Spanned;

use nashorder_core::contact::Parametrization;
use nashorder_core::parse::ParseError;
use nashorder_core::{Arc, Error, FieldSpec, MultiPoly, Point, TruncatedSeries};

pub const DEFAULT_PRECISION: usize = 64;
pub const DEFAULT_MAX_STEPS: usize = 32;
pub const DEFAULT_BUDGET: usize = 100;
pub const DEFAULT_EXPONENT_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Analysis {
    Nash,
    Contact,
    OrdD,
    Verify,
}

impl Analysis {
    pub const ALL: [Analysis; 4] = [Analysis::Nash, Analysis::Contact, Analysis::OrdD, Analysis::Verify];

    pub fn name(self) -> &'static str {
        match self {
            Analysis::Nash => "nash",
            Analysis::Contact => "contact",
            Analysis::OrdD => "ord_d",
            Analysis::Verify => "verify",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "nash" => Some(Analysis::Nash),
            "contact" => Some(Analysis::Contact),
            "ord_d" | "ord-d" => Some(Analysis::OrdD),
            "verify" => Some(Analysis::Verify),
            _ => None,
        }
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A problem-file error, located in the file when possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl InputError {
    fn plain(message: impl Into<String>) -> Self {
        InputError {
            message: message.into(),
            line: None,
            column: None,
        }
    }

    fn at(source: &str, offset: usize, message: impl Into<String>) -> Self {
        let (line, column) = line_col(source, offset);
        InputError {
            message: message.into(),
            line: Some(line),
            column: Some(column),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{l}:{c}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for InputError {}

fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize, serde::Serialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub precision: Option<usize>,
    pub max_steps: Option<usize>,
    pub seed: Option<u64>,
    /// Number of random arcs admitted by the sampler.
    pub budget: Option<usize>,
    pub exponent_bound: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ResolvedOptions {
    pub precision: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub budget: usize,
    pub exponent_bound: u32,
}

impl Options {
    /// Fields set in `over` win.
    pub fn merged(&self, over: &Options) -> Options {
        Options {
            precision: over.precision.or(self.precision),
            max_steps: over.max_steps.or(self.max_steps),
            seed: over.seed.or(self.seed),
            budget: over.budget.or(self.budget),
            exponent_bound: over.exponent_bound.or(self.exponent_bound),
        }
    }

    pub fn resolve(&self) -> ResolvedOptions {
        ResolvedOptions {
            precision: self.precision.unwrap_or(DEFAULT_PRECISION),
            max_steps: self.max_steps.unwrap_or(DEFAULT_MAX_STEPS),
            seed: self.seed.unwrap_or(0),
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            exponent_bound: self.exponent_bound.unwrap_or(DEFAULT_EXPONENT_BOUND),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcExpectation {
    pub sequence: Option<Vec<u64>>,
    pub rho: Option<u64>,
    pub r: Option<String>,
    pub r_bar: Option<String>,
}

/// Golden values compared against the report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub multiplicity: Option<u64>,
    pub ord_d: Option<String>,
    pub method: Option<String>,
    pub verdict: Option<String>,
    #[serde(default)]
    pub arcs: BTreeMap<String, ArcExpectation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArc {
    name: String,
    series: Vec<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParametrization {
    parameter: String,
    images: Vec<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    name: String,
    description: Option<String>,
    characteristic: u64,
    variables: Vec<String>,
    equation: Spanned<String>,
    fiber: Option<String>,
    center: Option<Vec<i64>>,
    #[serde(default)]
    analyses: Vec<Spanned<String>>,
    parametrization: Option<RawParametrization>,
    #[serde(default)]
    arcs: Vec<RawArc>,
    #[serde(default)]
    options: Options,
    #[serde(default)]
    expect: Expectations,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedArc {
    pub name: String,
    /// Components as written in the file.
    pub series: Vec<String>,
    /// In coordinates centered at the problem's center.
    pub arc: Arc,
}

/// A validated problem. Everything except `equation` and `center` is
/// expressed in coordinates centered at `center`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub name: String,
    pub description: Option<String>,
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub equation_text: String,
    pub equation: MultiPoly,
    pub local_equation: MultiPoly,
    pub center: Point,
    pub center_ints: Vec<i64>,
    pub fiber: Option<String>,
    pub analyses: Vec<Analysis>,
    pub parametrization: Option<(String, Vec<String>)>,
    pub local_parametrization: Option<Parametrization>,
    pub arcs: Vec<NamedArc>,
    pub options: Options,
    pub expect: Expectations,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Maps an engine error raised while parsing the string value at `span` to a
/// location in the file.
fn locate(source: &str, span: std::ops::Range<usize>, field: &str, err: Error) -> InputError {
    match err {
        Error::Parse(ParseError { message, column, .. }) => {
            // the 1-based column also steps over the opening quote
            InputError::at(source, span.start + column, format!("{field}: {message}"))
        }
        other => InputError::at(source, span.start, format!("{field}: {other}")),
    }
}

impl Problem {
    pub fn parse(source: &str) -> Result<Problem, InputError> {
        let raw: RawProblem = toml::from_str(source).map_err(|e| match e.span() {
            Some(span) => InputError::at(source, span.start, e.message().to_string()),
            None => InputError::plain(e.message().to_string()),
        })?;
        let field = FieldSpec::from_characteristic(raw.characteristic)
            .map_err(|e| InputError::plain(format!("characteristic: {e}")))?;

        if raw.variables.is_empty() {
            return Err(InputError::plain("variables: at least one variable is required"));
        }
        for (i, v) in raw.variables.iter().enumerate() {
            if !is_identifier(v) || v == "t" {
                return Err(InputError::plain(format!(
                    "variables: '{v}' is not a valid variable name (identifiers other than t)"
                )));
            }
            if raw.variables[..i].contains(v) {
                return Err(InputError::plain(format!("variables: '{v}' is listed twice")));
            }
        }
        let vars = raw.variables.clone();

        let equation = MultiPoly::parse(raw.equation.get_ref(), &vars, field)
            .map_err(|e| locate(source, raw.equation.span(), "equation", e))?;
        if equation.is_zero() {
            return Err(InputError::at(
                source,
                raw.equation.span().start,
                "equation: the zero polynomial",
            ));
        }

        let center_ints = raw.center.clone().unwrap_or_else(|| vec![0; vars.len()]);
        if center_ints.len() != vars.len() {
            return Err(InputError::plain(format!(
                "center: {} coordinates for {} variables",
                center_ints.len(),
                vars.len()
            )));
        }
        let center = Point::from_ints(field, &center_ints);
        let local_equation = equation
            .translate(&center)
            .map_err(|e| InputError::plain(e.to_string()))?;

        if let Some(fb) = &raw.fiber {
            if !vars.contains(fb) {
                return Err(InputError::plain(format!("fiber: '{fb}' is not one of the variables")));
            }
        }

        let mut analyses = Vec::new();
        for a in &raw.analyses {
            let parsed = Analysis::from_name(a.get_ref()).ok_or_else(|| {
                InputError::at(
                    source,
                    a.span().start,
                    format!(
                        "analyses: unknown analysis '{}' (nash, contact, ord_d, verify)",
                        a.get_ref()
                    ),
                )
            })?;
            if !analyses.contains(&parsed) {
                analyses.push(parsed);
            }
        }
        if analyses.is_empty() {
            analyses = Analysis::ALL.to_vec();
        }
        analyses.sort();

        let (parametrization, local_parametrization) = match &raw.parametrization {
            None => (None, None),
            Some(p) => {
                if !is_identifier(&p.parameter) {
                    return Err(InputError::plain(format!(
                        "parametrization: '{}' is not a valid parameter name",
                        p.parameter
                    )));
                }
                if p.images.len() != vars.len() {
                    return Err(InputError::plain(format!(
                        "parametrization: {} images for {} variables",
                        p.images.len(),
                        vars.len()
                    )));
                }
                let pvars = vec![p.parameter.clone()];
                let mut local = Vec::new();
                for (img, c) in p.images.iter().zip(center.coords()) {
                    let q = MultiPoly::parse(img.get_ref(), &pvars, field)
                        .map_err(|e| locate(source, img.span(), "parametrization", e))?;
                    let shift = MultiPoly::constant(&pvars, field, c.clone());
                    local.push(&q - &shift);
                }
                let lp = Parametrization::new(&p.parameter, field, local)
                    .map_err(|e| InputError::plain(format!("parametrization: {e}")))?;
                if !lp.base_point().is_origin() {
                    return Err(InputError::plain(format!(
                        "parametrization: the curve does not pass through the center at {} = 0",
                        p.parameter
                    )));
                }
                let texts = p.images.iter().map(|s| s.get_ref().clone()).collect();
                (Some((p.parameter.clone(), texts)), Some(lp))
            }
        };

        let mut arcs: Vec<NamedArc> = Vec::new();
        for a in &raw.arcs {
            if arcs.iter().any(|b| b.name == a.name) {
                return Err(InputError::plain(format!("arcs: duplicate arc name '{}'", a.name)));
            }
            if a.series.len() != vars.len() {
                return Err(InputError::plain(format!(
                    "arcs: '{}' has {} components for {} variables",
                    a.name,
                    a.series.len(),
                    vars.len()
                )));
            }
            let comps = a
                .series
                .iter()
                .map(|s| {
                    TruncatedSeries::parse(s.get_ref(), field)
                        .map_err(|e| locate(source, s.span(), &format!("arc '{}'", a.name), e))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let arc = Arc::new(&vars, field, comps).map_err(|e| InputError::plain(format!("arc '{}': {e}", a.name)))?;
            arcs.push(NamedArc {
                name: a.name.clone(),
                series: a.series.iter().map(|s| s.get_ref().clone()).collect(),
                arc,
            });
        }
        for name in raw.expect.arcs.keys() {
            if !arcs.iter().any(|a| &a.name == name) {
                return Err(InputError::plain(format!("expect: no arc named '{name}'")));
            }
        }

        Ok(Problem {
            name: raw.name,
            description: raw.description,
            field,
            vars,
            equation_text: raw.equation.get_ref().clone(),
            equation,
            local_equation,
            center,
            center_ints,
            fiber: raw.fiber,
            analyses,
            parametrization,
            local_parametrization,
            arcs,
            options: raw.options,
            expect: raw.expect,
        })
    }
}
