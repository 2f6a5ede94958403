//! Quantized, box-constrained parameter spaces.
//!
//! Each parameter lives on a grid `{lower + k*q : k >= 0} ∩ [lower, upper]`.
//! Sampling is uniform on the parameter's scale (linear, or log for
//! ratio-like parameters spanning several orders of magnitude) followed by
//! snapping to the grid. Encoding maps a configuration to `[0, 1]^d` for the
//! surrogate model, per scale.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::kernel::names;

/// Relative slack used when deciding whether a float sits on the grid.
const GRID_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Linear => write!(f, "linear"),
            Scale::Log => write!(f, "log"),
        }
    }
}

impl std::str::FromStr for Scale {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Scale::Linear),
            "log" => Ok(Scale::Log),
            other => Err(Error::invalid(format!("unknown scale `{other}`"))),
        }
    }
}

/// One tunable parameter: a named range with a quantization factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterDef {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub q: f64,
    pub scale: Scale,
}

impl ParameterDef {
    pub fn new(name: &str, lower: f64, upper: f64, q: f64, scale: Scale) -> Result<Self> {
        if name.is_empty() || name.contains(',') || name.contains('=') {
            return Err(Error::invalid(format!("bad parameter name `{name}`")));
        }
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::invalid(format!(
                "parameter `{name}`: lower {lower} must be below upper {upper}"
            )));
        }
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::invalid(format!("parameter `{name}`: q must be positive")));
        }
        if q > upper - lower {
            return Err(Error::invalid(format!(
                "parameter `{name}`: q {q} exceeds range width {}",
                upper - lower
            )));
        }
        if scale == Scale::Log && lower <= 0.0 {
            return Err(Error::invalid(format!(
                "parameter `{name}`: log scale needs lower > 0"
            )));
        }
        Ok(ParameterDef {
            name: name.to_string(),
            lower,
            upper,
            q,
            scale,
        })
    }

    /// Index of the last grid point, i.e. the grid has `max_step() + 1` points.
    pub(crate) fn max_step(&self) -> u64 {
        let steps = (self.upper - self.lower) / self.q;
        let rounded = steps.round();
        if (steps - rounded).abs() <= GRID_EPS * rounded.max(1.0) {
            rounded as u64
        } else {
            steps.floor() as u64
        }
    }

    /// Number of grid points.
    pub fn grid_size(&self) -> u64 {
        self.max_step() + 1
    }

    /// Clamp to the range and snap to the nearest grid point; ties round
    /// toward the upper end. Total: never fails.
    pub fn quantize(&self, value: f64) -> f64 {
        let v = value.clamp(self.lower, self.upper);
        let step = ((v - self.lower) / self.q + 0.5).floor();
        let step = (step.max(0.0) as u64).min(self.max_step());
        (self.lower + step as f64 * self.q).min(self.upper)
    }

    /// Whether `value` is inside the range and on the grid (within float slack).
    pub fn contains(&self, value: f64) -> bool {
        if !value.is_finite() || value < self.lower - GRID_EPS * self.q || value > self.upper + GRID_EPS * self.q {
            return false;
        }
        let steps = (value - self.lower) / self.q;
        let dist = (steps - steps.round()).abs();
        // Values exactly at `upper` are on the grid by clamping even if the
        // width is not a whole number of steps.
        dist <= GRID_EPS * steps.round().abs().max(1.0) || (value - self.upper).abs() <= GRID_EPS * self.q
    }

    /// Value of grid point `k`, clamped to the range.
    pub(crate) fn grid_value(&self, k: u64) -> f64 {
        (self.lower + k as f64 * self.q).min(self.upper)
    }

    fn sample_raw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.scale {
            Scale::Linear => rng.random_range(self.lower..=self.upper),
            Scale::Log => {
                let (lo, hi) = (self.lower.ln(), self.upper.ln());
                rng.random_range(lo..=hi).exp()
            }
        }
    }

    /// Position of `value` in `[0, 1]` on this parameter's scale.
    pub fn encode_value(&self, value: f64) -> f64 {
        match self.scale {
            Scale::Linear => (value - self.lower) / (self.upper - self.lower),
            Scale::Log => (value.ln() - self.lower.ln()) / (self.upper.ln() - self.lower.ln()),
        }
    }

    /// Inverse of [`encode_value`](Self::encode_value), followed by quantization.
    pub fn decode_value(&self, t: f64) -> f64 {
        let raw = match self.scale {
            Scale::Linear => self.lower + t * (self.upper - self.lower),
            Scale::Log => (self.lower.ln() + t * (self.upper.ln() - self.lower.ln())).exp(),
        };
        self.quantize(raw)
    }
}

/// An ordered list of parameter definitions; the order fixes the encoding.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterSpace {
    params: Vec<ParameterDef>,
}

impl ParameterSpace {
    pub fn new(params: Vec<ParameterDef>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::invalid("parameter space needs at least one parameter"));
        }
        for (i, p) in params.iter().enumerate() {
            if params[..i].iter().any(|other| other.name == p.name) {
                return Err(Error::invalid(format!("duplicate parameter name `{}`", p.name)));
            }
        }
        Ok(ParameterSpace { params })
    }

    pub fn params(&self) -> &[ParameterDef] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ParameterDef> {
        self.params.iter().find(|p| p.name == name)
    }

    /// Replace the definition of an existing parameter, keeping the order.
    pub fn replace(&self, def: ParameterDef) -> Result<ParameterSpace> {
        let mut params = self.params.clone();
        let slot = params
            .iter_mut()
            .find(|p| p.name == def.name)
            .ok_or_else(|| Error::invalid(format!("unknown parameter `{}`", def.name)))?;
        *slot = def;
        Ok(ParameterSpace { params })
    }

    /// Validity of a configuration: same parameters, every value in range and
    /// on the grid.
    pub fn validate(&self, cfg: &Configuration) -> Result<()> {
        if cfg.len() != self.params.len() {
            return Err(Error::invalid(format!(
                "configuration has {} values, space has {} parameters",
                cfg.len(),
                self.params.len()
            )));
        }
        for def in &self.params {
            let value = cfg
                .get(&def.name)
                .ok_or_else(|| Error::invalid(format!("configuration misses `{}`", def.name)))?;
            if !def.contains(value) {
                return Err(Error::invalid(format!(
                    "value {value} of `{}` is outside [{}, {}] or off the q={} grid",
                    def.name, def.lower, def.upper, def.q
                )));
            }
        }
        Ok(())
    }

    /// Draw one configuration uniformly per parameter scale, then quantize.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Configuration {
        let values = self
            .params
            .iter()
            .map(|def| (def.name.clone(), def.quantize(def.sample_raw(rng))))
            .collect();
        Configuration { values }
    }

    /// Map a configuration to `[0, 1]^d` in space order.
    pub fn encode(&self, cfg: &Configuration) -> Result<Vec<f64>> {
        self.validate(cfg)?;
        Ok(self
            .params
            .iter()
            .map(|def| def.encode_value(cfg.get(&def.name).expect("validated")))
            .collect())
    }

    /// Inverse of [`encode`](Self::encode), with quantization. Components are
    /// clamped into `[0, 1]`.
    pub fn decode(&self, v: &[f64]) -> Result<Configuration> {
        if v.len() != self.params.len() {
            return Err(Error::invalid(format!(
                "encoded vector has {} components, space has {} parameters",
                v.len(),
                self.params.len()
            )));
        }
        let values = self
            .params
            .iter()
            .zip(v.iter())
            .map(|(def, &t)| (def.name.clone(), def.decode_value(t)))
            .collect();
        Ok(Configuration { values })
    }

    /// Total number of grid points across all parameters.
    pub fn grid_size(&self) -> u128 {
        self.params
            .iter()
            .map(|p| p.grid_size() as u128)
            .product()
    }

    /// The full Cartesian product of the per-parameter grids in lexicographic
    /// order (last parameter varies fastest). Refuses when the grid exceeds
    /// `cap`.
    pub fn grid_enumerate(&self, cap: u128) -> Result<Vec<Configuration>> {
        let size = self.grid_size();
        if size > cap {
            return Err(Error::GridTooLarge { size, cap });
        }
        let sizes: Vec<u64> = self.params.iter().map(|p| p.grid_size()).collect();
        let mut out = Vec::with_capacity(size as usize);
        let mut counter = vec![0u64; self.params.len()];
        loop {
            let values = self
                .params
                .iter()
                .zip(counter.iter())
                .map(|(def, &k)| (def.name.clone(), def.grid_value(k)))
                .collect();
            out.push(Configuration { values });
            // odometer increment, last digit fastest
            let mut pos = self.params.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                counter[pos] += 1;
                if counter[pos] < sizes[pos] {
                    break;
                }
                counter[pos] = 0;
            }
        }
    }
}

/// The paper-shaped default space over the five mixed-kernel tunables.
///
/// C and coef0 carry the wide initial ranges the refinement loop prunes;
/// the two gamma ratios are log-scaled because useful values span several
/// orders of magnitude.
pub fn default_space() -> ParameterSpace {
    ParameterSpace::new(vec![
        ParameterDef::new(names::MIXED_RATIO, 0.0, 1.0, 1e-5, Scale::Linear).unwrap(),
        ParameterDef::new(names::SIGMOID_RATIO, 1e-5, 10.0, 1e-5, Scale::Log).unwrap(),
        ParameterDef::new(names::GAUSSIAN_RATIO, 1e-5, 10.0, 1e-5, Scale::Log).unwrap(),
        ParameterDef::new(names::C, 0.1, 100.0, 0.01, Scale::Linear).unwrap(),
        ParameterDef::new(names::COEF0, -15.0, 15.0, 0.01, Scale::Linear).unwrap(),
    ])
    .expect("default space is well-formed")
}

/// A point in a parameter space: named values, kept in space order.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    values: Vec<(String, f64)>,
}

impl Configuration {
    pub fn from_pairs(pairs: Vec<(String, f64)>) -> Self {
        Configuration { values: pairs }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn pairs(&self) -> &[(String, f64)] {
        &self.values
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (name, value)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}: {value}")?;
        }
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Text format: `[param]` sections with `key = value` lines.
// ---------------------------------------------------------------------------

/// Serialize a space to the flat text format used by the CLI and the
/// per-round space files.
pub fn space_to_text(space: &ParameterSpace) -> String {
    let mut out = String::new();
    for def in space.params() {
        out.push_str("[param]\n");
        out.push_str(&format!("name = {}\n", def.name));
        out.push_str(&format!("lower = {}\n", def.lower));
        out.push_str(&format!("upper = {}\n", def.upper));
        out.push_str(&format!("q = {}\n", def.q));
        out.push_str(&format!("scale = {}\n", def.scale));
        out.push('\n');
    }
    out
}

/// Parse the flat text format produced by [`space_to_text`].
pub fn space_from_text(text: &str) -> Result<ParameterSpace> {
    struct Partial {
        line: usize,
        name: Option<String>,
        lower: Option<f64>,
        upper: Option<f64>,
        q: Option<f64>,
        scale: Option<Scale>,
    }

    fn finish(p: Partial) -> Result<ParameterDef> {
        let line = p.line;
        let missing = |what: &str| Error::Parse {
            line,
            message: format!("[param] section is missing `{what}`"),
        };
        ParameterDef::new(
            &p.name.ok_or_else(|| missing("name"))?,
            p.lower.ok_or_else(|| missing("lower"))?,
            p.upper.ok_or_else(|| missing("upper"))?,
            p.q.ok_or_else(|| missing("q"))?,
            p.scale.ok_or_else(|| missing("scale"))?,
        )
    }

    let mut defs = Vec::new();
    let mut current: Option<Partial> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "[param]" {
            if let Some(p) = current.take() {
                defs.push(finish(p)?);
            }
            current = Some(Partial {
                line: lineno,
                name: None,
                lower: None,
                upper: None,
                q: None,
                scale: None,
            });
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let p = current.as_mut().ok_or_else(|| Error::Parse {
            line: lineno,
            message: "entry outside a [param] section".into(),
        })?;
        let parse_f64 = |v: &str| -> Result<f64> {
            v.parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("`{v}` is not a number"),
            })
        };
        match key {
            "name" => p.name = Some(value.to_string()),
            "lower" => p.lower = Some(parse_f64(value)?),
            "upper" => p.upper = Some(parse_f64(value)?),
            "q" => p.q = Some(parse_f64(value)?),
            "scale" => p.scale = Some(value.parse()?),
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    if let Some(p) = current.take() {
        defs.push(finish(p)?);
    }
    ParameterSpace::new(defs)
}
