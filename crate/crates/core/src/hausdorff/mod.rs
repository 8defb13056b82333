//! Logarithmic densities of subgroups along filtration series, liminf
//! estimates and spectrum sets.

mod closed;
mod engine;
mod slice;
mod spectrum;

pub use closed::{closed_form_sequence, layer_data, registered_limit, LayerData, Target};
pub use engine::{density_terms, section_density, section_k_density, wreath_k_density, x_exponent, SectionKResult};
pub use slice::{check_slice, elem_ab_slice};
pub use spectrum::{
    fg_spectrum_w, l_spectrum_g, l_spectrum_w, normal_spectrum, product_spectrum, product_spectrum_closed_form, Interval, SpectrumSet,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::SeriesKind;

/// Default number of trailing terms used for liminf estimates.
pub const DEFAULT_TAIL_WINDOW: usize = 8;

/// Default bound on the tail oscillation of a strong dimension.
pub fn default_tolerance() -> BigRational {
    BigRational::new(1.into(), 100.into())
}

pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `num/den` form of an exact rational.
pub fn fmt_ratio(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a/b` or an integer.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| Error::Invalid(format!("not a rational: '{s}'")))?;
    let d: BigInt = d.parse().map_err(|_| Error::Invalid(format!("not a rational: '{s}'")))?;
    if d.is_zero() {
        return Err(Error::Invalid(format!("zero denominator in '{s}'")));
    }
    Ok(BigRational::new(n, d))
}

pub(crate) fn ser_ratio<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_ratio(q))
}

fn ser_opt_ratio<S: Serializer>(q: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&fmt_ratio(q)),
        None => s.serialize_none(),
    }
}

fn ser_bigint<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// `log_p |K S_i : S_i| / log_p |G : S_i|` at one level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityTerm {
    pub level: usize,
    #[serde(serialize_with = "ser_bigint")]
    pub numerator: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub denominator: BigInt,
    #[serde(serialize_with = "ser_ratio")]
    pub value: BigRational,
    pub stable: bool,
}

impl DensityTerm {
    pub fn new(level: usize, numerator: impl Into<BigInt>, denominator: impl Into<BigInt>, stable: bool) -> Self {
        let (numerator, denominator) = (numerator.into(), denominator.into());
        let value = BigRational::new(numerator.clone(), denominator.clone());
        DensityTerm { level, numerator, denominator, value, stable }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DensitySequence {
    pub subgroup: String,
    pub kind: SeriesKind,
    pub terms: Vec<DensityTerm>,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub registered_limit: Option<BigRational>,
    /// Why the sequence stops early, if it does.
    pub cutoff: Option<String>,
}

impl DensitySequence {
    pub fn term(&self, level: usize) -> Option<&DensityTerm> {
        self.terms.iter().find(|t| t.level == level)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["level", "numerator", "denominator", "value", "stable"]).map_err(csv_err)?;
        for t in &self.terms {
            w.write_record([
                t.level.to_string(),
                t.numerator.to_string(),
                t.denominator.to_string(),
                fmt_ratio(&t.value),
                t.stable.to_string(),
            ])
            .map_err(csv_err)?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?).map_err(|e| Error::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Invalid(e.to_string()))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Invalid(e.to_string())
}

/// Liminf surrogate of a density sequence.
#[derive(Clone, Debug, Serialize)]
pub struct HdimEstimate {
    /// Minimum over the tail window.
    #[serde(serialize_with = "ser_ratio")]
    pub estimate: BigRational,
    #[serde(serialize_with = "ser_opt_ratio")]
    pub limit: Option<BigRational>,
    /// Whether the tail oscillation is within the tolerance.
    pub strong: bool,
    #[serde(serialize_with = "ser_ratio")]
    pub oscillation: BigRational,
    pub window: usize,
    /// `max_i i |d_i - limit|` over the stable terms, when a limit is registered.
    pub observed_c: Option<f64>,
}

/// Estimates the Hausdorff dimension from the last `tail_window` stable terms.
pub fn hdim_estimate(seq: &DensitySequence, tail_window: usize, tolerance: &BigRational) -> Result<HdimEstimate> {
    let stable: Vec<&DensityTerm> = seq.terms.iter().filter(|t| t.stable).collect();
    if tail_window == 0 || stable.len() < tail_window {
        return Err(Error::Invalid(format!(
            "{} stable terms available, tail window needs {tail_window}",
            stable.len()
        )));
    }
    let tail = &stable[stable.len() - tail_window..];
    let min = tail.iter().map(|t| &t.value).min().unwrap().clone();
    let max = tail.iter().map(|t| &t.value).max().unwrap().clone();
    let oscillation = &max - &min;
    let observed_c = seq.registered_limit.as_ref().map(|l| {
        stable
            .iter()
            .map(|t| t.level as f64 * (&t.value - l).abs().to_f64().unwrap_or(f64::NAN))
            .fold(0.0, f64::max)
    });
    Ok(HdimEstimate {
        strong: &oscillation <= tolerance,
        estimate: min,
        limit: seq.registered_limit.clone(),
        oscillation,
        window: tail_window,
        observed_c,
    })
}
