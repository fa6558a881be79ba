//! Classification of the non-Gorenstein locus of a stable set ring.
//!
//! The fast path reads everything off the connected components: the ring is
//! Gorenstein on the punctured spectrum exactly when every component is
//! pure, and then `tr(ω) = m^(d_1 - d_s)`. The oracle path recomputes the
//! same facts from lattice points and faces.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::toric::{FacetSystem, Monomial, TraceHeight, TraceIdeal};
use crate::SizeLimits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Gorenstein,
    /// `tr(ω) = m`.
    NearlyGorensteinOnly,
    /// `tr(ω) = m^N` with `N >= 2`.
    Gps(usize),
    NotGps,
}

impl Classification {
    pub fn exponent(self) -> Option<usize> {
        match self {
            Classification::Gorenstein => Some(0),
            Classification::NearlyGorensteinOnly => Some(1),
            Classification::Gps(n) => Some(n),
            Classification::NotGps => None,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Gorenstein => write!(f, "Gorenstein"),
            Classification::NearlyGorensteinOnly => write!(f, "NearlyGorensteinOnly"),
            Classification::Gps(n) => write!(f, "GPS({n})"),
            Classification::NotGps => write!(f, "NotGPS"),
        }
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    /// 1-based labels of the component's vertices in the input graph.
    pub vertices: Vec<usize>,
    pub dim: i64,
    pub pure: bool,
}

/// Results of the lattice-point oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub canonical_generators: usize,
    pub anticanonical_generators: usize,
    pub trace_generators: usize,
    pub min_trace_degree: i64,
    /// `1 ∈ tr(ω)`, by decomposition search.
    pub gorenstein: bool,
    /// `tr(ω) ⊇ m`: every degree-1 ring monomial lies in the trace.
    pub nearly_gorenstein: bool,
    /// Exponent tested against the power test, `d_1 - d_s`.
    pub power_exponent: usize,
    pub trace_equals_power: bool,
    pub m_primary: bool,
    pub height: TraceHeight,
    pub faces: usize,
    /// Every oracle fact matches the criterion.
    pub agreement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub components: Vec<ComponentSummary>,
    pub classification: Classification,
    #[serde(rename = "N")]
    pub exponent: Option<usize>,
    pub gorenstein: bool,
    pub nearly_gorenstein: bool,
    pub all_components_pure: bool,
    pub height: Option<TraceHeight>,
    pub dim: usize,
    pub a_invariant: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ClassifyOptions {
    pub oracle: bool,
    /// Degrees scanned by generator searches; `None` uses the default.
    pub degree_layers: Option<usize>,
}

/// The combinatorial criterion only, without any lattice-point work beyond
/// the perfection check.
fn criterion(g: &Graph) -> (Vec<ComponentSummary>, Classification, bool, bool) {
    let comps = g.connected_components();
    let summaries: Vec<ComponentSummary> = comps
        .iter()
        .map(|c| ComponentSummary {
            vertices: c.vertices.iter().map(|v| v + 1).collect(),
            dim: c.dim,
            pure: c.graph.is_pure(),
        })
        .collect();
    let all_pure = summaries.iter().all(|c| c.pure);
    let d1 = summaries.first().map_or(0, |c| c.dim);
    let ds = summaries.last().map_or(0, |c| c.dim);
    let spread = (d1 - ds) as usize;
    let class = if !all_pure {
        Classification::NotGps
    } else {
        match spread {
            0 if g.is_pure() => Classification::Gorenstein,
            1 => Classification::NearlyGorensteinOnly,
            n => Classification::Gps(n),
        }
    };
    let nearly = all_pure && spread <= 1;
    (summaries, class, all_pure, nearly)
}

/// `d_1 - d_s` over the connected components.
pub fn dimension_spread(g: &Graph) -> usize {
    let comps = g.connected_components();
    let d1 = comps.first().map_or(0, |c| c.dim);
    let ds = comps.last().map_or(0, |c| c.dim);
    (d1 - ds) as usize
}

/// `a(R) = -dim Δ(G) - 2`, checked against the lowest degree of the
/// canonical module.
pub fn a_invariant(g: &Graph, limits: &SizeLimits) -> Result<i64> {
    let fs = FacetSystem::new(g, limits)?;
    a_invariant_of(&fs)
}

fn a_invariant_of(fs: &FacetSystem) -> Result<i64> {
    let formula = -fs.clique_complex_dim() - 2;
    let scanned = -fs.min_canonical_degree_by_scan();
    if formula != scanned {
        return Err(Error::CrossCheck(format!(
            "a-invariant formula gives {formula}, canonical module starts in degree {}",
            -scanned
        )));
    }
    Ok(formula)
}

/// `tr(ω) = m^N`: nothing of degree below `N` lies in the trace and all of
/// `R_N` does. Since `R` is standard graded and the trace is an ideal, these
/// two checks settle every degree.
pub fn trace_equals_power_of(fs: &FacetSystem, power: usize) -> Result<bool> {
    for q in 0..power as u32 {
        for m in fs.degree_monomials(q) {
            if fs.in_trace(&m)? {
                return Ok(false);
            }
        }
    }
    for m in fs.degree_monomials(power as u32) {
        if !fs.in_trace(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn trace_equals_power(g: &Graph, power: usize, limits: &SizeLimits) -> Result<bool> {
    trace_equals_power_of(&FacetSystem::new(g, limits)?, power)
}

/// `tr(ω) ⊇ m`, by decomposition search on `R_1`.
pub fn contains_maximal_ideal(fs: &FacetSystem) -> Result<bool> {
    for m in fs.degree_monomials(1) {
        if !fs.in_trace(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn trace_of(fs: &FacetSystem, layers: Option<usize>) -> Result<TraceIdeal> {
    fs.trace_ideal(layers.unwrap_or_else(|| fs.default_layers()))
}

pub fn is_m_primary(g: &Graph, limits: &SizeLimits, layers: Option<usize>) -> Result<bool> {
    let fs = FacetSystem::new(g, limits)?;
    let faces = fs.cone_faces(limits)?;
    Ok(trace_of(&fs, layers)?.is_m_primary(&fs, &faces))
}

pub fn trace_height(g: &Graph, limits: &SizeLimits, layers: Option<usize>) -> Result<TraceHeight> {
    let fs = FacetSystem::new(g, limits)?;
    let faces = fs.cone_faces(limits)?;
    Ok(trace_of(&fs, layers)?.height(&fs, &faces))
}

pub fn classify(g: &Graph, limits: &SizeLimits, opts: ClassifyOptions) -> Result<TraceReport> {
    let fs = FacetSystem::new(g, limits)?;
    let (components, classification, all_pure, nearly) = criterion(g);
    let dim = fs.ring_dim();
    let a_invariant = a_invariant_of(&fs)?;
    let gorenstein = classification == Classification::Gorenstein;

    let oracle = if opts.oracle {
        Some(run_oracle(
            &fs,
            limits,
            opts.degree_layers,
            g,
            classification,
            all_pure,
            nearly,
        )?)
    } else {
        None
    };
    Ok(TraceReport {
        components,
        classification,
        exponent: classification.exponent(),
        gorenstein,
        nearly_gorenstein: nearly,
        all_components_pure: all_pure,
        height: oracle.as_ref().map(|o| o.height),
        dim,
        a_invariant,
        oracle,
    })
}

fn run_oracle(
    fs: &FacetSystem,
    limits: &SizeLimits,
    layers: Option<usize>,
    g: &Graph,
    classification: Classification,
    all_pure: bool,
    nearly: bool,
) -> Result<OracleReport> {
    let faces = fs.cone_faces(limits)?;
    let trace = trace_of(fs, layers)?;
    let power_exponent = dimension_spread(g);
    let gorenstein = fs.in_trace(&Monomial::one(fs.n()))?;
    let nearly_oracle = contains_maximal_ideal(fs)?;
    let trace_equals_power = trace_equals_power_of(fs, power_exponent)?;
    let m_primary = trace.is_m_primary(fs, &faces);
    let height = trace.height(fs, &faces);

    let dim = fs.ring_dim();
    let height_consistent = match height {
        TraceHeight::Unit => gorenstein,
        TraceHeight::Height(h) => !gorenstein && (if all_pure { h == dim } else { h < dim }),
    };
    let agreement = all_pure == trace_equals_power
        && all_pure == m_primary
        && (classification == Classification::Gorenstein) == gorenstein
        && gorenstein == trace.is_unit()
        && nearly == nearly_oracle
        && height_consistent;

    Ok(OracleReport {
        canonical_generators: trace.canonical_generators,
        anticanonical_generators: trace.anticanonical_generators,
        trace_generators: trace.generators.len(),
        min_trace_degree: trace.generators.iter().map(|m| m.degree).min().unwrap_or(0),
        gorenstein,
        nearly_gorenstein: nearly_oracle,
        power_exponent,
        trace_equals_power,
        m_primary,
        height,
        faces: faces.len(),
        agreement,
    })
}
