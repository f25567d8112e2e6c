//! Vertex-cycle data of a glued polygon and the quotient geometry it
//! induces: smoothness, cone points, orbifold Euler characteristic, genus.
//!
//! All arithmetic on Euler characteristics is exact.

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::FiniteGroup;
use crate::gassmann::{class_intersection_profile, Subgroup};
use crate::schreier::CosetTable;

pub type Rational = Ratio<i64>;

// Sign assignments are enumerated exhaustively up to this many cycles.
const MAX_RELATOR_CYCLES: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("cycle {label:?} refers to element {index}, but the group has order {order}")]
    UnknownElement {
        label: String,
        index: usize,
        order: usize,
    },
    #[error("a polygon needs at least one edge pair")]
    NoEdgePairs,
    #[error("a polygon needs at least one vertex cycle")]
    NoCycles,
}

/// Serializes an exact rational as `{"num": n, "den": d}`.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Frac {
        num: i64,
        den: i64,
    }
    Frac {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexCycle {
    pub label: String,
    pub element: usize,
}

/// A polygon with `edge_pairs` identified edge pairs and the group element
/// attached to each vertex cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonSpec {
    pub edge_pairs: usize,
    pub cycles: Vec<VertexCycle>,
}

impl PolygonSpec {
    pub fn new(edge_pairs: usize, cycles: Vec<VertexCycle>) -> Result<PolygonSpec, CoveringError> {
        if edge_pairs == 0 {
            return Err(CoveringError::NoEdgePairs);
        }
        if cycles.is_empty() {
            return Err(CoveringError::NoCycles);
        }
        Ok(PolygonSpec { edge_pairs, cycles })
    }

    fn check(&self, group: &FiniteGroup) -> Result<(), CoveringError> {
        if self.edge_pairs == 0 {
            return Err(CoveringError::NoEdgePairs);
        }
        if self.cycles.is_empty() {
            return Err(CoveringError::NoCycles);
        }
        for c in &self.cycles {
            if c.element >= group.order() {
                return Err(CoveringError::UnknownElement {
                    label: c.label.clone(),
                    index: c.element,
                    order: group.order(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorCheck {
    pub passed: bool,
    /// `+1`/`-1` per cycle, in listed order, for the first passing assignment.
    pub exponents: Option<Vec<i8>>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonValidation {
    pub trivial_cycles: Vec<String>,
    pub relator: RelatorCheck,
}

/// Flags identity cycle elements and looks for signs `e_i ∈ {±1}` with
/// `g_1^e_1 ⋯ g_k^e_k = id`. Assignments with fewer negative signs are
/// tried first. A missing relator is a warning, not an error.
pub fn validate_polygon(
    group: &FiniteGroup,
    spec: &PolygonSpec,
) -> Result<PolygonValidation, CoveringError> {
    spec.check(group)?;
    let trivial_cycles = spec
        .cycles
        .iter()
        .filter(|c| c.element == group.identity())
        .map(|c| c.label.clone())
        .collect();

    let k = spec.cycles.len();
    let relator = if k > MAX_RELATOR_CYCLES {
        RelatorCheck {
            passed: false,
            exponents: None,
            warning: Some(format!(
                "relator not checked: {k} cycles exceeds the limit of {MAX_RELATOR_CYCLES}"
            )),
        }
    } else {
        let mut masks: Vec<u32> = (0..1u32 << k).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let found = masks.into_iter().find(|&mask| {
            let product = spec
                .cycles
                .iter()
                .enumerate()
                .fold(group.identity(), |acc, (i, c)| {
                    let factor = if mask >> i & 1 == 1 {
                        group.inv(c.element)
                    } else {
                        c.element
                    };
                    group.mul(acc, factor)
                });
            product == group.identity()
        });
        match found {
            Some(mask) => RelatorCheck {
                passed: true,
                exponents: Some(
                    (0..k)
                        .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                        .collect(),
                ),
                warning: None,
            },
            None => RelatorCheck {
                passed: false,
                exponents: None,
                warning: Some(
                    "no choice of signs multiplies the cycle elements to the identity".into(),
                ),
            },
        }
    };
    Ok(PolygonValidation {
        trivial_cycles,
        relator,
    })
}

/// Per cycle: `g = id`, or no power `g^r` (`0 < r < ord g`) has a conjugate in `U`.
pub fn smoothness(
    group: &FiniteGroup,
    sub: &Subgroup,
    spec: &PolygonSpec,
) -> Result<Vec<bool>, CoveringError> {
    spec.check(group)?;
    let profile = class_intersection_profile(group, sub);
    Ok(spec
        .cycles
        .iter()
        .map(|c| {
            let g = c.element;
            let mut power = g;
            for _ in 1..group.element_order(g) {
                if profile[group.class_of(power)] > 0 {
                    return false;
                }
                power = group.mul(power, g);
            }
            true
        })
        .collect())
}

/// `[G:U] (1 - N + Σ 1/ord g_p)`.
pub fn orbifold_euler(
    group: &FiniteGroup,
    sub: &Subgroup,
    spec: &PolygonSpec,
) -> Result<Rational, CoveringError> {
    spec.check(group)?;
    let mut chi = Rational::from_integer(1 - spec.edge_pairs as i64);
    for c in &spec.cycles {
        chi += Rational::new(1, group.element_order(c.element) as i64);
    }
    Ok(chi * sub.index() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConePoint {
    pub label: String,
    pub order: u64,
    pub multiplicity: usize,
}

fn cycle_cone_points(
    group: &FiniteGroup,
    table: &CosetTable,
    label: &str,
    g: usize,
) -> Vec<ConePoint> {
    let m = group.element_order(g);
    let mut out: Vec<ConePoint> = Vec::new();
    for orbit in table.orbits(group, g) {
        let d = orbit.len() as u64;
        if d < m {
            let order = m / d;
            match out.iter_mut().find(|p| p.order == order) {
                Some(p) => p.multiplicity += 1,
                None => out.push(ConePoint {
                    label: label.to_string(),
                    order,
                    multiplicity: 1,
                }),
            }
        }
    }
    out.sort_by_key(|p| p.order);
    out
}

/// Cone points over each cycle: every orbit of `⟨g⟩` on `U\G` of size
/// `d < ord g` is one cone point of order `ord g / d`.
pub fn cone_points(
    group: &FiniteGroup,
    sub: &Subgroup,
    spec: &PolygonSpec,
) -> Result<Vec<ConePoint>, CoveringError> {
    spec.check(group)?;
    let table = CosetTable::new(group, sub);
    Ok(spec
        .cycles
        .iter()
        .flat_map(|c| cycle_cone_points(group, &table, &c.label, c.element))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub label: String,
    pub element: String,
    pub order: u64,
    pub smooth: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub index: usize,
    pub cycles: Vec<CycleReport>,
    pub cone_points: Vec<ConePoint>,
    #[serde(serialize_with = "serialize_rational")]
    pub chi_orb: Rational,
    pub smooth: bool,
    #[serde(serialize_with = "serialize_rational")]
    pub chi_top: Rational,
    pub genus: Option<i64>,
    pub diagnostic: Option<String>,
}

impl CoveringReport {
    pub fn smooth_flags(&self) -> Vec<bool> {
        self.cycles.iter().map(|c| c.smooth).collect()
    }

    pub fn cone_point_count(&self) -> usize {
        self.cone_points.iter().map(|p| p.multiplicity).sum()
    }
}

pub fn covering_report(
    group: &FiniteGroup,
    sub: &Subgroup,
    spec: &PolygonSpec,
) -> Result<CoveringReport, CoveringError> {
    let flags = smoothness(group, sub, spec)?;
    let chi_orb = orbifold_euler(group, sub, spec)?;
    let table = CosetTable::new(group, sub);

    let mut cycles = Vec::with_capacity(spec.cycles.len());
    let mut points = Vec::new();
    for (c, smooth) in spec.cycles.iter().zip(flags) {
        let here = cycle_cone_points(group, &table, &c.label, c.element);
        debug_assert_eq!(smooth, here.is_empty());
        points.extend(here);
        cycles.push(CycleReport {
            label: c.label.clone(),
            element: group.element(c.element).to_string(),
            order: group.element_order(c.element),
            smooth,
        });
    }

    let defect: Rational = points
        .iter()
        .map(|p| {
            (Rational::from_integer(1) - Rational::new(1, p.order as i64)) * p.multiplicity as i64
        })
        .sum();
    let chi_top = chi_orb + defect;
    let (genus, diagnostic) = if !chi_top.is_integer() {
        (
            None,
            Some(format!(
                "underlying Euler characteristic {chi_top} is not an integer"
            )),
        )
    } else if chi_top.to_integer() % 2 != 0 {
        (
            None,
            Some(format!("underlying Euler characteristic {chi_top} is odd")),
        )
    } else if chi_top.to_integer() > 2 {
        (
            None,
            Some(format!(
                "underlying Euler characteristic {chi_top} exceeds 2"
            )),
        )
    } else {
        (Some((2 - chi_top.to_integer()) / 2), None)
    };

    Ok(CoveringReport {
        index: sub.index(),
        smooth: points.is_empty(),
        cycles,
        cone_points: points,
        chi_orb,
        chi_top,
        genus,
        diagnostic,
    })
}
