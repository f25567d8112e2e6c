//! Subgroups, conjugacy-class intersection profiles, Gassmann equivalence
//! and Sunada-triple verdicts.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteGroup;

/// Largest group order for which the exhaustive conjugator scan runs.
pub const DEFAULT_CONJUGACY_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GassmannError {
    #[error("element index {index} is not in a group of order {order}")]
    NotInGroup { index: usize, order: usize },
    #[error("element set does not contain the identity")]
    MissingIdentity,
    #[error("element set is not closed: {left} * {right} is missing")]
    NotClosed { left: usize, right: usize },
    #[error("conjugacy search over a group of order {order} exceeds the cap of {cap}")]
    ConjugacyCap { order: usize, cap: usize },
}

/// A subgroup of an enumerated group, stored as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    /// Closure of `gens` inside `group`. Indices must be valid in `group`.
    pub fn generate(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
        Subgroup::extend(group, &[group.identity()], gens)
    }

    /// Closure of `base ∪ extra`, where `base` is already closed.
    pub fn extend(group: &FiniteGroup, base: &[usize], extra: &[usize]) -> Subgroup {
        let mut mask = vec![false; group.order()];
        let mut queue = VecDeque::new();
        for &x in base {
            mask[x] = true;
            queue.push_back(x);
        }
        let gens: Vec<usize> = base.iter().chain(extra).copied().collect();
        if !mask[group.identity()] {
            mask[group.identity()] = true;
            queue.push_back(group.identity());
        }
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = group.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_mask(mask)
    }

    /// Wraps an explicit element list, verifying that it is a subgroup.
    pub fn from_elements(
        group: &FiniteGroup,
        elements: &[usize],
    ) -> Result<Subgroup, GassmannError> {
        let mut mask = vec![false; group.order()];
        for &x in elements {
            if x >= group.order() {
                return Err(GassmannError::NotInGroup {
                    index: x,
                    order: group.order(),
                });
            }
            mask[x] = true;
        }
        if !mask[group.identity()] {
            return Err(GassmannError::MissingIdentity);
        }
        let sub = Subgroup::from_mask(mask);
        // finite and closed under products implies closed under inverses
        for &a in &sub.members {
            for &b in &sub.members {
                if !sub.mask[group.mul(a, b)] {
                    return Err(GassmannError::NotClosed { left: a, right: b });
                }
            }
        }
        Ok(sub)
    }

    pub fn trivial(group: &FiniteGroup) -> Subgroup {
        Subgroup::generate(group, &[])
    }

    pub fn whole(group: &FiniteGroup) -> Subgroup {
        Subgroup::from_mask(vec![true; group.order()])
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `[G:U]`; exact by Lagrange.
    pub fn index(&self) -> usize {
        self.mask.len() / self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, element: usize) -> bool {
        self.mask.get(element).copied().unwrap_or(false)
    }

    /// `g U g⁻¹`.
    pub fn conjugate_by(&self, group: &FiniteGroup, g: usize) -> Subgroup {
        let mut mask = vec![false; self.mask.len()];
        for &x in &self.members {
            mask[group.conjugate(g, x)] = true;
        }
        Subgroup::from_mask(mask)
    }
}

/// Entry `c` is `|class_c ∩ H|`, classes in the group's canonical order.
pub fn class_intersection_profile(group: &FiniteGroup, sub: &Subgroup) -> Vec<usize> {
    let classes = group.classes();
    let mut profile = vec![0; classes.len()];
    for &x in sub.members() {
        profile[classes.class_of(x)] += 1;
    }
    profile
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GassmannCheck {
    pub profile_u: Vec<usize>,
    pub profile_v: Vec<usize>,
    pub equivalent: bool,
}

pub fn are_gassmann(group: &FiniteGroup, u: &Subgroup, v: &Subgroup) -> GassmannCheck {
    let profile_u = class_intersection_profile(group, u);
    let profile_v = class_intersection_profile(group, v);
    let equivalent = profile_u == profile_v;
    GassmannCheck {
        profile_u,
        profile_v,
        equivalent,
    }
}

/// First `g` (in element order) with `g U g⁻¹ = V`, if any.
pub fn are_conjugate_subgroups(
    group: &FiniteGroup,
    u: &Subgroup,
    v: &Subgroup,
) -> Result<Option<usize>, GassmannError> {
    are_conjugate_subgroups_with_cap(group, u, v, DEFAULT_CONJUGACY_CAP)
}

pub fn are_conjugate_subgroups_with_cap(
    group: &FiniteGroup,
    u: &Subgroup,
    v: &Subgroup,
    cap: usize,
) -> Result<Option<usize>, GassmannError> {
    if group.order() > cap {
        return Err(GassmannError::ConjugacyCap {
            order: group.order(),
            cap,
        });
    }
    if u.order() != v.order() {
        return Ok(None);
    }
    Ok((0..group.order()).find(|&g| {
        u.members()
            .iter()
            .all(|&x| v.contains(group.conjugate(g, x)))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub class: usize,
    pub size: usize,
    pub representative: String,
    pub count_u: usize,
    pub count_v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRef {
    pub index: usize,
    pub element: String,
}

impl ElementRef {
    pub fn new(group: &FiniteGroup, index: usize) -> ElementRef {
        ElementRef {
            index,
            element: group.element(index).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SunadaReport {
    pub group_order: usize,
    pub order_u: usize,
    pub order_v: usize,
    pub index: usize,
    pub classes: Vec<ClassRow>,
    pub gassmann: bool,
    pub conjugator: Option<ElementRef>,
    pub is_sunada_triple: bool,
}

impl SunadaReport {
    pub fn profile_u(&self) -> Vec<usize> {
        self.classes.iter().map(|r| r.count_u).collect()
    }

    pub fn profile_v(&self) -> Vec<usize> {
        self.classes.iter().map(|r| r.count_v).collect()
    }
}

pub fn is_sunada_triple(
    group: &FiniteGroup,
    u: &Subgroup,
    v: &Subgroup,
) -> Result<SunadaReport, GassmannError> {
    let check = are_gassmann(group, u, v);
    let conjugator = are_conjugate_subgroups(group, u, v)?;
    let partition = group.classes();
    let classes = partition
        .classes()
        .iter()
        .enumerate()
        .map(|(c, members)| ClassRow {
            class: c,
            size: members.len(),
            representative: group.element(members[0]).to_string(),
            count_u: check.profile_u[c],
            count_v: check.profile_v[c],
        })
        .collect();
    Ok(SunadaReport {
        group_order: group.order(),
        order_u: u.order(),
        order_v: v.order(),
        index: u.index(),
        classes,
        gassmann: check.equivalent,
        is_sunada_triple: check.equivalent && conjugator.is_none(),
        conjugator: conjugator.map(|g| ElementRef::new(group, g)),
    })
}
