//! Subgroups of a given order and Gassmann/Sunada pairs among them.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteGroup;
use crate::covering::{smoothness, CoveringError, PolygonSpec};
use crate::gassmann::{
    are_conjugate_subgroups, class_intersection_profile, is_sunada_triple, GassmannError, Subgroup,
    SunadaReport,
};

pub const DEFAULT_MAX_SUBGROUPS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("subgroup enumeration exceeded the cap of {cap} subgroups")]
    SubgroupCap { cap: usize },
    #[error(transparent)]
    Gassmann(#[from] GassmannError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub order: usize,
    /// When set, both quotients must be smooth over every cycle.
    pub avoid: Option<PolygonSpec>,
    pub max_subgroups: usize,
    /// Report pairs up to simultaneous conjugation only.
    pub dedupe: bool,
}

impl SearchConfig {
    pub fn new(order: usize) -> SearchConfig {
        SearchConfig {
            order,
            avoid: None,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            dedupe: true,
        }
    }
}

/// Every subgroup of order `k`, sorted by member list.
///
/// Starts from the cyclic subgroups whose order divides `k` and repeatedly
/// adjoins one more element, keeping only closures whose order still
/// divides `k`.
pub fn enumerate_subgroups(
    group: &FiniteGroup,
    k: usize,
    max_subgroups: usize,
) -> Result<Vec<Subgroup>, SearchError> {
    if k == 0 || !group.order().is_multiple_of(k) {
        return Ok(Vec::new());
    }
    let candidates: Vec<usize> = (0..group.order())
        .filter(|&x| (k as u64).is_multiple_of(group.element_order(x)))
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut work: Vec<Subgroup> = Vec::new();
    let mut record = |s: Subgroup, work: &mut Vec<Subgroup>| -> Result<(), SearchError> {
        if k.is_multiple_of(s.order()) && seen.insert(s.members().to_vec()) {
            if seen.len() > max_subgroups {
                return Err(SearchError::SubgroupCap { cap: max_subgroups });
            }
            work.push(s);
        }
        Ok(())
    };

    for &x in &candidates {
        record(Subgroup::generate(group, &[x]), &mut work)?;
    }
    let mut found = BTreeSet::new();
    while let Some(s) = work.pop() {
        if s.order() == k {
            found.insert(s);
            continue;
        }
        for &x in &candidates {
            if !s.contains(x) {
                record(Subgroup::extend(group, s.members(), &[x]), &mut work)?;
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Keeps the first subgroup of each conjugacy class.
pub fn up_to_conjugacy(
    group: &FiniteGroup,
    subgroups: &[Subgroup],
) -> Result<Vec<Subgroup>, SearchError> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for s in subgroups {
        let mut fresh = true;
        for r in &reps {
            if are_conjugate_subgroups(group, r, s)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(s.clone());
        }
    }
    Ok(reps)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SunadaPair {
    pub u: Subgroup,
    pub v: Subgroup,
    pub report: SunadaReport,
}

#[derive(Serialize)]
struct PairLine<'a> {
    u: Vec<String>,
    v: Vec<String>,
    report: &'a SunadaReport,
}

impl SunadaPair {
    /// One JSON-lines record: element listings of both subgroups and the report.
    pub fn to_json_line(&self, group: &FiniteGroup) -> String {
        let list = |s: &Subgroup| {
            s.members()
                .iter()
                .map(|&x| group.element(x).to_string())
                .collect()
        };
        serde_json::to_string(&PairLine {
            u: list(&self.u),
            v: list(&self.v),
            report: &self.report,
        })
        .expect("pair serializes")
    }
}

// Conjugacy class id of every subgroup in `subs` (which is closed under
// conjugation), numbered in order of first appearance.
fn subgroup_classes(group: &FiniteGroup, subs: &[Subgroup]) -> Vec<usize> {
    let mut class = vec![usize::MAX; subs.len()];
    let mut next = 0;
    for i in 0..subs.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let conjugates: HashSet<Subgroup> = (0..group.order())
            .map(|g| subs[i].conjugate_by(group, g))
            .collect();
        for j in i..subs.len() {
            if class[j] == usize::MAX && conjugates.contains(&subs[j]) {
                class[j] = next;
            }
        }
        next += 1;
    }
    class
}

/// Gassmann-equivalent, non-conjugate pairs of subgroups of the configured
/// order.
pub fn find_sunada_pairs(
    group: &FiniteGroup,
    cfg: &SearchConfig,
) -> Result<Vec<SunadaPair>, SearchError> {
    let mut subs = enumerate_subgroups(group, cfg.order, cfg.max_subgroups)?;
    if let Some(poly) = &cfg.avoid {
        let mut kept = Vec::with_capacity(subs.len());
        for s in subs {
            if smoothness(group, &s, poly)?.iter().all(|&f| f) {
                kept.push(s);
            }
        }
        subs = kept;
    }
    let profiles: Vec<Vec<usize>> = subs
        .iter()
        .map(|s| class_intersection_profile(group, s))
        .collect();
    let class = subgroup_classes(group, &subs);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if cfg.dedupe {
        let class_count = class.iter().max().map_or(0, |&c| c + 1);
        let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); class_count];
        for (i, &c) in class.iter().enumerate() {
            by_class[c].push(i);
        }
        for a in 0..class_count {
            let u = by_class[a][0];
            let normalizer: Vec<usize> = (0..group.order())
                .filter(|&g| subs[u].conjugate_by(group, g) == subs[u])
                .collect();
            for members in &by_class[a + 1..] {
                if profiles[u] != profiles[members[0]] {
                    continue;
                }
                // one V per orbit of the normalizer of U on the class of V
                let mut covered: HashSet<Subgroup> = HashSet::new();
                for &v in members {
                    if covered.contains(&subs[v]) {
                        continue;
                    }
                    for &n in &normalizer {
                        covered.insert(subs[v].conjugate_by(group, n));
                    }
                    pairs.push((u, v));
                }
            }
        }
    } else {
        for i in 0..subs.len() {
            for j in i + 1..subs.len() {
                if class[i] != class[j] && profiles[i] == profiles[j] {
                    pairs.push((i, j));
                }
            }
        }
    }

    let mut out = Vec::with_capacity(pairs.len());
    for (i, j) in pairs {
        let report = is_sunada_triple(group, &subs[i], &subs[j])?;
        debug_assert!(report.is_sunada_triple);
        out.push(SunadaPair {
            u: subs[i].clone(),
            v: subs[j].clone(),
            report,
        });
    }
    out.sort_by(|x, y| (x.u.members(), x.v.members()).cmp(&(y.u.members(), y.v.members())));
    Ok(out)
}
