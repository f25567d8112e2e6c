//! Right coset tables, Schreier coset graphs, labelled-digraph isomorphism
//! (direct and arrow-reversing) and DOT/JSON export.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::FiniteGroup;
use crate::gassmann::Subgroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchreierError {
    #[error("label {label} is not a permutation of the vertices")]
    NotFunctional { label: String },
    #[error("arc references vertex {vertex} but the graph has {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("arc references unknown label {0:?}")]
    UnknownLabel(String),
    #[error("malformed graph document: {0}")]
    Malformed(String),
}

/// Right cosets `U\G`, numbered breadth-first from `U` along the group's
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    transversal: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetTable {
    pub fn new(group: &FiniteGroup, sub: &Subgroup) -> CosetTable {
        const UNSEEN: usize = usize::MAX;
        let mut coset_of = vec![UNSEEN; group.order()];
        let mut transversal = Vec::new();
        let mut queue = VecDeque::new();

        let open = |rep: usize, coset_of: &mut Vec<usize>, transversal: &mut Vec<usize>| {
            let id = transversal.len();
            transversal.push(rep);
            for &u in sub.members() {
                coset_of[group.mul(u, rep)] = id;
            }
            id
        };

        open(group.identity(), &mut coset_of, &mut transversal);
        queue.push_back(0);
        while let Some(c) = queue.pop_front() {
            let rep = transversal[c];
            for &s in group.generators() {
                let y = group.mul(rep, s);
                if coset_of[y] == UNSEEN {
                    let id = open(y, &mut coset_of, &mut transversal);
                    queue.push_back(id);
                }
            }
        }
        debug_assert!(coset_of.iter().all(|&c| c != UNSEEN));
        CosetTable {
            transversal,
            coset_of,
        }
    }

    pub fn len(&self) -> usize {
        self.transversal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transversal.is_empty()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.coset_of[element]
    }

    /// Image of coset `c` under right multiplication by `g`.
    pub fn act(&self, group: &FiniteGroup, coset: usize, g: usize) -> usize {
        self.coset_of[group.mul(self.transversal[coset], g)]
    }

    /// The permutation `Ux ↦ Uxg` of the cosets.
    pub fn action(&self, group: &FiniteGroup, g: usize) -> Vec<usize> {
        (0..self.len()).map(|c| self.act(group, c, g)).collect()
    }

    /// Orbits of `⟨g⟩` on the cosets, each listed from its least coset.
    pub fn orbits(&self, group: &FiniteGroup, g: usize) -> Vec<Vec<usize>> {
        cycles_of(&self.action(group, g))
    }
}

/// Cycle decomposition of a permutation given as an image list, fixed points
/// included.
pub fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push(cycle);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

/// A coset graph: one vertex per coset and, for each label, the arc
/// `i → j` whenever coset `i` times the label's element is coset `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierGraph {
    vertex_count: usize,
    labels: Vec<String>,
    arcs: Vec<Arc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoMode {
    Direct,
    Reversed,
}

#[derive(Serialize, Deserialize)]
struct JsonArc {
    src: usize,
    dst: usize,
    label: String,
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    vertices: usize,
    labels: Vec<String>,
    arcs: Vec<JsonArc>,
}

impl SchreierGraph {
    /// Builds a graph from raw arcs, sorted into `(src, label, dst)` order.
    pub fn from_arcs(
        vertex_count: usize,
        labels: Vec<String>,
        mut arcs: Vec<Arc>,
    ) -> Result<SchreierGraph, SchreierError> {
        for a in &arcs {
            for v in [a.src, a.dst] {
                if v >= vertex_count {
                    return Err(SchreierError::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if a.label >= labels.len() {
                return Err(SchreierError::UnknownLabel(a.label.to_string()));
            }
        }
        arcs.sort_by_key(|a| (a.src, a.label, a.dst));
        Ok(SchreierGraph {
            vertex_count,
            labels,
            arcs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Per-label successor permutations; fails unless every label has
    /// in- and out-degree exactly one at every vertex.
    pub fn label_permutations(&self) -> Result<Vec<Vec<usize>>, SchreierError> {
        let n = self.vertex_count;
        let mut perms = vec![vec![usize::MAX; n]; self.labels.len()];
        let mut hit = vec![vec![false; n]; self.labels.len()];
        for a in &self.arcs {
            let not_functional = || SchreierError::NotFunctional {
                label: self.labels[a.label].clone(),
            };
            if perms[a.label][a.src] != usize::MAX || hit[a.label][a.dst] {
                return Err(not_functional());
            }
            perms[a.label][a.src] = a.dst;
            hit[a.label][a.dst] = true;
        }
        for (l, p) in perms.iter().enumerate() {
            if p.contains(&usize::MAX) {
                return Err(SchreierError::NotFunctional {
                    label: self.labels[l].clone(),
                });
            }
        }
        Ok(perms)
    }

    /// The same graph with every arc turned around.
    pub fn reversed(&self) -> SchreierGraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                src: a.dst,
                dst: a.src,
                label: a.label,
            })
            .collect();
        SchreierGraph::from_arcs(self.vertex_count, self.labels.clone(), arcs)
            .expect("reversal keeps arcs in range")
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn relabel_vertices(&self, perm: &[usize]) -> SchreierGraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                src: perm[a.src],
                dst: perm[a.dst],
                label: a.label,
            })
            .collect();
        SchreierGraph::from_arcs(self.vertex_count, self.labels.clone(), arcs)
            .expect("relabelling keeps arcs in range")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph schreier {\n");
        for v in 0..self.vertex_count {
            let _ = writeln!(out, "  v{v};");
        }
        for a in &self.arcs {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                a.src,
                a.dst,
                escape_dot(&self.labels[a.label])
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let graph = JsonGraph {
            vertices: self.vertex_count,
            labels: self.labels.clone(),
            arcs: self
                .arcs
                .iter()
                .map(|a| JsonArc {
                    src: a.src,
                    dst: a.dst,
                    label: self.labels[a.label].clone(),
                })
                .collect(),
        };
        serde_json::to_value(graph).expect("graph serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<SchreierGraph, SchreierError> {
        let graph: JsonGraph = serde_json::from_value(value.clone())
            .map_err(|e| SchreierError::Malformed(e.to_string()))?;
        let arcs = graph
            .arcs
            .iter()
            .map(|a| {
                let label = graph
                    .labels
                    .iter()
                    .position(|l| *l == a.label)
                    .ok_or_else(|| SchreierError::UnknownLabel(a.label.clone()))?;
                Ok(Arc {
                    src: a.src,
                    dst: a.dst,
                    label,
                })
            })
            .collect::<Result<Vec<_>, SchreierError>>()?;
        SchreierGraph::from_arcs(graph.vertices, graph.labels, arcs)
    }
}

fn escape_dot(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Schreier graph of `U\G` for the given `(label, element)` pairs.
pub fn schreier_graph(
    group: &FiniteGroup,
    table: &CosetTable,
    labels: &[(String, usize)],
) -> SchreierGraph {
    let mut arcs = Vec::with_capacity(table.len() * labels.len());
    for c in 0..table.len() {
        for (l, &(_, g)) in labels.iter().enumerate() {
            arcs.push(Arc {
                src: c,
                dst: table.act(group, c, g),
                label: l,
            });
        }
    }
    let names = labels.iter().map(|(name, _)| name.clone()).collect();
    SchreierGraph::from_arcs(table.len(), names, arcs).expect("coset arcs are in range")
}

/// Searches for a vertex bijection `φ` from `g1` to `g2`.
///
/// In [`IsoMode::Direct`] every arc `u → v` of `g1` must map to `φu → φv`
/// with the same label; in [`IsoMode::Reversed`] it must map to `φv → φu`.
/// Returns the first bijection found in a deterministic search order.
pub fn graph_isomorphic(
    g1: &SchreierGraph,
    g2: &SchreierGraph,
    mode: IsoMode,
) -> Option<Vec<usize>> {
    if g1.vertex_count != g2.vertex_count || g1.labels != g2.labels {
        return None;
    }
    let target = match mode {
        IsoMode::Direct => g2.clone(),
        IsoMode::Reversed => g2.reversed(),
    };
    let p1 = g1.label_permutations().ok()?;
    let p2 = target.label_permutations().ok()?;
    let sig1 = signatures(&p1, g1.vertex_count);
    let sig2 = signatures(&p2, g1.vertex_count);
    let mut search = IsoSearch {
        p1: &p1,
        p2: &p2,
        sig1: &sig1,
        sig2: &sig2,
        phi: vec![usize::MAX; g1.vertex_count],
        used: vec![false; g1.vertex_count],
    };
    if search.extend() {
        Some(search.phi)
    } else {
        None
    }
}

// Per vertex, the length of its cycle under each label.
fn signatures(perms: &[Vec<usize>], n: usize) -> Vec<Vec<usize>> {
    let mut sig = vec![Vec::with_capacity(perms.len()); n];
    for p in perms {
        for cycle in cycles_of(p) {
            for &v in &cycle {
                sig[v].push(cycle.len());
            }
        }
    }
    sig
}

struct IsoSearch<'a> {
    p1: &'a [Vec<usize>],
    p2: &'a [Vec<usize>],
    sig1: &'a [Vec<usize>],
    sig2: &'a [Vec<usize>],
    phi: Vec<usize>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn extend(&mut self) -> bool {
        let Some(v) = self.phi.iter().position(|&x| x == usize::MAX) else {
            return true;
        };
        for w in 0..self.phi.len() {
            if self.used[w] || self.sig1[v] != self.sig2[w] {
                continue;
            }
            let mut assigned = Vec::new();
            if self.propagate(v, w, &mut assigned) && self.extend() {
                return true;
            }
            for x in assigned {
                self.used[self.phi[x]] = false;
                self.phi[x] = usize::MAX;
            }
        }
        false
    }

    // Forces φ along every label from (v ↦ w); the component of v is
    // then fully determined because each label acts as a permutation.
    fn propagate(&mut self, v: usize, w: usize, assigned: &mut Vec<usize>) -> bool {
        let mut stack = vec![(v, w)];
        while let Some((x, y)) = stack.pop() {
            match self.phi[x] {
                usize::MAX => {
                    if self.used[y] || self.sig1[x] != self.sig2[y] {
                        return false;
                    }
                    self.phi[x] = y;
                    self.used[y] = true;
                    assigned.push(x);
                }
                image if image == y => continue,
                _ => return false,
            }
            for (a, b) in self.p1.iter().zip(self.p2) {
                stack.push((a[x], b[y]));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Element, Perm};

    fn perm(text: &str, n: usize) -> Element {
        Perm::parse_cycles(text, n).unwrap().into()
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(&[perm("(0,1)", 3), perm("(1,2)", 3)]).unwrap()
    }

    fn gen_labels(g: &FiniteGroup) -> Vec<(String, usize)> {
        g.generators()
            .iter()
            .enumerate()
            .map(|(k, &x)| (format!("s{k}"), x))
            .collect()
    }

    #[test]
    fn whole_group_has_one_coset() {
        let g = s3();
        let t = CosetTable::new(&g, &Subgroup::whole(&g));
        assert_eq!(t.len(), 1);
        let graph = schreier_graph(&g, &t, &gen_labels(&g));
        assert_eq!(graph.vertex_count(), 1);
        assert_eq!(graph.arcs().len(), 2);
        assert!(graph.arcs().iter().all(|a| a.src == 0 && a.dst == 0));
    }

    #[test]
    fn coset_table_partitions_group() {
        let g = s3();
        let u = Subgroup::generate(&g, &[g.index_of(&perm("(0,1)", 3)).unwrap()]);
        let t = CosetTable::new(&g, &u);
        assert_eq!(t.len(), 3);
        assert_eq!(t.transversal()[0], g.identity());
        for c in 0..t.len() {
            let members: Vec<usize> = (0..g.order()).filter(|&x| t.coset_of(x) == c).collect();
            assert_eq!(members.len(), u.order());
            // members are exactly U·rep
            let rep = t.transversal()[c];
            for &m in &members {
                assert!(u.contains(g.mul(m, g.inv(rep))));
            }
        }
    }

    #[test]
    fn trivial_subgroup_gives_cayley_graph() {
        let g = s3();
        let t = CosetTable::new(&g, &Subgroup::trivial(&g));
        let graph = schreier_graph(&g, &t, &gen_labels(&g));
        assert_eq!(graph.vertex_count(), 6);
        for a in graph.arcs() {
            let s = g.generators()[a.label];
            assert_eq!(t.transversal()[a.dst], g.mul(t.transversal()[a.src], s));
        }
    }

    #[test]
    fn dot_output() {
        let g = s3();
        let t = CosetTable::new(&g, &Subgroup::whole(&g));
        let graph = schreier_graph(&g, &t, &[("a".to_string(), g.identity())]);
        let dot = graph.to_dot();
        assert!(dot.contains("v0 -> v0 [label=\"a\"]"));
        let empty = schreier_graph(&g, &t, &[]);
        assert_eq!(empty.to_dot(), "digraph schreier {\n  v0;\n}\n");
    }

    #[test]
    fn identity_isomorphism() {
        let g = s3();
        let u = Subgroup::generate(&g, &[g.index_of(&perm("(0,1)", 3)).unwrap()]);
        let graph = schreier_graph(&g, &CosetTable::new(&g, &u), &gen_labels(&g));
        assert_eq!(
            graph_isomorphic(&graph, &graph, IsoMode::Direct),
            Some(vec![0, 1, 2])
        );
    }

    #[test]
    fn relabelled_graph_is_isomorphic() {
        let g = s3();
        let graph = schreier_graph(
            &g,
            &CosetTable::new(&g, &Subgroup::trivial(&g)),
            &gen_labels(&g),
        );
        let shuffle = [3, 5, 0, 1, 4, 2];
        let other = graph.relabel_vertices(&shuffle);
        let phi = graph_isomorphic(&graph, &other, IsoMode::Direct).unwrap();
        for a in graph.arcs() {
            assert!(other.arcs().contains(&Arc {
                src: phi[a.src],
                dst: phi[a.dst],
                label: a.label
            }));
        }
        // Cayley graph of S3 on two involutions is its own reverse
        assert!(graph_isomorphic(&graph, &other, IsoMode::Reversed).is_some());
    }

    #[test]
    fn directed_cycle_reversal() {
        let labels = vec!["a".to_string(), "b".to_string()];
        // a: 0→1→2→0, b: swap 0,1
        let arcs = vec![
            Arc {
                src: 0,
                dst: 1,
                label: 0,
            },
            Arc {
                src: 1,
                dst: 2,
                label: 0,
            },
            Arc {
                src: 2,
                dst: 0,
                label: 0,
            },
            Arc {
                src: 0,
                dst: 1,
                label: 1,
            },
            Arc {
                src: 1,
                dst: 0,
                label: 1,
            },
            Arc {
                src: 2,
                dst: 2,
                label: 1,
            },
        ];
        let g = SchreierGraph::from_arcs(3, labels, arcs).unwrap();
        let r = g.reversed();
        // reversing the 3-cycle while fixing the b-loop at 2 swaps 0 and 1
        assert_eq!(
            graph_isomorphic(&g, &r, IsoMode::Reversed),
            Some(vec![0, 1, 2])
        );
        assert_eq!(
            graph_isomorphic(&g, &r, IsoMode::Direct),
            Some(vec![1, 0, 2])
        );
    }

    #[test]
    fn mismatched_shapes_are_not_isomorphic() {
        let a = SchreierGraph::from_arcs(
            1,
            vec!["a".into()],
            vec![Arc {
                src: 0,
                dst: 0,
                label: 0,
            }],
        )
        .unwrap();
        let b = SchreierGraph::from_arcs(
            1,
            vec!["b".into()],
            vec![Arc {
                src: 0,
                dst: 0,
                label: 0,
            }],
        )
        .unwrap();
        assert_eq!(graph_isomorphic(&a, &b, IsoMode::Direct), None);
        let c = SchreierGraph::from_arcs(
            2,
            vec!["a".into()],
            vec![
                Arc {
                    src: 0,
                    dst: 1,
                    label: 0,
                },
                Arc {
                    src: 1,
                    dst: 0,
                    label: 0,
                },
            ],
        )
        .unwrap();
        assert_eq!(graph_isomorphic(&a, &c, IsoMode::Direct), None);
    }

    #[test]
    fn non_functional_graphs_are_rejected() {
        let g = SchreierGraph::from_arcs(
            2,
            vec!["a".into()],
            vec![
                Arc {
                    src: 0,
                    dst: 1,
                    label: 0,
                },
                Arc {
                    src: 1,
                    dst: 1,
                    label: 0,
                },
            ],
        )
        .unwrap();
        assert!(matches!(
            g.label_permutations(),
            Err(SchreierError::NotFunctional { .. })
        ));
        assert_eq!(graph_isomorphic(&g, &g, IsoMode::Direct), None);
        assert!(SchreierGraph::from_arcs(
            1,
            vec![],
            vec![Arc {
                src: 0,
                dst: 3,
                label: 0
            }]
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = s3();
        let graph = schreier_graph(
            &g,
            &CosetTable::new(&g, &Subgroup::trivial(&g)),
            &gen_labels(&g),
        );
        let json = graph.to_json();
        assert_eq!(json["vertices"], 6);
        assert_eq!(json["arcs"][0]["label"], "s0");
        assert_eq!(SchreierGraph::from_json(&json).unwrap(), graph);
    }
}
