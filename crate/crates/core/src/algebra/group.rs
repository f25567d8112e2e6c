use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{AlgebraError, Element, Family};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

// Groups up to this order get a full multiplication table on first use.
const TABLE_LIMIT: usize = 1024;

/// Conjugacy classes, ordered by least member index, members ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// A fully enumerated finite group.
///
/// Element `0` is the identity and the rest follow in breadth-first closure
/// order from the sorted generator list. Every index-based ordering in the
/// crate (classes, cosets, graph vertices) derives from this one.
#[derive(Debug)]
pub struct FiniteGroup {
    family: Family,
    elements: Vec<Element>,
    lookup: HashMap<Element, usize>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
    classes: OnceLock<ClassPartition>,
}

impl FiniteGroup {
    pub fn generate(generators: &[Element]) -> Result<FiniteGroup, AlgebraError> {
        FiniteGroup::generate_with_cap(generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        generators: &[Element],
        cap: usize,
    ) -> Result<FiniteGroup, AlgebraError> {
        let first = generators.first().ok_or(AlgebraError::NoGenerators)?;
        let family = first.family();
        for g in generators {
            if g.family() != family {
                return Err(AlgebraError::FamilyMismatch {
                    left: family,
                    right: g.family(),
                });
            }
        }
        let mut gens = generators.to_vec();
        gens.sort();
        gens.dedup();

        let identity = Element::identity_of(family);
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let x = elements[i].compose(g)?;
                if !lookup.contains_key(&x) {
                    if elements.len() >= cap {
                        return Err(AlgebraError::GroupTooLarge { cap });
                    }
                    lookup.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }

        let generators = gens.iter().map(|g| lookup[g]).collect();
        let inverses = elements.iter().map(|x| lookup[&x.inverse()]).collect();
        Ok(FiniteGroup {
            family,
            elements,
            lookup,
            generators,
            inverses,
            table: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element(&self, index: usize) -> &Element {
        &self.elements[index]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index_of(&self, element: &Element) -> Option<usize> {
        self.lookup.get(element).copied()
    }

    fn table(&self) -> Option<&[u32]> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_LIMIT {
                    return None;
                }
                let mut table = Vec::with_capacity(n * n);
                for x in &self.elements {
                    for y in &self.elements {
                        let z = x.compose(y).expect("same family");
                        table.push(self.lookup[&z] as u32);
                    }
                }
                Some(table)
            })
            .as_deref()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => {
                let z = self.elements[a]
                    .compose(&self.elements[b])
                    .expect("same family");
                self.lookup[&z]
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, exponent: u64) -> usize {
        let mut acc = self.identity();
        for _ in 0..exponent {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, computed on first call and cached.
    pub fn classes(&self) -> &ClassPartition {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                class_of[start] = id;
                let mut members = vec![start];
                let mut frontier = vec![start];
                // conjugation orbits under the generators are full classes
                while let Some(x) = frontier.pop() {
                    for &g in &self.generators {
                        let y = self.conjugate(g, x);
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            members.push(y);
                            frontier.push(y);
                        }
                    }
                }
                members.sort_unstable();
                classes.push(members);
            }
            ClassPartition { classes, class_of }
        })
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.classes().class_of(a)
    }
}
