//! The three bundled constructions: the genus-2 pair in an order-96
//! subgroup of A12, the genus-3 pair in GL(2, Z/4), and the orbifold pair in
//! Z/8^x ⋉ Z/8.
//!
//! Generators, subgroups and polygon data are stored verbatim as spec-file
//! documents and checked when built, so a transcription error shows up as a
//! [`CatalogError::SelfCheck`].

use serde_json::json;
use thiserror::Error;

use crate::algebra::FiniteGroup;
use crate::covering::{PolygonSpec, Rational};
use crate::gassmann::Subgroup;
use crate::specfile::{
    CycleEntry, GroupKind, GroupSpecFile, LoadedSpec, NamedElement, NamedValue, PolygonEntry,
    SpecFileError, SubgroupEntry,
};

pub const NAMES: [&str; 3] = ["genus2", "genus3", "orbifold-h"];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}; expected one of genus2, genus3, orbifold-h")]
    UnknownEntry(String),
    #[error(transparent)]
    Spec(#[from] SpecFileError),
    #[error("self-check failed for {entry}: {message}")]
    SelfCheck {
        entry: &'static str,
        message: String,
    },
}

/// What the construction is supposed to produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub group_order: usize,
    pub index: usize,
    /// Orders of the polygon's cycle elements, in cycle order.
    pub cycle_orders: Vec<u64>,
    pub chi_orb: Rational,
    pub smooth: bool,
    pub genus: Option<i64>,
}

#[derive(Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: GroupSpecFile,
    pub loaded: LoadedSpec,
    pub u_name: &'static str,
    pub v_name: &'static str,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn group(&self) -> &FiniteGroup {
        &self.loaded.group
    }

    pub fn u(&self) -> &Subgroup {
        self.loaded.subgroup(self.u_name).expect("checked at build")
    }

    pub fn v(&self) -> &Subgroup {
        self.loaded.subgroup(self.v_name).expect("checked at build")
    }

    pub fn polygon(&self) -> &PolygonSpec {
        self.loaded.polygon.as_ref().expect("checked at build")
    }

    pub fn element(&self, name: &str) -> usize {
        self.loaded.element(name).expect("catalog names are fixed")
    }
}

pub fn build(name: &str) -> Result<CatalogEntry, CatalogError> {
    match name {
        "genus2" => build_genus2(),
        "genus3" => build_genus3(),
        "orbifold-h" => build_orbifold_h(),
        other => Err(CatalogError::UnknownEntry(other.to_string())),
    }
}

fn gen(name: &str, value: serde_json::Value) -> NamedValue {
    NamedValue {
        name: name.into(),
        value,
    }
}

fn cycle(label: &str, word: &str) -> CycleEntry {
    CycleEntry {
        label: label.into(),
        word: word.into(),
    }
}

fn check(
    entry: &'static str,
    ok: bool,
    message: impl FnOnce() -> String,
) -> Result<(), CatalogError> {
    if ok {
        Ok(())
    } else {
        Err(CatalogError::SelfCheck {
            entry,
            message: message(),
        })
    }
}

fn finish(
    name: &'static str,
    spec: GroupSpecFile,
    u_name: &'static str,
    v_name: &'static str,
    expected: Expected,
) -> Result<CatalogEntry, CatalogError> {
    let loaded = spec.load()?;
    let g = &loaded.group;
    check(name, g.order() == expected.group_order, || {
        format!("group order {} != {}", g.order(), expected.group_order)
    })?;
    for s in [u_name, v_name] {
        let sub = loaded.subgroup(s)?;
        check(name, sub.index() == expected.index, || {
            format!(
                "subgroup {s} has index {} != {}",
                sub.index(),
                expected.index
            )
        })?;
    }
    let poly = loaded
        .polygon
        .as_ref()
        .ok_or_else(|| CatalogError::SelfCheck {
            entry: name,
            message: "missing polygon".into(),
        })?;
    let orders: Vec<u64> = poly
        .cycles
        .iter()
        .map(|c| g.element_order(c.element))
        .collect();
    check(name, orders == expected.cycle_orders, || {
        format!("cycle orders {orders:?} != {:?}", expected.cycle_orders)
    })?;
    Ok(CatalogEntry {
        name,
        spec,
        loaded,
        u_name,
        v_name,
        expected,
    })
}

/// `T = ⟨a, b⟩ ≤ A12` of order 96 with the index-12 pair `U`, `V`.
pub fn build_genus2() -> Result<CatalogEntry, CatalogError> {
    const NAME: &str = "genus2";
    let spec = GroupSpecFile {
        kind: GroupKind::Permutation,
        degree: Some(12),
        modulus: None,
        generators: vec![
            gen("a", json!("(0,7,11)(1,5,6)(2,9,10)(3,4,8)")),
            gen("b", json!("(0,4,2)(1,5,9)(3,7,11)(6,10,8)")),
        ],
        elements: vec![NamedElement {
            name: "c".into(),
            word: None,
            value: Some(json!("(0,10,5,6,4,11)(1,2,3,7,8,9)")),
        }],
        subgroups: vec![
            SubgroupEntry {
                name: "U".into(),
                elements: Some(vec![
                    json!(""),
                    json!("(1,7)(4,10)"),
                    json!("(2,8)(5,11)"),
                    json!("(1,7)(2,8)(4,10)(5,11)"),
                    json!("(0,9)(2,11,8,5)(3,6)(4,10)"),
                    json!("(0,9)(1,7)(2,11,8,5)(3,6)"),
                    json!("(0,9)(2,5,8,11)(3,6)(4,10)"),
                    json!("(0,9)(1,7)(2,5,8,11)(3,6)"),
                ]),
                generators: None,
            },
            SubgroupEntry {
                name: "V".into(),
                elements: Some(vec![
                    json!(""),
                    json!("(1,7)(4,10)"),
                    json!("(0,6)(3,9)"),
                    json!("(0,6)(1,7)(3,9)(4,10)"),
                    json!("(0,3,6,9)(1,10)(2,8)(4,7)"),
                    json!("(0,3,6,9)(1,4)(2,8)(7,10)"),
                    json!("(0,9,6,3)(1,10)(2,8)(4,7)"),
                    json!("(0,9,6,3)(1,4)(2,8)(7,10)"),
                ]),
                generators: None,
            },
        ],
        polygon: Some(PolygonEntry {
            edge_pairs: 2,
            cycles: vec![cycle("P", "a"), cycle("Q", "b"), cycle("R", "c")],
        }),
    };
    let entry = finish(
        NAME,
        spec,
        "U",
        "V",
        Expected {
            group_order: 96,
            index: 12,
            cycle_orders: vec![3, 3, 6],
            chi_orb: Rational::from_integer(-2),
            smooth: true,
            genus: Some(2),
        },
    )?;
    let g = entry.group();
    let (a, b, c) = (entry.element("a"), entry.element("b"), entry.element("c"));
    check(NAME, g.inv(g.mul(a, b)) == c, || "c is not (ab)^-1".into())?;
    check(
        NAME,
        entry.u().order() == 8 && entry.v().order() == 8,
        || "U and V must have order 8".into(),
    )?;
    Ok(entry)
}

/// `GL(2, Z/4) = ⟨a, b⟩` with `U2` the transpose of `U1`.
pub fn build_genus3() -> Result<CatalogEntry, CatalogError> {
    const NAME: &str = "genus3";
    let spec = GroupSpecFile {
        kind: GroupKind::Matrix2,
        degree: None,
        modulus: Some(4),
        generators: vec![
            gen("a", json!([[3, 2], [3, 3]])),
            gen("b", json!([[1, 3], [2, 3]])),
        ],
        elements: vec![
            NamedElement {
                name: "c".into(),
                word: None,
                value: Some(json!([[3, 3], [1, 2]])),
            },
            NamedElement {
                name: "g1".into(),
                word: None,
                value: Some(json!([[3, 3], [1, 2]])),
            },
            NamedElement {
                name: "g2".into(),
                word: None,
                value: Some(json!([[3, 0], [0, 3]])),
            },
        ],
        subgroups: vec![
            SubgroupEntry {
                name: "U1".into(),
                elements: None,
                generators: Some(vec![json!([[1, 2], [0, 3]]), json!([[1, 1], [0, 3]])]),
            },
            SubgroupEntry {
                name: "U2".into(),
                elements: None,
                generators: Some(vec![json!([[1, 0], [2, 3]]), json!([[1, 0], [1, 3]])]),
            },
        ],
        polygon: Some(PolygonEntry {
            edge_pairs: 2,
            cycles: vec![cycle("a", "a"), cycle("b", "b"), cycle("c", "c")],
        }),
    };
    let entry = finish(
        NAME,
        spec,
        "U1",
        "U2",
        Expected {
            group_order: 96,
            index: 12,
            cycle_orders: vec![4, 4, 6],
            chi_orb: Rational::from_integer(-4),
            smooth: true,
            genus: Some(3),
        },
    )?;
    let g = entry.group();
    let (a, b, c) = (entry.element("a"), entry.element("b"), entry.element("c"));
    check(NAME, g.mul(a, b) == c, || "c is not ab".into())?;
    let transposed: Vec<usize> = entry
        .u()
        .members()
        .iter()
        .map(|&x| match g.element(x) {
            crate::algebra::Element::Mat2(m) => g
                .index_of(&m.transpose().into())
                .expect("GL is closed under transpose"),
            _ => unreachable!("matrix group"),
        })
        .collect();
    let transposed =
        Subgroup::from_elements(g, &transposed).map_err(|e| CatalogError::SelfCheck {
            entry: NAME,
            message: e.to_string(),
        })?;
    check(NAME, &transposed == entry.v(), || {
        "U2 is not the transpose of U1".into()
    })?;
    Ok(entry)
}

/// `H = Z/8^x ⋉ Z/8` with the order-4 pair `U1`, `U2`.
pub fn build_orbifold_h() -> Result<CatalogEntry, CatalogError> {
    const NAME: &str = "orbifold-h";
    let spec = GroupSpecFile {
        kind: GroupKind::Semidirect,
        degree: None,
        modulus: Some(8),
        generators: vec![
            gen("a", json!([3, 2])),
            gen("b", json!([7, 1])),
            gen("c", json!([7, 2])),
        ],
        elements: vec![NamedElement {
            name: "abc".into(),
            word: Some("a b c".into()),
            value: None,
        }],
        subgroups: vec![
            SubgroupEntry {
                name: "U1".into(),
                elements: Some(vec![
                    json!([1, 0]),
                    json!([3, 0]),
                    json!([5, 0]),
                    json!([7, 0]),
                ]),
                generators: None,
            },
            SubgroupEntry {
                name: "U2".into(),
                elements: Some(vec![
                    json!([1, 0]),
                    json!([3, 4]),
                    json!([5, 4]),
                    json!([7, 0]),
                ]),
                generators: None,
            },
        ],
        polygon: Some(PolygonEntry {
            edge_pairs: 3,
            cycles: vec![
                cycle("a", "a"),
                cycle("b", "b"),
                cycle("c", "c"),
                cycle("abc", "abc"),
            ],
        }),
    };
    finish(
        NAME,
        spec,
        "U1",
        "U2",
        Expected {
            group_order: 32,
            index: 8,
            cycle_orders: vec![2, 2, 2, 4],
            chi_orb: Rational::from_integer(-2),
            smooth: false,
            // underlying surface of the orbifold: four cone points of order 2
            genus: Some(1),
        },
    )
}
