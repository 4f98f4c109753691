//! The JSON document format for monoid specifications, and the bundled
//! corpus of desk-scale instances.
//!
//! One document describes one D-monoid. SET/POS/JSL documents name their
//! elements and give the multiplication table by name (plus order pairs for
//! POS, the join table for JSL); VECT documents give a dimension and
//! structure constants over GF(p), with elements named by their coordinate
//! tuples.

use crate::dmonoid::{validate_dmonoid, DMonoid};
use crate::error::{Error, Result};
use crate::object::FiniteObject;
use crate::variety::Variety;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// A monoid specification as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidSpecDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    /// `"set"`, `"pos"`, `"jsl"`, or `"vect"`.
    pub variety: String,
    /// VECT only: the prime field modulus.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field_modulus: Option<u64>,
    /// SET/POS/JSL: the element names, defining the id order.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elements: Option<Vec<String>>,
    /// VECT only: the dimension of the carrier.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dimension: Option<usize>,
    /// VECT only: `structure_constants[i][j]` is the coordinate vector of
    /// `e_i · e_j`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub structure_constants: Option<Vec<Vec<Vec<u8>>>>,
    /// The unit, as an element name (SET/POS/JSL) or a comma-separated
    /// coordinate tuple (VECT).
    pub unit: String,
    /// SET/POS/JSL: the full multiplication table by element name.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mult: Option<Vec<Vec<String>>>,
    /// POS only: generating pairs `[x, y]` meaning `x ≤ y`; the
    /// reflexive-transitive closure is taken.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Vec<[String; 2]>>,
    /// JSL only: the full join table by element name.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub join: Option<Vec<Vec<String>>>,
}

/// Parses a document into a validated [`DMonoid`]. Names are preserved for
/// reporting; a document that parses but violates the monoid (or order, or
/// semilattice) laws is an input error quoting the violations.
pub fn parse_monoid_spec(text: &str) -> Result<DMonoid> {
    let doc: MonoidSpecDocument = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("document syntax error: {e}")))?;
    let m = dmonoid_of_document(&doc)?;
    let report = validate_dmonoid(&m);
    if !report.is_valid() {
        return Err(Error::input(format!(
            "document violates the algebra laws: {report}"
        )));
    }
    Ok(m)
}

fn dmonoid_of_document(doc: &MonoidSpecDocument) -> Result<DMonoid> {
    let name = doc.name.clone().unwrap_or_else(|| "M".to_string());
    match doc.variety.as_str() {
        "set" | "pos" | "jsl" => named_monoid(doc, &name),
        "vect" => vect_monoid(doc, &name),
        other => Err(Error::input(format!(
            "unknown variety tag '{other}' (expected set, pos, jsl, or vect)"
        ))),
    }
}

fn named_monoid(doc: &MonoidSpecDocument, name: &str) -> Result<DMonoid> {
    let elements = doc
        .elements
        .as_ref()
        .ok_or_else(|| Error::input(format!("{} documents need 'elements'", doc.variety)))?;
    let n = elements.len();
    if n == 0 {
        return Err(Error::input("element list is empty".to_string()));
    }
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for (i, e) in elements.iter().enumerate() {
        if ids.insert(e.as_str(), i).is_some() {
            return Err(Error::input(format!("duplicate element name '{e}'")));
        }
    }
    let id_of = |s: &str, context: &str| -> Result<usize> {
        ids.get(s)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown element '{s}' in {context}")))
    };
    let unit = ids
        .get(doc.unit.as_str())
        .copied()
        .ok_or_else(|| Error::input(format!("unknown unit element '{}'", doc.unit)))?;
    let mult = name_table(doc.mult.as_ref(), "mult", n, &id_of)?;
    let object = match doc.variety.as_str() {
        "set" => FiniteObject::set(n),
        "pos" => {
            let mut pairs = Vec::new();
            for [x, y] in doc.order.as_deref().unwrap_or(&[]) {
                pairs.push((id_of(x, "order")?, id_of(y, "order")?));
            }
            FiniteObject::pos(n, &pairs)?
        }
        "jsl" => {
            let join = name_table(doc.join.as_ref(), "join", n, &id_of)?;
            FiniteObject::jsl(n, join)?
        }
        _ => unreachable!(),
    };
    Ok(DMonoid::new(object, unit, mult, name, elements.clone()))
}

fn name_table(
    table: Option<&Vec<Vec<String>>>,
    which: &str,
    n: usize,
    id_of: &dyn Fn(&str, &str) -> Result<usize>,
) -> Result<Vec<usize>> {
    let rows = table.ok_or_else(|| Error::input(format!("document needs a '{which}' table")))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!("'{which}' table must be {n}×{n}")));
    }
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        for entry in row {
            out.push(id_of(entry, &format!("the {which} table"))?);
        }
    }
    Ok(out)
}

fn vect_monoid(doc: &MonoidSpecDocument, name: &str) -> Result<DMonoid> {
    let modulus = doc
        .field_modulus
        .ok_or_else(|| Error::input("vect documents need 'field_modulus'".to_string()))?;
    let dim = doc
        .dimension
        .ok_or_else(|| Error::input("vect documents need 'dimension'".to_string()))?;
    let sc = doc
        .structure_constants
        .as_ref()
        .ok_or_else(|| Error::input("vect documents need 'structure_constants'".to_string()))?;
    let object = FiniteObject::vect(modulus, dim)?;
    let p = modulus as usize;
    if sc.len() != dim
        || sc
            .iter()
            .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
    {
        return Err(Error::input(format!(
            "structure_constants must be {dim}×{dim}×{dim}"
        )));
    }
    if sc.iter().flatten().flatten().any(|&c| c as usize >= p) {
        return Err(Error::input(format!(
            "structure constant out of range for GF({modulus})"
        )));
    }
    let unit_coords = parse_coords(&doc.unit, dim, p)
        .ok_or_else(|| Error::input(format!("unknown unit element '{}'", doc.unit)))?;
    let unit = object.id_of_coords(&unit_coords);
    // The bilinear extension of the structure constants.
    let size = object.size;
    let mut mult = Vec::with_capacity(size * size);
    for x in 0..size {
        let a = object.coords(x);
        for y in 0..size {
            let b = object.coords(y);
            let mut r = vec![0u8; dim];
            for i in 0..dim {
                for j in 0..dim {
                    let w = a[i] as usize * b[j] as usize;
                    for k in 0..dim {
                        r[k] = ((r[k] as usize + w * sc[i][j][k] as usize) % p) as u8;
                    }
                }
            }
            mult.push(object.id_of_coords(&r));
        }
    }
    let names: Vec<String> = (0..size).map(|x| coords_name(&object.coords(x))).collect();
    Ok(DMonoid::new(object, unit, mult, name, names))
}

fn parse_coords(s: &str, dim: usize, p: usize) -> Option<Vec<u8>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != dim {
        return None;
    }
    let mut out = Vec::with_capacity(dim);
    for part in parts {
        let c: usize = part.parse().ok()?;
        if c >= p {
            return None;
        }
        out.push(c as u8);
    }
    Some(out)
}

fn coords_name(coords: &[u8]) -> String {
    coords
        .iter()
        .map(u8::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes a monoid back into document form: SET/POS/JSL by name tables (POS
/// orders as the covering pairs of the stored order), VECT by structure
/// constants read off the basis products.
pub fn serialize_monoid_spec(m: &DMonoid) -> MonoidSpecDocument {
    let n = m.size();
    let mut doc = MonoidSpecDocument {
        name: Some(m.name.clone()),
        variety: m.object.variety.tag().to_string(),
        field_modulus: None,
        elements: None,
        dimension: None,
        structure_constants: None,
        unit: m.element_name(m.unit),
        mult: None,
        order: None,
        join: None,
    };
    match m.object.variety {
        Variety::Set | Variety::Pos | Variety::Jsl => {
            doc.elements = Some(m.element_names.clone());
            doc.mult = Some(
                (0..n)
                    .map(|x| (0..n).map(|y| m.element_name(m.mul(x, y))).collect())
                    .collect(),
            );
            if m.object.variety == Variety::Pos {
                let mut covers = Vec::new();
                for x in 0..n {
                    for y in 0..n {
                        let strict = |a: usize, b: usize| a != b && m.object.leq(a, b);
                        if strict(x, y) && !(0..n).any(|z| strict(x, z) && strict(z, y)) {
                            covers.push([m.element_name(x), m.element_name(y)]);
                        }
                    }
                }
                doc.order = Some(covers);
            }
            if m.object.variety == Variety::Jsl {
                doc.join = Some(
                    (0..n)
                        .map(|x| {
                            (0..n)
                                .map(|y| m.element_name(m.object.join(x, y)))
                                .collect()
                        })
                        .collect(),
                );
            }
        }
        Variety::Vect { modulus } => {
            let dim = m.object.dim();
            doc.field_modulus = Some(modulus);
            doc.dimension = Some(dim);
            let basis = |i: usize| (modulus as usize).pow(i as u32);
            doc.structure_constants = Some(
                (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| m.object.coords(m.mul(basis(i), basis(j))))
                            .collect()
                    })
                    .collect(),
            );
            doc.unit = coords_name(&m.object.coords(m.unit));
        }
    }
    doc
}

/// The in-repo corpus: four SET monoids, one POS, two JSL, two VECT.
pub fn bundled_corpus() -> &'static [(&'static str, &'static str)] {
    &[
        ("trivial", include_str!("../corpus/trivial.json")),
        ("z2", include_str!("../corpus/z2.json")),
        ("b2", include_str!("../corpus/b2.json")),
        ("flip_flop", include_str!("../corpus/flip_flop.json")),
        ("min_chain2", include_str!("../corpus/min_chain2.json")),
        ("bool", include_str!("../corpus/bool.json")),
        ("chain3", include_str!("../corpus/chain3.json")),
        ("gf2_1d", include_str!("../corpus/gf2_1d.json")),
        ("gf2_z2", include_str!("../corpus/gf2_z2.json")),
    ]
}

/// The corpus grouped by variety tag, in corpus order.
pub fn corpus_by_variety(tag: &str) -> Vec<(&'static str, DMonoid)> {
    bundled_corpus()
        .iter()
        .filter_map(|&(slug, text)| {
            let m = parse_monoid_spec(text).expect("bundled corpus must parse");
            (m.object.variety.tag() == tag).then_some((slug, m))
        })
        .collect()
}
