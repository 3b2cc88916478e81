use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;

use super::table::{Element, GradedRingTable};
use crate::error::{Error, Result};

/// One attaching class: `mult · gen` from this cell down to cell `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attach {
    pub to: usize,
    pub gen: String,
    pub mult: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub deg: i64,
    pub attach: Vec<Attach>,
}

/// A cell complex of module cells, cells sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub name: String,
    pub provenance: Option<String>,
    pub cells: Vec<Cell>,
    /// Known extension resolutions: degree → cyclic orders (0 for ℤ).
    pub extensions: BTreeMap<i64, Vec<u64>>,
}

/// `S^bottom ∪_α S^top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCell {
    pub bottom: i64,
    pub top: i64,
    pub alpha: Element,
}

const BUILTIN: &[(&str, &str)] = &[
    ("tmf_eta", include_str!("../../../../data/complexes/tmf_eta.json")),
    ("tmf_nu", include_str!("../../../../data/complexes/tmf_nu.json")),
    ("tjf2", include_str!("../../../../data/complexes/tjf2.json")),
    ("tjf3", include_str!("../../../../data/complexes/tjf3.json")),
    ("tjf4", include_str!("../../../../data/complexes/tjf4.json")),
    ("tjf5", include_str!("../../../../data/complexes/tjf5.json")),
    ("tjf6", include_str!("../../../../data/complexes/tjf6.json")),
];

fn attach_from_json(v: &Value, default_to: Option<usize>) -> Result<Attach> {
    let to = match v.get("to") {
        Some(t) => t
            .as_u64()
            .ok_or_else(|| Error::Malformed("`to` must be a cell index".into()))? as usize,
        None => default_to.ok_or_else(|| Error::Malformed("bottom cell cannot attach".into()))?,
    };
    let (gen, mult) = match v {
        Value::String(s) => (s.clone(), 1),
        Value::Object(o) => (
            o.get("gen")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Malformed("attach lacks `gen`".into()))?
                .to_string(),
            match o.get("mult") {
                None => 1,
                Some(m) => m.as_i64().ok_or_else(|| Error::Malformed("`mult` must be an integer".into()))?,
            },
        ),
        _ => return Err(Error::Malformed(format!("cannot read attaching class {v}"))),
    };
    Ok(Attach { to, gen, mult })
}

impl CellComplex {
    pub fn builtin(name: &str) -> Result<Self> {
        BUILTIN
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, text)| Self::from_json(text))
            .unwrap_or_else(|| Err(Error::UnknownName(name.to_string())))
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTIN.iter().map(|(n, _)| *n)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Reads `{"cells": [{"deg": 0}, {"deg": 4, "attach": {"gen": "nu", "mult": 1}}]}`.
    /// `attach` is one class or a list; a class without `"to"` attaches to the
    /// previous cell.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("").to_string();
        let provenance = v.get("provenance").and_then(Value::as_str).map(str::to_string);
        let list = v
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("missing list `cells`".into()))?;
        let mut cells = Vec::new();
        for (i, c) in list.iter().enumerate() {
            let deg = c
                .get("deg")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Malformed(format!("cell {i} lacks integer `deg`")))?;
            let prev = i.checked_sub(1);
            let attach = match c.get("attach") {
                None | Some(Value::Null) => Vec::new(),
                Some(Value::Array(a)) => a.iter().map(|x| attach_from_json(x, prev)).collect::<Result<_>>()?,
                Some(x) => vec![attach_from_json(x, prev)?],
            };
            for a in &attach {
                if a.to >= i {
                    return Err(Error::Malformed(format!("cell {i} attaches to cell {} above it", a.to)));
                }
            }
            cells.push(Cell { deg, attach });
        }
        if cells.windows(2).any(|w| w[0].deg > w[1].deg) {
            return Err(Error::Malformed("cells must be listed by ascending degree".into()));
        }
        let mut extensions = BTreeMap::new();
        if let Some(ext) = v.get("extensions").and_then(Value::as_object) {
            for (k, orders) in ext {
                let d: i64 = k.parse().map_err(|_| Error::Malformed(format!("bad degree `{k}`")))?;
                let orders = orders
                    .as_array()
                    .and_then(|a| a.iter().map(Value::as_u64).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| Error::Malformed(format!("extensions[{k}] must list orders")))?;
                extensions.insert(d, orders);
            }
        }
        Ok(CellComplex {
            name,
            provenance,
            cells,
            extensions,
        })
    }

    /// The attaching class from cell `j` to cell `i`, as a table element.
    pub fn attaching_class(&self, table: &GradedRingTable, i: usize, j: usize) -> Result<Element> {
        let d = self.cells[j].deg - 1 - self.cells[i].deg;
        let mut acc = table.zero(d)?;
        for a in self.cells[j].attach.iter().filter(|a| a.to == i) {
            let e = table.gen_element(&a.gen, a.mult)?;
            if e.degree != d {
                return Err(Error::Malformed(format!(
                    "attaching class {}{} has degree {}, expected {d} between cells {i} and {j}",
                    a.mult, a.gen, e.degree
                )));
            }
            acc = table.add(&acc, &e)?;
        }
        Ok(acc)
    }

    /// The two-cell complex on cells `i < j`, keeping only the attaching class
    /// between them (the quotient of a subcomplex by a smaller one).
    pub fn subquotient(&self, i: usize, j: usize) -> Result<CellComplex> {
        if i >= j || j >= self.cells.len() {
            return Err(Error::InvalidArgument(format!("need cell indices i < j < {}", self.cells.len())));
        }
        let attach = self.cells[j]
            .attach
            .iter()
            .filter(|a| a.to == i)
            .map(|a| Attach { to: 0, ..a.clone() })
            .collect();
        Ok(CellComplex {
            name: format!("{}[{i},{j}]", self.name),
            provenance: None,
            cells: vec![
                Cell {
                    deg: self.cells[i].deg,
                    attach: Vec::new(),
                },
                Cell {
                    deg: self.cells[j].deg,
                    attach,
                },
            ],
            extensions: BTreeMap::new(),
        })
    }

    pub fn two_cell(&self, table: &GradedRingTable) -> Result<TwoCell> {
        if self.cells.len() != 2 {
            return Err(Error::InvalidArgument(format!(
                "`{}` has {} cells; only two-cell complexes are supported",
                self.name,
                self.cells.len()
            )));
        }
        Ok(TwoCell {
            bottom: self.cells[0].deg,
            top: self.cells[1].deg,
            alpha: self.attaching_class(table, 0, 1)?,
        })
    }
}
