use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::order::Order;

/// One cyclic summand: `ℤ/order` (or `ℤ` when `order == 0`) generated by `gen`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicGen {
    pub order: u64,
    pub gen: String,
}

/// An element of a single degree, as integer coordinates over that
/// degree's generators, reduced into `[0, order)` on torsion summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub degree: i64,
    pub coeffs: Vec<i64>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Coefficient ring `π_*` of a ring spectrum over a finite degree window.
///
/// Products of generators not listed in `action` are zero. Outside the window
/// every group is unknown, except below it for connective tables, where the
/// groups vanish.
#[derive(Clone, Debug)]
pub struct GradedRingTable {
    pub name: String,
    pub window: (i64, i64),
    pub connective: bool,
    pub provenance: Option<String>,
    groups: BTreeMap<i64, Vec<CyclicGen>>,
    index: HashMap<String, (i64, usize)>,
    action: HashMap<(String, String), Element>,
    unit: Option<String>,
}

const PI_S: &str = include_str!("../../../../data/tables/pi_S.json");
const PI_TMF: &str = include_str!("../../../../data/tables/pi_tmf.json");

impl GradedRingTable {
    /// Tables shipped with the crate: `pi_S` and `pi_tmf`.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "pi_S" | "pi_s" | "S" => Self::from_json(PI_S),
            "pi_tmf" | "tmf" => Self::from_json(PI_TMF),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text)?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("").to_string();
        let window = match v.get("window").and_then(Value::as_array).map(Vec::as_slice) {
            Some([lo, hi]) => match (lo.as_i64(), hi.as_i64()) {
                (Some(lo), Some(hi)) if lo <= hi => (lo, hi),
                _ => return Err(Error::Malformed("`window` must be [lo, hi] with lo <= hi".into())),
            },
            _ => return Err(Error::Malformed("missing `window`".into())),
        };
        let connective = v.get("connective").and_then(Value::as_bool).unwrap_or(false);
        let provenance = v.get("provenance").and_then(Value::as_str).map(str::to_string);

        let mut groups = BTreeMap::new();
        let mut index = HashMap::new();
        let gmap = v
            .get("groups")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Malformed("missing object `groups`".into()))?;
        for (deg, list) in gmap {
            let d: i64 = deg
                .parse()
                .map_err(|_| Error::Malformed(format!("bad degree key `{deg}`")))?;
            if d < window.0 || d > window.1 {
                return Err(Error::Malformed(format!("degree {d} outside window")));
            }
            let list = list
                .as_array()
                .ok_or_else(|| Error::Malformed(format!("groups[{deg}] is not a list")))?;
            let mut gens = Vec::new();
            for g in list {
                let order = g
                    .get("order")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::Malformed(format!("generator in degree {d} lacks `order`")))?;
                let gen = g
                    .get("gen")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Malformed(format!("generator in degree {d} lacks `gen`")))?
                    .to_string();
                if order == 1 {
                    return Err(Error::Malformed(format!("generator `{gen}` has order 1")));
                }
                if index.insert(gen.clone(), (d, gens.len())).is_some() {
                    return Err(Error::Malformed(format!("duplicate generator `{gen}`")));
                }
                gens.push(CyclicGen { order, gen });
            }
            groups.insert(d, gens);
        }
        let unit = v
            .get("unit")
            .and_then(Value::as_str)
            .map(str::to_string)
            .or_else(|| index.contains_key("1").then(|| "1".to_string()));

        let mut table = GradedRingTable {
            name,
            window,
            connective,
            provenance,
            groups,
            index,
            action: HashMap::new(),
            unit,
        };
        if let Some(u) = &table.unit {
            match table.index.get(u) {
                Some(&(0, _)) => {}
                _ => return Err(Error::Malformed(format!("unit `{u}` is not a degree-0 generator"))),
            }
        }

        if let Some(list) = v.get("action") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Malformed("`action` is not a list".into()))?;
            for entry in list {
                let triple = entry
                    .as_array()
                    .filter(|t| t.len() == 3)
                    .ok_or_else(|| Error::Malformed("action entries are [g, h, product]".into()))?;
                let g = triple[0].as_str().ok_or_else(|| Error::Malformed("action factor must be a name".into()))?;
                let h = triple[1].as_str().ok_or_else(|| Error::Malformed("action factor must be a name".into()))?;
                let dg = table.gen_degree(g)?;
                let dh = table.gen_degree(h)?;
                let prod = table.element_from_json(&triple[2], dg + dh)?;
                table.action.insert((g.to_string(), h.to_string()), prod);
            }
        }
        table.audit_action()?;

        if let Some(list) = v.get("relations") {
            let list = list
                .as_array()
                .ok_or_else(|| Error::Malformed("`relations` is not a list".into()))?;
            for rel in list {
                table.check_relation(rel)?;
            }
        }
        Ok(table)
    }

    pub fn gen_degree(&self, gen: &str) -> Result<i64> {
        self.index
            .get(gen)
            .map(|&(d, _)| d)
            .ok_or_else(|| Error::UnknownName(gen.to_string()))
    }

    /// Generators of `π_d`; empty for the zero group.
    pub fn group(&self, d: i64) -> Result<&[CyclicGen]> {
        let (lo, hi) = self.window;
        if d > hi || (d < lo && !self.connective) {
            return Err(Error::OutOfWindow { degree: d, lo, hi });
        }
        Ok(self.groups.get(&d).map(Vec::as_slice).unwrap_or(&[]))
    }

    pub fn orders(&self, d: i64) -> Result<Vec<u64>> {
        Ok(self.group(d)?.iter().map(|g| g.order).collect())
    }

    /// All non-trivial degrees in the window, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = (i64, &[CyclicGen])> {
        self.groups
            .iter()
            .filter(|(_, g)| !g.is_empty())
            .map(|(d, g)| (*d, g.as_slice()))
    }

    pub fn zero(&self, d: i64) -> Result<Element> {
        Ok(Element {
            degree: d,
            coeffs: vec![0; self.group(d)?.len()],
        })
    }

    /// Builds an element and reduces it.
    pub fn element(&self, d: i64, coeffs: Vec<i64>) -> Result<Element> {
        let gens = self.group(d)?;
        if gens.len() != coeffs.len() {
            return Err(Error::InvalidArgument(format!(
                "degree {d} has {} generators, got {} coefficients",
                gens.len(),
                coeffs.len()
            )));
        }
        let coeffs = coeffs
            .into_iter()
            .zip(gens)
            .map(|(c, g)| if g.order == 0 { c } else { c.mod_floor(&(g.order as i64)) })
            .collect();
        Ok(Element { degree: d, coeffs })
    }

    /// `mult · gen`.
    pub fn gen_element(&self, gen: &str, mult: i64) -> Result<Element> {
        let &(d, i) = self
            .index
            .get(gen)
            .ok_or_else(|| Error::UnknownName(gen.to_string()))?;
        let mut c = vec![0; self.group(d)?.len()];
        c[i] = mult;
        self.element(d, c)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.degree != b.degree {
            return Err(Error::InvalidArgument(format!(
                "cannot add degrees {} and {}",
                a.degree, b.degree
            )));
        }
        self.element(a.degree, a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect())
    }

    pub fn scale(&self, a: &Element, n: i64) -> Result<Element> {
        self.element(a.degree, a.coeffs.iter().map(|x| x * n).collect())
    }

    fn gen_product(&self, g: &str, h: &str) -> Result<Element> {
        let d = self.gen_degree(g)? + self.gen_degree(h)?;
        if self.unit.as_deref() == Some(g) {
            return self.gen_element(h, 1);
        }
        if self.unit.as_deref() == Some(h) {
            return self.gen_element(g, 1);
        }
        if let Some(e) = self.action.get(&(g.to_string(), h.to_string())) {
            return Ok(e.clone());
        }
        if let Some(e) = self.action.get(&(h.to_string(), g.to_string())) {
            let sign = if (self.gen_degree(g)? * self.gen_degree(h)?) % 2 == 0 { 1 } else { -1 };
            return self.scale(e, sign);
        }
        self.zero(d)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        let d = a.degree + b.degree;
        let mut acc = self.zero(d)?;
        let ga = self.group(a.degree)?;
        let gb = self.group(b.degree)?;
        for (x, g) in a.coeffs.iter().zip(ga) {
            if *x == 0 {
                continue;
            }
            for (y, h) in b.coeffs.iter().zip(gb) {
                if *y == 0 {
                    continue;
                }
                let p = self.gen_product(&g.gen, &h.gen)?;
                acc = self.add(&acc, &self.scale(&p, x * y)?)?;
            }
        }
        Ok(acc)
    }

    /// Least `n ≥ 1` with `n·e = 0`, or ∞ when `e` has a free component.
    pub fn element_order(&self, e: &Element) -> Result<Order> {
        let gens = self.group(e.degree)?;
        let mut order = Order::Finite(1);
        for (c, g) in e.coeffs.iter().zip(gens) {
            if *c == 0 {
                continue;
            }
            if g.order == 0 {
                return Ok(Order::Infinite);
            }
            let o = g.order / (c.unsigned_abs().gcd(&g.order));
            order = order.lcm(Order::Finite(o));
        }
        Ok(order)
    }

    /// Order of a tuple of elements in the direct sum of their groups.
    pub fn direct_sum_order(&self, parts: &[Element]) -> Result<Order> {
        parts
            .iter()
            .try_fold(Order::Finite(1), |acc, e| Ok(acc.lcm(self.element_order(e)?)))
    }

    /// Parses `{"gen": "nu", "mult": 12}`, `"eta2"`, `0`, or a list of these
    /// (summed), as an element of degree `d`.
    pub fn element_from_json(&self, v: &Value, d: i64) -> Result<Element> {
        let e = match v {
            Value::Number(n) if n.as_i64() == Some(0) => self.zero(d)?,
            Value::String(s) => self.gen_element(s, 1)?,
            Value::Object(o) => {
                let gen = o
                    .get("gen")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Malformed("element object lacks `gen`".into()))?;
                let mult = match o.get("mult") {
                    None => 1,
                    Some(m) => m
                        .as_i64()
                        .ok_or_else(|| Error::Malformed("`mult` must be an integer".into()))?,
                };
                self.gen_element(gen, mult)?
            }
            Value::Array(items) => {
                let mut acc = self.zero(d)?;
                for it in items {
                    acc = self.add(&acc, &self.element_from_json(it, d)?)?;
                }
                acc
            }
            _ => return Err(Error::Malformed(format!("cannot read element from {v}"))),
        };
        if e.degree != d {
            return Err(Error::Malformed(format!(
                "element {v} has degree {}, expected {d}",
                e.degree
            )));
        }
        Ok(e)
    }

    /// Parses `"eta + 2nu"`, `"12*nu"`, `"0"`: a sum of terms, grouped by degree
    /// in ascending order.
    pub fn parse_elements(&self, spec: &str) -> Result<Vec<Element>> {
        let mut by_degree: BTreeMap<i64, Element> = BTreeMap::new();
        for term in spec.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(Error::Malformed(format!("empty term in `{spec}`")));
            }
            let split = term.find(|c: char| !(c.is_ascii_digit() || c == '-')).unwrap_or(term.len());
            let (num, rest) = term.split_at(split);
            let rest = rest.trim_start_matches('*').trim();
            let mult: i64 = match num {
                "" => 1,
                "-" => -1,
                n => n
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad multiplier in `{term}`")))?,
            };
            if rest.is_empty() {
                if mult == 0 {
                    continue;
                }
                return Err(Error::Malformed(format!("term `{term}` names no generator")));
            }
            let e = self.gen_element(rest, mult)?;
            let slot = match by_degree.remove(&e.degree) {
                Some(prev) => self.add(&prev, &e)?,
                None => e,
            };
            by_degree.insert(slot.degree, slot);
        }
        Ok(by_degree.into_values().collect())
    }

    pub fn format_element(&self, e: &Element) -> String {
        let gens = match self.group(e.degree) {
            Ok(g) => g,
            Err(_) => return "?".into(),
        };
        let terms: Vec<String> = e
            .coeffs
            .iter()
            .zip(gens)
            .filter(|(c, _)| **c != 0)
            .map(|(c, g)| if *c == 1 { g.gen.clone() } else { format!("{c}{}", g.gen) })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    // Each listed product must be killed by the orders of both factors.
    fn audit_action(&self) -> Result<()> {
        for ((g, h), e) in &self.action {
            for f in [g, h] {
                let &(d, i) = &self.index[f];
                let o = self.group(d)?[i].order;
                if o != 0 && !self.scale(e, o as i64)?.is_zero() {
                    return Err(Error::InconsistentTable(format!(
                        "{g}·{h} = {} is not killed by the order {o} of {f}",
                        self.format_element(e)
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_relation(&self, rel: &Value) -> Result<()> {
        let lhs = rel
            .get("lhs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("relation lacks `lhs` list".into()))?;
        let mut acc: Option<Element> = None;
        let mut names = Vec::new();
        for f in lhs {
            let name = f.as_str().ok_or_else(|| Error::Malformed("relation factors are names".into()))?;
            names.push(name.to_string());
            let e = self.gen_element(name, 1)?;
            acc = Some(match acc {
                None => e,
                Some(a) => self.mul(&a, &e)?,
            });
        }
        let acc = acc.ok_or_else(|| Error::Malformed("empty relation".into()))?;
        let rhs = self.element_from_json(rel.get("rhs").unwrap_or(&Value::from(0)), acc.degree)?;
        if acc != rhs {
            return Err(Error::InconsistentTable(format!(
                "relation {} = {} fails: the action gives {}",
                names.join("·"),
                self.format_element(&rhs),
                self.format_element(&acc)
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GradedRingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}, {}]", self.name, self.window.0, self.window.1)
    }
}
