//! JSON instance files.
//!
//! ```json
//! {
//!   "sets": { "C": ["0", "1"] },
//!   "functions": {
//!     "t": { "domain": "E", "codomain": "C", "map": [[["0", "1"], "1"], ...] }
//!   },
//!   "monoidale": { "carrier": "C", "E": "E", "s": "s", ... }
//! }
//! ```
//!
//! Elements are strings, two-element arrays for pairs, and `{"tuple": [...]}`
//! for tuples of other lengths. A map is a list of `[input, output]` entries
//! or, when every input is a string, an object. A function whose domain is
//! not listed under `sets` gets the set of its map keys, in order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::category::FinCat;
use crate::characterization::RStructure;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::examples::FinMonoid;
use crate::finset::{FinFn, FinSet};
use crate::skew::SkewMonoidaleData;

/// The contents of an instance file.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Instance {
    Monoidale(SkewMonoidaleData),
    Category(FinCat),
    RStructure(RStructure),
    Monoid(FinMonoid),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Monoidale(_) => "monoidale",
            Instance::Category(_) => "category",
            Instance::RStructure(_) => "rstructure",
            Instance::Monoid(_) => "monoid",
        }
    }

    /// Equality of the described data, ignoring element order.
    pub fn same_as(&self, other: &Instance) -> bool {
        match (self, other) {
            (Instance::Monoidale(a), Instance::Monoidale(b)) => a == b,
            (Instance::Category(a), Instance::Category(b)) => a.same_as(b),
            (Instance::RStructure(a), Instance::RStructure(b)) => a.same_as(b),
            (Instance::Monoid(a), Instance::Monoid(b)) => {
                a.carrier == b.carrier && a.mul == b.mul && a.unit == b.unit
            }
            _ => false,
        }
    }
}

pub fn element_to_json(e: &Element) -> Value {
    match e {
        Element::Atom(s) => Value::String(s.to_string()),
        Element::Pair(p) => json!([element_to_json(&p.0), element_to_json(&p.1)]),
        Element::Tuple(items) => {
            json!({ "tuple": items.iter().map(element_to_json).collect::<Vec<_>>() })
        }
    }
}

pub fn element_from_json(v: &Value) -> Result<Element> {
    match v {
        Value::String(s) => Ok(Element::atom(s)),
        Value::Array(items) if items.len() == 2 => Ok(Element::pair(
            element_from_json(&items[0])?,
            element_from_json(&items[1])?,
        )),
        Value::Object(o) if o.len() == 1 && o.contains_key("tuple") => match &o["tuple"] {
            Value::Array(items) => Ok(Element::tuple(
                items
                    .iter()
                    .map(element_from_json)
                    .collect::<Result<Vec<_>>>()?,
            )),
            _ => Err(Error::Parse("\"tuple\" must hold an array".into())),
        },
        other => Err(Error::Parse(format!("not an element: {other}"))),
    }
}

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    domain: String,
    codomain: String,
    map: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidaleRepr {
    carrier: String,
    #[serde(rename = "E")]
    e: String,
    s: String,
    r: String,
    t: String,
    #[serde(rename = "U")]
    u: String,
    j: String,
    phi: String,
    psi: String,
    tau: String,
    delta: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryRepr {
    objects: String,
    arrows: String,
    dom: String,
    cod: String,
    id: String,
    comp: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RStructureRepr {
    category: CategoryRepr,
    #[serde(rename = "R_objects")]
    r_objects: String,
    #[serde(rename = "R_arrows")]
    r_arrows: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidRepr {
    carrier: String,
    mul: String,
    unit: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    #[serde(default)]
    sets: Map<String, Value>,
    #[serde(default)]
    functions: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monoidale: Option<MonoidaleRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    category: Option<CategoryRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rstructure: Option<RStructureRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monoid: Option<MonoidRepr>,
}

struct Resolver<'a> {
    file: &'a FileRepr,
}

impl Resolver<'_> {
    fn set(&self, name: &str) -> Result<FinSet> {
        let v = self
            .file
            .sets
            .get(name)
            .ok_or_else(|| Error::Resolution(format!("unknown set {name:?}")))?;
        let Value::Array(items) = v else {
            return Err(Error::Parse(format!("set {name:?} must be an array")));
        };
        FinSet::new(
            items
                .iter()
                .map(element_from_json)
                .collect::<Result<Vec<_>>>()?,
        )
    }

    fn entries(&self, name: &str, map: &Value) -> Result<Vec<(Element, Element)>> {
        match map {
            Value::Object(o) => o
                .iter()
                .map(|(k, v)| Ok((Element::atom(k), element_from_json(v)?)))
                .collect(),
            Value::Array(items) => items
                .iter()
                .map(|entry| match entry {
                    Value::Array(kv) if kv.len() == 2 => {
                        Ok((element_from_json(&kv[0])?, element_from_json(&kv[1])?))
                    }
                    _ => Err(Error::Parse(format!(
                        "function {name:?}: map entries must be [input, output]"
                    ))),
                })
                .collect(),
            _ => Err(Error::Parse(format!(
                "function {name:?}: map must be an object or an array"
            ))),
        }
    }

    fn function(&self, name: &str) -> Result<FinFn> {
        let v = self
            .file
            .functions
            .get(name)
            .ok_or_else(|| Error::Resolution(format!("unknown function {name:?}")))?;
        let repr: FunctionRepr = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("function {name:?}: {e}")))?;
        let entries = self.entries(name, &repr.map)?;
        let codomain = self.set(&repr.codomain)?;
        let domain = if self.file.sets.contains_key(&repr.domain) {
            self.set(&repr.domain)?
        } else {
            FinSet::new(entries.iter().map(|(k, _)| k.clone()))?
        };
        FinFn::new(domain, codomain, entries)
            .map_err(|e| Error::Resolution(format!("function {name:?}: {e}")))
    }

    fn category(&self, c: &CategoryRepr) -> Result<FinCat> {
        let comp = self.function(&c.comp)?;
        let entries = comp.iter().map(|(p, h)| {
            let (f, g) = p
                .as_pair()
                .ok_or_else(|| Error::Parse(format!("composition is keyed by pairs, found {p}")))?;
            Ok(((f.clone(), g.clone()), h.clone()))
        });
        let entries = entries.collect::<Result<Vec<_>>>()?;
        let cat = FinCat::new(
            self.set(&c.objects)?,
            self.set(&c.arrows)?,
            self.function(&c.dom)?,
            self.function(&c.cod)?,
            self.function(&c.id)?,
            entries,
        )?;
        Ok(cat)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: FileRepr = serde_json::from_str(text)?;
    let sections = [
        file.monoidale.is_some(),
        file.category.is_some(),
        file.rstructure.is_some(),
        file.monoid.is_some(),
    ];
    if sections.iter().filter(|&&b| b).count() != 1 {
        return Err(Error::Parse(
            "exactly one of monoidale, category, rstructure, monoid is required".into(),
        ));
    }
    let res = Resolver { file: &file };
    if let Some(m) = &file.monoidale {
        return Ok(Instance::Monoidale(SkewMonoidaleData::new(
            res.set(&m.carrier)?,
            res.set(&m.e)?,
            res.function(&m.s)?,
            res.function(&m.r)?,
            res.function(&m.t)?,
            res.set(&m.u)?,
            res.function(&m.j)?,
            res.function(&m.phi)?,
            res.function(&m.psi)?,
            res.function(&m.tau)?,
            res.function(&m.delta)?,
        )?));
    }
    if let Some(c) = &file.category {
        return Ok(Instance::Category(res.category(c)?));
    }
    if let Some(r) = &file.rstructure {
        let cat = res.category(&r.category)?;
        cat.require_valid()?;
        return Ok(Instance::RStructure(RStructure::new(
            cat,
            res.function(&r.r_objects)?,
            res.function(&r.r_arrows)?,
        )?));
    }
    let m = file.monoid.as_ref().expect("one section is present");
    Ok(Instance::Monoid(FinMonoid::new(
        res.set(&m.carrier)?,
        res.function(&m.mul)?,
        element_from_json(&m.unit)?,
    )?))
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

#[derive(Default)]
struct Writer {
    sets: Map<String, Value>,
    functions: Map<String, Value>,
}

impl Writer {
    fn set(&mut self, name: &str, s: &FinSet) -> String {
        self.sets.insert(
            name.into(),
            Value::Array(s.iter().map(element_to_json).collect()),
        );
        name.into()
    }

    fn function(&mut self, name: &str, f: &FinFn, domain: &str, codomain: &str) -> String {
        let map = if f.domain().iter().all(Element::is_atom) {
            Value::Object(
                f.iter()
                    .map(|(k, v)| (k.as_atom().unwrap().to_string(), element_to_json(v)))
                    .collect(),
            )
        } else {
            Value::Array(
                f.iter()
                    .map(|(k, v)| json!([element_to_json(k), element_to_json(v)]))
                    .collect(),
            )
        };
        let repr = FunctionRepr {
            domain: domain.into(),
            codomain: codomain.into(),
            map,
        };
        self.functions
            .insert(name.into(), serde_json::to_value(repr).expect("plain data"));
        name.into()
    }

    fn category(&mut self, c: &FinCat) -> CategoryRepr {
        let objects = self.set("objects", c.objects());
        let arrows = self.set("arrows", c.arrows());
        let comp = c.comp_fn().unwrap_or_else(|_| {
            let entries = c.comp_entries();
            let dom = FinSet::new(
                entries
                    .iter()
                    .map(|((f, g), _)| Element::pair(f.clone(), g.clone())),
            )
            .expect("distinct keys");
            FinFn::new(
                dom,
                c.arrows().clone(),
                entries
                    .into_iter()
                    .map(|((f, g), h)| (Element::pair(f, g), h)),
            )
            .expect("entries of a category")
        });
        CategoryRepr {
            dom: self.function("dom", c.dom_fn(), &arrows, &objects),
            cod: self.function("cod", c.cod_fn(), &arrows, &objects),
            id: self.function("id", c.id_fn(), &objects, &arrows),
            comp: self.function("comp", &comp, "composable", &arrows),
            objects,
            arrows,
        }
    }

    fn finish(self) -> FileRepr {
        FileRepr {
            sets: self.sets,
            functions: self.functions,
            monoidale: None,
            category: None,
            rstructure: None,
            monoid: None,
        }
    }
}

/// Renders an instance as a JSON value that [`parse_instance`] reads back.
pub fn instance_to_json(inst: &Instance) -> Value {
    let mut w = Writer::default();
    let file = match inst {
        Instance::Monoidale(m) => {
            let c = w.set("C", &m.c);
            let e = w.set("E", &m.e);
            let u = w.set("U", &m.u);
            let repr = MonoidaleRepr {
                s: w.function("s", &m.s, &e, &c),
                r: w.function("r", &m.r, &e, &c),
                t: w.function("t", &m.t, &e, &c),
                j: w.function("j", &m.j, &u, &c),
                phi: w.function("phi", &m.phi, &c, &e),
                psi: w.function("psi", &m.psi, &c, &u),
                tau: w.function("tau", &m.tau, "X", &e),
                delta: w.function("delta", &m.delta, "X", &e),
                carrier: c,
                e,
                u,
            };
            FileRepr {
                monoidale: Some(repr),
                ..w.finish()
            }
        }
        Instance::Category(c) => {
            let repr = w.category(c);
            FileRepr {
                category: Some(repr),
                ..w.finish()
            }
        }
        Instance::RStructure(rs) => {
            let category = w.category(&rs.cat);
            let r_objects = w.function(
                "R_objects",
                rs.r_objects(),
                &category.arrows,
                &category.objects,
            );
            let r_arrows = w.function("R_arrows", rs.r_arrows(), "composable", &category.arrows);
            FileRepr {
                rstructure: Some(RStructureRepr {
                    category,
                    r_objects,
                    r_arrows,
                }),
                ..w.finish()
            }
        }
        Instance::Monoid(m) => {
            let carrier = w.set("M", &m.carrier);
            let mul = w.function("mul", &m.mul, "MxM", &carrier);
            FileRepr {
                monoid: Some(MonoidRepr {
                    carrier,
                    mul,
                    unit: element_to_json(&m.unit),
                }),
                ..w.finish()
            }
        }
    };
    serde_json::to_value(file).expect("plain data")
}

/// Indented JSON with object-free arrays kept on one line.
pub fn print_instance(inst: &Instance) -> String {
    let mut out = String::new();
    render(&instance_to_json(inst), 0, &mut out);
    out
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(o) if !o.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items)
            if items.len() > 1
                && items.iter().any(|x| matches!(x, Value::Array(_)))
                && !has_object(v) =>
        {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&x.to_string());
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) if has_object(v) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, print_instance(inst) + "\n")
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{interval_category, monoid_to_monoidale, t_category, zmod};

    fn roundtrip(inst: Instance) {
        let text = print_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert!(inst.same_as(&back), "{text}");
    }

    #[test]
    fn all_kinds_roundtrip() {
        roundtrip(Instance::Monoidale(monoid_to_monoidale(&zmod(2))));
        roundtrip(Instance::Category(interval_category()));
        roundtrip(Instance::Category(t_category(&zmod(2))));
        roundtrip(Instance::Monoid(zmod(3)));
        roundtrip(Instance::RStructure(
            RStructure::cod(&interval_category()).unwrap(),
        ));
    }

    #[test]
    fn elements() {
        let e = Element::tuple([Element::atom("a"), Element::pair("b".into(), "c".into())]);
        assert_eq!(element_from_json(&element_to_json(&e)).unwrap(), e);
        assert!(element_from_json(&json!(3)).is_err());
        assert!(element_from_json(&json!(["a"])).is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_instance("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_instance("{}"), Err(Error::Parse(_))));
        let missing = r#"{"sets": {}, "monoid": {"carrier": "M", "mul": "m", "unit": "e"}}"#;
        assert!(matches!(parse_instance(missing), Err(Error::Resolution(_))));
        let partial = r#"{"sets": {"M": ["e", "a"]},
            "functions": {"m": {"domain": "MM", "codomain": "M", "map": [[["e","e"],"e"]]}},
            "monoid": {"carrier": "M", "mul": "m", "unit": "e"}}"#;
        assert!(parse_instance(partial).is_err());
    }

    #[test]
    fn object_maps_are_accepted() {
        let text = r#"{"sets": {"objects": ["x"], "arrows": ["1"]},
            "functions": {
              "dom": {"domain": "arrows", "codomain": "objects", "map": {"1": "x"}},
              "cod": {"domain": "arrows", "codomain": "objects", "map": {"1": "x"}},
              "id": {"domain": "objects", "codomain": "arrows", "map": {"x": "1"}},
              "comp": {"domain": "P", "codomain": "arrows", "map": [[["1", "1"], "1"]]}
            },
            "category": {"objects": "objects", "arrows": "arrows", "dom": "dom", "cod": "cod", "id": "id", "comp": "comp"}}"#;
        let Instance::Category(c) = parse_instance(text).unwrap() else {
            panic!()
        };
        assert!(c.is_valid());
    }
}
