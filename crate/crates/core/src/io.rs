//! Text formats: coalgebra and comodule files (JSON) and graph dumps (DOT).
//!
//! A coalgebra file gives the quiver in the orientation in which comodules
//! act, either explicitly or as a named template:
//!
//! ```json
//! {"quiver": {"vertices": ["x", "y"], "arrows": [{"id": "a", "src": "x", "tgt": "y"}]},
//!  "truncation_length": 1}
//! {"template": {"kind": "cycle", "n": 3}, "truncation_length": 1}
//! ```
//!
//! A comodule file lists dimensions per vertex and one matrix per arrow,
//! of shape `dim(tgt) x dim(src)`. Omitted arrows are zero; integer entries
//! are reduced mod `p`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coalg::{Coalgebra, Quiver, QuiverSource, Side, TemplateKind, DEFAULT_WINDOW};
use crate::comod::Comodule;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix};
use crate::itfunc::Engine;
use crate::kschmidt::ClassId;

/// Vertex and arrow names may be written as strings or integers.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum Name {
    Int(i64),
    Str(String),
}

impl Name {
    fn text(&self) -> String {
        match self {
            Name::Int(i) => i.to_string(),
            Name::Str(s) => s.clone(),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ArrowSpec {
    id: Name,
    src: Name,
    tgt: Name,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct QuiverSpec {
    vertices: Vec<Name>,
    arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct TemplateSpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    window: Option<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CoalgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quiver: Option<QuiverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    template: Option<TemplateSpec>,
    truncation_length: usize,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ComoduleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<Side>,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<i64>>>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Reads a coalgebra. `window` overrides the file's window for infinite
/// templates; without either the default window is used.
pub fn parse_coalgebra(text: &str, window: Option<usize>) -> Result<Coalgebra> {
    let file: CoalgebraFile = serde_json::from_str(text).map_err(parse_err)?;
    match (file.quiver, file.template) {
        (Some(q), None) => {
            let vertices = q.vertices.iter().map(Name::text).collect();
            let arrows = q
                .arrows
                .iter()
                .map(|a| (a.id.text(), a.src.text(), a.tgt.text()))
                .collect();
            Coalgebra::finite(Quiver::new(vertices, arrows)?, file.truncation_length)
        }
        (None, Some(t)) => {
            let kind = match t.kind.as_str() {
                "a_infinity_toward_zero" => TemplateKind::AInfinityTowardZero,
                "a_infinity_away_from_zero" => TemplateKind::AInfinityAwayFromZero,
                "cycle" => TemplateKind::Cycle(
                    t.n.ok_or_else(|| Error::Parse("cycle template needs `n`".into()))?,
                ),
                other => return Err(Error::Parse(format!("unknown template kind `{other}`"))),
            };
            let c = match kind {
                TemplateKind::Cycle(n) => Coalgebra::cycle(n, file.truncation_length)?,
                _ => Coalgebra::template(
                    kind,
                    window.or(t.window).unwrap_or(DEFAULT_WINDOW),
                    file.truncation_length,
                )?,
            };
            Ok(c)
        }
        _ => Err(Error::Parse(
            "a coalgebra file needs exactly one of `quiver` and `template`".into(),
        )),
    }
}

pub fn coalgebra_to_json(c: &Coalgebra) -> Value {
    let file = match c.source() {
        QuiverSource::Finite(q) => CoalgebraFile {
            quiver: Some(QuiverSpec {
                vertices: q.vertex_labels().iter().cloned().map(Name::Str).collect(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| ArrowSpec {
                        id: Name::Str(q.arrow_label(a.id).to_string()),
                        src: Name::Str(q.vertex_labels()[a.src].clone()),
                        tgt: Name::Str(q.vertex_labels()[a.tgt].clone()),
                    })
                    .collect(),
            }),
            template: None,
            truncation_length: c.truncation(),
        },
        QuiverSource::Template { kind, .. } => CoalgebraFile {
            quiver: None,
            template: Some(TemplateSpec {
                kind: kind.name().to_string(),
                n: match kind {
                    TemplateKind::Cycle(n) => Some(*n),
                    _ => None,
                },
                window: c.window(),
            }),
            truncation_length: c.truncation(),
        },
    };
    serde_json::to_value(file).expect("serializable")
}

/// Reads a comodule over `coalg`. The file's side, when present, must agree
/// with `side`; one of the two must be given. Infinite templates are
/// widened so the support is saturated.
pub fn parse_comodule(
    text: &str,
    coalg: &Coalgebra,
    field: Field,
    side: Option<Side>,
) -> Result<Comodule> {
    let file: ComoduleFile = serde_json::from_str(text).map_err(parse_err)?;
    let side = match (file.side, side) {
        (Some(a), Some(b)) if a != b => return Err(Error::SideMismatch(a, b)),
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => return Err(Error::Parse("comodule side is not specified".into())),
    };
    let mut dims = BTreeMap::new();
    for (label, &d) in &file.dims {
        dims.insert(coalg.vertex_by_label(label)?, d);
    }
    let support: Vec<_> = dims
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&v, _)| v)
        .collect();
    let coalg = coalg.covering(&support, coalg.truncation() + 1);
    let mut maps = BTreeMap::new();
    for (label, rows) in &file.maps {
        let id = arrow_id(&coalg, label)?;
        let a = coalg
            .arrow(id)
            .ok_or_else(|| Error::UnknownArrow(label.clone()))?;
        let (r, c) = (
            dims.get(&a.tgt).copied().unwrap_or(0),
            dims.get(&a.src).copied().unwrap_or(0),
        );
        let got_cols = rows.first().map_or(0, Vec::len);
        if rows.len() != r
            || rows.iter().any(|row| row.len() != got_cols)
            || (r > 0 && got_cols != c)
        {
            return Err(Error::Shape {
                arrow: label.clone(),
                rows: r,
                cols: c,
                got_rows: rows.len(),
                got_cols,
            });
        }
        let m = if r == 0 {
            Matrix::zeros(field, 0, c)
        } else {
            Matrix::from_rows(field, rows)
        };
        maps.insert(id, m);
    }
    Comodule::new(coalg, side, field, dims, maps)
}

/// Template arrows may be named `a3` or `3`.
fn arrow_id(c: &Coalgebra, label: &str) -> Result<usize> {
    c.arrow_by_label(label).or_else(|e| match c.source() {
        QuiverSource::Template { .. } => c.arrow_by_label(&format!("a{label}")),
        QuiverSource::Finite(_) => Err(e),
    })
}

pub fn comodule_to_json(m: &Comodule) -> Value {
    let c = m.coalgebra();
    let file = ComoduleFile {
        side: Some(m.side()),
        dims: m
            .dims()
            .iter()
            .map(|(&v, &d)| (c.vertex_label(v), d))
            .collect(),
        maps: m
            .maps()
            .iter()
            .filter(|(_, a)| !a.is_zero())
            .map(|(&id, a)| {
                let rows = (0..a.rows())
                    .map(|i| a.row(i).iter().map(|&x| i64::from(x)).collect())
                    .collect();
                (c.arrow_label(id), rows)
            })
            .collect(),
    };
    serde_json::to_value(file).expect("serializable")
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The quiver (window vertices only for infinite templates).
pub fn quiver_dot(c: &Coalgebra) -> String {
    let mut out = String::from("digraph quiver {\n");
    let vertices = c.window_vertices();
    for &v in &vertices {
        let _ = writeln!(out, "  {};", quote(&c.vertex_label(v)));
    }
    for &v in &vertices {
        for a in c.arrows_out(v) {
            if c.window().is_none_or(|w| a.tgt <= w) {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label={}];",
                    quote(&c.vertex_label(a.src)),
                    quote(&c.vertex_label(a.tgt)),
                    quote(&c.arrow_label(a.id))
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

/// The cosyzygy-class graph reachable from `m` within `steps` applications.
/// Nodes are registry ids; classes sent to zero point at a `0` node.
pub fn orbit_dot(engine: &mut Engine, m: &Comodule, steps: usize) -> Result<String> {
    let mut out = String::from("digraph orbit {\n");
    let start = engine.class_of(m)?;
    if start.is_zero() {
        out.push_str("  empty [shape=plaintext, label=\"no non-injective summands\"];\n}\n");
        return Ok(out);
    }
    let mut seen: Vec<ClassId> = start.support().collect();
    let mut frontier = seen.clone();
    let mut edges = Vec::new();
    let mut reaches_zero = false;
    for _ in 0..steps {
        let mut next = Vec::new();
        for &id in &frontier {
            let image = engine.omega_of(id)?;
            if image.is_zero() {
                edges.push((id, None, 1));
                reaches_zero = true;
            }
            for (&t, &k) in image.coords() {
                edges.push((id, Some(t), k));
                if !seen.contains(&t) {
                    seen.push(t);
                    next.push(t);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    for &id in &seen {
        let e = engine.registry().get(id);
        let dims = e.representative.dims_string();
        let _ = writeln!(
            out,
            "  c{} [label={}];",
            id,
            quote(&format!("#{} {}", id, dims))
        );
    }
    if reaches_zero {
        out.push_str("  zero [shape=plaintext, label=\"0\"];\n");
    }
    edges.sort();
    edges.dedup();
    for (s, t, k) in edges {
        let target = t.map_or("zero".to_string(), |t| format!("c{}", t));
        let label = if k == 1 {
            String::new()
        } else {
            format!(" [label=\"{k}\"]")
        };
        let _ = writeln!(out, "  c{} -> {target}{label};", s);
    }
    out.push_str("}\n");
    Ok(out)
}
