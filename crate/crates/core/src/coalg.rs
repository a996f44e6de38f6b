//! Path-truncated quiver coalgebras `C_L(Q)`: the span of paths of length at
//! most `L` in a quiver `Q`, either finite or given by a rule (the two
//! orientations of the infinite linear quiver, and oriented cycles).
//!
//! A presentation records the quiver in the orientation in which comodules
//! act: a comodule is a representation of that quiver in which every path of
//! length `L + 1` acts as zero. Right comodules of `C_L(Q)` are
//! representations of the opposite quiver, so a presentation describing them
//! carries `Q^op` (for the linear quiver `... -> 2 -> 1 -> 0`, right comodules
//! are described by [`TemplateKind::AInfinityAwayFromZero`]). The side tag is
//! carried through every computation and checked for consistency.
//!
//! Infinite templates are evaluated lazily by their arrow rule. The window is
//! the finite range `{0, ..., N}` used for reporting and for deciding which
//! simples are far enough from the truncation boundary to be trusted.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type ArrowId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(Error::Parse(format!(
                "side must be `left` or `right`, got `{other}`"
            ))),
        }
    }
}

/// Rule-based infinite (or cyclic) quivers.
///
/// Arrow `i` is: `i+1 -> i` for [`AInfinityTowardZero`](Self::AInfinityTowardZero),
/// `i -> i+1` for [`AInfinityAwayFromZero`](Self::AInfinityAwayFromZero), and
/// `i -> i+1 mod n` for [`Cycle`](Self::Cycle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemplateKind {
    AInfinityTowardZero,
    AInfinityAwayFromZero,
    Cycle(usize),
}

impl TemplateKind {
    pub fn name(self) -> &'static str {
        match self {
            TemplateKind::AInfinityTowardZero => "a_infinity_toward_zero",
            TemplateKind::AInfinityAwayFromZero => "a_infinity_away_from_zero",
            TemplateKind::Cycle(_) => "cycle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub id: ArrowId,
    pub src: Vertex,
    pub tgt: Vertex,
}

/// A finite quiver with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrow_labels: Vec<String>,
    arrows: Vec<Arrow>,
    out_adj: Vec<Vec<ArrowId>>,
    in_adj: Vec<Vec<ArrowId>>,
}

impl Quiver {
    /// `arrows` are `(label, source label, target label)`.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate vertex `{v}`"
                )));
            }
        }
        let index = |label: &str| -> Result<Vertex> {
            vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::UnknownVertex(label.to_string()))
        };
        let mut arrow_labels = Vec::with_capacity(arrows.len());
        let mut out = Vec::with_capacity(arrows.len());
        let mut seen_arrows = BTreeSet::new();
        for (id, (label, src, tgt)) in arrows.into_iter().enumerate() {
            if !seen_arrows.insert(label.clone()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate arrow `{label}`"
                )));
            }
            out.push(Arrow {
                id,
                src: index(&src)?,
                tgt: index(&tgt)?,
            });
            arrow_labels.push(label);
        }
        let mut out_adj = vec![Vec::new(); vertices.len()];
        let mut in_adj = vec![Vec::new(); vertices.len()];
        for a in &out {
            out_adj[a.src].push(a.id);
            in_adj[a.tgt].push(a.id);
        }
        Ok(Quiver {
            vertices,
            arrow_labels,
            arrows: out,
            out_adj,
            in_adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow_label(&self, id: ArrowId) -> &str {
        &self.arrow_labels[id]
    }

    fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                (
                    self.arrow_labels[a.id].clone(),
                    self.vertices[a.tgt].clone(),
                    self.vertices[a.src].clone(),
                )
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver is valid")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverSource {
    Finite(Quiver),
    Template { kind: TemplateKind, window: usize },
}

/// A path in the acting orientation; `arrows` are listed from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: Vertex,
    pub arrows: Vec<ArrowId>,
    pub end: Vertex,
}

impl Path {
    pub fn trivial(v: Vertex) -> Self {
        Path {
            start: v,
            arrows: Vec::new(),
            end: v,
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleLabel {
    pub vertex: Vertex,
    pub side: Side,
}

/// `C_L(Q)` for a quiver `Q` given in the acting orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    source: QuiverSource,
    truncation: usize,
}

pub const DEFAULT_WINDOW: usize = 20;

impl Coalgebra {
    pub fn finite(quiver: Quiver, truncation: usize) -> Result<Self> {
        check_truncation(truncation)?;
        Ok(Coalgebra {
            source: QuiverSource::Finite(quiver),
            truncation,
        })
    }

    pub fn template(kind: TemplateKind, window: usize, truncation: usize) -> Result<Self> {
        check_truncation(truncation)?;
        if let TemplateKind::Cycle(0) = kind {
            return Err(Error::InvalidPresentation(
                "cycle length must be at least 1".into(),
            ));
        }
        Ok(Coalgebra {
            source: QuiverSource::Template { kind, window },
            truncation,
        })
    }

    pub fn a_infinity_toward_zero(window: usize, truncation: usize) -> Result<Self> {
        Self::template(TemplateKind::AInfinityTowardZero, window, truncation)
    }

    pub fn a_infinity_away_from_zero(window: usize, truncation: usize) -> Result<Self> {
        Self::template(TemplateKind::AInfinityAwayFromZero, window, truncation)
    }

    pub fn cycle(n: usize, truncation: usize) -> Result<Self> {
        Self::template(TemplateKind::Cycle(n), n.saturating_sub(1), truncation)
    }

    /// The quiver with `n` vertices and no arrows (a cosemisimple coalgebra).
    pub fn discrete(n: usize) -> Result<Self> {
        let q = Quiver::new((0..n).map(|i| i.to_string()).collect(), Vec::new())?;
        Self::finite(q, 1)
    }

    pub fn source(&self) -> &QuiverSource {
        &self.source
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn template_kind(&self) -> Option<TemplateKind> {
        match &self.source {
            QuiverSource::Template { kind, .. } => Some(*kind),
            QuiverSource::Finite(_) => None,
        }
    }

    /// Window of an infinite template; `None` for finite quivers and cycles.
    pub fn window(&self) -> Option<usize> {
        match &self.source {
            QuiverSource::Template { kind, window } if is_infinite(*kind) => Some(*window),
            _ => None,
        }
    }

    /// Same quiver and truncation, ignoring the window.
    pub fn same_algebra(&self, other: &Coalgebra) -> bool {
        if self.truncation != other.truncation {
            return false;
        }
        match (&self.source, &other.source) {
            (QuiverSource::Finite(a), QuiverSource::Finite(b)) => a == b,
            (QuiverSource::Template { kind: a, .. }, QuiverSource::Template { kind: b, .. }) => {
                a == b
            }
            _ => false,
        }
    }

    pub fn with_window(&self, window: usize) -> Coalgebra {
        let mut c = self.clone();
        if let QuiverSource::Template { kind, window: w } = &mut c.source {
            if is_infinite(*kind) {
                *w = window;
            }
        }
        c
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        match &self.source {
            QuiverSource::Finite(q) => v < q.vertex_count(),
            QuiverSource::Template {
                kind: TemplateKind::Cycle(n),
                ..
            } => v < *n,
            QuiverSource::Template { .. } => true,
        }
    }

    pub fn arrow(&self, id: ArrowId) -> Option<Arrow> {
        match &self.source {
            QuiverSource::Finite(q) => q.arrows.get(id).copied(),
            QuiverSource::Template { kind, .. } => match *kind {
                TemplateKind::AInfinityTowardZero => Some(Arrow {
                    id,
                    src: id + 1,
                    tgt: id,
                }),
                TemplateKind::AInfinityAwayFromZero => Some(Arrow {
                    id,
                    src: id,
                    tgt: id + 1,
                }),
                TemplateKind::Cycle(n) => (id < n).then(|| Arrow {
                    id,
                    src: id,
                    tgt: (id + 1) % n,
                }),
            },
        }
    }

    pub fn arrows_out(&self, v: Vertex) -> Vec<Arrow> {
        if !self.has_vertex(v) {
            return Vec::new();
        }
        match &self.source {
            QuiverSource::Finite(q) => q.out_adj[v].iter().map(|&a| q.arrows[a]).collect(),
            QuiverSource::Template { kind, .. } => match *kind {
                TemplateKind::AInfinityTowardZero => match v {
                    0 => Vec::new(),
                    _ => vec![self.arrow(v - 1).unwrap()],
                },
                TemplateKind::AInfinityAwayFromZero | TemplateKind::Cycle(_) => {
                    vec![self.arrow(v).unwrap()]
                }
            },
        }
    }

    pub fn arrows_in(&self, v: Vertex) -> Vec<Arrow> {
        if !self.has_vertex(v) {
            return Vec::new();
        }
        match &self.source {
            QuiverSource::Finite(q) => q.in_adj[v].iter().map(|&a| q.arrows[a]).collect(),
            QuiverSource::Template { kind, .. } => match *kind {
                TemplateKind::AInfinityTowardZero => vec![self.arrow(v).unwrap()],
                TemplateKind::AInfinityAwayFromZero => match v {
                    0 => Vec::new(),
                    _ => vec![self.arrow(v - 1).unwrap()],
                },
                TemplateKind::Cycle(n) => vec![self.arrow((v + n - 1) % n).unwrap()],
            },
        }
    }

    pub fn vertex_label(&self, v: Vertex) -> String {
        match &self.source {
            QuiverSource::Finite(q) => q.vertices[v].clone(),
            QuiverSource::Template { .. } => v.to_string(),
        }
    }

    pub fn vertex_by_label(&self, label: &str) -> Result<Vertex> {
        let found = match &self.source {
            QuiverSource::Finite(q) => q.vertices.iter().position(|v| v == label),
            QuiverSource::Template { .. } => {
                label.parse::<Vertex>().ok().filter(|&v| self.has_vertex(v))
            }
        };
        found.ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_label(&self, id: ArrowId) -> String {
        match &self.source {
            QuiverSource::Finite(q) => q.arrow_labels[id].clone(),
            QuiverSource::Template { .. } => format!("a{id}"),
        }
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<ArrowId> {
        let found = match &self.source {
            QuiverSource::Finite(q) => q.arrow_labels.iter().position(|a| a == label),
            QuiverSource::Template { .. } => label
                .strip_prefix('a')
                .and_then(|s| s.parse::<ArrowId>().ok())
                .filter(|&id| self.arrow(id).is_some()),
        };
        found.ok_or_else(|| Error::UnknownArrow(label.to_string()))
    }

    /// Vertices of the finite quiver, the cycle, or the window `{0..=N}`.
    pub fn window_vertices(&self) -> Vec<Vertex> {
        match &self.source {
            QuiverSource::Finite(q) => (0..q.vertex_count()).collect(),
            QuiverSource::Template { kind, window } => match *kind {
                TemplateKind::Cycle(n) => (0..n).collect(),
                _ => (0..=*window).collect(),
            },
        }
    }

    /// Window vertices at distance greater than `margin` from the window's
    /// truncation boundary. Finite quivers and cycles have no such boundary.
    pub fn interior_vertices(&self, margin: usize) -> Vec<Vertex> {
        match self.window() {
            Some(w) => (0..=w).filter(|&v| w - v > margin).collect(),
            None => self.window_vertices(),
        }
    }

    pub fn is_interior(&self, v: Vertex, margin: usize) -> bool {
        match self.window() {
            Some(w) => v <= w && w - v > margin,
            None => self.has_vertex(v),
        }
    }

    /// Finite presentation covering the window; identity on finite quivers.
    pub fn materialize(&self, window: usize) -> Coalgebra {
        match &self.source {
            QuiverSource::Finite(_) => self.clone(),
            QuiverSource::Template { kind, .. } => {
                let verts: Vec<Vertex> = match *kind {
                    TemplateKind::Cycle(n) => (0..n).collect(),
                    _ => (0..=window).collect(),
                };
                let mut arrows = Vec::new();
                for &v in &verts {
                    for a in self.arrows_out(v) {
                        if verts.contains(&a.tgt) {
                            arrows.push((
                                format!("a{}", a.id),
                                a.src.to_string(),
                                a.tgt.to_string(),
                            ));
                        }
                    }
                }
                arrows.sort_by_key(|(l, _, _)| l[1..].parse::<usize>().unwrap_or(0));
                let q = Quiver::new(verts.iter().map(|v| v.to_string()).collect(), arrows)
                    .expect("materialized template is a valid quiver");
                Coalgebra {
                    source: QuiverSource::Finite(q),
                    truncation: self.truncation,
                }
            }
        }
    }

    /// The presentation for the other side: the opposite quiver.
    pub fn opposite(&self) -> Coalgebra {
        let source = match &self.source {
            QuiverSource::Finite(q) => QuiverSource::Finite(q.opposite()),
            QuiverSource::Template { kind, window } => match *kind {
                TemplateKind::AInfinityTowardZero => QuiverSource::Template {
                    kind: TemplateKind::AInfinityAwayFromZero,
                    window: *window,
                },
                TemplateKind::AInfinityAwayFromZero => QuiverSource::Template {
                    kind: TemplateKind::AInfinityTowardZero,
                    window: *window,
                },
                TemplateKind::Cycle(_) => match self.materialize(0).source {
                    QuiverSource::Finite(q) => QuiverSource::Finite(q.opposite()),
                    QuiverSource::Template { .. } => unreachable!(),
                },
            },
        };
        Coalgebra {
            source,
            truncation: self.truncation,
        }
    }

    /// Vertices reachable from `support` in at most `margin` steps along
    /// arrows in either orientation.
    pub fn neighbourhood(&self, support: &[Vertex], margin: usize) -> BTreeSet<Vertex> {
        let mut seen: BTreeSet<Vertex> = support.iter().copied().collect();
        let mut queue: VecDeque<(Vertex, usize)> = support.iter().map(|&v| (v, 0)).collect();
        while let Some((v, d)) = queue.pop_front() {
            if d == margin {
                continue;
            }
            let next = self
                .arrows_out(v)
                .into_iter()
                .map(|a| a.tgt)
                .chain(self.arrows_in(v).into_iter().map(|a| a.src));
            for w in next {
                if seen.insert(w) {
                    queue.push_back((w, d + 1));
                }
            }
        }
        seen
    }

    /// True iff every vertex within `margin` arrows of `support` lies
    /// strictly inside the window.
    pub fn saturated(&self, support: &[Vertex], margin: usize) -> bool {
        match self.window() {
            None => true,
            Some(w) => self.neighbourhood(support, margin).iter().all(|&v| v < w),
        }
    }

    /// Smallest enlargement of the window that saturates `support` at `margin`.
    pub fn covering(&self, support: &[Vertex], margin: usize) -> Coalgebra {
        match self.window() {
            None => self.clone(),
            Some(w) => {
                let top = self
                    .neighbourhood(support, margin)
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                self.with_window(w.max(top + 1))
            }
        }
    }

    /// Paths of length at most `max_len` ending at `v`, shortest first.
    pub fn paths_into(&self, v: Vertex, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_in(p.start) {
                    let mut arrows = Vec::with_capacity(p.arrows.len() + 1);
                    arrows.push(a.id);
                    arrows.extend_from_slice(&p.arrows);
                    next.push(Path {
                        start: a.src,
                        arrows,
                        end: v,
                    });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Paths of length at most `max_len` starting at `v`, shortest first.
    pub fn paths_from(&self, v: Vertex, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_out(p.end) {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a.id);
                    next.push(Path {
                        start: v,
                        arrows,
                        end: a.tgt,
                    });
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    fn check_window(&self, paths: &[Path], v: Vertex) -> Result<()> {
        if let Some(w) = self.window() {
            let escapes = paths
                .iter()
                .flat_map(|p| {
                    std::iter::once(p.start)
                        .chain(p.arrows.iter().map(|&a| self.arrow(a).unwrap().tgt))
                })
                .any(|u| u > w);
            if escapes || v > w {
                return Err(Error::WindowUnsaturated {
                    vertex: v,
                    window: w,
                    margin: self.truncation,
                });
            }
        }
        Ok(())
    }

    /// Basis of the injective envelope `E(S)`: the paths of length at most
    /// `L` ending at the vertex of `s`.
    pub fn injective_basis(&self, s: SimpleLabel) -> Result<Vec<Path>> {
        if !self.has_vertex(s.vertex) {
            return Err(Error::UnknownVertex(s.vertex.to_string()));
        }
        let paths = self.paths_into(s.vertex, self.truncation);
        self.check_window(&paths, s.vertex)?;
        Ok(paths)
    }

    /// Basis of the projective cover `P(S)`: the paths of length at most `L`
    /// starting at the vertex of `s`.
    pub fn projective_basis(&self, s: SimpleLabel) -> Result<Vec<Path>> {
        if !self.has_vertex(s.vertex) {
            return Err(Error::UnknownVertex(s.vertex.to_string()));
        }
        let paths = self.paths_from(s.vertex, self.truncation);
        self.check_window(&paths, s.vertex)?;
        Ok(paths)
    }

    /// Connected as an undirected graph (infinite templates are connected).
    pub fn is_connected(&self) -> bool {
        match &self.source {
            QuiverSource::Template { .. } => true,
            QuiverSource::Finite(q) => {
                let n = q.vertex_count();
                if n == 0 {
                    return true;
                }
                self.neighbourhood(&[0], n).len() == n
            }
        }
    }

    pub fn has_arrows(&self) -> bool {
        match &self.source {
            QuiverSource::Template { .. } => true,
            QuiverSource::Finite(q) => !q.arrows.is_empty(),
        }
    }

    /// Every vertex has at most one incoming and one outgoing arrow. For such
    /// quivers every indecomposable comodule is uniserial.
    pub fn is_nakayama_type(&self) -> bool {
        match &self.source {
            QuiverSource::Template { .. } => true,
            QuiverSource::Finite(q) => q.out_adj.iter().chain(&q.in_adj).all(|adj| adj.len() <= 1),
        }
    }

    pub fn describe(&self) -> String {
        match &self.source {
            QuiverSource::Finite(q) => format!(
                "finite quiver ({} vertices, {} arrows), L = {}",
                q.vertex_count(),
                q.arrows.len(),
                self.truncation
            ),
            QuiverSource::Template { kind, window } => match kind {
                TemplateKind::Cycle(n) => format!("cycle({n}), L = {}", self.truncation),
                k => format!("{}, window {window}, L = {}", k.name(), self.truncation),
            },
        }
    }
}

fn is_infinite(kind: TemplateKind) -> bool {
    !matches!(kind, TemplateKind::Cycle(_))
}

fn check_truncation(l: usize) -> Result<()> {
    if l == 0 {
        return Err(Error::InvalidPresentation(
            "truncation length must be at least 1".into(),
        ));
    }
    Ok(())
}
