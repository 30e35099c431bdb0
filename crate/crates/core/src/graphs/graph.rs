use std::fmt;

use serde::{Deserialize, Serialize};

use super::Geometry;

/// Edge decoration: single-brane straight/wavy, or a two-brane class (a, b)
/// where `a` says whether the summed index is tangent to C₀ and `b` to C₁.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Straight,
    Wavy,
    Class(bool, bool),
}

impl EdgeKind {
    pub fn symbol(self) -> &'static str {
        match self {
            EdgeKind::Straight => "s",
            EdgeKind::Wavy => "w",
            EdgeKind::Class(true, true) => "pp",
            EdgeKind::Class(true, false) => "pm",
            EdgeKind::Class(false, true) => "mp",
            EdgeKind::Class(false, false) => "mm",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "s" => EdgeKind::Straight,
            "w" => EdgeKind::Wavy,
            "pp" => EdgeKind::Class(true, true),
            "pm" => EdgeKind::Class(true, false),
            "mp" => EdgeKind::Class(false, true),
            "mm" => EdgeKind::Class(false, false),
            _ => return None,
        })
    }

    pub fn kind_set(self) -> KindSet {
        match self {
            EdgeKind::Straight | EdgeKind::Wavy => KindSet::Single,
            EdgeKind::Class(..) => KindSet::Two,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KindSet {
    Single,
    Two,
}

impl KindSet {
    pub fn kinds(self) -> &'static [EdgeKind] {
        match self {
            KindSet::Single => &[EdgeKind::Straight, EdgeKind::Wavy],
            KindSet::Two => &[
                EdgeKind::Class(true, true),
                EdgeKind::Class(true, false),
                EdgeKind::Class(false, true),
                EdgeKind::Class(false, false),
            ],
        }
    }
}

/// Edge endpoint, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    Aerial(usize),
    Boundary(usize),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Aerial(i) => write!(f, "{i}"),
            Target::Boundary(i) => write!(f, "B{i}"),
        }
    }
}

/// Role of an aerial vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    /// Carries π, emits two ordered edges.
    Ordinary,
    /// Carries the n-th vector-field argument (0-based), emits one edge.
    Xi(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub target: Target,
    pub kind: EdgeKind,
}

/// A labeled admissible graph.
///
/// Aerial vertices 1..=k: the first k − n_xi are ordinary, the rest carry
/// vector fields. `edges` is flat: two per ordinary vertex in vertex order,
/// then one per vector-field vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmGraph {
    pub k: usize,
    pub n_xi: usize,
    pub n_b: usize,
    pub geometry: Geometry,
    pub edges: Vec<Edge>,
}

impl AdmGraph {
    pub fn ordinary(&self) -> usize {
        self.k - self.n_xi
    }

    pub fn edge_count(&self) -> usize {
        2 * self.ordinary() + self.n_xi
    }

    pub fn vertex(&self, v: usize) -> Vertex {
        assert!(v >= 1 && v <= self.k);
        if v <= self.ordinary() {
            Vertex::Ordinary
        } else {
            Vertex::Xi(v - self.ordinary() - 1)
        }
    }

    /// Source aerial vertex (1-based) of edge `e` (0-based).
    pub fn source(&self, e: usize) -> usize {
        let m = self.ordinary();
        if e < 2 * m {
            e / 2 + 1
        } else {
            m + (e - 2 * m) + 1
        }
    }

    /// Flat indices of the edges emitted by vertex `v`.
    pub fn edges_of(&self, v: usize) -> std::ops::Range<usize> {
        let m = self.ordinary();
        if v <= m {
            2 * (v - 1)..2 * v
        } else {
            let e = 2 * m + (v - m - 1);
            e..e + 1
        }
    }

    /// Edges (flat index, edge) landing on `t`.
    pub fn incoming(&self, t: Target) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.target == t)
    }

    /// Canonical text key, e.g. `1;0;2;H;v1:(B1,s),(B2,s)`.
    pub fn key(&self) -> String {
        let mut s = format!("{};{};{};{};", self.k, self.n_xi, self.n_b, self.geometry.letter());
        let verts: Vec<String> = (1..=self.k)
            .map(|v| {
                let es: Vec<String> = self
                    .edges_of(v)
                    .map(|e| format!("({},{})", self.edges[e].target, self.edges[e].kind.symbol()))
                    .collect();
                format!("v{v}:{}", es.join(","))
            })
            .collect();
        s.push_str(&verts.join(";"));
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            key: self.key(),
            k: self.k,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(e, edge)| EdgeJson {
                    from: self.source(e),
                    to: edge.target.to_string(),
                    kind: edge.kind.symbol().to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for AdmGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: String,
    pub kind: String,
}

/// Graph-list export record `{"key", "k", "edges"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub key: String,
    pub k: usize,
    pub edges: Vec<EdgeJson>,
}
