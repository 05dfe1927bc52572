//! Quivers, paths and the double quiver.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver. Vertex order is the input order and fixes every matrix
/// convention downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    doubled: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArrowJson {
    name: String,
    tail: String,
    head: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, tail, head)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate vertex {v:?}")));
            }
        }
        let find = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::invalid(format!("arrow refers to unknown vertex {name:?}")))
        };
        let mut out = Vec::with_capacity(arrows.len());
        for (name, tail, head) in arrows {
            let name = name.as_ref().to_string();
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::invalid(format!("duplicate arrow {name:?}")));
            }
            out.push(Arrow {
                name,
                tail: find(tail.as_ref())?,
                head: find(head.as_ref())?,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
            doubled: false,
        })
    }

    /// Linearly oriented `A_n`: vertices `1..=n`, arrows `a{i}: i -> i+1`.
    pub fn linear_a(n: usize) -> Self {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(&vs, &arrows).expect("well-formed")
    }

    /// `n` parallel arrows `1 -> 2`; `n = 2` is the Kronecker quiver.
    pub fn kronecker(n: usize) -> Self {
        let arrows: Vec<(String, String, String)> = (1..=n)
            .map(|i| (format!("k{i}"), "1".to_string(), "2".to_string()))
            .collect();
        Quiver::new(&["1".to_string(), "2".to_string()], &arrows).expect("well-formed")
    }

    /// Oriented cycle `1 -> 2 -> ... -> n -> 1`.
    pub fn cycle(n: usize) -> Self {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<(String, String, String)> = (1..=n)
            .map(|i| (format!("c{i}"), i.to_string(), (i % n + 1).to_string()))
            .collect();
        Quiver::new(&vs, &arrows).expect("well-formed")
    }

    /// One vertex with one loop.
    pub fn jordan() -> Self {
        Quiver::new(&["1"], &[("rho", "1", "1")]).expect("well-formed")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_str(text)?;
        Self::from_json_value_inner(raw)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_value(v.clone())?;
        Self::from_json_value_inner(raw)
    }

    fn from_json_value_inner(raw: QuiverJson) -> Result<Self> {
        let arrows: Vec<(String, String, String)> = raw
            .arrows
            .into_iter()
            .map(|a| (a.name, a.tail, a.head))
            .collect();
        Quiver::new(&raw.vertices, &arrows)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    tail: self.vertices[a.tail].clone(),
                    head: self.vertices[a.head].clone(),
                })
                .collect(),
        })
        .expect("plain data serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("plain data serializes")
    }

    /// Graphviz rendering of the underlying graph.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[a.tail], self.vertices[a.head], a.name
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::invalid(format!("unknown vertex {name:?}")))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::invalid(format!("unknown arrow {name:?}")))
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.head == a.tail)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Self {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    tail: a.head,
                    head: a.tail,
                })
                .collect(),
            doubled: false,
        }
    }

    /// Topological order of the vertices, or `None` when there is an
    /// oriented cycle (loops included).
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.head] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.arrows.iter().filter(|a| a.tail == v) {
                indeg[a.head] -= 1;
                if indeg[a.head] == 0 {
                    queue.push_back(a.head);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Connected components of the underlying graph, each sorted, in order
    /// of their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for a in &self.arrows {
                    for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            members.push(y);
                        }
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Whether the vertices with `support[i]` set induce a connected
    /// subgraph of the underlying graph. The empty set is not connected.
    pub fn support_connected(&self, support: &[bool]) -> bool {
        let Some(start) = support.iter().position(|&s| s) else {
            return false;
        };
        let mut seen = vec![false; support.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.tail, a.head), (a.head, a.tail)] {
                    if x == v && support[y] && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        support.iter().zip(&seen).all(|(s, v)| !s || *v)
    }

    pub fn path_tail(&self, path: &Path) -> usize {
        match path {
            Path::Trivial(v) => *v,
            Path::Arrows(rs) => self.arrows[*rs.last().expect("nonempty")].tail,
        }
    }

    pub fn path_head(&self, path: &Path) -> usize {
        match path {
            Path::Trivial(v) => *v,
            Path::Arrows(rs) => self.arrows[rs[0]].head,
        }
    }

    /// Checks `h(ρ_{i+1}) = t(ρ_i)` along the path.
    pub fn is_composable(&self, path: &Path) -> bool {
        match path {
            Path::Trivial(v) => *v < self.n_vertices(),
            Path::Arrows(rs) => {
                !rs.is_empty()
                    && rs.iter().all(|&r| r < self.n_arrows())
                    && rs
                        .windows(2)
                        .all(|w| self.arrows[w[1]].head == self.arrows[w[0]].tail)
            }
        }
    }

    /// All paths of length at most `max_len`, by length then
    /// lexicographically by arrow names; trivial paths in vertex order.
    pub fn enumerate_paths(&self, max_len: usize) -> Vec<Path> {
        let mut out: Vec<Path> = (0..self.n_vertices()).map(Path::Trivial).collect();
        if max_len == 0 {
            return out;
        }
        let mut layer: Vec<Vec<usize>> = (0..self.n_arrows()).map(|a| vec![a]).collect();
        for len in 1..=max_len {
            layer.sort_by(|x, y| self.compare_names(x, y));
            out.extend(layer.iter().cloned().map(Path::Arrows));
            if len == max_len {
                break;
            }
            // Extend on the right: ρ_1 … ρ_m σ with h(σ) = t(ρ_m).
            let mut next = Vec::new();
            for p in &layer {
                let t = self.arrows[*p.last().expect("nonempty")].tail;
                for (s, a) in self.arrows.iter().enumerate() {
                    if a.head == t {
                        let mut q = p.clone();
                        q.push(s);
                        next.push(q);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        out
    }

    fn compare_names(&self, x: &[usize], y: &[usize]) -> std::cmp::Ordering {
        let nx = x.iter().map(|&a| self.arrows[a].name.as_str());
        let ny = y.iter().map(|&a| self.arrows[a].name.as_str());
        nx.cmp(ny)
    }

    /// Human-readable path, e.g. `e_3` or `sigma rho`.
    pub fn path_label(&self, path: &Path) -> String {
        match path {
            Path::Trivial(v) => format!("e_{}", self.vertices[*v]),
            Path::Arrows(rs) => rs
                .iter()
                .map(|&r| self.arrows[r].name.as_str())
                .collect::<Vec<_>>()
                .join(" "),
        }
    }

    /// Number of arrows from `i` to `j`.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.tail == i && a.head == j)
            .count()
    }

    /// Edge multiplicities of the underlying graph, keyed by unordered pair
    /// `(min, max)`; loops appear as `(i, i)`.
    pub fn edge_multiplicities(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for a in &self.arrows {
            let key = (a.tail.min(a.head), a.tail.max(a.head));
            *out.entry(key).or_insert(0) += 1;
        }
        out
    }

    /// The quiver on a subset of vertices, keeping arrows between them.
    pub fn induced(&self, vertices: &[usize]) -> Quiver {
        let names: Vec<&str> = vertices.iter().map(|&v| self.vertices[v].as_str()).collect();
        let arrows: Vec<(&str, &str, &str)> = self
            .arrows
            .iter()
            .filter(|a| vertices.contains(&a.tail) && vertices.contains(&a.head))
            .map(|a| {
                (
                    a.name.as_str(),
                    self.vertices[a.tail].as_str(),
                    self.vertices[a.head].as_str(),
                )
            })
            .collect();
        Quiver::new(&names, &arrows).expect("subquiver of a valid quiver")
    }
}

/// A path `ρ_1 ρ_2 … ρ_m` (arrow indices, `ρ_m` applied first) or a trivial
/// path `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(rs) => rs.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }
}

/// A quiver with every edge in both orientations, the involution `ρ ↦ ρ̄`,
/// and the orientation `Ω` given by the original arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleQuiver {
    base: Quiver,
    quiver: Arc<Quiver>,
    bar: Vec<usize>,
    omega: Vec<bool>,
}

impl Quiver {
    /// Doubles a loop-free quiver. Arrow `k` of the base keeps index `k`;
    /// its reversal `<name>_bar` has index `k + #Q_1`.
    pub fn double(&self) -> Result<DoubleQuiver> {
        if self.doubled {
            return Err(Error::invalid("quiver is already a double quiver"));
        }
        if self.has_loops() {
            return Err(Error::invalid("cannot double a quiver with loops"));
        }
        let m = self.n_arrows();
        let mut arrows = self.arrows.clone();
        for a in &self.arrows {
            let name = format!("{}_bar", a.name);
            if self.arrows.iter().any(|b| b.name == name) {
                return Err(Error::invalid(format!("arrow name {name:?} collides with a reversal")));
            }
            arrows.push(Arrow {
                name,
                tail: a.head,
                head: a.tail,
            });
        }
        let quiver = Quiver {
            vertices: self.vertices.clone(),
            arrows,
            doubled: true,
        };
        let bar = (0..2 * m).map(|k| if k < m { k + m } else { k - m }).collect();
        let omega = (0..2 * m).map(|k| k < m).collect();
        Ok(DoubleQuiver {
            base: self.clone(),
            quiver: Arc::new(quiver),
            bar,
            omega,
        })
    }
}

impl DoubleQuiver {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn bar(&self, arrow: usize) -> usize {
        self.bar[arrow]
    }

    pub fn in_omega(&self, arrow: usize) -> bool {
        self.omega[arrow]
    }

    /// `ε(ρ)`: `+1` on `Ω`, `-1` on its reversal.
    pub fn epsilon(&self, arrow: usize) -> i64 {
        if self.omega[arrow] {
            1
        } else {
            -1
        }
    }
}
