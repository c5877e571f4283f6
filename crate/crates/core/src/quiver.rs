//! Finite acyclic quivers and their path sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Vertex or arrow identifier; JSON integers and strings are both accepted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Int(i64),
    Str(String),
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Int(a), Label::Int(b)) => a.cmp(b),
            (Label::Int(_), Label::Str(_)) => Ordering::Less,
            (Label::Str(_), Label::Int(_)) => Ordering::Greater,
            (Label::Str(a), Label::Str(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Label {
    fn from(v: i64) -> Self {
        Label::Int(v)
    }
}

impl From<&str> for Label {
    fn from(v: &str) -> Self {
        Label::Str(v.to_string())
    }
}

impl Label {
    pub fn to_json(&self) -> Value {
        match self {
            Label::Int(i) => Value::from(*i),
            Label::Str(s) => Value::from(s.clone()),
        }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Self> {
        if let Some(i) = v.as_i64() {
            return Ok(Label::Int(i));
        }
        v.as_str()
            .map(|s| Label::Str(s.to_string()))
            .ok_or_else(|| Error::schema(path, format!("expected an integer or string label, found {v}")))
    }

    /// Object keys are always strings; integers are recovered when the key
    /// parses as one.
    pub fn from_key(key: &str) -> Self {
        key.parse::<i64>().map(Label::Int).unwrap_or_else(|_| Label::Str(key.to_string()))
    }

    pub fn key(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: Label,
    pub s: usize,
    pub t: usize,
}

/// A path `a_n ⋯ a_1`, stored in traversal order `a_1, ..., a_n` as arrow
/// indices. The trivial path at `v` has no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Vertices and arrows are kept sorted by label; every index-based API uses
/// positions in these sorted lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Label>,
    arrows: Vec<Arrow>,
    topo: Vec<usize>,
    // paths[v][w] = Q(v, w)
    paths: Vec<Vec<Vec<Path>>>,
}

impl Quiver {
    pub fn new(vertices: Vec<Label>, arrows: Vec<(Label, Label, Label)>) -> Result<Self> {
        let vset: BTreeSet<Label> = vertices.iter().cloned().collect();
        if vset.len() != vertices.len() {
            return Err(Error::schema("vertices", "duplicate vertex label"));
        }
        let vertices: Vec<Label> = vset.into_iter().collect();
        let index = |l: &Label| vertices.binary_search(l).map_err(|_| Error::UnknownVertex(l.to_string()));
        let mut seen = BTreeSet::new();
        let mut arr = Vec::with_capacity(arrows.len());
        for (id, s, t) in arrows {
            if !seen.insert(id.clone()) {
                return Err(Error::schema("arrows", format!("duplicate arrow id `{id}`")));
            }
            arr.push(Arrow { s: index(&s)?, t: index(&t)?, id });
        }
        arr.sort_by(|a, b| a.id.cmp(&b.id));
        let topo = kahn(vertices.len(), &arr).map_err(|v| Error::Cycle(vertices[v].to_string()))?;
        let mut q = Quiver { vertices, arrows: arr, topo, paths: Vec::new() };
        q.paths = q.enumerate_paths();
        Ok(q)
    }

    /// Linear quiver 1 → 2 → ⋯ → m with arrows labelled a1, a2, ...
    pub fn linear(m: usize) -> Self {
        let vs = (1..=m as i64).map(Label::Int).collect();
        let arrows = (1..m as i64).map(|i| (Label::Str(format!("a{i}")), Label::Int(i), Label::Int(i + 1))).collect();
        Quiver::new(vs, arrows).expect("linear quiver is acyclic")
    }

    /// The quiver 1 → 2 with arrow `a`.
    pub fn a2() -> Self {
        Quiver::new(vec![1.into(), 2.into()], vec![("a".into(), 1.into(), 2.into())]).expect("acyclic")
    }

    /// Three vertices with arrows a: 1 → 2 and b: 1 → 3.
    pub fn fork() -> Self {
        Quiver::new(
            vec![1.into(), 2.into(), 3.into()],
            vec![("a".into(), 1.into(), 2.into()), ("b".into(), 1.into(), 3.into())],
        )
        .expect("acyclic")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &Label) -> Result<usize> {
        self.vertices.binary_search(label).map_err(|_| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_index(&self, label: &Label) -> Result<usize> {
        self.arrows
            .binary_search_by(|a| a.id.cmp(label))
            .map_err(|_| Error::UnknownArrow(label.to_string()))
    }

    /// Arrows with source `v`, in id order.
    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].s == v).collect()
    }

    /// Arrows with target `v`, in id order.
    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&a| self.arrows[a].t == v).collect()
    }

    /// Q(v, w): paths starting at `v` and ending at `w`, ordered
    /// lexicographically by the arrow ids along the path.
    pub fn paths(&self, v: usize, w: usize) -> &[Path] {
        &self.paths[v][w]
    }

    /// Every arrow goes forward; among valid orders the smallest available
    /// vertex is always taken first.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn reverse_topological_order(&self) -> Vec<usize> {
        self.topo.iter().rev().copied().collect()
    }

    /// `a·p` for a path `p` ending at `s(a)`.
    pub fn extend_path(&self, p: &Path, a: usize) -> Path {
        debug_assert_eq!(self.path_end(p), self.arrows[a].s);
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        Path { start: p.start, arrows }
    }

    /// `q·a` for a path `q` starting at `t(a)`.
    pub fn prepend_arrow(&self, a: usize, q: &Path) -> Path {
        debug_assert_eq!(q.start, self.arrows[a].t);
        let mut arrows = vec![a];
        arrows.extend_from_slice(&q.arrows);
        Path { start: self.arrows[a].s, arrows }
    }

    pub fn path_end(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.start, |&a| self.arrows[a].t)
    }

    pub fn path_position(&self, p: &Path) -> usize {
        let w = self.path_end(p);
        self.paths[p.start][w].iter().position(|q| q == p).expect("path belongs to its path set")
    }

    fn enumerate_paths(&self) -> Vec<Vec<Vec<Path>>> {
        let n = self.vertices.len();
        let mut out = vec![vec![Vec::new(); n]; n];
        for v in 0..n {
            let mut stack = vec![Path { start: v, arrows: Vec::new() }];
            while let Some(p) = stack.pop() {
                let end = self.path_end(&p);
                for a in self.out_arrows(end) {
                    stack.push(self.extend_path(&p, a));
                }
                out[v][end].push(p);
            }
            for w in 0..n {
                out[v][w].sort_by(|p, q| p.arrows.cmp(&q.arrows));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let arrows: Vec<Value> = self
            .arrows
            .iter()
            .map(|a| json!({"id": a.id.to_json(), "s": self.vertices[a.s].to_json(), "t": self.vertices[a.t].to_json()}))
            .collect();
        json!({"vertices": self.vertices.iter().map(Label::to_json).collect::<Vec<_>>(), "arrows": arrows})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::schema("quiver", "expected an object"))?;
        let vs = obj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::schema("quiver.vertices", "expected an array"))?;
        let vertices = vs
            .iter()
            .enumerate()
            .map(|(i, x)| Label::from_json(x, &format!("quiver.vertices[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let empty = Vec::new();
        let arr = match obj.get("arrows") {
            None => &empty,
            Some(a) => a.as_array().ok_or_else(|| Error::schema("quiver.arrows", "expected an array"))?,
        };
        let mut arrows = Vec::with_capacity(arr.len());
        for (i, a) in arr.iter().enumerate() {
            let p = format!("quiver.arrows[{i}]");
            let field = |k: &str| {
                a.get(k)
                    .ok_or_else(|| Error::schema(format!("{p}.{k}"), "missing field"))
                    .and_then(|x| Label::from_json(x, &format!("{p}.{k}")))
            };
            arrows.push((field("id")?, field("s")?, field("t")?));
        }
        Quiver::new(vertices, arrows)
    }
}

/// Kahn's algorithm, smallest index first. On a cycle returns a vertex on it.
fn kahn(n: usize, arrows: &[Arrow]) -> std::result::Result<Vec<usize>, usize> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.t] += 1;
    }
    let mut ready: BTreeMap<usize, ()> = (0..n).filter(|&v| indeg[v] == 0).map(|v| (v, ())).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((&v, _)) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for a in arrows.iter().filter(|a| a.s == v) {
            indeg[a.t] -= 1;
            if indeg[a.t] == 0 {
                ready.insert(a.t, ());
            }
        }
    }
    if order.len() < n {
        return Err((0..n).find(|&v| indeg[v] > 0).expect("some vertex remains"));
    }
    Ok(order)
}
