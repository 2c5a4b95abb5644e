//! Triangle families, their support graphs and the orientation signs.
//!
//! Every vertex set carries the integer order. Edges and triangles store their
//! vertices sorted ascending, so the derived lexicographic order on edges and
//! triangles is the row/column order used by every incidence matrix.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// An unordered pair `{x, y}` stored as `x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge([Vertex; 2]);

impl Edge {
    pub fn new(x: Vertex, y: Vertex) -> Result<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Edge([x, y])),
            std::cmp::Ordering::Greater => Ok(Edge([y, x])),
            std::cmp::Ordering::Equal => Err(Error::DegenerateEdge(x)),
        }
    }

    pub fn endpoints(&self) -> [Vertex; 2] {
        self.0
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0[0] == x || self.0[1] == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other(&self, x: Vertex) -> Option<Vertex> {
        if self.0[0] == x {
            Some(self.0[1])
        } else if self.0[1] == x {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0[0], self.0[1])
    }
}

/// A 3-element vertex set stored as `a < b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle([Vertex; 3]);

impl Triangle {
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::DegenerateTriangle([a, b, c]));
        }
        Ok(Triangle(v))
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        self.0
    }

    pub fn min(&self) -> Vertex {
        self.0[0]
    }

    pub fn max(&self) -> Vertex {
        self.0[2]
    }

    pub fn contains(&self, x: Vertex) -> bool {
        self.0.contains(&x)
    }

    /// The three edges in lexicographic order: `{a,b}`, `{a,c}`, `{b,c}`.
    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge([a, b]), Edge([a, c]), Edge([b, c])]
    }

    pub fn contains_edge(&self, e: &Edge) -> bool {
        self.contains(e.0[0]) && self.contains(e.0[1])
    }

    /// The vertex of the triangle not on `e`, when `e` is one of its edges.
    pub fn opposite(&self, e: &Edge) -> Option<Vertex> {
        if !self.contains_edge(e) {
            return None;
        }
        self.0.iter().copied().find(|v| !e.contains(*v))
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

/// `[T:e]`: `+1` when the vertex of `t` off `e` is its minimum or maximum,
/// `-1` when it is the middle vertex, `0` when `e` is not an edge of `t`.
pub fn sign_triangle_edge(t: &Triangle, e: &Edge) -> i8 {
    match t.opposite(e) {
        None => 0,
        Some(v) if v == t.min() || v == t.max() => 1,
        Some(_) => -1,
    }
}

/// `[e:x]`: `+1` for the larger endpoint, `-1` for the smaller, `0` otherwise.
pub fn sign_edge_vertex(e: &Edge, x: Vertex) -> i8 {
    if e.0[1] == x {
        1
    } else if e.0[0] == x {
        -1
    } else {
        0
    }
}

/// A duplicate-free, lexicographically sorted set of triangles.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TriangleFamily {
    triangles: Vec<Triangle>,
}

impl TriangleFamily {
    pub fn new<I: IntoIterator<Item = Triangle>>(triangles: I) -> Self {
        let mut triangles: Vec<Triangle> = triangles.into_iter().collect();
        triangles.sort_unstable();
        triangles.dedup();
        TriangleFamily { triangles }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_triples(triples: &[[Vertex; 3]]) -> Result<Self> {
        let triangles = triples
            .iter()
            .map(|&[a, b, c]| Triangle::new(a, b, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(triangles))
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Triangle> {
        self.triangles.iter()
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn contains(&self, t: &Triangle) -> bool {
        self.triangles.binary_search(t).is_ok()
    }

    pub fn to_triples(&self) -> Vec<[Vertex; 3]> {
        self.triangles.iter().map(Triangle::vertices).collect()
    }

    /// Sorted union of all triangle vertices.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.triangles.iter().flat_map(|t| t.0).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Sorted, duplicate-free list of edges of member triangles.
    pub fn edges(&self) -> Vec<Edge> {
        let mut e: Vec<Edge> = self.triangles.iter().flat_map(|t| t.edges()).collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.triangles.iter().map(Triangle::max).max()
    }

    /// Applies `map` to every vertex. The map must be injective on the
    /// vertex set, otherwise a degenerate triangle is reported.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, map: F) -> Result<Self> {
        let triangles = self
            .triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.0;
                Triangle::new(map(a), map(b), map(c))
            })
            .collect::<Result<Vec<_>>>()?;
        let out = Self::new(triangles);
        if out.len() != self.len() {
            return Err(Error::InvalidArgument("relabeling is not injective".into()));
        }
        Ok(out)
    }

    /// Order-preserving relabeling onto `first, first+1, ...`.
    pub fn compacted_from(&self, first: Vertex) -> Self {
        let verts = self.vertices();
        self.relabel(|x| first + verts.binary_search(&x).expect("vertex of family") as Vertex)
            .expect("order-preserving relabeling is injective")
    }

    /// Shifts `other` above the largest label of `self` (onto `1..` when `self`
    /// is empty) and takes the union.
    pub fn disjoint_union(&self, other: &TriangleFamily) -> TriangleFamily {
        if other.is_empty() {
            return self.clone();
        }
        let first = self.max_label().map_or(1, |m| m + 1);
        let shifted = other.compacted_from(first);
        Self::new(self.triangles.iter().chain(shifted.iter()).copied())
    }

    pub fn support_graph(&self) -> Result<SupportGraph> {
        SupportGraph::from_family(self)
    }

    /// Groups triangles that are linked through chains of shared edges.
    /// These are exactly the diagonal blocks of the 2-down Laplacian.
    pub fn edge_components(&self) -> Vec<TriangleFamily> {
        let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for e in t.edges() {
                by_edge.entry(e).or_default().push(i);
            }
        }
        let mut dsu = DisjointSets::new(self.len());
        for members in by_edge.values() {
            for w in members.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        self.split_by(&mut dsu)
    }

    /// Groups triangles by the connected components of the support graph.
    pub fn vertex_components(&self) -> Vec<TriangleFamily> {
        let mut by_vertex: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for v in t.0 {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        let mut dsu = DisjointSets::new(self.len());
        for members in by_vertex.values() {
            for w in members.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
        self.split_by(&mut dsu)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() <= 1
    }

    fn split_by(&self, dsu: &mut DisjointSets) -> Vec<TriangleFamily> {
        let mut groups: BTreeMap<usize, Vec<Triangle>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            groups.entry(dsu.find(i)).or_default().push(*t);
        }
        let mut parts: Vec<TriangleFamily> = groups.into_values().map(TriangleFamily::new).collect();
        parts.sort();
        parts
    }
}

impl fmt::Display for TriangleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, t) in self.triangles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a TriangleFamily {
    type Item = &'a Triangle;
    type IntoIter = std::slice::Iter<'a, Triangle>;

    fn into_iter(self) -> Self::IntoIter {
        self.triangles.iter()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The graph of all vertices and pairs covered by at least one triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    edge_triangle_count: BTreeMap<Edge, usize>,
}

impl SupportGraph {
    pub fn from_family(family: &TriangleFamily) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut edge_triangle_count = BTreeMap::new();
        for t in family {
            for e in t.edges() {
                *edge_triangle_count.entry(e).or_insert(0) += 1;
            }
        }
        Ok(SupportGraph {
            vertices: family.vertices(),
            edges: edge_triangle_count.keys().copied().collect(),
            edge_triangle_count,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_triangle_count(&self) -> &BTreeMap<Edge, usize> {
        &self.edge_triangle_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, x: Vertex) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    pub fn edge_index(&self, e: &Edge) -> Option<usize> {
        self.edges.binary_search(e).ok()
    }

    /// `d_e`: number of triangles of the family containing `e`.
    pub fn codegree(&self, e: &Edge) -> usize {
        self.edge_triangle_count.get(e).copied().unwrap_or(0)
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.edges.iter().filter(|e| e.contains(x)).count()
    }

    pub fn neighbors(&self, x: Vertex) -> Vec<Vertex> {
        self.edges.iter().filter_map(|e| e.other(x)).collect()
    }

    pub fn min_degree(&self) -> usize {
        let mut deg = vec![0usize; self.vertices.len()];
        for e in &self.edges {
            for x in e.endpoints() {
                deg[self.vertex_index(x).expect("edge endpoint in vertex list")] += 1;
            }
        }
        deg.into_iter().min().unwrap_or(0)
    }

    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.vertices.len());
        for e in &self.edges {
            let [x, y] = e.endpoints();
            dsu.union(self.vertex_index(x).unwrap(), self.vertex_index(y).unwrap());
        }
        (0..self.vertices.len()).filter(|&i| dsu.find(i) == i).count()
    }
}
