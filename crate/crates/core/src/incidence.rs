//! Signed incidence matrices `δ₀` (edges × vertices) and `δ₁` (triangles ×
//! edges) and the Laplacians built from them, all in exact integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{sign_edge_vertex, sign_triangle_edge, SupportGraph, TriangleFamily, Vertex};
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IncidenceKind {
    Delta0,
    Delta1,
}

/// An incidence matrix together with the simplices indexing its rows and
/// columns, both in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIncidence {
    pub kind: IncidenceKind,
    pub rows: Vec<Vec<Vertex>>,
    pub cols: Vec<Vec<Vertex>>,
    pub matrix: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LaplacianKind {
    /// `δ₀ᵀδ₀`, the graph Laplacian.
    L0Up,
    /// `δ₀δ₀ᵀ`.
    L1Down,
    /// `δ₁ᵀδ₁`.
    L1Up,
    /// `δ₁δ₁ᵀ`.
    L2Down,
    /// `δ₀δ₀ᵀ + δ₁ᵀδ₁`.
    L1Total,
}

impl LaplacianKind {
    pub const ALL: [LaplacianKind; 5] =
        [Self::L0Up, Self::L1Down, Self::L1Up, Self::L2Down, Self::L1Total];

    pub fn name(self) -> &'static str {
        match self {
            Self::L0Up => "L0up",
            Self::L1Down => "L1down",
            Self::L1Up => "L1up",
            Self::L2Down => "L2down",
            Self::L1Total => "L1total",
        }
    }
}

impl fmt::Display for LaplacianKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LaplacianKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Laplacian kind `{s}`")))
    }
}

/// A symmetric integer Laplacian with its role and index labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSymMatrix {
    pub kind: LaplacianKind,
    pub labels: Vec<Vec<Vertex>>,
    pub matrix: IntMatrix,
}

impl IntSymMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn build_delta0(graph: &SupportGraph) -> SignedIncidence {
    let mut m = IntMatrix::zeros(graph.edge_count(), graph.vertex_count());
    for (i, e) in graph.edges().iter().enumerate() {
        for x in e.endpoints() {
            let j = graph.vertex_index(x).expect("edge endpoint is a support vertex");
            m[(i, j)] = sign_edge_vertex(e, x) as i64;
        }
    }
    SignedIncidence {
        kind: IncidenceKind::Delta0,
        rows: graph.edges().iter().map(|e| e.endpoints().to_vec()).collect(),
        cols: graph.vertices().iter().map(|&v| vec![v]).collect(),
        matrix: m,
    }
}

pub fn build_delta1(family: &TriangleFamily, graph: &SupportGraph) -> Result<SignedIncidence> {
    let mut m = IntMatrix::zeros(family.len(), graph.edge_count());
    for (i, t) in family.iter().enumerate() {
        for e in t.edges() {
            let j = graph
                .edge_index(&e)
                .ok_or_else(|| Error::Internal(format!("edge {e} of {t} missing from support graph")))?;
            m[(i, j)] = sign_triangle_edge(t, &e) as i64;
        }
    }
    Ok(SignedIncidence {
        kind: IncidenceKind::Delta1,
        rows: family.iter().map(|t| t.vertices().to_vec()).collect(),
        cols: graph.edges().iter().map(|e| e.endpoints().to_vec()).collect(),
        matrix: m,
    })
}

/// Both coboundaries of a family over its own support graph.
#[derive(Clone, Debug)]
pub struct Coboundaries {
    pub graph: SupportGraph,
    pub delta0: SignedIncidence,
    pub delta1: SignedIncidence,
}

impl Coboundaries {
    pub fn new(family: &TriangleFamily) -> Result<Self> {
        let graph = family.support_graph()?;
        let delta0 = build_delta0(&graph);
        let delta1 = build_delta1(family, &graph)?;
        Ok(Coboundaries { graph, delta0, delta1 })
    }

    pub fn laplacian(&self, kind: LaplacianKind) -> IntSymMatrix {
        let d0 = &self.delta0.matrix;
        let d1 = &self.delta1.matrix;
        let (matrix, labels) = match kind {
            LaplacianKind::L0Up => (d0.gram_of_columns(), self.delta0.cols.clone()),
            LaplacianKind::L1Down => (d0.gram_of_rows(), self.delta0.rows.clone()),
            LaplacianKind::L1Up => (d1.gram_of_columns(), self.delta1.cols.clone()),
            LaplacianKind::L2Down => (d1.gram_of_rows(), self.delta1.rows.clone()),
            LaplacianKind::L1Total => {
                (d0.gram_of_rows().add(&d1.gram_of_columns()), self.delta0.rows.clone())
            }
        };
        IntSymMatrix { kind, labels, matrix }
    }

    /// The matrix whose Gram product is the given Laplacian, oriented so that
    /// `rank(factor) = rank(laplacian)`.
    pub fn factor(&self, kind: LaplacianKind) -> IntMatrix {
        match kind {
            LaplacianKind::L0Up | LaplacianKind::L1Down => self.delta0.matrix.clone(),
            LaplacianKind::L1Up | LaplacianKind::L2Down => self.delta1.matrix.clone(),
            // ker L₁ = ker δ₀ᵀ ∩ ker δ₁, so L₁ has the rank of [δ₀ᵀ; δ₁].
            LaplacianKind::L1Total => self.delta0.matrix.transpose().vstack(&self.delta1.matrix),
        }
    }
}

pub fn build_laplacian(kind: LaplacianKind, family: &TriangleFamily) -> Result<IntSymMatrix> {
    Ok(Coboundaries::new(family)?.laplacian(kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::exact_rank;

    fn fam(t: &[[u32; 3]]) -> TriangleFamily {
        TriangleFamily::from_triples(t).unwrap()
    }

    fn k4() -> TriangleFamily {
        fam(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
    }

    #[test]
    fn delta0_of_single_triangle() {
        let c = Coboundaries::new(&fam(&[[1, 2, 3]])).unwrap();
        assert_eq!(c.delta0.matrix.shape(), (3, 3));
        assert_eq!(c.delta0.matrix.row(0), &[-1, 1, 0]);
        assert_eq!(c.delta0.rows[0], vec![1, 2]);
    }

    #[test]
    fn delta0_rows_have_one_plus_one_minus() {
        let c = Coboundaries::new(&k4()).unwrap();
        assert_eq!(c.delta0.matrix.shape(), (6, 4));
        for i in 0..6 {
            let row = c.delta0.matrix.row(i);
            assert_eq!(row.iter().filter(|&&v| v == 1).count(), 1);
            assert_eq!(row.iter().filter(|&&v| v == -1).count(), 1);
            assert_eq!(row.iter().sum::<i64>(), 0);
        }
        assert_eq!(exact_rank(&c.delta0.matrix), 3);
    }

    #[test]
    fn delta1_of_single_triangle() {
        let c = Coboundaries::new(&fam(&[[1, 2, 3]])).unwrap();
        // Columns: {1,2}, {1,3}, {2,3}.
        assert_eq!(c.delta1.matrix.row(0), &[1, -1, 1]);
        assert_eq!(exact_rank(&c.delta1.matrix), 1);
    }

    #[test]
    fn delta1_of_k4() {
        let c = Coboundaries::new(&k4()).unwrap();
        assert_eq!(c.delta1.matrix.shape(), (4, 6));
        for i in 0..4 {
            let row = c.delta1.matrix.row(i);
            assert_eq!(row.iter().filter(|&&v| v == 1).count(), 2);
            assert_eq!(row.iter().filter(|&&v| v == -1).count(), 1);
        }
        assert_eq!(exact_rank(&c.delta1.matrix), 3);
        assert!(c.delta1.matrix.matmul(&c.delta0.matrix).is_zero());
    }

    #[test]
    fn delta1_rejects_foreign_graph() {
        let g = fam(&[[1, 2, 3]]).support_graph().unwrap();
        assert!(matches!(build_delta1(&fam(&[[1, 2, 4]]), &g), Err(Error::Internal(_))));
    }

    #[test]
    fn l2_down_basics() {
        let l = build_laplacian(LaplacianKind::L2Down, &fam(&[[1, 2, 3]])).unwrap();
        assert_eq!(l.matrix, IntMatrix::from_rows(vec![vec![3]]));
        let l = build_laplacian(LaplacianKind::L2Down, &k4()).unwrap();
        assert_eq!(l.matrix.trace(), 12);
        assert!(l.matrix.is_symmetric());
    }

    #[test]
    fn laplacians_are_consistent() {
        let c = Coboundaries::new(&fam(&[[1, 2, 3], [1, 2, 4], [2, 4, 5], [1, 3, 4]])).unwrap();
        let total = c.laplacian(LaplacianKind::L1Total).matrix;
        let sum = c.laplacian(LaplacianKind::L1Down).matrix.add(&c.laplacian(LaplacianKind::L1Up).matrix);
        assert_eq!(total, sum);
        let up = c.laplacian(LaplacianKind::L1Up).matrix;
        let down = c.laplacian(LaplacianKind::L1Down).matrix;
        assert!(up.matmul(&down).is_zero());
        assert!(down.matmul(&up).is_zero());
        for kind in LaplacianKind::ALL {
            assert_eq!(kind.name().parse::<LaplacianKind>().unwrap(), kind);
        }
    }
}
