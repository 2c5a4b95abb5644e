//! Certificates for the structural consequences of a large `λ(T)`: edge
//! codegrees, degrees and vertex counts forced by `⌈λ⌉`, the counting bounds,
//! clique-threshold rigidity, the forbidden interval above `C(n,3)` and the
//! exact staircase for the running maximum `Λ(t)`.

use serde::Serialize;

use crate::constructions::binom;
use crate::error::{Error, Result};
use crate::family::TriangleFamily;
use crate::spectra::lambda;

pub const CEIL_GUARD: f64 = 1e-9;
pub const LAMBDA_TOLERANCE: f64 = 1e-8;

/// `⌈λ⌉` computed as `⌈λ − 1e-9⌉` so that `5.000000001` counts as 5.
pub fn guarded_ceil(lambda: f64) -> i64 {
    (lambda - CEIL_GUARD).ceil() as i64
}

/// True when `λ` sits within the guard of an integer, where the guarded
/// ceiling and the exact ceiling could disagree.
pub fn near_integer(lambda: f64) -> bool {
    (lambda - lambda.round()).abs() < CEIL_GUARD && (lambda - lambda.round()) != 0.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverlapCertificate {
    pub lambda: f64,
    /// `⌈λ⌉`, guarded.
    pub n: i64,
    pub min_edge_codegree: i64,
    pub min_common_neighbors: i64,
    pub min_degree: i64,
    pub min_vertex_triangles: i64,
    pub vertex_count: i64,
    pub near_integer: bool,
    pub pass: bool,
}

impl OverlapCertificate {
    /// Both overlap inequalities hold with equality.
    pub fn is_sharp(&self) -> bool {
        self.min_edge_codegree == self.n - 2 && self.min_degree == self.n - 1
    }
}

pub fn check_overlap(family: &TriangleFamily) -> Result<OverlapCertificate> {
    let lambda = lambda(family)?;
    check_overlap_with_lambda(family, lambda)
}

/// As [`check_overlap`] with `λ` already known.
pub fn check_overlap_with_lambda(family: &TriangleFamily, lambda: f64) -> Result<OverlapCertificate> {
    let graph = family.support_graph()?;
    let n = guarded_ceil(lambda);
    let min_edge_codegree = graph.edge_triangle_count().values().copied().min().unwrap_or(0) as i64;
    let mut min_common_neighbors = i64::MAX;
    for e in graph.edges() {
        let [x, y] = e.endpoints();
        let nx = graph.neighbors(x);
        let common = graph.neighbors(y).iter().filter(|v| nx.binary_search(v).is_ok()).count();
        min_common_neighbors = min_common_neighbors.min(common as i64);
    }
    let min_vertex_triangles = graph
        .vertices()
        .iter()
        .map(|&x| family.iter().filter(|t| t.contains(x)).count())
        .min()
        .unwrap_or(0) as i64;
    let min_degree = graph.min_degree() as i64;
    let vertex_count = graph.vertex_count() as i64;
    let pass = min_edge_codegree >= n - 2
        && min_degree >= n - 1
        && vertex_count >= n
        && min_vertex_triangles >= n - 2;
    Ok(OverlapCertificate {
        lambda,
        n,
        min_edge_codegree,
        min_common_neighbors,
        min_degree,
        min_vertex_triangles,
        vertex_count,
        near_integer: near_integer(lambda),
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountingCertificate {
    pub v: u64,
    pub e: u64,
    pub t: u64,
    pub ceil_lambda: u64,
    /// `2e/(n−1)`.
    pub vertex_edge_bound: f64,
    /// `3t/(n−2)`.
    pub edge_triangle_bound: f64,
    /// `6t/((n−1)(n−2))`.
    pub vertex_triangle_bound: f64,
    pub pass: bool,
}

/// `None` when `λ <= 2`, where the counting bounds say nothing.
pub fn check_counting(family: &TriangleFamily) -> Result<Option<CountingCertificate>> {
    let lambda = lambda(family)?;
    check_counting_with_lambda(family, lambda)
}

pub fn check_counting_with_lambda(family: &TriangleFamily, lambda: f64) -> Result<Option<CountingCertificate>> {
    if lambda <= 2.0 {
        return Ok(None);
    }
    let graph = family.support_graph()?;
    let n = guarded_ceil(lambda) as u64;
    if n < 3 {
        // λ in (2, 2 + guard]: the guarded ceiling treats it as 2.
        return Ok(None);
    }
    let v = graph.vertex_count() as u64;
    let e = graph.edge_count() as u64;
    let t = family.len() as u64;
    // Compare in integers: v(n−1) <= 2e, e(n−2) <= 3t, v(n−1)(n−2) <= 6t.
    let pass = v * (n - 1) <= 2 * e && e * (n - 2) <= 3 * t && v * (n - 1) * (n - 2) <= 6 * t;
    Ok(Some(CountingCertificate {
        v,
        e,
        t,
        ceil_lambda: n,
        vertex_edge_bound: 2.0 * e as f64 / (n - 1) as f64,
        edge_triangle_bound: 3.0 * t as f64 / (n - 2) as f64,
        vertex_triangle_bound: 6.0 * t as f64 / ((n - 1) * (n - 2)) as f64,
        pass,
    }))
}

/// Largest `n >= 3` allowed by `v(n−1)(n−2) <= 6t`. Any family with at least
/// `v` vertices and `t` triangles has `λ <= n`.
pub fn counting_lambda_cap(v: u64, t: u64) -> u64 {
    let mut n = 3;
    while v * n * (n - 1) <= 6 * t {
        n += 1;
    }
    n
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum RigidityVerdict {
    /// `|T| < C(n,3)`: requires `λ <= n−1`.
    BelowThreshold { lambda: f64, holds: bool },
    /// `|T| = C(n,3)` and `λ > n−1`: requires `λ = n` on exactly `n` vertices.
    Rigid { lambda: f64, vertex_count: usize, holds: bool },
    /// `|T| = C(n,3)` and `λ <= n−1`: nothing to assert.
    AtThresholdLow { lambda: f64 },
    /// `|T| > C(n,3)`: outside the statement.
    NotApplicable,
}

impl RigidityVerdict {
    pub fn holds(&self) -> bool {
        match self {
            Self::BelowThreshold { holds, .. } | Self::Rigid { holds, .. } => *holds,
            Self::AtThresholdLow { .. } | Self::NotApplicable => true,
        }
    }
}

pub fn check_rigidity(n: u32, family: &TriangleFamily) -> Result<RigidityVerdict> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("rigidity needs n >= 3, got {n}")));
    }
    let threshold = binom(n as u64, 3) as usize;
    if family.len() > threshold {
        return Ok(RigidityVerdict::NotApplicable);
    }
    let lambda = lambda(family)?;
    let level = (n - 1) as f64;
    if family.len() < threshold {
        return Ok(RigidityVerdict::BelowThreshold { lambda, holds: lambda <= level + LAMBDA_TOLERANCE });
    }
    if lambda <= level + LAMBDA_TOLERANCE {
        return Ok(RigidityVerdict::AtThresholdLow { lambda });
    }
    let vertex_count = family.vertices().len();
    // |V| = n together with |T| = C(n,3) forces the complete family.
    let holds = (lambda - n as f64).abs() <= LAMBDA_TOLERANCE && vertex_count == n as usize;
    Ok(RigidityVerdict::Rigid { lambda, vertex_count, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ForbiddenInterval {
    pub n: u64,
    pub m: u64,
    pub t_low: u64,
    pub t_high: u64,
}

impl ForbiddenInterval {
    pub fn is_empty(&self) -> bool {
        self.t_high < self.t_low
    }

    pub fn contains(&self, t: u64) -> bool {
        self.t_low <= t && t <= self.t_high
    }

    /// `C(m+1, 2)`, the guaranteed lower bound on `H(n)`.
    pub fn gap(&self) -> u64 {
        binom(self.m + 1, 2)
    }
}

/// `m` is the largest integer with `(3/2)(m−1)(m+2) < C(n−1,2)`; `φ <= n−1`
/// on `[C(n,3)+1, C(n,3)+C(m+1,2)−1]`.
pub fn forbidden_interval(n: u64) -> Result<ForbiddenInterval> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("forbidden interval needs n >= 3, got {n}")));
    }
    // 3(m−1)(m+2) < 2·C(n−1,2) = (n−1)(n−2), all in integers.
    let limit = (n - 1) * (n - 2);
    let mut m = 1;
    while 3 * m * (m + 3) < limit {
        m += 1;
    }
    let base = binom(n, 3);
    Ok(ForbiddenInterval { n, m, t_low: base + 1, t_high: base + binom(m + 1, 2) - 1 })
}

/// `n²/6 − 5n/(2√3) + 3`.
pub fn h_lower_bound(n: u64) -> f64 {
    let n = n as f64;
    n * n / 6.0 - 5.0 * n / (2.0 * 3f64.sqrt()) + 3.0
}

/// `Λ(t) = max{n : C(n,3) <= t}`. Returns 2 for `t = 0`.
pub fn lambda_staircase(t: u64) -> u64 {
    let mut n = ((6.0 * t as f64).cbrt()) as u64 + 2;
    while binom(n, 3) > t {
        n -= 1;
    }
    while binom(n + 1, 3) <= t {
        n += 1;
    }
    n.max(2)
}

/// `(6t)^{1/3} − 1 <= Λ(t) < (6t)^{1/3} + 3`, checked by cubing.
pub fn staircase_bounds_hold(t: u64, staircase: u64) -> bool {
    let six_t = 6 * t as u128;
    let lower = (staircase as u128 + 1).pow(3) >= six_t;
    let upper = staircase <= 3 || ((staircase - 3) as u128).pow(3) < six_t;
    lower && upper
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum WindowVerdict {
    NotApplicable { reason: String },
    Holds { vertex_count: usize },
    Violated { vertex_count: usize },
}

/// For `n >= 9`, `C(n,3) < |T| < C(n+1,3)` and `λ > n−1`, the support has
/// between `n+1` and `n+3` vertices.
pub fn vertex_window_check(family: &TriangleFamily, n: u64) -> Result<WindowVerdict> {
    if n < 9 {
        return Ok(WindowVerdict::NotApplicable { reason: format!("n = {n} < 9") });
    }
    let t = family.len() as u64;
    if !(binom(n, 3) < t && t < binom(n + 1, 3)) {
        return Ok(WindowVerdict::NotApplicable { reason: format!("|T| = {t} outside (C(n,3), C(n+1,3))") });
    }
    let lambda = lambda(family)?;
    if lambda <= (n - 1) as f64 + LAMBDA_TOLERANCE {
        return Ok(WindowVerdict::NotApplicable { reason: format!("λ = {lambda} <= n-1") });
    }
    let vertex_count = family.vertices().len();
    let ok = (n + 1..=n + 3).contains(&(vertex_count as u64));
    Ok(if ok { WindowVerdict::Holds { vertex_count } } else { WindowVerdict::Violated { vertex_count } })
}
