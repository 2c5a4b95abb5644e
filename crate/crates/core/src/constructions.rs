//! Named families and certificates: complete triangle families, the join
//! families `T_{c,b}` of `K_c ∨ K̄_b` with their closed-form spectra and
//! explicit eigenvectors, Frobenius budget decompositions, and the growth
//! family that certifies `φ(t) ≥ ⌊(t/3)^{1/3}⌋`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{sign_triangle_edge, Edge, Triangle, TriangleFamily, Vertex};
use crate::matrix::IntMatrix;

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All `C(n,3)` triples on `{1..n}`.
pub fn complete_family(n: u32) -> Result<TriangleFamily> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("complete family needs n >= 3, got {n}")));
    }
    let mut triangles = Vec::with_capacity(binom(n as u64, 3) as usize);
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                triangles.push(Triangle::new(a, b, c)?);
            }
        }
    }
    Ok(TriangleFamily::new(triangles))
}

/// Parameters of `G_{c,b} = K_c ∨ K̄_b` on `{1..b+c}`: the clique is `{1..c}`
/// and the apexes are `{c+1..c+b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GcbSpec {
    c: u32,
    b: u32,
}

impl GcbSpec {
    pub fn new(c: u32, b: u32) -> Result<Self> {
        if c < 3 || b < 1 {
            return Err(Error::InvalidArgument(format!("G_(c,b) needs c >= 3 and b >= 1, got c={c}, b={b}")));
        }
        Ok(GcbSpec { c, b })
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn family_size(&self) -> u64 {
        let (c, b) = (self.c as u64, self.b as u64);
        binom(c, 3) + b * binom(c, 2)
    }

    /// Edges of `G_{c,b}` in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut edges = Vec::new();
        for i in 1..=self.c {
            for j in i + 1..=self.c + self.b {
                edges.push(Edge::new(i, j).expect("i < j"));
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// The triangle family of `G_{c,b}`: every triple inside `[c]` plus
/// `{i, j, k}` with `i < j <= c` and apex `k > c`.
pub fn gcb_family(spec: &GcbSpec) -> TriangleFamily {
    let (c, b) = (spec.c, spec.b);
    let mut triangles = Vec::with_capacity(spec.family_size() as usize);
    for i in 1..=c {
        for j in i + 1..=c {
            for k in j + 1..=c + b {
                triangles.push(Triangle::new(i, j, k).expect("distinct"));
            }
        }
    }
    TriangleFamily::new(triangles)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumRow {
    pub eigenvalue: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormSpectrum {
    pub rows: Vec<SpectrumRow>,
}

impl ClosedFormSpectrum {
    pub fn total_multiplicity(&self) -> u64 {
        self.rows.iter().map(|r| r.multiplicity).sum()
    }

    pub fn trace(&self) -> u64 {
        self.rows.iter().map(|r| r.eigenvalue * r.multiplicity).sum()
    }

    /// Smallest eigenvalue with positive multiplicity, excluding 0.
    pub fn lambda(&self) -> Option<u64> {
        self.rows.iter().filter(|r| r.eigenvalue > 0).map(|r| r.eigenvalue).min()
    }

    pub fn as_pairs(&self) -> Vec<(u64, u64)> {
        self.rows.iter().map(|r| (r.eigenvalue, r.multiplicity)).collect()
    }
}

/// Spectrum of `L₂^down(T_{c,b})`: `0`, `c` and `b+c` with multiplicities
/// `C(c,3)+(b−1)C(c−1,2)`, `(b−1)(c−1)` and `C(c,2)`; empty rows omitted.
pub fn gcb_closed_form_spectrum(spec: &GcbSpec) -> ClosedFormSpectrum {
    let (c, b) = (spec.c as u64, spec.b as u64);
    let rows = [
        (0, binom(c, 3) + (b - 1) * binom(c - 1, 2)),
        (c, (b - 1) * (c - 1)),
        (b + c, binom(c, 2)),
    ]
    .into_iter()
    .filter(|&(_, m)| m > 0)
    .map(|(eigenvalue, multiplicity)| SpectrumRow { eigenvalue, multiplicity })
    .collect();
    ClosedFormSpectrum { rows }
}

/// A vector with rational entries `numerators[i] / denominator`, indexed by
/// simplices in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalVector {
    pub index: Vec<Vec<Vertex>>,
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl RationalVector {
    pub fn support_size(&self) -> usize {
        self.numerators.iter().filter(|&&v| v != 0).count()
    }

    pub fn entry(&self, simplex: &[Vertex]) -> Option<(i64, i64)> {
        let i = self.index.iter().position(|s| s == simplex)?;
        Some((self.numerators[i], self.denominator))
    }
}

/// `M·v − μ·v`, scaled by the common denominator. Zero iff `v` is an exact
/// eigenvector of `M` for `μ`.
pub fn exact_eigen_residual(m: &IntMatrix, v: &RationalVector, eigenvalue: i64) -> Vec<i64> {
    m.mul_vec(&v.numerators)
        .into_iter()
        .zip(&v.numerators)
        .map(|(mv, &x)| mv - eigenvalue * x)
        .collect()
}

fn tri(a: Vertex, b: Vertex, c: Vertex) -> Triangle {
    Triangle::new(a, b, c).expect("distinct vertices")
}

fn edge(x: Vertex, y: Vertex) -> Edge {
    Edge::new(x, y).expect("distinct endpoints")
}

/// `v_{x,y} = Σ_{i∈[c], i≠x} ([{i,x,y}:{x,y}]·1_{{i,x,y}} − [{i,x,b+c}:{x,b+c}]·1_{{i,x,b+c}})`,
/// an eigenvector of `L₂^down(T_{c,b})` for eigenvalue `c`.
pub fn eigvec_c(spec: &GcbSpec, x: u32, y: u32) -> Result<RationalVector> {
    let (c, b) = (spec.c, spec.b);
    if b < 2 || !(2..=c).contains(&x) || !(c + 1..=b + c - 1).contains(&y) {
        return Err(Error::InvalidArgument(format!(
            "v_(x,y) needs b >= 2, 2 <= x <= c, c+1 <= y <= b+c-1; got c={c}, b={b}, x={x}, y={y}"
        )));
    }
    let family = gcb_family(spec);
    let mut numerators = vec![0i64; family.len()];
    let last = b + c;
    for i in (1..=c).filter(|&i| i != x) {
        let t = tri(i, x, y);
        let pos = family.triangles().binary_search(&t).expect("triangle of T_(c,b)");
        numerators[pos] += sign_triangle_edge(&t, &edge(x, y)) as i64;
        let t = tri(i, x, last);
        let pos = family.triangles().binary_search(&t).expect("triangle of T_(c,b)");
        numerators[pos] -= sign_triangle_edge(&t, &edge(x, last)) as i64;
    }
    Ok(RationalVector {
        index: family.iter().map(|t| t.vertices().to_vec()).collect(),
        numerators,
        denominator: 1,
    })
}

/// `w_{x,y} = 1_{{x,y}} + (1/b)·Σ_{i=c+1}^{b+c} (−1_{{x,i}} + 1_{{y,i}})`,
/// an eigenvector of `L₁^up(T_{c,b})` for eigenvalue `b+c`.
pub fn eigvec_bc(spec: &GcbSpec, x: u32, y: u32) -> Result<RationalVector> {
    let (c, b) = (spec.c, spec.b);
    if !(1 <= x && x < y && y <= c) {
        return Err(Error::InvalidArgument(format!(
            "w_(x,y) needs 1 <= x < y <= c; got c={c}, x={x}, y={y}"
        )));
    }
    let edges = spec.edges();
    let mut numerators = vec![0i64; edges.len()];
    let pos = |e: Edge| edges.binary_search(&e).expect("edge of G_(c,b)");
    numerators[pos(edge(x, y))] = b as i64;
    for i in c + 1..=c + b {
        numerators[pos(edge(x, i))] -= 1;
        numerators[pos(edge(y, i))] += 1;
    }
    Ok(RationalVector {
        index: edges.iter().map(|e| e.endpoints().to_vec()).collect(),
        numerators,
        denominator: b as i64,
    })
}

/// `N = (C(a,3)+x·C(a,2)) + (C(a+1,3)+y·C(a+1,2)) + (C(a+2,3)+z·C(a+2,2))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetDecomposition {
    pub a: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub n: u64,
    /// Set when `n` is below `2a³+2a²+1` and a certificate was still found.
    pub below_guarantee: bool,
}

impl BudgetDecomposition {
    pub fn reconstruct(a: u64, x: u64, y: u64, z: u64) -> u64 {
        (0..3)
            .zip([x, y, z])
            .map(|(i, k)| binom(a + i, 3) + k * binom(a + i, 2))
            .sum()
    }

    pub fn is_valid(&self) -> bool {
        self.a >= 3
            && self.x >= 1
            && self.y >= 1
            && self.z >= 1
            && Self::reconstruct(self.a, self.x, self.y, self.z) == self.n
    }

    /// The three `(c, b)` parameters of the blocks `T_{a,x}`, `T_{a+1,y}`, `T_{a+2,z}`.
    pub fn blocks(&self) -> Result<[GcbSpec; 3]> {
        let a = self.a as u32;
        Ok([
            GcbSpec::new(a, self.x as u32)?,
            GcbSpec::new(a + 1, self.y as u32)?,
            GcbSpec::new(a + 2, self.z as u32)?,
        ])
    }

    pub fn family(&self) -> Result<TriangleFamily> {
        let [p, q, r] = self.blocks()?;
        Ok(gcb_family(&p).disjoint_union(&gcb_family(&q)).disjoint_union(&gcb_family(&r)))
    }
}

pub fn frobenius_threshold(a: u64) -> u64 {
    2 * a * a * a + 2 * a * a + 1
}

/// Writes `n` as a sum of three consecutive join-family sizes with every
/// multiplier at least 1.
///
/// Above `2a³+2a²+1` this follows the constructive argument: reserve one unit
/// of each multiplier, pick the interval `I_q` containing the remainder, solve
/// the coin problem with coins `a` and `2a+1` (smallest `z` first) and let
/// `x` absorb the rest. Below the threshold a bounded scan is tried.
pub fn frobenius_decompose(a: u64, n: u64) -> Result<BudgetDecomposition> {
    if a < 3 {
        return Err(Error::InvalidArgument(format!("Frobenius decomposition needs a >= 3, got {a}")));
    }
    let threshold = frobenius_threshold(a);
    if n < threshold {
        return scan_below_threshold(a, n).ok_or(Error::BelowFrobeniusThreshold { a, n, threshold });
    }
    let pair = binom(a, 2);
    let reserved: u64 = (0..3).map(|i| binom(a + i, 3) + binom(a + i, 2)).sum();
    let rest = n - reserved;
    let floor = 2 * a * (a - 1);
    // First q with rest <= q·(C(a,2) + a); then rest >= q·C(a,2) + 2a(a-1).
    let q = rest.div_ceil(pair + a);
    let residue = rest
        .checked_sub(q * pair)
        .filter(|r| *r >= floor && *r <= q * a)
        .ok_or_else(|| Error::Internal(format!("no interval I_q contains {rest} for a = {a}")))?;
    let coin = 2 * a + 1;
    let (y, z) = (0..=residue / coin)
        .find_map(|z| {
            let left = residue - z * coin;
            left.is_multiple_of(a).then_some((left / a, z))
        })
        .ok_or_else(|| Error::Internal(format!("coin problem has no solution for {residue}")))?;
    let x = q - y - z;
    let out = BudgetDecomposition { a, x: x + 1, y: y + 1, z: z + 1, n, below_guarantee: false };
    debug_assert!(out.is_valid());
    Ok(out)
}

fn scan_below_threshold(a: u64, n: u64) -> Option<BudgetDecomposition> {
    let (pa, pb, pc) = (binom(a, 2), binom(a + 1, 2), binom(a + 2, 2));
    let base: u64 = (0..3).map(|i| binom(a + i, 3)).sum();
    let rest = n.checked_sub(base)?;
    for z in 1..=rest / pc {
        for y in 1..=(rest - z * pc) / pb {
            let left = rest - z * pc - y * pb;
            if left >= pa && left % pa == 0 {
                return Some(BudgetDecomposition { a, x: left / pa, y, z, n, below_guarantee: true });
            }
        }
    }
    None
}

/// Largest `a` with `3a³ <= t`, i.e. `⌊(t/3)^{1/3}⌋` in exact arithmetic.
pub fn floor_cbrt_third(t: u64) -> u64 {
    let mut a = ((t as f64 / 3.0).cbrt()) as u64;
    while 3 * (a + 1).pow(3) <= t {
        a += 1;
    }
    while a > 0 && 3 * a.pow(3) > t {
        a -= 1;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiLowerBound {
    pub family: TriangleFamily,
    pub a: u64,
    pub decomposition: BudgetDecomposition,
}

/// `T_{a,x} ⊔ T_{a+1,y} ⊔ T_{a+2,z}` with exactly `t` triangles and
/// `λ >= a = ⌊(t/3)^{1/3}⌋`.
pub fn phi_lower_bound_family(t: u64) -> Result<PhiLowerBound> {
    if t < 81 {
        return Err(Error::InvalidArgument(format!("growth construction needs t >= 81, got {t}")));
    }
    let a = floor_cbrt_third(t);
    let decomposition = frobenius_decompose(a, t)?;
    let family = decomposition.family()?;
    debug_assert_eq!(family.len() as u64, t);
    Ok(PhiLowerBound { family, a, decomposition })
}
