//! Invariant suites run by `trispec verify`: one [`CheckResult`] per family
//! or parameter point, each with a pass flag and, where it makes sense, the
//! numerical residual that decided it.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    binom, complete_family, eigvec_bc, eigvec_c, exact_eigen_residual, gcb_closed_form_spectrum, gcb_family, GcbSpec,
};
use crate::error::{Error, Result};
use crate::extremal::checks::{check_counting, check_overlap, check_rigidity, RigidityVerdict};
use crate::family::TriangleFamily;
use crate::incidence::{Coboundaries, LaplacianKind};
use crate::matrix::IntMatrix;
use crate::random::{random_subfamily, rng, seeded_families};
use crate::rank::exact_rank;
use crate::spectra::{down_spectrum, laplacian_spectrum, verify_min_gap};

pub const SPECTRUM_TOLERANCE: f64 = 1e-8;
pub const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Hodge,
    Overlap,
    Counting,
    Rigidity,
    Gcb,
    MinGap,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Hodge, Suite::Overlap, Suite::Counting, Suite::Rigidity, Suite::Gcb, Suite::MinGap];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hodge => "hodge",
            Suite::Overlap => "overlap",
            Suite::Counting => "counting",
            Suite::Rigidity => "rigidity",
            Suite::Gcb => "gcb",
            Suite::MinGap => "mingap",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub pass: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub c: RangeInclusive<u32>,
    pub b: RangeInclusive<u32>,
    pub random: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { c: 3..=5, b: 1..=3, random: 50, seed: 0 }
    }
}

/// The intro examples on four vertices.
pub fn intro_families() -> Vec<TriangleFamily> {
    [
        vec![[1, 2, 3]],
        vec![[1, 2, 3], [1, 2, 4]],
        vec![[1, 2, 3], [1, 2, 4], [1, 3, 4]],
        vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]],
    ]
    .iter()
    .map(|t| TriangleFamily::from_triples(t).expect("valid triples"))
    .collect()
}

/// Seeded random families followed by `K_3..K_8`, the `T_{c,b}` grid and the
/// intro examples.
pub fn audit_families(opts: &VerifyOptions) -> Result<Vec<(String, TriangleFamily)>> {
    let mut out: Vec<(String, TriangleFamily)> = seeded_families(opts.seed, opts.random)
        .into_iter()
        .enumerate()
        .map(|(i, f)| (format!("random[{i}] seed={}", opts.seed), f))
        .collect();
    for n in 3..=8 {
        out.push((format!("kn:{n}"), complete_family(n)?));
    }
    for spec in grid(opts)? {
        out.push((format!("gcb:{},{}", spec.c(), spec.b()), gcb_family(&spec)));
    }
    for (i, f) in intro_families().into_iter().enumerate() {
        out.push((format!("intro T{}", i + 1), f));
    }
    Ok(out)
}

fn grid(opts: &VerifyOptions) -> Result<Vec<GcbSpec>> {
    let mut out = Vec::new();
    for c in opts.c.clone() {
        for b in opts.b.clone() {
            out.push(GcbSpec::new(c, b)?);
        }
    }
    Ok(out)
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    match suite {
        Suite::Gcb => grid(opts)?.par_iter().map(check_gcb).collect::<Result<Vec<_>>>().map(flatten),
        Suite::Rigidity => rigidity_suite(opts),
        _ => {
            let families = audit_families(opts)?;
            families
                .par_iter()
                .map(|(name, f)| match suite {
                    Suite::Hodge => check_hodge(name, f),
                    Suite::Overlap => overlap(name, f),
                    Suite::Counting => counting(name, f),
                    Suite::MinGap => min_gap(name, f),
                    Suite::Gcb | Suite::Rigidity => unreachable!(),
                })
                .collect()
        }
    }
}

pub fn run_all(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        out.extend(run(suite, opts)?);
    }
    Ok(out)
}

fn flatten(v: Vec<Vec<CheckResult>>) -> Vec<CheckResult> {
    v.into_iter().flatten().collect()
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `δ₁δ₀ = 0`, `rank δ₀ + rank δ₁ + dim(ker δ₀ᵀ ∩ ker δ₁) = |E|`, and equal
/// nonzero spectra of `L₁^up` and `L₂^down`.
pub fn check_hodge(name: &str, family: &TriangleFamily) -> Result<CheckResult> {
    let cob = Coboundaries::new(family)?;
    let composite_zero = cob.delta1.matrix.matmul(&cob.delta0.matrix).is_zero();
    let edges = cob.graph.edge_count();
    let r0 = exact_rank(&cob.delta0.matrix);
    let r1 = exact_rank(&cob.delta1.matrix);
    let harmonic = edges - exact_rank(&cob.factor(LaplacianKind::L1Total));
    let up = laplacian_spectrum(family, LaplacianKind::L1Up)?;
    let down = laplacian_spectrum(family, LaplacianKind::L2Down)?;
    let same_len = up.positive().len() == down.positive().len();
    let residual = if same_len { max_abs_diff(up.positive(), down.positive()) } else { f64::INFINITY };
    let pass = composite_zero && r0 + r1 + harmonic == edges && residual <= SPECTRUM_TOLERANCE;
    Ok(CheckResult {
        suite: Suite::Hodge,
        name: name.to_string(),
        pass,
        residual: Some(residual),
        detail: format!(
            "d1*d0=0: {composite_zero}; rank d0 {r0} + rank d1 {r1} + harmonic {harmonic} = {} vs |E| {edges}",
            r0 + r1 + harmonic
        ),
    })
}

fn overlap(name: &str, family: &TriangleFamily) -> Result<CheckResult> {
    let c = check_overlap(family)?;
    Ok(CheckResult {
        suite: Suite::Overlap,
        name: name.to_string(),
        pass: c.pass,
        residual: None,
        detail: format!(
            "lambda {:.10} n {} d_e {} d_min {} |V| {} min triangles/vertex {}{}",
            c.lambda,
            c.n,
            c.min_edge_codegree,
            c.min_degree,
            c.vertex_count,
            c.min_vertex_triangles,
            if c.near_integer { " (lambda near integer)" } else { "" }
        ),
    })
}

fn counting(name: &str, family: &TriangleFamily) -> Result<CheckResult> {
    Ok(match check_counting(family)? {
        None => CheckResult {
            suite: Suite::Counting,
            name: name.to_string(),
            pass: true,
            residual: None,
            detail: "lambda <= 2: not applicable".into(),
        },
        Some(c) => CheckResult {
            suite: Suite::Counting,
            name: name.to_string(),
            pass: c.pass,
            residual: None,
            detail: format!(
                "v {} <= {:.4}, e {} <= {:.4}, v {} <= {:.4} (n = {})",
                c.v, c.vertex_edge_bound, c.e, c.edge_triangle_bound, c.v, c.vertex_triangle_bound, c.ceil_lambda
            ),
        },
    })
}

fn min_gap(name: &str, family: &TriangleFamily) -> Result<CheckResult> {
    let m = verify_min_gap(family)?;
    Ok(CheckResult {
        suite: Suite::MinGap,
        name: name.to_string(),
        pass: m.pass,
        residual: Some(m.residual),
        detail: format!(
            "L1 {:.10} L0 {:.10} lambda {:.10}",
            m.lambda_min_plus_l1_total, m.lambda_min_plus_l0, m.lambda
        ),
    })
}

fn rigidity_result(name: String, n: u32, family: &TriangleFamily) -> Result<CheckResult> {
    let verdict = check_rigidity(n, family)?;
    let detail = match &verdict {
        RigidityVerdict::BelowThreshold { lambda, .. } => format!("|T| {} < C({n},3): lambda {lambda:.10} <= {}", family.len(), n - 1),
        RigidityVerdict::Rigid { lambda, vertex_count, .. } => {
            format!("|T| = C({n},3), lambda {lambda:.10} > {}: |V| = {vertex_count}", n - 1)
        }
        RigidityVerdict::AtThresholdLow { lambda } => format!("|T| = C({n},3), lambda {lambda:.10} <= {}", n - 1),
        RigidityVerdict::NotApplicable => "not applicable".into(),
    };
    Ok(CheckResult { suite: Suite::Rigidity, name, pass: verdict.holds(), residual: None, detail })
}

fn rigidity_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let mut cases: Vec<(String, u32, TriangleFamily)> = Vec::new();
    for n in 3..=7 {
        cases.push((format!("kn:{n}"), n, complete_family(n)?));
    }
    // Every audit family against the first clique threshold it does not exceed.
    for (name, f) in audit_families(opts)? {
        let n = (3..).find(|&n| binom(n, 3) >= f.len() as u64).expect("finite") as u32;
        cases.push((name, n, f));
    }
    // Budgets at and just below C(5,3) and C(6,3) spread over more vertices.
    let mut r = rng(opts.seed);
    for i in 0..opts.random.max(1) {
        for (n, v, t) in [(5u32, 6u32, 9usize), (5, 7, 10), (6, 7, 20), (6, 8, 19)] {
            cases.push((format!("random {t} on {v} [{i}] seed={}", opts.seed), n, random_subfamily(&mut r, v, t)));
        }
    }
    cases.par_iter().map(|(name, n, f)| rigidity_result(format!("{name} n={n}"), *n, f)).collect()
}

/// Spectrum table, `λ(T_{c,b})`, exact eigenvector residuals and ranks.
pub fn check_gcb(spec: &GcbSpec) -> Result<Vec<CheckResult>> {
    let (c, b) = (spec.c(), spec.b());
    let tag = format!("gcb:{c},{b}");
    let family = gcb_family(spec);
    let expected = gcb_closed_form_spectrum(spec);
    let computed = down_spectrum(&family)?;
    let clusters = cluster(&computed.eigenvalues, CLUSTER_RADIUS);

    let mut residual = 0.0f64;
    let mut shape_ok = clusters.len() == expected.rows.len();
    for ((value, mult), row) in clusters.iter().zip(&expected.rows) {
        residual = residual.max((value - row.eigenvalue as f64).abs());
        shape_ok &= *mult as u64 == row.multiplicity;
    }
    let mut out = vec![CheckResult {
        suite: Suite::Gcb,
        name: format!("{tag} spectrum"),
        pass: shape_ok && residual <= SPECTRUM_TOLERANCE,
        residual: Some(residual),
        detail: format!("computed {:?} expected {:?}", clusters, expected.as_pairs()),
    }];

    let want = if b == 1 { c + 1 } else { c } as f64;
    let got = computed.lambda_min_plus().ok_or(Error::NoPositiveEigenvalue)?;
    out.push(CheckResult {
        suite: Suite::Gcb,
        name: format!("{tag} lambda"),
        pass: (got - want).abs() <= SPECTRUM_TOLERANCE,
        residual: Some((got - want).abs()),
        detail: format!("lambda {got:.12} expected {want}"),
    });

    let cob = Coboundaries::new(&family)?;
    let down = cob.laplacian(LaplacianKind::L2Down).matrix;
    let up = cob.laplacian(LaplacianKind::L1Up).matrix;

    let mut rows = Vec::new();
    let mut worst = 0i64;
    if b >= 2 {
        for x in 2..=c {
            for y in c + 1..=b + c - 1 {
                let v = eigvec_c(spec, x, y)?;
                worst = worst.max(exact_eigen_residual(&down, &v, c as i64).iter().map(|r| r.abs()).max().unwrap_or(0));
                rows.push(v.numerators);
            }
        }
    }
    let rank = if rows.is_empty() { 0 } else { exact_rank(&IntMatrix::from_rows(rows)) };
    let want_rank = ((b - 1) * (c - 1)) as usize;
    out.push(CheckResult {
        suite: Suite::Gcb,
        name: format!("{tag} eigenvectors c"),
        pass: worst == 0 && rank == want_rank,
        residual: Some(worst as f64),
        detail: format!("max exact residual {worst}, rank {rank} (expected {want_rank})"),
    });

    let mut rows = Vec::new();
    let mut worst = 0i64;
    for x in 1..=c {
        for y in x + 1..=c {
            let w = eigvec_bc(spec, x, y)?;
            worst = worst.max(
                exact_eigen_residual(&up, &w, (b + c) as i64).iter().map(|r| r.abs()).max().unwrap_or(0),
            );
            rows.push(w.numerators);
        }
    }
    let rank = exact_rank(&IntMatrix::from_rows(rows));
    let want_rank = binom(c as u64, 2) as usize;
    out.push(CheckResult {
        suite: Suite::Gcb,
        name: format!("{tag} eigenvectors b+c"),
        pass: worst == 0 && rank == want_rank,
        residual: Some(worst as f64),
        detail: format!("max exact residual {worst}, rank {rank} (expected {want_rank})"),
    });
    Ok(out)
}

/// Groups an ascending list into runs whose consecutive gaps are at most
/// `radius`; returns `(mean, size)` per run.
pub fn cluster(values: &[f64], radius: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &v in values {
        match out.last_mut() {
            Some((sum, count)) if v - last <= radius => {
                *sum += v;
                *count += 1;
            }
            _ => out.push((v, 1)),
        }
        last = v;
    }
    out.into_iter().map(|(sum, count)| (sum / count as f64, count)).collect()
}
