//! Canonical forms of small triangle families under vertex relabeling.
//!
//! The canonical key is the lexicographically smallest sorted triangle list
//! over the labelings reached by individualization and colour refinement.
//! Refinement only looks at colours and incidences, so isomorphic families
//! reach the same set of relabeled triangle lists and the same minimum.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{Triangle, TriangleFamily};

pub type CanonKey = Vec<[u8; 3]>;

/// Default number of labelings one canonical form may try.
pub const DEFAULT_LABELING_BUDGET: u64 = 5_000_000;

/// Largest vertex count accepted by the canonicalizer.
pub const MAX_CANON_VERTICES: usize = 64;

pub fn canonical_key(family: &TriangleFamily) -> Result<CanonKey> {
    canonical_key_with_budget(family, DEFAULT_LABELING_BUDGET)
}

pub fn canonical_key_with_budget(family: &TriangleFamily, budget: u64) -> Result<CanonKey> {
    let verts = family.vertices();
    if verts.len() > MAX_CANON_VERTICES {
        return Err(Error::CanonicalBudget(format!(
            "{} vertices exceeds the canonical form cap of {MAX_CANON_VERTICES}",
            verts.len()
        )));
    }
    let local: Vec<[u8; 3]> = family
        .iter()
        .map(|t| t.vertices().map(|x| verts.binary_search(&x).unwrap() as u8))
        .collect();
    canonical_key_local(&local, verts.len(), budget)
}

/// Canonical key of a family already labelled `0..v`.
pub(crate) fn canonical_key_local(tris: &[[u8; 3]], v: usize, budget: u64) -> Result<CanonKey> {
    let mut incident: Vec<Vec<[u8; 2]>> = vec![Vec::new(); v];
    for t in tris {
        incident[t[0] as usize].push([t[1], t[2]]);
        incident[t[1] as usize].push([t[0], t[2]]);
        incident[t[2] as usize].push([t[0], t[1]]);
    }
    let mut search = Search { tris, incident: &incident, budget, leaves: 0, best: None, candidate: Vec::new() };
    let colors = refine(&incident, vec![0; v]);
    search.descend(colors)?;
    Ok(search.best.unwrap_or_default())
}

struct Search<'a> {
    tris: &'a [[u8; 3]],
    incident: &'a [Vec<[u8; 2]>],
    budget: u64,
    leaves: u64,
    best: Option<CanonKey>,
    candidate: CanonKey,
}

impl Search<'_> {
    // Individualize each vertex of the first smallest non-singleton cell in
    // turn and refine; discrete colourings are the candidate labelings.
    fn descend(&mut self, colors: Vec<u32>) -> Result<()> {
        let v = colors.len();
        let mut sizes = vec![0usize; v];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..v).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            return self.leaf(&colors);
        };
        for x in 0..v {
            if colors[x] as usize != target {
                continue;
            }
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(y, &c)| 2 * c + u32::from(y != x))
                .collect();
            self.descend(refine(self.incident, split))?;
        }
        Ok(())
    }

    fn leaf(&mut self, colors: &[u32]) -> Result<()> {
        self.leaves += 1;
        if self.leaves > self.budget {
            return Err(Error::CanonicalBudget(format!(
                "more than {} labelings needed; lower --max-vertices",
                self.budget
            )));
        }
        self.candidate.clear();
        self.candidate.extend(self.tris.iter().map(|t| {
            let mut r = t.map(|x| colors[x as usize] as u8);
            r.sort_unstable();
            r
        }));
        self.candidate.sort_unstable();
        if self.best.as_ref().is_none_or(|b| self.candidate < *b) {
            self.best = Some(self.candidate.clone());
        }
        Ok(())
    }
}

/// Colour refinement to a stable partition. Output colours are ranks
/// `0..cells`, ordered consistently with the input colours.
fn refine(incident: &[Vec<[u8; 2]>], mut colors: Vec<u32>) -> Vec<u32> {
    let v = colors.len();
    let mut cell_count = usize::MAX;
    loop {
        let signatures: Vec<(u32, Vec<[u32; 2]>)> = (0..v)
            .map(|x| {
                let mut around: Vec<[u32; 2]> = incident[x]
                    .iter()
                    .map(|&[a, b]| {
                        let (ca, cb) = (colors[a as usize], colors[b as usize]);
                        [ca.min(cb), ca.max(cb)]
                    })
                    .collect();
                around.sort_unstable();
                (colors[x], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort_unstable();
        distinct.dedup();
        colors = signatures
            .iter()
            .map(|s| distinct.binary_search(s).unwrap() as u32)
            .collect();
        if distinct.len() == cell_count {
            return colors;
        }
        cell_count = distinct.len();
    }
}

/// Family with labels `1..=v` for a canonical key.
pub fn key_to_family(key: &[[u8; 3]]) -> TriangleFamily {
    TriangleFamily::new(key.iter().map(|t| {
        Triangle::new(t[0] as u32 + 1, t[1] as u32 + 1, t[2] as u32 + 1).expect("canonical triangle")
    }))
}

pub fn key_vertex_count(key: &[[u8; 3]]) -> usize {
    key.iter().flatten().max().map_or(0, |&m| m as usize + 1)
}

/// `0-1-2,0-1-3`.
pub fn key_to_string(key: &[[u8; 3]]) -> String {
    let mut s = String::with_capacity(key.len() * 7);
    for (i, t) in key.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}-{}-{}", t[0], t[1], t[2]);
    }
    s
}

pub fn parse_key(s: &str) -> Result<CanonKey> {
    let bad = || Error::InvalidArgument(format!("malformed canonical key `{s}`"));
    s.split(',')
        .map(|part| {
            let v: Vec<u8> = part.split('-').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
            <[u8; 3]>::try_from(v).map_err(|_| bad())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(t: &[[u32; 3]]) -> TriangleFamily {
        TriangleFamily::from_triples(t).unwrap()
    }

    #[test]
    fn relabelings_share_a_key() {
        let a = fam(&[[1, 2, 3], [1, 2, 4], [1, 3, 4]]);
        let b = fam(&[[7, 9, 30], [7, 9, 2], [2, 30, 9]]);
        assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
    }

    #[test]
    fn non_isomorphic_families_differ() {
        let edge_shared = fam(&[[1, 2, 3], [1, 2, 4]]);
        let vertex_shared = fam(&[[1, 2, 3], [1, 4, 5]]);
        assert_ne!(canonical_key(&edge_shared).unwrap(), canonical_key(&vertex_shared).unwrap());
    }

    #[test]
    fn key_round_trip() {
        let k = canonical_key(&fam(&[[1, 2, 3], [3, 4, 5]])).unwrap();
        assert_eq!(parse_key(&key_to_string(&k)).unwrap(), k);
        assert_eq!(key_vertex_count(&k), 5);
        assert_eq!(canonical_key(&key_to_family(&k)).unwrap(), k);
        assert!(parse_key("0-1").is_err());
    }

    #[test]
    fn budget_is_enforced() {
        // Eight triangles on a shared edge: the apexes are interchangeable.
        let f = TriangleFamily::new((3..11).map(|k| Triangle::new(1, 2, k).unwrap()));
        assert!(matches!(canonical_key_with_budget(&f, 1000), Err(Error::CanonicalBudget(_))));
        assert!(canonical_key(&f).is_ok());
    }
}
