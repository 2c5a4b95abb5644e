//! Seeded random families for audits.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{Triangle, TriangleFamily, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn all_triangles(v: Vertex) -> Vec<Triangle> {
    let mut out = Vec::new();
    for a in 1..=v {
        for b in a + 1..=v {
            for c in b + 1..=v {
                out.push(Triangle::new(a, b, c).expect("distinct"));
            }
        }
    }
    out
}

/// Each triangle of `K_v` kept independently with a random density, for a
/// random `v` in `3..=max_vertices`. Never empty.
pub fn random_family<R: Rng>(rng: &mut R, max_vertices: Vertex) -> TriangleFamily {
    let v = rng.gen_range(3..=max_vertices.max(3));
    let p: f64 = rng.gen_range(0.15..0.75);
    let pool = all_triangles(v);
    let mut chosen: Vec<Triangle> = pool.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    if chosen.is_empty() {
        chosen.push(*pool.choose(rng).expect("v >= 3"));
    }
    TriangleFamily::new(chosen)
}

/// Exactly `count` distinct triangles of `K_v`.
pub fn random_subfamily<R: Rng>(rng: &mut R, v: Vertex, count: usize) -> TriangleFamily {
    let pool = all_triangles(v);
    TriangleFamily::new(pool.choose_multiple(rng, count.min(pool.len())).copied())
}

/// `count` families on at most 8 vertices from one seed.
pub fn seeded_families(seed: u64, count: usize) -> Vec<TriangleFamily> {
    let mut r = rng(seed);
    (0..count).map(|_| random_family(&mut r, 8)).collect()
}

/// The family under a uniformly random bijection of its vertices onto
/// `1..=|V|`.
pub fn random_relabel<R: Rng>(rng: &mut R, family: &TriangleFamily) -> TriangleFamily {
    let verts = family.vertices();
    let mut image: Vec<Vertex> = (1..=verts.len() as Vertex).collect();
    image.shuffle(rng);
    family
        .relabel(|x| image[verts.binary_search(&x).expect("vertex of family")])
        .expect("bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_is_reproducible() {
        assert_eq!(seeded_families(7, 5), seeded_families(7, 5));
        assert_ne!(seeded_families(7, 5), seeded_families(8, 5));
        assert!(seeded_families(1, 50).iter().all(|f| !f.is_empty() && f.vertices().len() <= 8));
    }

    #[test]
    fn subfamily_size() {
        let f = random_subfamily(&mut rng(3), 7, 20);
        assert_eq!(f.len(), 20);
        assert!(f.vertices().len() <= 7);
    }
}
