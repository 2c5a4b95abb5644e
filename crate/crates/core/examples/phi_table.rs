use std::time::Instant;
use trispec::extremal::{enumerate_connected_families, phi_table, SearchConfig};

fn main() {
    let t: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let prune = std::env::args().nth(2).as_deref() != Some("noprune");
    let start = Instant::now();
    let table = phi_table(t, &SearchConfig { prune, ..Default::default() }).unwrap();
    for e in table.entries.values() {
        println!("t={} phi={} exhaustive={} classes={} pruned={} parts={:?}", e.t, e.phi, e.exhaustive, e.classes, e.pruned, e.partition);
    }
    println!("elapsed {:?}", start.elapsed());
    for s in 1..=t.min(4) {
        println!("classes({s}) = {}", enumerate_connected_families(s, 2 * s + 1).unwrap().len());
    }
}
