//! Plain-text family files: one triangle per line, three whitespace-separated
//! non-negative integers. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{Triangle, TriangleFamily, Vertex};

pub fn parse_family(text: &str) -> Result<TriangleFamily> {
    let mut triangles = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 3 vertices, found {}", fields.len()),
            });
        }
        let mut v = [0 as Vertex; 3];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{field}` is not a non-negative integer"),
            })?;
        }
        let t = Triangle::new(v[0], v[1], v[2]).map_err(|_| Error::Parse {
            line: line_no,
            message: "repeated vertex within a triangle".into(),
        })?;
        triangles.push(t);
    }
    Ok(TriangleFamily::new(triangles))
}

pub fn format_family(family: &TriangleFamily) -> String {
    let mut out = String::with_capacity(family.len() * 12);
    for t in family {
        let [a, b, c] = t.vertices();
        let _ = writeln!(out, "{a} {b} {c}");
    }
    out
}
