//! MatrixMarket coordinate files for integer matrices.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

const HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

/// Writes the nonzero entries, 1-based, row-major. `comments` become `%`
/// lines after the header.
pub fn write_matrix_market<W: Write>(out: &mut W, m: &IntMatrix, comments: &[String]) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    for c in comments {
        writeln!(out, "% {c}")?;
    }
    writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for i in 0..m.rows() {
        for (j, &v) in m.row(i).iter().enumerate() {
            if v != 0 {
                writeln!(out, "{} {} {}", i + 1, j + 1, v)?;
            }
        }
    }
    Ok(())
}

pub fn read_matrix_market<R: BufRead>(input: R) -> Result<IntMatrix> {
    let mut lines = input.lines().enumerate();
    let bad = |line: usize, message: String| Error::Parse { line: line + 1, message };
    let (_, first) = lines.next().ok_or_else(|| bad(0, "empty file".into()))?;
    let first = first?;
    let banner: Vec<String> = first.split_whitespace().map(str::to_ascii_lowercase).collect();
    if banner.len() != 5 || banner[0] != "%%matrixmarket" || banner[1] != "matrix" || banner[2] != "coordinate" {
        return Err(bad(0, format!("unsupported banner `{first}`")));
    }
    if banner[3] != "integer" {
        return Err(bad(0, format!("field `{}` is not integer", banner[3])));
    }
    let symmetric = match banner[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(bad(0, format!("unsupported symmetry `{other}`"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut m = IntMatrix::zeros(0, 0);
    let mut seen = 0;
    for (n, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match size {
            None => {
                let v: Vec<usize> = fields
                    .iter()
                    .map(|f| f.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(n, format!("bad size line `{line}`")))?;
                if v.len() != 3 {
                    return Err(bad(n, format!("bad size line `{line}`")));
                }
                size = Some((v[0], v[1], v[2]));
                m = IntMatrix::zeros(v[0], v[1]);
            }
            Some((rows, cols, _)) => {
                if fields.len() != 3 {
                    return Err(bad(n, format!("expected `row col value`, got `{line}`")));
                }
                let i: usize = fields[0].parse().map_err(|_| bad(n, format!("bad row `{}`", fields[0])))?;
                let j: usize = fields[1].parse().map_err(|_| bad(n, format!("bad column `{}`", fields[1])))?;
                let v: i64 = fields[2].parse().map_err(|_| bad(n, format!("bad value `{}`", fields[2])))?;
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(bad(n, format!("entry ({i}, {j}) outside {rows}x{cols}")));
                }
                m[(i - 1, j - 1)] = v;
                if symmetric {
                    m[(j - 1, i - 1)] = v;
                }
                seen += 1;
            }
        }
    }
    match size {
        None => Err(bad(0, "missing size line".into())),
        Some((_, _, nnz)) if nnz != seen => Err(bad(0, format!("expected {nnz} entries, found {seen}"))),
        Some(_) => Ok(m),
    }
}
