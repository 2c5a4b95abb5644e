//! Named constructions: `kn:n`, `gcb:c,b`, `frob:a,N`, `phi-lb:t`.

use crate::constructions::{complete_family, frobenius_decompose, gcb_family, phi_lower_bound_family, GcbSpec};
use crate::error::{Error, Result};
use crate::family::TriangleFamily;

fn numbers(name: &str, args: &str, want: usize) -> Result<Vec<u64>> {
    let parts: Vec<u64> = args
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("`{name}:{args}`: expected {want} non-negative integers")))?;
    if parts.len() != want {
        return Err(Error::InvalidArgument(format!("`{name}:{args}`: expected {want} arguments, got {}", parts.len())));
    }
    Ok(parts)
}

fn small(v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidArgument(format!("{v} is too large")))
}

/// True when `s` looks like a construction name rather than a path.
pub fn is_construction_name(s: &str) -> bool {
    ["kn:", "gcb:", "frob:", "phi-lb:"].iter().any(|p| s.starts_with(p))
}

pub fn construct(name: &str) -> Result<TriangleFamily> {
    let (kind, args) = name
        .split_once(':')
        .ok_or_else(|| Error::InvalidArgument(format!("`{name}` is not a construction name")))?;
    match kind {
        "kn" => complete_family(small(numbers(kind, args, 1)?[0])?),
        "gcb" => {
            let v = numbers(kind, args, 2)?;
            Ok(gcb_family(&GcbSpec::new(small(v[0])?, small(v[1])?)?))
        }
        "frob" => {
            let v = numbers(kind, args, 2)?;
            frobenius_decompose(v[0], v[1])?.family()
        }
        "phi-lb" => Ok(phi_lower_bound_family(numbers(kind, args, 1)?[0])?.family),
        _ => Err(Error::InvalidArgument(format!(
            "unknown construction `{kind}` (expected kn, gcb, frob or phi-lb)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(construct("kn:5").unwrap().len(), 10);
        assert_eq!(construct("gcb:4,2").unwrap().len(), 16);
        assert_eq!(construct("frob:3,73").unwrap().len(), 73);
        assert_eq!(construct("phi-lb:81").unwrap().len(), 81);
        assert!(construct("kn").is_err());
        assert!(construct("gcb:4").is_err());
        assert!(construct("foo:1").is_err());
        assert!(construct("kn:x").is_err());
        assert!(is_construction_name("phi-lb:100"));
        assert!(!is_construction_name("fam.txt"));
    }
}
