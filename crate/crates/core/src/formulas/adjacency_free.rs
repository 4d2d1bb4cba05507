use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Decides `σ ≤ π` for an adjacency-free one-descent `π` without searching.
///
/// Such a `π` of length `n` contains every one-descent `σ` shorter than `n`
/// with at most two adjacencies, except:
/// * length `n − 1` with two adjacencies;
/// * length `n − 1` with one adjacency, not related to `π`;
/// * length `n − 2` with two adjacencies, not related to `π`.
pub fn adjacency_free_contains(pi: &Permutation, sigma: &Permutation) -> Result<bool> {
    let n = pi.len();
    if pi.descent_count() != 1 || pi.adjacency_count() != 0 {
        return Err(Error::OutOfScope(format!(
            "{pi} must have exactly one descent and no adjacencies"
        )));
    }
    let adjacencies = sigma.adjacency_count();
    if sigma.descent_count() != 1 || adjacencies > 2 || sigma.len() >= n {
        return Err(Error::OutOfScope(format!(
            "{sigma} must have one descent, at most two adjacencies and length below {n}"
        )));
    }
    let m = sigma.len();
    let related = sigma.is_related(pi);
    let excluded = (m + 1 == n && adjacencies == 2)
        || (m + 1 == n && adjacencies == 1 && !related)
        || (m + 2 == n && adjacencies == 2 && !related);
    Ok(!excluded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn exception_lists_for_135246() {
        let pi = p("135246");
        assert!(!adjacency_free_contains(&pi, &p("12354")).unwrap());
        assert!(!adjacency_free_contains(&pi, &p("35124")).unwrap());
        assert!(!adjacency_free_contains(&pi, &p("4123")).unwrap());
        assert!(adjacency_free_contains(&pi, &p("13425")).unwrap());
        assert!(pi.contains(&p("13425")));
    }

    #[test]
    fn preconditions() {
        let pi = p("135246");
        // pi with an adjacency
        assert!(adjacency_free_contains(&p("13425"), &p("21")).is_err());
        // sigma too long, sigma without descent, sigma with three adjacencies
        assert!(adjacency_free_contains(&pi, &p("135246")).is_err());
        assert!(adjacency_free_contains(&pi, &p("123")).is_err());
        assert!(adjacency_free_contains(&p("246813579"), &p("2345167")).is_err());
    }
}
