//! Parameter arithmetic for the k-forested choosability bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// How strictly [`params`] checks its inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamMode {
    /// `M >= k >= 4`, the setting in which the upper bounds hold.
    #[default]
    Strict,
    /// Only `k >= 2` and `M >= 1`; individual configurations state their
    /// own requirements on `(p, k)`.
    Relaxed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub k: usize,
    pub p: usize,
    /// The degree cap `M`.
    pub max_degree: usize,
    /// `Q = ceil(M / (k - 1))`.
    pub base: usize,
    /// `q = Q + p`, the list size.
    pub q: usize,
}

pub fn params(max_degree: usize, k: usize, p: usize, mode: ParamMode) -> Result<Parameters> {
    if !(1..=3).contains(&p) {
        return Err(Error::InvalidParameter(format!("p must be 1, 2 or 3, got {p}")));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if max_degree == 0 {
        return Err(Error::InvalidParameter("M must be positive".into()));
    }
    if mode == ParamMode::Strict && (k < 4 || max_degree < k) {
        return Err(Error::InvalidParameter(format!("need M >= k >= 4, got M={max_degree}, k={k}")));
    }
    let base = max_degree.div_ceil(k - 1);
    let q = base + p;
    if max_degree >= k {
        assert!(base >= 2 && q >= p + 2, "M >= k forces Q >= 2");
    }
    Ok(Parameters { k, p, max_degree, base, q })
}

/// `ceil(Δ / (k - 1)) + 1`, a lower bound on the k-forested chromatic (and
/// hence choice) number of any graph with maximum degree `Δ`.
pub fn lower_bound(max_degree: usize, k: usize) -> usize {
    assert!(k >= 2, "k must be at least 2");
    max_degree.div_ceil(k - 1) + 1
}

/// The mad threshold belonging to part `p`: 12/5, 8/3 or 3.
pub fn mad_threshold(p: usize) -> Result<Rational> {
    match p {
        1 => Ok(rational::ratio(12, 5)),
        2 => Ok(rational::ratio(8, 3)),
        3 => Ok(rational::integer(3)),
        _ => Err(Error::InvalidParameter(format!("p must be 1, 2 or 3, got {p}"))),
    }
}

/// Smallest part `p` whose mad threshold exceeds `mad`, if any.
pub fn part_for_mad(mad: &Rational) -> Option<usize> {
    (1..=3).find(|&p| mad < &mad_threshold(p).expect("p in range"))
}

/// Upper bound on the k-forested choice number of a graph with maximum
/// degree at most `M` and the given mad: `ceil(M / (k - 1)) + p` for the
/// first part `p` whose threshold exceeds `mad`. Meaningful for `M >= k >= 4`.
pub fn upper_bound(mad: &Rational, max_degree: usize, k: usize) -> Option<usize> {
    if k < 2 {
        return None;
    }
    part_for_mad(mad).map(|p| max_degree.div_ceil(k - 1) + p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    #[test]
    fn parameter_arithmetic() {
        let p = params(6, 4, 1, ParamMode::Strict).unwrap();
        assert_eq!((p.base, p.q), (2, 3));
        let p = params(7, 4, 3, ParamMode::Strict).unwrap();
        assert_eq!((p.base, p.q), (3, 6));
        for k in 4..12 {
            assert_eq!(params(k, k, 2, ParamMode::Strict).unwrap().base, 2);
        }
        assert!(params(3, 4, 1, ParamMode::Strict).is_err());
        assert!(params(6, 3, 1, ParamMode::Strict).is_err());
        assert!(params(6, 4, 4, ParamMode::Strict).is_err());
        let relaxed = params(2, 3, 1, ParamMode::Relaxed).unwrap();
        assert_eq!((relaxed.base, relaxed.q), (1, 2));
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(6, 4), 3);
        assert_eq!(lower_bound(0, 4), 1);
        assert_eq!(lower_bound(5, 4), 3);
        assert_eq!(lower_bound(3, 3), 3);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound(&integer(2), 6, 4), Some(3));
        assert_eq!(upper_bound(&ratio(12, 5), 6, 4), Some(4));
        assert_eq!(upper_bound(&ratio(14, 5), 6, 4), Some(5));
        assert_eq!(upper_bound(&integer(3), 6, 4), None);
    }
}
