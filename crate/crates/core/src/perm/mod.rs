//! Permutations of `{0..n-1}` and finitely generated permutation groups.
//!
//! Everything acts on the right: `p.apply(i)` is the image `i·p`, and
//! `p.compose(q)` is the permutation "apply `p`, then `q`".

mod group;
pub mod orbit;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use group::{GenGroup, Transitivity};
pub use orbit::{GroupElement, Orbit};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting anything that is
    /// not a bijection of `{0..len-1}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        let n = images.len();
        let mut hit = vec![false; n];
        for &i in &images {
            if i >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {i} out of range for degree {n}"
                )));
            }
            if hit[i] {
                return Err(Error::InvalidPermutation(format!("image {i} repeated")));
            }
            hit[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `from_cycles(3, &[&[0, 1, 2]])`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(Error::InvalidPermutation(format!(
                        "bad cycle point {a} for degree {degree}"
                    )));
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Ok(Permutation::identity(degree));
        }
        Permutation::from_cycles(degree, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` then `other`: `result[i] = other[self[i]]`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked composition for callers that already know the degrees agree.
    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Permutation) -> Permutation {
        c.inverse().then(self).then(c)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, j)| i != *j)
            .map(|(i, _)| i)
    }
}

impl GroupElement for Permutation {
    fn compose(&self, other: &Self) -> Self {
        self.then(other)
    }

    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }

    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPermutation(format!("expected [..], got {s:?}")))?;
        let images = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPermutation(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

/// All `n!` permutations of degree `n`, in lexicographic order of image lists.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    use itertools::Itertools;
    (0..n).permutations(n).map(|images| Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            Permutation::identity(3).compose(&p(&[1, 0, 2])).unwrap(),
            p(&[1, 0, 2])
        );
        assert_eq!(
            p(&[1, 0, 2]).compose(&p(&[0, 2, 1])).unwrap(),
            p(&[2, 0, 1])
        );
        assert_eq!(
            p(&[1, 2, 0]).compose(&p(&[2, 0, 1])).unwrap(),
            p(&[0, 1, 2])
        );
    }

    #[test]
    fn compose_applies_left_factor_first() {
        // 0 -> 1 under the left factor, then 1 -> 2 under the right one.
        let a = p(&[1, 0, 2]);
        let b = p(&[0, 2, 1]);
        let ab = a.compose(&b).unwrap();
        for i in 0..3 {
            assert_eq!(ab.apply(i), b.apply(a.apply(i)));
        }
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = p(&[0, 1]).compose(&p(&[0, 1, 2])).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert!("1,0".parse::<Permutation>().is_err());
    }

    #[test]
    fn cycles() {
        assert_eq!(
            Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            p(&[1, 2, 0])
        );
        assert_eq!(
            Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            p(&[1, 0, 3, 2])
        );
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[1, 0, 2]).to_string(), "[1,0,2]");
        assert_eq!(" [2, 0,1] ".parse::<Permutation>().unwrap(), p(&[2, 0, 1]));
    }

    #[test]
    fn all_permutations_counts() {
        assert_eq!(all_permutations(1).count(), 1);
        assert_eq!(all_permutations(3).count(), 6);
        assert_eq!(all_permutations(4).count(), 24);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn associativity(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_law(a in arb_perm(7)) {
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
        }

        #[test]
        fn parse_round_trip(a in arb_perm(9)) {
            prop_assert_eq!(a.to_string().parse::<Permutation>().unwrap(), a);
        }
    }
}
