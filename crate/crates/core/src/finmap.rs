//! Total functions between finite carriers `{0, .., n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total function from a carrier of size `source` to one of size `target`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct FiniteMap {
    source: usize,
    target: usize,
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    source: usize,
    target: usize,
    image: Vec<usize>,
}

impl TryFrom<RawMap> for FiniteMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        if raw.image.len() != raw.source {
            return Err(Error::MalformedInput(format!(
                "map declares source size {} but lists {} images",
                raw.source,
                raw.image.len()
            )));
        }
        FiniteMap::new(raw.target, raw.image)
    }
}

impl From<FiniteMap> for RawMap {
    fn from(map: FiniteMap) -> Self {
        RawMap {
            source: map.source,
            target: map.target,
            image: map.image,
        }
    }
}

impl FiniteMap {
    /// Builds the map `i ↦ image[i]` into a carrier of size `target`.
    pub fn new(target: usize, image: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = image.iter().find(|&&y| y >= target) {
            return Err(Error::InvalidElement {
                rank: bad,
                size: target,
            });
        }
        Ok(Self {
            source: image.len(),
            target,
            image,
        })
    }

    pub(crate) fn new_unchecked(target: usize, image: Vec<usize>) -> Self {
        debug_assert!(image.iter().all(|&y| y < target));
        Self {
            source: image.len(),
            target,
            image,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::new_unchecked(n, (0..n).collect())
    }

    pub fn constant(source: usize, target: usize, value: usize) -> Result<Self> {
        Self::new(target, vec![value; source])
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `next ∘ self`. Panics if the carriers do not line up.
    pub fn then(&self, next: &FiniteMap) -> FiniteMap {
        assert_eq!(
            self.target, next.source,
            "composing {self:?} with {next:?}: carrier mismatch"
        );
        FiniteMap::new_unchecked(next.target, self.image.iter().map(|&y| next.image[y]).collect())
    }

    pub fn try_then(&self, next: &FiniteMap) -> Result<FiniteMap> {
        if self.target != next.source {
            return Err(Error::IncompatibleStructures(format!(
                "cannot compose a map into {} points with a map out of {} points",
                self.target, next.source
            )));
        }
        Ok(self.then(next))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target];
        self.image.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target];
        for &y in &self.image {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.image.iter().enumerate().all(|(i, &y)| i == y)
    }

    /// Sorted, duplicate-free list of values hit by the map.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.image.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Every function from `source` points to `target` points, in
    /// lexicographic order of the image table.
    pub fn all(source: usize, target: usize) -> AllMaps {
        AllMaps::new(source, target)
    }
}

impl fmt::Debug for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}{:?}", self.source, self.target, self.image)
    }
}

/// Odometer over all image tables of a given shape.
pub struct AllMaps {
    target: usize,
    next: Option<Vec<usize>>,
}

impl AllMaps {
    fn new(source: usize, target: usize) -> Self {
        let next = if source > 0 && target == 0 {
            None
        } else {
            Some(vec![0; source])
        };
        Self { target, next }
    }
}

impl Iterator for AllMaps {
    type Item = FiniteMap;

    fn next(&mut self) -> Option<FiniteMap> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for digit in succ.iter_mut().rev() {
            *digit += 1;
            if *digit < self.target {
                carried = false;
                break;
            }
            *digit = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(FiniteMap::new_unchecked(self.target, current))
    }
}

/// Surjections from `n` points onto `{0..k-1}` for every `k`, in canonical
/// form: the first occurrence of each value is in increasing order
/// (restricted growth strings). Each set partition of the domain appears
/// exactly once.
pub fn canonical_surjections(n: usize) -> Vec<FiniteMap> {
    fn grow(prefix: &mut Vec<usize>, blocks: usize, n: usize, out: &mut Vec<FiniteMap>) {
        if prefix.len() == n {
            out.push(FiniteMap::new_unchecked(blocks, prefix.clone()));
            return;
        }
        for b in 0..=blocks {
            prefix.push(b);
            grow(prefix, blocks.max(b + 1), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(n), 0, n, &mut out);
    out
}

/// Index of the function `values: X → A` inside `A^X`, little-endian base
/// `base`.
pub fn encode_function(values: &[usize], base: usize) -> usize {
    values.iter().rev().fold(0, |acc, &v| acc * base + v)
}

/// Inverse of [`encode_function`].
pub fn decode_function(mut code: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % base);
        code /= base;
    }
    out
}

/// `base^exp` with an overflow check against `cap`.
pub fn checked_power(base: usize, exp: usize, cap: usize) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= cap)
            .ok_or_else(|| Error::ResourceLimit(format!("{base}^{exp} exceeds the cap {cap}")))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_maps_counts() {
        assert_eq!(FiniteMap::all(3, 2).count(), 8);
        assert_eq!(FiniteMap::all(0, 0).count(), 1);
        assert_eq!(FiniteMap::all(2, 0).count(), 0);
        assert_eq!(FiniteMap::all(0, 5).count(), 1);
    }

    #[test]
    fn canonical_surjections_are_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| canonical_surjections(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
        assert!(canonical_surjections(4).iter().all(FiniteMap::is_surjective));
    }

    #[test]
    fn encoding_roundtrips() {
        for code in 0..27 {
            assert_eq!(encode_function(&decode_function(code, 3, 3), 3), code);
        }
    }

    #[test]
    fn rejects_out_of_range_images() {
        assert_eq!(
            FiniteMap::new(2, vec![0, 2]),
            Err(Error::InvalidElement { rank: 2, size: 2 })
        );
        let parsed: std::result::Result<FiniteMap, _> =
            serde_json::from_str(r#"{"source":3,"target":2,"image":[0,1]}"#);
        assert!(parsed.is_err());
    }

    #[test]
    fn injective_and_surjective() {
        let swap = FiniteMap::new(2, vec![1, 0]).unwrap();
        assert!(swap.is_injective() && swap.is_surjective());
        assert!(swap.then(&swap).is_identity());
        let collapse = FiniteMap::new(2, vec![1, 1]).unwrap();
        assert!(!collapse.is_injective() && !collapse.is_surjective());
    }
}
