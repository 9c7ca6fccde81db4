//! Maps in the simplex category and in Gamma, and the functor between them
//! that sends a monotone map to the intervals it covers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly monotone map `[n] -> [m]`, stored as `[f(0), ..., f(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaMap {
    target: usize,
    values: Vec<usize>,
}

impl DeltaMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("a map out of [n] needs n+1 values".into()));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidArgument(format!("values {values:?} exceed [{target}]")));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!("values {values:?} are not monotone")));
        }
        Ok(DeltaMap { target, values })
    }

    pub(crate) fn new_unchecked(target: usize, values: Vec<usize>) -> Self {
        DeltaMap { target, values }
    }

    pub fn identity(n: usize) -> Self {
        DeltaMap {
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &DeltaMap) -> Result<DeltaMap> {
        if f.target != self.source() {
            return Err(Error::ArityMismatch {
                expected: self.source(),
                found: f.target,
            });
        }
        Ok(DeltaMap {
            target: self.target,
            values: f.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `f(i-1) + 1 >= f(i)` for every `i`.
    pub fn is_sequential(&self) -> bool {
        self.values.windows(2).all(|w| w[0] + 1 >= w[1])
    }

    /// All monotone maps `[n] -> [m]` in lexicographic order.
    pub fn all(n: usize, m: usize) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        let mut values = Vec::with_capacity(n + 1);
        fill_monotone(n + 1, 0, m, &mut values, &mut |v| {
            out.push(DeltaMap {
                target: m,
                values: v.to_vec(),
            })
        });
        out
    }
}

pub(crate) fn fill_monotone(
    len: usize,
    low: usize,
    high: usize,
    prefix: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if prefix.len() == len {
        emit(prefix);
        return;
    }
    for v in low..=high {
        prefix.push(v);
        fill_monotone(len, v, high, prefix, emit);
        prefix.pop();
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}:[{}]->[{}]", self.source(), self.target)
    }
}

/// A morphism `Γ_m -> Γ_n`: each `x` in `1..=m` goes to a subset of
/// `1..=n`, with the subsets pairwise disjoint.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GammaMap {
    source: usize,
    target: usize,
    assignment: Vec<Vec<usize>>,
}

impl GammaMap {
    pub fn new(target: usize, assignment: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; target + 1];
        let mut normalized = Vec::with_capacity(assignment.len());
        for (x, set) in assignment.into_iter().enumerate() {
            let mut set = set;
            set.sort_unstable();
            set.dedup();
            for &y in &set {
                if y == 0 || y > target {
                    return Err(Error::InvalidArgument(format!(
                        "{y} is not an element of Γ_{target}"
                    )));
                }
                if seen[y] {
                    return Err(Error::InvalidArgument(format!(
                        "{y} is assigned twice (second time by {})",
                        x + 1
                    )));
                }
                seen[y] = true;
            }
            normalized.push(set);
        }
        Ok(GammaMap {
            source: normalized.len(),
            target,
            assignment: normalized,
        })
    }

    pub fn identity(n: usize) -> Self {
        GammaMap {
            source: n,
            target: n,
            assignment: (1..=n).map(|i| vec![i]).collect(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// The subset assigned to `x` (1-based).
    pub fn image(&self, x: usize) -> &[usize] {
        &self.assignment[x - 1]
    }

    /// Every Gamma map `Γ_m -> Γ_n`, one per function `{1..n} -> {none, 1..m}`.
    pub fn all(m: usize, n: usize) -> Vec<GammaMap> {
        let total = (m + 1).pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut assignment = vec![Vec::new(); m];
                for y in 1..=n {
                    let owner = code % (m + 1);
                    code /= m + 1;
                    if owner > 0 {
                        assignment[owner - 1].push(y);
                    }
                }
                GammaMap {
                    source: m,
                    target: n,
                    assignment,
                }
            })
            .collect()
    }
}

/// The composite that first applies `f` and then `g`:
/// `x ↦ ⋃_{y ∈ f(x)} g(y)`. Requires `f.target() == g.source()`.
pub fn compose_gamma(f: &GammaMap, g: &GammaMap) -> Result<GammaMap> {
    if f.target != g.source {
        return Err(Error::ArityMismatch {
            expected: f.target,
            found: g.source,
        });
    }
    let assignment = f
        .assignment
        .iter()
        .map(|set| {
            let mut out: Vec<usize> = set.iter().flat_map(|&y| g.image(y).iter().copied()).collect();
            out.sort_unstable();
            out
        })
        .collect();
    Ok(GammaMap {
        source: f.source,
        target: g.target,
        assignment,
    })
}

/// `i ↦ {j : f(i-1) < j <= f(i)}`.
pub fn fdelta(f: &DeltaMap) -> GammaMap {
    let assignment = f
        .values
        .windows(2)
        .map(|w| (w[0] + 1..=w[1]).collect())
        .collect();
    GammaMap {
        source: f.source(),
        target: f.target,
        assignment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sequential_examples() {
        assert!(DeltaMap::identity(3).is_sequential());
        assert!(!DeltaMap::new(2, vec![0, 2]).unwrap().is_sequential());
        for f in DeltaMap::all(2, 1).into_iter().filter(DeltaMap::is_surjective) {
            assert!(f.is_sequential(), "{f}");
        }
    }

    #[test]
    fn monotone_counts_are_binomial() {
        // |Hom([n],[m])| = C(n+m+1, n+1)
        assert_eq!(DeltaMap::all(1, 1).len(), 3);
        assert_eq!(DeltaMap::all(2, 2).len(), 10);
        assert_eq!(DeltaMap::all(0, 4).len(), 5);
    }

    #[test]
    fn gamma_examples() {
        let f = GammaMap::new(2, vec![vec![1, 2]]).unwrap();
        let g = GammaMap::new(1, vec![vec![1], vec![]]).unwrap();
        let fg = compose_gamma(&f, &g).unwrap();
        assert_eq!(fg.image(1), &[1]);
        assert!(compose_gamma(&GammaMap::identity(1), &g).is_err());
        assert_eq!(compose_gamma(&GammaMap::identity(2), &g).unwrap(), g);
        assert!(GammaMap::new(2, vec![vec![1], vec![1]]).is_err());
        assert!(GammaMap::new(2, vec![vec![3]]).is_err());
    }

    #[test]
    fn fdelta_examples() {
        assert_eq!(fdelta(&DeltaMap::identity(3)), GammaMap::identity(3));
        let collapse = DeltaMap::new(0, vec![0, 0]).unwrap();
        assert_eq!(fdelta(&collapse).image(1), &[] as &[usize]);
        let d0 = DeltaMap::new(1, vec![1]).unwrap();
        let g = fdelta(&d0);
        assert_eq!((g.source(), g.target()), (0, 1));
        let long = DeltaMap::new(3, vec![0, 3]).unwrap();
        assert_eq!(fdelta(&long).image(1), &[1, 2, 3]);
    }

    #[test]
    fn gamma_enumeration_counts() {
        assert_eq!(GammaMap::all(2, 3).len(), 27);
        assert_eq!(GammaMap::all(0, 2).len(), 1);
    }

    proptest! {
        #[test]
        fn fdelta_is_functorial(a in 0usize..4, b in 0usize..4, c in 0usize..4, i in 0usize..1000, j in 0usize..1000) {
            let fs = DeltaMap::all(a, b);
            let gs = DeltaMap::all(b, c);
            let f = &fs[i % fs.len()];
            let g = &gs[j % gs.len()];
            let lhs = fdelta(&g.after(f).unwrap());
            let rhs = compose_gamma(&fdelta(f), &fdelta(g)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
