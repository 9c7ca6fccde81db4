//! Finite posets and finite categories behind one small trait, with
//! opfibration and coslice checks that only use hom-sets and composition.

use serde::Serialize;

use crate::nerves::FinCategory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    le: Vec<Vec<bool>>,
}

impl FinPoset {
    /// From a full relation; no closure is taken.
    pub fn from_relation(n: usize, le: impl Fn(usize, usize) -> bool) -> FinPoset {
        FinPoset {
            le: (0..n).map(|a| (0..n).map(|b| le(a, b)).collect()).collect(),
        }
    }

    /// The reflexive-transitive closure of `covers`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> FinPoset {
        let mut le = vec![vec![false; n]; n];
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in covers {
            le[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if le[a][k] {
                    for b in 0..n {
                        if le[k][b] {
                            le[a][b] = true;
                        }
                    }
                }
            }
        }
        FinPoset { le }
    }

    pub fn len(&self) -> usize {
        self.le.len()
    }

    pub fn is_empty(&self) -> bool {
        self.le.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le[a][b]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.le[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.le[a][b] && self.le[b][a])))
            && (0..n).all(|a| {
                (0..n).all(|b| !self.le[a][b] || (0..n).all(|c| !self.le[b][c] || self.le[a][c]))
            })
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.lt(b, a)))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| !(0..self.len()).any(|b| self.lt(a, b)))
            .collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le[a][b]))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.le[b][a]))
    }

    /// Pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The full subposet on `keep`, renumbered in the given order.
    pub fn subposet(&self, keep: &[usize]) -> FinPoset {
        FinPoset::from_relation(keep.len(), |a, b| self.le[keep[a]][keep[b]])
    }

    /// Product order; element `(i, j)` is numbered `i * other.len() + j`.
    pub fn product(&self, other: &FinPoset) -> FinPoset {
        let m = other.len();
        FinPoset::from_relation(self.len() * m, |a, b| {
            self.le[a / m][b / m] && other.le[a % m][b % m]
        })
    }
}

/// Element lists and cover relations, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
}

impl PosetSummary {
    pub fn new(poset: &FinPoset, names: impl Fn(usize) -> String) -> PosetSummary {
        PosetSummary {
            elements: (0..poset.len()).map(names).collect(),
            covers: poset.covers(),
        }
    }
}

/// A finite category presented by hom-sets and composition.
pub trait FiniteCategory {
    type Arrow: Clone + PartialEq;

    fn object_count(&self) -> usize;

    fn hom(&self, x: usize, y: usize) -> Vec<Self::Arrow>;

    /// `g ∘ f`.
    fn compose(&self, f: &Self::Arrow, g: &Self::Arrow) -> Self::Arrow;
}

impl FiniteCategory for FinPoset {
    type Arrow = (usize, usize);

    fn object_count(&self) -> usize {
        self.len()
    }

    fn hom(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        if self.le(x, y) {
            vec![(x, y)]
        } else {
            vec![]
        }
    }

    fn compose(&self, f: &(usize, usize), g: &(usize, usize)) -> (usize, usize) {
        (f.0, g.1)
    }
}

impl FiniteCategory for FinCategory {
    type Arrow = usize;

    fn object_count(&self) -> usize {
        self.objects
    }

    fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        FinCategory::hom(self, x, y)
    }

    fn compose(&self, f: &usize, g: &usize) -> usize {
        self.then(*f, *g)
    }
}

/// A functor between finite categories, given on objects and arrows.
pub struct FinFunctor<'a, C: FiniteCategory, D: FiniteCategory> {
    pub objects: Vec<usize>,
    pub arrows: Box<dyn Fn(&C::Arrow) -> D::Arrow + 'a>,
}

impl<'a, C: FiniteCategory, D: FiniteCategory> FinFunctor<'a, C, D> {
    pub fn new(objects: Vec<usize>, arrows: impl Fn(&C::Arrow) -> D::Arrow + 'a) -> Self {
        FinFunctor {
            objects,
            arrows: Box::new(arrows),
        }
    }
}

/// The monotone map of posets given by `objects`.
pub fn poset_functor<'a>(objects: Vec<usize>) -> FinFunctor<'a, FinPoset, FinPoset> {
    let map = objects.clone();
    FinFunctor::new(objects, move |&(a, b)| (map[a], map[b]))
}

/// An object `e` and an arrow `u: F(e) -> y` with no opcartesian lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingLift {
    pub object: usize,
    pub target: usize,
}

/// Searches every `e` and every `u: F(e) -> y` for an arrow `φ: e -> e'`
/// over `u` with the opcartesian property: each `ψ: e -> e''` and
/// `w: y -> F(e'')` with `w ∘ u = F(ψ)` factor as `ψ = χ ∘ φ` for exactly
/// one `χ` over `w`.
pub fn opfibration_failure<C: FiniteCategory, D: FiniteCategory>(
    c: &C,
    d: &D,
    f: &FinFunctor<'_, C, D>,
) -> Option<MissingLift> {
    let n = c.object_count();
    for e in 0..n {
        for y in 0..d.object_count() {
            for u in d.hom(f.objects[e], y) {
                let found = (0..n).filter(|&e1| f.objects[e1] == y).any(|e1| {
                    c.hom(e, e1).into_iter().any(|phi| {
                        (f.arrows)(&phi) == u && is_opcartesian(c, d, f, e, e1, &phi, &u)
                    })
                });
                if !found {
                    return Some(MissingLift { object: e, target: y });
                }
            }
        }
    }
    None
}

pub fn is_opfibration<C: FiniteCategory, D: FiniteCategory>(c: &C, d: &D, f: &FinFunctor<'_, C, D>) -> bool {
    opfibration_failure(c, d, f).is_none()
}

fn is_opcartesian<C: FiniteCategory, D: FiniteCategory>(
    c: &C,
    d: &D,
    f: &FinFunctor<'_, C, D>,
    e: usize,
    e1: usize,
    phi: &C::Arrow,
    u: &D::Arrow,
) -> bool {
    let y = f.objects[e1];
    (0..c.object_count()).all(|e2| {
        let psis = c.hom(e, e2);
        if psis.is_empty() {
            return true;
        }
        d.hom(y, f.objects[e2]).into_iter().all(|w| {
            let wu = d.compose(u, &w);
            psis.iter().all(|psi| {
                if (f.arrows)(psi) != wu {
                    return true;
                }
                let count = c
                    .hom(e1, e2)
                    .into_iter()
                    .filter(|chi| (f.arrows)(chi) == w && c.compose(phi, chi) == *psi)
                    .count();
                count == 1
            })
        })
    })
}

/// Whether `{k ∈ K : x ≤ k}` (the coslice of the inclusion `K ⊆ L` under
/// `x`) has an initial object, returning it.
pub fn coslice_initial(l: &FinPoset, k: &[usize], x: usize) -> Option<usize> {
    let above: Vec<usize> = k.iter().copied().filter(|&y| l.le(x, y)).collect();
    above
        .iter()
        .copied()
        .find(|&a| above.iter().all(|&b| l.le(a, b)))
}

pub fn coslice_initial_check(l: &FinPoset, k: &[usize], x: usize) -> bool {
    coslice_initial(l, k, x).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nerves::ordinal;

    #[test]
    fn closure_and_extrema() {
        let p = FinPoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(p.is_partial_order());
        assert!(p.le(0, 3));
        assert_eq!(p.least(), Some(0));
        assert_eq!(p.greatest(), Some(3));
        assert_eq!(p.covers().len(), 4);
        let discrete = FinPoset::from_covers(2, &[]);
        assert_eq!(discrete.least(), None);
        assert_eq!(discrete.minimal(), vec![0, 1]);
    }

    #[test]
    fn identity_is_an_opfibration() {
        let p = FinPoset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(is_opfibration(&p, &p, &poset_functor(vec![0, 1, 2, 3])));
        let c = ordinal(2);
        let id = FinFunctor::<FinCategory, FinCategory>::new(vec![0, 1, 2], |&a| a);
        assert!(is_opfibration(&c, &c, &id));
    }

    #[test]
    fn missing_lift_is_detected() {
        // x < y over 0, z alone over 1: nothing above x lies over 1.
        let source = FinPoset::from_covers(3, &[(0, 1)]);
        let target = FinPoset::from_covers(2, &[(0, 1)]);
        let f = poset_functor(vec![0, 0, 1]);
        assert_eq!(
            opfibration_failure(&source, &target, &f),
            Some(MissingLift { object: 0, target: 1 })
        );
    }

    #[test]
    fn non_opcartesian_lift_is_rejected() {
        // a < b < c over 0 < 1 < 1, plus a < d over 1 with d incomparable to b:
        // the lifts of 0 -> 1 at a are b and d, and neither is below the other.
        let source = FinPoset::from_covers(4, &[(0, 1), (1, 2), (0, 3)]);
        let target = FinPoset::from_covers(2, &[(0, 1)]);
        assert!(!is_opfibration(&source, &target, &poset_functor(vec![0, 1, 1, 1])));
    }

    #[test]
    fn coslices() {
        let chain = FinPoset::from_covers(3, &[(0, 1), (1, 2)]);
        for x in 0..3 {
            assert!(coslice_initial_check(&chain, &[0, 1, 2], x));
        }
        // Cospan b -> a <- c with K = {b, c}: nothing lies under a in K.
        let cospan = FinPoset::from_covers(3, &[(1, 0), (2, 0)]);
        assert!(!coslice_initial_check(&cospan, &[1, 2], 0));
        // Span b <- a -> c: two incomparable candidates.
        let span = FinPoset::from_covers(3, &[(0, 1), (0, 2)]);
        assert!(!coslice_initial_check(&span, &[1, 2], 0));
    }
}
