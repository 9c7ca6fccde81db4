//! The posets `R_{s,t}` of nondegenerate cells of `Θ[s] × Θ[t]` with
//! epimorphic projections, their collapse onto `Q(n_s, n_t)`, the product
//! decomposition of its fibres, and the subposet `P_S` of spinal monos in
//! the subdivision of a sieve.

use std::collections::HashMap;

use serde::Serialize;

use crate::cellular::shuffles::ProductCells;
use crate::cellular::{for_each_cover, Cone, Sieve, SubobjectIndex};
use crate::homotopy::paths::{q_poset, QPoset, SEPath, Step};
use crate::homotopy::poset::{coslice_initial, opfibration_failure, poset_functor, FinPoset, MissingLift};
use crate::theta::{factorize, Theta, ThetaMorphism};

pub struct RPoset {
    pub s: Theta,
    pub t: Theta,
    pub cells: ProductCells,
    pub order: FinPoset,
}

impl RPoset {
    pub fn cones(&self) -> &[Cone] {
        &self.cells.cones
    }

    pub fn len(&self) -> usize {
        self.cells.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.cones.is_empty()
    }
}

pub fn r_poset(s: &Theta, t: &Theta) -> RPoset {
    let cells = ProductCells::new(s, t);
    let order = FinPoset::from_relation(cells.cones.len(), |a, b| cells.le(a, b));
    RPoset {
        s: s.clone(),
        t: t.clone(),
        cells,
        order,
    }
}

/// The Δ-collapse of a cone: the lattice path traced by its two root maps.
pub fn collapse_path(cone: &Cone) -> SEPath {
    let (a, b) = (cone.legs[0].root_values(), cone.legs[1].root_values());
    let points: Vec<(usize, usize)> = a.iter().copied().zip(b.iter().copied()).collect();
    SEPath::from_points(&points).expect("cones in R have strictly increasing unit-step roots")
}

/// The collapse as a map of element indices `R_{s,t} -> Q(n_s, n_t)`.
pub fn collapse_map(r: &RPoset, q: &QPoset) -> Vec<usize> {
    r.cones()
        .iter()
        .map(|c| q.position(&collapse_path(c)).expect("collapse lands in Q"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub s: String,
    pub t: String,
    pub r_size: usize,
    pub q_size: usize,
    pub monotone: bool,
    pub missing_lift: Option<MissingLift>,
}

impl CollapseReport {
    pub fn is_opfibration(&self) -> bool {
        self.monotone && self.missing_lift.is_none()
    }
}

pub fn collapse_opfibration(s: &Theta, t: &Theta) -> CollapseReport {
    let r = r_poset(s, t);
    let q = q_poset(s.arity(), t.arity());
    let map = collapse_map(&r, &q);
    let n = r.len();
    let monotone = (0..n).all(|a| (0..n).all(|b| !r.order.le(a, b) || q.order.le(map[a], map[b])));
    let missing_lift = if monotone {
        opfibration_failure(&r.order, &q.order, &poset_functor(map))
    } else {
        None
    };
    CollapseReport {
        s: s.to_string(),
        t: t.to_string(),
        r_size: n,
        q_size: q.paths.len(),
        monotone,
        missing_lift,
    }
}

/// Per step of a path, the pair of objects whose `R`-poset the fibre
/// factor is: `(s_j, t_l)` for a diagonal, `(s_j, [0])` or `([0], t_l)`
/// for the straight steps.
pub fn fibre_factors(s: &Theta, t: &Theta, path: &SEPath) -> Vec<(Theta, Theta)> {
    let points = path.points();
    path.0
        .iter()
        .zip(points.iter().skip(1))
        .map(|(step, &(j, l))| match step {
            Step::SE => (s.child(j).clone(), t.child(l).clone()),
            Step::S => (s.child(j).clone(), Theta::point()),
            Step::E => (Theta::point(), t.child(l).clone()),
        })
        .collect()
}

/// Splits a cone lying over `path` into one cone per step.
fn split_cone(cone: &Cone, path: &SEPath) -> Vec<Cone> {
    let points = path.points();
    path.0
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let apex = cone.apex.child(i + 1).clone();
            let (j, l) = points[i + 1];
            let left = match step {
                Step::S | Step::SE => cone.legs[0].label(j).clone(),
                Step::E => ThetaMorphism::to_point(&apex),
            };
            let right = match step {
                Step::E | Step::SE => cone.legs[1].label(l).clone(),
                Step::S => ThetaMorphism::to_point(&apex),
            };
            Cone {
                apex,
                legs: vec![left, right],
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct FibreReport {
    pub path: SEPath,
    pub fibre_size: usize,
    pub factor_sizes: Vec<usize>,
    /// Splitting is a bijection onto the product of the factors.
    pub bijective: bool,
    /// `a ≤ b` in the fibre iff componentwise in the factors.
    pub order_matches: bool,
}

impl FibreReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_matches
    }
}

pub fn fiber_decomposition_check(s: &Theta, t: &Theta, path: &SEPath) -> FibreReport {
    let r = r_poset(s, t);
    let paths: Vec<SEPath> = r.cones().iter().map(collapse_path).collect();
    fibre_report(&r, &paths, path)
}

/// Every fibre of the collapse `R_{s,t} -> Q(n_s, n_t)`, sharing one `R`.
pub fn fibre_decompositions(r: &RPoset) -> Vec<FibreReport> {
    let paths: Vec<SEPath> = r.cones().iter().map(collapse_path).collect();
    q_poset(r.s.arity(), r.t.arity())
        .paths
        .iter()
        .map(|p| fibre_report(r, &paths, p))
        .collect()
}

fn fibre_report(r: &RPoset, over: &[SEPath], path: &SEPath) -> FibreReport {
    let fibre: Vec<usize> = (0..r.len()).filter(|&i| over[i] == *path).collect();
    let factors: Vec<ProductCells> = fibre_factors(&r.s, &r.t, path)
        .iter()
        .map(|(a, b)| ProductCells::new(a, b))
        .collect();
    let factor_sizes: Vec<usize> = factors.iter().map(|f| f.cones.len()).collect();
    let positions: Vec<HashMap<&Cone, usize>> = factors
        .iter()
        .map(|f| f.cones.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let coords: Vec<Option<Vec<usize>>> = fibre
        .iter()
        .map(|&i| {
            split_cone(&r.cones()[i], path)
                .iter()
                .zip(&positions)
                .map(|(c, pos)| pos.get(c).copied())
                .collect()
        })
        .collect();
    let product: usize = factor_sizes.iter().product();
    let mut distinct: Vec<&Vec<usize>> = coords.iter().flatten().collect();
    distinct.sort();
    distinct.dedup();
    let bijective = coords.iter().all(Option::is_some) && distinct.len() == fibre.len() && fibre.len() == product;
    let order_matches = bijective
        && fibre.iter().zip(&coords).all(|(&a, ca)| {
            fibre.iter().zip(&coords).all(|(&b, cb)| {
                let (ca, cb) = (ca.as_ref().unwrap(), cb.as_ref().unwrap());
                let componentwise = factors
                    .iter()
                    .enumerate()
                    .all(|(k, f)| f.le(ca[k], cb[k]));
                r.order.le(a, b) == componentwise
            })
        });
    FibreReport {
        path: path.clone(),
        fibre_size: fibre.len(),
        factor_sizes,
        bijective,
        order_matches,
    }
}

/// `Sd(S)`: the member monos of `S` under factorization, together with the
/// indices of the spinal ones (`P_S`).
pub struct Subdivision {
    pub monos: Vec<ThetaMorphism>,
    pub order: FinPoset,
    pub spinal: Vec<usize>,
}

pub fn subdivision(s: &Sieve) -> Subdivision {
    let index = s.index();
    let ids: Vec<usize> = (0..index.mono_count()).filter(|&m| s.contains_mono(m)).collect();
    let order = FinPoset::from_relation(ids.len(), |a, b| index.le(ids[a], ids[b]));
    let monos: Vec<ThetaMorphism> = ids.iter().map(|&m| index.monos[m].clone()).collect();
    let spinal = (0..monos.len()).filter(|&i| monos[i].is_spinal()).collect();
    Subdivision {
        monos,
        order,
        spinal,
    }
}

/// A mono of `S` whose coslice in `P_S` has no initial object, or whose
/// initial object is not the spinal part of its factorization.
#[derive(Clone, Debug, Serialize)]
pub struct CofinalityFailure {
    pub mono: String,
    pub initial: Option<String>,
}

/// Checks every coslice of `P_S ⊆ Sd(S)`.
pub fn cofinality_check(s: &Sieve) -> Result<usize, CofinalityFailure> {
    let sd = subdivision(s);
    for x in 0..sd.monos.len() {
        let initial = coslice_initial(&sd.order, &sd.spinal, x);
        let expected = factorize(&sd.monos[x]).ok().map(|f| f.spinal_mono);
        let ok = match (initial, &expected) {
            (Some(i), Some(m)) => s.index().image(m) == s.index().image(&sd.monos[i]),
            _ => false,
        };
        if !ok {
            return Err(CofinalityFailure {
                mono: sd.monos[x].to_string(),
                initial: initial.map(|i| sd.monos[i].to_string()),
            });
        }
    }
    Ok(sd.monos.len())
}

/// Per-object tables for checking many sieves on the same `Θ[s]`: the
/// subobject order, which monos are spinal, and the spinal part of each
/// mono under factorization.
pub struct CofinalityIndex {
    le: Vec<Vec<bool>>,
    spinal: Vec<usize>,
    spinal_part: Vec<usize>,
}

impl CofinalityIndex {
    pub fn new(t: &Theta) -> CofinalityIndex {
        let index = SubobjectIndex::of(t);
        let n = index.mono_count();
        let le = (0..n).map(|a| (0..n).map(|b| index.le(a, b)).collect()).collect();
        let spinal = (0..n).filter(|&m| index.monos[m].is_spinal()).collect();
        let spinal_part = (0..n)
            .map(|m| {
                let f = factorize(&index.monos[m]).expect("monos into window objects factor");
                index.image(&f.spinal_mono)
            })
            .collect();
        CofinalityIndex {
            le,
            spinal,
            spinal_part,
        }
    }

    /// For each member `x`, the spinal part of `x` is a member and lies
    /// below every spinal member above `x`; so it is initial in the coslice.
    pub fn check(&self, s: &Sieve) -> Result<usize, CofinalityFailure> {
        let n = self.le.len();
        let mut members = 0;
        for x in (0..n).filter(|&x| s.contains_mono(x)) {
            members += 1;
            let m = self.spinal_part[x];
            let ok = s.contains_mono(m)
                && self
                    .spinal
                    .iter()
                    .all(|&y| !s.contains_mono(y) || !self.le[x][y] || self.le[m][y]);
            if !ok {
                let generic = cofinality_check(s);
                return Err(generic.err().unwrap_or_else(|| CofinalityFailure {
                    mono: s.index().monos[x].to_string(),
                    initial: None,
                }));
            }
        }
        Ok(members)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinalitySummary {
    pub object: String,
    pub proper_covers: usize,
    pub failures: Vec<CofinalityFailure>,
}

/// Runs the coslice check over every proper cover of `Θ[t]`, keeping at
/// most `keep` failures.
pub fn cofinality_over_covers(t: &Theta, keep: usize) -> CofinalitySummary {
    let idx = CofinalityIndex::new(t);
    let mut proper = 0;
    let mut failures = Vec::new();
    for_each_cover(t, |s| {
        if s.is_whole() {
            return;
        }
        proper += 1;
        if let Err(e) = idx.check(s) {
            if failures.len() < keep {
                failures.push(e);
            }
        }
    });
    CofinalitySummary {
        object: t.to_string(),
        proper_covers: proper,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellular::covers;
    use crate::homotopy::complex::is_contractible;
    use crate::theta::Window;

    fn t(s: &str) -> Theta {
        s.parse().unwrap()
    }

    #[test]
    fn edge_times_edge() {
        let r = r_poset(&Theta::lift(1), &Theta::lift(1));
        assert_eq!(r.len(), 3);
        assert_eq!(r.len(), q_poset(1, 1).paths.len());
        let report = collapse_opfibration(&Theta::lift(1), &Theta::lift(1));
        assert!(report.is_opfibration(), "{report:?}");
    }

    #[test]
    fn r_with_a_point_is_trivial() {
        for s in Window::new(2, 2).objects() {
            assert_eq!(r_poset(&s, &Theta::point()).len(), 1, "{s}");
        }
    }

    #[test]
    fn fibres_over_simplices_are_points() {
        let q = q_poset(2, 1);
        for p in &q.paths {
            let f = fiber_decomposition_check(&Theta::lift(2), &Theta::lift(1), p);
            assert_eq!(f.fibre_size, 1);
            assert!(f.holds());
        }
    }

    #[test]
    fn fibre_with_a_higher_label() {
        let s = t("[1]([1]([0]))");
        let path: SEPath = "[SE]".parse().unwrap();
        let f = fiber_decomposition_check(&s, &Theta::lift(1), &path);
        assert!(f.holds(), "{f:?}");
        assert_eq!(f.factor_sizes, vec![r_poset(&Theta::globe(1), &Theta::point()).len()]);
        let s = t("[2]([1]([0]),[0])");
        let u = t("[1]([2]([0],[0]))");
        for p in q_poset(2, 1).paths {
            assert!(fiber_decomposition_check(&s, &u, &p).holds(), "{p}");
        }
    }

    #[test]
    fn r_posets_are_contractible() {
        for (s, u) in [("[1]([0])", "[1]([0])"), ("[2]([0],[0])", "[1]([0])"), ("[1]([1]([0]))", "[1]([0])")] {
            let r = r_poset(&t(s), &t(u));
            assert!(is_contractible(&r.order).is_contractible(), "{s} x {u}");
        }
    }

    #[test]
    fn fast_and_generic_cofinality_agree() {
        for o in Window::new(2, 2).objects().iter().filter(|o| o.size() <= 6) {
            let idx = CofinalityIndex::new(o);
            for c in covers(o) {
                assert_eq!(idx.check(&c).is_ok(), cofinality_check(&c).is_ok(), "{c:?}");
            }
            // A sieve missing spinal parts: the boundary of a globe-free object.
            let b = Sieve::boundary(o);
            assert_eq!(idx.check(&b).is_ok(), cofinality_check(&b).is_ok(), "{b:?}");
        }
    }

    #[test]
    fn spine_cofinality() {
        let two = t("[2]([0],[0])");
        let sp = Sieve::spine(&two);
        assert!(cofinality_check(&sp).is_ok());
        let sd = subdivision(&sp);
        for leg in crate::theta::legs(&two) {
            assert!(sd.spinal.iter().any(|&i| sd.monos[i] == leg));
        }
        for c in covers(&t("[2]([1]([0]),[0])")) {
            assert!(cofinality_check(&c).is_ok(), "{c:?}");
        }
    }
}
