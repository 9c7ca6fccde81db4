//! Sieves on representables, stored as down-closed sets of monos.
//!
//! Every map factors uniquely as an epi followed by a mono, and epis split,
//! so a sieve contains a map exactly when it contains its image.

use std::fmt;
use std::sync::Arc;

use crate::cellular::subobjects::SubobjectIndex;
use crate::cellular::{Cell, CellularSet};
use crate::error::{Error, Result};
use crate::theta::morphism::cospinal_maps;
use crate::theta::{hom_set, legs, Theta, ThetaMorphism, Window};

#[derive(Clone)]
pub struct Sieve {
    index: Arc<SubobjectIndex>,
    members: Vec<bool>,
}

impl PartialEq for Sieve {
    fn eq(&self, other: &Self) -> bool {
        self.index.target == other.index.target && self.members == other.members
    }
}

impl Eq for Sieve {}

impl Sieve {
    fn from_members(target: &Theta, pick: impl Fn(&SubobjectIndex, usize) -> bool) -> Sieve {
        let index = SubobjectIndex::of(target);
        let members = (0..index.mono_count()).map(|m| pick(&index, m)).collect();
        Sieve { index, members }
    }

    /// The smallest sieve containing `generators`.
    pub fn generated(target: &Theta, generators: &[ThetaMorphism]) -> Result<Sieve> {
        if let Some(g) = generators.iter().find(|g| g.target() != target) {
            return Err(Error::NotComposable(format!(
                "generator {g:?} does not land in {target}"
            )));
        }
        let index = SubobjectIndex::of(target);
        let images: Vec<usize> = generators.iter().map(|g| index.image(g)).collect();
        Ok(Sieve::from_members(target, |idx, m| {
            images.iter().any(|&g| idx.le(m, g))
        }))
    }

    pub fn whole(t: &Theta) -> Sieve {
        Sieve::from_members(t, |_, _| true)
    }

    pub fn empty(t: &Theta) -> Sieve {
        Sieve::from_members(t, |_, _| false)
    }

    /// `Sp[t]`, generated by the globular summands.
    pub fn spine(t: &Theta) -> Sieve {
        Sieve::generated(t, &legs(t)).expect("legs land in t")
    }

    /// `∂Θ[t]`, generated by the monos other than the identity.
    pub fn boundary(t: &Theta) -> Sieve {
        Sieve::from_members(t, |idx, m| !idx.monos[m].is_identity())
    }

    /// The Segal core of `Δ_n[c]`, generated by the `n` inclusions of
    /// `Δ_1[c_i]`.
    pub fn segal_core(n: usize, c: &[Theta]) -> Result<Sieve> {
        let labels: Vec<Sieve> = c.iter().map(Sieve::whole).collect();
        Sieve::segal_core_of(n, &labels)
    }

    /// The Segal core with the `i`-th edge filled by the sieve `labels[i]`
    /// instead of the whole representable.
    pub fn segal_core_of(n: usize, labels: &[Sieve]) -> Result<Sieve> {
        if labels.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                found: labels.len(),
            });
        }
        let target = Theta::node(labels.iter().map(|s| s.target().clone()).collect());
        // Vertices, so that the empty core over [0] is its point.
        let mut generators: Vec<ThetaMorphism> = (0..=n).map(|v| ThetaMorphism::vertex(&target, v)).collect();
        for (i, s) in labels.iter().enumerate() {
            for g in s.generators() {
                let source = Theta::node(vec![g.source().clone()]);
                generators.push(ThetaMorphism::new(source, target.clone(), vec![i, i + 1], vec![g])?);
            }
        }
        Sieve::generated(&target, &generators)
    }

    pub fn target(&self) -> &Theta {
        &self.index.target
    }

    pub fn index(&self) -> &SubobjectIndex {
        &self.index
    }

    pub fn contains(&self, x: &ThetaMorphism) -> bool {
        x.target() == self.target() && self.members[self.index.image(x)]
    }

    pub fn contains_mono(&self, m: usize) -> bool {
        self.members[m]
    }

    pub fn member_monos(&self) -> Vec<ThetaMorphism> {
        (0..self.members.len())
            .filter(|&m| self.members[m])
            .map(|m| self.index.monos[m].clone())
            .collect()
    }

    pub fn member_count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    /// The maximal member monos; they generate the sieve.
    pub fn generators(&self) -> Vec<ThetaMorphism> {
        let members: Vec<usize> = (0..self.members.len()).filter(|&m| self.members[m]).collect();
        members
            .iter()
            .filter(|&&a| !members.iter().any(|&b| a != b && self.index.le(a, b)))
            .map(|&a| self.index.monos[a].clone())
            .collect()
    }

    pub fn is_whole(&self) -> bool {
        self.members.iter().all(|&b| b)
    }

    pub fn is_subset(&self, other: &Sieve) -> bool {
        self.target() == other.target()
            && self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    pub fn intersection(&self, other: &Sieve) -> Sieve {
        assert_eq!(self.target(), other.target());
        Sieve {
            index: self.index.clone(),
            members: self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect(),
        }
    }

    /// `{g : f∘g ∈ S}` as a sieve on the source of `f`.
    pub fn pullback(&self, f: &ThetaMorphism) -> Sieve {
        assert_eq!(f.target(), self.target());
        Sieve::from_members(f.source(), |idx, m| self.contains(&f.after(&idx.monos[m])))
    }

    /// Sieve axioms on the stored data: members closed under factoring.
    pub fn is_down_closed(&self) -> bool {
        let n = self.members.len();
        (0..n).all(|b| !self.members[b] || (0..n).all(|a| !self.index.le(a, b) || self.members[a]))
    }

    /// Contains the spine and lifts against every cospinal map between
    /// window objects.
    pub fn is_cover(&self, window: Window) -> bool {
        if !Sieve::spine(self.target()).is_subset(self) {
            return false;
        }
        let objs = window.objects();
        for b in &objs {
            let ys = hom_set(b, self.target());
            let inside: Vec<bool> = ys.iter().map(|y| self.contains(y)).collect();
            for a in &objs {
                for c in cospinal_maps(a, b).iter() {
                    for (y, &ok) in ys.iter().zip(&inside) {
                        if !ok && self.contains(&y.after(c)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The cover condition with the lifting clause reduced to principal
    /// cospines: every mono whose composite cell is in the sieve is in the
    /// sieve. Independent of any window.
    pub fn is_cover_exact(&self) -> bool {
        Sieve::spine(self.target()).is_subset(self)
            && (0..self.members.len())
                .all(|m| self.members[m] || !self.members[self.index.composite_cell(m)])
    }

    pub fn as_cellular(&self) -> SieveSet {
        SieveSet(self.clone())
    }
}

impl fmt::Debug for Sieve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sieve on {} generated by [", self.target())?;
        for (i, g) in self.generators().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// Every cover of `Θ[t]`, using the window-free cover criterion.
pub fn covers(t: &Theta) -> Vec<Sieve> {
    let mut out = Vec::new();
    for_each_cover(t, |s| out.push(s.clone()));
    out.sort_by_key(|s| s.member_count());
    out
}

pub fn count_covers(t: &Theta) -> usize {
    let mut n = 0;
    for_each_cover(t, |_| n += 1);
    n
}

/// Visits every cover of `Θ[t]` once.
///
/// A cover holds a mono exactly when it holds the mono's composite cell, so
/// it is fixed by the set `C` of composite cells it holds. Down-closure says
/// that `C` is a down-set of the preorder "`g` needs `composite(a)` for every
/// `a` below a mono with composite `g`", and `C` must contain the cells of the
/// spine. Those down-sets are enumerated by include/exclude branching.
pub fn for_each_cover(t: &Theta, mut visit: impl FnMut(&Sieve)) {
    let index = SubobjectIndex::of(t);
    let n = index.mono_count();
    let composite: Vec<usize> = (0..n).map(|m| index.composite_cell(m)).collect();
    let mut cells: Vec<usize> = composite.clone();
    cells.sort_unstable();
    cells.dedup();
    let k = cells.len();
    let pos = |m: usize| cells.binary_search(&m).expect("composite cells are their own composites");
    let mut needs = vec![vec![false; k]; k];
    for (g, row) in needs.iter_mut().enumerate() {
        row[g] = true;
    }
    for m in 0..n {
        let g = pos(composite[m]);
        for a in 0..n {
            if index.le(a, m) {
                needs[g][pos(composite[a])] = true;
            }
        }
    }
    for c in 0..k {
        for a in 0..k {
            if needs[a][c] {
                for b in 0..k {
                    if needs[c][b] {
                        needs[a][b] = true;
                    }
                }
            }
        }
    }
    let spine = Sieve::spine(t);
    let mut state = vec![None; k];
    for m in (0..n).filter(|&m| spine.members[m]) {
        let g = pos(composite[m]);
        for (c, &need) in needs[g].iter().enumerate() {
            if need {
                state[c] = Some(true);
            }
        }
    }
    let mut emit = |state: &[Option<bool>]| {
        let members = (0..n).map(|m| state[pos(composite[m])] == Some(true)).collect();
        visit(&Sieve {
            index: index.clone(),
            members,
        });
    };
    branch(&needs, &mut state, 0, &mut emit);
}

fn branch(needs: &[Vec<bool>], state: &mut Vec<Option<bool>>, i: usize, emit: &mut dyn FnMut(&[Option<bool>])) {
    if i == state.len() {
        emit(state);
        return;
    }
    if state[i].is_some() {
        return branch(needs, state, i + 1, emit);
    }
    state[i] = Some(false);
    branch(needs, state, i + 1, emit);
    let required: Vec<usize> = (0..state.len()).filter(|&c| needs[i][c]).collect();
    if required.iter().all(|&c| state[c] != Some(false) || c == i) {
        let saved = state.clone();
        for &c in &required {
            state[c] = Some(true);
        }
        branch(needs, state, i + 1, emit);
        *state = saved;
    } else {
        state[i] = None;
    }
    state[i] = None;
}

/// The smallest cover of `Θ[t]` holding the monos `seed`: down-closure and
/// the composite-cell rule, iterated from the spine.
pub fn least_cover(t: &Theta, seed: &[usize]) -> Sieve {
    let index = SubobjectIndex::of(t);
    let n = index.mono_count();
    let mut members = Sieve::spine(t).members;
    for &m in seed {
        members[m] = true;
    }
    loop {
        let mut changed = false;
        for b in 0..n {
            if members[b] {
                for a in 0..n {
                    if !members[a] && index.le(a, b) {
                        members[a] = true;
                        changed = true;
                    }
                }
            }
        }
        for m in 0..n {
            if !members[m] && members[index.composite_cell(m)] {
                members[m] = true;
                changed = true;
            }
        }
        if !changed {
            return Sieve { index, members };
        }
    }
}

/// A map `f: s -> t` tabulated on subobjects, for pulling many sieves on `t`
/// back along it.
pub struct PullbackTable {
    source: Theta,
    image: Vec<usize>,
    spine: Vec<usize>,
    /// `(composite(m), m)` for the monos of `s`, through `image`.
    rules: Vec<(usize, usize)>,
}

impl PullbackTable {
    pub fn new(f: &ThetaMorphism) -> PullbackTable {
        let target = SubobjectIndex::of(f.target());
        let source = SubobjectIndex::of(f.source());
        let image: Vec<usize> = source.monos.iter().map(|m| target.image(&f.after(m))).collect();
        let sp = Sieve::spine(f.source());
        let mut spine: Vec<usize> = (0..image.len()).filter(|&m| sp.members[m]).map(|m| image[m]).collect();
        spine.sort_unstable();
        spine.dedup();
        let mut rules: Vec<(usize, usize)> = (0..image.len())
            .map(|m| (image[source.composite_cell(m)], image[m]))
            .filter(|(a, b)| a != b)
            .collect();
        rules.sort_unstable();
        rules.dedup();
        PullbackTable {
            source: f.source().clone(),
            image,
            spine,
            rules,
        }
    }

    /// Monos of the target that `f*S` needs, and rules `a ⇒ b` it needs `S`
    /// to obey; maps with equal conditions pull covers back alike.
    pub fn conditions(&self) -> (&[usize], &[(usize, usize)]) {
        (&self.spine, &self.rules)
    }

    /// `f*S`.
    pub fn pull(&self, s: &Sieve) -> Sieve {
        let index = SubobjectIndex::of(&self.source);
        let members = self.image.iter().map(|&i| s.members[i]).collect();
        Sieve { index, members }
    }

    /// Whether `f*S` passes the exact cover test, without building it.
    pub fn pulls_back_to_cover(&self, s: &Sieve) -> bool {
        self.spine.iter().all(|&i| s.members[i]) && self.rules.iter().all(|&(a, b)| !s.members[a] || s.members[b])
    }

    /// Whether `f*S` is a cover for every cover `S`: the spine lands in the
    /// least cover, and each rule `a ⇒ b` holds in the least cover holding
    /// `a`, which lies inside every cover holding `a`.
    pub fn pulls_back_every_cover(&self, least: &LeastCovers) -> bool {
        self.spine.iter().all(|&i| least.base.members[i])
            && self.rules.iter().all(|&(a, b)| least.holding(a).members[b])
    }
}

/// The least cover of `Θ[t]` and the least cover holding each mono.
pub struct LeastCovers {
    pub base: Sieve,
    holding: Vec<Sieve>,
}

impl LeastCovers {
    pub fn new(t: &Theta) -> LeastCovers {
        let n = SubobjectIndex::of(t).mono_count();
        LeastCovers {
            base: least_cover(t, &[]),
            holding: (0..n).map(|m| least_cover(t, &[m])).collect(),
        }
    }

    pub fn holding(&self, m: usize) -> &Sieve {
        &self.holding[m]
    }
}

/// A sieve viewed as a cellular set.
pub struct SieveSet(pub Sieve);

impl CellularSet for SieveSet {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        hom_set(theta, self.0.target())
            .iter()
            .filter(|x| self.0.contains(x))
            .cloned()
            .map(Cell::Map)
            .collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        match cell {
            Cell::Map(x) => Cell::Map(x.after(f)),
            other => panic!("{other} is not a cell of a sieve"),
        }
    }

    fn name(&self) -> String {
        format!("{:?}", self.0)
    }

    fn contains(&self, theta: &Theta, cell: &Cell) -> bool {
        matches!(cell, Cell::Map(x) if x.source() == theta && self.0.contains(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{HashSet, VecDeque};
    use crate::theta::morphism::in_spine;

    fn t(s: &str) -> Theta {
        s.parse().unwrap()
    }

    /// Closed-set search from the spine, kept as an oracle.
    fn covers_by_search(t: &Theta) -> Vec<Sieve> {
        let index = SubobjectIndex::of(t);
        let n = index.mono_count();
        let below: Vec<Vec<usize>> = (0..n)
            .map(|b| (0..n).filter(|&a| index.le(a, b)).collect())
            .collect();
        let composite: Vec<usize> = (0..n).map(|m| index.composite_cell(m)).collect();
        let close = |mut set: Vec<bool>| -> Vec<bool> {
            loop {
                let mut changed = false;
                for b in 0..n {
                    if set[b] {
                        for &a in &below[b] {
                            if !set[a] {
                                set[a] = true;
                                changed = true;
                            }
                        }
                    }
                }
                for m in 0..n {
                    if !set[m] && set[composite[m]] {
                        set[m] = true;
                        changed = true;
                    }
                }
                if !changed {
                    return set;
                }
            }
        };
        let spine = Sieve::spine(t);
        let start = close(spine.members.clone());
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        let mut out = Vec::new();
        while let Some(set) = queue.pop_front() {
            for m in 0..n {
                if !set[m] {
                    let mut next = set.clone();
                    next[m] = true;
                    let next = close(next);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            out.push(Sieve {
                index: index.clone(),
                members: set,
            });
        }
        out.sort_by_key(|s| s.member_count());
        out
    }

    #[test]
    fn cover_enumeration_matches_closed_set_search() {
        for target in Window::new(2, 2).objects().iter().filter(|o| SubobjectIndex::of(o).mono_count() <= 65) {
            let fast = covers(target);
            let mut slow = covers_by_search(target);
            slow.sort_by_key(|s| s.member_count());
            assert_eq!(fast.len(), slow.len(), "{target}");
            for s in &slow {
                assert!(fast.contains(s));
            }
            assert!(fast.iter().all(|s| s.is_down_closed() && s.is_cover_exact()));
        }
    }

    #[test]
    fn pullback_tables_agree_with_pullbacks() {
        let objs = Window::new(2, 2).objects();
        for t in objs.iter().filter(|o| o.size() <= 5) {
            let least = LeastCovers::new(t);
            let cs = covers(t);
            assert_eq!(least.base, cs[0]);
            for s in objs.iter().filter(|o| o.size() <= 4) {
                for f in hom_set(s, t).iter() {
                    let table = PullbackTable::new(f);
                    let mut all = true;
                    for c in &cs {
                        let pulled = c.pullback(f);
                        assert_eq!(table.pull(c), pulled);
                        assert_eq!(table.pulls_back_to_cover(c), pulled.is_cover_exact());
                        all &= pulled.is_cover_exact();
                    }
                    assert_eq!(table.pulls_back_every_cover(&least), all, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn spine_membership_matches_direct_test() {
        for target in Window::new(2, 2).objects() {
            let sp = Sieve::spine(&target);
            assert!(sp.is_down_closed());
            for theta in Window::new(2, 2).objects() {
                for x in hom_set(&theta, &target).iter() {
                    assert_eq!(sp.contains(x), in_spine(x), "{x:?}");
                }
            }
        }
    }

    #[test]
    fn spine_examples() {
        for n in 0..3 {
            assert!(Sieve::spine(&Theta::globe(n)).is_whole());
        }
        let two = t("[2]([0],[0])");
        let sp = Sieve::spine(&two);
        assert_eq!(sp.generators().len(), 2);
        let nondegenerate_edges = hom_set(&Theta::globe(1), &two)
            .iter()
            .filter(|x| x.is_mono() && sp.contains(x))
            .count();
        assert_eq!(nondegenerate_edges, 2);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(Sieve::boundary(&Theta::point()).member_count(), 0);
        let b = Sieve::boundary(&Theta::globe(1));
        assert_eq!(b.member_count(), 2);
        assert!(b.member_monos().iter().all(|m| m.source().is_point()));
        for target in Window::new(2, 2).objects().iter().filter(|o| !o.is_globe()) {
            assert!(Sieve::spine(target).is_subset(&Sieve::boundary(target)));
        }
    }

    #[test]
    fn segal_cores() {
        let c = Theta::globe(1);
        assert!(Sieve::segal_core(1, std::slice::from_ref(&c)).unwrap().is_whole());
        let two = t("[2]([0],[0])");
        assert_eq!(
            Sieve::segal_core(2, &[Theta::point(), Theta::point()]).unwrap(),
            Sieve::spine(&two)
        );
        assert!(Sieve::segal_core(2, &[Theta::point()]).is_err());
        for inner in [Theta::globe(1), two.clone()] {
            let sp = Sieve::spine(&inner);
            let core = Sieve::segal_core_of(2, &[sp.clone(), sp]).unwrap();
            assert_eq!(core, Sieve::spine(core.target()));
        }
    }

    #[test]
    fn cover_examples() {
        let w = Window::new(2, 2);
        for target in w.objects() {
            assert!(Sieve::spine(&target).is_cover(w), "{target}");
            assert!(Sieve::whole(&target).is_cover(w), "{target}");
        }
        assert!(!Sieve::boundary(&Theta::globe(2)).is_cover(w));
    }

    #[test]
    fn exact_cover_test_agrees_with_window_test() {
        let w = Window::new(2, 2);
        for target in w.objects().iter().filter(|o| o.size() <= 4) {
            for s in covers(target) {
                assert!(s.is_cover(w) && s.is_cover_exact());
            }
            for gens in hom_set(&Theta::globe(1), target).iter() {
                let s = Sieve::generated(target, std::slice::from_ref(gens)).unwrap();
                let joined = Sieve::generated(
                    target,
                    &[s.generators(), Sieve::spine(target).generators()].concat(),
                )
                .unwrap();
                assert_eq!(joined.is_cover(w), joined.is_cover_exact(), "{joined:?}");
            }
        }
    }

    #[test]
    fn pullbacks() {
        let two = t("[2]([0],[0])");
        let sp = Sieve::spine(&two);
        assert_eq!(sp.pullback(&ThetaMorphism::identity(&two)), sp);
        for m in hom_set(&Theta::globe(1), &two).iter().filter(|m| m.is_spinal_mono()) {
            assert!(Sieve::spine(m.source()).is_subset(&sp.pullback(m)));
        }
    }
}
