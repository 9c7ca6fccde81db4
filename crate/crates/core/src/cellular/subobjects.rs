//! Jointly monic cones into finite families of objects.
//!
//! A family `(f_j: p -> t_j)` is jointly monic exactly when the tuple of root
//! maps is injective and, over every edge of `p`, the labels form a jointly
//! monic family into the children they hit. This gives a direct recursive
//! enumeration of monos into `t` (one target), of objects of `R_{s,t}` (two
//! targets, epimorphic components), and of shuffles.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::theta::morphism::{cartesian, hom_set, legs, Memo};
use crate::theta::{Theta, ThetaMorphism};

/// A source object with one map into each target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    pub apex: Theta,
    pub legs: Vec<ThetaMorphism>,
}

static JOINT: Memo<(Vec<Theta>, bool), Vec<Cone>> = Memo::new();

/// All jointly monic cones into `targets`.
pub fn joint_monos(targets: &[Theta]) -> Arc<Vec<Cone>> {
    JOINT.get_or(&(targets.to_vec(), false), || enumerate(targets, false))
}

/// Jointly monic cones whose every component is an epimorphism.
pub fn joint_epi_monos(targets: &[Theta]) -> Arc<Vec<Cone>> {
    JOINT.get_or(&(targets.to_vec(), true), || enumerate(targets, true))
}

/// Every monomorphism into `t`.
pub fn monos_into(t: &Theta) -> Vec<ThetaMorphism> {
    joint_monos(std::slice::from_ref(t))
        .iter()
        .map(|c| c.legs[0].clone())
        .collect()
}

fn enumerate(targets: &[Theta], epi: bool) -> Vec<Cone> {
    let arities: Vec<usize> = targets.iter().map(Theta::arity).collect();
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    if epi {
        let mut chain = vec![vec![0; arities.len()]];
        epi_chains(&arities, &mut chain, &mut chains);
    } else {
        let mut starts = vec![Vec::new()];
        for &a in &arities {
            starts = starts
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..=a).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        for s in starts {
            let mut chain = vec![s];
            all_chains(&arities, &mut chain, &mut chains);
        }
    }

    let mut out = Vec::new();
    for chain in chains {
        let k = chain.len() - 1;
        // For each step: the list of (target index, child index) it covers.
        let steps: Vec<Vec<(usize, usize)>> = (1..=k)
            .map(|i| {
                (0..targets.len())
                    .flat_map(|j| (chain[i - 1][j] + 1..=chain[i][j]).map(move |l| (j, l)))
                    .collect()
            })
            .collect();
        let child_cones: Vec<Arc<Vec<Cone>>> = steps
            .iter()
            .map(|hits| {
                let child_targets: Vec<Theta> =
                    hits.iter().map(|&(j, l)| targets[j].child(l).clone()).collect();
                if epi {
                    joint_epi_monos(&child_targets)
                } else {
                    joint_monos(&child_targets)
                }
            })
            .collect();
        for children in cartesian(&child_cones) {
            let apex = Theta::node(children.iter().map(|c| c.apex.clone()).collect());
            let legs = (0..targets.len())
                .map(|j| {
                    let root: Vec<usize> = chain.iter().map(|v| v[j]).collect();
                    let mut labels = Vec::new();
                    for (i, hits) in steps.iter().enumerate() {
                        for (pos, &(jj, _)) in hits.iter().enumerate() {
                            if jj == j {
                                labels.push(children[i].legs[pos].clone());
                            }
                        }
                    }
                    ThetaMorphism::new(apex.clone(), targets[j].clone(), root, labels)
                        .expect("cone legs are well formed")
                })
                .collect();
            out.push(Cone { apex, legs });
        }
    }
    out.sort();
    out
}

fn all_chains(arities: &[usize], chain: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    out.push(chain.clone());
    let last = chain.last().unwrap().clone();
    let mut next = last.clone();
    successors(arities, &last, 0, &mut next, &mut |p| {
        if p != last.as_slice() {
            chain.push(p.to_vec());
            all_chains(arities, chain, out);
            chain.pop();
        }
    });
}

fn successors(
    arities: &[usize],
    low: &[usize],
    j: usize,
    cur: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if j == arities.len() {
        emit(cur);
        return;
    }
    for v in low[j]..=arities[j] {
        cur[j] = v;
        successors(arities, low, j + 1, cur, emit);
    }
}

fn epi_chains(arities: &[usize], chain: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
    let last = chain.last().unwrap().clone();
    if last.as_slice() == arities {
        out.push(chain.clone());
        return;
    }
    let r = arities.len();
    for mask in 1u32..(1 << r) {
        let mut next = last.clone();
        let mut ok = true;
        for j in 0..r {
            if mask & (1 << j) != 0 {
                next[j] += 1;
                ok &= next[j] <= arities[j];
            }
        }
        if ok {
            chain.push(next);
            epi_chains(arities, chain, out);
            chain.pop();
        }
    }
}

/// The globe cells of `t` (maps `D_k -> t` for `k <= height(t)`), indexed,
/// together with every mono into `t` and the set of cells it contains.
///
/// A map `x: r -> t` factors through a mono `m` exactly when every cell of
/// `x` is a cell of `m`, so inclusion of cell sets is the subobject order.
pub struct SubobjectIndex {
    pub target: Theta,
    pub cells: Vec<ThetaMorphism>,
    cell_index: HashMap<ThetaMorphism, usize>,
    pub monos: Vec<ThetaMorphism>,
    pub mono_cells: Vec<BTreeSet<usize>>,
    by_cells: HashMap<BTreeSet<usize>, usize>,
    mono_index: HashMap<ThetaMorphism, usize>,
}

static INDEX: Memo<Theta, SubobjectIndex> = Memo::new();

impl SubobjectIndex {
    pub fn of(t: &Theta) -> Arc<SubobjectIndex> {
        INDEX.get_or(t, || SubobjectIndex::build(t))
    }

    fn build(t: &Theta) -> SubobjectIndex {
        let cells: Vec<ThetaMorphism> = (0..=t.height())
            .flat_map(|k| hom_set(&Theta::globe(k), t).iter().cloned().collect::<Vec<_>>())
            .collect();
        let cell_index: HashMap<ThetaMorphism, usize> =
            cells.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let monos = monos_into(t);
        let mut idx = SubobjectIndex {
            target: t.clone(),
            cells,
            cell_index,
            monos: Vec::new(),
            mono_cells: Vec::new(),
            by_cells: HashMap::new(),
            mono_index: HashMap::new(),
        };
        for m in monos {
            let cs = idx.cell_set(&m);
            idx.by_cells.insert(cs.clone(), idx.monos.len());
            idx.mono_index.insert(m.clone(), idx.monos.len());
            idx.monos.push(m);
            idx.mono_cells.push(cs);
        }
        idx
    }

    /// Indices of the globe cells of `target` that `x` hits.
    pub fn cell_set(&self, x: &ThetaMorphism) -> BTreeSet<usize> {
        (0..=self.target.height())
            .flat_map(|k| hom_set(&Theta::globe(k), x.source()).iter().cloned().collect::<Vec<_>>())
            .map(|w| self.cell_index[&x.after(&w)])
            .collect()
    }

    pub fn mono_count(&self) -> usize {
        self.monos.len()
    }

    pub fn position(&self, m: &ThetaMorphism) -> Option<usize> {
        self.mono_index.get(m).copied()
    }

    /// The mono part of the epi-mono factorization of `x`.
    pub fn image(&self, x: &ThetaMorphism) -> usize {
        self.by_cells[&self.cell_set(x)]
    }

    /// Whether mono `a` factors through mono `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.mono_cells[a].is_subset(&self.mono_cells[b])
    }

    /// The map `z` with `monos[b] ∘ z = monos[a]`, when it exists.
    pub fn lift(&self, a: usize, b: usize) -> Option<ThetaMorphism> {
        if !self.le(a, b) {
            return None;
        }
        let (x, m) = (&self.monos[a], &self.monos[b]);
        hom_set(x.source(), m.source())
            .iter()
            .find(|z| m.after(z) == *x)
            .cloned()
    }

    /// Index of the composite cell of mono `m`: the image of `m` composed
    /// with the principal cospine of its source.
    pub fn composite_cell(&self, m: usize) -> usize {
        let x = &self.monos[m];
        let c = crate::theta::cospine(x.source(), x.source().height()).expect("principal cospine");
        self.image(&x.after(&c))
    }

    /// Whether the mono is a globular summand of the target.
    pub fn is_leg(&self, m: usize) -> bool {
        legs(&self.target).contains(&self.monos[m])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::Window;

    fn brute_joint_monos(targets: &[Theta], window: Window, epi: bool) -> BTreeSet<Cone> {
        let mut out = BTreeSet::new();
        for p in window.objects() {
            let homs: Vec<Arc<Vec<ThetaMorphism>>> =
                targets.iter().map(|t| hom_set(&p, t)).collect();
            for legs in cartesian(&homs) {
                if epi && !legs.iter().all(ThetaMorphism::is_epi) {
                    continue;
                }
                let jointly_mono = (0..=p.height()).all(|k| {
                    let cells = hom_set(&Theta::globe(k), &p);
                    let mut images: Vec<Vec<ThetaMorphism>> = cells
                        .iter()
                        .map(|w| legs.iter().map(|l| l.after(w)).collect())
                        .collect();
                    images.sort();
                    images.windows(2).all(|w| w[0] != w[1])
                });
                if jointly_mono {
                    out.insert(Cone {
                        apex: p.clone(),
                        legs,
                    });
                }
            }
        }
        out
    }

    #[test]
    fn monos_match_brute_force() {
        for t in Window::new(2, 2).objects() {
            let fast: BTreeSet<Cone> = joint_monos(std::slice::from_ref(&t)).iter().cloned().collect();
            let window = Window::new(t.height(), t.level_width());
            let slow = brute_joint_monos(std::slice::from_ref(&t), window, false);
            assert_eq!(fast, slow, "{t}");
        }
    }

    #[test]
    fn epi_pairs_match_brute_force() {
        let objs: Vec<Theta> = Window::new(2, 2).objects().into_iter().filter(|o| o.size() <= 4).collect();
        for s in &objs {
            for t in objs.iter().filter(|t| s.width() + t.width() <= 3) {
                let targets = vec![s.clone(), t.clone()];
                let fast: BTreeSet<Cone> = joint_epi_monos(&targets).iter().cloned().collect();
                let window = Window::new(s.height().max(t.height()), s.width() + t.width());
                let slow = brute_joint_monos(&targets, window, true);
                assert_eq!(fast, slow, "{s} x {t}");
            }
        }
    }

    #[test]
    fn subobject_order_is_factorization() {
        for t in Window::new(2, 2).objects().iter().filter(|o| o.size() <= 5) {
            let idx = SubobjectIndex::of(t);
            for a in 0..idx.mono_count() {
                for b in 0..idx.mono_count() {
                    let factors = hom_set(idx.monos[a].source(), idx.monos[b].source())
                        .iter()
                        .any(|z| idx.monos[b].after(z) == idx.monos[a]);
                    assert_eq!(idx.le(a, b), factors);
                }
            }
        }
    }

    #[test]
    fn wide_subobjects_exist() {
        let t: Theta = "[2]([2]([0],[0]),[2]([0],[0]))".parse().unwrap();
        let idx = SubobjectIndex::of(&t);
        assert!(idx.monos.iter().any(|m| m.source().width() == 4));
    }
}
