//! The intertwiner `V[m](A_1, ..., A_m)`: cellular sets built from a simplex
//! whose edges are labelled by cellular sets, the suspension `Δ_1[X]`, and
//! the mapping object `X(x_0, x_1)`.
//!
//! A cell of `V[m](A)` over `[q](c_1, ..., c_q)` is a monotone `δ: [q] -> [m]`
//! together with a cell of `A_j` over `c_i` for every `j` in
//! `(δ(i-1), δ(i)]`. It is stored as `Cell::Wreath`.

use std::sync::Arc;

use crate::cellular::{
    natural_maps, Cell, CellularMap, CellularSet, Cellular, MapSearch,
};
use crate::error::{Error, Result};
use crate::theta::morphism::cartesian;
use crate::theta::{DeltaMap, Theta, ThetaMorphism, Window};

pub struct VSimplex {
    pub labels: Vec<Cellular>,
}

impl VSimplex {
    pub fn new(labels: Vec<Cellular>) -> VSimplex {
        VSimplex { labels }
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    /// The cells over `theta` whose root is `delta`.
    pub fn cells_over(&self, theta: &Theta, delta: &DeltaMap) -> Vec<Cell> {
        let root = delta.values();
        let factors: Vec<Arc<Vec<Cell>>> = (root[0] + 1..=root[root.len() - 1])
            .map(|j| {
                let i = root.partition_point(|&v| v < j);
                Arc::new(self.labels[j - 1].cells(theta.child(i)))
            })
            .collect();
        cartesian(&factors)
            .into_iter()
            .map(|labels| Cell::Wreath {
                root: root.to_vec(),
                labels,
            })
            .collect()
    }
}

impl CellularSet for VSimplex {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        DeltaMap::all(theta.arity(), self.arity())
            .iter()
            .flat_map(|d| self.cells_over(theta, d))
            .collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        let Cell::Wreath { root, labels } = cell else {
            panic!("{cell} is not a cell of an intertwiner");
        };
        let new_root: Vec<usize> = f.root_values().iter().map(|&v| root[v]).collect();
        let lo = new_root[0];
        let hi = new_root[new_root.len() - 1];
        let new_labels = (lo + 1..=hi)
            .map(|k| {
                let j = root.partition_point(|&v| v < k);
                self.labels[k - 1].restrict(&labels[k - root[0] - 1], f.label(j))
            })
            .collect();
        Cell::Wreath {
            root: new_root,
            labels: new_labels,
        }
    }

    fn name(&self) -> String {
        let names: Vec<String> = self.labels.iter().map(|a| a.name()).collect();
        format!("V[{}]({})", self.arity(), names.join(", "))
    }
}

/// `Δ_1[X] = V[1](X)`.
pub fn suspension(x: Cellular) -> VSimplex {
    VSimplex::new(vec![x])
}

/// The two vertices of a suspension, as cells over `[0]`.
pub fn suspension_vertex(v: usize) -> Cell {
    Cell::Wreath {
        root: vec![v],
        labels: vec![],
    }
}

/// Reads a cell of `V[m](Θ[t_1], ..., Θ[t_m])` as a map into `[m](t)`.
pub fn as_theta_map(theta: &Theta, target: &Theta, cell: &Cell) -> Result<ThetaMorphism> {
    let Cell::Wreath { root, labels } = cell else {
        return Err(Error::InvalidArgument(format!("{cell} is not a wreath cell")));
    };
    let labels = labels
        .iter()
        .map(|c| match c {
            Cell::Map(m) => Ok(m.clone()),
            other => Err(Error::InvalidArgument(format!("{other} is not a map"))),
        })
        .collect::<Result<Vec<_>>>()?;
    ThetaMorphism::new(theta.clone(), target.clone(), root.clone(), labels)
}

/// Extends a map `A -> B` of labels to `Δ_1[A] -> Δ_1[B]` on the window.
pub fn suspend_map(f: &CellularMap, a: &Cellular, window: Window) -> CellularMap {
    let sa = suspension(a.clone());
    let mut assignment = std::collections::BTreeMap::new();
    for theta in window.objects() {
        for cell in sa.cells(&theta) {
            let Cell::Wreath { root, labels } = &cell else {
                unreachable!()
            };
            let image = labels
                .iter()
                .map(|c| {
                    let j = root.partition_point(|&v| v < 1);
                    f.apply(theta.child(j), c)
                        .cloned()
                        .expect("label object lies in the window of the map")
                })
                .collect();
            assignment.insert(
                (theta.clone(), cell.clone()),
                Cell::Wreath {
                    root: root.clone(),
                    labels: image,
                },
            );
        }
    }
    CellularMap { window, assignment }
}

/// Cardinalities of the classes `G(p)` of cells of
/// `V[m+1+n](A_1..A_m, X, B_1..B_n)` over one object `[q](c)`, counted
/// directly and by the product formula.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PartitionCounts {
    pub object: Theta,
    /// Cells whose root lies in the class `G(p)`, for `p = 0..=q+1`.
    pub direct: Vec<usize>,
    /// The product formula for the factor `S_p`.
    pub formula: Vec<usize>,
    pub total: usize,
    /// `|V[n](B)(θ)|` and `|V[m](A)(θ)|`, which `S_0` and `S_{q+1}` should
    /// match.
    pub outer: (usize, usize),
}

impl PartitionCounts {
    pub fn consistent(&self) -> bool {
        let q1 = self.direct.len() - 1;
        self.direct == self.formula
            && self.direct.iter().sum::<usize>() == self.total
            && self.formula[0] == self.outer.0
            && self.formula[q1] == self.outer.1
    }
}

/// The class of a root `δ: [q] -> [m+1+n]` around the middle edge `m+1`:
/// `0` when `δ(0) >= m+1`, `q+1` when `δ(q) <= m`, and otherwise the index
/// `p` of the source edge whose image contains `m+1`.
pub fn partition_class(delta: &[usize], m: usize) -> usize {
    let q = delta.len() - 1;
    if delta[0] > m {
        0
    } else if delta[q] <= m {
        q + 1
    } else {
        (1..=q).find(|&p| delta[p - 1] <= m && delta[p] > m).unwrap()
    }
}

pub fn partition_counts(
    a: &[Cellular],
    x: &Cellular,
    b: &[Cellular],
    theta: &Theta,
) -> PartitionCounts {
    let m = a.len();
    let n = b.len();
    let q = theta.arity();
    let mut labels: Vec<Cellular> = a.to_vec();
    labels.push(x.clone());
    labels.extend(b.iter().cloned());
    let v = VSimplex::new(labels);
    let mut direct = vec![0; q + 2];
    let mut total = 0;
    for cell in v.cells(theta) {
        let Cell::Wreath { root, .. } = &cell else {
            unreachable!()
        };
        direct[partition_class(root, m)] += 1;
        total += 1;
    }

    let size = |set: &Cellular, i: usize| set.cells(theta.child(i)).len();
    let mut formula = vec![0; q + 2];
    for delta in DeltaMap::all(q, m + 1 + n) {
        let d = delta.values();
        let p = partition_class(d, m);
        let count: usize = if p == 0 {
            (1..=q)
                .map(|i| (d[i - 1] + 1..=d[i]).map(|j| size(&b[j - m - 2], i)).product::<usize>())
                .product()
        } else if p == q + 1 {
            (1..=q)
                .map(|i| (d[i - 1] + 1..=d[i]).map(|j| size(&a[j - 1], i)).product::<usize>())
                .product()
        } else {
            let left: usize = (1..=p)
                .map(|i| (d[i - 1] + 1..=d[i].min(m)).map(|j| size(&a[j - 1], i)).product::<usize>())
                .product();
            let right: usize = (p..=q)
                .map(|i| {
                    ((d[i - 1] + 1).max(m + 2)..=d[i])
                        .map(|j| size(&b[j - m - 2], i))
                        .product::<usize>()
                })
                .product();
            left * size(x, p) * right
        };
        formula[p] += count;
    }
    let outer = (
        VSimplex::new(b.to_vec()).cells(theta).len(),
        VSimplex::new(a.to_vec()).cells(theta).len(),
    );
    PartitionCounts {
        object: theta.clone(),
        direct,
        formula,
        total,
        outer,
    }
}

/// `X(x_0, x_1)`: over `c`, the cells of `X` over `[1](c)` whose endpoints
/// are `x_0` and `x_1`.
pub struct MappingObject {
    pub x: Cellular,
    pub x0: Cell,
    pub x1: Cell,
}

pub fn mapping_object(x: Cellular, x0: Cell, x1: Cell) -> Result<MappingObject> {
    let vertices = x.cells(&Theta::point());
    for v in [&x0, &x1] {
        if !vertices.contains(v) {
            return Err(Error::InvalidArgument(format!(
                "{v} is not a 0-cell of {}",
                x.name()
            )));
        }
    }
    Ok(MappingObject { x, x0, x1 })
}

impl CellularSet for MappingObject {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        let shape = Theta::node(vec![theta.clone()]);
        let v0 = ThetaMorphism::vertex(&shape, 0);
        let v1 = ThetaMorphism::vertex(&shape, 1);
        self.x
            .cells(&shape)
            .into_iter()
            .filter(|c| self.x.restrict(c, &v0) == self.x0 && self.x.restrict(c, &v1) == self.x1)
            .collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        let source = Theta::node(vec![f.source().clone()]);
        let target = Theta::node(vec![f.target().clone()]);
        let lifted = ThetaMorphism::new(source, target, vec![0, 1], vec![f.clone()])
            .expect("suspended maps are well formed");
        self.x.restrict(cell, &lifted)
    }

    fn name(&self) -> String {
        format!("{}({}, {})", self.x.name(), self.x0, self.x1)
    }
}

/// Both sides of the adjunction `Δ_1[A] -> X` (endpoints fixed) versus
/// `A -> X(x_0, x_1)`, counted by natural-map search. The label side is
/// searched on `window`, the suspended side on the window one level higher.
pub fn adjunction_counts(a: Cellular, x: Cellular, x0: Cell, x1: Cell, window: Window) -> Result<(usize, usize)> {
    let mo = mapping_object(x.clone(), x0.clone(), x1.clone())?;
    let right = natural_maps(&MapSearch {
        source: a.as_ref(),
        target: &mo,
        window,
        constraint: None,
        limit: None,
    })
    .solutions
    .len();
    let sa = suspension(a);
    let endpoints = move |theta: &Theta, cell: &Cell, image: &Cell| {
        if !theta.is_point() {
            return true;
        }
        if *cell == suspension_vertex(0) {
            *image == x0
        } else {
            *image == x1
        }
    };
    let up = Window::new(window.max_height + 1, window.max_width.max(1));
    let left = natural_maps(&MapSearch {
        source: &sa,
        target: x.as_ref(),
        window: up,
        constraint: Some(&endpoints),
        limit: None,
    })
    .solutions
    .len();
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellular::{audit_functoriality, representable, Empty, Terminal};
    use crate::theta::hom_set;

    fn t(s: &str) -> Theta {
        s.parse().unwrap()
    }

    #[test]
    fn v_zero_is_a_point() {
        let v = VSimplex::new(vec![]);
        for theta in Window::new(2, 2).objects() {
            assert_eq!(v.cells(&theta).len(), 1);
        }
    }

    #[test]
    fn v_one_over_an_edge() {
        // Two constant roots plus one crossing root carrying a cell of A.
        let a = representable(&t("[2]([0],[0])"));
        let v = suspension(a.clone());
        for c in Window::new(1, 2).objects() {
            let shape = Theta::node(vec![c.clone()]);
            assert_eq!(v.cells(&shape).len(), 2 + a.cells(&c).len());
        }
    }

    #[test]
    fn representable_labels_match_hom_sets() {
        let labels = [t("[0]"), t("[1]([0])"), t("[2]([0],[0])")];
        for m in 0..=3 {
            let ts: Vec<Theta> = (0..m).map(|i| labels[i % labels.len()].clone()).collect();
            let v = VSimplex::new(ts.iter().map(representable).collect());
            let target = Theta::node(ts.clone());
            for theta in Window::new(2, 2).objects() {
                let cells = v.cells(&theta);
                let mut maps: Vec<ThetaMorphism> = cells
                    .iter()
                    .map(|c| as_theta_map(&theta, &target, c).unwrap())
                    .collect();
                maps.sort();
                maps.dedup();
                assert_eq!(maps.len(), cells.len());
                assert_eq!(maps.len(), hom_set(&theta, &target).len(), "{theta} into {target}");
            }
        }
    }

    #[test]
    fn restriction_matches_composition() {
        let ts = vec![t("[1]([0])"), t("[0]")];
        let v = VSimplex::new(ts.iter().map(representable).collect());
        let target = Theta::node(ts);
        let objs = Window::new(2, 2).objects();
        for theta in &objs {
            for cell in v.cells(theta) {
                let x = as_theta_map(theta, &target, &cell).unwrap();
                for lower in &objs {
                    for f in hom_set(lower, theta).iter() {
                        let r = as_theta_map(lower, &target, &v.restrict(&cell, f)).unwrap();
                        assert_eq!(r, x.after(f));
                    }
                }
            }
        }
    }

    #[test]
    fn suspension_is_functorial() {
        let s = suspension(representable(&Theta::globe(1)));
        audit_functoriality(&s, Window::new(2, 2)).unwrap();
    }

    #[test]
    fn suspension_of_terminal_and_empty() {
        let st = suspension(Arc::new(Terminal));
        let se = suspension(Arc::new(Empty));
        for theta in Window::new(3, 2).objects() {
            assert_eq!(st.cells(&theta).len(), hom_set(&theta, &Theta::globe(1)).len());
            assert_eq!(se.cells(&theta).len(), 2);
        }
    }

    #[test]
    fn partitions_add_up() {
        let a = representable(&Theta::globe(1));
        let x = representable(&t("[2]([0],[0])"));
        let b = representable(&Theta::point());
        for theta in Window::new(2, 2).objects() {
            for (aa, bb) in [
                (vec![], vec![]),
                (vec![a.clone()], vec![]),
                (vec![], vec![b.clone()]),
                (vec![a.clone()], vec![b.clone(), a.clone()]),
            ] {
                let pc = partition_counts(&aa, &x, &bb, &theta);
                assert!(pc.consistent(), "{pc:?}");
            }
            let empty: Cellular = Arc::new(Empty);
            let pc = partition_counts(std::slice::from_ref(&a), &empty, std::slice::from_ref(&b), &theta);
            let q = theta.arity();
            assert!(pc.direct[1..=q].iter().all(|&c| c == 0));
            assert_eq!(pc.total, pc.outer.0 + pc.outer.1);
        }
    }

    #[test]
    fn mapping_object_of_an_edge() {
        let x = representable(&Theta::globe(1));
        let v = |i| Cell::Map(ThetaMorphism::vertex(&Theta::globe(1), i));
        let mo = mapping_object(x.clone(), v(0), v(1)).unwrap();
        assert_eq!(mo.cells(&Theta::point()).len(), 1);
        let back = mapping_object(x.clone(), v(1), v(0)).unwrap();
        assert_eq!(back.cells(&Theta::point()).len(), 0);
        let loops = mapping_object(x.clone(), v(0), v(0)).unwrap();
        let degenerate = Cell::Map(ThetaMorphism::vertex(&Theta::globe(1), 0).after(&ThetaMorphism::to_point(&Theta::globe(1))));
        assert!(loops.cells(&Theta::point()).contains(&degenerate));
        assert!(mapping_object(x, v(0), Cell::Point).is_err());
    }

    #[test]
    fn adjunction_on_a_two_simplex() {
        let two = t("[2]([0],[0])");
        let x = representable(&two);
        let v = |i| Cell::Map(ThetaMorphism::vertex(&two, i));
        for (i, j) in [(0, 2), (0, 1), (1, 0), (1, 1)] {
            let (l, r) = adjunction_counts(representable(&Theta::point()), x.clone(), v(i), v(j), Window::new(1, 2)).unwrap();
            assert_eq!(l, r, "endpoints {i}, {j}");
        }
    }
}
