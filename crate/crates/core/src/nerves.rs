//! Finite 1-categories, their nerves as cellular sets, nerves of one-step
//! suspensions `[1](C)`, and the homotopy search showing that `N([1](G_2))`
//! has no `J`-deformation onto the nerve of `[1]`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cellular::{natural_maps, product, Cell, CellularSet, Cellular, MapSearch};
use crate::error::{Error, Result};
use crate::intertwiner::{suspension, suspension_vertex, VSimplex};
use crate::theta::morphism::cartesian;
use crate::theta::{hom_set, legs, FinGlobularSet, Theta, ThetaMorphism, Window};

/// A finite category with arrows numbered `0..arrows.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: usize,
    /// `(source, target)` of each arrow.
    pub arrows: Vec<(usize, usize)>,
    pub identities: Vec<usize>,
    /// `compose[g][f] = Some(g ∘ f)` when `f` ends where `g` starts.
    pub compose: Vec<Vec<Option<usize>>>,
}

impl FinCategory {
    pub fn new(
        objects: usize,
        arrows: Vec<(usize, usize)>,
        identities: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
    ) -> Result<FinCategory> {
        let c = FinCategory {
            objects,
            arrows,
            identities,
            compose,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCategory(msg));
        let n = self.arrows.len();
        if self.identities.len() != self.objects {
            return bad("one identity per object is required".into());
        }
        if self.arrows.iter().any(|&(s, t)| s >= self.objects || t >= self.objects) {
            return bad("arrow endpoint out of range".into());
        }
        if self.compose.len() != n || self.compose.iter().any(|row| row.len() != n) {
            return bad("composition table has the wrong shape".into());
        }
        for (x, &id) in self.identities.iter().enumerate() {
            if self.arrows.get(id) != Some(&(x, x)) {
                return bad(format!("identity of {x} is not a loop at {x}"));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].1 == self.arrows[g].0;
                match self.compose[g][f] {
                    Some(h) if composable => {
                        if self.arrows[h] != (self.arrows[f].0, self.arrows[g].1) {
                            return bad(format!("{g} ∘ {f} has the wrong endpoints"));
                        }
                    }
                    None if !composable => {}
                    _ => return bad(format!("composability of {g} after {f} is misrecorded")),
                }
            }
        }
        for f in 0..n {
            let (s, t) = self.arrows[f];
            if self.compose[f][self.identities[s]] != Some(f) || self.compose[self.identities[t]][f] != Some(f) {
                return bad(format!("unit law fails at {f}"));
            }
            for g in 0..n {
                for h in 0..n {
                    if let (Some(gf), Some(hg)) = (self.compose[g][f], self.compose[h][g]) {
                        if self.compose[h][gf] != self.compose[hg][f] {
                            return bad(format!("associativity fails at ({h}, {g}, {f})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn source(&self, f: usize) -> usize {
        self.arrows[f].0
    }

    pub fn target(&self, f: usize) -> usize {
        self.arrows[f].1
    }

    /// `g ∘ f`. Panics when they do not compose.
    pub fn then(&self, f: usize, g: usize) -> usize {
        self.compose[g][f].expect("arrows compose")
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows.len()).filter(|&f| self.arrows[f] == (x, y)).collect()
    }

    /// The arrows with a two-sided inverse.
    pub fn invertible_arrows(&self) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&f| {
                let (s, t) = self.arrows[f];
                self.hom(t, s).into_iter().any(|g| {
                    self.compose[g][f] == Some(self.identities[s])
                        && self.compose[f][g] == Some(self.identities[t])
                })
            })
            .collect()
    }

    /// The category with one arrow `x -> y` whenever `le(x, y)`.
    pub fn from_preorder(objects: usize, le: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for x in 0..objects {
            for y in 0..objects {
                if le(x, y) {
                    index.insert((x, y), arrows.len());
                    arrows.push((x, y));
                }
            }
        }
        let identities = (0..objects)
            .map(|x| {
                index
                    .get(&(x, x))
                    .copied()
                    .ok_or_else(|| Error::InvalidCategory("preorder is not reflexive".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = arrows.len();
        let mut compose = vec![vec![None; n]; n];
        for (g, &(b, c)) in arrows.iter().enumerate() {
            for (f, &(a, b2)) in arrows.iter().enumerate() {
                if b == b2 {
                    let h = index
                        .get(&(a, c))
                        .copied()
                        .ok_or_else(|| Error::InvalidCategory("preorder is not transitive".into()))?;
                    compose[g][f] = Some(h);
                }
            }
        }
        FinCategory::new(objects, arrows, identities, compose)
    }
}

/// `k` objects with exactly one arrow between any ordered pair.
pub fn chaotic_groupoid(k: usize) -> Result<FinCategory> {
    if k == 0 {
        return Err(Error::InvalidArgument("a chaotic groupoid needs an object".into()));
    }
    FinCategory::from_preorder(k, |_, _| true)
}

/// The ordinal `[n]` as a category.
pub fn ordinal(n: usize) -> FinCategory {
    FinCategory::from_preorder(n + 1, |x, y| x <= y).expect("ordinals are posets")
}

/// The 1-cells of `[1](C)` as a category: the two endpoints, their
/// identities, and one arrow `0 -> 1` for each object of `C`.
pub fn suspension_one_truncation(c: &FinCategory) -> FinCategory {
    let mut arrows = vec![(0, 0), (1, 1)];
    arrows.extend(std::iter::repeat_n((0, 1), c.objects));
    let n = arrows.len();
    let mut compose = vec![vec![None; n]; n];
    for f in 0..n {
        let (s, t) = arrows[f];
        compose[t][f] = Some(f);
        compose[f][s] = Some(f);
    }
    FinCategory::new(2, arrows, vec![0, 1], compose).expect("suspensions are categories")
}

/// The invertible 1-cells of `[1](C)`, as arrows of its 1-truncation.
pub fn invertible_one_cells(c: &FinCategory) -> Vec<usize> {
    suspension_one_truncation(c).invertible_arrows()
}

/// The nerve of a finite category: over `[n](t)` the functors `[n] -> C`,
/// with the labels `t` ignored.
pub struct Nerve(pub Arc<FinCategory>);

pub fn nerve_category(c: &FinCategory) -> Nerve {
    Nerve(Arc::new(c.clone()))
}

impl Nerve {
    fn functors(&self, n: usize) -> Vec<Cell> {
        let c = &self.0;
        let mut out = Vec::new();
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        for x in 0..c.objects {
            objects.push(x);
            extend_chain(c, n, &mut objects, &mut arrows, &mut out);
            objects.pop();
        }
        out
    }
}

fn extend_chain(c: &FinCategory, n: usize, objects: &mut Vec<usize>, arrows: &mut Vec<usize>, out: &mut Vec<Cell>) {
    if arrows.len() == n {
        out.push(Cell::Functor {
            objects: objects.clone(),
            arrows: arrows.clone(),
        });
        return;
    }
    let x = *objects.last().unwrap();
    for f in 0..c.arrows.len() {
        if c.source(f) == x {
            objects.push(c.target(f));
            arrows.push(f);
            extend_chain(c, n, objects, arrows, out);
            arrows.pop();
            objects.pop();
        }
    }
}

impl CellularSet for Nerve {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        self.functors(theta.arity())
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        let Cell::Functor { objects, arrows } = cell else {
            panic!("{cell} is not a functor");
        };
        let c = &self.0;
        let root = f.root_values();
        let new_arrows = root
            .windows(2)
            .map(|w| {
                (w[0]..w[1]).fold(c.identities[objects[w[0]]], |acc, k| c.then(acc, arrows[k]))
            })
            .collect();
        Cell::Functor {
            objects: root.iter().map(|&v| objects[v]).collect(),
            arrows: new_arrows,
        }
    }

    fn name(&self) -> String {
        format!("N(C{})", self.0.objects)
    }
}

/// `N([1](C))`, the suspension of the nerve of `C`.
pub fn nerve_suspension(c: &FinCategory) -> VSimplex {
    suspension(Arc::new(nerve_category(c)))
}

/// `2 + Σ_i 2^{m_i + 1}` for `t = [n](t_1, ..., t_n)`, `t_i = [m_i](..)`.
pub fn suspension_count_formula(t: &Theta) -> usize {
    2 + t.children().iter().map(|c| 1usize << (c.arity() + 1)).sum::<usize>()
}

/// The underlying globular set of `C` viewed as an ω-category with only
/// identities above dimension 1, truncated at `height`.
pub fn category_globular_set(c: &FinCategory, height: usize) -> FinGlobularSet {
    let mut counts = vec![c.objects];
    let mut source = Vec::new();
    let mut target = Vec::new();
    if height >= 1 {
        counts.push(c.arrows.len());
        source.push(c.arrows.iter().map(|a| a.0).collect());
        target.push(c.arrows.iter().map(|a| a.1).collect());
    }
    for _ in 2..=height {
        let below = *counts.last().unwrap();
        counts.push(below);
        source.push((0..below).collect());
        target.push((0..below).collect());
    }
    FinGlobularSet::new(counts, source, target).expect("identity cells are globular")
}

/// The underlying globular set of the 2-category `[1](C)` truncated at
/// `height`: endpoints, their identities, the objects of `C` as 1-cells
/// `0 -> 1`, the arrows of `C` as 2-cells, then identities.
pub fn suspension_globular_set(c: &FinCategory, height: usize) -> FinGlobularSet {
    let mut counts = vec![2];
    let mut source = Vec::new();
    let mut target = Vec::new();
    if height >= 1 {
        counts.push(2 + c.objects);
        source.push([0, 1].into_iter().chain(std::iter::repeat_n(0, c.objects)).collect());
        target.push([0, 1].into_iter().chain(std::iter::repeat_n(1, c.objects)).collect());
    }
    if height >= 2 {
        counts.push(2 + c.arrows.len());
        source.push([0, 1].into_iter().chain(c.arrows.iter().map(|a| 2 + a.0)).collect());
        target.push([0, 1].into_iter().chain(c.arrows.iter().map(|a| 2 + a.1)).collect());
    }
    for _ in 3..=height {
        let below = *counts.last().unwrap();
        counts.push(below);
        source.push((0..below).collect());
        target.push((0..below).collect());
    }
    FinGlobularSet::new(counts, source, target).expect("suspension cells are globular")
}

/// Number of maps of globular sets `g -> u`; `u` must reach the dimension
/// of `g`.
pub fn count_globular_maps(g: &FinGlobularSet, u: &FinGlobularSet) -> usize {
    let cells = g.cells();
    let mut assignment: Vec<Vec<Option<usize>>> = g.counts.iter().map(|&n| vec![None; n]).collect();
    count_from(g, u, &cells, 0, &mut assignment)
}

fn count_from(
    g: &FinGlobularSet,
    u: &FinGlobularSet,
    cells: &[(usize, usize)],
    k: usize,
    assignment: &mut Vec<Vec<Option<usize>>>,
) -> usize {
    let Some(&(d, x)) = cells.get(k) else {
        return 1;
    };
    let mut total = 0;
    for y in 0..u.counts.get(d).copied().unwrap_or(0) {
        let ok = d == 0 || {
            let s = assignment[d - 1][g.source[d - 1][x]];
            let t = assignment[d - 1][g.target[d - 1][x]];
            s == Some(u.source[d - 1][y]) && t == Some(u.target[d - 1][y])
        };
        if ok {
            assignment[d][x] = Some(y);
            total += count_from(g, u, cells, k + 1, assignment);
            assignment[d][x] = None;
        }
    }
    total
}

/// The globular maps `D_v -> D_a` and `D_v -> D_b` through which two
/// consecutive legs of `t` share a face.
fn valley(first: &ThetaMorphism, second: &ThetaMorphism, t: &Theta) -> (ThetaMorphism, ThetaMorphism) {
    let (a, b) = (first.source(), second.source());
    for v in (0..=a.height().min(b.height())).rev() {
        let d = Theta::globe(v);
        for x in hom_set(&d, a).iter().filter(|x| x.is_mono()) {
            for y in hom_set(&d, b).iter().filter(|y| y.is_mono()) {
                if first.after(x) == second.after(y) {
                    return (x.clone(), y.clone());
                }
            }
        }
    }
    unreachable!("consecutive legs of {t} share a vertex")
}

/// Whether restriction to the legs identifies `X(t)` with the families of
/// cells over the legs that agree on shared faces.
pub fn spine_iso_check(x: &dyn CellularSet, t: &Theta) -> bool {
    let ls = legs(t);
    let valleys: Vec<(ThetaMorphism, ThetaMorphism)> =
        ls.windows(2).map(|w| valley(&w[0], &w[1], t)).collect();
    let options: Vec<Arc<Vec<Cell>>> = ls.iter().map(|l| Arc::new(x.cells(l.source()))).collect();
    let families: Vec<Vec<Cell>> = cartesian(&options)
        .into_iter()
        .filter(|fam| {
            valleys
                .iter()
                .enumerate()
                .all(|(k, (a, b))| x.restrict(&fam[k], a) == x.restrict(&fam[k + 1], b))
        })
        .collect();
    let mut restricted: Vec<Vec<Cell>> = x
        .cells(t)
        .iter()
        .map(|c| ls.iter().map(|l| x.restrict(c, l)).collect())
        .collect();
    let n = restricted.len();
    restricted.sort();
    restricted.dedup();
    let mut families = families;
    families.sort();
    restricted.len() == n && restricted == families
}

/// Outcome of the homotopy search on `X = N([1](G_2))` with interval `J`.
#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub window: String,
    pub conclusive: bool,
    pub reason: Option<String>,
    /// Variables and window morphisms of the main search.
    pub variables: usize,
    pub morphisms: usize,
    /// Homotopies from the identity ending in the nerve of `[1]`.
    pub endpoint_solutions: usize,
    /// Those that in addition fix the nerve of `[1]` throughout.
    pub retraction_solutions: usize,
    /// With the end condition dropped; contains the projection.
    pub unconstrained_solutions: usize,
    pub projection_found: bool,
    /// Contractions of `J` onto a vertex (target `J`).
    pub positive_control_solutions: usize,
    pub reduction: String,
}

impl CounterexampleReport {
    pub fn passes(&self) -> bool {
        self.conclusive
            && self.endpoint_solutions == 0
            && self.retraction_solutions == 0
            && self.projection_found
            && self.positive_control_solutions >= 1
    }
}

const REDUCTION: &str = "Write X = N([1](G2)), e: 0 -> 1 and e': 1 -> 0 for the edges of J, and a, b for the two \
crossing 1-cells of X, with a in the image of the nerve of [1]. The only 1-cells of X ending at the vertex 0 are \
identities, so H(0, e') forces H(0, 1) = 0 and then H(0, e) = id_0: the homotopy cannot move a vertex along a \
non-invertible cell. Over [2]([0],[0]) the pair (b then id_1, e then id_1) has long edge (b, e) and short edges \
going to b and id_1, while (id_0 then b, e then id_1) has the same long edge and short edges going to id_0 and a. \
Hence H(b, e) = b and H(b, e) = a, which is impossible. Only cells over [0], D_1, D_2 and [2]([0],[0]) take part, \
so the window of height 2 and width 2 decides the question.";

/// Cells of `J` over `θ` that are constant at object `o`.
fn is_constant(cell: &Cell, o: usize) -> bool {
    matches!(cell, Cell::Functor { objects, .. } if objects.iter().all(|&x| x == o))
}

/// Cells of `N([1](G_2))` in the image of the nerve of `[1]`: constants and
/// crossings labelled by the constant functor at object `0`.
fn in_arrow_image(cell: &Cell) -> bool {
    match cell {
        Cell::Wreath { labels, .. } => labels.iter().all(|l| is_constant(l, 0)),
        _ => false,
    }
}

pub fn counterexample_search(window: Window) -> CounterexampleReport {
    let g2 = chaotic_groupoid(2).expect("two objects");
    let j: Cellular = Arc::new(nerve_category(&g2));
    let x: Cellular = Arc::new(nerve_suspension(&g2));
    let needed = Window::new(2, 2);
    if window.max_height < needed.max_height || window.max_width < needed.max_width {
        return CounterexampleReport {
            window: window.to_string(),
            conclusive: false,
            reason: Some(format!("the window must contain {needed}")),
            variables: 0,
            morphisms: 0,
            endpoint_solutions: 0,
            retraction_solutions: 0,
            unconstrained_solutions: 0,
            projection_found: false,
            positive_control_solutions: 0,
            reduction: REDUCTION.into(),
        };
    }
    let source = product(x.clone(), j.clone());
    let split = |cell: &Cell| -> (Cell, Cell) {
        match cell {
            Cell::Tuple(cs) => (cs[0].clone(), cs[1].clone()),
            other => panic!("{other} is not a pair"),
        }
    };
    let start = |_: &Theta, cell: &Cell, image: &Cell| {
        let (a, t) = split(cell);
        !is_constant(&t, 0) || *image == a
    };
    let endpoint = |theta: &Theta, cell: &Cell, image: &Cell| {
        let (_, t) = split(cell);
        start(theta, cell, image) && (!is_constant(&t, 1) || in_arrow_image(image))
    };
    let retraction = |theta: &Theta, cell: &Cell, image: &Cell| {
        let (a, _) = split(cell);
        endpoint(theta, cell, image) && (!in_arrow_image(&a) || *image == a)
    };
    let run = |constraint: &(dyn Fn(&Theta, &Cell, &Cell) -> bool + Sync), limit| {
        natural_maps(&MapSearch {
            source: source.as_ref(),
            target: x.as_ref(),
            window,
            constraint: Some(constraint),
            limit,
        })
    };
    let main = run(&endpoint, None);
    let retract = run(&retraction, None);
    let free = run(&start, None);
    let projection_found = free.solutions.iter().any(|m| {
        m.assignment.iter().all(|((_, cell), image)| split(cell).0 == *image)
    });

    let jj = product(j.clone(), j.clone());
    let contract = |_: &Theta, cell: &Cell, image: &Cell| {
        let (a, t) = split(cell);
        (!is_constant(&t, 0) || *image == a) && (!is_constant(&t, 1) || is_constant(image, 0))
    };
    let control = natural_maps(&MapSearch {
        source: jj.as_ref(),
        target: j.as_ref(),
        window,
        constraint: Some(&contract),
        limit: Some(1),
    });
    CounterexampleReport {
        window: window.to_string(),
        conclusive: true,
        reason: None,
        variables: main.variables,
        morphisms: main.morphisms,
        endpoint_solutions: main.solutions.len(),
        retraction_solutions: retract.solutions.len(),
        unconstrained_solutions: free.solutions.len(),
        projection_found,
        positive_control_solutions: control.solutions.len(),
        reduction: REDUCTION.into(),
    }
}

/// The vertex cells of `N([1](C))`.
pub fn suspension_endpoints() -> (Cell, Cell) {
    (suspension_vertex(0), suspension_vertex(1))
}
