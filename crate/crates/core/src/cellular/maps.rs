//! Natural maps between cellular sets over a window, found by constraint
//! search with forward propagation along every window morphism.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::cellular::{Cell, CellularSet};
use crate::theta::{hom_set, Theta, Window};

/// A map of cellular sets restricted to the objects of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMap {
    pub window: Window,
    pub assignment: BTreeMap<(Theta, Cell), Cell>,
}

impl CellularMap {
    pub fn apply(&self, theta: &Theta, cell: &Cell) -> Option<&Cell> {
        self.assignment.get(&(theta.clone(), cell.clone()))
    }

    /// Checks every naturality square over the window.
    pub fn is_natural(&self, source: &dyn CellularSet, target: &dyn CellularSet) -> bool {
        let objs = self.window.objects();
        objs.iter().all(|theta| {
            source.cells(theta).iter().all(|x| {
                let Some(y) = self.apply(theta, x) else {
                    return false;
                };
                objs.iter().all(|lower| {
                    hom_set(lower, theta).iter().all(|f| {
                        self.apply(lower, &source.restrict(x, f)) == Some(&target.restrict(y, f))
                    })
                })
            })
        })
    }
}

pub type CellConstraint<'a> = dyn Fn(&Theta, &Cell, &Cell) -> bool + Sync + 'a;

/// A search for natural maps `source -> target` over `window`, optionally
/// restricted by a per-cell constraint `(object, cell, image) -> bool`.
pub struct MapSearch<'a> {
    pub source: &'a dyn CellularSet,
    pub target: &'a dyn CellularSet,
    pub window: Window,
    pub constraint: Option<&'a CellConstraint<'a>>,
    pub limit: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solutions: Vec<CellularMap>,
    /// True when the search stopped at the limit.
    pub truncated: bool,
    pub variables: usize,
    pub morphisms: usize,
}

struct Problem {
    objects: Vec<Theta>,
    x_cells: Vec<Vec<Cell>>,
    y_cells: Vec<Vec<Cell>>,
    // var id = offset[o] + local cell index
    offset: Vec<usize>,
    var_object: Vec<usize>,
    // For each var: list of (restricted var, table from values at o to values at o')
    // stored via edge ids.
    edges_into: Vec<Vec<usize>>,
    edge_from: Vec<usize>,
    x_restrict: Vec<Vec<u32>>,
    y_restrict: Vec<Vec<u32>>,
    allowed: Vec<Vec<bool>>,
}

impl Problem {
    fn build(search: &MapSearch<'_>) -> Problem {
        let mut objects = search.window.objects();
        objects.sort_by(|a, b| (b.size(), b).cmp(&(a.size(), a)));
        let x_cells: Vec<Vec<Cell>> = objects.iter().map(|o| search.source.cells(o)).collect();
        let y_cells: Vec<Vec<Cell>> = objects.iter().map(|o| search.target.cells(o)).collect();
        let x_pos: Vec<HashMap<&Cell, u32>> = x_cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i as u32)).collect())
            .collect();
        let y_pos: Vec<HashMap<&Cell, u32>> = y_cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i as u32)).collect())
            .collect();
        let mut offset = Vec::new();
        let mut var_object = Vec::new();
        for (o, cs) in x_cells.iter().enumerate() {
            offset.push(var_object.len());
            var_object.extend(std::iter::repeat_n(o, cs.len()));
        }
        let mut edges_into = vec![Vec::new(); objects.len()];
        let mut edge_from = Vec::new();
        let mut x_restrict = Vec::new();
        let mut y_restrict = Vec::new();
        for (o, theta) in objects.iter().enumerate() {
            for (lo, lower) in objects.iter().enumerate() {
                for f in hom_set(lower, theta).iter() {
                    if lo == o && f.is_identity() {
                        continue;
                    }
                    edges_into[o].push(edge_from.len());
                    edge_from.push(lo);
                    x_restrict.push(
                        x_cells[o]
                            .iter()
                            .map(|c| x_pos[lo][&search.source.restrict(c, f)])
                            .collect(),
                    );
                    y_restrict.push(
                        y_cells[o]
                            .iter()
                            .map(|c| y_pos[lo][&search.target.restrict(c, f)])
                            .collect(),
                    );
                }
            }
        }
        let allowed = (0..var_object.len())
            .map(|v| {
                let o = var_object[v];
                let x = &x_cells[o][v - offset[o]];
                y_cells[o]
                    .iter()
                    .map(|y| search.constraint.is_none_or(|c| c(&objects[o], x, y)))
                    .collect()
            })
            .collect();
        Problem {
            objects,
            x_cells,
            y_cells,
            offset,
            var_object,
            edges_into,
            edge_from,
            x_restrict,
            y_restrict,
            allowed,
        }
    }

    fn assign(&self, values: &mut [Option<u32>], trail: &mut Vec<usize>, var: usize, y: u32) -> bool {
        let mut stack = vec![(var, y)];
        while let Some((v, y)) = stack.pop() {
            match values[v] {
                Some(old) if old == y => continue,
                Some(_) => return false,
                None => {}
            }
            if !self.allowed[v][y as usize] {
                return false;
            }
            values[v] = Some(y);
            trail.push(v);
            let o = self.var_object[v];
            let local = v - self.offset[o];
            for &e in &self.edges_into[o] {
                let lo = self.edge_from[e];
                let w = self.offset[lo] + self.x_restrict[e][local] as usize;
                let z = self.y_restrict[e][y as usize];
                match values[w] {
                    Some(old) if old == z => {}
                    Some(_) => return false,
                    None => stack.push((w, z)),
                }
            }
        }
        true
    }

    fn solve(
        &self,
        values: &mut Vec<Option<u32>>,
        trail: &mut Vec<usize>,
        start: usize,
        limit: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if out.len() >= limit {
            return;
        }
        let Some(v) = (start..values.len()).find(|&v| values[v].is_none()) else {
            out.push(values.iter().map(|x| x.unwrap()).collect());
            return;
        };
        let o = self.var_object[v];
        for y in 0..self.y_cells[o].len() as u32 {
            let mark = trail.len();
            if self.assign(values, trail, v, y) {
                self.solve(values, trail, v + 1, limit, out);
            }
            for w in trail.drain(mark..) {
                values[w] = None;
            }
            if out.len() >= limit {
                return;
            }
        }
    }

    fn to_map(&self, window: Window, solution: &[u32]) -> CellularMap {
        let assignment = (0..solution.len())
            .map(|v| {
                let o = self.var_object[v];
                let x = self.x_cells[o][v - self.offset[o]].clone();
                let y = self.y_cells[o][solution[v] as usize].clone();
                ((self.objects[o].clone(), x), y)
            })
            .collect();
        CellularMap { window, assignment }
    }
}

/// Enumerates the natural maps described by `search`, in a deterministic
/// order. Top-level branches run in parallel.
pub fn natural_maps(search: &MapSearch<'_>) -> SearchOutcome {
    let problem = Problem::build(search);
    let limit = search.limit.unwrap_or(usize::MAX);
    let n = problem.var_object.len();
    let mut solutions: Vec<Vec<u32>> = Vec::new();
    if n == 0 {
        solutions.push(Vec::new());
    } else {
        let first = problem.var_object[0];
        let branches: Vec<Vec<Vec<u32>>> = (0..problem.y_cells[first].len() as u32)
            .into_par_iter()
            .map(|y| {
                let mut values = vec![None; n];
                let mut trail = Vec::new();
                let mut out = Vec::new();
                if problem.assign(&mut values, &mut trail, 0, y) {
                    problem.solve(&mut values, &mut trail, 1, limit, &mut out);
                }
                out
            })
            .collect();
        for b in branches {
            solutions.extend(b);
        }
    }
    let truncated = search.limit.is_some() && solutions.len() >= limit;
    solutions.truncate(limit);
    SearchOutcome {
        solutions: solutions
            .iter()
            .map(|s| problem.to_map(search.window, s))
            .collect(),
        truncated,
        variables: n,
        morphisms: problem.edge_from.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellular::{coproduct, representable, Representable, Terminal};
    use std::sync::Arc;

    #[test]
    fn maps_between_representables_are_yoneda() {
        // Natural maps Θ[s] -> Θ[t] over a window containing s are Hom(s, t).
        let w = Window::new(1, 2);
        let two: Theta = "[2]([0],[0])".parse().unwrap();
        for (s, t) in [
            (Theta::globe(1), two.clone()),
            (two.clone(), Theta::globe(1)),
            (Theta::point(), two.clone()),
        ] {
            let search = MapSearch {
                source: &Representable(s.clone()),
                target: &Representable(t.clone()),
                window: w,
                constraint: None,
                limit: None,
            };
            let out = natural_maps(&search);
            assert_eq!(out.solutions.len(), hom_set(&s, &t).len(), "{s} -> {t}");
            let src = Representable(s.clone());
            let tgt = Representable(t.clone());
            assert!(out.solutions.iter().all(|m| m.is_natural(&src, &tgt)));
        }
    }

    #[test]
    fn maps_into_terminal_and_from_two_points() {
        let w = Window::new(1, 2);
        let two_points = coproduct(representable(&Theta::point()), representable(&Theta::point()));
        let d1 = Representable(Theta::globe(1));
        let out = natural_maps(&MapSearch {
            source: two_points.as_ref(),
            target: &d1,
            window: w,
            constraint: None,
            limit: None,
        });
        assert_eq!(out.solutions.len(), 4);
        let out = natural_maps(&MapSearch {
            source: &d1,
            target: &Terminal,
            window: w,
            constraint: None,
            limit: None,
        });
        assert_eq!(out.solutions.len(), 1);
        let limited = natural_maps(&MapSearch {
            source: &Terminal,
            target: two_points.as_ref(),
            window: w,
            constraint: None,
            limit: Some(1),
        });
        assert_eq!(limited.solutions.len(), 1);
        let _ = Arc::clone(&two_points);
    }
}
