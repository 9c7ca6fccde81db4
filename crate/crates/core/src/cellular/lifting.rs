//! Extension of maps along sieve inclusions `S ↪ Θ[t]`.

use crate::cellular::sieve::Sieve;
use crate::cellular::{Cell, CellularSet};
use crate::theta::{ThetaMorphism, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftingOutcome {
    Holds,
    /// A map out of the sieve, given on its generators, with no extension.
    Fails {
        witness: Vec<(ThetaMorphism, Cell)>,
    },
    Inconclusive {
        reason: String,
    },
}

impl LiftingOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LiftingOutcome::Holds)
    }
}

/// Decides whether every map `S -> X` extends along `S ↪ Θ[t]`.
///
/// Maps out of `S` are enumerated as compatible assignments on the maximal
/// members of `S`; compatibility is checked on every common sub-mono.
pub fn has_rlp(inclusion: &Sieve, x: &dyn CellularSet, window: Window) -> LiftingOutcome {
    let t = inclusion.target();
    if !window.contains(t) {
        return LiftingOutcome::Inconclusive {
            reason: format!("{t} lies outside the window {window}"),
        };
    }
    let index = inclusion.index();
    let generators = inclusion.generators();
    let gen_ids: Vec<usize> = generators
        .iter()
        .map(|g| index.position(g).expect("generators are monos"))
        .collect();
    // Overlap conditions between earlier and later generators.
    let mut overlaps: Vec<Vec<(usize, ThetaMorphism, ThetaMorphism)>> = vec![Vec::new(); generators.len()];
    for (j, &gj) in gen_ids.iter().enumerate() {
        for (i, &gi) in gen_ids.iter().enumerate().take(j) {
            for m in 0..index.mono_count() {
                if index.le(m, gi) && index.le(m, gj) {
                    let zi = index.lift(m, gi).expect("factors");
                    let zj = index.lift(m, gj).expect("factors");
                    overlaps[j].push((i, zi, zj));
                }
            }
        }
    }
    let options: Vec<Vec<Cell>> = generators.iter().map(|g| x.cells(g.source())).collect();
    let top = x.cells(t);
    let mut chosen: Vec<Cell> = Vec::new();
    match search(&generators, &options, &overlaps, x, &top, &mut chosen) {
        None => LiftingOutcome::Holds,
        Some(witness) => LiftingOutcome::Fails {
            witness: generators.into_iter().zip(witness).collect(),
        },
    }
}

fn search(
    generators: &[ThetaMorphism],
    options: &[Vec<Cell>],
    overlaps: &[Vec<(usize, ThetaMorphism, ThetaMorphism)>],
    x: &dyn CellularSet,
    top: &[Cell],
    chosen: &mut Vec<Cell>,
) -> Option<Vec<Cell>> {
    let j = chosen.len();
    if j == generators.len() {
        let extends = top.iter().any(|c| {
            generators
                .iter()
                .zip(chosen.iter())
                .all(|(g, xi)| x.restrict(c, g) == *xi)
        });
        return if extends { None } else { Some(chosen.clone()) };
    }
    for cand in &options[j] {
        let compatible = overlaps[j]
            .iter()
            .all(|(i, zi, zj)| x.restrict(&chosen[*i], zi) == x.restrict(cand, zj));
        if compatible {
            chosen.push(cand.clone());
            let found = search(generators, options, overlaps, x, top, chosen);
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellular::sieve::covers;
    use crate::theta::Theta;
    use crate::cellular::{coproduct, representable, Representable};

    #[test]
    fn identity_inclusion_always_lifts() {
        let w = Window::new(2, 2);
        let two: Theta = "[2]([0],[0])".parse().unwrap();
        for t in [Theta::globe(1), two.clone()] {
            let whole = Sieve::whole(&t);
            assert!(has_rlp(&whole, &Representable(two.clone()), w).holds());
            assert!(has_rlp(&whole, &crate::cellular::Empty, w).holds());
        }
    }

    #[test]
    fn boundary_of_an_edge_into_two_points_fails() {
        let w = Window::new(1, 1);
        let two_points = coproduct(representable(&Theta::point()), representable(&Theta::point()));
        let out = has_rlp(&Sieve::boundary(&Theta::globe(1)), two_points.as_ref(), w);
        match out {
            LiftingOutcome::Fails { witness } => {
                assert_eq!(witness.len(), 2);
                assert_ne!(witness[0].1, witness[1].1);
            }
            other => panic!("expected a failure, got {other:?}"),
        }
        assert!(has_rlp(&Sieve::boundary(&Theta::globe(1)), &Representable(Theta::point()), w).holds());
    }

    #[test]
    fn covers_lift_against_representables() {
        let w = Window::new(2, 2);
        let targets: Vec<Theta> = ["[2]([0],[0])", "[2]([1]([0]),[0])", "[1]([2]([0],[0]))"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for t in &targets {
            for s in covers(t) {
                for u in &targets {
                    assert!(has_rlp(&s, &Representable(u.clone()), w).holds(), "{s:?} into {u}");
                }
            }
        }
    }

    #[test]
    fn outside_window_is_inconclusive() {
        let t = Theta::globe(3);
        let out = has_rlp(&Sieve::spine(&t), &Representable(t.clone()), Window::new(2, 2));
        assert!(matches!(out, LiftingOutcome::Inconclusive { .. }));
    }
}
