//! Nondegenerate cells of `Θ[s] × Θ[t]` with epimorphic projections, and the
//! maximal ones among them (the shuffles).

use std::collections::BTreeSet;

use crate::cellular::subobjects::{joint_epi_monos, Cone};
use crate::theta::{hom_set, Theta, ThetaMorphism};

/// A shuffle `Θ[shape] ↪ Θ[s] × Θ[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub shape: Theta,
    pub left: ThetaMorphism,
    pub right: ThetaMorphism,
}

/// The cells of the product hit by a cone, as tuples of globe cells.
pub fn cone_cells(cone: &Cone) -> BTreeSet<Vec<ThetaMorphism>> {
    let h = cone.legs.iter().map(|l| l.target().height()).max().unwrap_or(0);
    (0..=h)
        .flat_map(|k| hom_set(&Theta::globe(k), &cone.apex).iter().cloned().collect::<Vec<_>>())
        .map(|w| cone.legs.iter().map(|l| l.after(&w)).collect())
        .collect()
}

/// The objects of `R_{s,t}` with their cell sets; `a` maps to `b` over the
/// product exactly when the cells of `a` are among those of `b`.
pub struct ProductCells {
    pub cones: Vec<Cone>,
    pub cells: Vec<BTreeSet<Vec<ThetaMorphism>>>,
}

impl ProductCells {
    pub fn new(s: &Theta, t: &Theta) -> ProductCells {
        let cones: Vec<Cone> = joint_epi_monos(&[s.clone(), t.clone()]).as_ref().clone();
        let cells = cones.iter().map(cone_cells).collect();
        ProductCells { cones, cells }
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.cells[a].is_subset(&self.cells[b])
    }

    pub fn maximal(&self) -> Vec<usize> {
        let n = self.cones.len();
        (0..n)
            .filter(|&a| !(0..n).any(|b| b != a && self.le(a, b)))
            .collect()
    }
}

pub fn shuffles(s: &Theta, t: &Theta) -> Vec<Shuffle> {
    let pc = ProductCells::new(s, t);
    pc.maximal()
        .into_iter()
        .map(|i| {
            let c = &pc.cones[i];
            Shuffle {
                shape: c.apex.clone(),
                left: c.legs[0].clone(),
                right: c.legs[1].clone(),
            }
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_times_t_is_t() {
        let t: Theta = "[2]([1]([0]),[0])".parse().unwrap();
        let sh = shuffles(&Theta::point(), &t);
        assert_eq!(sh.len(), 1);
        assert_eq!(sh[0].shape, t);
        assert!(sh[0].right.is_identity());
    }

    #[test]
    fn simplex_counts() {
        let sh = shuffles(&Theta::lift(1), &Theta::lift(1));
        assert_eq!(sh.len(), 2);
        assert!(sh.iter().all(|s| s.shape == Theta::lift(2)));
        assert_eq!(shuffles(&Theta::lift(2), &Theta::lift(1)).len(), 3);
        for n in 0..=3u64 {
            for m in 0..=(4 - n.min(4)) {
                let count = shuffles(&Theta::lift(n as usize), &Theta::lift(m as usize)).len();
                assert_eq!(count as u64, binomial(n + m, n), "{n},{m}");
            }
        }
    }

    #[test]
    fn edge_times_edge_has_three_objects() {
        let pc = ProductCells::new(&Theta::lift(1), &Theta::lift(1));
        assert_eq!(pc.cones.len(), 3);
    }
}
