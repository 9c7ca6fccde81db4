//! Order complexes of finite posets and a three-way contractibility test:
//! cone, elementary collapses, then reduced integral homology.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::homotopy::poset::FinPoset;

/// A simplicial complex stored as its full set of faces (nonempty
/// simplices, vertex lists sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn from_facets(vertices: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
        let mut faces = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            let k = f.len();
            for mask in 1u64..(1 << k) {
                faces.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect());
            }
        }
        SimplicialComplex { vertices, faces }
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == k + 1).cloned().collect()
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g.len() > f.len() && is_face(f, g)))
            .cloned()
            .collect()
    }

    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            f.len() == 1
                || (0..f.len()).all(|i| {
                    let mut g = f.clone();
                    g.remove(i);
                    self.faces.contains(&g)
                })
        })
    }
}

fn is_face(f: &[usize], g: &[usize]) -> bool {
    f.iter().all(|v| g.binary_search(v).is_ok())
}

/// The complex of nonempty chains.
pub fn order_complex(p: &FinPoset) -> SimplicialComplex {
    let n = p.len();
    let mut faces = BTreeSet::new();
    let mut chain = Vec::new();
    for v in 0..n {
        chain.push(v);
        grow_chains(p, &mut chain, &mut faces);
        chain.pop();
    }
    // Chains are grown in increasing order; store them sorted by id.
    let faces = faces
        .into_iter()
        .map(|mut c: Vec<usize>| {
            c.sort_unstable();
            c
        })
        .collect();
    SimplicialComplex { vertices: n, faces }
}

fn grow_chains(p: &FinPoset, chain: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    out.insert(chain.clone());
    let top = *chain.last().unwrap();
    for v in 0..p.len() {
        if p.lt(top, v) {
            chain.push(v);
            grow_chains(p, chain, out);
            chain.pop();
        }
    }
}

/// Repeatedly removes a free face together with the unique face above it.
/// Returns the remaining complex.
pub fn collapse(c: &SimplicialComplex) -> SimplicialComplex {
    let mut faces = c.faces.clone();
    loop {
        let mut pair = None;
        'search: for sigma in faces.iter() {
            let mut above = faces
                .iter()
                .filter(|tau| tau.len() == sigma.len() + 1 && is_face(sigma, tau));
            if let (Some(tau), None) = (above.next(), above.next()) {
                let maximal = !faces
                    .iter()
                    .any(|rho| rho.len() == tau.len() + 1 && is_face(tau, rho));
                if maximal {
                    pair = Some((sigma.clone(), tau.clone()));
                    break 'search;
                }
            }
        }
        match pair {
            Some((sigma, tau)) => {
                faces.remove(&sigma);
                faces.remove(&tau);
            }
            None => break,
        }
    }
    SimplicialComplex {
        vertices: c.vertices,
        faces,
    }
}

/// Reduced integral homology: free rank and torsion coefficients in each
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedHomology {
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<i64>>,
}

impl ReducedHomology {
    pub fn is_trivial(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0) && self.torsion.iter().all(Vec::is_empty)
    }
}

/// The boundary of `k`-faces into `(k-1)`-faces; `k = 0` is the
/// augmentation.
fn boundary_matrix(c: &SimplicialComplex, k: usize) -> Vec<Vec<i64>> {
    let cols = c.faces_of_dim(k);
    if k == 0 {
        return vec![vec![1; cols.len()]];
    }
    let rows = c.faces_of_dim(k - 1);
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, f) in cols.iter().enumerate() {
        for i in 0..f.len() {
            let mut g = f.clone();
            g.remove(i);
            let r = rows.binary_search(&g).expect("complex is closed under faces");
            m[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Diagonal entries (nonzero, positive, each dividing the next) of the
/// Smith normal form.
pub fn smith_normal_form(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        // Pivot: the smallest nonzero entry in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    done = false;
                }
            }
            if !done {
                let (pr, pc) = (t..rows)
                    .map(|i| (i, t))
                    .chain((t..cols).map(|j| (t, j)))
                    .filter(|&(i, j)| m[i][j] != 0)
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .unwrap();
                m.swap(t, pr);
                for row in m.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            // Enforce divisibility of the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| m[i][j] % m[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

pub fn reduced_homology(c: &SimplicialComplex) -> ReducedHomology {
    let top = c.dimension().unwrap_or(0);
    let snf: Vec<Vec<i64>> = (0..=top + 1)
        .map(|k| {
            if k > top {
                Vec::new()
            } else {
                smith_normal_form(boundary_matrix(c, k))
            }
        })
        .collect();
    let mut ranks = Vec::new();
    let mut torsion = Vec::new();
    for k in 0..=top {
        let chains = c.faces_of_dim(k).len();
        ranks.push(chains - snf[k].len() - snf[k + 1].len());
        torsion.push(snf[k + 1].iter().copied().filter(|&d| d > 1).collect());
    }
    ReducedHomology { ranks, torsion }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Contractibility {
    Contractible { certificate: String },
    NontrivialHomology { homology: ReducedHomology },
    Inconclusive { reason: String },
}

impl Contractibility {
    pub fn is_contractible(&self) -> bool {
        matches!(self, Contractibility::Contractible { .. })
    }
}

pub fn is_contractible(p: &FinPoset) -> Contractibility {
    if p.is_empty() {
        return Contractibility::NontrivialHomology {
            homology: ReducedHomology {
                ranks: vec![],
                torsion: vec![],
            },
        };
    }
    if let Some(x) = p.least() {
        return Contractibility::Contractible {
            certificate: format!("cone on the least element {x}"),
        };
    }
    if let Some(x) = p.greatest() {
        return Contractibility::Contractible {
            certificate: format!("cone on the greatest element {x}"),
        };
    }
    let c = order_complex(p);
    let rest = collapse(&c);
    if rest.faces.len() == 1 {
        return Contractibility::Contractible {
            certificate: format!(
                "{} elementary collapses to a vertex",
                (c.faces.len() - 1) / 2
            ),
        };
    }
    let h = reduced_homology(&c);
    if !h.is_trivial() {
        return Contractibility::NontrivialHomology { homology: h };
    }
    Contractibility::Inconclusive {
        reason: format!(
            "collapses stop at {} faces with vanishing reduced homology",
            rest.faces.len()
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_pair_is_disconnected() {
        let p = FinPoset::from_covers(2, &[]);
        match is_contractible(&p) {
            Contractibility::NontrivialHomology { homology } => assert_eq!(homology.ranks[0], 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_boundary_has_a_loop() {
        // Two minima below two maxima, all four relations.
        let p = FinPoset::from_covers(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let c = order_complex(&p);
        assert!(c.is_downward_closed());
        assert_eq!(c.facets().len(), 4);
        match is_contractible(&p) {
            Contractibility::NontrivialHomology { homology } => {
                assert_eq!(homology.ranks, vec![0, 1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zigzag_collapses() {
        let p = FinPoset::from_covers(5, &[(0, 1), (2, 1), (2, 3), (4, 3)]);
        assert!(p.least().is_none() && p.greatest().is_none());
        let out = is_contractible(&p);
        assert!(out.is_contractible(), "{out:?}");
    }

    #[test]
    fn smith_form_of_small_matrices() {
        assert_eq!(smith_normal_form(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_normal_form(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_normal_form(vec![vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn projective_plane_torsion() {
        // A six-vertex triangulation of RP^2.
        let facets = vec![
            vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5], vec![0, 1, 5],
            vec![1, 2, 4], vec![2, 3, 5], vec![1, 3, 4], vec![2, 4, 5], vec![1, 3, 5],
        ];
        let c = SimplicialComplex::from_facets(6, &facets);
        let h = reduced_homology(&c);
        assert_eq!(h.ranks, vec![0, 0, 0]);
        assert_eq!(h.torsion[1], vec![2]);
    }
}
