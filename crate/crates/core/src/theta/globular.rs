//! Finite globular sets, the globular elements of an object, and the
//! Street order used to recognise objects of Theta_0.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::theta::object::Theta;

/// A globular set with finitely many cells in each dimension.
///
/// `source[d][x]` and `target[d][x]` give the faces of the `x`-th cell of
/// dimension `d + 1` as indices into dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGlobularSet {
    pub counts: Vec<usize>,
    pub source: Vec<Vec<usize>>,
    pub target: Vec<Vec<usize>>,
}

impl FinGlobularSet {
    pub fn new(counts: Vec<usize>, source: Vec<Vec<usize>>, target: Vec<Vec<usize>>) -> Result<Self> {
        let g = FinGlobularSet {
            counts,
            source,
            target,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn empty() -> Self {
        FinGlobularSet {
            counts: vec![],
            source: vec![],
            target: vec![],
        }
    }

    pub fn dimension_count(&self) -> usize {
        self.counts.len()
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let faces = self.counts.len().saturating_sub(1);
        if self.source.len() != faces || self.target.len() != faces {
            return Err(Error::InvalidGlobularSet(format!(
                "expected face maps for {faces} dimensions"
            )));
        }
        for d in 0..faces {
            for map in [&self.source[d], &self.target[d]] {
                if map.len() != self.counts[d + 1] {
                    return Err(Error::InvalidGlobularSet(format!(
                        "face map out of dimension {} has the wrong length",
                        d + 1
                    )));
                }
                if map.iter().any(|&x| x >= self.counts[d]) {
                    return Err(Error::InvalidGlobularSet(format!(
                        "face of a {}-cell is out of range",
                        d + 1
                    )));
                }
            }
        }
        for d in 1..faces {
            for x in 0..self.counts[d + 1] {
                let (s, t) = (self.source[d][x], self.target[d][x]);
                if self.source[d - 1][s] != self.source[d - 1][t]
                    || self.target[d - 1][s] != self.target[d - 1][t]
                {
                    return Err(Error::InvalidGlobularSet(format!(
                        "cell {x} of dimension {} violates the globular identities",
                        d + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// All cells as `(dimension, index)` pairs, lowest dimension first.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(d, &n)| (0..n).map(move |x| (d, x)))
            .collect()
    }

    pub fn street_order(&self) -> StreetOrder {
        let elements = self.cells();
        let index: HashMap<(usize, usize), usize> =
            elements.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let n = elements.len();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for d in 0..self.source.len() {
            for x in 0..self.counts[d + 1] {
                let beta = index[&(d + 1, x)];
                // s(beta) precedes beta, and beta precedes t(beta).
                le[index[&(d, self.source[d][x])]][beta] = true;
                le[beta][index[&(d, self.target[d][x])]] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    for j in 0..n {
                        if le[k][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
        }
        StreetOrder { elements, le }
    }
}

/// The reflexive-transitive closure of the generating relation
/// `a < b` iff `a = s(b)` or `t(a) = b`.
#[derive(Clone, Debug)]
pub struct StreetOrder {
    pub elements: Vec<(usize, usize)>,
    le: Vec<Vec<bool>>,
}

impl StreetOrder {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a][b]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| !(self.le[a][b] && self.le[b][a])))
    }

    pub fn is_linear(&self) -> bool {
        let n = self.len();
        self.is_antisymmetric() && (0..n).all(|a| (0..n).all(|b| self.le[a][b] || self.le[b][a]))
    }

    /// Elements sorted along the order. Only meaningful when linear.
    pub fn sorted(&self) -> Vec<(usize, usize)> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&a| (0..self.len()).filter(|&b| self.le[b][a]).count());
        idx.into_iter().map(|i| self.elements[i]).collect()
    }
}

/// Tests whether a finite globular set is (the underlying globular set of)
/// an object of Theta_0: nonempty with a linear Street order.
pub fn is_theta0_object(g: &FinGlobularSet) -> bool {
    g.total_cells() > 0 && g.street_order().is_linear()
}

/// A globular element of an object: the path of child indices leading to a
/// node and a vertex of that node. Its dimension is the path length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId {
    pub path: Vec<usize>,
    pub vertex: usize,
}

impl ElementId {
    pub fn dimension(&self) -> usize {
        self.path.len()
    }
}

impl fmt::Debug for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.path {
            write!(f, "{p}.")?;
        }
        write!(f, "v{}", self.vertex)
    }
}

/// The underlying globular set of an object, with stable element ids.
#[derive(Clone, Debug)]
pub struct Elements {
    pub ids: Vec<Vec<ElementId>>,
    pub globular: FinGlobularSet,
}

impl Elements {
    pub fn of(t: &Theta) -> Elements {
        let mut ids: Vec<Vec<ElementId>> = Vec::new();
        collect_ids(t, &mut Vec::new(), &mut ids);
        for level in ids.iter_mut() {
            level.sort();
        }
        let index: Vec<HashMap<&ElementId, usize>> = ids
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, e)| (e, i)).collect())
            .collect();
        let mut source = Vec::new();
        let mut target = Vec::new();
        for d in 1..ids.len() {
            let (s, t): (Vec<usize>, Vec<usize>) = ids[d]
                .iter()
                .map(|e| {
                    let (s, t) = faces(e);
                    (index[d - 1][&s], index[d - 1][&t])
                })
                .unzip();
            source.push(s);
            target.push(t);
        }
        let counts = ids.iter().map(Vec::len).collect();
        Elements {
            ids,
            globular: FinGlobularSet {
                counts,
                source,
                target,
            },
        }
    }

    pub fn count(&self, dimension: usize) -> usize {
        self.ids.get(dimension).map_or(0, Vec::len)
    }
}

fn collect_ids(t: &Theta, path: &mut Vec<usize>, out: &mut Vec<Vec<ElementId>>) {
    let d = path.len();
    if out.len() <= d {
        out.resize_with(d + 1, Vec::new);
    }
    for v in 0..=t.arity() {
        out[d].push(ElementId {
            path: path.clone(),
            vertex: v,
        });
    }
    for (j, c) in t.children().iter().enumerate() {
        path.push(j + 1);
        collect_ids(c, path, out);
        path.pop();
    }
}

fn faces(e: &ElementId) -> (ElementId, ElementId) {
    let d = e.path.len();
    let mut s = ElementId {
        path: e.path[..d - 1].to_vec(),
        vertex: 0,
    };
    let mut t = s.clone();
    let last = e.path[d - 1];
    s.vertex = last - 1;
    t.vertex = last;
    (s, t)
}
