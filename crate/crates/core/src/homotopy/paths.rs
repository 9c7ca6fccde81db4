//! Southeasterly paths: words over `S`, `E` and the diagonal `SE`, ordered
//! by splitting diagonals into corners.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homotopy::poset::FinPoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    S,
    E,
    SE,
}

impl Step {
    /// The increments `(south, east)`.
    pub fn delta(self) -> (usize, usize) {
        match self {
            Step::S => (1, 0),
            Step::E => (0, 1),
            Step::SE => (1, 1),
        }
    }

    pub fn from_delta(ds: usize, de: usize) -> Option<Step> {
        match (ds, de) {
            (1, 0) => Some(Step::S),
            (0, 1) => Some(Step::E),
            (1, 1) => Some(Step::SE),
            _ => None,
        }
    }
}

/// A path of steps. The empty path only appears as the single element of
/// `Q(0, 0)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SEPath(pub Vec<Step>);

impl SEPath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(d_S, d_E)`, counting the diagonal in both.
    pub fn terminus(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(s, e), step| {
            let (ds, de) = step.delta();
            (s + ds, e + de)
        })
    }

    /// The lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0)];
        for step in &self.0 {
            let (s, e) = *out.last().unwrap();
            let (ds, de) = step.delta();
            out.push((s + ds, e + de));
        }
        out
    }

    pub fn from_points(points: &[(usize, usize)]) -> Option<SEPath> {
        points
            .windows(2)
            .map(|w| Step::from_delta(w[1].0.checked_sub(w[0].0)?, w[1].1.checked_sub(w[0].1)?))
            .collect::<Option<Vec<_>>>()
            .map(SEPath)
    }
}

impl fmt::Display for SEPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s:?}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SEPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SEPath {
    type Err = Error;

    fn from_str(text: &str) -> Result<SEPath> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                position: 0,
                message: "a path is written [S,E,SE,...]".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(SEPath(vec![]));
        }
        inner
            .split(',')
            .map(|w| match w.trim() {
                "S" => Ok(Step::S),
                "E" => Ok(Step::E),
                "SE" => Ok(Step::SE),
                other => Err(Error::Parse {
                    position: text.find(other).unwrap_or(0),
                    message: format!("unknown step {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(SEPath)
    }
}

impl Serialize for SEPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

pub fn terminus(p: &SEPath) -> (usize, usize) {
    p.terminus()
}

/// `a ≺ b`: `b` is `a` with one diagonal replaced by the corner `S,E` or
/// `E,S`, the letters after it shifted by one place.
pub fn path_covers(a: &SEPath, b: &SEPath) -> bool {
    if a.len() + 1 != b.len() {
        return false;
    }
    (0..a.len()).any(|i| {
        a.0[i] == Step::SE
            && b.0[i] != b.0[i + 1]
            && matches!(b.0[i], Step::S | Step::E)
            && matches!(b.0[i + 1], Step::S | Step::E)
            && a.0[..i] == b.0[..i]
            && a.0[i + 1..] == b.0[i + 2..]
    })
}

/// Every path with the given terminus. `(0, 0)` gives the empty path.
pub fn paths_with_terminus(ns: usize, nt: usize) -> Vec<SEPath> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(ns, nt, &mut cur, &mut out);
    out.sort();
    out
}

fn extend(ns: usize, nt: usize, cur: &mut Vec<Step>, out: &mut Vec<SEPath>) {
    if ns == 0 && nt == 0 {
        out.push(SEPath(cur.clone()));
        return;
    }
    for step in [Step::S, Step::E, Step::SE] {
        let (ds, de) = step.delta();
        if ds <= ns && de <= nt {
            cur.push(step);
            extend(ns - ds, nt - de, cur, out);
            cur.pop();
        }
    }
}

/// The poset `Q(ns, nt)` of paths with a fixed terminus, ordered by the
/// reflexive-transitive closure of [`path_covers`].
pub struct QPoset {
    pub terminus: (usize, usize),
    pub paths: Vec<SEPath>,
    pub order: FinPoset,
}

impl QPoset {
    pub fn position(&self, p: &SEPath) -> Option<usize> {
        self.paths.binary_search(p).ok()
    }
}

pub fn q_poset(ns: usize, nt: usize) -> QPoset {
    let paths = paths_with_terminus(ns, nt);
    let n = paths.len();
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| path_covers(&paths[a], &paths[b]))
        .collect();
    let order = FinPoset::from_covers(n, &covers);
    QPoset {
        terminus: (ns, nt),
        paths,
        order,
    }
}

/// `D(a, b)` by its recurrence.
pub fn delannoy(a: usize, b: usize) -> u64 {
    let mut table = vec![vec![1u64; b + 1]; a + 1];
    for i in 1..=a {
        for j in 1..=b {
            table[i][j] = table[i - 1][j] + table[i][j - 1] + table[i - 1][j - 1];
        }
    }
    table[a][b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> SEPath {
        s.parse().unwrap()
    }

    #[test]
    fn termini() {
        assert_eq!(p("[SE]").terminus(), (1, 1));
        assert_eq!(p("[S,E]").terminus(), (1, 1));
        assert_eq!(p("[S,SE,E]").terminus(), (2, 2));
    }

    #[test]
    fn covering_examples() {
        assert!(path_covers(&p("[SE]"), &p("[S,E]")));
        assert!(path_covers(&p("[SE]"), &p("[E,S]")));
        assert!(!path_covers(&p("[SE]"), &p("[S,S]")));
        assert!(path_covers(&p("[SE,S]"), &p("[E,S,S]")));
        assert!(!path_covers(&p("[SE,S]"), &p("[S,S,E]")));
    }

    #[test]
    fn small_posets() {
        let q = q_poset(1, 1);
        assert_eq!(q.paths.len(), 3);
        let min = q.position(&p("[SE]")).unwrap();
        assert_eq!(q.order.least(), Some(min));
        assert_eq!(q_poset(1, 0).paths, vec![p("[S]")]);
        assert_eq!(q_poset(2, 2).paths.len(), 13);
        assert_eq!(q_poset(0, 0).paths, vec![SEPath(vec![])]);
    }

    #[test]
    fn counts_are_delannoy() {
        for a in 0..=6 {
            for b in 0..=(6 - a) {
                assert_eq!(paths_with_terminus(a, b).len() as u64, delannoy(a, b), "({a}, {b})");
            }
        }
    }

    #[test]
    fn order_is_inclusion_of_visited_points() {
        for (a, b) in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)] {
            let q = q_poset(a, b);
            for x in 0..q.paths.len() {
                for y in 0..q.paths.len() {
                    let px = q.paths[x].points();
                    let py = q.paths[y].points();
                    let sub = px.iter().all(|pt| py.contains(pt));
                    assert_eq!(q.order.le(x, y), sub, "{} vs {}", q.paths[x], q.paths[y]);
                }
            }
            assert!(q.order.is_partial_order());
        }
    }

    proptest! {
        #[test]
        fn points_round_trip(steps in proptest::collection::vec(0u8..3, 1..8)) {
            let path = SEPath(steps.iter().map(|s| [Step::S, Step::E, Step::SE][*s as usize]).collect());
            prop_assert_eq!(SEPath::from_points(&path.points()), Some(path.clone()));
            prop_assert_eq!(path.to_string().parse::<SEPath>().unwrap(), path);
        }
    }
}
