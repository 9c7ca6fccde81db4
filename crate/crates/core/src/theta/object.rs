//! Objects of the cell category as planar trees.
//!
//! A node with `n` children denotes `[n](t_1, ..., t_n)`; the leaf is `[0]`.
//! Every object also has a globular-pattern presentation: a zigzag of globes
//! `D_{i_1} <- D_{i'_1} -> ... -> D_{i_k}` whose colimit is the object.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An object `[n](t_1, ..., t_n)` of Theta.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Theta(Arc<Vec<Theta>>);

impl Theta {
    /// The terminal object `[0]`.
    pub fn point() -> Self {
        Theta(Arc::new(Vec::new()))
    }

    pub fn node(children: Vec<Theta>) -> Self {
        Theta(Arc::new(children))
    }

    /// The globe `D_n`: `D_0 = [0]`, `D_{n+1} = [1](D_n)`.
    pub fn globe(n: usize) -> Self {
        (0..n).fold(Theta::point(), |inner, _| Theta::node(vec![inner]))
    }

    /// `[m]([0], ..., [0])`, the image of `[m]` under the inclusion of Delta.
    pub fn lift(m: usize) -> Self {
        Theta::node(vec![Theta::point(); m])
    }

    pub fn children(&self) -> &[Theta] {
        &self.0
    }

    /// Arity of the root, i.e. the Delta-collapse `[n_t]` of the object.
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn child(&self, i: usize) -> &Theta {
        &self.0[i - 1]
    }

    pub fn is_point(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }

    /// Largest node arity in the tree.
    pub fn width(&self) -> usize {
        self.0
            .iter()
            .map(Theta::width)
            .chain(std::iter::once(self.arity()))
            .max()
            .unwrap_or(0)
    }

    /// Largest total arity over the nodes at a single depth.
    ///
    /// Subobjects of `t` never exceed this width, although they can exceed
    /// [`Theta::width`].
    pub fn level_width(&self) -> usize {
        let mut level: Vec<&Theta> = vec![self];
        let mut best = 0;
        while !level.is_empty() {
            best = best.max(level.iter().map(|t| t.arity()).sum());
            level = level.iter().flat_map(|t| t.children().iter()).collect();
        }
        best
    }

    pub fn is_globe(&self) -> bool {
        match self.arity() {
            0 => true,
            1 => self.child(1).is_globe(),
            _ => false,
        }
    }

    /// Number of nodes of the tree, used as a size measure for ordering.
    pub fn size(&self) -> usize {
        1 + self.0.iter().map(Theta::size).sum::<usize>()
    }

    pub fn globular_pattern(&self) -> GlobularPattern {
        if self.is_point() {
            return GlobularPattern {
                peaks: vec![0],
                valleys: vec![],
            };
        }
        let mut peaks = Vec::new();
        let mut valleys = Vec::new();
        for (idx, child) in self.children().iter().enumerate() {
            if idx > 0 {
                valleys.push(0);
            }
            let inner = child.globular_pattern();
            peaks.extend(inner.peaks.iter().map(|p| p + 1));
            valleys.extend(inner.valleys.iter().map(|v| v + 1));
        }
        GlobularPattern { peaks, valleys }
    }

    pub fn from_globular_pattern(pattern: &GlobularPattern) -> Result<Theta> {
        pattern.validate()?;
        Ok(Self::from_valid_pattern(&pattern.peaks, &pattern.valleys))
    }

    fn from_valid_pattern(peaks: &[usize], valleys: &[usize]) -> Theta {
        if peaks == [0] {
            return Theta::point();
        }
        // Valleys of height 0 separate the children of the root.
        let mut children = Vec::new();
        let mut start = 0;
        for cut in (0..=valleys.len()).filter(|&j| j == valleys.len() || valleys[j] == 0) {
            let seg_peaks: Vec<usize> = peaks[start..=cut].iter().map(|p| p - 1).collect();
            let seg_valleys: Vec<usize> = valleys[start..cut].iter().map(|v| v - 1).collect();
            children.push(Self::from_valid_pattern(&seg_peaks, &seg_valleys));
            start = cut + 1;
        }
        Theta::node(children)
    }

    /// All objects of height at most `window.max_height` whose nodes have
    /// arity at most `window.max_width`, in canonical order.
    pub fn enumerate(window: Window) -> Vec<Theta> {
        let mut level = vec![Theta::point()];
        for _ in 0..window.max_height {
            let mut next = vec![Theta::point()];
            for n in 1..=window.max_width {
                let mut tuples: Vec<Vec<Theta>> = vec![Vec::new()];
                for _ in 0..n {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|prefix| {
                            level.iter().map(move |c| {
                                let mut v = prefix.clone();
                                v.push(c.clone());
                                v
                            })
                        })
                        .collect();
                }
                next.extend(tuples.into_iter().map(Theta::node));
            }
            level = next;
        }
        level.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
        level
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.arity())?;
        if !self.is_point() {
            f.write_str("(")?;
            for (i, c) in self.children().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Theta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_theta(s)
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Theta {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_theta(&text).map_err(serde::de::Error::custom)
    }
}

/// Parses the canonical notation `[0]` / `[n](c_1,...,c_n)`.
///
/// Whitespace between tokens is ignored.
pub fn parse_theta(text: &str) -> Result<Theta> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.object()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.bytes.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn natural(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse {
                position: start,
                message: "natural number out of range".into(),
            })
    }

    fn object(&mut self) -> Result<Theta> {
        self.expect(b'[')?;
        let start = self.pos;
        let n = self.natural()?;
        self.expect(b']')?;
        if n == 0 {
            if self.peek() == Some(b'(') {
                return Err(self.error("[0] takes no children"));
            }
            return Ok(Theta::point());
        }
        self.expect(b'(')?;
        let mut children = vec![self.object()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            children.push(self.object()?);
        }
        self.expect(b')')?;
        if children.len() != n {
            return Err(Error::Parse {
                position: start,
                message: format!("[{n}] expects {n} children, found {}", children.len()),
            });
        }
        Ok(Theta::node(children))
    }
}

/// A zigzag `D_{i_1} <- D_{i'_1} -> ... <- D_{i'_{k-1}} -> D_{i_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlobularPattern {
    pub peaks: Vec<usize>,
    pub valleys: Vec<usize>,
}

impl GlobularPattern {
    pub fn new(peaks: Vec<usize>, valleys: Vec<usize>) -> Result<Self> {
        let p = GlobularPattern { peaks, valleys };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.peaks.is_empty() {
            return Err(Error::InvalidPattern("a pattern needs at least one globe".into()));
        }
        if self.valleys.len() + 1 != self.peaks.len() {
            return Err(Error::InvalidPattern(format!(
                "{} peaks need {} valleys, found {}",
                self.peaks.len(),
                self.peaks.len() - 1,
                self.valleys.len()
            )));
        }
        for (j, &v) in self.valleys.iter().enumerate() {
            let bound = self.peaks[j].min(self.peaks[j + 1]);
            if v >= bound {
                return Err(Error::InvalidPattern(format!(
                    "valley {v} at position {} must lie below both neighbouring peaks (min {bound})",
                    j + 1
                )));
            }
        }
        Ok(())
    }

    pub fn height(&self) -> usize {
        self.peaks.iter().copied().max().unwrap_or(0)
    }
}

/// Enumeration bounds: objects of height `<= max_height` with every node
/// arity `<= max_width`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub max_height: usize,
    pub max_width: usize,
}

impl Window {
    pub const fn new(max_height: usize, max_width: usize) -> Self {
        Window {
            max_height,
            max_width,
        }
    }

    pub fn contains(&self, t: &Theta) -> bool {
        t.height() <= self.max_height && t.width() <= self.max_width
    }

    pub fn objects(&self) -> Vec<Theta> {
        Theta::enumerate(*self)
    }

    /// Smallest window containing both.
    pub fn join(self, other: Window) -> Window {
        Window::new(
            self.max_height.max(other.max_height),
            self.max_width.max(other.max_width),
        )
    }

    /// Smallest window containing `t`.
    pub fn of(t: &Theta) -> Window {
        Window::new(t.height(), t.width())
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(3, 3)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H<={}, W<={}", self.max_height, self.max_width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Theta {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("[0]"), Theta::point());
        assert_eq!(t("[1]([0])"), Theta::globe(1));
        let x = t("[2]([1]([0]),[0])");
        assert_eq!(x.children(), &[Theta::globe(1), Theta::point()]);
        assert_eq!(x.to_string(), "[2]([1]([0]),[0])");
        assert_eq!(t(" [2] ( [0] , [0] ) ").to_string(), "[2]([0],[0])");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_theta("[2]([0])") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_theta("[1]").is_err());
        assert!(parse_theta("[0]([0])").is_err());
        assert!(parse_theta("[1]([0]) x").is_err());
        assert!(parse_theta("").is_err());
        assert!(parse_theta("[a]").is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(Theta::point().height(), 0);
        assert_eq!(Theta::globe(3).height(), 3);
        assert_eq!(t("[2]([1]([0]),[0])").height(), 2);
    }

    #[test]
    fn globes_and_lifts() {
        assert_eq!(Theta::globe(0).to_string(), "[0]");
        assert_eq!(Theta::globe(1).to_string(), "[1]([0])");
        assert_eq!(Theta::globe(2).to_string(), "[1]([1]([0]))");
        assert_eq!(Theta::lift(0), Theta::point());
        assert_eq!(Theta::lift(2).to_string(), "[2]([0],[0])");
        assert_eq!(t("[2]([1]([0]),[0])").arity(), 2);
    }

    #[test]
    fn pattern_examples() {
        let p = t("[2]([0],[0])").globular_pattern();
        assert_eq!((p.peaks, p.valleys), (vec![1, 1], vec![0]));
        let p = Theta::globe(2).globular_pattern();
        assert_eq!((p.peaks, p.valleys), (vec![2], vec![]));
        let p = Theta::point().globular_pattern();
        assert_eq!((p.peaks, p.valleys), (vec![0], vec![]));
    }

    #[test]
    fn invalid_patterns_are_rejected() {
        assert!(GlobularPattern::new(vec![1, 1], vec![1]).is_err());
        assert!(GlobularPattern::new(vec![2, 1], vec![]).is_err());
        assert!(GlobularPattern::new(vec![], vec![]).is_err());
        assert!(GlobularPattern::new(vec![0, 1], vec![0]).is_err());
        let p = GlobularPattern::new(vec![2, 2], vec![1]).unwrap();
        assert_eq!(
            Theta::from_globular_pattern(&p).unwrap().to_string(),
            "[1]([2]([0],[0]))"
        );
    }

    #[test]
    fn window_enumeration_counts() {
        // 1, then 1 + 3 + 9 for two levels of arity <= 2.
        assert_eq!(Theta::enumerate(Window::new(0, 3)).len(), 1);
        assert_eq!(Theta::enumerate(Window::new(1, 2)).len(), 3);
        assert_eq!(Theta::enumerate(Window::new(2, 2)).len(), 13);
        assert_eq!(Theta::enumerate(Window::new(2, 3)).len(), 85);
        for w in [Window::new(2, 2), Window::new(3, 2)] {
            assert!(w.objects().iter().all(|t| w.contains(t)));
        }
    }

    #[test]
    fn level_width_bounds() {
        assert_eq!(t("[2]([2]([0],[0]),[2]([0],[0]))").level_width(), 4);
        assert_eq!(t("[2]([1]([0]),[1]([0]))").level_width(), 2);
        assert_eq!(Theta::point().level_width(), 0);
    }
}
