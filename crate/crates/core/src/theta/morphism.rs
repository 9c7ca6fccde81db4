//! Morphisms of Theta in wreath form: a monotone root map together with a
//! label `η(i,j): s_i -> t_j` for every `j` in `(f(i-1), f(i)]`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::theta::delta::{fill_monotone, DeltaMap};
use crate::theta::object::{Theta, Window};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMorphism(Arc<Inner>);

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Inner {
    source: Theta,
    target: Theta,
    root: Vec<usize>,
    // Indexed by j - f(0) - 1 for j in (f(0), f(n)].
    labels: Vec<ThetaMorphism>,
}

impl ThetaMorphism {
    /// Builds a morphism from its root values and its labels listed by
    /// increasing target index `j`.
    pub fn new(
        source: Theta,
        target: Theta,
        root: Vec<usize>,
        labels: Vec<ThetaMorphism>,
    ) -> Result<Self> {
        let root_map = DeltaMap::new(target.arity(), root)?;
        if root_map.source() != source.arity() {
            return Err(Error::ArityMismatch {
                expected: source.arity() + 1,
                found: root_map.source() + 1,
            });
        }
        let root = root_map.values().to_vec();
        let expected = root[source.arity()] - root[0];
        if labels.len() != expected {
            return Err(Error::ArityMismatch {
                expected,
                found: labels.len(),
            });
        }
        let m = ThetaMorphism(Arc::new(Inner {
            source,
            target,
            root,
            labels,
        }));
        for j in m.label_range() {
            let i = m.source_index(j);
            let l = m.label(j);
            if l.source() != m.source().child(i) || l.target() != m.target().child(j) {
                return Err(Error::NotComposable(format!(
                    "label η({i},{j}) must map {} to {}, found {} -> {}",
                    m.source().child(i),
                    m.target().child(j),
                    l.source(),
                    l.target()
                )));
            }
        }
        Ok(m)
    }

    fn raw(source: Theta, target: Theta, root: Vec<usize>, labels: Vec<ThetaMorphism>) -> Self {
        ThetaMorphism(Arc::new(Inner {
            source,
            target,
            root,
            labels,
        }))
    }

    pub fn identity(t: &Theta) -> Self {
        let labels = t.children().iter().map(ThetaMorphism::identity).collect();
        Self::raw(t.clone(), t.clone(), (0..=t.arity()).collect(), labels)
    }

    /// The unique map to the terminal object.
    pub fn to_point(s: &Theta) -> Self {
        Self::raw(s.clone(), Theta::point(), vec![0; s.arity() + 1], vec![])
    }

    /// The vertex `v` of `t`, as a map out of `[0]`.
    pub fn vertex(t: &Theta, v: usize) -> Self {
        assert!(v <= t.arity(), "vertex {v} out of range for {t}");
        Self::raw(Theta::point(), t.clone(), vec![v], vec![])
    }

    pub fn source(&self) -> &Theta {
        &self.0.source
    }

    pub fn target(&self) -> &Theta {
        &self.0.target
    }

    pub fn root(&self) -> DeltaMap {
        DeltaMap::new_unchecked(self.target().arity(), self.0.root.clone())
    }

    pub fn root_values(&self) -> &[usize] {
        &self.0.root
    }

    /// Target indices `j` that carry a label.
    pub fn label_range(&self) -> std::ops::RangeInclusive<usize> {
        let r = &self.0.root;
        r[0] + 1..=r[r.len() - 1]
    }

    pub fn label(&self, j: usize) -> &ThetaMorphism {
        &self.0.labels[j - self.0.root[0] - 1]
    }

    pub fn labels(&self) -> &[ThetaMorphism] {
        &self.0.labels
    }

    /// The unique `i` with `f(i-1) < j <= f(i)`.
    pub fn source_index(&self, j: usize) -> usize {
        self.0.root.partition_point(|&v| v < j)
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target() && *self == ThetaMorphism::identity(self.source())
    }

    /// `self ∘ f`. Panics when `f` does not land in the source of `self`.
    pub fn after(&self, f: &ThetaMorphism) -> ThetaMorphism {
        assert_eq!(
            f.target(),
            self.source(),
            "cannot compose {self} after {f}"
        );
        let g = self;
        let root: Vec<usize> = f.0.root.iter().map(|&v| g.0.root[v]).collect();
        let lo = root[0];
        let hi = root[root.len() - 1];
        let labels = (lo + 1..=hi)
            .map(|k| {
                let j = g.source_index(k);
                g.label(k).after(f.label(j))
            })
            .collect();
        Self::raw(f.source().clone(), g.target().clone(), root, labels)
    }

    /// `self ∘ f`, reporting an error instead of panicking.
    pub fn compose(&self, f: &ThetaMorphism) -> Result<ThetaMorphism> {
        if f.target() != self.source() {
            return Err(Error::NotComposable(format!(
                "{} -> {} then {} -> {}",
                f.source(),
                f.target(),
                self.source(),
                self.target()
            )));
        }
        Ok(self.after(f))
    }

    /// Injective on `Hom(D_k, -)` for every `k` up to the source height.
    pub fn is_mono(&self) -> bool {
        (0..=self.source().height()).all(|k| {
            let cells = hom_set(&Theta::globe(k), self.source());
            let mut images: Vec<ThetaMorphism> = cells.iter().map(|x| self.after(x)).collect();
            images.sort();
            images.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Surjective root with epimorphic labels.
    pub fn is_epi(&self) -> bool {
        let root = self.root();
        root.is_surjective() && self.labels().iter().all(ThetaMorphism::is_epi)
    }

    /// Left cancellation against every map from a window object.
    pub fn is_mono_in(&self, window: Window) -> bool {
        window.objects().iter().all(|r| {
            let maps = hom_set(r, self.source());
            let mut images: Vec<ThetaMorphism> = maps.iter().map(|x| self.after(x)).collect();
            images.sort();
            images.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Right cancellation against every map into a window object.
    pub fn is_epi_in(&self, window: Window) -> bool {
        window.objects().iter().all(|u| {
            let maps = hom_set(self.target(), u);
            let mut images: Vec<ThetaMorphism> = maps.iter().map(|g| g.after(self)).collect();
            images.sort();
            images.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Carries every summand of the source spine into the target spine.
    pub fn is_spinal(&self) -> bool {
        legs(self.source())
            .iter()
            .all(|leg| in_spine(&self.after(leg)))
    }

    /// The composite with the principal cospine of the source is the
    /// cospine of the target in the same dimension.
    pub fn is_cospinal(&self) -> bool {
        let h = self.source().height();
        if self.target().height() > h {
            return false;
        }
        let c = cospine(self.source(), h).expect("principal cospine exists");
        self.after(&c) == cospine(self.target(), h).expect("height checked")
    }

    pub fn is_spinal_mono(&self) -> bool {
        self.is_spinal() && self.is_mono()
    }

    /// Renders as `(f=[v0,...,vn]; η(i,j)=...)`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ThetaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(f=[")?;
        for (i, v) in self.0.root.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")?;
        for j in self.label_range() {
            write!(f, "; η({},{j})={}", self.source_index(j), self.label(j))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for ThetaMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {}", self, self.source(), self.target())
    }
}

/// Parses the text rendering of a morphism with known source and target.
pub fn parse_morphism(text: &str, source: &Theta, target: &Theta) -> Result<ThetaMorphism> {
    let mut p = MorphismParser {
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let m = p.morphism(source, target)?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(m)
}

struct MorphismParser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl MorphismParser {
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or_else(|| self.chars.last().map_or(0, |&(o, c)| o + c.len_utf8()), |&(o, _)| o)
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let n = token.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(token.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn natural(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a natural number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn morphism(&mut self, source: &Theta, target: &Theta) -> Result<ThetaMorphism> {
        self.expect("(")?;
        self.expect("f")?;
        self.expect("=")?;
        self.expect("[")?;
        let mut root = vec![self.natural()?];
        while self.eat(",") {
            root.push(self.natural()?);
        }
        self.expect("]")?;
        let mut labels: Vec<(usize, usize, ThetaMorphism)> = Vec::new();
        while self.eat(";") {
            if !self.eat("η") {
                self.expect("eta")?;
            }
            self.expect("(")?;
            let i = self.natural()?;
            self.expect(",")?;
            let j = self.natural()?;
            self.expect(")")?;
            self.expect("=")?;
            if i == 0 || i > source.arity() || j == 0 || j > target.arity() {
                return Err(self.error(&format!("label index ({i},{j}) out of range")));
            }
            let m = self.morphism(source.child(i), target.child(j))?;
            labels.push((i, j, m));
        }
        self.expect(")")?;
        let at = self.offset();
        let m = ThetaMorphism::new(
            source.clone(),
            target.clone(),
            root,
            labels.iter().map(|(_, _, m)| m.clone()).collect(),
        )
        .map_err(|e| Error::Parse {
            position: at,
            message: e.to_string(),
        })?;
        let expected: Vec<(usize, usize)> =
            m.label_range().map(|j| (m.source_index(j), j)).collect();
        let found: Vec<(usize, usize)> = labels.iter().map(|&(i, j, _)| (i, j)).collect();
        if expected != found {
            return Err(Error::Parse {
                position: at,
                message: format!("labels {found:?} do not match the index set {expected:?}"),
            });
        }
        Ok(m)
    }
}

/// A thread-safe memo table.
pub(crate) struct Memo<K, V> {
    table: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            table: OnceLock::new(),
        }
    }

    pub(crate) fn get_or(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        let table = self.table.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = table.lock().unwrap().get(key) {
            return v.clone();
        }
        // Computed outside the lock: computations recurse into the same table.
        let v = Arc::new(compute());
        table
            .lock()
            .unwrap()
            .entry(key.clone())
            .or_insert(v)
            .clone()
    }
}

static HOM: Memo<(Theta, Theta), Vec<ThetaMorphism>> = Memo::new();

/// Every morphism `s -> t`, without duplicates, in a canonical order.
pub fn hom_set(s: &Theta, t: &Theta) -> Arc<Vec<ThetaMorphism>> {
    HOM.get_or(&(s.clone(), t.clone()), || compute_hom(s, t))
}

fn compute_hom(s: &Theta, t: &Theta) -> Vec<ThetaMorphism> {
    let n = s.arity();
    let m = t.arity();
    let mut out = Vec::new();
    let mut roots = Vec::new();
    fill_monotone(n + 1, 0, m, &mut Vec::new(), &mut |v| roots.push(v.to_vec()));
    for root in roots {
        let options: Vec<Arc<Vec<ThetaMorphism>>> = (root[0] + 1..=root[n])
            .map(|j| {
                let i = root.partition_point(|&v| v < j);
                hom_set(s.child(i), t.child(j))
            })
            .collect();
        for labels in cartesian(&options) {
            out.push(ThetaMorphism::raw(s.clone(), t.clone(), root.clone(), labels));
        }
    }
    out
}

pub(crate) fn cartesian<T: Clone>(options: &[Arc<Vec<T>>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::with_capacity(options.len())];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for o in opts.iter() {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// The globular summands of `t` as maps from globes.
pub fn legs(t: &Theta) -> Vec<ThetaMorphism> {
    if t.is_point() {
        return vec![ThetaMorphism::identity(t)];
    }
    let mut out = Vec::new();
    for i in 1..=t.arity() {
        for leg in legs(t.child(i)) {
            let source = Theta::node(vec![leg.source().clone()]);
            out.push(ThetaMorphism::raw(source, t.clone(), vec![i - 1, i], vec![leg]));
        }
    }
    out
}

/// Whether `x` factors through one of the globular summands of its target.
pub fn in_spine(x: &ThetaMorphism) -> bool {
    let t = x.target();
    let root = x.root_values();
    let (lo, hi) = (root[0], root[root.len() - 1]);
    if t.is_point() || lo == hi {
        return true;
    }
    hi == lo + 1 && x.labels().iter().all(in_spine)
}

/// The cospine `D_n -> t`, defined for `n >= height(t)`.
pub fn cospine(t: &Theta, n: usize) -> Result<ThetaMorphism> {
    if n < t.height() {
        return Err(Error::CospineTooLow {
            dimension: n,
            object: t.to_string(),
            height: t.height(),
        });
    }
    if t.is_point() {
        return Ok(ThetaMorphism::to_point(&Theta::globe(n)));
    }
    let labels = t
        .children()
        .iter()
        .map(|c| cospine(c, n - 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(ThetaMorphism::raw(
        Theta::globe(n),
        t.clone(),
        vec![0, t.arity()],
        labels,
    ))
}

/// `f = spinal_mono ∘ cospinal` with the middle object `middle`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub middle: Theta,
    pub cospinal: ThetaMorphism,
    pub spinal_mono: ThetaMorphism,
}

static SPINAL_MONOS: Memo<Theta, Vec<ThetaMorphism>> = Memo::new();
static COSPINALS: Memo<(Theta, Theta), Vec<ThetaMorphism>> = Memo::new();

/// Every spinal monomorphism into `t`. Their sources have height and node
/// arities bounded by those of `t`, so the search is finite.
pub fn spinal_monos_into(t: &Theta) -> Arc<Vec<ThetaMorphism>> {
    SPINAL_MONOS.get_or(t, || {
        Window::of(t)
            .objects()
            .iter()
            .flat_map(|p| hom_set(p, t).iter().cloned().collect::<Vec<_>>())
            .filter(ThetaMorphism::is_spinal_mono)
            .collect()
    })
}

pub fn cospinal_maps(s: &Theta, t: &Theta) -> Arc<Vec<ThetaMorphism>> {
    COSPINALS.get_or(&(s.clone(), t.clone()), || {
        hom_set(s, t)
            .iter()
            .filter(|f| f.is_cospinal())
            .cloned()
            .collect()
    })
}

/// All cospinal-then-spinal-mono factorizations of `f`, found by search
/// over every possible middle object.
pub fn factorizations(f: &ThetaMorphism) -> Vec<Factorization> {
    let mut out = Vec::new();
    for m in spinal_monos_into(f.target()).iter() {
        for c in cospinal_maps(f.source(), m.source()).iter() {
            if m.after(c) == *f {
                out.push(Factorization {
                    middle: m.source().clone(),
                    cospinal: c.clone(),
                    spinal_mono: m.clone(),
                });
            }
        }
    }
    out
}

/// The unique cospinal-then-spinal-mono factorization of `f`.
pub fn factorize(f: &ThetaMorphism) -> Result<Factorization> {
    let mut all = factorizations(f);
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(Error::InvalidArgument(format!(
            "{f:?} has {n} cospinal/spinal-mono factorizations"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Theta {
        s.parse().unwrap()
    }

    fn two() -> Theta {
        t("[2]([0],[0])")
    }

    fn edge(target: &Theta, lo: usize, hi: usize) -> ThetaMorphism {
        let labels = (lo + 1..=hi)
            .map(|j| ThetaMorphism::to_point(target.child(j)))
            .collect::<Vec<_>>();
        // Only valid when the children hit are points.
        ThetaMorphism::new(Theta::globe(1), target.clone(), vec![lo, hi], labels).unwrap()
    }

    #[test]
    fn small_hom_sets() {
        assert_eq!(hom_set(&Theta::point(), &Theta::globe(1)).len(), 2);
        assert_eq!(hom_set(&Theta::point(), &two()).len(), 3);
        assert_eq!(hom_set(&Theta::point(), &Theta::point()).len(), 1);
        for s in Window::new(2, 2).objects() {
            assert_eq!(hom_set(&s, &Theta::point()).len(), 1);
        }
        // D_1 -> D_1: two constants and the identity.
        assert_eq!(hom_set(&Theta::globe(1), &Theta::globe(1)).len(), 3);
    }

    #[test]
    fn globe_hom_sets_match_theta0_decomposition() {
        // Hom(D_n, S) = sum over T of height <= n of spinal monos T -> S.
        for s in Window::new(2, 2).objects() {
            for n in 0..=3 {
                let direct = hom_set(&Theta::globe(n), &s).len();
                let by_sum = spinal_monos_into(&s)
                    .iter()
                    .filter(|m| m.source().height() <= n)
                    .count();
                assert_eq!(direct, by_sum, "D_{n} -> {s}");
            }
        }
    }

    #[test]
    fn globe_category_faces() {
        // Among spinal monos D_1 -> D_3 there are exactly the source and target face.
        let d3 = Theta::globe(3);
        let monos: Vec<_> = spinal_monos_into(&d3)
            .iter()
            .filter(|m| *m.source() == Theta::globe(1))
            .cloned()
            .collect();
        assert_eq!(monos.len(), 2);
    }

    #[test]
    fn unit_and_associativity() {
        let w = Window::new(2, 2);
        let objs = w.objects();
        for s in &objs {
            for u in &objs {
                for f in hom_set(s, u).iter() {
                    assert_eq!(f.after(&ThetaMorphism::identity(s)), *f);
                    assert_eq!(ThetaMorphism::identity(u).after(f), *f);
                }
            }
        }
        let small: Vec<Theta> = objs.iter().filter(|o| o.size() <= 3).cloned().collect();
        for a in &small {
            for b in &small {
                for c in &small {
                    for d in &small {
                        for f in hom_set(a, b).iter() {
                            for g in hom_set(b, c).iter() {
                                let gf = g.after(f);
                                for h in hom_set(c, d).iter() {
                                    assert_eq!(h.after(&gf), h.after(g).after(f));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mono_epi_examples() {
        let first = edge(&two(), 0, 1);
        assert!(first.is_mono() && !first.is_epi());
        let w = Window::new(2, 2);
        assert!(first.is_mono_in(w) && !first.is_epi_in(w));
        let collapse = ThetaMorphism::to_point(&Theta::globe(1));
        assert!(collapse.is_epi() && !collapse.is_mono());
        assert!(collapse.is_epi_in(w) && !collapse.is_mono_in(w));
        let id = ThetaMorphism::identity(&two());
        assert!(id.is_mono() && id.is_epi());
    }

    #[test]
    fn structural_and_cancellation_tests_agree() {
        let w = Window::new(2, 2);
        for s in w.objects() {
            for u in w.objects() {
                for f in hom_set(&s, &u).iter() {
                    assert_eq!(f.is_mono(), f.is_mono_in(w), "{f:?}");
                    assert_eq!(f.is_epi(), f.is_epi_in(w), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn spinal_examples() {
        assert!(ThetaMorphism::identity(&two()).is_spinal());
        assert!(!edge(&two(), 0, 2).is_spinal());
        assert!(edge(&two(), 1, 2).is_spinal());
        let w = Window::new(2, 2);
        for s in w.objects() {
            for u in w.objects() {
                for f in hom_set(&s, &u).iter().filter(|f| f.is_epi()) {
                    assert!(f.is_spinal(), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn cospine_examples() {
        assert!(cospine(&Theta::point(), 0).unwrap().is_identity());
        assert!(cospine(&Theta::globe(1), 1).unwrap().is_identity());
        assert_eq!(cospine(&two(), 1).unwrap(), edge(&two(), 0, 2));
        assert!(matches!(
            cospine(&Theta::globe(2), 1),
            Err(Error::CospineTooLow { .. })
        ));
    }

    #[test]
    fn cospinal_examples() {
        assert!(cospine(&two(), 1).unwrap().is_cospinal());
        assert!(ThetaMorphism::to_point(&two()).is_cospinal());
        assert!(!edge(&two(), 0, 1).is_cospinal());
    }

    #[test]
    fn factorization_examples() {
        let id = ThetaMorphism::identity(&two());
        let fac = factorize(&id).unwrap();
        assert!(fac.cospinal.is_identity() && fac.spinal_mono.is_identity());

        let e = ThetaMorphism::to_point(&Theta::globe(1));
        let fac = factorize(&e).unwrap();
        assert_eq!(fac.cospinal, e);
        assert!(fac.spinal_mono.is_identity());

        let m = edge(&two(), 1, 2);
        let fac = factorize(&m).unwrap();
        assert!(fac.cospinal.is_identity());
        assert_eq!(fac.spinal_mono, m);

        let long = edge(&two(), 0, 2);
        let fac = factorize(&long).unwrap();
        assert_eq!(fac.middle, two());
        assert!(fac.spinal_mono.is_identity());
    }

    #[test]
    fn render_and_parse_round_trip() {
        let w = Window::new(2, 2);
        for s in w.objects() {
            for u in w.objects() {
                for f in hom_set(&s, &u).iter() {
                    let text = f.to_string();
                    assert_eq!(parse_morphism(&text, &s, &u).unwrap(), *f, "{text}");
                }
            }
        }
        assert_eq!(edge(&two(), 0, 2).to_string(), "(f=[0,2]; η(1,1)=(f=[0]); η(1,2)=(f=[0]))");
        assert!(parse_morphism("(f=[0,2])", &Theta::globe(1), &two()).is_err());
        assert!(parse_morphism("(f=[2,1])", &Theta::globe(1), &two()).is_err());
        assert!(
            parse_morphism("(f=[0,1]; eta(1,1)=(f=[0]))", &Theta::globe(1), &two()).is_ok()
        );
    }
}
