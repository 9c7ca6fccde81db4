//! The identification of Delta ≀ Theta with Theta.
//!
//! A wreath morphism keeps its labels in a map keyed by `(i, j)` and composes
//! them through the Gamma maps of its root, independently of
//! [`ThetaMorphism::after`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::theta::delta::{compose_gamma, fdelta, DeltaMap};
use crate::theta::morphism::ThetaMorphism;
use crate::theta::object::Theta;

/// An object `([n], (t_1, ..., t_n))` of Delta ≀ Theta.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathObject {
    pub arity: usize,
    pub labels: Vec<Theta>,
}

pub fn wreath_encode(t: &Theta) -> WreathObject {
    WreathObject {
        arity: t.arity(),
        labels: t.children().to_vec(),
    }
}

pub fn wreath_decode(w: &WreathObject) -> Result<Theta> {
    if w.labels.len() != w.arity {
        return Err(Error::ArityMismatch {
            expected: w.arity,
            found: w.labels.len(),
        });
    }
    Ok(Theta::node(w.labels.clone()))
}

/// A morphism of Delta ≀ Theta: root map and labels `η(i,j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathMorphism {
    pub source: WreathObject,
    pub target: WreathObject,
    pub root: DeltaMap,
    pub labels: BTreeMap<(usize, usize), WreathMorphism>,
}

impl WreathMorphism {
    /// `self ∘ f`, with labels reindexed through `F_Δ` of both roots.
    pub fn after(&self, f: &WreathMorphism) -> Result<WreathMorphism> {
        if f.target != self.source {
            return Err(Error::NotComposable("wreath objects differ".into()));
        }
        let root = self.root.after(&f.root)?;
        let first = fdelta(&f.root);
        let second = fdelta(&self.root);
        let mut labels = BTreeMap::new();
        for i in 1..=first.source() {
            for &j in first.image(i) {
                for &k in second.image(j) {
                    let outer = &self.labels[&(j, k)];
                    let inner = &f.labels[&(i, j)];
                    labels.insert((i, k), outer.after(inner)?);
                }
            }
        }
        let expected = compose_gamma(&first, &second)?;
        debug_assert!((1..=expected.source())
            .all(|i| expected.image(i).iter().all(|&k| labels.contains_key(&(i, k)))));
        Ok(WreathMorphism {
            source: f.source.clone(),
            target: self.target.clone(),
            root,
            labels,
        })
    }
}

pub fn wreath_encode_morphism(f: &ThetaMorphism) -> WreathMorphism {
    let labels = f
        .label_range()
        .map(|j| ((f.source_index(j), j), wreath_encode_morphism(f.label(j))))
        .collect();
    WreathMorphism {
        source: wreath_encode(f.source()),
        target: wreath_encode(f.target()),
        root: f.root(),
        labels,
    }
}

pub fn wreath_decode_morphism(w: &WreathMorphism) -> Result<ThetaMorphism> {
    let labels = w
        .labels
        .values()
        .map(wreath_decode_morphism)
        .collect::<Result<Vec<_>>>()?;
    ThetaMorphism::new(
        wreath_decode(&w.source)?,
        wreath_decode(&w.target)?,
        w.root.values().to_vec(),
        labels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::morphism::hom_set;
    use crate::theta::object::Window;

    #[test]
    fn object_examples() {
        let p = wreath_encode(&Theta::point());
        assert_eq!((p.arity, p.labels.len()), (0, 0));
        let t: Theta = "[2]([1]([0]),[0])".parse().unwrap();
        let w = wreath_encode(&t);
        assert_eq!(w.arity, 2);
        assert_eq!(w.labels, vec![Theta::globe(1), Theta::point()]);
        assert_eq!(wreath_decode(&w).unwrap(), t);
        assert!(wreath_decode(&WreathObject {
            arity: 2,
            labels: vec![]
        })
        .is_err());
    }

    #[test]
    fn composition_agrees_on_small_window() {
        let objs = Window::new(2, 2).objects();
        let small: Vec<_> = objs.iter().filter(|o| o.size() <= 4).collect();
        for a in &small {
            for b in &small {
                for c in &small {
                    for f in hom_set(a, b).iter() {
                        let wf = wreath_encode_morphism(f);
                        assert_eq!(wreath_decode_morphism(&wf).unwrap(), *f);
                        for g in hom_set(b, c).iter() {
                            let wg = wreath_encode_morphism(g);
                            let composite = wg.after(&wf).unwrap();
                            assert_eq!(wreath_decode_morphism(&composite).unwrap(), g.after(f));
                        }
                    }
                }
            }
        }
    }
}
