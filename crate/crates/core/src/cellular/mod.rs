//! Finite cellular sets: presheaves on Theta evaluated lazily, one object at
//! a time.

pub mod lifting;
pub mod maps;
pub mod shuffles;
pub mod sieve;
pub mod subobjects;

use std::fmt;
use std::sync::Arc;

use crate::theta::{hom_set, Theta, ThetaMorphism, Window};

pub use lifting::{has_rlp, LiftingOutcome};
pub use maps::{natural_maps, CellularMap, MapSearch, SearchOutcome};
pub use shuffles::{shuffles, Shuffle};
pub use sieve::{count_covers, covers, for_each_cover, least_cover, LeastCovers, PullbackTable, Sieve};
pub use subobjects::{joint_epi_monos, joint_monos, monos_into, Cone, SubobjectIndex};

/// A cell of some cellular set. The variants cover every construction in
/// the crate, so that heterogeneous cellular sets share one cell type.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Point,
    Map(ThetaMorphism),
    Tuple(Vec<Cell>),
    Tagged(usize, Box<Cell>),
    /// A functor `[n] -> C`: object ids and the arrow ids between
    /// consecutive objects.
    Functor {
        objects: Vec<usize>,
        arrows: Vec<usize>,
    },
    /// A root map into `[m]` and one label per covered index, as for
    /// morphisms in wreath form.
    Wreath {
        root: Vec<usize>,
        labels: Vec<Cell>,
    },
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Point => write!(f, "*"),
            Cell::Map(m) => write!(f, "{m}"),
            Cell::Tuple(cs) => {
                write!(f, "<")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ">")
            }
            Cell::Tagged(t, c) => write!(f, "in{t}({c})"),
            Cell::Functor { objects, arrows } => write!(f, "F{objects:?}{arrows:?}"),
            Cell::Wreath { root, labels } => {
                write!(f, "W{root:?}")?;
                if !labels.is_empty() {
                    write!(f, "{{")?;
                    for (i, c) in labels.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{c}")?;
                    }
                    write!(f, "}}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A presheaf on Theta, given by its cells over each object and the action
/// of morphisms. `restrict(c, f)` is the action of `f: θ' -> θ` on a cell
/// `c` over `θ`.
pub trait CellularSet: Send + Sync {
    fn cells(&self, theta: &Theta) -> Vec<Cell>;

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell;

    fn name(&self) -> String;

    fn contains(&self, theta: &Theta, cell: &Cell) -> bool {
        self.cells(theta).contains(cell)
    }
}

pub type Cellular = Arc<dyn CellularSet>;

/// `Θ[t] = Hom(-, t)`.
pub struct Representable(pub Theta);

impl CellularSet for Representable {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        hom_set(theta, &self.0).iter().cloned().map(Cell::Map).collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        match cell {
            Cell::Map(x) => Cell::Map(x.after(f)),
            other => panic!("{other} is not a cell of a representable"),
        }
    }

    fn name(&self) -> String {
        format!("Θ[{}]", self.0)
    }

    fn contains(&self, theta: &Theta, cell: &Cell) -> bool {
        matches!(cell, Cell::Map(x) if x.source() == theta && *x.target() == self.0)
    }
}

pub fn representable(t: &Theta) -> Cellular {
    Arc::new(Representable(t.clone()))
}

pub struct Terminal;

impl CellularSet for Terminal {
    fn cells(&self, _: &Theta) -> Vec<Cell> {
        vec![Cell::Point]
    }

    fn restrict(&self, _: &Cell, _: &ThetaMorphism) -> Cell {
        Cell::Point
    }

    fn name(&self) -> String {
        "*".into()
    }
}

pub struct Empty;

impl CellularSet for Empty {
    fn cells(&self, _: &Theta) -> Vec<Cell> {
        Vec::new()
    }

    fn restrict(&self, cell: &Cell, _: &ThetaMorphism) -> Cell {
        panic!("the empty cellular set has no cell {cell}")
    }

    fn name(&self) -> String {
        "∅".into()
    }
}

/// Cartesian product, cellwise.
pub struct Product(pub Vec<Cellular>);

impl CellularSet for Product {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        let factors: Vec<Arc<Vec<Cell>>> = self.0.iter().map(|x| Arc::new(x.cells(theta))).collect();
        crate::theta::morphism::cartesian(&factors)
            .into_iter()
            .map(Cell::Tuple)
            .collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        match cell {
            Cell::Tuple(cs) => Cell::Tuple(
                cs.iter()
                    .zip(&self.0)
                    .map(|(c, x)| x.restrict(c, f))
                    .collect(),
            ),
            other => panic!("{other} is not a tuple"),
        }
    }

    fn name(&self) -> String {
        self.0.iter().map(|x| x.name()).collect::<Vec<_>>().join(" × ")
    }

    fn contains(&self, theta: &Theta, cell: &Cell) -> bool {
        match cell {
            Cell::Tuple(cs) if cs.len() == self.0.len() => {
                cs.iter().zip(&self.0).all(|(c, x)| x.contains(theta, c))
            }
            _ => false,
        }
    }
}

pub fn product(x: Cellular, y: Cellular) -> Cellular {
    Arc::new(Product(vec![x, y]))
}

/// Disjoint union, cellwise.
pub struct Coproduct(pub Vec<Cellular>);

impl CellularSet for Coproduct {
    fn cells(&self, theta: &Theta) -> Vec<Cell> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, x)| {
                x.cells(theta)
                    .into_iter()
                    .map(move |c| Cell::Tagged(i, Box::new(c)))
            })
            .collect()
    }

    fn restrict(&self, cell: &Cell, f: &ThetaMorphism) -> Cell {
        match cell {
            Cell::Tagged(i, c) => Cell::Tagged(*i, Box::new(self.0[*i].restrict(c, f))),
            other => panic!("{other} is not a tagged cell"),
        }
    }

    fn name(&self) -> String {
        self.0.iter().map(|x| x.name()).collect::<Vec<_>>().join(" ⊔ ")
    }

    fn contains(&self, theta: &Theta, cell: &Cell) -> bool {
        match cell {
            Cell::Tagged(i, c) => self.0.get(*i).is_some_and(|x| x.contains(theta, c)),
            _ => false,
        }
    }
}

pub fn coproduct(x: Cellular, y: Cellular) -> Cellular {
    Arc::new(Coproduct(vec![x, y]))
}

/// A functoriality violation found by [`audit_functoriality`].
#[derive(Clone, Debug)]
pub struct FunctorialityViolation {
    pub object: Theta,
    pub cell: Cell,
    pub detail: String,
}

/// Checks `restrict(c, id) = c`, that restrictions land in the right cell
/// sets, and `restrict(c, f∘g) = restrict(restrict(c, f), g)` for all
/// composable pairs of window morphisms.
pub fn audit_functoriality(x: &dyn CellularSet, window: Window) -> Result<(), FunctorialityViolation> {
    let objs = window.objects();
    for theta in &objs {
        let cells = x.cells(theta);
        let id = ThetaMorphism::identity(theta);
        for c in &cells {
            if x.restrict(c, &id) != *c {
                return Err(FunctorialityViolation {
                    object: theta.clone(),
                    cell: c.clone(),
                    detail: "identity does not act trivially".into(),
                });
            }
        }
        for mid in &objs {
            let mid_cells: std::collections::HashSet<Cell> = x.cells(mid).into_iter().collect();
            for f in hom_set(mid, theta).iter() {
                let restricted: Vec<Cell> = cells.iter().map(|c| x.restrict(c, f)).collect();
                if let Some(i) = restricted.iter().position(|cf| !mid_cells.contains(cf)) {
                    return Err(FunctorialityViolation {
                        object: theta.clone(),
                        cell: cells[i].clone(),
                        detail: format!("restriction along {f} leaves the cell set"),
                    });
                }
                for low in &objs {
                    for g in hom_set(low, mid).iter() {
                        let fg = f.after(g);
                        for (c, cf) in cells.iter().zip(&restricted) {
                            if x.restrict(c, &fg) != x.restrict(cf, g) {
                                return Err(FunctorialityViolation {
                                    object: theta.clone(),
                                    cell: c.clone(),
                                    detail: format!("restriction along {f} then {g} disagrees"),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representable_counts() {
        let point = representable(&Theta::point());
        for theta in Window::new(2, 2).objects() {
            assert_eq!(point.cells(&theta).len(), 1);
        }
        assert_eq!(representable(&Theta::globe(1)).cells(&Theta::point()).len(), 2);
    }

    #[test]
    fn product_counts() {
        let d1 = representable(&Theta::globe(1));
        let p = product(d1.clone(), d1.clone());
        assert_eq!(p.cells(&Theta::point()).len(), 4);
        let with_point = product(d1.clone(), representable(&Theta::point()));
        for theta in Window::new(2, 2).objects() {
            assert_eq!(with_point.cells(&theta).len(), d1.cells(&theta).len());
        }
    }

    #[test]
    fn functoriality_audits() {
        let w = Window::new(1, 2);
        let two: Theta = "[2]([0],[0])".parse().unwrap();
        audit_functoriality(&Representable(Theta::globe(1)), w).unwrap();
        audit_functoriality(&Representable(two.clone()), w).unwrap();
        let p = Product(vec![representable(&Theta::globe(1)), representable(&two)]);
        audit_functoriality(&p, w).unwrap();
        let c = Coproduct(vec![representable(&Theta::point()), Arc::new(Terminal)]);
        audit_functoriality(&c, w).unwrap();
        audit_functoriality(&Empty, w).unwrap();
    }
}
