//! Cells of the intertwiner on representable labels agree with hom-sets into
//! the corresponding object.

use std::sync::Arc;

use theta_cells::cellular::{representable, CellularSet, Terminal};
use theta_cells::intertwiner::{as_theta_map, suspension, VSimplex};
use theta_cells::theta::hom_set;
use theta_cells::{Theta, Window};

fn main() {
    let labels: Vec<Theta> = vec![Theta::globe(1), Theta::point()];
    let target = Theta::node(labels.clone());
    let v = VSimplex::new(labels.iter().map(representable).collect());
    for theta in Window::new(2, 2).objects() {
        let cells = v.cells(&theta);
        let maps = cells.iter().filter(|c| as_theta_map(&theta, &target, c).is_ok()).count();
        println!("{theta:<28} {} cells, {} maps into {target}", maps, hom_set(&theta, &target).len());
    }

    let st = suspension(Arc::new(Terminal));
    let theta = Theta::lift(2);
    println!("suspension of a point over {theta}: {} cells", st.cells(&theta).len());
}
