//! Posets of lattice paths with a fixed terminus, their sizes and
//! contractibility.

use theta_cells::homotopy::{delannoy, is_contractible, q_poset};

fn main() {
    let q = q_poset(1, 1);
    for (i, p) in q.paths.iter().enumerate() {
        let above: Vec<usize> = (0..q.paths.len()).filter(|&j| j != i && q.order.le(i, j)).collect();
        println!("{p} below {above:?}");
    }
    for a in 0..=3 {
        for b in 0..=3 {
            let q = q_poset(a, b);
            let c = if a + b > 0 { format!("{:?}", is_contractible(&q.order)) } else { "point".into() };
            println!("Q({a}, {b}): {} paths (Delannoy {}), {c}", q.paths.len(), delannoy(a, b));
        }
    }
}
