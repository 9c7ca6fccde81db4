//! The nerve of the chaotic groupoid on two objects, its suspension, and the
//! search for a homotopy compatible with the retraction.

use theta_cells::cellular::CellularSet;
use theta_cells::nerves::{chaotic_groupoid, counterexample_search, nerve_category, nerve_suspension};
use theta_cells::Window;

fn main() {
    let g = chaotic_groupoid(2).unwrap();
    let j = nerve_category(&g);
    let x = nerve_suspension(&g);
    for theta in Window::new(2, 2).objects() {
        println!("{theta:<28} J: {:>3}  X: {:>3}", j.cells(&theta).len(), x.cells(&theta).len());
    }
    let report = counterexample_search(Window::new(2, 2));
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
