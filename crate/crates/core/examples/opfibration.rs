//! The poset of product cells over a pair of objects and its collapse onto
//! lattice paths.

use theta_cells::homotopy::{collapse_opfibration, fibre_decompositions, r_poset};
use theta_cells::Theta;

fn main() {
    let s: Theta = "[2]([1]([0]),[0])".parse().unwrap();
    let t: Theta = "[1]([1]([0]))".parse().unwrap();
    let r = r_poset(&s, &t);
    let report = collapse_opfibration(&s, &t);
    println!("R({s}, {t}) has {} cells over {} paths; opfibration: {}", r.len(), report.q_size, report.is_opfibration());
    for f in fibre_decompositions(&r) {
        println!("  over {}: fibre {} = product of {:?}, holds: {}", f.path, f.fibre_size, f.factor_sizes, f.holds());
    }
}
