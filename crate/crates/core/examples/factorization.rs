//! Every map factors as a cospinal map followed by a spinal mono.

use theta_cells::theta::{factorize, hom_set};
use theta_cells::Theta;

fn main() {
    let s: Theta = "[2]([1]([0]),[0])".parse().unwrap();
    let t: Theta = "[2]([0],[1]([0]))".parse().unwrap();
    let homs = hom_set(&s, &t);
    println!("{} maps {s} -> {t}", homs.len());
    for f in homs.iter().take(8) {
        let x = factorize(f).unwrap();
        println!("{f}\n  = {} after {} through {}", x.spinal_mono, x.cospinal, x.middle);
        assert_eq!(x.spinal_mono.after(&x.cospinal), *f);
    }
}
