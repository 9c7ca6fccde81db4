//! Objects as globular patterns and as globular sets ordered by the Street
//! order.

use theta_cells::theta::{is_theta0_object, Elements, GlobularPattern};
use theta_cells::{Theta, Window};

fn main() {
    for t in Window::new(2, 2).objects() {
        let p = t.globular_pattern();
        let e = Elements::of(&t);
        let back = Theta::from_globular_pattern(&p).unwrap();
        assert_eq!(back, t);
        println!(
            "{t:<28} peaks {:?} valleys {:?} cells per dimension {:?} linear Street order: {}",
            p.peaks,
            p.valleys,
            e.globular.counts,
            is_theta0_object(&e.globular)
        );
    }

    // Peaks and valleys must alternate with valleys below both neighbours.
    println!("{:?}", GlobularPattern::new(vec![1, 1], vec![1]).map(|_| ()));
    let ok = GlobularPattern::new(vec![2, 1, 2], vec![0, 1]).unwrap();
    println!("{:?} is {}", ok, Theta::from_globular_pattern(&ok).unwrap());
}
