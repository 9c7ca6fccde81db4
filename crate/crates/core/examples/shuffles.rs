//! Shuffles of two objects: the top cells of their product.

use theta_cells::cellular::shuffles;
use theta_cells::Theta;

fn main() {
    for (s, t) in [("[1]([0])", "[1]([0])"), ("[2]([0],[0])", "[1]([0])"), ("[1]([1]([0]))", "[1]([0])")] {
        let s: Theta = s.parse().unwrap();
        let t: Theta = t.parse().unwrap();
        let sh = shuffles(&s, &t);
        println!("{s} x {t}: {} shuffles", sh.len());
        for x in sh {
            println!("  {}: {} and {}", x.shape, x.left, x.right);
        }
    }
}
