//! Covers of small representables and the count of covers over a window.

use theta_cells::cellular::{count_covers, covers, Sieve};
use theta_cells::{Theta, Window};

fn main() {
    let window = Window::new(2, 2);
    let d2 = Theta::globe(2);
    println!("spine of {d2} is a cover: {}", Sieve::spine(&d2).is_cover(window));
    println!("boundary of {d2} is a cover: {}", Sieve::boundary(&d2).is_cover(window));

    let t: Theta = "[2]([1]([0]),[0])".parse().unwrap();
    for s in covers(&t) {
        println!("  {s:?} ({} of {} monos)", s.member_count(), s.index().mono_count());
    }

    for t in window.objects() {
        println!("{t:<28} {} covers", count_covers(&t));
    }
}
