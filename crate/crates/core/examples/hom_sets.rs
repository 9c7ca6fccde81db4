//! Hom-sets between small objects, and the wreath encoding of a morphism.

use theta_cells::theta::{hom_set, wreath_encode_morphism};
use theta_cells::Theta;

fn main() {
    let pairs = [
        ("[0]", "[1]([0])"),
        ("[1]([0])", "[0]"),
        ("[1]([0])", "[2]([0],[0])"),
        ("[1]([1]([0]))", "[2]([0],[0])"),
        ("[2]([0],[0])", "[1]([1]([0]))"),
    ];
    for (s, t) in pairs {
        let s: Theta = s.parse().unwrap();
        let t: Theta = t.parse().unwrap();
        let homs = hom_set(&s, &t);
        println!("Hom({s}, {t}) has {} maps", homs.len());
        for f in homs.iter() {
            let kind = match (f.is_mono(), f.is_epi()) {
                (true, true) => "iso",
                (true, false) => "mono",
                (false, true) => "epi",
                _ => "",
            };
            println!("  {f} {kind}");
        }
    }

    let s: Theta = "[1]([1]([0]))".parse().unwrap();
    let t: Theta = "[2]([1]([0]),[0])".parse().unwrap();
    let f = &hom_set(&s, &t)[0];
    println!("{f} encodes as {:?}", wreath_encode_morphism(f));
}
