//! Running verification suites from code.

use theta_cells::report::overall;
use theta_cells::verify::{run, Suite, VerifyConfig};
use theta_cells::Window;

fn main() {
    let config = VerifyConfig {
        window: Window::new(1, 2),
        max_terminus: 4,
    };
    let reports = run(&[Suite::Gamma, Suite::QPosets, Suite::Shuffles, Suite::Factorization], &config);
    for r in &reports {
        println!("{r}");
    }
    println!("overall: {}", overall(&reports));
}
