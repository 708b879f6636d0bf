//! One line per acceptance criterion. A criterion listed in `DOCUMENTED`
//! is expected to fail for a recorded reason and does not fail the target.

use std::time::Instant;

use svjack_cli::suite::{self, Check, SuiteConfig};

/// Keys whose criterion fails as stated; see the decisions ledger.
const DOCUMENTED: &[&str] = &["kac-low-levels"];

fn main() {
    let cfg = SuiteConfig { bound: 6, sample_bound: 8, seed: 42 };
    let criteria: Vec<(usize, Box<dyn Fn() -> Check>)> = vec![
        (1, Box::new(suite::kac_low_levels)),
        (2, Box::new(suite::kac_level_two)),
        (3, Box::new(suite::singular_vectors)),
        (4, Box::new(suite::reference_images)),
        (5, Box::new({ let c = cfg.clone(); move || suite::conjecture(&c) })),
        (6, Box::new({ let c = cfg.clone(); move || suite::eigen_suite(&c) })),
        (7, Box::new(suite::hbar_identities)),
        (8, Box::new({ let c = cfg.clone(); move || suite::elementary(&c) })),
        (9, Box::new({ let c = cfg.clone(); move || suite::selberg(&c) })),
        (10, Box::new({ let c = cfg.clone(); move || suite::finite_n(&c) })),
        (11, Box::new({ let c = cfg.clone(); move || suite::annihilation(&c) })),
    ];
    let mut unexpected = 0;
    for (i, run) in criteria {
        let start = Instant::now();
        let check = run();
        let secs = start.elapsed().as_secs_f64();
        let documented = DOCUMENTED.contains(&check.key);
        let verdict = match (check.met, documented) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented)",
            (false, false) => "FAIL",
        };
        println!("criterion {i:>2} {:<20} {verdict} [{secs:.1}s]", check.key);
        if !check.met {
            println!("    {}", check.detail);
            if !documented {
                unexpected += 1;
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
