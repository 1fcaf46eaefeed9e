use std::time::Instant;

use frcalc_core::battery::{run_all, SuiteConfig};

#[test]
fn all_batteries_pass_with_default_config() {
    let cfg = SuiteConfig::default();
    for b in frcalc_core::battery::BATTERIES {
        let t = Instant::now();
        let rep = b(&cfg);
        eprintln!("{:>2} {:<45} {} {:?} {:?} ({} ms)", rep.id, rep.name, rep.pass, rep.residuals, rep.failures, t.elapsed().as_millis());
        assert!(rep.pass, "{rep:?}");
    }
    let _ = run_all;
}
