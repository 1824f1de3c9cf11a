//! Log-negativity of the truncated two-mode squeezed vacuum against the
//! closed form log2((1+λ)/(1-λ)).

use distillery::entanglement::log_negativity;
use distillery::fock::tmss;
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    println!("{:>6} {:>6} {:>18} {:>18} {:>10}", "lambda", "n_max", "N(rho)", "closed form", "|diff|");
    for lambda in [0.1, 0.2, 0.3, 0.4] {
        let lam = SqueezingParam::new(lambda)?;
        let cfg = TruncationConfig::for_lambda(lam);
        let n = log_negativity(&tmss(lam, cfg)?)?;
        let exact = lam.tmss_negativity();
        println!(
            "{lambda:>6} {:>6} {:>18.15} {exact:>18.15} {:>10.2e}",
            cfg.n_max(),
            n.value,
            (n.value - exact).abs()
        );
    }
    Ok(())
}
