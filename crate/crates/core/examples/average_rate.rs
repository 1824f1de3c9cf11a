//! Average entanglement ⟨E⟩ = Σ_j P^f_j N_f(j) over the useful attempts.

use distillery::channels::{LossChannelParams, SubtractionParams};
use distillery::protocol::{average_entanglement, ProtocolOptions};
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let lam = SqueezingParam::new(0.1)?;
    let cfg = TruncationConfig::for_lambda(lam);
    let opts = ProtocolOptions::default();
    for tau in [100.0, 1000.0] {
        let loss = LossChannelParams::from_tau(tau)?;
        println!("tau={tau}");
        for t_s in [0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99] {
            let avg = average_entanglement(lam, loss, SubtractionParams::new(t_s)?, &cfg, &opts)?;
            let best = avg.terms.iter().map(|t| t.2).fold(0.0, f64::max);
            println!(
                "  t_s={t_s}: m_c={:>3}  <E>={:.4e}  best N_f={best:.4}",
                avg.m_c, avg.value
            );
        }
    }
    Ok(())
}
