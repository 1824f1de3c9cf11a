//! Malting followed by mashing to the Gaussian fixed point.

use distillery::channels::{LossChannelParams, SubtractionParams};
use distillery::protocol::{full_protocol, MaltingSchedule, Phase, ProtocolOptions};
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let loss = LossChannelParams::from_tau(100.0)?;
    for lambda in [0.1, 0.4] {
        let lam = SqueezingParam::new(lambda)?;
        let cfg = TruncationConfig::for_lambda(lam);
        println!("lambda={lambda} (n_max={}), input N={:.5}", cfg.n_max(), lam.tmss_negativity());
        for t_s in [0.96, 0.98, 0.99] {
            let schedule = MaltingSchedule::new(1, 10, loss, SubtractionParams::new(t_s)?)?;
            let run = full_protocol(lam, &schedule, &cfg, &ProtocolOptions::default())?;
            let malted = run
                .negativity_trace()
                .iter()
                .filter(|p| p.1 == Phase::Malt)
                .last()
                .map_or(0.0, |p| p.2);
            println!(
                "  t_s={t_s}: malted {malted:.5} -> mashed {:.5} after {} steps (converged: {}), P_mash={:.3e}",
                run.final_negativity(),
                run.mashing.iterations,
                run.mashing.converged,
                run.mashing.success_probability()
            );
        }
    }
    Ok(())
}
