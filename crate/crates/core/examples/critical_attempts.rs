//! The critical number of attempts m_c: how long arm B may keep trying while
//! the protocol still beats the undistilled state.

use distillery::channels::{LossChannelParams, SubtractionParams};
use distillery::protocol::{critical_attempts, GainCriterion, ProtocolOptions};
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let lam = SqueezingParam::new(0.1)?;
    let cfg = TruncationConfig::for_lambda(lam);
    let full = ProtocolOptions::default();
    let malt_only = ProtocolOptions {
        criterion: GainCriterion::MaltOnly,
        ..full
    };
    println!("{:>5} {:>14} {:>14} {:>15}", "t_s", "m_c tau=100", "m_c tau=1000", "malt-only 100");
    for t_s in [0.65, 0.70, 0.75, 0.80, 0.85, 0.90, 0.95, 0.99] {
        let sub = SubtractionParams::new(t_s)?;
        let mut row = Vec::new();
        for (tau, opts) in [(100.0, &full), (1000.0, &full), (100.0, &malt_only)] {
            row.push(critical_attempts(lam, LossChannelParams::from_tau(tau)?, sub, &cfg, opts)?.m_c);
        }
        println!("{t_s:>5} {:>14} {:>14} {:>15}", row[0], row[1], row[2]);
    }
    Ok(())
}
