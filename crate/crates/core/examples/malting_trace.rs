//! Negativity along a malting trajectory (arm A succeeds at cycle 15, arm B
//! at cycle 20) for memories of increasing quality.

use distillery::channels::{LossChannelParams, SubtractionParams};
use distillery::protocol::{malt, MaltingSchedule};
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let lam = SqueezingParam::new(0.1)?;
    let cfg = TruncationConfig::for_lambda(lam);
    let sub = SubtractionParams::new(0.99)?;
    println!("input negativity {:.6}", lam.tmss_negativity());
    for tau in [10.0, 20.0, 40.0, 50.0, 80.0, 100.0] {
        let schedule = MaltingSchedule::new(15, 20, LossChannelParams::from_tau(tau)?, sub)?;
        let rec = malt(lam, &schedule, &cfg)?;
        let trace: Vec<String> = rec
            .negativity_trace
            .iter()
            .step_by(5)
            .map(|(_, n)| format!("{n:.4}"))
            .collect();
        println!(
            "tau={tau:>5}: final {:.6}  P={:.3e}  every 5th cycle [{}]",
            rec.negativity_trace.last().unwrap().1,
            rec.joint_prob,
            trace.join(" ")
        );
    }
    Ok(())
}
