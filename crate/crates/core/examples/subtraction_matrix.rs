//! Probability that arm A succeeds at cycle i and arm B at cycle j.

use distillery::channels::{LossChannelParams, SubtractionParams};
use distillery::protocol::subtraction_probability_matrix;
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let lam = SqueezingParam::new(0.1)?;
    let cfg = TruncationConfig::for_lambda(lam);
    let p = subtraction_probability_matrix(
        lam,
        LossChannelParams::from_tau(100.0)?,
        SubtractionParams::new(0.99)?,
        &cfg,
        8,
        8,
    )?;
    print!("{:>4}", "i\\j");
    for j in 1..=8 {
        print!("{j:>11}");
    }
    println!();
    for (i, row) in p.iter().enumerate() {
        print!("{:>4}", i + 1);
        for v in row {
            print!("{v:>11.3e}");
        }
        println!();
    }
    let total: f64 = p.iter().flatten().sum();
    println!("probability of both arms succeeding within 8 cycles: {total:.4e}");
    Ok(())
}
