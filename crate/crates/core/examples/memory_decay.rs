//! How a stored squeezed state loses entanglement cycle by cycle: memory loss
//! alone, failed subtraction attempts alone, and both together.

use distillery::channels::{detect_phonons, loss_event, LossChannelParams, SubtractionParams};
use distillery::entanglement::log_negativity;
use distillery::fock::{normalize, tmss};
use distillery::{SqueezingParam, TruncationConfig};

fn main() -> distillery::Result<()> {
    let lam = SqueezingParam::new(0.1)?;
    let cfg = TruncationConfig::for_lambda(lam);
    let loss = LossChannelParams::from_tau(100.0)?;
    let vac = SubtractionParams::new(loss.t())?;
    let sub = SubtractionParams::new(0.99)?;

    let start = tmss(lam, cfg)?;
    let (mut a, mut b, mut c) = (start.clone(), start.clone(), start);
    println!("{:>3} {:>12} {:>12} {:>12}", "m", "loss", "vacuum", "both");
    for m in 0..=40 {
        if m % 5 == 0 {
            println!(
                "{m:>3} {:>12.8} {:>12.8} {:>12.8}",
                log_negativity(&a)?.value,
                log_negativity(&b)?.value,
                log_negativity(&c)?.value
            );
        }
        a = loss_event(&a, loss);
        b = normalize(&detect_phonons(&b, vac, 0, 0)?)?.0;
        c = normalize(&detect_phonons(&loss_event(&c, loss), sub, 0, 0)?)?.0;
    }
    Ok(())
}
