//! Drives the sweep layer directly, as the `distillery` binary does, and
//! writes an m_c table to a CSV file.
//!
//! Usage: cargo run --example sweep_to_csv -- [output.csv]

use distillery::sweep::{run, validate_config, write_output, Command, RawConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "mc_sweep.csv".into());
    let cfg = validate_config(&RawConfig {
        command: Some(Command::McSweep),
        lambda: Some(0.1),
        tau: Some(100.0),
        ts: Some("0.70:0.99:0.01".into()),
        out: Some(out.clone().into()),
        ..Default::default()
    })?;
    let result = run(&cfg)?;
    write_output(&result, &cfg)?;
    println!("wrote {} rows to {out}", result.rows.len());
    for (k, v) in &result.metadata {
        println!("  {k}={v}");
    }
    Ok(())
}
