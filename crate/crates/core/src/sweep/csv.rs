use std::io::Write;
use std::path::Path;

/// One CSV field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(usize),
    Real(f64),
    Text(&'static str),
}

impl Cell {
    pub fn render(&self) -> String {
        match *self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_g15(v),
            Cell::Text(s) => s.to_string(),
        }
    }
}

/// `%.15g`: 15 significant digits, trailing zeros trimmed, exponent form
/// outside [1e-5, 1e15).
pub fn format_g15(x: f64) -> String {
    const P: i32 = 15;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..P).contains(&exp) {
        let decimals = (P - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), sign, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
