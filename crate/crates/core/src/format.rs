//! Number formatting shared by the CSV writer, reports and the CLI.

/// 17 significant digits in scientific notation, e.g. `3.8255258455894643e0`.
/// Parses back to the identical `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// `x` rounded to `digits` significant digits in positional notation.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for x in [3.825_525_845_589_464, 1e-300, 0.1, 2.0 / 3.0, 123456.789] {
            assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(sig17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn sig_digits() {
        assert_eq!(sig(3.619_202_369_662_539, 12), "3.61920236966");
        assert_eq!(sig(0.618_033_988_749_894_8, 5), "0.61803");
        assert_eq!(sig(109.360_693, 6), "109.361");
        assert_eq!(sig(0.0, 12), "0");
    }
}
