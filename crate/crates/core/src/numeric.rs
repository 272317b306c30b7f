//! Exact decimal parsing and extended-precision helpers.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Parses a plain decimal literal such as `0.164` or `-2.5` exactly.
pub fn parse_decimal_ratio(s: &str) -> Result<Ratio<i64>> {
    let bad = || Error::InvalidParameter(format!("`{s}` is not a decimal number"));
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if frac.len() > 17 {
        return Err(Error::InvalidParameter(format!("`{s}` has too many decimal places")));
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = 10i64.pow(frac.len() as u32);
    let r = Ratio::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Working precision in bits for shadow evaluations (about 77 decimal digits).
pub const EXT_PRECISION: usize = 256;

/// A small arithmetic context over `astro_float` at [`EXT_PRECISION`].
pub struct Ext {
    cc: Consts,
}

const RM: RoundingMode = RoundingMode::ToEven;

impl Ext {
    pub fn new() -> Self {
        Ext {
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    /// The decimal value of `x` as written by `{}` formatting of the f64,
    /// i.e. the shortest literal that round-trips.
    pub fn from_f64_decimal(&mut self, x: f64) -> BigFloat {
        self.parse(&format!("{x}"))
    }

    pub fn parse(&mut self, s: &str) -> BigFloat {
        BigFloat::parse(s, Radix::Dec, EXT_PRECISION, RM, &mut self.cc)
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, EXT_PRECISION)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, EXT_PRECISION, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, EXT_PRECISION, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, EXT_PRECISION, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, EXT_PRECISION, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(EXT_PRECISION, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(EXT_PRECISION, RM, &mut self.cc)
    }

    /// Scientific notation with `digits` significant digits, e.g. `-1.39e-4`.
    pub fn to_scientific(&mut self, x: &BigFloat, digits: usize) -> String {
        let (sign, mantissa, exp) = x
            .convert_to_radix(Radix::Dec, RoundingMode::ToEven, &mut self.cc)
            .expect("finite value converts to decimal");
        if mantissa.iter().all(|&d| d == 0) {
            return format!("{}e0", "0.".to_string() + &"0".repeat(digits.saturating_sub(1)));
        }
        let mut d: Vec<u8> = mantissa.clone();
        d.resize(d.len().max(digits + 1), 0);
        let round_up = d[digits] >= 5;
        d.truncate(digits);
        let mut exp = exp as i64;
        if round_up {
            let mut i = digits;
            loop {
                if i == 0 {
                    d.insert(0, 1);
                    d.truncate(digits);
                    exp += 1;
                    break;
                }
                i -= 1;
                if d[i] == 9 {
                    d[i] = 0;
                } else {
                    d[i] += 1;
                    break;
                }
            }
        }
        let body: String = d.iter().map(|&x| char::from(b'0' + x)).collect();
        let sign = if sign == Sign::Neg { "-" } else { "" };
        format!("{sign}{}.{}e{}", &body[..1], &body[1..], exp - 1)
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        self.to_scientific(x, 20).parse().expect("scientific string parses")
    }
}

impl Default for Ext {
    fn default() -> Self {
        Self::new()
    }
}
