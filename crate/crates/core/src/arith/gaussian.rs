//! Gaussian rationals `a + bi` with `a, b` rational.

use num_complex::Complex;
use num_traits::{Signed, Zero};

use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

pub type GaussianRational = Complex<Rational>;

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

/// `|z|^2`, always an exact rational.
pub fn abs_sq(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// `p/q` when real, otherwise `p/q+r/si` (or `p/q-r/si`).
pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!(
        "{}{}{}i",
        format_rational(&z.re),
        sign,
        format_rational(&z.im.abs())
    )
}

/// Inverse of [`format_gaussian`]; also accepts a bare imaginary part `r/si`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(real(parse_rational(s)?));
    };
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let parsed: Result<GaussianRational> = match split {
        Some(i) => {
            let re = parse_rational(&body[..i])?;
            let im_text = &body[i..];
            let im = if im_text == "+" || im_text == "-" {
                Rational::from_integer(if im_text == "-" { (-1).into() } else { 1.into() })
            } else {
                parse_rational(im_text)?
            };
            Ok(gauss(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => Rational::from_integer(1.into()),
                "-" => Rational::from_integer((-1).into()),
                b => parse_rational(b)?,
            };
            Ok(gauss(Rational::zero(), im))
        }
    };
    parsed.map_err(|e| Error::parse(format!("bad gaussian rational {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    #[test]
    fn text_form() {
        let z = gauss(rat(1, 2), rat(-1, 3));
        assert_eq!(format_gaussian(&z), "1/2-1/3i");
        assert_eq!(parse_gaussian("1/2-1/3i").unwrap(), z);
        assert_eq!(parse_gaussian("-1/2+3i").unwrap(), gauss(rat(-1, 2), rat(3, 1)));
        assert_eq!(parse_gaussian("2/3i").unwrap(), gauss(rat(0, 1), rat(2, 3)));
        assert_eq!(parse_gaussian("-i").unwrap(), gauss(rat(0, 1), rat(-1, 1)));
        assert_eq!(parse_gaussian("7").unwrap(), real(rat(7, 1)));
        assert!(parse_gaussian("1/2+xi").is_err());
    }

    #[test]
    fn modulus_is_exact() {
        let z = gauss(rat(3, 5), rat(4, 5));
        assert_eq!(abs_sq(&z), rat(1, 1));
        assert_eq!(abs_sq(&(z.conj() * &z)), rat(1, 1));
    }
}
