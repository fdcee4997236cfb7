//! Ring and field abstractions plus the three coefficient fields.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_complex::Complex64;

use super::rational::Rational;

/// Commutative ring with identity, as used by [`crate::algebra::Matrix`].
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }

    /// Largest coefficient magnitude of `self - o`; zero for exact equality.
    fn distance(&self, o: &Self) -> f64;
}

/// Coefficient field. `EXACT` separates the rational realizations from the
/// floating-point one.
pub trait Field: Ring + Display {
    const EXACT: bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }
    fn to_c64(&self) -> Complex64;
    /// Attempt to realize a complex number exactly in this field.
    fn from_c64(c: Complex64) -> Option<Self>;
    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::mul(self, o)
    }
    fn neg(&self) -> Self {
        Rational::neg(self)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::sub(self, o)
    }
    fn distance(&self, o: &Self) -> f64 {
        if self == o {
            0.0
        } else {
            Rational::sub(self, o).to_f64().abs()
        }
    }
}

impl Field for Rational {
    const EXACT: bool = true;
    fn inv(&self) -> Option<Self> {
        Rational::inv(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64(), 0.0)
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        if c.im.abs() > 1e-12 {
            return None;
        }
        Rational::approximate(c.re, 1 << 20)
    }
    fn is_one(&self) -> bool {
        Rational::is_one(self)
    }
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat {
            re,
            im: Rational::ZERO,
        }
    }

    pub fn i() -> Self {
        GaussRat {
            re: Rational::ZERO,
            im: Rational::ONE,
        }
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }
}

impl Ring for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn one() -> Self {
        GaussRat::real(Rational::ONE)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(self.re.mul(&o.re));
        }
        GaussRat {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
    fn neg(&self) -> Self {
        GaussRat {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
    fn distance(&self, o: &Self) -> f64 {
        if self == o {
            0.0
        } else {
            self.sub(o).to_c64().norm()
        }
    }
}

impl Field for GaussRat {
    const EXACT: bool = true;
    fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.inv().map(GaussRat::real);
        }
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let ni = n.inv()?;
        Some(GaussRat {
            re: self.re.mul(&ni),
            im: self.im.neg().mul(&ni),
        })
    }
    fn from_rational(r: &Rational) -> Self {
        GaussRat::real(r.clone())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        Some(GaussRat {
            re: Rational::approximate(c.re, 1 << 20)?,
            im: Rational::approximate(c.im, 1 << 20)?,
        })
    }
}

impl Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.signum() < 0 {
                    write!(f, "{}-{}i", self.re, self.im.neg())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

impl Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = super::rational::ParseRationalError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` with rational parts; `i` alone means 1·i.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || super::rational::ParseRationalError(s.to_string());
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussRat::real(t.parse()?));
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other.strip_prefix('+').unwrap_or(other),
        };
        let re: Rational = re.parse().map_err(|_| err())?;
        let im: Rational = im.parse().map_err(|_| err())?;
        Ok(GaussRat { re, im })
    }
}

/// Default absolute tolerance for floating-point comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn distance(&self, o: &Self) -> f64 {
        (self - o).norm()
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(r.to_f64(), 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_inverse() {
        let z = GaussRat::new(Rational::from_int(1), Rational::from_int(1));
        let w = z.inv().unwrap();
        assert_eq!(z.mul(&w), GaussRat::one());
        assert_eq!(w, "1/2-1/2i".parse().unwrap());
    }

    #[test]
    fn gauss_parse() {
        assert_eq!("i".parse::<GaussRat>().unwrap(), GaussRat::i());
        assert_eq!("-i".parse::<GaussRat>().unwrap(), GaussRat::i().neg());
        assert_eq!(
            "3/2-2i".parse::<GaussRat>().unwrap(),
            GaussRat::new(Rational::new(3, 2), Rational::from_int(-2))
        );
        assert_eq!(
            "-5".parse::<GaussRat>().unwrap(),
            GaussRat::real(Rational::from_int(-5))
        );
        assert_eq!(
            GaussRat::new(Rational::new(3, 2), Rational::from_int(-2)).to_string(),
            "3/2-2i"
        );
    }
}
