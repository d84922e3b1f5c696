//! Exact unit-modulus scalars stored as rational fractions of a full turn.
//!
//! A [`Phase`] `m/d` denotes the complex number `e^(2*pi*i*m/d)`. Values are
//! kept in canonical reduced form (`gcd(m,d) = 1`, or `0/1` for the unit),
//! so equality is a plain integer comparison and products never accumulate
//! rounding error.

use num_complex::Complex64;
use num_integer::Integer;

/// `e^(2*pi*i*num/den)` with `0 <= num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    /// Zero turns, the multiplicative unit (complex value 1).
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// Half a turn, complex value -1.
    pub const HALF: Phase = Phase { num: 1, den: 2 };

    /// Canonicalizes `m/d` turns. `d` must be positive.
    pub fn new(m: u64, d: u64) -> Phase {
        assert!(d > 0, "phase denominator must be positive");
        let m = m % d;
        if m == 0 {
            return Phase::ZERO;
        }
        let g = m.gcd(&d);
        Phase {
            num: m / g,
            den: d / g,
        }
    }

    pub fn numer(self) -> u64 {
        self.num
    }

    pub fn denom(self) -> u64 {
        self.den
    }

    /// Complex conjugate, i.e. the negated exponent.
    pub fn conj(self) -> Phase {
        if self.num == 0 {
            self
        } else {
            // gcd(d - m, d) = gcd(m, d) = 1, so this stays reduced.
            Phase {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }

    /// True when the value is +1 or -1.
    pub fn is_real(self) -> bool {
        self.den <= 2
    }

    pub fn to_complex(self) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * (self.num as f64) / (self.den as f64);
        Complex64::new(angle.cos(), angle.sin())
    }
}

/// Product of the two unit scalars: exponents add modulo one turn,
/// computed exactly over the least common denominator and re-reduced.
impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, other: Phase) -> Phase {
        let l = self.den.lcm(&other.den);
        let m = (self.num * (l / self.den) + other.num * (l / other.den)) % l;
        Phase::new(m, l)
    }
}

/// `self / other` as unit scalars: exponent subtraction.
impl std::ops::Div for Phase {
    type Output = Phase;

    // dividing by a unit scalar is multiplying by its conjugate
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, other: Phase) -> Phase {
        self * other.conj()
    }
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Exact product of two rational phases.
pub fn phase_mul(a: Phase, b: Phase) -> Phase {
    a * b
}
