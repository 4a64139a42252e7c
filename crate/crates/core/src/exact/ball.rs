//! Fixed-point ball arithmetic.
//!
//! A [`Ball`] is `(mid ± rad) · 2^-prec` with integer `mid` and `rad >= 0`.
//! Every operation rounds outward, so the true value of any expression built
//! from exact inputs is contained in the resulting ball.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    prec: u32,
}

/// Floor division rounding towards -inf, with the remainder discarded.
fn shr_floor(x: &BigInt, bits: u32) -> BigInt {
    x >> bits as usize
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigInt::zero(), prec }
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        Ball { mid: BigInt::from(n) << prec as usize, rad: BigInt::zero(), prec }
    }

    pub fn from_rational(x: &Rational, prec: u32) -> Self {
        let scaled = x.numer() << prec as usize;
        let (q, r) = scaled.div_mod_floor(x.denom());
        let rad = if r.is_zero() { BigInt::zero() } else { BigInt::one() };
        Ball { mid: q, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Lower and upper bounds as rationals.
    pub fn bounds(&self) -> (Rational, Rational) {
        let den = BigInt::one() << self.prec as usize;
        (
            Rational::new(&self.mid - &self.rad, den.clone()),
            Rational::new(&self.mid + &self.rad, den),
        )
    }

    pub fn mid_f64(&self) -> f64 {
        scaled_to_f64(&self.mid, self.prec)
    }

    /// A floating upper bound on the radius.
    pub fn rad_f64(&self) -> f64 {
        let r = scaled_to_f64(&self.rad, self.prec);
        if r == 0.0 && !self.rad.is_zero() {
            f64::MIN_POSITIVE
        } else {
            r * (1.0 + 4.0 * f64::EPSILON)
        }
    }

    pub fn is_positive(&self) -> bool {
        self.mid > self.rad
    }

    pub fn is_negative(&self) -> bool {
        -&self.mid > self.rad
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// Upper bound on `|x|` in fixed-point units.
    fn abs_upper_scaled(&self) -> BigInt {
        self.mid.abs() + &self.rad
    }

    pub fn abs_upper_f64(&self) -> f64 {
        scaled_to_f64(&self.abs_upper_scaled(), self.prec) * (1.0 + 4.0 * f64::EPSILON)
    }

    /// Exact division by a nonzero integer, rounding outward.
    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "ball division by zero");
        let k = BigInt::from(k);
        let (mid, rem) = self.mid.div_mod_floor(&k);
        let rad = self.rad.div_ceil(&k.abs()) + if rem.is_zero() { 0u32 } else { 1u32 };
        Ball { mid, rad, prec: self.prec }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Ball { mid: &self.mid * &k, rad: &self.rad * k.abs(), prec: self.prec }
    }

    /// `sqrt(x)` for a rational `x >= 0`.
    pub fn sqrt_rational(x: &Rational, prec: u32) -> Self {
        assert!(!x.is_negative(), "sqrt of a negative rational");
        // floor(x * 4^prec) lies within 1 of x * 4^prec, and the integer square
        // root is within 1 of the real one, so 2 units bound the error.
        let scaled = (x.numer() << (2 * prec as usize)).div_floor(x.denom());
        Ball { mid: scaled.sqrt(), rad: BigInt::from(2), prec }
    }

    /// π via Machin's formula.
    pub fn pi(prec: u32) -> Self {
        let work = prec + 32;
        let a = atan_inv(5, work).mul_int(16);
        let b = atan_inv(239, work).mul_int(4);
        (a - b).round_to(prec)
    }

    /// Drop to a lower precision, rounding outward.
    pub fn round_to(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let s = (prec - self.prec) as usize;
            return Ball { mid: &self.mid << s, rad: &self.rad << s, prec };
        }
        let s = self.prec - prec;
        let mid = shr_floor(&self.mid, s);
        let one = BigInt::one() << s as usize;
        let rad = self.rad.div_ceil(&one) + 1u32;
        Ball { mid, rad, prec }
    }

    /// `(cos, sin)` of `2π·k/n`.
    pub fn cos_sin_turn(k: i64, n: u64, prec: u32) -> (Ball, Ball) {
        let n_i = n as i64;
        let k = k.rem_euclid(n_i);
        // Exact special cases keep the common values radius-free.
        if k == 0 {
            return (Ball::from_int(1, prec), Ball::zero(prec));
        }
        if 2 * k == n_i {
            return (Ball::from_int(-1, prec), Ball::zero(prec));
        }
        if 4 * k == n_i {
            return (Ball::zero(prec), Ball::from_int(1, prec));
        }
        if 4 * k == 3 * n_i {
            return (Ball::zero(prec), Ball::from_int(-1, prec));
        }
        let work = prec + 40;
        // Fold into [-π, π] so the Taylor series starts from a small argument.
        let k_c = if 2 * k > n_i { k - n_i } else { k };
        let theta = Ball::pi(work).mul_int(2 * k_c).div_int(n_i);
        let (c, s) = cos_sin_taylor(&theta);
        (c.round_to(prec), s.round_to(prec))
    }
}

fn scaled_to_f64(x: &BigInt, prec: u32) -> f64 {
    // Keep 64 significant bits before converting.
    let bits = x.bits();
    if bits > 64 {
        let s = bits - 64;
        let top = (x >> s as usize).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(s as i32 - prec as i32)
    } else {
        x.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(prec as i32))
    }
}

/// `atan(1/x)` for integer `x >= 2` by its alternating Taylor series.
fn atan_inv(x: i64, prec: u32) -> Ball {
    let x2 = x * x;
    let mut power = Ball::from_int(1, prec).div_int(x); // 1/x^(2k+1)
    let mut sum = Ball::zero(prec);
    let mut k: i64 = 0;
    loop {
        let term = power.div_int(2 * k + 1);
        if k % 2 == 0 {
            sum = sum + term.clone();
        } else {
            sum = sum - term.clone();
        }
        power = power.div_int(x2);
        k += 1;
        // Alternating with decreasing terms: the tail is bounded by the next term.
        if power.abs_upper_scaled() <= BigInt::from(16) {
            let tail = power.abs_upper_scaled() + 1u32;
            sum.rad += tail;
            return sum;
        }
    }
}

/// Taylor series for cos and sin of a ball with |theta| <= 4.
fn cos_sin_taylor(theta: &Ball) -> (Ball, Ball) {
    let prec = theta.prec;
    let t2 = theta.clone() * theta.clone();
    let mut cos = Ball::from_int(1, prec);
    let mut sin = theta.clone();
    let mut cterm = Ball::from_int(1, prec);
    let mut sterm = theta.clone();
    let mut j: i64 = 1;
    loop {
        cterm = (-(cterm * t2.clone())).div_int((2 * j - 1) * (2 * j));
        sterm = (-(sterm * t2.clone())).div_int((2 * j) * (2 * j + 1));
        cos = cos + cterm.clone();
        sin = sin + sterm.clone();
        j += 1;
        // Once (2j)(2j+1) > theta^2 the terms decrease, and the alternating
        // tail is bounded by the next term, itself bounded by the current one.
        // Rounding keeps each term's radius at a few ulps, hence the slack.
        let ulps = BigInt::from(16);
        if j > 4 && 4 * j * j > 1 + t2.abs_upper_f64() as i64 && cterm.abs_upper_scaled() <= ulps && sterm.abs_upper_scaled() <= ulps {
            cos.rad += cterm.abs_upper_scaled() + 1u32;
            sin.rad += sterm.abs_upper_scaled() + 1u32;
            return (cos, sin);
        }
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, o: Ball) -> Ball {
        assert_eq!(self.prec, o.prec, "ball precision mismatch");
        Ball { mid: self.mid + o.mid, rad: self.rad + o.rad, prec: self.prec }
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, o: Ball) -> Ball {
        self + (-o)
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball { mid: -self.mid, rad: self.rad, prec: self.prec }
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, o: Ball) -> Ball {
        assert_eq!(self.prec, o.prec, "ball precision mismatch");
        let p = self.prec as usize;
        let prod = &self.mid * &o.mid;
        let err = self.mid.abs() * &o.rad + o.mid.abs() * &self.rad + &self.rad * &o.rad;
        let mid = &prod >> p;
        let one = BigInt::one() << p;
        let exact = prod.sign() == Sign::NoSign || (&prod - (&mid << p)).is_zero();
        let rad = err.div_ceil(&one) + if exact { 0u32 } else { 1u32 };
        Ball { mid, rad, prec: self.prec }
    }
}

/// A complex ball: independent real and imaginary balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        ComplexBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn real(re: Ball) -> Self {
        let prec = re.prec;
        ComplexBall { re, im: Ball::zero(prec) }
    }

    /// `exp(2πi·k/n)`.
    pub fn root_of_unity(k: i64, n: u64, prec: u32) -> Self {
        let (re, im) = Ball::cos_sin_turn(k, n, prec);
        ComplexBall { re, im }
    }

    pub fn scale(&self, x: &Ball) -> Self {
        ComplexBall { re: self.re.clone() * x.clone(), im: self.im.clone() * x.clone() }
    }

    pub fn conj(&self) -> Self {
        ComplexBall { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Upper bound on the modulus.
    pub fn abs_upper_f64(&self) -> f64 {
        self.re.abs_upper_f64().hypot(self.im.abs_upper_f64())
    }

    /// Lower bound on the modulus (zero when the ball touches the origin).
    pub fn abs_lower_f64(&self) -> f64 {
        let lo = |b: &Ball| (b.mid_f64().abs() - b.rad_f64()).max(0.0);
        let v = lo(&self.re).hypot(lo(&self.im));
        v * (1.0 - 4.0 * f64::EPSILON)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }
}

impl Add for ComplexBall {
    type Output = ComplexBall;
    fn add(self, o: ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for ComplexBall {
    type Output = ComplexBall;
    fn sub(self, o: ComplexBall) -> ComplexBall {
        ComplexBall { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for ComplexBall {
    type Output = ComplexBall;
    fn mul(self, o: ComplexBall) -> ComplexBall {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        ComplexBall { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn pi_encloses_known_digits() {
        let pi = Ball::pi(200);
        let (lo, hi) = pi.bounds();
        // 3.14159265358979323846264338327950288419716939937510...
        let digits = "314159265358979323846264338327950288419716939937510";
        let approx = Rational::new(digits.parse().unwrap(), BigInt::from(10).pow(50));
        let eps = rat(1, 1) / Rational::from_integer(BigInt::from(10).pow(49));
        assert!(lo <= approx.clone() + eps.clone() && approx - eps <= hi);
        assert!(pi.rad_f64() < 1e-55);
    }

    #[test]
    fn cos_sin_values() {
        let (c, s) = Ball::cos_sin_turn(1, 8, 128);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((c.mid_f64() - h).abs() < 1e-15 && (s.mid_f64() - h).abs() < 1e-15);
        assert!(c.rad_f64() < 1e-30);
        let (c, s) = Ball::cos_sin_turn(1, 6, 128);
        assert!((c.mid_f64() - 0.5).abs() < 1e-15);
        assert!((s.mid_f64() - 3f64.sqrt() / 2.0).abs() < 1e-15);
        let (c, _) = Ball::cos_sin_turn(5, 12, 128);
        assert!(c.is_negative());
    }

    #[test]
    fn cos_ball_encloses_truth_squared_identity() {
        // cos^2 + sin^2 = 1 must be enclosed.
        for (k, n) in [(1, 7), (3, 11), (5, 24), (13, 60), (-4, 9)] {
            let (c, s) = Ball::cos_sin_turn(k, n, 150);
            let one = c.clone() * c + s.clone() * s;
            let (lo, hi) = one.bounds();
            assert!(lo <= rat(1, 1) && rat(1, 1) <= hi, "k={k} n={n}");
        }
    }

    #[test]
    fn sqrt_encloses() {
        let r = Ball::sqrt_rational(&rat(2, 3), 100);
        let (lo, hi) = r.bounds();
        assert!(lo.clone() * lo <= rat(2, 3) && rat(2, 3) <= hi.clone() * hi);
    }
}
