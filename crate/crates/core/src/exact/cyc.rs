//! Exact elements of the cyclotomic field `Q(ζ_n)` in the power basis
//! `1, ζ, …, ζ^(φ(n)-1)`, reduced modulo `Φ_n`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ball::{Ball, ComplexBall};
use super::field::CycloField;
use super::poly::lcm;
use super::rational::{self, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNumber(n={}, [", self.conductor())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

/// Common-denominator form: `nums / den`.
fn to_integral(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

fn from_integral(nums: Vec<BigInt>, den: &BigInt) -> Vec<Rational> {
    nums.into_iter().map(|n| Rational::new(n, den.clone())).collect()
}

impl CycNumber {
    pub fn zero(n: u64) -> Self {
        let field = CycloField::get(n);
        let coeffs = vec![Rational::zero(); field.degree()];
        CycNumber { field, coeffs }
    }

    pub fn one(n: u64) -> Self {
        Self::from_rational(n, Rational::one())
    }

    pub fn from_rational(n: u64, x: Rational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = x;
        z
    }

    /// Build from power-basis coefficients of any length (reduced here).
    pub fn from_coeffs(n: u64, coeffs: Vec<Rational>) -> Self {
        let field = CycloField::get(n);
        let (nums, den) = to_integral(&coeffs);
        let reduced = field.reduce(nums);
        CycNumber { coeffs: from_integral(reduced, &den), field }
    }

    /// Build from a group-ring vector `Σ c_k ζ^k` with exponents taken mod `n`.
    pub fn from_exponents(n: u64, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut v = vec![Rational::zero(); n as usize];
        for (k, c) in terms {
            v[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_coeffs(n, v)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    /// True if every coefficient is an integer.
    pub fn is_integral_in_basis(&self) -> bool {
        self.coeffs.iter().all(rational::is_integer)
    }

    /// Image under `Q(ζ_n) ⊂ Q(ζ_m)`, `ζ_n = ζ_m^(m/n)`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        let n = self.conductor();
        if !m.is_multiple_of(n) {
            return Err(Error::Domain(format!("cannot embed conductor {n} into {m}")));
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as i64;
        Ok(Self::from_exponents(
            m,
            self.coeffs.iter().enumerate().map(|(i, c)| (i as i64 * step, c.clone())),
        ))
    }

    /// Embed both operands into their common field `Q(ζ_lcm)`.
    pub fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = lcm(a.conductor(), b.conductor());
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch(self.conductor(), other.conductor()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycNumber { field: self.field.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, x: &Rational) -> Self {
        CycNumber { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * x).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (a, da) = to_integral(&self.coeffs);
        let (b, db) = to_integral(&other.coeffs);
        let mut prod = vec![BigInt::zero(); 2 * a.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let reduced = self.field.reduce(prod);
        Ok(CycNumber { coeffs: from_integral(reduced, &(da * db)), field: self.field.clone() })
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero cyclotomic".into()));
        }
        let n = self.conductor();
        let modulus: Vec<Rational> = self.field.modulus().iter().map(|&c| rational::int(c)).collect();
        let a = trim(self.coeffs.clone());
        // Invariant: s_i * a ≡ r_i (mod Φ).
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.iter().all(Zero::is_zero) {
                return Err(Error::Assertion("Φ_n shares a factor with a nonzero element".into()));
            }
        }
        let c = r1[0].clone();
        let inv: Vec<Rational> = s1.into_iter().map(|x| x / &c).collect();
        Ok(Self::from_coeffs(n, inv))
    }

    /// Complex conjugation `ζ ↦ ζ^-1`.
    pub fn conj(&self) -> Self {
        let n = self.conductor() as i64;
        Self::from_exponents(
            n as u64,
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (-(i as i64), c.clone())),
        )
    }

    /// Certified enclosure of the value at `ζ_n = exp(2πi/n)`.
    pub fn float_approx(&self, precision: u32) -> Result<ComplexBall> {
        if precision < 53 {
            return Err(Error::Domain(format!("precision {precision} < 53 bits")));
        }
        let n = self.conductor();
        let mut acc = ComplexBall::zero(precision);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = ComplexBall::root_of_unity(k as i64, n, precision);
            acc = acc + z.scale(&Ball::from_rational(c, precision));
        }
        Ok(acc)
    }
}

/// `ζ_n^k`, with `k` taken mod `n`.
pub fn cyc_root_power(n: u64, k: i64) -> CycNumber {
    CycNumber::from_exponents(n, [(k, Rational::one())])
}

/// `cos(πk/N)` as an element of `Q(ζ_2N)`.
pub fn cyc_cos(k: i64, big_n: u64) -> CycNumber {
    let half = rational::rat(1, 2);
    CycNumber::from_exponents(2 * big_n, [(k, half.clone()), (-k, half)])
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// JSON form `{ "n": conductor, "coeffs": ["a/b", …] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycJson {
    pub n: u64,
    #[serde(with = "rational::vec_as_string")]
    pub coeffs: Vec<Rational>,
}

impl From<&CycNumber> for CycJson {
    fn from(c: &CycNumber) -> Self {
        CycJson { n: c.conductor(), coeffs: c.coeffs.clone() }
    }
}

impl From<CycJson> for CycNumber {
    fn from(j: CycJson) -> Self {
        CycNumber::from_coeffs(j.n, j.coeffs)
    }
}

impl Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(CycJson::deserialize(d)?.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn c(n: u64, coeffs: &[i64]) -> CycNumber {
        CycNumber::from_coeffs(n, coeffs.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn root_powers() {
        assert_eq!(cyc_root_power(8, 4), CycNumber::from_rational(8, int(-1)));
        assert!(cyc_root_power(7, 0).is_one());
        assert!(cyc_root_power(7, 14).is_one());
        let s = cyc_root_power(6, 1).add(&cyc_root_power(6, -1)).unwrap();
        assert!(s.is_one());
    }

    #[test]
    fn ring_examples() {
        let i = cyc_root_power(4, 1);
        let one = CycNumber::one(4);
        let a = one.add(&i).unwrap();
        let b = one.sub(&i).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycNumber::from_rational(4, int(2)));
        assert!(cyc_root_power(8, 1).mul(&cyc_root_power(8, 7)).unwrap().is_one());
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn mismatched_conductors_are_rejected() {
        let r = CycNumber::one(8).add(&CycNumber::one(12));
        assert_eq!(r, Err(Error::ConductorMismatch(8, 12)));
        let (x, y) = CycNumber::common(&cyc_root_power(8, 1), &cyc_root_power(12, 1));
        assert_eq!(x.conductor(), 24);
        assert!(x.mul(&y).is_ok());
    }

    #[test]
    fn inverses() {
        assert_eq!(CycNumber::from_rational(9, int(2)).inv().unwrap(), CycNumber::from_rational(9, rat(1, 2)));
        let a = c(4, &[1, 1]);
        let expected = CycNumber::from_coeffs(4, vec![rat(1, 2), rat(-1, 2)]);
        assert_eq!(a.inv().unwrap(), expected);
        assert_eq!(cyc_root_power(15, 4).inv().unwrap(), cyc_root_power(15, -4));
        assert!(CycNumber::zero(5).inv().is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(cyc_root_power(8, 1).conj(), cyc_root_power(8, 7));
        let real = cyc_root_power(6, 1).add(&cyc_root_power(6, -1)).unwrap();
        assert_eq!(real.conj(), real);
        assert!(CycNumber::one(5).conj().is_one());
    }

    #[test]
    fn cosines() {
        assert!(cyc_cos(0, 5).is_one());
        assert_eq!(cyc_cos(1, 3), CycNumber::from_rational(6, rat(1, 2)));
        assert_eq!(cyc_cos(7, 7), CycNumber::from_rational(14, int(-1)));
        let v = cyc_cos(1, 4).float_approx(128).unwrap();
        assert!((v.re.mid_f64() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(v.im.contains_zero());
        let half = cyc_cos(1, 3).float_approx(64).unwrap();
        assert_eq!(half.re.mid_f64(), 0.5);
        assert!(half.re.rad_f64() == 0.0);
    }

    #[test]
    fn float_approx_needs_53_bits() {
        assert!(CycNumber::one(3).float_approx(52).is_err());
        let one = CycNumber::one(3).float_approx(53).unwrap();
        assert_eq!(one.re.mid_f64(), 1.0);
        assert_eq!(one.re.rad_f64(), 0.0);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let a = c(12, &[1, -2, 0, 3]);
        let b = c(12, &[0, 1, 1, 0]);
        let ab = a.mul(&b).unwrap().embed(24).unwrap();
        let ab2 = a.embed(24).unwrap().mul(&b.embed(24).unwrap()).unwrap();
        assert_eq!(ab, ab2);
    }

    #[test]
    fn json_form() {
        let a = CycNumber::from_coeffs(5, vec![rat(1, 2), int(0), int(-3), int(0)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"n":5,"coeffs":["1/2","0","-3","0"]}"#);
        let back: CycNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
