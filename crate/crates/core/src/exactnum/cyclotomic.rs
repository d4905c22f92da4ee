//! Elements of cyclotomic fields Q(z_m), stored as polynomials in z_m reduced
//! modulo the m-th cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{NumError, Rational};

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials by a monic-up-to-sign divisor.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for (t, d) in den.iter().enumerate() {
                rem[k + t] -= &c * d;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn x_pow_minus_one(d: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); d as usize + 1];
    p[0] = BigInt::from(-1);
    p[d as usize] = BigInt::one();
    p
}

/// The m-th cyclotomic polynomial, coefficients in ascending degree.
///
/// Computed from the Moebius product `prod_{d|m} (x^d - 1)^{mu(m/d)}`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut num = vec![BigInt::one()];
    let mut den = vec![BigInt::one()];
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        match mobius(m / d) {
            1 => num = poly_mul_int(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul_int(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_exact_int(&num, &den)
}

/// An element of Q(z_m).
///
/// Elements that happen to be rational are always stored with conductor 1,
/// so rational arithmetic never touches polynomial reduction.
#[derive(Clone, Debug)]
pub struct Cyc {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyc {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyc {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `z_m^e` for a primitive m-th root of unity `z_m`.
    pub fn root_of_unity(m: u32, e: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let e = e.rem_euclid(m as i64) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Self::from_poly(m, poly)
    }

    /// Builds `sum_e poly[e] * z_m^e`, reducing modulo the cyclotomic polynomial.
    pub fn from_poly(m: u32, poly: Vec<Rational>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let coeffs = reduce(m, poly);
        Cyc {
            conductor: m,
            coeffs,
        }
        .normalized()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis `1, z_m, ..., z_m^{phi(m)-1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn normalized(mut self) -> Self {
        if self.conductor != 1 && self.coeffs.iter().skip(1).all(Zero::is_zero) {
            let c = self.coeffs.swap_remove(0);
            return Cyc::from_rational(c);
        }
        self
    }

    /// Re-expresses `self` in Q(z_target); `target` must be a multiple of the conductor.
    pub fn embed(&self, target: u32) -> Cyc {
        assert!(
            target.is_multiple_of(self.conductor),
            "conductor {} does not divide {}",
            self.conductor,
            target
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            poly[e * step] = c.clone();
        }
        Cyc {
            conductor: target,
            coeffs: reduce(target, poly),
        }
    }

    fn common(a: &Cyc, b: &Cyc) -> (Cyc, Cyc, u32) {
        let l = a.conductor.lcm(&b.conductor);
        (a.embed(l), b.embed(l), l)
    }

    fn scale_rational(&self, q: &Rational) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
        .normalized()
    }

    /// Galois conjugate `z_m -> z_m^k`, `gcd(k, m) = 1`.
    fn galois(&self, k: u32) -> Cyc {
        let m = self.conductor as usize;
        let mut poly = vec![Rational::zero(); m];
        for (e, c) in self.coeffs.iter().enumerate() {
            let idx = (e * k as usize) % m;
            poly[idx] += c;
        }
        Cyc {
            conductor: self.conductor,
            coeffs: reduce(self.conductor, poly),
        }
    }

    /// Multiplicative inverse, computed as the product of the nontrivial
    /// Galois conjugates divided by the (rational) norm.
    pub fn inv(&self) -> Result<Cyc, NumError> {
        if self.is_zero() {
            return Err(NumError::DivisionByZero("inverse"));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Cyc::from_rational(q.recip()));
        }
        let m = self.conductor;
        let mut prod = Cyc::one();
        for k in 2..m {
            if k.gcd(&m) == 1 {
                prod = &prod * &self.galois(k);
            }
        }
        let norm = self * &prod;
        let n = norm
            .as_rational()
            .expect("field norm of a cyclotomic element is rational")
            .clone();
        Ok(prod.scale_rational(&n.recip()))
    }

    pub fn checked_div(&self, rhs: &Cyc) -> Result<Cyc, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero("division"));
        }
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Cyc, NumError> {
        if e < 0 {
            if self.is_zero() {
                return Err(NumError::DivisionByZero("negative power"));
            }
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Cyc::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

/// Reduces a rational polynomial modulo the m-th cyclotomic polynomial,
/// returning exactly phi(m) coefficients.
fn reduce(m: u32, mut poly: Vec<Rational>) -> Vec<Rational> {
    let phi = totient(m) as usize;
    if poly.len() > phi {
        let cyclo = cyclotomic_polynomial(m);
        for k in (phi..poly.len()).rev() {
            if poly[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[k], Rational::zero());
            for (t, d) in cyclo.iter().take(phi).enumerate() {
                if !d.is_zero() {
                    poly[k - phi + t] -= &c * Rational::from_integer(d.clone());
                }
            }
        }
        poly.truncate(phi);
    }
    poly.resize(phi, Rational::zero());
    poly
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b, _) = Cyc::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyc {}

impl Default for Cyc {
    fn default() -> Self {
        Cyc::zero()
    }
}

impl From<i64> for Cyc {
    fn from(n: i64) -> Self {
        Cyc::from_int(n)
    }
}

impl From<Rational> for Cyc {
    fn from(q: Rational) -> Self {
        Cyc::from_rational(q)
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        if self.conductor == rhs.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyc {
                conductor: self.conductor,
                coeffs,
            }
            .normalized();
        }
        let (a, b, _) = Cyc::common(self, rhs);
        &a + &b
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        if let Some(q) = self.as_rational() {
            return rhs.scale_rational(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale_rational(q);
        }
        if self.conductor != rhs.conductor {
            let (a, b, _) = Cyc::common(self, rhs);
            return &a * &b;
        }
        let mut poly = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Cyc::from_poly(self.conductor, poly)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyc> for Cyc {
            type Output = Cyc;
            fn $m(self, rhs: &'a Cyc) -> Cyc {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyc> for &'a Cyc {
            type Output = Cyc;
            fn $m(self, rhs: Cyc) -> Cyc {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyc> for Cyc {
    fn mul_assign(&mut self, rhs: &Cyc) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if e == 0 {
                write!(f, "{}", mag)?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", mag)?;
            }
            write!(f, "z{}", self.conductor)?;
            if e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[i64]) -> Vec<BigInt> {
        p.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(5), ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn phi_12_by_division_oracle() {
        // x^12 - 1 divided by the product of Phi_d over the proper divisors of 12.
        let mut den = vec![BigInt::one()];
        for d in [1, 2, 3, 4, 6] {
            den = poly_mul_int(&den, &cyclotomic_polynomial(d));
        }
        let q = poly_div_exact_int(&x_pow_minus_one(12), &den);
        assert_eq!(q, ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), q);
    }

    #[test]
    fn degrees_match_totient() {
        for m in 1..=40 {
            assert_eq!(
                cyclotomic_polynomial(m).len() - 1,
                totient(m) as usize,
                "m = {m}"
            );
        }
    }

    #[test]
    fn gaussian_integers() {
        let i = Cyc::root_of_unity(4, 1);
        assert_eq!(&i * &i, Cyc::from_int(-1));
        let one = Cyc::one();
        assert_eq!((&one + &i) * (&one - &i), Cyc::from_int(2));
        assert_eq!(i.pow(-1).unwrap(), -&i);
    }

    #[test]
    fn rational_collapse() {
        let z = Cyc::root_of_unity(6, 3);
        assert!(z.is_rational());
        assert_eq!(z, Cyc::from_int(-1));
        assert_eq!(Cyc::root_of_unity(2, 1), Cyc::from_int(-1));
    }

    #[test]
    fn zero_division_is_an_error() {
        assert!(Cyc::zero().inv().is_err());
        assert!(Cyc::one().checked_div(&Cyc::zero()).is_err());
        assert!(Cyc::zero().pow(-2).is_err());
        assert_eq!(Cyc::zero().pow(0).unwrap(), Cyc::one());
    }

    #[test]
    fn mixed_conductors_promote() {
        let i = Cyc::root_of_unity(4, 1);
        let w = Cyc::root_of_unity(3, 1);
        let p = &i * &w;
        assert_eq!(p.conductor(), 12);
        assert_eq!(p.pow(12).unwrap(), Cyc::one());
        assert_ne!(p.pow(6).unwrap(), Cyc::one());
        assert_eq!(Cyc::root_of_unity(12, 3), i);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Cyc::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(Cyc::root_of_unity(4, 1).to_string(), "z4");
        assert_eq!(Cyc::root_of_unity(4, 3).to_string(), "-z4");
        let x = &(&Cyc::from_frac(-1, 3) * &Cyc::root_of_unity(12, 2)) + &Cyc::one();
        assert_eq!(x.to_string(), "-1/3*z12^2 + 1");
        assert_eq!(Cyc::zero().to_string(), "0");
    }
}
