//! Elements of cyclotomic fields Q(zeta_m) in the power basis modulo the
//! m-th cyclotomic polynomial. For prime m this is the basis
//! 1, zeta, ..., zeta^{m-2} with the relation 1 + zeta + ... + zeta^{m-1} = 0.

use super::{rat, Rat};
use crate::{Error, Result};
use num::traits::{One, Zero};
use num::BigInt;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::sync::Mutex;

static PHI_CACHE: Lazy<Mutex<HashMap<u64, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    if let Some(p) = PHI_CACHE.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the cyclotomic polynomials of all proper divisors.
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    PHI_CACHE.lock().unwrap().insert(m, num.clone());
    num
}

/// Exact division of integer polynomials (monic divisor), constant term first.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        quot[i] = c.clone();
        for j in 0..=dd {
            rem[i + j] -= &c * &den[j];
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    quot
}

fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// An element of Q(zeta_m), stored as rational coefficients against the
/// power basis 1, zeta, ..., zeta^{phi(m)-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclo {
    m: u64,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn zero(m: u64) -> Self {
        Cyclo { m, coeffs: vec![Rat::zero(); euler_phi(m) as usize] }
    }

    pub fn one(m: u64) -> Self {
        Cyclo::from_rat(m, rat(1))
    }

    pub fn from_rat(m: u64, r: Rat) -> Self {
        let mut c = Cyclo::zero(m);
        c.coeffs[0] = r;
        c
    }

    /// zeta_m^j
    pub fn root(m: u64, j: i64) -> Self {
        let jj = j.rem_euclid(m as i64) as usize;
        let mut raw = vec![Rat::zero(); jj + 1];
        raw[jj] = rat(1);
        Cyclo::from_raw(m, raw)
    }

    /// e(x) = e^{2 pi i x} for rational x; only the class of x mod Z matters.
    pub fn e(m: u64, x: &Rat) -> Self {
        let xm = x * rat(m as i64);
        assert!(xm.is_integer(), "e({x}) is not an m-th root of unity for m = {m}");
        let mb = BigInt::from(m);
        let j = ((xm.to_integer() % &mb) + &mb) % &mb;
        Cyclo::root(m, j.to_string().parse::<i64>().unwrap())
    }

    fn from_raw(m: u64, raw: Vec<Rat>) -> Self {
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut rem = raw;
        if rem.len() < deg {
            rem.resize(deg, Rat::zero());
        }
        // reduce modulo the monic cyclotomic polynomial
        for i in (deg..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..=deg {
                let t = &c * Rat::from_integer(phi[j].clone());
                rem[i - deg + j] -= t;
            }
        }
        rem.truncate(deg);
        Cyclo { m, coeffs: rem }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.m, other.m);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclo { m: self.m, coeffs }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        assert_eq!(self.m, other.m);
        let n = self.coeffs.len();
        let mut raw = vec![Rat::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Cyclo::from_raw(self.m, raw)
    }

    pub fn scale(&self, r: &Rat) -> Cyclo {
        Cyclo { m: self.m, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// The Galois substitution sigma_a: zeta^j -> zeta^{aj}.
    pub fn galois(&self, a: i64) -> Result<Cyclo> {
        let am = a.rem_euclid(self.m as i64) as u64;
        if gcd_u64(am, self.m) != 1 {
            return Err(Error::NotCoprime { a, m: self.m });
        }
        let mut raw = vec![Rat::zero(); self.m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((j as u64 * am) % self.m) as usize;
            raw[idx] += c;
        }
        Ok(Cyclo::from_raw(self.m, raw))
    }

    /// Complex conjugation, sigma_{-1}.
    pub fn conj(&self) -> Cyclo {
        self.galois(self.m as i64 - 1).unwrap()
    }

    /// Field inverse via the extended Euclidean algorithm against Phi_m.
    pub fn inv(&self) -> Cyclo {
        assert!(!self.is_zero(), "division by zero in Q(zeta_m)");
        if let Some(r) = self.as_rat() {
            return Cyclo::from_rat(self.m, r.recip());
        }
        let phi: Vec<Rat> = cyclotomic_poly(self.m)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        // Bezout: s * self + t * phi = gcd = const
        let (g, s) = ext_gcd_poly(&trim(self.coeffs.clone()), &trim(phi));
        assert_eq!(g.len(), 1, "element is a zero divisor; modulus not prime to it");
        let ginv = g[0].clone().recip();
        let raw: Vec<Rat> = s.into_iter().map(|c| c * &ginv).collect();
        Cyclo::from_raw(self.m, raw)
    }

    pub fn div(&self, other: &Cyclo) -> Cyclo {
        self.mul(&other.inv())
    }

    /// Embed into Q(zeta_m2) for m | m2.
    pub fn embed(&self, m2: u64) -> Cyclo {
        assert_eq!(m2 % self.m, 0);
        let k = (m2 / self.m) as i64;
        let mut acc = Cyclo::zero(m2);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&Cyclo::root(m2, j as i64 * k).scale(c));
        }
        acc
    }

    /// Numerical value at zeta_m = e^{2 pi i / m}.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = rat_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * (j as f64) / (self.m as f64);
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn pow(&self, mut e: u64) -> Cyclo {
        let mut base = self.clone();
        let mut acc = Cyclo::one(self.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn rat_to_f64(r: &Rat) -> f64 {
    let f = |x: &BigInt| -> f64 { x.to_string().parse::<f64>().unwrap_or(f64::NAN) };
    f(r.numer()) / f(r.denom())
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

/// Returns (gcd, s) with s*a = gcd mod b, gcd trimmed (constant for coprime inputs).
fn ext_gcd_poly(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![rat(1)];
    let mut s1 = vec![rat(0)];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![rat(0)], trim(rem));
    }
    let mut quot = vec![rat(0); rem.len() - db];
    let lead = b[db].clone();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            quot[i] = c.clone();
            for j in 0..=db {
                let t = &c * &b[j];
                rem[i + j] -= t;
            }
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![rat(0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![rat(0); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn galois_identity_and_shift() {
        let z = Cyclo::root(5, 1);
        assert_eq!(z.galois(1).unwrap(), z);
        assert_eq!(z.galois(2).unwrap(), Cyclo::root(5, 2));
    }

    #[test]
    fn galois_rejects_non_coprime() {
        let z = Cyclo::root(5, 1);
        assert!(z.galois(5).is_err());
        assert!(z.galois(10).is_err());
    }

    #[test]
    fn galois_reduces_via_vanishing_sum() {
        // 1 + z + z^2 + z^3 = -z^4; apply sigma_2: 1 + z^2 + z^4 + z^6 = 1 + z + z^2 + z^4 = -z^3
        let x = Cyclo::root(5, 0)
            .add(&Cyclo::root(5, 1))
            .add(&Cyclo::root(5, 2))
            .add(&Cyclo::root(5, 3));
        let got = x.galois(2).unwrap();
        let expect = Cyclo::root(5, 3).neg();
        assert_eq!(got, expect);
    }

    #[test]
    fn galois_is_multiplicative_and_composes() {
        let x = Cyclo::root(7, 1).add(&Cyclo::from_rat(7, ratio(2, 3)));
        let y = Cyclo::root(7, 3).sub(&Cyclo::root(7, 5));
        let a = 2;
        let b = 3;
        assert_eq!(
            x.mul(&y).galois(a).unwrap(),
            x.galois(a).unwrap().mul(&y.galois(a).unwrap())
        );
        assert_eq!(
            x.galois(a).unwrap().galois(b).unwrap(),
            x.galois(a * b).unwrap()
        );
    }

    #[test]
    fn reduction_is_canonical() {
        // zeta^4 = -(1 + zeta + zeta^2 + zeta^3) in Q(zeta_5)
        let lhs = Cyclo::root(5, 4);
        let rhs = Cyclo::root(5, 0)
            .add(&Cyclo::root(5, 1))
            .add(&Cyclo::root(5, 2))
            .add(&Cyclo::root(5, 3))
            .neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_root_and_general_element() {
        let z = Cyclo::root(5, 2);
        assert_eq!(z.mul(&z.inv()), Cyclo::one(5));
        let x = Cyclo::root(5, 1).add(&Cyclo::from_rat(5, rat(3)));
        assert_eq!(x.mul(&x.inv()), Cyclo::one(5));
    }

    #[test]
    fn fourth_roots_of_unity() {
        // Q(zeta_4) = Q(i): (1+i)(1-i) = 2
        let i = Cyclo::root(4, 1);
        let a = Cyclo::one(4).add(&i);
        let b = Cyclo::one(4).sub(&i);
        assert_eq!(a.mul(&b), Cyclo::from_rat(4, rat(2)));
        // (1-i)/(1+i) = -i
        assert_eq!(b.div(&a), i.neg());
    }

    #[test]
    fn embedding_into_larger_field() {
        let z5 = Cyclo::root(5, 1);
        let z15 = z5.embed(15);
        assert_eq!(z15, Cyclo::root(15, 3));
        assert_eq!(z15.pow(5), Cyclo::one(15));
        assert!(!z15.pow(3).is_rational());
    }
}
