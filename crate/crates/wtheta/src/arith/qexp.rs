//! Truncated q-expansions with an exact rational leading exponent.
//!
//! A `QExp` represents sum_{n=0..trunc} coeffs[n] * q^{offset+n}; coefficients
//! beyond `trunc` are unknown, and arithmetic never reports coefficients
//! outside the valid range of its inputs.

use super::{rat, ratio, Rat};
use num::traits::{Signed, Zero};
use num::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExp {
    offset: Rat,
    coeffs: Vec<Rat>,
}

impl QExp {
    pub fn new(offset: Rat, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        QExp { offset, coeffs }
    }

    /// The constant series c * q^e, valid through e + trunc.
    pub fn monomial(e: Rat, c: Rat, trunc: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        coeffs[0] = c;
        QExp { offset: e, coeffs }
    }

    pub fn one(trunc: usize) -> Self {
        QExp::monomial(rat(0), rat(1), trunc)
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// Coefficient of q^e, if e lies on the valid grid.
    pub fn coeff_at(&self, e: &Rat) -> Option<&Rat> {
        let d = e - &self.offset;
        if !d.is_integer() || d.is_negative() {
            return None;
        }
        let n: usize = d.to_integer().try_into().ok()?;
        self.coeffs.get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent of the first nonzero coefficient in the valid range.
    pub fn leading_exponent(&self) -> Option<Rat> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|n| &self.offset + rat(n as i64))
    }

    pub fn truncate(&self, trunc: usize) -> QExp {
        assert!(trunc <= self.trunc(), "cannot extend valid range by truncation");
        QExp { offset: self.offset.clone(), coeffs: self.coeffs[..=trunc].to_vec() }
    }

    pub fn scale(&self, r: &Rat) -> QExp {
        QExp { offset: self.offset.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    pub fn neg(&self) -> QExp {
        self.scale(&rat(-1))
    }

    /// Addition; offsets must differ by an integer. The result's valid range
    /// is the overlap of the inputs' valid ranges.
    pub fn add(&self, other: &QExp) -> QExp {
        let d = &other.offset - &self.offset;
        assert!(d.is_integer(), "offset difference {d} is not an integer");
        let (lo, a, b) = if d.is_negative() {
            (other.offset.clone(), other, self)
        } else {
            (self.offset.clone(), self, other)
        };
        let shift: usize = (&b.offset - &lo).to_integer().try_into().unwrap();
        let valid = a.trunc().min(b.trunc() + shift);
        let mut coeffs = vec![Rat::zero(); valid + 1];
        for n in 0..=valid {
            coeffs[n] = a.coeffs[n].clone();
            if n >= shift {
                coeffs[n] += &b.coeffs[n - shift];
            }
        }
        QExp { offset: lo, coeffs }
    }

    pub fn sub(&self, other: &QExp) -> QExp {
        self.add(&other.neg())
    }

    /// Cauchy product truncated to the minimum valid range.
    pub fn mul(&self, other: &QExp) -> QExp {
        let trunc = self.trunc().min(other.trunc());
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(trunc + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(trunc + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QExp { offset: &self.offset + &other.offset, coeffs }
    }

    /// Multiplicative inverse; requires a nonzero coefficient in slot 0.
    pub fn inv(&self) -> QExp {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "leading coefficient must be nonzero for inversion");
        let n = self.trunc();
        let mut inv = vec![Rat::zero(); n + 1];
        inv[0] = c0.recip();
        for k in 1..=n {
            let mut s = Rat::zero();
            for j in 0..k {
                s += &inv[j] * &self.coeffs[k - j];
            }
            inv[k] = -s / c0;
        }
        QExp { offset: -&self.offset, coeffs: inv }
    }

    pub fn pow(&self, e: i64) -> QExp {
        if e < 0 {
            return self.inv().pow(-e);
        }
        let mut acc = QExp::one(self.trunc());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            if e > 1 {
                base = base.mul(&base);
            }
            e >>= 1;
        }
        acc
    }

    /// Assemble a series from (exponent, coefficient) terms; every exponent
    /// must lie on the grid offset + {0..=trunc}.
    pub fn from_terms<I: IntoIterator<Item = (Rat, Rat)>>(offset: Rat, trunc: usize, terms: I) -> QExp {
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        for (e, c) in terms {
            let d = &e - &offset;
            assert!(d.is_integer() && !d.is_negative(), "exponent {e} off the grid starting at {offset}");
            let n: usize = d.to_integer().try_into().unwrap();
            if n <= trunc {
                coeffs[n] += c;
            }
        }
        QExp { offset, coeffs }
    }

    /// True if other == r * self coefficientwise on the common valid range,
    /// for the given rational r.
    pub fn equals_scaled(&self, other: &QExp, r: &Rat) -> bool {
        if &self.offset != other.offset() {
            // allow grids shifted by an integer with zero padding
            let d = &other.offset - &self.offset;
            if !d.is_integer() {
                return false;
            }
        }
        let n = self.trunc().min(other.trunc());
        for k in 0..=n {
            let e = &self.offset + rat(k as i64);
            let a = self.coeff_at(&e).cloned().unwrap_or_else(Rat::zero);
            let b = other.coeff_at(&e).cloned().unwrap_or_else(Rat::zero);
            if a.clone() * r != b {
                return false;
            }
        }
        true
    }
}

/// Components of a vector valued q-expansion, indexed r = 1..=len.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorQExp {
    pub components: Vec<QExp>,
}

impl VectorQExp {
    pub fn trunc(&self) -> usize {
        self.components.iter().map(|c| c.trunc()).min().unwrap()
    }

    /// Componentwise sum; the components must line up in offset and length.
    pub fn add(&self, other: &VectorQExp) -> VectorQExp {
        assert_eq!(self.components.len(), other.components.len());
        VectorQExp {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }
}

/// q-expansion of eta^m with offset m/24, valid through `trunc` coefficients.
///
/// For m > 0 the product over (1 - q^n)^m is expanded exactly; negative
/// powers go through exact power series inversion.
pub fn eta_power(m: i64, trunc: usize) -> QExp {
    let e = euler_product(trunc);
    let offset = ratio(m, 24);
    let body = e.pow(m);
    QExp { offset, coeffs: body.coeffs }
}

/// prod_{n>=1} (1 - q^n) via the pentagonal number recurrence.
fn euler_product(trunc: usize) -> QExp {
    let mut coeffs = vec![Rat::zero(); trunc + 1];
    // generalized pentagonal numbers k(3k-1)/2, k in Z
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for kk in [k, -k] {
            let g = kk * (3 * kk - 1) / 2;
            if g >= 0 && (g as usize) <= trunc {
                let sign = if kk.rem_euclid(2) == 0 { 1 } else { -1 };
                coeffs[g as usize] += rat(sign);
                hit = true;
            }
            if kk == 0 {
                break;
            }
        }
        if k > 0 && !hit {
            break;
        }
        k += 1;
    }
    // k = 0 contributes twice the constant term guard
    coeffs[0] = rat(1);
    QExp { offset: rat(0), coeffs }
}

/// Content (gcd of numerators over lcm of denominators) of a family of rationals.
pub(crate) fn content(values: impl Iterator<Item = Rat>) -> Option<Rat> {
    use num::Integer;
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::from(1);
    let mut any = false;
    for v in values {
        if v.is_zero() {
            continue;
        }
        any = true;
        num_gcd = num_gcd.gcd(v.numer());
        den_lcm = den_lcm.lcm(v.denom());
    }
    if !any {
        return None;
    }
    Some(Rat::new(num_gcd, den_lcm))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_pentagonal_expansion() {
        let e = eta_power(1, 8);
        assert_eq!(e.offset(), &ratio(1, 24));
        // prod (1-q^n) = 1 - q - q^2 + q^5 + q^7 - ...
        let expect = [1, -1, -1, 0, 0, 1, 0, 1, 0];
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(e.coeff(n), &rat(*c), "slot {n}");
        }
    }

    #[test]
    fn eta_24_discriminant_leading_terms() {
        let e = eta_power(24, 2);
        assert_eq!(e.offset(), &rat(1));
        assert_eq!(e.coeff(0), &rat(1));
        assert_eq!(e.coeff(1), &rat(-24));
        assert_eq!(e.coeff(2), &rat(252));
    }

    #[test]
    fn eta_inverse_is_partition_numbers() {
        let e = eta_power(-1, 10);
        assert_eq!(e.offset(), &ratio(-1, 24));
        let partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, p) in partitions.iter().enumerate() {
            assert_eq!(e.coeff(n), &rat(*p), "p({n})");
        }
    }

    #[test]
    fn eta_times_eta_inverse_is_one() {
        for m in [1, 2, 7, 24, -3] {
            let prod = eta_power(m, 40).mul(&eta_power(-m, 40));
            assert_eq!(prod.offset(), &rat(0));
            assert_eq!(prod.coeff(0), &rat(1));
            assert!(prod.coeffs()[1..].iter().all(|c| c.is_zero()), "m = {m}");
        }
    }

    #[test]
    fn unit_and_geometric_multiplication() {
        let a = QExp::monomial(rat(0), rat(1), 5);
        let b = QExp::monomial(ratio(1, 5), rat(1), 5);
        assert_eq!(a.mul(&b), b);
        // (1 - q)(1 + q + q^2 + ...) = 1
        let one_minus_q = QExp::new(rat(0), vec![rat(1), rat(-1), rat(0), rat(0)]);
        let geo = QExp::new(rat(0), vec![rat(1), rat(1), rat(1), rat(1)]);
        let p = one_minus_q.mul(&geo);
        assert_eq!(p.coeff(0), &rat(1));
        assert!(p.coeffs()[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn addition_respects_valid_ranges() {
        let a = QExp::new(rat(0), vec![rat(1), rat(2), rat(3)]);
        let b = QExp::new(rat(2), vec![rat(5)]);
        let s = a.add(&b);
        assert_eq!(s.trunc(), 2);
        assert_eq!(s.coeff(2), &rat(8));
    }

    proptest::proptest! {
        #[test]
        fn mul_commutes_and_associates(
            xs in proptest::collection::vec(-9i64..10, 1..6),
            ys in proptest::collection::vec(-9i64..10, 1..6),
            zs in proptest::collection::vec(-9i64..10, 1..6),
        ) {
            let q = |v: &Vec<i64>| QExp::new(rat(0), v.iter().map(|&c| rat(c)).collect());
            let (a, b, c) = (q(&xs), q(&ys), q(&zs));
            proptest::prop_assert_eq!(a.mul(&b), b.mul(&a));
            let t = a.trunc().min(b.trunc()).min(c.trunc());
            proptest::prop_assert_eq!(a.mul(&b).mul(&c).truncate(t), a.mul(&b.mul(&c)).truncate(t));
        }
    }
}
