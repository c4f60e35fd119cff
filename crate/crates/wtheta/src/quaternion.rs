//! The definite quaternion algebra V = K + Ku with K = Q(sqrt(-l)) and
//! u^2 = -1/3, its maximal order D, left ideals, dual lattices, and the
//! residue map to F(l^2).
//!
//! Elements are coordinate vectors over the fixed basis {1, s, u, su}
//! where s = sqrt(-l).  Multiplication follows s^2 = -l, u^2 = -1/3 and
//! alpha u = u alphabar for alpha in K.

use num::{BigInt, One, Signed, Zero};

use crate::arith::{frac_mod1, rat, ratio, Rat};
use crate::linalg::{
    clear_denominators, hnf, mat_inv, mat_mul, reduce_mod_lattice, snf_reducer, RatMat,
};
use crate::rho::{is_prime, Fl2};
use crate::{Error, Result};

pub type Quat = Vec<Rat>;

#[derive(Debug, Clone)]
pub struct QuatAlgebra {
    pub l: u64,
}

pub fn build_algebra(l: u64) -> QuatAlgebra {
    assert!(is_prime(l) && l % 3 == 2, "need a prime l = -1 (mod 3)");
    QuatAlgebra { l }
}

impl QuatAlgebra {
    pub fn from_k(&self, re: Rat, im: Rat) -> Quat {
        vec![re, im, rat(0), rat(0)]
    }

    pub fn one(&self) -> Quat {
        vec![rat(1), rat(0), rat(0), rat(0)]
    }

    /// Product in coordinates: write x = alpha + beta u, y = gamma + delta u
    /// with alpha = x0 + x1 s etc.; then
    /// x y = (alpha gamma - (1/3) beta deltabar) + (alpha delta + beta gammabar) u.
    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Quat {
        let l = rat(self.l as i64);
        let (a, b) = ((&x[0], &x[1]), (&x[2], &x[3]));
        let (c, d) = ((&y[0], &y[1]), (&y[2], &y[3]));
        // K-products with s^2 = -l
        let kmul = |p: (&Rat, &Rat), q: (&Rat, &Rat)| -> (Rat, Rat) {
            (p.0 * q.0 - &l * p.1 * q.1, p.0 * q.1 + p.1 * q.0)
        };
        let third = ratio(1, 3);
        let dbar = (d.0.clone(), -d.1.clone());
        let cbar = (c.0.clone(), -c.1.clone());
        let t1 = kmul(a, c);
        let t2 = kmul(b, (&dbar.0, &dbar.1));
        let t3 = kmul(a, d);
        let t4 = kmul(b, (&cbar.0, &cbar.1));
        vec![
            t1.0 - &third * &t2.0,
            t1.1 - &third * &t2.1,
            t3.0 + &t4.0,
            t3.1 + &t4.1,
        ]
    }

    /// The unique anti-involution with c cbar = n(c): alpha + beta u -> alphabar - beta u.
    pub fn conj(&self, x: &[Rat]) -> Quat {
        vec![x[0].clone(), -x[1].clone(), -x[2].clone(), -x[3].clone()]
    }

    /// Reduced norm n(x) = x0^2 + l x1^2 + (1/3)(x2^2 + l x3^2).
    pub fn norm(&self, x: &[Rat]) -> Rat {
        let l = rat(self.l as i64);
        &x[0] * &x[0] + &l * &x[1] * &x[1] + ratio(1, 3) * (&x[2] * &x[2] + &l * &x[3] * &x[3])
    }

    /// Reduced trace tr(x) = 2 x0.
    pub fn trace(&self, x: &[Rat]) -> Rat {
        rat(2) * &x[0]
    }

    /// Gram matrix of the bilinear form (x, y) -> tr(x ybar) on {1, s, u, su}.
    pub fn ambient_gram(&self) -> RatMat {
        let l = self.l as i64;
        let mut g = vec![vec![rat(0); 4]; 4];
        g[0][0] = rat(2);
        g[1][1] = rat(2 * l);
        g[2][2] = ratio(2, 3);
        g[3][3] = ratio(2 * l, 3);
        g
    }

    /// tr(x ybar), the bilinear form associated to n.
    pub fn tr_pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let g = self.ambient_gram();
        let mut acc = rat(0);
        for i in 0..4 {
            acc += &x[i] * &g[i][i] * &y[i];
        }
        acc
    }

    pub fn sqrt_ml(&self) -> Quat {
        vec![rat(0), rat(1), rat(0), rat(0)]
    }
}

/// A rank-4 Z-lattice in V with Gram data and reduced norm.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    /// Hermite-canonical basis, rows in ambient {1, s, u, su} coordinates.
    pub basis: RatMat,
    basis_inv: RatMat,
    /// Gram matrix tr(e_i conj(e_j)).
    pub gram: RatMat,
    /// n(I) = gcd of n(c) over c in I.
    pub rednorm: Rat,
}

impl IdealLattice {
    pub fn from_generators(algebra: &QuatAlgebra, gens: &[Quat]) -> Result<Self> {
        let basis = lattice_basis(gens);
        if basis.len() != 4 {
            return Err(Error::DegenerateModule(format!(
                "lattice generators span rank {} instead of 4",
                basis.len()
            )));
        }
        let gram: RatMat = (0..4)
            .map(|i| (0..4).map(|j| algebra.tr_pair(&basis[i], &basis[j])).collect())
            .collect();
        let basis_inv = mat_inv(&basis);
        // gcd of n(e_i) = gram[i][i]/2 and of tr(e_i conj(e_j)) = gram[i][j]
        let mut vals: Vec<Rat> = (0..4).map(|i| &gram[i][i] / rat(2)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                vals.push(gram[i][j].clone());
            }
        }
        let rednorm = rat_gcd(&vals);
        Ok(IdealLattice { basis, basis_inv, gram, rednorm })
    }

    /// Integral coordinates of x in this basis, if x lies in the lattice.
    pub fn coords(&self, x: &[Rat]) -> Option<Vec<BigInt>> {
        let c = mat_vec_left(x, &self.basis_inv);
        let mut out = Vec::with_capacity(4);
        for v in c {
            if v.is_integer() {
                out.push(v.to_integer());
            } else {
                return None;
            }
        }
        Some(out)
    }

    /// Rational coordinates of x in this basis (x need not lie in the lattice).
    pub fn rat_coords(&self, x: &[Rat]) -> Vec<Rat> {
        mat_vec_left(x, &self.basis_inv)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coords(x).is_some()
    }

    pub fn element(&self, coords: &[i64]) -> Quat {
        let mut out = vec![rat(0); 4];
        for (i, &c) in coords.iter().enumerate() {
            for j in 0..4 {
                out[j] += rat(c) * &self.basis[i][j];
            }
        }
        out
    }

    pub fn det_gram(&self) -> Rat {
        crate::linalg::det(&self.gram)
    }

    /// Image of the lattice under left multiplication by q.
    pub fn left_scaled(&self, algebra: &QuatAlgebra, q: &[Rat]) -> Result<Self> {
        let gens: Vec<Quat> = self.basis.iter().map(|e| algebra.mul(q, e)).collect();
        IdealLattice::from_generators(algebra, &gens)
    }

    /// Index [self : sub] for a sublattice.
    pub fn index_of(&self, sub: &IdealLattice) -> Option<BigInt> {
        let m = mat_mul(&sub.basis, &self.basis_inv);
        let d = crate::linalg::det(&m);
        if m.iter().flatten().all(|v| v.is_integer()) && d.is_integer() {
            Some(d.to_integer().abs())
        } else {
            None
        }
    }
}

/// Hermite-canonical basis of the Z-span of the generators (zero rows dropped).
fn lattice_basis(gens: &[Quat]) -> RatMat {
    let rows: RatMat = gens.to_vec();
    let (int_rows, den) = clear_denominators(&rows);
    let h = hnf(&int_rows);
    let den_rat = Rat::from_integer(den);
    h.into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .map(|r| r.into_iter().map(|v| Rat::from_integer(v) / &den_rat).collect())
        .collect()
}

fn mat_vec_left(x: &[Rat], m: &RatMat) -> Vec<Rat> {
    // row vector times matrix
    (0..m[0].len())
        .map(|j| (0..x.len()).map(|i| &x[i] * &m[i][j]).sum())
        .collect()
}

fn rat_gcd(vals: &[Rat]) -> Rat {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in vals {
        if v.is_zero() {
            continue;
        }
        num = num::integer::gcd(num, v.numer().abs());
        den = num::integer::lcm(den, v.denom().clone());
    }
    Rat::new(num, den)
}

/// Z-basis of the ring of integers of K = Q(sqrt(-l)) as quaternions.
fn o_basis(algebra: &QuatAlgebra) -> Vec<Quat> {
    if algebra.l % 4 == 3 {
        vec![algebra.one(), algebra.from_k(ratio(1, 2), ratio(1, 2))]
    } else {
        vec![algebra.one(), algebra.from_k(rat(0), rat(1))]
    }
}

/// Z-basis of the prime ideal p = 3 o + (1 + sqrt(-l)) o above 3, as quaternions.
fn p_basis(algebra: &QuatAlgebra) -> Vec<Quat> {
    let ob = o_basis(algebra);
    let three = algebra.from_k(rat(3), rat(0));
    let gen = algebra.from_k(rat(1), rat(1));
    let mut gens = Vec::new();
    for w in &ob {
        gens.push(algebra.mul(&three, w));
        gens.push(algebra.mul(&gen, w));
    }
    lattice_basis(&gens)
}

/// The maximal order D = o + p v, with v = u for l = 3 (mod 4) and
/// v = (1 + u)/2 for l = 1 (mod 4).  Maximality is certified by
/// det(Gram) = l^2; closure under multiplication is verified.
pub fn maximal_order(algebra: &QuatAlgebra) -> Result<IdealLattice> {
    let v: Quat = if algebra.l % 4 == 3 {
        vec![rat(0), rat(0), rat(1), rat(0)]
    } else {
        vec![ratio(1, 2), rat(0), ratio(1, 2), rat(0)]
    };
    let mut gens = o_basis(algebra);
    for p in p_basis(algebra) {
        gens.push(algebra.mul(&p, &v));
    }
    let order = IdealLattice::from_generators(algebra, &gens)?;
    if !order.contains(&algebra.one()) {
        return Err(Error::RingClosureFailure);
    }
    for i in 0..4 {
        for j in 0..4 {
            let prod = algebra.mul(&order.basis[i], &order.basis[j]);
            if !order.contains(&prod) {
                return Err(Error::RingClosureFailure);
            }
        }
    }
    let l2 = rat((algebra.l * algebra.l) as i64);
    if order.det_gram() != l2 {
        return Err(Error::DegenerateModule(format!(
            "order Gram determinant {} != l^2",
            order.det_gram()
        )));
    }
    Ok(order)
}

/// The left ideal D p, generated by the products d p with d in a basis of D
/// and p a basis element of a prime of K above 3.  Of the two conjugate
/// primes, the one generated by 3 and 1 - sqrt(-l) is used: with the prime
/// 3 o + (1 + sqrt(-l)) o that also enters the definition of D the product
/// turns out to be principal (at l = 17 it contains elements of norm 3), so
/// its theta series stay inside the span of those of D; the conjugate
/// choice gives the second ideal class.
pub fn left_ideal_dp(algebra: &QuatAlgebra, order: &IdealLattice) -> Result<IdealLattice> {
    let ob = o_basis(algebra);
    let three = algebra.from_k(rat(3), rat(0));
    let gen = algebra.from_k(rat(1), rat(-1));
    let mut pb = Vec::new();
    for w in &ob {
        pb.push(algebra.mul(&three, w));
        pb.push(algebra.mul(&gen, w));
    }
    let mut gens = Vec::new();
    for d in &order.basis {
        for p in &pb {
            gens.push(algebra.mul(d, p));
        }
    }
    let ideal = IdealLattice::from_generators(algebra, &gens)?;
    // left-D-invariance
    for d in &order.basis {
        for e in &ideal.basis {
            if !ideal.contains(&algebra.mul(d, e)) {
                return Err(Error::DegenerateModule("D I is not contained in I".into()));
            }
        }
    }
    Ok(ideal)
}

/// Dual lattice of L with respect to the bilinear form tr(x ybar) * scale.
pub fn dual_lattice(algebra: &QuatAlgebra, lattice: &IdealLattice, scale: &Rat) -> IdealLattice {
    let g: RatMat = lattice
        .gram
        .iter()
        .map(|row| row.iter().map(|v| v * scale).collect())
        .collect();
    let ginv = mat_inv(&g);
    let dual_basis = mat_mul(&ginv, &lattice.basis);
    // rebuild through from_generators to get the canonical HNF basis
    let gens: Vec<Quat> = dual_basis.to_vec();
    IdealLattice::from_generators(algebra, &gens).expect("dual lattice has full rank")
}

pub fn lattices_equal(a: &IdealLattice, b: &IdealLattice) -> bool {
    a.basis == b.basis
}

/// Enumerate all lattice points with reduced norm <= max_norm, grouped by
/// norm value, sorted by norm.  Coordinates are in the lattice basis.
pub fn enumerate_by_norm(
    lattice: &IdealLattice,
    max_norm: &Rat,
) -> Vec<(Rat, Vec<[i64; 4]>)> {
    // n(x) = (1/2) c G c^T for coordinates c; clear denominators of G
    let (gz, den) = clear_denominators(&lattice.gram);
    let gz: Vec<[i128; 4]> = gz
        .iter()
        .map(|row| {
            let mut r = [0i128; 4];
            for (j, v) in row.iter().enumerate() {
                r[j] = int_to_i128(v);
            }
            r
        })
        .collect();
    // n(x) <= max_norm  <=>  c Gz c^T <= 2 den max_norm
    let cap_rat = rat(2) * Rat::from_integer(den.clone()) * max_norm;
    let cap = cap_rat.floor().to_integer();
    let cap = int_to_i128(&cap);
    // box bounds: c_i^2 <= (c G c^T) (G^{-1})_{ii} <= 2 max_norm (G^{-1})_{ii}
    let ginv = mat_inv(&lattice.gram);
    let bounds: Vec<i64> = (0..4)
        .map(|i| {
            let m = rat(2) * max_norm * &ginv[i][i];
            isqrt_floor(&m) as i64
        })
        .collect();
    let two_den = 2i128 * int_to_i128(&den);
    let mut by_scaled: std::collections::BTreeMap<i128, Vec<[i64; 4]>> =
        std::collections::BTreeMap::new();
    for c0 in -bounds[0]..=bounds[0] {
        for c1 in -bounds[1]..=bounds[1] {
            for c2 in -bounds[2]..=bounds[2] {
                for c3 in -bounds[3]..=bounds[3] {
                    let c = [c0 as i128, c1 as i128, c2 as i128, c3 as i128];
                    let mut s = 0i128;
                    for i in 0..4 {
                        for j in 0..4 {
                            s += c[i] * gz[i][j] * c[j];
                        }
                    }
                    if s <= cap {
                        by_scaled.entry(s).or_default().push([c0, c1, c2, c3]);
                    }
                }
            }
        }
    }
    by_scaled
        .into_iter()
        .map(|(s, pts)| (Rat::new(BigInt::from(s), BigInt::from(two_den)), pts))
        .collect()
}

fn int_to_i128(v: &BigInt) -> i128 {
    use num::ToPrimitive;
    v.to_i128().expect("value fits in i128")
}

fn isqrt_floor(v: &Rat) -> u64 {
    if v.is_negative() || v.is_zero() {
        return 0;
    }
    let mut lo = 0u64;
    let mut hi = 1u64;
    while &(rat(hi as i64) * rat(hi as i64)) <= v {
        hi *= 2;
    }
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if &(rat(mid as i64) * rat(mid as i64)) <= v {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// The residue map pi: I -> D / sqrt(-l) D = F(l^2), pi(c) = lambda where
/// c = lambda c_0 (mod sqrt(-l) I).
#[derive(Debug, Clone)]
pub struct ResidueMap {
    pub l: u64,
    pub c0: Quat,
    smith_d: Vec<BigInt>,
    smith_q: Vec<Vec<BigInt>>,
    table: std::collections::HashMap<Vec<BigInt>, (i64, i64)>,
}

pub fn residue_map(
    algebra: &QuatAlgebra,
    ideal: &IdealLattice,
    field: &Fl2,
) -> Result<ResidueMap> {
    let l = algebra.l;
    let li = l as i64;
    // c0 in I with n(c0)/n(I) = 1 (mod l), smallest norm, then lexicographic
    let mut c0 = None;
    let mut bound = ideal.rednorm.clone();
    'search: for _ in 0..12 {
        bound = &bound * rat(4);
        for (nv, pts) in enumerate_by_norm(ideal, &bound) {
            let scaled = &nv / &ideal.rednorm;
            if !scaled.is_integer() {
                continue;
            }
            if ((scaled.to_integer() % li) + li) % li == BigInt::one() {
                // canonical pick among the minimal-norm candidates: positive
                // reduced trace first, then the largest ambient vector; this
                // chooses c0 = 1 for the unit ideal, making pi a ring map
                let best = pts
                    .iter()
                    .map(|p| ideal.element(p))
                    .max_by(|x, y| {
                        let tx = algebra.trace(x);
                        let ty = algebra.trace(y);
                        tx.cmp(&ty).then_with(|| {
                            for (a, b) in x.iter().zip(y.iter()) {
                                match a.cmp(b) {
                                    std::cmp::Ordering::Equal => continue,
                                    ord => return ord,
                                }
                            }
                            std::cmp::Ordering::Equal
                        })
                    })
                    .unwrap();
                c0 = Some(best);
                break 'search;
            }
        }
    }
    let c0 = c0.ok_or(Error::NoC0Found)?;
    // reducer for I / sqrt(-l) I
    let s = algebra.sqrt_ml();
    let sub_rows: Vec<Vec<BigInt>> = ideal
        .basis
        .iter()
        .map(|e| {
            ideal
                .coords(&algebra.mul(&s, e))
                .expect("sqrt(-l) I is contained in I")
        })
        .collect();
    let (smith_d, smith_q) = snf_reducer(&sub_rows);
    // coset table: lambda = a + 3 b u over (a, b) in (Z/l)^2, keyed by the
    // canonical residue of the coordinates of lambda c0
    let mut table = std::collections::HashMap::new();
    for a in 0..li {
        for b in 0..li {
            let lam: Quat = vec![rat(a), rat(0), rat(3 * b), rat(0)];
            let c = algebra.mul(&lam, &c0);
            let coords = ideal
                .coords(&c)
                .ok_or_else(|| Error::DegenerateModule("lambda c0 not in I".into()))?;
            let key = reduce_mod_lattice(&coords, &smith_d, &smith_q);
            if table.insert(key, (a, b)).is_some() {
                return Err(Error::DegenerateModule(
                    "residue classes collide; c0 is not invertible mod sqrt(-l)".into(),
                ));
            }
        }
    }
    // sanity: the map is a quadratic module isomorphism onto (F(l^2), n/l)
    let nl = &ideal.rednorm * rat(li);
    for a in 0..li {
        for b in 0..li {
            let lam: Quat = vec![rat(a), rat(0), rat(3 * b), rat(0)];
            let c = algebra.mul(&lam, &c0);
            let qc = frac_mod1(&(algebra.norm(&c) / &nl));
            let qf = frac_mod1(&ratio(field.norm((a, b)), li));
            if qc != qf {
                return Err(Error::DegenerateModule(format!(
                    "residue map does not preserve the quadratic form at ({a}, {b})"
                )));
            }
        }
    }
    Ok(ResidueMap { l, c0, smith_d, smith_q, table })
}

impl ResidueMap {
    /// Compose the identification with right multiplication by a norm-one
    /// unit g of F(l^2).  The result is another isometry of quadratic
    /// modules; when g is not a cube it lands in a different orbit under
    /// the norm-one group, which changes the theta span.
    pub fn twisted(&self, field: &Fl2, g: (i64, i64)) -> ResidueMap {
        assert_eq!(field.norm(g) % field.l() as i64, 1, "twist must have norm 1");
        let table = self
            .table
            .iter()
            .map(|(k, &v)| (k.clone(), field.mul(v, g)))
            .collect();
        ResidueMap {
            l: self.l,
            c0: self.c0.clone(),
            smith_d: self.smith_d.clone(),
            smith_q: self.smith_q.clone(),
            table,
        }
    }

    /// pi(c) for c given by integral coordinates in the ideal basis.
    pub fn pi_coords(&self, coords: &[BigInt]) -> (i64, i64) {
        let key = reduce_mod_lattice(coords, &self.smith_d, &self.smith_q);
        *self.table.get(&key).expect("residue table is total")
    }

    pub fn pi(&self, ideal: &IdealLattice, c: &[Rat]) -> Option<(i64, i64)> {
        ideal.coords(c).map(|coords| self.pi_coords(&coords))
    }

    /// Machine-integer lookup tables for hot loops.
    pub fn fast(&self) -> FastResidue {
        use num::{Integer, ToPrimitive};
        let mut d = [0i64; 4];
        let mut q = [[0i64; 4]; 4];
        for j in 0..4 {
            d[j] = self.smith_d[j].to_i64().expect("small invariant factor");
            for i in 0..4 {
                q[i][j] = self.smith_q[i][j]
                    .mod_floor(&self.smith_d[j])
                    .to_i64()
                    .expect("small reducer entry");
            }
        }
        let table = self
            .table
            .iter()
            .map(|(k, &v)| {
                let mut key = [0i64; 4];
                for (i, x) in k.iter().enumerate() {
                    key[i] = x.to_i64().expect("small residue key");
                }
                (key, v)
            })
            .collect();
        FastResidue { d, q, table }
    }
}

/// The residue map with i64 coordinate keys, for point enumeration loops.
#[derive(Debug, Clone)]
pub struct FastResidue {
    d: [i64; 4],
    q: [[i64; 4]; 4],
    table: std::collections::HashMap<[i64; 4], (i64, i64)>,
}

impl FastResidue {
    pub fn pi(&self, x: &[i64; 4]) -> (i64, i64) {
        let mut key = [0i64; 4];
        for j in 0..4 {
            let mut s = 0i64;
            for i in 0..4 {
                s += x[i].rem_euclid(self.d[j]) * self.q[i][j];
            }
            key[j] = s.rem_euclid(self.d[j]);
        }
        *self.table.get(&key).expect("residue table is total")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(l: u64) -> (QuatAlgebra, IdealLattice) {
        let a = build_algebra(l);
        let d = maximal_order(&a).unwrap();
        (a, d)
    }

    #[test]
    fn algebra_relations() {
        let a = build_algebra(5);
        let s = a.sqrt_ml();
        let u: Quat = vec![rat(0), rat(0), rat(1), rat(0)];
        // s^2 = -5, u^2 = -1/3
        assert_eq!(a.mul(&s, &s), vec![rat(-5), rat(0), rat(0), rat(0)]);
        assert_eq!(a.mul(&u, &u), vec![ratio(-1, 3), rat(0), rat(0), rat(0)]);
        // s u = -u s (alpha u = u alphabar)
        let su = a.mul(&s, &u);
        let us = a.mul(&u, &s);
        assert_eq!(su, vec![rat(0), rat(0), rat(0), rat(1)]);
        assert_eq!(us, vec![rat(0), rat(0), rat(0), rat(-1)]);
        // c cbar = n(c) for a generic element
        let c: Quat = vec![rat(1), rat(2), ratio(3, 2), rat(-1)];
        let prod = a.mul(&c, &a.conj(&c));
        assert_eq!(prod, vec![a.norm(&c), rat(0), rat(0), rat(0)]);
        // n is multiplicative
        let d: Quat = vec![rat(2), rat(-1), rat(1), ratio(1, 3)];
        assert_eq!(a.norm(&a.mul(&c, &d)), a.norm(&c) * a.norm(&d));
        // tr(x ybar) matches the ambient Gram
        assert_eq!(a.tr_pair(&c, &c), rat(2) * a.norm(&c));
    }

    #[test]
    fn maximal_orders_all_l() {
        for l in [5u64, 11, 17, 23] {
            let (a, d) = setup(l);
            assert_eq!(d.det_gram(), rat((l * l) as i64), "l = {l}");
            assert_eq!(d.rednorm, rat(1), "l = {l}");
            assert!(d.contains(&a.one()));
        }
    }

    #[test]
    fn unit_ideal_is_order() {
        // D generated as a left ideal by its own basis products is D itself
        let (a, d) = setup(5);
        let mut gens = Vec::new();
        for x in &d.basis {
            for y in &d.basis {
                gens.push(a.mul(x, y));
            }
        }
        let dd = IdealLattice::from_generators(&a, &gens).unwrap();
        assert!(lattices_equal(&d, &dd));
        assert_eq!(dd.rednorm, rat(1));
    }

    #[test]
    fn ideal_dp_at_17() {
        let (a, d) = setup(17);
        let dp = left_ideal_dp(&a, &d).unwrap();
        assert_eq!(d.index_of(&dp), Some(BigInt::from(9)));
        assert_eq!(dp.rednorm, rat(3));
        // every element of Dp lies in D
        for e in &dp.basis {
            assert!(d.contains(e));
        }
    }

    #[test]
    fn dual_of_sqrt_ml_d_is_d() {
        // Lemma (1): dual of sqrt(-l) D w.r.t. tr(x ybar)/l is D
        for l in [5u64, 11, 17, 23] {
            let (a, d) = setup(l);
            let sd = d.left_scaled(&a, &a.sqrt_ml()).unwrap();
            let dual = dual_lattice(&a, &sd, &ratio(1, l as i64));
            assert!(lattices_equal(&dual, &d), "l = {l}");
        }
    }

    #[test]
    fn dual_of_sqrt_ml_ideal_is_ideal_l17() {
        // Lemma (2) for I = Dp at l = 17 with the form n/(n(I) l)
        let (a, d) = setup(17);
        let dp = left_ideal_dp(&a, &d).unwrap();
        let sdp = dp.left_scaled(&a, &a.sqrt_ml()).unwrap();
        let dual = dual_lattice(&a, &sdp, &ratio(1, 3 * 17));
        assert!(lattices_equal(&dual, &dp));
    }

    #[test]
    fn enumeration_matches_norm() {
        let (a, d) = setup(5);
        let groups = enumerate_by_norm(&d, &rat(4));
        // reconstruct each point and check the exact norm
        let mut total = 0usize;
        for (nv, pts) in &groups {
            for p in pts {
                let x = d.element(p);
                assert_eq!(a.norm(&x), *nv);
                total += 1;
            }
        }
        // the zero vector is present exactly once
        assert_eq!(groups[0].0, rat(0));
        assert_eq!(groups[0].1, vec![[0, 0, 0, 0]]);
        assert!(total > 1);
        // independent box-scan oracle for the count with n <= 4
        let mut oracle = 0usize;
        for c0 in -20i64..=20 {
            for c1 in -20i64..=20 {
                for c2 in -20i64..=20 {
                    for c3 in -20i64..=20 {
                        let x = d.element(&[c0, c1, c2, c3]);
                        if a.norm(&x) <= rat(4) {
                            oracle += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(total, oracle);
    }

    #[test]
    fn residue_map_unit_ideal() {
        let (a, d) = setup(5);
        let f = Fl2::new(5);
        let rm = residue_map(&a, &d, &f).unwrap();
        // c0 = 1 works for the unit ideal
        assert_eq!(rm.c0, a.one());
        // pi(1) = 1, pi(3u) = omega
        assert_eq!(rm.pi(&d, &a.one()), Some((1, 0)));
        let threeu: Quat = vec![rat(0), rat(0), rat(3), rat(0)];
        assert_eq!(rm.pi(&d, &threeu), Some((0, 1)));
        // pi is a ring homomorphism on D
        for x in &d.basis {
            for y in &d.basis {
                let px = rm.pi(&d, x).unwrap();
                let py = rm.pi(&d, y).unwrap();
                let pxy = rm.pi(&d, &a.mul(x, y)).unwrap();
                assert_eq!(pxy, f.mul(px, py));
            }
        }
        // conjugation induces the Frobenius x -> x^l
        for x in &d.basis {
            let px = rm.pi(&d, x).unwrap();
            let pxbar = rm.pi(&d, &a.conj(x)).unwrap();
            assert_eq!(pxbar, f.frobenius(px));
        }
        // sqrt(-l) D maps to zero
        let s = a.sqrt_ml();
        for x in &d.basis {
            assert_eq!(rm.pi(&d, &a.mul(&s, x)), Some((0, 0)));
        }
    }

    #[test]
    fn residue_map_dp_at_17() {
        let a = build_algebra(17);
        let d = maximal_order(&a).unwrap();
        let dp = left_ideal_dp(&a, &d).unwrap();
        let f = Fl2::new(17);
        let rm = residue_map(&a, &dp, &f).unwrap();
        // n(c0)/n(I) = 1 (mod 17)
        let scaled = a.norm(&rm.c0) / &dp.rednorm;
        assert!(scaled.is_integer());
        assert_eq!(
            (scaled.to_integer() % 17 + 17) % 17,
            BigInt::one()
        );
        // pi surjects onto F(17^2)
        let mut seen = std::collections::HashSet::new();
        for (_, pts) in enumerate_by_norm(&dp, &rat(180)) {
            for p in pts {
                let coords: Vec<BigInt> =
                    p.iter().map(|&v| BigInt::from(v)).collect();
                seen.insert(rm.pi_coords(&coords));
            }
        }
        assert_eq!(seen.len(), 17 * 17);
    }
}
