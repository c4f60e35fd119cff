//! Finite quadratic modules, Gauss sums, the properness cocycle, Weil
//! representation operators, and the Milgram discriminant-form identity.

use crate::arith::{frac_mod1, rat, ratio, Cyclo, Rat};
use crate::linalg::{self, IntMat, RatMat};
use crate::{Error, Result};
use num::traits::Zero;
use num::{BigInt, Integer};
use std::collections::HashMap;

/// A finite abelian group with a non-degenerate Q/Z-valued quadratic form.
///
/// Elements are tuples of residues against fixed cyclic generators; the
/// form is stored as a rational in [0, 1) per element.
#[derive(Debug, Clone)]
pub struct QuadraticModule {
    orders: Vec<u64>,
    elements: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    qvals: Vec<Rat>,
    level: u64,
}

impl QuadraticModule {
    pub fn new(orders: Vec<u64>, qform: impl Fn(&[i64]) -> Rat) -> Result<Self> {
        assert!(!orders.is_empty() && orders.iter().all(|&d| d >= 1));
        let mut elements = vec![vec![]];
        for &d in &orders {
            let mut next = Vec::with_capacity(elements.len() * d as usize);
            for e in &elements {
                for v in 0..d as i64 {
                    let mut e2 = e.clone();
                    e2.push(v);
                    next.push(e2);
                }
            }
            elements = next;
        }
        let qvals: Vec<Rat> = elements.iter().map(|e| frac_mod1(&qform(e))).collect();
        let index: HashMap<Vec<i64>, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut level = 1u64;
        for q in &qvals {
            let d: u64 = q.denom().try_into().map_err(|_| {
                Error::DegenerateModule("level overflow".into())
            })?;
            level = level.lcm(&d);
        }
        let m = QuadraticModule { orders, elements, index, qvals, level };
        m.validate()?;
        Ok(m)
    }

    /// The quadratic module (F(l^2), n(x)/l) with F(l^2) = (Z/l)[omega],
    /// omega^2 = -3, and n(a + b omega) = a^2 + 3 b^2.
    pub fn fl2(l: u64) -> Self {
        QuadraticModule::new(vec![l, l], |e| {
            let (a, b) = (e[0], e[1]);
            ratio((a * a + 3 * b * b).rem_euclid(l as i64), l as i64)
        })
        .expect("(F(l^2), n/l) is a quadratic module")
    }

    /// Discriminant form of an even integral lattice with bilinear Gram
    /// matrix `gram` (so the quadratic form is Q(x) = x gram x' / 2).
    pub fn discriminant_form(gram: &IntMat) -> Result<Self> {
        let n = gram.len();
        for i in 0..n {
            assert!(gram[i][i].is_even(), "lattice is not even");
        }
        let (d, q) = linalg::snf_reducer(gram);
        let qinv = int_mat_inv_unimodular(&q);
        let gram_rat: RatMat = gram
            .iter()
            .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        let ginv = linalg::mat_inv(&gram_rat);
        let orders: Vec<u64> = d.iter().map(|x| x.try_into().unwrap()).collect();
        QuadraticModule::new(orders, |z| {
            // representative in dual-basis coordinates: w = z * qinv
            let w: Vec<Rat> = (0..n)
                .map(|j| {
                    let s: BigInt = (0..n).map(|i| BigInt::from(z[i]) * &qinv[i][j]).sum();
                    Rat::from_integer(s)
                })
                .collect();
            let mut acc = Rat::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &w[i] * &ginv[i][j] * &w[j];
                }
            }
            frac_mod1(&(acc / rat(2)))
        })
    }

    fn validate(&self) -> Result<()> {
        // Q(-x) = Q(x)
        for i in 0..self.len() {
            let ni = self.neg(i);
            if self.qvals[i] != self.qvals[ni] {
                return Err(Error::DegenerateModule("Q(-x) != Q(x)".into()));
            }
        }
        // bilinearity of B against each generator
        let gens: Vec<usize> = (0..self.orders.len())
            .map(|k| {
                let mut e = vec![0i64; self.orders.len()];
                e[k] = 1 % self.orders[k] as i64;
                self.index[&e]
            })
            .collect();
        for &g in &gens {
            for x in 0..self.len() {
                for &y in &gens {
                    let lhs = self.bilinear(self.add(x, y), g);
                    let rhs = frac_mod1(&(self.bilinear(x, g) + self.bilinear(y, g)));
                    if lhs != rhs {
                        return Err(Error::DegenerateModule("B is not bilinear".into()));
                    }
                }
            }
        }
        // non-degeneracy
        for x in 1..self.len() {
            if (0..self.len()).all(|y| self.bilinear(x, y).is_zero()) {
                return Err(Error::DegenerateModule(format!(
                    "element {:?} pairs trivially with everything",
                    self.elements[x]
                )));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn element_index(&self, e: &[i64]) -> usize {
        self.index[e]
    }

    pub fn qval(&self, x: usize) -> &Rat {
        &self.qvals[x]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let e: Vec<i64> = self.elements[x]
            .iter()
            .zip(&self.elements[y])
            .zip(&self.orders)
            .map(|((a, b), &d)| (a + b).rem_euclid(d as i64))
            .collect();
        self.index[&e]
    }

    pub fn neg(&self, x: usize) -> usize {
        let e: Vec<i64> = self.elements[x]
            .iter()
            .zip(&self.orders)
            .map(|(a, &d)| (-a).rem_euclid(d as i64))
            .collect();
        self.index[&e]
    }

    /// B(x, y) = Q(x+y) - Q(x) - Q(y), reduced into [0, 1).
    pub fn bilinear(&self, x: usize, y: usize) -> Rat {
        let s = self.add(x, y);
        frac_mod1(&(&self.qvals[s] - &self.qvals[x] - &self.qvals[y]))
    }

    /// gamma(a) = sum_x e(a Q(x)) as an exact cyclotomic number mod level.
    pub fn gauss_sum(&self, a: i64) -> Cyclo {
        let m = self.level;
        let mut acc = Cyclo::zero(m);
        for q in &self.qvals {
            let scaled = q * rat(a) * rat(m as i64);
            debug_assert!(scaled.is_integer());
            let j = scaled.to_integer().mod_floor(&BigInt::from(m));
            acc = acc.add(&Cyclo::root(m, j.to_string().parse().unwrap()));
        }
        acc
    }

    /// co(a) = gamma(a) / gamma(1), an eighth root of unity for a coprime
    /// to the level.
    pub fn cocycle(&self, a: i64) -> Result<Cyclo> {
        let am = a.rem_euclid(self.level as i64) as u64;
        if am.gcd(&self.level) != 1 {
            return Err(Error::NotCoprime { a, m: self.level });
        }
        Ok(self.gauss_sum(a).div(&self.gauss_sum(1)))
    }

    /// True iff the cocycle takes values in {+1, -1}.
    pub fn is_proper(&self) -> bool {
        let one = Cyclo::one(self.level);
        let minus_one = one.neg();
        (1..self.level)
            .filter(|a| a.gcd(&self.level) == 1)
            .all(|a| {
                let co = self.cocycle(a as i64).unwrap();
                co == one || co == minus_one
            })
    }

    /// Materialize the operators of the Weil representation.
    pub fn weil_operators(&self) -> Result<WeilOperators> {
        if !self.is_proper() {
            return Err(Error::NotProper);
        }
        let m = self.level;
        let n = self.len();
        let op_t: Vec<Cyclo> = self.qvals.iter().map(|q| Cyclo::e(m, q)).collect();
        let gamma1_inv = self.gauss_sum(1).inv();
        let mut op_s = vec![vec![Cyclo::zero(m); n]; n];
        for x in 0..n {
            for y in 0..n {
                let b = self.bilinear(x, y);
                op_s[x][y] = Cyclo::e(m, &frac_mod1(&-b)).mul(&gamma1_inv);
            }
        }
        Ok(WeilOperators { dim: n, level: m, op_t, op_s, proper: true })
    }
}

/// The T- and S-operators of a proper Weil representation, acting on
/// functions f: M -> C by (f|T)(x) = e(Q(x)) f(x) and
/// (f|S)(x) = gamma(1)^{-1} sum_y e(-B(x,y)) f(y).
pub struct WeilOperators {
    pub dim: usize,
    pub level: u64,
    op_t: Vec<Cyclo>,
    op_s: Vec<Vec<Cyclo>>,
    pub proper: bool,
}

impl WeilOperators {
    pub fn apply_t(&self, f: &[Cyclo]) -> Vec<Cyclo> {
        f.iter().zip(&self.op_t).map(|(v, d)| v.mul(d)).collect()
    }

    pub fn apply_s(&self, f: &[Cyclo]) -> Vec<Cyclo> {
        (0..self.dim)
            .map(|x| {
                let mut acc = Cyclo::zero(self.level);
                for (y, v) in f.iter().enumerate() {
                    if !v.is_zero() {
                        acc = acc.add(&self.op_s[x][y].mul(v));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn op_t_diag(&self) -> &[Cyclo] {
        &self.op_t
    }

    pub fn op_s_matrix(&self) -> &Vec<Vec<Cyclo>> {
        &self.op_s
    }

    /// Exact check of omega(S)^4 = id, (omega(S) omega(T))^3 = omega(S)^2
    /// and omega(T)^level = id on every basis delta function.
    pub fn check_relations(&self) -> bool {
        let all: Vec<usize> = (0..self.dim).collect();
        self.check_relations_on(&all)
    }

    /// The same relations restricted to the delta functions at `basis`;
    /// the full check is cubic in the module size, so large modules are
    /// spot-checked on a few generators instead.
    pub fn check_relations_on(&self, basis: &[usize]) -> bool {
        for &b in basis {
            let mut f = vec![Cyclo::zero(self.level); self.dim];
            f[b] = Cyclo::one(self.level);
            // S^4 = id
            let mut g = f.clone();
            for _ in 0..4 {
                g = self.apply_s(&g);
            }
            if g != f {
                return false;
            }
            // (S T)^3 = S^2, applying S first per the right action f|S|T
            let mut lhs = f.clone();
            for _ in 0..3 {
                lhs = self.apply_t(&self.apply_s(&lhs));
            }
            let rhs = self.apply_s(&self.apply_s(&f));
            if lhs != rhs {
                return false;
            }
        }
        // T^level = id holds since the diagonal entries are level-th roots
        self.op_t.iter().all(|d| d.pow(self.level) == Cyclo::one(self.level))
    }
}

/// Milgram's identity for an even integral lattice of rank 2r with bilinear
/// Gram matrix `gram`: the discriminant-form Gauss sum gamma(1) satisfies
/// gamma(1)^2 = (-1)^r [L#:L], compared exactly in the cyclotomic field.
pub fn milgram_check(gram: &IntMat) -> Result<bool> {
    let n = gram.len();
    assert!(n % 2 == 0, "Milgram's identity needs even rank");
    let r = (n / 2) as i64;
    let disc = QuadraticModule::discriminant_form(gram)?;
    let g1 = disc.gauss_sum(1);
    let det: BigInt = {
        let gr: RatMat = gram
            .iter()
            .map(|row| row.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect();
        linalg::det(&gr).to_integer()
    };
    let sign = if r % 2 == 0 { 1 } else { -1 };
    let expect = Cyclo::from_rat(disc.level(), Rat::from_integer(det * sign));
    Ok(g1.mul(&g1) == expect)
}

fn int_mat_inv_unimodular(q: &IntMat) -> IntMat {

    let qr: RatMat = q
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    let inv = linalg::mat_inv(&qr);
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer());
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bilinear_basics_on_fl2() {
        let m = QuadraticModule::fl2(5);
        let zero = m.element_index(&[0, 0]);
        for y in 0..m.len() {
            assert!(m.bilinear(zero, y).is_zero());
        }
        for x in 0..m.len() {
            let two_q = frac_mod1(&(m.qval(x) * rat(2)));
            assert_eq!(m.bilinear(x, x), two_q);
        }
        // B(1, 1) = tr(1)/5 = 2/5
        let one = m.element_index(&[1, 0]);
        assert_eq!(m.bilinear(one, one), ratio(2, 5));
    }

    #[test]
    fn gauss_sum_values() {
        for l in [5u64, 11] {
            let m = QuadraticModule::fl2(l);
            assert_eq!(m.gauss_sum(1), Cyclo::from_rat(l, rat(-(l as i64))));
            assert_eq!(m.gauss_sum(0), Cyclo::from_rat(l, rat((l * l) as i64)));
            assert_eq!(m.gauss_sum(2), Cyclo::from_rat(l, rat(-(l as i64))));
        }
    }

    #[test]
    fn gauss_sum_absolute_value() {
        let m = QuadraticModule::fl2(5);
        for a in [1i64, 2, 3, 4] {
            let g = m.gauss_sum(a);
            let norm = g.mul(&g.conj());
            assert_eq!(norm, Cyclo::from_rat(5, rat(25)));
        }
    }

    #[test]
    fn cocycle_on_fl2_is_trivial() {
        let m = QuadraticModule::fl2(5);
        for a in [1i64, 2, 3, 4] {
            assert_eq!(m.cocycle(a).unwrap(), Cyclo::one(5));
        }
        assert!(m.cocycle(5).is_err());
        // cocycle relation co(2)^{sigma_3} co(3) = co(6)
        let lhs = m.cocycle(2).unwrap().galois(3).unwrap().mul(&m.cocycle(3).unwrap());
        assert_eq!(lhs, m.cocycle(6).unwrap());
        assert!(m.is_proper());
    }

    #[test]
    fn z2_with_quarter_form_is_not_proper() {
        // (Z/2, Q(1) = 1/4): gamma(1) = 1 + i, co(3) = (1-i)/(1+i) = -i
        let m = QuadraticModule::new(vec![2], |e| ratio(e[0] * e[0], 4)).unwrap();
        assert_eq!(m.level(), 4);
        let g1 = m.gauss_sum(1);
        assert_eq!(g1, Cyclo::one(4).add(&Cyclo::root(4, 1)));
        assert_eq!(m.cocycle(3).unwrap(), Cyclo::root(4, 1).neg());
        assert!(!m.is_proper());
    }

    #[test]
    fn z3_module_properness_by_brute_force() {
        // (Z/3, Q(x) = x^2/3): gamma(1) = 1 + 2 zeta_3... evaluate directly
        let m = QuadraticModule::new(vec![3], |e| ratio(e[0] * e[0], 3)).unwrap();
        let co2 = m.cocycle(2).unwrap();
        let one = Cyclo::one(3);
        // gamma(a) = gamma(1)^{sigma_a} so co(2) = gamma(1)^{sigma_2 - 1}
        assert_eq!(m.gauss_sum(2), m.gauss_sum(1).galois(2).unwrap());
        assert_eq!(m.is_proper(), co2 == one || co2 == one.neg());
    }

    #[test]
    fn weil_relations_small_module() {
        let m = QuadraticModule::fl2(5);
        let ops = m.weil_operators().unwrap();
        assert_eq!(ops.dim, 25);
        assert!(ops.check_relations());
    }

    #[test]
    fn weil_refuses_improper_module() {
        let m = QuadraticModule::new(vec![2], |e| ratio(e[0] * e[0], 4)).unwrap();
        assert!(matches!(m.weil_operators(), Err(Error::NotProper)));
    }

    #[test]
    fn ops_concentrate_constants_at_zero() {
        let m = QuadraticModule::fl2(5);
        let ops = m.weil_operators().unwrap();
        let f = vec![Cyclo::one(5); m.len()];
        let g = ops.apply_s(&f);
        // sum_y e(-B(x,y)) = |M| [x = 0] by non-degeneracy
        let gamma1_inv = m.gauss_sum(1).inv();
        let zero = m.element_index(&[0, 0]);
        for (x, v) in g.iter().enumerate() {
            if x == zero {
                assert_eq!(v, &gamma1_inv.scale(&rat(25)));
            } else {
                assert!(v.is_zero());
            }
        }
    }

    #[test]
    fn milgram_rank_two_example() {
        // Gram 2*I2: discriminant group (Z/2)^2, gauss sum 2i, squared -4
        let gram: IntMat = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ];
        assert!(milgram_check(&gram).unwrap());
    }
}
