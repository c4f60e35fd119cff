//! Spherical polynomials on the quaternion algebra and the vector valued
//! theta series theta(tau; I, p) attached to a left ideal I, together with
//! cusp-order solving, normalization, and character extraction.

use num::traits::{Signed, ToPrimitive, Zero};
use num::BigInt;
use rayon::prelude::*;

use crate::arith::{content, eta_power, frac_mod1, rat, ratio, QExp, Rat, VectorQExp};
use crate::linalg::{clear_denominators, nullspace, rank, RatMat};
use crate::quaternion::{IdealLattice, QuatAlgebra, ResidueMap};
use crate::rho::PhiTable;
use crate::{Error, Result};

/// A homogeneous polynomial on V in the fixed {1, s, u, su} coordinates,
/// with primitive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalPoly {
    pub degree: u32,
    pub terms: Vec<([u8; 4], BigInt)>,
}

impl SphericalPoly {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut m = Rat::from_integer(c.clone());
            for i in 0..4 {
                for _ in 0..e[i] {
                    m *= &x[i];
                }
            }
            acc += m;
        }
        acc
    }

    fn eval_int(&self, pows: &[[i128; 9]; 4]) -> i128 {
        let mut acc: i128 = 0;
        for (e, c) in &self.terms {
            let c = c.to_i128().expect("coefficient fits in i128");
            let m = pows[0][e[0] as usize]
                .checked_mul(pows[1][e[1] as usize])
                .and_then(|v| v.checked_mul(pows[2][e[2] as usize]))
                .and_then(|v| v.checked_mul(pows[3][e[3] as usize]))
                .and_then(|v| v.checked_mul(c))
                .expect("monomial value fits in i128");
            acc = acc.checked_add(m).expect("polynomial value fits in i128");
        }
        acc
    }

    /// Laplacian w.r.t. n, up to the positive factor 2l:
    /// sum_i w_i d_i^2 with w = (l, 1, 3l, 3).
    pub fn laplacian(&self, l: u64) -> SphericalPoly {
        let w = [l as i64, 1, 3 * l as i64, 3];
        let mut map: std::collections::BTreeMap<[u8; 4], BigInt> = Default::default();
        for (e, c) in &self.terms {
            for i in 0..4 {
                if e[i] >= 2 {
                    let mut t = *e;
                    t[i] -= 2;
                    let f = BigInt::from(w[i] * e[i] as i64 * (e[i] as i64 - 1));
                    *map.entry(t).or_default() += c * f;
                }
            }
        }
        let terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SphericalPoly { degree: self.degree.saturating_sub(2), terms }
    }
}

fn monomials(degree: u32) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            for c in 0..=degree - a - b {
                let d = degree - a - b - c;
                out.push([a as u8, b as u8, c as u8, d as u8]);
            }
        }
    }
    out
}

/// Basis of the homogeneous polynomials of the given degree annihilated by
/// the Laplacian of n(c); primitive integer coefficients, deterministic order.
pub fn spherical_basis(algebra: &QuatAlgebra, degree: u32) -> Vec<SphericalPoly> {
    let monos = monomials(degree);
    if degree < 2 {
        return monos
            .into_iter()
            .map(|e| SphericalPoly { degree, terms: vec![(e, BigInt::from(1))] })
            .collect();
    }
    let targets = monomials(degree - 2);
    let tindex: std::collections::HashMap<[u8; 4], usize> =
        targets.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let w = [algebra.l as i64, 1, 3 * algebra.l as i64, 3];
    let mut m: RatMat = vec![vec![Rat::zero(); monos.len()]; targets.len()];
    for (s, e) in monos.iter().enumerate() {
        for i in 0..4 {
            if e[i] >= 2 {
                let mut t = *e;
                t[i] -= 2;
                let f = rat(w[i] * e[i] as i64 * (e[i] as i64 - 1));
                m[tindex[&t]][s] += f;
            }
        }
    }
    nullspace(&m)
        .into_iter()
        .map(|v| {
            let (ints, _) = clear_denominators(&vec![v]);
            let mut row = ints.into_iter().next().unwrap();
            let mut g = BigInt::zero();
            for x in &row {
                g = num::Integer::gcd(&g, x);
            }
            if !g.is_zero() {
                for x in row.iter_mut() {
                    *x /= &g;
                }
            }
            if let Some(first) = row.iter().find(|x| !x.is_zero()) {
                if first.is_negative() {
                    for x in row.iter_mut() {
                        *x = -x.clone();
                    }
                }
            }
            let terms: Vec<([u8; 4], BigInt)> = monos
                .iter()
                .zip(row)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&e, c)| (e, c))
                .collect();
            SphericalPoly { degree, terms }
        })
        .collect()
}

/// theta(tau; I, p) for each p in `polys`, through `trunc` coefficients in
/// each component: component r collects weights Phi(pi(c))_r p(c) at
/// q^{n(c)/(n(I) l)}, which lies on the grid r/l + Z>=0.
pub fn theta_series(
    algebra: &QuatAlgebra,
    ideal: &IdealLattice,
    rmap: &ResidueMap,
    phi: &PhiTable,
    polys: &[SphericalPoly],
    trunc: usize,
) -> Vec<VectorQExp> {
    let l = algebra.l as i64;
    let dim = (l - 1) as usize;
    // scaled integer Gram: n(x) = (x Gz x^T) / (2 den_g)
    let (gz_big, den_g) = clear_denominators(&ideal.gram);
    let mut gz = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            gz[i][j] = gz_big[i][j].to_i128().expect("small Gram entry");
        }
    }
    // exponent step and component bases on the scaled-norm axis:
    // exponent e = s / step_rat with step_rat = 2 den_g n(I) l
    let step_rat = rat(2) * Rat::from_integer(den_g.clone()) * &ideal.rednorm * rat(l);
    assert!(step_rat.is_integer(), "scaled norms must lie on an integer grid");
    let step = step_rat.to_integer().to_i128().expect("small grid step");
    let base: Vec<i128> = (1..=dim as i128).map(|r| step * r / l as i128).collect();
    for r in 1..=dim as i128 {
        assert_eq!(step * r % l as i128, 0, "component offsets must be on-grid");
    }
    let cap = step * (trunc as i128 + 1);
    // box bounds from the Gram inverse
    let ginv = crate::linalg::mat_inv(&ideal.gram);
    let max_norm = &ideal.rednorm * rat(l) * rat(trunc as i64 + 1);
    let bounds: Vec<i64> = (0..4)
        .map(|i| rat_isqrt_floor(&(rat(2) * &max_norm * &ginv[i][i])) as i64)
        .collect();
    // scaled ambient coordinates: y = x Bz with basis = Bz / den_b
    let (bz_big, den_b) = clear_denominators(&ideal.basis);
    let mut bz = [[0i128; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            bz[i][j] = bz_big[i][j].to_i128().expect("small basis entry");
        }
    }
    let fast = rmap.fast();
    // phi lookup by a*l + b
    let phi_lut: Vec<Option<(usize, i64)>> = (0..l)
        .flat_map(|a| (0..l).map(move |b| (a, b)))
        .map(|x| phi.entry(x))
        .collect();
    let maxdeg = polys.iter().map(|p| p.degree).max().unwrap_or(0) as usize;
    assert!(maxdeg <= 8, "polynomial degree exceeds the fast-path bound");
    let slots = trunc + 1;
    let zero_acc = || vec![vec![0i128; dim * slots]; polys.len()];
    let acc = (-bounds[0]..=bounds[0])
        .into_par_iter()
        .fold(zero_acc, |mut acc, c0| {
            for c1 in -bounds[1]..=bounds[1] {
                for c2 in -bounds[2]..=bounds[2] {
                    for c3 in -bounds[3]..=bounds[3] {
                        let x = [c0, c1, c2, c3];
                        let xi = [c0 as i128, c1 as i128, c2 as i128, c3 as i128];
                        let mut s: i128 = 0;
                        for i in 0..4 {
                            for j in 0..4 {
                                s += xi[i] * gz[i][j] * xi[j];
                            }
                        }
                        if s == 0 || s >= cap {
                            continue;
                        }
                        let (a, b) = fast.pi(&x);
                        let (ridx, w) = match phi_lut[(a * l + b) as usize] {
                            Some(entry) => entry,
                            None => continue,
                        };
                        let rel = s - base[ridx];
                        debug_assert!(rel >= 0 && rel % step == 0);
                        let slot = (rel / step) as usize;
                        if slot >= slots {
                            continue;
                        }
                        let mut pows = [[0i128; 9]; 4];
                        for j in 0..4 {
                            let y: i128 = (0..4).map(|i| xi[i] * bz[i][j]).sum();
                            pows[j][0] = 1;
                            for d in 1..=maxdeg {
                                pows[j][d] = pows[j][d - 1]
                                    .checked_mul(y)
                                    .expect("coordinate power fits in i128");
                            }
                        }
                        for (p, poly) in polys.iter().enumerate() {
                            let v = poly.eval_int(&pows);
                            if v != 0 {
                                let cell = &mut acc[p][ridx * slots + slot];
                                *cell = cell
                                    .checked_add(w as i128 * v)
                                    .expect("coefficient fits in i128");
                            }
                        }
                    }
                }
            }
            acc
        })
        .reduce(zero_acc, |mut a, b| {
            for (pa, pb) in a.iter_mut().zip(b) {
                for (x, y) in pa.iter_mut().zip(pb) {
                    *x = x.checked_add(y).expect("coefficient fits in i128");
                }
            }
            a
        });
    polys
        .iter()
        .enumerate()
        .map(|(p, poly)| {
            let scale = Rat::from_integer(den_b.clone()).recip().pow(poly.degree as i32);
            let components = (0..dim)
                .map(|ridx| {
                    let coeffs: Vec<Rat> = (0..slots)
                        .map(|m| Rat::from_integer(BigInt::from(acc[p][ridx * slots + m])) * &scale)
                        .collect();
                    QExp::new(ratio(ridx as i64 + 1, l), coeffs)
                })
                .collect();
            VectorQExp { components }
        })
        .collect()
}

fn rat_isqrt_floor(v: &Rat) -> u64 {
    if !v.is_positive() {
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

fn flatten(series: &VectorQExp, trunc: usize) -> Vec<Rat> {
    let mut row = Vec::new();
    for c in &series.components {
        row.extend(c.coeffs()[..=trunc.min(c.trunc())].iter().cloned());
    }
    row
}

/// Rank of the Q-span of the series, from their coefficients through the
/// common valid range.
pub fn span_rank(series: &[VectorQExp]) -> usize {
    if series.is_empty() {
        return 0;
    }
    let trunc = series.iter().map(|s| s.trunc()).min().unwrap();
    let rows: RatMat = series.iter().map(|s| flatten(s, trunc)).collect();
    rank(&rows)
}

/// Rank with a stability check between two truncation depths.
pub fn stable_span_rank(
    low: &[VectorQExp],
    high: &[VectorQExp],
) -> Result<usize> {
    let r0 = span_rank(low);
    let r1 = span_rank(high);
    if r0 != r1 {
        return Err(Error::UnstableRank {
            n0: low.iter().map(|s| s.trunc()).min().unwrap_or(0),
            n1: high.iter().map(|s| s.trunc()).min().unwrap_or(0),
            r0,
            r1,
        });
    }
    Ok(r1)
}

/// Solve for the (projectively unique) combination of the series vanishing to
/// order delta at the cusp: all coefficients at exponents < delta must be
/// zero.  Returns one coefficient vector over the inputs.
pub fn cusp_solve(series: &[VectorQExp], delta: &Rat) -> Result<Vec<Rat>> {
    assert!(!series.is_empty());
    let trunc = series.iter().map(|s| s.trunc()).min().unwrap();
    // maximal independent subset, greedily in input order
    let mut kept: Vec<usize> = Vec::new();
    let mut rows: RatMat = Vec::new();
    for (i, s) in series.iter().enumerate() {
        let mut cand = rows.clone();
        cand.push(flatten(s, trunc));
        if rank(&cand) > rows.len() {
            rows = cand;
            kept.push(i);
        }
    }
    if kept.is_empty() {
        return Err(Error::NoSolution);
    }
    // condition matrix: rows = coefficient positions with exponent < delta
    let ncomp = series[0].components.len();
    let mut a: RatMat = Vec::new();
    for comp in 0..ncomp {
        for m in 0..=trunc {
            let e = series[0].components[comp].offset() + rat(m as i64);
            if &e < delta {
                a.push(
                    kept.iter()
                        .map(|&i| series[i].components[comp].coeff(m).clone())
                        .collect(),
                );
            }
        }
    }
    let ns = if a.is_empty() {
        // no conditions: solution space is everything
        crate::linalg::identity(kept.len())
    } else {
        nullspace(&a)
    };
    if ns.is_empty() {
        return Err(Error::NoSolution);
    }
    if ns.len() > 1 {
        return Err(Error::SolutionSpaceTooBig(ns.len()));
    }
    let mut out = vec![Rat::zero(); series.len()];
    for (slot, &i) in kept.iter().enumerate() {
        out[i] = ns[0][slot].clone();
    }
    Ok(out)
}

/// Linear combination of vector valued series.
pub fn combine(series: &[VectorQExp], coeffs: &[Rat]) -> VectorQExp {
    assert_eq!(series.len(), coeffs.len());
    let ncomp = series[0].components.len();
    let components = (0..ncomp)
        .map(|c| {
            let mut acc: Option<QExp> = None;
            for (s, v) in series.iter().zip(coeffs) {
                let t = s.components[c].scale(v);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t),
                });
            }
            acc.unwrap()
        })
        .collect();
    VectorQExp { components }
}

/// Rescale the series by the unique kappa making all coefficients integers
/// with no common factor and the first nonzero coefficient (in exponent
/// order, then component order) positive.  Returns (normalized, kappa).
pub fn normalize_integral(series: &VectorQExp) -> Result<(VectorQExp, Rat)> {
    let all = series.components.iter().flat_map(|c| c.coeffs().iter().cloned());
    let cont = content(all).ok_or(Error::ZeroSeries)?;
    let mut kappa = cont.recip();
    // leading coefficient across components, smallest exponent first
    let mut lead: Option<(Rat, usize)> = None;
    for (i, c) in series.components.iter().enumerate() {
        if let Some(e) = c.leading_exponent() {
            if lead.as_ref().map_or(true, |(le, _)| &e < le) {
                lead = Some((e, i));
            }
        }
    }
    let (le, li) = lead.ok_or(Error::ZeroSeries)?;
    if series.components[li].coeff_at(&le).unwrap().is_negative() {
        kappa = -kappa;
    }
    let components = series.components.iter().map(|c| c.scale(&kappa)).collect();
    Ok((VectorQExp { components }, kappa))
}

/// Multiply by eta^{-2k} and assign each component to its conformal weight:
/// component r goes to the h in `h_values` with
/// r/l - k/12 = h - c/24 (mod 1).  The assignment must be a bijection.
pub fn extract_characters(
    theta: &VectorQExp,
    k: i64,
    central_charge: &Rat,
    h_values: &[Rat],
) -> Result<Vec<(Rat, QExp)>> {
    let dim = theta.components.len();
    if h_values.len() != dim {
        return Err(Error::IndexMismatch(format!(
            "{} components vs {} conformal weights",
            dim,
            h_values.len()
        )));
    }
    let trunc = theta.trunc();
    let eta = eta_power(-2 * k, trunc);
    let mut out: Vec<Option<(Rat, QExp)>> = vec![None; dim];
    let mut used = vec![false; dim];
    for (i, comp) in theta.components.iter().enumerate() {
        let chi = eta.mul(comp);
        let target = frac_mod1(chi.offset());
        let mut hit = None;
        for (j, h) in h_values.iter().enumerate() {
            if !used[j] && frac_mod1(&(h - central_charge / rat(24))) == target {
                hit = Some(j);
                break;
            }
        }
        let j = hit.ok_or_else(|| {
            Error::IndexMismatch(format!("no conformal weight matches component {}", i + 1))
        })?;
        used[j] = true;
        // re-grid to the exact exponent h - c/24; earlier slots must vanish
        let target = &h_values[j] - central_charge / rat(24);
        let d = &target - chi.offset();
        if !d.is_integer() || d.is_negative() {
            return Err(Error::IndexMismatch(format!(
                "component {} starts below its conformal weight",
                i + 1
            )));
        }
        let d: usize = d.to_integer().try_into().map_err(|_| {
            Error::IndexMismatch("offset shift out of range".into())
        })?;
        if d > chi.trunc() || chi.coeffs()[..d].iter().any(|v| !v.is_zero()) {
            return Err(Error::IndexMismatch(format!(
                "component {} has support below q^(h - c/24)",
                i + 1
            )));
        }
        let mut trimmed = QExp::new(target, chi.coeffs()[d..].to_vec());
        // Pin the per-character sign: the theta construction determines each
        // component only up to a constant, and a character's leading
        // coefficient must be positive.
        if trimmed
            .coeffs()
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_negative())
        {
            trimmed = trimmed.neg();
        }
        out[i] = Some((h_values[j].clone(), trimmed));
    }
    let mut chars: Vec<(Rat, QExp)> = out.into_iter().map(|v| v.unwrap()).collect();
    chars.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(chars)
}

/// Numeric check of F|_k S = rho(S) F at tau0 (default i): returns the
/// maximum absolute deviation over components, using the truncated series.
pub fn numeric_transform_check(
    theta: &VectorQExp,
    weight: i64,
    rho_s: &[Vec<(f64, f64)>],
    tau0: (f64, f64),
) -> f64 {
    use num::complex::Complex64;
    let tau = Complex64::new(tau0.0, tau0.1);
    let stau = -1.0 / tau;
    let eval = |comp: &QExp, t: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in comp.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = comp.offset().to_f64().unwrap() + m as f64;
            let z = Complex64::new(0.0, 2.0 * std::f64::consts::PI) * e * t;
            acc += c.to_f64().unwrap() * z.exp();
        }
        acc
    };
    let f_tau: Vec<Complex64> = theta.components.iter().map(|c| eval(c, tau)).collect();
    let f_stau: Vec<Complex64> = theta.components.iter().map(|c| eval(c, stau)).collect();
    let wfac = tau.powi(-(weight as i32));
    let mut err = 0.0f64;
    for (r, row) in rho_s.iter().enumerate() {
        let mut rhs = Complex64::new(0.0, 0.0);
        for (s, &(re, im)) in row.iter().enumerate() {
            rhs += Complex64::new(re, im) * f_tau[s];
        }
        let lhs = wfac * f_stau[r];
        err = err.max((lhs - rhs).norm());
    }
    err
}
