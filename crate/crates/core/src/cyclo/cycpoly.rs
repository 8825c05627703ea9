//! Univariate polynomials over Q(zeta_n) and root finding inside the field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::num::CycNum;
use super::qpoly::QPoly;
use super::zfactor::factor_rational;

/// Dense polynomial with CycNum coefficients in ascending order; all coefficients share an order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    order: u32,
    coeffs: Vec<CycNum>,
}

/// Result of splitting a polynomial over its coefficient field.
#[derive(Clone, Debug)]
pub struct RootSplit {
    /// Distinct roots with multiplicities, in canonical order.
    pub roots: Vec<(CycNum, usize)>,
    /// Degrees of the distinct irreducible factors of degree > 1.
    pub nonlinear_degrees: Vec<usize>,
}

impl RootSplit {
    pub fn splits(&self) -> bool {
        self.nonlinear_degrees.is_empty()
    }
}

impl CycPoly {
    pub fn new(coeffs: Vec<CycNum>, order: u32) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(order).expect("coefficient order must divide"))
            .collect();
        CycPoly { order, coeffs }.trimmed()
    }

    pub fn zero(order: u32) -> Self {
        CycPoly {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        CycPoly {
            order,
            coeffs: vec![CycNum::one(order)],
        }
    }

    /// x - r
    pub fn linear(r: &CycNum) -> Self {
        let order = r.order();
        CycPoly {
            order,
            coeffs: vec![-r, CycNum::one(order)],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, o: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = CycNum::zero(self.order);
        CycPoly {
            order: self.order,
            coeffs: (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        }
        .trimmed()
    }

    pub fn sub(&self, o: &CycPoly) -> CycPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = CycNum::zero(self.order);
        CycPoly {
            order: self.order,
            coeffs: (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        }
        .trimmed()
    }

    pub fn mul(&self, o: &CycPoly) -> CycPoly {
        if self.is_zero() || o.is_zero() {
            return CycPoly::zero(self.order);
        }
        let mut out = vec![CycNum::zero(self.order); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        CycPoly {
            order: self.order,
            coeffs: out,
        }
        .trimmed()
    }

    pub fn scale(&self, c: &CycNum) -> CycPoly {
        CycPoly {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .trimmed()
    }

    pub fn divrem(&self, d: &CycPoly) -> (CycPoly, CycPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (CycPoly::zero(self.order), self.clone());
        }
        let inv = d.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![CycNum::zero(self.order); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let t = &c * dj;
                rem[i + j] -= &t;
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (
            CycPoly {
                order: self.order,
                coeffs: quo,
            }
            .trimmed(),
            CycPoly {
                order: self.order,
                coeffs: rem,
            }
            .trimmed(),
        )
    }

    pub fn monic(&self) -> CycPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn gcd(&self, o: &CycPoly) -> CycPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> CycPoly {
        CycPoly {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * CycNum::from_int(i as i64, self.order))
                .collect(),
        }
        .trimmed()
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// p(x + c)
    pub fn shift(&self, c: &CycNum) -> CycPoly {
        let mut acc = CycPoly::zero(self.order);
        let lin = CycPoly {
            order: self.order,
            coeffs: vec![c.clone(), CycNum::one(self.order)],
        };
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(
                &CycPoly {
                    order: self.order,
                    coeffs: vec![a.clone()],
                }
                .trimmed(),
            );
        }
        acc
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> CycPoly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Norm down to Q: the product of all Galois conjugates, computed as the determinant
    /// of multiplication by p on Q[x]-coordinates of K[x].
    pub fn norm(&self) -> QPoly {
        let n = self.order;
        let phi = CycNum::zero(n).coeffs().len();
        // column l holds p * zeta^l, written as phi polynomials in x
        let mut mat: Vec<Vec<QPoly>> = vec![vec![QPoly::zero(); phi]; phi];
        for l in 0..phi {
            let zl = CycNum::zeta_pow(n, l as i64);
            for (deg, a) in self.coeffs.iter().enumerate() {
                let prod = a * &zl;
                for (r, c) in prod.coeffs().iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut mono = vec![BigRational::zero(); deg + 1];
                    mono[deg] = c.clone();
                    mat[r][l] = mat[r][l].add(&QPoly(mono));
                }
            }
        }
        bareiss_det(mat)
    }

    /// Distinct roots in Q(zeta_n) with multiplicity, plus the degrees of the non-linear
    /// irreducible factors (Trager's norm method on the squarefree part).
    pub fn roots_in_field(&self) -> RootSplit {
        let mut roots: Vec<(CycNum, usize)> = Vec::new();
        let mut nonlinear = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return RootSplit {
                roots,
                nonlinear_degrees: nonlinear,
            };
        }
        let sf = self.squarefree_part();
        let mut found = Vec::new();
        if let Some(rs) = monomial_roots(&sf) {
            found = rs;
        } else {
            let zeta = CycNum::zeta_pow(self.order, 1);
            let mut s = 0i64;
            let (shift, normp) = loop {
                let c = zeta.scale(&BigRational::from_integer(BigInt::from(-s)));
                let shifted = sf.shift(&c);
                let nm = shifted.norm();
                if nm.is_squarefree() {
                    break (s, nm);
                }
                s = if s <= 0 { 1 - s } else { -s };
            };
            let back = zeta.scale(&BigRational::from_integer(BigInt::from(shift)));
            for (h, _) in factor_rational(&normp) {
                let hk = CycPoly::new(
                    h.0.iter()
                        .map(|c| CycNum::from_rational(c.clone(), self.order))
                        .collect(),
                    self.order,
                );
                let g = sf.gcd(&hk.shift(&back));
                match g.degree() {
                    Some(1) => found.push(-&g.coeffs[0]),
                    Some(0) | None => {}
                    Some(d) => nonlinear.push(d),
                }
            }
        }
        let mut rest = self.clone();
        for r in found {
            let lin = CycPoly::linear(&r);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            roots.push((r, mult));
        }
        roots.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        RootSplit {
            roots,
            nonlinear_degrees: nonlinear,
        }
    }
}

/// Roots of x^k - c when c is a power of zeta_n and all k roots lie in the field.
fn monomial_roots(p: &CycPoly) -> Option<Vec<CycNum>> {
    let k = p.degree()?;
    if k == 0 || p.coeffs[1..k].iter().any(|c| !c.is_zero()) || !p.coeffs[k].is_one() {
        return None;
    }
    let c = -&p.coeffs[0];
    let e = c.root_exponent()? as u64;
    let n = p.order as u64;
    // zeta^m with k*m = e (mod n)
    let sols: Vec<u64> = (0..n).filter(|m| (k as u64 * m) % n == e).collect();
    if sols.len() != k {
        return None;
    }
    Some(
        sols.into_iter()
            .map(|m| CycNum::zeta_pow(p.order, m as i64))
            .collect(),
    )
}

/// Determinant of a square matrix over Q[x] by fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<QPoly>>) -> QPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = QPoly::constant(BigRational::one());
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                None => return QPoly::zero(),
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.divrem(&prev).0;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.scale(&-BigRational::one())
    } else {
        det
    }
}
