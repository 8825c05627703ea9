use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{field, lcm, CycField};
use crate::error::{Result, YdhError};

/// An element of Q(zeta_n), stored as its coordinates in the power basis
/// 1, zeta, ..., zeta^(phi(n)-1). The representation is always reduced, so two
/// numbers of the same order are equal exactly when their coordinates agree.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        let field = field(order);
        let coeffs = vec![BigRational::zero(); field.phi];
        CycNum { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(BigRational::one(), order)
    }

    pub fn from_rational(r: BigRational, order: u32) -> Self {
        let mut x = Self::zero(order);
        x.coeffs[0] = r;
        x
    }

    pub fn from_int(i: i64, order: u32) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(i)), order)
    }

    pub fn from_frac(num: i64, den: i64, order: u32) -> Self {
        Self::from_rational(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            order,
        )
    }

    /// Build from arbitrary power-basis-like coordinates: `c[k]` multiplies zeta^k for any k.
    pub fn from_powers(c: &[BigRational], order: u32) -> Self {
        let field = field(order);
        let mut coeffs = vec![BigRational::zero(); field.phi];
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (i, p) in field.power(k as i64).iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += ck * BigRational::from_integer(p.clone());
                }
            }
        }
        CycNum { field, coeffs }
    }

    /// zeta_order^k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let field = field(order);
        let coeffs = field
            .power(k)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CycNum { field, coeffs }
    }

    /// The primitive `root_order`-th root of unity zeta_n^(n/root_order) inside Q(zeta_n).
    pub fn root_of_unity(root_order: u32, order: u32) -> Result<Self> {
        if root_order == 0 || order % root_order != 0 {
            return Err(YdhError::NonDivisibleOrders {
                from: root_order,
                to: order,
            });
        }
        Ok(Self::zeta_pow(order, (order / root_order) as i64))
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this number lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Exponent k with self == zeta_n^k, if self is such a power.
    pub fn root_exponent(&self) -> Option<u32> {
        let n = self.field.order;
        (0..n).find(|&k| {
            self.field
                .power(k as i64)
                .iter()
                .zip(&self.coeffs)
                .all(|(p, c)| c.denom().is_one() && c.numer() == p)
        })
    }

    /// Re-express in Q(zeta_to); requires order | to.
    pub fn embed(&self, to: u32) -> Result<Self> {
        let from = self.field.order;
        if to == 0 || to % from != 0 {
            return Err(YdhError::NonDivisibleOrders { from, to });
        }
        if to == from {
            return Ok(self.clone());
        }
        let step = (to / from) as i64;
        let target = field(to);
        let mut coeffs = vec![BigRational::zero(); target.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in target.power(j as i64 * step).iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += c * BigRational::from_integer(p.clone());
                }
            }
        }
        Ok(CycNum {
            field: target,
            coeffs,
        })
    }

    fn aligned(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let n = lcm(a.field.order, b.field.order);
        (a.embed(n).unwrap(), b.embed(n).unwrap())
    }

    fn same_order(&self, other: &CycNum) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.order == other.field.order
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero(self.order());
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let phi = self.field.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..phi].to_vec();
        for (k, c) in prod.iter().enumerate().skip(phi) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.field.powers[k].iter().enumerate() {
                if !p.is_zero() {
                    coeffs[i] += c * BigRational::from_integer(p.clone());
                }
            }
        }
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(YdhError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(r.recip(), self.order()));
        }
        // solve (x * y) = 1 for y via the multiplication matrix of x
        let phi = self.field.phi;
        let order = self.order();
        let mut m: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_same(&CycNum::zeta_pow(order, j as i64));
            for i in 0..phi {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        m[0][phi] = BigRational::one();
        for c in 0..phi {
            let p = (c..phi)
                .find(|&r| !m[r][c].is_zero())
                .ok_or(YdhError::DivisionByZero)?;
            m.swap(c, p);
            let pv = m[c][c].clone();
            for k in c..=phi {
                m[c][k] = &m[c][k] / &pv;
            }
            for r in 0..phi {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=phi {
                        let t = &f * &m[c][k];
                        m[r][k] -= t;
                    }
                }
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs: m.into_iter().map(|row| row[phi].clone()).collect(),
        })
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> CycNum {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let mut result = CycNum::one(self.order());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        result
    }

    /// Deterministic total order: by field order, then coordinates lexicographically.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        self.field.order.cmp(&other.field.order).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Canonical text form, e.g. `1/2 - 1/2*z^3`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            match k {
                0 => out.push_str(&coef),
                _ => {
                    if !abs.is_one() {
                        out.push_str(&coef);
                        out.push('*');
                    }
                    out.push('z');
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse the scalar syntax (`1/2 - 1/2*z^3`, `-z`, `3*z^2 + 1`); powers of z may exceed
    /// the field degree and are reduced. Errors carry a 1-based column.
    pub fn parse(s: &str, order: u32) -> std::result::Result<CycNum, (usize, String)> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0usize;
        let skip_ws = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if *pos == start {
                None
            } else {
                chars[start..*pos].iter().collect::<String>().parse().ok()
            }
        };
        let mut terms: Vec<BigRational> = Vec::new();
        let mut first = true;
        skip_ws(&mut pos);
        if pos >= chars.len() {
            return Err((pos + 1, "scalar".into()));
        }
        while pos < chars.len() {
            let mut neg = false;
            if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
                neg = chars[pos] == '-';
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err((pos + 1, "'+' or '-'".into()));
            }
            first = false;
            let mut coef = BigRational::one();
            let mut has_coef = false;
            if pos < chars.len() && chars[pos].is_ascii_digit() {
                let n = read_int(&mut pos).ok_or((pos + 1, "integer".to_string()))?;
                let mut d = BigInt::one();
                if pos < chars.len() && chars[pos] == '/' {
                    pos += 1;
                    d = read_int(&mut pos).ok_or((pos + 1, "denominator".to_string()))?;
                    if d.is_zero() {
                        return Err((pos, "nonzero denominator".into()));
                    }
                }
                coef = BigRational::new(n, d);
                has_coef = true;
                skip_ws(&mut pos);
            }
            let mut power = 0usize;
            let mut has_z = false;
            if has_coef && pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] != 'z' {
                    return Err((pos + 1, "'z'".into()));
                }
            }
            if pos < chars.len() && chars[pos] == 'z' {
                pos += 1;
                has_z = true;
                power = 1;
                skip_ws(&mut pos);
                if pos < chars.len() && chars[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let p = read_int(&mut pos).ok_or((pos + 1, "exponent".to_string()))?;
                    power = p
                        .try_into()
                        .map_err(|_| (pos, "small exponent".to_string()))?;
                    skip_ws(&mut pos);
                }
            }
            if !has_coef && !has_z {
                return Err((pos + 1, "number or 'z'".into()));
            }
            if neg {
                coef = -coef;
            }
            if terms.len() <= power {
                terms.resize(power + 1, BigRational::zero());
            }
            terms[power] += coef;
            skip_ws(&mut pos);
        }
        let n = order as usize;
        let mut folded = vec![BigRational::zero(); n.max(1)];
        for (k, c) in terms.into_iter().enumerate() {
            folded[k % n.max(1)] += c;
        }
        Ok(CycNum::from_powers(&folded, order))
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.same_order(other) {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = CycNum::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycNum {}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(z{})]", self.render(), self.field.order)
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if !self.same_order(rhs) {
            let (a, b) = CycNum::aligned(self, rhs);
            return &a + &b;
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        if !self.same_order(rhs) {
            let (a, b) = CycNum::aligned(self, rhs);
            return &a - &b;
        }
        CycNum {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if !self.same_order(rhs) {
            let (a, b) = CycNum::aligned(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Div<&CycNum> for &CycNum {
    type Output = CycNum;
    /// Panics on division by zero; use [`CycNum::checked_div`] otherwise.
    fn div(self, rhs: &CycNum) -> CycNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        if self.same_order(rhs) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl AddAssign<CycNum> for CycNum {
    fn add_assign(&mut self, rhs: CycNum) {
        *self += &rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        if self.same_order(rhs) {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a -= b;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl SubAssign<CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: CycNum) {
        *self -= &rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}
