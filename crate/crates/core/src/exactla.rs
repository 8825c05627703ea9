//! Exact dense linear algebra over Q(zeta_n): matrices, 3-tensors, kernels, solving and
//! simultaneous eigenspace decomposition of commuting operators.

use crate::cyclo::{CycNum, CycPoly};
use crate::error::{Result, YdhError};

pub type Vector = Vec<CycNum>;

pub fn zero_vec(n: usize, order: u32) -> Vector {
    vec![CycNum::zero(order); n]
}

pub fn unit_vec(n: usize, i: usize, order: u32) -> Vector {
    let mut v = zero_vec(n, order);
    v[i] = CycNum::one(order);
    v
}

pub fn vadd(a: &[CycNum], b: &[CycNum]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[CycNum], b: &[CycNum]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[CycNum], c: &CycNum) -> Vector {
    a.iter()
        .map(|x| if x.is_zero() { x.clone() } else { x * c })
        .collect()
}

/// a += c * b
pub fn vaxpy(a: &mut [CycNum], c: &CycNum, b: &[CycNum]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub fn dot(a: &[CycNum], b: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero(a.first().map_or(1, |x| x.order()));
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn is_zero_vec(a: &[CycNum]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn render_vec(a: &[CycNum]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.render()).collect();
    format!("[{}]", parts.join(", "))
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        Mat {
            rows,
            cols,
            order,
            data: vec![CycNum::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.set(i, i, CycNum::one(order));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>, order: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .into_iter()
            .flatten()
            .map(|x| x.embed(order).expect("entry order must divide"))
            .collect::<Vec<_>>();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat {
            rows: r,
            cols: c,
            order,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector], nrows: usize, order: u32) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), order);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Permutation matrix sending basis vector j to basis vector perm[j].
    pub fn permutation(perm: &[usize], order: u32) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n, order);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, CycNum::one(order));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, o.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        out.data[i * o.cols + j] += &t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Vector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let mut out = zero_vec(self.rows, self.order);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] += &(a * x);
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[CycNum]) -> Vector {
        assert_eq!(self.rows, v.len(), "vector-matrix shape");
        let mut out = zero_vec(self.cols, self.order);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.get(k, j);
                if !a.is_zero() {
                    out[j] += &(x * a);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            order: self.order,
            data: vscale(&self.data, c),
        }
    }

    /// Kronecker product; index (i, j) of the factors maps to i * other.dim + j.
    pub fn kron(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Mat {
        let mut r = Mat::identity(self.rows, self.order);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn trace(&self) -> CycNum {
        let mut t = CycNum::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Reduced row echelon form and pivot columns; pivots are the first nonzero entry
    /// scanning rows top to bottom.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j);
                if !v.is_zero() {
                    let nv = v * &inv;
                    m.set(r, j, nv);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let b = m.get(r, j);
                    if !b.is_zero() {
                        let t = &f * b;
                        m.data[i * m.cols + j] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column, in column order.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = zero_vec(self.cols, self.order);
            v[free] = CycNum::one(self.order);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            out.push(v);
        }
        out
    }

    /// One solution of self * x = b.
    pub fn solve(&self, b: &[CycNum]) -> Result<Vector> {
        let mut aug = Mat::zeros(self.rows, self.cols + 1, self.order);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(YdhError::Inconsistent);
        }
        let mut x = zero_vec(self.cols, self.order);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(YdhError::Singular);
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n, self.order);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycNum::one(self.order));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(YdhError::Singular);
        }
        let mut inv = Mat::zeros(n, n, self.order);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> CycNum {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = CycNum::one(self.order);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return CycNum::zero(self.order);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pv = m.get(c, c).clone();
            det = &det * &pv;
            let inv = pv.inv().unwrap();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let t = &f * m.get(c, j);
                    m.data[i * n + j] -= &t;
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(x I - self) by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> CycPoly {
        let n = self.rows;
        let mut coeffs = vec![CycNum::zero(self.order); n + 1];
        coeffs[n] = CycNum::one(self.order);
        let mut m = Mat::zeros(n, n, self.order);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let t = self.mul(&m).trace();
            coeffs[n - k] = -(&t * &CycNum::from_frac(1, k as i64, self.order));
        }
        CycPoly::new(coeffs, self.order)
    }

    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// For a monomial matrix, the cycle data (length, product of entries along the cycle).
    fn monomial_cycles(&self) -> Option<Vec<(usize, CycNum)>> {
        let n = self.rows;
        let mut target = vec![usize::MAX; n];
        for j in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&i| !self.get(i, j).is_zero()).collect();
            if nz.len() != 1 {
                return None;
            }
            target[j] = nz[0];
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut prod = CycNum::one(self.order);
            let mut j = s;
            while !seen[j] {
                seen[j] = true;
                prod = &prod * self.get(target[j], j);
                j = target[j];
                len += 1;
            }
            if j != s {
                return None;
            }
            out.push((len, prod));
        }
        Some(out)
    }

    /// Distinct eigenvalues in canonical order; NonSplitField if the characteristic
    /// polynomial has a non-linear irreducible factor.
    pub fn eigenvalues(&self) -> Result<Vec<CycNum>> {
        let mut vals: Vec<CycNum> = Vec::new();
        let push = |vals: &mut Vec<CycNum>, v: CycNum| {
            if !vals.contains(&v) {
                vals.push(v);
            }
        };
        if self.is_diagonal() {
            for i in 0..self.rows {
                push(&mut vals, self.get(i, i).clone());
            }
        } else if let Some(cycles) = self.monomial_cycles() {
            for (len, prod) in cycles {
                let mut c = vec![CycNum::zero(self.order); len + 1];
                c[0] = -prod;
                c[len] = CycNum::one(self.order);
                let split = CycPoly::new(c, self.order).roots_in_field();
                if !split.splits() {
                    return Err(YdhError::NonSplitField(format!(
                        "cycle of length {len} needs roots outside Q(zeta_{})",
                        self.order
                    )));
                }
                for (r, _) in split.roots {
                    push(&mut vals, r);
                }
            }
        } else {
            let split = self.charpoly().roots_in_field();
            if !split.splits() {
                return Err(YdhError::NonSplitField(format!(
                    "characteristic polynomial has irreducible factors of degree {:?} over Q(zeta_{})",
                    split.nonlinear_degrees, self.order
                )));
            }
            for (r, _) in split.roots {
                push(&mut vals, r);
            }
        }
        vals.sort_by(|a, b| a.canonical_cmp(b));
        Ok(vals)
    }
}

/// Dense 3-index array, used for structure constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    dims: [usize; 3],
    order: u32,
    data: Vec<CycNum>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize, order: u32) -> Self {
        Tensor3 {
            dims: [d0, d1, d2],
            order,
            data: vec![CycNum::zero(order); d0 * d1 * d2],
        }
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &CycNum {
        &self.data[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: CycNum) {
        let x = self.idx(i, j, k);
        self.data[x] = v;
    }

    /// Fiber over the first two indices.
    pub fn fiber(&self, i: usize, j: usize) -> Vector {
        let s = self.idx(i, j, 0);
        self.data[s..s + self.dims[2]].to_vec()
    }

    /// The matrix obtained by fixing the first index.
    pub fn slice0(&self, i: usize) -> Mat {
        let mut m = Mat::zeros(self.dims[1], self.dims[2], self.order);
        for j in 0..self.dims[1] {
            for k in 0..self.dims[2] {
                m.set(j, k, self.get(i, j, k).clone());
            }
        }
        m
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = ([usize; 3], &CycNum)> + '_ {
        let [_, d1, d2] = self.dims;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(x, v)| ([x / (d1 * d2), (x / d2) % d1, x % d2], v))
    }
}

/// A joint eigenspace of a commuting family.
#[derive(Clone, Debug)]
pub struct JointEigenspace {
    pub basis: Vec<Vector>,
    /// One eigenvalue per operator, in the order the operators were given.
    pub eigenvalues: Vec<CycNum>,
}

/// Dimension of the span of `vectors`, each of length `dim`.
pub fn span_rank(vectors: &[Vector], dim: usize, order: u32) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_cols(vectors, dim, order).rank()
}

pub fn in_span(basis: &[Vector], v: &[CycNum], dim: usize, order: u32) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all, dim, order) == span_rank(basis, dim, order)
}

pub fn same_span(a: &[Vector], b: &[Vector], dim: usize, order: u32) -> bool {
    let r = span_rank(a, dim, order);
    r == span_rank(b, dim, order) && {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        span_rank(&all, dim, order) == r
    }
}

/// Coordinates of the columns of `vectors` in the basis `basis` (columns), assumed to lie in its span.
pub fn coordinates(
    basis: &[Vector],
    vectors: &[Vector],
    dim: usize,
    order: u32,
) -> Result<Vec<Vector>> {
    let b = Mat::from_cols(basis, dim, order);
    vectors.iter().map(|v| b.solve(v)).collect()
}

/// Decompose the span of `basis` (or the whole space) into joint eigenspaces of the commuting
/// operators `ops`, splitting by one operator at a time in the given order.
pub fn split_invariant(
    ops: &[Mat],
    dim: usize,
    order: u32,
    basis: Option<Vec<Vector>>,
) -> Result<Vec<JointEigenspace>> {
    let start = basis.unwrap_or_else(|| (0..dim).map(|i| unit_vec(dim, i, order)).collect());
    let mut spaces = vec![JointEigenspace {
        basis: start,
        eigenvalues: vec![],
    }];
    for op in ops {
        let mut next = Vec::new();
        for space in spaces {
            let k = space.basis.len();
            let images: Vec<Vector> = space.basis.iter().map(|b| op.mul_vec(b)).collect();
            let coords = coordinates(&space.basis, &images, dim, order).map_err(|_| {
                YdhError::PreconditionViolated(
                    "subspace is not invariant under the operator".into(),
                )
            })?;
            let restricted = Mat::from_cols(&coords, k, order);
            let vals = restricted.eigenvalues()?;
            let mut total = 0;
            for v in vals {
                let shifted = restricted.sub(&Mat::identity(k, order).scale(&v));
                let ker = shifted.kernel();
                total += ker.len();
                let vecs: Vec<Vector> = ker
                    .iter()
                    .map(|c| {
                        let mut acc = zero_vec(dim, order);
                        for (ci, bi) in c.iter().zip(&space.basis) {
                            vaxpy(&mut acc, ci, bi);
                        }
                        acc
                    })
                    .collect();
                let mut ev = space.eigenvalues.clone();
                ev.push(v);
                next.push(JointEigenspace {
                    basis: vecs,
                    eigenvalues: ev,
                });
            }
            if total != k {
                return Err(YdhError::PreconditionViolated(
                    "operator is not diagonalizable".into(),
                ));
            }
        }
        spaces = next;
    }
    Ok(spaces)
}

#[cfg(test)]
mod tests;
