//! Yetter-Drinfeld modules over K[G], G finite abelian, given as a pair of commuting
//! representations: phi of G and psi of the character group.
//!
//! A tensor in V (x) W is stored as a dim V x dim W matrix whose (i, j) entry is the
//! coefficient of v_i (x) w_j.

use serde::Serialize;

use crate::abgroup::{Elem, FinAbGroup, Quotient, Side, Subgroup};
use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};
use crate::exactla::{is_zero_vec, vaxpy, vscale, zero_vec, Mat, Vector};

/// Whether a structure lives in the left or the right Yetter-Drinfeld category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum YdSide {
    Left,
    Right,
}

impl YdSide {
    pub fn other(self) -> YdSide {
        match self {
            YdSide::Left => YdSide::Right,
            YdSide::Right => YdSide::Left,
        }
    }
}

#[derive(Clone, Debug)]
pub struct YDModule {
    group: FinAbGroup,
    order: u32,
    dim: usize,
    phi_gens: Vec<Mat>,
    psi_gens: Vec<Mat>,
    // indexed by FinAbGroup::index_of
    phi_all: Vec<Mat>,
    psi_all: Vec<Mat>,
    proj: Vec<Mat>,
}

pub type YDModuleStruct = YDModule;

fn commute(a: &Mat, b: &Mat) -> bool {
    a.mul(b) == b.mul(a)
}

fn expand(group: &FinAbGroup, gens: &[Mat], dim: usize, order: u32) -> Vec<Mat> {
    group
        .elements()
        .iter()
        .map(|x| {
            let mut m = Mat::identity(dim, order);
            for (k, g) in x.0.iter().zip(gens) {
                if *k > 0 {
                    m = m.mul(&g.pow(*k));
                }
            }
            m
        })
        .collect()
}

impl YDModule {
    /// Build from generator matrices; one phi matrix per cyclic factor of G and one psi
    /// matrix per cyclic factor of the character group (same factors).
    pub fn new(
        group: FinAbGroup,
        order: u32,
        phi_gens: Vec<Mat>,
        psi_gens: Vec<Mat>,
    ) -> Result<Self> {
        let dim = phi_gens
            .first()
            .or(psi_gens.first())
            .map_or(0, |m| m.rows());
        Self::with_dim(group, order, dim, phi_gens, psi_gens)
    }

    /// As `new`, with an explicit dimension (needed when G is trivial).
    pub fn with_dim(
        group: FinAbGroup,
        order: u32,
        dim: usize,
        phi_gens: Vec<Mat>,
        psi_gens: Vec<Mat>,
    ) -> Result<Self> {
        let e = group.exponent();
        if order % e != 0 {
            return Err(YdhError::NonDivisibleOrders { from: e, to: order });
        }
        let r = group.rank();
        for (name, gens) in [("phi", &phi_gens), ("psi", &psi_gens)] {
            if gens.len() != r {
                return Err(YdhError::DimensionMismatch {
                    context: format!("{name} generators"),
                    expected: r,
                    found: gens.len(),
                });
            }
        }
        let mut phi_gens = phi_gens;
        let mut psi_gens = psi_gens;
        for (name, gens) in [("phi", &mut phi_gens), ("psi", &mut psi_gens)] {
            for (i, g) in gens.iter_mut().enumerate() {
                if g.rows() != dim || g.cols() != dim {
                    return Err(YdhError::DimensionMismatch {
                        context: format!("{name} generator {i}"),
                        expected: dim,
                        found: g.rows(),
                    });
                }
                if g.order() != order {
                    *g = Mat::from_rows((0..dim).map(|r| g.row(r)).collect(), order);
                }
                let n = group.factors()[i];
                if !g.pow(n).is_identity() {
                    return Err(YdhError::InvalidAction(format!(
                        "{name} generator {i} does not have order dividing {n}"
                    )));
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if j > i && !commute(&phi_gens[i], &phi_gens[j]) {
                    return Err(YdhError::InvalidAction(format!(
                        "phi generators {i} and {j} do not commute"
                    )));
                }
                if j > i && !commute(&psi_gens[i], &psi_gens[j]) {
                    return Err(YdhError::InvalidAction(format!(
                        "psi generators {i} and {j} do not commute"
                    )));
                }
                if !commute(&phi_gens[i], &psi_gens[j]) {
                    return Err(YdhError::InvalidAction(format!(
                        "phi generator {i} and psi generator {j} do not commute"
                    )));
                }
            }
        }
        let phi_all = expand(&group, &phi_gens, dim, order);
        let psi_all = expand(&group, &psi_gens, dim, order);
        let elems = group.elements();
        let inv_g = CycNum::from_frac(1, group.order() as i64, order);
        let proj = elems
            .iter()
            .map(|h| {
                let hinv = group.neg(h);
                let mut p = Mat::zeros(dim, dim, order);
                for (gi, gamma) in elems.iter().enumerate() {
                    p = p.add(&psi_all[gi].scale(&group.char_value(gamma, &hinv, order)));
                }
                p.scale(&inv_g)
            })
            .collect();
        Ok(YDModule {
            group,
            order,
            dim,
            phi_gens,
            psi_gens,
            phi_all,
            psi_all,
            proj,
        })
    }

    /// Both actions trivial.
    pub fn trivial(group: FinAbGroup, order: u32, dim: usize) -> Self {
        let r = group.rank();
        let id = Mat::identity(dim, order);
        Self::with_dim(group, order, dim, vec![id.clone(); r], vec![id; r])
            .expect("identity actions are valid")
    }

    /// Actions given by permutations of the basis (image of basis vector j is perm[j]).
    pub fn from_permutations(
        group: FinAbGroup,
        order: u32,
        dim: usize,
        phi: &[Vec<usize>],
        psi: &[Vec<usize>],
    ) -> Result<Self> {
        let phi = phi.iter().map(|p| Mat::permutation(p, order)).collect();
        let psi = psi.iter().map(|p| Mat::permutation(p, order)).collect();
        Self::with_dim(group, order, dim, phi, psi)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi_gens(&self) -> &[Mat] {
        &self.phi_gens
    }

    pub fn psi_gens(&self) -> &[Mat] {
        &self.psi_gens
    }

    pub fn phi(&self, g: &Elem) -> &Mat {
        &self.phi_all[self.group.index_of(g)]
    }

    pub fn psi(&self, gamma: &Elem) -> &Mat {
        &self.psi_all[self.group.index_of(gamma)]
    }

    /// Projection onto the homogeneous component of degree h.
    pub fn projector(&self, h: &Elem) -> &Mat {
        &self.proj[self.group.index_of(h)]
    }

    /// gamma(g) in Q(zeta_N).
    pub fn chi(&self, gamma: &Elem, g: &Elem) -> CycNum {
        self.group.char_value(gamma, g, self.order)
    }

    /// Re-express the module over a larger cyclotomic order.
    pub fn with_order(&self, order: u32) -> Result<YDModule> {
        if order % self.order != 0 {
            return Err(YdhError::NonDivisibleOrders {
                from: self.order,
                to: order,
            });
        }
        let lift = |m: &Mat| Mat::from_rows((0..m.rows()).map(|r| m.row(r)).collect(), order);
        YDModule::with_dim(
            self.group.clone(),
            order,
            self.dim,
            self.phi_gens.iter().map(lift).collect(),
            self.psi_gens.iter().map(lift).collect(),
        )
    }

    fn check_vec(&self, v: &[CycNum]) {
        assert_eq!(
            v.len(),
            self.dim,
            "vector length must equal the module dimension"
        );
    }

    /// delta(v) as homogeneous components (g, v_g), zero components dropped, g in
    /// canonical order. Evaluated as the double sum over characters and group elements.
    pub fn coaction(&self, v: &[CycNum]) -> Vec<(Elem, Vector)> {
        self.check_vec(v);
        let elems = self.group.elements();
        let inv_g = CycNum::from_frac(1, self.group.order() as i64, self.order);
        let psi_v: Vec<Vector> = self.psi_all.iter().map(|m| m.mul_vec(v)).collect();
        let mut out = Vec::new();
        for g in &elems {
            let ginv = self.group.neg(g);
            let mut acc = zero_vec(self.dim, self.order);
            for (gi, gamma) in elems.iter().enumerate() {
                vaxpy(&mut acc, &self.chi(gamma, &ginv), &psi_v[gi]);
            }
            let acc = vscale(&acc, &inv_g);
            if !is_zero_vec(&acc) {
                out.push((g.clone(), acc));
            }
        }
        out
    }

    /// gamma(v^(1)) v^(2) for a coaction given as homogeneous components.
    pub fn psi_from_coaction(&self, comps: &[(Elem, Vector)], gamma: &Elem) -> Vector {
        let mut acc = zero_vec(self.dim, self.order);
        for (g, w) in comps {
            vaxpy(&mut acc, &self.chi(gamma, g), w);
        }
        acc
    }

    /// The degree of v if v is homogeneous and nonzero.
    pub fn degree(&self, v: &[CycNum]) -> Option<Elem> {
        let c = self.coaction(v);
        if c.len() == 1 {
            Some(c[0].0.clone())
        } else {
            None
        }
    }

    pub fn psi_fixes(&self, v: &[CycNum], q: &Subgroup) -> bool {
        q.elements()
            .iter()
            .all(|gamma| self.psi(gamma).mul_vec(v) == v)
    }

    pub fn phi_fixes(&self, v: &[CycNum], t: &Subgroup) -> bool {
        t.elements().iter().all(|g| self.phi(g).mul_vec(v) == v)
    }

    /// Whether phi_g = id on T and psi_gamma = id on Q.
    pub fn acts_trivially(&self, t: &Subgroup, q: &Subgroup) -> bool {
        t.elements().iter().all(|g| self.phi(g).is_identity())
            && q.elements().iter().all(|c| self.psi(c).is_identity())
    }

    /// Diagonal action and codiagonal coaction on V (x) W, basis index i * dim W + j.
    pub fn tensor(&self, other: &YDModule) -> Result<YDModule> {
        self.same_base(other)?;
        let phi = self
            .phi_gens
            .iter()
            .zip(&other.phi_gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        let psi = self
            .psi_gens
            .iter()
            .zip(&other.psi_gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        YDModule::with_dim(
            self.group.clone(),
            self.order,
            self.dim * other.dim,
            phi,
            psi,
        )
    }

    /// The dual space with transposed actions (a right Yetter-Drinfeld module when self is
    /// left, and conversely).
    pub fn dual(&self) -> YDModule {
        let phi = self.phi_gens.iter().map(|m| m.transpose()).collect();
        let psi = self.psi_gens.iter().map(|m| m.transpose()).collect();
        YDModule::with_dim(self.group.clone(), self.order, self.dim, phi, psi)
            .expect("transposes of a valid action are valid")
    }

    /// Exchange the roles of phi and psi, reading the module over the character group.
    pub fn swap_roles(&self) -> YDModule {
        YDModule::with_dim(
            self.group.clone(),
            self.order,
            self.dim,
            self.psi_gens.clone(),
            self.phi_gens.clone(),
        )
        .expect("swapping commuting actions is valid")
    }

    pub fn same_base(&self, other: &YDModule) -> Result<()> {
        if self.group != other.group || self.order != other.order {
            return Err(YdhError::GroupMismatch(format!(
                "{} over N={} vs {} over N={}",
                self.group, self.order, other.group, other.order
            )));
        }
        Ok(())
    }

    /// The structure over G' = Q^perp / (T cap Q^perp) when T and Q act trivially.
    /// Characters of G' are realised by lifts in T^perp.
    pub fn restrict_group(&self, t: &Subgroup, q: &Subgroup) -> Result<Restriction> {
        if t.side() != Side::Group
            || q.side() != Side::Dual
            || t.group() != &self.group
            || q.group() != &self.group
        {
            return Err(YdhError::InvalidSubgroup(
                "expected T in G and Q in the character group".into(),
            ));
        }
        if !self.acts_trivially(t, q) {
            return Err(YdhError::PreconditionViolated(
                "T or Q does not act trivially".into(),
            ));
        }
        let qp = q.perp();
        let quotient = qp.quotient(&t.intersect(&qp))?;
        let target = quotient.target.clone();
        let tp = t.perp();
        let mut char_lifts = Vec::new();
        for i in 0..target.rank() {
            let m_i = target.factors()[i];
            let found = tp.elements().iter().find(|gamma| {
                quotient.basis.iter().enumerate().all(|(j, x)| {
                    let want = if i == j { self.order / m_i } else { 0 };
                    let k = self.group.pairing(gamma, x) * (self.order / self.group.exponent());
                    k % self.order == want
                })
            });
            match found {
                Some(g) => char_lifts.push(g.clone()),
                None => {
                    return Err(YdhError::InvalidSubgroup(
                        "no lift of a generator character of G' in T^perp".into(),
                    ))
                }
            }
        }
        let phi = quotient.basis.iter().map(|x| self.phi(x).clone()).collect();
        let psi = char_lifts.iter().map(|c| self.psi(c).clone()).collect();
        let module = YDModule::with_dim(target, self.order, self.dim, phi, psi)?;
        Ok(Restriction {
            module,
            quotient,
            char_lifts,
        })
    }
}

/// Output of `restrict_group`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub module: YDModule,
    /// Q^perp / (T cap Q^perp) with lifts of its standard generators.
    pub quotient: Quotient,
    /// Lifts in T^perp of the standard generator characters of G'.
    pub char_lifts: Vec<Elem>,
}

/// v (x) w as a matrix.
pub fn outer(v: &[CycNum], w: &[CycNum], order: u32) -> Mat {
    let mut m = Mat::zeros(v.len(), w.len(), order);
    for (i, a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in w.iter().enumerate() {
            m.set(i, j, a * b);
        }
    }
    m
}

/// Flatten a tensor matrix to a vector with index i * cols + j.
pub fn flatten(m: &Mat) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i)).collect()
}

pub fn unflatten(v: &[CycNum], rows: usize, cols: usize, order: u32) -> Mat {
    assert_eq!(v.len(), rows * cols);
    let mut m = Mat::zeros(rows, cols, order);
    for (k, x) in v.iter().enumerate() {
        if !x.is_zero() {
            m.set(k / cols, k % cols, x.clone());
        }
    }
    m
}

fn check_pair(vm: &YDModule, wm: &YDModule, v: &[CycNum], w: &[CycNum]) -> Result<()> {
    vm.same_base(wm)?;
    if v.len() != vm.dim {
        return Err(YdhError::DimensionMismatch {
            context: "first factor".into(),
            expected: vm.dim,
            found: v.len(),
        });
    }
    if w.len() != wm.dim {
        return Err(YdhError::DimensionMismatch {
            context: "second factor".into(),
            expected: wm.dim,
            found: w.len(),
        });
    }
    Ok(())
}

// sum over gamma in chars, g in elems of coef(gamma, g) * left(g) (x) right(gamma)
fn double_sum(
    chars: &[Elem],
    elems: &[Elem],
    coef: impl Fn(&Elem, &Elem) -> CycNum,
    left: impl Fn(&Elem) -> Vector,
    right: impl Fn(&Elem) -> Vector,
    order: u32,
    rows: usize,
    cols: usize,
) -> Mat {
    let lefts: Vec<Vector> = elems.iter().map(&left).collect();
    let rights: Vec<Vector> = chars.iter().map(&right).collect();
    let mut acc = Mat::zeros(rows, cols, order);
    for (ci, gamma) in chars.iter().enumerate() {
        for (gi, g) in elems.iter().enumerate() {
            let c = coef(gamma, g);
            acc = acc.add(&outer(&lefts[gi], &rights[ci], order).scale(&c));
        }
    }
    acc
}

/// sigma_{V,W}(v (x) w) in W (x) V for left modules, by the full double sum over the
/// character group and G.
pub fn quasisymmetry(vm: &YDModule, wm: &YDModule, v: &[CycNum], w: &[CycNum]) -> Result<Mat> {
    check_pair(vm, wm, v, w)?;
    let grp = &vm.group;
    let elems = grp.elements();
    let n = vm.order;
    let s = double_sum(
        &elems,
        &elems,
        |gamma, g| grp.char_value(gamma, &grp.neg(g), n),
        |g| wm.phi(g).mul_vec(w),
        |gamma| vm.psi(gamma).mul_vec(v),
        n,
        wm.dim,
        vm.dim,
    );
    Ok(s.scale(&CycNum::from_frac(1, grp.order() as i64, n)))
}

/// sigma^{-1}_{V,W}(w (x) v) in V (x) W for left modules.
pub fn quasisymmetry_inverse(
    vm: &YDModule,
    wm: &YDModule,
    w: &[CycNum],
    v: &[CycNum],
) -> Result<Mat> {
    check_pair(vm, wm, v, w)?;
    let grp = &vm.group;
    let elems = grp.elements();
    let n = vm.order;
    // rows: psi_gamma(v), cols: phi_g(w); double_sum puts the g-indexed factor first
    let s = double_sum(
        &elems,
        &elems,
        |gamma, g| grp.char_value(gamma, g, n),
        |g| wm.phi(g).mul_vec(w),
        |gamma| vm.psi(gamma).mul_vec(v),
        n,
        wm.dim,
        vm.dim,
    );
    Ok(s.transpose()
        .scale(&CycNum::from_frac(1, grp.order() as i64, n)))
}

/// The subgroup-restricted form of sigma_{V,W}(v (x) w) for v fixed by psi on Q and w
/// fixed by phi on T: sums over T^perp and Q^perp only.
pub fn quasisymmetry_refined(
    vm: &YDModule,
    wm: &YDModule,
    v: &[CycNum],
    w: &[CycNum],
    t: &Subgroup,
    q: &Subgroup,
) -> Result<Mat> {
    check_pair(vm, wm, v, w)?;
    if !vm.psi_fixes(v, q) {
        return Err(YdhError::PreconditionViolated(
            "v is not fixed by psi on Q".into(),
        ));
    }
    if !wm.phi_fixes(w, t) {
        return Err(YdhError::PreconditionViolated(
            "w is not fixed by phi on T".into(),
        ));
    }
    let grp = &vm.group;
    let n = vm.order;
    let tp = t.perp();
    let qp = q.perp();
    let s = double_sum(
        tp.elements(),
        qp.elements(),
        |gamma, g| grp.char_value(gamma, &grp.neg(g), n),
        |g| wm.phi(g).mul_vec(w),
        |gamma| vm.psi(gamma).mul_vec(v),
        n,
        wm.dim,
        vm.dim,
    );
    let denom = (qp.order() * q.intersect(&tp).order()) as i64;
    Ok(s.scale(&CycNum::from_frac(1, denom, n)))
}

/// sigma_{V,W}(v (x) w) = w^(1) (x) v.w^(2) for right modules, in W (x) V.
pub fn quasisymmetry_right(
    vm: &YDModule,
    wm: &YDModule,
    v: &[CycNum],
    w: &[CycNum],
) -> Result<Mat> {
    check_pair(vm, wm, v, w)?;
    let grp = &vm.group;
    let elems = grp.elements();
    let n = vm.order;
    let s = double_sum(
        &elems,
        &elems,
        |gamma, g| grp.char_value(gamma, &grp.neg(g), n),
        |g| vm.phi(g).mul_vec(v),
        |gamma| wm.psi(gamma).mul_vec(w),
        n,
        vm.dim,
        wm.dim,
    );
    Ok(s.transpose()
        .scale(&CycNum::from_frac(1, grp.order() as i64, n)))
}

/// Right-module refined form: v fixed by phi on T, w fixed by psi on Q.
pub fn quasisymmetry_right_refined(
    vm: &YDModule,
    wm: &YDModule,
    v: &[CycNum],
    w: &[CycNum],
    t: &Subgroup,
    q: &Subgroup,
) -> Result<Mat> {
    check_pair(vm, wm, v, w)?;
    if !vm.phi_fixes(v, t) {
        return Err(YdhError::PreconditionViolated(
            "v is not fixed by phi on T".into(),
        ));
    }
    if !wm.psi_fixes(w, q) {
        return Err(YdhError::PreconditionViolated(
            "w is not fixed by psi on Q".into(),
        ));
    }
    let grp = &vm.group;
    let n = vm.order;
    let tp = t.perp();
    let qp = q.perp();
    let s = double_sum(
        tp.elements(),
        qp.elements(),
        |gamma, g| grp.char_value(gamma, &grp.neg(g), n),
        |g| vm.phi(g).mul_vec(v),
        |gamma| wm.psi(gamma).mul_vec(w),
        n,
        vm.dim,
        wm.dim,
    );
    let denom = (qp.order() * q.intersect(&tp).order()) as i64;
    Ok(s.transpose().scale(&CycNum::from_frac(1, denom, n)))
}

/// The braiding as a linear map on whole tensors X in V (x) W, returning an element of
/// W (x) V. Uses the homogeneous decomposition of the coacting factor.
pub fn braid(side: YdSide, vm: &YDModule, wm: &YDModule, x: &Mat) -> Mat {
    let n = vm.order;
    let mut acc = Mat::zeros(wm.dim, vm.dim, n);
    for h in vm.group.elements() {
        match side {
            // sum_h phi_h(w) (x) P_h(v)
            YdSide::Left => {
                let p = vm.projector(&h);
                if p.is_zero() {
                    continue;
                }
                acc = acc.add(&wm.phi(&h).mul(&x.transpose()).mul(&p.transpose()));
            }
            // sum_h P_h(w) (x) phi_h(v)
            YdSide::Right => {
                let p = wm.projector(&h);
                if p.is_zero() {
                    continue;
                }
                acc = acc.add(&p.mul(&x.transpose()).mul(&vm.phi(&h).transpose()));
            }
        }
    }
    acc
}

/// Inverse of `braid`: takes Y in W (x) V back to V (x) W.
pub fn braid_inverse(side: YdSide, vm: &YDModule, wm: &YDModule, y: &Mat) -> Mat {
    let n = vm.order;
    let grp = &vm.group;
    let mut acc = Mat::zeros(vm.dim, wm.dim, n);
    for h in grp.elements() {
        let hinv = grp.neg(&h);
        match side {
            // w (x) v -> sum_h P_h(v) (x) phi_{h^-1}(w)
            YdSide::Left => {
                let p = vm.projector(&h);
                if p.is_zero() {
                    continue;
                }
                acc = acc.add(&p.mul(&y.transpose()).mul(&wm.phi(&hinv).transpose()));
            }
            // w (x) v -> sum_h phi_{h^-1}(v) (x) P_h(w)
            YdSide::Right => {
                let p = wm.projector(&h);
                if p.is_zero() {
                    continue;
                }
                acc = acc.add(&vm.phi(&hinv).mul(&y.transpose()).mul(&p.transpose()));
            }
        }
    }
    acc
}

/// The braiding of a module with itself as a dim^2 x dim^2 matrix on flattened tensors.
pub fn braid_matrix(side: YdSide, m: &YDModule) -> Mat {
    let d = m.dim;
    let n = m.order;
    let mut out = Mat::zeros(d * d, d * d, n);
    for i in 0..d {
        for j in 0..d {
            let mut x = Mat::zeros(d, d, n);
            x.set(i, j, CycNum::one(n));
            let y = flatten(&braid(side, m, m, &x));
            for (r, val) in y.into_iter().enumerate() {
                if !val.is_zero() {
                    out.set(r, i * d + j, val);
                }
            }
        }
    }
    out
}
