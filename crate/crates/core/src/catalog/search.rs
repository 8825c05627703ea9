//! Search for commutative semisimple instances in idempotent normal form.
//!
//! The basis is the primitive idempotents e_0..e_{d-1} with e_0 the counit's idempotent, so
//! the multiplication is fixed and phi, psi act by commuting permutations fixing 0. The
//! unknowns are the coefficients c[k][x][y] of e_x (x) e_y in Delta(e_k), constant on orbits
//! of the permutation actions. They are constrained by
//!   Delta(e_k) Delta(e_l) = delta_kl Delta(e_k) in the twisted square,
//!   sum_k Delta(e_k) = 1 (x) 1, the counit identities, and coassociativity.
//! Linear consequences are propagated exactly, univariate quadratics are solved in the field,
//! and only when both are stuck does the solver branch over the coefficient budget.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abgroup::FinAbGroup;
use crate::cyclo::{lcm, CycNum, CycPoly};
use crate::error::{violation, Result, YdhError};
use crate::exactla::{Mat, Tensor3};
use crate::ydhopf::{solve_antipode, verify_axioms, YDHopfAlgebra};
use crate::ydmod::{YDModule, YdSide};

/// Values the solver may guess for a coefficient: 0 and (p/q) zeta for 1 <= p <= max_numerator,
/// 1 <= q <= max_denominator, zeta a root of unity of order dividing root_order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientBudget {
    pub max_denominator: u32,
    pub max_numerator: u32,
    pub root_order: u32,
}

impl Default for CoefficientBudget {
    fn default() -> Self {
        CoefficientBudget {
            max_denominator: 4,
            max_numerator: 4,
            root_order: 4,
        }
    }
}

/// Permutations of the idempotents: phi[i] for the i-th generator of G, psi[i] for the i-th
/// generator of the dual group. All fix 0 and commute.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Ansatz {
    pub phi: Vec<Vec<usize>>,
    pub psi: Vec<Vec<usize>>,
}

impl Ansatz {
    pub fn identity(group: &FinAbGroup, dim: usize) -> Ansatz {
        let id: Vec<usize> = (0..dim).collect();
        Ansatz {
            phi: vec![id.clone(); group.rank()],
            psi: vec![id; group.rank()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.phi
            .iter()
            .chain(&self.psi)
            .all(|p| p.iter().enumerate().all(|(i, &j)| i == j))
    }

    fn perms(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.phi.iter().chain(&self.psi)
    }

    fn relabel(&self, s: &[usize]) -> Ansatz {
        let f = |p: &Vec<usize>| conjugate(p, s);
        Ansatz {
            phi: self.phi.iter().map(f).collect(),
            psi: self.psi.iter().map(f).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub group: FinAbGroup,
    pub dim: usize,
    /// Cyclotomic order of the scalars; must be a multiple of the group exponent.
    pub order: u32,
    pub budget: CoefficientBudget,
    /// Restrict to these actions; `None` enumerates all up to relabeling.
    pub ansatz: Option<Vec<Ansatz>>,
    /// Branch nodes allowed per ansatz before the partition is reported truncated.
    pub max_nodes: u64,
    /// Skip dimensions coprime to |G| once a confirmation run has found them trivial.
    pub prune_coprime: bool,
}

impl SearchConfig {
    pub fn new(group: FinAbGroup, dim: usize) -> SearchConfig {
        let budget = CoefficientBudget::default();
        let order = lcm(group.exponent().max(1), budget.root_order.max(1));
        SearchConfig {
            group,
            dim,
            order,
            budget,
            ansatz: None,
            max_nodes: 20_000,
            prune_coprime: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Found {
    #[serde(skip)]
    pub algebra: YDHopfAlgebra,
    pub ansatz: Ansatz,
    pub trivial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub instances: Vec<Found>,
    pub ansatz_count: usize,
    pub nodes: u64,
    /// Some partition hit `max_nodes`; the instance list may be incomplete.
    pub exhausted: bool,
    /// Enumeration was skipped because gcd(dim, |G|) = 1 was already confirmed trivial.
    pub pruned: bool,
    /// This call was the confirmation run for a coprime configuration.
    pub confirmation_run: bool,
}

impl SearchOutcome {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Found> {
        self.instances.iter().filter(|f| !f.trivial)
    }

    /// `BudgetExhausted` if the search was truncated.
    pub fn complete(self) -> Result<SearchOutcome> {
        if self.exhausted {
            Err(YdhError::BudgetExhausted(self.nodes))
        } else {
            Ok(self)
        }
    }
}

static CONFIRMED_COPRIME: Mutex<BTreeSet<(Vec<u32>, usize)>> = Mutex::new(BTreeSet::new());

/// Enumerate verified commutative semisimple instances for `cfg`; every one is tagged with
/// its triviality. Deterministic for a fixed config.
pub fn search_nontrivial(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let d = cfg.dim;
    if d == 0 {
        return Err(YdhError::PreconditionViolated("dimension must be positive".into()));
    }
    if cfg.order % cfg.group.exponent().max(1) != 0 {
        return Err(YdhError::NonDivisibleOrders {
            from: cfg.group.exponent(),
            to: cfg.order,
        });
    }
    let coprime = d.gcd(&cfg.group.order()) == 1;
    let key = (cfg.group.factors().to_vec(), d);
    let mut confirmation_run = false;
    if coprime && cfg.prune_coprime {
        if CONFIRMED_COPRIME.lock().unwrap().contains(&key) {
            return Ok(SearchOutcome {
                instances: Vec::new(),
                ansatz_count: 0,
                nodes: 0,
                exhausted: false,
                pruned: true,
                confirmation_run: false,
            });
        }
        confirmation_run = true;
    }
    let ansatze = match &cfg.ansatz {
        Some(a) => {
            for x in a {
                check_ansatz(&cfg.group, d, x)?;
            }
            a.clone()
        }
        None => enumerate_ansatze(&cfg.group, d),
    };
    let values = budget_values(&cfg.budget, cfg.order)?;
    let parts = ansatze
        .par_iter()
        .map(|an| search_ansatz(cfg, an, &values))
        .collect::<Result<Vec<_>>>()?;
    let mut out = SearchOutcome {
        instances: Vec::new(),
        ansatz_count: ansatze.len(),
        nodes: 0,
        exhausted: false,
        pruned: false,
        confirmation_run,
    };
    for p in parts {
        out.nodes += p.nodes;
        out.exhausted |= p.exhausted;
        out.instances.extend(p.found);
    }
    if coprime {
        if let Some(f) = out.nontrivial().next() {
            return Err(violation(
                "dim A and |G| coprime implies A trivial",
                format!("search found a nontrivial instance with ansatz {:?}", f.ansatz),
            ));
        }
        if confirmation_run && !out.exhausted {
            CONFIRMED_COPRIME.lock().unwrap().insert(key);
        }
    }
    Ok(out)
}

fn check_ansatz(group: &FinAbGroup, d: usize, a: &Ansatz) -> Result<()> {
    let r = group.rank();
    if a.phi.len() != r || a.psi.len() != r {
        return Err(YdhError::InvalidAction(format!(
            "ansatz needs {r} permutations per action"
        )));
    }
    for (i, p) in a.phi.iter().chain(&a.psi).enumerate() {
        let n = group.factors()[i % r];
        if !is_perm(p, d) || p[0] != 0 {
            return Err(YdhError::InvalidAction(format!("bad permutation {p:?}")));
        }
        if n % perm_order(p) as u32 != 0 {
            return Err(YdhError::InvalidAction(format!(
                "permutation {p:?} has order not dividing {n}"
            )));
        }
    }
    let all: Vec<&Vec<usize>> = a.perms().collect();
    for (i, p) in all.iter().enumerate() {
        for q in &all[i + 1..] {
            if compose(p, q) != compose(q, p) {
                return Err(YdhError::InvalidAction(format!("{p:?} and {q:?} do not commute")));
            }
        }
    }
    Ok(())
}

fn is_perm(p: &[usize], d: usize) -> bool {
    p.len() == d && p.iter().collect::<BTreeSet<_>>().len() == d && p.iter().all(|&x| x < d)
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn perm_order(p: &[usize]) -> usize {
    let id: Vec<usize> = (0..p.len()).collect();
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

// s p s^-1
fn conjugate(p: &[usize], s: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        out[s[x]] = s[y];
    }
    out
}

/// Permutations of 0..d fixing 0, in lexicographic order.
fn perms_fixing_zero(d: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            cur.push(x);
            rec(cur, left, out);
            cur.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    rec(&mut vec![0], &mut (1..d).collect(), &mut out);
    out
}

fn flat_key(perms: &[Vec<usize>]) -> Vec<usize> {
    perms.iter().flatten().copied().collect()
}

fn is_canonical(prefix: &[Vec<usize>], relabelings: &[Vec<usize>]) -> bool {
    let key = flat_key(prefix);
    relabelings.iter().all(|s| {
        let r: Vec<Vec<usize>> = prefix.iter().map(|p| conjugate(p, s)).collect();
        flat_key(&r) >= key
    })
}

/// All actions up to relabeling of e_1..e_{d-1}, each the lexicographically least
/// representative of its class, in lexicographic order.
pub fn enumerate_ansatze(group: &FinAbGroup, d: usize) -> Vec<Ansatz> {
    let r = group.rank();
    let relabelings = perms_fixing_zero(d);
    let orders: Vec<u32> = group.factors().iter().chain(group.factors()).copied().collect();
    let pool: Vec<(Vec<usize>, usize)> = relabelings
        .iter()
        .map(|p| (p.clone(), perm_order(p)))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = Vec::new();
    fn rec(
        stack: &mut Vec<Vec<usize>>,
        orders: &[u32],
        pool: &[(Vec<usize>, usize)],
        relabelings: &[Vec<usize>],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if stack.len() == orders.len() {
            out.push(stack.clone());
            return;
        }
        let n = orders[stack.len()];
        for (p, o) in pool {
            if n % *o as u32 != 0 {
                continue;
            }
            if stack.iter().any(|q| compose(p, q) != compose(q, p)) {
                continue;
            }
            stack.push(p.clone());
            if is_canonical(stack, relabelings) {
                rec(stack, orders, pool, relabelings, out);
            }
            stack.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut stack, &orders, &pool, &relabelings, &mut raw);
    for t in raw {
        out.push(Ansatz {
            phi: t[..r].to_vec(),
            psi: t[r..].to_vec(),
        });
    }
    out
}

fn budget_values(b: &CoefficientBudget, order: u32) -> Result<Vec<CycNum>> {
    let mut vals = vec![CycNum::zero(order)];
    let ro = b.root_order.max(1);
    if order % ro != 0 {
        return Err(YdhError::NonDivisibleOrders { from: ro, to: order });
    }
    let roots: Vec<CycNum> = (0..ro)
        .map(|j| CycNum::zeta_pow(order, (j * (order / ro)) as i64))
        .collect();
    let signs: &[i64] = if ro % 2 == 0 { &[1] } else { &[1, -1] };
    for q in 1..=b.max_denominator.max(1) as i64 {
        for p in 1..=b.max_numerator as i64 {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in signs {
                let r = CycNum::from_frac(s * p, q, order);
                for z in &roots {
                    let v = &r * z;
                    if !vals.contains(&v) {
                        vals.push(v);
                    }
                }
            }
        }
    }
    Ok(vals)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Mono {
    Lin(usize),
    Quad(usize, usize),
}

/// A polynomial of degree <= 2 in the unknowns.
#[derive(Clone, Debug)]
struct Poly {
    constant: CycNum,
    terms: BTreeMap<Mono, CycNum>,
}

impl Poly {
    fn zero(order: u32) -> Poly {
        Poly {
            constant: CycNum::zero(order),
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, m: Option<Mono>, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match m {
            None => self.constant = &self.constant + &c,
            Some(m) => {
                let e = self
                    .terms
                    .entry(m)
                    .or_insert_with(|| CycNum::zero(c.order()));
                *e = &*e + &c;
            }
        }
    }

    fn tidy(mut self) -> Poly {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

#[derive(Clone, Debug)]
enum Coef {
    Fixed(CycNum),
    Var(usize),
}

/// c * a * b as polynomial terms.
fn add_product(p: &mut Poly, c: &CycNum, a: &Coef, b: &Coef) {
    match (a, b) {
        (Coef::Fixed(x), Coef::Fixed(y)) => p.add_term(None, &(c * x) * y),
        (Coef::Fixed(x), Coef::Var(v)) | (Coef::Var(v), Coef::Fixed(x)) => {
            p.add_term(Some(Mono::Lin(*v)), c * x)
        }
        (Coef::Var(u), Coef::Var(v)) => {
            p.add_term(Some(Mono::Quad(*u.min(v), *u.max(v))), c.clone())
        }
    }
}

fn add_single(p: &mut Poly, c: &CycNum, a: &Coef) {
    match a {
        Coef::Fixed(x) => p.add_term(None, c * x),
        Coef::Var(v) => p.add_term(Some(Mono::Lin(*v)), c.clone()),
    }
}

struct System {
    d: usize,
    order: u32,
    coef: Vec<Coef>,
    /// Triple index of one representative per variable.
    reps: Vec<usize>,
    eqs: Vec<Poly>,
}

fn tri(d: usize, k: usize, x: usize, y: usize) -> usize {
    (k * d + x) * d + y
}

fn skeleton(cfg: &SearchConfig, an: &Ansatz, comult: Tensor3) -> Result<YDHopfAlgebra> {
    let d = cfg.dim;
    let n = cfg.order;
    let module = YDModule::from_permutations(cfg.group.clone(), n, d, &an.phi, &an.psi)?;
    let one = CycNum::one(n);
    let mut mult = Tensor3::zeros(d, d, d, n);
    for i in 0..d {
        mult.set(i, i, i, one.clone());
    }
    let counit = (0..d)
        .map(|i| if i == 0 { one.clone() } else { CycNum::zero(n) })
        .collect();
    YDHopfAlgebra::new(module, mult, vec![one; d], comult, counit, None, YdSide::Left)
}

fn build_system(cfg: &SearchConfig, an: &Ansatz) -> Result<System> {
    let d = cfg.dim;
    let n = cfg.order;
    let one = CycNum::one(n);
    let zero = CycNum::zero(n);
    // orbits of triples under the permutation group, by union-find
    let mut parent: Vec<usize> = (0..d * d * d).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for p in an.perms() {
        for k in 0..d {
            for x in 0..d {
                for y in 0..d {
                    let a = find(&mut parent, tri(d, k, x, y));
                    let b = find(&mut parent, tri(d, p[k], p[x], p[y]));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    let mut coef = vec![Coef::Fixed(zero.clone()); d * d * d];
    let mut var_of_root: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    for k in 0..d {
        for x in 0..d {
            for y in 0..d {
                let t = tri(d, k, x, y);
                coef[t] = if x == 0 {
                    Coef::Fixed(if y == k { one.clone() } else { zero.clone() })
                } else if y == 0 {
                    Coef::Fixed(if x == k { one.clone() } else { zero.clone() })
                } else {
                    let r = find(&mut parent, t);
                    let next = var_of_root.len();
                    let v = *var_of_root.entry(r).or_insert(next);
                    if v == reps.len() {
                        reps.push(t);
                    }
                    Coef::Var(v)
                };
            }
        }
    }
    let sk = skeleton(cfg, an, Tensor3::zeros(d, d, d, n))?;
    let sq = sk.twisted_square();
    let mut eqs = Vec::new();
    // sum_k Delta(e_k) = 1 (x) 1
    for x in 1..d {
        for y in 1..d {
            let mut p = Poly::zero(n);
            p.add_term(None, -&one);
            for k in 0..d {
                add_single(&mut p, &one, &coef[tri(d, k, x, y)]);
            }
            eqs.push(p);
        }
    }
    // Delta(e_k) Delta(e_l) = delta_kl Delta(e_k)
    let dd = d * d;
    let mut mul_eqs: Vec<Poly> = (0..d * d * dd).map(|_| Poly::zero(n)).collect();
    for p in 0..dd {
        for q in 0..dd {
            for (out, c) in sq.product.entry(p, q) {
                for k in 0..d {
                    let a = &coef[k * dd + p];
                    if matches!(a, Coef::Fixed(z) if z.is_zero()) {
                        continue;
                    }
                    for l in 0..d {
                        add_product(&mut mul_eqs[(k * d + l) * dd + out], c, a, &coef[l * dd + q]);
                    }
                }
            }
        }
    }
    for k in 0..d {
        for out in 0..dd {
            add_single(&mut mul_eqs[(k * d + k) * dd + out], &-&one, &coef[k * dd + out]);
        }
    }
    eqs.extend(mul_eqs);
    // coassociativity: sum_m c[k][m][z] c[m][x][y] = sum_m c[k][x][m] c[m][y][z]
    for k in 0..d {
        for x in 1..d {
            for y in 1..d {
                for z in 1..d {
                    let mut p = Poly::zero(n);
                    for m in 0..d {
                        add_product(&mut p, &one, &coef[tri(d, k, m, z)], &coef[tri(d, m, x, y)]);
                        add_product(&mut p, &-&one, &coef[tri(d, k, x, m)], &coef[tri(d, m, y, z)]);
                    }
                    eqs.push(p);
                }
            }
        }
    }
    let mut eqs: Vec<Poly> = eqs
        .into_iter()
        .map(Poly::tidy)
        .filter(|p| !p.terms.is_empty() || !p.constant.is_zero())
        .collect();
    eqs.sort_by_key(|p| p.terms.len());
    Ok(System {
        d,
        order: n,
        coef,
        reps,
        eqs,
    })
}

/// A polynomial after substituting known values, in the unknowns still open.
#[derive(Clone, Debug)]
struct Red {
    constant: CycNum,
    lin: BTreeMap<usize, CycNum>,
    quad: BTreeMap<(usize, usize), CycNum>,
}

impl Red {
    fn zero(n: u32) -> Red {
        Red {
            constant: CycNum::zero(n),
            lin: BTreeMap::new(),
            quad: BTreeMap::new(),
        }
    }

    fn add_lin(&mut self, v: usize, c: CycNum) {
        let e = self.lin.entry(v).or_insert_with(|| CycNum::zero(c.order()));
        *e = &*e + &c;
    }

    fn add_quad(&mut self, u: usize, v: usize, c: CycNum) {
        let e = self
            .quad
            .entry((u.min(v), u.max(v)))
            .or_insert_with(|| CycNum::zero(c.order()));
        *e = &*e + &c;
    }

    fn tidy(mut self) -> Red {
        self.lin.retain(|_, c| !c.is_zero());
        self.quad.retain(|_, c| !c.is_zero());
        self
    }

    fn vars(&self) -> BTreeSet<usize> {
        self.quad
            .keys()
            .flat_map(|&(u, v)| [u, v])
            .chain(self.lin.keys().copied())
            .collect()
    }
}

fn reduce(p: &Poly, asg: &[Option<CycNum>], n: u32) -> Red {
    let mut r = Red::zero(n);
    for (m, c) in &p.terms {
        match m {
            Mono::Lin(v) => match &asg[*v] {
                Some(x) => r.constant = &r.constant + &(c * x),
                None => r.add_lin(*v, c.clone()),
            },
            Mono::Quad(u, v) => match (&asg[*u], &asg[*v]) {
                (Some(a), Some(b)) => r.constant = &r.constant + &(&(c * a) * b),
                (Some(a), None) => r.add_lin(*v, c * a),
                (None, Some(b)) => r.add_lin(*u, c * b),
                (None, None) => r.add_quad(*u, *v, c.clone()),
            },
        }
    }
    r.constant = &r.constant + &p.constant;
    r.tidy()
}

/// An unknown written as constant + sum coef * free unknown.
type Affine = (CycNum, Vec<(usize, CycNum)>);

fn substitute(r: &Red, aff: &HashMap<usize, Affine>, n: u32) -> Red {
    let get = |v: usize| -> Affine {
        aff.get(&v)
            .cloned()
            .unwrap_or_else(|| (CycNum::zero(n), vec![(v, CycNum::one(n))]))
    };
    let mut out = Red::zero(n);
    out.constant = r.constant.clone();
    for (v, c) in &r.lin {
        let (a0, terms) = get(*v);
        out.constant = &out.constant + &(c * &a0);
        for (w, b) in terms {
            out.add_lin(w, c * &b);
        }
    }
    for ((u, v), c) in &r.quad {
        let (a0, at) = get(*u);
        let (b0, bt) = get(*v);
        out.constant = &out.constant + &(&(c * &a0) * &b0);
        for (w, x) in &bt {
            out.add_lin(*w, &(c * &a0) * x);
        }
        for (w, x) in &at {
            out.add_lin(*w, &(c * &b0) * x);
            for (z, y) in &bt {
                out.add_quad(*w, *z, &(c * x) * y);
            }
        }
    }
    out.tidy()
}

enum Class {
    Contradiction,
    Satisfied,
    Univariate(usize, CycPoly),
    Linear,
    Other,
}

fn classify(r: &Red, n: u32) -> Class {
    let vars = r.vars();
    match vars.len() {
        0 if r.constant.is_zero() => Class::Satisfied,
        0 => Class::Contradiction,
        1 => {
            let v = *vars.iter().next().unwrap();
            let c1 = r.lin.get(&v).cloned().unwrap_or_else(|| CycNum::zero(n));
            let c2 = r.quad.get(&(v, v)).cloned().unwrap_or_else(|| CycNum::zero(n));
            Class::Univariate(v, CycPoly::new(vec![r.constant.clone(), c1, c2], n))
        }
        _ if r.quad.is_empty() => Class::Linear,
        _ => Class::Other,
    }
}

enum Step {
    Fail,
    Done,
    Branch(usize, Vec<CycNum>),
    NeedGuess(usize),
}

/// Roots in the field of a polynomial that is not identically zero; `None` when every
/// value works.
fn small_roots(q: &CycPoly) -> Option<Vec<CycNum>> {
    match q.degree() {
        None => None,
        Some(0) => Some(Vec::new()),
        _ => Some(q.roots_in_field().roots.into_iter().map(|(r, _)| r).collect()),
    }
}

/// Exact propagation to a fixpoint: linear elimination, then univariate equations after
/// substituting the eliminated unknowns.
fn propagate(sys: &System, asg: &mut [Option<CycNum>]) -> Step {
    let n = sys.order;
    loop {
        let mut reds = Vec::new();
        for p in &sys.eqs {
            let r = reduce(p, asg, n);
            match classify(&r, n) {
                Class::Contradiction => return Step::Fail,
                Class::Satisfied => {}
                _ => reds.push(r),
            }
        }
        if asg.iter().all(Option::is_some) {
            return Step::Done;
        }
        // eliminate along the linear equations
        let lin: Vec<&Red> = reds.iter().filter(|r| r.quad.is_empty()).collect();
        let vars: Vec<usize> = lin
            .iter()
            .flat_map(|r| r.lin.keys().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .rev()
            .collect();
        let mut aff: HashMap<usize, Affine> = HashMap::new();
        let mut changed = false;
        if !vars.is_empty() {
            let col: HashMap<usize, usize> =
                vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
            let m = vars.len();
            let rows: Vec<Vec<CycNum>> = lin
                .iter()
                .map(|r| {
                    let mut row = vec![CycNum::zero(n); m + 1];
                    for (v, a) in &r.lin {
                        row[col[v]] = a.clone();
                    }
                    row[m] = -&r.constant;
                    row
                })
                .collect();
            let (rr, pivots) = Mat::from_rows(rows, n).rref();
            if pivots.contains(&m) {
                return Step::Fail;
            }
            for (i, &pc) in pivots.iter().enumerate() {
                let rest: Vec<(usize, CycNum)> = (0..m)
                    .filter(|&j| j != pc && !rr.get(i, j).is_zero())
                    .map(|j| (vars[j], -rr.get(i, j)))
                    .collect();
                if rest.is_empty() {
                    asg[vars[pc]] = Some(rr.get(i, m).clone());
                    changed = true;
                }
                aff.insert(vars[pc], (rr.get(i, m).clone(), rest));
            }
        }
        if changed {
            continue;
        }
        let mut branch: Option<(usize, Vec<CycNum>)> = None;
        let mut substituted = Vec::new();
        for r in reds.iter().filter(|r| !r.quad.is_empty()) {
            let s = substitute(r, &aff, n);
            match classify(&s, n) {
                Class::Contradiction => return Step::Fail,
                Class::Univariate(v, q) => {
                    if let Some(roots) = small_roots(&q) {
                        if roots.len() <= 1 {
                            match roots.first() {
                                None => return Step::Fail,
                                Some(x) => {
                                    asg[v] = Some(x.clone());
                                    changed = true;
                                    break;
                                }
                            }
                        }
                        if branch.as_ref().is_none_or(|(_, b)| roots.len() < b.len()) {
                            branch = Some((v, roots));
                        }
                    }
                }
                Class::Linear | Class::Other => substituted.push(s),
                Class::Satisfied => {}
            }
        }
        if changed {
            continue;
        }
        if branch.is_none() {
            branch = pair_elimination(&substituted, n);
        }
        if let Some((v, roots)) = branch {
            return match roots.len() {
                0 => Step::Fail,
                1 => {
                    asg[v] = Some(roots[0].clone());
                    continue;
                }
                _ => Step::Branch(v, roots),
            };
        }
        // guess the free unknown that occurs most often
        let free = (0..asg.len()).filter(|v| asg[*v].is_none() && !aff.contains_key(v));
        let pick = free
            .min_by_key(|v| *v)
            .expect("an open unknown remains");
        return Step::NeedGuess(pick);
    }
}

/// Coefficients of `r` (in unknowns {u, v}) as a polynomial in v over K[u].
fn in_v(r: &Red, u: usize, v: usize, n: u32) -> Vec<CycPoly> {
    let z = || CycNum::zero(n);
    let g = |m: &BTreeMap<usize, CycNum>, k: usize| m.get(&k).cloned().unwrap_or_else(z);
    let q = |a: usize, b: usize| r.quad.get(&(a.min(b), a.max(b))).cloned().unwrap_or_else(z);
    let mut out = vec![
        CycPoly::new(vec![r.constant.clone(), g(&r.lin, u), q(u, u)], n),
        CycPoly::new(vec![g(&r.lin, v), q(u, v)], n),
        CycPoly::new(vec![q(v, v)], n),
    ];
    while out.last().is_some_and(CycPoly::is_zero) {
        out.pop();
    }
    out
}

fn det_poly(m: &[Vec<CycPoly>], n: u32) -> CycPoly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = CycPoly::zero(n);
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<CycPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let t = a.mul(&det_poly(&minor, n));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Resultant in v of two polynomials given by ascending coefficient lists over K[u].
fn resultant(p: &[CycPoly], q: &[CycPoly], n: u32) -> CycPoly {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let size = dp + dq;
    let mut m = vec![vec![CycPoly::zero(n); size]; size];
    for i in 0..dq {
        for (k, c) in p.iter().rev().enumerate() {
            m[i][i + k] = c.clone();
        }
    }
    for i in 0..dp {
        for (k, c) in q.iter().rev().enumerate() {
            m[dq + i][i + k] = c.clone();
        }
    }
    det_poly(&m, n)
}

/// Eliminate one unknown between pairs of equations in the same two unknowns.
fn pair_elimination(polys: &[Red], n: u32) -> Option<(usize, Vec<CycNum>)> {
    let mut by_pair: BTreeMap<(usize, usize), Vec<&Red>> = BTreeMap::new();
    for r in polys {
        let vs: Vec<usize> = r.vars().into_iter().collect();
        if vs.len() == 2 {
            by_pair.entry((vs[0], vs[1])).or_default().push(r);
        }
    }
    let mut best: Option<(usize, Vec<CycNum>)> = None;
    for ((u, v), rs) in by_pair {
        for i in 0..rs.len() {
            for j in i + 1..rs.len() {
                let (p, q) = (in_v(rs[i], u, v, n), in_v(rs[j], u, v, n));
                if p.len() < 2 || q.len() < 2 {
                    continue;
                }
                let res = resultant(&p, &q, n);
                if let Some(roots) = small_roots(&res) {
                    if best.as_ref().is_none_or(|(_, b)| roots.len() < b.len()) {
                        best = Some((u, roots));
                    }
                }
            }
        }
    }
    best
}

struct PartResult {
    found: Vec<Found>,
    nodes: u64,
    exhausted: bool,
}

fn search_ansatz(cfg: &SearchConfig, an: &Ansatz, values: &[CycNum]) -> Result<PartResult> {
    let sys = build_system(cfg, an)?;
    let mut nodes = 0u64;
    let mut exhausted = false;
    let mut solutions: Vec<Vec<CycNum>> = Vec::new();
    let mut stack: Vec<Vec<Option<CycNum>>> = vec![vec![None; sys.reps.len()]];
    while let Some(mut asg) = stack.pop() {
        nodes += 1;
        if nodes > cfg.max_nodes {
            exhausted = true;
            break;
        }
        match propagate(&sys, &mut asg) {
            Step::Fail => {}
            Step::Done => solutions.push(asg.into_iter().map(Option::unwrap).collect()),
            Step::Branch(v, opts) => {
                for r in opts.into_iter().rev() {
                    let mut a = asg.clone();
                    a[v] = Some(r);
                    stack.push(a);
                }
            }
            Step::NeedGuess(v) => {
                for r in values.iter().rev() {
                    let mut a = asg.clone();
                    a[v] = Some(r.clone());
                    stack.push(a);
                }
            }
        }
    }
    let autos: Vec<Vec<usize>> = perms_fixing_zero(sys.d)
        .into_iter()
        .filter(|s| an.relabel(s) == *an)
        .collect();
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for sol in solutions {
        let comult = comult_tensor(&sys, &sol);
        let key = autos
            .iter()
            .map(|s| structure_key(&comult, s))
            .min()
            .unwrap();
        if !seen.insert(key) {
            continue;
        }
        let sk = skeleton(cfg, an, comult)?;
        let s = match solve_antipode(&sk) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let a = sk.with_antipode(Some(s));
        if !verify_axioms(&a).passed() {
            continue;
        }
        let trivial = a.is_trivial().trivial;
        found.push(Found {
            algebra: a,
            ansatz: an.clone(),
            trivial,
        });
    }
    Ok(PartResult {
        found,
        nodes,
        exhausted,
    })
}

fn comult_tensor(sys: &System, sol: &[CycNum]) -> Tensor3 {
    let d = sys.d;
    let mut t = Tensor3::zeros(d, d, d, sys.order);
    for k in 0..d {
        for x in 0..d {
            for y in 0..d {
                let v = match &sys.coef[tri(d, k, x, y)] {
                    Coef::Fixed(c) => c.clone(),
                    Coef::Var(v) => sol[*v].clone(),
                };
                if !v.is_zero() {
                    t.set(k, x, y, v);
                }
            }
        }
    }
    t
}

fn structure_key(t: &Tensor3, s: &[usize]) -> Vec<String> {
    let d = s.len();
    let mut out = vec![String::new(); d * d * d];
    for k in 0..d {
        for x in 0..d {
            for y in 0..d {
                out[tri(d, s[k], s[x], s[y])] = t.get(k, x, y).render();
            }
        }
    }
    out
}
