//! Finite abelian groups in invariant-factor form, their character groups, subgroups,
//! annihilators and quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};

/// Exponent vector of a group element or of a character.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Elem(pub Vec<u32>);

pub type GroupElement = Elem;
pub type GroupChar = Elem;

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Z/n_1 x ... x Z/n_r with n_1 | n_2 | ... | n_r, all n_i >= 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    factors: Vec<u32>,
}

impl FinAbGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return Err(YdhError::InvalidGroup(format!(
                "factors must be at least 2: {factors:?}"
            )));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(YdhError::InvalidGroup(format!(
                    "factors must divide each other in order: {factors:?}"
                )));
            }
        }
        Ok(FinAbGroup { factors })
    }

    pub fn cyclic(n: u32) -> Self {
        if n < 2 {
            FinAbGroup { factors: vec![] }
        } else {
            FinAbGroup { factors: vec![n] }
        }
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: vec![] }
    }

    /// Parse `Z/2 x Z/4` (optionally preceded by `group`).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("group").unwrap_or(s).trim();
        if s == "1" || s == "trivial" {
            return Ok(Self::trivial());
        }
        let mut factors = Vec::new();
        for part in s.split('x') {
            let part = part.trim();
            let n = part
                .strip_prefix("Z/")
                .and_then(|v| v.trim().parse::<u32>().ok())
                .ok_or_else(|| YdhError::InvalidGroup(format!("cannot read factor '{part}'")))?;
            if n > 1 {
                factors.push(n);
            }
        }
        Self::new(factors)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// Least common multiple of element orders; 1 for the trivial group.
    pub fn exponent(&self) -> u32 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Elem {
        Elem(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> Elem {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Elem(v)
    }

    pub fn contains(&self, x: &Elem) -> bool {
        x.0.len() == self.rank() && x.0.iter().zip(&self.factors).all(|(a, n)| a < n)
    }

    pub fn check(&self, x: &Elem) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(YdhError::InvalidElement(format!("{x} in {self}")))
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn times(&self, k: i64, a: &Elem) -> Elem {
        Elem(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, &n)| ((*x as i64 * k).rem_euclid(n as i64)) as u32)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &Elem) -> u32 {
        let mut k = 1;
        let mut cur = a.clone();
        while cur != self.zero() {
            cur = self.add(&cur, a);
            k += 1;
        }
        k
    }

    /// All elements in lexicographic order of exponent vectors.
    pub fn elements(&self) -> Vec<Elem> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn index_of(&self, a: &Elem) -> usize {
        a.0.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (x, &n)| acc * n as usize + *x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Elem {
        let mut v = vec![0u32; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factors[i] as usize;
            v[i] = (idx % n) as u32;
            idx /= n;
        }
        Elem(v)
    }

    /// Exponent k with chi(g) = zeta_e^k, e the group exponent.
    pub fn pairing(&self, chi: &Elem, g: &Elem) -> u32 {
        let e = self.exponent() as u64;
        let mut k = 0u64;
        for ((c, x), n) in chi.0.iter().zip(&g.0).zip(&self.factors) {
            k += *c as u64 * *x as u64 * (e / *n as u64);
        }
        (k % e) as u32
    }

    /// chi(g) as an element of Q(zeta_order); the group exponent must divide `order`.
    pub fn char_value(&self, chi: &Elem, g: &Elem, order: u32) -> CycNum {
        let e = self.exponent();
        assert!(
            order % e == 0,
            "field order {order} must be a multiple of the group exponent {e}"
        );
        CycNum::zeta_pow(order, (self.pairing(chi, g) * (order / e)) as i64)
    }

    pub fn render_elem(&self, a: &Elem) -> String {
        a.to_string()
    }

    pub fn render_char(&self, chi: &Elem) -> String {
        format!("chi{chi}")
    }

    /// Parse `(1,2)`, `chi(1,2)` or `g(1,2)`; the trivial group accepts `()`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let t = s.trim();
        let t = t
            .strip_prefix("chi")
            .or_else(|| t.strip_prefix('g'))
            .unwrap_or(t)
            .trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|v| v.strip_suffix(')'))
            .ok_or_else(|| YdhError::InvalidElement(format!("cannot read '{s}'")))?;
        let vals: Vec<u32> = if inner.trim().is_empty() {
            vec![]
        } else {
            inner
                .split(',')
                .map(|v| v.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| YdhError::InvalidElement(format!("cannot read '{s}'")))?
        };
        let e = Elem(vals);
        self.check(&e)?;
        Ok(e)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Whether a subgroup lives in G or in its character group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Group,
    Dual,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Group => Side::Dual,
            Side::Dual => Side::Group,
        }
    }
}

/// A subgroup of G or of the character group, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    group: FinAbGroup,
    side: Side,
    elements: Vec<Elem>,
}

impl Subgroup {
    pub fn whole(group: &FinAbGroup, side: Side) -> Self {
        Subgroup {
            group: group.clone(),
            side,
            elements: group.elements(),
        }
    }

    pub fn trivial(group: &FinAbGroup, side: Side) -> Self {
        Subgroup {
            group: group.clone(),
            side,
            elements: vec![group.zero()],
        }
    }

    pub fn generated_by(group: &FinAbGroup, side: Side, gens: &[Elem]) -> Result<Self> {
        for g in gens {
            group.check(g)?;
        }
        let mut set: BTreeSet<Elem> = BTreeSet::new();
        set.insert(group.zero());
        let mut frontier = vec![group.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = group.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            group: group.clone(),
            side,
            elements: set.into_iter().collect(),
        })
    }

    /// Validate a set of elements as a subgroup.
    pub fn from_elements(group: &FinAbGroup, side: Side, elems: Vec<Elem>) -> Result<Self> {
        let set: BTreeSet<Elem> = elems.into_iter().collect();
        for x in &set {
            group.check(x)?;
        }
        if !set.contains(&group.zero()) {
            return Err(YdhError::InvalidSubgroup("identity missing".into()));
        }
        for a in &set {
            for b in &set {
                if !set.contains(&group.sub(a, b)) {
                    return Err(YdhError::InvalidSubgroup(format!("not closed: {a} - {b}")));
                }
            }
        }
        Ok(Subgroup {
            group: group.clone(),
            side,
            elements: set.into_iter().collect(),
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &Elem) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.side == other.side && self.elements.iter().all(|x| other.contains(x))
    }

    /// Annihilator in the other side: all x with <x, s> = 1 for every s here.
    pub fn perp(&self) -> Subgroup {
        let g = &self.group;
        let elements = g
            .elements()
            .into_iter()
            .filter(|x| self.elements.iter().all(|s| g.pairing(x, s) == 0))
            .collect();
        Subgroup {
            group: g.clone(),
            side: self.side.other(),
            elements,
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.side, other.side, "intersection across sides");
        let elements = self
            .elements
            .iter()
            .filter(|x| other.contains(x))
            .cloned()
            .collect();
        Subgroup {
            group: self.group.clone(),
            side: self.side,
            elements,
        }
    }

    /// The product subgroup {a + b}.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.side, other.side, "product across sides");
        let mut set = BTreeSet::new();
        for a in &self.elements {
            for b in &other.elements {
                set.insert(self.group.add(a, b));
            }
        }
        Subgroup {
            group: self.group.clone(),
            side: self.side,
            elements: set.into_iter().collect(),
        }
    }

    /// Smallest element of x + self.
    pub fn coset_key(&self, x: &Elem) -> Elem {
        self.elements
            .iter()
            .map(|n| self.group.add(x, n))
            .min()
            .unwrap()
    }

    /// Coset representatives of self / sub: the smallest element of every coset, sorted.
    pub fn coset_reps(&self, sub: &Subgroup) -> Result<Vec<Elem>> {
        if !sub.is_subset_of(self) {
            return Err(YdhError::InvalidSubgroup(
                "not contained in the ambient subgroup".into(),
            ));
        }
        let keys: BTreeSet<Elem> = self.elements.iter().map(|x| sub.coset_key(x)).collect();
        Ok(keys.into_iter().collect())
    }

    /// self / sub in invariant-factor form with an explicit isomorphism.
    pub fn quotient(&self, sub: &Subgroup) -> Result<Quotient> {
        let reps = self.coset_reps(sub)?;
        let g = &self.group;
        let q = reps.len();
        let key_index: BTreeMap<Elem, usize> = reps
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let add_keys =
            |a: usize, b: usize| -> usize { key_index[&sub.coset_key(&g.add(&reps[a], &reps[b]))] };
        let times =
            |k: u32, a: usize| -> usize { key_index[&sub.coset_key(&g.times(k as i64, &reps[a]))] };
        let zero = key_index[&sub.coset_key(&g.zero())];
        // invariant factors from the sizes of the m-torsion subgroups
        let mut elementary: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for p in primes_dividing(q as u32) {
            let mut prev = 1usize;
            let mut counts = Vec::new();
            let mut pk = p;
            loop {
                let c = (0..q).filter(|&a| times(pk, a) == zero).count();
                if c == prev {
                    break;
                }
                counts.push(c);
                prev = c;
                pk *= p;
            }
            // r_j = number of cyclic factors of order >= p^j
            let mut logs = vec![0u32];
            for c in &counts {
                logs.push(ilog(*c as u32, p));
            }
            let r: Vec<u32> = logs.windows(2).map(|w| w[1] - w[0]).collect();
            let mut powers = Vec::new();
            for j in 0..r.len() {
                let exact = r[j] - r.get(j + 1).copied().unwrap_or(0);
                for _ in 0..exact {
                    powers.push(p.pow(j as u32 + 1));
                }
            }
            powers.sort_unstable_by(|a, b| b.cmp(a));
            elementary.insert(p, powers);
        }
        let s = elementary.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u32; s];
        for powers in elementary.values() {
            for (i, pw) in powers.iter().enumerate() {
                factors[i] *= pw;
            }
        }
        factors.reverse();
        let target = FinAbGroup::new(factors.clone())?;
        // basis search, largest factor first
        let order_of = |a: usize| -> u32 {
            let mut k = 1;
            let mut cur = a;
            while cur != zero {
                cur = add_keys(cur, a);
                k += 1;
            }
            k
        };
        let orders: Vec<u32> = (0..q).map(order_of).collect();
        let span_size = |chosen: &[usize]| -> usize {
            let mut set = BTreeSet::new();
            set.insert(zero);
            let mut frontier = vec![zero];
            while let Some(x) = frontier.pop() {
                for &c in chosen {
                    let y = add_keys(x, c);
                    if set.insert(y) {
                        frontier.push(y);
                    }
                }
            }
            set.len()
        };
        fn search(
            idx: usize,
            factors: &[u32],
            orders: &[u32],
            chosen: &mut Vec<usize>,
            span_size: &dyn Fn(&[usize]) -> usize,
        ) -> bool {
            if idx == factors.len() {
                return true;
            }
            let want = factors[factors.len() - 1 - idx];
            let expected: usize = factors[factors.len() - 1 - idx..]
                .iter()
                .map(|&n| n as usize)
                .product();
            for a in 0..orders.len() {
                if orders[a] != want {
                    continue;
                }
                chosen.push(a);
                if span_size(chosen) == expected
                    && search(idx + 1, factors, orders, chosen, span_size)
                {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        let mut chosen = Vec::new();
        if !search(0, &factors, &orders, &mut chosen, &span_size) {
            return Err(YdhError::InvalidSubgroup(
                "no basis found for quotient".into(),
            ));
        }
        chosen.reverse();
        let basis: Vec<Elem> = chosen.iter().map(|&i| reps[i].clone()).collect();
        // coordinates of every coset
        let mut coords: BTreeMap<Elem, Elem> = BTreeMap::new();
        for t in target.elements() {
            let mut x = g.zero();
            for (c, b) in t.0.iter().zip(&basis) {
                x = g.add(&x, &g.times(*c as i64, b));
            }
            coords.insert(sub.coset_key(&x), t);
        }
        Ok(Quotient {
            target,
            basis,
            coords,
            ambient: self.clone(),
            sub: sub.clone(),
        })
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// H / N presented as a group in invariant-factor form.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub target: FinAbGroup,
    /// Lifts in H of the standard generators of `target`.
    pub basis: Vec<Elem>,
    coords: BTreeMap<Elem, Elem>,
    pub ambient: Subgroup,
    pub sub: Subgroup,
}

impl Quotient {
    /// Image of an element of the ambient subgroup.
    pub fn project(&self, x: &Elem) -> Result<Elem> {
        if !self.ambient.contains(x) {
            return Err(YdhError::InvalidElement(format!(
                "{x} is not in the ambient subgroup"
            )));
        }
        Ok(self.coords[&self.sub.coset_key(x)].clone())
    }

    /// A lift of a quotient element.
    pub fn lift(&self, t: &Elem) -> Elem {
        let g = self.ambient.group();
        let mut x = g.zero();
        for (c, b) in t.0.iter().zip(&self.basis) {
            x = g.add(&x, &g.times(*c as i64, b));
        }
        x
    }
}

fn primes_dividing(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn ilog(mut x: u32, p: u32) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

/// Every subgroup, each generated by at most `rank` elements, sorted by (order, elements).
pub fn all_subgroups(group: &FinAbGroup, side: Side) -> Vec<Subgroup> {
    let elems = group.elements();
    let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let r = group.rank();
    let mut idx = vec![0usize; r];
    loop {
        let gens: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        found.insert(Subgroup::generated_by(group, side, &gens).unwrap().elements);
        let mut k = 0;
        while k < r {
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|elements| Subgroup {
            group: group.clone(),
            side,
            elements,
        })
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    out
}

/// The sum of chi(g) over all g, computed term by term in Q(zeta_e).
pub fn orthogonality_sum(group: &FinAbGroup, chi: &Elem) -> CycNum {
    let order = group.exponent();
    let mut acc = CycNum::zero(order);
    for g in group.elements() {
        acc += group.char_value(chi, &g, order);
    }
    acc
}
