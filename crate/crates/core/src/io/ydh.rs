//! The YDH text format. See `docs/ydh-format.ebnf` for the grammar.
//!
//! ```text
//! ydh 1
//! order 2
//! group Z/2
//! side left
//! dim 2
//! basis e0 e1
//! phi 0 perm 0 1
//! psi 0 perm 0 1
//! unit
//!   0 1
//! counit
//!   0 1
//!   1 1
//! mult
//!   0 0 0 1
//!   ...
//! end
//! ```
//!
//! Entry lines are indented by two spaces; their last field is a scalar and runs to the end
//! of the line, so it may contain spaces (`1/2 - 1/2*z^3`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::abgroup::FinAbGroup;
use crate::cyclo::CycNum;
use crate::error::{Result, YdhError};
use crate::exactla::{zero_vec, Mat, Tensor3, Vector};
use crate::ydhopf::YDHopfAlgebra;
use crate::ydmod::{YDModule, YdSide};

pub const FORMAT_VERSION: u32 = 1;

/// A parsed file: the algebra and the names of its basis vectors.
#[derive(Clone, Debug)]
pub struct YdhDocument {
    pub names: Vec<String>,
    pub algebra: YDHopfAlgebra,
}

impl YdhDocument {
    pub fn new(algebra: YDHopfAlgebra) -> YdhDocument {
        let names = (0..algebra.dim()).map(|i| format!("e{i}")).collect();
        YdhDocument { names, algebra }
    }
}

fn perr(line: usize, col: usize, expected: impl Into<String>) -> YdhError {
    YdhError::Parse {
        line,
        col,
        expected: expected.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn num<T: std::str::FromStr>(line: usize, tok: (usize, &str), what: &str) -> Result<T> {
    tok.1.parse().map_err(|_| perr(line, tok.0, what))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Unit,
    Counit,
    Mult,
    Comult,
    Antipode,
    Action(bool, usize),
}

impl Section {
    fn arity(self) -> usize {
        match self {
            Section::Unit | Section::Counit => 1,
            Section::Antipode | Section::Action(..) => 2,
            Section::Mult | Section::Comult => 3,
        }
    }
}

struct Header {
    order: u32,
    group: FinAbGroup,
    side: YdSide,
    dim: usize,
    names: Vec<String>,
}

fn parse_header(lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, String)>>) -> Result<Header> {
    let mut seen = 0;
    let mut next = |key: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((no, text)) => {
                seen = no;
                let toks = tokens(&text);
                if toks.first().map(|t| t.1) != Some(key) || text.starts_with(char::is_whitespace) {
                    return Err(perr(no, 1, format!("'{key}'")));
                }
                let rest = text[key.len()..].trim().to_string();
                if rest.is_empty() {
                    return Err(perr(no, text.len() + 1, format!("value after '{key}'")));
                }
                Ok((no, rest))
            }
            None => Err(perr(seen + 1, 1, format!("'{key}'"))),
        }
    };
    let (no, v) = next("ydh")?;
    if v != FORMAT_VERSION.to_string() {
        return Err(perr(no, 5, format!("format version {FORMAT_VERSION}")));
    }
    let (no, v) = next("order")?;
    let order: u32 = v.parse().map_err(|_| perr(no, 7, "positive integer"))?;
    if order == 0 {
        return Err(perr(no, 7, "positive integer"));
    }
    let (no, v) = next("group")?;
    let group = FinAbGroup::parse(&v).map_err(|_| perr(no, 7, "group such as Z/2 x Z/4"))?;
    let (no, v) = next("side")?;
    let side = match v.as_str() {
        "left" => YdSide::Left,
        "right" => YdSide::Right,
        _ => return Err(perr(no, 6, "'left' or 'right'")),
    };
    let (no, v) = next("dim")?;
    let dim: usize = v.parse().map_err(|_| perr(no, 5, "dimension"))?;
    let (no, v) = next("basis")?;
    let names: Vec<String> = v.split_whitespace().map(str::to_string).collect();
    if names.len() != dim {
        return Err(YdhError::DimensionMismatch {
            context: format!("basis names on line {no}"),
            expected: dim,
            found: names.len(),
        });
    }
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != dim {
        return Err(perr(no, 7, "distinct basis names"));
    }
    Ok(Header {
        order,
        group,
        side,
        dim,
        names,
    })
}

/// Parse a YDH document. Only structural well-formedness is checked, not the axioms.
pub fn parse_document(text: &str) -> Result<YdhDocument> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').to_string()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .peekable();
    let h = parse_header(&mut lines)?;
    let (d, n) = (h.dim, h.order);
    let r = h.group.rank();
    let mut actions: [Vec<Option<Mat>>; 2] = [vec![None; r], vec![None; r]];
    let mut entries: BTreeMap<SectionKey, BTreeMap<Vec<usize>, CycNum>> = BTreeMap::new();
    let mut current: Option<Section> = None;
    let mut ended = false;
    let mut last_line = 0;
    for (no, text) in lines {
        last_line = no;
        if ended {
            return Err(perr(no, 1, "end of file after 'end'"));
        }
        if text.starts_with(char::is_whitespace) {
            let sec = current.ok_or_else(|| perr(no, 1, "section header"))?;
            let toks = tokens(&text);
            let k = sec.arity();
            if toks.len() <= k {
                return Err(perr(no, text.len() + 1, format!("{k} indices and a scalar")));
            }
            let mut idx = Vec::with_capacity(k);
            for &t in &toks[..k] {
                let i: usize = num(no, t, "index")?;
                if i >= d {
                    return Err(perr(no, t.0, format!("index below {d}")));
                }
                idx.push(i);
            }
            let scol = toks[k].0;
            let c = CycNum::parse(&text[scol - 1..], n)
                .map_err(|(col, what)| perr(no, scol + col - 1, what))?;
            let slot = entries.entry(SectionKey(sec)).or_default();
            if slot.insert(idx, c).is_some() {
                return Err(perr(no, 1, "each entry at most once"));
            }
            continue;
        }
        let toks = tokens(&text);
        let head = toks[0].1;
        current = None;
        match head {
            "phi" | "psi" => {
                let which = usize::from(head == "psi");
                if toks.len() < 3 {
                    return Err(perr(no, text.len() + 1, "generator index and 'perm' or 'matrix'"));
                }
                let g: usize = num(no, toks[1], "generator index")?;
                if g >= r {
                    return Err(perr(no, toks[1].0, format!("generator below {r}")));
                }
                if actions[which][g].is_some() {
                    return Err(perr(no, 1, "one action line per generator"));
                }
                match toks[2].1 {
                    "perm" => {
                        let p: Vec<usize> = toks[3..]
                            .iter()
                            .map(|&t| num(no, t, "index"))
                            .collect::<Result<_>>()?;
                        if p.len() != d {
                            return Err(YdhError::DimensionMismatch {
                                context: format!("permutation on line {no}"),
                                expected: d,
                                found: p.len(),
                            });
                        }
                        let mut seen = vec![false; d];
                        for (&i, t) in p.iter().zip(&toks[3..]) {
                            if i >= d || seen[i] {
                                return Err(perr(no, t.0, "a permutation of 0..dim"));
                            }
                            seen[i] = true;
                        }
                        actions[which][g] = Some(Mat::permutation(&p, n));
                    }
                    "matrix" => {
                        if toks.len() > 3 {
                            return Err(perr(no, toks[3].0, "end of line"));
                        }
                        actions[which][g] = Some(Mat::zeros(d, d, n));
                        current = Some(Section::Action(which == 1, g));
                    }
                    _ => return Err(perr(no, toks[2].0, "'perm' or 'matrix'")),
                }
            }
            "unit" | "counit" | "mult" | "comult" | "antipode" => {
                if toks.len() > 1 {
                    return Err(perr(no, toks[1].0, "end of line"));
                }
                let sec = match head {
                    "unit" => Section::Unit,
                    "counit" => Section::Counit,
                    "mult" => Section::Mult,
                    "comult" => Section::Comult,
                    _ => Section::Antipode,
                };
                if entries.contains_key(&SectionKey(sec)) {
                    return Err(perr(no, 1, format!("one '{head}' section")));
                }
                entries.insert(SectionKey(sec), BTreeMap::new());
                current = Some(sec);
            }
            "end" => {
                if toks.len() > 1 {
                    return Err(perr(no, toks[1].0, "end of line"));
                }
                ended = true;
            }
            _ => {
                return Err(perr(
                    no,
                    1,
                    "'phi', 'psi', 'unit', 'counit', 'mult', 'comult', 'antipode' or 'end'",
                ))
            }
        }
    }
    if !ended {
        return Err(perr(last_line + 1, 1, "'end'"));
    }
    let mut gens: [Vec<Mat>; 2] = [Vec::new(), Vec::new()];
    for which in 0..2 {
        for g in 0..r {
            let mut m = actions[which][g].clone().ok_or_else(|| {
                perr(
                    last_line,
                    1,
                    format!("{} line for generator {g}", ["phi", "psi"][which]),
                )
            })?;
            if let Some(es) = entries.get(&SectionKey(Section::Action(which == 1, g))) {
                for (ij, c) in es {
                    m.set(ij[0], ij[1], c.clone());
                }
            }
            gens[which].push(m);
        }
    }
    let need = |s: Section, name: &str| -> Result<&BTreeMap<Vec<usize>, CycNum>> {
        entries
            .get(&SectionKey(s))
            .ok_or_else(|| perr(last_line, 1, format!("'{name}' section")))
    };
    let vec_of = |m: &BTreeMap<Vec<usize>, CycNum>| -> Vector {
        let mut v = zero_vec(d, n);
        for (i, c) in m {
            v[i[0]] = c.clone();
        }
        v
    };
    let tensor_of = |m: &BTreeMap<Vec<usize>, CycNum>| -> Tensor3 {
        let mut t = Tensor3::zeros(d, d, d, n);
        for (i, c) in m {
            t.set(i[0], i[1], i[2], c.clone());
        }
        t
    };
    let unit = vec_of(need(Section::Unit, "unit")?);
    let counit = vec_of(need(Section::Counit, "counit")?);
    let mult = tensor_of(need(Section::Mult, "mult")?);
    let comult = tensor_of(need(Section::Comult, "comult")?);
    let antipode = entries.get(&SectionKey(Section::Antipode)).map(|m| {
        let mut s = Mat::zeros(d, d, n);
        for (ij, c) in m {
            s.set(ij[0], ij[1], c.clone());
        }
        s
    });
    let [phi, psi] = gens;
    let module = YDModule::with_dim(h.group, n, d, phi, psi)?;
    let algebra = YDHopfAlgebra::new(module, mult, unit, comult, counit, antipode, h.side)?;
    Ok(YdhDocument {
        names: h.names,
        algebra,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct SectionKey(Section);

impl SectionKey {
    fn rank(&self) -> (usize, usize, usize) {
        match self.0 {
            Section::Action(psi, g) => (0, usize::from(psi), g),
            Section::Unit => (1, 0, 0),
            Section::Counit => (2, 0, 0),
            Section::Mult => (3, 0, 0),
            Section::Comult => (4, 0, 0),
            Section::Antipode => (5, 0, 0),
        }
    }
}

impl PartialOrd for SectionKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SectionKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

pub fn parse(text: &str) -> Result<YDHopfAlgebra> {
    parse_document(text).map(|d| d.algebra)
}

pub fn read_file(path: &Path) -> Result<YdhDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| YdhError::Io(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn write_file(path: &Path, doc: &YdhDocument) -> Result<()> {
    std::fs::write(path, render_document(doc))
        .map_err(|e| YdhError::Io(format!("{}: {e}", path.display())))
}

fn as_permutation(m: &Mat) -> Option<Vec<usize>> {
    let d = m.cols();
    let mut p = Vec::with_capacity(d);
    for j in 0..d {
        let mut img = None;
        for i in 0..d {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            if !v.is_one() || img.is_some() {
                return None;
            }
            img = Some(i);
        }
        p.push(img?);
    }
    Some(p)
}

/// Canonical text: fixed header order, permutation actions written as `perm`, entries sorted
/// by index with zeros omitted.
pub fn render_document(doc: &YdhDocument) -> String {
    let a = &doc.algebra;
    let d = a.dim();
    let m = a.module();
    let mut out = String::new();
    let side = match a.side() {
        YdSide::Left => "left",
        YdSide::Right => "right",
    };
    let _ = writeln!(out, "ydh {FORMAT_VERSION}");
    let _ = writeln!(out, "order {}", a.order());
    let _ = writeln!(out, "group {}", m.group());
    let _ = writeln!(out, "side {side}");
    let _ = writeln!(out, "dim {d}");
    let _ = writeln!(out, "basis {}", doc.names.join(" "));
    for (name, gens) in [("phi", m.phi_gens()), ("psi", m.psi_gens())] {
        for (g, mat) in gens.iter().enumerate() {
            match as_permutation(mat) {
                Some(p) => {
                    let ps: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "{name} {g} perm {}", ps.join(" "));
                }
                None => {
                    let _ = writeln!(out, "{name} {g} matrix");
                    for i in 0..d {
                        for j in 0..d {
                            let c = mat.get(i, j);
                            if !c.is_zero() {
                                let _ = writeln!(out, "  {i} {j} {}", c.render());
                            }
                        }
                    }
                }
            }
        }
    }
    for (name, v) in [("unit", a.unit()), ("counit", a.counit())] {
        let _ = writeln!(out, "{name}");
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let _ = writeln!(out, "  {i} {}", c.render());
            }
        }
    }
    for (name, t) in [("mult", a.mult()), ("comult", a.comult())] {
        let _ = writeln!(out, "{name}");
        for ([i, j, k], c) in t.nonzeros() {
            let _ = writeln!(out, "  {i} {j} {k} {}", c.render());
        }
    }
    if let Some(s) = a.antipode() {
        let _ = writeln!(out, "antipode");
        for i in 0..d {
            for j in 0..d {
                let c = s.get(i, j);
                if !c.is_zero() {
                    let _ = writeln!(out, "  {i} {j} {}", c.render());
                }
            }
        }
    }
    out.push_str("end\n");
    out
}

pub fn render(a: &YDHopfAlgebra) -> String {
    render_document(&YdhDocument::new(a.clone()))
}
