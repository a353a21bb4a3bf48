//! The connected-subset presentation aw(n): interval calculus, the
//! hole-recursion expansion of multi-index generators, relation enumeration
//! over the C-alphabet, and the letterwise translations realizing the
//! equivalence with A(n).

use crate::ideal::{complete, member, IdealError, MemberStatus, RewriteSystem};
use crate::ncpoly::{AlgebraError, AlphabetKind, Context, GenSymbol, NcPoly};
use crate::presentation::{clearing_factor, relations, RelationSet};
use crate::report::{ItemStatus, VerifyReport};
use std::fmt;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AwError {
    #[error("subsets are not disjoint")]
    NotDisjoint,
    #[error("more than one hole in the sequence")]
    MultipleHoles,
    #[error("sequence is not monotonic")]
    NonMonotonic,
    #[error("sequence parts overlap")]
    Overlapping,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Nonempty interval {lo, ..., hi} of 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConnSubset {
    pub lo: u8,
    pub hi: u8,
}

impl ConnSubset {
    pub fn new(lo: u8, hi: u8) -> Result<Self, AwError> {
        if lo >= 1 && lo <= hi {
            Ok(ConnSubset { lo, hi })
        } else {
            Err(AwError::IndexOutOfRange(format!("{lo}..{hi}")))
        }
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn disjoint(&self, other: &ConnSubset) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    pub fn contains(&self, other: &ConnSubset) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Entirely left of the other interval.
    pub fn before(&self, other: &ConnSubset) -> bool {
        self.hi < other.lo
    }

    fn union_span(&self, other: &ConnSubset) -> ConnSubset {
        ConnSubset {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn letter(&self, ctx: Context) -> Result<NcPoly, AwError> {
        let sym = match ctx.kind {
            AlphabetKind::A => GenSymbol::a(self.lo, self.hi),
            AlphabetKind::C => GenSymbol::c(self.lo, self.hi),
        };
        NcPoly::letter(ctx, sym).map_err(AwError::from)
    }
}

impl fmt::Display for ConnSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// True when the union of two disjoint intervals is again an interval.
pub fn adjacent(a: &ConnSubset, b: &ConnSubset) -> Result<bool, AwError> {
    if !a.disjoint(b) {
        return Err(AwError::NotDisjoint);
    }
    Ok(a.hi + 1 == b.lo || b.hi + 1 == a.lo)
}

/// The interval strictly between two disjoint intervals; None when adjacent.
pub fn hole_between(a: &ConnSubset, b: &ConnSubset) -> Result<Option<ConnSubset>, AwError> {
    if !a.disjoint(b) {
        return Err(AwError::NotDisjoint);
    }
    let (left, right) = if a.before(b) { (a, b) } else { (b, a) };
    if left.hi + 1 == right.lo {
        Ok(None)
    } else {
        Ok(Some(ConnSubset {
            lo: left.hi + 1,
            hi: right.lo - 1,
        }))
    }
}

/// Ordered list of pairwise-disjoint intervals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSeq {
    pub parts: Vec<ConnSubset>,
}

impl SubsetSeq {
    pub fn new(parts: Vec<ConnSubset>) -> Self {
        SubsetSeq { parts }
    }

    fn validate(&self, n: u8) -> Result<Direction, AwError> {
        if self.parts.is_empty() {
            return Err(AwError::IndexOutOfRange("empty sequence".into()));
        }
        for p in &self.parts {
            if p.hi > n {
                return Err(AwError::IndexOutOfRange(format!("{p} for n={n}")));
            }
        }
        for (x, a) in self.parts.iter().enumerate() {
            for b in self.parts.iter().skip(x + 1) {
                if !a.disjoint(b) {
                    return Err(AwError::Overlapping);
                }
            }
        }
        if self.parts.len() == 1 {
            return Ok(Direction::Ascending);
        }
        let asc = self.parts.windows(2).all(|w| w[0].before(&w[1]));
        let desc = self.parts.windows(2).all(|w| w[1].before(&w[0]));
        match (asc, desc) {
            (true, _) => Ok(Direction::Ascending),
            (_, true) => Ok(Direction::Descending),
            _ => Err(AwError::NonMonotonic),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Direction {
    Ascending,
    Descending,
}

/// Expand a multi-index generator: a connected union is the single generator
/// of the union; exactly one hole H between consecutive blocks applies the
/// recursion -[C_{I1 H}, C_{H I2}]_q + C_{I1} C_{I2} + C_H C_{I1 H I2} once
/// (all sub-symbols have connected unions). Result degree <= 2.
pub fn c_expand(n: u8, seq: &SubsetSeq, target: AlphabetKind) -> Result<NcPoly, AwError> {
    let ctx = Context::new(target, n);
    let dir = seq.validate(n)?;
    // gaps between consecutive sequence parts
    let mut holes: Vec<(usize, ConnSubset)> = Vec::new();
    for (t, w) in seq.parts.windows(2).enumerate() {
        let h = match dir {
            Direction::Ascending => hole_between(&w[0], &w[1])?,
            Direction::Descending => hole_between(&w[1], &w[0])?,
        };
        if let Some(h) = h {
            holes.push((t, h));
        }
    }
    let total = seq
        .parts
        .iter()
        .skip(1)
        .fold(seq.parts[0], |acc, p| acc.union_span(p));
    match holes.len() {
        0 => total.letter(ctx),
        1 => {
            let (t, h) = holes[0];
            let i1 = seq.parts[..=t]
                .iter()
                .skip(1)
                .fold(seq.parts[0], |acc, p| acc.union_span(p));
            let i2 = seq.parts[t + 1..]
                .iter()
                .skip(1)
                .fold(seq.parts[t + 1], |acc, p| acc.union_span(p));
            let c_i1h = i1.union_span(&h).letter(ctx)?;
            let c_hi2 = h.union_span(&i2).letter(ctx)?;
            let bracket = NcPoly::qbracket(&c_i1h, &c_hi2)?;
            let prod = &i1.letter(ctx)? * &i2.letter(ctx)?;
            let tail = &h.letter(ctx)? * &total.letter(ctx)?;
            Ok(&(&bracket.neg() + &prod) + &tail)
        }
        _ => Err(AwError::MultipleHoles),
    }
}

/// All connected subsets of [1, n] in (lo, hi) order; there are n(n+1)/2,
/// matching the matrix alphabet size.
pub fn connected_subsets(n: u8) -> Vec<ConnSubset> {
    let mut out = Vec::new();
    for lo in 1..=n {
        for hi in lo..=n {
            out.push(ConnSubset { lo, hi });
        }
    }
    out
}

fn splits(window: ConnSubset, blocks: usize) -> Vec<Vec<ConnSubset>> {
    // all ways to cut the window into `blocks` nonempty consecutive intervals
    let mut out = Vec::new();
    fn rec(lo: u8, hi: u8, blocks: usize, acc: &mut Vec<ConnSubset>, out: &mut Vec<Vec<ConnSubset>>) {
        if blocks == 1 {
            let mut v = acc.clone();
            v.push(ConnSubset { lo, hi });
            out.push(v);
            return;
        }
        // leave at least blocks-1 positions for the rest
        for cut in lo..=hi - blocks as u8 + 1 {
            acc.push(ConnSubset { lo, hi: cut });
            rec(cut + 1, hi, blocks - 1, acc, out);
            acc.pop();
        }
    }
    if window.len() >= blocks {
        rec(window.lo, window.hi, blocks, &mut Vec::new(), &mut out);
    }
    out
}

/// The defining relation family of aw(n) over the C-alphabet: commutators of
/// disjoint-or-nested pairs, the monotonic-triple relation over every window
/// split (both directions), and the monotonic-quadruple relation likewise;
/// derived symbols expanded eagerly via the hole recursion and denominators
/// cleared. Deterministic order.
pub fn aw_relations(n: u8) -> RelationSet {
    let ctx = Context::c(n);
    let clear = clearing_factor();
    let mut entries: Vec<(String, NcPoly)> = Vec::new();

    let subs = connected_subsets(n);
    for (x, a) in subs.iter().enumerate() {
        for b in subs.iter().skip(x + 1) {
            if a.disjoint(b) || a.contains(b) || b.contains(a) {
                let pa = a.letter(ctx).expect("valid");
                let pb = b.letter(ctx).expect("valid");
                entries.push((
                    format!("AW1[{a};{b}]"),
                    NcPoly::comm(&pa, &pb).expect("same ctx"),
                ));
            }
        }
    }

    let seq = |parts: &[ConnSubset]| SubsetSeq::new(parts.to_vec());
    for lo in 1..=n {
        for hi in lo + 2..=n {
            let window = ConnSubset { lo, hi };
            for blocks in splits(window, 3) {
                let (b1, b2, b3) = (blocks[0], blocks[1], blocks[2]);
                for (i1, i2, i3) in [(b1, b2, b3), (b3, b2, b1)] {
                    let c12 = c_expand(n, &seq(&[i1, i2]), AlphabetKind::C).expect("adjacent");
                    let c23 = c_expand(n, &seq(&[i2, i3]), AlphabetKind::C).expect("adjacent");
                    let c13 = c_expand(n, &seq(&[i1, i3]), AlphabetKind::C).expect("one hole");
                    let c123 =
                        c_expand(n, &seq(&[i1, i2, i3]), AlphabetKind::C).expect("connected");
                    let elem = &(&(&c12 + &NcPoly::qbracket(&c23, &c13).expect("same ctx"))
                        - &(&i1.letter(ctx).unwrap() * &i2.letter(ctx).unwrap()))
                        - &(&i3.letter(ctx).unwrap() * &c123);
                    entries.push((format!("AW2[{i1};{i2};{i3}]"), elem.scale(&clear)));
                }
            }
        }
    }

    for lo in 1..=n {
        for hi in (lo + 3..=n).filter(|hi| hi - lo >= 3) {
            let window = ConnSubset { lo, hi };
            for blocks in splits(window, 4) {
                let (b1, b2, b3, b4) = (blocks[0], blocks[1], blocks[2], blocks[3]);
                for (i1, i2, i3, i4) in [(b1, b2, b3, b4), (b4, b3, b2, b1)] {
                    let c14 = c_expand(n, &seq(&[i1, i4]), AlphabetKind::C).expect("one hole");
                    let c13 = c_expand(n, &seq(&[i1, i3]), AlphabetKind::C).expect("one hole");
                    let c34 = c_expand(n, &seq(&[i3, i4]), AlphabetKind::C).expect("adjacent");
                    let c134 =
                        c_expand(n, &seq(&[i1, i3, i4]), AlphabetKind::C).expect("one hole");
                    let elem = &(&(&c14 + &NcPoly::qbracket(&c13, &c34).expect("same ctx"))
                        - &(&i1.letter(ctx).unwrap() * &i4.letter(ctx).unwrap()))
                        - &(&i3.letter(ctx).unwrap() * &c134);
                    entries.push((format!("AW3[{i1};{i2};{i3};{i4}]"), elem.scale(&clear)));
                }
            }
        }
    }

    RelationSet::new(ctx, entries)
}

fn relabel(p: &NcPoly, to: AlphabetKind) -> Result<NcPoly, AlgebraError> {
    let src = p.ctx();
    let dst = Context::new(to, src.n);
    p.substitute(dst, &|id| {
        let (a, b) = match src.symbol_of(id) {
            GenSymbol::A { i, j } => (i, j),
            GenSymbol::C { lo, hi } => (lo, hi),
        };
        let sym = match to {
            AlphabetKind::A => GenSymbol::a(a, b),
            AlphabetKind::C => GenSymbol::c(a, b),
        };
        NcPoly::letter(dst, sym).ok()
    })
}

/// Letterwise translation A(n) -> aw(n): a[i,j] becomes C[i..j], extended
/// homomorphically. Inverse of [`psi_translate`] on the nose.
pub fn phi_translate(p: &NcPoly) -> Result<NcPoly, AlgebraError> {
    if p.ctx().kind != AlphabetKind::A {
        return Err(AlgebraError::AlphabetMismatch(
            Context::a(p.ctx().n),
            p.ctx(),
        ));
    }
    relabel(p, AlphabetKind::C)
}

/// Letterwise translation aw(n) -> A(n): C[lo..hi] becomes a[lo,hi].
pub fn psi_translate(p: &NcPoly) -> Result<NcPoly, AlgebraError> {
    if p.ctx().kind != AlphabetKind::C {
        return Err(AlgebraError::AlphabetMismatch(
            Context::c(p.ctx().n),
            p.ctx(),
        ));
    }
    relabel(p, AlphabetKind::A)
}

/// Both membership batteries of the equivalence plus the literal letter-map
/// inverse check, against prebuilt systems for the two sides.
pub fn check_isomorphism_with(
    rels_a: &RelationSet,
    sys_a: &RewriteSystem,
    rels_c: &RelationSet,
    sys_c: &RewriteSystem,
    budget: Option<Duration>,
) -> Result<VerifyReport, IdealError> {
    let n = rels_a.ctx().n;
    let deadline = budget.map(|b| Instant::now() + b);
    let mut report = VerifyReport::new(
        "isomorphism",
        n,
        sys_a.maxdeg().max(sys_c.maxdeg()),
        sys_a.complete_upto().min(sys_c.complete_upto()),
    );

    let mut expired = false;
    for (name, r) in rels_c.iter() {
        if let Some(d) = deadline {
            if Instant::now() > d {
                expired = true;
                break;
            }
        }
        let t = Instant::now();
        let img = psi_translate(r).expect("C-side relation");
        let v = member(&img, sys_a)?;
        report.push(
            format!("psi({name})"),
            name.clone(),
            match v.status {
                MemberStatus::InIdeal => ItemStatus::Verified,
                MemberStatus::Inconclusive => ItemStatus::Inconclusive,
            },
            v.residual.num_terms(),
            t.elapsed().as_secs_f64(),
        );
    }
    for (name, r) in rels_a.iter() {
        if expired {
            break;
        }
        if let Some(d) = deadline {
            if Instant::now() > d {
                expired = true;
                break;
            }
        }
        let t = Instant::now();
        let img = phi_translate(r).expect("A-side relation");
        let v = member(&img, sys_c)?;
        report.push(
            format!("phi({name})"),
            name.clone(),
            match v.status {
                MemberStatus::InIdeal => ItemStatus::Verified,
                MemberStatus::Inconclusive => ItemStatus::Inconclusive,
            },
            v.residual.num_terms(),
            t.elapsed().as_secs_f64(),
        );
    }

    // literal two-sided inverse of the letter maps
    let ctx_a = rels_a.ctx();
    let ctx_c = rels_c.ctx();
    let mut inverse_ok = true;
    for id in ctx_a.letters() {
        let x = NcPoly::from_word(
            ctx_a,
            crate::ncpoly::Word::letter(id),
            crate::coeff::RatFunc::one(),
        );
        let round = psi_translate(&phi_translate(&x).expect("A side")).expect("C side");
        inverse_ok &= round == x;
    }
    for id in ctx_c.letters() {
        let y = NcPoly::from_word(
            ctx_c,
            crate::ncpoly::Word::letter(id),
            crate::coeff::RatFunc::one(),
        );
        let round = phi_translate(&psi_translate(&y).expect("C side")).expect("A side");
        inverse_ok &= round == y;
    }
    report.push(
        "letters-mutually-inverse",
        "letter-maps",
        if inverse_ok {
            ItemStatus::Verified
        } else {
            ItemStatus::Inconclusive
        },
        0,
        0.0,
    );
    if expired {
        report.push(
            "(skipped: budget)",
            "budget",
            ItemStatus::Inconclusive,
            0,
            0.0,
        );
    }
    Ok(report.finalize())
}

/// Convenience battery: builds both relation sets and completions at maxdeg.
pub fn check_isomorphism(
    n: u8,
    maxdeg: usize,
    budget: Option<Duration>,
) -> Result<VerifyReport, IdealError> {
    let rels_a = relations(n);
    let rels_c = aw_relations(n);
    let sys_a = complete(&rels_a, maxdeg, budget)?;
    let sys_c = complete(&rels_c, maxdeg, budget)?;
    check_isomorphism_with(&rels_a, &sys_a, &rels_c, &sys_c, budget)
}
