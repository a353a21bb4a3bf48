//! Degree-truncated two-sided ideal engine: term order, normal-form
//! reduction, overlap-based completion, membership verdicts, an independent
//! linear-span oracle, and a persistent rule-system cache.
//!
//! Soundness contract: a zero normal form is always a constructive proof of
//! ideal membership (every rewrite step replaces u*lead*v by an
//! ideal-equivalent tail), regardless of how far completion got. A nonzero
//! residual is only ever reported as Inconclusive.

use crate::coeff::RatFunc;
use crate::ncpoly::{Context, NcPoly, Word};
use crate::presentation::RelationSet;
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};
use std::io::{BufRead, BufReader, Write as IoWrite};
use std::path::Path;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Context, Context),
    #[error("span basis too large: {rows} rows exceeds cap {cap}")]
    TooLarge { rows: usize, cap: usize },
    #[error("truncation degree {maxdeg} below max relation degree {needed}")]
    DegreeTooSmall { maxdeg: usize, needed: usize },
    #[error("io failure: {0}")]
    IoFailure(String),
    #[error("provenance mismatch: {0}")]
    ProvenanceMismatch(String),
    #[error("format/version mismatch: {0}")]
    FormatVersionMismatch(String),
}

/// Degree-lexicographic word order: length first, then letter ids. The letter
/// order is the context's symbol order; `Word::cmp` realizes the comparison.
/// Compatible with concatenation and well-founded, with the empty word
/// minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TermOrder;

impl TermOrder {
    pub const ID: &'static str = "deglex";

    pub fn compare(a: &Word, b: &Word) -> Ordering {
        a.cmp(b)
    }
}

/// Oriented rewrite rule: the monic leading word rewrites to the tail, whose
/// terms are all strictly smaller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub tail: NcPoly,
}

impl Rule {
    /// lead - tail as a polynomial (a monic ideal element).
    pub fn as_poly(&self) -> NcPoly {
        let mut p = self.tail.neg();
        p.add_term(self.lead.clone(), &RatFunc::one());
        p
    }
}

/// Membership verdict status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemberStatus {
    /// The reduction reached zero: a constructive membership proof.
    InIdeal,
    /// Nonzero residual at the current truncation; never asserts
    /// non-membership.
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: MemberStatus,
    pub residual: NcPoly,
    pub degree_bound_used: usize,
}

/// Inter-reduced, degree-truncated oriented rule set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    ctx: Context,
    rules: Vec<Rule>,
    maxdeg: usize,
    complete_upto: usize,
    provenance: String,
}

impl RewriteSystem {
    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn maxdeg(&self) -> usize {
        self.maxdeg
    }

    /// Degree through which every overlap obstruction has been processed.
    pub fn complete_upto(&self) -> usize {
        self.complete_upto
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    fn check_ctx(&self, other: Context) -> Result<(), IdealError> {
        if self.ctx == other {
            Ok(())
        } else {
            Err(IdealError::AlphabetMismatch(self.ctx, other))
        }
    }

    /// First rule (stored order) whose lead occurs in `w`, with the leftmost
    /// occurrence position.
    fn find_reduction(&self, w: &Word) -> Option<(usize, usize)> {
        for (idx, rule) in self.rules.iter().enumerate() {
            if rule.lead.len() <= w.len() {
                if let Some(pos) = w.find(&rule.lead) {
                    return Some((idx, pos));
                }
            }
        }
        None
    }

    fn reduce_inner(&self, p: &NcPoly) -> NcPoly {
        reduce_with(p, |w| self.find_reduction(w).map(|(i, pos)| (&self.rules[i], pos)))
    }
}

/// Shared reduction loop; `pick` chooses a (rule, position) for a word or
/// None when the word is irreducible. Terminates because every rewrite
/// strictly decreases the popped term and the order is well-founded; a term
/// popped irreducible is final since later additions are strictly smaller.
fn reduce_with<'a>(
    p: &NcPoly,
    pick: impl Fn(&Word) -> Option<(&'a Rule, usize)>,
) -> NcPoly {
    let mut work = p.clone();
    let mut out = NcPoly::zero(p.ctx());
    while let Some((w, c)) = work.pop_leading() {
        match pick(&w) {
            None => out.add_term(w, &c),
            Some((rule, pos)) => {
                let u = w.slice(0..pos);
                let v = w.slice(pos + rule.lead.len()..w.len());
                for (tw, tc) in rule.tail.terms() {
                    work.add_term(u.concat(tw).concat(&v), &(&c * tc));
                }
            }
        }
    }
    out
}

/// Normal form of p modulo the system: no term of the result contains any
/// rule's leading word. Deterministic: highest term first, first matching
/// rule in stored order, leftmost occurrence.
pub fn reduce(p: &NcPoly, sys: &RewriteSystem) -> Result<NcPoly, IdealError> {
    sys.check_ctx(p.ctx())?;
    Ok(sys.reduce_inner(p))
}

/// Membership verdict for p; InIdeal iff the normal form is zero.
pub fn member(p: &NcPoly, sys: &RewriteSystem) -> Result<Verdict, IdealError> {
    let residual = reduce(p, sys)?;
    Ok(Verdict {
        status: if residual.is_zero() {
            MemberStatus::InIdeal
        } else {
            MemberStatus::Inconclusive
        },
        residual,
        degree_bound_used: sys.complete_upto(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AmbKind {
    /// suffix of a's lead (length olap) == prefix of b's lead;
    /// ambiguity word = a.lead ++ b.lead[olap..]
    Overlap { olap: usize },
    /// a's lead occurs inside b's lead at pos; ambiguity word = b.lead
    Contain { pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Amb {
    word: Word,
    a: usize,
    b: usize,
    kind: AmbKind,
}

impl Amb {
    fn rank(&self) -> (usize, usize, usize, usize, usize) {
        match self.kind {
            AmbKind::Overlap { olap } => (self.a, self.b, 0, olap, 0),
            AmbKind::Contain { pos } => (self.a, self.b, 1, pos, 0),
        }
    }
}

impl Ord for Amb {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .cmp(&other.word)
            .then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for Amb {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Slot {
    lead: Word,
    tail: NcPoly,
    alive: bool,
}

struct Completion {
    ctx: Context,
    slots: Vec<Slot>,
    heap: BinaryHeap<std::cmp::Reverse<Amb>>,
    maxdeg: usize,
}

impl Completion {
    fn live_rules(&self) -> impl Iterator<Item = (usize, &Slot)> {
        self.slots.iter().enumerate().filter(|(_, s)| s.alive)
    }

    fn find_reduction(&self, w: &Word) -> Option<(usize, usize)> {
        for (idx, slot) in self.live_rules() {
            if slot.lead.len() <= w.len() {
                if let Some(pos) = w.find(&slot.lead) {
                    return Some((idx, pos));
                }
            }
        }
        None
    }

    fn reduce(&self, p: &NcPoly) -> NcPoly {
        let mut work = p.clone();
        let mut out = NcPoly::zero(self.ctx);
        while let Some((w, c)) = work.pop_leading() {
            match self.find_reduction(&w) {
                None => out.add_term(w, &c),
                Some((idx, pos)) => {
                    let slot = &self.slots[idx];
                    let u = w.slice(0..pos);
                    let v = w.slice(pos + slot.lead.len()..w.len());
                    for (tw, tc) in slot.tail.terms() {
                        work.add_term(u.concat(tw).concat(&v), &(&c * tc));
                    }
                }
            }
        }
        out
    }

    /// Reduce, orient, insert, inter-reduce, and queue new ambiguities.
    /// Displaced rules (their lead contains the new lead) are re-inserted via
    /// the worklist, in slot order.
    fn add_rule(&mut self, p: NcPoly) {
        let mut pending = vec![p];
        while let Some(p) = pending.pop() {
            let mut nf = self.reduce(&p);
            let Some((lead, c)) = nf.pop_leading() else {
                continue;
            };
            let inv = c.inv().expect("leading coefficient nonzero");
            let tail = nf.scale(&inv).neg();
            let new_idx = self.slots.len();
            // displaced rules: their lead strictly contains the new lead
            let displaced: Vec<usize> = self
                .live_rules()
                .filter(|(_, s)| s.lead.len() > lead.len() && s.lead.find(&lead).is_some())
                .map(|(i, _)| i)
                .collect();
            self.slots.push(Slot {
                lead: lead.clone(),
                tail,
                alive: true,
            });
            for idx in displaced.iter().rev() {
                // keep worklist LIFO-ordered so lower slots re-insert first
                self.slots[*idx].alive = false;
                pending.push(self.slots[*idx].as_poly(self.ctx));
            }
            // ambiguities of the new rule against every live rule (both
            // directions) and against itself
            let mut found = Vec::new();
            for (idx, slot) in self.live_rules() {
                collect_ambiguities(new_idx, &lead, idx, &slot.lead, &mut found);
                if idx != new_idx {
                    collect_ambiguities(idx, &slot.lead, new_idx, &lead, &mut found);
                }
            }
            for amb in found {
                self.heap.push(std::cmp::Reverse(amb));
            }
        }
    }

    fn s_poly(&self, amb: &Amb) -> NcPoly {
        let a = &self.slots[amb.a];
        let b = &self.slots[amb.b];
        match amb.kind {
            AmbKind::Overlap { olap } => {
                // word = a.lead ++ b.lead[olap..]
                let suffix = b.lead.slice(olap..b.lead.len());
                let prefix = a.lead.slice(0..a.lead.len() - olap);
                let left = mul_word(&a.tail, None, Some(&suffix));
                let right = mul_word(&b.tail, Some(&prefix), None);
                &left - &right
            }
            AmbKind::Contain { pos } => {
                // b.lead = u ++ a.lead ++ v
                let u = b.lead.slice(0..pos);
                let v = b.lead.slice(pos + a.lead.len()..b.lead.len());
                let inner = mul_word(&a.tail, Some(&u), Some(&v));
                &inner - &b.tail
            }
        }
    }
}

fn mul_word(p: &NcPoly, left: Option<&Word>, right: Option<&Word>) -> NcPoly {
    let mut out = NcPoly::zero(p.ctx());
    for (w, c) in p.terms() {
        let mut word = match left {
            Some(u) => u.concat(w),
            None => w.clone(),
        };
        if let Some(v) = right {
            word = word.concat(v);
        }
        out.add_term(word, c);
    }
    out
}

fn collect_ambiguities(a: usize, la: &Word, b: usize, lb: &Word, out: &mut Vec<Amb>) {
    // proper prefix-suffix overlaps: suffix of la == prefix of lb
    let max_olap = la.len().min(lb.len());
    for olap in 1..max_olap {
        if la.0[la.len() - olap..] == lb.0[..olap] {
            let word = la.concat(&lb.slice(olap..lb.len()));
            out.push(Amb {
                word,
                a,
                b,
                kind: AmbKind::Overlap { olap },
            });
        }
    }
    // containment: la strictly inside lb
    if a != b && la.len() < lb.len() {
        let mut start = 0usize;
        while start + la.len() <= lb.len() {
            if lb.0[start..start + la.len()] == la.0[..] {
                out.push(Amb {
                    word: lb.clone(),
                    a,
                    b,
                    kind: AmbKind::Contain { pos: start },
                });
            }
            start += 1;
        }
    }
}

impl Slot {
    fn as_poly(&self, _ctx: Context) -> NcPoly {
        let mut p = self.tail.neg();
        p.add_term(self.lead.clone(), &RatFunc::one());
        p
    }
}

/// Overlap-driven completion of the relation set, processing every ambiguity
/// whose word degree is at most `maxdeg`. Pair selection is deterministic:
/// smallest ambiguity word first (deglex), ties by rule creation order. On
/// budget exhaustion the partial system reports the honest complete_upto.
pub fn complete(
    rels: &RelationSet,
    maxdeg: usize,
    budget: Option<Duration>,
) -> Result<RewriteSystem, IdealError> {
    let needed = rels
        .iter()
        .filter_map(|(_, p)| p.degree())
        .max()
        .unwrap_or(0);
    if maxdeg < needed {
        return Err(IdealError::DegreeTooSmall { maxdeg, needed });
    }
    let ctx = rels.ctx();
    let deadline = budget.map(|b| Instant::now() + b);
    let mut st = Completion {
        ctx,
        slots: Vec::new(),
        heap: BinaryHeap::new(),
        maxdeg,
    };
    for (_, p) in rels.iter() {
        st.add_rule(p.clone());
    }
    let complete_upto;
    loop {
        // drop dead entries eagerly so the heap minimum is meaningful
        while let Some(std::cmp::Reverse(amb)) = st.heap.peek() {
            if st.slots[amb.a].alive && st.slots[amb.b].alive {
                break;
            }
            st.heap.pop();
        }
        let Some(std::cmp::Reverse(top)) = st.heap.peek() else {
            complete_upto = maxdeg;
            break;
        };
        if top.word.len() > st.maxdeg {
            // everything left is beyond the truncation degree
            complete_upto = maxdeg;
            break;
        }
        if let Some(d) = deadline {
            if Instant::now() > d {
                complete_upto = top.word.len().saturating_sub(1).min(maxdeg);
                break;
            }
        }
        let std::cmp::Reverse(amb) = st.heap.pop().expect("nonempty");
        let s = st.s_poly(&amb);
        st.add_rule(s);
    }
    // compact live rules in creation order, tails fully reduced
    let live: Vec<(Word, NcPoly)> = st
        .live_rules()
        .map(|(_, s)| (s.lead.clone(), s.tail.clone()))
        .collect();
    let mut rules: Vec<Rule> = Vec::with_capacity(live.len());
    for (lead, tail) in &live {
        let tail = st.reduce(tail);
        rules.push(Rule {
            lead: lead.clone(),
            tail,
        });
    }
    Ok(RewriteSystem {
        ctx,
        rules,
        maxdeg,
        complete_upto,
        provenance: rels.provenance(),
    })
}

/// Exact degree-bounded ideal membership by linear algebra over Q(q):
/// whether p lies in the span of { u*r*v : r in rels, deg(u*r*v) <= maxdeg }.
/// Complete at the stated bound, hence a decision procedure there. Fails
/// with TooLarge when the generator row count would exceed `cap`.
pub fn span_member(
    p: &NcPoly,
    rels: &RelationSet,
    maxdeg: usize,
    cap: usize,
) -> Result<bool, IdealError> {
    let ctx = rels.ctx();
    if p.ctx() != ctx {
        return Err(IdealError::AlphabetMismatch(ctx, p.ctx()));
    }
    if p.degree().unwrap_or(0) > maxdeg {
        return Err(IdealError::DegreeTooSmall {
            maxdeg,
            needed: p.degree().unwrap_or(0),
        });
    }
    let letters: Vec<u16> = (0..ctx.size() as u16).collect();
    // echelon basis keyed by monic leading word
    let mut basis: BTreeMap<Word, NcPoly> = BTreeMap::new();
    let mut rows = 0usize;

    let mut insert_row = |basis: &mut BTreeMap<Word, NcPoly>, mut row: NcPoly| {
        loop {
            let Some((lead, c)) = row.leading().map(|(w, c)| (w.clone(), c.clone())) else {
                return;
            };
            match basis.get(&lead) {
                Some(b) => row = &row - &b.scale(&c),
                None => {
                    let inv = c.inv().expect("nonzero lead");
                    basis.insert(lead, row.scale(&inv));
                    return;
                }
            }
        }
    };

    for (_, r) in rels.iter() {
        let dr = match r.degree() {
            Some(d) => d,
            None => continue,
        };
        if dr > maxdeg {
            continue;
        }
        let free = maxdeg - dr;
        for (u, v) in word_pairs(&letters, free) {
            rows += 1;
            if rows > cap {
                return Err(IdealError::TooLarge { rows, cap });
            }
            let row = mul_word(r, Some(&u), Some(&v));
            insert_row(&mut basis, row);
        }
    }

    // reduce p against the echelon basis by leading-term elimination
    let mut w = p.clone();
    loop {
        let Some((lead, c)) = w.leading().map(|(x, c)| (x.clone(), c.clone())) else {
            return Ok(true);
        };
        match basis.get(&lead) {
            Some(b) => w = &w - &b.scale(&c),
            None => return Ok(false),
        }
    }
}

/// All word pairs (u, v) with |u| + |v| <= free, in deterministic order
/// (total length, then u, then v).
fn word_pairs(letters: &[u16], free: usize) -> Vec<(Word, Word)> {
    fn words_of_len(letters: &[u16], len: usize) -> Vec<Word> {
        if len == 0 {
            return vec![Word::empty()];
        }
        let shorter = words_of_len(letters, len - 1);
        let mut out = Vec::with_capacity(shorter.len() * letters.len());
        for w in &shorter {
            for &l in letters {
                let mut v = w.0.clone();
                v.push(l);
                out.push(Word(v));
            }
        }
        out
    }
    let mut out = Vec::new();
    for total in 0..=free {
        for alen in 0..=total {
            let blen = total - alen;
            for u in words_of_len(letters, alen) {
                for v in words_of_len(letters, blen) {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
    }
    out
}

const CACHE_MAGIC: &str = "AWGB/1";

/// Write the system to a versioned text cache file with an integrity
/// checksum trailer.
pub fn sys_save(sys: &RewriteSystem, path: &Path) -> Result<(), IdealError> {
    let mut body = String::new();
    body.push_str(CACHE_MAGIC);
    body.push('\n');
    body.push_str(&format!(
        "context {} {} {}\n",
        sys.ctx.kind, sys.ctx.n, TermOrder::ID
    ));
    body.push_str(&format!("provenance {}\n", sys.provenance));
    body.push_str(&format!("maxdeg {}\n", sys.maxdeg));
    body.push_str(&format!("complete_upto {}\n", sys.complete_upto));
    body.push_str(&format!("rules {}\n", sys.rules.len()));
    for rule in &sys.rules {
        body.push_str(&format!("{}\n", rule.as_poly()));
    }
    let mut h = Sha256::new();
    h.update(body.as_bytes());
    let trailer = format!("checksum sha256:{}\n", hex::encode(h.finalize()));
    let mut f = std::fs::File::create(path).map_err(|e| IdealError::IoFailure(e.to_string()))?;
    f.write_all(body.as_bytes())
        .and_then(|_| f.write_all(trailer.as_bytes()))
        .map_err(|e| IdealError::IoFailure(e.to_string()))
}

/// Load a cached system, verifying the header, the checksum trailer, and the
/// provenance of the expected relation set. Refuses mismatched contexts; a
/// truncated or tampered file never yields a silent partial system.
pub fn sys_load(path: &Path, expect: &RelationSet) -> Result<RewriteSystem, IdealError> {
    let f = std::fs::File::open(path).map_err(|e| IdealError::IoFailure(e.to_string()))?;
    let mut lines = Vec::new();
    for line in BufReader::new(f).lines() {
        lines.push(line.map_err(|e| IdealError::IoFailure(e.to_string()))?);
    }
    if lines.is_empty() || lines[0] != CACHE_MAGIC {
        return Err(IdealError::FormatVersionMismatch(format!(
            "bad magic in {}",
            path.display()
        )));
    }
    let last = lines
        .last()
        .ok_or_else(|| IdealError::FormatVersionMismatch("empty file".into()))?;
    let sum = last
        .strip_prefix("checksum sha256:")
        .ok_or_else(|| IdealError::FormatVersionMismatch("missing checksum trailer".into()))?
        .to_string();
    let body = lines[..lines.len() - 1]
        .iter()
        .map(|l| format!("{l}\n"))
        .collect::<String>();
    let mut h = Sha256::new();
    h.update(body.as_bytes());
    if hex::encode(h.finalize()) != sum {
        return Err(IdealError::FormatVersionMismatch(
            "checksum mismatch (truncated or corrupted cache)".into(),
        ));
    }

    let mut it = lines[1..lines.len() - 1].iter();
    let ctx_line = it
        .next()
        .ok_or_else(|| IdealError::FormatVersionMismatch("missing context line".into()))?;
    let parts: Vec<&str> = ctx_line.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "context" {
        return Err(IdealError::FormatVersionMismatch("bad context line".into()));
    }
    let kind = match parts[1] {
        "A" => crate::ncpoly::AlphabetKind::A,
        "C" => crate::ncpoly::AlphabetKind::C,
        other => {
            return Err(IdealError::FormatVersionMismatch(format!(
                "unknown alphabet kind {other}"
            )))
        }
    };
    let n: u8 = parts[2]
        .parse()
        .map_err(|_| IdealError::FormatVersionMismatch("bad n".into()))?;
    let ctx = Context::new(kind, n);
    if parts[3] != TermOrder::ID {
        return Err(IdealError::ProvenanceMismatch(format!(
            "order descriptor {} != {}",
            parts[3],
            TermOrder::ID
        )));
    }
    if ctx != expect.ctx() {
        return Err(IdealError::ProvenanceMismatch(format!(
            "cache context {} does not match requested {}",
            ctx,
            expect.ctx()
        )));
    }
    let prov_line = it
        .next()
        .ok_or_else(|| IdealError::FormatVersionMismatch("missing provenance".into()))?;
    let prov = prov_line
        .strip_prefix("provenance ")
        .ok_or_else(|| IdealError::FormatVersionMismatch("bad provenance line".into()))?;
    if prov != expect.provenance() {
        return Err(IdealError::ProvenanceMismatch(
            "cache was built from a different relation set".into(),
        ));
    }
    let maxdeg: usize = it
        .next()
        .and_then(|l| l.strip_prefix("maxdeg "))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IdealError::FormatVersionMismatch("bad maxdeg line".into()))?;
    let complete_upto: usize = it
        .next()
        .and_then(|l| l.strip_prefix("complete_upto "))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IdealError::FormatVersionMismatch("bad complete_upto line".into()))?;
    let nrules: usize = it
        .next()
        .and_then(|l| l.strip_prefix("rules "))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IdealError::FormatVersionMismatch("bad rules line".into()))?;
    let mut rules = Vec::with_capacity(nrules);
    for _ in 0..nrules {
        let line = it
            .next()
            .ok_or_else(|| IdealError::FormatVersionMismatch("truncated rule list".into()))?;
        let poly = crate::parse::parse_expr(line, ctx)
            .map_err(|e| IdealError::FormatVersionMismatch(format!("bad rule: {e}")))?;
        let mut nf = poly;
        let Some((lead, c)) = nf.pop_leading() else {
            return Err(IdealError::FormatVersionMismatch("zero rule".into()));
        };
        if !c.is_one() {
            return Err(IdealError::FormatVersionMismatch("non-monic rule".into()));
        }
        rules.push(Rule {
            lead,
            tail: nf.neg(),
        });
    }
    if it.next().is_some() {
        return Err(IdealError::FormatVersionMismatch("trailing data".into()));
    }
    Ok(RewriteSystem {
        ctx,
        rules,
        maxdeg,
        complete_upto,
        provenance: prov.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::GenSymbol;
    use crate::presentation::{gen, relations};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sys3(maxdeg: usize) -> RewriteSystem {
        complete(&relations(3), maxdeg, None).unwrap()
    }

    #[test]
    fn generators_reduce_to_zero() {
        let rels = relations(3);
        let sys = sys3(4);
        for (name, p) in rels.iter() {
            let v = member(p, &sys).unwrap();
            assert_eq!(v.status, MemberStatus::InIdeal, "{name}");
        }
    }

    #[test]
    fn commutator_of_central_pair_reduces() {
        let ctx = Context::a(3);
        let sys = sys3(4);
        let p = &(&gen(ctx, 1, 2).unwrap() * &gen(ctx, 1, 1).unwrap())
            - &(&gen(ctx, 1, 1).unwrap() * &gen(ctx, 1, 2).unwrap());
        assert!(reduce(&p, &sys).unwrap().is_zero());
    }

    #[test]
    fn q_pair_does_not_plainly_commute() {
        // a[2,3]a[1,2] - a[1,2]a[2,3] only q-commutes; the residual is
        // nonzero and the span oracle at degree 4 confirms non-membership
        let ctx = Context::a(3);
        let rels = relations(3);
        let sys = complete(&rels, 5, None).unwrap();
        let p = &(&gen(ctx, 2, 3).unwrap() * &gen(ctx, 1, 2).unwrap())
            - &(&gen(ctx, 1, 2).unwrap() * &gen(ctx, 2, 3).unwrap());
        let v = member(&p, &sys).unwrap();
        assert_eq!(v.status, MemberStatus::Inconclusive);
        assert!(!v.residual.is_zero());
        assert!(!span_member(&p, &rels, 4, 1_000_000).unwrap());
    }

    #[test]
    fn complete_a2_is_the_three_commutators() {
        let sys = complete(&relations(2), 4, None).unwrap();
        assert_eq!(sys.rules().len(), 3);
        assert_eq!(sys.complete_upto(), 4);
        // and A(1) yields the empty system
        let empty = complete(&relations(1), 2, None).unwrap();
        assert!(empty.rules().is_empty());
    }

    #[test]
    fn member_zero_and_single_letter() {
        let ctx = Context::a(3);
        let sys = sys3(4);
        let z = NcPoly::zero(ctx);
        assert_eq!(member(&z, &sys).unwrap().status, MemberStatus::InIdeal);
        let a12 = gen(ctx, 1, 2).unwrap();
        let v = member(&a12, &sys).unwrap();
        assert_eq!(v.status, MemberStatus::Inconclusive);
        assert_eq!(v.residual, a12);
        // the span oracle agrees: no degree-bounded combination reaches a
        // single letter
        assert!(!span_member(&a12, &relations(3), 4, 1_000_000).unwrap());
    }

    #[test]
    fn sandwiched_generators_are_members() {
        let ctx = Context::a(3);
        let rels = relations(3);
        let sys = complete(&rels, 5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let letters: Vec<u16> = (0..ctx.size() as u16).collect();
        for _ in 0..20 {
            let idx = rng.gen_range(0..rels.len());
            let (_, r) = rels.iter().nth(idx).unwrap();
            let total_free = 5usize.saturating_sub(r.degree().unwrap());
            let ulen = rng.gen_range(0..=total_free.min(1));
            let vlen = rng.gen_range(0..=(total_free - ulen).min(1));
            let u = Word(
                (0..ulen)
                    .map(|_| *letters.choose(&mut rng).unwrap())
                    .collect(),
            );
            let v = Word(
                (0..vlen)
                    .map(|_| *letters.choose(&mut rng).unwrap())
                    .collect(),
            );
            let p = mul_word(r, Some(&u), Some(&v));
            let verdict = member(&p, &sys).unwrap();
            assert_eq!(verdict.status, MemberStatus::InIdeal);
            if p.degree().unwrap() <= 4 {
                assert!(span_member(&p, &rels, 4, 1_000_000).unwrap());
            }
        }
    }

    #[test]
    fn span_accepts_explicit_combinations() {
        let ctx = Context::a(3);
        let rels = relations(3);
        let r1 = rels.get("R1[1,1|1,2]").unwrap();
        let r2 = rels.get("R1[1,1|1,3]").unwrap();
        let p = &(r1 + &r2.scale(&RatFunc::q())) + &(&gen(ctx, 1, 1).unwrap() * r2);
        assert!(span_member(&p, &rels, 4, 1_000_000).unwrap());
    }

    #[test]
    fn span_cap_is_enforced() {
        let rels = relations(3);
        let p = rels.get("R1[1,1|1,2]").unwrap();
        assert!(matches!(
            span_member(p, &rels, 4, 10),
            Err(IdealError::TooLarge { .. })
        ));
    }

    #[test]
    fn order_compatible_with_concatenation() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let rand_word = |rng: &mut ChaCha8Rng| {
                let len = rng.gen_range(0..4);
                Word((0..len).map(|_| rng.gen_range(0..6u16)).collect())
            };
            let u = rand_word(&mut rng);
            let v = rand_word(&mut rng);
            let w = rand_word(&mut rng);
            let wp = rand_word(&mut rng);
            if TermOrder::compare(&u, &v) == Ordering::Less {
                let left = w.concat(&u).concat(&wp);
                let right = w.concat(&v).concat(&wp);
                assert_eq!(TermOrder::compare(&left, &right), Ordering::Less);
            }
            assert!(Word::empty() <= u);
        }
    }

    /// Randomized-strategy reduction: any reducible term, any matching rule,
    /// any occurrence. Confluence on the completed range means the normal
    /// form must coincide with the deterministic one.
    fn reduce_shuffled(p: &NcPoly, sys: &RewriteSystem, rng: &mut ChaCha8Rng) -> NcPoly {
        let mut cur = p.clone();
        loop {
            let mut candidates = Vec::new();
            for (w, _) in cur.terms() {
                for (ri, rule) in sys.rules().iter().enumerate() {
                    let mut start = 0;
                    while rule.lead.len() + start <= w.len() {
                        if w.0[start..start + rule.lead.len()] == rule.lead.0[..] {
                            candidates.push((w.clone(), ri, start));
                        }
                        start += 1;
                    }
                }
            }
            let Some((w, ri, pos)) = candidates.choose(rng).cloned() else {
                return cur;
            };
            let rule = &sys.rules()[ri];
            let c = cur.coeff(&w).unwrap().clone();
            let u = w.slice(0..pos);
            let v = w.slice(pos + rule.lead.len()..w.len());
            cur.remove_term(&w);
            for (tw, tc) in rule.tail.terms() {
                cur.add_term(u.concat(tw).concat(&v), &(&c * tc));
            }
        }
    }

    #[test]
    fn reduction_is_confluent_on_completed_range() {
        let rels = relations(3);
        let sys = complete(&rels, 4, None).unwrap();
        let ctx = Context::a(3);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..25 {
            let mut p = NcPoly::zero(ctx);
            for _ in 0..3 {
                let len = rng.gen_range(0..=4);
                let ids: Vec<u16> = (0..len).map(|_| rng.gen_range(0..6u16)).collect();
                p.add_term(Word::from_ids(&ids), &RatFunc::from_int(rng.gen_range(1..5)));
            }
            let nf = reduce(&p, &sys).unwrap();
            for _ in 0..3 {
                let alt = reduce_shuffled(&p, &sys, &mut rng);
                assert_eq!(alt, nf);
            }
        }
    }

    #[test]
    fn cache_round_trip() {
        let rels = relations(3);
        let sys = complete(&rels, 5, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a3.awgb");
        sys_save(&sys, &path).unwrap();
        let loaded = sys_load(&path, &rels).unwrap();
        assert_eq!(loaded, sys);
    }

    #[test]
    fn cache_rejects_wrong_context() {
        let rels3 = relations(3);
        let rels4 = relations(4);
        let sys = complete(&rels3, 4, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a3.awgb");
        sys_save(&sys, &path).unwrap();
        assert!(matches!(
            sys_load(&path, &rels4),
            Err(IdealError::ProvenanceMismatch(_))
        ));
    }

    #[test]
    fn cache_rejects_truncation_and_tampering() {
        let rels = relations(3);
        let sys = complete(&rels, 4, None).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a3.awgb");
        sys_save(&sys, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        // drop the last 40 bytes
        let cut = &text[..text.len() - 40];
        std::fs::write(&path, cut).unwrap();
        assert!(matches!(
            sys_load(&path, &rels),
            Err(IdealError::FormatVersionMismatch(_)) | Err(IdealError::IoFailure(_))
        ));
        // flip a byte inside the body
        let mut bad = text.clone().into_bytes();
        let mid = bad.len() / 2;
        bad[mid] = if bad[mid] == b'1' { b'2' } else { b'1' };
        std::fs::write(&path, &bad).unwrap();
        assert!(sys_load(&path, &rels).is_err());
    }

    #[test]
    fn maxdeg_below_relations_is_rejected() {
        assert!(matches!(
            complete(&relations(3), 2, None),
            Err(IdealError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let sys = sys3(4);
        let p = NcPoly::letter(Context::a(4), GenSymbol::a(1, 2)).unwrap();
        assert!(matches!(
            reduce(&p, &sys),
            Err(IdealError::AlphabetMismatch(_, _))
        ));
    }
}
