//! Free associative algebra over Q(q) on an indexed generator alphabet.
//!
//! Generators are either upper-triangular matrix entries `a[i,j]` (1 <= i <=
//! j <= n; lower-triangular symbols do not exist) or connected-subset letters
//! `C[lo..hi]`. Letters are interned as small integer ids whose order realizes
//! the symbol order, so word comparison (deglex) and subword search are plain
//! integer operations.

use crate::coeff::RatFunc;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Context, Context),
    #[error("generator index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degenerate q-commutator parameter (p - p^-1 = 0 or p = 0)")]
    DegenerateParameter,
    #[error("no image for generator {0}")]
    UnmappedGenerator(String),
}

/// Which generator family an algebra context uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlphabetKind {
    /// Matrix entries a[i,j].
    A,
    /// Connected-subset letters C[lo..hi].
    C,
}

impl fmt::Display for AlphabetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetKind::A => write!(f, "A"),
            AlphabetKind::C => write!(f, "C"),
        }
    }
}

/// Alphabet context: the generator family and the presentation size n.
/// Both families have n(n+1)/2 letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Context {
    pub kind: AlphabetKind,
    pub n: u8,
}

impl Context {
    pub fn new(kind: AlphabetKind, n: u8) -> Self {
        assert!(n >= 1, "presentation size must be >= 1");
        Context { kind, n }
    }

    pub fn a(n: u8) -> Self {
        Context::new(AlphabetKind::A, n)
    }

    pub fn c(n: u8) -> Self {
        Context::new(AlphabetKind::C, n)
    }

    /// Number of letters, n(n+1)/2.
    pub fn size(&self) -> usize {
        let n = self.n as usize;
        n * (n + 1) / 2
    }

    /// Letter id of the pair (i, j) with 1 <= i <= j <= n; ids follow the
    /// symbol order (row-major over the upper triangle).
    fn pair_id(&self, i: u8, j: u8) -> Option<LetterId> {
        if i < 1 || i > j || j > self.n {
            return None;
        }
        let n = self.n as usize;
        let (i, j) = (i as usize, j as usize);
        let offset = (i - 1) * (2 * n - i + 2) / 2;
        Some(LetterId((offset + j - i) as u16))
    }

    fn pair_of(&self, id: LetterId) -> (u8, u8) {
        let n = self.n as usize;
        let mut rest = id.0 as usize;
        let mut i = 1usize;
        loop {
            let row_len = n - (i - 1);
            if rest < row_len {
                return (i as u8, (i + rest) as u8);
            }
            rest -= row_len;
            i += 1;
        }
    }

    pub fn id_of(&self, sym: GenSymbol) -> Result<LetterId, AlgebraError> {
        let ok = match (self.kind, sym) {
            (AlphabetKind::A, GenSymbol::A { i, j }) => self.pair_id(i, j),
            (AlphabetKind::C, GenSymbol::C { lo, hi }) => self.pair_id(lo, hi),
            _ => None,
        };
        ok.ok_or_else(|| AlgebraError::IndexOutOfRange(sym.to_string()))
    }

    pub fn symbol_of(&self, id: LetterId) -> GenSymbol {
        let (p, q) = self.pair_of(id);
        match self.kind {
            AlphabetKind::A => GenSymbol::A { i: p, j: q },
            AlphabetKind::C => GenSymbol::C { lo: p, hi: q },
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> {
        (0..self.size() as u16).map(LetterId)
    }

    pub fn symbols(&self) -> impl Iterator<Item = GenSymbol> + '_ {
        self.letters().map(|id| self.symbol_of(id))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.n)
    }
}

/// Generator letter. The total order is kind-first, then the index pair
/// lexicographically; letter ids realize this order within a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenSymbol {
    A { i: u8, j: u8 },
    C { lo: u8, hi: u8 },
}

impl GenSymbol {
    pub fn a(i: u8, j: u8) -> Self {
        GenSymbol::A { i, j }
    }

    pub fn c(lo: u8, hi: u8) -> Self {
        GenSymbol::C { lo, hi }
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenSymbol::A { i, j } => write!(f, "a[{i},{j}]"),
            GenSymbol::C { lo, hi } => write!(f, "C[{lo}..{hi}]"),
        }
    }
}

/// Interned letter within a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LetterId(pub u16);

/// Finite word over the letters; the empty word is the multiplicative
/// identity. `Ord` is the degree-lexicographic well-order (length first, then
/// letter ids), which is compatible with concatenation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[u16; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(id: LetterId) -> Self {
        Word(SmallVec::from_slice(&[id.0]))
    }

    pub fn from_ids(ids: &[u16]) -> Self {
        Word(SmallVec::from_slice(ids))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn letters(&self) -> impl Iterator<Item = LetterId> + '_ {
        self.0.iter().map(|&x| LetterId(x))
    }

    /// Leftmost position where `pat` occurs as a factor, if any.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        let (n, m) = (self.0.len(), pat.0.len());
        if m == 0 || m > n {
            return if m == 0 { Some(0) } else { None };
        }
        (0..=n - m).find(|&s| self.0[s..s + m] == pat.0[..])
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(SmallVec::from_slice(&self.0[range]))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Noncommutative polynomial: a finite map word -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPoly {
    ctx: Context,
    terms: BTreeMap<Word, RatFunc>,
}

impl NcPoly {
    pub fn zero(ctx: Context) -> Self {
        NcPoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: Context) -> Self {
        NcPoly::scalar(ctx, RatFunc::one())
    }

    pub fn scalar(ctx: Context, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::empty(), c);
        }
        NcPoly { ctx, terms }
    }

    pub fn letter(ctx: Context, sym: GenSymbol) -> Result<Self, AlgebraError> {
        let id = ctx.id_of(sym)?;
        Ok(NcPoly::from_word(ctx, Word::letter(id), RatFunc::one()))
    }

    pub fn from_word(ctx: Context, w: Word, c: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { ctx, terms }
    }

    pub fn from_terms(ctx: Context, it: impl IntoIterator<Item = (Word, RatFunc)>) -> Self {
        let mut p = NcPoly::zero(ctx);
        for (w, c) in it {
            p.add_term(w, &c);
        }
        p
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Max word length over the terms; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|w| w.len()).max()
    }

    /// Largest term in the deglex order.
    pub fn leading(&self) -> Option<(&Word, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&RatFunc> {
        self.terms.get(w)
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, w: &Word) -> Option<RatFunc> {
        self.terms.remove(w)
    }

    /// Detach the largest term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Word, RatFunc)> {
        self.terms.pop_last()
    }

    fn same_ctx(&self, rhs: &NcPoly) -> Result<(), AlgebraError> {
        if self.ctx == rhs.ctx {
            Ok(())
        } else {
            Err(AlgebraError::AlphabetMismatch(self.ctx, rhs.ctx))
        }
    }

    pub fn checked_add(&self, rhs: &NcPoly) -> Result<NcPoly, AlgebraError> {
        self.same_ctx(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &NcPoly) -> Result<NcPoly, AlgebraError> {
        self.same_ctx(rhs)?;
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &NcPoly) -> Result<NcPoly, AlgebraError> {
        self.same_ctx(rhs)?;
        let mut out = NcPoly::zero(self.ctx);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(self.ctx);
        }
        NcPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), -x)).collect(),
        }
    }

    /// Commutator ab - ba.
    pub fn comm(a: &NcPoly, b: &NcPoly) -> Result<NcPoly, AlgebraError> {
        a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
    }

    /// Parametric q-commutator (p*ab - p^-1*ba)/(p - p^-1); with p = q this is
    /// the bracket of the presentation, with p = q^2 the squared variant.
    pub fn qcomm(a: &NcPoly, b: &NcPoly, p: &RatFunc) -> Result<NcPoly, AlgebraError> {
        if p.is_zero() {
            return Err(AlgebraError::DegenerateParameter);
        }
        let pinv = p.inv().expect("nonzero checked above");
        let d = p - &pinv;
        if d.is_zero() {
            return Err(AlgebraError::DegenerateParameter);
        }
        let dinv = d.inv().expect("nonzero checked above");
        let ab = a.checked_mul(b)?;
        let ba = b.checked_mul(a)?;
        ab.scale(&(p * &dinv))
            .checked_sub(&ba.scale(&(&pinv * &dinv)))
    }

    /// The q-bracket [a,b]_q.
    pub fn qbracket(a: &NcPoly, b: &NcPoly) -> Result<NcPoly, AlgebraError> {
        NcPoly::qcomm(a, b, &RatFunc::q())
    }

    /// Homomorphic extension of a total letter map into `target`; `image`
    /// returns None for an unmapped letter, which is an error.
    pub fn substitute(
        &self,
        target: Context,
        image: &dyn Fn(LetterId) -> Option<NcPoly>,
    ) -> Result<NcPoly, AlgebraError> {
        let mut out = NcPoly::zero(target);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::scalar(target, c.clone());
            for id in w.letters() {
                let img = image(id).ok_or_else(|| {
                    AlgebraError::UnmappedGenerator(self.ctx.symbol_of(id).to_string())
                })?;
                acc = acc.checked_mul(&img)?;
            }
            out = out.checked_add(&acc)?;
        }
        Ok(out)
    }

    /// Canonical text: terms sorted descending in the term order, each as
    /// `(coeff)*letters`, e.g. `(q/(q^2-1))*a[1,2]a[2,3] - (1/(q^2-1))*a[2,3]a[1,2]`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            let neg = c.lead_is_negative();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({mag})")?;
            } else {
                if !mag.is_one() {
                    write!(f, "({mag})*")?;
                }
                for id in w.letters() {
                    write!(f, "{}", self.ctx.symbol_of(id))?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.checked_add(rhs).expect("alphabet mismatch")
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.checked_sub(rhs).expect("alphabet mismatch")
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.checked_mul(rhs).expect("alphabet mismatch")
    }
}
