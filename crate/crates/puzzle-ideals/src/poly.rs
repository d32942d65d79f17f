//! Sparse multivariate polynomials over F3 and monomial orders.
//!
//! Variables are identified by 1-based indices `x1, x2, ...` so that textual
//! dumps match the interval numbering of the triangle grid.  A [`PolyF3`] is
//! an element of the plain polynomial ring; [`PolyF3::normalize`] produces
//! the canonical representative modulo the field equations `x^3 - x`, in
//! which every exponent lies in {1, 2}.  The field equations themselves must
//! remain representable (they generate the family F1 of every puzzle ideal),
//! which is why reduction is an explicit operation rather than an invariant
//! of the type.

use crate::error::{Error, Result};
use crate::gf3::F3;
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A power product of variables with positive exponents, e.g. `x1^2*x4`.
///
/// Factors are stored sorted by variable index.  The derived `Ord` is a
/// storage order used only for map keys; ranking of monomials during
/// Groebner computations is delegated to [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[(u32, u8); 6]>,
}

impl Monomial {
    /// The empty product, i.e. the monomial 1.
    pub fn one() -> Monomial {
        Monomial::default()
    }

    /// The single variable `x<var>`.
    pub fn var(var: u32) -> Monomial {
        Monomial::from_factors(vec![(var, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs; zero exponents
    /// are dropped and repeated variables are combined.
    pub fn from_factors(factors: impl IntoIterator<Item = (u32, u8)>) -> Monomial {
        let mut map: BTreeMap<u32, u8> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial {
            factors: map.into_iter().collect(),
        }
    }

    /// True for the monomial 1.
    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The `(variable, exponent)` factors sorted by variable.
    pub fn factors(&self) -> &[(u32, u8)] {
        &self.factors
    }

    /// The exponent of `var` (0 when absent).
    pub fn exponent_of(&self, var: u32) -> u8 {
        self.factors
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |(_, e)| *e)
    }

    /// The total degree.
    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| u32::from(*e)).sum()
    }

    /// The product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_factors(
            self.factors
                .iter()
                .chain(other.factors.iter())
                .map(|&(v, e)| (v, e)),
        )
    }

    /// Replaces every exponent `e >= 3` by `((e - 1) mod 2) + 1`, the
    /// reduction enforced by the field equations `x^3 = x`.
    pub fn reduce_exponents(&self) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .map(|&(v, e)| (v, if e >= 3 { (e - 1) % 2 + 1 } else { e }))
                .collect(),
        }
    }

    /// The variables appearing in the monomial.
    pub fn variables(&self) -> impl Iterator<Item = u32> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    /// Natural lexicographic comparison with `x1 > x2 > ...`.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.factors.get(i), other.factors.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// The kind of a monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Plain lexicographic order over the permuted variable list.
    Lex,
    /// Two-block elimination order: the first `split` ranks form the
    /// eliminated block, ordered greater than every retained variable.
    BlockLex { split: usize },
}

/// A total order on monomials: lexicographic over an explicit variable
/// ranking, optionally split into an elimination block and a retained block.
///
/// `vars[0]` is the greatest variable.  The order is compatible with
/// multiplication and has 1 as its minimum, as required for Groebner bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    vars: Vec<u32>,
    rank: BTreeMap<u32, usize>,
}

impl MonomialOrder {
    /// Lexicographic order with `vars[0] > vars[1] > ...`.
    pub fn lex(vars: Vec<u32>) -> MonomialOrder {
        Self::build(OrderKind::Lex, vars)
    }

    /// Lexicographic order `x1 > x2 > ... > xn` on the first `n` variables.
    pub fn natural_lex(n: usize) -> MonomialOrder {
        Self::lex((1..=n as u32).collect())
    }

    /// Block elimination order: every eliminated variable ranks above every
    /// retained one; within each block the given sequences are descending.
    pub fn block_lex(eliminated: Vec<u32>, retained: Vec<u32>) -> MonomialOrder {
        let split = eliminated.len();
        let mut vars = eliminated;
        vars.extend(retained);
        Self::build(OrderKind::BlockLex { split }, vars)
    }

    fn build(kind: OrderKind, vars: Vec<u32>) -> MonomialOrder {
        let rank: BTreeMap<u32, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        assert_eq!(rank.len(), vars.len(), "duplicate variable in order");
        MonomialOrder { kind, vars, rank }
    }

    /// The order kind.
    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// All variables from greatest to smallest.
    pub fn variables(&self) -> &[u32] {
        &self.vars
    }

    /// The retained (smallest) block of a block order; the full variable
    /// list for a plain lex order.
    pub fn retained_block(&self) -> &[u32] {
        match self.kind {
            OrderKind::Lex => &self.vars,
            OrderKind::BlockLex { split } => &self.vars[split..],
        }
    }

    /// The rank of a variable (0 = greatest).
    ///
    /// # Panics
    /// Panics when the variable is not covered by the order.
    pub fn rank_of(&self, var: u32) -> usize {
        self.rank[&var]
    }

    /// Whether the order covers `var`.
    pub fn contains(&self, var: u32) -> bool {
        self.rank.contains_key(&var)
    }

    /// Compares two monomials, greatest first meaning `Ordering::Greater`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let mut ea: Vec<(usize, u8)> = a.factors().iter().map(|&(v, e)| (self.rank[&v], e)).collect();
        let mut eb: Vec<(usize, u8)> = b.factors().iter().map(|&(v, e)| (self.rank[&v], e)).collect();
        ea.sort_unstable();
        eb.sort_unstable();
        let (mut i, mut j) = (0, 0);
        loop {
            match (ea.get(i), eb.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ra, xa)), Some(&(rb, xb))) => {
                    if ra < rb {
                        return Ordering::Greater;
                    }
                    if rb < ra {
                        return Ordering::Less;
                    }
                    if xa != xb {
                        return xa.cmp(&xb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

/// A sparse polynomial over F3 with 1-based variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyF3 {
    terms: BTreeMap<Monomial, F3>,
}

impl PolyF3 {
    /// The zero polynomial.
    pub fn zero() -> PolyF3 {
        PolyF3::default()
    }

    /// The constant polynomial `c`.
    pub fn constant(c: F3) -> PolyF3 {
        let mut p = PolyF3::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    /// The polynomial `x<var>`.
    pub fn variable(var: u32) -> PolyF3 {
        PolyF3::term(Monomial::var(var), F3::ONE)
    }

    /// A single-term polynomial `c * m` (empty when `c = 0`).
    pub fn term(m: Monomial, c: F3) -> PolyF3 {
        let mut p = PolyF3::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, combining
    /// repeats and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F3)>) -> PolyF3 {
        let mut p = PolyF3::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// The field equation `x^3 - x` for `var`.
    pub fn field_equation(var: u32) -> PolyF3 {
        PolyF3::from_terms([
            (Monomial::from_factors([(var, 3)]), F3::ONE),
            (Monomial::var(var), F3::TWO),
        ])
    }

    /// The Boolean equation `x^2 - x` for `var` (used on free boundary
    /// sides, whose values stay in F2).
    pub fn boolean_equation(var: u32) -> PolyF3 {
        PolyF3::from_terms([
            (Monomial::from_factors([(var, 2)]), F3::ONE),
            (Monomial::var(var), F3::TWO),
        ])
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, F3)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// The number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The set of variables appearing in the polynomial, ascending.
    pub fn variables(&self) -> Vec<u32> {
        let mut vars: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.variables().collect::<Vec<_>>())
            .collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    /// The total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: F3) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut slot) => {
                let sum = *slot.get() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
        }
    }

    /// Polynomial sum.
    pub fn add(&self, other: &PolyF3) -> PolyF3 {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Polynomial difference.
    pub fn sub(&self, other: &PolyF3) -> PolyF3 {
        self.add(&other.neg())
    }

    /// Additive inverse.
    pub fn neg(&self) -> PolyF3 {
        PolyF3 {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -*c)).collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, c: F3) -> PolyF3 {
        if c.is_zero() {
            return PolyF3::zero();
        }
        PolyF3 {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), *k * c)).collect(),
        }
    }

    /// Polynomial product (plain ring; exponents are not reduced).
    pub fn mul(&self, other: &PolyF3) -> PolyF3 {
        let mut out = PolyF3::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    /// Canonical form modulo the field equations: every exponent `e >= 3`
    /// becomes `((e - 1) mod 2) + 1` and cancelling terms are combined.
    /// Idempotent and evaluation-preserving on all of F3^N.
    pub fn normalize(&self) -> PolyF3 {
        PolyF3::from_terms(
            self.terms()
                .map(|(m, c)| (m.reduce_exponents(), c)),
        )
    }

    /// Evaluates the polynomial at a point, with variable `xi` bound to
    /// `point[i - 1]`.
    pub fn eval(&self, point: &[F3]) -> Result<F3> {
        let mut total = F3::ZERO;
        for (m, c) in self.terms() {
            let mut prod = c;
            for &(v, e) in m.factors() {
                let val = *point
                    .get(v as usize - 1)
                    .ok_or(Error::MissingVariable(v))?;
                for _ in 0..e {
                    prod *= val;
                }
            }
            total += prod;
        }
        Ok(total)
    }

    /// Partially evaluates variable `var` at `value`.
    pub fn substitute_value(&self, var: u32, value: F3) -> PolyF3 {
        PolyF3::from_terms(self.terms().map(|(m, c)| {
            let e = m.exponent_of(var);
            if e == 0 {
                return (m.clone(), c);
            }
            let rest =
                Monomial::from_factors(m.factors().iter().copied().filter(|&(v, _)| v != var));
            let mut scaled = c;
            for _ in 0..e {
                scaled *= value;
            }
            (rest, scaled)
        }))
    }

    /// Renames every variable through `map` (used to instantiate template
    /// polynomials on concrete grid intervals).
    pub fn rename_variables(&self, map: impl Fn(u32) -> u32) -> PolyF3 {
        PolyF3::from_terms(self.terms().map(|(m, c)| {
            (
                Monomial::from_factors(m.factors().iter().map(|&(v, e)| (map(v), e))),
                c,
            )
        }))
    }

    /// Parses the textual format produced by `Display`, e.g.
    /// `x1^2*x2 + 2*x1*x2^2 + 2*x1^2 + x1`.  A leading or infix `-` negates
    /// the following term.
    pub fn parse(text: &str) -> Result<PolyF3> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = PolyF3::zero();
        let normalized = text.replace('−', "-");
        let mut rest = normalized.as_str();
        let mut sign = F3::ONE;
        loop {
            rest = rest.trim_start();
            if rest.is_empty() {
                break;
            }
            let end = rest
                .char_indices()
                .find(|&(i, ch)| i > 0 && (ch == '+' || ch == '-'))
                .map_or(rest.len(), |(i, _)| i);
            let (tok, tail) = rest.split_at(end);
            let (coeff, mono) = Self::parse_term(tok.trim())?;
            out.add_term(mono, coeff * sign);
            if let Some(stripped) = tail.strip_prefix('+') {
                sign = F3::ONE;
                rest = stripped;
            } else if let Some(stripped) = tail.strip_prefix('-') {
                sign = F3::TWO;
                rest = stripped;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn parse_term(tok: &str) -> Result<(F3, Monomial)> {
        let tok = tok.trim_start_matches('+').trim();
        if tok.is_empty() {
            return Err(Error::Parse("empty term".into()));
        }
        let mut coeff = F3::ONE;
        let mut factors = Vec::new();
        for piece in tok.split('*') {
            let piece = piece.trim();
            if piece.is_empty() {
                return Err(Error::Parse(format!("empty factor in `{tok}`")));
            }
            if let Some(varpart) = piece.strip_prefix('x') {
                let (idx, exp) = match varpart.split_once('^') {
                    Some((i, e)) => (i, e),
                    None => (varpart, "1"),
                };
                let var: u32 = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable `{piece}`")))?;
                if var == 0 {
                    return Err(Error::Parse("variables are 1-based".into()));
                }
                let exp: u8 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{piece}`")))?;
                factors.push((var, exp));
            } else {
                let c: i64 = piece
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient `{piece}`")))?;
                coeff *= F3::new(c);
            }
        }
        Ok((coeff, Monomial::from_factors(factors)))
    }
}

impl fmt::Display for PolyF3 {
    /// Prints terms in descending graded-lex order with `x1 > x2 > ...`;
    /// unit coefficients are omitted, e.g. `x1^2*x2 + 2*x1*x2^2 + x1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut entries: Vec<(&Monomial, F3)> = self.terms().collect();
        entries.sort_by(|(a, _), (b, _)| {
            b.degree()
                .cmp(&a.degree())
                .then_with(|| b.lex_cmp(a))
        });
        for (i, (m, c)) in entries.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
                continue;
            }
            if *c != F3::ONE {
                write!(f, "{c}*")?;
            }
            for (j, &(v, e)) in m.factors().iter().enumerate() {
                if j > 0 {
                    write!(f, "*")?;
                }
                if e == 1 {
                    write!(f, "x{v}")?;
                } else {
                    write!(f, "x{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
