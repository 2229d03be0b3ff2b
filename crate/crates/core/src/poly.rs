//! Exact polynomials in `e_1, .., e_n` under the graded lexicographic order
//! with `e_1 > e_2 > .. > e_n`, the derivations `∂_α`, and echelon spans.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rat as Q;

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn support(&self) -> crate::gale_frame::ColumnSet {
        crate::gale_frame::ColumnSet::from_indices(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, _)| i),
        )
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / e_i`, if `e_i` divides.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        (self.0[i] > 0).then(|| {
            let mut e = self.0.clone();
            e[i] -= 1;
            Monomial(e)
        })
    }

    /// Keeps only the given coordinates, or `None` if a dropped coordinate
    /// has a positive exponent.
    pub fn restrict(&self, keep: &[usize]) -> Option<Monomial> {
        let kept: u32 = keep.iter().map(|&i| self.0[i]).sum();
        (kept as usize == self.degree())
            .then(|| Monomial(keep.iter().map(|&i| self.0[i]).collect()))
    }

    /// All monomials of degree `d` in `n` variables, in descending graded-lex order.
    pub fn of_degree(n: usize, d: usize) -> Vec<Monomial> {
        fn rec(n: usize, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == n {
                prefix.push(d as u32);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=d).rev() {
                prefix.push(e as u32);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 {
                vec![Monomial(vec![])]
            } else {
                vec![]
            };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Number of monomials of degree `d` in `n` variables.
    pub fn count(n: usize, d: usize) -> usize {
        if n == 0 {
            return usize::from(d == 0);
        }
        binomial(n + d - 1, d)
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Graded-lex comparison: degree first, then the first differing exponent
/// decides, the larger exponent winning.
pub fn grlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::LengthMismatch {
            expected: a.nvars(),
            got: b.nvars(),
        });
    }
    Ok(a.cmp(b))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "e{}", i + 1)?;
            } else {
                write!(f, "e{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A polynomial with exact rational coefficients; zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, c: &Q) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(t, x)| (t.mul(m), x.clone())))
    }
}

/// Terms in descending graded-lex order, rendered as `c*e1^a1*e2^a2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (j, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = if m.degree() == 0 {
                c.abs().to_string()
            } else {
                format!("{}*{}", c.abs(), m)
            };
            match (j, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `∂_α e^β = Σ_i α_i β_i e^{β - ε_i}`.
pub fn apply_derivation(alpha: &[i64], beta: &Monomial) -> Result<Poly> {
    if alpha.len() != beta.nvars() {
        return Err(Error::LengthMismatch {
            expected: beta.nvars(),
            got: alpha.len(),
        });
    }
    Ok(Poly::from_terms(alpha.iter().enumerate().filter_map(
        |(i, &a)| {
            let b = beta.exponents()[i];
            (a != 0 && b > 0).then(|| (beta.div_var(i).unwrap(), Q::from(a * i64::from(b))))
        },
    )))
}

// ---------------------------------------------------------------------------
// Indexed sparse linear algebra

/// A fixed list of monomials in descending graded-lex order with a reverse
/// lookup. Index 0 is the largest monomial.
#[derive(Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    lookup: HashMap<Monomial, u32>,
}

impl MonomialIndex {
    pub fn new(mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        let lookup = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        MonomialIndex { monomials, lookup }
    }

    /// All monomials of degree `d`.
    pub fn degree(n: usize, d: usize) -> Self {
        MonomialIndex::new(Monomial::of_degree(n, d))
    }

    /// All monomials of degree at most `d`.
    pub fn up_to_degree(n: usize, d: usize) -> Self {
        MonomialIndex::new((0..=d).flat_map(|e| Monomial::of_degree(n, e)).collect())
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn get(&self, i: u32) -> &Monomial {
        &self.monomials[i as usize]
    }

    pub fn position(&self, m: &Monomial) -> Option<u32> {
        self.lookup.get(m).copied()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Sparse row for a polynomial whose monomials all lie in the index.
    pub fn encode(&self, p: &Poly) -> Option<SparseVec> {
        let mut v: SparseVec = p
            .terms()
            .map(|(m, c)| self.position(m).map(|i| (i, c.clone())))
            .collect::<Option<_>>()?;
        v.sort_by_key(|(i, _)| *i);
        Some(v)
    }

    pub fn decode(&self, v: &[(u32, Q)]) -> Poly {
        Poly::from_terms(v.iter().map(|(i, c)| (self.get(*i).clone(), c.clone())))
    }
}

/// Sparse vector sorted by increasing index (descending monomial).
pub type SparseVec = Vec<(u32, Q)>;

const NO_PIVOT: u32 = u32::MAX;

/// Reduced row-echelon basis of a subspace of the span of a [`MonomialIndex`].
///
/// Every row has leading coefficient 1 and no row has a nonzero entry in
/// another row's pivot column, so normal forms take a single pass.
#[derive(Debug, Clone)]
pub struct EchelonSpan {
    index: Option<Arc<MonomialIndex>>,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    // rows whose tail may hold a given column; entries can be stale
    occurs: Vec<Vec<u32>>,
}

impl EchelonSpan {
    pub fn new(index: Arc<MonomialIndex>) -> Self {
        let mut span = EchelonSpan::columns(index.len());
        span.index = Some(index);
        span
    }

    /// A span inside `Q^ncols` with no monomial labels.
    pub fn columns(ncols: usize) -> Self {
        EchelonSpan {
            index: None,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
            occurs: vec![Vec::new(); ncols],
        }
    }

    /// The monomial labels of the columns.
    ///
    /// Panics for spans built with [`EchelonSpan::columns`].
    pub fn index(&self) -> &Arc<MonomialIndex> {
        self.index.as_ref().expect("span has no monomial index")
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Dimension of the ambient space modulo this span.
    pub fn codim(&self) -> usize {
        self.ncols - self.rows.len()
    }

    pub fn is_pivot(&self, i: u32) -> bool {
        self.pivot_row[i as usize] != NO_PIVOT
    }

    /// Fully reduces `v`: the result has no entry in a pivot column.
    pub fn normal_form(&self, v: &[(u32, Q)]) -> SparseVec {
        let mut terms: SparseVec = Vec::with_capacity(v.len() * 8);
        for (i, c) in v {
            if c.is_zero() {
                continue;
            }
            match self.pivot_row[*i as usize] {
                NO_PIVOT => terms.push((*i, c.clone())),
                r => terms.extend(
                    self.rows[r as usize][1..]
                        .iter()
                        .map(|(j, x)| (*j, -(c * x))),
                ),
            }
        }
        combine(terms)
    }

    pub fn contains(&self, v: &[(u32, Q)]) -> bool {
        self.normal_form(v).is_empty()
    }

    /// Inserts a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[(u32, Q)]) -> bool {
        let mut r = self.normal_form(v);
        if r.is_empty() {
            return false;
        }
        let lead = r[0].1.clone();
        if !lead.is_one() {
            let inv = lead.recip();
            for (_, c) in r.iter_mut() {
                *c *= &inv;
            }
        }
        let pivot = r[0].0;
        let id = self.rows.len() as u32;
        // back-substitute into rows holding the new pivot column
        for other in std::mem::take(&mut self.occurs[pivot as usize]) {
            let row = &self.rows[other as usize];
            let Ok(pos) = row[1..].binary_search_by_key(&pivot, |(j, _)| *j) else {
                continue;
            };
            let factor = row[pos + 1].1.clone();
            let mut terms: SparseVec = row.iter().filter(|(j, _)| *j != pivot).cloned().collect();
            terms.extend(r[1..].iter().map(|(j, x)| (*j, -(&factor * x))));
            let updated = combine(terms);
            for (j, _) in &updated {
                if row.binary_search_by_key(j, |(i, _)| *i).is_err() {
                    self.occurs[*j as usize].push(other);
                }
            }
            self.rows[other as usize] = updated;
        }
        for (j, _) in &r[1..] {
            self.occurs[*j as usize].push(id);
        }
        self.pivot_row[pivot as usize] = id;
        self.rows.push(r);
        true
    }

    pub fn insert_poly(&mut self, p: &Poly) -> Result<bool> {
        let v = self
            .index()
            .encode(p)
            .ok_or_else(|| Error::Internal("polynomial outside the monomial index".into()))?;
        Ok(self.insert(&v))
    }

    /// Pivot indices in increasing order (descending leading monomials).
    pub fn pivots(&self) -> Vec<u32> {
        (0..self.ncols as u32)
            .filter(|&i| self.is_pivot(i))
            .collect()
    }

    /// Indices of the standard monomials: those that are not leading monomials.
    pub fn standard(&self) -> Vec<u32> {
        (0..self.ncols as u32)
            .filter(|&i| !self.is_pivot(i))
            .collect()
    }

    /// Basis of the vectors annihilated by every row, one per free column.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        self.standard()
            .into_iter()
            .map(|free| {
                let mut holders = self.occurs[free as usize].clone();
                holders.sort_unstable();
                holders.dedup();
                let mut v: SparseVec = holders
                    .iter()
                    .filter_map(|&r| {
                        let row = &self.rows[r as usize];
                        row[1..]
                            .binary_search_by_key(&free, |(j, _)| *j)
                            .ok()
                            .map(|pos| (row[0].0, -row[pos + 1].1.clone()))
                    })
                    .collect();
                v.push((free, Q::from(1)));
                combine(v)
            })
            .collect()
    }

    /// Reduced row echelon basis, rows ordered by leading index.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut rows = self.rows.clone();
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}

/// Sorts by index and merges duplicate entries, dropping zeros.
fn combine(mut terms: SparseVec) -> SparseVec {
    terms.sort_unstable_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, x)) if *j == i => {
                *x += c;
                if x.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((i, c)),
        }
    }
    out
}

/// Per-degree echelon basis of a homogeneous subspace of `Q[e_1..e_n]_d`.
#[derive(Debug, Clone)]
pub struct GradedSpan {
    degree: usize,
    span: EchelonSpan,
}

impl GradedSpan {
    pub fn new(nvars: usize, degree: usize) -> Self {
        GradedSpan {
            degree,
            span: EchelonSpan::new(Arc::new(MonomialIndex::degree(nvars, degree))),
        }
    }

    pub fn from_echelon(degree: usize, span: EchelonSpan) -> Self {
        GradedSpan { degree, span }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn echelon(&self) -> &EchelonSpan {
        &self.span
    }

    /// Reduces `p` against the basis and appends the remainder, if any.
    pub fn insert(&mut self, p: &Poly) -> Result<bool> {
        if p.is_zero() {
            return Ok(false);
        }
        match p.homogeneous_degree() {
            Some(d) if d == self.degree => self.span.insert_poly(p),
            Some(d) => Err(Error::DegreeMismatch {
                expected: self.degree,
                got: d,
            }),
            None => Err(Error::NotHomogeneous),
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        match self.span.index().encode(p) {
            Some(v) => self.span.contains(&v),
            None => p.is_zero(),
        }
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let v = self.span.index().encode(p).ok_or(Error::DegreeMismatch {
            expected: self.degree,
            got: p.homogeneous_degree().unwrap_or(usize::MAX),
        })?;
        Ok(self.span.index().decode(&self.span.normal_form(&v)))
    }

    /// The graded-lex leading monomials of the spanned subspace.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.span
            .pivots()
            .into_iter()
            .map(|i| self.span.index().get(i).clone())
            .collect()
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.span
            .standard()
            .into_iter()
            .map(|i| self.span.index().get(i).clone())
            .collect()
    }

    /// Reduced echelon basis as polynomials, by descending leading monomial.
    pub fn basis(&self) -> Vec<Poly> {
        self.span
            .reduced_basis()
            .iter()
            .map(|r| self.span.index().decode(r))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn q(x: i64) -> Q {
        Q::from(x)
    }

    #[test]
    fn grlex_examples() {
        assert_eq!(
            grlex_compare(&m(&[2, 0]), &m(&[1, 1])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            grlex_compare(&m(&[1, 1]), &m(&[1, 0])).unwrap(),
            Ordering::Greater
        );
        let p = Poly::from_terms([(m(&[0, 1]), q(1)), (m(&[1, 0]), q(-1))]);
        assert_eq!(p.leading_monomial(), Some(&m(&[1, 0])));
        assert!(grlex_compare(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn derivation_examples() {
        let p = apply_derivation(&[1, -1], &m(&[1, 1])).unwrap();
        assert_eq!(p.to_string(), "-1*e1 + 1*e2");
        let p = apply_derivation(&[1, -1, 0], &m(&[2, 1, 0])).unwrap();
        assert_eq!(
            p,
            Poly::from_terms([(m(&[1, 1, 0]), q(2)), (m(&[2, 0, 0]), q(-1))])
        );
        assert!(apply_derivation(&[0, 0], &m(&[3, 2])).unwrap().is_zero());
        assert!(apply_derivation(&[1], &m(&[3, 2])).is_err());
    }

    #[test]
    fn display_is_descending() {
        let p = Poly::from_terms([
            (m(&[0, 0]), q(3)),
            (m(&[1, 1]), Q::new(1, 2)),
            (m(&[2, 0]), q(-1)),
        ]);
        assert_eq!(p.to_string(), "-1*e1^2 + 1/2*e1*e2 + 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn span_insert_examples() {
        let a = Poly::from_terms([(m(&[0, 1, 0]), q(1)), (m(&[1, 0, 0]), q(-1))]);
        let b = a.scale(&q(-1));
        let c = Poly::from_terms([(m(&[0, 0, 1]), q(1)), (m(&[0, 1, 0]), q(-1))]);

        let mut s = GradedSpan::new(3, 1);
        assert!(s.insert(&a).unwrap());
        assert!(!s.insert(&b).unwrap());
        assert_eq!(s.dim(), 1);
        assert_eq!(s.leading_monomials(), vec![m(&[1, 0, 0])]);

        assert!(s.insert(&c).unwrap());
        assert_eq!(s.leading_monomials(), vec![m(&[1, 0, 0]), m(&[0, 1, 0])]);
        assert!(!s.insert(&Poly::zero()).unwrap());
        assert_eq!(s.dim(), 2);

        // full echelon: e1 - e3, e2 - e3
        let basis: Vec<String> = s.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(basis, vec!["1*e1 - 1*e3", "1*e2 - 1*e3"]);
    }

    #[test]
    fn span_rejects_wrong_degree() {
        let mut s = GradedSpan::new(2, 1);
        let p = Poly::monomial(m(&[1, 1]), q(1));
        assert_eq!(
            s.insert(&p),
            Err(Error::DegreeMismatch {
                expected: 1,
                got: 2
            })
        );
        let p = Poly::from_terms([(m(&[1, 1]), q(1)), (m(&[1, 0]), q(1))]);
        assert_eq!(s.insert(&p), Err(Error::NotHomogeneous));
    }

    #[test]
    fn full_degree_one_span() {
        let mut s = GradedSpan::new(3, 1);
        for i in 0..3 {
            s.insert(&Poly::monomial(Monomial::var(3, i), q(1)))
                .unwrap();
        }
        assert_eq!(s.leading_monomials().len(), 3);
        assert!(GradedSpan::new(3, 1).leading_monomials().is_empty());
    }

    #[test]
    fn monomial_enumeration() {
        let ms = Monomial::of_degree(3, 2);
        assert_eq!(ms.len(), Monomial::count(3, 2));
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        assert_eq!(Monomial::of_degree(0, 0).len(), 1);
        assert!(Monomial::of_degree(0, 2).is_empty());
        assert_eq!(Monomial::count(0, 3), 0);
    }
}
