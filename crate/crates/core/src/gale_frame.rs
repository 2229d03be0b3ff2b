//! Integer-matrix combinatorics of the character map of a subtorus.
//!
//! A [`GaleFrame`] is a `k x n` totally unimodular integer matrix of full row
//! rank. Its kernel carries the signed circuits, its column matroid the flats,
//! and its integer kernel basis the dual frame.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, BigQ};

/// Largest ground set a [`ColumnSet`] can hold.
pub const MAX_COLUMNS: usize = 32;

/// A subset of the ground set `{0, .., n-1}` stored as a bitmask.
///
/// Displayed and serialized with 1-based indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColumnSet(pub u32);

impl ColumnSet {
    pub const EMPTY: ColumnSet = ColumnSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            ColumnSet(u32::MAX)
        } else {
            ColumnSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ColumnSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        ColumnSet(it.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        ColumnSet(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        ColumnSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColumnSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ColumnSet) -> Self {
        ColumnSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColumnSet) -> Self {
        ColumnSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColumnSet) -> Self {
        ColumnSet(self.0 & !other.0)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `{0..n}`, in increasing bitmask order.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = ColumnSet> {
        (0..(1u64 << n)).map(|b| ColumnSet(b as u32))
    }

    /// Sort key: size first, then lexicographic on the sorted index list.
    pub fn size_lex_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.to_vec())
    }
}

impl fmt::Display for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (j, i) in self.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ColumnSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.iter().map(|i| i + 1).collect();
        v.serialize(s)
    }
}

/// Iterates over the `s`-element subsets of `0..n` as sorted index vectors.
pub fn combinations(n: usize, s: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (s <= n).then(|| (0..s).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = s;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - s + i {
                next[i] += 1;
                for j in i + 1..s {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// A square submatrix whose determinant lies outside `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadMinor {
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
    pub value: i128,
}

/// Exhaustively searches all square minors for one outside `{-1, 0, 1}`.
pub fn find_bad_minor(rows: &[Vec<i64>], n: usize) -> Option<BadMinor> {
    let k = rows.len();
    for s in 1..=k.min(n) {
        for rs in combinations(k, s) {
            for cs in combinations(n, s) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c]).collect())
                    .collect();
                let d = linalg::det_i64(&sub);
                if d.abs() > 1 {
                    return Some(BadMinor {
                        rows: rs,
                        columns: cs,
                        value: d,
                    });
                }
            }
        }
    }
    None
}

/// True iff every square minor of the matrix is `-1`, `0` or `1`.
pub fn check_total_unimodularity(rows: &[Vec<i64>], n: usize) -> bool {
    find_bad_minor(rows, n).is_none()
}

/// A `{-1,0,1}` kernel vector of minimal support, lowest nonzero entry `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedCircuit {
    coeffs: Vec<i64>,
    support: ColumnSet,
}

impl SignedCircuit {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let support = ColumnSet::from_indices(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, _)| i),
        );
        SignedCircuit { coeffs, support }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn support(&self) -> ColumnSet {
        self.support
    }

    /// Restricts to the given ground set (which must contain the support),
    /// re-indexing coordinates to positions in `ground`.
    pub fn restrict(&self, ground: &[usize]) -> SignedCircuit {
        SignedCircuit::new(ground.iter().map(|&g| self.coeffs[g]).collect())
    }
}

impl Serialize for SignedCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(s)
    }
}

/// Enumerates signed circuits of the column matroid of `rows` by increasing
/// support size, excluding supersets of circuits already found.
pub fn enumerate_signed_circuits(rows: &[Vec<i64>], n: usize) -> Result<Vec<SignedCircuit>> {
    let k = rows.len();
    let mut found: Vec<SignedCircuit> = Vec::new();
    for s in 1..=(k + 1).min(n) {
        for cols in combinations(n, s) {
            let set = ColumnSet::from_indices(cols.iter().copied());
            if found.iter().any(|c| c.support.is_subset(set)) {
                continue;
            }
            if linalg::column_rank(rows, &cols) == s {
                continue;
            }
            // dependent with every proper subset independent: nullity one
            let sub: Vec<Vec<BigQ>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| linalg::q(r[c])).collect())
                .collect();
            let ns = linalg::nullspace(&sub, s);
            debug_assert_eq!(ns.len(), 1);
            let mut v = linalg::primitive_integer(&ns[0]);
            if v.iter().any(|x| x.is_zero()) {
                return Err(Error::Internal(format!(
                    "minimal dependent set {set} has a kernel vector with smaller support"
                )));
            }
            if v.iter().any(|x| !linalg::is_unit(x)) {
                return Err(Error::NonUnitCircuit { support: set });
            }
            if v[0].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            let mut coeffs = vec![0i64; n];
            for (&c, x) in cols.iter().zip(&v) {
                coeffs[c] = x.to_i64().expect("unit entry");
            }
            found.push(SignedCircuit::new(coeffs));
        }
    }
    found.sort_by_key(|c| c.support.size_lex_key());
    Ok(found)
}

/// A totally unimodular integer matrix of full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleFrame {
    n: usize,
    rows: Vec<Vec<i64>>,
    circuits: Vec<SignedCircuit>,
}

impl GaleFrame {
    /// Validates dimensions, total unimodularity and row independence.
    pub fn new(n: usize, rows: Vec<Vec<i64>>) -> Result<Self> {
        if n > MAX_COLUMNS {
            return Err(Error::TooManyColumns(n));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    r.len()
                )));
            }
        }
        if let Some(bad) = find_bad_minor(&rows, n) {
            return Err(Error::NotUnimodular {
                rows: bad.rows.iter().map(|r| r + 1).collect(),
                columns: bad.columns.iter().map(|c| c + 1).collect(),
                value: bad.value,
            });
        }
        let rank = linalg::rank(&linalg::to_rational(&rows));
        if rank < rows.len() {
            return Err(Error::RankDeficient {
                rank,
                k: rows.len(),
            });
        }
        for c in 0..n {
            if !rows.is_empty() && rows.iter().all(|r| r[c] == 0) {
                log::warn!("column {} is zero; the quotient module vanishes", c + 1);
            }
        }
        let circuits = enumerate_signed_circuits(&rows, n)?;
        Ok(GaleFrame { n, rows, circuits })
    }

    /// The `n x n` identity frame.
    pub fn identity(n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        GaleFrame::new(n, rows)
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn column(&self, i: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[i]).collect()
    }

    /// All signed circuits, sorted by support size then lexicographic support.
    pub fn signed_circuits(&self) -> &[SignedCircuit] {
        &self.circuits
    }

    pub fn is_totally_unimodular(&self) -> bool {
        check_total_unimodularity(&self.rows, self.n)
    }

    /// Matroid rank of a set of columns.
    pub fn rank_of(&self, cols: ColumnSet) -> usize {
        linalg::column_rank(&self.rows, &cols.to_vec())
    }

    /// Columns lying in the rational span of `cols`.
    pub fn closure(&self, cols: ColumnSet) -> ColumnSet {
        let r = self.rank_of(cols);
        (0..self.n)
            .filter(|&i| cols.contains(i) || self.rank_of(cols.insert(i)) == r)
            .fold(cols, |acc, i| acc.insert(i))
    }

    pub fn is_independent(&self, cols: ColumnSet) -> bool {
        self.rank_of(cols) == cols.len()
    }

    /// Saturated integer basis of the kernel lattice, one row per non-pivot
    /// column of the reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<i64>> {
        let mut m = linalg::to_rational(&self.rows);
        let pivots = linalg::rref(&mut m);
        let mut basis = Vec::new();
        for free in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0i64; self.n];
            v[free] = 1;
            for (row, &p) in pivots.iter().enumerate() {
                let x = -m[row][free].clone();
                // total unimodularity makes B^{-1}A integral
                assert!(x.is_integer(), "non-integral echelon entry");
                v[p] = x.to_integer().to_i64().expect("small entry");
            }
            basis.push(v);
        }
        basis
    }

    /// The Gale dual: the kernel basis packaged as a frame on the same ground set.
    pub fn dual_frame(&self) -> Result<GaleFrame> {
        GaleFrame::new(self.n, self.kernel_basis())
    }

    /// Columns lying in no circuit (coloops). Nonempty iff the image of the
    /// Lie algebra contains a coordinate line.
    pub fn kirwan_degree2_lines(&self) -> ColumnSet {
        let covered = self
            .circuits
            .iter()
            .fold(ColumnSet::EMPTY, |acc, c| acc.union(c.support));
        ColumnSet::full(self.n).difference(covered)
    }

    /// Zero columns.
    pub fn loops(&self) -> ColumnSet {
        ColumnSet::from_indices((0..self.n).filter(|&c| self.rows.iter().all(|r| r[c] == 0)))
    }

    /// Reorders the ground set: new column `j` is old column `order[j]`.
    pub fn permuted(&self, order: &[usize]) -> Result<GaleFrame> {
        validate_permutation(order, self.n)?;
        let rows = self
            .rows
            .iter()
            .map(|r| order.iter().map(|&o| r[o]).collect())
            .collect();
        GaleFrame::new(self.n, rows)
    }

    /// The lattice of flats, ordered by inclusion of column sets.
    pub fn flats(&self) -> FlatLattice {
        let bottom = self.closure(ColumnSet::EMPTY);
        let mut seen: BTreeSet<ColumnSet> = BTreeSet::new();
        let mut stack = vec![bottom];
        seen.insert(bottom);
        while let Some(f) = stack.pop() {
            for i in (0..self.n).filter(|&i| !f.contains(i)) {
                let g = self.closure(f.insert(i));
                if seen.insert(g) {
                    stack.push(g);
                }
            }
        }
        let mut flats: Vec<Flat> = seen
            .into_iter()
            .map(|columns| Flat {
                columns,
                rank: self.rank_of(columns),
            })
            .collect();
        flats.sort_by_key(|f| (f.rank, f.columns.size_lex_key()));
        FlatLattice { flats }
    }

    pub fn is_flat(&self, cols: ColumnSet) -> bool {
        self.closure(cols) == cols
    }

    /// The sub-problem on the columns of a flat.
    pub fn localize(&self, cols: ColumnSet) -> Result<LocalFrame> {
        if !cols.is_subset(ColumnSet::full(self.n)) || !self.is_flat(cols) {
            return Err(Error::NotClosed(cols));
        }
        let ground = cols.to_vec();
        let circuits = self
            .circuits
            .iter()
            .filter(|c| c.support.is_subset(cols))
            .map(|c| c.restrict(&ground))
            .collect();
        // greedy maximal independent subset of the restricted rows
        let mut linear_forms: Vec<Vec<i64>> = Vec::new();
        for r in &self.rows {
            let local: Vec<i64> = ground.iter().map(|&g| r[g]).collect();
            let mut trial = linear_forms.clone();
            trial.push(local.clone());
            if linalg::rank(&linalg::to_rational(&trial)) == trial.len() {
                linear_forms.push(local);
            }
        }
        let rank = self.rank_of(cols);
        debug_assert_eq!(rank, linear_forms.len());
        Ok(LocalFrame {
            ground,
            rank,
            circuits,
            linear_forms,
        })
    }

    /// Localization at the top flat: the whole problem.
    pub fn as_local(&self) -> LocalFrame {
        self.localize(ColumnSet::full(self.n))
            .expect("the full ground set is a flat")
    }
}

pub fn validate_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::Ordering(format!(
            "expected {n} entries, got {}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &o in order {
        if o >= n || seen[o] {
            return Err(Error::Ordering(format!("not a permutation of 1..{n}")));
        }
        seen[o] = true;
    }
    Ok(())
}

/// A closed set of columns and its rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Flat {
    pub columns: ColumnSet,
    pub rank: usize,
}

/// Flats of a frame, sorted by rank, then size, then lexicographically.
/// Index 0 is the bottom flat and the last index is the top flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatLattice {
    flats: Vec<Flat>,
}

impl FlatLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn index_of(&self, cols: ColumnSet) -> Option<usize> {
        self.flats.iter().position(|f| f.columns == cols)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].columns.is_subset(self.flats[b].columns)
    }

    /// All comparable pairs `(a, b)` with `a <= b`.
    pub fn order_pairs(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect()
    }

    /// The minimal open set containing `a`: everything below it.
    pub fn down_set(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&b| self.leq(b, a)).collect()
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let cols = self.flats[a].columns.intersection(self.flats[b].columns);
        self.index_of(cols)
    }
}

/// A localized problem: the ground set of a flat, its rank, the circuits
/// contained in it (in local coordinates), and a basis of the restricted
/// linear forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFrame {
    pub ground: Vec<usize>,
    pub rank: usize,
    pub circuits: Vec<SignedCircuit>,
    pub linear_forms: Vec<Vec<i64>>,
}

impl LocalFrame {
    pub fn nvars(&self) -> usize {
        self.ground.len()
    }
}

// ---------------------------------------------------------------------------
// Text and JSON frame formats

#[derive(Deserialize)]
struct FrameJson {
    k: usize,
    n: usize,
    rows: Vec<Vec<i64>>,
}

/// Parses `k n` on the first line followed by `k` rows of `n` integers.
pub fn parse_frame_text(text: &str) -> Result<GaleFrame> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: "empty input".into(),
    })?;
    let head = parse_ints(header, hl + 1)?;
    if head.len() != 2 || head.iter().any(|&x| x < 0) {
        return Err(Error::Parse {
            line: hl + 1,
            column: 1,
            message: "header must be two nonnegative integers \"k n\"".into(),
        });
    }
    let (k, n) = (head[0] as usize, head[1] as usize);
    let mut rows = Vec::with_capacity(k);
    for (idx, line) in lines {
        let row = parse_ints(line, idx + 1)?;
        if row.len() != n {
            return Err(Error::Parse {
                line: idx + 1,
                column: 1,
                message: format!("expected {n} entries, found {}", row.len()),
            });
        }
        if rows.len() == k {
            return Err(Error::Parse {
                line: idx + 1,
                column: 1,
                message: format!("more than {k} rows"),
            });
        }
        rows.push(row);
    }
    if rows.len() != k {
        return Err(Error::Dimension(format!(
            "header declares {k} rows, found {}",
            rows.len()
        )));
    }
    GaleFrame::new(n, rows)
}

fn parse_ints(line: &str, lineno: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut col = 0;
    for tok in line.split_whitespace() {
        let start = line[col..].find(tok).map_or(col, |p| col + p);
        col = start + tok.len();
        let v = tok.parse::<i64>().map_err(|_| Error::Parse {
            line: lineno,
            column: start + 1,
            message: format!("not an integer: {tok:?}"),
        })?;
        out.push(v);
    }
    Ok(out)
}

/// Parses `{"k":..,"n":..,"rows":[[..],..]}`.
pub fn parse_frame_json(text: &str) -> Result<GaleFrame> {
    let raw: FrameJson = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.rows.len() != raw.k {
        return Err(Error::Dimension(format!(
            "\"k\" is {}, but {} rows given",
            raw.k,
            raw.rows.len()
        )));
    }
    GaleFrame::new(raw.n, raw.rows)
}

/// Picks the JSON parser when the input starts with `{`.
pub fn parse_frame(text: &str) -> Result<GaleFrame> {
    if text.trim_start().starts_with('{') {
        parse_frame_json(text)
    } else {
        parse_frame_text(text)
    }
}

pub fn frame_to_text(frame: &GaleFrame) -> String {
    let mut s = format!("{} {}\n", frame.k(), frame.n());
    for r in frame.rows() {
        let toks: Vec<String> = r.iter().map(i64::to_string).collect();
        s.push_str(&toks.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(rows: &[&[i64]]) -> GaleFrame {
        let n = rows.first().map_or(0, |r| r.len());
        GaleFrame::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn supports(f: &GaleFrame) -> Vec<String> {
        f.signed_circuits()
            .iter()
            .map(|c| c.support().to_string())
            .collect()
    }

    #[test]
    fn unimodularity_examples() {
        assert!(check_total_unimodularity(&[vec![1, 1]], 2));
        assert!(check_total_unimodularity(
            &[vec![1, 0, 1], vec![0, 1, 1]],
            3
        ));
        assert!(!check_total_unimodularity(
            &[vec![1, 0, 1], vec![0, 1, 2]],
            3
        ));
        let bad = find_bad_minor(&[vec![1, 0, 1], vec![0, 1, 2]], 3).unwrap();
        assert_eq!(bad.value, 2);
        assert_eq!((bad.rows, bad.columns), (vec![1], vec![2]));
    }

    #[test]
    fn rejects_non_unimodular_with_indices() {
        let err = GaleFrame::new(3, vec![vec![1, 1, 0], vec![1, -1, 1]]).unwrap_err();
        match err {
            Error::NotUnimodular {
                rows,
                columns,
                value,
            } => {
                assert_eq!(rows, vec![1, 2]);
                assert_eq!(columns, vec![1, 2]);
                assert_eq!(value, -2);
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn rejects_dependent_rows() {
        let err = GaleFrame::new(2, vec![vec![1, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1, k: 2 });
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(frame(&[&[1, 1]]).kernel_basis(), vec![vec![-1, 1]]);
        assert!(GaleFrame::identity(3).unwrap().kernel_basis().is_empty());
        let kb = frame(&[&[1, 1, 1]]).kernel_basis();
        assert_eq!(kb.len(), 2);
        for v in &kb {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn circuit_examples() {
        let f = frame(&[&[1, 1]]);
        assert_eq!(f.signed_circuits()[0].coeffs(), &[1, -1]);

        let f = frame(&[&[1, 1, 1]]);
        let cs: Vec<&[i64]> = f.signed_circuits().iter().map(|c| c.coeffs()).collect();
        assert_eq!(cs, vec![&[1, -1, 0][..], &[1, 0, -1], &[0, 1, -1]]);

        assert!(GaleFrame::identity(3).unwrap().signed_circuits().is_empty());

        let f = frame(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(f.signed_circuits()[0].coeffs(), &[1, 1, -1]);
    }

    #[test]
    fn non_unit_circuit_is_reported() {
        // [[1,1,2]] is not TU; the minimal-support kernel vector (2,0,-1) has a 2
        let err = enumerate_signed_circuits(&[vec![1, 0, 2]], 3);
        assert!(matches!(err, Err(Error::NonUnitCircuit { .. })));
    }

    #[test]
    fn dual_frame_examples() {
        let d = frame(&[&[1, 1]]).dual_frame().unwrap();
        assert_eq!(d.k(), 1);
        assert_eq!(supports(&d), vec!["{1,2}"]);

        let d = frame(&[&[1, 1, 1]]).dual_frame().unwrap();
        assert_eq!(d.k(), 2);
        assert_eq!(supports(&d), vec!["{1,2,3}"]);

        let id = GaleFrame::identity(2).unwrap().dual_frame().unwrap();
        assert_eq!(id.k(), 0);
        assert_eq!(id.signed_circuits().len(), 2);
    }

    #[test]
    fn flat_examples() {
        let l = frame(&[&[1, 0, 1], &[0, 1, 1]]).flats();
        let cols: Vec<String> = l.flats().iter().map(|f| f.columns.to_string()).collect();
        assert_eq!(cols, vec!["{}", "{1}", "{2}", "{3}", "{1,2,3}"]);

        let l = frame(&[&[1, 1]]).flats();
        let cols: Vec<String> = l.flats().iter().map(|f| f.columns.to_string()).collect();
        assert_eq!(cols, vec!["{}", "{1,2}"]);

        let l = GaleFrame::identity(2).unwrap().flats();
        assert_eq!(l.len(), 4);
    }

    #[test]
    fn localize_examples() {
        let f = frame(&[&[1, 0, 1], &[0, 1, 1]]);
        let loc = f.localize(ColumnSet::singleton(0)).unwrap();
        assert_eq!(
            (loc.ground.clone(), loc.rank, loc.circuits.len()),
            (vec![0], 1, 0)
        );

        let loc = f.localize(ColumnSet::EMPTY).unwrap();
        assert_eq!((loc.nvars(), loc.rank, loc.circuits.len()), (0, 0, 0));

        let loc = f.localize(ColumnSet::full(3)).unwrap();
        assert_eq!(loc.circuits, f.signed_circuits().to_vec());
        assert_eq!(loc.rank, 2);

        assert!(matches!(
            f.localize(ColumnSet::from_indices([0, 1])),
            Err(Error::NotClosed(_))
        ));
    }

    #[test]
    fn kirwan_examples() {
        assert!(frame(&[&[1, 1]]).kirwan_degree2_lines().is_empty());
        assert_eq!(
            GaleFrame::identity(3).unwrap().kirwan_degree2_lines(),
            ColumnSet::full(3)
        );
        assert_eq!(
            frame(&[&[1, 1, 0], &[0, 0, 1]]).kirwan_degree2_lines(),
            ColumnSet::singleton(2)
        );
    }

    #[test]
    fn zero_column_gives_singleton_circuit() {
        let f = frame(&[&[1, 0]]);
        assert_eq!(f.signed_circuits()[0].coeffs(), &[0, 1]);
        assert_eq!(f.loops(), ColumnSet::singleton(1));
    }

    #[test]
    fn text_and_json_parsers() {
        let f = parse_frame_text("2 3\n1 0 1\n0 1 1\n").unwrap();
        assert_eq!(f.rows(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let g = parse_frame_json(r#"{"k":2,"n":3,"rows":[[1,0,1],[0,1,1]]}"#).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_frame(&frame_to_text(&f)).unwrap(), f);

        let e = parse_frame_text("1 2\n1 x\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 3,
                message: "not an integer: \"x\"".into()
            }
        );
        let e = parse_frame_text("1 3\n1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(matches!(
            parse_frame_text("2 2\n1 0\n"),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            parse_frame_json(r#"{"k":1,"n":2,"rows":[[1,1.5]]}"#),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_frame_json(r#"{"k":1,"n":3,"rows":[[1,1]]}"#),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
