//! Broken circuit complexes, independence complexes and their f/h-vectors.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gale_frame::{ColumnSet, GaleFrame, LocalFrame, SignedCircuit};
use crate::hilbert::{expand_series, HilbertFunction};
use crate::poly::{binomial, Monomial};

/// Circuit supports with their largest element removed, deduplicated and
/// sorted by size then lexicographically.
pub fn broken_circuits(circuits: &[SignedCircuit]) -> Vec<ColumnSet> {
    let mut out: Vec<ColumnSet> = circuits
        .iter()
        .map(|c| {
            let s = c.support();
            s.remove(s.max().expect("circuits are nonzero"))
        })
        .collect();
    out.sort_by_key(|s| s.size_lex_key());
    out.dedup();
    out
}

/// A downward-closed family of subsets of `{0..n}`.
///
/// The void complex (no faces at all, not even the empty one) is allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<ColumnSet>,
    facets: Vec<ColumnSet>,
}

impl SimplicialComplex {
    /// Builds the complex of all subsets satisfying `is_face`, which must be
    /// downward closed.
    pub fn from_predicate(n: usize, is_face: impl Fn(ColumnSet) -> bool) -> Self {
        let mut faces: Vec<ColumnSet> = ColumnSet::all_subsets(n).filter(|&s| is_face(s)).collect();
        faces.sort_by_key(|s| s.size_lex_key());
        let facets = faces
            .iter()
            .copied()
            .filter(|&f| (0..n).all(|i| f.contains(i) || !faces.contains(&f.insert(i))))
            .collect();
        SimplicialComplex { n, faces, facets }
    }

    pub fn nvertices(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &[ColumnSet] {
        &self.faces
    }

    pub fn facets(&self) -> &[ColumnSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn is_face(&self, s: ColumnSet) -> bool {
        self.facets.iter().any(|&f| s.is_subset(f))
    }

    /// Size of the largest face; `None` for the void complex.
    pub fn max_face_size(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).max()
    }

    /// `f[i]` counts faces with `i` elements (so `f[0] = f_{-1}`).
    pub fn face_counts(&self) -> Vec<u64> {
        let Some(top) = self.max_face_size() else {
            return Vec::new();
        };
        let mut f = vec![0u64; top + 1];
        for s in &self.faces {
            f[s.len()] += 1;
        }
        f
    }
}

/// Subsets of the ground set containing no broken circuit.
pub fn bc_faces(local: &LocalFrame) -> SimplicialComplex {
    let bcs = broken_circuits(&local.circuits);
    SimplicialComplex::from_predicate(local.nvars(), |s| !bcs.iter().any(|b| b.is_subset(s)))
}

/// Independent sets of columns.
pub fn independence_complex(frame: &GaleFrame) -> SimplicialComplex {
    SimplicialComplex::from_predicate(frame.n(), |s| frame.is_independent(s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FHVectors {
    /// `(f_{-1}, f_0, .., f_{dim})`.
    pub f: Vec<u64>,
    /// `(h_0, .., h_d)`.
    pub h: Vec<i64>,
}

impl FHVectors {
    pub fn h_sum(&self) -> i64 {
        self.h.iter().sum()
    }
}

/// f-vector by face counting and h-vector by the transform with parameter `d`.
pub fn fh_vectors(cx: &SimplicialComplex, d: usize) -> Result<FHVectors> {
    if cx.is_void() {
        return Ok(FHVectors {
            f: Vec::new(),
            h: Vec::new(),
        });
    }
    let f = cx.face_counts();
    if f.len() > d + 1 {
        return Err(Error::Dimension(format!(
            "complex has faces of size {} but the transform uses d = {d}",
            f.len() - 1
        )));
    }
    let h = (0..=d)
        .map(|j| {
            (0..=j)
                .filter(|&i| i < f.len())
                .map(|i| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, j - i) as i64 * f[i] as i64
                })
                .sum()
        })
        .collect();
    Ok(FHVectors { f, h })
}

/// Stanley–Reisner quotient dimensions: monomials whose support is a face.
///
/// Counts monomials by support and checks the result against
/// `h(t)/(1-t)^rank`.
pub fn sr_dims(local: &LocalFrame, d_max: usize) -> Result<HilbertFunction> {
    let cx = bc_faces(local);
    let mut dims = vec![0usize; d_max + 1];
    for face in cx.faces() {
        let s = face.len();
        for (d, slot) in dims.iter_mut().enumerate() {
            *slot += match (s, d) {
                (0, 0) => 1,
                (0, _) | (_, 0) => 0,
                _ => binomial(d - 1, s - 1),
            };
        }
    }
    let fh = fh_vectors(&cx, local.rank)?;
    let expected = expand_series(&fh.h, local.rank, d_max);
    for (d, (&got, &want)) in dims.iter().zip(&expected).enumerate() {
        if got as i64 != want {
            return Err(Error::HilbertMismatch {
                degree: d,
                module: got,
                expected: want.max(0) as usize,
            });
        }
    }
    Ok(HilbertFunction(dims))
}

pub fn sr_quotient_dims(frame: &GaleFrame, d_max: usize) -> Result<HilbertFunction> {
    sr_dims(&frame.as_local(), d_max)
}

/// Degree-`d` monomials whose support contains a broken circuit, in
/// descending graded-lex order.
pub fn sr_monomials(local: &LocalFrame, d: usize) -> Vec<Monomial> {
    let bcs = broken_circuits(&local.circuits);
    Monomial::of_degree(local.nvars(), d)
        .into_iter()
        .filter(|m| {
            let s = m.support();
            bcs.iter().any(|b| b.is_subset(s))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IhBettiReport {
    pub h: Vec<i64>,
    /// `(cohomological degree 2i, dim IH^{2i})` of the dual variety.
    pub ih_betti: Vec<(usize, i64)>,
    pub k: usize,
    /// Coefficients of `h(t^2)/(1-t^2)^k`, indexed by cohomological degree.
    pub equivariant_series: Vec<i64>,
}

/// Reports the h-vector of the broken circuit complex as intersection
/// cohomology Betti numbers of the dual variety, and the equivariant series.
pub fn ih_betti_report(frame: &GaleFrame, d_max: usize) -> Result<IhBettiReport> {
    let local = frame.as_local();
    let fh = fh_vectors(&bc_faces(&local), local.rank)?;
    let ih_betti = fh.h.iter().enumerate().map(|(i, &x)| (2 * i, x)).collect();
    let series = expand_series(&fh.h, local.rank, d_max);
    let mut equivariant_series = Vec::with_capacity(2 * series.len());
    for (i, x) in series.into_iter().enumerate() {
        if i > 0 {
            equivariant_series.push(0);
        }
        equivariant_series.push(x);
    }
    Ok(IhBettiReport {
        h: fh.h,
        ih_betti,
        k: local.rank,
        equivariant_series,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualTopH {
    pub h_sum: i64,
    pub dual_h: Vec<i64>,
    pub dual_top_h: i64,
    pub ok: bool,
}

/// Compares the sum of the h-numbers of the broken circuit complex with the
/// top h-number of the independence complex of the dual frame.
pub fn dual_top_h_check(frame: &GaleFrame) -> Result<DualTopH> {
    let local = frame.as_local();
    let h_sum = fh_vectors(&bc_faces(&local), local.rank)?.h_sum();
    let dual = frame.dual_frame()?;
    let dual_h = fh_vectors(&independence_complex(&dual), dual.k())?.h;
    let dual_top_h = dual_h.last().copied().unwrap_or(0);
    Ok(DualTopH {
        h_sum,
        dual_top_h,
        ok: h_sum == dual_top_h,
        dual_h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(rows: &[&[i64]]) -> GaleFrame {
        let n = rows[0].len();
        GaleFrame::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn names(sets: &[ColumnSet]) -> Vec<String> {
        sets.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn broken_circuit_examples() {
        let f = frame(&[&[1, 1, 1]]);
        assert_eq!(
            names(&broken_circuits(f.signed_circuits())),
            vec!["{1}", "{2}"]
        );
        let f = frame(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(names(&broken_circuits(f.signed_circuits())), vec!["{1,2}"]);
        let f = frame(&[&[1, 0]]);
        assert_eq!(broken_circuits(f.signed_circuits())[0], ColumnSet::EMPTY);
    }

    #[test]
    fn bc_face_examples() {
        let cx = bc_faces(&frame(&[&[1, 1, 1]]).as_local());
        assert_eq!(names(cx.faces()), vec!["{}", "{3}"]);
        let cx = bc_faces(&frame(&[&[1, 0, 1], &[0, 1, 1]]).as_local());
        assert_eq!(
            names(cx.faces()),
            vec!["{}", "{1}", "{2}", "{3}", "{1,3}", "{2,3}"]
        );
        let cx = bc_faces(&GaleFrame::identity(3).unwrap().as_local());
        assert_eq!(cx.facets(), &[ColumnSet::full(3)]);
        let cx = bc_faces(&frame(&[&[1, 0]]).as_local());
        assert!(cx.is_void());
    }

    #[test]
    fn fh_examples() {
        let cx = bc_faces(&frame(&[&[1, 0, 1], &[0, 1, 1]]).as_local());
        let fh = fh_vectors(&cx, 2).unwrap();
        assert_eq!((fh.f, fh.h), (vec![1, 3, 2], vec![1, 1, 0]));

        let cx = bc_faces(&frame(&[&[1, 1]]).as_local());
        let fh = fh_vectors(&cx, 1).unwrap();
        assert_eq!((fh.f, fh.h), (vec![1, 1], vec![1, 0]));

        let cx = bc_faces(&GaleFrame::identity(2).unwrap().as_local());
        assert_eq!(fh_vectors(&cx, 2).unwrap().h, vec![1, 0, 0]);
        assert!(fh_vectors(&cx, 1).is_err());

        let void = bc_faces(&frame(&[&[1, 0]]).as_local());
        assert_eq!(fh_vectors(&void, 1).unwrap().h, Vec::<i64>::new());
    }

    #[test]
    fn sr_dims_examples() {
        let f = frame(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(sr_quotient_dims(&f, 4).unwrap().0, vec![1, 3, 5, 7, 9]);
        assert_eq!(
            sr_quotient_dims(&frame(&[&[1, 1]]), 3).unwrap().0,
            vec![1, 1, 1, 1]
        );
        assert_eq!(
            sr_quotient_dims(&frame(&[&[1, 0]]), 3).unwrap().0,
            vec![0; 4]
        );
    }

    #[test]
    fn sr_monomials_count_complements() {
        let f = frame(&[&[1, 0, 1], &[0, 1, 1]]);
        let local = f.as_local();
        let dims = sr_dims(&local, 5).unwrap();
        for d in 0..=5 {
            assert_eq!(
                sr_monomials(&local, d).len() + dims.get(d),
                Monomial::count(3, d)
            );
        }
    }

    #[test]
    fn ih_betti_examples() {
        let r = ih_betti_report(&frame(&[&[1, 0, 1], &[0, 1, 1]]), 3).unwrap();
        assert_eq!(r.ih_betti, vec![(0, 1), (2, 1), (4, 0)]);
        assert_eq!(r.equivariant_series, vec![1, 0, 3, 0, 5, 0, 7]);
        let r = ih_betti_report(&frame(&[&[1, 1]]), 2).unwrap();
        assert_eq!(r.ih_betti, vec![(0, 1), (2, 0)]);
        let r = ih_betti_report(&GaleFrame::identity(2).unwrap(), 2).unwrap();
        assert_eq!(r.h, vec![1, 0, 0]);
    }

    #[test]
    fn dual_top_h_examples() {
        let r = dual_top_h_check(&frame(&[&[1, 1]])).unwrap();
        assert_eq!((r.h_sum, r.dual_h.clone(), r.ok), (1, vec![1, 1], true));
        let r = dual_top_h_check(&frame(&[&[1, 1, 1]])).unwrap();
        assert_eq!((r.h_sum, r.dual_h.clone(), r.ok), (1, vec![1, 1, 1], true));
        let r = dual_top_h_check(&frame(&[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        assert_eq!((r.h_sum, r.dual_h.clone(), r.ok), (2, vec![1, 2], true));
        let r = dual_top_h_check(&frame(&[&[1, 0]])).unwrap();
        assert_eq!((r.h_sum, r.dual_top_h), (0, 0));
    }

    #[test]
    fn bc_complex_is_independent() {
        let f = frame(&[&[1, 0, 1, 1], &[0, 1, 1, 0]]);
        let cx = bc_faces(&f.as_local());
        for face in cx.faces() {
            assert!(f.is_independent(*face));
        }
    }
}
