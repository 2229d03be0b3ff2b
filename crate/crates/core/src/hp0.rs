//! The presentation `Q[e_1..e_n]/J` of degree-zero Poisson homology, its
//! Stanley–Reisner degeneration, central and generic fibers, freeness
//! certificates, and an independent invariant-ring computation.

use std::sync::Arc;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bc_complex::{self, broken_circuits};
use crate::error::{Error, Result};
use crate::gale_frame::{ColumnSet, GaleFrame, LocalFrame};
use crate::hilbert::{expand_series, HilbertFunction};
use crate::poly::{EchelonSpan, GradedSpan, Monomial, MonomialIndex, Poly, SparseVec};
use crate::rational::Rat as Q;

/// Default degree bound for Hilbert computations.
pub const DEFAULT_D_MAX: usize = 12;

/// Which graded subspace is divided out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// `J`: circuit derivations of monomials with dominating support.
    Poisson,
    /// `J_{Δ^bc}`: monomials whose support contains a broken circuit.
    StanleyReisner,
}

/// Degree-`d` relations of the given kind, as polynomials.
pub fn relations(local: &LocalFrame, kind: RelationKind, d: usize) -> Vec<Poly> {
    let index = MonomialIndex::degree(local.nvars(), d);
    relation_rows(local, kind, d, &index)
        .iter()
        .map(|r| index.decode(r))
        .collect()
}

fn relation_rows(
    local: &LocalFrame,
    kind: RelationKind,
    d: usize,
    index: &MonomialIndex,
) -> Vec<SparseVec> {
    let n = local.nvars();
    match kind {
        RelationKind::Poisson => {
            let mut rows = Vec::new();
            for c in &local.circuits {
                let supp = c.support();
                let Some(rest) = (d + 1).checked_sub(supp.len()) else {
                    continue;
                };
                let base = Monomial::new((0..n).map(|i| u32::from(supp.contains(i))).collect());
                for g in Monomial::of_degree(n, rest) {
                    let beta = base.mul(&g);
                    let mut row: SparseVec = supp
                        .iter()
                        .map(|i| {
                            let m = beta.div_var(i).expect("support dominates");
                            let coeff = c.coeffs()[i] * i64::from(beta.exponents()[i]);
                            (index.position(&m).expect("degree d"), Q::from(coeff))
                        })
                        .collect();
                    row.sort_by_key(|(i, _)| *i);
                    rows.push(row);
                }
            }
            rows
        }
        RelationKind::StanleyReisner => {
            let bcs = broken_circuits(&local.circuits);
            index
                .monomials()
                .iter()
                .enumerate()
                .filter(|(_, m)| {
                    let s = m.support();
                    bcs.iter().any(|b| b.is_subset(s))
                })
                .map(|(i, _)| vec![(i as u32, Q::from(1))])
                .collect()
        }
    }
}

/// Echelon spans of the relations in every degree `0..=d_max`.
#[derive(Debug, Clone)]
pub struct GradedQuotient {
    local: LocalFrame,
    kind: RelationKind,
    spans: Vec<EchelonSpan>,
}

impl GradedQuotient {
    pub fn new(local: LocalFrame, kind: RelationKind, d_max: usize) -> Self {
        let spans = (0..=d_max)
            .into_par_iter()
            .map(|d| {
                let index = Arc::new(MonomialIndex::degree(local.nvars(), d));
                let mut span = EchelonSpan::new(index.clone());
                for row in relation_rows(&local, kind, d, &index) {
                    span.insert(&row);
                }
                span
            })
            .collect();
        GradedQuotient { local, kind, spans }
    }

    pub fn local(&self) -> &LocalFrame {
        &self.local
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn d_max(&self) -> usize {
        self.spans.len() - 1
    }

    pub fn span(&self, d: usize) -> &EchelonSpan {
        &self.spans[d]
    }

    pub fn graded_span(&self, d: usize) -> GradedSpan {
        GradedSpan::from_echelon(d, self.spans[d].clone())
    }

    pub fn hilbert(&self) -> HilbertFunction {
        HilbertFunction(self.spans.iter().map(EchelonSpan::codim).collect())
    }

    /// Standard monomials in degree `d`: a basis of the quotient.
    pub fn standard_monomials(&self, d: usize) -> Vec<Monomial> {
        self.graded_span(d).standard_monomials()
    }

    /// Coordinates of `p` (homogeneous of degree `d`) in the standard basis.
    pub fn coordinates(&self, d: usize, p: &Poly) -> Result<Vec<Q>> {
        let span = &self.spans[d];
        let v = span.index().encode(p).ok_or(Error::DegreeMismatch {
            expected: d,
            got: p.homogeneous_degree().unwrap_or(0),
        })?;
        let nf = span.normal_form(&v);
        let standard = span.standard();
        let mut out = vec![Q::zero(); standard.len()];
        for (i, c) in nf {
            let pos = standard.binary_search(&i).expect("normal form is standard");
            out[pos] = c;
        }
        Ok(out)
    }

    /// Relations of degree `d` together with the linear forms times all
    /// monomials of degree `d - 1`.
    fn central_fiber_span(&self, d: usize, forms: &[Poly]) -> EchelonSpan {
        let mut span = self.spans[d].clone();
        if d > 0 {
            for m in Monomial::of_degree(self.local.nvars(), d - 1) {
                for l in forms {
                    span.insert_poly(&l.mul_monomial(&m)).expect("degree d");
                }
            }
        }
        span
    }

    /// Graded dimensions of the quotient further divided by the linear forms.
    pub fn central_fiber(&self) -> HilbertFunction {
        let forms = linear_form_polys(&self.local);
        let dims = (0..self.spans.len())
            .into_par_iter()
            .map(|d| self.central_fiber_span(d, &forms).codim())
            .collect();
        HilbertFunction(dims)
    }

    /// Standard monomials of the central fiber quotient in degrees `0..=d_max`.
    pub fn central_fiber_basis(&self) -> Vec<Monomial> {
        let forms = linear_form_polys(&self.local);
        (0..self.spans.len())
            .flat_map(|d| {
                let span = self.central_fiber_span(d, &forms);
                span.standard()
                    .into_iter()
                    .map(|i| span.index().get(i).clone())
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// The linear forms `Σ_i a_i e_i` given by the local rows.
pub fn linear_form_polys(local: &LocalFrame) -> Vec<Poly> {
    let n = local.nvars();
    local
        .linear_forms
        .iter()
        .map(|row| {
            Poly::from_terms(
                row.iter()
                    .enumerate()
                    .map(|(i, &a)| (Monomial::var(n, i), Q::from(a))),
            )
        })
        .collect()
}

/// All `∂_α e^β` with `α` a signed circuit, `|β| = d+1` and `Supp α ⊆ Supp β`.
pub fn j_generators(frame: &GaleFrame, d: usize) -> Vec<Poly> {
    relations(&frame.as_local(), RelationKind::Poisson, d)
}

pub fn hp0_hilbert(frame: &GaleFrame, d_max: usize) -> HilbertFunction {
    GradedQuotient::new(frame.as_local(), RelationKind::Poisson, d_max).hilbert()
}

pub fn central_fiber_dims(frame: &GaleFrame, d_max: usize) -> HilbertFunction {
    GradedQuotient::new(frame.as_local(), RelationKind::Poisson, d_max).central_fiber()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub leading: usize,
    pub stanley_reisner: usize,
    pub equal: bool,
    /// Every Stanley–Reisner monomial is a leading monomial.
    pub contains_sr: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegenerationReport {
    pub degrees: Vec<DegreeComparison>,
    pub ok: bool,
    pub containment_ok: bool,
}

/// Compares the graded-lex leading monomials of `J_d` with the
/// Stanley–Reisner monomials, degree by degree.
pub fn degeneration_report(quotient: &GradedQuotient) -> DegenerationReport {
    let local = quotient.local();
    let degrees: Vec<DegreeComparison> = (0..=quotient.d_max())
        .map(|d| {
            let leading = quotient.graded_span(d).leading_monomials();
            let mut sr = bc_complex::sr_monomials(local, d);
            sr.sort();
            let mut lead_sorted = leading.clone();
            lead_sorted.sort();
            let contains_sr = sr.iter().all(|m| lead_sorted.binary_search(m).is_ok());
            DegreeComparison {
                degree: d,
                leading: leading.len(),
                stanley_reisner: sr.len(),
                equal: lead_sorted == sr,
                contains_sr,
            }
        })
        .collect();
    DegenerationReport {
        ok: degrees.iter().all(|c| c.equal),
        containment_ok: degrees.iter().all(|c| c.contains_sr),
        degrees,
    }
}

pub fn degeneration_check(frame: &GaleFrame, d_max: usize) -> DegenerationReport {
    degeneration_report(&GradedQuotient::new(
        frame.as_local(),
        RelationKind::Poisson,
        d_max,
    ))
}

// ---------------------------------------------------------------------------
// Specialization

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Specialization {
    #[serde(serialize_with = "serialize_rationals")]
    pub lambda: Vec<Q>,
    pub truncation: usize,
    pub dim: usize,
    pub previous_dim: usize,
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn serialize_rationals<S: serde::Serializer>(
    v: &[Q],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Q::to_string))
}

/// Dimension of the degree-`≤ bound` truncation of
/// `Q[e]/(J + Σ_x (ℓ_x - λ_x) Q[e])`.
fn truncated_fiber_dim(local: &LocalFrame, lambda: &[Q], bound: usize) -> usize {
    let n = local.nvars();
    let index = Arc::new(MonomialIndex::up_to_degree(n, bound));
    let mut span = EchelonSpan::new(index.clone());
    for d in 0..=bound {
        let deg_index = MonomialIndex::degree(n, d);
        for row in relation_rows(local, RelationKind::Poisson, d, &deg_index) {
            let p = deg_index.decode(&row);
            span.insert_poly(&p).expect("within bound");
        }
    }
    let forms = linear_form_polys(local);
    let shifted: Vec<Poly> = forms
        .iter()
        .zip(lambda)
        .map(|(l, x)| l.add(&Poly::monomial(Monomial::one(n), -x.clone())))
        .collect();
    for d in 0..bound {
        for m in Monomial::of_degree(n, d) {
            for l in &shifted {
                span.insert_poly(&l.mul_monomial(&m)).expect("within bound");
            }
        }
    }
    span.codim()
}

/// Fiber dimension at `λ`, computed at truncations `bound - 1` and `bound`.
pub fn fiber_dimension_local(
    local: &LocalFrame,
    lambda: &[Q],
    bound: usize,
) -> Result<Specialization> {
    if lambda.len() != local.linear_forms.len() {
        return Err(Error::LengthMismatch {
            expected: local.linear_forms.len(),
            got: lambda.len(),
        });
    }
    let bound = bound.max(1);
    let (previous_dim, dim) = rayon::join(
        || truncated_fiber_dim(local, lambda, bound - 1),
        || truncated_fiber_dim(local, lambda, bound),
    );
    Ok(Specialization {
        lambda: lambda.to_vec(),
        truncation: bound,
        dim,
        previous_dim,
        stabilized: dim == previous_dim,
        seed: None,
    })
}

pub fn fiber_dimension(frame: &GaleFrame, lambda: &[Q], bound: usize) -> Result<Specialization> {
    fiber_dimension_local(&frame.as_local(), lambda, bound)
}

/// A seeded random rational point with small numerators and denominators.
pub fn random_lambda(k: usize, seed: u64) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            let num: i64 = rng.gen_range(-7..=7);
            let den: i64 = rng.gen_range(1..=5);
            Q::new(num, den)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Freeness

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    #[serde(serialize_with = "serialize_monomials")]
    pub basis_monomials: Vec<Monomial>,
    pub h_poly: Vec<i64>,
    pub k: usize,
    pub verified_to: usize,
}

fn serialize_monomials<S: serde::Serializer>(
    v: &[Monomial],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|m| m.to_string()))
}

/// Certifies that the quotient is free over the polynomial ring on its
/// linear forms: the central fiber must vanish in two consecutive degrees,
/// and the Hilbert function must equal `h(t)/(1-t)^k` through `d_max`.
pub fn certify_free(quotient: &GradedQuotient) -> Result<FreenessCertificate> {
    let d_max = quotient.d_max();
    let central = quotient.central_fiber();
    let cut = (0..d_max)
        .find(|&d| central.get(d) == 0 && central.get(d + 1) == 0)
        .ok_or(Error::CentralFiberNotBounded { d_max })?;
    let h_poly: Vec<i64> = central.dims()[..cut].iter().map(|&x| x as i64).collect();
    let k = quotient.local().linear_forms.len();
    let expected = expand_series(&h_poly, k, d_max);
    let hilbert = quotient.hilbert();
    for (d, (&got, &want)) in hilbert.dims().iter().zip(&expected).enumerate() {
        if got as i64 != want {
            return Err(Error::HilbertMismatch {
                degree: d,
                module: got,
                expected: want.max(0) as usize,
            });
        }
    }
    let basis_monomials = quotient
        .central_fiber_basis()
        .into_iter()
        .filter(|m| m.degree() < cut)
        .collect();
    Ok(FreenessCertificate {
        basis_monomials,
        h_poly,
        k,
        verified_to: d_max,
    })
}

pub fn freeness_certificate(frame: &GaleFrame, d_max: usize) -> Result<FreenessCertificate> {
    certify_free(&GradedQuotient::new(
        frame.as_local(),
        RelationKind::Poisson,
        d_max,
    ))
}

// ---------------------------------------------------------------------------
// Circuit sufficiency

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SufficiencyReport {
    pub samples: usize,
    pub checked: usize,
    pub ok: bool,
}

/// Checks that derivations along random non-circuit kernel vectors do not
/// enlarge the circuit-generated span.
pub fn circuit_sufficiency_check(
    frame: &GaleFrame,
    d_max: usize,
    samples: usize,
    seed: u64,
) -> SufficiencyReport {
    let quotient = GradedQuotient::new(frame.as_local(), RelationKind::Poisson, d_max);
    let kernel = frame.kernel_basis();
    let n = frame.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut ok = true;
    if kernel.is_empty() {
        return SufficiencyReport {
            samples: 0,
            checked,
            ok,
        };
    }
    for _ in 0..samples {
        let coeffs: Vec<i64> = kernel.iter().map(|_| rng.gen_range(-2..=2)).collect();
        let alpha: Vec<i64> = (0..n)
            .map(|i| kernel.iter().zip(&coeffs).map(|(row, c)| row[i] * c).sum())
            .collect();
        let supp = ColumnSet::from_indices((0..n).filter(|&i| alpha[i] != 0));
        if supp.is_empty() {
            continue;
        }
        let base = Monomial::new((0..n).map(|i| u32::from(supp.contains(i))).collect());
        for top in supp.len()..=d_max + 1 {
            for g in Monomial::of_degree(n, top - supp.len()) {
                let beta = base.mul(&g);
                let p = crate::poly::apply_derivation(&alpha, &beta).expect("length n");
                let span = quotient.span(top - 1);
                let v = span.index().encode(&p).expect("degree top-1");
                checked += 1;
                if !span.contains(&v) {
                    ok = false;
                }
            }
        }
    }
    SufficiencyReport {
        samples,
        checked,
        ok,
    }
}

// ---------------------------------------------------------------------------
// Invariant-ring oracle

/// Graded dimensions of the invariant ring of `Q[z, w]` modulo all Poisson
/// brackets of invariants, reported at combinatorial degree `d` for
/// `(z,w)`-degree `2d`.
pub fn invariant_bracket_oracle(frame: &GaleFrame, d_max: usize) -> HilbertFunction {
    let n = frame.n();
    let rows = frame.rows();
    let top = 2 * d_max + 2;
    // invariant monomials z^b w^c grouped by total degree
    let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
    for (t, slot) in by_degree.iter_mut().enumerate() {
        for m in Monomial::of_degree(2 * n, t) {
            let e = m.exponents();
            let invariant = rows.iter().all(|r| {
                (0..n)
                    .map(|i| r[i] * (i64::from(e[i]) - i64::from(e[n + i])))
                    .sum::<i64>()
                    == 0
            });
            if invariant {
                slot.push(m);
            }
        }
    }
    let dims = (0..=d_max)
        .into_par_iter()
        .map(|d| {
            let target = 2 * d;
            let index = Arc::new(MonomialIndex::new(by_degree[target].clone()));
            let mut span = EchelonSpan::new(index.clone());
            let total = target + 2;
            for a in 1..=total / 2 {
                let b = total - a;
                for (pi, p) in by_degree[a].iter().enumerate() {
                    let start = if a == b { pi + 1 } else { 0 };
                    for q in &by_degree[b][start..] {
                        let row = bracket(p, q, n, &index);
                        if !row.is_empty() {
                            span.insert(&row);
                        }
                    }
                }
            }
            span.codim()
        })
        .collect();
    HilbertFunction(dims)
}

/// `{z^a w^b, z^c w^d} = Σ_i (a_i d_i - b_i c_i) z^{a+c-ε_i} w^{b+d-ε_i}`.
fn bracket(p: &Monomial, q: &Monomial, n: usize, index: &MonomialIndex) -> SparseVec {
    let (pe, qe) = (p.exponents(), q.exponents());
    let prod = p.mul(q);
    let mut row: SparseVec = (0..n)
        .filter_map(|i| {
            let c =
                i64::from(pe[i]) * i64::from(qe[n + i]) - i64::from(pe[n + i]) * i64::from(qe[i]);
            (c != 0).then(|| {
                let m = prod
                    .div_var(i)
                    .and_then(|m| m.div_var(n + i))
                    .expect("positive exponents");
                (
                    index.position(&m).expect("invariant of target degree"),
                    Q::from(c),
                )
            })
        })
        .collect();
    row.sort_by_key(|(i, _)| *i);
    row
}
