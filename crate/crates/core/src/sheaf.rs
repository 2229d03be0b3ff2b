//! Sheaves of graded modules on the lattice of flats.
//!
//! Open sets are down-sets of the lattice. A sheaf is given by its stalks and
//! restriction maps `r(F, F') : S(F') -> S(F)` for `F <= F'`; here the stalk at
//! a flat is a quotient of the polynomial ring on the flat's columns and the
//! restriction maps kill the variables outside the smaller flat.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gale_frame::{Flat, FlatLattice, GaleFrame};
use crate::hilbert::HilbertFunction;
use crate::hp0::{self, GradedQuotient, RelationKind};
use crate::poly::{EchelonSpan, Monomial, Poly, SparseVec};
use crate::rational::Rat as Q;

/// Cap on the number of enumerated down-sets.
pub const MAX_OPENS: usize = 1 << 16;
/// Lattices larger than this only get principal opens and pairwise unions.
pub const MAX_FULL_LATTICE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SheafKind {
    /// Stalks `Q[e_S]/J_F`.
    M,
    /// Stalks `Q[e_S]/J_{Δ^bc_F}`.
    Rbc,
}

impl SheafKind {
    pub fn relations(self) -> RelationKind {
        match self {
            SheafKind::M => RelationKind::Poisson,
            SheafKind::Rbc => RelationKind::StanleyReisner,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpenMode {
    Full,
    Principal,
}

/// The lattice of flats with its down-set topology.
#[derive(Debug, Clone)]
pub struct PosetTopology {
    lattice: FlatLattice,
    principal: Vec<Vec<usize>>,
    opens: Vec<Vec<usize>>,
    mode: OpenMode,
}

impl PosetTopology {
    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    /// `U_F`: the smallest open set containing flat `F`.
    pub fn principal(&self, f: usize) -> &[usize] {
        &self.principal[f]
    }

    /// The enumerated open sets (all of them in full mode).
    pub fn opens(&self) -> &[Vec<usize>] {
        &self.opens
    }

    pub fn mode(&self) -> OpenMode {
        self.mode
    }

    pub fn is_open(&self, set: &[usize]) -> bool {
        set.iter()
            .all(|&b| (0..self.lattice.len()).all(|a| !self.lattice.leq(a, b) || set.contains(&a)))
    }
}

/// Enumerates down-sets by deciding flats from the top rank down; a flat is
/// forced in once something above it is in.
fn enumerate_down_sets(lattice: &FlatLattice, cap: usize) -> Option<Vec<Vec<usize>>> {
    let order: Vec<usize> = (0..lattice.len()).rev().collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; lattice.len()];

    fn rec(
        lattice: &FlatLattice,
        order: &[usize],
        pos: usize,
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if out.len() > cap {
            return false;
        }
        let Some(&x) = order.get(pos) else {
            out.push((0..chosen.len()).filter(|&i| chosen[i]).collect());
            return true;
        };
        let forced = (0..chosen.len()).any(|z| chosen[z] && z != x && lattice.leq(x, z));
        if forced {
            chosen[x] = true;
            let ok = rec(lattice, order, pos + 1, chosen, out, cap);
            chosen[x] = false;
            return ok;
        }
        if !rec(lattice, order, pos + 1, chosen, out, cap) {
            return false;
        }
        chosen[x] = true;
        let ok = rec(lattice, order, pos + 1, chosen, out, cap);
        chosen[x] = false;
        ok
    }

    rec(lattice, &order, 0, &mut chosen, &mut out, cap).then_some(out)
}

pub fn build_topology(frame: &GaleFrame) -> PosetTopology {
    let lattice = frame.flats();
    let principal: Vec<Vec<usize>> = (0..lattice.len()).map(|f| lattice.down_set(f)).collect();
    let full = (lattice.len() <= MAX_FULL_LATTICE)
        .then(|| enumerate_down_sets(&lattice, MAX_OPENS))
        .flatten();
    let (opens, mode) = match full {
        Some(mut opens) => {
            opens.sort_by_key(|u| (u.len(), u.clone()));
            (opens, OpenMode::Full)
        }
        None => {
            let mut opens: Vec<Vec<usize>> = vec![Vec::new()];
            opens.extend(principal.iter().cloned());
            for a in 0..principal.len() {
                for b in a + 1..principal.len() {
                    let mut u: Vec<usize> =
                        principal[a].iter().chain(&principal[b]).copied().collect();
                    u.sort_unstable();
                    u.dedup();
                    opens.push(u);
                }
            }
            opens.sort_by_key(|u| (u.len(), u.clone()));
            opens.dedup();
            (opens, OpenMode::Principal)
        }
    };
    PosetTopology {
        lattice,
        principal,
        opens,
        mode,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StalkData {
    pub flat: Flat,
    pub hilbert: HilbertFunction,
    /// Rank of the structure-sheaf stalk `Sym(g/F)`.
    pub local_k: usize,
    /// Standard monomials per degree, in the flat's local variables.
    #[serde(serialize_with = "serialize_bases")]
    pub basis_monomials: Vec<Vec<Monomial>>,
}

fn serialize_bases<S: serde::Serializer>(
    v: &[Vec<Monomial>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|b| b.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
    )
}

/// Dense rational matrices, one per degree.
pub type Matrix = Vec<Vec<Q>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionMap {
    pub lower: Flat,
    pub upper: Flat,
    /// `matrices[d]` has one row per basis element of the lower stalk and one
    /// column per basis element of the upper stalk.
    pub matrices: Vec<Matrix>,
}

/// All stalks of one sheaf up to a degree bound.
#[derive(Debug, Clone)]
pub struct Sheaf {
    kind: SheafKind,
    topology: PosetTopology,
    stalks: Vec<GradedQuotient>,
}

impl Sheaf {
    pub fn new(frame: &GaleFrame, topology: PosetTopology, kind: SheafKind, d_max: usize) -> Self {
        let stalks = topology
            .lattice()
            .flats()
            .par_iter()
            .map(|f| {
                let local = frame.localize(f.columns).expect("lattice flats are closed");
                GradedQuotient::new(local, kind.relations(), d_max)
            })
            .collect();
        Sheaf {
            kind,
            topology,
            stalks,
        }
    }

    pub fn kind(&self) -> SheafKind {
        self.kind
    }

    pub fn topology(&self) -> &PosetTopology {
        &self.topology
    }

    pub fn lattice(&self) -> &FlatLattice {
        self.topology.lattice()
    }

    pub fn d_max(&self) -> usize {
        self.stalks[0].d_max()
    }

    pub fn stalk(&self, f: usize) -> &GradedQuotient {
        &self.stalks[f]
    }

    pub fn stalk_data(&self, f: usize) -> StalkData {
        let q = &self.stalks[f];
        StalkData {
            flat: self.lattice().flats()[f],
            hilbert: q.hilbert(),
            local_k: q.local().rank,
            basis_monomials: (0..=q.d_max()).map(|d| q.standard_monomials(d)).collect(),
        }
    }

    /// Positions of the lower flat's columns inside the upper flat's ground set.
    fn kept_positions(&self, lower: usize, upper: usize) -> Vec<usize> {
        let up = &self.stalks[upper].local().ground;
        self.stalks[lower]
            .local()
            .ground
            .iter()
            .map(|g| {
                up.iter()
                    .position(|x| x == g)
                    .expect("lower flat is contained")
            })
            .collect()
    }

    fn restrict_poly(p: &Poly, keep: &[usize]) -> Poly {
        Poly::from_terms(
            p.terms()
                .filter_map(|(m, c)| m.restrict(keep).map(|r| (r, c.clone()))),
        )
    }

    /// Matrix of `r(lower, upper)` in degree `d`.
    pub fn restriction_matrix(&self, lower: usize, upper: usize, d: usize) -> Result<Matrix> {
        self.check_comparable(lower, upper)?;
        let keep = self.kept_positions(lower, upper);
        let target = &self.stalks[lower];
        let source_basis = self.stalks[upper].standard_monomials(d);
        let rows = target.span(d).codim();
        let mut m = vec![vec![Q::from(0); source_basis.len()]; rows];
        for (j, mono) in source_basis.iter().enumerate() {
            let Some(r) = mono.restrict(&keep) else {
                continue;
            };
            let coords = target.coordinates(d, &Poly::monomial(r, Q::from(1)))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    /// Checks that every relation of the upper stalk restricts into the
    /// relations of the lower stalk.
    pub fn check_well_defined(&self, lower: usize, upper: usize, d: usize) -> Result<()> {
        self.check_comparable(lower, upper)?;
        let keep = self.kept_positions(lower, upper);
        let up = &self.stalks[upper];
        let down = &self.stalks[lower];
        for rel in hp0::relations(up.local(), self.kind.relations(), d) {
            let image = Self::restrict_poly(&rel, &keep);
            if image.is_zero() {
                continue;
            }
            let v = down.span(d).index().encode(&image).expect("degree d");
            if !down.span(d).contains(&v) {
                let lat = self.lattice();
                return Err(Error::IllDefinedRestriction {
                    lower: lat.flats()[lower].columns,
                    upper: lat.flats()[upper].columns,
                    degree: d,
                });
            }
        }
        Ok(())
    }

    fn check_comparable(&self, lower: usize, upper: usize) -> Result<()> {
        let lat = self.lattice();
        if lat.leq(lower, upper) {
            return Ok(());
        }
        Err(Error::NotComparable {
            lower: lat.flats()[lower].columns,
            upper: lat.flats()[upper].columns,
        })
    }

    pub fn restriction(&self, lower: usize, upper: usize) -> Result<RestrictionMap> {
        self.check_comparable(lower, upper)?;
        let matrices = (0..=self.d_max())
            .map(|d| {
                self.check_well_defined(lower, upper, d)?;
                self.restriction_matrix(lower, upper, d)
            })
            .collect::<Result<_>>()?;
        let flats = self.lattice().flats();
        Ok(RestrictionMap {
            lower: flats[lower],
            upper: flats[upper],
            matrices,
        })
    }

    /// All restriction matrices in degree `d`, keyed by comparable pairs.
    pub fn restrictions_in_degree(&self, d: usize) -> Result<BTreeMap<(usize, usize), Matrix>> {
        self.lattice()
            .order_pairs()
            .into_iter()
            .map(|(a, b)| Ok(((a, b), self.restriction_matrix(a, b, d)?)))
            .collect()
    }
}

fn single_stalk(frame: &GaleFrame, flat: Flat, kind: SheafKind, d_max: usize) -> Result<StalkData> {
    if !frame.is_flat(flat.columns) {
        return Err(Error::NotClosed(flat.columns));
    }
    let q = GradedQuotient::new(frame.localize(flat.columns)?, kind.relations(), d_max);
    Ok(StalkData {
        flat,
        hilbert: q.hilbert(),
        local_k: q.local().rank,
        basis_monomials: (0..=d_max).map(|d| q.standard_monomials(d)).collect(),
    })
}

/// Stalk of `M` at a flat.
pub fn m_stalk(frame: &GaleFrame, flat: Flat, d_max: usize) -> Result<StalkData> {
    single_stalk(frame, flat, SheafKind::M, d_max)
}

/// Stalk of `R^bc` at a flat.
pub fn rbc_stalk(frame: &GaleFrame, flat: Flat, d_max: usize) -> Result<StalkData> {
    single_stalk(frame, flat, SheafKind::Rbc, d_max)
}

/// The linear system whose kernel is the space of sections over `open`.
fn section_system(
    open: &[usize],
    dims: &[usize],
    maps: &BTreeMap<(usize, usize), Matrix>,
) -> (EchelonSpan, Vec<usize>) {
    let mut offsets = vec![usize::MAX; dims.len()];
    let mut total = 0;
    for &f in open {
        offsets[f] = total;
        total += dims[f];
    }
    let mut span = EchelonSpan::columns(total);
    for (&(a, b), m) in maps {
        if a == b || offsets[a] == usize::MAX || offsets[b] == usize::MAX {
            continue;
        }
        for (i, row) in m.iter().enumerate() {
            let mut eq: SparseVec = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| ((offsets[b] + j) as u32, c.clone()))
                .collect();
            eq.push(((offsets[a] + i) as u32, Q::from(-1)));
            eq.sort_by_key(|(j, _)| *j);
            span.insert(&eq);
        }
    }
    (span, offsets)
}

/// Dimension of the sections over `open` in each degree.
pub fn sections(sheaf: &Sheaf, open: &[usize]) -> Result<Vec<usize>> {
    (0..=sheaf.d_max())
        .map(|d| {
            let maps = sheaf.restrictions_in_degree(d)?;
            let dims: Vec<usize> = (0..sheaf.lattice().len())
                .map(|f| sheaf.stalk(f).span(d).codim())
                .collect();
            Ok(section_system(open, &dims, &maps).0.codim())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Minimal extension sheaf checks

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SheafChecks {
    pub bottom_ok: bool,
    pub free_ok: bool,
    pub flabby_ok: bool,
    pub degeneration_ok: bool,
    pub functorial_ok: bool,
    pub principal_sections_ok: bool,
    pub failures: Vec<String>,
}

impl SheafChecks {
    pub fn ok(&self) -> bool {
        self.bottom_ok
            && self.free_ok
            && self.flabby_ok
            && self.degeneration_ok
            && self.functorial_ok
            && self.principal_sections_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MesReport {
    pub bottom_ok: bool,
    pub free_ok: bool,
    pub flabby_ok: bool,
    pub degeneration_ok: bool,
    pub functorial_ok: bool,
    pub principal_sections_ok: bool,
    pub mode: OpenMode,
    pub opens_checked: usize,
    pub d_max: usize,
    /// Indecomposability is not a finite degreewise property and is not tested.
    pub indecomposable: &'static str,
    pub m: SheafChecks,
    pub rbc: SheafChecks,
}

impl MesReport {
    pub fn ok(&self) -> bool {
        self.m.ok() && self.rbc.ok()
    }
}

fn mat_mul(a: &Matrix, b: &Matrix, inner: usize) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Runs the checkable minimal-extension-sheaf properties on one sheaf.
pub fn check_sheaf(sheaf: &Sheaf) -> SheafChecks {
    let lat = sheaf.lattice();
    let flats = lat.flats();
    let d_max = sheaf.d_max();
    let mut failures = Vec::new();

    // (a) bottom stalk is the ground field
    let bottom = sheaf.stalk(lat.bottom()).hilbert();
    let bottom_ok = bottom.get(0) == 1 && bottom.dims()[1..].iter().all(|&x| x == 0);
    if !bottom_ok {
        failures.push(format!("bottom stalk has dimensions {:?}", bottom.dims()));
    }

    // (b) every stalk is free over the structure sheaf stalk
    let mut free_ok = true;
    for (f, flat) in flats.iter().enumerate() {
        if let Err(e) = hp0::certify_free(sheaf.stalk(f)) {
            free_ok = false;
            failures.push(format!(
                "stalk at {} is not certified free: {e}",
                flat.columns
            ));
        }
    }

    // (d) initial module of J_F is the Stanley-Reisner module at every flat
    let mut degeneration_ok = true;
    for (f, flat) in flats.iter().enumerate() {
        let r = hp0::degeneration_report(sheaf.stalk(f));
        if let Some(bad) = r.degrees.iter().find(|c| !c.equal) {
            degeneration_ok = false;
            failures.push(format!(
                "at {}: degree {} has {} leading monomials vs {} Stanley-Reisner monomials",
                flat.columns, bad.degree, bad.leading, bad.stanley_reisner
            ));
        }
    }

    let mut functorial_ok = true;
    let mut principal_sections_ok = true;
    let mut flabby_ok = true;
    for d in 0..=d_max {
        for (a, b) in lat.order_pairs() {
            if let Err(e) = sheaf.check_well_defined(a, b, d) {
                functorial_ok = false;
                failures.push(e.to_string());
            }
        }
        let maps = match sheaf.restrictions_in_degree(d) {
            Ok(m) => m,
            Err(e) => {
                functorial_ok = false;
                failures.push(e.to_string());
                continue;
            }
        };
        let dims: Vec<usize> = (0..lat.len())
            .map(|f| sheaf.stalk(f).span(d).codim())
            .collect();

        // identity on the diagonal, composition along chains
        for f in 0..lat.len() {
            let m = &maps[&(f, f)];
            let id =
                (0..dims[f]).all(|i| (0..dims[f]).all(|j| m[i][j] == Q::from(i64::from(i == j))));
            if !id {
                functorial_ok = false;
                failures.push(format!(
                    "r(F,F) is not the identity at {} in degree {d}",
                    flats[f].columns
                ));
            }
        }
        for (a, b) in lat.order_pairs() {
            for c in (0..lat.len()).filter(|&c| lat.leq(b, c)) {
                if a == b || b == c {
                    continue;
                }
                let composed = mat_mul(&maps[&(a, b)], &maps[&(b, c)], dims[b]);
                if composed != maps[&(a, c)] {
                    functorial_ok = false;
                    failures.push(format!(
                        "r({0},{2}) != r({0},{1}) r({1},{2}) in degree {d}",
                        flats[a].columns, flats[b].columns, flats[c].columns
                    ));
                }
            }
        }

        // sections over U_F agree with the stalk
        for f in 0..lat.len() {
            let (sys, _) = section_system(sheaf.topology().principal(f), &dims, &maps);
            if sys.codim() != dims[f] {
                principal_sections_ok = false;
                failures.push(format!(
                    "sections over U_{} have dimension {} but the stalk has {} in degree {d}",
                    flats[f].columns,
                    sys.codim(),
                    dims[f]
                ));
            }
        }

        // (c) flabbiness: global sections surject onto every enumerated open,
        // and each stalk surjects onto sections over U_F minus F
        let all: Vec<usize> = (0..lat.len()).collect();
        let (global_sys, global_offsets) = section_system(&all, &dims, &maps);
        let global = global_sys.kernel_basis();
        let mut targets: Vec<(Vec<usize>, String)> = sheaf
            .topology()
            .opens()
            .iter()
            .map(|u| (u.clone(), "open".to_string()))
            .collect();
        for (f, flat) in flats.iter().enumerate() {
            let boundary: Vec<usize> = sheaf
                .topology()
                .principal(f)
                .iter()
                .copied()
                .filter(|&g| g != f)
                .collect();
            targets.push((boundary, format!("boundary of {}", flat.columns)));
        }
        let failures_before = failures.len();
        let outcomes: Vec<Option<String>> = targets
            .par_iter()
            .map(|(u, label)| {
                let (sys, offsets) = section_system(u, &dims, &maps);
                let target_dim = sys.codim();
                let mut image = EchelonSpan::columns(sys.ncols());
                for v in &global {
                    let projected: SparseVec = v
                        .iter()
                        .filter_map(|(i, c)| {
                            let i = *i as usize;
                            u.iter().find_map(|&f| {
                                let start = global_offsets[f];
                                (i >= start && i < start + dims[f])
                                    .then(|| ((offsets[f] + i - start) as u32, c.clone()))
                            })
                        })
                        .collect();
                    let mut projected = projected;
                    projected.sort_by_key(|(j, _)| *j);
                    image.insert(&projected);
                }
                (image.dim() != target_dim).then(|| {
                    let names: Vec<String> =
                        u.iter().map(|&f| flats[f].columns.to_string()).collect();
                    format!(
                        "degree {d}: restriction onto {label} [{}] has rank {} < {}",
                        names.join(" "),
                        image.dim(),
                        target_dim
                    )
                })
            })
            .collect();
        failures.extend(outcomes.into_iter().flatten());
        if failures.len() > failures_before {
            flabby_ok = false;
        }
    }

    SheafChecks {
        bottom_ok,
        free_ok,
        flabby_ok,
        degeneration_ok,
        functorial_ok,
        principal_sections_ok,
        failures,
    }
}

pub fn mes_check(frame: &GaleFrame, d_max: usize) -> MesReport {
    let topology = build_topology(frame);
    let m = Sheaf::new(frame, topology.clone(), SheafKind::M, d_max);
    let rbc = Sheaf::new(frame, topology.clone(), SheafKind::Rbc, d_max);
    let (m, rbc) = rayon::join(|| check_sheaf(&m), || check_sheaf(&rbc));
    assemble(m, rbc, &topology, d_max)
}

fn assemble(m: SheafChecks, rbc: SheafChecks, topology: &PosetTopology, d_max: usize) -> MesReport {
    MesReport {
        bottom_ok: m.bottom_ok && rbc.bottom_ok,
        free_ok: m.free_ok && rbc.free_ok,
        flabby_ok: m.flabby_ok && rbc.flabby_ok,
        degeneration_ok: m.degeneration_ok && rbc.degeneration_ok,
        functorial_ok: m.functorial_ok && rbc.functorial_ok,
        principal_sections_ok: m.principal_sections_ok && rbc.principal_sections_ok,
        mode: topology.mode(),
        opens_checked: topology.opens().len(),
        d_max,
        indecomposable: "not checked",
        m,
        rbc,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SheafReport {
    pub flats: Vec<Flat>,
    /// Hilbert functions of the stalks of `M`, keyed by flat.
    pub stalks: BTreeMap<String, HilbertFunction>,
    pub stalks_rbc: BTreeMap<String, HilbertFunction>,
    pub mes: MesReport,
}

fn stalk_table(sheaf: &Sheaf) -> BTreeMap<String, HilbertFunction> {
    (0..sheaf.lattice().len())
        .map(|f| {
            (
                sheaf.lattice().flats()[f].columns.to_string(),
                sheaf.stalk(f).hilbert(),
            )
        })
        .collect()
}

pub fn sheaf_report(frame: &GaleFrame, d_max: usize) -> SheafReport {
    let topology = build_topology(frame);
    let m = Sheaf::new(frame, topology.clone(), SheafKind::M, d_max);
    let rbc = Sheaf::new(frame, topology.clone(), SheafKind::Rbc, d_max);
    let (m_checks, rbc_checks) = rayon::join(|| check_sheaf(&m), || check_sheaf(&rbc));
    SheafReport {
        flats: topology.lattice().flats().to_vec(),
        stalks: stalk_table(&m),
        stalks_rbc: stalk_table(&rbc),
        mes: assemble(m_checks, rbc_checks, &topology, d_max),
    }
}
