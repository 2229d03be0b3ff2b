use hp0_core::bc_complex::{self, bc_faces, broken_circuits, fh_vectors};
use hp0_core::hp0::{self, GradedQuotient, RelationKind};
use hp0_core::sheaf;
use hp0_core::{GaleFrame, HilbertFunction, Rat};
use serde_json::{json, Map, Value};

use crate::RunConfig;

pub struct Output {
    pub json: Value,
    pub tsv: String,
    /// False when a mathematical identity failed to verify.
    pub ok: bool,
}

impl Output {
    fn new(json: Value, tsv: String) -> Self {
        Output {
            json,
            tsv,
            ok: true,
        }
    }
}

fn degrees(h: &HilbertFunction, config: &RunConfig) -> Vec<usize> {
    if config.paper_degrees {
        h.doubled()
    } else {
        h.dims().to_vec()
    }
}

fn degree_label(d: usize, config: &RunConfig) -> usize {
    if config.paper_degrees {
        2 * d
    } else {
        d
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// One `key<TAB>value` line per top-level field; arrays of scalars are spread
/// over columns.
fn flat_tsv(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, val) in map {
            let cell = match val {
                Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
                    join(&xs.iter().map(scalar).collect::<Vec<_>>(), "\t")
                }
                other => scalar(other),
            };
            out.push_str(&format!("{k}\t{cell}\n"));
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn h_vector(frame: &GaleFrame) -> Vec<i64> {
    let local = frame.as_local();
    fh_vectors(&bc_faces(&local), local.rank)
        .map(|fh| fh.h)
        .unwrap_or_default()
}

pub fn circuits(frame: &GaleFrame) -> Output {
    let circuits = frame.signed_circuits();
    let list: Vec<Value> = circuits
        .iter()
        .map(|c| json!({"support": c.support(), "coeffs": c.coeffs()}))
        .collect();
    let broken = broken_circuits(circuits);
    let mut tsv = String::from("support\tcoefficients\n");
    for c in circuits {
        tsv.push_str(&format!("{}\t{}\n", c.support(), join(c.coeffs(), " ")));
    }
    Output::new(
        json!({"k": frame.k(), "n": frame.n(), "circuits": list, "broken_circuits": broken}),
        tsv,
    )
}

pub fn hilbert(frame: &GaleFrame, config: &RunConfig) -> Output {
    let q = GradedQuotient::new(frame.as_local(), RelationKind::Poisson, config.d_max);
    let sr = GradedQuotient::new(frame.as_local(), RelationKind::StanleyReisner, config.d_max);
    let (h, s) = (q.hilbert(), sr.hilbert());
    let mut tsv = String::from("degree\thp0\tstanley_reisner\n");
    for d in 0..=config.d_max {
        tsv.push_str(&format!(
            "{}\t{}\t{}\n",
            degree_label(d, config),
            h.get(d),
            s.get(d)
        ));
    }
    Output::new(
        json!({
            "hilbert": degrees(&h, config),
            "stanley_reisner": degrees(&s, config),
            "paper_degrees": config.paper_degrees,
        }),
        tsv,
    )
}

pub fn betti(frame: &GaleFrame, config: &RunConfig) -> Result<Output, String> {
    let r = bc_complex::ih_betti_report(frame, config.d_max).map_err(|e| e.to_string())?;
    let mut tsv = String::from("degree\tih_betti\n");
    for (d, b) in &r.ih_betti {
        tsv.push_str(&format!("{d}\t{b}\n"));
    }
    let json = serde_json::to_value(&r).expect("serializable");
    Ok(Output::new(json, tsv))
}

pub fn degenerate(frame: &GaleFrame, config: &RunConfig) -> Output {
    let r = hp0::degeneration_check(frame, config.d_max);
    let mut tsv = String::from("degree\tleading\tstanley_reisner\tequal\n");
    for c in &r.degrees {
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            degree_label(c.degree, config),
            c.leading,
            c.stanley_reisner,
            c.equal
        ));
    }
    let mut json = serde_json::to_value(&r).expect("serializable");
    if config.paper_degrees {
        for c in json["degrees"].as_array_mut().expect("array") {
            c["degree"] = json!(2 * c["degree"].as_u64().expect("degree"));
        }
    }
    Output {
        ok: r.ok,
        json,
        tsv,
    }
}

/// Truncation used for fiber dimensions: two past the top of the h-vector.
fn fiber_bound(frame: &GaleFrame) -> usize {
    h_vector(frame).len() + 2
}

fn seeded_fibers(
    frame: &GaleFrame,
    seed: u64,
    bound: usize,
) -> Result<Vec<hp0::Specialization>, String> {
    (seed..seed + 3)
        .map(|s| {
            let lambda = hp0::random_lambda(frame.k(), s);
            let mut r = hp0::fiber_dimension(frame, &lambda, bound).map_err(|e| e.to_string())?;
            r.seed = Some(s);
            Ok(r)
        })
        .collect()
}

pub fn fiber(
    frame: &GaleFrame,
    lambda: Option<Vec<Rat>>,
    config: &RunConfig,
) -> Result<Output, String> {
    let bound = fiber_bound(frame).min(config.d_max.max(1));
    let expected: i64 = h_vector(frame).iter().sum();
    let (point, judged) = match lambda {
        Some(l) => (
            hp0::fiber_dimension(frame, &l, bound).map_err(|e| e.to_string())?,
            false,
        ),
        None => (seeded_fibers(frame, config.seed, bound)?.remove(0), true),
    };
    let mut json = serde_json::to_value(&point).expect("serializable");
    json["generic_dim"] = json!(expected);
    let ok = !judged || (point.stabilized && point.dim as i64 == expected);
    Ok(Output {
        tsv: flat_tsv(&json),
        json,
        ok,
    })
}

pub fn flats(frame: &GaleFrame) -> Output {
    let lattice = frame.flats();
    let mut tsv = String::from("rank\tcolumns\n");
    for f in lattice.flats() {
        tsv.push_str(&format!("{}\t{}\n", f.rank, f.columns));
    }
    let covers: Vec<[usize; 2]> = lattice
        .order_pairs()
        .into_iter()
        .filter(|&(a, b)| a != b && lattice.flats()[b].rank == lattice.flats()[a].rank + 1)
        .map(|(a, b)| [a, b])
        .collect();
    Output::new(json!({"flats": lattice.flats(), "covers": covers}), tsv)
}

fn sheaf_json(frame: &GaleFrame, config: &RunConfig) -> (Value, bool) {
    let r = sheaf::sheaf_report(frame, config.d_max);
    let table = |t: &std::collections::BTreeMap<String, HilbertFunction>| -> Map<String, Value> {
        t.iter()
            .map(|(k, h)| (k.clone(), json!(degrees(h, config))))
            .collect()
    };
    let json = json!({
        "flats": r.flats,
        "stalks": table(&r.stalks),
        "stalks_rbc": table(&r.stalks_rbc),
        "mes": r.mes,
    });
    // with a zero column every stalk is the zero module
    let ok = if frame.loops().is_empty() {
        r.mes.ok()
    } else {
        r.stalks
            .values()
            .chain(r.stalks_rbc.values())
            .all(HilbertFunction::is_zero)
    };
    (json, ok)
}

pub fn sheaf(frame: &GaleFrame, config: &RunConfig) -> Output {
    let (json, ok) = sheaf_json(frame, config);
    let mut tsv = String::from("flat\tstalk\n");
    for (k, v) in json["stalks"].as_object().expect("object") {
        let dims: Vec<String> = v.as_array().expect("array").iter().map(scalar).collect();
        tsv.push_str(&format!("{k}\t{}\n", dims.join(" ")));
    }
    for key in ["bottom_ok", "free_ok", "flabby_ok", "degeneration_ok"] {
        tsv.push_str(&format!("{key}\t{}\n", json["mes"][key]));
    }
    Output { json, tsv, ok }
}

/// Highest degree used for the invariant-ring comparison in reports.
const ORACLE_D_MAX: usize = 6;

pub fn report(frame: &GaleFrame, config: &RunConfig) -> Result<Output, String> {
    let d_max = config.d_max;
    let local = frame.as_local();
    let q = GradedQuotient::new(local.clone(), RelationKind::Poisson, d_max);
    let hilbert = q.hilbert();
    let sr = bc_complex::sr_dims(&local, d_max).map_err(|e| e.to_string())?;
    let fh = fh_vectors(&bc_faces(&local), local.rank).map_err(|e| e.to_string())?;
    let degeneration = hp0::degeneration_report(&q);
    let central = q.central_fiber();
    let certificate = hp0::certify_free(&q);
    let ih = bc_complex::ih_betti_report(frame, d_max).map_err(|e| e.to_string())?;
    let dual = bc_complex::dual_top_h_check(frame).map_err(|e| e.to_string())?;
    let h1: i64 = fh.h.iter().sum();
    let fibers = seeded_fibers(frame, config.seed, fiber_bound(frame))?;

    let mut checks = Map::new();
    let mut check = |name: &str, ok: bool| {
        checks.insert(name.to_string(), json!(ok));
    };
    check("hilbert_matches_stanley_reisner", hilbert == sr);
    check("degeneration", degeneration.ok);
    let central_padded: Vec<i64> = (0..=d_max).map(|d| central.get(d) as i64).collect();
    let h_padded: Vec<i64> = (0..=d_max)
        .map(|d| fh.h.get(d).copied().unwrap_or(0))
        .collect();
    check("central_fiber_matches_h", central_padded == h_padded);
    check("free", certificate.is_ok());
    check(
        "generic_fiber",
        fibers.iter().all(|f| f.stabilized && f.dim as i64 == h1),
    );
    check("dual_top_h", dual.ok);

    let mut doc = Map::new();
    doc.insert("k".into(), json!(frame.k()));
    doc.insert("n".into(), json!(frame.n()));
    doc.insert("rows".into(), json!(frame.rows()));
    doc.insert(
        "totally_unimodular".into(),
        json!(frame.is_totally_unimodular()),
    );
    doc.insert("paper_degrees".into(), json!(config.paper_degrees));
    doc.insert(
        "circuits".into(),
        json!(frame
            .signed_circuits()
            .iter()
            .map(|c| json!({"support": c.support(), "coeffs": c.coeffs()}))
            .collect::<Vec<_>>()),
    );
    doc.insert(
        "broken_circuits".into(),
        json!(broken_circuits(frame.signed_circuits())),
    );
    doc.insert("hilbert".into(), json!(degrees(&hilbert, config)));
    doc.insert("stanley_reisner".into(), json!(degrees(&sr, config)));
    doc.insert("central_fiber".into(), json!(degrees(&central, config)));
    doc.insert("degeneration_ok".into(), json!(degeneration.ok));
    match &certificate {
        Ok(c) => {
            doc.insert("h_poly".into(), json!(c.h_poly));
            doc.insert("freeness".into(), json!(c));
        }
        Err(e) => {
            doc.insert("h_poly".into(), Value::Null);
            doc.insert("freeness".into(), json!({"error": e.to_string()}));
        }
    }
    doc.insert("fiber_checks".into(), json!(fibers));
    doc.insert("generic_fiber_dim".into(), json!(h1));
    doc.insert("f".into(), json!(fh.f));
    doc.insert("h".into(), json!(fh.h));
    doc.insert("ih_betti".into(), json!(ih.ih_betti));
    doc.insert("equivariant_series".into(), json!(ih.equivariant_series));
    doc.insert("dual_top_h_ok".into(), json!(dual.ok));
    doc.insert("dual_top_h".into(), json!(dual));

    let (sheaf, sheaf_ok) = sheaf_json(frame, config);
    doc.insert("zero_columns".into(), json!(frame.loops()));
    checks.insert("sheaf".into(), json!(sheaf_ok));
    doc.insert("sheaf".into(), sheaf);

    if frame.n() <= 4 {
        let d = d_max.min(ORACLE_D_MAX);
        let oracle = hp0::invariant_bracket_oracle(frame, d);
        let presented = HilbertFunction(hilbert.dims()[..=d].to_vec());
        checks.insert("oracle".into(), json!(oracle == presented));
        doc.insert("oracle".into(), json!(degrees(&oracle, config)));
    }

    let ok = checks.values().all(|v| v == &json!(true));
    doc.insert("checks".into(), Value::Object(checks));
    doc.insert("ok".into(), json!(ok));
    let json = Value::Object(doc);
    Ok(Output {
        tsv: flat_tsv(&json),
        json,
        ok,
    })
}
