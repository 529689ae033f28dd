use std::collections::BTreeMap;
use std::fmt::Write as _;

use ainfty::category::{h_category, validate, Category, ObjId};
use ainfty::deform::{
    self, deformation_class, deformed_obstruction, first_order_equiv, generic_hom,
    iso_over_laurent, mc_solve, reparametrize, special_fibre, validate_deformation, Connection,
    Deformation, McStatus,
};
use ainfty::exactlin::{PivotOrder, Rational, Scalar, SparseVec, TruncSeries};
use ainfty::geomfacts::{e1_dim, parse_betti_list, sh2_bound};
use ainfty::hochschild::{describe_cochain, hh};
use ainfty::instance::{parse_series_json, Base, ConnectionDoc, DocScalar, Document};
use ainfty::tw::{
    cone, generate_search, idempotent_candidates, mc_check, quasi_iso_witness, split_idempotent,
    tw_hom, twist, KaroubiObject, SearchOptions, SearchOutcome, TwComplex, TwMorphism,
};
use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::{Command, Output};

struct Loaded {
    doc: Document,
    hash: String,
}

fn load(input: &str) -> Result<Loaded> {
    let text = match std::fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => match ainfty::corpus::get(input) {
            Some(t) => t.to_string(),
            None => return Err(anyhow!(e).context(format!("cannot read {input}"))),
        },
    };
    let doc = Document::parse(&text).with_context(|| format!("reading {input}"))?;
    let digest = Sha256::digest(doc.to_canonical_string()?.as_bytes());
    let hash = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok(Loaded { doc, hash })
}

fn rational(doc: &Document) -> Result<Category<Rational>> {
    if doc.base()? != Base::Rational {
        bail!("this command needs an instance over Q");
    }
    Ok(doc.category()?)
}

fn object<S: Scalar>(cat: &Category<S>, name: &str) -> Result<ObjId> {
    cat.object_id(name)
        .ok_or_else(|| ainfty::Error::Unknown(name.to_string()).into())
}

fn vec_json<T: Scalar, S: Scalar>(cat: &Category<T>, v: &SparseVec<S>) -> Value {
    Value::Object(
        v.iter()
            .map(|(b, c)| (cat.basis_name(b), Value::String(c.to_string())))
            .collect(),
    )
}

fn vec_text<T: Scalar, S: Scalar>(cat: &Category<T>, v: &SparseVec<S>) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(b, c)| format!("({c})·{}", cat.basis_name(b)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn morphism_json<S: Scalar>(cat: &Category<S>, f: &TwMorphism<S>) -> Value {
    let blocks: Vec<Value> = f
        .blocks()
        .iter()
        .map(|((from, to), v)| json!({"from": from, "to": to, "value": vec_json(cat, v)}))
        .collect();
    json!({"degree": f.degree, "blocks": blocks})
}

fn dims_text(dims: &BTreeMap<i64, usize>) -> String {
    let nonzero: Vec<String> = dims
        .iter()
        .filter(|(_, d)| **d > 0)
        .map(|(k, d)| format!("H^{k}={d}"))
        .collect();
    if nonzero.is_empty() {
        "0".into()
    } else {
        nonzero.join(" ")
    }
}

fn nonzero_dims(dims: BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    dims.into_iter().filter(|(_, d)| *d > 0).collect()
}

fn pivot(name: &str, seed: u64) -> Result<PivotOrder> {
    Ok(match name {
        "natural" => PivotOrder::Natural,
        "reversed" => PivotOrder::Reversed,
        "seeded" => PivotOrder::Seeded(seed),
        _ => bail!("unknown pivot order {name:?}"),
    })
}

fn output(json: Value, text: String, hash: Option<String>) -> Result<Output> {
    Ok(Output {
        json,
        text,
        instance_hash: hash,
    })
}

pub fn run(command: &Command, seed: u64) -> Result<Output> {
    match command {
        Command::Validate(input) => {
            let l = load(&input.instance)?;
            match l.doc.base()? {
                Base::Rational => {
                    let r = validate(&rational(&l.doc)?);
                    let mut text = format!("{}\n", if r.valid { "valid" } else { "invalid" });
                    for c in &r.checks {
                        writeln!(
                            text,
                            "  arity {}: {} tuples, {} failures",
                            c.arity, c.tuples, c.failures
                        )?;
                    }
                    for v in &r.violations {
                        writeln!(
                            text,
                            "  {:?} {:?} at {:?}: {}",
                            v.kind, v.output, v.inputs, v.detail
                        )?;
                    }
                    output(serde_json::to_value(&r)?, text, Some(l.hash))
                }
                Base::Series { .. } => deform_validate(l),
            }
        }
        Command::DeformValidate(input) => deform_validate(load(&input.instance)?),
        Command::H0(input) => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let h = h_category(&cat, PivotOrder::Natural)?;
            let mut text = String::new();
            let mut homs = Vec::new();
            for ((x, y), hom) in &h.homs {
                let dims = nonzero_dims(hom.dims());
                writeln!(text, "{}: {}", cat.hom_key(*x, *y), dims_text(&dims))?;
                homs.push(
                    json!({"source": cat.objects()[*x], "target": cat.objects()[*y], "dims": dims}),
                );
            }
            let units: Vec<Value> = h
                .units
                .iter()
                .map(|u| json!({"object": cat.objects()[u.object], "unital": u.unit.is_some()}))
                .collect();
            let products: Vec<Value> = h
                .products
                .iter()
                .map(|p| {
                    let (x, y, z) = p.objects;
                    json!({
                        "objects": [cat.objects()[x], cat.objects()[y], cat.objects()[z]],
                        "left": [p.left.0, p.left.1],
                        "right": [p.right.0, p.right.1],
                        "value": p.value.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            writeln!(text, "unital: {}", h.is_unital())?;
            writeln!(
                text,
                "{} nonzero products",
                h.products
                    .iter()
                    .filter(|p| p.value.iter().any(|c| !c.is_zero()))
                    .count()
            )?;
            output(
                json!({"homs": homs, "units": units, "unital": h.is_unital(), "products": products}),
                text,
                Some(l.hash),
            )
        }
        Command::Hom {
            input,
            source,
            target,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let (x, y) = (l.doc.complex(&cat, source)?, l.doc.complex(&cat, target)?);
            let h = tw_hom(&cat, &x, &y, PivotOrder::Natural)?;
            let dims = nonzero_dims(h.dims());
            let text = format!(
                "hom({source}, {target}): {}\neuler characteristic {}\n",
                dims_text(&dims),
                h.euler_characteristic()
            );
            output(
                json!({"dims": dims, "euler_characteristic": h.euler_characteristic()}),
                text,
                Some(l.hash),
            )
        }
        Command::Hh {
            input,
            degree,
            length,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let r = hh(&cat, *degree, *length)?;
            let mut text = format!(
                "HH^{} = {} (length ≤ {}, stable: {}, exact: {})\n",
                r.degree, r.dim, r.max_len, r.stable, r.exact
            );
            for (i, class) in r.classes.iter().enumerate() {
                let terms: Vec<String> = class
                    .iter()
                    .map(|e| {
                        format!(
                            "({})·[{}]({}) ↦ {}",
                            e.coeff,
                            e.objects.join("→"),
                            e.inputs.join(", "),
                            e.output
                        )
                    })
                    .collect();
                writeln!(text, "  class {i}: {}", terms.join(" + "))?;
            }
            output(serde_json::to_value(&r)?, text, Some(l.hash))
        }
        Command::Cone { input, morphism } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let f = l.doc.morphism(&cat, morphism)?;
            let k = cone(&cat, &f)?;
            let mc = mc_check(&cat, &k);
            let end = tw_hom(&cat, &k, &k, PivotOrder::Natural)?;
            let dims = nonzero_dims(end.dims());
            let text = format!(
                "Cone({morphism}) = {}\nMaurer–Cartan: {}\nH(end): {}\n",
                k.describe(&cat),
                if mc.valid { "ok" } else { "failed" },
                dims_text(&dims)
            );
            output(
                json!({"complex": k.describe(&cat), "maurer_cartan": mc, "end_dims": dims}),
                text,
                Some(l.hash),
            )
        }
        Command::Twist {
            input,
            sphere,
            object,
            pivot: p,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let (s, x) = (l.doc.complex(&cat, sphere)?, l.doc.complex(&cat, object)?);
            let t = twist(&cat, &s, &x, pivot(p, seed)?)?;
            let mc = mc_check(&cat, &t.complex);
            let text = format!(
                "T_{sphere}({object}) = {}\nclass degrees {:?}\nMaurer–Cartan: {}\n",
                t.complex.describe(&cat),
                t.class_degrees,
                if mc.valid { "ok" } else { "failed" }
            );
            output(
                json!({"complex": t.complex.describe(&cat), "class_degrees": t.class_degrees, "maurer_cartan": mc}),
                text,
                Some(l.hash),
            )
        }
        Command::QuasiIso {
            input,
            source,
            target,
            budget,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let (x, y) = (l.doc.complex(&cat, source)?, l.doc.complex(&cat, target)?);
            let s = quasi_iso_witness(&cat, &x, &y, *budget, seed)?;
            let text = match &s.witness {
                Some(w) => format!(
                    "witness found after {} candidates: {}\n",
                    s.candidates_tried,
                    morphism_json(&cat, w)
                ),
                None => format!(
                    "none found ({} candidates, dim H⁰ = {})\n",
                    s.candidates_tried, s.h0_dim
                ),
            };
            output(
                json!({
                    "found": s.witness.is_some(),
                    "witness": s.witness.as_ref().map(|w| morphism_json(&cat, w)),
                    "candidates_tried": s.candidates_tried,
                    "h0_dim": s.h0_dim,
                }),
                text,
                Some(l.hash),
            )
        }
        Command::Karoubi {
            input,
            complex,
            idempotent,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let x = l.doc.complex(&cat, complex)?;
            let idempotents = match idempotent {
                Some(name) => vec![l.doc.morphism(&cat, name)?],
                None => idempotent_candidates(&cat, &x, 16)?,
            };
            let tests: Vec<TwComplex<Rational>> =
                (0..cat.objects().len()).map(TwComplex::object).collect();
            let mut text = String::new();
            let mut splits = Vec::new();
            for p in idempotents {
                let k = KaroubiObject::new(&cat, x.clone(), p.clone())?;
                let r = split_idempotent(&cat, &k, &tests)?;
                writeln!(
                    text,
                    "idempotent {}: split {}",
                    morphism_json(&cat, &p),
                    if r.verified {
                        "verified"
                    } else {
                        "not verified"
                    }
                )?;
                for c in &r.checks {
                    writeln!(
                        text,
                        "  against {}: {:?} = {:?} + {:?}",
                        c.test_object, c.total, c.image, c.complement
                    )?;
                }
                splits.push(json!({"idempotent": morphism_json(&cat, &p), "verified": r.verified, "checks": r.checks}));
            }
            if splits.is_empty() {
                text.push_str("no nontrivial idempotents found\n");
            }
            output(json!({"splits": splits}), text, Some(l.hash))
        }
        Command::Generate {
            input,
            target,
            generators,
            depth,
            budget,
        } => {
            let l = load(&input.instance)?;
            let cat = rational(&l.doc)?;
            let gens = generators
                .iter()
                .map(|g| l.doc.complex(&cat, g))
                .collect::<ainfty::Result<Vec<_>>>()?;
            let t = l.doc.complex(&cat, target)?;
            let opts = SearchOptions {
                depth: *depth,
                budget: *budget,
                seed,
                ..SearchOptions::default()
            };
            match generate_search(&cat, &gens, &t, &opts)? {
                SearchOutcome::Found {
                    derivation, tests, ..
                } => output(
                    json!({"found": true, "derivation": derivation, "depth": derivation.depth(), "tests": tests}),
                    format!(
                        "found at depth {} after {tests} tests: {derivation:?}\n",
                        derivation.depth()
                    ),
                    Some(l.hash),
                ),
                SearchOutcome::NoneFound {
                    depth,
                    explored,
                    tests,
                } => output(
                    json!({"found": false, "depth": depth, "explored": explored, "tests": tests}),
                    format!("none found up to depth {depth} ({explored} objects, {tests} tests)\n"),
                    Some(l.hash),
                ),
            }
        }
        Command::McSolve {
            input,
            object: name,
        } => {
            let l = load(&input.instance)?;
            let e = Deformation::from_document(&l.doc)?;
            let objects = match name {
                Some(n) => vec![object(&e.category, n)?],
                None => (0..e.category.objects().len()).collect(),
            };
            let mut text = String::new();
            let mut results = Vec::new();
            for x in objects {
                let r = mc_solve(&e, x)?;
                let name = &e.category.objects()[x];
                let (status, order, class) = match &r.status {
                    McStatus::Solved => ("solved", None, None),
                    McStatus::Obstructed { order, class } => (
                        "obstructed",
                        Some(*order),
                        Some(class.iter().map(|c| c.to_string()).collect::<Vec<_>>()),
                    ),
                };
                match (order, &class) {
                    (Some(order), Some(class)) => writeln!(
                        text,
                        "{name}: obstructed at order {order}, class [{}]",
                        class.join(", ")
                    )?,
                    _ => writeln!(
                        text,
                        "{name}: solved, α = {}",
                        vec_text(&e.category, &r.alpha)
                    )?,
                }
                writeln!(text, "  parameter dimensions per order {:?}", r.family_dims)?;
                let fibre = special_fibre(&e);
                let log: Vec<Value> = r
                    .log
                    .iter()
                    .map(|s| {
                        json!({"order": s.order, "obstruction": vec_json(&fibre, &s.obstruction), "correction": vec_json(&fibre, &s.correction)})
                    })
                    .collect();
                results.push(json!({
                    "object": name,
                    "status": status,
                    "order": order,
                    "class": class,
                    "alpha": vec_json(&e.category, &r.alpha),
                    "family_dims": r.family_dims,
                    "log": log,
                }));
            }
            output(json!({"objects": results}), text, Some(l.hash))
        }
        Command::Egl { input, connections } => {
            let l = load(&input.instance)?;
            let e = Deformation::from_document(&l.doc)?;
            let mut all = e.connections(&l.doc)?;
            if !connections.is_empty() {
                for c in connections {
                    if !all.iter().any(|a| &a.name == c) {
                        return Err(ainfty::Error::Unknown(c.clone()).into());
                    }
                }
                all.retain(|a| connections.contains(&a.name));
            }
            match deform::egl(&e, &all) {
                Ok(gl) => {
                    let doc = Document::from_category(&gl.category, Some(gl.trunc));
                    let valid = validate_deformation(&gl).valid;
                    let text = format!("{}valid: {valid}\n", doc.to_canonical_string()?);
                    output(
                        json!({"flat": true, "valid": valid, "instance": doc}),
                        text,
                        Some(l.hash),
                    )
                }
                Err(ainfty::Error::NotFlat(name)) => output(
                    json!({"flat": false, "not_flat": name}),
                    format!("connection {name} is not flat\n"),
                    Some(l.hash),
                ),
                Err(err) => Err(err.into()),
            }
        }
        Command::GenFibre {
            input,
            source,
            target,
        } => {
            let l = load(&input.instance)?;
            let (gl, x, y) = flat_pair(&l.doc, source, target)?;
            let generic = generic_hom(&gl, x, y)?;
            let special = hom_dims(&special_fibre(&gl), x, y)?;
            let gen_dims = nonzero_dims(generic.dims);
            let semicontinuous = gen_dims
                .iter()
                .all(|(k, d)| *d <= special.get(k).copied().unwrap_or(0));
            let text = format!(
                "generic: {}\nspecial: {}\nprecision margin: {}\n",
                dims_text(&gen_dims),
                dims_text(&special),
                generic
                    .precision_margin
                    .map_or("exact".to_string(), |m| m.to_string())
            );
            output(
                json!({
                    "generic": gen_dims,
                    "special": special,
                    "precision_margin": generic.precision_margin,
                    "semicontinuous": semicontinuous,
                }),
                text,
                Some(l.hash),
            )
        }
        Command::IsoLaurent {
            input,
            source,
            target,
            budget,
            window,
        } => {
            let l = load(&input.instance)?;
            let (lo, hi) = window
                .split_once(':')
                .and_then(|(a, b)| {
                    Some((a.trim().parse::<i64>().ok()?, b.trim().parse::<i64>().ok()?))
                })
                .ok_or_else(|| anyhow!("window must be lo:hi, found {window:?}"))?;
            let (gl, x, y) = flat_pair(&l.doc, source, target)?;
            let s = iso_over_laurent(&gl, x, y, *budget, (lo, hi))?;
            let text = match &s.witness {
                Some(w) => format!(
                    "witness: {} with inverse {}, valuation {}\n",
                    vec_text(&gl.category, &w.forward),
                    vec_text(&gl.category, &w.inverse),
                    w.valuation
                ),
                None => format!(
                    "none found in window [{lo}, {hi}] ({} candidates)\n",
                    s.candidates_tried
                ),
            };
            let witness = s.witness.as_ref().map(|w| {
                json!({"forward": vec_json(&gl.category, &w.forward), "inverse": vec_json(&gl.category, &w.inverse), "valuation": w.valuation})
            });
            output(
                json!({"found": s.witness.is_some(), "witness": witness, "window": [lo, hi], "candidates_tried": s.candidates_tried}),
                text,
                Some(l.hash),
            )
        }
        Command::Defclass {
            input,
            length,
            compare,
        } => {
            let l = load(&input.instance)?;
            let e = Deformation::from_document(&l.doc)?;
            let c = deformation_class(&e, *length)?;
            let fibre = special_fibre(&e);
            let coords: Vec<String> = c.coords.iter().map(|x| x.to_string()).collect();
            let mut text = format!(
                "class {:?} in HH² (length ≤ {}, {}; exact: {})\n",
                coords,
                c.max_len,
                if c.is_zero() { "zero" } else { "nonzero" },
                c.exact
            );
            let mut report = json!({
                "coords": coords,
                "nonzero": !c.is_zero(),
                "max_len": c.max_len,
                "exact": c.exact,
                "cochain": describe_cochain(&fibre, &c.cochain),
            });
            if let Some(other) = compare {
                let e2 = Deformation::from_document(&load(other)?.doc)?;
                let v = first_order_equiv(&e, &e2, *length)?;
                let diff: Vec<String> = v.difference.iter().map(|x| x.to_string()).collect();
                writeln!(
                    text,
                    "first-order {} (difference {:?}){}",
                    if v.equivalent {
                        "equivalent"
                    } else {
                        "not equivalent"
                    },
                    diff,
                    if v.exact {
                        ""
                    } else {
                        "; truncated HH², verdict only up to length"
                    }
                )?;
                report["first_order"] =
                    json!({"equivalent": v.equivalent, "difference": diff, "exact": v.exact});
            }
            output(report, text, Some(l.hash))
        }
        Command::Reparam { input, f } => {
            let l = load(&input.instance)?;
            let e = Deformation::from_document(&l.doc)?;
            let f = parse_series_json(f, e.trunc)?;
            let r = reparametrize(&e, &f)?;
            let mut doc = Document::from_category(&r.category, Some(r.trunc));
            for c in e.connections(&l.doc)? {
                doc.connections
                    .push(reparam_connection(&r.category, &c, &f)?);
            }
            let valid = validate_deformation(&r).valid;
            let text = format!("{}valid: {valid}\n", doc.to_canonical_string()?);
            output(json!({"valid": valid, "instance": doc}), text, Some(l.hash))
        }
        Command::E1 {
            betti_m,
            betti_bd,
            p,
            q,
        } => {
            let (m, bd) = (parse_betti_list(betti_m)?, parse_betti_list(betti_bd)?);
            let d = e1_dim(&m, &bd, *p, *q);
            output(json!({"p": p, "q": q, "dim": d}), format!("{d}\n"), None)
        }
        Command::Sh2Bound { b2_m, b0_bd } => {
            let b = sh2_bound(*b2_m, *b0_bd);
            output(
                json!({"b2_m": b2_m, "b0_bd": b0_bd, "bound": b}),
                format!("{b}\n"),
                None,
            )
        }
    }
}

fn deform_validate(l: Loaded) -> Result<Output> {
    let e = Deformation::from_document(&l.doc)?;
    let r = validate_deformation(&e);
    let mut text = format!("{}\n", if r.valid { "valid" } else { "invalid" });
    for x in &r.order_t_failures {
        writeln!(text, "  μ⁰ of {x} has a constant term")?;
    }
    for v in &r.relations.violations {
        writeln!(
            text,
            "  {:?} {:?} at {:?}: {}",
            v.kind, v.output, v.inputs, v.detail
        )?;
    }
    output(
        json!({"valid": r.valid, "order_t_failures": r.order_t_failures, "relations": r.relations}),
        text,
        Some(l.hash),
    )
}

fn hom_dims(a: &Category<Rational>, x: ObjId, y: ObjId) -> Result<BTreeMap<i64, usize>> {
    Ok(nonzero_dims(
        ainfty::category::hom_cohomology(a, x, y, PivotOrder::Natural)?.dims(),
    ))
}

/// `E_gl` on the flat connections of the file, with the positions of two
/// of them.
fn flat_pair(doc: &Document, source: &str, target: &str) -> Result<(Deformation, ObjId, ObjId)> {
    let e = Deformation::from_document(doc)?;
    let mut flat = Vec::new();
    for c in e.connections(doc)? {
        if deformed_obstruction(&e, c.object, &c.alpha)?.is_zero() {
            flat.push(c);
        } else if c.name == source || c.name == target {
            return Err(ainfty::Error::NotFlat(c.name).into());
        }
    }
    let gl = deform::egl(&e, &flat)?;
    let x = object(&gl.category, source)?;
    let y = object(&gl.category, target)?;
    Ok((gl, x, y))
}

fn reparam_connection(
    cat: &Category<TruncSeries>,
    c: &Connection,
    f: &TruncSeries,
) -> Result<ConnectionDoc> {
    let mut alpha = Vec::new();
    for (b, s) in c.alpha.iter() {
        let el = cat.basis_element(b);
        alpha.push((
            (cat.hom_key(el.source, el.target), el.label.clone()),
            s.compose(f)?.to_doc(),
        ));
    }
    Ok(ConnectionDoc {
        name: c.name.clone(),
        object: cat.objects()[c.object].clone(),
        alpha,
    })
}
