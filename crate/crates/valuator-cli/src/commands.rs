//! Subcommand implementations. Each returns a JSON report or an error
//! carrying its exit code.

use crate::catalog::Catalog;
use crate::io::{
    bipoly_json, flats_json, format_perm, format_set, parse_perm, parse_set, poly_json, report, write_json, CliError, DecompositionFile,
    MatroidFile,
};
use crate::suite;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;
use valuator::decomp::{build_complex, relaxation_decomposition, Decomposition};
use valuator::equivariant::{
    character_identity_check, det_character, equivariant_kl, kl_correction_check, os_exponent_report, trace, virtual_check, IdentityReport,
    PermGroup, Relaxation,
};
use valuator::functors::{bergman_signature, by_name, g_invariant, kl_oracle, z_oracle, AugChow, Chow, Functor, Kl, Sigma, FUNCTOR_NAMES};
use valuator::homcheck::{apply, Homology};
use valuator::{GroundSet, Matroid, Rat};

/// Invariants addressable by `invariant <name>`.
pub const INVARIANTS: &[&str] = &["poincare", "chow", "augchow", "kl", "klt", "z", "zt", "g", "bergman"];

pub fn functor(name: &str) -> Result<Box<dyn Functor>, CliError> {
    by_name(name).ok_or_else(|| CliError::Usage(format!("unknown functor {name:?}; known: {}", FUNCTOR_NAMES.join(", "))))
}

pub fn matroid_info(m: &Matroid) -> Value {
    report(
        "matroid-info",
        json!({
            "ground": m.ground().labels(),
            "size": m.n(),
            "rank": m.rank(),
            "bases": m.bases().len(),
            "flats": flats_json(m),
            "nbc_dims": m.nbc_sets().iter().map(Vec::len).collect::<Vec<_>>(),
            "dimension": m.dimension(),
            "connected": m.is_connected(),
            "components": m.components().iter().map(|&c| format_set(m.ground(), c)).collect::<Vec<_>>(),
            "loops": format_set(m.ground(), m.loops()),
            "coloops": format_set(m.ground(), m.coloops()),
        }),
    )
}

pub fn invariant(name: &str, m: &Matroid, swap_letters: bool) -> Result<Value, CliError> {
    let value = match name {
        "poincare" => poly_json(&m.poincare()),
        "chow" => poly_json(&Chow.obj(m).hilbert_t()),
        "augchow" => poly_json(&AugChow.obj(m).hilbert_t()),
        "kl" => poly_json(&kl_oracle(m)),
        "klt" => bipoly_json(&Kl.obj(m).hilbert()),
        "z" => poly_json(&z_oracle(m)),
        "zt" => bipoly_json(&Sigma.obj(m).hilbert()),
        "g" => {
            let g = g_invariant(m).map_err(|e| CliError::Usage(e.to_string()))?;
            let g = if swap_letters { g.swap_letters() } else { g };
            Value::Object(g.terms().iter().map(|(w, c)| (w.clone(), json!(c))).collect())
        }
        "bergman" => {
            let sig = bergman_signature(m).map_err(|e| CliError::Usage(e.to_string()))?;
            let cones: Vec<Value> = sig
                .support()
                .iter()
                .map(|c| {
                    json!({
                        "independent": format_set(m.ground(), c.indep),
                        "chain": c.chain.iter().map(|&s| format_set(m.ground(), s)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "cones": cones.len(), "support": cones })
        }
        _ => return Err(CliError::Usage(format!("unknown invariant {name:?}; known: {}", INVARIANTS.join(", ")))),
    };
    Ok(value)
}

/// A group from generators in cycle notation, or the automorphism group of
/// `m` when none are given. The group must preserve `m`.
pub fn group_for(m: &Matroid, generators: &[String]) -> Result<PermGroup, CliError> {
    let group = if generators.is_empty() {
        PermGroup::automorphisms_of(m).map_err(|e| CliError::Usage(e.to_string()))?
    } else {
        let gens = generators.iter().map(|g| parse_perm(m.ground(), g)).collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(m.n(), gens).map_err(|e| CliError::Usage(e.to_string()))?
    };
    if !group.preserves(m) {
        return Err(CliError::Validation("the group does not preserve the matroid".into()));
    }
    Ok(group)
}

pub fn relax(m: &Matroid, flat: &str, generators: &[String], automorphisms: bool) -> Result<Value, CliError> {
    let f = parse_set(m, flat)?;
    let group = if automorphisms || !generators.is_empty() { Some(group_for(m, generators)?) } else { None };
    let d = relaxation_decomposition(m, f, group.as_ref().map(PermGroup::elements))?;
    Ok(report(
        "relax",
        json!({
            "flat": format_set(m.ground(), f),
            "group_order": group.as_ref().map_or(1, PermGroup::order),
            "relaxed": MatroidFile::from_matroid(d.target()),
            "decomposition": DecompositionFile::from_decomposition(&d),
        }),
    ))
}

/// `{"t^i u^j": {"k": h}}` over the nonzero homology.
pub fn homology_json(h: &Homology) -> Value {
    Value::Object(
        h.by_degree
            .iter()
            .map(|((i, j), m)| (format!("t^{i} u^{j}"), Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())))
            .collect(),
    )
}

fn validated(d: &Decomposition, samples: usize, seed: u64) -> Result<Value, CliError> {
    let s = d.validate(samples, seed).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(json!({ "seed": s.seed, "sample_points": s.sample_points, "cells": s.cells, "faces": s.faces }))
}

pub fn complex_check(d: &Decomposition, functor_name: &str, samples: usize, seed: u64) -> Result<Value, CliError> {
    let f = functor(functor_name)?;
    let validation = validated(d, samples, seed)?;
    let c = build_complex(d)?;
    let ch = match apply(f.as_ref(), c.complex()) {
        Ok(ch) => ch,
        Err(e) => {
            let out =
                report("complex-check", json!({ "functor": f.name(), "validation": validation, "exact": false, "error": e.to_string() }));
            return Err(CliError::Identity(serde_json::to_string_pretty(&out).expect("serializable")));
        }
    };
    let h = ch.homology();
    let dims: Map<String, Value> = (0..=ch.top())
        .map(|k| {
            let per: Map<String, Value> = ch
                .degrees()
                .into_iter()
                .filter(|&d| ch.dim(k, d) > 0)
                .map(|(i, j)| (format!("t^{i} u^{j}"), json!(ch.dim(k, (i, j)))))
                .collect();
            (k.to_string(), Value::Object(per))
        })
        .collect();
    let out = report(
        "complex-check",
        json!({
            "functor": f.name(),
            "validation": validation,
            "dims": dims,
            "homology": homology_json(&h),
            "exact": h.is_zero(),
        }),
    );
    if h.is_zero() {
        Ok(out)
    } else {
        Err(CliError::Identity(serde_json::to_string_pretty(&out).expect("serializable")))
    }
}

/// Parses rationals such as `1`, `-2` or `3/4`.
pub fn parse_psi(d: &Decomposition, parts: &[String]) -> Result<Vec<Rat>, CliError> {
    if parts.len() != d.target().n() {
        return Err(CliError::Usage(format!("ψ needs {} coefficients, got {}", d.target().n(), parts.len())));
    }
    parts.iter().map(|p| p.trim().parse::<Rat>().map_err(|_| CliError::Usage(format!("not a rational: {p:?}")))).collect()
}

pub fn deltapsi(d: &Decomposition, psi: &[Rat]) -> Result<Value, CliError> {
    let face = valuator::polytope::maximize(d.target(), psi);
    let agreement = suite::delta_psi_agrees(d, psi);
    let out = report(
        "deltapsi",
        json!({
            "psi": psi.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "maximal_face": MatroidFile::from_matroid(&face),
            "shift": d.dimension() as i64 - face.dimension() as i64,
            "agrees": agreement.is_ok(),
        }),
    );
    match agreement {
        Ok(()) => Ok(out),
        Err(e) => Err(CliError::Identity(e)),
    }
}

fn cycle_key(g: &valuator::Perm) -> String {
    g.cycle_type().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Class representatives keyed by cycle type; classes sharing a cycle
/// type get `#2`, `#3`, ... appended in class order.
fn class_keys(group: &PermGroup) -> Vec<(String, usize)> {
    let mut count: BTreeMap<String, usize> = BTreeMap::new();
    group
        .conjugacy_classes()
        .into_iter()
        .map(|c| {
            let key = cycle_key(&group.elements()[c[0]]);
            let n = count.entry(key.clone()).or_insert(0);
            *n += 1;
            (if *n == 1 { key } else { format!("{key}#{n}") }, c[0])
        })
        .collect()
}

fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        json!(r.to_integer().to_string().parse::<i64>().unwrap_or_default())
    } else {
        json!(r.to_string())
    }
}

pub fn character_table(m: &Matroid, f: &dyn Functor, group: &PermGroup) -> Result<Value, CliError> {
    let mut table = Map::new();
    for (key, idx) in class_keys(group) {
        let g = &group.elements()[idx];
        let tr = trace(f, m, g).map_err(|e| CliError::Usage(e.to_string()))?;
        let per: Map<String, Value> = tr.iter().map(|((i, j), v)| (format!("t^{i} u^{j}"), rat_json(v))).collect();
        table.insert(key, json!({ "representative": format_perm(m.ground(), g), "traces": per }));
    }
    Ok(report("character-table", json!({ "functor": f.name(), "group_order": group.order(), "classes": table })))
}

pub fn equivariant_kl_table(m: &Matroid, group: &PermGroup) -> Result<Value, CliError> {
    let chars = equivariant_kl(m, group).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut table = Map::new();
    for (key, idx) in class_keys(group) {
        let coeffs: Map<String, Value> = chars.iter().enumerate().map(|(i, c)| (i.to_string(), rat_json(&c[idx]))).collect();
        table.insert(key, Value::Object(coeffs));
    }
    Ok(report("equivariant-kl", json!({ "group_order": group.order(), "classes": table })))
}

fn identity_json(kind: &str, extra: Value, r: &IdentityReport, ground: &GroundSet) -> Result<Value, CliError> {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "element": format_perm(ground, &f.element), "degree": [f.degree.0, f.degree.1], "value": f.value.to_string() }))
        .collect();
    let mut v = report(kind, extra);
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("group_order".into(), json!(r.group_order));
    obj.insert("holds".into(), json!(r.holds()));
    obj.insert("failures".into(), Value::Array(failures));
    if r.holds() {
        Ok(v)
    } else {
        Err(CliError::Identity(serde_json::to_string_pretty(&v).expect("serializable")))
    }
}

/// The symmetries of `d`: elements of the automorphism group of the target
/// (or of the given generators' group) that preserve every face set.
pub fn decomposition_group(d: &Decomposition, generators: &[String]) -> Result<PermGroup, CliError> {
    if !generators.is_empty() {
        let g = group_for(d.target(), generators)?;
        if !g.generators().iter().all(|x| d.is_preserved_by(x)) {
            return Err(CliError::Validation("the group does not preserve the decomposition".into()));
        }
        return Ok(g);
    }
    let aut = PermGroup::automorphisms_of(d.target()).map_err(|e| CliError::Usage(e.to_string()))?;
    let keep: Vec<valuator::Perm> = aut.elements().iter().filter(|g| d.is_preserved_by(g)).cloned().collect();
    PermGroup::new(d.target().n(), keep).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn identity(d: &Decomposition, f: &dyn Functor, group: &PermGroup) -> Result<Value, CliError> {
    let r = character_identity_check(d, group, f).map_err(|e| CliError::Validation(e.to_string()))?;
    identity_json("character-identity", json!({ "functor": f.name() }), &r, d.target().ground())
}

pub fn virtual_identity(m: &Matroid, flat: &str, f: &dyn Functor, group: &PermGroup) -> Result<Value, CliError> {
    let mask = parse_set(m, flat)?;
    let rel = Relaxation::new(m, mask, group).map_err(|e| CliError::Validation(e.to_string()))?;
    let r = virtual_check(&rel, group, f).map_err(|e| CliError::Usage(e.to_string()))?;
    let orbit: Vec<String> = rel.orbit.iter().map(|&g| format_set(m.ground(), g)).collect();
    identity_json("virtual-identity", json!({ "functor": f.name(), "orbit": orbit }), &r, m.ground())
}

pub fn det(m: &Matroid, perm: &str) -> Result<Value, CliError> {
    let g = parse_perm(m.ground(), perm)?;
    let s = det_character(m, &g).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(report("det", json!({ "permutation": format_perm(m.ground(), &g), "sign": s })))
}

pub fn kl_correction(k: usize, h: usize, extra: usize) -> Result<Value, CliError> {
    if k < 2 || h < k || extra < 1 || h + extra > valuator::matroid::MAX_GROUND {
        return Err(CliError::Usage("need 2 ≤ k ≤ h and at least one extra element".into()));
    }
    let r = kl_correction_check(k, h, extra).map_err(|e| CliError::Usage(e.to_string()))?;
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|(rho, i, got, want)| json!({ "cycle_type": rho, "degree": i, "difference": got.to_string(), "expected": want }))
        .collect();
    let v =
        report("kl-correction", json!({ "rank": k, "hyperplane_size": h, "classes": r.classes, "holds": r.holds(), "failures": failures }));
    if r.holds() {
        Ok(v)
    } else {
        Err(CliError::Identity(serde_json::to_string_pretty(&v).expect("serializable")))
    }
}

pub fn os_exponent(m: &Matroid, hyperplane: &str, group: &PermGroup) -> Result<Value, CliError> {
    let h = parse_set(m, hyperplane)?;
    let r = os_exponent_report(m, h, group).map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(report(
        "os-exponent",
        json!({
            "rank": r.rank,
            "hyperplane_size": r.hyperplane_size,
            "group_order": r.group_order,
            "exterior_power_k_minus_1": r.lower_holds,
            "exterior_power_k": r.upper_holds,
            "verified_exponents": r.verified_exponents(),
        }),
    ))
}

pub fn catalog_list(c: &Catalog) -> Value {
    let entries: Vec<Value> = c
        .entries()
        .iter()
        .map(|e| json!({ "name": e.name, "size": e.matroid.n(), "rank": e.matroid.rank(), "bases": e.matroid.bases().len() }))
        .collect();
    report("catalog", json!({ "entries": entries }))
}

/// Writes one JSON file per catalog entry, the octahedron files, and the
/// KL oracle output for `U3,6`.
pub fn catalog_export(c: &Catalog, dir: &Path) -> Result<Value, CliError> {
    let mk = |p: &Path| std::fs::create_dir_all(p).map_err(|source| CliError::Io { path: p.display().to_string(), source });
    let matroids = dir.join("matroids");
    let oct = dir.join("octahedron");
    mk(&matroids)?;
    mk(&oct)?;
    let file_name = |name: &str| name.replace([',', '[', ']', '~', '@', '/'], "_") + ".json";
    for e in c.entries() {
        write_json(&matroids.join(file_name(&e.name)), &MatroidFile::from_matroid(&e.matroid))?;
    }
    let d = crate::catalog::octahedron();
    write_json(&oct.join("M.json"), &MatroidFile::from_matroid(d.target()))?;
    for m in d.internal_faces() {
        let name = match (m.is_basis(0b0011), m.is_basis(0b1100)) {
            (true, false) => "cell_12",
            (false, true) => "cell_34",
            _ => "square",
        };
        write_json(&oct.join(format!("{name}.json")), &MatroidFile::from_matroid(m))?;
    }
    write_json(&oct.join("decomp.json"), &DecompositionFile::from_decomposition(&d))?;
    let u36 = Matroid::uniform_numbered(3, 6).expect("matroid");
    write_json(&dir.join("U36.json"), &MatroidFile::from_matroid(&u36))?;
    write_json(&dir.join("U36.kl.json"), &invariant("kl", &u36, false)?)?;
    Ok(report("catalog-export", json!({ "directory": dir.display().to_string(), "matroids": c.len() })))
}
