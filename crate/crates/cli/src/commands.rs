use std::path::Path;

use gbskit_core::{classification_report, Automorphism, GbsGroup, PathWord};
use serde_json::{json, Value};

use crate::{read, Failure};

pub struct Options {
    pub radius: usize,
    pub samples: usize,
    pub seed: u64,
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// `identity` or a path to a map/inv file; the result is validated.
fn load_automorphism(g: &GbsGroup, spec: &str) -> Result<Automorphism, Failure> {
    if spec == "identity" {
        return Ok(g.identity_automorphism());
    }
    let text = read(Path::new(spec))?;
    Ok(g.validate_candidate(g.parse_automorphism(&text)?)?)
}

fn load_words(g: &GbsGroup, path: &Path) -> Result<Vec<PathWord>, Failure> {
    let mut out = Vec::new();
    for (i, raw) in read(path)?.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w = g.parse_loop(line).map_err(|e| Failure::Input {
            path: path.to_path_buf(),
            message: format!("line {}: {e}", i + 1),
        })?;
        out.push(w);
    }
    Ok(out)
}

pub fn classify(g: &GbsGroup) -> Result<Value, Failure> {
    Ok(value(&classification_report(g.graph())?))
}

pub fn nf(g: &GbsGroup, word: &str) -> Result<Value, Failure> {
    let w = g.parse_loop(word)?;
    let c = g.canonical_form(&w)?;
    Ok(json!({ "input": word, "canonical": c.key(), "identity": c.is_identity() }))
}

pub fn tl(g: &GbsGroup, word: &str) -> Result<Value, Failure> {
    let c = g.classify_element(&g.parse_loop(word)?)?;
    Ok(json!({ "length": c.translation_length, "kind": c.kind, "core": c.cyclic_core.key() }))
}

pub fn commens(g: &GbsGroup, word: &str) -> Result<Value, Failure> {
    let c = g.find_commensuration(&g.parse_loop(word)?)?;
    Ok(json!({
        "word": word,
        "vertex": g.graph().vertex_name(c.base),
        "p": c.p.to_string(),
        "q": c.q.to_string(),
    }))
}

pub fn modulus(g: &GbsGroup, word: &str) -> Result<Value, Failure> {
    Ok(value(&g.modulus(&g.parse_loop(word)?)))
}

pub fn twisted(g: &GbsGroup, automorphism: &str, words: &Path, opts: &Options) -> Result<Value, Failure> {
    let phi = load_automorphism(g, automorphism)?;
    let elements = load_words(g, words)?;
    let partition = g.merge_classes_in_ball(&phi, &elements, opts.radius)?;
    let lower_bound = match g.modulus_class_count(&phi, &elements) {
        Ok((count, values)) => json!({ "count": count, "values": value(&values) }),
        Err(gbskit_core::Error::DeltaNotRespected) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "automorphism_id": phi.id(),
        "partition": value(&partition),
        "class_count": partition.class_count(),
        "lower_bound": lower_bound,
        "certificate": value(&g.rinfty_certificate(&phi)?),
    }))
}

pub fn certify(g: &GbsGroup, automorphism: &str) -> Result<Value, Failure> {
    let phi = load_automorphism(g, automorphism)?;
    Ok(json!({
        "automorphism_id": phi.id(),
        "certificate": value(&g.rinfty_certificate(&phi)?),
        "sign_lower_bound": value(&g.sign_lower_bound(&phi)?),
    }))
}

pub fn ses_check(g: &GbsGroup, automorphism: &str, opts: &Options) -> Result<Value, Failure> {
    let q = g.free_quotient()?;
    let phi = load_automorphism(g, automorphism)?;
    Ok(value(&g.projection_soundness(&q, &phi, opts.samples, opts.seed, opts.radius)?))
}

pub fn conj_growth(g: &GbsGroup, word: &str, opts: &Options) -> Result<Value, Failure> {
    Ok(value(&g.conjugates_in_ball(&g.parse_loop(word)?, opts.radius)?))
}
