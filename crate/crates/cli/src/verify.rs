//! Re-checks reports emitted by the constructing subcommands without
//! recomputing them. Accepts the full report document (or just its
//! payload) on stdin or from `--file`.

use std::io::Read;

use serde_json::{json, Map, Value};

use majorize::{
    build_rado_witness, BirkhoffDecomposition, Error, ExponentVector, MajorizationChain,
    MembershipCertificate, Permutation, Rat, Result, SeparationCertificate,
};

use crate::jsonio::{
    field, matrix_field, parse_group, rat_field, string_field, usize_field, vector_field, Outcome,
};
use crate::{VerifyInput, VerifyOp};

pub fn dispatch(op: VerifyOp) -> Result<Outcome> {
    match op {
        VerifyOp::Chain(input) => verify("verify chain", &input, check_chain),
        VerifyOp::Member(input) => verify("verify member", &input, check_member),
        VerifyOp::Separation(input) => verify("verify separation", &input, check_separation),
        VerifyOp::Witness(input) => verify("verify witness", &input, check_witness),
        VerifyOp::Hlp(input) => verify("verify hlp", &input, check_hlp),
    }
}

fn verify(
    command: &'static str,
    input: &VerifyInput,
    check: fn(&Value) -> Result<()>,
) -> Result<Outcome> {
    let doc = read_document(input)?;
    let mut payload = Map::new();
    match check(&doc) {
        Ok(()) => {
            payload.insert("verified".into(), json!(true));
            Ok(Outcome::ok(command, payload))
        }
        Err(err) if matches!(err, Error::CertificateInvalid(_)) => {
            payload.insert("verified".into(), json!(false));
            payload.insert("message".into(), json!(err.to_string()));
            Ok(Outcome::falsified(command, payload))
        }
        Err(err) => Err(err),
    }
}

fn read_document(input: &VerifyInput) -> Result<Value> {
    let text = match &input.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
            buffer
        }
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
}

fn check_chain(doc: &Value) -> Result<()> {
    let a = vector_field(doc, "a")?;
    let b = vector_field(doc, "b")?;
    let chain: MajorizationChain = serde_json::from_value(json!({
        "vectors": field(doc, "vectors")?,
        "steps": field(doc, "steps")?,
    }))
    .map_err(|e| Error::Parse(format!("bad chain fields: {e}")))?;
    chain.validate(&a, &b)
}

fn check_member(doc: &Value) -> Result<()> {
    let n = usize_field(doc, "n")?;
    let group = parse_group(string_field(doc, "group")?, n)?;
    let a = vector_field(doc, "a")?;
    let b = vector_field(doc, "b")?;
    let weights_value = field(doc, "weights")?
        .as_object()
        .ok_or_else(|| Error::Parse("weights must be an object".into()))?;
    let mut weights: Vec<(Permutation, Rat)> = Vec::with_capacity(weights_value.len());
    for (cycles, weight) in weights_value {
        let gamma = Permutation::parse_cycles(cycles, n)?;
        let w = weight
            .as_str()
            .ok_or_else(|| Error::Parse("weight must be a string rational".into()))?;
        weights.push((gamma, majorize::parse_rat(w)?));
    }
    MembershipCertificate::from_weights(weights).verify(&a, &b, &group)
}

fn check_separation(doc: &Value) -> Result<()> {
    let n = usize_field(doc, "n")?;
    let group = parse_group(string_field(doc, "group")?, n)?;
    let a = vector_field(doc, "a")?;
    let b = vector_field(doc, "b")?;
    separation_certificate(doc)?.verify(&a, &b, &group)
}

fn separation_certificate(doc: &Value) -> Result<SeparationCertificate> {
    serde_json::from_value(field(doc, "certificate")?.clone())
        .map_err(|e| Error::Parse(format!("bad certificate: {e}")))
}

fn check_witness(doc: &Value) -> Result<()> {
    let n = usize_field(doc, "n")?;
    let group = parse_group(string_field(doc, "group")?, n)?;
    let a = ExponentVector::new(vector_field(doc, "a")?)?;
    let b = ExponentVector::new(vector_field(doc, "b")?)?;
    let cert = separation_certificate(doc)?;
    // Rebuilding runs every check: certificate validity, the scale
    // base, and the strict reversal of the means.
    let witness = build_rado_witness(&cert, &a, &b, &group)?;
    let claimed_m = rat_field(doc, "M")?;
    if witness.scale_base != claimed_m {
        return Err(Error::CertificateInvalid(format!(
            "claimed M = {claimed_m}, expected {}",
            witness.scale_base
        )));
    }
    let claimed_x = vector_field(doc, "x")?;
    if witness.x != claimed_x {
        return Err(Error::CertificateInvalid("claimed x differs".into()));
    }
    if let (Some(lhs), Some(rhs)) = (witness.lhs.as_rat(), witness.rhs.as_rat()) {
        if rat_field(doc, "lhs")? != *lhs || rat_field(doc, "rhs")? != *rhs {
            return Err(Error::CertificateInvalid(
                "claimed mean values differ".into(),
            ));
        }
    }
    Ok(())
}

fn check_hlp(doc: &Value) -> Result<()> {
    let a = vector_field(doc, "a")?;
    let b = vector_field(doc, "b")?;
    let matrix = matrix_field(doc, "matrix")?;
    if matrix.apply(&a)? != b {
        return Err(Error::CertificateInvalid(
            "matrix does not map a to b".into(),
        ));
    }
    let n = a.len();
    let terms_value = field(doc, "terms")?
        .as_array()
        .ok_or_else(|| Error::Parse("terms must be an array".into()))?;
    let mut terms = Vec::with_capacity(terms_value.len());
    for term in terms_value {
        let t = majorize::parse_rat(string_field(term, "t")?)?;
        let sigma = Permutation::parse_cycles(string_field(term, "sigma")?, n)?;
        terms.push((t, sigma));
    }
    BirkhoffDecomposition::from_terms(terms)?.verify(&matrix)
}
