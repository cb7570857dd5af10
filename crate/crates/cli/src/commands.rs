//! Handlers for the constructing subcommands. Each returns an
//! [`Outcome`] whose payload, fed back through the matching `verify`
//! subcommand, re-verifies with exit 0.

use serde_json::{json, Map, Value};

use majorize::{
    birkhoff_decompose, build_chain, build_rado_witness, check_prefix_products, compare_means_with,
    format_rat, hlp_matrix, membership, membership_unrestricted, probe_constant,
    probe_step_vectors, sum_dominance, symmetric_mean, FloatTolerance, MembershipOutcome,
    MultiplicativePair, Relation, Result,
};

use crate::jsonio::{
    matrix_json, mean_json, mean_mode, ordering_json, parse_exponents, parse_group, parse_rational,
    parse_vector, rat_json, to_json, Outcome,
};
use crate::ModeArg;

pub fn major_check(a: &str, b: &str) -> Result<Outcome> {
    let a = parse_vector(a)?;
    let b = parse_vector(b)?;
    let verdict = a.majorizes(&b)?;
    let mut payload = Map::new();
    payload.insert("relation".into(), to_json(&verdict.relation));
    if let Some(k) = verdict.failing_prefix {
        payload.insert("failing_prefix".into(), json!(k));
    }
    Ok(if verdict.relation.holds_weakly() {
        Outcome::ok("major check", payload)
    } else {
        Outcome::falsified("major check", payload)
    })
}

pub fn major_chain(a_text: &str, b_text: &str) -> Result<Outcome> {
    let a = parse_vector(a_text)?;
    let b = parse_vector(b_text)?;
    let verdict = a.majorizes(&b)?;
    if verdict.relation != Relation::StrictMajor {
        let mut payload = Map::new();
        payload.insert("relation".into(), to_json(&verdict.relation));
        payload.insert(
            "message".into(),
            json!("chain requires strict majorization"),
        );
        return Ok(Outcome::falsified("major chain", payload));
    }
    let chain = build_chain(&a, &b)?;
    let mut payload = Map::new();
    payload.insert("a".into(), to_json(&a));
    payload.insert("b".into(), to_json(&b));
    payload.insert("vectors".into(), to_json(&chain.vectors));
    payload.insert("steps".into(), to_json(&chain.steps));
    Ok(Outcome::ok("major chain", payload))
}

pub fn mean_eval(x: &str, a: &str, group: &str, mode: ModeArg) -> Result<Outcome> {
    let x = parse_vector(x)?;
    let a = parse_exponents(a)?;
    let g = parse_group(group, x.len())?;
    let value = symmetric_mean(&x, &a, &g, mean_mode(mode))?;
    let mut payload = Map::new();
    payload.insert("value".into(), mean_json(&value));
    payload.insert("mode".into(), crate::jsonio::mode_json(&value));
    Ok(Outcome::ok("mean eval", payload))
}

#[allow(clippy::too_many_arguments)]
pub fn mean_compare(
    x: &str,
    a: &str,
    b: &str,
    group: &str,
    mode: ModeArg,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Outcome> {
    let x = parse_vector(x)?;
    let a = parse_exponents(a)?;
    let b = parse_exponents(b)?;
    let g = parse_group(group, x.len())?;
    let tol = FloatTolerance {
        relative: rel_tol,
        absolute: abs_tol,
    };
    let cmp = compare_means_with(&x, &a, &b, &g, mean_mode(mode), tol)?;
    let mut payload = Map::new();
    payload.insert("order".into(), ordering_json(cmp.order));
    payload.insert("lhs".into(), mean_json(&cmp.lhs));
    payload.insert("rhs".into(), mean_json(&cmp.rhs));
    payload.insert("mode".into(), crate::jsonio::mode_json(&cmp.lhs));
    Ok(Outcome::ok("mean compare", payload))
}

pub fn hull_member(b: &str, a: &str, group: &str, allow_negative: bool) -> Result<Outcome> {
    let b = parse_vector(b)?;
    let a = parse_vector(a)?;
    let g = parse_group(group, a.len())?;
    let outcome = if allow_negative {
        membership_unrestricted(&b, &a, &g)?
    } else {
        membership(&b, &a, &g)?
    };
    let mut payload = Map::new();
    payload.insert("n".into(), json!(a.len()));
    payload.insert("group".into(), json!(group));
    payload.insert("a".into(), to_json(&a));
    payload.insert("b".into(), to_json(&b));
    match outcome {
        MembershipOutcome::Member(cert) => {
            payload.insert("member".into(), json!(true));
            let mut weights = Map::new();
            for (gamma, w) in cert.weights() {
                weights.insert(gamma.cycle_string(), json!(format_rat(w)));
            }
            payload.insert("weights".into(), Value::Object(weights));
            Ok(Outcome::ok("hull member", payload))
        }
        MembershipOutcome::Separated(cert) => {
            payload.insert("member".into(), json!(false));
            payload.insert("certificate".into(), to_json(&cert));
            Ok(Outcome::falsified("hull member", payload))
        }
    }
}

pub fn hull_hlp(a_text: &str, b_text: &str) -> Result<Outcome> {
    let a = parse_vector(a_text)?;
    let b = parse_vector(b_text)?;
    let verdict = a.majorizes(&b)?;
    if !verdict.relation.holds_weakly() {
        let mut payload = Map::new();
        payload.insert("relation".into(), to_json(&verdict.relation));
        payload.insert("message".into(), json!("matrix requires b majorized by a"));
        return Ok(Outcome::falsified("hull hlp", payload));
    }
    let s = hlp_matrix(&a, &b)?;
    let decomposition = birkhoff_decompose(&s)?;
    let mut payload = Map::new();
    payload.insert("a".into(), to_json(&a));
    payload.insert("b".into(), to_json(&b));
    payload.insert("matrix".into(), matrix_json(s.matrix()));
    let terms: Vec<Value> = decomposition
        .terms()
        .iter()
        .map(|(t, sigma)| {
            json!({
                "t": format_rat(t),
                "sigma": sigma.cycle_string(),
            })
        })
        .collect();
    payload.insert("terms".into(), Value::Array(terms));
    Ok(Outcome::ok("hull hlp", payload))
}

pub fn rado_witness(a_text: &str, b_text: &str, group: &str) -> Result<Outcome> {
    let a = parse_exponents(a_text)?;
    let b = parse_exponents(b_text)?;
    let g = parse_group(group, a.len())?;
    let mut payload = Map::new();
    payload.insert("n".into(), json!(a.len()));
    payload.insert("group".into(), json!(group));
    payload.insert("a".into(), to_json(a.vector()));
    payload.insert("b".into(), to_json(b.vector()));
    match membership(b.vector(), a.vector(), &g)? {
        MembershipOutcome::Member(_) => {
            payload.insert("member".into(), json!(true));
            payload.insert(
                "message".into(),
                json!("b lies in K_G(a); no reversal witness exists"),
            );
            Ok(Outcome::falsified("rado witness", payload))
        }
        MembershipOutcome::Separated(cert) => {
            // The certificate was just produced by the membership LP;
            // it failing re-verification can only be a bug here.
            let witness = build_rado_witness(&cert, &a, &b, &g).map_err(|e| match e {
                majorize::Error::CertificateInvalid(msg) => {
                    majorize::Error::internal(format!("own certificate rejected: {msg}"))
                }
                other => other,
            })?;
            let orbit_max = majorize::orbit(a.vector(), &g)?
                .iter()
                .map(|p| witness.u.dot(p))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .expect("orbit nonempty");
            payload.insert("member".into(), json!(false));
            payload.insert("certificate".into(), to_json(&cert));
            payload.insert("M".into(), rat_json(&witness.scale_base));
            payload.insert("x".into(), to_json(&witness.x));
            payload.insert("lhs".into(), mean_json(&witness.lhs));
            payload.insert("rhs".into(), mean_json(&witness.rhs));
            payload.insert(
                "transcript".into(),
                json!([
                    {
                        "check": "separation",
                        "max_orbit_value": format_rat(&orbit_max),
                        "c": format_rat(&cert.c),
                        "b_value": format_rat(&witness.u.dot(b.vector())?),
                        "margin": format_rat(&cert.margin),
                    },
                    {
                        "check": "scale_base",
                        "M": format_rat(&witness.scale_base),
                        "margin": format_rat(&cert.margin),
                        "group_order": g.order(),
                    },
                    {
                        "check": "reversal",
                        "lhs": mean_json(&witness.lhs),
                        "rhs": mean_json(&witness.rhs),
                    },
                ]),
            );
            Ok(Outcome::ok("rado witness", payload))
        }
    }
}

pub fn rado_probe_constant(a: &str, b: &str, w: &str) -> Result<Outcome> {
    let a = parse_exponents(a)?;
    let b = parse_exponents(b)?;
    let w = parse_rational(w)?;
    let probe = probe_constant(&a, &b, &w)?;
    let mut payload = Map::new();
    payload.insert("w".into(), rat_json(&probe.w));
    payload.insert("sum_a".into(), rat_json(&probe.sum_a));
    payload.insert("sum_b".into(), rat_json(&probe.sum_b));
    payload.insert("totals".into(), ordering_json(probe.totals));
    if let Some(m) = &probe.mean_a {
        payload.insert("mean_a".into(), rat_json(m));
    }
    if let Some(m) = &probe.mean_b {
        payload.insert("mean_b".into(), rat_json(m));
    }
    Ok(Outcome::ok("rado probe-constant", payload))
}

pub fn rado_probe_steps(a: &str, b: &str, w: &str) -> Result<Outcome> {
    let a = parse_exponents(a)?;
    let b = parse_exponents(b)?;
    let w = parse_rational(w)?;
    let rows = probe_step_vectors(&a, &b, &w)?;
    let mut payload = Map::new();
    payload.insert("w".into(), rat_json(&w));
    payload.insert(
        "rows".into(),
        Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "prefix_a": format_rat(&r.prefix_a),
                        "prefix_b": format_rat(&r.prefix_b),
                        "asymptotic": ordering_json(r.asymptotic),
                        "mean_a": format_rat(&r.mean_a),
                        "mean_b": format_rat(&r.mean_b),
                        "observed": ordering_json(r.observed),
                    })
                })
                .collect(),
        ),
    );
    Ok(Outcome::ok("rado probe-steps", payload))
}

pub fn multadd_check(u_text: &str, v_text: &str) -> Result<Outcome> {
    let u = parse_vector(u_text)?;
    let v = parse_vector(v_text)?;
    let check = check_prefix_products(u.coords(), v.coords())?;
    let mut payload = Map::new();
    payload.insert("u".into(), to_json(&u));
    payload.insert("v".into(), to_json(&v));
    payload.insert("prefix_ok".into(), json!(check.ok));
    if let Some(j) = check.first_violation {
        payload.insert("first_violation".into(), json!(j));
        return Ok(Outcome::falsified("multadd check", payload));
    }
    let pair = MultiplicativePair::new(u.coords().to_vec(), v.coords().to_vec())?;
    payload.insert("sum_u".into(), rat_json(&u.sum()));
    payload.insert("sum_v".into(), rat_json(&v.sum()));
    if pair.diverging_index().is_none() {
        payload.insert("strict".into(), json!(false));
        payload.insert(
            "message".into(),
            json!("sequences are identical; no strict conclusion"),
        );
        return Ok(Outcome::falsified("multadd check", payload));
    }
    let dom = sum_dominance(&pair)?;
    payload.insert("strict".into(), json!(dom.strict));
    payload.insert(
        "augmentation".into(),
        json!({
            "u_next": format_rat(&dom.augmentation.u_next),
            "v_next": format_rat(&dom.augmentation.v_next),
            "lambda_scale": format_rat(&dom.augmentation.lambda_scale),
        }),
    );
    payload.insert("log_u".into(), json!(dom.log_u));
    payload.insert("log_v".into(), json!(dom.log_v));
    payload.insert("log_majorization_ok".into(), json!(dom.log_majorization_ok));
    Ok(Outcome::ok("multadd check", payload))
}

pub fn group_enumerate(n: usize, group: &str) -> Result<Outcome> {
    let g = parse_group(group, n)?;
    let mut payload = Map::new();
    payload.insert("n".into(), json!(n));
    payload.insert("group".into(), json!(group));
    payload.insert("order".into(), json!(g.order()));
    payload.insert(
        "elements".into(),
        Value::Array(
            g.elements()
                .iter()
                .map(|p| json!(p.cycle_string()))
                .collect(),
        ),
    );
    Ok(Outcome::ok("group enumerate", payload))
}
