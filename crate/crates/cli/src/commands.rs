//! One function per subcommand, each building a [`Report`].

use hilblat::group::{
    classify_ns_type, lemma_transcendant_report, verify_pair_properties, NsClassification, NsType,
};
use hilblat::k3::{
    extract_surface_isometry, image_of_delta, index_norm_solutions, is_natural_on_lattice,
    pullback_decomposition,
};
use hilblat::lattice::{isometry_defect, orthogonal_complement, saturate};
use hilblat::{DouadyLattice, Isometry, LatticeError, MarkedClass, SignatureTriple, Sublattice};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{CliError, CliResult};
use crate::report::{Report, Value};
use crate::workspace::{NamedLattice, Workspace};

fn fraction(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn definiteness(sig: SignatureTriple) -> &'static str {
    let rank = sig.rank();
    if rank == 0 {
        "empty"
    } else if sig.zero > 0 {
        "degenerate"
    } else if sig.pos == rank {
        "positive definite"
    } else if sig.neg == rank {
        "negative definite"
    } else {
        "indefinite"
    }
}

fn douady_fields(r: &mut Report, d: &DouadyLattice) {
    r.field("n", Value::Int(BigInt::from(d.n())));
    r.field("marked coordinate", Value::Count(d.delta_index()));
    r.field(
        "marked class",
        Value::text(match d.marked_class() {
            MarkedClass::Delta => "delta",
            MarkedClass::Exceptional => "e",
        }),
    );
    let qe = BigRational::from_integer(d.e_norm());
    r.field("q(e)", Value::text(fraction(&qe)));
    r.field("q(delta)", Value::text(fraction(&(qe / BigInt::from(4)))));
}

pub fn signature(ws: &Workspace, name: &str) -> CliResult<Report> {
    let l = ws.lattice(name)?;
    Ok(signature_report(&l))
}

fn signature_report(l: &NamedLattice) -> Report {
    let mut r = Report::new();
    r.field("lattice", Value::text(&l.name))
        .field("rank", Value::Count(l.lattice.rank()))
        .field("signature", Value::signature(l.lattice.signature()))
        .field("discriminant", Value::Int(l.lattice.discriminant()))
        .field(
            "parity",
            Value::text(if l.lattice.is_even() { "even" } else { "odd" }),
        );
    if let Some(d) = &l.douady {
        douady_fields(&mut r, d);
    }
    r
}

fn sublattice_block(s: &Sublattice) -> Report {
    let mut r = Report::new();
    let sig = s.signature();
    r.field("rank", Value::Count(s.rank()))
        .field("basis", Value::columns(s.basis()))
        .field("determinant", Value::Int(s.determinant()))
        .field("signature", Value::signature(sig))
        .field("definiteness", Value::text(definiteness(sig)));
    r
}

pub fn complement(ws: &Workspace, name: &str) -> CliResult<Report> {
    let (l, s) = ws.sublattice(name)?;
    let c = orthogonal_complement(&l.lattice, &s)?;
    let sat = saturate(&l.lattice, &s)?;
    let mut r = Report::new();
    r.field("sublattice", Value::text(name))
        .field("lattice", Value::text(&l.name))
        .section("S", sublattice_block(&s))
        .field("saturated", Value::Flag(s.is_saturated()))
        .field("saturation index", Value::Int(s.saturation_index()))
        .field("saturation basis", Value::columns(sat.basis()))
        .section("complement", sublattice_block(&c));
    if l.lattice.is_nondegenerate() {
        let cc = orthogonal_complement(&l.lattice, &c)?;
        r.field(
            "double complement is saturation",
            Value::Flag(cc.basis() == sat.basis()),
        );
    }
    Ok(r)
}

pub fn isometry_check(ws: &Workspace, name: &str) -> CliResult<Report> {
    let (l, m) = ws.isometry_matrix(name)?;
    let violation = isometry_defect(&l.lattice, &m)?;
    let det = m.determinant()?;
    let unimodular = det == BigInt::from(1) || det == BigInt::from(-1);
    let mut r = Report::new();
    r.field("isometry", Value::text(name))
        .field("lattice", Value::text(&l.name))
        .field("determinant", Value::Int(det))
        .field(
            "is isometry",
            Value::Flag(violation.is_none() && unimodular),
        )
        .field(
            "first violated relation",
            Value::text(violation.map_or_else(|| "none".to_string(), |v| v.to_string())),
        );
    Ok(r)
}

/// The Douady lattice and a validated isometry of it.
fn douady_isometry(
    ws: &Workspace,
    douady: &str,
    name: &str,
) -> CliResult<(NamedLattice, DouadyLattice, Isometry)> {
    let (dl, d) = ws.douady(douady)?;
    let (fl, f) = ws.isometry(name)?;
    if !fl.lattice.same_form(d.full()) {
        return Err(CliError::input(format!(
            "isometry \"{name}\" acts on \"{}\", not on \"{douady}\"",
            fl.name
        )));
    }
    Ok((dl, d, f))
}

pub fn index(ws: &Workspace, douady: &str, name: &str) -> CliResult<Report> {
    let (_, d, f) = douady_isometry(ws, douady, name)?;
    Ok(index_report(&d, &f)?)
}

fn index_report(d: &DouadyLattice, f: &Isometry) -> hilblat::Result<Report> {
    let dec = pullback_decomposition(d, f)?;
    let fe = f.apply(&d.e_class())?;
    let mut r = Report::new();
    r.equation("lambda", Value::text(dec.lambda.to_string()))
        .headline("decomposition", "f(e) = lambda*e + iota(d)")
        .field("d", Value::vector(&dec.d))
        .field("f(e)", Value::vector(&fe));
    Ok(r)
}

pub fn natural_check(ws: &Workspace, douady: &str, name: &str) -> CliResult<Report> {
    let (_, d, f) = douady_isometry(ws, douady, name)?;
    Ok(natural_report(&d, &f)?)
}

fn natural_report(d: &DouadyLattice, f: &Isometry) -> hilblat::Result<Report> {
    let mut r = Report::new();
    if is_natural_on_lattice(d, f)? {
        let phi = extract_surface_isometry(d, f)?;
        r.headline("verdict", "NATURAL")
            .field("surface block", Value::rows(phi.matrix()));
    } else {
        let image: Vec<String> = image_of_delta(d, f)?.iter().map(fraction).collect();
        r.headline("verdict", "NOT-NATURAL")
            .field("f(delta)", Value::Tuple(image));
    }
    Ok(r)
}

pub fn invariant(ws: &Workspace, name: &str) -> CliResult<Report> {
    let (l, g) = ws.group(name)?;
    let pair = verify_pair_properties(&g)?;
    let mut checks = Report::new();
    checks
        .field(
            "trivial intersection",
            Value::Flag(pair.trivial_intersection),
        )
        .field(
            "Tr_G nondegenerate",
            Value::Flag(pair.invariant_nondegenerate),
        )
        .field(
            "Ss_G nondegenerate",
            Value::Flag(pair.coinvariant_nondegenerate),
        )
        .field("all hold", Value::Flag(pair.all_hold()));
    let mut r = Report::new();
    r.field("group", Value::text(name))
        .field("lattice", Value::text(&l.name))
        .field("order", Value::Count(g.order()))
        .section("Tr_G", sublattice_block(&pair.invariant))
        .section("Ss_G", sublattice_block(&pair.coinvariant))
        .section("checks", checks);
    Ok(r)
}

fn classification_fields(r: &mut Report, c: &NsClassification) {
    r.field("type", Value::text(c.ns_type.to_string()))
        .field("NS signature", Value::signature(c.ns_signature))
        .field("Tr signature", Value::signature(c.tr_signature))
        .field(
            "expected Tr signature",
            c.expected_tr_signature
                .map_or_else(|| Value::text("none"), Value::signature),
        )
        .field(
            "Tr pattern",
            Value::text(if c.tr_pattern_matches() {
                "matches"
            } else {
                "mismatch"
            }),
        );
}

pub fn classify(ws: &Workspace, lattice: &str, sublattice: Option<&str>) -> CliResult<Report> {
    let l = ws.lattice(lattice)?;
    let mut r = Report::new();
    r.field("lattice", Value::text(&l.name));
    match sublattice {
        None => {
            let sig = l.lattice.signature();
            let ty = NsType::from_signature(sig).ok_or(LatticeError::UnknownNsType(sig))?;
            r.field("type", Value::text(ty.to_string()))
                .field("NS signature", Value::signature(sig));
        }
        Some(name) => {
            let (sl, s) = ws.sublattice(name)?;
            if !sl.lattice.same_form(&l.lattice) {
                return Err(CliError::input(format!(
                    "sublattice \"{name}\" lives in \"{}\", not \"{lattice}\"",
                    sl.name
                )));
            }
            let c = classify_ns_type(&l.lattice, &s)?;
            r.field("sublattice", Value::text(name));
            classification_fields(&mut r, &c);
        }
    }
    Ok(r)
}

pub fn solve_index(n: i64, d2: i64, bound: u64) -> CliResult<Report> {
    let sols = index_norm_solutions(n, d2, bound)?;
    let pairs = sols
        .iter()
        .map(|(l, m)| Value::Tuple(vec![l.to_string(), m.to_string()]))
        .collect();
    let mut r = Report::new();
    r.field("n", Value::Int(n.into()))
        .field("d2", Value::Int(d2.into()))
        .field("bound", Value::Int(bound.into()))
        .field(
            "equation",
            Value::text(format!(
                "{} = {}*lambda^2 + {}*mu^2",
                -8 * (n - 1),
                -8 * (n - 1),
                d2
            )),
        )
        .field("solutions", Value::Count(sols.len()))
        .field("pairs", Value::List(pairs));
    Ok(r)
}

fn transcendental(ws: &Workspace, group: &str, ns: &str) -> CliResult<Report> {
    let (gl, g) = ws.group(group)?;
    let d = gl.douady.as_ref().ok_or_else(|| {
        CliError::input(format!(
            "group \"{group}\" does not act on a Douady lattice"
        ))
    })?;
    let (_, s) = ws.sublattice(ns)?;
    let rep = lemma_transcendant_report(d, &g, &s)?;
    let mut r = Report::new();
    r.field("NS", Value::text(ns));
    classification_fields(&mut r, &rep.classification);
    r.field(
        "G acts trivially on Tr",
        Value::Flag(rep.acts_trivially_on_transcendental),
    )
    .field("Tr in Tr_G", Value::Flag(rep.transcendental_in_invariant))
    .field("Ss_G in NS", Value::Flag(rep.coinvariant_in_ns))
    .field(
        "Ss_G negative definite",
        rep.coinvariant_negative_definite
            .map_or_else(|| Value::text("not checked"), Value::Flag),
    )
    .field(
        "Ss_G signature",
        Value::signature(rep.coinvariant_signature),
    )
    .field("all hold", Value::Flag(rep.all_hold()));
    Ok(r)
}

/// The nested report, or a single `error` line.
fn or_error(r: CliResult<Report>) -> Report {
    r.unwrap_or_else(|e| {
        let mut r = Report::new();
        r.field("error", Value::text(e.to_string()));
        r
    })
}

/// Every check that applies to each entry of the workspace, in name order.
pub fn report(ws: &Workspace) -> Report {
    let mut lattices = Report::new();
    for name in ws.lattice_names() {
        let r = signature(ws, &name).map(|mut r| {
            let sig = ws.lattice(&name).map(|l| l.lattice.signature()).ok();
            let ty = sig.and_then(NsType::from_signature);
            r.field(
                "NS type",
                Value::text(ty.map_or_else(|| "none".to_string(), |t| t.to_string())),
            );
            r
        });
        lattices.named(&name, or_error(r));
    }

    let mut vectors = Report::new();
    for name in ws.vector_names() {
        let v = ws.vector(&name).and_then(|(l, v)| {
            let mut r = Report::new();
            r.field("lattice", Value::text(&l.name))
                .field("coords", Value::vector(&v))
                .field("norm", Value::Int(l.lattice.norm(&v)?));
            Ok(r)
        });
        vectors.named(&name, or_error(v));
    }

    let mut sublattices = Report::new();
    for name in ws.sublattice_names() {
        let mut r = or_error(complement(ws, &name));
        if let Ok((l, _)) = ws.sublattice(&name) {
            r.section(
                "classification",
                or_error(classify(ws, &l.name, Some(&name))),
            );
        }
        sublattices.named(&name, r);
    }

    let mut isometries = Report::new();
    for name in ws.isometry_names() {
        let mut r = or_error(isometry_check(ws, &name));
        if let Ok((l, f)) = ws.isometry(&name) {
            if let Some(d) = &l.douady {
                r.section(
                    "index",
                    or_error(index_report(d, &f).map_err(CliError::from)),
                );
                r.section(
                    "naturality",
                    or_error(natural_report(d, &f).map_err(CliError::from)),
                );
            }
        }
        isometries.named(&name, r);
    }

    let mut groups = Report::new();
    for name in ws.group_names() {
        let mut r = or_error(invariant(ws, &name));
        if let Ok(Some(ns)) = ws.group_ns(&name) {
            r.section("transcendental", or_error(transcendental(ws, &name, &ns)));
        }
        groups.named(&name, r);
    }

    let mut r = Report::new();
    r.section("lattices", lattices)
        .section("vectors", vectors)
        .section("sublattices", sublattices)
        .section("isometries", isometries)
        .section("groups", groups);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beauville() -> Workspace {
        Workspace::parse(
            r#"{
              "lattices": {"NS": {"gram": [[4, 0], [0, -8]], "exceptional": {"coordinate": 1, "class": "e"}}},
              "isometries": {
                "i": {"lattice": "NS", "matrix": [[3, 4], [-2, -3]]},
                "bad": {"lattice": "NS", "matrix": [[1, 1], [0, 1]]}
              }
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn signature_of_builtins() {
        let ws = Workspace::empty();
        let text = signature(&ws, "K3").unwrap().render_text();
        assert!(text.contains("signature: (3, 0, 19)\n"));
        assert!(text.contains("discriminant: -1\n"));
        let text = signature(&ws, "DOUADY(2)").unwrap().render_text();
        assert!(text.contains("signature: (3, 0, 20)\n"));
        assert!(text.contains("q(delta): -2\n"));
    }

    #[test]
    fn beauville_index_and_naturality() {
        let ws = beauville();
        let text = index(&ws, "NS", "i").unwrap().render_text();
        assert!(text.starts_with("lambda = -3\n"), "{text}");
        assert!(text.contains("d: (4)\n"));
        let text = natural_check(&ws, "NS", "i").unwrap().render_text();
        assert_eq!(text, "NOT-NATURAL\nf(delta): (2, -3/2)\n");
        let err = index(&ws, "NS", "bad").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("expected"));
    }

    #[test]
    fn isometry_check_lists_violation() {
        let ws = beauville();
        let text = isometry_check(&ws, "bad").unwrap().render_text();
        assert!(text.contains("is isometry: false\n"));
        assert!(
            text.contains("first violated relation: (M^T G M)[0][1]"),
            "{text}"
        );
    }

    #[test]
    fn solve_index_lists_ten_pairs() {
        let r = solve_index(2, 4, 30).unwrap();
        let text = r.render_text();
        assert!(text.contains("solutions: 10\n"));
        assert!(text.contains("  - (-17, -24)\n"));
        assert_eq!(solve_index(2, 4, 0).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn classify_fixtures() {
        let ws = Workspace::parse(
            r#"{"lattices": {"H": {"gram": [[4, 0], [0, -2]]}, "P": {"gram": [[0]]}, "E": {"gram": [[-2]]}}}"#,
        )
        .unwrap();
        for (name, ty) in [("H", "Hyperbolic"), ("P", "Parabolic"), ("E", "Elliptic")] {
            let text = classify(&ws, name, None).unwrap().render_text();
            assert!(text.contains(&format!("type: {ty}\n")), "{text}");
        }
    }
}
