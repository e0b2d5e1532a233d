//! Plain-text serialization: point-set files (read/write), witness sidecar
//! and sextic coefficient files (write-only reports).
//!
//! Point-set format, one token stream per line:
//!   # comment
//!   field p=32003        (or: field rational)
//!   ambient n=3
//!   point 1 2 4 8
//! Coordinates are integers: reduced residues over F_p, a primitive vector
//! with positive leading entry over Q. Saving a loaded file reproduces it
//! byte for byte once the points are in canonical form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt::Write as _;

use crate::classify::ComponentWitness;
use crate::error::Error;
use crate::geometry::{Form, PointSet, ProjPoint};
use crate::scalar::{FieldSpec, Scalar};

/// Canonical text for one point set.
pub fn render_point_set(ps: &PointSet) -> String {
    let mut out = String::new();
    match ps.field() {
        FieldSpec::Prime(p) => writeln!(out, "field p={p}").unwrap(),
        FieldSpec::Rationals => writeln!(out, "field rational").unwrap(),
    }
    writeln!(out, "ambient n={}", ps.ambient_dim()).unwrap();
    for pt in ps.points() {
        out.push_str("point");
        for c in integer_coords(pt) {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Integer coordinate vector of a point: residues over F_p; over Q the
/// primitive integer vector with positive leading entry.
fn integer_coords(pt: &ProjPoint) -> Vec<BigInt> {
    match pt.field() {
        FieldSpec::Prime(_) => pt
            .coords()
            .iter()
            .map(|c| match c {
                Scalar::Fp(v) => BigInt::from(*v),
                Scalar::Rat(_) => unreachable!("field owns its scalars"),
            })
            .collect(),
        FieldSpec::Rationals => {
            let rats: Vec<_> = pt
                .coords()
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => r.clone(),
                    Scalar::Fp(_) => unreachable!("field owns its scalars"),
                })
                .collect();
            let lcm = rats
                .iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            let ints: Vec<BigInt> =
                rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
            let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            // A projective point has a nonzero coordinate, so gcd > 0; the
            // leading nonzero is +1 before scaling, hence positive after.
            ints.into_iter().map(|v| v / &gcd).collect()
        }
    }
}

pub fn parse_point_set(text: &str) -> Result<PointSet, Error> {
    let mut field: Option<FieldSpec> = None;
    let mut ambient: Option<usize> = None;
    let mut points: Vec<ProjPoint> = Vec::new();
    let mut point_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().expect("nonempty line has a token");
        match head {
            "field" => {
                if field.is_some() {
                    return Err(Error::Parse { line: lineno, msg: "repeated field line".into() });
                }
                if !points.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header after the first point".into(),
                    });
                }
                let spec = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected `p=<prime>` or `rational`".into(),
                })?;
                field = Some(parse_field(lineno, spec)?);
            }
            "ambient" => {
                if ambient.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "repeated ambient line".into(),
                    });
                }
                if !points.is_empty() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header after the first point".into(),
                    });
                }
                let spec = tokens.next().ok_or_else(|| Error::Parse {
                    line: lineno,
                    msg: "expected `n=2` or `n=3`".into(),
                })?;
                let n: usize = spec
                    .strip_prefix("n=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        msg: format!("bad ambient `{spec}`, expected `n=2` or `n=3`"),
                    })?;
                if n != 2 && n != 3 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("ambient n={n} unsupported, expected 2 or 3"),
                    });
                }
                ambient = Some(n);
            }
            "point" => {
                let (Some(f), Some(n)) = (field, ambient) else {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "point before field/ambient headers".into(),
                    });
                };
                let coords: Vec<i64> = tokens
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad integer coordinate `{t}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?;
                if coords.len() != n + 1 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected {} coordinates, got {}", n + 1, coords.len()),
                    });
                }
                let pt = ProjPoint::from_ints(f, &coords).map_err(|e| Error::Parse {
                    line: lineno,
                    msg: e.to_string(),
                })?;
                if let Some(first) = points.iter().position(|q| *q == pt) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!(
                            "duplicate point, same as line {}",
                            point_lines[first]
                        ),
                    });
                }
                points.push(pt);
                point_lines.push(lineno);
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }
    let last = text.lines().count();
    let field = field.ok_or(Error::Parse { line: last, msg: "missing field header".into() })?;
    let ambient =
        ambient.ok_or(Error::Parse { line: last, msg: "missing ambient header".into() })?;
    PointSet::new(field, ambient, points)
}

fn parse_field(lineno: usize, spec: &str) -> Result<FieldSpec, Error> {
    if spec == "rational" {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = spec
        .strip_prefix("p=")
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse {
            line: lineno,
            msg: format!("bad field `{spec}`, expected `p=<prime>` or `rational`"),
        })?;
    FieldSpec::prime(p).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })
}

fn render_indices(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn render_form_coeffs(form: &Form) -> String {
    form.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Human-auditable sidecar: the case generated, the empirical CB(5)
/// verdict, and one line per component witness.
pub fn render_witness_sidecar(
    case_name: &str,
    cb5_satisfied: bool,
    witnesses: &[ComponentWitness],
) -> String {
    let mut out = String::new();
    writeln!(out, "case {case_name}").unwrap();
    writeln!(out, "cb5 {cb5_satisfied}").unwrap();
    for w in witnesses {
        match w {
            ComponentWitness::RationalCubicSignature { covered, profile } => {
                writeln!(
                    out,
                    "witness rational-cubic-signature covered {} profile {}",
                    render_indices(covered),
                    render_indices(profile),
                )
                .unwrap();
            }
            ComponentWitness::Line { covered, spanning } => {
                writeln!(
                    out,
                    "witness line covered {} spanning {},{}",
                    render_indices(covered),
                    spanning[0],
                    spanning[1],
                )
                .unwrap();
            }
            ComponentWitness::Plane { covered, spanning } => {
                writeln!(
                    out,
                    "witness plane covered {} spanning {},{},{}",
                    render_indices(covered),
                    spanning[0],
                    spanning[1],
                    spanning[2],
                )
                .unwrap();
            }
            ComponentWitness::PlaneConic { covered, plane, form } => {
                writeln!(
                    out,
                    "witness plane-conic covered {}{} form {}",
                    render_indices(covered),
                    render_plane(plane),
                    render_form_coeffs(form),
                )
                .unwrap();
            }
            ComponentWitness::PlaneCubic { covered, plane, form } => {
                writeln!(
                    out,
                    "witness plane-cubic covered {}{} form {}",
                    render_indices(covered),
                    render_plane(plane),
                    render_form_coeffs(form),
                )
                .unwrap();
            }
        }
    }
    out
}

fn render_plane(plane: &Option<[usize; 3]>) -> String {
    match plane {
        Some(t) => format!(" plane {},{},{}", t[0], t[1], t[2]),
        None => String::new(),
    }
}

/// Coefficient file for one form, in the crate's monomial order.
pub fn render_form(form: &Form) -> String {
    let field = match form.field() {
        FieldSpec::Prime(p) => format!("p={p}"),
        FieldSpec::Rationals => "rational".into(),
    };
    format!(
        "form degree={} ambient=n{} field={}\ncoeffs {}\n",
        form.degree(),
        form.ambient_dim(),
        field,
        render_form_coeffs(form),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn f() -> FieldSpec {
        FieldSpec::default_prime()
    }

    #[test]
    fn round_trips() {
        let pts = vec![
            ProjPoint::from_ints(f(), &[1, 2, 4, 8]).unwrap(),
            ProjPoint::from_ints(f(), &[1, 3, 9, 27]).unwrap(),
            ProjPoint::from_ints(f(), &[0, 0, 1, 5]).unwrap(),
        ];
        let ps = PointSet::new(f(), 3, pts).unwrap();
        let text = render_point_set(&ps);
        assert_eq!(text, "field p=32003\nambient n=3\npoint 1 2 4 8\npoint 1 3 9 27\npoint 0 0 1 5\n");
        let loaded = parse_point_set(&text).unwrap();
        assert_eq!(loaded, ps);
        // canonical text is a fixed point of save(load(.))
        assert_eq!(render_point_set(&loaded), text);
    }

    #[test]
    fn non_canonical_input_normalizes() {
        // scaled and negative representatives of the same points
        let text = "# scaled representatives\nfield p=31\nambient n=2\npoint 2 4 8\npoint -1 -3 -9\n";
        let ps = parse_point_set(text).unwrap();
        assert_eq!(render_point_set(&ps), "field p=31\nambient n=2\npoint 1 2 4\npoint 1 3 9\n");
    }

    #[test]
    fn rational_coordinates_become_primitive_vectors() {
        let field = FieldSpec::Rationals;
        let half = Scalar::Rat(Rational::new(BigInt::from(1), BigInt::from(2)).unwrap());
        let third = Scalar::Rat(Rational::new(BigInt::from(-1), BigInt::from(3)).unwrap());
        let p = ProjPoint::new(field, vec![field.one(), half, third, field.zero()]).unwrap();
        let ps = PointSet::new(field, 3, vec![p]).unwrap();
        let text = render_point_set(&ps);
        assert_eq!(text, "field rational\nambient n=3\npoint 6 3 -2 0\n");
        assert_eq!(parse_point_set(&text).unwrap(), ps);
    }

    #[test]
    fn duplicate_points_name_the_offending_lines() {
        let text = "field p=31\nambient n=2\npoint 1 2 3\npoint 2 4 6\n";
        match parse_point_set(text) {
            Err(Error::Parse { line: 4, msg }) => assert!(msg.contains("line 3"), "{msg}"),
            other => panic!("expected duplicate rejection, got {other:?}"),
        }
    }

    #[test]
    fn malformed_inputs_are_rejected_with_line_numbers() {
        let cases: &[(&str, usize)] = &[
            ("field p=15\nambient n=3\n", 1),                      // not prime
            ("field p=31\nambient n=4\n", 2),                      // bad ambient
            ("field p=31\nambient n=3\npoint 1 2 3\n", 3),         // wrong arity
            ("field p=31\nambient n=2\npoint 0 0 0\n", 3),         // zero vector
            ("field p=31\nambient n=2\npoint 1 x 3\n", 3),         // bad token
            ("field p=31\nambient n=2\nvertex 1 2 3\n", 3),        // unknown directive
            ("ambient n=2\npoint 1 2 3\n", 2),                     // missing field header
            ("field p=31\nfield p=31\nambient n=2\n", 2),          // repeated header
        ];
        for (text, want_line) in cases {
            match parse_point_set(text) {
                Err(Error::Parse { line, .. }) => {
                    assert_eq!(line, *want_line, "wrong line for {text:?}")
                }
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn sidecar_and_form_rendering_are_stable() {
        let w = vec![
            ComponentWitness::RationalCubicSignature {
                covered: vec![0, 1, 2],
                profile: vec![4, 7],
            },
            ComponentWitness::Line { covered: vec![3, 4], spanning: [3, 4] },
        ];
        let text = render_witness_sidecar("case-i", false, &w);
        assert_eq!(
            text,
            "case case-i\ncb5 false\n\
             witness rational-cubic-signature covered 0,1,2 profile 4,7\n\
             witness line covered 3,4 spanning 3,4\n"
        );

        let form = Form::new(
            f(),
            2,
            1,
            vec![f().from_i64(1), f().from_i64(0), f().from_i64(5)],
        )
        .unwrap();
        assert_eq!(render_form(&form), "form degree=1 ambient=n2 field=p=32003\ncoeffs 1 0 5\n");
    }
}
