use reglab::eisenstein::{coefficient_family, eisenstein_e3a, eisenstein_e3b};
use reglab::exact::{parse_rational, Polynomial, Rational, BASE_VAR};
use reglab::fibration::{
    catalog, catalog_entry, invariants, modular_family, modular_kappa, EllipticFibrationSpec, FibrationError,
};
use reglab::gauss_manin::{
    canonical_extension_basis, connection_matrix, eigenvalues_in_unit_interval, reduction_type, residue_matrix,
    weierstrass_connection, ConnectionMatrix, HyperellipticFamily, ReductionType,
};
use reglab::numeric::{format_scientific, relative_deviation, Precision};
use reglab::periods::{period_table, Method, PeriodTable, PeriodValue};
use reglab::regulator::regulator;
use serde_json::{json, Map, Value};

use crate::output::{to_value, Output};
use crate::{ClassifyArgs, Command, EisensteinArgs, GmArgs, MethodArg, PeriodsArgs, RegulatorArgs, RunConfig, TableMethod};

/// Largest relative deviation accepted between the two period methods.
const CROSS_METHOD_EXP: i32 = 9;

pub fn run(command: &Command, config: &RunConfig) -> Result<Output, String> {
    match command {
        Command::Eisenstein(a) => eisenstein(a),
        Command::Periods(a) => periods(a, config),
        Command::Regulator(a) => regulator_cmd(a, config),
        Command::Classify(a) => classify(a),
        Command::GmConnection(a) => gm_connection(a),
        Command::Families { .. } => Ok(families()),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::from(items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn eisenstein(a: &EisensteinArgs) -> Result<Output, String> {
    let result = match (a.j, a.l) {
        (Some(j), Some(l)) => to_value(&coefficient_family(j, l, a.n).map_err(|e| e.to_string())?),
        (None, None) => {
            if a.n == 0 {
                return Err("--N must be positive".into());
            }
            let e3a = eisenstein_e3a(a.n - 1).series;
            let e3b = eisenstein_e3b(a.n).series;
            json!({
                "terms": a.n,
                "e3a": { "offset": 0, "coefficients": strings((0..a.n as i64).map(|n| e3a.coeff(n).expect("in range"))) },
                "e3b": { "offset": 1, "coefficients": strings((1..=a.n as i64).map(|n| e3b.coeff(n).expect("in range"))) },
            })
        }
        _ => return Err("--j and --l must be given together".into()),
    };
    Ok(Output { command: "eisenstein", result, flags: vec![] })
}

fn table_view(t: &PeriodTable) -> Value {
    let by_index = |values: &[PeriodValue], field: &dyn Fn(&PeriodValue) -> Value| {
        let mut m = Map::new();
        for (n, v) in values.iter().enumerate() {
            m.insert((n + 1).to_string(), field(v));
        }
        Value::Object(m)
    };
    let value = |v: &PeriodValue| to_value(v)["value"].clone();
    let estimate = |v: &PeriodValue| to_value(v)["error_estimate"].clone();
    json!({
        "l": t.l,
        "method": t.method,
        "digits": t.digits,
        "terms": t.terms,
        "I": by_index(&t.i, &value),
        "J": by_index(&t.j, &value),
        "err_estimate": { "I": by_index(&t.i, &estimate), "J": by_index(&t.j, &estimate) },
        "flagged": t.flagged(),
        "quadrature": t.quadrature,
    })
}

fn table_flags(t: &PeriodTable) -> Vec<String> {
    let method = match t.method {
        Method::Series => "series",
        Method::Quadrature => "quadrature",
    };
    if t.flagged() {
        vec![format!("{method} table for l = {} has an error estimate above tolerance", t.l)]
    } else {
        vec![]
    }
}

fn periods(a: &PeriodsArgs, config: &RunConfig) -> Result<Output, String> {
    let prec = Precision::new(config.digits);
    let table = |m: Method| period_table(a.l, m, &prec, config.terms).map_err(|e| e.to_string());
    let (result, flags) = match a.method {
        MethodArg::Series => {
            let t = table(Method::Series)?;
            (table_view(&t), table_flags(&t))
        }
        MethodArg::Quadrature => {
            let t = table(Method::Quadrature)?;
            (table_view(&t), table_flags(&t))
        }
        MethodArg::Both => {
            let s = table(Method::Series)?;
            let q = table(Method::Quadrature)?;
            let worst = s
                .i
                .iter()
                .chain(&s.j)
                .zip(q.i.iter().chain(&q.j))
                .map(|(x, y)| relative_deviation(&y.value, &x.value))
                .fold(prec.float(0), |m, d| if d > m { d } else { m });
            let mut flags = table_flags(&s);
            flags.extend(table_flags(&q));
            if worst > prec.ten_pow_neg(CROSS_METHOD_EXP) {
                flags.push(format!("series and quadrature differ by {}", format_scientific(&worst, 3)));
            }
            let view = json!({
                "l": a.l,
                "series": table_view(&s),
                "quadrature": table_view(&q),
                "max_relative_deviation": format_scientific(&worst, 3),
            });
            (view, flags)
        }
    };
    Ok(Output { command: "periods", result, flags })
}

fn regulator_cmd(a: &RegulatorArgs, config: &RunConfig) -> Result<Output, String> {
    let prec = Precision::new(config.digits);
    let method = match a.method {
        TableMethod::Series => Method::Series,
        TableMethod::Quadrature => Method::Quadrature,
    };
    let r = regulator(a.l, method, &prec, config.terms).map_err(|e| e.to_string())?;
    let mut flags = table_flags(&r.table);
    if r.extrapolated {
        flags.push(format!("normalization for l = {} is extrapolated from l = 5, 7", a.l));
    }
    if !r.nonvanishing {
        flags.push("regulator vanishes at working precision".into());
    }
    if r.route_deviation > prec.ten_pow_neg(reglab::regulator::ROUTE_TOLERANCE_EXP) {
        flags.push(format!("determinant and closed form differ by {}", format_scientific(&r.route_deviation, 3)));
    }
    let report = r.report();
    let mut result = to_value(&report);
    result["periods"] = table_view(&r.table);
    Ok(Output { command: "regulator", result, flags })
}

fn parse_poly(text: &str, what: &str) -> Result<Polynomial<Rational>, String> {
    Polynomial::parse_coeffs(BASE_VAR, text).ok_or_else(|| format!("cannot parse {what} = {text:?}"))
}

fn parse_q(text: &str, what: &str) -> Result<Rational, String> {
    parse_rational(text).ok_or_else(|| format!("cannot parse {what} = {text:?}"))
}

fn classify(a: &ClassifyArgs) -> Result<Output, String> {
    let (g2, g3, default_kappa) = match a.family.as_str() {
        "modular" => {
            let (g2, g3) = modular_family();
            (g2, g3, modular_kappa())
        }
        "custom" => {
            let (Some(g2), Some(g3)) = (&a.g2, &a.g3) else {
                return Err("--family custom needs --g2 and --g3".into());
            };
            (parse_poly(g2, "g2")?, parse_poly(g3, "g3")?, Rational::from(1))
        }
        label => {
            let e = catalog_entry(label).ok_or_else(|| format!("unknown family {label:?}"))?;
            (e.g2, e.g3, Rational::from(1))
        }
    };
    let kappa = match &a.kappa {
        Some(k) => parse_q(k, "kappa")?,
        None => default_kappa,
    };
    let spec = match EllipticFibrationSpec::new(&g2, &g3, a.l, kappa) {
        Ok(s) => s,
        Err(FibrationError::Violations(v)) => {
            let result = json!({ "family": a.family, "admissible": false, "violations": v });
            let flags = v.iter().map(|v| format!("{:?}: {}", v.condition, v.detail)).collect();
            return Ok(Output { command: "classify", result, flags });
        }
        Err(e) => return Err(e.to_string()),
    };
    let inv = invariants(&spec).map_err(|e| e.to_string())?;
    let fiber = |n: usize| inv.fibers[n].kodaira.tag.to_string();
    let result = json!({
        "family": a.family,
        "admissible": true,
        "spec": spec,
        "h20": inv.h20,
        "b2": inv.b2,
        "fiber_at_0": fiber(0),
        "fiber_at_roots_of_unity": fiber(1),
        "fiber_at_infinity": fiber(2),
        "invariants": inv,
    });
    Ok(Output { command: "classify", result, flags: vec![] })
}

fn residue_entry(g2: &Polynomial<Rational>, g3: &Polynomial<Rational>, conn: &ConnectionMatrix, point: &Rational) -> (Value, Option<String>) {
    let computed = reduction_type(g2, g3, point).and_then(|red| {
        let scaling = canonical_extension_basis(g2, g3, point)?;
        let res = residue_matrix(conn, &scaling)?;
        Ok((red, scaling, res))
    });
    match computed {
        Ok((red, scaling, res)) => {
            let in_unit = eigenvalues_in_unit_interval(&res);
            let nilpotent = res.is_nilpotent();
            let mut flag = None;
            if !in_unit {
                flag = Some(format!("residue eigenvalues at t = {point} leave [0, 1)"));
            }
            if matches!(red, ReductionType::Multiplicative(_)) && !nilpotent {
                flag = Some(format!("multiplicative fibre at t = {point} has a non-nilpotent residue"));
            }
            let value = json!({
                "point": point.to_string(),
                "reduction": red.to_string(),
                "scaling": scaling,
                "residue": res.to_strings(),
                "trace": res.trace().to_string(),
                "det": res.det().to_string(),
                "nilpotent": nilpotent,
                "eigenvalues_in_unit_interval": in_unit,
            });
            (value, flag)
        }
        Err(e) => (json!({ "point": point.to_string(), "error": e.to_string() }), Some(e.to_string())),
    }
}

fn gm_connection(a: &GmArgs) -> Result<Output, String> {
    let mut flags = Vec::new();
    let result = match (&a.g2, &a.g3, &a.f) {
        (Some(g2), Some(g3), None) => {
            let (g2, g3) = (parse_poly(g2, "g2")?, parse_poly(g3, "g3")?);
            let family = HyperellipticFamily::from_weierstrass(&g2, &g3).map_err(|e| e.to_string())?;
            let conn = connection_matrix(&family).map_err(|e| e.to_string())?;
            let closed = weierstrass_connection(&g2, &g3).map_err(|e| e.to_string())?;
            let matches = conn == closed;
            if !matches {
                flags.push("Čech connection differs from the Weierstrass closed form".into());
            }
            let points = if a.at.is_empty() {
                vec![Rational::new(), Rational::from(1)]
            } else {
                a.at.iter().map(|p| parse_q(p, "--at")).collect::<Result<_, _>>()?
            };
            let residues: Vec<Value> = points
                .iter()
                .map(|p| {
                    let (v, flag) = residue_entry(&g2, &g3, &conn, p);
                    flags.extend(flag);
                    v
                })
                .collect();
            json!({
                "f": family.f().to_string(),
                "genus": family.genus(),
                "matrix": conn.to_strings(),
                "trace": conn.trace().to_string(),
                "matches_closed_form": matches,
                "residues": residues,
            })
        }
        (None, None, Some(f)) => {
            let family = HyperellipticFamily::parse(f, a.genus).map_err(|e| e.to_string())?;
            let conn = connection_matrix(&family).map_err(|e| e.to_string())?;
            json!({
                "f": family.f().to_string(),
                "genus": family.genus(),
                "matrix": conn.to_strings(),
                "trace": conn.trace().to_string(),
            })
        }
        _ => return Err("give either --g2 and --g3, or --f".into()),
    };
    Ok(Output { command: "gm-connection", result, flags })
}

fn families() -> Output {
    let (g2, g3) = modular_family();
    let result = json!({
        "catalog": catalog(),
        "modular": {
            "g2": g2.coeff_strings(),
            "g3": g3.coeff_strings(),
            "kappa": modular_kappa().to_string(),
        },
    });
    Output { command: "families", result, flags: vec![] }
}

