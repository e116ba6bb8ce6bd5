use std::sync::Arc;

use qarith_core::arith::{add_apply, successor_power, times_apply, CarryChain, PairState};
use qarith_core::axioms::{axiom_suite, Status};
use qarith_core::operator::{
    add_matrix, add_permutation, check_unitary, conjugate_by, extract_hamiltonian, haar_unitary_seeded,
    projector_matrix, shift_exact, shift_matrix, successor_literal_exact, successor_matrix, successor_matrix_literal,
    successor_permutation, DenseOperator, PermutationDump,
};
use qarith_core::oracle::{oracle_add, oracle_mul};
use qarith_core::phys::{enumerate_maps, map_count, number_of_state, wgd_apply, wgd_inverse_apply};
use qarith_core::resources::{cross_check_strategies, efficiency_report, seeded_states};
use qarith_core::{encode_number, DigitString, LabelSets, MapPair, PhysState, Radix};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{table, CheckLine, Envelope};
use crate::{Cli, Command, Format, OperatorKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] qarith_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) | CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

struct Rendered {
    result: Value,
    checks: Vec<CheckLine>,
    text: String,
    default_format: Format,
}

fn to_value<T: Serialize>(value: &T) -> CliResult<Value> {
    serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn execute(cli: &Cli) -> CliResult<String> {
    let radix = Radix::new(cli.k, cli.len)?;
    let (name, rendered) = match &cli.command {
        Command::Encode(a) => ("encode", encode(radix, a.n, a.digits.as_deref())?),
        Command::Succ(a) => ("succ", succ(radix, a.j, &a.digits, a.times)?),
        Command::Add(a) => ("add", add(radix, &a.left, &a.right)?),
        Command::Mul(a) => ("mul", mul(radix, &a.left, &a.right, a.target.as_deref())?),
        Command::Matrix(a) => ("matrix", matrix(radix, a.op, a.j, a.m, a.permutation)?),
        Command::Map(a) => ("map", map(radix, a)?),
        Command::Hamiltonian(a) => ("hamiltonian", hamiltonian(radix, a.j, a.t, a.conjugate, cli.seed)?),
        Command::Axioms => ("axioms", axioms(radix, cli.seed)?),
        Command::Resources(a) => ("resources", resources(radix, a.verify, cli.seed)?),
        Command::EnumerateMaps(a) => {
            let labels = labels(radix, a.sites.as_deref(), a.states.as_deref())?;
            ("enumerate-maps", enumerate(labels, a.count_only)?)
        }
    };
    match cli.format.unwrap_or(rendered.default_format) {
        Format::Text => Ok(rendered.text),
        Format::Json => {
            let envelope = Envelope {
                command: name,
                k: radix.k(),
                len: radix.len(),
                seed: cli.seed,
                result: rendered.result,
                checks: rendered.checks,
            };
            let mut out = serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Internal(e.to_string()))?;
            out.push('\n');
            Ok(out)
        }
    }
}

fn encode(radix: Radix, n: Option<u64>, digits: Option<&str>) -> CliResult<Rendered> {
    let s = match (n, digits) {
        (Some(n), _) => encode_number(n, radix)?,
        (None, Some(d)) => DigitString::parse(radix, d)?,
        (None, None) => return Err(CliError::Usage("encode needs --n or --digits".into())),
    };
    let round_trip = encode_number(s.value(), radix)? == s;
    let text = match n {
        Some(_) => format!("{s}\n"),
        None => format!("{}\n", s.value()),
    };
    Ok(Rendered {
        result: json!({ "value": s.value(), "digits": s }),
        checks: vec![CheckLine::new("round_trip", round_trip, "decode(encode(n)) = n")],
        text,
        default_format: Format::Text,
    })
}

fn succ(radix: Radix, j: usize, digits: &str, times: u64) -> CliResult<Rendered> {
    let s = DigitString::parse(radix, digits)?;
    let out = successor_power(&CarryChain, j, &s, times)?;
    let mut expected = s.value();
    let weight = radix.weight(j)?;
    for _ in 0..times % radix.modulus() {
        expected = oracle_add(expected, weight, radix)?;
    }
    let ok = out.value() == expected;
    Ok(Rendered {
        result: json!({ "j": j, "times": times, "input": s, "output": out, "value": out.value() }),
        checks: vec![CheckLine::new("oracle", ok, format!("oracle value {expected}"))],
        text: format!("{out}\n"),
        default_format: Format::Text,
    })
}

fn add(radix: Radix, left: &str, right: &str) -> CliResult<Rendered> {
    let pair = PairState::new(DigitString::parse(radix, left)?, DigitString::parse(radix, right)?)?;
    let out = add_apply(&pair)?;
    let expected = oracle_add(pair.left.value(), pair.right.value(), radix)?;
    let ok = out.right.value() == expected && out.left == pair.left;
    Ok(Rendered {
        result: json!({ "left": out.left, "right": out.right, "value": out.right.value() }),
        checks: vec![CheckLine::new("oracle", ok, format!("oracle value {expected}"))],
        text: format!("{}\n", out.right),
        default_format: Format::Text,
    })
}

fn mul(radix: Radix, left: &str, right: &str, target: Option<&str>) -> CliResult<Rendered> {
    let s = DigitString::parse(radix, left)?;
    let w = DigitString::parse(radix, right)?;
    let t = match target {
        Some(t) => DigitString::parse(radix, t)?,
        None => DigitString::zero(radix),
    };
    let out = times_apply(&s, &w, &t)?;
    let expected = oracle_add(t.value(), oracle_mul(s.value(), w.value(), radix)?, radix)?;
    Ok(Rendered {
        result: json!({ "output": out, "value": out.value() }),
        checks: vec![CheckLine::new("oracle", out.value() == expected, format!("oracle value {expected}"))],
        text: format!("{out}\n"),
        default_format: Format::Text,
    })
}

fn render_matrix(op: &DenseOperator) -> String {
    let mut out = String::new();
    for row in op.matrix().row_iter() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| if z.im == 0.0 { format!("{}", z.re) } else { format!("{}{:+}i", z.re, z.im) })
            .collect();
        out += &cells.join(" ");
        out.push('\n');
    }
    out
}

fn matrix(radix: Radix, kind: OperatorKind, j: usize, m: u32, as_permutation: bool) -> CliResult<Rendered> {
    let permutation = match kind {
        OperatorKind::Shift => shift_exact(j, radix)?.as_permutation(),
        OperatorKind::Successor => Some(successor_permutation(j, radix)?),
        OperatorKind::SuccessorLiteral => successor_literal_exact(j, radix)?.as_permutation(),
        OperatorKind::Add => Some(add_permutation(radix)?),
        OperatorKind::Projector => None,
    };
    if as_permutation {
        let p = permutation.ok_or_else(|| CliError::Usage("operator is not a permutation".into()))?;
        let dump = PermutationDump::from(&p);
        let text = p.images().iter().map(usize::to_string).collect::<Vec<_>>().join(",") + "\n";
        return Ok(Rendered {
            result: to_value(&dump)?,
            checks: vec![CheckLine::new("unitary", true, "permutation: residual 0")],
            text,
            default_format: Format::Json,
        });
    }
    let op = match kind {
        OperatorKind::Shift => shift_matrix(j, radix)?,
        OperatorKind::Projector => projector_matrix(m, j, radix)?,
        OperatorKind::Successor => successor_matrix(j, radix)?,
        OperatorKind::SuccessorLiteral => successor_matrix_literal(j, radix)?,
        OperatorKind::Add => add_matrix(radix)?,
    };
    let check = check_unitary(&op);
    let unitary_line = CheckLine::new("unitary", check.unitary, format!("residual {:e}", check.residual));
    Ok(Rendered {
        result: to_value(&op.to_dump())?,
        // projectors are not expected to be unitary
        checks: if kind == OperatorKind::Projector { vec![] } else { vec![unitary_line] },
        text: render_matrix(&op),
        default_format: Format::Json,
    })
}

fn split_list(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).collect()
}

fn parse_indices(what: &str, text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("malformed index list for {what}: {text:?}")))
}

fn labels(radix: Radix, sites: Option<&str>, states: Option<&str>) -> CliResult<Arc<LabelSets>> {
    let default = LabelSets::default_for(radix);
    let sites = sites.map(split_list).unwrap_or_else(|| default.sites().to_vec());
    let states = states.map(split_list).unwrap_or_else(|| default.states().to_vec());
    let labels = LabelSets::new(sites, states)?;
    if labels.radix() != radix {
        return Err(CliError::Usage(format!("label sets describe {} but --k/--L give {radix}", labels.radix())));
    }
    Ok(Arc::new(labels))
}

fn map(radix: Radix, a: &crate::MapArgs) -> CliResult<Rendered> {
    let labels = labels(radix, a.sites.as_deref(), a.states.as_deref())?;
    let g = match &a.g {
        Some(g) => parse_indices("g", g)?,
        None => (0..radix.len()).collect(),
    };
    let d = match &a.d {
        Some(d) => parse_indices("d", d)?,
        None => (0..radix.k() as usize).collect(),
    };
    let maps = MapPair::new(labels.clone(), g, d)?;
    let (s, t) = match (&a.digits, &a.assignment) {
        (Some(digits), _) => {
            let s = DigitString::parse(radix, digits)?;
            let t = wgd_apply(&maps, &s)?;
            (s, t)
        }
        (None, Some(assignment)) => {
            let pairs = assignment
                .split(',')
                .map(|p| p.split_once('=').map(|(x, y)| (x.trim(), y.trim())))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::Usage(format!("malformed assignment {assignment:?}")))?;
            let t = PhysState::from_labels(labels.clone(), pairs)?;
            (wgd_inverse_apply(&maps, &t)?, t)
        }
        (None, None) => return Err(CliError::Usage("map needs --digits or --assignment".into())),
    };
    let number = number_of_state(&maps, &t)?;
    let round_trip = wgd_inverse_apply(&maps, &wgd_apply(&maps, &s)?)? == s;
    let text_assignment: Vec<String> =
        labels.sites().iter().enumerate().map(|(i, site)| format!("{site}={}", t.state_at(i))).collect();
    Ok(Rendered {
        result: json!({ "maps": maps, "digits": s, "state": t, "number": number }),
        checks: vec![CheckLine::new("round_trip", round_trip, "W†W = 1 on this state")],
        text: format!("{}\n{number}\n", text_assignment.join(",")),
        default_format: Format::Json,
    })
}

fn hamiltonian(radix: Radix, j: usize, t: f64, conjugate: bool, seed: u64) -> CliResult<Rendered> {
    let mut op = successor_matrix(j, radix)?;
    if conjugate {
        op = conjugate_by(&op, &haar_unitary_seeded(op.dim(), seed)?)?;
    }
    let h = extract_hamiltonian(&op, t)?;
    let hermitian = h.hermiticity_residual();
    let round_trip = h.evolve().distance(&op);
    let checks = vec![
        CheckLine::new("hermitian", hermitian <= 1e-10, format!("max |H - H†| = {hermitian:e}")),
        CheckLine::new("round_trip", round_trip <= 1e-9, format!("‖exp(-iHt) - V‖_F = {round_trip:e}")),
    ];
    let text = format!(
        "j = {j}, t = {t}, dim = {}\nhermiticity residual {hermitian:e}\nround-trip residual {round_trip:e}\n",
        h.dim()
    );
    Ok(Rendered {
        result: json!({
            "j": j,
            "t": t,
            "conjugated": conjugate,
            "dim": h.dim(),
            "hermiticity_residual": hermitian,
            "round_trip_residual": round_trip,
            "hamiltonian": h.to_dump(),
        }),
        checks,
        text,
        default_format: Format::Json,
    })
}

fn axioms(radix: Radix, seed: u64) -> CliResult<Rendered> {
    let report = axiom_suite(radix, seed)?;
    let checks = report
        .checks
        .iter()
        .map(|c| {
            let detail = match &c.counterexample {
                Some(ce) => {
                    let elements: Vec<String> = ce.iter().map(|s| format!("({s})")).collect();
                    format!("{}; counterexample {}", c.detail, elements.join(" "))
                }
                None => c.detail.clone(),
            };
            CheckLine::new(c.name, c.status == Status::Pass, detail)
        })
        .collect::<Vec<_>>();
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.name.clone(), c.status.to_string(), c.detail.clone()])
        .collect();
    Ok(Rendered {
        result: to_value(&report)?,
        text: table(&["check", "status", "detail"], &rows),
        checks,
        default_format: Format::Json,
    })
}

fn resources(radix: Radix, verify: usize, seed: u64) -> CliResult<Rendered> {
    let rows = efficiency_report(radix)?;
    let mut checks = Vec::new();
    if verify > 0 {
        let states = seeded_states(radix, verify, seed)?;
        for row in &rows {
            let check = cross_check_strategies(row.j, &states)?;
            checks.push(CheckLine::new(
                format!("strategies_agree_j{}", row.j),
                check.agreed == check.states,
                format!(
                    "{}/{} states agree; {} applications of V_1 per state",
                    check.agreed, check.states, check.iterated_applications
                ),
            ));
        }
    }
    let table_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.j.to_string(),
                r.direct.to_string(),
                r.iterated.to_string(),
                format!("{}/{}", r.ratio.numer(), r.ratio.denom()),
                r.verdict.to_string(),
            ]
        })
        .collect();
    let mut text = table(&["j", "direct", "iterated", "ratio", "verdict"], &table_rows);
    for c in &checks {
        text += &format!("{}: {} ({})\n", c.name, c.status, c.detail);
    }
    Ok(Rendered { result: to_value(&rows)?, checks, text, default_format: Format::Text })
}

fn enumerate(labels: Arc<LabelSets>, count_only: bool) -> CliResult<Rendered> {
    let count = map_count(&labels);
    if count_only {
        let enumerated = enumerate_maps(labels)?.count() as u64;
        return Ok(Rendered {
            result: json!({ "count": enumerated }),
            checks: vec![CheckLine::new("count", enumerated == count, format!("L!·k! = {count}"))],
            text: format!("{enumerated}\n"),
            default_format: Format::Text,
        });
    }
    let maps: Vec<MapPair> = enumerate_maps(labels)?.collect();
    let text: String = maps.iter().map(|m| format!("g={:?} d={:?}\n", m.g(), m.d())).collect();
    Ok(Rendered {
        checks: vec![CheckLine::new("count", maps.len() as u64 == count, format!("L!·k! = {count}"))],
        result: json!({ "count": maps.len(), "maps": maps }),
        text,
        default_format: Format::Json,
    })
}
