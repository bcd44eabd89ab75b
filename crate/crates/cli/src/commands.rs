use rayon::prelude::*;
use serde_json::{json, Value};

use dp1_core::coords::{confinement_signature, from_sfu, to_sfu, SfuState};
use dp1_core::diagnostics::export::{log_distance_table, orbit_table, series_table, CsvTable, DecimalRepr, RunMetadata};
use dp1_core::diagnostics::{
    freud_orbit, iterate_orbit, log_distance, lq_orbit, secant_slope, track_alpha_points, turnaround_index, Orbit,
    OrbitSource, TrackSide,
};
use dp1_core::expansions::{invariant_curve, invariant_curve_at, u_asymptotic, x_asymptotic, Branch, Side};
use dp1_core::lewquarles::{freud_init_from_moments, moments};
use dp1_core::maps::{alpha_dp1_step, qrt_invariant, AutonomousParams, PlaneState, StepIndex};
use dp1_core::numerics::{parse_rational, Real, Scalar};
use dp1_core::{BigReal, Params, Rational};

use crate::config::{AsymOp, BranchArg, Command, CoordsOp, ModelArgs, OutputArgs, SideArg, TrackArg};
use crate::output::{emit, emit_with, exact};
use crate::CliError;

fn big(s: &str, p: &Params) -> Result<BigReal, CliError> {
    Ok(p.real(&parse_rational(s)?))
}

fn meta(name: &str, cmd: &Command, p: Option<&Params>) -> RunMetadata {
    let config = serde_json::to_value(cmd).expect("config always serializes");
    RunMetadata::new(name, config, p.map(Params::to_record))
}

fn side(s: SideArg) -> Side {
    match s {
        SideArg::Pinf => Side::PInf,
        SideArg::Pminf => Side::PMinf,
    }
}

/// Writes the orbit, then reports singular steps as a numeric failure.
fn emit_orbit(name: &str, cmd: &Command, orbit: &Orbit<BigReal>, output: &OutputArgs) -> Result<(), CliError> {
    let m = meta(name, cmd, Some(&orbit.params)).with_orbit(orbit);
    emit(&orbit_table(orbit), &m, output)?;
    match orbit.events.first() {
        Some(e) => Err(CliError::Numeric(format!(
            "{:?} iteration hit the singular axis at n = {}; output is partial",
            e.direction, e.n
        ))),
        None => Ok(()),
    }
}

pub fn run(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Freud { model, n_min, n_max, output } => {
            let p = model.params()?;
            let orbit = freud_orbit(*n_min, *n_max, &p)?;
            emit_orbit("freud", cmd, &orbit, output)
        }
        Command::Lq { model, xi0, n_min, n_max, output } => {
            let p = model.params()?;
            let orbit = lq_orbit(&big(xi0, &p)?, *n_min, *n_max, &p)?;
            emit_orbit("lq", cmd, &orbit, output)
        }
        Command::Orbit { model, x, y, n_start, n_min, n_max, output } => {
            let p = model.params()?;
            let seed = PlaneState::new(big(x, &p)?, big(y, &p)?);
            let source = OrbitSource::Polar { x1: x.clone(), y1: y.clone() };
            let orbit = iterate_orbit(&seed, *n_start, n_min.unwrap_or(*n_start), *n_max, &p, source, Some(p.precision_bits))?;
            emit_orbit("orbit", cmd, &orbit, output)
        }
        Command::Coords { op } => coords(cmd, op),
        Command::Series { side: s, order, symbolic, model, output } => {
            let p = model.params()?;
            let (sd, fd) = invariant_curve(side(*s), *order)?;
            let mut table = CsvTable::new(&["power", "s", "f"]);
            if *symbolic {
                for k in 0..=*order {
                    table.push(vec![k.to_string(), sd.coeff(k).to_string(), fd.coeff(k).to_string()]);
                }
            } else {
                let (sv, fv) = invariant_curve_at(side(*s), *order, &p.gamma())?;
                for k in 0..=*order {
                    table.push(vec![k.to_string(), exact(&sv.coeff(k)), exact(&fv.coeff(k))]);
                }
            }
            let body = json!({ "s": sd.to_json(), "f": fd.to_json() });
            emit_with(&table, &meta("series", cmd, Some(&p)), output, body)
        }
        Command::Asym { op } => asym(cmd, op),
        Command::Track { side: s, model, n_min, n_max, output } => {
            let p = model.params()?;
            let orbit = freud_orbit(*n_min, *n_max, &p)?;
            let (ts, col) = match s {
                TrackArg::Forward => (TrackSide::Forward, "d_n"),
                TrackArg::Backward => (TrackSide::Backward, "D_n"),
            };
            let d = track_alpha_points(&orbit, ts)?;
            emit(&series_table(col, &d), &meta("track", cmd, Some(&p)).with_orbit(&orbit), output)
        }
        Command::Logdist { model, xi0_list, n_max, output } => logdist(cmd, model, xi0_list, *n_max, output),
        Command::Confine { model, y, eps, n, output } => {
            let p = model.params()?;
            let trace = confinement_signature(&big(y, &p)?, &big(eps, &p)?, StepIndex(*n), &p)?;
            let mut table = CsvTable::new(&["n", "x", "y", "s", "f", "u"]);
            for (k, (plane, sfu)) in trace.planes.iter().zip(&trace.sfu).enumerate() {
                let cell = |f: fn(&SfuState<BigReal>) -> &BigReal| sfu.as_ref().map(|v| f(v).to_decimal()).unwrap_or_default();
                table.push(vec![
                    (trace.n_start + k as i64).to_string(),
                    plane.x.to_decimal(),
                    plane.y.to_decimal(),
                    cell(|v| &v.s),
                    cell(|v| &v.f),
                    cell(|v| &v.u),
                ]);
            }
            emit(&table, &meta("confine", cmd, Some(&p)), output)
        }
        Command::Moments { model, max_index, output } => {
            let p = model.params()?;
            let t = moments(*max_index, &p, p.precision_bits)?;
            let (b1, b2) = freud_init_from_moments(&t)?;
            let mut table = CsvTable::new(&["i", "mu"]);
            for i in (0..=t.max_index()).step_by(2) {
                table.push(vec![i.to_string(), t.get(i).expect("even index in range").to_decimal()]);
            }
            let mut m = meta("moments", cmd, Some(&p));
            m.results = json!({ "b1_sq": b1.to_decimal(), "b2_sq": b2.to_decimal(), "quadrature_levels": t.levels });
            emit(&table, &m, output)
        }
        Command::Qrt { model, alpha, x, y, steps, output } => {
            let p = model.params()?;
            let ap = AutonomousParams::new(big(alpha, &p)?, p.real(p.r()))?;
            let mut s = PlaneState::new(big(x, &p)?, big(y, &p)?);
            let k0 = qrt_invariant(&s, &ap);
            let mut table = CsvTable::new(&["k", "x", "y", "invariant"]);
            let mut drift = p.zero_real();
            for k in 0..=*steps {
                let inv = qrt_invariant(&s, &ap);
                if !k0.is_zero_value() {
                    let rel = ((inv.clone() - k0.clone()) / k0.clone()).abs();
                    if rel > drift {
                        drift = rel;
                    }
                }
                table.push(vec![k.to_string(), s.x.to_decimal(), s.y.to_decimal(), inv.to_decimal()]);
                if k < *steps {
                    s = alpha_dp1_step(&s, &ap)?;
                }
            }
            let mut m = meta("qrt", cmd, Some(&p));
            m.results = json!({ "max_relative_drift": drift.to_decimal_digits(6) });
            emit(&table, &m, output)
        }
    }
}

fn coords(cmd: &Command, op: &CoordsOp) -> Result<(), CliError> {
    match op {
        CoordsOp::ToSfu { x, y, n, model, output } => {
            let p = model.params()?;
            let plane = PlaneState::new(parse_rational(x)?, parse_rational(y)?);
            let v = to_sfu(&plane, StepIndex(*n), &p)?;
            let mut table = CsvTable::new(&["s", "f", "u"]);
            table.push(vec![exact(&v.s), exact(&v.f), exact(&v.u)]);
            emit(&table, &meta("coords to-sfu", cmd, Some(&p)), output)
        }
        CoordsOp::FromSfu { s, f, u, model, output } => {
            let p = model.params()?;
            let v: SfuState<Rational> = SfuState::new(parse_rational(s)?, parse_rational(f)?, parse_rational(u)?);
            let (plane, alpha) = from_sfu(&v, &p)?;
            let mut table = CsvTable::new(&["x", "y", "alpha"]);
            table.push(vec![exact(&plane.x), exact(&plane.y), exact(&alpha)]);
            emit(&table, &meta("coords from-sfu", cmd, Some(&p)), output)
        }
    }
}

fn asym(cmd: &Command, op: &AsymOp) -> Result<(), CliError> {
    match op {
        AsymOp::U { side: s, branch, order, n_min, n_max, model, output } => {
            let p = model.params()?;
            let b = match branch {
                BranchArg::Plus => Branch::Plus,
                BranchArg::Minus => Branch::Minus,
            };
            let series = u_asymptotic(side(*s), b, *order)?;
            let table = match (n_min, n_max) {
                (Some(lo), Some(hi)) => {
                    let gamma = p.real(&p.gamma());
                    let values = (*lo..=*hi)
                        .filter(|&n| n != 0)
                        .map(|n| Ok((n, series.eval(n, &gamma)?)))
                        .collect::<dp1_core::Result<Vec<_>>>()?;
                    series_table("u", &values)
                }
                _ => {
                    let mut t = CsvTable::new(&["half_power", "sqrt_factor", "coefficient"]);
                    for (k, c) in series.coefficients().iter().enumerate() {
                        let root = if (k + 1) % 2 == 1 { exact(&series.radicand) } else { String::new() };
                        t.push(vec![(k + 1).to_string(), root, c.to_string()]);
                    }
                    t
                }
            };
            let body = json!({ "radicand": exact(&series.radicand), "terms": series.to_records() });
            emit_with(&table, &meta("asym u", cmd, Some(&p)), output, body)
        }
        AsymOp::X { n_min, n_max, model, output } => {
            let p = model.params()?;
            let like = p.zero_real();
            let values = (*n_min..=*n_max)
                .map(|n| Ok((n, x_asymptotic(n, &p, &like)?)))
                .collect::<dp1_core::Result<Vec<_>>>()?;
            emit(&series_table("x", &values), &meta("asym x", cmd, Some(&p)), output)
        }
    }
}

fn logdist(cmd: &Command, model: &ModelArgs, xi0_list: &[String], n_max: i64, output: &OutputArgs) -> Result<(), CliError> {
    let p = model.params()?;
    let xi0s = xi0_list.iter().map(|s| big(s, &p)).collect::<Result<Vec<_>, _>>()?;
    let freud = freud_orbit(1, n_max, &p)?;
    let runs = xi0s
        .par_iter()
        .map(|xi0| {
            let orbit = lq_orbit(xi0, 1, n_max, &p)?;
            let delta = log_distance(&orbit, &freud)?;
            let slope = secant_slope(&delta)?;
            let turn = turnaround_index(&delta).ok();
            Ok((delta, slope, turn))
        })
        .collect::<dp1_core::Result<Vec<_>>>()?;
    let mut table = CsvTable::new(&["xi0", "n", "delta", "slope"]);
    let mut turns = serde_json::Map::new();
    for (label, (delta, slope, turn)) in xi0_list.iter().zip(&runs) {
        for row in log_distance_table(delta, slope).rows {
            let mut full = vec![label.clone()];
            full.extend(row);
            table.push(full);
        }
        turns.insert(label.clone(), turn.map_or(Value::Null, |t| json!(t)));
    }
    let mut m = meta("logdist", cmd, Some(&p));
    m.results = json!({ "turnaround": turns });
    emit(&table, &m, output)
}
