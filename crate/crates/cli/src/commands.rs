use std::io::Write;

use edms_core::dsbs::{self, DsbsModel};
use edms_core::onoff::{self, block_energy_curve, default_block_grid};
use edms_core::sim::{
    self, derive_seed, exact_error_probability, leakage_computable, BinningCode,
    MAX_EXACT_ERROR_LENGTH, MAX_EAVESDROPPER_LEAKAGE_LENGTH, MAX_PUBLIC_LEAKAGE_LENGTH,
};
use edms_core::units::{bits_to_nats, nats_to_bits};
use edms_core::{Binary, Error, FiniteEdms, Gaussian, RatePoint, SnrKeyModel, StateDistribution, Units};

use crate::args::{
    CapacityArgs, EnergyArgs, ExponentsArgs, ModelKind, SimulateArgs, SnrArgs, TradeoffArgs,
};
use crate::error::{usage, Result};
use crate::sweep::{db_to_linear, Scale, SweepSpec, Variable};
use crate::table::{Cell, Table};

/// SNR grid for the Gaussian and quantized figures: `[1e-2, 10]`.
pub const DEFAULT_SNR_RANGE: (f64, f64) = (1e-2, 10.0);

pub fn key_model(kind: ModelKind) -> &'static dyn SnrKeyModel<f64> {
    match kind {
        ModelKind::Gaussian => &Gaussian,
        ModelKind::Dsbs => &Binary,
    }
}

/// The SNR values selected by the flags, or `default` when none are given.
pub fn snr_grid(args: &SnrArgs, default: impl FnOnce() -> Vec<f64>) -> Result<Vec<f64>> {
    let single = args.snr.or(args.snr_db.map(db_to_linear));
    if let Some(g) = single {
        if !(g >= 0.0) || !g.is_finite() {
            return usage(format!("SNR must be finite and nonnegative (got {g})"));
        }
        return Ok(vec![g]);
    }
    let range = match (args.snr_range, args.snr_db_range) {
        (Some(r), _) => (r.start, r.stop),
        (None, Some(r)) => (db_to_linear(r.start), db_to_linear(r.stop)),
        (None, None) => return Ok(default()),
    };
    if range.0 < 0.0 {
        return usage("SNR range must be nonnegative");
    }
    Ok(SweepSpec::new(Variable::Gamma, range.0, range.1, args.points, args.scale)?.values())
}

fn default_snr_grid(points: usize) -> Vec<f64> {
    edms_core::numerics::logspace(DEFAULT_SNR_RANGE.0, DEFAULT_SNR_RANGE.1, points.max(2))
}

pub fn capacity(kind: ModelKind, units: Units, args: &CapacityArgs) -> Result<Table> {
    let model = key_model(kind);
    let gammas = snr_grid(&args.snr, || default_snr_grid(args.snr.points))?;
    let gamma_c = model.gamma_c();
    let mut table = Table::new(&["gamma", "i_k", "c_k", "lambda_c"]);
    for g in gammas {
        let i_k = model.key_rate(g);
        let (c_k, lambda) = if g <= 0.0 {
            (0.0, 0.0)
        } else if g >= gamma_c {
            (i_k, 1.0)
        } else {
            (g / gamma_c * model.key_rate(gamma_c), g / gamma_c)
        };
        table.push(vec![g.into(), units.from_nats(i_k).into(), units.from_nats(c_k).into(), lambda.into()]);
    }
    Ok(table)
}

pub fn energy(kind: ModelKind, args: &EnergyArgs) -> Result<Table> {
    let model = key_model(kind);
    let gammas = if args.b_key.is_some() {
        snr_grid(&args.snr, default_block_grid)?
    } else {
        snr_grid(&args.snr, || default_snr_grid(args.snr.points))?
    };
    let Some(b_key) = args.b_key else {
        let mut table = Table::new(&["gamma", "energy_constant", "energy_onoff"]);
        for g in gammas {
            table.push(vec![
                g.into(),
                onoff::energy_per_bit_constant(model, g).into(),
                onoff::energy_per_bit_onoff(model, g).into(),
            ]);
        }
        return Ok(table);
    };
    let constant = block_energy_curve(model, b_key, args.epsilon, false, &gammas)?;
    let switched = block_energy_curve(model, b_key, args.epsilon, true, &gammas)?;
    if constant.iter().chain(&switched).all(Option::is_none) {
        return Err(Error::Infeasible(format!(
            "no SNR among {} grid points reaches {b_key} key bits at epsilon = {} within n <= {}",
            gammas.len(),
            args.epsilon,
            onoff::MAX_BLOCK_LENGTH
        ))
        .into());
    }
    let mut table = Table::new(&[
        "gamma",
        "energy_constant",
        "energy_onoff",
        "n_constant",
        "block_energy_constant",
        "n_onoff",
        "block_energy_onoff",
    ]);
    let block = |e: &Option<onoff::BlockEnergy<f64>>| match e {
        Some(e) => [Cell::Int(e.n), Cell::Num(e.energy)],
        None => [Cell::from("infeasible"), Cell::from("infeasible")],
    };
    for ((g, c), s) in gammas.iter().zip(&constant).zip(&switched) {
        let mut row = vec![
            Cell::Num(*g),
            onoff::energy_per_bit_constant(model, *g).into(),
            onoff::energy_per_bit_onoff(model, *g).into(),
        ];
        row.extend(block(c));
        row.extend(block(s));
        table.push(row);
    }
    Ok(table)
}

fn rate_grid(single: Option<f64>, range: Option<crate::sweep::Range>, points: usize, variable: Variable, default: f64) -> Result<Vec<f64>> {
    if let Some(r) = single {
        if !(r >= 0.0) || !r.is_finite() {
            return usage(format!("{variable} must be finite and nonnegative (got {r})"));
        }
        return Ok(vec![r]);
    }
    match range {
        Some(r) => {
            if r.start < 0.0 {
                return usage(format!("{variable} range must be nonnegative"));
            }
            Ok(SweepSpec::new(variable, r.start, r.stop, points, Scale::Linear)?.values())
        }
        None => Ok(vec![default]),
    }
}

pub fn exponents(kind: ModelKind, units: Units, args: &ExponentsArgs) -> Result<Table> {
    let model = key_model(kind);
    let gammas = snr_grid(&args.snr, || default_snr_grid(args.snr.points))?;
    let default_rate = units.from_nats(0.01);
    let rates = rate_grid(args.r_sk, args.r_sk_range, args.rate_points, Variable::RSk, default_rate)?;
    let mut header = vec!["gamma", "r_sk", "e_r", "region"];
    if args.onoff {
        header.extend(["e_r_onoff", "lambda_e"]);
    }
    let mut table = Table::new(&header);
    for &g in &gammas {
        for &r in &rates {
            let r_nats = units.to_nats(r);
            let (e, region) = model.reliability_exponent_region(r_nats, g);
            let mut row = vec![g.into(), r.into(), units.from_nats(e).into(), u64::from(region.index()).into()];
            if args.onoff {
                let (e_on, lambda) = onoff::onoff_reliability_exponent(model, r_nats, g);
                row.extend([units.from_nats(e_on).into(), lambda.into()]);
            }
            table.push(row);
        }
    }
    Ok(table)
}

pub fn tradeoff(units: Units, args: &TradeoffArgs) -> Result<Table> {
    if let Some(path) = &args.model_file {
        return tradeoff_finite(units, args, FiniteEdms::from_json_file(path)?);
    }
    let m = DsbsModel::new(args.theta, args.w)?;
    if m.w == 0.0 {
        return usage("w = 0 means Eve sees Alice's sequence; no secrecy exponent exists");
    }
    let r_m_default = crate::sweep::Range { start: 0.0, stop: units.from_nats(bits_to_nats(1.0)) };
    let (r_sk, r_m) = tradeoff_grids(args, r_m_default)?;
    let mut table = Table::new(&["r_sk", "r_m", "e_r", "e_s"]);
    for &k in &r_sk {
        for &r in &r_m {
            let (k_bits, r_bits) = (nats_to_bits(units.to_nats(k)), nats_to_bits(units.to_nats(r)));
            let e_r = m.reliability_exponent(r_bits)?;
            let e_s = m.secrecy_exponent(k_bits + r_bits)?;
            table.push(vec![
                k.into(),
                r.into(),
                units.from_nats(bits_to_nats(e_r)).into(),
                units.from_nats(bits_to_nats(e_s)).into(),
            ]);
        }
    }
    Ok(table)
}

fn tradeoff_grids(args: &TradeoffArgs, r_m_default: crate::sweep::Range) -> Result<(Vec<f64>, Vec<f64>)> {
    let r_sk = rate_grid(args.r_sk, args.r_sk_range, args.rate_points, Variable::RSk, 0.0)?;
    let range = args.r_m_range.unwrap_or(r_m_default);
    if range.start < 0.0 {
        return usage("r_m range must be nonnegative");
    }
    let r_m = SweepSpec::new(Variable::RM, range.start, range.stop, args.rate_points, Scale::Linear)?.values();
    Ok((r_sk, r_m))
}

fn tradeoff_finite(units: Units, args: &TradeoffArgs, model: FiniteEdms<f64>) -> Result<Table> {
    let p = match &args.mass {
        Some(mass) => StateDistribution::new(&model, mass.clone(), f64::INFINITY)?,
        None => StateDistribution::uniform(&model),
    };
    let top = (0..model.num_states())
        .map(|s| model.state_entropy_a(s))
        .collect::<edms_core::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let default = crate::sweep::Range { start: 0.0, stop: units.from_nats(top.max(1e-12)) };
    let (r_sk, r_m) = tradeoff_grids(args, default)?;
    let mut table = Table::new(&["r_sk", "r_m", "e_r", "e_s"]);
    for &k in &r_sk {
        for &r in &r_m {
            let rates = RatePoint::new(units.to_nats(k), units.to_nats(r))?;
            let t = model.exponent_triple(&p, rates)?;
            table.push(vec![k.into(), r.into(), units.from_nats(t.e_r).into(), units.from_nats(t.e_s).into()]);
        }
    }
    Ok(table)
}

/// Runs the simulation and writes the analytic exponents (and exact values
/// with `--exact`) to `notes`. Returns the JSON report.
pub fn simulate(units: Units, seed: u64, args: &SimulateArgs, notes: &mut dyn Write) -> Result<String> {
    let model = DsbsModel::new(args.theta, args.w)?;
    if args.trials == 0 {
        return usage("--trials must be at least 1");
    }
    let (r_sk, r_m) = (units.to_nats(args.r_sk), units.to_nats(args.r_m));
    if args.exact {
        if args.n > MAX_EXACT_ERROR_LENGTH {
            return Err(Error::TooLarge { n: args.n, max: MAX_EXACT_ERROR_LENGTH, what: "exact error enumeration" }.into());
        }
        if !leakage_computable(args.n, args.w) {
            let max = if args.w == 0.5 { MAX_PUBLIC_LEAKAGE_LENGTH } else { MAX_EAVESDROPPER_LEAKAGE_LENGTH };
            return Err(Error::TooLarge { n: args.n, max, what: "exact leakage" }.into());
        }
    }
    let code = BinningCode::generate(args.n, r_sk, r_m, seed)?;
    // the code uses the seed directly; trials get an independent derived seed
    let mut report = sim::monte_carlo_run(&code, args.theta, args.w, args.trials, derive_seed(seed, 1))?;
    report.seed = seed;

    let e_r = bits_to_nats(dsbs::reliability_exponent_message_rate(nats_to_bits(r_m), args.theta));
    writeln!(notes, "analytic E_R = {} {units}", units.from_nats(e_r))?;
    if model.w > 0.0 {
        let e_s = bits_to_nats(model.secrecy_exponent(nats_to_bits(r_sk + r_m))?);
        writeln!(notes, "analytic E_S = {} {units}", units.from_nats(e_s))?;
    } else {
        writeln!(notes, "analytic E_S undefined for w = 0")?;
    }
    if args.exact {
        let exact = exact_error_probability(&code, args.theta)?;
        writeln!(notes, "exact Pr(K_a != K_b) = {}", exact.key)?;
        writeln!(notes, "exact Pr(X_a != estimate) = {}", exact.sequence)?;
        if let Some(l) = report.leakage_nats {
            writeln!(notes, "exact leakage = {} {units}", units.from_nats(l))?;
        }
    }
    Ok(serde_json::to_string_pretty(&report)?)
}

