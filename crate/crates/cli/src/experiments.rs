use std::fmt;

use rand::Rng;

use mespin::cam_array::CamArray;
use mespin::consts::FJ;
use mespin::device::{EnergyConvention, MeMtjDevice, MeXnorDevice};
use mespin::io::{
    bits_to_string, parse_bits, to_csv_string, trajectory_rows, CamRow, DualPortRow, SwitchProbRow,
};
use mespin::magnetodynamics::{
    initial_magnetization, simulate_trajectory, switching_sweep, trial_rng, SimConfig,
    StimulusSchedule,
};
use mespin::memory_array::DualPortArray;
use mespin::transport::tmr_sweep;
use mespin::Error;

use crate::config::ExperimentConfig;

/// A measured value compared against a target with a relative tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

impl Check {
    fn within(name: &str, value: f64, target: f64, rel_tol: f64, unit: &str) -> Self {
        Self {
            name: name.into(),
            detail: format!(
                "{value:.4} {unit} (target {target} {unit} ± {:.0}%)",
                rel_tol * 100.0
            ),
            pass: (value - target).abs() <= rel_tol * target,
        }
    }

    fn flag(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            detail: detail.into(),
            pass,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {}: {}", self.name, self.detail)
    }
}

/// Files, summary lines and checks produced by one experiment.
#[derive(Debug, Default)]
pub struct Output {
    pub files: Vec<(String, String)>,
    pub summary: Vec<String>,
    pub checks: Vec<Check>,
}

impl Output {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn csv<T: serde::Serialize>(records: &[T]) -> Result<String, String> {
    to_csv_string(records).map_err(|e| e.to_string())
}

fn sim_config(cfg: &ExperimentConfig) -> SimConfig {
    SimConfig {
        seed: cfg.seed,
        ..cfg.sim
    }
}

pub fn trajectory(cfg: &ExperimentConfig) -> Result<Output, String> {
    let sim = sim_config(cfg);
    let m0 = initial_magnetization(&cfg.magnet, &cfg.protocol, &sim, 0);
    let schedule = StimulusSchedule::pulse(cfg.stimulus, 0.0, cfg.protocol.pulse_duration);
    let traj = simulate_trajectory(m0, &cfg.magnet, &schedule, &sim);
    let reversal = match traj.reversal_time {
        Some(t) => format!("reversal_time_s={t:e}"),
        None => "reversal_time_s=none".to_string(),
    };
    Ok(Output {
        files: vec![("trajectory.csv".into(), csv(&trajectory_rows(&traj))?)],
        summary: vec![reversal],
        checks: Vec::new(),
    })
}

pub fn switchprob(cfg: &ExperimentConfig) -> Result<Output, String> {
    let voltages = cfg.switch_sweep.voltage.values()?;
    let points = switching_sweep(
        &cfg.magnet,
        &cfg.stimulus,
        &voltages,
        &cfg.switch_sweep.alpha_me_over_c,
        &cfg.protocol,
        cfg.n_trials,
        &sim_config(cfg),
    );
    let rows: Vec<SwitchProbRow> = points.iter().map(SwitchProbRow::from).collect();
    let mut summary = Vec::new();
    let mut alphas = cfg.switch_sweep.alpha_me_over_c.clone();
    alphas.sort_by(f64::total_cmp);
    alphas.dedup();
    for a in alphas {
        let curve: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.alpha_me_over_c == a)
            .map(|r| (r.v_volts, r.p_switch))
            .collect();
        let v50 = mespin::magnetodynamics::half_switching_voltage(&curve);
        summary.push(match v50 {
            Some(v) => format!("alpha_me_over_c={a} v50_volts={v}"),
            None => format!("alpha_me_over_c={a} v50_volts=none"),
        });
    }
    Ok(Output {
        files: vec![("switchprob.csv".into(), csv(&rows)?)],
        summary,
        checks: Vec::new(),
    })
}

pub fn tmr(cfg: &ExperimentConfig) -> Result<Output, String> {
    let thicknesses = cfg.tmr_sweep.t_mgo_nm.values()?;
    let rows = tmr_sweep(
        &cfg.stack,
        &cfg.leads,
        &thicknesses,
        &cfg.tmr_sweep.w_over_l,
        &cfg.dual_port.electrical.transistor,
        cfg.temperature,
    )
    .map_err(|e| e.to_string())?;
    Ok(Output {
        files: vec![("tmr_sweep.csv".into(), csv(&rows)?)],
        summary: vec![format!("points={}", rows.len())],
        checks: Vec::new(),
    })
}

fn memtj_cell(cfg: &ExperimentConfig) -> Result<MeMtjDevice, String> {
    MeMtjDevice::new(
        cfg.magnet,
        cfg.stack,
        cfg.leads,
        cfg.capacitor,
        cfg.stimulus.alpha_me,
        cfg.temperature,
    )
    .map_err(|e| e.to_string())
}

fn xnor_cell(cfg: &ExperimentConfig) -> Result<MeXnorDevice, String> {
    MeXnorDevice::new(
        cfg.magnet,
        cfg.stack,
        cfg.leads,
        cfg.capacitor,
        cfg.stimulus.alpha_me,
        cfg.temperature,
    )
    .map_err(|e| e.to_string())
}

fn random_bits<R: Rng>(rng: &mut R, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng.random::<bool>()).collect()
}

fn access_row(op: &str, row: usize, r: &mespin::memory_array::AccessResult) -> DualPortRow {
    DualPortRow {
        op: op.into(),
        row,
        bits: bits_to_string(&r.data),
        write_energy_fj_per_bit: r.energy.write_energy_per_bit() / FJ,
        read_energy_fj_per_bit: r.energy.read_energy_per_bit() / FJ,
        latency_ns: r.latency * 1e9,
    }
}

/// Fills the array with seeded random rows, reads them back, then runs the
/// configured simultaneous accesses.
pub fn dualport(cfg: &ExperimentConfig) -> Result<Output, String> {
    let spec = &cfg.dual_port;
    let mut array = DualPortArray::new(spec.rows, spec.cols, memtj_cell(cfg)?, spec.electrical)
        .map_err(|e| e.to_string())?;
    array.sim = sim_config(cfg);
    let mut rng = trial_rng(cfg.seed, u64::MAX);
    let mut rows = Vec::new();
    let mut out = Output::default();
    let mut contents = Vec::with_capacity(spec.rows);
    let mut write_ok = true;
    for r in 0..spec.rows {
        let data = random_bits(&mut rng, spec.cols);
        let res = array.write_row(r, &data).map_err(|e| e.to_string())?;
        rows.push(access_row("write", r, &res));
        contents.push(data);
    }
    for (r, expected) in contents.iter().enumerate() {
        match array.read_row(r) {
            Ok(res) => {
                write_ok &= &res.data == expected;
                rows.push(access_row("read", r, &res));
            }
            Err(e) => {
                write_ok = false;
                out.summary.push(format!("row {r}: {e}"));
            }
        }
    }
    out.checks.push(Check::flag(
        "write/read round trip",
        write_ok,
        format!("{} rows × {} bits", spec.rows, spec.cols),
    ));

    let mut ports_ok = true;
    for a in &spec.accesses {
        let data = random_bits(&mut rng, spec.cols);
        let standalone = array.read_row(a.read_row);
        match array.simultaneous_access(a.write_row, &data, a.read_row) {
            Ok((w, r)) => {
                let same = standalone.map(|s| s.data == r.data).unwrap_or(false);
                ports_ok &= same;
                rows.push(access_row("dual_write", a.write_row, &w));
                rows.push(access_row("dual_read", a.read_row, &r));
            }
            Err(e @ Error::PortConflict(_)) => {
                out.checks
                    .push(Check::flag("port conflict", false, e.to_string()));
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    out.checks.push(Check::flag(
        "dual-port read equals standalone read",
        ports_ok,
        format!("{} simultaneous accesses", spec.accesses.len()),
    ));
    out.summary.push(format!(
        "throughput_ops_per_s dual={} single={}",
        array.dual_port_throughput(),
        array.single_port_throughput()
    ));
    out.files.push(("dualport.csv".into(), csv(&rows)?));
    Ok(out)
}

fn cam_words(cfg: &ExperimentConfig, rng: &mut impl Rng) -> Result<Vec<Vec<bool>>, String> {
    let spec = &cfg.cam;
    if spec.words.is_empty() {
        return Ok((0..spec.rows)
            .map(|_| random_bits(rng, spec.word_width))
            .collect());
    }
    if spec.words.len() != spec.rows {
        return Err(format!(
            "cam.words: need {} words, got {}",
            spec.rows,
            spec.words.len()
        ));
    }
    spec.words
        .iter()
        .map(|w| parse_bits(w).map_err(|e| format!("cam.words: {e}")))
        .collect()
}

fn cam_keys(
    cfg: &ExperimentConfig,
    words: &[Vec<bool>],
    rng: &mut impl Rng,
) -> Result<Vec<Vec<bool>>, String> {
    let spec = &cfg.cam;
    if !spec.keys.is_empty() {
        return spec
            .keys
            .iter()
            .map(|k| parse_bits(k).map_err(|e| format!("cam.keys: {e}")))
            .collect();
    }
    // every stored word, a one-bit miss on the first word, and a random key
    let mut keys = words.to_vec();
    let mut near = words[0].clone();
    near[0] = !near[0];
    keys.push(near);
    keys.push(random_bits(rng, spec.word_width));
    Ok(keys)
}

struct CamRun {
    rows: Vec<CamRow>,
    matched_read_fj_per_bit: Option<f64>,
    write_fj_per_bit: f64,
    logic_ok: bool,
}

fn run_cam(cfg: &ExperimentConfig) -> Result<CamRun, String> {
    let spec = &cfg.cam;
    let mut cam = CamArray::new(spec.rows, spec.word_width, xnor_cell(cfg)?, spec.electrical)
        .map_err(|e| e.to_string())?;
    cam.sim = sim_config(cfg);
    let mut rng = trial_rng(cfg.seed, u64::MAX - 1);
    let words = cam_words(cfg, &mut rng)?;
    let mut store_energy = 0.0;
    for (r, w) in words.iter().enumerate() {
        store_energy += cam.store_word(r, w).map_err(|e| e.to_string())?;
    }
    let keys = cam_keys(cfg, &words, &mut rng)?;
    let mut rows = Vec::new();
    let mut logic_ok = true;
    let mut matched = None;
    let w = spec.word_width as f64;
    for key in &keys {
        let m = cam.search(key).map_err(|e| e.to_string())?;
        let reads: Vec<f64> = m
            .energy
            .breakdown
            .iter()
            .filter(|t| t.kind == mespin::device::EnergyKind::Read)
            .map(|t| t.energy)
            .collect();
        let writes: Vec<f64> = m
            .energy
            .breakdown
            .iter()
            .filter(|t| t.kind == mespin::device::EnergyKind::Write)
            .map(|t| t.energy)
            .collect();
        for (r, word) in words.iter().enumerate() {
            let row_slice = r * spec.word_width..(r + 1) * spec.word_width;
            let read_fj = reads[row_slice.clone()].iter().sum::<f64>() / w / FJ;
            let write_fj = writes[row_slice].iter().sum::<f64>() / w / FJ;
            let low = m.matchline_low[r];
            logic_ok &= low == (word == key);
            if low && matched.is_none() {
                matched = Some(read_fj);
            }
            rows.push(CamRow {
                row: r,
                stored_word: bits_to_string(word),
                key: bits_to_string(key),
                matchline: if low { "low" } else { "high" }.into(),
                read_energy_fj_per_bit: read_fj,
                write_energy_fj_per_bit: write_fj,
            });
        }
    }
    Ok(CamRun {
        rows,
        matched_read_fj_per_bit: matched,
        write_fj_per_bit: store_energy / (spec.rows as f64 * w) / FJ,
        logic_ok,
    })
}

pub fn cam(cfg: &ExperimentConfig) -> Result<Output, String> {
    let run = run_cam(cfg)?;
    let mut out = Output::default();
    out.checks.push(Check::flag(
        "match lines equal AND of XNOR",
        run.logic_ok,
        format!("{} searches", run.rows.len() / cfg.cam.rows),
    ));
    out.files.push(("cam.csv".into(), csv(&run.rows)?));
    Ok(out)
}

/// Energy targets: 0.072 fJ write (±10%), 1.3 fJ read (±20%), 15 fJ
/// CAM read (±20%).
pub fn memory_report(cfg: &ExperimentConfig) -> Result<Output, String> {
    let mut out = dualport(cfg)?;
    let cam_run = run_cam(cfg)?;
    out.checks.push(Check::flag(
        "match lines equal AND of XNOR",
        cam_run.logic_ok,
        format!("{} cam rows", cam_run.rows.len()),
    ));
    out.files.push(("cam.csv".into(), csv(&cam_run.rows)?));

    // Per-bit energies on a fresh single-row array storing P (bit 0) cells.
    let spec = &cfg.dual_port;
    let mut probe = DualPortArray::new(1, spec.cols, memtj_cell(cfg)?, spec.electrical)
        .map_err(|e| e.to_string())?;
    let w = probe
        .write_row(0, &vec![false; spec.cols])
        .map_err(|e| e.to_string())?;
    let r = probe.read_row(0).map_err(|e| e.to_string())?;
    out.checks.push(Check::within(
        "ME-MTJ write energy per bit",
        w.energy.write_energy_per_bit() / FJ,
        0.072,
        0.10,
        "fJ",
    ));
    out.checks.push(Check::within(
        "ME-MTJ read energy per bit",
        r.energy.read_energy_per_bit() / FJ,
        1.3,
        0.20,
        "fJ",
    ));
    out.checks.push(Check::within(
        "CAM write energy per bit",
        cam_run.write_fj_per_bit,
        0.072,
        0.10,
        "fJ",
    ));
    match cam_run.matched_read_fj_per_bit {
        Some(e) => out.checks.push(Check::within(
            "CAM read energy per bit",
            e,
            15.0,
            0.20,
            "fJ",
        )),
        None => out.checks.push(Check::flag(
            "CAM read energy per bit",
            false,
            "no search produced a match",
        )),
    }
    let cap = cfg.capacitor;
    let thick = mespin::device::CapacitorGeometry {
        t_me: 2.0 * cap.t_me,
        ..cap
    };
    let v = spec.electrical.v_write;
    let ratio = thick.write_energy(v, EnergyConvention::FullCycle)
        / cap.write_energy(v, EnergyConvention::FullCycle);
    out.summary
        .push(format!("write_energy_ratio_at_2x_t_me={ratio}"));
    out.summary.push(format!(
        "cam_read_time_s={} cam_v_read={}",
        CamArray::new(1, 1, xnor_cell(cfg)?, cfg.cam.electrical)
            .map_err(|e| e.to_string())?
            .t_read,
        cfg.cam.electrical.v_read
    ));
    let mut report = String::new();
    for line in out.summary.iter() {
        report.push_str(line);
        report.push('\n');
    }
    for c in &out.checks {
        report.push_str(&c.to_string());
        report.push('\n');
    }
    out.files.push(("memory_report.txt".into(), report));
    Ok(out)
}
