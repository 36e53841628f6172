//! Seeded Monte Carlo over random pairs: component sweeps across a p-grid
//! and the edge-by-edge hitting-time process. Output is CSV or a small SVG.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::fs::{self, Cap, FsError};
use crate::graph::{EdgeDraws, Graph};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("nothing to report")]
    Empty,
    #[error(transparent)]
    Fs(#[from] FsError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Gnp,
    Bipartite,
}

impl Mode {
    pub fn token(self) -> &'static str {
        match self {
            Mode::Gnp => "gnp",
            Mode::Bipartite => "bip",
        }
    }
}

pub const DEFAULT_SWEEP_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    /// `n` for `G(n, p)`, `r` for `G(K_{r,r}, p)`.
    pub size: usize,
    pub p_grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Largest vertex count analysed exactly.
    pub cap: usize,
}

impl SweepConfig {
    pub fn vertices(&self) -> usize {
        match self.mode {
            Mode::Gnp => self.size,
            Mode::Bipartite => 2 * self.size,
        }
    }

    fn validate(&self) -> Result<Cap, ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::Config(msg));
        if self.size == 0 {
            return bad("size must be at least 1".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.p_grid.is_empty() {
            return bad("empty p grid".into());
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("p = {p} is outside [0, 1]"));
        }
        let cap = Cap::new(self.cap)?;
        let n = self.vertices();
        if n > cap.max_n() {
            return Err(FsError::CapExceeded { n, cap: cap.max_n() }.into());
        }
        Ok(cap)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub mode: Mode,
    pub size: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub frac_connected: f64,
    pub frac_isolated_exists: f64,
    pub frac_exactly_two: f64,
    pub mean_components: f64,
    /// Summed analysis time of this cell over all trials.
    pub wall_ms: u64,
}

/// Independent sub-seed for `(seed, trial, stream)` via SplitMix64.
pub fn stream_seed(seed: u64, trial: u64, stream: u64) -> u64 {
    let mut z = seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED69);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    connected: usize,
    isolated: usize,
    exactly_two: usize,
    components: u64,
    nanos: u128,
}

/// Components of FS(X, Y) for `trials` coupled pairs per grid cell. Each trial
/// draws one uniform per potential edge of `X` and of `Y` and thresholds the
/// same draws at every `p`, so each trial's graphs grow monotonically in `p`.
pub fn run_sweep(c: &SweepConfig) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    let cap = c.validate()?;
    let cells = c.p_grid.len();
    let per_trial: Vec<Vec<Tally>> = (0..c.trials as u64)
        .into_par_iter()
        .map(|t| {
            let draw = |stream| match c.mode {
                Mode::Gnp => EdgeDraws::gnp(c.size, stream_seed(c.seed, t, stream)),
                Mode::Bipartite => EdgeDraws::bipartite(c.size, stream_seed(c.seed, t, stream)),
            };
            let (dx, dy) = (draw(0), draw(1));
            c.p_grid
                .iter()
                .map(|&p| {
                    let start = Instant::now();
                    let s = fs::components_capped(&dx.graph_at(p), &dy.graph_at(p), cap)?;
                    Ok(Tally {
                        connected: usize::from(s.is_connected()),
                        isolated: usize::from(s.isolated_count > 0),
                        exactly_two: usize::from(s.component_count == 2),
                        components: s.component_count,
                        nanos: start.elapsed().as_nanos(),
                    })
                })
                .collect::<Result<Vec<_>, FsError>>()
        })
        .collect::<Result<_, _>>()?;

    let mut totals = vec![Tally::default(); cells];
    for trial in &per_trial {
        for (acc, t) in totals.iter_mut().zip(trial) {
            acc.connected += t.connected;
            acc.isolated += t.isolated;
            acc.exactly_two += t.exactly_two;
            acc.components += t.components;
            acc.nanos += t.nanos;
        }
    }
    let k = c.trials as f64;
    Ok(c.p_grid
        .iter()
        .zip(totals)
        .map(|(&p, t)| ExperimentRecord {
            mode: c.mode,
            size: c.size,
            p,
            trials: c.trials,
            seed: c.seed,
            frac_connected: t.connected as f64 / k,
            frac_isolated_exists: t.isolated as f64 / k,
            frac_exactly_two: t.exactly_two as f64 / k,
            mean_components: t.components as f64 / k,
            wall_ms: (t.nanos / 1_000_000) as u64,
        })
        .collect())
}

/// [`run_sweep`] over `G(K_{r,r}, p)`.
pub fn run_bipartite_sweep(c: &SweepConfig) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    run_sweep(&SweepConfig {
        mode: Mode::Bipartite,
        ..c.clone()
    })
}

/// `a:b:step`, inclusive of `b` up to rounding; values are rounded to nine
/// decimals so the grid prints cleanly.
pub fn parse_pgrid(spec: &str) -> Result<Vec<f64>, ExperimentError> {
    let bad = || ExperimentError::Config(format!("p grid must look like a:b:step, got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    let [a, b, step] = parts[..] else { return Err(bad()) };
    if step.is_nan() || step <= 0.0 || !a.is_finite() || !b.is_finite() || b < a {
        return Err(bad());
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|k| ((a + k as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HittingTimeRecord {
    pub n: usize,
    pub seed: u64,
    /// First step at which FS(X_t, Y_t) has no isolated vertex.
    pub t_iso: usize,
    /// First step at which FS(X_t, Y_t) is connected.
    pub t_conn: usize,
}

/// Starting from two empty graphs, step `t` adds one uniformly random absent
/// edge to `X` and then one to `Y`, each from its own stream; FS(X_t, Y_t) is
/// analysed exactly after every step until it is connected.
pub fn hitting_time_trial(n: usize, seed: u64, cap: Cap) -> Result<HittingTimeRecord, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::Config(format!("hitting times need n >= 2, got {n}")));
    }
    if n > cap.max_n() {
        return Err(FsError::CapExceeded { n, cap: cap.max_n() }.into());
    }
    let order = |stream| {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(stream_seed(seed, 0, stream)));
        pairs
    };
    let (ox, oy) = (order(0), order(1));
    let (mut x, mut y) = (Graph::empty(n), Graph::empty(n));
    let mut t_iso = None;
    for t in 0..=ox.len() {
        if t > 0 {
            x.add_edge(ox[t - 1].0, ox[t - 1].1);
            y.add_edge(oy[t - 1].0, oy[t - 1].1);
        }
        let s = fs::components_capped(&x, &y, cap)?;
        if t_iso.is_none() && s.isolated_count == 0 {
            t_iso = Some(t);
        }
        if s.is_connected() {
            let t_iso = t_iso.expect("a connected FS graph on n >= 2 has no isolated vertex");
            return Ok(HittingTimeRecord {
                n,
                seed,
                t_iso,
                t_conn: t,
            });
        }
    }
    unreachable!("FS(K_n, K_n) is connected")
}

/// `trials` hitting-time runs, trial `i` seeded with `stream_seed(seed, i, 2)`.
pub fn run_hitting(n: usize, trials: usize, seed: u64, cap: Cap) -> Result<Vec<HittingTimeRecord>, ExperimentError> {
    (0..trials as u64)
        .into_par_iter()
        .map(|i| hitting_time_trial(n, stream_seed(seed, i, 2), cap))
        .collect()
}

pub const CSV_HEADER: &str =
    "mode,size,p,trials,seed,frac_connected,frac_isolated_exists,frac_exactly_two,mean_components,wall_ms";

/// CSV with [`CSV_HEADER`]. Without timing, `wall_ms` is written as 0 so
/// the output is byte-identical across runs.
pub fn write_csv<W: Write>(
    records: &[ExperimentRecord],
    include_timing: bool,
    mut out: W,
) -> Result<(), ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::Empty);
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{:.6},{:.6},{:.6},{}",
            r.mode.token(),
            r.size,
            r.p,
            r.trials,
            r.seed,
            r.frac_connected,
            r.frac_isolated_exists,
            r.frac_exactly_two,
            r.mean_components,
            if include_timing { r.wall_ms } else { 0 }
        )?;
    }
    Ok(())
}

pub fn write_hitting_csv<W: Write>(records: &[HittingTimeRecord], mut out: W) -> Result<(), ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::Empty);
    }
    writeln!(out, "n,seed,t_iso,t_conn")?;
    for r in records {
        writeln!(out, "{},{},{},{}", r.n, r.seed, r.t_iso, r.t_conn)?;
    }
    Ok(())
}

/// A line plot of `frac_connected` (solid) and `frac_isolated_exists`
/// (dashed) against `p`.
pub fn render_svg(records: &[ExperimentRecord]) -> Result<String, ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::Empty);
    }
    let (w, h, pad) = (480.0, 320.0, 40.0);
    let px = |p: f64| pad + p * (w - 2.0 * pad);
    let py = |f: f64| h - pad - f * (h - 2.0 * pad);
    let line = |f: &dyn Fn(&ExperimentRecord) -> f64| {
        records
            .iter()
            .map(|r| format!("{:.1},{:.1}", px(r.p), py(f(r))))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut svg = String::new();
    let r0 = &records[0];
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<path d="M{pad},{pad} V{b} H{r}" fill="none" stroke="black"/>"#,
        b = h - pad,
        r = w - pad
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{x}" y="{y}" font-size="12" text-anchor="middle">p</text>"#,
        x = w / 2.0,
        y = h - 8.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{pad}" y="20" font-size="12">{} size={} trials={}</text>"#,
        r0.mode.token(),
        r0.size,
        r0.trials
    )
    .unwrap();
    writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
        line(&|r| r.frac_connected)
    )
    .unwrap();
    writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="firebrick" stroke-width="2" stroke-dasharray="5,4"/>"#,
        line(&|r| r.frac_isolated_exists)
    )
    .unwrap();
    svg.push_str("</svg>\n");
    Ok(svg)
}
