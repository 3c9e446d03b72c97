//! Sampling, sweeping, and property-checking over polarized classes.
//!
//! `run_suite` recomputes every reported relation from parts and counts
//! passes per property. A failed check is never dropped: it becomes a
//! `Violation` carrying the class, the full report, the seed, and — where
//! the box oracle's certified range reaches — an independent confirmation
//! bit, so a genuine counterexample can be told apart from a solver bug.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::enumeration::boxscan::BoxOracle;
use crate::enumeration::FiberFlags;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::invariants::{
    phi, Achiever, InvariantReport, MuMode, MuValue, ReportOptions,
};
use crate::lattice::{default_ample, CoverPair, Lattice, LatticeVector, PolarizedClass};

/// Recorded in every report header so a reader can reproduce the sample.
pub const GENERATOR_ID: &str = "chacha8-64";

/// When the coordinate box holds at most this many points, sampling
/// enumerates it exhaustively instead of rejection-sampling.
const ENUMERABLE_POINTS: u128 = 1_000_000;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub lattice: Arc<Lattice>,
    /// Reference polarization coordinates; defaults per lattice when None.
    pub ample: Option<Vec<i64>>,
    pub sample_count: usize,
    pub norm_cap: i64,
    pub box_radius: i64,
    pub rng_seed: u64,
    pub mu_mode: MuMode,
}

impl SuiteConfig {
    pub fn new(lattice: Arc<Lattice>) -> Self {
        SuiteConfig {
            lattice,
            ample: None,
            sample_count: 100,
            norm_cap: 60,
            box_radius: 3,
            rng_seed: 0,
            mu_mode: MuMode::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.norm_cap < 2 {
            return Err(Error::InvalidArgument(format!(
                "norm_cap must be >= 2, got {}",
                self.norm_cap
            )));
        }
        if self.sample_count < 1 {
            return Err(Error::InvalidArgument(
                "sample_count must be >= 1".into(),
            ));
        }
        if self.box_radius < 1 {
            return Err(Error::InvalidArgument(format!(
                "box_radius must be >= 1, got {}",
                self.box_radius
            )));
        }
        Ok(())
    }

    fn ample_vector(&self) -> Result<LatticeVector> {
        match &self.ample {
            Some(coords) => self.lattice.vector(coords.clone()),
            None => {
                let coords = default_ample(&self.lattice)?;
                self.lattice.vector(coords)
            }
        }
    }
}

/// Normalizes raw coordinates into a canonical sampled class: content 1,
/// positive side of `h`. Returns None when the vector cannot be a class.
fn canonicalize(
    lattice: &Arc<Lattice>,
    ample: &LatticeVector,
    coords: &[i64],
    norm_cap: i64,
) -> Option<Vec<i64>> {
    let norm = lattice.norm(coords).ok()?;
    if norm <= 0 {
        return None;
    }
    let (content, _) = lattice.primitivity(coords).ok()?;
    let reduced: Vec<i64> = coords.iter().map(|c| c / content).collect();
    let reduced_norm = lattice.norm(&reduced).ok()?;
    if reduced_norm > norm_cap {
        return None;
    }
    let side = lattice.inner(&reduced, ample.coords()).ok()?;
    if side == 0 {
        return None;
    }
    Some(if side < 0 {
        reduced.iter().map(|c| -c).collect()
    } else {
        reduced
    })
}

/// Deterministic pseudorandom classes in a coordinate box, primitive, with
/// C² in (0, norm_cap] on the positive side of the reference polarization.
///
/// Small boxes are enumerated exhaustively and the request is filled by a
/// seeded draw from the resulting pool, so exhaustion is detected exactly;
/// large boxes fall back to seeded rejection sampling with a generous
/// attempt budget.
pub fn sample_classes(cfg: &SuiteConfig) -> Result<Vec<PolarizedClass>> {
    cfg.validate()?;
    let ample = cfg.ample_vector()?;
    let rank = cfg.lattice.rank();
    let radius = cfg.box_radius;
    let side = 2 * radius as u128 + 1;
    let points = side.checked_pow(rank as u32).unwrap_or(u128::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);

    let chosen: Vec<Vec<i64>> = if points <= ENUMERABLE_POINTS {
        let mut pool: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut coords = vec![-radius; rank];
        loop {
            if let Some(c) = canonicalize(&cfg.lattice, &ample, &coords, cfg.norm_cap) {
                pool.insert(c);
            }
            let mut level = 0;
            loop {
                if level == rank {
                    break;
                }
                coords[level] += 1;
                if coords[level] <= radius {
                    break;
                }
                coords[level] = -radius;
                level += 1;
            }
            if level == rank {
                break;
            }
        }
        let pool: Vec<Vec<i64>> = pool.into_iter().collect();
        if pool.len() <= cfg.sample_count {
            pool
        } else {
            let picked =
                rand::seq::index::sample(&mut rng, pool.len(), cfg.sample_count);
            picked.into_iter().map(|i| pool[i].clone()).collect()
        }
    } else {
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut out = Vec::new();
        let budget = 50_000usize.max(cfg.sample_count.saturating_mul(600));
        for _ in 0..budget {
            if out.len() == cfg.sample_count {
                break;
            }
            // Sparse draws: most of the box has hugely negative norm, so
            // each coordinate is zeroed half the time to keep the accepted
            // fraction workable. Still deterministic in the seed.
            let coords: Vec<i64> = (0..rank)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        rng.gen_range(-radius..=radius)
                    } else {
                        0
                    }
                })
                .collect();
            if let Some(c) = canonicalize(&cfg.lattice, &ample, &coords, cfg.norm_cap) {
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
        }
        out
    };

    if chosen.is_empty() {
        return Err(Error::EmptySampleSpace);
    }
    chosen
        .into_iter()
        .map(|coords| {
            PolarizedClass::new(cfg.lattice.vector(coords)?, ample.clone())
        })
        .collect()
}

/// Exhaustive deterministic class enumeration: the first `head_len`
/// coordinates range over [head_lo, head_hi]; at most `max_nonzero_tail`
/// of the remaining coordinates are nonzero, each in [tail_lo, tail_hi].
/// Primitive classes with C² in (0, norm_cap] on the positive side are
/// returned sorted.
#[derive(Debug, Clone, Copy)]
pub struct SweepSpec {
    pub head_len: usize,
    pub head_lo: i64,
    pub head_hi: i64,
    pub tail_lo: i64,
    pub tail_hi: i64,
    pub max_nonzero_tail: usize,
    pub norm_cap: i64,
}

pub fn sweep_classes(
    lattice: &Arc<Lattice>,
    ample: &LatticeVector,
    spec: &SweepSpec,
) -> Result<Vec<PolarizedClass>> {
    let rank = lattice.rank();
    if spec.head_len > rank {
        return Err(Error::InvalidArgument(format!(
            "head_len {} exceeds rank {rank}",
            spec.head_len
        )));
    }
    if spec.head_lo > spec.head_hi || spec.tail_lo > spec.tail_hi {
        return Err(Error::InvalidArgument("empty sweep range".into()));
    }
    let tail_len = rank - spec.head_len;
    let mut kept: BTreeSet<Vec<i64>> = BTreeSet::new();

    let mut heads: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..spec.head_len {
        let mut next = Vec::new();
        for h in &heads {
            for v in spec.head_lo..=spec.head_hi {
                let mut h = h.clone();
                h.push(v);
                next.push(h);
            }
        }
        heads = next;
    }

    let mut tails: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    fn extend_tails(
        acc: &mut Vec<Vec<(usize, i64)>>,
        current: &mut Vec<(usize, i64)>,
        start: usize,
        tail_len: usize,
        remaining: usize,
        lo: i64,
        hi: i64,
    ) {
        if remaining == 0 {
            return;
        }
        for idx in start..tail_len {
            for v in lo..=hi {
                if v == 0 {
                    continue;
                }
                current.push((idx, v));
                acc.push(current.clone());
                extend_tails(acc, current, idx + 1, tail_len, remaining - 1, lo, hi);
                current.pop();
            }
        }
    }
    extend_tails(
        &mut tails,
        &mut Vec::new(),
        0,
        tail_len,
        spec.max_nonzero_tail,
        spec.tail_lo,
        spec.tail_hi,
    );

    for head in &heads {
        for tail in &tails {
            let mut coords = vec![0i64; rank];
            coords[..spec.head_len].copy_from_slice(head);
            for &(idx, v) in tail {
                coords[spec.head_len + idx] = v;
            }
            if lattice.primitivity(&coords)?.0 != 1 {
                continue;
            }
            let norm = lattice.norm(&coords)?;
            if norm <= 0 || norm > spec.norm_cap {
                continue;
            }
            if lattice.inner(&coords, ample.coords())? <= 0 {
                continue;
            }
            kept.insert(coords);
        }
    }

    kept.into_iter()
        .map(|coords| PolarizedClass::new(lattice.vector(coords)?, ample.clone()))
        .collect()
}

pub const PROPERTY_NAMES: [&str; 10] = [
    "gengon_definition",
    "two_phi_within_two_of_gengon",
    "k3_parity_and_clifford_offset",
    "k3_gonality_clamp",
    "double_cover_bounds",
    "low_gengon_classification",
    "mu_witness_hodge_bound",
    "phi_squared_bound",
    "genus_relations",
    "cover_min_matches_isotropic_floor",
];

pub const LATTICE_CHECK_NAMES: [&str; 3] = [
    "cover_two_divisibility",
    "pairing_doubling",
    "push_pull_composition",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCount {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub property: String,
    pub class: Vec<i64>,
    pub rng_seed: u64,
    pub detail: String,
    /// Independent box-oracle verdict: Some(true) = the box agrees with
    /// the reported numbers (genuine counterexample), Some(false) = the
    /// two code paths disagree (implementation bug), None = outside the
    /// box's certified range.
    pub box_confirmed: Option<bool>,
    pub report: InvariantReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub generator: String,
    pub rng_seed: u64,
    pub mu_mode: MuMode,
    pub sampled: usize,
    pub properties: Vec<PropertyCount>,
    pub violations: Vec<Violation>,
    pub lattice_failures: Vec<String>,
    pub elapsed_ms: u64,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.violations.is_empty() && self.lattice_failures.is_empty()
    }

    /// Equality modulo elapsed time, the determinism contract.
    pub fn deterministic_eq(&self, other: &SuiteReport) -> bool {
        self.generator == other.generator
            && self.rng_seed == other.rng_seed
            && self.mu_mode == other.mu_mode
            && self.sampled == other.sampled
            && self.properties == other.properties
            && self.violations == other.violations
            && self.lattice_failures == other.lattice_failures
    }
}

/// Per-class checks; returns (property index, failure detail) pairs.
fn check_class(class: &PolarizedClass, r: &InvariantReport) -> Vec<(usize, String)> {
    let mut fails = Vec::new();
    let mut fail = |idx: usize, detail: String| fails.push((idx, detail));

    let two_phi = 2 * r.phi;
    let mu_min = r.mu.finite().unwrap_or(i64::MAX);
    let expected = two_phi.min(mu_min).min(r.quarter_term);
    if r.gengon != expected {
        fail(0, format!("gengon {} != min parts {expected}", r.gengon));
    }
    if two_phi > r.gengon + 2 {
        fail(1, format!("2*phi {two_phi} > gengon {} + 2", r.gengon));
    }
    if r.k3_gonality % 2 != 0 || r.k3_clifford != r.k3_gonality - 2 {
        fail(
            2,
            format!(
                "k3 gonality {} / clifford {}",
                r.k3_gonality, r.k3_clifford
            ),
        );
    }
    if r.k3_gonality > r.k3_max_gonality {
        fail(
            3,
            format!("k3 gonality {} > clamp {}", r.k3_gonality, r.k3_max_gonality),
        );
    }
    if r.k3_gonality != two_phi
        || !(r.gengon <= r.k3_gonality && r.k3_gonality <= 2 * r.gengon)
    {
        fail(
            4,
            format!(
                "cover bounds: gengon {} k3 {} (2*phi {two_phi})",
                r.gengon, r.k3_gonality
            ),
        );
    }
    if r.gengon < two_phi {
        let pair = (r.self_int, r.phi);
        if !(r.self_int >= 10 || pair == (6, 2) || pair == (4, 2)) {
            fail(5, format!("gengon below 2*phi at (C^2, phi) = {pair:?}"));
        }
    }
    if let Some(bw) = &r.mu_witness {
        let lat = class.lattice();
        let bc = lat.inner(bw, class.coords()).unwrap_or(i64::MIN);
        let b2 = lat.norm(bw).unwrap_or(i64::MIN);
        if b2 != 4 || bc * bc < 4 * r.self_int {
            fail(6, format!("mu witness B^2 = {b2}, B.C = {bc}"));
        }
    }
    if r.phi * r.phi > r.self_int {
        fail(7, format!("phi^2 {} > C^2 {}", r.phi * r.phi, r.self_int));
    }
    if r.genus != r.self_int / 2 + 1 || r.k3_genus != 2 * r.genus - 1 {
        fail(8, format!("genus {} / cover genus {}", r.genus, r.k3_genus));
    }
    let sandwich = r.dm_value + 2 <= r.k3_gonality && r.k3_gonality <= r.dm_value + 3;
    if !sandwich || r.dm_value != two_phi - 2 || r.dm_witness_self_int != 0 {
        fail(
            9,
            format!(
                "cover minimum {} vs 2*phi - 2 = {}, witness norm {}",
                r.dm_value,
                two_phi - 2,
                r.dm_witness_self_int
            ),
        );
    }
    fails
}

/// Combines per-ingredient confirmations: any disagreement wins, then any
/// unknown, then agreement.
fn merge_confirm(parts: &[Option<bool>]) -> Option<bool> {
    if parts.iter().any(|p| *p == Some(false)) {
        return Some(false);
    }
    if parts.iter().any(|p| p.is_none()) {
        return None;
    }
    Some(true)
}

/// Checks the report's phi against box fibers: a nonempty box fiber below
/// the claimed value refutes it outright; agreement needs emptiness
/// certified below and a witness at the value.
fn confirm_phi(oracle: &BoxOracle, class: &PolarizedClass, claimed: i64) -> Option<bool> {
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    let fibers = oracle.fibers(class, 0, flags, claimed).ok()?;
    for t in 1..claimed {
        match fibers.get(&t) {
            Some(f) if !f.is_empty() => return Some(false),
            Some(f) if !f.exhaustive => return None,
            _ => {}
        }
    }
    match fibers.get(&claimed) {
        Some(f) if !f.is_empty() => Some(true),
        Some(f) if f.exhaustive => Some(false),
        _ => None,
    }
}

fn confirm_mu(
    oracle: &BoxOracle,
    class: &PolarizedClass,
    mode: MuMode,
    claimed: MuValue,
) -> Option<bool> {
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    let horizon = match claimed {
        MuValue::Finite(v) => v + 2,
        MuValue::Unbounded { unbounded_above } => unbounded_above + 2,
    };
    let fibers = oracle.fibers(class, 4, flags, horizon).ok()?;
    let admissible = |f: &crate::enumeration::FiberResult| -> Option<bool> {
        for b in &f.vectors {
            if b.coords() == class.coords() {
                continue;
            }
            if mode == MuMode::PhiTwo {
                let b_class =
                    PolarizedClass::new(b.clone(), class.ample().clone()).ok()?;
                if phi(&b_class).ok()?.value != 2 {
                    continue;
                }
            }
            return Some(true);
        }
        Some(false)
    };
    for t in 1..=horizon {
        let f = fibers.get(&t)?;
        if admissible(f)? {
            return match claimed {
                MuValue::Finite(v) => Some(t - 2 == v),
                MuValue::Unbounded { .. } => Some(false),
            };
        }
        if !f.exhaustive {
            return None;
        }
    }
    match claimed {
        MuValue::Finite(_) => Some(false),
        MuValue::Unbounded { .. } => Some(true),
    }
}

/// Recomputes the cover-minimum witness arithmetic from its coordinates
/// and, when the box certifies the corresponding base fiber, also checks
/// its presence there.
fn confirm_dm(oracle: &BoxOracle, class: &PolarizedClass, r: &InvariantReport) -> Option<bool> {
    let lat = class.lattice();
    let base_norm = lat.norm(&r.dm_witness).ok()?;
    let base_t = lat.inner(&r.dm_witness, class.coords()).ok()?;
    let cover_norm = 2 * base_norm;
    let cover_t = 2 * base_t;
    let side = lat.inner(&r.dm_witness, class.ample().coords()).ok()?;
    let arithmetic_ok = cover_norm == r.dm_witness_self_int
        && cover_norm >= 0
        && side > 0
        && 2 * cover_norm <= cover_t
        && cover_t - cover_norm - 2 == r.dm_value;
    if !arithmetic_ok {
        return Some(false);
    }
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    if base_t >= 1 {
        if let Ok(fibers) = oracle.fibers(class, base_norm, flags, base_t) {
            if let Some(f) = fibers.get(&base_t) {
                let present = f.coords().iter().any(|c| c[..] == r.dm_witness[..]);
                if present {
                    return Some(true);
                }
                if f.exhaustive {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

fn confirm_violation(
    oracle: Option<&BoxOracle>,
    class: &PolarizedClass,
    r: &InvariantReport,
    property: usize,
) -> Option<bool> {
    let oracle = oracle?;
    let phi_part = || confirm_phi(oracle, class, r.phi);
    let mu_part = || confirm_mu(oracle, class, r.mu_mode, r.mu);
    match property {
        0 | 1 | 4 | 5 => merge_confirm(&[phi_part(), mu_part()]),
        2 | 3 | 7 => phi_part(),
        6 => {
            let lat = class.lattice();
            let bw = r.mu_witness.as_ref()?;
            let b2 = lat.norm(bw).ok()?;
            let bc = lat.inner(bw, class.coords()).ok()?;
            Some(b2 == 4 && bc * bc >= 4 * r.self_int)
        }
        9 => merge_confirm(&[phi_part(), confirm_dm(oracle, class, r)]),
        _ => None,
    }
}

fn lattice_checks(
    lattice: &Arc<Lattice>,
    rng_seed: u64,
) -> Result<(Vec<PropertyCount>, Vec<String>)> {
    let pair = CoverPair::new(Arc::clone(lattice))?;
    let mut counts = Vec::new();
    let mut failures = Vec::new();
    let mut record = |name: &str, ok: bool, detail: String| {
        counts.push(PropertyCount {
            name: name.to_string(),
            passed: ok as u64,
            failed: !ok as u64,
        });
        if !ok {
            failures.push(format!("{name}: {detail}"));
        }
    };

    record(
        LATTICE_CHECK_NAMES[0],
        pair.cover().is_two_divisible(),
        "doubled lattice is not two-divisible".into(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ 0x9e37_79b9_7f4a_7c15);
    let rank = lattice.rank();
    let mut doubling_ok = true;
    let mut doubling_detail = String::new();
    let mut compose_ok = true;
    let mut compose_detail = String::new();
    for _ in 0..1000 {
        let x: Vec<i64> = (0..rank).map(|_| rng.gen_range(-5..=5)).collect();
        let y: Vec<i64> = (0..rank).map(|_| rng.gen_range(-5..=5)).collect();
        let base_pairing = lattice.inner(&x, &y)?;
        let cover_pairing = pair.cover().inner(&x, &y)?;
        let cover_norm = pair.cover().norm(&x)?;
        if cover_pairing != 2 * base_pairing || cover_norm % 4 != 0 {
            doubling_ok = false;
            doubling_detail = format!(
                "x = {x:?}, y = {y:?}: cover pairing {cover_pairing} vs base {base_pairing}, cover norm {cover_norm}"
            );
        }
        let xv = lattice.vector(x.clone())?;
        let back = pair.pushforward(&pair.pullback(&xv)?)?;
        let doubled: Vec<i64> = x.iter().map(|c| 2 * c).collect();
        if back.coords() != &doubled[..] {
            compose_ok = false;
            compose_detail = format!("x = {x:?} came back as {:?}", back.coords());
        }
    }
    record(LATTICE_CHECK_NAMES[1], doubling_ok, doubling_detail);
    record(LATTICE_CHECK_NAMES[2], compose_ok, compose_detail);
    Ok((counts, failures))
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_exec(cfg, Exec::default())
}

pub fn run_suite_exec(cfg: &SuiteConfig, exec: Exec) -> Result<SuiteReport> {
    let start = Instant::now();
    cfg.validate()?;
    let classes = sample_classes(cfg)?;
    let opts = ReportOptions {
        mu_mode: cfg.mu_mode,
        ..Default::default()
    };
    let computed = exec.map(classes, |class| {
        let report = InvariantReport::compute(&class, &opts)?;
        Ok::<_, Error>((class, report))
    });

    let mut counts: Vec<PropertyCount> = PROPERTY_NAMES
        .iter()
        .map(|n| PropertyCount {
            name: n.to_string(),
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut violations = Vec::new();
    let mut oracle: Option<Option<BoxOracle>> = None;
    let mut sampled = 0usize;

    for item in computed {
        let (class, report) = item?;
        sampled += 1;
        let fails = check_class(&class, &report);
        let failed: BTreeSet<usize> = fails.iter().map(|(i, _)| *i).collect();
        for (idx, count) in counts.iter_mut().enumerate() {
            if failed.contains(&idx) {
                count.failed += 1;
            } else {
                count.passed += 1;
            }
        }
        for (idx, detail) in fails {
            let oracle = oracle
                .get_or_insert_with(|| {
                    BoxOracle::new(Arc::clone(class.lattice()), cfg.box_radius).ok()
                })
                .as_ref();
            violations.push(Violation {
                property: PROPERTY_NAMES[idx].to_string(),
                class: class.coords().to_vec(),
                rng_seed: cfg.rng_seed,
                detail,
                box_confirmed: confirm_violation(oracle, &class, &report, idx),
                report: report.clone(),
            });
        }
    }

    let (lattice_counts, lattice_failures) = lattice_checks(&cfg.lattice, cfg.rng_seed)?;
    counts.extend(lattice_counts);

    Ok(SuiteReport {
        generator: GENERATOR_ID.to_string(),
        rng_seed: cfg.rng_seed,
        mu_mode: cfg.mu_mode,
        sampled,
        properties: counts,
        violations,
        lattice_failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// One survey table row; a projection of the full report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub class: Vec<i64>,
    pub self_int: i64,
    pub genus: i64,
    pub phi: i64,
    pub mu: MuValue,
    pub quarter_term: i64,
    pub gengon: i64,
    pub achiever: Vec<Achiever>,
    pub k3_gonality: i64,
    pub k3_clifford: i64,
    pub phi_witness: Vec<i64>,
    pub mu_witness: Option<Vec<i64>>,
    pub dm_value: i64,
    pub dm_witness: Vec<i64>,
}

impl SurveyRow {
    pub(crate) fn from_report(r: &InvariantReport) -> SurveyRow {
        SurveyRow {
            class: r.class.clone(),
            self_int: r.self_int,
            genus: r.genus,
            phi: r.phi,
            mu: r.mu,
            quarter_term: r.quarter_term,
            gengon: r.gengon,
            achiever: r.achiever.clone(),
            k3_gonality: r.k3_gonality,
            k3_clifford: r.k3_clifford,
            phi_witness: r.phi_witness.clone(),
            mu_witness: r.mu_witness.clone(),
            dm_value: r.dm_value,
            dm_witness: r.dm_witness.clone(),
        }
    }
}

/// Surveys an explicit class list; rows sorted by (C², φ, coordinates).
pub fn survey_classes(
    classes: Vec<PolarizedClass>,
    mode: MuMode,
    exec: Exec,
) -> Result<Vec<SurveyRow>> {
    let opts = ReportOptions {
        mu_mode: mode,
        ..Default::default()
    };
    let computed = exec.map(classes, |class| {
        InvariantReport::compute(&class, &opts)
    });
    let mut rows = computed
        .into_iter()
        .map(|r| r.map(|rep| SurveyRow::from_report(&rep)))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        (a.self_int, a.phi, &a.class).cmp(&(b.self_int, b.phi, &b.class))
    });
    Ok(rows)
}

pub fn survey(cfg: &SuiteConfig) -> Result<Vec<SurveyRow>> {
    survey_classes(sample_classes(cfg)?, cfg.mu_mode, Exec::default())
}

pub fn coords_cell(coords: &[i64]) -> String {
    coords
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn mu_cell(mu: MuValue) -> String {
    match mu {
        MuValue::Finite(v) => v.to_string(),
        MuValue::Unbounded { unbounded_above } => format!("inf@{unbounded_above}"),
    }
}

pub fn achiever_cell(achiever: &[Achiever]) -> String {
    achiever
        .iter()
        .map(|a| match a {
            Achiever::TwoPhi => "two_phi",
            Achiever::Mu => "mu",
            Achiever::Quarter => "quarter",
        })
        .collect::<Vec<_>>()
        .join("+")
}

pub fn survey_to_csv(rows: &[SurveyRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record([
            "class",
            "self_int",
            "genus",
            "phi",
            "mu",
            "quarter",
            "gengon",
            "achiever",
            "k3_gonality",
            "k3_clifford",
            "phi_witness",
            "mu_witness",
            "dm_value",
            "dm_witness",
        ])
        .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
    for row in rows {
        writer
            .write_record([
                coords_cell(&row.class),
                row.self_int.to_string(),
                row.genus.to_string(),
                row.phi.to_string(),
                mu_cell(row.mu),
                row.quarter_term.to_string(),
                row.gengon.to_string(),
                achiever_cell(&row.achiever),
                row.k3_gonality.to_string(),
                row.k3_clifford.to_string(),
                coords_cell(&row.phi_witness),
                row.mu_witness.as_deref().map(coords_cell).unwrap_or_default(),
                row.dm_value.to_string(),
                coords_cell(&row.dm_witness),
            ])
            .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Config(format!("csv emit failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(format!("csv emit failed: {e}")))
}

pub fn survey_to_json(rows: &[SurveyRow]) -> Result<String> {
    serde_json::to_string_pretty(rows)
        .map_err(|e| Error::Config(format!("json emit failed: {e}")))
}
