//! The polarized-class invariants: φ, μ, the gonality bound of the general
//! member (`gengon`), genus, the doubled-cover (K3 side) gonality and
//! Clifford index, and the minimal-divisor search on the cover.
//!
//! Everything returns witnesses. Minimum searches run over pairing fibers
//! with exact termination bounds: φ is bounded by the isotropic seeds of the
//! lattice, μ by its Hodge-index floor and a cap, and the cover search by
//! the cap plus the constraint 2M² ≤ M·L.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::isqrt_ceil;
use crate::enumeration::{FiberFlags, FiberSolver};
use crate::error::{Error, Result};
use crate::lattice::{preset, CoverPair, LatticeVector, PolarizedClass};

/// Which side condition the μ-search imposes on candidates B.
///
/// `Unrestricted` minimizes B·C − 2 over all B with B² = 4, B ≠ C on the
/// positive side. `PhiTwo` additionally requires φ(B) = 2; it is the
/// default because the unrestricted form can undercut the gonality floor
/// (μ = 1 on C = e+f), which the extra condition repairs. Both are kept
/// and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuMode {
    Unrestricted,
    PhiTwo,
}

impl Default for MuMode {
    fn default() -> Self {
        MuMode::PhiTwo
    }
}

/// μ is either a found minimum or "nothing at or below the searched cap".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MuValue {
    Finite(i64),
    Unbounded { unbounded_above: i64 },
}

impl MuValue {
    pub fn finite(self) -> Option<i64> {
        match self {
            MuValue::Finite(v) => Some(v),
            MuValue::Unbounded { .. } => None,
        }
    }

    /// The value used inside min-comparisons: ∞ for the unbounded case.
    fn for_min(self) -> i64 {
        self.finite().unwrap_or(i64::MAX)
    }
}

/// Which term of min(2φ, μ, ⌊C²/4⌋+2) attains the minimum; ties list all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Achiever {
    TwoPhi,
    Mu,
    Quarter,
}

#[derive(Debug, Clone)]
pub struct PhiResult {
    pub value: i64,
    /// All isotropic witnesses at the minimum, sorted; the first is the
    /// lexicographically smallest.
    pub witnesses: Vec<LatticeVector>,
}

#[derive(Debug, Clone)]
pub struct MuResult {
    pub value: MuValue,
    pub witnesses: Vec<LatticeVector>,
}

/// φ(C): the minimum of |F·C| over nonzero isotropic F, with witnesses.
///
/// The search walks t = 1, 2, … and stops at the seed bound
/// min_s |s·C| over the lattice's isotropic seeds, which is always
/// achieved. Witnesses at the minimal t are automatically primitive: an
/// imprimitive F = kF' would put F' in a strictly smaller fiber.
pub fn phi(class: &PolarizedClass) -> Result<PhiResult> {
    let lat = class.lattice();
    if lat.iso_seeds().is_empty() {
        return Err(Error::NoIsotropicSeed);
    }
    let mut bound = i64::MAX;
    for s in lat.iso_seeds() {
        let p = lat.inner(s, class.coords())?.abs();
        if p == 0 {
            return Err(Error::Internal(
                "isotropic seed orthogonal to a positive class".into(),
            ));
        }
        bound = bound.min(p);
    }
    let solver = FiberSolver::new(class)?;
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    for t in 1..=bound {
        if t % solver.divisibility() != 0 {
            continue;
        }
        let fiber = solver.solve(t, 0, flags)?;
        if !fiber.is_empty() {
            debug_assert!(fiber.vectors.iter().all(|w| w.is_primitive()));
            return Ok(PhiResult {
                value: t,
                witnesses: fiber.vectors,
            });
        }
    }
    Err(Error::Internal("isotropic seed bound was not reached".into()))
}

/// μ(C): the minimum of B·C − 2 over B on the positive side with B² = 4
/// and B ≠ C (coordinate inequality), searched for values up to `cap`.
///
/// The Hodge index theorem gives (B·C)² ≥ 4C², so the scan starts at
/// t = ⌈2√C²⌉ and runs to cap + 2; `cap` below the resulting floor is
/// rejected. In `PhiTwo` mode candidates must also have φ(B) = 2.
pub fn mu(class: &PolarizedClass, mode: MuMode, cap: i64) -> Result<MuResult> {
    let c2 = class.self_int();
    let hodge_floor = isqrt_ceil(4 * c2) - 2;
    if cap < hodge_floor {
        return Err(Error::CapBelowHodgeFloor {
            cap,
            floor: hodge_floor,
        });
    }
    let solver = FiberSolver::new(class)?;
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    for t in (hodge_floor + 2)..=(cap + 2) {
        if t % solver.divisibility() != 0 {
            continue;
        }
        let fiber = solver.solve(t, 4, flags)?;
        let mut witnesses = Vec::new();
        for b in fiber.vectors {
            if b.coords() == class.coords() {
                continue;
            }
            if mode == MuMode::PhiTwo {
                let b_class = PolarizedClass::new(b.clone(), class.ample().clone())?;
                if phi(&b_class)?.value != 2 {
                    continue;
                }
            }
            witnesses.push(b);
        }
        if !witnesses.is_empty() {
            return Ok(MuResult {
                value: MuValue::Finite(t - 2),
                witnesses,
            });
        }
    }
    Ok(MuResult {
        value: MuValue::Unbounded {
            unbounded_above: cap,
        },
        witnesses: Vec::new(),
    })
}

/// ⌊C²/4⌋ + 2, the third term of the gonality minimum.
pub fn quarter_term(self_int: i64) -> i64 {
    self_int.div_euclid(4) + 2
}

/// Minimal-divisor search on the cover: minimizes L·M − M² − 2 over
/// classes M of the doubled lattice with M on the positive side, M² ≥ 0,
/// 2M² ≤ M·L, and value ≤ `cliff_cap`, where L is the pullback of C.
///
/// Terminates because 2M² ≤ M·L forces value ≥ M² − 2, so M² ≤ cap + 2,
/// and per norm the pairing runs from the Hodge floor ⌈√(M²·L²)⌉ to
/// M² + cap + 2. Isotropic M contribute exactly 2φ(C) − 2. Returns None
/// when nothing meets the cap; ties keep the first (lowest-norm,
/// lexicographically smallest) witness.
pub fn dm_min(
    class: &PolarizedClass,
    pair: &CoverPair,
    cliff_cap: i64,
) -> Result<Option<(i64, LatticeVector)>> {
    if pair.base().gram() != class.lattice().gram() {
        return Err(Error::LatticePairMismatch);
    }
    if cliff_cap < 0 {
        return Err(Error::InvalidArgument(format!(
            "cliff_cap must be >= 0, got {cliff_cap}"
        )));
    }
    let lifted = PolarizedClass::new(
        pair.pullback(class.vector())?,
        pair.pullback(class.ample())?,
    )?;
    let l2 = lifted.self_int();
    let solver = FiberSolver::new(&lifted)?;
    let flags = FiberFlags {
        primitive_only: false,
        positive_side: true,
    };
    // Doubled pairings are even; doubled even lattices have norms = 0 mod 4.
    let step = if pair.cover().is_two_divisible() { 4 } else { 2 };
    let mut best: Option<(i64, LatticeVector)> = None;
    let mut m = 0i64;
    while m <= cliff_cap + 2 {
        let t_lo = 1.max(2 * m).max(isqrt_ceil(m * l2));
        let t_hi = m + cliff_cap + 2;
        for t in t_lo..=t_hi {
            let value = t - m - 2;
            if let Some((bv, _)) = &best {
                if value >= *bv {
                    break;
                }
            }
            if t % solver.divisibility() != 0 {
                continue;
            }
            let fiber = solver.solve(t, m, flags)?;
            if let Some(witness) = fiber.vectors.into_iter().next() {
                best = Some((value, witness));
                break;
            }
        }
        m += step;
    }
    Ok(best)
}

/// Position of a vector relative to the ample reference of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConePosition {
    PositiveSide,
    NegativeSide,
    Orthogonal,
}

pub fn cone_position(x: &LatticeVector, class: &PolarizedClass) -> Result<ConePosition> {
    let s = x.pair(class.ample())?;
    Ok(if s > 0 {
        ConePosition::PositiveSide
    } else if s < 0 {
        ConePosition::NegativeSide
    } else {
        ConePosition::Orthogonal
    })
}

/// Big-and-nef proxy on an unnodal surface: x² > 0 and x·h > 0.
pub fn is_big_and_nef(x: &LatticeVector, class: &PolarizedClass) -> Result<bool> {
    Ok(x.norm() > 0 && x.pair(class.ample())? > 0)
}

/// Knobs for `InvariantReport::compute`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    pub mu_mode: MuMode,
    /// Override for the μ search cap. The default,
    /// max(min(2φ, quarter) + 2, Hodge floor), is lossless for gengon:
    /// any μ beyond it cannot attain the minimum.
    pub mu_cap: Option<i64>,
    /// Override for the cover search cap; floored at 2φ − 2 so the report's
    /// minimal-divisor fields are always populated.
    pub cliff_cap: Option<i64>,
}

/// Everything computed for one polarized class. Witness fields hold plain
/// coordinates so reports serialize and round-trip exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub class: Vec<i64>,
    pub ample: Vec<i64>,
    pub self_int: i64,
    pub genus: i64,
    pub max_gonality: i64,
    pub phi: i64,
    pub phi_witness: Vec<i64>,
    pub mu_mode: MuMode,
    pub mu: MuValue,
    pub mu_witness: Option<Vec<i64>>,
    pub quarter_term: i64,
    pub gengon: i64,
    pub achiever: Vec<Achiever>,
    pub k3_self_int: i64,
    pub k3_genus: i64,
    pub k3_gonality: i64,
    pub k3_witness: Vec<i64>,
    pub k3_clifford: i64,
    pub k3_max_gonality: i64,
    pub dm_value: i64,
    pub dm_witness: Vec<i64>,
    pub dm_witness_self_int: i64,
}

impl InvariantReport {
    pub fn compute(class: &PolarizedClass, opts: &ReportOptions) -> Result<InvariantReport> {
        let c2 = class.self_int();
        if c2 % 2 != 0 {
            return Err(Error::OddSelfIntersection(c2));
        }
        let phi_r = phi(class)?;
        let two_phi = 2 * phi_r.value;
        let quarter = quarter_term(c2);
        let hodge_floor = isqrt_ceil(4 * c2) - 2;
        let mu_cap = match opts.mu_cap {
            Some(c) => c,
            None => (two_phi.min(quarter) + 2).max(hodge_floor),
        };
        let mu_r = mu(class, opts.mu_mode, mu_cap)?;
        let gengon = two_phi.min(mu_r.value.for_min()).min(quarter);
        let mut achiever = Vec::new();
        if two_phi == gengon {
            achiever.push(Achiever::TwoPhi);
        }
        if mu_r.value.for_min() == gengon {
            achiever.push(Achiever::Mu);
        }
        if quarter == gengon {
            achiever.push(Achiever::Quarter);
        }
        let genus = c2 / 2 + 1;

        let pair = CoverPair::new(Arc::clone(class.lattice()))?;
        let k3_genus = c2 + 1;
        let k3_gonality = two_phi;
        let k3_witness = pair.pullback(&phi_r.witnesses[0])?;
        let k3_clifford = k3_gonality - 2;
        let cliff_cap = opts
            .cliff_cap
            .map_or(k3_clifford, |c| c.max(k3_clifford));
        let (dm_value, dm_wit) = dm_min(class, &pair, cliff_cap)?
            .ok_or_else(|| Error::Internal("cover search missed its isotropic floor".into()))?;
        let dm_witness_self_int = dm_wit.norm();

        Ok(InvariantReport {
            class: class.coords().to_vec(),
            ample: class.ample().coords().to_vec(),
            self_int: c2,
            genus,
            max_gonality: (genus + 3).div_euclid(2),
            phi: phi_r.value,
            phi_witness: phi_r.witnesses[0].coords().to_vec(),
            mu_mode: opts.mu_mode,
            mu: mu_r.value,
            mu_witness: mu_r.witnesses.first().map(|w| w.coords().to_vec()),
            quarter_term: quarter,
            gengon,
            achiever,
            k3_self_int: 2 * c2,
            k3_genus,
            k3_gonality,
            k3_witness: k3_witness.coords().to_vec(),
            k3_clifford,
            k3_max_gonality: (k3_genus + 3).div_euclid(2),
            dm_value,
            dm_witness: dm_wit.coords().to_vec(),
            dm_witness_self_int,
        })
    }
}

/// The gonality-side report (φ, μ, gengon, genus bounds) for any class on
/// a hyperbolic lattice with isotropic seeds.
pub fn gengon_report(class: &PolarizedClass, opts: &ReportOptions) -> Result<InvariantReport> {
    InvariantReport::compute(class, opts)
}

/// The cover-side report, restricted to the rank-10 Enriques lattice, with
/// its parity and clamp guarantees checked.
pub fn k3_report(class: &PolarizedClass) -> Result<InvariantReport> {
    let reference = preset("enriques_num")?;
    if class.lattice().gram() != reference.gram() {
        return Err(Error::WrongLattice);
    }
    let report = InvariantReport::compute(class, &ReportOptions::default())?;
    if report.k3_gonality % 2 != 0
        || report.k3_clifford != report.k3_gonality - 2
        || report.k3_gonality > report.k3_max_gonality
    {
        return Err(Error::Internal(
            "cover gonality violated its parity or clamp guarantee".into(),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;
    use proptest::prelude::*;

    fn enr() -> Arc<Lattice> {
        Arc::new(preset("enriques_num").unwrap())
    }

    fn enr_class(lat: &Arc<Lattice>, coords: Vec<i64>) -> PolarizedClass {
        let mut h = vec![0i64; 10];
        h[0] = 1;
        h[1] = 1;
        PolarizedClass::new(lat.vector(coords).unwrap(), lat.vector(h).unwrap()).unwrap()
    }

    fn pad(mut v: Vec<i64>) -> Vec<i64> {
        v.resize(10, 0);
        v
    }

    #[test]
    fn phi_worked_examples() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let r = phi(&c).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].coords(), &pad(vec![0, 1])[..]);

        let ef = enr_class(&lat, pad(vec![1, 1]));
        let r = phi(&ef).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(
            r.witnesses.iter().map(|w| w.coords().to_vec()).collect::<Vec<_>>(),
            vec![pad(vec![0, 1]), pad(vec![1, 0])]
        );
    }

    #[test]
    fn phi_needs_seeds() {
        let l = Arc::new(Lattice::from_gram(vec![vec![2, 0], vec![0, -2]]).unwrap());
        let h = l.vector(vec![1, 0]).unwrap();
        let c = PolarizedClass::new(l.vector(vec![1, 0]).unwrap(), h).unwrap();
        assert!(matches!(phi(&c), Err(Error::NoIsotropicSeed)));
    }

    #[test]
    fn mu_unrestricted_worked_examples() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let r = mu(&c, MuMode::Unrestricted, 6).unwrap();
        assert_eq!(r.value, MuValue::Finite(5));
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].coords(), &pad(vec![1, 2])[..]);

        let ef = enr_class(&lat, pad(vec![1, 1]));
        let r = mu(&ef, MuMode::Unrestricted, 4).unwrap();
        assert_eq!(r.value, MuValue::Finite(1));
        assert_eq!(r.witnesses[0].coords(), &pad(vec![1, 2])[..]);
    }

    #[test]
    fn mu_phi_two_excludes_low_phi_candidates() {
        let lat = enr();
        let ef = enr_class(&lat, pad(vec![1, 1]));
        let r = mu(&ef, MuMode::PhiTwo, 4).unwrap();
        assert_eq!(r.value, MuValue::Finite(2));
        assert!(!r.witnesses.is_empty());
        for b in &r.witnesses {
            assert_eq!(b.norm(), 4);
            assert_eq!(b.pair(ef.vector()).unwrap(), 4);
            assert_ne!(b.coords(), &pad(vec![1, 2])[..]);
            let b_class =
                PolarizedClass::new(b.clone(), ef.ample().clone()).unwrap();
            assert_eq!(phi(&b_class).unwrap().value, 2);
        }
    }

    #[test]
    fn mu_phi_two_can_push_past_the_default_cap() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let capped = mu(&c, MuMode::PhiTwo, 6).unwrap();
        assert_eq!(capped.value, MuValue::Unbounded { unbounded_above: 6 });
        assert!(capped.witnesses.is_empty());
        let wider = mu(&c, MuMode::PhiTwo, 8).unwrap();
        assert_eq!(wider.value, MuValue::Finite(8));
        for b in &wider.witnesses {
            assert_eq!(b.norm(), 4);
            assert_eq!(b.pair(c.vector()).unwrap(), 10);
        }
    }

    #[test]
    fn mu_rejects_caps_below_the_hodge_floor() {
        let lat = enr();
        let ef = enr_class(&lat, pad(vec![1, 1]));
        assert!(matches!(
            mu(&ef, MuMode::Unrestricted, 0),
            Err(Error::CapBelowHodgeFloor { cap: 0, floor: 1 })
        ));
    }

    #[test]
    fn quarter_term_values() {
        assert_eq!(quarter_term(12), 5);
        assert_eq!(quarter_term(2), 2);
        assert_eq!(quarter_term(4), 3);
        assert_eq!(quarter_term(60), 17);
    }

    #[test]
    fn report_for_the_degree_twelve_class() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        for mode in [MuMode::Unrestricted, MuMode::PhiTwo] {
            let r = InvariantReport::compute(
                &c,
                &ReportOptions {
                    mu_mode: mode,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(r.self_int, 12);
            assert_eq!(r.genus, 7);
            assert_eq!(r.max_gonality, 5);
            assert_eq!(r.phi, 2);
            assert_eq!(r.quarter_term, 5);
            assert_eq!(r.gengon, 4);
            assert_eq!(r.achiever, vec![Achiever::TwoPhi]);
            assert_eq!(r.k3_self_int, 24);
            assert_eq!(r.k3_genus, 13);
            assert_eq!(r.k3_gonality, 4);
            assert_eq!(r.k3_clifford, 2);
            assert_eq!(r.k3_max_gonality, 8);
            assert_eq!(r.dm_value, 2);
            assert_eq!(r.dm_witness, pad(vec![0, 1]));
            assert_eq!(r.dm_witness_self_int, 0);
            match mode {
                MuMode::Unrestricted => assert_eq!(r.mu, MuValue::Finite(5)),
                MuMode::PhiTwo => {
                    assert_eq!(r.mu, MuValue::Unbounded { unbounded_above: 6 })
                }
            }
        }
    }

    #[test]
    fn report_for_e_plus_f_depends_on_mu_mode() {
        let lat = enr();
        let ef = enr_class(&lat, pad(vec![1, 1]));
        let literal = InvariantReport::compute(
            &ef,
            &ReportOptions {
                mu_mode: MuMode::Unrestricted,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(literal.gengon, 1);
        assert_eq!(literal.achiever, vec![Achiever::Mu]);
        assert_eq!(literal.mu, MuValue::Finite(1));

        let repaired = InvariantReport::compute(&ef, &ReportOptions::default()).unwrap();
        assert_eq!(repaired.gengon, 2);
        assert_eq!(
            repaired.achiever,
            vec![Achiever::TwoPhi, Achiever::Mu, Achiever::Quarter]
        );
        assert_eq!(repaired.genus, 2);
        assert_eq!(repaired.k3_genus, 3);
        assert_eq!(repaired.k3_gonality, 2);
        assert_eq!(repaired.k3_clifford, 0);
        assert_eq!(repaired.dm_value, 0);
    }

    #[test]
    fn report_for_a_degree_four_phi_two_class() {
        let lat = enr();
        // U part (2,2) with an E8 tail of self-intersection -4
        let c = enr_class(&lat, pad(vec![2, 2, 1, 1]));
        assert_eq!(c.self_int(), 4);
        let r = InvariantReport::compute(&c, &ReportOptions::default()).unwrap();
        assert_eq!(r.phi, 2);
        assert_eq!(r.mu, MuValue::Finite(3));
        assert_eq!(r.quarter_term, 3);
        assert_eq!(r.gengon, 3);
        assert!(r.achiever.contains(&Achiever::Quarter));
        assert_eq!(r.achiever, vec![Achiever::Mu, Achiever::Quarter]);
        assert_eq!(r.k3_self_int, 8);
        assert_eq!(r.k3_genus, 5);
        assert_eq!(r.k3_gonality, 4);
        assert_eq!(r.k3_max_gonality, 4);
    }

    #[test]
    fn mu_hodge_equality_candidate_is_excluded_as_the_class_itself() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 2, 1, 1]));
        // at t = 4 the Hodge bound is tight and forces B = C
        let solver = FiberSolver::new(&c).unwrap();
        let fiber = solver
            .solve(
                4,
                4,
                FiberFlags {
                    positive_side: true,
                    ..Default::default()
                },
            )
            .unwrap();
        assert_eq!(fiber.coords(), vec![pad(vec![2, 2, 1, 1])]);
    }

    #[test]
    fn dm_min_worked_examples() {
        let lat = enr();
        let pair = CoverPair::enriques();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let (value, witness) = dm_min(&c, &pair, 6).unwrap().unwrap();
        assert_eq!(value, 2);
        assert_eq!(witness.coords(), &pad(vec![0, 1])[..]);
        assert_eq!(witness.norm(), 0);

        // a cap below the isotropic floor finds nothing
        assert!(dm_min(&c, &pair, 1).unwrap().is_none());
        assert!(dm_min(&c, &pair, -1).is_err());
    }

    #[test]
    fn cone_positions() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let e = lat.vector(pad(vec![1, 0])).unwrap();
        let minus_e = lat.vector(pad(vec![-1, 0])).unwrap();
        let root = lat.vector(pad(vec![0, 0, 1])).unwrap();
        assert_eq!(cone_position(&e, &c).unwrap(), ConePosition::PositiveSide);
        assert_eq!(
            cone_position(&minus_e, &c).unwrap(),
            ConePosition::NegativeSide
        );
        assert_eq!(cone_position(&root, &c).unwrap(), ConePosition::Orthogonal);
        assert!(!is_big_and_nef(&e, &c).unwrap());
        assert!(is_big_and_nef(c.vector(), &c).unwrap());
    }

    #[test]
    fn report_serialization_round_trips() {
        let lat = enr();
        let c = enr_class(&lat, pad(vec![2, 3]));
        let r = InvariantReport::compute(&c, &ReportOptions::default()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"unbounded_above\":6"));
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);

        let finite = InvariantReport::compute(
            &c,
            &ReportOptions {
                mu_mode: MuMode::Unrestricted,
                ..Default::default()
            },
        )
        .unwrap();
        let json = serde_json::to_string(&finite).unwrap();
        assert!(json.contains("\"mu\":5"));
        let back: InvariantReport = serde_json::from_str(&json).unwrap();
        assert_eq!(finite, back);
    }

    #[test]
    fn k3_report_requires_the_enriques_lattice() {
        let u = Arc::new(preset("U").unwrap());
        let h = u.vector(vec![1, 1]).unwrap();
        let c = PolarizedClass::new(u.vector(vec![2, 3]).unwrap(), h).unwrap();
        assert!(matches!(k3_report(&c), Err(Error::WrongLattice)));

        let lat = enr();
        let ok = k3_report(&enr_class(&lat, pad(vec![2, 3]))).unwrap();
        assert_eq!(ok.k3_gonality, 4);
    }

    #[test]
    fn odd_self_intersection_has_no_genus() {
        let l = Arc::new(
            Lattice::from_gram(vec![vec![1, 0], vec![0, -1]])
                .unwrap()
                .with_seeds(vec![vec![1, 1], vec![1, -1]])
                .unwrap(),
        );
        let h = l.vector(vec![1, 0]).unwrap();
        let c = PolarizedClass::new(l.vector(vec![1, 0]).unwrap(), h).unwrap();
        assert!(matches!(
            InvariantReport::compute(&c, &ReportOptions::default()),
            Err(Error::OddSelfIntersection(1))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn report_properties_hold_on_random_classes(
            a in 1i64..=4,
            b in 1i64..=4,
            i in 0usize..8,
            j in 0usize..8,
            vi in -2i64..=2,
            vj in -2i64..=2,
        ) {
            let lat = enr();
            let mut coords = vec![0i64; 10];
            coords[0] = a;
            coords[1] = b;
            coords[2 + i] += vi;
            coords[2 + j] += vj;
            let norm = lat.norm(&coords).unwrap();
            prop_assume!(norm > 0);
            let class = enr_class(&lat, coords);
            let r = InvariantReport::compute(&class, &ReportOptions::default()).unwrap();

            let mu_min = r.mu.for_min();
            prop_assert_eq!(r.gengon, (2 * r.phi).min(mu_min).min(r.quarter_term));
            prop_assert!(2 * r.phi <= r.gengon + 2);
            prop_assert!(r.gengon <= r.max_gonality);
            prop_assert_eq!(r.k3_gonality, 2 * r.phi);
            prop_assert!(r.gengon <= r.k3_gonality && r.k3_gonality <= 2 * r.gengon);
            prop_assert_eq!(r.k3_gonality % 2, 0);
            prop_assert_eq!(r.k3_clifford, r.k3_gonality - 2);
            prop_assert!(r.k3_gonality <= r.k3_max_gonality);
            prop_assert!(r.phi * r.phi <= r.self_int);
            prop_assert_eq!(r.genus, r.self_int / 2 + 1);
            prop_assert_eq!(r.k3_genus, 2 * r.genus - 1);
            prop_assert_eq!(r.dm_value, r.k3_gonality - 2);
            prop_assert_eq!(r.dm_witness_self_int, 0);
            if r.gengon < 2 * r.phi {
                prop_assert!(
                    r.self_int >= 10
                        || (r.self_int, r.phi) == (6, 2)
                        || (r.self_int, r.phi) == (4, 2)
                );
            }
        }
    }
}
