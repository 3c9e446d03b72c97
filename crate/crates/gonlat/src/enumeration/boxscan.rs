//! Brute-force coordinate-box oracle, independent of the fiber solver.
//!
//! Scans every vector with |coord_i| <= radius, retains those whose
//! self-intersection lies in a requested set, and answers per-class fiber
//! queries by filtering the retained vectors. Slow and dumb on purpose: it
//! shares no pruning logic with the solver it cross-checks.
//!
//! A box of fixed radius cannot see arbitrarily large pairings, so each
//! answer carries a certified cap: for t up to the cap, every solution
//! provably fits inside the box and the fiber is exhaustive. The cap comes
//! from the positive definite majorant P = (2/C^2)(GC)(GC)^T - G, for which
//! F^T P F = 2t^2/C^2 - n and coordinate i of any solution is bounded by
//! sqrt((P^-1)_ii * F^T P F).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{floor_sqrt_rat, gcd_all, invert_exact, rat, ratio};
use crate::enumeration::{FiberFlags, FiberResult};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lattice::{Lattice, LatticeVector, PolarizedClass};

/// Hard ceiling on the number of scanned points per box.
pub const MAX_POINTS: u128 = 4_000_000_000;

/// Retained vectors of one self-intersection, grouped by their coordinates
/// past the first two ("tail"), with the leading pair stored per entry.
type Retention = HashMap<Vec<i64>, Vec<(i64, i64)>>;

pub struct BoxOracle {
    lattice: Arc<Lattice>,
    radius: i64,
    head_width: usize,
    gram_inv: Vec<Vec<BigRational>>,
    exec: Exec,
    store: Mutex<HashMap<i64, Arc<Retention>>>,
}

impl BoxOracle {
    pub fn new(lattice: Arc<Lattice>, radius: i64) -> Result<BoxOracle> {
        if radius < 1 {
            return Err(Error::InvalidArgument(format!(
                "box radius must be >= 1, got {radius}"
            )));
        }
        let side = 2 * radius as u128 + 1;
        let mut points: u128 = 1;
        for _ in 0..lattice.rank() {
            points = points.saturating_mul(side);
        }
        if points > MAX_POINTS {
            return Err(Error::BoxTooLarge {
                points,
                limit: MAX_POINTS,
            });
        }
        let gram_inv = invert_exact(lattice.gram()).ok_or(Error::Degenerate)?;
        let head_width = lattice.rank().min(2);
        Ok(BoxOracle {
            lattice,
            radius,
            head_width,
            gram_inv,
            exec: Exec::Parallel,
            store: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_exec(mut self, exec: Exec) -> BoxOracle {
        self.exec = exec;
        self
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Scans once for every norm in `norms` not already retained. Fibers
    /// for prepared norms are answered without rescanning.
    pub fn prepare(&self, norms: &[i64]) -> Result<()> {
        let missing: Vec<i64> = {
            let store = self.store.lock().expect("retention store poisoned");
            let mut m: Vec<i64> = norms
                .iter()
                .copied()
                .filter(|n| !store.contains_key(n))
                .collect();
            m.sort_unstable();
            m.dedup();
            m
        };
        if missing.is_empty() {
            return Ok(());
        }
        let scanned = self.scan(&missing);
        let mut store = self.store.lock().expect("retention store poisoned");
        for (n, retention) in scanned {
            store.entry(n).or_insert_with(|| Arc::new(retention));
        }
        Ok(())
    }

    /// Full box scan retaining all vectors with self-intersection in
    /// `wanted`, split across the first coordinate.
    fn scan(&self, wanted: &[i64]) -> HashMap<i64, Retention> {
        let rank = self.lattice.rank();
        let gram = self.lattice.gram();
        let radius = self.radius;
        let branches: Vec<i64> = (-radius..=radius).collect();
        let partials = self.exec.map(branches, |v0| {
            let mut out: HashMap<i64, Retention> =
                wanted.iter().map(|&n| (n, Retention::new())).collect();
            let mut coords = vec![0i64; rank];
            coords[0] = v0;
            if rank == 1 {
                let n = gram[0][0] * v0 * v0;
                if wanted.contains(&n) {
                    record(&mut out, n, &coords, self.head_width);
                }
            } else {
                let mut row_acc: Vec<i64> =
                    (0..rank).map(|j| gram[j][0] * v0).collect();
                scan_rec(
                    gram,
                    radius,
                    wanted,
                    1,
                    &mut coords,
                    &mut row_acc,
                    gram[0][0] * v0 * v0,
                    self.head_width,
                    &mut out,
                );
            }
            out
        });
        let mut merged: HashMap<i64, Retention> =
            wanted.iter().map(|&n| (n, Retention::new())).collect();
        for partial in partials {
            for (n, groups) in partial {
                let target = merged.entry(n).or_default();
                for (tail, heads) in groups {
                    target.entry(tail).or_default().extend(heads);
                }
            }
        }
        for groups in merged.values_mut() {
            for heads in groups.values_mut() {
                heads.sort_unstable();
            }
        }
        merged
    }

    /// Largest t such that every solution of F.C = t, F^2 = n lies inside
    /// this box; fibers up to it are exhaustive.
    pub fn certified_cap(&self, class: &PolarizedClass, n: i64) -> Result<i64> {
        if class.lattice().gram() != self.lattice.gram() {
            return Err(Error::LatticePairMismatch);
        }
        let c2 = class.self_int();
        let r2 = rat(self.radius * self.radius);
        let mut cap: Option<i64> = None;
        for (i, &ci) in class.coords().iter().enumerate() {
            let p_inv_ii = ratio(2 * ci * ci, c2) - self.gram_inv[i][i].clone();
            if !p_inv_ii.is_positive() {
                return Err(Error::Internal(
                    "majorant diagonal is not positive".into(),
                ));
            }
            let bound = (&r2 / &p_inv_ii + rat(n)) * ratio(c2, 2);
            let cap_i = if bound.is_negative() {
                0
            } else {
                floor_sqrt_rat(&bound).to_i64().ok_or_else(|| {
                    Error::Internal("certified cap exceeds i64".into())
                })?
            };
            cap = Some(cap.map_or(cap_i, |c| c.min(cap_i)));
        }
        Ok(cap.unwrap_or(0).max(0))
    }

    /// All box vectors with F^2 = n and 0 < F.C <= t_cap, grouped by t.
    /// Every t in 1..=t_cap gets an entry; `exhaustive` marks the ts at or
    /// below the certified cap.
    pub fn fibers(
        &self,
        class: &PolarizedClass,
        n: i64,
        flags: FiberFlags,
        t_cap: i64,
    ) -> Result<BTreeMap<i64, FiberResult>> {
        if class.lattice().gram() != self.lattice.gram() {
            return Err(Error::LatticePairMismatch);
        }
        self.prepare(&[n])?;
        let cap = self.certified_cap(class, n)?;
        let grad = self.lattice.gram_apply(class.coords())?;
        let ample_grad = self.lattice.gram_apply(class.ample().coords())?;
        let retention = {
            let store = self.store.lock().expect("retention store poisoned");
            Arc::clone(store.get(&n).expect("norm prepared above"))
        };

        let w = self.head_width;
        let mut buckets: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for (tail, heads) in retention.iter() {
            let s_tail: i64 = tail
                .iter()
                .zip(&grad[w..])
                .map(|(a, b)| a * b)
                .sum();
            for &(h0, h1) in heads {
                let mut t = h0 * grad[0] + s_tail;
                if w > 1 {
                    t += h1 * grad[1];
                }
                if t < 1 || t > t_cap {
                    continue;
                }
                let mut x = Vec::with_capacity(self.lattice.rank());
                x.push(h0);
                if w > 1 {
                    x.push(h1);
                }
                x.extend_from_slice(tail);
                if flags.primitive_only && gcd_all(&x) != 1 {
                    continue;
                }
                if flags.positive_side {
                    let side: i64 =
                        x.iter().zip(&ample_grad).map(|(a, b)| a * b).sum();
                    if side <= 0 {
                        continue;
                    }
                }
                buckets.entry(t).or_default().push(x);
            }
        }

        let mut result = BTreeMap::new();
        for t in 1..=t_cap {
            let mut coords = buckets.remove(&t).unwrap_or_default();
            coords.sort_unstable();
            let vectors = coords
                .into_iter()
                .map(|c| LatticeVector::new(Arc::clone(&self.lattice), c))
                .collect::<Result<Vec<_>>>()?;
            result.insert(
                t,
                FiberResult {
                    vectors,
                    exhaustive: t <= cap,
                },
            );
        }
        Ok(result)
    }
}

fn record(out: &mut HashMap<i64, Retention>, n: i64, coords: &[i64], width: usize) {
    let head = (coords[0], if width > 1 { coords[1] } else { 0 });
    out.get_mut(&n)
        .expect("wanted norm preinserted")
        .entry(coords[width..].to_vec())
        .or_default()
        .push(head);
}

#[allow(clippy::too_many_arguments)]
fn scan_rec(
    gram: &[Vec<i64>],
    radius: i64,
    wanted: &[i64],
    depth: usize,
    coords: &mut Vec<i64>,
    row_acc: &mut Vec<i64>,
    norm_acc: i64,
    head_width: usize,
    out: &mut HashMap<i64, Retention>,
) {
    let rank = gram.len();
    let d = depth;
    if depth == rank - 1 {
        for v in -radius..=radius {
            let n = norm_acc + gram[d][d] * v * v + 2 * v * row_acc[d];
            if wanted.contains(&n) {
                coords[d] = v;
                record(out, n, coords, head_width);
            }
        }
        coords[d] = 0;
        return;
    }
    for j in d + 1..rank {
        row_acc[j] -= gram[j][d] * radius;
    }
    let mut v = -radius;
    loop {
        coords[d] = v;
        let delta = gram[d][d] * v * v + 2 * v * row_acc[d];
        scan_rec(
            gram,
            radius,
            wanted,
            depth + 1,
            coords,
            row_acc,
            norm_acc + delta,
            head_width,
            out,
        );
        if v == radius {
            break;
        }
        v += 1;
        for j in d + 1..rank {
            row_acc[j] += gram[j][d];
        }
    }
    for j in d + 1..rank {
        row_acc[j] -= gram[j][d] * radius;
    }
    coords[d] = 0;
}

/// One-shot oracle call; constructs a fresh box each time. Reuse a
/// `BoxOracle` when querying many classes on the same lattice.
pub fn box_oracle(
    class: &PolarizedClass,
    n: i64,
    flags: FiberFlags,
    box_radius: i64,
    t_cap: i64,
) -> Result<BTreeMap<i64, FiberResult>> {
    BoxOracle::new(Arc::clone(class.lattice()), box_radius)?.fibers(class, n, flags, t_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::FiberSolver;
    use crate::lattice::preset;

    fn u_class(a: i64, b: i64) -> PolarizedClass {
        let u = Arc::new(preset("U").unwrap());
        let h = u.vector(vec![1, 1]).unwrap();
        PolarizedClass::new(u.vector(vec![a, b]).unwrap(), h).unwrap()
    }

    #[test]
    fn radius_one_isotropic_witnesses_on_u() {
        let c = u_class(1, 1);
        let fibers = box_oracle(&c, 0, FiberFlags::default(), 1, 1).unwrap();
        let f1 = &fibers[&1];
        assert_eq!(
            f1.coords(),
            vec![vec![0, 1], vec![1, 0]]
        );
        assert!(f1.exhaustive);
    }

    #[test]
    fn certified_caps_match_closed_form() {
        let u = Arc::new(preset("U").unwrap());
        let oracle = BoxOracle::new(Arc::clone(&u), 3).unwrap();
        let c = u_class(2, 3);
        assert_eq!(oracle.certified_cap(&c, 0).unwrap(), 6);

        let enr = Arc::new(preset("enriques_num").unwrap());
        let oracle = BoxOracle::new(Arc::clone(&enr), 3).unwrap();
        let mut coords = vec![0i64; 10];
        coords[0] = 2;
        coords[1] = 3;
        let mut h = vec![0i64; 10];
        h[0] = 1;
        h[1] = 1;
        let class = PolarizedClass::new(
            enr.vector(coords).unwrap(),
            enr.vector(h).unwrap(),
        )
        .unwrap();
        // the binding direction is the deepest E8 coordinate, whose dual
        // basis norm is 30
        assert_eq!(oracle.certified_cap(&class, 0).unwrap(), 1);
        assert_eq!(oracle.certified_cap(&class, 4).unwrap(), 5);
    }

    #[test]
    fn agrees_with_solver_on_u_up_to_cap() {
        let c = u_class(2, 3);
        let solver = FiberSolver::new(&c).unwrap();
        let oracle = BoxOracle::new(Arc::clone(c.lattice()), 3).unwrap();
        for n in [0, 4] {
            let cap = oracle.certified_cap(&c, n).unwrap();
            let fibers = oracle.fibers(&c, n, FiberFlags::default(), cap).unwrap();
            assert_eq!(fibers.len() as i64, cap);
            for (t, boxed) in fibers {
                assert!(boxed.exhaustive);
                let exact = solver.solve(t, n, FiberFlags::default()).unwrap();
                assert_eq!(boxed.coords(), exact.coords(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn exhaustive_flag_tracks_cap() {
        // radius 2 on the rank-10 lattice certifies the norm-4 fibers of
        // e+f only through t = 2, yet the scan still sees the t = 3
        // witnesses
        let enr = Arc::new(preset("enriques_num").unwrap());
        let mut coords = vec![0i64; 10];
        coords[0] = 1;
        coords[1] = 1;
        let class = PolarizedClass::new(
            enr.vector(coords.clone()).unwrap(),
            enr.vector(coords).unwrap(),
        )
        .unwrap();
        let oracle = BoxOracle::new(Arc::clone(&enr), 2).unwrap();
        assert_eq!(oracle.certified_cap(&class, 0).unwrap(), 0);
        assert_eq!(oracle.certified_cap(&class, 4).unwrap(), 2);
        let fibers = oracle.fibers(&class, 4, FiberFlags::default(), 3).unwrap();
        assert!(fibers[&1].is_empty() && fibers[&1].exhaustive);
        assert!(fibers[&2].is_empty() && fibers[&2].exhaustive);
        let mut a = vec![0i64; 10];
        a[0] = 1;
        a[1] = 2;
        let mut b = vec![0i64; 10];
        b[0] = 2;
        b[1] = 1;
        assert_eq!(fibers[&3].coords(), vec![a, b]);
        assert!(!fibers[&3].exhaustive);
    }

    #[test]
    fn scan_is_memoized_per_norm() {
        let c = u_class(2, 3);
        let oracle = BoxOracle::new(Arc::clone(c.lattice()), 3).unwrap();
        oracle.prepare(&[0, 4]).unwrap();
        let a = oracle.fibers(&c, 0, FiberFlags::default(), 4).unwrap();
        let b = oracle.fibers(&c, 0, FiberFlags::default(), 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(oracle.store.lock().unwrap().len(), 2);
    }

    #[test]
    fn sequential_and_parallel_scans_agree() {
        let c = u_class(2, 3);
        let seq = BoxOracle::new(Arc::clone(c.lattice()), 3)
            .unwrap()
            .with_exec(Exec::Sequential);
        let par = BoxOracle::new(Arc::clone(c.lattice()), 3).unwrap();
        let fs = seq.fibers(&c, 0, FiberFlags::default(), 6).unwrap();
        let fp = par.fibers(&c, 0, FiberFlags::default(), 6).unwrap();
        assert_eq!(fs, fp);
    }

    #[test]
    fn oversized_box_is_rejected() {
        let enr = Arc::new(preset("enriques_num").unwrap());
        assert!(BoxOracle::new(Arc::clone(&enr), 4).is_ok());
        assert!(matches!(
            BoxOracle::new(enr, 5),
            Err(Error::BoxTooLarge { .. })
        ));
    }

    #[test]
    fn rank_one_lattice() {
        let l = Arc::new(crate::lattice::Lattice::from_gram(vec![vec![2]]).unwrap());
        let h = l.vector(vec![1]).unwrap();
        let c = PolarizedClass::new(l.vector(vec![1]).unwrap(), h).unwrap();
        let fibers = box_oracle(&c, 2, FiberFlags::default(), 3, 6).unwrap();
        assert_eq!(fibers[&2].coords(), vec![vec![1]]);
        assert!(fibers[&4].is_empty());
    }

    #[test]
    fn flags_filter_box_results() {
        let c = u_class(1, 1);
        let all = box_oracle(&c, 0, FiberFlags::default(), 2, 2).unwrap();
        assert_eq!(all[&2].coords(), vec![vec![0, 2], vec![2, 0]]);
        let prim = box_oracle(
            &c,
            0,
            FiberFlags {
                primitive_only: true,
                ..Default::default()
            },
            2,
            2,
        )
        .unwrap();
        assert!(prim[&2].is_empty());
    }
}
