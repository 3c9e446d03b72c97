//! Enumeration of lattice vectors with prescribed self-intersection and
//! prescribed pairing against a polarized class.
//!
//! On a hyperbolic lattice the orthogonal complement of a class C with
//! C^2 > 0 is negative definite, so the solutions of F.C = t, F^2 = n form
//! the integer points of an ellipsoid inside an affine sublattice. The
//! solver decomposes the solution set as x0 + K z, reduces to a positive
//! definite form on z, and walks it with exact rational Cholesky-type
//! bounds. No floating point: rounding here silently drops witnesses.
//!
//! `boxscan` holds the independent brute-force oracle used by the
//! verification suite.

pub mod boxscan;


use num_traits::{Signed, ToPrimitive};

use crate::arith::{ext_gcd, gcd_all, rat, ratio};
use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, PolarizedClass};

/// Filters applied to enumerated vectors.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FiberFlags {
    /// Keep only vectors of content 1.
    pub primitive_only: bool,
    /// Keep only vectors pairing positively with the ample reference.
    pub positive_side: bool,
}

/// A single fiber request: all F with F.C = pairing and F^2 = self_int.
#[derive(Debug, Clone)]
pub struct FiberQuery {
    pub polarization: PolarizedClass,
    pub pairing: i64,
    pub self_int: i64,
    pub flags: FiberFlags,
}

/// The full solution set of a fiber query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiberResult {
    /// Solutions, sorted lexicographically by coordinates.
    pub vectors: Vec<LatticeVector>,
    /// True when `vectors` provably contains every solution.
    pub exhaustive: bool,
}

impl FiberResult {
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn coords(&self) -> Vec<Vec<i64>> {
        self.vectors.iter().map(|v| v.coords().to_vec()).collect()
    }
}

/// Reusable per-class enumeration state: the affine parametrization of the
/// hyperplane x.C = t and the definite form on its lattice directions.
pub struct FiberSolver {
    class: PolarizedClass,
    self_int: i64,
    /// gcd of the pairing image G.C; t must be a multiple of it.
    div: i64,
    /// origin.C = div; the particular solution for t is origin * (t/div).
    origin: Vec<i64>,
    /// Basis of {x : x.C = 0}, one column per entry.
    kernel: Vec<Vec<i64>>,
    /// kernel_i . origin pairings, reused for every t.
    kernel_origin: Vec<i64>,
    /// f64 LDL^T of the positive definite form -<Kz, Kz>; None in rank 1.
    /// It only steers the tree walk — every candidate it admits is checked
    /// against the exact defining equations before being emitted.
    ldl: Option<LdlF>,
}

struct LdlF {
    lower: Vec<Vec<f64>>,
    diag: Vec<f64>,
}

impl LdlF {
    /// Pivots of an integer positive definite form are bounded well away
    /// from zero, so a tiny pivot here means the form is not definite.
    fn decompose(q: &[Vec<i64>]) -> Option<LdlF> {
        let n = q.len();
        let mut a: Vec<Vec<f64>> = q
            .iter()
            .map(|row| row.iter().map(|&x| x as f64).collect())
            .collect();
        let mut lower = vec![vec![0.0; n]; n];
        let mut diag = Vec::with_capacity(n);
        for k in 0..n {
            let pivot = a[k][k];
            if pivot <= 1e-7 {
                return None;
            }
            for i in k + 1..n {
                lower[i][k] = a[i][k] / pivot;
            }
            for i in k + 1..n {
                for j in k + 1..=i {
                    let t = lower[i][k] * a[k][j];
                    a[i][j] -= t;
                    if i != j {
                        a[j][i] = a[i][j];
                    }
                }
            }
            diag.push(pivot);
        }
        Some(LdlF { lower, diag })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.diag.len();
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.lower[i][k] * y[k];
            }
        }
        for (i, yi) in y.iter_mut().enumerate() {
            *yi /= self.diag[i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.lower[k][i] * y[k];
            }
        }
        y
    }
}

/// Slack added to every pruning comparison in the f64 tree walk. The exact
/// quantities involved are rationals of magnitude well under 1e6, so
/// accumulated roundoff stays below 1e-9; anything the slack lets through
/// that should not be there fails the exact final check instead.
const PRUNE_SLACK: f64 = 1e-6;

impl FiberSolver {
    pub fn new(class: &PolarizedClass) -> Result<FiberSolver> {
        let lat = class.lattice();
        if !lat.is_hyperbolic() {
            let (p, q) = lat.signature();
            return Err(Error::NotHyperbolic(p, q));
        }
        let rank = lat.rank();
        let grad = lat.gram_apply(class.coords())?;
        let div = gcd_all(&grad);

        // Unimodular column operations reduce grad to (div, 0, ..., 0);
        // column 0 of the accumulated transform is a particular solution
        // direction, the rest span the kernel of x -> x.C.
        let mut t_mat: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut w = grad.clone();
        for i in 1..rank {
            if w[i] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(w[0], w[i]);
            let (a, b) = (w[0] / g, w[i] / g);
            for row in t_mat.iter_mut() {
                let (c0, ci) = (row[0], row[i]);
                row[0] = x * c0 + y * ci;
                row[i] = -b * c0 + a * ci;
            }
            w[0] = g;
            w[i] = 0;
        }
        if w[0] < 0 {
            for row in t_mat.iter_mut() {
                row[0] = -row[0];
            }
            w[0] = -w[0];
        }
        debug_assert_eq!(w[0], div);

        let column = |j: usize| -> Vec<i64> { (0..rank).map(|i| t_mat[i][j]).collect() };
        let origin = column(0);
        let kernel: Vec<Vec<i64>> = (1..rank).map(column).collect();
        debug_assert_eq!(lat.inner(&origin, class.coords())?, div);

        let kernel_origin = kernel
            .iter()
            .map(|k| lat.inner(k, &origin))
            .collect::<Result<Vec<i64>>>()?;

        let ldl = if kernel.is_empty() {
            None
        } else {
            let m = kernel.len();
            let mut neg_form = vec![vec![0i64; m]; m];
            for i in 0..m {
                for j in 0..m {
                    neg_form[i][j] = -lat.inner(&kernel[i], &kernel[j])?;
                }
            }
            match LdlF::decompose(&neg_form) {
                Some(l) => Some(l),
                None => {
                    return Err(Error::Internal(
                        "orthogonal complement of the class is not negative definite"
                            .into(),
                    ))
                }
            }
        };

        Ok(FiberSolver {
            class: class.clone(),
            self_int: class.self_int(),
            div,
            origin,
            kernel,
            kernel_origin,
            ldl,
        })
    }

    pub fn class(&self) -> &PolarizedClass {
        &self.class
    }

    /// Divisibility of the class; fibers at t not divisible by it are empty.
    pub fn divisibility(&self) -> i64 {
        self.div
    }

    /// All x with x.C = t and x^2 = n, filtered by flags. Always exhaustive.
    pub fn solve(&self, t: i64, n: i64, flags: FiberFlags) -> Result<FiberResult> {
        let empty = FiberResult {
            vectors: Vec::new(),
            exhaustive: true,
        };
        if t % self.div != 0 {
            return Ok(empty);
        }
        // Projection onto C contributes t^2/C^2 to the norm and the definite
        // complement only subtracts, so n > t^2/C^2 has no solutions.
        let budget = ratio(t * t, self.self_int) - rat(n);
        if budget.is_negative() {
            return Ok(empty);
        }
        let scale = t / self.div;
        let x0: Vec<i64> = self.origin.iter().map(|&c| c * scale).collect();

        let mut raw: Vec<Vec<i64>> = Vec::new();
        match &self.ldl {
            None => {
                if self.lattice_norm(&x0)? == n {
                    raw.push(x0.clone());
                }
            }
            Some(ldl) => {
                let m = self.kernel.len();
                let bb: Vec<f64> = self
                    .kernel_origin
                    .iter()
                    .map(|&kg| (kg * scale) as f64)
                    .collect();
                let center = ldl.solve(&bb);
                let mut z = vec![0i64; m];
                descend(
                    ldl,
                    &center,
                    m,
                    budget.to_f64().unwrap(),
                    &mut z,
                    &mut |z| {
                        let mut x = x0.clone();
                        for (zi, k) in z.iter().zip(&self.kernel) {
                            for (xj, kj) in x.iter_mut().zip(k) {
                                *xj += zi * kj;
                            }
                        }
                        raw.push(x);
                    },
                )?;
            }
        }

        let lat = self.class.lattice();
        let ample = self.class.ample();
        let mut vectors = Vec::new();
        for x in raw {
            if lat.inner(&x, self.class.coords())? != t {
                return Err(Error::Internal(
                    "enumerated vector leaves its hyperplane".into(),
                ));
            }
            // The tree walk is floating point with slack, so near-misses on
            // the norm are expected here; the exact check is what makes the
            // emitted fiber correct.
            if self.lattice_norm(&x)? != n {
                continue;
            }
            if flags.primitive_only && gcd_all(&x) != 1 {
                continue;
            }
            if flags.positive_side && lat.inner(&x, ample.coords())? <= 0 {
                continue;
            }
            vectors.push(LatticeVector::new(std::sync::Arc::clone(lat), x)?);
        }
        vectors.sort_by(|a, b| a.coords().cmp(b.coords()));
        Ok(FiberResult {
            vectors,
            exhaustive: true,
        })
    }

    fn lattice_norm(&self, x: &[i64]) -> Result<i64> {
        self.class.lattice().norm(x)
    }

}

/// Walks level `level-1` of the LDL-triangularized form: the remaining
/// budget bounds |z - center'| by a square-root interval. Pruning runs in
/// f64 widened by PRUNE_SLACK, so a candidate that exactly fits is never
/// dropped; whatever extra slips through fails the exact norm check in
/// `solve`. Candidates are surfaced when the budget is (near) spent at
/// level 0.
fn descend(
    ldl: &LdlF,
    center: &[f64],
    level: usize,
    rem: f64,
    z: &mut Vec<i64>,
    sink: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    if level == 0 {
        if rem.abs() <= PRUNE_SLACK {
            sink(z);
        }
        return Ok(());
    }
    let k = level - 1;
    let mut shifted = center[k];
    for i in level..center.len() {
        shifted -= ldl.lower[i][k] * (z[i] as f64 - center[i]);
    }
    let span = (rem + PRUNE_SLACK) / ldl.diag[k];
    if span < 0.0 {
        return Ok(());
    }
    let bound = span.sqrt();
    let lo = (shifted - bound - 1e-9).ceil();
    let hi = (shifted + bound + 1e-9).floor();
    if !(i64::MIN as f64..=i64::MAX as f64).contains(&lo)
        || !(i64::MIN as f64..=i64::MAX as f64).contains(&hi)
    {
        return Err(Error::Internal(
            "enumeration coordinate exceeds i64".into(),
        ));
    }
    let mut v = lo as i64;
    let hi = hi as i64;
    while v <= hi {
        let dev = v as f64 - shifted;
        let next = rem - ldl.diag[k] * dev * dev;
        if next >= -PRUNE_SLACK {
            z[k] = v;
            descend(ldl, center, k, next, z, sink)?;
        }
        v += 1;
    }
    Ok(())
}

/// One-shot fiber computation.
pub fn fiber_classes(q: &FiberQuery) -> Result<FiberResult> {
    FiberSolver::new(&q.polarization)?.solve(q.pairing, q.self_int, q.flags)
}

/// Smallest t in [t_lo, t_hi] whose fiber is nonempty, with all witnesses
/// at that t. None when every fiber in range is empty.
pub fn min_fiber(
    class: &PolarizedClass,
    n: i64,
    flags: FiberFlags,
    t_lo: i64,
    t_hi: i64,
) -> Result<Option<(i64, FiberResult)>> {
    if t_lo < 1 {
        return Err(Error::InvalidArgument(format!(
            "fiber search must start at t >= 1, got {t_lo}"
        )));
    }
    if t_lo > t_hi {
        return Err(Error::EmptyRange { lo: t_lo, hi: t_hi });
    }
    let solver = FiberSolver::new(class)?;
    for t in t_lo..=t_hi {
        if t % solver.divisibility() != 0 {
            continue;
        }
        let fiber = solver.solve(t, n, flags)?;
        if !fiber.is_empty() {
            return Ok(Some((t, fiber)));
        }
    }
    Ok(None)
}
