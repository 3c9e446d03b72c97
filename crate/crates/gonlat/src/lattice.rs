//! Integer lattices with a fixed Gram matrix, and the polarized classes on
//! them that the rest of the crate computes with.
//!
//! The built-in presets are the hyperbolic plane `U`, the negative definite
//! `E8_minus` (E8 Cartan matrix negated, Bourbaki node ordering), their
//! orthogonal sum `enriques_num` = U + E8_minus, and `k3_invariant`, which is
//! `enriques_num` with every pairing doubled. Signatures are computed exactly
//! by symmetric reduction over the rationals; determinants by fraction-free
//! elimination. No floating point anywhere.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{det_exact, gcd_all, rat};
use crate::error::{Error, Result};

/// An integer lattice: a free Z-module of finite rank with a symmetric,
/// nondegenerate integer pairing given by its Gram matrix.
#[derive(Debug, Clone)]
pub struct Lattice {
    name: Option<String>,
    gram: Vec<Vec<i64>>,
    signature: (usize, usize),
    /// Known primitive isotropic vectors, used to seed minimum searches.
    iso_seeds: Vec<Vec<i64>>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}
impl Eq for Lattice {}

impl Lattice {
    /// Builds a lattice from a Gram matrix, validating symmetry and
    /// nondegeneracy. The signature is computed on construction.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Lattice> {
        let n = gram.len();
        for row in gram.iter() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        let signature = signature_of(&gram)?;
        Ok(Lattice {
            name: None,
            gram,
            signature,
            iso_seeds: Vec::new(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Lattice {
        self.name = Some(name.into());
        self
    }

    /// Attaches isotropic seed vectors after validating each one.
    pub fn with_seeds(mut self, seeds: Vec<Vec<i64>>) -> Result<Lattice> {
        for s in &seeds {
            if s.len() != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    got: s.len(),
                });
            }
            if s.iter().all(|&x| x == 0) {
                return Err(Error::ZeroVector);
            }
            if self.norm(s)? != 0 {
                return Err(Error::Config(format!(
                    "seed vector {s:?} is not isotropic"
                )));
            }
        }
        self.iso_seeds = seeds;
        Ok(self)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    pub fn iso_seeds(&self) -> &[Vec<i64>] {
        &self.iso_seeds
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.signature == (1, self.rank() - 1) && self.rank() >= 1
    }

    fn check_len(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// The pairing x . y.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        let mut acc = 0i64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = 0i64;
            for (j, &yj) in y.iter().enumerate() {
                row += self.gram[i][j] * yj;
            }
            acc += xi * row;
        }
        Ok(acc)
    }

    /// Self-intersection x . x.
    pub fn norm(&self, x: &[i64]) -> Result<i64> {
        self.inner(x, x)
    }

    /// The image of x under the Gram matrix, i.e. the vector of pairings of
    /// x against the basis.
    pub fn gram_apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x)?;
        Ok((0..self.rank())
            .map(|j| x.iter().enumerate().map(|(i, &xi)| xi * self.gram[i][j]).sum())
            .collect())
    }

    /// Content (gcd of coordinates) and divisibility (gcd of pairings
    /// against the whole lattice) of a nonzero vector.
    pub fn primitivity(&self, x: &[i64]) -> Result<(i64, i64)> {
        self.check_len(x)?;
        if x.iter().all(|&c| c == 0) {
            return Err(Error::ZeroVector);
        }
        let content = gcd_all(x);
        let divisibility = gcd_all(&self.gram_apply(x)?);
        Ok((content, divisibility))
    }

    /// True when every vector has self-intersection divisible by 4 and all
    /// pairings are even; equivalently the Gram matrix has diagonal = 0 mod 4
    /// and off-diagonal = 0 mod 2.
    pub fn is_two_divisible(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.gram[i][j] % 4 == 0
                } else {
                    self.gram[i][j] % 2 == 0
                }
            })
        })
    }

    /// True when every self-intersection is even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[i][i] % 2 == 0)
    }

    /// The lattice with the same underlying module and the pairing scaled
    /// by `factor`. Isotropic seeds survive rescaling.
    pub fn rescale(&self, factor: i64) -> Result<Lattice> {
        if factor == 0 {
            return Err(Error::ZeroScale);
        }
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&x| x * factor).collect())
            .collect();
        let signature = if factor > 0 {
            self.signature
        } else {
            (self.signature.1, self.signature.0)
        };
        let name = self
            .name
            .as_ref()
            .map(|n| format!("{n}({factor})"));
        Ok(Lattice {
            name,
            gram,
            signature,
            iso_seeds: self.iso_seeds.clone(),
        })
    }

    /// Orthogonal direct sum. Isotropic seeds of both summands carry over,
    /// padded with zeros.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![0i64; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j];
            }
        }
        let signature = (
            self.signature.0 + other.signature.0,
            self.signature.1 + other.signature.1,
        );
        let mut iso_seeds = Vec::new();
        for s in &self.iso_seeds {
            let mut v = s.clone();
            v.extend(std::iter::repeat(0).take(m));
            iso_seeds.push(v);
        }
        for s in &other.iso_seeds {
            let mut v = vec![0i64; n];
            v.extend_from_slice(s);
            iso_seeds.push(v);
        }
        Lattice {
            name: None,
            gram,
            signature,
            iso_seeds,
        }
    }

    /// Exact determinant of the Gram matrix.
    pub fn determinant(&self) -> BigInt {
        det_exact(&self.gram)
    }

    /// Wraps coordinates into a vector on this lattice.
    pub fn vector(self: &Arc<Self>, coords: Vec<i64>) -> Result<LatticeVector> {
        LatticeVector::new(Arc::clone(self), coords)
    }
}

/// Signature (positive, negative inertia) of a symmetric integer matrix by
/// exact symmetric reduction over the rationals. Errors on a degenerate form.
fn signature_of(gram: &[Vec<i64>]) -> Result<(usize, usize)> {
    let n = gram.len();
    let mut a: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| row.iter().map(|&x| rat(x)).collect())
        .collect();
    let mut pos = 0usize;
    let mut neg = 0usize;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                // symmetric swap of rows/columns k and j
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // all remaining diagonal entries vanish; fold basis vector j
                // into k, which makes the new diagonal entry 2*a[k][j] != 0
                for m in 0..n {
                    let t = a[j][m].clone();
                    a[k][m] += t;
                }
                for m in 0..n {
                    let t = a[m][j].clone();
                    a[m][k] += t;
                }
            } else {
                return Err(Error::Degenerate);
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k + 1..n {
                let t = &f * &a[k][j];
                a[i][j] = &a[i][j] - t;
            }
            a[i][k] = BigRational::zero();
        }
        for j in k + 1..n {
            a[k][j] = BigRational::zero();
        }
    }
    Ok((pos, neg))
}

/// Gram matrix of E8 with all signs flipped, rows/columns in Bourbaki node
/// order (the branch node is 4; node 2 hangs off it).
fn e8_minus_gram() -> Vec<Vec<i64>> {
    const EDGES: [(usize, usize); 7] =
        [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)];
    let mut g = vec![vec![0i64; 8]; 8];
    for i in 0..8 {
        g[i][i] = -2;
    }
    for &(i, j) in &EDGES {
        g[i][j] = 1;
        g[j][i] = 1;
    }
    g
}

pub const PRESET_NAMES: [&str; 4] = ["U", "E8_minus", "enriques_num", "k3_invariant"];

/// Builds one of the named lattice presets.
pub fn preset(name: &str) -> Result<Lattice> {
    match name {
        "U" => Lattice::from_gram(vec![vec![0, 1], vec![1, 0]])?
            .with_seeds(vec![vec![1, 0], vec![0, 1]])
            .map(|l| l.with_name("U")),
        "E8_minus" => Ok(Lattice::from_gram(e8_minus_gram())?.with_name("E8_minus")),
        "enriques_num" => {
            let u = preset("U")?;
            let e8 = preset("E8_minus")?;
            Ok(u.direct_sum(&e8).with_name("enriques_num"))
        }
        "k3_invariant" => {
            let base = preset("enriques_num")?;
            Ok(base.rescale(2)?.with_name("k3_invariant"))
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

/// A lattice vector: coordinates in the fixed basis, tied to its lattice.
#[derive(Debug, Clone)]
pub struct LatticeVector {
    lattice: Arc<Lattice>,
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(lattice: Arc<Lattice>, coords: Vec<i64>) -> Result<LatticeVector> {
        if coords.len() != lattice.rank() {
            return Err(Error::DimensionMismatch {
                expected: lattice.rank(),
                got: coords.len(),
            });
        }
        Ok(LatticeVector { lattice, coords })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn norm(&self) -> i64 {
        self.lattice.norm(&self.coords).expect("length checked")
    }

    pub fn pair(&self, other: &LatticeVector) -> Result<i64> {
        if self.lattice.gram() != other.lattice.gram() {
            return Err(Error::LatticePairMismatch);
        }
        self.lattice.inner(&self.coords, &other.coords)
    }

    pub fn content(&self) -> i64 {
        gcd_all(&self.coords)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn negated(&self) -> LatticeVector {
        LatticeVector {
            lattice: Arc::clone(&self.lattice),
            coords: self.coords.iter().map(|&x| -x).collect(),
        }
    }
}

impl PartialEq for LatticeVector {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.lattice.gram() == other.lattice.gram()
    }
}
impl Eq for LatticeVector {}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A class C with C^2 > 0 on a hyperbolic lattice, oriented to the positive
/// side of a fixed ample reference class h (C.h > 0, h^2 > 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedClass {
    vector: LatticeVector,
    ample: LatticeVector,
    self_int: i64,
}

impl PolarizedClass {
    pub fn new(vector: LatticeVector, ample: LatticeVector) -> Result<PolarizedClass> {
        if vector.lattice().gram() != ample.lattice().gram() {
            return Err(Error::LatticePairMismatch);
        }
        let self_int = vector.norm();
        if self_int <= 0 {
            return Err(Error::NonPositivePolarization(format!(
                "C^2 = {self_int} is not positive"
            )));
        }
        let h_norm = ample.norm();
        if h_norm <= 0 {
            return Err(Error::NonPositivePolarization(format!(
                "ample reference has h^2 = {h_norm}, need h^2 > 0"
            )));
        }
        let ch = vector.pair(&ample)?;
        if ch <= 0 {
            return Err(Error::NonPositivePolarization(format!(
                "C.h = {ch} is not positive; C lies on the wrong side of the cone"
            )));
        }
        Ok(PolarizedClass {
            vector,
            ample,
            self_int,
        })
    }

    /// Polarizes with the default ample reference of the lattice.
    pub fn with_default_ample(vector: LatticeVector) -> Result<PolarizedClass> {
        let ample_coords = default_ample(vector.lattice())?;
        let ample = LatticeVector::new(Arc::clone(vector.lattice()), ample_coords)?;
        PolarizedClass::new(vector, ample)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        self.vector.lattice()
    }

    pub fn vector(&self) -> &LatticeVector {
        &self.vector
    }

    pub fn ample(&self) -> &LatticeVector {
        &self.ample
    }

    pub fn coords(&self) -> &[i64] {
        self.vector.coords()
    }

    pub fn self_int(&self) -> i64 {
        self.self_int
    }
}

/// Default ample reference: e + f on a lattice with a hyperbolic first block,
/// otherwise the first basis vector of positive self-intersection.
pub fn default_ample(lattice: &Arc<Lattice>) -> Result<Vec<i64>> {
    let n = lattice.rank();
    if n >= 2 {
        let mut ef = vec![0i64; n];
        ef[0] = 1;
        ef[1] = 1;
        if lattice.norm(&ef)? > 0 {
            return Ok(ef);
        }
    }
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        if lattice.norm(&v)? > 0 {
            return Ok(v);
        }
    }
    Err(Error::Config(
        "no default ample reference exists; pass one explicitly".into(),
    ))
}

/// An index-2 covering pair of lattices: the cover shares coordinates with
/// the base and carries the doubled pairing.
#[derive(Debug, Clone)]
pub struct CoverPair {
    base: Arc<Lattice>,
    cover: Arc<Lattice>,
}

impl CoverPair {
    pub fn new(base: Arc<Lattice>) -> Result<CoverPair> {
        let mut cover = base.rescale(2)?;
        if base.name() == Some("enriques_num") {
            cover = cover.with_name("k3_invariant");
        }
        Ok(CoverPair {
            base,
            cover: Arc::new(cover),
        })
    }

    /// The pair for `enriques_num` under `k3_invariant`.
    pub fn enriques() -> CoverPair {
        CoverPair::new(Arc::new(preset("enriques_num").expect("preset")))
            .expect("rescale by 2")
    }

    pub fn base(&self) -> &Arc<Lattice> {
        &self.base
    }

    pub fn cover(&self) -> &Arc<Lattice> {
        &self.cover
    }

    /// Pullback: the same coordinates read in the cover. Doubles all
    /// pairings, so pullback(y)^2 = 2 y^2.
    pub fn pullback(&self, y: &LatticeVector) -> Result<LatticeVector> {
        if y.lattice().gram() != self.base.gram() {
            return Err(Error::LatticePairMismatch);
        }
        LatticeVector::new(Arc::clone(&self.cover), y.coords().to_vec())
    }

    /// Pushforward: multiplication by 2 on coordinates, landing in the base.
    /// Composition with pullback is multiplication by 2.
    pub fn pushforward(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if x.lattice().gram() != self.cover.gram() {
            return Err(Error::LatticePairMismatch);
        }
        LatticeVector::new(
            Arc::clone(&self.base),
            x.coords().iter().map(|&c| 2 * c).collect(),
        )
    }
}

/// Declarative lattice description, as read from a JSON config file:
/// `{"preset": name}`, `{"gram": [[...]]}` (optionally with `"iso_seeds"`),
/// or `{"sum": [spec, ...], "scale": n}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Preset {
        preset: String,
    },
    Gram {
        gram: Vec<Vec<i64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        iso_seeds: Option<Vec<Vec<i64>>>,
    },
    Sum {
        sum: Vec<LatticeSpec>,
        #[serde(skip_serializing_if = "Option::is_none")]
        scale: Option<i64>,
    },
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice> {
        match self {
            LatticeSpec::Preset { preset: name } => preset(name),
            LatticeSpec::Gram { gram, iso_seeds } => {
                let lat = Lattice::from_gram(gram.clone())?;
                match iso_seeds {
                    Some(seeds) => lat.with_seeds(seeds.clone()),
                    None => Ok(lat),
                }
            }
            LatticeSpec::Sum { sum, scale } => {
                if sum.is_empty() {
                    return Err(Error::Config("empty lattice sum".into()));
                }
                let mut acc = sum[0].build()?;
                for part in &sum[1..] {
                    acc = acc.direct_sum(&part.build()?);
                }
                match scale {
                    Some(s) => acc.rescale(*s),
                    None => Ok(acc),
                }
            }
        }
    }

    pub fn from_json(text: &str) -> Result<LatticeSpec> {
        serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("bad lattice config: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn arc(l: Lattice) -> Arc<Lattice> {
        Arc::new(l)
    }

    #[test]
    fn u_preset_basics() {
        let u = preset("U").unwrap();
        assert_eq!(u.rank(), 2);
        assert_eq!(u.signature(), (1, 1));
        assert_eq!(u.determinant(), BigInt::from(-1));
        assert_eq!(u.inner(&[1, 0], &[0, 1]).unwrap(), 1);
        assert_eq!(u.norm(&[2, 3]).unwrap(), 12);
        assert!(u.is_even());
        assert!(!u.is_two_divisible());
    }

    #[test]
    fn e8_minus_is_negative_definite_and_unimodular() {
        let e8 = preset("E8_minus").unwrap();
        assert_eq!(e8.signature(), (0, 8));
        assert_eq!(e8.determinant(), BigInt::one());
        // independent route: all leading principal minors of the positive
        // (un-negated) form must be positive
        let g = e8.gram();
        for k in 1..=8 {
            let minor: Vec<Vec<i64>> = (0..k)
                .map(|i| (0..k).map(|j| -g[i][j]).collect())
                .collect();
            assert!(det_exact(&minor) > BigInt::zero(), "minor {k}");
        }
    }

    #[test]
    fn enriques_num_shape() {
        let l = preset("enriques_num").unwrap();
        assert_eq!(l.rank(), 10);
        assert_eq!(l.signature(), (1, 9));
        assert_eq!(l.determinant(), BigInt::from(-1));
        assert!(l.is_hyperbolic());
        assert!(l.is_even());
        assert_eq!(l.iso_seeds().len(), 2);
        assert_eq!(l.norm(&[2, 3, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap(), 12);
    }

    #[test]
    fn k3_invariant_doubles_everything() {
        let base = preset("enriques_num").unwrap();
        let k3 = preset("k3_invariant").unwrap();
        assert!(k3.is_two_divisible());
        assert_eq!(k3.signature(), (1, 9));
        for i in 0..10 {
            for j in 0..10 {
                assert_eq!(k3.gram()[i][j], 2 * base.gram()[i][j]);
            }
        }
        // diagonal norms all divisible by 4
        for i in 0..10 {
            assert_eq!(k3.gram()[i][i] % 4, 0);
        }
    }

    #[test]
    fn enriques_is_even_on_random_vectors() {
        let l = arc(preset("enriques_num").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let v: Vec<i64> = (0..10).map(|_| rng.gen_range(-9..=9)).collect();
            assert_eq!(l.norm(&v).unwrap() % 2, 0);
        }
    }

    #[test]
    fn rescale_examples() {
        let u = preset("U").unwrap();
        let u2 = u.rescale(2).unwrap();
        assert_eq!(u2.norm(&[2, 3]).unwrap(), 24);
        assert_eq!(u2.signature(), (1, 1));
        let neg = u.rescale(-1).unwrap();
        assert_eq!(neg.signature(), (1, 1)); // U is symmetric under negation
        let e8 = preset("E8_minus").unwrap();
        assert_eq!(e8.rescale(-1).unwrap().signature(), (8, 0));
        assert!(matches!(u.rescale(0), Err(Error::ZeroScale)));
    }

    #[test]
    fn signature_rejects_degenerate() {
        assert!(matches!(
            Lattice::from_gram(vec![vec![1, 2], vec![2, 4]]),
            Err(Error::Degenerate)
        ));
        assert!(matches!(
            Lattice::from_gram(vec![vec![0, 1], vec![2, 0]]),
            Err(Error::NonSymmetric { .. })
        ));
    }

    #[test]
    fn signature_handles_zero_diagonal_blocks() {
        // two hyperbolic planes, all diagonal entries zero
        let g = vec![
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
        ];
        let l = Lattice::from_gram(g).unwrap();
        assert_eq!(l.signature(), (2, 2));
    }

    #[test]
    fn primitivity_and_divisibility() {
        let u = preset("U").unwrap();
        assert_eq!(u.primitivity(&[2, 4]).unwrap(), (2, 2));
        assert_eq!(u.primitivity(&[1, 0]).unwrap(), (1, 1));
        let k3 = preset("k3_invariant").unwrap();
        let mut e = vec![0i64; 10];
        e[0] = 1;
        assert_eq!(k3.primitivity(&e).unwrap(), (1, 2));
        assert!(matches!(u.primitivity(&[0, 0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn cover_pair_transfer() {
        let pair = CoverPair::enriques();
        let base = Arc::clone(pair.base());
        let y = base.vector(vec![2, 3, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(y.norm(), 12);
        let up = pair.pullback(&y).unwrap();
        assert_eq!(up.norm(), 24);
        let down = pair.pushforward(&up).unwrap();
        assert_eq!(down.coords(), &[4, 6, 0, 0, 0, 0, 0, 0, 0, 0]);
        // pushforward . pullback = multiplication by 2
        for (a, b) in down.coords().iter().zip(y.coords()) {
            assert_eq!(*a, 2 * b);
        }
        // pairings double under pullback
        let z = base.vector(vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let uz = pair.pullback(&z).unwrap();
        assert_eq!(up.pair(&uz).unwrap(), 2 * y.pair(&z).unwrap());
        // zero stays zero
        let zero = base.vector(vec![0; 10]).unwrap();
        assert_eq!(pair.pullback(&zero).unwrap().norm(), 0);
        // mismatched lattice is rejected
        let u = arc(preset("U").unwrap());
        let w = u.vector(vec![1, 0]).unwrap();
        assert!(matches!(pair.pullback(&w), Err(Error::LatticePairMismatch)));
    }

    #[test]
    fn polarized_class_validation() {
        let u = arc(preset("U").unwrap());
        let h = u.vector(vec![1, 1]).unwrap();
        let good = u.vector(vec![2, 3]).unwrap();
        let pc = PolarizedClass::new(good, h.clone()).unwrap();
        assert_eq!(pc.self_int(), 12);
        let iso = u.vector(vec![1, 0]).unwrap();
        assert!(PolarizedClass::new(iso, h.clone()).is_err());
        let neg_side = u.vector(vec![-2, -3]).unwrap();
        assert!(PolarizedClass::new(neg_side, h).is_err());
    }

    #[test]
    fn default_ample_choices() {
        let u = arc(preset("U").unwrap());
        assert_eq!(default_ample(&u).unwrap(), vec![1, 1]);
        let enr = arc(preset("enriques_num").unwrap());
        let mut ef = vec![0i64; 10];
        ef[0] = 1;
        ef[1] = 1;
        assert_eq!(default_ample(&enr).unwrap(), ef);
        let pos = arc(Lattice::from_gram(vec![vec![2]]).unwrap());
        assert_eq!(default_ample(&pos).unwrap(), vec![1]);
        let e8 = arc(preset("E8_minus").unwrap());
        assert!(default_ample(&e8).is_err());
    }

    #[test]
    fn lattice_spec_parsing() {
        let spec = LatticeSpec::from_json(r#"{"preset": "U"}"#).unwrap();
        assert_eq!(spec.build().unwrap().rank(), 2);

        let spec = LatticeSpec::from_json(r#"{"gram": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap().signature(), (1, 1));

        let spec = LatticeSpec::from_json(
            r#"{"sum": [{"preset": "U"}, {"preset": "E8_minus"}], "scale": 2}"#,
        )
        .unwrap();
        let built = spec.build().unwrap();
        assert_eq!(built.gram(), preset("k3_invariant").unwrap().gram());

        let spec = LatticeSpec::from_json(
            r#"{"gram": [[0,1],[1,0]], "iso_seeds": [[1,0]]}"#,
        )
        .unwrap();
        assert_eq!(spec.build().unwrap().iso_seeds().len(), 1);

        assert!(LatticeSpec::from_json(r#"{"nonsense": 1}"#).is_err());
        assert!(LatticeSpec::from_json(r#"{"preset": "Leech"}"#)
            .unwrap()
            .build()
            .is_err());
        // non-isotropic seed rejected
        let spec =
            LatticeSpec::from_json(r#"{"gram": [[0,1],[1,0]], "iso_seeds": [[1,1]]}"#)
                .unwrap();
        assert!(spec.build().is_err());
    }
}
