//! Exact integer linear algebra on skew-adjacency matrices.
//!
//! Rank and determinant use Bareiss fraction-free elimination. Every
//! intermediate entry is a minor of the input, so the run first tries
//! checked `i64` arithmetic and repeats the elimination over `BigInt` if any
//! step would overflow. No floating point is involved anywhere.
//!
//! The characteristic polynomial follows the Faddeev-LeVerrier recurrence.
//! Its coefficients are reported in the sign convention
//! `phi(x) = sum_i (-1)^i a_i x^(n-i)` with `a_0 = 1`; for a skew-symmetric
//! matrix every odd-indexed `a_i` vanishes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::OrientedGraph;

/// An `n x n` skew-symmetric matrix with entries in `{-1, 0, 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SkewMatrix {
    /// Checks entry range, zero diagonal, and skew-symmetry.
    pub fn new(n: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let e = entries[i * n + j];
                if !(-1..=1).contains(&e) || e != -entries[j * n + i] {
                    return Err(Error::InvalidParameter(format!(
                        "entry ({i}, {j}) breaks skew-symmetry"
                    )));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// `D S D` for the diagonal sign matrix `D = diag(signs)`.
    pub fn switched(&self, signs: &[i8]) -> Result<Self> {
        if signs.len() != self.n || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::InvalidParameter("switching needs one ±1 per row".into()));
        }
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| signs[k / n] * self.entries[k] * signs[k % n])
            .collect();
        Ok(Self { n, entries })
    }

    fn to_i64(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| e as i64).collect()
    }
}

impl fmt::Debug for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// `S(G)`: `+1` at `(i, j)` for an arc `i -> j`, `-1` for `j -> i`.
pub fn skew_adjacency(g: &OrientedGraph) -> SkewMatrix {
    let n = g.order();
    let mut entries = vec![0i8; n * n];
    for &(u, v) in g.arcs() {
        entries[u * n + v] = 1;
        entries[v * n + u] = -1;
    }
    SkewMatrix { n, entries }
}

/// Integer types the elimination can run over.
trait Exact: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn negate(self) -> Self;
    /// `(a * b - c * d) / divisor`, where the division is exact.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, divisor: &Self) -> Option<Self>;
}

impl Exact for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn is_nil(&self) -> bool {
        *self == 0
    }

    fn negate(self) -> Self {
        -self
    }

    #[inline]
    fn cross(a: &i64, b: &i64, c: &i64, d: &i64, divisor: &i64) -> Option<i64> {
        let num = (*a as i128 * *b as i128).checked_sub(*c as i128 * *d as i128)?;
        debug_assert_eq!(num % *divisor as i128, 0);
        i64::try_from(num / *divisor as i128).ok()
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn negate(self) -> Self {
        -self
    }

    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, divisor: &Self) -> Option<Self> {
        let num = a * b - c * d;
        debug_assert!(Zero::is_zero(&(&num % divisor)));
        Some(num / divisor)
    }
}

/// Bareiss elimination of a square matrix. Returns the rank and the
/// determinant, or `None` if the arithmetic overflowed.
fn bareiss<T: Exact>(mut m: Vec<T>, n: usize) -> Option<(usize, T)> {
    let mut prev = T::from_i64(1);
    let mut row = 0;
    let mut negate = false;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r * n + col].is_nil()) else {
            continue;
        };
        if p != row {
            for c in 0..n {
                m.swap(p * n + c, row * n + c);
            }
            negate = !negate;
        }
        for r in row + 1..n {
            let lead = m[r * n + col].clone();
            for c in col + 1..n {
                m[r * n + c] = T::cross(
                    &m[row * n + col],
                    &m[r * n + c],
                    &lead,
                    &m[row * n + c],
                    &prev,
                )?;
            }
            m[r * n + col] = T::from_i64(0);
        }
        prev = m[row * n + col].clone();
        row += 1;
    }
    let det = if row < n {
        T::from_i64(0)
    } else if negate {
        prev.negate()
    } else {
        prev
    };
    Some((row, det))
}

/// Rank and determinant of a square integer matrix given row-major.
pub(crate) fn integer_rank_det(m: &[i64], n: usize) -> (usize, BigInt) {
    debug_assert_eq!(m.len(), n * n);
    if n == 0 {
        return (0, BigInt::one());
    }
    if let Some((rank, det)) = bareiss(m.to_vec(), n) {
        return (rank, BigInt::from(det));
    }
    bareiss(m.iter().map(|&v| BigInt::from(v)).collect(), n).expect("BigInt cannot overflow")
}

/// Rank of a square integer matrix given row-major.
pub(crate) fn integer_rank(m: Vec<i64>, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    match bareiss(m.clone(), n) {
        Some((rank, _)) => rank,
        None => bareiss(m.into_iter().map(BigInt::from).collect(), n)
            .expect("BigInt cannot overflow")
            .0,
    }
}

/// Rank of the principal submatrix of `full` (order `n`, row-major) on the
/// rows and columns in `mask`.
pub(crate) fn masked_rank(full: &[i64], n: usize, mask: u64) -> usize {
    let idx: Vec<usize> = crate::graph::bits(mask).filter(|&v| v < n).collect();
    let k = idx.len();
    let mut sub = Vec::with_capacity(k * k);
    for &i in &idx {
        sub.extend(idx.iter().map(|&j| full[i * n + j]));
    }
    integer_rank(sub, k)
}

/// Row-major `S(g)` as `i64` entries.
pub(crate) fn skew_entries(g: &OrientedGraph) -> Vec<i64> {
    skew_adjacency(g).to_i64()
}

/// Rank over the rationals.
pub fn rank_exact(m: &SkewMatrix) -> usize {
    integer_rank_det(&m.to_i64(), m.n).0
}

pub fn determinant_exact(m: &SkewMatrix) -> BigInt {
    integer_rank_det(&m.to_i64(), m.n).1
}

/// Shorthand for `rank_exact(&skew_adjacency(g))`.
pub fn skew_rank(g: &OrientedGraph) -> usize {
    rank_exact(&skew_adjacency(g))
}

/// Exact characteristic polynomial coefficients `a_0..=a_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coefficients(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn a(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Multiplicity of `0` as a root.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.order() - self.rank()
    }

    /// Largest `i` with `a_i != 0`, which equals the rank of a
    /// skew-symmetric matrix.
    pub fn rank(&self) -> usize {
        (0..self.coeffs.len())
            .rev()
            .find(|&i| !self.coeffs[i].is_zero())
            .unwrap_or(0)
    }

    /// `phi(x) = sum_i (-1)^i a_i x^(n-i)`.
    pub fn evaluate(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.coeffs
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (i, a)| {
                let term = if i % 2 == 0 { a.clone() } else { -a };
                acc * &x + term
            })
    }
}

/// Writes a `BigInt` as a JSON integer when it fits in `i128`, and as a
/// decimal string otherwise.
pub(crate) fn serialize_bigint<S: Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i128() {
        Some(x) => s.serialize_i128(x),
        None => s.serialize_str(&v.to_string()),
    }
}

struct AsJsonInt<'a>(&'a BigInt);

impl Serialize for AsJsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint(self.0, s)
    }
}

impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(AsJsonInt))
    }
}

/// Faddeev-LeVerrier over the integers: with `M_0 = 0` and `c_n = 1`,
/// `M_k = S M_(k-1) + c_(n-k+1) I` and `c_(n-k) = -tr(S M_k) / k`. The
/// division is exact because every `c_j` of an integer matrix is an integer.
fn faddeev_leverrier(s: &[i64], n: usize) -> Vec<BigInt> {
    let sb: Vec<BigInt> = s.iter().map(|&v| BigInt::from(v)).collect();
    // c[j] is the coefficient of x^j in det(xI - S).
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // m <- S * m + c[n-k+1] * I
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let sil = &sb[i * n + l];
                if sil.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let mlj = &m[l * n + j];
                    if !mlj.is_zero() {
                        next[i * n + j] += sil * mlj;
                    }
                }
            }
            next[i * n + i] += &c[n - k + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                let sil = &sb[i * n + l];
                if !sil.is_zero() {
                    trace += sil * &m[l * n + i];
                }
            }
        }
        let k_big = BigInt::from(k as i64);
        debug_assert!((&trace % &k_big).is_zero());
        c[n - k] = -(trace / k_big);
    }
    c
}

/// The characteristic polynomial of `m`, self-checked against
/// `det(xI - S)` at `x = 0, 1, 2`.
pub fn char_poly_exact(m: &SkewMatrix) -> CharPoly {
    let n = m.n;
    let s = m.to_i64();
    let c = faddeev_leverrier(&s, n);
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|i| {
            let v = c[n - i].clone();
            if i % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let poly = CharPoly { coeffs };
    for x in 0..=2i64 {
        let shifted: Vec<i64> = (0..n * n)
            .map(|k| if k / n == k % n { x - s[k] } else { -s[k] })
            .collect();
        let det = integer_rank_det(&shifted, n).1;
        assert_eq!(
            poly.evaluate(x),
            det,
            "characteristic polynomial self-check failed at x = {x}"
        );
    }
    poly
}

/// Non-negativity of the determinant at even order, zero at odd order.
pub fn determinant_sign_ok(det: &BigInt, n: usize) -> bool {
    if n % 2 == 1 {
        det.is_zero()
    } else {
        !det.is_negative()
    }
}
