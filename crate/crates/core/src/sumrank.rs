//! Sum-rank weights and distances over any intermediate subfield, plus the
//! exact counting machinery: rank-t matrix counts, the constant `gamma_q`,
//! sphere sizes, and their lower bounds.
//!
//! Counting is exact in arbitrary precision. Bound values are carried as an
//! exact rational `q`-exponent plus a real correction term and compared in
//! log space, so fractional exponents never go through `f64` products.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::{fp_rank, subfield_basis, FElem, FieldTower, GfError, SubfieldBasis};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SumRankError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("block vectors have different shapes ({0} vs {1})")]
    ShapeMismatch(String, String),
    #[error("rank {t} exceeds max(m, eta) = {max}")]
    RankTooLarge { t: usize, max: usize },
    #[error("weight {t} exceeds ell * min(eta, m) = {max}")]
    WeightTooLarge { t: usize, max: usize },
    #[error("vector length {len} is not ell * eta = {expected}")]
    BadLength { len: usize, expected: usize },
}

// ---------------------------------------------------------------------------
// Block vectors
// ---------------------------------------------------------------------------

/// A vector of `F_{q^m}^n` split into `ell` blocks of length `eta`.
#[derive(Clone, PartialEq, Eq)]
pub struct BlockVector {
    tower: Arc<FieldTower>,
    ell: usize,
    eta: usize,
    data: Vec<FElem>,
}

impl BlockVector {
    pub fn new(
        tower: Arc<FieldTower>,
        ell: usize,
        eta: usize,
        data: Vec<FElem>,
    ) -> Result<Self, SumRankError> {
        if data.len() != ell * eta {
            return Err(SumRankError::BadLength {
                len: data.len(),
                expected: ell * eta,
            });
        }
        Ok(BlockVector {
            tower,
            ell,
            eta,
            data,
        })
    }

    pub fn zero(tower: &Arc<FieldTower>, ell: usize, eta: usize) -> Self {
        BlockVector {
            tower: Arc::clone(tower),
            ell,
            eta,
            data: (0..ell * eta).map(|_| tower.zero()).collect(),
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn ell(&self) -> usize {
        self.ell
    }
    pub fn eta(&self) -> usize {
        self.eta
    }
    pub fn len(&self) -> usize {
        self.data.len()
    }
    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
    pub fn entries(&self) -> &[FElem] {
        &self.data
    }
    pub fn block(&self, i: usize) -> &[FElem] {
        &self.data[i * self.eta..(i + 1) * self.eta]
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.tower == other.tower && self.ell == other.ell && self.eta == other.eta
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SumRankError> {
        if !self.same_shape(other) {
            return Err(SumRankError::ShapeMismatch(
                format!("{}x{}", self.ell, self.eta),
                format!("{}x{}", other.ell, other.eta),
            ));
        }
        Ok(BlockVector {
            tower: Arc::clone(&self.tower),
            ell: self.ell,
            eta: self.eta,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, SumRankError> {
        if !self.same_shape(other) {
            return Err(SumRankError::ShapeMismatch(
                format!("{}x{}", self.ell, self.eta),
                format!("{}x{}", other.ell, other.eta),
            ));
        }
        Ok(BlockVector {
            tower: Arc::clone(&self.tower),
            ell: self.ell,
            eta: self.eta,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    /// Entry encodings, usable as a deterministic sort/hash key.
    pub fn encodings(&self) -> Vec<u64> {
        self.data.iter().map(|e| e.encoding()).collect()
    }
}

impl fmt::Debug for BlockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockVector[{}x{}]{:?}", self.ell, self.eta, self.encodings())
    }
}

// ---------------------------------------------------------------------------
// Ranks and weights
// ---------------------------------------------------------------------------

/// Dimension over `F_{q^g}` of the span of `v`'s entries, `g | m`.
///
/// Computed without `F_{q^g}` arithmetic: the `F_{q^g}`-span equals the
/// `F_p`-span of all theta-power multiples of the entries, and its
/// `F_p`-dimension is `g` times the `F_{q^g}`-dimension.
pub fn rank_over_subfield(v: &[FElem], g: usize) -> Result<usize, SumRankError> {
    if v.is_empty() {
        return Ok(0);
    }
    let tower = v[0].tower();
    let m = tower.degree();
    if g == 0 || m % g != 0 {
        return Err(SumRankError::Gf(GfError::NotADivisor { g, m }));
    }
    if g == 1 {
        let rows: Vec<Vec<u64>> = v.iter().map(|e| e.coeffs().to_vec()).collect();
        return Ok(fp_rank(tower.p(), rows, m));
    }
    let basis = subfield_basis(tower, g)?;
    rank_with_basis(v, &basis)
}

/// [`rank_over_subfield`] with a caller-supplied subfield basis, for hot loops.
pub fn rank_with_basis(v: &[FElem], basis: &SubfieldBasis) -> Result<usize, SumRankError> {
    if v.is_empty() {
        return Ok(0);
    }
    let tower = v[0].tower();
    let m = tower.degree();
    let mut rows = Vec::with_capacity(v.len() * basis.g);
    for e in v {
        for theta in &basis.theta_powers {
            rows.push(theta.mul(e).coeffs().to_vec());
        }
    }
    let r = fp_rank(tower.p(), rows, m);
    debug_assert_eq!(r % basis.g, 0);
    Ok(r / basis.g)
}

/// Sum of the per-block ranks of `x` over `F_{q^g}`; `g = 1` is the sum-rank
/// weight of the underlying metric.
pub fn sum_rank_weight(x: &BlockVector, g: usize) -> Result<usize, SumRankError> {
    let m = x.tower().degree();
    if g == 0 || m % g != 0 {
        return Err(SumRankError::Gf(GfError::NotADivisor { g, m }));
    }
    let basis = if g == 1 {
        None
    } else {
        Some(subfield_basis(x.tower(), g)?)
    };
    let mut total = 0;
    for i in 0..x.ell() {
        total += match &basis {
            None => rank_over_subfield(x.block(i), 1)?,
            Some(b) => rank_with_basis(x.block(i), b)?,
        };
    }
    Ok(total)
}

/// Sum-rank distance `wt(x - y)` over the base field.
pub fn sum_rank_dist(x: &BlockVector, y: &BlockVector) -> Result<usize, SumRankError> {
    sum_rank_weight(&x.sub(y)?, 1)
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

fn big_q_pow(q: u64, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// Number of `m x eta` matrices over `F_q` of rank exactly `t`:
/// `prod_{i<t} (q^m - q^i)(q^eta - q^i) / (q^t - q^i)`.
///
/// The formula is stated for `t <= min(m, eta)`; between `min` and `max` the
/// count is zero and zero is returned, and above `max(m, eta)` the request is
/// rejected as out of range.
pub fn matrix_rank_count(q: u64, m: usize, eta: usize, t: usize) -> Result<BigUint, SumRankError> {
    if t > m.max(eta) {
        return Err(SumRankError::RankTooLarge { t, max: m.max(eta) });
    }
    if t > m.min(eta) {
        return Ok(BigUint::zero());
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..t {
        let qi = big_q_pow(q, i);
        num *= big_q_pow(q, m) - &qi;
        num *= big_q_pow(q, eta) - &qi;
        den *= big_q_pow(q, t) - &qi;
    }
    // the product is an integer; the division is exact
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `gamma_q = prod_{i>=1} (1 - q^{-i})^{-1}`, truncated at the first term
/// below `1e-18`. Monotonically decreasing in `q` with limit 1.
pub fn gamma_q(q: u64) -> f64 {
    assert!(q >= 2, "gamma_q requires q >= 2");
    gamma_from_base(q as f64)
}

/// `gamma` for the prime power `q^g`, computed in floating point so large
/// `q^g` cannot overflow integer arithmetic.
pub fn gamma_q_pow(q: u64, g: usize) -> f64 {
    assert!(q >= 2 && g >= 1);
    gamma_from_base((q as f64).powi(g as i32))
}

fn gamma_from_base(qf: f64) -> f64 {
    let mut prod = 1.0;
    let mut term = 1.0 / qf;
    while term >= 1e-18 {
        prod *= 1.0 - term;
        term /= qf;
    }
    1.0 / prod
}

/// `log_q(gamma_q)`.
pub fn log_q_gamma(q: u64) -> f64 {
    gamma_q(q).ln() / (q as f64).ln()
}

/// `log_q` of an exact count, accurate to well below the comparison
/// tolerance even for counts far beyond `f64` range.
pub fn log_q_biguint(x: &BigUint, q: u64) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let bits = x.bits();
    let ln = if bits <= 53 {
        (x.to_u64().unwrap() as f64).ln()
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_u64().unwrap() as f64;
        top.ln() + shift as f64 * std::f64::consts::LN_2
    };
    ln / (q as f64).ln()
}

/// A positive quantity `q^(exponent + correction)` with the exponent kept as
/// an exact rational and the transcendental part as a real correction.
#[derive(Debug, Clone, PartialEq)]
pub struct LogQBound {
    pub q: u64,
    pub exponent: BigRational,
    pub correction: f64,
}

impl LogQBound {
    pub fn new(q: u64, exponent: BigRational, correction: f64) -> Self {
        LogQBound {
            q,
            exponent,
            correction,
        }
    }

    /// Total base-q logarithm.
    pub fn log_q_total(&self) -> f64 {
        self.exponent.to_f64().unwrap_or(f64::NAN) + self.correction
    }

    /// The bound value itself; may overflow to infinity for huge exponents.
    pub fn value(&self) -> f64 {
        (self.q as f64).powf(self.log_q_total())
    }
}

impl fmt::Display for LogQBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q^({}) * q^({:.6}) = {:.6e}",
            self.exponent,
            self.correction,
            self.value()
        )
    }
}

pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact number of vectors of `F_{q^m}^n`, `n = ell * eta`, of sum-rank
/// weight exactly `t`, together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct SphereCount {
    pub q: u64,
    pub m: usize,
    pub eta: usize,
    pub ell: usize,
    pub t: usize,
    pub exact: BigUint,
}

/// Sphere size: sum over all compositions `t_1 + ... + t_ell = t` with
/// `0 <= t_i <= min(eta, m)` of the product of per-block matrix counts.
pub fn sphere_size(
    q: u64,
    ell: usize,
    eta: usize,
    m: usize,
    t: usize,
) -> Result<SphereCount, SumRankError> {
    let per_block = eta.min(m);
    if t > ell * per_block {
        return Err(SumRankError::WeightTooLarge {
            t,
            max: ell * per_block,
        });
    }
    let counts: Vec<BigUint> = (0..=per_block)
        .map(|ti| matrix_rank_count(q, m, eta, ti))
        .collect::<Result<_, _>>()?;
    let mut total = BigUint::zero();
    let mut parts = vec![0usize; ell];
    compositions(&mut parts, 0, t, per_block, &counts, &BigUint::one(), &mut total);
    Ok(SphereCount {
        q,
        m,
        eta,
        ell,
        t,
        exact: total,
    })
}

fn compositions(
    parts: &mut [usize],
    idx: usize,
    remaining: usize,
    cap: usize,
    counts: &[BigUint],
    acc: &BigUint,
    total: &mut BigUint,
) {
    if idx == parts.len() {
        if remaining == 0 {
            *total += acc;
        }
        return;
    }
    let slots_left = parts.len() - idx - 1;
    for ti in 0..=cap.min(remaining) {
        // prune: the rest of the blocks must be able to absorb the remainder
        if remaining - ti > slots_left * cap {
            continue;
        }
        parts[idx] = ti;
        let next = acc * &counts[ti];
        compositions(parts, idx + 1, remaining - ti, cap, counts, &next, total);
    }
}

/// Lower bound on the sphere size, in log-q form: exponent
/// `t(eta + m - t/ell)`, with the extra `-ell/4` folded into the correction
/// when `ell` does not divide `t`, and `-ell * log_q(gamma_q)` always.
pub fn sphere_lower_bound(
    q: u64,
    ell: usize,
    eta: usize,
    m: usize,
    t: usize,
) -> Result<LogQBound, SumRankError> {
    let per_block = eta.min(m);
    if t > ell * per_block {
        return Err(SumRankError::WeightTooLarge {
            t,
            max: ell * per_block,
        });
    }
    // t * (eta + m - t/ell)
    let t_r = ratio(t as i64, 1);
    let exponent = &t_r * (ratio((eta + m) as i64, 1) - ratio(t as i64, ell as i64));
    let mut correction = -(ell as f64) * log_q_gamma(q);
    if t % ell != 0 {
        correction -= ell as f64 / 4.0;
    }
    Ok(LogQBound::new(q, exponent, correction))
}
