//! Finite-field tower arithmetic.
//!
//! A [`FieldTower`] holds the prime field `F_p`, the extension `F_{q^m}` with
//! `q = p`, and everything derived from it: Frobenius powers, intermediate
//! subfields `F_{q^g}` for `g | m`, norm maps and conjugacy classes.
//!
//! Elements are stored in polynomial-basis coordinates over `F_p`; no
//! discrete-log tables are used. Towers are built deterministically (smallest
//! modulus, smallest primitive element), so two towers built from the same
//! `(p, m)` are bit-identical and all derived data is reproducible.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

/// Largest supported field size `p^m`. Chosen so that element encodings and
/// multiplicative orders fit comfortably in `u64` arithmetic; all enumeration
/// kernels have their own (much smaller) caps on top of this.
pub const MAX_FIELD_SIZE: u64 = 1 << 32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("p = {0} is not prime")]
    NonPrimeP(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field size p^m = {p}^{m} exceeds the supported cap {cap}")]
    FieldTooLarge { p: u64, m: usize, cap: u64 },
    #[error("elements belong to different towers ({0} vs {1})")]
    TowerMismatch(String, String),
    #[error("operation requires a nonzero input")]
    ZeroInput,
    #[error("{g} does not divide the extension degree {m}")]
    NotADivisor { g: usize, m: usize },
    #[error("automorphism exponent {s} out of range for degree {m}")]
    ExponentOutOfRange { s: usize, m: usize },
    #[error("coefficient vector of length {got} does not fit degree {m}")]
    BadCoefficientLength { got: usize, m: usize },
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, without multiplicity.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// F_p scalar and polynomial helpers
// ---------------------------------------------------------------------------

#[inline]
fn fp_add(p: u64, a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
fn fp_sub(p: u64, a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
fn fp_mul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn fp_pow(p: u64, mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(p, acc, base);
        }
        base = fp_mul(p, base, base);
        exp >>= 1;
    }
    acc
}

fn fp_inv(p: u64, a: u64) -> u64 {
    debug_assert!(a % p != 0);
    fp_pow(p, a, p - 2)
}

/// Degree of an `F_p[z]` coefficient vector, `None` for the zero polynomial.
fn poly_deg(c: &[u64]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p`.
fn poly_rem(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let db = poly_deg(b).expect("division by zero polynomial");
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(dr) = poly_deg(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr];
        let shift = dr - db;
        for i in 0..=db {
            r[shift + i] = fp_sub(p, r[shift + i], fp_mul(p, lead, b[i]));
        }
    }
    r.truncate(db);
    r.resize(db, 0);
    r
}

fn poly_is_zero(c: &[u64]) -> bool {
    c.iter().all(|&x| x == 0)
}

/// Irreducibility of a monic polynomial over `F_p` by trial division against
/// all monic polynomials of degree `1..=deg/2`.
fn poly_is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = match poly_deg(poly) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d, low coefficients counted in base p
        let count = p.pow(d as u32);
        for enc in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut e = enc;
            for c in div.iter_mut().take(d) {
                *c = e % p;
                e /= p;
            }
            div[d] = 1;
            if poly_is_zero(&poly_rem(p, poly, &div)) {
                return false;
            }
        }
    }
    true
}

/// Row rank of a matrix over `F_p` by Gaussian elimination. Rows are
/// length-`width` coordinate vectors; the input is consumed as scratch.
pub fn fp_rank(p: u64, mut rows: Vec<Vec<u64>>, width: usize) -> usize {
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = fp_inv(p, rows[rank][col]);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 0 {
                continue;
            }
            let factor = fp_mul(p, rows[r][col], inv);
            for c in col..width {
                let sub = fp_mul(p, factor, rows[rank][c]);
                rows[r][c] = fp_sub(p, rows[r][c], sub);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

// ---------------------------------------------------------------------------
// FieldTower
// ---------------------------------------------------------------------------

/// The extension `F_{q^m}` of the prime field `F_q = F_p`, with a fixed monic
/// irreducible modulus and a fixed primitive element.
///
/// Construction is deterministic: the modulus is the lexicographically
/// smallest monic irreducible of degree `m` with nonzero constant term
/// (coefficients compared low-to-high), and the primitive element is the
/// element of smallest encoding with full multiplicative order `p^m - 1`.
pub struct FieldTower {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    primitive: Vec<u64>,
    /// `frob[s]` is the m-by-m matrix over `F_p` of the map `a -> a^(p^s)`.
    frob: Vec<Vec<u64>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(p={}, m={})", self.p, self.m)
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}
impl Eq for FieldTower {}

/// Builds the tower for `F_{p^m}`. See [`FieldTower`] for the determinism
/// guarantees.
pub fn build_tower(p: u64, m: usize) -> Result<Arc<FieldTower>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NonPrimeP(p));
    }
    if m == 0 {
        return Err(GfError::DegreeZero);
    }
    let mut size: u64 = 1;
    for _ in 0..m {
        size = size
            .checked_mul(p)
            .filter(|&s| s <= MAX_FIELD_SIZE)
            .ok_or(GfError::FieldTooLarge {
                p,
                m,
                cap: MAX_FIELD_SIZE,
            })?;
    }

    // Smallest monic irreducible with nonzero constant term. The constant-term
    // restriction only matters for m = 1 (z itself would otherwise win) and is
    // implied by irreducibility for m >= 2.
    let mut modulus = None;
    'scan: for enc in 0..p.pow(m as u32) {
        if enc % p == 0 {
            continue;
        }
        let mut cand = vec![0u64; m + 1];
        let mut e = enc;
        for c in cand.iter_mut().take(m) {
            *c = e % p;
            e /= p;
        }
        cand[m] = 1;
        if poly_is_irreducible(p, &cand) {
            modulus = Some(cand);
            break 'scan;
        }
    }
    let modulus = modulus.expect("an irreducible polynomial of every degree exists");

    let mut tower = FieldTower {
        p,
        m,
        modulus,
        primitive: vec![0; m],
        frob: Vec::new(),
    };

    // Frobenius matrices: column j of frob[s] holds the coordinates of
    // (z^j)^(p^s). Built by iterating the single Frobenius a -> a^p.
    let mut mats = Vec::with_capacity(m);
    let mut images: Vec<Vec<u64>> = (0..m)
        .map(|j| {
            let mut v = vec![0u64; m];
            v[j] = 1;
            v
        })
        .collect();
    for _s in 0..m {
        let mut mat = vec![0u64; m * m];
        for (j, img) in images.iter().enumerate() {
            for (i, &c) in img.iter().enumerate() {
                mat[i * m + j] = c;
            }
        }
        mats.push(mat);
        images = images
            .iter()
            .map(|img| tower.pow_coeffs(img, p as u128))
            .collect();
    }
    tower.frob = mats;

    // Smallest element of full multiplicative order.
    let group_order = size - 1;
    let factors = prime_factors(group_order);
    let mut primitive = None;
    'outer: for enc in 1..size {
        let cand = tower.coeffs_from_encoding(enc);
        for &f in &factors {
            if tower.pow_coeffs(&cand, (group_order / f) as u128) == tower.one_coeffs() {
                continue 'outer;
            }
        }
        primitive = Some(cand);
        break;
    }
    tower.primitive = primitive.expect("the multiplicative group of a finite field is cyclic");

    Ok(Arc::new(tower))
}

impl FieldTower {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree `m`.
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Field size `p^m`.
    pub fn size(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    /// Modulus coefficients, low to high, length `m + 1`.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive_coeffs(&self) -> &[u64] {
        &self.primitive
    }

    fn one_coeffs(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.m];
        v[0] = 1;
        v
    }

    fn coeffs_from_encoding(&self, mut enc: u64) -> Vec<u64> {
        let mut v = vec![0u64; self.m];
        for c in v.iter_mut() {
            *c = enc % self.p;
            enc /= self.p;
        }
        debug_assert_eq!(enc, 0, "encoding out of range");
        v
    }

    fn add_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| fp_add(self.p, x, y))
            .collect()
    }

    fn sub_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| fp_sub(self.p, x, y))
            .collect()
    }

    fn neg_coeffs(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| fp_sub(self.p, 0, x)).collect()
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.m;
        if m == 1 {
            return vec![fp_mul(self.p, a[0], b[0])];
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = fp_add(self.p, prod[i + j], fp_mul(self.p, x, y));
            }
        }
        poly_rem(self.p, &prod, &self.modulus)
    }

    fn pow_coeffs(&self, a: &[u64], mut exp: u128) -> Vec<u64> {
        let mut acc = self.one_coeffs();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_coeffs(&acc, &base);
            }
            base = self.mul_coeffs(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn frobenius_coeffs(&self, s: usize, a: &[u64]) -> Vec<u64> {
        let m = self.m;
        let mat = &self.frob[s % m];
        let mut out = vec![0u64; m];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (j, &x) in a.iter().enumerate() {
                if x != 0 {
                    acc = fp_add(self.p, acc, fp_mul(self.p, mat[i * m + j], x));
                }
            }
            *o = acc;
        }
        out
    }

}

// Element constructors live on Arc so every element can keep its tower alive.
impl FieldTower {
    pub fn zero(self: &Arc<Self>) -> FElem {
        FElem {
            tower: Arc::clone(self),
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(self: &Arc<Self>) -> FElem {
        FElem {
            tower: Arc::clone(self),
            coeffs: self.one_coeffs(),
        }
    }

    /// The class of `z`, the generator of the polynomial basis.
    pub fn gen(self: &Arc<Self>) -> FElem {
        if self.m == 1 {
            // z reduces to a scalar modulo the degree-1 modulus z + c0.
            let c = fp_sub(self.p, 0, self.modulus[0]);
            return self.from_scalar(c);
        }
        let mut coeffs = vec![0; self.m];
        coeffs[1] = 1;
        FElem {
            tower: Arc::clone(self),
            coeffs,
        }
    }

    pub fn from_scalar(self: &Arc<Self>, a: u64) -> FElem {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = a % self.p;
        FElem {
            tower: Arc::clone(self),
            coeffs,
        }
    }

    /// Builds an element from polynomial-basis coordinates (low to high).
    /// Shorter vectors are zero-padded; entries are reduced mod p.
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<FElem, GfError> {
        if coeffs.len() > self.m {
            return Err(GfError::BadCoefficientLength {
                got: coeffs.len(),
                m: self.m,
            });
        }
        let mut v: Vec<u64> = coeffs.iter().map(|&c| c % self.p).collect();
        v.resize(self.m, 0);
        Ok(FElem {
            tower: Arc::clone(self),
            coeffs: v,
        })
    }

    /// Inverse of [`FElem::encoding`].
    pub fn from_encoding(self: &Arc<Self>, enc: u64) -> FElem {
        FElem {
            tower: Arc::clone(self),
            coeffs: self.coeffs_from_encoding(enc),
        }
    }

    pub fn primitive_element(self: &Arc<Self>) -> FElem {
        FElem {
            tower: Arc::clone(self),
            coeffs: self.primitive.clone(),
        }
    }

    /// All field elements in encoding order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FElem> {
        let t = Arc::clone(self);
        (0..self.size()).map(move |e| t.from_encoding(e))
    }

    /// All nonzero field elements in encoding order.
    pub fn nonzero_elements(self: &Arc<Self>) -> impl Iterator<Item = FElem> {
        let t = Arc::clone(self);
        (1..self.size()).map(move |e| t.from_encoding(e))
    }

    /// The automorphism `a -> a^(p^s)`.
    pub fn automorphism(self: &Arc<Self>, s: usize) -> Result<Automorphism, GfError> {
        if s >= self.m {
            return Err(GfError::ExponentOutOfRange { s, m: self.m });
        }
        Ok(Automorphism {
            tower: Arc::clone(self),
            s,
        })
    }

    /// The Frobenius `a -> a^p` (identity for m = 1).
    pub fn frobenius(self: &Arc<Self>) -> Automorphism {
        let s = if self.m == 1 { 0 } else { 1 };
        self.automorphism(s).expect("s < m by construction")
    }
}

// ---------------------------------------------------------------------------
// FElem
// ---------------------------------------------------------------------------

/// An element of `F_{q^m}` in polynomial-basis coordinates over `F_p`.
#[derive(Clone)]
pub struct FElem {
    tower: Arc<FieldTower>,
    coeffs: Vec<u64>,
}

impl FElem {
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Integer encoding `sum_i c_i p^i`; the element order used everywhere a
    /// "smallest element" is picked.
    pub fn encoding(&self) -> u64 {
        let p = self.tower.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c)
    }

    fn assert_same_tower(&self, other: &FElem) {
        assert!(
            self.tower == other.tower,
            "tower mismatch: {:?} vs {:?}",
            self.tower,
            other.tower
        );
    }

    pub fn add(&self, other: &FElem) -> FElem {
        self.assert_same_tower(other);
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.tower.add_coeffs(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &FElem) -> FElem {
        self.assert_same_tower(other);
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.tower.sub_coeffs(&self.coeffs, &other.coeffs),
        }
    }

    pub fn neg(&self) -> FElem {
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.tower.neg_coeffs(&self.coeffs),
        }
    }

    pub fn mul(&self, other: &FElem) -> FElem {
        self.assert_same_tower(other);
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.tower.mul_coeffs(&self.coeffs, &other.coeffs),
        }
    }

    /// Multiplication by an `F_p` scalar.
    pub fn scale(&self, lambda: u64) -> FElem {
        let p = self.tower.p;
        let l = lambda % p;
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.coeffs.iter().map(|&c| fp_mul(p, c, l)).collect(),
        }
    }

    pub fn pow(&self, exp: u128) -> FElem {
        FElem {
            tower: Arc::clone(&self.tower),
            coeffs: self.tower.pow_coeffs(&self.coeffs, exp),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<FElem> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.tower.size() as u128 - 2))
    }
}

impl PartialEq for FElem {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.coeffs == other.coeffs
    }
}
impl Eq for FElem {}

impl std::hash::Hash for FElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.tower.p.hash(state);
        self.tower.m.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FElem{:?}", self.coeffs)
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

impl std::ops::Add for &FElem {
    type Output = FElem;
    fn add(self, rhs: &FElem) -> FElem {
        FElem::add(self, rhs)
    }
}
impl std::ops::Sub for &FElem {
    type Output = FElem;
    fn sub(self, rhs: &FElem) -> FElem {
        FElem::sub(self, rhs)
    }
}
impl std::ops::Mul for &FElem {
    type Output = FElem;
    fn mul(self, rhs: &FElem) -> FElem {
        FElem::mul(self, rhs)
    }
}
impl std::ops::Neg for &FElem {
    type Output = FElem;
    fn neg(self) -> FElem {
        FElem::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Automorphism
// ---------------------------------------------------------------------------

/// A power `phi^s` of the Frobenius `phi : a -> a^q` on `F_{q^m}`. Its fixed
/// field is `F_{q^gcd(s, m)}` (with `gcd(0, m) = m`: the identity fixes
/// everything).
#[derive(Clone)]
pub struct Automorphism {
    tower: Arc<FieldTower>,
    s: usize,
}

impl Automorphism {
    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Degree `g` of the fixed field `F_{q^g}`.
    pub fn fixed_degree(&self) -> usize {
        self.s.gcd(&self.tower.m)
    }

    /// True when the fixed field is `F_q` itself, i.e. this automorphism
    /// generates the Galois group.
    pub fn generates_galois_group(&self) -> bool {
        self.fixed_degree() == 1
    }

    /// `[F_{q^m} : fixed field]`, the number of factors in the norm product.
    pub fn relative_degree(&self) -> usize {
        self.tower.m / self.fixed_degree()
    }

    /// The power `self^i`, reduced modulo the Galois group order.
    pub fn power(&self, i: usize) -> Automorphism {
        Automorphism {
            tower: Arc::clone(&self.tower),
            s: (self.s * i) % self.tower.m,
        }
    }

    pub fn apply(&self, a: &FElem) -> FElem {
        assert!(
            self.tower == a.tower,
            "tower mismatch: {:?} vs {:?}",
            self.tower,
            a.tower
        );
        FElem {
            tower: Arc::clone(&a.tower),
            coeffs: self.tower.frobenius_coeffs(self.s, &a.coeffs),
        }
    }

    /// Checked variant of [`Automorphism::apply`].
    pub fn try_apply(&self, a: &FElem) -> Result<FElem, GfError> {
        if self.tower != a.tower {
            return Err(GfError::TowerMismatch(
                format!("{:?}", self.tower),
                format!("{:?}", a.tower),
            ));
        }
        Ok(self.apply(a))
    }

    /// Applies `self^i`.
    pub fn apply_power(&self, i: usize, a: &FElem) -> FElem {
        self.power(i).apply(a)
    }
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.tower == other.tower && self.s == other.s
    }
}
impl Eq for Automorphism {}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi^{} on {:?}", self.s, self.tower)
    }
}

// ---------------------------------------------------------------------------
// Norms, conjugacy, Hilbert 90
// ---------------------------------------------------------------------------

/// Norm of `a` with respect to `psi`: the product of `psi^i(a)` over
/// `i = 0 .. [F_{q^m} : fixed field] - 1`. The result lies in the fixed field.
pub fn norm(psi: &Automorphism, a: &FElem) -> Result<FElem, GfError> {
    if a.is_zero() {
        return Err(GfError::ZeroInput);
    }
    if psi.tower != *a.tower() {
        return Err(GfError::TowerMismatch(
            format!("{:?}", psi.tower),
            format!("{:?}", a.tower),
        ));
    }
    let mut acc = a.tower.one();
    let mut cur = a.clone();
    for _ in 0..psi.relative_degree() {
        acc = acc.mul(&cur);
        cur = psi.apply(&cur);
    }
    Ok(acc)
}

/// One conjugacy class of `F_{q^m}^*` under "equal norm w.r.t. psi". Members
/// are sorted by encoding; the representative is the smallest member.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub norm_value: FElem,
    pub members: Vec<FElem>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> &FElem {
        &self.members[0]
    }
}

/// Partition of `F_{q^m}^*` into conjugacy classes w.r.t. `psi`, sorted by
/// representative encoding. There are `|fixed field| - 1` classes of equal
/// size `(q^m - 1) / (|fixed field| - 1)`.
pub fn conjugacy_classes(psi: &Automorphism) -> Vec<ConjugacyClass> {
    let tower = &psi.tower;
    let mut by_norm: Vec<(u64, ConjugacyClass)> = Vec::new();
    for enc in 1..tower.size() {
        let a = {
            let t = Arc::clone(tower);
            t.from_encoding(enc)
        };
        let n = norm(psi, &a).expect("nonzero by construction");
        let key = n.encoding();
        match by_norm.iter_mut().find(|(k, _)| *k == key) {
            Some((_, class)) => class.members.push(a),
            None => by_norm.push((
                key,
                ConjugacyClass {
                    norm_value: n,
                    members: vec![a],
                },
            )),
        }
    }
    let mut classes: Vec<ConjugacyClass> = by_norm.into_iter().map(|(_, c)| c).collect();
    // members were pushed in encoding order already
    classes.sort_by_key(|c| c.representative().encoding());
    classes
}

/// Searches exhaustively for `c` with `a = b * psi(c) * c^{-1}`. Present if
/// and only if `a` and `b` are conjugate w.r.t. `psi`. Diagnostic-grade: cost
/// is one scan of `F_{q^m}^*`.
pub fn hilbert90_witness(
    psi: &Automorphism,
    a: &FElem,
    b: &FElem,
) -> Result<Option<FElem>, GfError> {
    if a.is_zero() || b.is_zero() {
        return Err(GfError::ZeroInput);
    }
    let tower = Arc::clone(&psi.tower);
    for enc in 1..tower.size() {
        let c = tower.from_encoding(enc);
        // a = b psi(c) c^{-1}  <=>  a c = b psi(c)
        if a.mul(&c) == b.mul(&psi.apply(&c)) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Subfields
// ---------------------------------------------------------------------------

/// Data for the intermediate field `F_{q^g}` inside `F_{q^m}`:
/// `theta_powers` is an `F_q`-basis of `F_{q^g}` (powers of a generator of
/// its multiplicative group), and `relative_basis` is an `F_{q^g}`-basis of
/// `F_{q^m}`, chosen greedily from the polynomial basis.
#[derive(Debug, Clone)]
pub struct SubfieldBasis {
    pub g: usize,
    pub theta_powers: Vec<FElem>,
    pub relative_basis: Vec<FElem>,
}

/// Deterministic bases for the subfield `F_{q^g}`, `g | m`.
pub fn subfield_basis(tower: &Arc<FieldTower>, g: usize) -> Result<SubfieldBasis, GfError> {
    let m = tower.degree();
    if g == 0 || m % g != 0 {
        return Err(GfError::NotADivisor { g, m });
    }
    let size = tower.size();
    let sub_size = tower.p().pow(g as u32);
    let theta = tower
        .primitive_element()
        .pow(((size - 1) / (sub_size - 1)) as u128);
    let theta_powers: Vec<FElem> = (0..g).map(|j| theta.pow(j as u128)).collect();

    // Greedy filter of the polynomial basis down to F_{q^g}-independence,
    // tested via F_p-rank of the theta-expanded span.
    let p = tower.p();
    let mut relative_basis: Vec<FElem> = Vec::new();
    let mut expanded: Vec<Vec<u64>> = Vec::new();
    for i in 0..m {
        if relative_basis.len() == m / g {
            break;
        }
        let mut cand_enc = vec![0u64; m];
        cand_enc[i] = 1;
        let cand = Arc::clone(tower).from_coeffs(&cand_enc)?;
        let mut trial = expanded.clone();
        for tp in &theta_powers {
            trial.push(tp.mul(&cand).coeffs().to_vec());
        }
        let want = (relative_basis.len() + 1) * g;
        if fp_rank(p, trial.clone(), m) == want {
            expanded = trial;
            relative_basis.push(cand);
        }
    }
    debug_assert_eq!(relative_basis.len(), m / g);
    Ok(SubfieldBasis {
        g,
        theta_powers,
        relative_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_f2_has_modulus_z_plus_one() {
        let t = build_tower(2, 1).unwrap();
        assert_eq!(t.modulus(), &[1, 1]);
        assert_eq!(t.size(), 2);
        assert!(t.primitive_element().is_one());
    }

    #[test]
    fn tower_f4_has_unique_irreducible_quadratic() {
        // Oracle: enumerate all monic quadratics over F_2 and root-check.
        let mut irreducible = Vec::new();
        for c0 in 0..2u64 {
            for c1 in 0..2u64 {
                let has_root = (0..2u64)
                    .any(|x| (x * x + c1 * x + c0) % 2 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
        let t = build_tower(2, 2).unwrap();
        assert_eq!(t.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn tower_f9_modulus_is_first_rootless_quadratic() {
        // Oracle: scan monic quadratics over F_3 in low-to-high lex order; a
        // quadratic is irreducible iff it has no root.
        let mut first = None;
        'outer: for enc in 0..9u64 {
            let c0 = enc % 3;
            let c1 = enc / 3;
            if c0 == 0 {
                continue;
            }
            for x in 0..3u64 {
                if (x * x + c1 * x + c0) % 3 == 0 {
                    continue 'outer;
                }
            }
            first = Some(vec![c0, c1, 1]);
            break;
        }
        let t = build_tower(3, 2).unwrap();
        assert_eq!(t.modulus(), first.unwrap().as_slice());
        assert_eq!(t.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn build_tower_rejects_bad_inputs() {
        assert_eq!(build_tower(4, 2).unwrap_err(), GfError::NonPrimeP(4));
        assert_eq!(build_tower(2, 0).unwrap_err(), GfError::DegreeZero);
    }

    #[test]
    fn build_tower_is_deterministic() {
        for &(p, m) in &[(2u64, 4usize), (3, 3), (5, 2)] {
            let a = build_tower(p, m).unwrap();
            let b = build_tower(p, m).unwrap();
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.primitive_coeffs(), b.primitive_coeffs());
            assert_eq!(a.frob, b.frob);
        }
    }

    #[test]
    fn frobenius_on_f4_maps_omega_to_omega_plus_one() {
        let t = build_tower(2, 2).unwrap();
        let omega = t.gen();
        let phi = t.frobenius();
        let img = phi.apply(&omega);
        assert_eq!(img, t.from_coeffs(&[1, 1]).unwrap());
        // identity automorphism
        let id = t.automorphism(0).unwrap();
        assert_eq!(id.apply(&omega), omega);
    }

    #[test]
    fn frobenius_power_m_is_identity() {
        for &(p, m) in &[(2u64, 4usize), (3, 2), (5, 2)] {
            let t = build_tower(p, m).unwrap();
            let phi = t.frobenius();
            for a in t.elements() {
                let mut cur = a.clone();
                for _ in 0..m {
                    cur = phi.apply(&cur);
                }
                assert_eq!(cur, a);
            }
        }
    }

    #[test]
    fn norm_on_f4_is_constant_one() {
        let t = build_tower(2, 2).unwrap();
        let sigma = t.frobenius();
        for a in t.nonzero_elements() {
            let n = norm(&sigma, &a).unwrap();
            assert!(n.is_one(), "norm of {a} was {n}");
            // q - 1 = 1: the norm equals a^3
            assert!(a.pow(3).is_one());
        }
    }

    #[test]
    fn norm_on_f9_splits_into_two_values() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let mut counts = std::collections::HashMap::new();
        for a in t.nonzero_elements() {
            let n = norm(&sigma, &a).unwrap();
            assert_eq!(n, a.pow(4), "norm must be a^(1+q)");
            *counts.entry(n.encoding()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 2);
        assert!(counts.values().all(|&c| c == 4));
    }

    #[test]
    fn norm_rejects_zero() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        assert_eq!(norm(&sigma, &t.zero()).unwrap_err(), GfError::ZeroInput);
    }

    #[test]
    fn norm_is_multiplicative_and_galois_invariant() {
        let t = build_tower(3, 3).unwrap();
        let sigma = t.frobenius();
        for a in t.nonzero_elements() {
            assert_eq!(
                norm(&sigma, &sigma.apply(&a)).unwrap(),
                norm(&sigma, &a).unwrap()
            );
            for b in t.nonzero_elements() {
                let lhs = norm(&sigma, &a.mul(&b)).unwrap();
                let rhs = norm(&sigma, &a).unwrap().mul(&norm(&sigma, &b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn conjugacy_class_shapes() {
        // F_4: one class of size 3; F_9: two classes of size 4.
        let t4 = build_tower(2, 2).unwrap();
        let c4 = conjugacy_classes(&t4.frobenius());
        assert_eq!(c4.len(), 1);
        assert_eq!(c4[0].members.len(), 3);

        let t9 = build_tower(3, 2).unwrap();
        let c9 = conjugacy_classes(&t9.frobenius());
        assert_eq!(c9.len(), 2);
        assert!(c9.iter().all(|c| c.members.len() == 4));

        // partition property over a few towers and all automorphism powers
        for &(p, m) in &[(2u64, 4usize), (3, 2), (5, 2), (2, 6)] {
            let t = build_tower(p, m).unwrap();
            for s in 0..m {
                let psi = t.automorphism(s).unwrap();
                let classes = conjugacy_classes(&psi);
                let fixed = p.pow(psi.fixed_degree() as u32);
                assert_eq!(classes.len() as u64, fixed - 1);
                let total: usize = classes.iter().map(|c| c.members.len()).sum();
                assert_eq!(total as u64, t.size() - 1);
                for c in &classes {
                    assert_eq!(
                        c.members.len() as u64,
                        (t.size() - 1) / (fixed - 1)
                    );
                }
            }
        }
    }

    #[test]
    fn hilbert90_witness_on_f9() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        for a in t.nonzero_elements() {
            for b in t.nonzero_elements() {
                let same_norm = norm(&sigma, &a).unwrap() == norm(&sigma, &b).unwrap();
                let w = hilbert90_witness(&sigma, &a, &b).unwrap();
                assert_eq!(w.is_some(), same_norm);
                if let Some(c) = w {
                    assert_eq!(a.mul(&c), b.mul(&sigma.apply(&c)));
                }
            }
        }
        // a = b always admits c = 1
        let a = t.gen();
        let c = hilbert90_witness(&sigma, &a, &a).unwrap().unwrap();
        assert!(c.is_one());
    }

    #[test]
    fn automorphism_is_fq_linear() {
        let t = build_tower(5, 2).unwrap();
        let psi = t.frobenius();
        for a in t.elements().take(10) {
            for b in t.elements().take(10) {
                for lambda in 0..5 {
                    let lhs = psi.apply(&a.add(&b.scale(lambda)));
                    let rhs = psi.apply(&a).add(&psi.apply(&b).scale(lambda));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn subfield_basis_edges() {
        let t = build_tower(2, 4).unwrap();
        // g = m: theta powers span the field, relative basis is {1}
        let whole = subfield_basis(&t, 4).unwrap();
        assert_eq!(whole.theta_powers.len(), 4);
        assert_eq!(whole.relative_basis.len(), 1);
        assert!(whole.relative_basis[0].is_one());
        // g = 1: theta powers = {1}
        let base = subfield_basis(&t, 1).unwrap();
        assert_eq!(base.theta_powers.len(), 1);
        assert!(base.theta_powers[0].is_one());
        assert_eq!(base.relative_basis.len(), 4);

        assert!(subfield_basis(&t, 3).is_err());
    }

    #[test]
    fn subfield_f16_over_f4_is_fixed_by_phi_squared() {
        let t = build_tower(2, 4).unwrap();
        let sb = subfield_basis(&t, 2).unwrap();
        let phi2 = t.frobenius().power(2);
        for theta in &sb.theta_powers {
            assert_eq!(phi2.apply(theta), *theta, "x^4 = x must hold on F_4");
        }
        // relative basis has full F_4-rank
        assert_eq!(sb.relative_basis.len(), 2);
    }

    #[test]
    fn inverse_and_pow() {
        let t = build_tower(3, 2).unwrap();
        assert!(t.zero().inv().is_none());
        for a in t.nonzero_elements() {
            let ai = a.inv().unwrap();
            assert!(a.mul(&ai).is_one());
        }
    }

    #[test]
    fn element_encoding_round_trip() {
        let t = build_tower(5, 2).unwrap();
        for e in 0..t.size() {
            assert_eq!(t.from_encoding(e).encoding(), e);
        }
    }
}
