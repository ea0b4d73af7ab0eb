//! Linearized Reed-Solomon codes: construction, encoding, exhaustive
//! codeword enumeration, minimum-distance verification, and the brute-force
//! list-size oracle.
//!
//! Everything here is enumeration-based and intended for desk-scale
//! parameters; every enumeration is guarded by an explicit cap and exceeding
//! it is a clean error, never silent truncation.

use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

use crate::gf::{Automorphism, FElem, FieldTower, GfError};
use crate::skew::{make_eval_pair, multi_eval, EvalPair, SkewError, SkewPoly};
use crate::sumrank::{sum_rank_dist, sum_rank_weight, BlockVector, SumRankError};

/// Default enumeration cap shared by the exhaustive kernels.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LrsError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Skew(#[from] SkewError),
    #[error(transparent)]
    SumRank(#[from] SumRankError),
    #[error("message degree {deg} not below dimension k = {k}")]
    MessageDegreeTooLarge { deg: usize, k: usize },
    #[error("enumeration needs {needed} items, above the cap {cap}")]
    EnumerationTooLarge { needed: u128, cap: u64 },
    #[error("radius {tau} out of range 0..={n}")]
    InvalidRadius { tau: usize, n: usize },
    #[error("invalid code parameters: {0:?}")]
    InvalidParams(Vec<String>),
}

// ---------------------------------------------------------------------------
// Parameters and validation
// ---------------------------------------------------------------------------

/// Raw, unvalidated code parameters, as read from a code-spec file.
#[derive(Clone, Debug)]
pub struct CodeParams {
    pub tower: Arc<FieldTower>,
    pub s: usize,
    pub ell: usize,
    pub eta: usize,
    pub k: usize,
    pub a: Vec<FElem>,
    pub beta: Vec<FElem>,
}

/// One validated condition.
#[derive(Clone, Debug)]
pub struct CertCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Structured pass/fail record for every code invariant; failures are data,
/// not errors.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub checks: Vec<CertCheck>,
}

impl Certificate {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

/// Re-checks every code and evaluation-pair invariant on raw parameters.
pub fn validate_params(params: &CodeParams) -> Certificate {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CertCheck {
            name: name.to_string(),
            passed,
            detail,
        });
    };
    let q = params.tower.p();
    let m = params.tower.degree();
    let n = params.ell * params.eta;

    push(
        "ell < q",
        (params.ell as u64) < q,
        format!("ell = {}, q = {}", params.ell, q),
    );
    push(
        "eta <= m",
        params.eta <= m,
        format!("eta = {}, m = {}", params.eta, m),
    );
    push(
        "gcd(s, m) = 1",
        params.s.gcd(&m) == 1,
        format!("s = {}, m = {}", params.s, m),
    );
    push("s < m", params.s < m, format!("s = {}, m = {}", params.s, m));
    push(
        "1 <= k <= n",
        params.k >= 1 && params.k <= n,
        format!("k = {}, n = {}", params.k, n),
    );
    push(
        "a has ell entries",
        params.a.len() == params.ell,
        format!("{} entries", params.a.len()),
    );
    push(
        "beta has eta entries",
        params.beta.len() == params.eta,
        format!("{} entries", params.beta.len()),
    );
    push(
        "a entries nonzero",
        params.a.iter().all(|x| !x.is_zero()),
        String::new(),
    );

    if params.s < m {
        if let Ok(sigma) = params.tower.automorphism(params.s) {
            let mut norms = Vec::new();
            let mut distinct = true;
            for x in &params.a {
                if x.is_zero() {
                    distinct = false;
                    break;
                }
                let nv = crate::gf::norm(&sigma, x).expect("nonzero").encoding();
                if norms.contains(&nv) {
                    distinct = false;
                    break;
                }
                norms.push(nv);
            }
            push(
                "a pairwise non-conjugate",
                distinct,
                format!("{} distinct norms", norms.len()),
            );
        }
    }
    let beta_rank = crate::sumrank::rank_over_subfield(&params.beta, 1).unwrap_or(0);
    push(
        "beta linearly independent over F_q",
        beta_rank == params.beta.len(),
        format!("rank {} of {}", beta_rank, params.beta.len()),
    );

    Certificate { checks }
}

// ---------------------------------------------------------------------------
// The code
// ---------------------------------------------------------------------------

/// A linearized Reed-Solomon code: the image of all skew polynomials of
/// degree below `k` under multi-point evaluation over a certified pair. The
/// code automorphism must generate the Galois group (fixed field `F_q`).
#[derive(Clone, Debug)]
pub struct LrsCode {
    pair: EvalPair,
    k: usize,
}

impl LrsCode {
    pub fn new(pair: EvalPair, k: usize) -> Result<Self, LrsError> {
        let mut failures = Vec::new();
        let n = pair.n();
        if k < 1 || k > n {
            failures.push(format!("dimension k = {k} outside 1..={n}"));
        }
        if !pair.sigma().generates_galois_group() {
            failures.push(format!(
                "sigma = phi^{} has fixed degree {} > 1",
                pair.sigma().s(),
                pair.sigma().fixed_degree()
            ));
        }
        let q = pair.tower().p();
        if pair.ell() as u64 >= q {
            failures.push(format!("ell = {} not below q = {}", pair.ell(), q));
        }
        if pair.eta() > pair.tower().degree() {
            failures.push(format!(
                "eta = {} above m = {}",
                pair.eta(),
                pair.tower().degree()
            ));
        }
        if !failures.is_empty() {
            return Err(LrsError::InvalidParams(failures));
        }
        Ok(LrsCode { pair, k })
    }

    /// Builds the code from raw parameters, returning the validation
    /// certificate alongside.
    pub fn from_params(params: &CodeParams) -> Result<(Self, Certificate), LrsError> {
        let cert = validate_params(params);
        if !cert.all_passed() {
            return Err(LrsError::InvalidParams(cert.failures()));
        }
        let sigma = params.tower.automorphism(params.s)?;
        let pair = EvalPair::new(&sigma, params.a.clone(), params.beta.clone())?;
        let code = LrsCode::new(pair, params.k)?;
        Ok((code, cert))
    }

    /// Code with the deterministic default evaluation pair.
    pub fn with_default_pair(
        tower: &Arc<FieldTower>,
        s: usize,
        ell: usize,
        eta: usize,
        k: usize,
    ) -> Result<Self, LrsError> {
        let sigma = tower.automorphism(s)?;
        let pair = make_eval_pair(tower, &sigma, ell, eta)?;
        LrsCode::new(pair, k)
    }

    pub fn pair(&self) -> &EvalPair {
        &self.pair
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.pair.tower()
    }
    pub fn sigma(&self) -> &Automorphism {
        self.pair.sigma()
    }
    pub fn q(&self) -> u64 {
        self.tower().p()
    }
    pub fn m(&self) -> usize {
        self.tower().degree()
    }
    pub fn n(&self) -> usize {
        self.pair.n()
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn ell(&self) -> usize {
        self.pair.ell()
    }
    pub fn eta(&self) -> usize {
        self.pair.eta()
    }

    /// The minimum distance of an MSRD code, `n - k + 1`.
    pub fn designed_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// Number of codewords `q^{mk}`.
    pub fn size(&self) -> u128 {
        (self.q() as u128).pow((self.m() * self.k) as u32)
    }

    /// Evaluation encoding of a message polynomial of degree below `k`.
    pub fn encode(&self, f: &SkewPoly) -> Result<BlockVector, LrsError> {
        if let Some(d) = f.deg() {
            if d >= self.k {
                return Err(LrsError::MessageDegreeTooLarge { deg: d, k: self.k });
            }
        }
        Ok(multi_eval(f, &self.pair)?)
    }

    /// All message polynomials of degree below `k` in lexicographic
    /// coefficient order (constant coefficient compared first).
    pub fn messages(&self, cap: u64) -> Result<MessageIter, LrsError> {
        let total = checked_power(self.q() as u128, self.m() * self.k, cap)?;
        Ok(MessageIter {
            tower: Arc::clone(self.tower()),
            sigma: self.sigma().clone(),
            len: self.k,
            total,
            next: 0,
        })
    }

    /// Smallest sum-rank weight over all nonzero codewords. For an MSRD code
    /// this must equal `n - k + 1`.
    pub fn min_distance_exhaustive(&self, cap: u64) -> Result<usize, LrsError> {
        let mut best = usize::MAX;
        for f in self.messages(cap)? {
            if f.is_zero() {
                continue;
            }
            let w = sum_rank_weight(&self.encode(&f)?, 1)?;
            best = best.min(w);
        }
        Ok(best)
    }

    /// All codewords, indexed consistently with [`LrsCode::messages`].
    fn all_codewords(&self, cap: u64) -> Result<Vec<BlockVector>, LrsError> {
        self.messages(cap)?
            .map(|f| self.encode(&f))
            .collect()
    }

    /// Brute-force tau-list size: the maximum number of codewords in any
    /// sum-rank ball of radius `tau`, maximized over the centers given by the
    /// strategy, with the first maximum in enumeration order winning.
    pub fn list_size_oracle(
        &self,
        tau: usize,
        strategy: OracleStrategy,
        cap: u64,
    ) -> Result<ListOracleResult, LrsError> {
        let n = self.n();
        if tau > n {
            return Err(LrsError::InvalidRadius { tau, n });
        }
        let codewords = self.all_codewords(cap)?;
        let (label, exact) = match &strategy {
            OracleStrategy::All => ("all", true),
            OracleStrategy::Cosets => ("cosets", true),
            OracleStrategy::Given(_) => ("given", false),
        };

        let mut best_count = 0u64;
        let mut best_center: Option<BlockVector> = None;
        let mut consider = |center: BlockVector| -> Result<(), LrsError> {
            let mut count = 0u64;
            for c in &codewords {
                if sum_rank_dist(c, &center)? <= tau {
                    count += 1;
                }
            }
            if count > best_count {
                best_count = count;
                best_center = Some(center);
            }
            Ok(())
        };

        match strategy {
            OracleStrategy::All => {
                let total = checked_power(self.q() as u128, self.m() * n, cap)?;
                let qm = self.tower().size();
                for idx in 0..total {
                    let mut e = idx;
                    // entry 0 varies slowest: lexicographic center order
                    let mut entries = vec![self.tower().zero(); n];
                    for pos in (0..n).rev() {
                        entries[pos] = self.tower().from_encoding((e % qm as u128) as u64);
                        e /= qm as u128;
                    }
                    let center =
                        BlockVector::new(Arc::clone(self.tower()), self.ell(), self.eta(), entries)?;
                    consider(center)?;
                }
            }
            OracleStrategy::Cosets => {
                // The list size is constant on cosets of the code, and the
                // evaluation bijection makes the polynomials supported on
                // degrees k..n-1 a transversal of the code in F_{q^m}^n.
                let reps = checked_power(self.q() as u128, self.m() * (n - self.k), cap)?;
                let qm = self.tower().size();
                for idx in 0..reps {
                    let mut e = idx;
                    let mut coeffs = vec![self.tower().zero(); n];
                    for pos in (self.k..n).rev() {
                        coeffs[pos] = self.tower().from_encoding((e % qm as u128) as u64);
                        e /= qm as u128;
                    }
                    let f = SkewPoly::from_coeffs(self.sigma(), coeffs);
                    let center = multi_eval(&f, &self.pair)?;
                    consider(center)?;
                }
            }
            OracleStrategy::Given(centers) => {
                for center in centers {
                    consider(center)?;
                }
            }
        }

        let center = best_center.expect("at least one center was considered");
        // second pass: collect the messages realizing the maximum
        let mut messages = Vec::new();
        for (f, c) in self.messages(cap)?.zip(&codewords) {
            if sum_rank_dist(c, &center)? <= tau {
                messages.push(f);
            }
        }
        debug_assert_eq!(messages.len() as u64, best_count);
        Ok(ListOracleResult {
            radius: tau,
            strategy: label.to_string(),
            exact,
            max_list: best_count,
            argmax_center: center,
            messages,
        })
    }
}

/// Center enumeration strategy for the list-size oracle. `All` sweeps every
/// vector of the ambient space; `Cosets` sweeps one representative per coset
/// of the code (exact, since the distance multiset is coset-invariant);
/// `Given` lower-bounds over user-supplied centers.
#[derive(Clone, Debug)]
pub enum OracleStrategy {
    All,
    Cosets,
    Given(Vec<BlockVector>),
}

/// Result of the list-size oracle; self-certifying via [`ListOracleResult::recheck`].
#[derive(Clone, Debug)]
pub struct ListOracleResult {
    pub radius: usize,
    pub strategy: String,
    /// Whether the sweep was exhaustive (max) or a lower bound over given
    /// centers.
    pub exact: bool,
    pub max_list: u64,
    pub argmax_center: BlockVector,
    /// Message polynomials of the codewords inside the argmax ball.
    pub messages: Vec<SkewPoly>,
}

impl ListOracleResult {
    /// Recomputes every distance from the argmax center and confirms the
    /// reported count.
    pub fn recheck(&self, code: &LrsCode) -> Result<bool, LrsError> {
        let mut count = 0u64;
        for f in &self.messages {
            let c = code.encode(f)?;
            if sum_rank_dist(&c, &self.argmax_center)? > self.radius {
                return Ok(false);
            }
            count += 1;
        }
        Ok(count == self.max_list)
    }
}

/// Iterator over all skew polynomials with `len` coefficient slots, in
/// lexicographic coefficient order (slot 0 compared first).
pub struct MessageIter {
    tower: Arc<FieldTower>,
    sigma: Automorphism,
    len: usize,
    total: u128,
    next: u128,
}

impl Iterator for MessageIter {
    type Item = SkewPoly;

    fn next(&mut self) -> Option<SkewPoly> {
        if self.next >= self.total {
            return None;
        }
        let qm = self.tower.size() as u128;
        let mut e = self.next;
        self.next += 1;
        let mut coeffs = vec![self.tower.zero(); self.len];
        for pos in (0..self.len).rev() {
            coeffs[pos] = self.tower.from_encoding((e % qm) as u64);
            e /= qm;
        }
        Some(SkewPoly::from_coeffs(&self.sigma, coeffs))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

/// `base^exp` if it stays at or below `cap`, else the enumeration error.
pub(crate) fn checked_power(base: u128, exp: usize, cap: u64) -> Result<u128, LrsError> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    if acc > cap as u128 {
        return Err(LrsError::EnumerationTooLarge { needed: acc, cap });
    }
    Ok(acc)
}
