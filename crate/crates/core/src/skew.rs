//! The skew polynomial ring `F_{q^m}[x; sigma]` and generalized operator
//! evaluation.
//!
//! Multiplication follows the rule `x * a = sigma(a) * x`. Evaluation at a
//! point `beta` with evaluator `a` is `f(beta)_a = sum_i f_i sigma^i(beta)
//! N_i(a)` with `N_i(a) = prod_{j<i} sigma^j(a)`, computed by direct summation
//! with incrementally maintained `sigma^i(beta)` and `N_i(a)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{conjugacy_classes, norm, Automorphism, FElem, FieldTower, GfError};
use crate::sumrank::{rank_over_subfield, BlockVector, SumRankError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SkewError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    SumRank(#[from] SumRankError),
    #[error("polynomials live in different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("evaluation requires a nonzero evaluator")]
    ZeroEvaluator,
    #[error("degree {deg} not below the evaluation-map domain bound {n}")]
    DegreeTooLarge { deg: usize, n: usize },
    #[error("{ell} blocks requested but only {available} conjugacy classes exist")]
    TooManyBlocks { ell: usize, available: usize },
    #[error("block length {eta} exceeds the independence bound {max}")]
    BlockTooLong { eta: usize, max: usize },
    #[error("evaluator entries must be nonzero")]
    ZeroBlockEvaluator,
    #[error("evaluator entries are not pairwise non-conjugate")]
    ConjugateEvaluators,
    #[error("basis points are not linearly independent over the fixed field")]
    DependentBasis,
}

// ---------------------------------------------------------------------------
// SkewPoly
// ---------------------------------------------------------------------------

/// A skew polynomial: degree-indexed coefficients over `F_{q^m}` together
/// with the twisting automorphism. The stored coefficient sequence never ends
/// in a zero; the zero polynomial is the empty sequence (degree "minus
/// infinity", represented as `None`).
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    sigma: Automorphism,
    coeffs: Vec<FElem>,
}

impl SkewPoly {
    pub fn zero(sigma: &Automorphism) -> Self {
        SkewPoly {
            sigma: sigma.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(sigma: &Automorphism) -> Self {
        SkewPoly {
            sigma: sigma.clone(),
            coeffs: vec![sigma.tower().one()],
        }
    }

    pub fn constant(sigma: &Automorphism, c: FElem) -> Self {
        Self::from_coeffs(sigma, vec![c])
    }

    /// `c * x^i`.
    pub fn monomial(sigma: &Automorphism, i: usize, c: FElem) -> Self {
        let mut coeffs: Vec<FElem> = (0..i).map(|_| sigma.tower().zero()).collect();
        coeffs.push(c);
        Self::from_coeffs(sigma, coeffs)
    }

    /// Normalizing constructor: trailing zero coefficients are dropped.
    pub fn from_coeffs(sigma: &Automorphism, mut coeffs: Vec<FElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly {
            sigma: sigma.clone(),
            coeffs,
        }
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        self.sigma.tower()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> FElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.tower().zero())
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn assert_same_ring(&self, other: &SkewPoly) {
        assert!(
            self.sigma == other.sigma,
            "ring mismatch: {:?} vs {:?}",
            self.sigma,
            other.sigma
        );
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_ring(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).add(&other.coeff(i)))
            .collect();
        SkewPoly::from_coeffs(&self.sigma, coeffs)
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_ring(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| self.coeff(i).sub(&other.coeff(i)))
            .collect();
        SkewPoly::from_coeffs(&self.sigma, coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        SkewPoly {
            sigma: self.sigma.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Product under `x * a = sigma(a) * x`: `(fg)_k = sum_{i+j=k} f_i
    /// sigma^i(g_j)`.
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(&self.sigma);
        }
        let tower = self.tower();
        let df = self.coeffs.len() - 1;
        let dg = other.coeffs.len() - 1;
        let mut out: Vec<FElem> = (0..=df + dg).map(|_| tower.zero()).collect();
        for (i, fi) in self.coeffs.iter().enumerate() {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in other.coeffs.iter().enumerate() {
                if gj.is_zero() {
                    continue;
                }
                let term = fi.mul(&self.sigma.apply_power(i, gj));
                out[i + j] = out[i + j].add(&term);
            }
        }
        SkewPoly::from_coeffs(&self.sigma, out)
    }

    /// Deterministic lexicographic key: coefficient encodings, low to high.
    pub fn coeff_encodings(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.encoding()).collect()
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly(s={}, {:?})", self.sigma.s(), self.coeff_encodings())
    }
}

// ---------------------------------------------------------------------------
// Operator evaluation
// ---------------------------------------------------------------------------

/// Generalized operator evaluation `f(beta)_a`. Cost is one automorphism
/// application and two multiplications per coefficient.
pub fn op_eval(f: &SkewPoly, beta: &FElem, a: &FElem) -> Result<FElem, SkewError> {
    if a.is_zero() {
        return Err(SkewError::ZeroEvaluator);
    }
    let sigma = &f.sigma;
    let mut acc = f.tower().zero();
    let mut sig_beta = beta.clone(); // sigma^i(beta)
    let mut sig_a = a.clone(); // sigma^i(a)
    let mut n_i = f.tower().one(); // N_i(a)
    for (i, fi) in f.coeffs.iter().enumerate() {
        if i > 0 {
            n_i = n_i.mul(&sig_a);
            sig_a = sigma.apply(&sig_a);
            sig_beta = sigma.apply(&sig_beta);
        }
        if !fi.is_zero() {
            acc = acc.add(&fi.mul(&sig_beta).mul(&n_i));
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Evaluation pairs and multi-point evaluation
// ---------------------------------------------------------------------------

/// A certified evaluation pair `(a, beta)` with respect to an automorphism:
/// the block evaluators `a` are nonzero and pairwise non-conjugate, and the
/// basis points `beta` are linearly independent over the fixed field.
#[derive(Clone, Debug)]
pub struct EvalPair {
    sigma: Automorphism,
    a: Vec<FElem>,
    beta: Vec<FElem>,
}

impl EvalPair {
    pub fn new(
        sigma: &Automorphism,
        a: Vec<FElem>,
        beta: Vec<FElem>,
    ) -> Result<Self, SkewError> {
        if a.iter().any(|x| x.is_zero()) {
            return Err(SkewError::ZeroBlockEvaluator);
        }
        let mut norms = Vec::with_capacity(a.len());
        for x in &a {
            let n = norm(&sigma.clone(), x)?.encoding();
            if norms.contains(&n) {
                return Err(SkewError::ConjugateEvaluators);
            }
            norms.push(n);
        }
        let fixed = sigma.fixed_degree();
        if rank_over_subfield(&beta, fixed)? != beta.len() {
            return Err(SkewError::DependentBasis);
        }
        Ok(EvalPair {
            sigma: sigma.clone(),
            a,
            beta,
        })
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }
    pub fn tower(&self) -> &Arc<FieldTower> {
        self.sigma.tower()
    }
    pub fn evaluators(&self) -> &[FElem] {
        &self.a
    }
    pub fn basis_points(&self) -> &[FElem] {
        &self.beta
    }
    pub fn ell(&self) -> usize {
        self.a.len()
    }
    pub fn eta(&self) -> usize {
        self.beta.len()
    }
    pub fn n(&self) -> usize {
        self.ell() * self.eta()
    }
}

/// Multi-point evaluation over an evaluation pair: blocks ordered by
/// evaluator index, positions within a block by basis-point index. Requires
/// `deg f < n`, the domain on which the map is a bijection.
pub fn multi_eval(f: &SkewPoly, pair: &EvalPair) -> Result<BlockVector, SkewError> {
    if f.sigma != pair.sigma {
        return Err(SkewError::RingMismatch(
            format!("{:?}", f.sigma),
            format!("{:?}", pair.sigma),
        ));
    }
    let n = pair.n();
    if let Some(d) = f.deg() {
        if d >= n {
            return Err(SkewError::DegreeTooLarge { deg: d, n });
        }
    }
    let mut out = Vec::with_capacity(n);
    for a in &pair.a {
        for beta in &pair.beta {
            out.push(op_eval(f, beta, a)?);
        }
    }
    Ok(BlockVector::new(Arc::clone(pair.tower()), pair.ell(), pair.eta(), out)?)
}

/// Deterministic default evaluation pair: the i-th conjugacy-class
/// representative (classes ordered by smallest member encoding) as the i-th
/// evaluator, and the polynomial basis prefix `1, z, ..., z^(eta-1)` as basis
/// points.
pub fn make_eval_pair(
    tower: &Arc<FieldTower>,
    sigma: &Automorphism,
    ell: usize,
    eta: usize,
) -> Result<EvalPair, SkewError> {
    let fixed = sigma.fixed_degree();
    let max_eta = tower.degree() / fixed;
    if eta > max_eta {
        return Err(SkewError::BlockTooLong { eta, max: max_eta });
    }
    let classes = conjugacy_classes(sigma);
    if ell > classes.len() {
        return Err(SkewError::TooManyBlocks {
            ell,
            available: classes.len(),
        });
    }
    let a: Vec<FElem> = classes[..ell]
        .iter()
        .map(|c| c.representative().clone())
        .collect();
    let beta: Vec<FElem> = if tower.degree() == 1 {
        vec![tower.one()]
    } else {
        (0..eta)
            .map(|j| {
                let mut coeffs = vec![0u64; tower.degree()];
                coeffs[j] = 1;
                tower.from_coeffs(&coeffs).expect("length m")
            })
            .collect()
    };
    EvalPair::new(sigma, a, beta)
}

/// The n-by-n matrix of the multi-point evaluation map on coefficients:
/// row `(b, j)`, column `i` holds `sigma^i(beta_j) * N_i(a_b)`.
pub fn evaluation_matrix(pair: &EvalPair) -> Vec<Vec<FElem>> {
    let n = pair.n();
    let sigma = &pair.sigma;
    let mut rows = Vec::with_capacity(n);
    for a in &pair.a {
        // N_i(a) for i = 0..n
        let mut n_vals = Vec::with_capacity(n);
        let mut n_i = pair.tower().one();
        let mut sig_a = a.clone();
        for i in 0..n {
            if i > 0 {
                n_i = n_i.mul(&sig_a);
                sig_a = sigma.apply(&sig_a);
            }
            n_vals.push(n_i.clone());
        }
        for beta in &pair.beta {
            let mut row = Vec::with_capacity(n);
            let mut sig_beta = beta.clone();
            for (i, nv) in n_vals.iter().enumerate() {
                if i > 0 {
                    sig_beta = sigma.apply(&sig_beta);
                }
                row.push(sig_beta.mul(nv));
            }
            rows.push(row);
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_tower;
    use crate::sumrank::sum_rank_weight;
    use std::collections::HashSet;

    fn f4_setup() -> (Arc<FieldTower>, Automorphism) {
        let t = build_tower(2, 2).unwrap();
        let sigma = t.frobenius();
        (t, sigma)
    }

    #[test]
    fn addition_examples() {
        let (t, sigma) = f4_setup();
        let omega = t.gen();
        let f = SkewPoly::from_coeffs(&sigma, vec![omega.clone(), t.one()]); // x + w
        let g = SkewPoly::from_coeffs(&sigma, vec![t.one(), t.one()]); // x + 1
        // characteristic 2: the x terms cancel
        let sum = f.add(&g);
        assert_eq!(sum.deg(), Some(0));
        assert_eq!(sum.coeff(0), omega.add(&t.one()));

        let zero = SkewPoly::zero(&sigma);
        assert_eq!(f.add(&zero), f);
        assert!(f.add(&f.neg()).is_zero());
        assert_eq!(f.add(&f.neg()).deg(), None);
    }

    #[test]
    fn multiplication_twists() {
        let (t, sigma) = f4_setup();
        let omega = t.gen();
        let x = SkewPoly::monomial(&sigma, 1, t.one());
        let w = SkewPoly::constant(&sigma, omega.clone());
        // x * w = sigma(w) * x = (w + 1) x
        let left = x.mul(&w);
        assert_eq!(left.deg(), Some(1));
        assert_eq!(left.coeff(1), omega.add(&t.one()));
        // and w * x = w x differs
        let right = w.mul(&x);
        assert_eq!(right.coeff(1), omega);
        assert_ne!(left, right);

        let one = SkewPoly::one(&sigma);
        let f = SkewPoly::from_coeffs(&sigma, vec![omega.clone(), t.one(), omega]);
        assert_eq!(f.mul(&one), f);
        assert_eq!(one.mul(&f), f);
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 16) % t.size()
        };
        let mut rand_poly = |max_deg: usize, next: &mut dyn FnMut() -> u64| {
            let d = (next() as usize) % (max_deg + 1);
            let coeffs: Vec<FElem> = (0..=d).map(|_| t.from_encoding(next())).collect();
            SkewPoly::from_coeffs(&sigma, coeffs)
        };
        for _ in 0..100 {
            let f = rand_poly(4, &mut next);
            let g = rand_poly(4, &mut next);
            let h = rand_poly(4, &mut next);
            assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)), "associativity");
            assert_eq!(
                f.mul(&g.add(&h)),
                f.mul(&g).add(&f.mul(&h)),
                "left distributivity"
            );
            assert_eq!(
                f.add(&g).mul(&h),
                f.mul(&h).add(&g.mul(&h)),
                "right distributivity"
            );
            // no zero divisors: degrees add
            if !f.is_zero() && !g.is_zero() {
                assert_eq!(
                    f.mul(&g).deg().unwrap(),
                    f.deg().unwrap() + g.deg().unwrap()
                );
            }
        }
    }

    #[test]
    fn op_eval_examples() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let beta = t.gen();
        let a = t.from_encoding(4);
        // constant: f_0 * beta
        let c = t.from_encoding(5);
        let f0 = SkewPoly::constant(&sigma, c.clone());
        assert_eq!(op_eval(&f0, &beta, &a).unwrap(), c.mul(&beta));
        // f = x: sigma(beta) * a
        let x = SkewPoly::monomial(&sigma, 1, t.one());
        assert_eq!(op_eval(&x, &beta, &a).unwrap(), sigma.apply(&beta).mul(&a));
        // zero evaluator rejected
        assert_eq!(
            op_eval(&x, &beta, &t.zero()).unwrap_err(),
            SkewError::ZeroEvaluator
        );
    }

    #[test]
    fn op_eval_is_fq_linear_in_beta() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let mut state = 99u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 16) % t.size()
        };
        for _ in 0..100 {
            let coeffs: Vec<FElem> = (0..3).map(|_| t.from_encoding(next())).collect();
            let f = SkewPoly::from_coeffs(&sigma, coeffs);
            let a = t.from_encoding(1 + next() % (t.size() - 1));
            let b1 = t.from_encoding(next());
            let b2 = t.from_encoding(next());
            for lambda in 0..3u64 {
                let lhs = op_eval(&f, &b1.add(&b2.scale(lambda)), &a).unwrap();
                let rhs = op_eval(&f, &b1, &a)
                    .unwrap()
                    .add(&op_eval(&f, &b2, &a).unwrap().scale(lambda));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn multi_eval_ordering_and_zero() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let zero = SkewPoly::zero(&sigma);
        let v = multi_eval(&zero, &pair).unwrap();
        assert!(v.entries().iter().all(|e| e.is_zero()));
        // block 0 uses evaluator a_1, block 1 uses a_2
        let f = SkewPoly::one(&sigma);
        let w = multi_eval(&f, &pair).unwrap();
        for b in 0..2 {
            for (j, beta) in pair.basis_points().iter().enumerate() {
                assert_eq!(
                    w.block(b)[j],
                    op_eval(&f, beta, &pair.evaluators()[b]).unwrap()
                );
            }
        }
    }

    #[test]
    fn multi_eval_rejects_large_degree() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let f = SkewPoly::monomial(&sigma, 4, t.one());
        assert!(matches!(
            multi_eval(&f, &pair),
            Err(SkewError::DegreeTooLarge { deg: 4, n: 4 })
        ));
    }

    #[test]
    fn evaluation_is_injective_below_n() {
        // exhaustive bijectivity check at q=3, m=eta=1, ell=2, n=2
        let t = build_tower(3, 1).unwrap();
        let sigma = t.automorphism(0).unwrap();
        let pair = make_eval_pair(&t, &sigma, 2, 1).unwrap();
        let n = pair.n();
        let q = t.size();
        let mut images = HashSet::new();
        let mut count = 0u64;
        for enc in 0..q.pow(n as u32) {
            let mut e = enc;
            let coeffs: Vec<FElem> = (0..n)
                .map(|_| {
                    let c = t.from_encoding(e % q);
                    e /= q;
                    c
                })
                .collect();
            let f = SkewPoly::from_coeffs(&sigma, coeffs);
            let img = multi_eval(&f, &pair).unwrap();
            images.insert(img.encodings());
            count += 1;
        }
        assert_eq!(images.len() as u64, count, "the map must be injective");
        assert_eq!(count, q.pow((t.degree() * n) as u32));
    }

    #[test]
    fn weight_of_image_bounded_by_degree() {
        // exhaustive at q=3, ell=2, m=eta=2, n=4, deg <= 2
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let n = pair.n();
        let qm = t.size();
        for enc in 0..qm.pow(3) {
            let mut e = enc;
            let coeffs: Vec<FElem> = (0..3)
                .map(|_| {
                    let c = t.from_encoding(e % qm);
                    e /= qm;
                    c
                })
                .collect();
            let f = SkewPoly::from_coeffs(&sigma, coeffs);
            if f.is_zero() {
                continue;
            }
            let w = sum_rank_weight(&multi_eval(&f, &pair).unwrap(), 1).unwrap();
            assert!(
                w >= n - f.deg().unwrap(),
                "weight {w} below n - deg = {}",
                n - f.deg().unwrap()
            );
        }
    }

    #[test]
    fn evaluation_is_additive() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let mut state = 11u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 16) % t.size()
        };
        for _ in 0..50 {
            let f = SkewPoly::from_coeffs(
                &sigma,
                (0..3).map(|_| t.from_encoding(next())).collect(),
            );
            let g = SkewPoly::from_coeffs(
                &sigma,
                (0..3).map(|_| t.from_encoding(next())).collect(),
            );
            let lhs = multi_eval(&f.add(&g), &pair).unwrap();
            let rhs = multi_eval(&f, &pair)
                .unwrap()
                .add(&multi_eval(&g, &pair).unwrap())
                .unwrap();
            assert_eq!(lhs.encodings(), rhs.encodings());
        }
    }

    #[test]
    fn default_pair_is_certified() {
        // q=3, m=2, ell=2: the two evaluators have distinct norms in F_3*
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let n0 = norm(&sigma, &pair.evaluators()[0]).unwrap();
        let n1 = norm(&sigma, &pair.evaluators()[1]).unwrap();
        assert_ne!(n0, n1);
        // smallest representative is 1
        assert!(pair.evaluators()[0].is_one());

        // ell = 1, eta = m: full polynomial basis
        let p1 = make_eval_pair(&t, &sigma, 1, 2).unwrap();
        assert_eq!(p1.basis_points().len(), 2);
        assert!(p1.basis_points()[0].is_one());

        // ell = q is too many blocks
        assert!(matches!(
            make_eval_pair(&t, &sigma, 3, 2),
            Err(SkewError::TooManyBlocks { ell: 3, available: 2 })
        ));
        // eta > m is too long
        assert!(matches!(
            make_eval_pair(&t, &sigma, 2, 3),
            Err(SkewError::BlockTooLong { eta: 3, max: 2 })
        ));
    }

    #[test]
    fn eval_pair_rejects_bad_inputs() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        // conjugate evaluators: a and sigma(a) * a / a ... use a and a itself
        let a = t.gen();
        assert!(matches!(
            EvalPair::new(&sigma, vec![a.clone(), a.clone()], vec![t.one()]),
            Err(SkewError::ConjugateEvaluators)
        ));
        assert!(matches!(
            EvalPair::new(&sigma, vec![t.zero()], vec![t.one()]),
            Err(SkewError::ZeroBlockEvaluator)
        ));
        // repeated basis point is dependent
        assert!(matches!(
            EvalPair::new(&sigma, vec![t.one()], vec![t.gen(), t.gen()]),
            Err(SkewError::DependentBasis)
        ));
    }

    #[test]
    fn evaluation_matrix_matches_multi_eval() {
        let t = build_tower(3, 2).unwrap();
        let sigma = t.frobenius();
        let pair = make_eval_pair(&t, &sigma, 2, 2).unwrap();
        let mat = evaluation_matrix(&pair);
        let mut state = 5u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 16) % t.size()
        };
        for _ in 0..20 {
            let coeffs: Vec<FElem> = (0..4).map(|_| t.from_encoding(next())).collect();
            let f = SkewPoly::from_coeffs(&sigma, coeffs.clone());
            let direct = multi_eval(&f, &pair).unwrap();
            let via_matrix = crate::linalg::mat_vec(&mat, &coeffs);
            assert_eq!(direct.entries(), via_matrix.as_slice());
        }
    }
}
