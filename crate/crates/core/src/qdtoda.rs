//! The quotient-difference (LR) eigenvalue iteration viewed as discrete
//! Toda-molecule dynamics: Householder tridiagonalization, the LR step in
//! the (I, V, r) variables, the Hankel tau-function solution, and
//! characteristic-polynomial utilities used as oracles.

use crate::error::{Error, Result};
use crate::scalar::{precision_digits, Scalar};

/// A symmetric tridiagonal matrix stored as its diagonal a₁..a_N and
/// offdiagonal b₁..b_{N−1}.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalMatrix<S> {
    pub diag: Vec<S>,
    pub offdiag: Vec<S>,
}

impl<S: Scalar> TridiagonalMatrix<S> {
    pub fn new(diag: Vec<S>, offdiag: Vec<S>) -> Result<Self> {
        if diag.is_empty() || offdiag.len() + 1 != diag.len() {
            return Err(Error::Invalid(
                "tridiagonal matrix needs N >= 1 diagonal and N-1 offdiagonal entries".into(),
            ));
        }
        Ok(TridiagonalMatrix { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let n = self.n();
        let mut a = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            a[i][i] = self.diag[i].clone();
            if i + 1 < n {
                a[i][i + 1] = self.offdiag[i].clone();
                a[i + 1][i] = self.offdiag[i].clone();
            }
        }
        a
    }
}

/// Discrete Toda-molecule state: canonical variables I₁..I_N and
/// V₁..V_{N−1} (V_N ≡ 0) plus the constants of motion r₁..r_{N−1}.
#[derive(Clone, Debug)]
pub struct TodaState<S> {
    pub i: Vec<S>,
    pub v: Vec<S>,
    pub r: Vec<S>,
    pub step: usize,
}

impl<S: Scalar> TodaState<S> {
    pub fn n(&self) -> usize {
        self.i.len()
    }

    /// Reassemble A(ℓ) = L(ℓ)R(ℓ): tridiagonal with diagonal
    /// I_n + r_{n−1}V_{n−1}, superdiagonal r_n, subdiagonal V_nI_n.
    pub fn assemble(&self) -> Vec<Vec<S>> {
        let n = self.n();
        let mut a = vec![vec![S::zero(); n]; n];
        for k in 0..n {
            a[k][k] = self.i[k].clone()
                + if k > 0 {
                    self.r[k - 1].clone() * self.v[k - 1].clone()
                } else {
                    S::zero()
                };
            if k + 1 < n {
                a[k][k + 1] = self.r[k].clone();
                a[k + 1][k] = self.v[k].clone() * self.i[k].clone();
            }
        }
        a
    }

    /// tr A(ℓ) = ΣI_n + Σr_nV_n.
    pub fn trace(&self) -> S {
        let mut t = S::zero();
        for x in &self.i {
            t = t + x.clone();
        }
        for (rn, vn) in self.r.iter().zip(&self.v) {
            t = t + rn.clone() * vn.clone();
        }
        t
    }

    /// The largest off-diagonal magnitude max_n |r_nV_n|, the quantity
    /// driven to zero by the iteration.
    pub fn residual(&self) -> f64 {
        self.r
            .iter()
            .zip(&self.v)
            .map(|(rn, vn)| (rn.clone() * vn.clone()).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Householder tridiagonalization of a symmetric matrix. The result is
/// orthogonally similar to the input; offdiagonal signs are a convention.
pub fn householder_tridiagonalize<S: Scalar>(a: &[Vec<S>]) -> Result<TridiagonalMatrix<S>> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("matrix must be square and nonempty".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if a[i][j] != a[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut m: Vec<Vec<S>> = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        // reflect column k below the subdiagonal onto ±|x| e₁
        let mut norm2 = S::zero();
        for i in k + 1..n {
            norm2 = norm2 + m[i][k].clone() * m[i][k].clone();
        }
        let tail2 = norm2.clone() - m[k + 1][k].clone() * m[k + 1][k].clone();
        if tail2.is_zero() {
            continue;
        }
        let norm = norm2.sqrt_opt().ok_or(Error::SqrtUnavailable)?;
        let alpha = if m[k + 1][k].to_f64() > 0.0 {
            -norm
        } else {
            norm
        };
        let mut v = vec![S::zero(); n];
        v[k + 1] = m[k + 1][k].clone() - alpha.clone();
        for i in k + 2..n {
            v[i] = m[i][k].clone();
        }
        let mut vtv = S::zero();
        for x in &v {
            vtv = vtv + x.clone() * x.clone();
        }
        if vtv.is_zero() {
            continue;
        }
        // m <- P m P with P = I − 2vvᵀ/vᵀv, exploiting symmetry:
        // w = 2 m v / vᵀv, then m -= v wᵀ + w vᵀ − (2 vᵀw / vᵀv) v vᵀ
        let two = S::from_i64(2);
        let mut w = vec![S::zero(); n];
        for i in 0..n {
            let mut s = S::zero();
            for j in 0..n {
                s = s + m[i][j].clone() * v[j].clone();
            }
            w[i] = two.clone() * s / vtv.clone();
        }
        let mut vtw = S::zero();
        for i in 0..n {
            vtw = vtw + v[i].clone() * w[i].clone();
        }
        let coeff = vtw / vtv.clone();
        for i in 0..n {
            for j in 0..n {
                m[i][j] = m[i][j].clone()
                    - v[i].clone() * w[j].clone()
                    - w[i].clone() * v[j].clone()
                    + (coeff.clone() + coeff.clone()) * v[i].clone() * v[j].clone();
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i].clone()).collect();
    let offdiag = (0..n - 1).map(|i| m[i + 1][i].clone()).collect();
    TridiagonalMatrix::new(diag, offdiag)
}

/// LR-decompose a tridiagonal matrix into the Toda variables:
/// a₁ = I₁, a_{n+1} = I_{n+1} + r_nV_n, b_n = r_n = V_nI_n.
pub fn lr_init<S: Scalar>(t: &TridiagonalMatrix<S>) -> Result<TodaState<S>> {
    let n = t.n();
    let mut i_vals = Vec::with_capacity(n);
    let mut v_vals = Vec::with_capacity(n.saturating_sub(1));
    let r: Vec<S> = t.offdiag.clone();
    i_vals.push(t.diag[0].clone());
    for k in 0..n - 1 {
        if i_vals[k].is_zero() {
            return Err(Error::ZeroPivot(k + 1));
        }
        let vk = t.offdiag[k].clone() / i_vals[k].clone();
        i_vals.push(t.diag[k + 1].clone() - r[k].clone() * vk.clone());
        v_vals.push(vk);
    }
    Ok(TodaState {
        i: i_vals,
        v: v_vals,
        r,
        step: 0,
    })
}

/// One discrete-time Toda/QD update, computed left to right:
/// I_n(ℓ+1) = I_n(ℓ) + r_nV_n(ℓ) − r_{n−1}V_{n−1}(ℓ+1),
/// V_n(ℓ+1) = I_{n+1}(ℓ)V_n(ℓ)/I_n(ℓ+1); r is constant.
pub fn lr_step<S: Scalar>(s: &TodaState<S>) -> Result<TodaState<S>> {
    let n = s.n();
    let mut i_new = Vec::with_capacity(n);
    let mut v_new: Vec<S> = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n {
        let gain = if k < n - 1 {
            s.r[k].clone() * s.v[k].clone()
        } else {
            S::zero()
        };
        let loss = if k > 0 {
            s.r[k - 1].clone() * v_new[k - 1].clone()
        } else {
            S::zero()
        };
        let ik = s.i[k].clone() + gain - loss;
        if k < n - 1 {
            if ik.is_zero() {
                return Err(Error::ZeroPivot(k + 1));
            }
            v_new.push(s.i[k + 1].clone() * s.v[k].clone() / ik.clone());
        }
        i_new.push(ik);
    }
    Ok(TodaState {
        i: i_new,
        v: v_new,
        r: s.r.clone(),
        step: s.step + 1,
    })
}

/// Outcome of the QD eigenvalue iteration.
#[derive(Clone, Debug)]
pub struct QdOutcome<S> {
    pub eigenvalues: Vec<S>,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub oscillating: bool,
}

/// Default convergence tolerance: 10^{4−digits} at the current precision.
pub fn default_tol() -> f64 {
    10f64.powi(4 - precision_digits() as i32)
}

/// Default iteration cap: 10·N·digits.
pub fn default_max_iters(n: usize) -> usize {
    10 * n * precision_digits()
}

/// Eigenvalues of a symmetric matrix by Householder reduction followed by
/// the plain LR/QD iteration (no shifts). Stops when max|r_nV_n| < tol or
/// after max_iters steps; on non-convergence the partial estimates are
/// returned with `converged: false` and an oscillation diagnostic.
pub fn qd_eigenvalues<S: Scalar>(
    a: &[Vec<S>],
    max_iters: usize,
    tol: f64,
) -> Result<QdOutcome<S>> {
    let t = householder_tridiagonalize(a)?;
    let mut state = lr_init(&t)?;
    let mut history: Vec<f64> = vec![state.residual()];
    let mut converged = state.residual() < tol;
    while !converged && state.step < max_iters {
        state = lr_step(&state)?;
        history.push(state.residual());
        converged = state.residual() < tol;
    }
    // oscillation: the residual stopped making progress over the last
    // stretch of the run
    let oscillating = if converged || history.len() < 40 {
        false
    } else {
        let tail = &history[history.len() - 20..];
        let earlier = history[history.len() - 40];
        tail.iter().cloned().fold(0.0, f64::max) > 0.5 * earlier
    };
    let dense = state.assemble();
    let mut eigenvalues: Vec<S> = (0..state.n()).map(|k| dense[k][k].clone()).collect();
    eigenvalues.sort_by(|a, b| {
        a.to_f64()
            .partial_cmp(&b.to_f64())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(QdOutcome {
        eigenvalues,
        iterations: state.step,
        residual: state.residual(),
        converged,
        oscillating,
    })
}

/// Monic characteristic polynomial det(zE − A) by the Faddeev–LeVerrier
/// recurrence; returns coefficients [1, a₁, …, a_N] in descending powers.
pub fn charpoly<S: Scalar>(a: &[Vec<S>]) -> Result<Vec<S>> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("matrix must be square".into()));
    }
    let mut coeffs = vec![S::one()];
    // M_1 = A, c_k = −tr(A·M_k)/k, M_{k+1} = A·M_k + c_k·I
    let mut m: Vec<Vec<S>> = a.to_vec();
    for k in 1..=n {
        let mut tr = S::zero();
        for i in 0..n {
            tr = tr + m[i][i].clone();
        }
        let ck = -(tr / S::from_i64(k as i64));
        coeffs.push(ck.clone());
        if k == n {
            break;
        }
        for i in 0..n {
            m[i][i] = m[i][i].clone() + ck.clone();
        }
        let mut next = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = S::zero();
                for l in 0..n {
                    s = s + a[i][l].clone() * m[l][j].clone();
                }
                next[i][j] = s;
            }
        }
        m = next;
    }
    Ok(coeffs)
}

/// Power-series coefficients b_ℓ of z^N/P(z) = 1/(1 + a₁x + ⋯ + a_Nx^N)
/// with x = 1/z, from the monic characteristic coefficients [1, a₁, …].
pub fn moment_series<S: Scalar>(p: &[S], len: usize) -> Result<Vec<S>> {
    if p.is_empty() || p[0] != S::one() {
        return Err(Error::Invalid(
            "expected monic coefficients starting with 1".into(),
        ));
    }
    let n = p.len() - 1;
    let mut b = Vec::with_capacity(len);
    b.push(S::one());
    for k in 1..len {
        let mut s = S::zero();
        for j in 1..=k.min(n) {
            s = s + p[j].clone() * b[k - j].clone();
        }
        b.push(-s);
    }
    Ok(b)
}

/// τ_n(ℓ): the n×n Hankel determinant with top-left entry b_ℓ; τ₀ = 1.
pub fn tau_hankel<S: Scalar>(b: &[S], n: usize, ell: usize) -> Result<S> {
    if n == 0 {
        return Ok(S::one());
    }
    let need = ell + 2 * n - 1;
    if b.len() < need {
        return Err(Error::InsufficientCoefficients {
            need,
            have: b.len(),
        });
    }
    let rows = (0..n)
        .map(|i| (0..n).map(|j| b[ell + i + j].clone()).collect())
        .collect();
    Ok(S::det(rows))
}
