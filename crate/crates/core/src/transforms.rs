//! Series ↔ continued-fraction transforms: the Euler correspondence, the
//! Muir and Muir-Rogers determinant ladders with their inversions, and the
//! contiguous-relation coefficient streams (Gauss-Heine, Ramanujan, and the
//! two-parameter extension), plus the contiguous relations themselves as
//! checkable identities.

use crate::contfrac::ContinuedFraction;
use crate::error::{Error, Result};
use crate::qseries::q_pochhammer;
use crate::scalar::Scalar;

/// A pivot-form coefficient stream e₀, e₁, …. `terminated_at` marks the
/// index of a vanishing determinant numerator: the fraction is exact there
/// and no further coefficients exist.
#[derive(Clone, Debug)]
pub struct PivotSeq<S> {
    pub e: Vec<S>,
    pub terminated_at: Option<usize>,
}

impl<S: Scalar> PivotSeq<S> {
    pub fn into_cf(self, x: S) -> ContinuedFraction<S> {
        ContinuedFraction::pivot(self.e, x)
    }
}

/// θ_n of the Muir ladder: θ₀ = b₀, θ₁ = c₀, and for n ≥ 2 the n×n
/// determinant with ⌊n/2⌋ b-rows stacked above ⌈n/2⌉ c-rows. The i-th
/// b-row is shifted right by i; the c-rows shift left going down so the
/// bottom row starts at c₀.
pub fn theta<S: Scalar>(b: &[S], c: &[S], n: usize) -> Result<S> {
    if n == 0 {
        return b.first().cloned().ok_or(Error::InsufficientCoefficients {
            need: 1,
            have: 0,
        });
    }
    if n == 1 {
        return c.first().cloned().ok_or(Error::InsufficientCoefficients {
            need: 1,
            have: 0,
        });
    }
    if b.len() < n || c.len() < n {
        return Err(Error::InsufficientCoefficients {
            need: n,
            have: b.len().min(c.len()),
        });
    }
    let m_b = n / 2;
    let m_c = n - m_b;
    let mut rows = Vec::with_capacity(n);
    for i in 0..m_b {
        let mut row = vec![S::zero(); n];
        for j in i..n {
            row[j] = b[j - i].clone();
        }
        rows.push(row);
    }
    for k in 0..m_c {
        let shift = m_c - 1 - k;
        let mut row = vec![S::zero(); n];
        for j in shift..n {
            row[j] = c[j - shift].clone();
        }
        rows.push(row);
    }
    Ok(S::det(rows))
}

/// α_n of the Rogers ladder: the Hankel determinant of size ⌊n/2⌋+1 whose
/// top-left entry is c₀ (n even) or c₁ (n odd).
pub fn alpha<S: Scalar>(c: &[S], n: usize) -> Result<S> {
    if c.len() < n + 1 {
        return Err(Error::InsufficientCoefficients {
            need: n + 1,
            have: c.len(),
        });
    }
    let m = n / 2;
    let off = n % 2;
    let rows = (0..=m)
        .map(|i| (0..=m).map(|j| c[i + j + off].clone()).collect())
        .collect();
    Ok(S::det(rows))
}

/// The Euler continued fraction of an alternating series: convergent k of
/// the result equals c₀ − c₁ + c₂ − ⋯ ± c_k.
pub fn euler_cf<S: Scalar>(c: &[S]) -> ContinuedFraction<S> {
    let pairs = c
        .iter()
        .enumerate()
        .map(|(n, cn)| match n {
            0 => (cn.clone(), S::one()),
            1 => (cn.clone(), c[0].clone() - cn.clone()),
            _ => (
                c[n - 2].clone() * cn.clone(),
                c[n - 1].clone() - cn.clone(),
            ),
        })
        .collect();
    ContinuedFraction::standard(pairs)
}

/// The Euler fraction of a product-ratio series: convergent k equals
/// a₀ + a₀a₁ + ⋯ + a₀a₁⋯a_k.
pub fn euler_product_cf<S: Scalar>(a: &[S]) -> ContinuedFraction<S> {
    let pairs = a
        .iter()
        .enumerate()
        .map(|(n, an)| {
            if n == 0 {
                (an.clone(), S::one())
            } else {
                (-an.clone(), S::one() + an.clone())
            }
        })
        .collect();
    ContinuedFraction::standard(pairs)
}

/// Inverse of the Euler correspondence: from normal coefficients d back to
/// the series coefficients, c₀ = d₀ and c_n = d₀d₁⋯d_n/(D_{n−1}D_n), where
/// D_n = D_{n−1} + d_nD_{n−2} with D_{−1} = D₀ = 1.
pub fn euler_inverse<S: Scalar>(d: &[S]) -> Result<Vec<S>> {
    let mut c = Vec::with_capacity(d.len());
    let mut d_prev2 = S::one(); // D_{-1}
    let mut d_prev = S::one(); // D_0
    let mut prod = S::one();
    for (n, dn) in d.iter().enumerate() {
        prod = prod * dn.clone();
        if n == 0 {
            c.push(dn.clone());
            continue;
        }
        let d_cur = d_prev.clone() + dn.clone() * d_prev2.clone();
        if d_cur.is_zero() || d_prev.is_zero() {
            return Err(Error::InversionSingular(n));
        }
        c.push(prod.clone() / (d_prev.clone() * d_cur.clone()));
        d_prev2 = d_prev;
        d_prev = d_cur;
    }
    Ok(c)
}

/// Muir's transform of a quotient (c₀+c₁x+⋯)/(b₀+b₁x+⋯) into pivot form:
/// e₀ = θ₁/θ₀, e₁ = θ₂/(θ₁θ₀), e₂ = θ₃/(θ₂θ₁), and
/// e_n = θ_{n+1}θ_{n−2}/(θ_nθ_{n−1}) for n ≥ 3.
pub fn muir_cf<S: Scalar>(b: &[S], c: &[S], n_max: usize) -> Result<PivotSeq<S>> {
    let theta0 = theta(b, c, 0)?;
    if theta0.is_zero() {
        return Err(Error::Degenerate {
            kind: "theta",
            index: 0,
        });
    }
    let mut thetas = vec![theta0];
    let mut e = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let next = theta(b, c, n + 1)?;
        if next.is_zero() {
            e.push(S::zero());
            return Ok(PivotSeq {
                e,
                terminated_at: Some(n),
            });
        }
        // denominators θ_1..θ_n are previous nonzero numerators; θ_0 checked
        let en = match n {
            0 => next.clone() / thetas[0].clone(),
            1 => next.clone() / (thetas[1].clone() * thetas[0].clone()),
            2 => next.clone() / (thetas[2].clone() * thetas[1].clone()),
            _ => {
                next.clone() * thetas[n - 2].clone()
                    / (thetas[n].clone() * thetas[n - 1].clone())
            }
        };
        e.push(en);
        thetas.push(next);
    }
    Ok(PivotSeq {
        e,
        terminated_at: None,
    })
}

/// Rogers' single-series specialization of Muir's transform: e₀ = α₀,
/// e₁ = α₁/α₀, e₂ = α₂/(α₁α₀), e_n = α_nα_{n−3}/(α_{n−1}α_{n−2}) for n ≥ 3.
pub fn muir_rogers_cf<S: Scalar>(c: &[S], n_max: usize) -> Result<PivotSeq<S>> {
    let mut alphas: Vec<S> = Vec::with_capacity(n_max + 1);
    let mut e = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let an = alpha(c, n)?;
        if an.is_zero() {
            e.push(S::zero());
            return Ok(PivotSeq {
                e,
                terminated_at: Some(n),
            });
        }
        let en = match n {
            0 => an.clone(),
            1 => an.clone() / alphas[0].clone(),
            2 => an.clone() / (alphas[1].clone() * alphas[0].clone()),
            _ => {
                an.clone() * alphas[n - 3].clone()
                    / (alphas[n - 1].clone() * alphas[n - 2].clone())
            }
        };
        e.push(en);
        alphas.push(an);
    }
    Ok(PivotSeq {
        e,
        terminated_at: None,
    })
}

/// Inverse of the Rogers transform: rebuild the Hankel values α_n from the
/// telescoping products e₀e₁⋯e_n = α_n/α_{n−2}, then solve the bordered
/// Hankel determinants for c_n one at a time.
pub fn muir_rogers_inverse<S: Scalar>(e: &[S]) -> Result<Vec<S>> {
    if e.is_empty() {
        return Ok(Vec::new());
    }
    if e[0].is_zero() {
        return Err(Error::Degenerate {
            kind: "e",
            index: 0,
        });
    }
    let n_max = e.len() - 1;
    let mut alphas = vec![e[0].clone()];
    let mut prod = e[0].clone();
    for (n, en) in e.iter().enumerate().skip(1) {
        prod = prod * en.clone();
        if n == 1 {
            alphas.push(prod.clone());
        } else {
            alphas.push(alphas[n - 2].clone() * prod.clone());
        }
    }
    let mut c = vec![alphas[0].clone()];
    if n_max >= 1 {
        c.push(alphas[1].clone());
    }
    for n in 2..=n_max {
        // α_n = c_n·α_{n−2} + R, with R the same determinant with the
        // corner cell (the only one holding c_n) replaced by zero
        if alphas[n - 2].is_zero() {
            return Err(Error::InversionSingular(n));
        }
        let m = n / 2;
        let off = n % 2;
        let mut rows: Vec<Vec<S>> = (0..=m)
            .map(|i| (0..=m).map(|j| c[(i + j + off).min(n - 1)].clone()).collect())
            .collect();
        rows[m][m] = S::zero();
        let r = S::det(rows);
        c.push((alphas[n].clone() - r) / alphas[n - 2].clone());
    }
    Ok(c)
}

fn checked_div<S: Scalar>(num: S, den: S, index: usize) -> Result<S> {
    if den.is_zero() {
        Err(Error::Pole(index))
    } else {
        Ok(num / den)
    }
}

/// Coefficient stream of the Gauss-Heine continued fraction for
/// (αq,β,γq;x)/(α,β,γ;x): e₀ = 1, e₁ = (1−β)(α−γ)/((1−γ)(1−γq)), and for
/// m ≥ 1
/// e_{2m} = q^{m−1}(1−αq^m)(β−γq^m)/((1−γq^{2m−1})(1−γq^{2m})),
/// e_{2m+1} = q^m(1−βq^m)(α−γq^m)/((1−γq^{2m})(1−γq^{2m+1})).
/// With `beta_first` the roles of α and β are exchanged, giving the
/// (βq,γq;x)/(β,γ;x)-style ladder.
pub fn gauss_heine_cf<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
    q: &S,
    n_max: usize,
    beta_first: bool,
) -> Result<PivotSeq<S>> {
    let (a, b) = if beta_first {
        (beta.clone(), alpha.clone())
    } else {
        (alpha.clone(), beta.clone())
    };
    let g = gamma.clone();
    let one = S::one;
    let mut e = vec![S::one()];
    for n in 1..=n_max {
        let en = if n == 1 {
            checked_div(
                (one() - b.clone()) * (a.clone() - g.clone()),
                (one() - g.clone()) * (one() - g.clone() * q.clone()),
                n,
            )?
        } else if n % 2 == 0 {
            let m = (n / 2) as i64;
            checked_div(
                q.powi(m - 1)
                    * (one() - a.clone() * q.powi(m))
                    * (b.clone() - g.clone() * q.powi(m)),
                (one() - g.clone() * q.powi(2 * m - 1)) * (one() - g.clone() * q.powi(2 * m)),
                n,
            )?
        } else {
            let m = ((n - 1) / 2) as i64;
            checked_div(
                q.powi(m)
                    * (one() - b.clone() * q.powi(m))
                    * (a.clone() - g.clone() * q.powi(m)),
                (one() - g.clone() * q.powi(2 * m)) * (one() - g.clone() * q.powi(2 * m + 1)),
                n,
            )?
        };
        e.push(en);
    }
    Ok(PivotSeq {
        e,
        terminated_at: None,
    })
}

/// Closed-form pivot coefficients for the binomial-product quotient
/// ∏(1−αxqⁿ)/(1−xqⁿ) = Σ (α;q)_n/(q;q)_n xⁿ: e₀ = 1, e₁ = (1−α)/(1−q),
/// and for m ≥ 1
/// e_{2m} = q^{m−1}(α−q^m)/((1+q^m)(1−q^{2m−1})),
/// e_{2m+1} = q^m(1−αq^m)/((1+q^m)(1−q^{2m+1})).
pub fn cauchy_cf<S: Scalar>(alpha: &S, q: &S, n_max: usize) -> Result<PivotSeq<S>> {
    let one = S::one;
    let mut e = vec![S::one()];
    for n in 1..=n_max {
        let en = if n == 1 {
            checked_div(one() - alpha.clone(), one() - q.clone(), n)?
        } else if n % 2 == 0 {
            let m = (n / 2) as i64;
            checked_div(
                q.powi(m - 1) * (alpha.clone() - q.powi(m)),
                (one() + q.powi(m)) * (one() - q.powi(2 * m - 1)),
                n,
            )?
        } else {
            let m = ((n - 1) / 2) as i64;
            checked_div(
                q.powi(m) * (one() - alpha.clone() * q.powi(m)),
                (one() + q.powi(m)) * (one() - q.powi(2 * m + 1)),
                n,
            )?
        };
        e.push(en);
    }
    Ok(PivotSeq {
        e,
        terminated_at: None,
    })
}

/// Ramanujan's continued fraction for H₀/F₀ = G(aq,λq;b,q)/G(a,λ;b,q):
/// standard form with every partial denominator 1 and numerators a₀ = 1,
/// a_{2m+1} = q^{m+1}(a+λq^m), a_{2m} = q^m(b+λq^m).
pub fn ramanujan_cf<S: Scalar>(
    a: &S,
    lambda: &S,
    b: &S,
    q: &S,
    n_max: usize,
) -> ContinuedFraction<S> {
    let pairs = (0..=n_max)
        .map(|n| {
            let num = if n == 0 {
                S::one()
            } else if n % 2 == 1 {
                let m = ((n - 1) / 2) as i64;
                q.powi(m + 1) * (a.clone() + lambda.clone() * q.powi(m))
            } else {
                let m = (n / 2) as i64;
                q.powi(m) * (b.clone() + lambda.clone() * q.powi(m))
            };
            (num, S::one())
        })
        .collect();
    ContinuedFraction::standard(pairs)
}

/// Pivot-form stream for the quotient H₀/F₀ of the extended functions
/// (the q^{n(n+1)/2}-weighted ₁Φ₁ pair): e₀ = 1, e₁ = −q(1−β)/(1−γ), and
/// for m ≥ 1
/// e_{2m} = −q^{2m}(γq^{m−1}−β)/((1−γq^{2m−2})(1−γq^{2m−1})),
/// e_{2m+1} = −q^{m+1}(1−βq^m)/((1−γq^{2m−1})(1−γq^{2m})).
pub fn extended_cf<S: Scalar>(beta: &S, gamma: &S, q: &S, n_max: usize) -> Result<PivotSeq<S>> {
    let (b, g) = (beta.clone(), gamma.clone());
    let one = S::one;
    let mut e = vec![S::one()];
    for n in 1..=n_max {
        let en = if n == 1 {
            checked_div(-(q.clone() * (one() - b.clone())), one() - g.clone(), n)?
        } else if n % 2 == 0 {
            let m = (n / 2) as i64;
            checked_div(
                -(q.powi(2 * m) * (g.clone() * q.powi(m - 1) - b.clone())),
                (one() - g.clone() * q.powi(2 * m - 2)) * (one() - g.clone() * q.powi(2 * m - 1)),
                n,
            )?
        } else {
            let m = ((n - 1) / 2) as i64;
            checked_div(
                -(q.powi(m + 1) * (one() - b.clone() * q.powi(m))),
                (one() - g.clone() * q.powi(2 * m - 1)) * (one() - g.clone() * q.powi(2 * m)),
                n,
            )?
        };
        e.push(en);
    }
    Ok(PivotSeq {
        e,
        terminated_at: None,
    })
}

/// F_k(β,γ;q,x) = Σ q^{n(n+2k+1)/2}(βq^k;q)_n x^n/((γ;q)_{n+k}(q;q)_n),
/// truncated after n_max terms.
pub fn f_k<S: Scalar>(beta: &S, gamma: &S, q: &S, x: &S, k: usize, n_max: usize) -> Result<S> {
    fh_series(beta, gamma, q, x, k, n_max, 1)
}

/// H_k(β,γ;q,x): as F_k with weight q^{n(n+2k+3)/2}; H_k(x) = F_k(qx).
pub fn h_k<S: Scalar>(beta: &S, gamma: &S, q: &S, x: &S, k: usize, n_max: usize) -> Result<S> {
    fh_series(beta, gamma, q, x, k, n_max, 2)
}

fn fh_series<S: Scalar>(
    beta: &S,
    gamma: &S,
    q: &S,
    x: &S,
    k: usize,
    n_max: usize,
    shift: i64,
) -> Result<S> {
    let t0_den = q_pochhammer(gamma, q, k);
    if t0_den.is_zero() {
        return Err(Error::Pole(0));
    }
    let one = S::one;
    let k = k as i64;
    let mut t = S::one() / t0_den;
    let mut sum = t.clone();
    for n in 0..n_max as i64 {
        let den = (one() - gamma.clone() * q.powi(n + k)) * (one() - q.powi(n + 1));
        if den.is_zero() {
            return Err(Error::Pole(n as usize + 1));
        }
        t = t
            * q.powi(n + k + shift)
            * (one() - beta.clone() * q.powi(n + k))
            * x.clone()
            / den;
        sum = sum + t.clone();
    }
    Ok(sum)
}

/// [α,β,γ;x]_k = Σ q^{n(n+2k+1)/2}(α;q)_n(β;q)_n x^n/((γ;q)_n(q;q)_n),
/// truncated after n_max terms.
pub fn phi_ext_k<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
    q: &S,
    x: &S,
    k: usize,
    n_max: usize,
) -> Result<S> {
    let one = S::one;
    let k = k as i64;
    let mut t = S::one();
    let mut sum = t.clone();
    for n in 0..n_max as i64 {
        let den = (one() - gamma.clone() * q.powi(n)) * (one() - q.powi(n + 1));
        if den.is_zero() {
            return Err(Error::Pole(n as usize + 1));
        }
        t = t
            * q.powi(n + k + 1)
            * (one() - alpha.clone() * q.powi(n))
            * (one() - beta.clone() * q.powi(n))
            * x.clone()
            / den;
        sum = sum + t.clone();
    }
    Ok(sum)
}

/// Parameters for a contiguous-relation residual check.
#[derive(Clone, Debug)]
pub struct ContigParams<S> {
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
    pub q: S,
    pub x: S,
    pub k: usize,
}

/// Evaluate left side minus right side of a named contiguous relation with
/// all series truncated at `n_terms` terms. Relation ids:
/// ce1–ce4 (the ₂φ₁ relations), R1/R2 (the F_k/H_k ladder), CE0–CE4
/// (the weighted [α,β,γ;x]_k relations).
pub fn contiguous_check<S: Scalar>(
    relation: &str,
    p: &ContigParams<S>,
    n_terms: usize,
) -> Result<S> {
    let one = S::one;
    let (a, b, g) = (p.alpha.clone(), p.beta.clone(), p.gamma.clone());
    let (q, x) = (p.q.clone(), p.x.clone());
    let n = n_terms;
    let k = p.k;
    if q.is_zero() {
        return Err(Error::Domain {
            name: "q",
            reason: "q must be nonzero".into(),
        });
    }
    let guard = |v: S, name: &'static str| -> Result<S> {
        if v.is_zero() {
            Err(Error::Domain {
                name,
                reason: "coefficient denominator vanishes".into(),
            })
        } else {
            Ok(v)
        }
    };
    // ₂φ₁ partial sum (Heine's series, no triangular weight)
    let phi2 = |a: S, b: S, g: S| crate::qseries::heine_lhs(&a, &b, &g, &q, &x, n);
    // weighted extended series
    let phi = |a: S, b: S, g: S, k: usize| phi_ext_k(&a, &b, &g, &q, &x, k, n);
    let qs = |e: i64| q.powi(e);
    match relation {
        "ce1" => {
            let lhs = phi2(a.clone(), b.clone(), g.clone() / q.clone())? - phi2(a.clone(), b.clone(), g.clone())?;
            let den = guard((q.clone() - g.clone()) * (one() - g.clone()), "gamma")?;
            let rhs = g.clone() * x.clone() * (one() - a.clone()) * (one() - b.clone()) / den
                * phi2(a * q.clone(), b * q.clone(), g * q.clone())?;
            Ok(lhs - rhs)
        }
        "ce2" => {
            let lhs = phi2(a.clone() * q.clone(), b.clone(), g.clone())? - phi2(a.clone(), b.clone(), g.clone())?;
            let den = guard(one() - g.clone(), "gamma")?;
            let rhs = a.clone() * x.clone() * (one() - b.clone()) / den
                * phi2(a * q.clone(), b * q.clone(), g * q.clone())?;
            Ok(lhs - rhs)
        }
        "ce3" => {
            let lhs = phi2(a.clone() * q.clone(), b.clone(), g.clone() * q.clone())?
                - phi2(a.clone(), b.clone(), g.clone())?;
            let den = guard((one() - g.clone()) * (one() - g.clone() * q.clone()), "gamma")?;
            let rhs = x.clone() * (one() - b.clone()) * (a.clone() - g.clone()) / den
                * phi2(a * q.clone(), b * q.clone(), g * qs(2))?;
            Ok(lhs - rhs)
        }
        "ce4" => {
            let lhs = phi2(a.clone() * q.clone(), b.clone() / q.clone(), g.clone())?
                - phi2(a.clone(), b.clone(), g.clone())?;
            let den = guard(one() - g.clone(), "gamma")?;
            let rhs = x.clone() * (a.clone() - b.clone() / q.clone()) / den
                * phi2(a * q.clone(), b, g * q.clone())?;
            Ok(lhs - rhs)
        }
        "R1" => {
            let lhs = f_k(&b, &g, &q, &x, k, n)? - h_k(&b, &g, &q, &x, k, n)?;
            let rhs = (qs(k as i64 + 1) - b.clone() * qs(2 * k as i64 + 1)) * x
                * f_k(&b, &g, &q, &p.x, k + 1, n)?;
            Ok(lhs - rhs)
        }
        "R2" => {
            let lhs = h_k(&b, &g, &q, &x, k, n)? - f_k(&b, &g, &q, &x, k + 1, n)?;
            let rhs = -((g.clone() * qs(k as i64) + b.clone() * qs(2 * k as i64 + 2) * x.clone())
                * h_k(&b, &g, &q, &x, k + 1, n)?);
            Ok(lhs - rhs)
        }
        "CE0" => {
            let lhs = phi(a.clone(), b.clone(), g.clone(), k)? - phi(a.clone(), b.clone(), g.clone(), k + 1)?;
            let den = guard(one() - g.clone(), "gamma")?;
            let rhs = qs(k as i64 + 1) * x.clone() * (one() - a.clone()) * (one() - b.clone()) / den
                * phi(a * q.clone(), b * q.clone(), g * q.clone(), k + 1)?;
            Ok(lhs - rhs)
        }
        "CE1" => {
            let lhs = phi(a.clone(), b.clone(), g.clone() / q.clone(), k)?
                - phi(a.clone(), b.clone(), g.clone(), k)?;
            let den = guard((q.clone() - g.clone()) * (one() - g.clone()), "gamma")?;
            let rhs = g.clone() * qs(k as i64 + 1) * x.clone() * (one() - a.clone()) * (one() - b.clone())
                / den
                * phi(a * q.clone(), b * q.clone(), g * q.clone(), k + 1)?;
            Ok(lhs - rhs)
        }
        "CE2" => {
            let lhs = phi(a.clone() * q.clone(), b.clone(), g.clone(), k)?
                - phi(a.clone(), b.clone(), g.clone(), k)?;
            let den = guard(one() - g.clone(), "gamma")?;
            let rhs = a.clone() * qs(k as i64 + 1) * x.clone() * (one() - b.clone()) / den
                * phi(a * q.clone(), b * q.clone(), g * q.clone(), k + 1)?;
            Ok(lhs - rhs)
        }
        "CE3" => {
            let lhs = phi(a.clone() * q.clone(), b.clone(), g.clone() * q.clone(), k)?
                - phi(a.clone(), b.clone(), g.clone(), k)?;
            let den = guard((one() - g.clone()) * (one() - g.clone() * q.clone()), "gamma")?;
            let rhs = qs(k as i64 + 1) * x.clone() * (one() - b.clone()) * (a.clone() - g.clone())
                / den
                * phi(a * q.clone(), b * q.clone(), g * qs(2), k + 1)?;
            Ok(lhs - rhs)
        }
        "CE4" => {
            let lhs = phi(a.clone() * q.clone(), b.clone() / q.clone(), g.clone(), k)?
                - phi(a.clone(), b.clone(), g.clone(), k)?;
            let den = guard(one() - g.clone(), "gamma")?;
            let rhs = qs(k as i64 + 1) * x.clone() * (a.clone() - b.clone() / q.clone()) / den
                * phi(a * q.clone(), b, g * q.clone(), k + 1)?;
            Ok(lhs - rhs)
        }
        other => Err(Error::UnknownRelation(other.into())),
    }
}

/// The relation ids accepted by [`contiguous_check`].
pub const RELATIONS: &[&str] = &[
    "ce1", "ce2", "ce3", "ce4", "R1", "R2", "CE0", "CE1", "CE2", "CE3", "CE4",
];
