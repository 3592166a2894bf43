//! Continued fractions in standard, normal, and pivot form, convergent
//! evaluation by the forward three-term recurrence, and finite tridiagonal
//! determinant truncations.

use crate::error::{Error, Result};
use crate::scalar::{precision_digits, Scalar};

/// The three coefficient layouts.
///
/// * `Standard`: pairs (a_n, b_n) of the fraction a₀/(b₀+ a₁/(b₁+ …)).
/// * `Normal`: d_n with every partial denominator equal to 1,
///   d₀/(1+ d₁/(1+ …)).
/// * `Pivot`: e_n and a pivot x, e₀/(1 − e₁x/(1 − e₂x/(1 − …))).
#[derive(Clone, Debug)]
pub enum CfForm<S> {
    Standard(Vec<(S, S)>),
    Normal(Vec<S>),
    Pivot { e: Vec<S>, x: S },
}

#[derive(Clone, Debug)]
pub struct ContinuedFraction<S> {
    pub form: CfForm<S>,
}

impl<S: Scalar> ContinuedFraction<S> {
    pub fn standard(pairs: Vec<(S, S)>) -> Self {
        ContinuedFraction {
            form: CfForm::Standard(pairs),
        }
    }

    pub fn normal(d: Vec<S>) -> Self {
        ContinuedFraction {
            form: CfForm::Normal(d),
        }
    }

    pub fn pivot(e: Vec<S>, x: S) -> Self {
        ContinuedFraction {
            form: CfForm::Pivot { e, x },
        }
    }

    /// Number of coefficient pairs available (maximum depth + 1).
    pub fn len(&self) -> usize {
        match &self.form {
            CfForm::Standard(p) => p.len(),
            CfForm::Normal(d) => d.len(),
            CfForm::Pivot { e, .. } => e.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All forms reduced to standard (a_n, b_n) pairs.
    pub fn standard_pairs(&self) -> Vec<(S, S)> {
        match &self.form {
            CfForm::Standard(p) => p.clone(),
            CfForm::Normal(d) => d.iter().map(|dn| (dn.clone(), S::one())).collect(),
            CfForm::Pivot { e, x } => e
                .iter()
                .enumerate()
                .map(|(n, en)| {
                    let a = if n == 0 {
                        en.clone()
                    } else {
                        -(en.clone() * x.clone())
                    };
                    (a, S::one())
                })
                .collect(),
        }
    }

    fn pairs_for_depth(&self, depth: usize) -> Result<Vec<(S, S)>> {
        let pairs = self.standard_pairs();
        if pairs.len() <= depth {
            return Err(Error::InsufficientCoefficients {
                need: depth + 1,
                have: pairs.len(),
            });
        }
        Ok(pairs)
    }

    /// The depth-th convergent P_depth/Q_depth, rescaling (P, Q) whenever
    /// |Q| crosses 10^{digits/2} so exact-mode numerators stay small.
    pub fn evaluate(&self, depth: usize) -> Result<S> {
        self.eval_inner(depth, true)
    }

    /// Same convergent without any rescaling (for exactness checks).
    pub fn evaluate_raw(&self, depth: usize) -> Result<S> {
        self.eval_inner(depth, false)
    }

    fn eval_inner(&self, depth: usize, rescale: bool) -> Result<S> {
        let pairs = self.pairs_for_depth(depth)?;
        let threshold = 10f64.powi((precision_digits() / 2).max(8) as i32);
        let (mut p_prev, mut q_prev) = (S::zero(), S::one());
        let (a0, b0) = pairs[0].clone();
        let (mut p, mut q) = (a0, b0);
        for (a, b) in pairs.iter().take(depth + 1).skip(1).cloned() {
            let p_next = b.clone() * p.clone() + a.clone() * p_prev;
            let q_next = b * q.clone() + a * q_prev;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
            if rescale && !q.is_zero() {
                let qa = q.to_f64().abs();
                if !qa.is_finite() || qa >= threshold {
                    let scale = q.clone();
                    p = p / scale.clone();
                    p_prev = p_prev / scale.clone();
                    q_prev = q_prev / scale;
                    q = S::one();
                }
            }
        }
        if q.is_zero() {
            return Err(Error::PoleAtConvergent(depth));
        }
        Ok(p / q)
    }

    /// Convergents C_0 … C_depth; entries where Q vanished are `None`.
    pub fn convergents(&self, depth: usize) -> Result<Vec<Option<S>>> {
        let pairs = self.pairs_for_depth(depth)?;
        let mut out = Vec::with_capacity(depth + 1);
        let (mut p_prev, mut q_prev) = (S::zero(), S::one());
        let (a0, b0) = pairs[0].clone();
        let (mut p, mut q) = (a0, b0);
        let push = |out: &mut Vec<Option<S>>, p: &S, q: &S| {
            out.push(if q.is_zero() {
                None
            } else {
                Some(p.clone() / q.clone())
            });
        };
        push(&mut out, &p, &q);
        for (a, b) in pairs.iter().take(depth + 1).skip(1).cloned() {
            let p_next = b.clone() * p.clone() + a.clone() * p_prev;
            let q_next = b * q.clone() + a * q_prev;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
            push(&mut out, &p, &q);
        }
        Ok(out)
    }

    /// Deepen until two successive convergents differ by less than `tol`;
    /// returns the value and the depth actually used.
    pub fn evaluate_adaptive(&self, tol: &S, max_depth: usize) -> Result<(S, usize)> {
        let limit = max_depth.min(self.len().saturating_sub(1));
        let convs = self.convergents(limit)?;
        let mut last: Option<(S, usize)> = None;
        for (n, c) in convs.iter().enumerate() {
            if let Some(c) = c {
                if let Some((prev, _)) = &last {
                    if (c.clone() - prev.clone()).abs() < *tol {
                        return Ok((c.clone(), n));
                    }
                }
                last = Some((c.clone(), n));
            }
        }
        last
            .ok_or(Error::PoleAtConvergent(limit))
    }

    /// Equivalent normal form d₀ = a₀/b₀, d_n = a_n/(b_{n−1}b_n).
    pub fn standard_to_normal(&self) -> Result<ContinuedFraction<S>> {
        if let CfForm::Normal(_) = self.form {
            return Ok(self.clone());
        }
        let pairs = self.standard_pairs();
        let mut d = Vec::with_capacity(pairs.len());
        for (n, (a, b)) in pairs.iter().enumerate() {
            if b.is_zero() {
                return Err(Error::ZeroDenominator(n));
            }
            if n == 0 {
                d.push(a.clone() / b.clone());
            } else {
                d.push(a.clone() / (pairs[n - 1].1.clone() * b.clone()));
            }
        }
        Ok(ContinuedFraction::normal(d))
    }

    /// The M×M determinant truncation Δ_offset of this fraction.
    pub fn tridiag(&self, size: usize, offset: usize) -> Result<TridiagTruncation<S>> {
        let pairs = self.standard_pairs();
        let need = offset + size;
        if pairs.len() < need {
            return Err(Error::InsufficientCoefficients {
                need,
                have: pairs.len(),
            });
        }
        Ok(TridiagTruncation {
            a: pairs.iter().map(|(a, _)| a.clone()).collect(),
            b: pairs.iter().map(|(_, b)| b.clone()).collect(),
            size,
            offset,
        })
    }
}

/// Finite truncation of the infinite tridiagonal determinant Δ_n: diagonal
/// b_n, b_{n+1}, …, superdiagonal a_{n+1}, a_{n+2}, …, subdiagonal −1.
#[derive(Clone, Debug)]
pub struct TridiagTruncation<S> {
    pub a: Vec<S>,
    pub b: Vec<S>,
    pub size: usize,
    pub offset: usize,
}

impl<S: Scalar> TridiagTruncation<S> {
    /// Determinant of the truncation; the empty (M = 0) determinant is 1.
    pub fn determinant(&self) -> Result<S> {
        let m = self.size;
        if m == 0 {
            return Ok(S::one());
        }
        let need = self.offset + m;
        if self.b.len() < need || self.a.len() < need {
            return Err(Error::InsufficientCoefficients {
                need,
                have: self.b.len().min(self.a.len()),
            });
        }
        let mut rows = vec![vec![S::zero(); m]; m];
        for i in 0..m {
            rows[i][i] = self.b[self.offset + i].clone();
            if i + 1 < m {
                rows[i][i + 1] = self.a[self.offset + i + 1].clone();
                rows[i + 1][i] = -S::one();
            }
        }
        Ok(S::det(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rat, Real};

    fn real(s: &str) -> Real {
        Real::from_decimal(s).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    /// a₀ = 1, a_n = qⁿ, all partial denominators 1.
    fn rr_cf(q: &Real, depth: usize) -> ContinuedFraction<Real> {
        let pairs = (0..=depth)
            .map(|n| {
                let a = if n == 0 {
                    Real::one()
                } else {
                    q.powi(n as i64)
                };
                (a, Real::one())
            })
            .collect();
        ContinuedFraction::standard(pairs)
    }

    #[test]
    fn rr_value_golden() {
        let cf = rr_cf(&real("0.5"), 80);
        let v = cf.evaluate(80).unwrap();
        assert!((v - real("0.7099166943")).abs() < real("1e-9"));
    }

    #[test]
    fn terminated_fraction() {
        let cf = ContinuedFraction::standard(vec![
            (rat(3, 1), rat(2, 1)),
            (rat(0, 1), rat(5, 1)),
            (rat(0, 1), rat(7, 1)),
        ]);
        assert_eq!(cf.evaluate(2).unwrap(), rat(3, 2));
        assert_eq!(cf.evaluate(0).unwrap(), rat(3, 2));
    }

    #[test]
    fn golden_ratio_normal_form() {
        let cf = ContinuedFraction::normal(vec![Real::one(); 201]);
        let v = cf.evaluate(200).unwrap();
        assert!((v - real("0.61803398874989484820458683436564")).abs() < real("1e-9"));
    }

    #[test]
    fn pivot_single_coefficient() {
        let cf = ContinuedFraction::pivot(vec![rat(5, 3)], rat(1, 2));
        assert_eq!(cf.evaluate(0).unwrap(), rat(5, 3));
    }

    #[test]
    fn pivot_matches_manual_nesting() {
        // e0/(1 - e1 x/(1 - e2 x))
        let (e0, e1, e2, x) = (rat(2, 1), rat(1, 3), rat(1, 4), rat(1, 2));
        let cf = ContinuedFraction::pivot(vec![e0.clone(), e1.clone(), e2.clone()], x.clone());
        let inner = Rat::one() - e2 * x.clone();
        let manual = e0 / (Rat::one() - e1 * x / inner);
        assert_eq!(cf.evaluate(2).unwrap(), manual);
    }

    #[test]
    fn normal_conversion_preserves_convergents() {
        let pairs = vec![
            (rat(2, 3), rat(1, 2)),
            (rat(-1, 4), rat(3, 1)),
            (rat(5, 7), rat(2, 5)),
            (rat(1, 9), rat(-4, 3)),
            (rat(3, 2), rat(7, 6)),
        ];
        let cf = ContinuedFraction::standard(pairs);
        let normal = cf.standard_to_normal().unwrap();
        for depth in 0..5 {
            assert_eq!(
                cf.evaluate_raw(depth).unwrap(),
                normal.evaluate_raw(depth).unwrap(),
                "depth {depth}"
            );
        }
    }

    #[test]
    fn normal_conversion_of_unit_denominators_is_identity() {
        let pairs = vec![(rat(3, 4), rat(1, 1)), (rat(2, 5), rat(1, 1))];
        let cf = ContinuedFraction::standard(pairs.clone());
        match cf.standard_to_normal().unwrap().form {
            CfForm::Normal(d) => {
                assert_eq!(d, vec![rat(3, 4), rat(2, 5)]);
            }
            _ => panic!("expected normal form"),
        }
    }

    #[test]
    fn zero_denominator_rejected_by_conversion() {
        let cf = ContinuedFraction::standard(vec![(rat(1, 1), rat(1, 1)), (rat(1, 1), rat(0, 1))]);
        assert!(matches!(
            cf.standard_to_normal(),
            Err(Error::ZeroDenominator(1))
        ));
        // but standard evaluation handles b = 0 fine: 1/(1 + 1/0+...) —
        // the recurrence never divides by b
        let cf2 = ContinuedFraction::standard(vec![
            (rat(1, 1), rat(1, 1)),
            (rat(1, 1), rat(0, 1)),
            (rat(1, 1), rat(1, 1)),
        ]);
        assert!(cf2.evaluate(2).is_ok());
    }

    #[test]
    fn rescaling_does_not_change_value() {
        let q = rat(1, 2);
        let pairs: Vec<_> = (0..40)
            .map(|n| {
                let a = if n == 0 { Rat::one() } else { q.powi(n) };
                (a, Rat::one())
            })
            .collect();
        let cf = ContinuedFraction::standard(pairs);
        for depth in [5, 17, 39] {
            assert_eq!(
                cf.evaluate(depth).unwrap(),
                cf.evaluate_raw(depth).unwrap(),
                "depth {depth}"
            );
        }
    }

    #[test]
    fn pole_at_convergent_detected() {
        // Q_1 = b1*b0 + a1 = 1 - 1 = 0
        let cf = ContinuedFraction::standard(vec![(rat(1, 1), rat(1, 1)), (rat(-1, 1), rat(1, 1))]);
        assert!(matches!(cf.evaluate(1), Err(Error::PoleAtConvergent(1))));
    }

    #[test]
    fn adaptive_depth_reported() {
        let cf = rr_cf(&real("0.3"), 200);
        let (v, depth) = cf.evaluate_adaptive(&real("1e-12"), 200).unwrap();
        assert!(depth < 60, "depth {depth}");
        assert!((v - cf.evaluate(200).unwrap()).abs() < real("1e-11"));
    }

    #[test]
    fn exhausted_coefficients_error() {
        let cf = ContinuedFraction::standard(vec![(rat(1, 1), rat(1, 1))]);
        assert!(matches!(
            cf.evaluate(5),
            Err(Error::InsufficientCoefficients { need: 6, have: 1 })
        ));
    }

    #[test]
    fn tridiag_one_by_one() {
        let cf = ContinuedFraction::standard(vec![(rat(2, 1), rat(7, 3)), (rat(1, 5), rat(4, 9))]);
        let d = cf.tridiag(1, 1).unwrap().determinant().unwrap();
        assert_eq!(d, rat(4, 9));
    }

    #[test]
    fn tridiag_cofactor_recurrence() {
        let pairs = vec![
            (rat(1, 2), rat(2, 3)),
            (rat(-3, 4), rat(1, 5)),
            (rat(2, 7), rat(-1, 3)),
            (rat(5, 6), rat(3, 2)),
            (rat(-1, 8), rat(4, 7)),
            (rat(1, 9), rat(-2, 5)),
        ];
        let cf = ContinuedFraction::standard(pairs.clone());
        // Δ_{n−1}^{(M)} = b_{n−1} Δ_n^{(M−1)} + a_n Δ_{n+1}^{(M−2)}
        for n in 1..4usize {
            for m in 2..(pairs.len() - n) {
                let left = cf.tridiag(m, n - 1).unwrap().determinant().unwrap();
                let mid = cf.tridiag(m - 1, n).unwrap().determinant().unwrap();
                let right = cf.tridiag(m - 2, n + 1).unwrap().determinant().unwrap();
                assert_eq!(
                    left,
                    pairs[n - 1].1.clone() * mid + pairs[n].0.clone() * right,
                    "n={n} M={m}"
                );
            }
        }
    }

    #[test]
    fn finite_fraction_equals_determinant_quotient() {
        let pairs = vec![
            (rat(3, 2), rat(1, 1)),
            (rat(1, 3), rat(2, 1)),
            (rat(-1, 2), rat(1, 4)),
            (rat(2, 5), rat(3, 1)),
        ];
        let cf = ContinuedFraction::standard(pairs.clone());
        for m in 1..=4usize {
            let d0 = cf.tridiag(m, 0).unwrap().determinant().unwrap();
            let d1 = cf.tridiag(m - 1, 1).unwrap().determinant().unwrap();
            assert_eq!(
                cf.evaluate_raw(m - 1).unwrap(),
                pairs[0].0.clone() * d1 / d0,
                "M={m}"
            );
        }
    }

    #[test]
    fn rr_determinant_matches_series() {
        // diagonal 1, superdiagonal qⁿx: the determinant reproduces
        // Σ q^{n²} xⁿ/(q;q)_n
        let (q, x) = (real("0.3"), real("0.5"));
        let pairs: Vec<_> = (0..31)
            .map(|n| {
                let a = if n == 0 {
                    Real::one()
                } else {
                    q.powi(n) * x.clone()
                };
                (a, Real::one())
            })
            .collect();
        let cf = ContinuedFraction::standard(pairs);
        let series = crate::qseries::partial_sum(
            &crate::qseries::SeriesSpec::new(
                crate::qseries::SeriesKind::RrF,
                &[("q", q), ("x", x)],
            ),
            60,
        )
        .unwrap();
        // truncation error decays like a_M = q^M x
        let det12 = cf.tridiag(12, 0).unwrap().determinant().unwrap();
        assert!((det12 - series.clone()).abs() < real("1e-6"));
        let det30 = cf.tridiag(30, 0).unwrap().determinant().unwrap();
        assert!((det30 - series).abs() < real("1e-14"));
    }
}
