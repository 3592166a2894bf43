//! Series term generators, truncated infinite products, and standalone
//! identities (Rogers-Fine, Heine transform, Jacobi triple product, Klein
//! quartic coordinates).
//!
//! Every catalog entry defines its terms through the ratio t_{n+1}/t_n so
//! that partial sums cost O(N) scalar operations.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{precision_digits, Scalar};

/// (α;q)_n = ∏_{k=0}^{n−1} (1 − αq^k).
pub fn q_pochhammer<S: Scalar>(alpha: &S, q: &S, n: usize) -> S {
    let mut acc = S::one();
    let mut aqk = alpha.clone();
    for _ in 0..n {
        acc = acc * (S::one() - aqk.clone());
        aqk = aqk * q.clone();
    }
    acc
}

/// (a)_n = a(a+1)⋯(a+n−1).
pub fn pochhammer<S: Scalar>(a: &S, n: usize) -> S {
    let mut acc = S::one();
    for k in 0..n {
        acc = acc * (a.clone() + S::from_i64(k as i64));
    }
    acc
}

/// 10^{−(precision digits + extra)}, the working truncation threshold.
pub fn working_eps<S: Scalar>(extra: i64) -> S {
    let e = precision_digits() as i64 + extra;
    S::from_decimal(&format!("1e-{e}")).expect("epsilon literal")
}

/// (α;q)_∞ truncated once the factors are indistinguishable from 1.
/// Requires |q| < 1.
pub fn q_pochhammer_inf<S: Scalar>(alpha: &S, q: &S) -> Result<S> {
    if q.abs().to_f64() >= 1.0 {
        return Err(Error::Domain {
            name: "q",
            reason: "|q| must be < 1 for infinite products".into(),
        });
    }
    let eps = working_eps::<S>(10);
    let mut acc = S::one();
    let mut aqk = alpha.clone();
    for _ in 0..100_000 {
        if aqk.abs() < eps {
            break;
        }
        acc = acc * (S::one() - aqk.clone());
        aqk = aqk * q.clone();
    }
    Ok(acc)
}

macro_rules! series_kinds {
    ($(($variant:ident, $name:literal, $desc:literal)),+ $(,)?) => {
        /// Identifier for a catalog series. The string names are the stable
        /// CLI-facing identifiers.
        #[derive(Clone, Copy, Debug, PartialEq, Eq)]
        pub enum SeriesKind {
            $($variant),+
        }

        impl SeriesKind {
            pub const ALL: &'static [SeriesKind] = &[$(SeriesKind::$variant),+];

            pub fn name(&self) -> &'static str {
                match self {
                    $(SeriesKind::$variant => $name),+
                }
            }

            pub fn description(&self) -> &'static str {
                match self {
                    $(SeriesKind::$variant => $desc),+
                }
            }
        }

        impl FromStr for SeriesKind {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(SeriesKind::$variant),)+
                    other => Err(Error::UnknownKind(other.into())),
                }
            }
        }
    };
}

series_kinds![
    (Cauchy1Phi0, "cauchy_1phi0", "sum (alpha;q)_n/(q;q)_n x^n"),
    (Heine2Phi1, "heine_2phi1", "2phi1(alpha,beta,gamma;q,x)"),
    (Phi01Gamma, "phi_0_1_gamma", "0phi1(gamma;q,x)"),
    (Phi11, "phi_1_1", "1phi1(beta,gamma;q,x)"),
    (Rho1, "rho_1", "sum (alpha;q)_n x^n"),
    (WallisAlt, "wallis_alt", "sum (-1)^n (a)_n x^n"),
    (RrF, "rr_F", "sum q^{n^2}/(q;q)_n x^n"),
    (RrFq, "rr_Fq", "sum q^{n(n+1)}/(q;q)_n x^n"),
    (RamanujanG, "ramanujan_G", "G(a,lambda;b,q)"),
    (ExtF0, "ext_F0", "sum q^{n(n+1)/2}(beta;q)_n/(gamma;q)_n x^n/(q;q)_n"),
    (ExtH0, "ext_H0", "sum q^{n(n+3)/2}(beta;q)_n/(gamma;q)_n x^n/(q;q)_n"),
    (TriangularAlt, "triangular_alt", "sum (-1)^n q^{n(n+1)/2}"),
    (SquaresAlt, "squares_alt", "sum (-1)^n q^{n^2}"),
    (PentagonalAlt, "pentagonal_alt", "sum (-1)^n q^{n(3n-1)/2}"),
    (QqSum, "qq_sum", "sum (q;q)_n"),
    (QqAltSum, "qq_alt_sum", "sum (-1)^n (q;q)_n"),
    (GrRhs, "gr_rhs", "(1 + sum q^{n(n+1)/2}/(-q;q)_n)/2"),
    (Gauss3, "gauss3", "sum q^n (q;q^2)_n"),
    (Gauss3P, "gauss3_pform", "-sum p^{n+1}/(p;p^2)_{n+1}"),
    (Gauss2P, "gauss2_pform", "sum 1/(p;p)_n"),
    (RogersFineRhs, "rogers_fine_rhs", "sum (xq;q^2)_n/(xq^2;q^2)_n (xq)^n"),
    (Gauss1Q, "gauss1_qform", "sum (-1)^n q^n (-q;q^2)_n/(-q^2;q^2)_n"),
    (Gauss1P, "gauss1_pform", "sum (-1)^n (-p;p^2)_n/(-p^2;p^2)_n"),
    (SquaresRf, "squares_rf", "sum (-1)^n q^n (-q;q^4)_n/(-q^3;q^4)_n"),
    (PentagonalRfQ, "pentagonal_rf_q", "sum (-1)^n q^n (-q;q^6)_n/(-q^4;q^6)_n"),
    (PentagonalRfP, "pentagonal_rf_p", "sum (-1)^n p^{2n} (-p;p^6)_n/(-p^4;p^6)_n"),
    (Ex1NumQ, "ex1_num_q", "sum q^{n(n+1)}/(q^2;q^2)_n"),
    (Ex1DenQ, "ex1_den_q", "sum q^{n^2}/(q^2;q^2)_n"),
    (Ex1NumP, "ex1_num_p", "sum (-1)^n/(p^2;p^2)_n"),
    (Ex1DenP, "ex1_den_p", "sum (-1)^n p^n/(p^2;p^2)_n"),
    (Ex2NumQ, "ex2_num_q", "sum q^{n(n+1)}/(q;q)_n^2"),
    (Ex2DenQ, "ex2_den_q", "sum q^{n^2}/(q;q)_n^2"),
    (Ex3NumQ, "ex3_num_q", "sum q^{n(n+2)}(-q;q^2)_n/(q^4;q^4)_n"),
    (Ex3DenQ, "ex3_den_q", "sum q^{n^2}(-q;q^2)_n/(q^4;q^4)_n"),
    (Ex3NumP, "ex3_num_p", "sum (-1)^n (-p;p^2)_n/(p^4;p^4)_n"),
    (Ex3DenP, "ex3_den_p", "sum (-1)^n p^{2n}(-p;p^2)_n/(p^4;p^4)_n"),
    (Ex4NumQ, "ex4_num_q", "sum q^{n(n+2)}(-q;q^2)_n/(q^2;q^2)_n"),
    (Ex4DenQ, "ex4_den_q", "sum q^{n^2}(-q;q^2)_n/(q^2;q^2)_n"),
    (Ex4NumP, "ex4_num_p", "sum (-1)^n p^{-n(n+1)}(-p;p^2)_n/(p^2;p^2)_n"),
    (Ex4DenP, "ex4_den_p", "sum (-1)^n p^{-n(n-1)}(-p;p^2)_n/(p^2;p^2)_n"),
    (Ex5NumQ, "ex5_num_q", "sum (-1)^n q^{n(n+2)}(q;q^2)_n/(q^2;q^2)_n^2"),
    (Ex5DenQ, "ex5_den_q", "sum (-1)^n q^{n^2}(q;q^2)_n/(q^2;q^2)_n^2"),
    (Ex5Single, "ex5_single", "sum (-1)^n q^{n(n+1)}/(q;q^2)_{n+1}"),
    (JacobiSeries, "jacobi_series", "triple-product series side for (a,b)"),
];

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A catalog series bound to concrete parameter values.
#[derive(Clone, Debug)]
pub struct SeriesSpec<S> {
    pub kind: SeriesKind,
    pub params: BTreeMap<String, S>,
}

impl<S: Scalar> SeriesSpec<S> {
    pub fn new(kind: SeriesKind, params: &[(&str, S)]) -> Self {
        SeriesSpec {
            kind,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    fn p(&self, name: &'static str) -> Result<S> {
        self.params
            .get(name)
            .cloned()
            .ok_or(Error::MissingParam(name))
    }

    fn int_param(&self, name: &'static str) -> Result<i64> {
        let v = self.p(name)?.to_f64();
        if !v.is_finite() || v.fract() != 0.0 {
            return Err(Error::Domain {
                name,
                reason: "expected an integer value".into(),
            });
        }
        Ok(v as i64)
    }

    /// The leading term t₀.
    pub fn first_term(&self) -> Result<S> {
        use SeriesKind::*;
        Ok(match self.kind {
            GrRhs => S::from_ratio(1, 2),
            Gauss3P => {
                let p = self.p("p")?;
                let den = S::one() - p.clone();
                if den.is_zero() {
                    return Err(Error::Pole(0));
                }
                -(p / den)
            }
            Ex5Single => {
                let q = self.p("q")?;
                let den = S::one() - q;
                if den.is_zero() {
                    return Err(Error::Pole(0));
                }
                S::one() / den
            }
            _ => S::one(),
        })
    }

    /// The term ratio t_{n+1}/t_n.
    pub fn ratio(&self, n: usize) -> Result<S> {
        use SeriesKind::*;
        let n = n as i64;
        let one = S::one;
        // numerator/denominator with a pole check on the denominator
        let fr = |num: S, den: S| -> Result<S> {
            if den.is_zero() {
                Err(Error::Pole(n as usize + 1))
            } else {
                Ok(num / den)
            }
        };
        match self.kind {
            Cauchy1Phi0 => {
                let (a, q, x) = (self.p("alpha")?, self.p("q")?, self.p("x")?);
                fr(
                    (one() - a * q.powi(n)) * x,
                    one() - q.powi(n + 1),
                )
            }
            Heine2Phi1 => {
                let (a, b, g) = (self.p("alpha")?, self.p("beta")?, self.p("gamma")?);
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(
                    (one() - a * q.powi(n)) * (one() - b * q.powi(n)) * x,
                    (one() - g * q.powi(n)) * (one() - q.powi(n + 1)),
                )
            }
            Phi01Gamma => {
                let (g, q, x) = (self.p("gamma")?, self.p("q")?, self.p("x")?);
                fr(x, (one() - g * q.powi(n)) * (one() - q.powi(n + 1)))
            }
            Phi11 => {
                let (b, g) = (self.p("beta")?, self.p("gamma")?);
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(
                    (one() - b * q.powi(n)) * x,
                    (one() - g * q.powi(n)) * (one() - q.powi(n + 1)),
                )
            }
            Rho1 => {
                let (a, q, x) = (self.p("alpha")?, self.p("q")?, self.p("x")?);
                Ok((one() - a * q.powi(n)) * x)
            }
            WallisAlt => {
                let (a, x) = (self.p("a")?, self.p("x")?);
                Ok(-((a + S::from_i64(n)) * x))
            }
            RrF => {
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(q.powi(2 * n + 1) * x, one() - q.powi(n + 1))
            }
            RrFq => {
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(q.powi(2 * n + 2) * x, one() - q.powi(n + 1))
            }
            RamanujanG => {
                let (a, l, b, q) = (
                    self.p("a")?,
                    self.p("lambda")?,
                    self.p("b")?,
                    self.p("q")?,
                );
                fr(
                    q.powi(n + 1) * (a + l * q.powi(n)),
                    (one() - q.powi(n + 1)) * (one() + b * q.powi(n + 1)),
                )
            }
            ExtF0 | ExtH0 => {
                let shift = if self.kind == ExtF0 { 1 } else { 2 };
                let (b, g) = (self.p("beta")?, self.p("gamma")?);
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(
                    q.powi(n + shift) * (one() - b * q.powi(n)) * x,
                    (one() - g * q.powi(n)) * (one() - q.powi(n + 1)),
                )
            }
            TriangularAlt => Ok(-self.p("q")?.powi(n + 1)),
            SquaresAlt => Ok(-self.p("q")?.powi(2 * n + 1)),
            PentagonalAlt => Ok(-self.p("q")?.powi(3 * n + 1)),
            QqSum => Ok(one() - self.p("q")?.powi(n + 1)),
            QqAltSum => Ok(-(one() - self.p("q")?.powi(n + 1))),
            GrRhs => {
                let q = self.p("q")?;
                fr(q.powi(n + 1), one() + q.powi(n + 1))
            }
            Gauss3 => {
                let q = self.p("q")?;
                Ok(q.clone() * (one() - q.powi(2 * n + 1)))
            }
            Gauss3P => {
                let p = self.p("p")?;
                fr(p.clone(), one() - p.powi(2 * n + 3))
            }
            Gauss2P => {
                let p = self.p("p")?;
                fr(one(), one() - p.powi(n + 1))
            }
            RogersFineRhs => {
                let (q, x) = (self.p("q")?, self.p("x")?);
                fr(
                    (one() - x.clone() * q.powi(2 * n + 1)) * x.clone() * q.clone(),
                    one() - x * q.powi(2 * n + 2),
                )
            }
            Gauss1Q => {
                let q = self.p("q")?;
                fr(
                    -(q.clone() * (one() + q.powi(2 * n + 1))),
                    one() + q.powi(2 * n + 2),
                )
            }
            Gauss1P => {
                let p = self.p("p")?;
                fr(-(one() + p.powi(2 * n + 1)), one() + p.powi(2 * n + 2))
            }
            SquaresRf => {
                let q = self.p("q")?;
                fr(
                    -(q.clone() * (one() + q.powi(4 * n + 1))),
                    one() + q.powi(4 * n + 3),
                )
            }
            PentagonalRfQ => {
                let q = self.p("q")?;
                fr(
                    -(q.clone() * (one() + q.powi(6 * n + 1))),
                    one() + q.powi(6 * n + 4),
                )
            }
            PentagonalRfP => {
                let p = self.p("p")?;
                fr(
                    -(p.powi(2) * (one() + p.powi(6 * n + 1))),
                    one() + p.powi(6 * n + 4),
                )
            }
            Ex1NumQ => {
                let q = self.p("q")?;
                fr(q.powi(2 * n + 2), one() - q.powi(2 * n + 2))
            }
            Ex1DenQ => {
                let q = self.p("q")?;
                fr(q.powi(2 * n + 1), one() - q.powi(2 * n + 2))
            }
            Ex1NumP => {
                let p = self.p("p")?;
                fr(-one(), one() - p.powi(2 * n + 2))
            }
            Ex1DenP => {
                let p = self.p("p")?;
                fr(-p.clone(), one() - p.powi(2 * n + 2))
            }
            Ex2NumQ => {
                let q = self.p("q")?;
                let d = one() - q.powi(n + 1);
                fr(q.powi(2 * n + 2), d.clone() * d)
            }
            Ex2DenQ => {
                let q = self.p("q")?;
                let d = one() - q.powi(n + 1);
                fr(q.powi(2 * n + 1), d.clone() * d)
            }
            Ex3NumQ => {
                let q = self.p("q")?;
                fr(
                    q.powi(2 * n + 3) * (one() + q.powi(2 * n + 1)),
                    one() - q.powi(4 * n + 4),
                )
            }
            Ex3DenQ => {
                let q = self.p("q")?;
                fr(
                    q.powi(2 * n + 1) * (one() + q.powi(2 * n + 1)),
                    one() - q.powi(4 * n + 4),
                )
            }
            Ex3NumP => {
                let p = self.p("p")?;
                fr(-(one() + p.powi(2 * n + 1)), one() - p.powi(4 * n + 4))
            }
            Ex3DenP => {
                let p = self.p("p")?;
                fr(
                    -(p.powi(2) * (one() + p.powi(2 * n + 1))),
                    one() - p.powi(4 * n + 4),
                )
            }
            Ex4NumQ => {
                let q = self.p("q")?;
                fr(
                    q.powi(2 * n + 3) * (one() + q.powi(2 * n + 1)),
                    one() - q.powi(2 * n + 2),
                )
            }
            Ex4DenQ => {
                let q = self.p("q")?;
                fr(
                    q.powi(2 * n + 1) * (one() + q.powi(2 * n + 1)),
                    one() - q.powi(2 * n + 2),
                )
            }
            Ex4NumP => {
                let p = self.p("p")?;
                fr(
                    -(p.powi(-(2 * n + 2)) * (one() + p.powi(2 * n + 1))),
                    one() - p.powi(2 * n + 2),
                )
            }
            Ex4DenP => {
                let p = self.p("p")?;
                fr(
                    -(p.powi(-2 * n) * (one() + p.powi(2 * n + 1))),
                    one() - p.powi(2 * n + 2),
                )
            }
            Ex5NumQ => {
                let q = self.p("q")?;
                let d = one() - q.powi(2 * n + 2);
                fr(
                    -(q.powi(2 * n + 3) * (one() - q.powi(2 * n + 1))),
                    d.clone() * d,
                )
            }
            Ex5DenQ => {
                let q = self.p("q")?;
                let d = one() - q.powi(2 * n + 2);
                fr(
                    -(q.powi(2 * n + 1) * (one() - q.powi(2 * n + 1))),
                    d.clone() * d,
                )
            }
            Ex5Single => {
                let q = self.p("q")?;
                fr(-q.powi(2 * n + 2), one() - q.powi(2 * n + 3))
            }
            JacobiSeries => Err(Error::Invalid(
                "jacobi_series terms are not ratio-generated; use term()".into(),
            )),
        }
    }

    fn jacobi_term(&self, m: usize) -> Result<S> {
        let a = self.int_param("a")?;
        let b = self.int_param("b")?;
        let q = self.p("q")?;
        let m = m as i64;
        if m == 0 {
            return Ok(S::one());
        }
        let hi = m * (a * m + b);
        let lo = m * (a * m - b);
        let t = if hi % 2 == 0 && lo % 2 == 0 {
            q.powi(hi / 2) + q.powi(lo / 2)
        } else {
            let s = q.sqrt_opt().ok_or(Error::SqrtUnavailable)?;
            s.powi(hi) + s.powi(lo)
        };
        Ok(if m % 2 == 0 { t } else { -t })
    }

    /// Terms t₀ … t_N.
    pub fn terms(&self, n_max: usize) -> Result<Vec<S>> {
        if self.kind == SeriesKind::JacobiSeries {
            return (0..=n_max).map(|m| self.jacobi_term(m)).collect();
        }
        let mut out = Vec::with_capacity(n_max + 1);
        let mut t = self.first_term()?;
        out.push(t.clone());
        for n in 0..n_max {
            t = t * self.ratio(n)?;
            out.push(t.clone());
        }
        Ok(out)
    }
}

/// t_n, including sign, pivot power, and any fixed prefactor.
pub fn term<S: Scalar>(spec: &SeriesSpec<S>, n: usize) -> Result<S> {
    if spec.kind == SeriesKind::JacobiSeries {
        return spec.jacobi_term(n);
    }
    let mut t = spec.first_term()?;
    for k in 0..n {
        t = t * spec.ratio(k)?;
    }
    Ok(t)
}

/// S_N = Σ_{n=0}^{N} t_n, summed left to right.
pub fn partial_sum<S: Scalar>(spec: &SeriesSpec<S>, n_max: usize) -> Result<S> {
    let mut sum = S::zero();
    for t in spec.terms(n_max)? {
        sum = sum + t;
    }
    Ok(sum)
}

/// Partial sum with adaptive truncation: stops once |t_n| stays below the
/// working epsilon (used where fixed N would leave a visible tail).
pub fn adaptive_sum<S: Scalar>(spec: &SeriesSpec<S>, n_cap: usize) -> Result<S> {
    let eps = working_eps::<S>(4);
    let mut sum = spec.first_term()?;
    let mut t = sum.clone();
    for n in 0..n_cap {
        t = t * spec.ratio(n)?;
        sum = sum + t.clone();
        if t.abs() < eps {
            break;
        }
    }
    Ok(sum)
}

/// One factor family (1 + coeff·q^{modulus·k + residue}) for k = 0, 1, ….
#[derive(Clone, Debug)]
pub struct Factor<S> {
    pub coeff: S,
    pub modulus: u32,
    pub residue: u32,
    pub inverse: bool,
}

/// A truncatable product of residue-class factor families.
#[derive(Clone, Debug)]
pub struct ProductSpec<S> {
    pub factors: Vec<Factor<S>>,
}

impl<S: Scalar> ProductSpec<S> {
    /// ∏ (1 − q^{m·k+r}) families: `num` residues upstairs, `den` residues
    /// downstairs, all with the same modulus.
    pub fn residue_quotient(modulus: u32, num: &[u32], den: &[u32]) -> Self {
        let mk = |residue: &u32, inverse: bool| Factor {
            coeff: -S::one(),
            modulus,
            residue: *residue,
            inverse,
        };
        ProductSpec {
            factors: num
                .iter()
                .map(|r| mk(r, false))
                .chain(den.iter().map(|r| mk(r, true)))
                .collect(),
        }
    }

    /// Same layout with (1 + q^{…}) factors.
    pub fn plus_residue_quotient(modulus: u32, num: &[u32], den: &[u32]) -> Self {
        let mut spec = Self::residue_quotient(modulus, num, den);
        for f in &mut spec.factors {
            f.coeff = S::one();
        }
        spec
    }

    fn factor_value(&self, f: &Factor<S>, q: &S, k: usize) -> S {
        let e = f.modulus as i64 * k as i64 + f.residue as i64;
        S::one() + f.coeff.clone() * q.powi(e)
    }

    /// Product of the first `n_factors` factors of each residue class.
    pub fn truncated(&self, q: &S, n_factors: usize) -> Result<S> {
        let mut acc = S::one();
        for (i, f) in self.factors.iter().enumerate() {
            for k in 0..n_factors {
                let v = self.factor_value(f, q, k);
                if f.inverse {
                    if v.is_zero() {
                        return Err(Error::ZeroFactor(i));
                    }
                    acc = acc / v;
                } else {
                    if v.is_zero() {
                        return Err(Error::ZeroFactor(i));
                    }
                    acc = acc * v;
                }
            }
        }
        Ok(acc)
    }

    /// Largest |factor − 1| among the last factors taken, as a truncation
    /// quality report (no error bound is claimed near |q| → 1).
    pub fn last_factor_deviation(&self, q: &S, n_factors: usize) -> S {
        let mut worst = S::zero();
        if n_factors == 0 {
            return worst;
        }
        for f in &self.factors {
            let dev = (self.factor_value(f, q, n_factors - 1) - S::one()).abs();
            if dev > worst {
                worst = dev;
            }
        }
        worst
    }
}

/// Rogers-Ramanujan product ∏ (1−q^{5n+1})(1−q^{5n+4}) / (1−q^{5n+2})(1−q^{5n+3}).
pub fn rr_product<S: Scalar>() -> ProductSpec<S> {
    ProductSpec::residue_quotient(5, &[1, 4], &[2, 3])
}

/// Q∞ = ∏_{n≥1} (1+p^{2n−1})/(1+p^{2n}) from the triangular-series problem.
pub fn q_infinity_product<S: Scalar>() -> ProductSpec<S> {
    ProductSpec::plus_residue_quotient(2, &[1], &[2])
}

/// The Cauchy-identity product ∏ (1−αx q^n)/(1−x q^n).
pub fn cauchy_product<S: Scalar>(alpha: &S, x: &S) -> ProductSpec<S> {
    ProductSpec {
        factors: vec![
            Factor {
                coeff: -(alpha.clone() * x.clone()),
                modulus: 1,
                residue: 0,
                inverse: false,
            },
            Factor {
                coeff: -x.clone(),
                modulus: 1,
                residue: 0,
                inverse: true,
            },
        ],
    }
}

/// Right side of the Rogers-Fine identity, truncated at N terms.
pub fn rogers_fine_rhs<S: Scalar>(x: &S, q: &S, n_max: usize) -> Result<S> {
    let spec = SeriesSpec::new(
        SeriesKind::RogersFineRhs,
        &[("q", q.clone()), ("x", x.clone())],
    );
    partial_sum(&spec, n_max)
}

/// Right side of the Heine transformation: prefactor of truncated infinite
/// products times the transformed series to N terms. `gamma = None` (or
/// zero) selects the γ → 0 limit form, where (αβx/γ;q)_n(γ/β)^n degenerates
/// to (−αx)^n q^{n(n−1)/2}.
pub fn heine_transform_rhs<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: Option<&S>,
    q: &S,
    x: &S,
    n_max: usize,
) -> Result<S> {
    if beta.is_zero() {
        return Err(Error::Domain {
            name: "beta",
            reason: "beta = 0 makes gamma/beta undefined".into(),
        });
    }
    let gamma = gamma.filter(|g| !g.is_zero());
    let one = S::one;
    let bx = beta.clone() * x.clone();
    match gamma {
        Some(g) => {
            let gb = g.clone() / beta.clone();
            let prefactor = q_pochhammer_inf(&gb, q)? * q_pochhammer_inf(&bx, q)?
                / (q_pochhammer_inf(g, q)? * q_pochhammer_inf(x, q)?);
            let abxg = alpha.clone() * bx.clone() / g.clone();
            let mut sum = S::zero();
            let mut t = S::one();
            for n in 0..=n_max as i64 {
                sum = sum + t.clone();
                let den = (one() - bx.clone() * q.powi(n)) * (one() - q.powi(n + 1));
                if den.is_zero() {
                    return Err(Error::Pole(n as usize + 1));
                }
                t = t * (one() - beta.clone() * q.powi(n))
                    * (one() - abxg.clone() * q.powi(n))
                    * gb.clone()
                    / den;
            }
            Ok(prefactor * sum)
        }
        None => {
            let prefactor = q_pochhammer_inf(&bx, q)? / q_pochhammer_inf(x, q)?;
            let max = -(alpha.clone() * x.clone());
            let mut sum = S::zero();
            let mut t = S::one();
            for n in 0..=n_max as i64 {
                sum = sum + t.clone();
                let den = (one() - bx.clone() * q.powi(n)) * (one() - q.powi(n + 1));
                if den.is_zero() {
                    return Err(Error::Pole(n as usize + 1));
                }
                t = t * (one() - beta.clone() * q.powi(n)) * max.clone() * q.powi(n) / den;
            }
            Ok(prefactor * sum)
        }
    }
}

/// Left side ₂φ₁ partial sum, for cross-checks.
pub fn heine_lhs<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
    q: &S,
    x: &S,
    n_max: usize,
) -> Result<S> {
    let spec = SeriesSpec::new(
        SeriesKind::Heine2Phi1,
        &[
            ("alpha", alpha.clone()),
            ("beta", beta.clone()),
            ("gamma", gamma.clone()),
            ("q", q.clone()),
            ("x", x.clone()),
        ],
    );
    partial_sum(&spec, n_max)
}

/// Both sides of the specialized triple product
/// ∏ (1−q^{am})(1−q^{am−(a−b)/2})(1−q^{am−(a+b)/2}) =
/// 1 + Σ (−1)^m (q^{m(am+b)/2} + q^{m(am−b)/2}),
/// with exponents handled through √q when a and b have opposite parity.
pub fn jacobi_sides<S: Scalar>(a: i64, b: i64, q: &S, n_max: usize) -> Result<(S, S)> {
    if a <= 0 || b < 0 || b >= a {
        return Err(Error::Domain {
            name: "a",
            reason: "need a > b >= 0".into(),
        });
    }
    // work in units of q^{1/2} unless every exponent is integral
    let (base, unit) = if (a - b) % 2 == 0 {
        (q.clone(), 1)
    } else {
        (q.sqrt_opt().ok_or(Error::SqrtUnavailable)?, 2)
    };
    let mut product = S::one();
    for m in 1..=n_max as i64 {
        let exps = if unit == 1 {
            [a * m, a * m - (a - b) / 2, a * m - (a + b) / 2]
        } else {
            [2 * a * m, 2 * a * m - (a - b), 2 * a * m - (a + b)]
        };
        for e in exps {
            product = product * (S::one() - base.powi(e));
        }
    }
    let mut series = S::one();
    for m in 1..=n_max as i64 {
        let hi = m * (a * m + b);
        let lo = m * (a * m - b);
        let t = if unit == 1 {
            base.powi(hi / 2) + base.powi(lo / 2)
        } else {
            base.powi(hi) + base.powi(lo)
        };
        series = if m % 2 == 0 { series + t } else { series - t };
    }
    Ok((product, series))
}

/// The three eta-like coordinates on Klein's quartic curve.
#[derive(Clone, Debug)]
pub struct KleinCoordinates<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> KleinCoordinates<S> {
    /// x³y + y³z + z³x, which vanishes on the curve.
    pub fn residual(&self) -> S {
        let (x, y, z) = (&self.x, &self.y, &self.z);
        x.powi(3) * y.clone() + y.powi(3) * z.clone() + z.powi(3) * x.clone()
    }

    /// Residual scaled by |x|³|y| + |y|³|z| + |z|³|x|.
    pub fn relative_residual(&self) -> S {
        let (x, y, z) = (self.x.abs(), self.y.abs(), self.z.abs());
        let scale = x.powi(3) * y.clone() + y.powi(3) * z.clone() + z.powi(3) * x.clone();
        self.residual().abs() / scale
    }
}

/// Klein quartic coordinates at real q ∈ (0,1), with N-factor truncation of
/// each product and the fractional powers taken as real principal roots.
pub fn klein_coordinates<S: Scalar>(q: &S, n_factors: usize) -> Result<KleinCoordinates<S>> {
    let qf = q.to_f64();
    if !(qf > 0.0 && qf < 1.0) {
        return Err(Error::Domain {
            name: "q",
            reason: "need 0 < q < 1".into(),
        });
    }
    let root = q.nth_root_opt(7).ok_or(Error::SqrtUnavailable)?;
    // residues of each coordinate's product, modulus 7, k from 0
    let prod = |r1: u32, r2: u32| -> Result<S> {
        ProductSpec::residue_quotient(7, &[7, r1, r2], &[]).truncated(q, n_factors)
    };
    Ok(KleinCoordinates {
        x: -(root.powi(4) * prod(6, 1)?),
        y: root.powi(2) * prod(5, 2)?,
        z: root.clone() * prod(4, 3)?,
    })
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

    #[test]
    fn q_pochhammer_basics() {
        let q = rat(1, 3);
        assert_eq!(q_pochhammer(&rat(2, 5), &q, 0), Rat::one());
        assert_eq!(q_pochhammer(&Rat::one(), &q, 3), Rat::zero());
        assert_eq!(q_pochhammer(&rat(1, 2), &rat(1, 2), 2), rat(3, 8));
    }

    #[test]
    fn pochhammer_basics() {
        assert_eq!(pochhammer(&rat(7, 2), 0), Rat::one());
        assert_eq!(pochhammer(&Rat::from_i64(1), 5), Rat::from_i64(120));
        assert_eq!(pochhammer(&Rat::from_i64(-2), 3), Rat::zero());
    }

    #[test]
    fn term_examples() {
        let tri = SeriesSpec::new(SeriesKind::TriangularAlt, &[("q", Rat::from_i64(2))]);
        assert_eq!(term(&tri, 3).unwrap(), Rat::from_i64(-64));
        assert_eq!(term(&tri, 0).unwrap(), Rat::one());
        let wallis = SeriesSpec::new(
            SeriesKind::WallisAlt,
            &[("a", Rat::one()), ("x", Rat::one())],
        );
        assert_eq!(term(&wallis, 3).unwrap(), Rat::from_i64(-6));
    }

    #[test]
    fn partial_sum_single_term() {
        let spec = SeriesSpec::new(SeriesKind::GrRhs, &[("q", rat(1, 2))]);
        assert_eq!(partial_sum(&spec, 0).unwrap(), rat(1, 2));
    }

    #[test]
    fn gauss1_brackets() {
        let spec = SeriesSpec::new(SeriesKind::Gauss1P, &[("p", real("0.5"))]);
        let s100 = partial_sum(&spec, 100).unwrap();
        let s101 = partial_sum(&spec, 101).unwrap();
        assert!((s100 - real("1.0759457568")).abs() < real("1e-9"));
        assert!((s101 - real("-0.2208954963")).abs() < real("1e-9"));
    }

    #[test]
    fn q_infinity_golden() {
        let p = real("0.5");
        let qinf = q_infinity_product::<Real>().truncated(&p, 100).unwrap();
        assert!((qinf - real("1.296841253")).abs() < real("1e-8"));
        // all factors are 1 at q=0
        let at_zero = q_infinity_product::<Rat>()
            .truncated(&Rat::zero(), 100)
            .unwrap();
        assert_eq!(at_zero, Rat::one());
    }

    #[test]
    fn rr_product_golden() {
        let v = rr_product::<Real>().truncated(&real("0.5"), 100).unwrap();
        assert!((v - real("0.7099166943")).abs() < real("1e-9"));
    }

    #[test]
    fn zero_factor_reported() {
        // q = 1 makes (1 - q^k) vanish
        let err = rr_product::<Rat>().truncated(&Rat::one(), 3).unwrap_err();
        assert!(matches!(err, Error::ZeroFactor(_)));
    }

    #[test]
    fn rogers_fine_identity() {
        // x = 0: only the n = 0 term survives
        let one = rogers_fine_rhs(&Rat::zero(), &rat(1, 3), 50).unwrap();
        assert_eq!(one, Rat::one());
        // x = -1, q = 0.5 against the triangular-series left side
        let q = real("0.5");
        let rhs = rogers_fine_rhs(&-Real::one(), &q, 100).unwrap();
        let lhs = partial_sum(
            &SeriesSpec::new(SeriesKind::TriangularAlt, &[("q", q.clone())]),
            200,
        )
        .unwrap();
        assert!((rhs - lhs).abs() < real("1e-25"));
        // the squares p-form golden value
        let sq = partial_sum(
            &SeriesSpec::new(SeriesKind::SquaresRf, &[("q", real("0.5"))]),
            100,
        )
        .unwrap();
        assert!((sq - real("0.5605621040")).abs() < real("1e-9"));
    }

    #[test]
    fn heine_gr_limit_golden() {
        let q = real("0.5");
        let v = heine_transform_rhs(&q, &q, None, &q, &-Real::one(), 200).unwrap();
        assert!((v.clone() - real("0.7039282729")).abs() < real("1e-9"));
        // identical to the gr_rhs catalog series
        let gr = partial_sum(&SeriesSpec::new(SeriesKind::GrRhs, &[("q", q)]), 200).unwrap();
        assert!((v - gr).abs() < real("1e-25"));
    }

    #[test]
    fn heine_general_matches_lhs() {
        let (a, b, g) = (real("0.3"), real("0.5"), real("0.2"));
        let (q, x) = (real("0.4"), real("0.3"));
        let rhs = heine_transform_rhs(&a, &b, Some(&g), &q, &x, 200).unwrap();
        let lhs = heine_lhs(&a, &b, &g, &q, &x, 200).unwrap();
        assert!((rhs - lhs).abs() < real("1e-25"));
        // x = 0 collapses both sides to 1
        let at0 = heine_transform_rhs(&a, &b, Some(&g), &q, &Real::zero(), 200).unwrap();
        assert!((at0 - Real::one()).abs() < real("1e-25"));
    }

    #[test]
    fn jacobi_sides_agree() {
        for (a, b, q) in [(5, 3, "0.5"), (5, 1, "0.3"), (4, 1, "0.5"), (6, 3, "0.7")] {
            let (p, s) = jacobi_sides(a, b, &real(q), 60).unwrap();
            assert!((p - s).abs() < real("1e-20"), "a={a} b={b} q={q}");
        }
        // q = 0: empty product and leading term only
        let (p, s) = jacobi_sides::<Rat>(5, 3, &Rat::zero(), 10).unwrap();
        assert_eq!(p, Rat::one());
        assert_eq!(s, Rat::one());
    }

    #[test]
    fn jacobi_series_kind_matches_sides() {
        let q = real("0.5");
        let spec = SeriesSpec::new(
            SeriesKind::JacobiSeries,
            &[
                ("a", Real::from_i64(5)),
                ("b", Real::from_i64(3)),
                ("q", q.clone()),
            ],
        );
        let series = partial_sum(&spec, 60).unwrap();
        let (_, s) = jacobi_sides(5, 3, &q, 60).unwrap();
        assert!((series - s).abs() < real("1e-28"));
    }

    #[test]
    fn klein_residual_small() {
        for q in ["0.2", "0.5", "0.8"] {
            let c = klein_coordinates(&real(q), 400).unwrap();
            assert!(c.relative_residual() < real("1e-25"), "q={q}");
        }
        let c = klein_coordinates(&real("0.7"), 200).unwrap();
        assert!(c.relative_residual() < real("1e-25"));
        assert!(klein_coordinates(&real("1.5"), 10).is_err());
    }

    #[test]
    fn cauchy_product_matches_series() {
        let (alpha, q, x) = (real("0.3"), real("0.6"), real("0.4"));
        let product = cauchy_product(&alpha, &x).truncated(&q, 300).unwrap();
        let series = adaptive_sum(
            &SeriesSpec::new(
                SeriesKind::Cauchy1Phi0,
                &[("alpha", alpha), ("q", q), ("x", x)],
            ),
            600,
        )
        .unwrap();
        assert!((product - series).abs() < real("1e-26"));
    }

    #[test]
    fn last_factor_deviation_reported() {
        let q = real("0.5");
        let spec = rr_product::<Real>();
        let dev = spec.last_factor_deviation(&q, 20);
        assert!(dev > Real::zero() && dev < real("1e-25"));
    }

    #[test]
    fn catalog_names_roundtrip() {
        for kind in SeriesKind::ALL {
            assert_eq!(*kind, kind.name().parse().unwrap());
        }
        assert!(matches!(
            "nonsense".parse::<SeriesKind>(),
            Err(Error::UnknownKind(_))
        ));
    }
}
