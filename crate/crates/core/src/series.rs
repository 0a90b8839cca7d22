//! Truncated generating functions of dimension sequences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Coeff;
use crate::error::{OperadError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    /// Exponential: coefficient of `t^n` is `dim(n) / n!`.
    Egf,
    /// Ordinary: coefficient of `t^n` is `dim(n)`.
    Ogf,
}

/// A power series without constant term, truncated after degree `coeffs.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    pub kind: SeriesKind,
    /// `coeffs[i]` is the coefficient of `t^(i+1)`.
    pub coeffs: Vec<Coeff>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl HilbertSeries {
    pub fn new(kind: SeriesKind, coeffs: Vec<Coeff>) -> Self {
        HilbertSeries { kind, coeffs }
    }

    pub fn from_dims(dims: &[i64], kind: SeriesKind) -> Result<Self> {
        if let Some(d) = dims.iter().find(|d| **d < 0) {
            return Err(OperadError::Series(format!("negative dimension {d}")));
        }
        let coeffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| match kind {
                SeriesKind::Egf => Coeff::new(d.into(), factorial(i + 1)),
                SeriesKind::Ogf => Coeff::from_integer(d.into()),
            })
            .collect();
        Ok(HilbertSeries { kind, coeffs })
    }

    pub fn from_usize_dims(dims: &[usize], kind: SeriesKind) -> Result<Self> {
        let v: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
        Self::from_dims(&v, kind)
    }

    /// The series `t`.
    pub fn identity(kind: SeriesKind, degree: usize) -> Self {
        let mut coeffs = vec![Coeff::zero(); degree];
        if degree > 0 {
            coeffs[0] = Coeff::one();
        }
        HilbertSeries { kind, coeffs }
    }

    /// `e^t - 1` as an exponential series.
    pub fn exp_minus_one(degree: usize) -> Self {
        HilbertSeries::from_dims(&vec![1; degree], SeriesKind::Egf).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> Coeff {
        if n == 0 || n > self.coeffs.len() {
            Coeff::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    /// Recovers `dim(n)`; exponential coefficients are multiplied by `n!`.
    pub fn dims(&self) -> Vec<Coeff> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match self.kind {
                SeriesKind::Egf => c * Coeff::from_integer(factorial(i + 1)),
                SeriesKind::Ogf => c.clone(),
            })
            .collect()
    }

    pub fn neg(&self) -> Self {
        HilbertSeries { kind: self.kind, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// `f(-t)`.
    pub fn negate_argument(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 0 { -c } else { c.clone() })
            .collect();
        HilbertSeries { kind: self.kind, coeffs }
    }

    /// `-f(-t)`.
    pub fn twisted(&self) -> Self {
        self.negate_argument().neg()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(OperadError::Series("series kinds differ".into()));
        }
        if self.degree() != other.degree() {
            return Err(OperadError::Series(format!(
                "truncation degrees differ ({} vs {})",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    fn mul_trunc(a: &[Coeff], b: &[Coeff], n: usize) -> Vec<Coeff> {
        // index i means degree i + 1; products start at degree 2
        let mut out = vec![Coeff::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let d = i + j + 2;
                if d > n {
                    break;
                }
                out[d - 1] += x * y;
            }
        }
        out
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &HilbertSeries) -> Result<HilbertSeries> {
        self.check_compatible(g)?;
        let n = self.degree();
        let mut out = vec![Coeff::zero(); n];
        let mut power = g.coeffs.clone();
        for k in 1..=n {
            let c = &self.coeffs[k - 1];
            if !c.is_zero() {
                for (o, p) in out.iter_mut().zip(&power) {
                    *o += c * p;
                }
            }
            if k < n {
                power = Self::mul_trunc(&power, &g.coeffs, n);
            }
        }
        Ok(HilbertSeries { kind: self.kind, coeffs: out })
    }

    /// The series `g` with `self(g(t)) = t` up to the truncation degree.
    pub fn comp_inverse(&self) -> Result<HilbertSeries> {
        let n = self.degree();
        if n == 0 {
            return Ok(self.clone());
        }
        let lead = self.coeffs[0].clone();
        if lead.is_zero() {
            return Err(OperadError::Series("linear coefficient is zero; no compositional inverse".into()));
        }
        let mut g = vec![Coeff::zero(); n];
        g[0] = lead.recip();
        for d in 2..=n {
            let trial = HilbertSeries { kind: self.kind, coeffs: g[..d].to_vec() };
            let f = HilbertSeries { kind: self.kind, coeffs: self.coeffs[..d].to_vec() };
            let c = f.compose(&trial)?.coeffs[d - 1].clone();
            g[d - 1] = -c / &lead;
        }
        Ok(HilbertSeries { kind: self.kind, coeffs: g })
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let deg = i + 1;
            let mono = if deg == 1 { "t".to_string() } else { format!("t^{deg}") };
            let abs = c.abs();
            let body = if abs.is_one() { mono } else { format!("{abs}*{mono}") };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignTest {
    pub passes: bool,
    pub first_negative_degree: Option<usize>,
    pub inverse: Vec<String>,
}

/// Inverts `t -> -f(-t)` and looks for a negative coefficient.
pub fn koszul_sign_test(f: &HilbertSeries) -> Result<SignTest> {
    if f.kind != SeriesKind::Egf {
        return Err(OperadError::Series("the sign test expects an exponential series".into()));
    }
    let inv = f.twisted().comp_inverse()?;
    let first = inv.coeffs.iter().position(|c| c.is_negative()).map(|i| i + 1);
    Ok(SignTest {
        passes: first.is_none(),
        first_negative_degree: first,
        inverse: inv.coeffs.iter().map(|c| c.to_string()).collect(),
    })
}

/// `f_{P!}(-f_P(-t)) = t` to the truncation degree.
pub fn dual_pair_identity(f_dual: &HilbertSeries, f: &HilbertSeries) -> Result<bool> {
    Ok(f_dual.compose(&f.twisted())?.is_identity())
}

/// `F = t + sum_n g_n F^n` for ordinary series `F` (dimensions) and `g` (generator counts).
pub fn free_nonsymmetric_identity(dims: &[usize], generators: &[usize]) -> Result<bool> {
    if dims.len() != generators.len() {
        return Err(OperadError::Series("truncation degrees differ".into()));
    }
    let f = HilbertSeries::from_usize_dims(dims, SeriesKind::Ogf)?;
    let g = HilbertSeries::from_usize_dims(generators, SeriesKind::Ogf)?;
    let rhs = g.compose(&f)?;
    let mut rhs = rhs.coeffs;
    if !rhs.is_empty() {
        rhs[0] += Coeff::one();
    }
    Ok(rhs == f.coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Left: `f_Q = f_P(f_K)`; right: `f_Q = f_K(f_P)`. `K` includes the unit.
pub fn verify_module_decomposition(
    p_dims: &[usize],
    k_dims: &[usize],
    q_dims: &[usize],
    kind: SeriesKind,
    side: Side,
) -> Result<bool> {
    let p = HilbertSeries::from_usize_dims(p_dims, kind)?;
    let k = HilbertSeries::from_usize_dims(k_dims, kind)?;
    let q = HilbertSeries::from_usize_dims(q_dims, kind)?;
    let composed = match side {
        Side::Left => p.compose(&k)?,
        Side::Right => k.compose(&p)?,
    };
    composed.check_compatible(&q)?;
    Ok(composed == q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    #[test]
    fn n2_series() {
        let f = HilbertSeries::from_dims(&[1, 2, 3, 0], SeriesKind::Egf).unwrap();
        assert_eq!(f.coeffs, vec![rat(1), rat(1), frac(1, 2), rat(0)]);
        assert_eq!(f.render(), "t + t^2 + 1/2*t^3");
        assert!(HilbertSeries::from_dims(&[1, -1], SeriesKind::Ogf).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let t = HilbertSeries::identity(SeriesKind::Egf, 6);
        assert_eq!(t.comp_inverse().unwrap(), t);
        let f = HilbertSeries::from_dims(&[1, 3, 7, 2, 9, 1], SeriesKind::Ogf).unwrap();
        let g = f.comp_inverse().unwrap();
        assert!(f.compose(&g).unwrap().is_identity());
        assert!(g.compose(&f).unwrap().is_identity());
        let zero = HilbertSeries::from_dims(&[0, 1], SeriesKind::Ogf).unwrap();
        assert!(zero.comp_inverse().is_err());
    }

    #[test]
    fn mixed_inputs_rejected() {
        let a = HilbertSeries::identity(SeriesKind::Egf, 4);
        let b = HilbertSeries::identity(SeriesKind::Ogf, 4);
        let c = HilbertSeries::identity(SeriesKind::Egf, 5);
        assert!(a.compose(&b).is_err());
        assert!(a.compose(&c).is_err());
    }

    #[test]
    fn sign_test() {
        let f = HilbertSeries::from_dims(&[1, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0], SeriesKind::Egf).unwrap();
        let r = koszul_sign_test(&f).unwrap();
        assert!(!r.passes);
        assert_eq!(r.first_negative_degree, Some(10));
        assert!(koszul_sign_test(&HilbertSeries::identity(SeriesKind::Egf, 8)).unwrap().passes);
        let ogf = HilbertSeries::identity(SeriesKind::Ogf, 3);
        assert!(koszul_sign_test(&ogf).is_err());
    }
}
