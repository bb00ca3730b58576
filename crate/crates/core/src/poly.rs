//! Homogeneous polynomials and divisibility by an indefinite quadratic.
//!
//! For indefinite `q`, a homogeneous `r` vanishes on the real null cone of
//! `q` exactly when `q` divides `r`. Division by a single polynomial is a
//! complete divisibility test, so the verdict comes from the remainder
//! alone. Sampling only supplies a concrete real witness for humans.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::containment::{require_indefinite, verify_witness, WitnessVector};
use crate::error::{Error, Result};
use crate::form::{CongruenceDiagonalization, QuadraticForm};
use crate::scalar::{QuadExt, Rational};

pub type Exponent = Vec<u32>;

/// A polynomial whose terms all have total degree `degree`.
///
/// Terms are keyed by exponent vector. Since every key has the same total
/// degree, the lexicographic `BTreeMap` order coincides with graded lex
/// order (x₁ > x₂ > …), so the leading term is the last entry.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl HomogeneousPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = HomogeneousPoly::zero(nvars, 0);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials. Every exponent vector must have length `nvars`
    /// and total `degree`.
    pub fn from_terms(
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> Result<Self> {
        let mut p = HomogeneousPoly::zero(nvars, degree);
        for (exp, c) in terms {
            if exp.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: exp.len(),
                });
            }
            let total: u32 = exp.iter().sum();
            if total != degree {
                return Err(Error::Parse(format!(
                    "monomial {exp:?} has degree {total}, expected {degree}"
                )));
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    /// `Σ Qᵢᵢ xᵢ² + Σ_{i<j} 2Qᵢⱼ xᵢxⱼ`.
    pub fn from_form(q: &QuadraticForm) -> Self {
        let n = q.dim();
        let mut p = HomogeneousPoly::zero(n, 2);
        for i in 0..n {
            for j in i..n {
                let mut exp = vec![0; n];
                exp[i] += 1;
                exp[j] += 1;
                let c = if i == j {
                    q.entry(i, i).clone()
                } else {
                    q.entry(i, j) * Rational::from_int(2)
                };
                p.add_term(exp, c);
            }
        }
        p
    }

    fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let mut p = HomogeneousPoly::zero(self.nvars, self.degree);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), c * k);
        }
        p
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        self.check_vars(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, xi)| (0..k).fold(acc, |a, _| a * xi))
            })
            .sum())
    }

    pub fn evaluate_ext(&self, x: &[QuadExt]) -> Result<QuadExt> {
        self.check_vars(x.len())?;
        let t = x
            .iter()
            .find(|v| !v.rad.is_zero())
            .or(x.first())
            .map(|v| v.t().clone())
            .unwrap_or_else(Rational::one);
        let one = QuadExt::rational(Rational::one(), &t);
        // powers[i][k] = x_i^k
        let mut powers: Vec<Vec<QuadExt>> = Vec::with_capacity(x.len());
        for xi in x {
            let mut pw = vec![one.clone()];
            for _ in 0..self.degree {
                let next = pw.last().expect("nonempty").try_mul(xi)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = QuadExt::rational(Rational::zero(), &t);
        for (e, c) in &self.terms {
            let mut term = QuadExt::rational(c.clone(), &t);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.try_mul(&powers[i][k as usize])?;
                }
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    fn check_vars(&self, n: usize) -> Result<()> {
        if n != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: n,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.check_vars(other.nvars)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut p = HomogeneousPoly::zero(self.nvars, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        Ok(p)
    }

    /// Sum of two polynomials of the same degree (a zero operand adopts the
    /// other's degree).
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let degree = if self.is_zero() {
            other.degree
        } else {
            self.degree
        };
        if !self.is_zero() && !other.is_zero() && self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree as usize,
                found: other.degree as usize,
            });
        }
        let mut p = self.clone();
        p.degree = degree;
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&Rational::from_int(-1)))
    }
}

impl Add for &HomogeneousPoly {
    type Output = HomogeneousPoly;
    fn add(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self.try_add(rhs).expect("compatible polynomials")
    }
}

impl Sub for &HomogeneousPoly {
    type Output = HomogeneousPoly;
    fn sub(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self.try_sub(rhs).expect("compatible polynomials")
    }
}

impl Mul for &HomogeneousPoly {
    type Output = HomogeneousPoly;
    fn mul(self, rhs: &HomogeneousPoly) -> HomogeneousPoly {
        self.try_mul(rhs).expect("compatible polynomials")
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, p)
                    }
                })
                .collect();
            let (sign, abs) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if monomial.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{abs}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: HomogeneousPoly,
    pub remainder: HomogeneousPoly,
}

/// Divides `r` by the quadratic `q` under graded lex order.
///
/// For `r` of degree below 2 nothing can be cancelled: the quotient is the
/// zero polynomial and the remainder is `r`.
pub fn reduce_by_quadratic(r: &HomogeneousPoly, q: &HomogeneousPoly) -> Result<DivisionResult> {
    if q.degree != 2 {
        return Err(Error::DegreeMismatch(q.degree as usize));
    }
    r.check_compatible(q)?;
    let (lead_exp, lead_coef) = match q.leading_term() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => return Err(Error::Unsupported("division by the zero polynomial".into())),
    };
    let qdeg = r.degree.saturating_sub(2);
    let mut quotient = HomogeneousPoly::zero(r.nvars, qdeg);
    let mut remainder = HomogeneousPoly::zero(r.nvars, r.degree);
    let mut running = r.clone();

    while let Some((exp, coef)) = running.terms.pop_last() {
        let divisible = r.degree >= 2 && exp.iter().zip(&lead_exp).all(|(a, b)| a >= b);
        if !divisible {
            remainder.add_term(exp, coef);
            continue;
        }
        let m: Exponent = exp.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
        let c = &coef / &lead_coef;
        for (qe, qc) in q.terms.iter() {
            if qe == &lead_exp {
                continue;
            }
            let e: Exponent = m.iter().zip(qe).map(|(a, b)| a + b).collect();
            running.add_term(e, -(&c * qc));
        }
        quotient.add_term(m, c);
    }
    Ok(DivisionResult {
        quotient,
        remainder,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneousVerdict {
    /// `r = q · s`.
    Divisible(HomogeneousPoly),
    /// A real cone point where `r ≠ 0`.
    Witness(WitnessVector),
    /// `q` does not divide `r` (the nonzero remainder certifies it), but no
    /// sampled cone point hit `r ≠ 0` within the budget.
    NonDivisibleWitnessBudgetExhausted { remainder: HomogeneousPoly },
}

pub const DEFAULT_BUDGET: usize = 1000;
pub const DEFAULT_SEED: u64 = 0;

pub fn decide_containment_homogeneous(
    q: &QuadraticForm,
    r: &HomogeneousPoly,
    budget: usize,
    seed: u64,
) -> Result<HomogeneousVerdict> {
    if r.nvars != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: r.nvars,
        });
    }
    let diag = require_indefinite(q)?;
    let division = reduce_by_quadratic(r, &HomogeneousPoly::from_form(q))?;
    if division.remainder.is_zero() {
        return Ok(HomogeneousVerdict::Divisible(division.quotient));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let Some(point) = sample_cone_point(&diag, &mut rng) else {
            continue;
        };
        let r_value = r.evaluate_ext(&point)?;
        if r_value.is_zero() {
            continue;
        }
        let q_value = q.evaluate_ext(&point)?;
        debug_assert!(q_value.is_zero());
        let witness = WitnessVector {
            coords: point,
            q_value,
            r_value,
        };
        if verify_poly_witness(q, r, &witness)? {
            return Ok(HomogeneousVerdict::Witness(witness));
        }
    }
    Ok(HomogeneousVerdict::NonDivisibleWitnessBudgetExhausted {
        remainder: division.remainder,
    })
}

/// Recomputes `q = 0` and `r ≠ 0` at the witness. For quadratic `r` this
/// is [`verify_witness`].
pub fn verify_poly_witness(
    q: &QuadraticForm,
    r: &HomogeneousPoly,
    w: &WitnessVector,
) -> Result<bool> {
    if r.degree == 2 {
        if let Some(rf) = form_from_quadratic(r) {
            return verify_witness(q, &rf, w);
        }
    }
    Ok(q.evaluate_ext(&w.coords)?.is_zero() && !r.evaluate_ext(&w.coords)?.is_zero())
}

/// Inverse of [`HomogeneousPoly::from_form`] for degree-2 polynomials.
pub fn form_from_quadratic(p: &HomogeneousPoly) -> Option<QuadraticForm> {
    if p.degree != 2 {
        return None;
    }
    let n = p.nvars;
    let mut m = crate::matrix::Matrix::zeros(n, n);
    for (e, c) in &p.terms {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[(i, i)] = c.clone();
        } else {
            let half = c / &Rational::from_int(2);
            m[(i, j)] = half.clone();
            m[(j, i)] = half;
        }
    }
    QuadraticForm::new(m).ok()
}

/// Draws a null-cone point of `q` with coordinates in `Q(sqrt(t))`.
///
/// One negative index `j` is chosen at random and every other diagonal
/// coordinate gets a small random rational. `y_j` is then solved from
/// `Σ dᵢyᵢ² = 0`. Returns `None` (a wasted draw) when no positive
/// coordinate is nonzero or when the value under the root is negative.
pub fn sample_cone_point<R: Rng + ?Sized>(
    diag: &CongruenceDiagonalization,
    rng: &mut R,
) -> Option<Vec<QuadExt>> {
    let neg = diag.negative_indices();
    if diag.positive_indices().is_empty() || neg.is_empty() {
        return None;
    }
    let j = rng.gen_range(neg);
    let draws: Vec<Rational> = (0..diag.dim())
        .map(|i| {
            if i == j {
                Rational::zero()
            } else {
                Rational::new(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4))
            }
        })
        .collect();
    cone_point_from_draws(diag, j, &draws)
}

/// Deterministic core of [`sample_cone_point`]: the draw for index `j` is
/// ignored and replaced by the solved radical coordinate.
pub fn cone_point_from_draws(
    diag: &CongruenceDiagonalization,
    j: usize,
    draws: &[Rational],
) -> Option<Vec<QuadExt>> {
    if !diag.diag[j].is_negative() {
        return None;
    }
    if !diag.positive_indices().any(|i| !draws[i].is_zero()) {
        return None;
    }
    let weighted: Rational = draws
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(i, y)| &diag.diag[i] * &y.square())
        .sum();
    let radicand = weighted / -&diag.diag[j];
    if radicand.is_negative() {
        return None;
    }
    let y: Vec<QuadExt> = if radicand.is_zero() {
        draws
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = if i == j { Rational::zero() } else { v.clone() };
                QuadExt::rational(v, &Rational::one())
            })
            .collect()
    } else {
        draws
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if i == j {
                    QuadExt::new(Rational::zero(), Rational::one(), radicand.clone())
                        .expect("positive radicand")
                } else {
                    QuadExt::rational(v.clone(), &radicand)
                }
            })
            .collect()
    };
    diag.to_original(&y).ok()
}
