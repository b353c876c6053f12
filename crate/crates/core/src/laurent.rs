//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! Exponents are stored doubled so that half-integer powers stay exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable counts differ: {0} vs {1}")]
    VariableCount(usize, usize),
    #[error("variable index {index} out of range for {vars} variables")]
    VariableIndex { index: usize, vars: usize },
    #[error("malformed term: {0}")]
    Term(String),
}

/// A Laurent polynomial in `h1..hk`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

/// The (sign, doubled exponent shift) relating two polynomials.
pub type Unit = (i8, Vec<i32>);

impl LaurentPoly {
    pub fn zero(vars: usize) -> Self {
        LaurentPoly { vars, terms: BTreeMap::new() }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vars, vec![0; vars], BigInt::one())
    }

    /// `coeff * h^(exp2 / 2)`.
    pub fn monomial(vars: usize, exp2: Vec<i32>, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(exp2.len(), vars, "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exp2, coeff.into());
        p
    }

    /// The variable `h_{i+1}`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 2;
        Self::monomial(vars, e, 1)
    }

    pub fn from_terms(vars: usize, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp2: Vec<i32>, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp2) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.vars)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp2: &[i32]) -> BigInt {
        self.terms.get(exp2).cloned().unwrap_or_default()
    }

    fn check_vars(&self, other: &Self) -> Result<(), LaurentError> {
        if self.vars != other.vars {
            return Err(LaurentError::VariableCount(self.vars, other.vars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { vars: self.vars, terms: acc })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_terms(self.vars, self.terms.iter().map(|(e, x)| (e.clone(), x * c)))
    }

    /// Multiplies by `h^(shift2 / 2)`.
    pub fn shift(&self, shift2: &[i32]) -> Self {
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(shift2).map(|(a, b)| a + b).collect(), c.clone())).collect();
        LaurentPoly { vars: self.vars, terms }
    }

    /// Sets every variable in `which` to 1. The variable count is kept.
    pub fn specialize_to_one(&self, which: &[usize]) -> Result<Self, LaurentError> {
        for &j in which {
            if j >= self.vars {
                return Err(LaurentError::VariableIndex { index: j, vars: self.vars });
            }
        }
        Ok(Self::from_terms(
            self.vars,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                for &j in which {
                    e[j] = 0;
                }
                (e, c.clone())
            }),
        ))
    }

    /// Value with every variable set to 1.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `h_j -> h_j^-1` for all `j`.
    pub fn invert_variables(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())).collect();
        LaurentPoly { vars: self.vars, terms }
    }

    /// Replaces `h_{i+1}` by the product of `n` consecutive new variables.
    pub fn merge_variables(&self, i: usize, n: usize) -> Result<Self, LaurentError> {
        if i >= self.vars || n == 0 {
            return Err(LaurentError::VariableIndex { index: i, vars: self.vars });
        }
        let vars = self.vars + n - 1;
        Ok(Self::from_terms(
            vars,
            self.terms.iter().map(|(e, c)| {
                let mut out = e[..i].to_vec();
                out.extend(std::iter::repeat_n(e[i], n));
                out.extend_from_slice(&e[i + 1..]);
                (out, c.clone())
            }),
        ))
    }

    /// Places the variables at `offset..offset + self.vars` of a ring with
    /// `vars` variables.
    pub fn embed(&self, vars: usize, offset: usize) -> Self {
        assert!(offset + self.vars <= vars, "embedding out of range");
        Self::from_terms(
            vars,
            self.terms.iter().map(|(e, c)| {
                let mut out = vec![0; vars];
                out[offset..offset + self.vars].copy_from_slice(e);
                (out, c.clone())
            }),
        )
    }

    /// Renames variable `j` to `perm[j]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        Self::from_terms(
            self.vars,
            self.terms.iter().map(|(e, c)| {
                let mut out = vec![0; self.vars];
                for (j, &x) in e.iter().enumerate() {
                    out[perm[j]] = x;
                }
                (out, c.clone())
            }),
        )
    }

    /// The unique `(sign, shift2)` with `self = sign * h^(shift2/2) * other`.
    pub fn equal_up_to_unit(&self, other: &Self) -> Option<Unit> {
        if self.vars != other.vars || self.len() != other.len() {
            return None;
        }
        if self.is_zero() {
            return Some((1, vec![0; self.vars]));
        }
        let (ea, ca) = self.terms.iter().next_back().unwrap();
        let (eb, cb) = other.terms.iter().next_back().unwrap();
        let sign: i8 = if ca == cb {
            1
        } else if *ca == -cb {
            -1
        } else {
            return None;
        };
        let shift: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a - b).collect();
        let candidate = other.shift(&shift).scale(&BigInt::from(sign));
        (candidate == *self).then_some((sign, shift))
    }

    /// Exact quotient in the Laurent ring, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.vars != divisor.vars || divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.vars));
        }
        let (lq, cq) = divisor.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        // per-variable exponent box that any exact quotient lives in
        let range = |p: &Self, j: usize| {
            let it = p.terms.keys().map(|e| e[j]);
            (it.clone().min().unwrap(), it.max().unwrap())
        };
        let bounds: Vec<(i32, i32)> = (0..self.vars)
            .map(|j| {
                let (plo, phi) = range(self, j);
                let (qlo, qhi) = range(divisor, j);
                (plo - qhi, phi - qlo)
            })
            .collect();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((lr, cr)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let (c, r) = cr.div_rem(&cq);
            if !r.is_zero() {
                return None;
            }
            let e: Vec<i32> = lr.iter().zip(&lq).map(|(a, b)| a - b).collect();
            if e.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let m = Self::monomial(self.vars, e, c);
            rem = &rem - &(&m * divisor);
            quot = &quot + &m;
        }
        Some(quot)
    }

    /// Whether some exponent is a proper half-integer.
    pub fn has_half_integer_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|x| x.rem_euclid(2) != 0))
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms.iter().map(|(e, c)| TermJson { exp2: e.clone(), coeff: c.to_string() }).collect()
    }

    pub fn from_json(vars: usize, terms: &[TermJson]) -> Result<Self, LaurentError> {
        let mut p = Self::zero(vars);
        for t in terms {
            if t.exp2.len() != vars {
                return Err(LaurentError::Term(format!("exponent vector {:?} for {vars} variables", t.exp2)));
            }
            let c: BigInt = t.coeff.parse().map_err(|_| LaurentError::Term(t.coeff.clone()))?;
            p.add_term(t.exp2.clone(), c);
        }
        Ok(p)
    }
}

/// JSON form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp2: Vec<i32>,
    pub coeff: String,
}

impl<'a> Add for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable counts agree")
    }
}

impl<'a> Sub for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_add(&-rhs).expect("variable counts agree")
    }
}

impl<'a> Mul for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable counts agree")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        LaurentPoly { vars: self.vars, terms }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn fmt_exp(e2: i32) -> String {
    if e2 % 2 == 0 {
        (e2 / 2).to_string()
    } else {
        format!("{e2}/2")
    }
}

/// Terms are written by descending total degree, ties in ascending
/// lexicographic order of the exponents: `h1^-1 + h2^-1 - h1^-1*h2^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (-e.iter().sum::<i32>(), (*e).clone()));
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| if x == 2 { format!("h{}", j + 1) } else { format!("h{}^{}", j + 1, fmt_exp(x)) })
                .collect();
            let negative = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({self})", self.vars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[i32], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(e.len(), e.to_vec(), c)
    }

    fn clasp1() -> LaurentPoly {
        &(&mono(&[-2, 0], 1) + &mono(&[0, -2], 1)) - &mono(&[-2, -2], 1)
    }

    #[test]
    fn rendering() {
        assert_eq!(clasp1().to_string(), "h1^-1 + h2^-1 - h1^-1*h2^-1");
        assert_eq!((&(&mono(&[-2], 1) + &mono(&[2], 1)) - &mono(&[0], 1)).to_string(), "h1 - 1 + h1^-1");
        assert_eq!(LaurentPoly::one(2).to_string(), "1");
        assert_eq!(LaurentPoly::zero(1).to_string(), "0");
        assert_eq!(mono(&[1, 4], -3).to_string(), "-3*h1^1/2*h2^2");
        assert_eq!(mono(&[2], 1).to_string(), "h1");
    }

    #[test]
    fn negation_cancels() {
        let p = clasp1();
        assert!((&p + &-&p).is_zero());
        assert_eq!(&LaurentPoly::one(2) * &p, p);
    }

    #[test]
    fn specialization() {
        let p = clasp1();
        assert!(p.specialize_to_one(&[1]).unwrap().is_one());
        assert_eq!(p.specialize_to_one(&[]).unwrap(), p);
        assert!(p.specialize_to_one(&[2]).is_err());
        assert_eq!(p.eval_at_one(), BigInt::one());
    }

    #[test]
    fn invert_and_merge() {
        assert!(LaurentPoly::one(3).invert_variables().is_one());
        let p = clasp1();
        assert_eq!(p.invert_variables().to_string(), "-h1*h2 + h2 + h1");
        let m = p.merge_variables(1, 2).unwrap();
        assert_eq!(m.to_string(), "h1^-1 + h2^-1*h3^-1 - h1^-1*h2^-1*h3^-1");
        assert!(p.merge_variables(2, 2).is_err());
    }

    #[test]
    fn units() {
        let p = clasp1();
        assert_eq!(p.equal_up_to_unit(&p), Some((1, vec![0, 0])));
        let q = -(&mono(&[2, 0], 1) * &p);
        assert_eq!(q.equal_up_to_unit(&p), Some((-1, vec![2, 0])));
        assert_eq!(p.equal_up_to_unit(&p.invert_variables()), None);
    }

    #[test]
    fn exact_division() {
        let a = &mono(&[2], 1) - &LaurentPoly::one(1);
        let b = &(&mono(&[2], 1) + &mono(&[-2], 1)) - &LaurentPoly::one(1);
        assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(LaurentPoly::zero(1).div_exact(&a), Some(LaurentPoly::zero(1)));
    }

    #[test]
    fn json_round_trip() {
        let p = clasp1();
        let js = serde_json::to_string(&p.to_json()).unwrap();
        assert!(js.contains("\"coeff\":\"-1\""));
        let back: Vec<TermJson> = serde_json::from_str(&js).unwrap();
        assert_eq!(LaurentPoly::from_json(2, &back).unwrap(), p);
    }

    fn poly(vars: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, vars), -3i64..=3), 0..5)
            .prop_map(move |ts| LaurentPoly::from_terms(vars, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn specialization_is_a_ring_map(a in poly(2), b in poly(2)) {
            let s = |p: &LaurentPoly| p.specialize_to_one(&[0]).unwrap();
            prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        }

        #[test]
        fn inversion_is_an_involution(a in poly(3)) {
            prop_assert_eq!(a.invert_variables().invert_variables(), a);
        }

        #[test]
        fn units_are_symmetric(a in poly(2), e in prop::collection::vec(-4i32..=4, 2), neg in any::<bool>()) {
            let b = a.shift(&e).scale(&BigInt::from(if neg { -1 } else { 1 }));
            let (s, sh) = b.equal_up_to_unit(&a).unwrap();
            let (s2, sh2) = a.equal_up_to_unit(&b).unwrap();
            prop_assert_eq!(s, s2);
            if !a.is_zero() {
                prop_assert_eq!(&sh, &e);
                prop_assert_eq!(sh2.iter().map(|x| -x).collect::<Vec<_>>(), sh);
            }
        }

        #[test]
        fn division_inverts_multiplication(a in poly(2), b in poly(2)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }
    }
}
