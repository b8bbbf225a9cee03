//! Sparse multivariate polynomials over the exact scalar field in the n+2
//! coordinates x^0 .. x^{n+1}. Ring operations, formal differentiation, and
//! origin evaluation; terms are kept in graded-lex order so serialized
//! output is byte-stable.

use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

const MAX_EXPONENT: u32 = 1 << 20; // overflow guard; degrees in scope stay tiny

/// Exponent vector with graded-lex ordering.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>, // no zero coefficients stored
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; nvars]), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    /// The coordinate x^var.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars);
        let mut exps = vec![0; nvars];
        exps[var] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial(exps), Scalar::one());
        p
    }

    /// c * x^v1 * x^v2 * ... with repeats allowed.
    pub fn monomial(nvars: usize, c: Scalar, vars: &[usize]) -> Self {
        if c.is_zero() {
            return Poly::zero(nvars);
        }
        let mut exps = vec![0u32; nvars];
        for &v in vars {
            assert!(v < nvars);
            exps[v] += 1;
        }
        let mut p = Poly::zero(nvars);
        p.terms.insert(Monomial(exps), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        for (m, c) in &rhs.terms {
            self.insert_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let exps: Vec<u32> = ma
                    .0
                    .iter()
                    .zip(&mb.0)
                    .map(|(&x, &y)| {
                        let e = x + y;
                        assert!(e < MAX_EXPONENT, "exponent overflow");
                        e
                    })
                    .collect();
                out.insert_term(Monomial(exps), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Adds `s * p` into self.
    pub fn add_scaled(&mut self, p: &Poly, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &p.terms {
            self.insert_term(m.clone(), c * s);
        }
    }

    /// Formal partial derivative with respect to x^var.
    pub fn partial(&self, var: usize) -> Poly {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] = e - 1;
            out.insert_term(Monomial(exps), c * &Scalar::from_int(e as i64));
        }
        out
    }

    /// The constant term, i.e. the value at the origin.
    pub fn eval_origin(&self) -> Scalar {
        self.terms
            .get(&Monomial(vec![0; self.nvars]))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[v] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter_map(|(v, &s)| s.then_some(v))
            .collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// LaTeX rendering with coordinates named x^0 .. x^{n+1}.
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // highest terms first reads better
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = c.to_string();
            let is_const = m.total_degree() == 0;
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i > 0 || sign == "-" {
                out.push_str(sign);
            }
            let coeff = if mag == "1" && !is_const { String::new() } else { mag };
            out.push_str(&coeff.replace("*sqrt3", "\\sqrt{3}"));
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push_str(&format!("x^{{{v}}}")),
                    _ => out.push_str(&format!("(x^{{{v}}})^{{{e}}}")),
                }
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: String = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| {
                        if e == 1 {
                            format!("x{v}")
                        } else {
                            format!("x{v}^{e}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*");
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{vars}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Serialized term list: graded-lex order, rational-string coefficients.
#[derive(Serialize, Deserialize)]
pub struct PolyRepr {
    pub nvars: usize,
    pub terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
pub struct TermRepr {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl From<&Poly> for PolyRepr {
    fn from(p: &Poly) -> Self {
        PolyRepr {
            nvars: p.nvars,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    coeff: c.to_string(),
                    exps: m.0.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&PolyRepr> for Poly {
    type Error = crate::scalar::ParseScalarError;

    fn try_from(r: &PolyRepr) -> Result<Self, Self::Error> {
        let mut p = Poly::zero(r.nvars);
        for t in &r.terms {
            let mut exps = t.exps.clone();
            exps.resize(r.nvars, 0);
            p.insert_term(Monomial(exps), t.coeff.parse()?);
        }
        Ok(p)
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PolyRepr::from(self).serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(de)?;
        Poly::try_from(&repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(4, v)
    }

    #[test]
    fn arithmetic_basics() {
        let sq = x(1).mul(&x(1));
        assert_eq!(sq.degree_in(1), 2);
        assert!(x(1).add(&x(1).neg()).is_zero());
        // (x1 + x2)(x1 - x2) = x1^2 - x2^2, by hand expansion
        let lhs = x(1).add(&x(2)).mul(&x(1).sub(&x(2)));
        let rhs = x(1).mul(&x(1)).sub(&x(2).mul(&x(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_derivatives() {
        // d/dx1 of x1^2 x3 = 2 x1 x3
        let p = x(1).mul(&x(1)).mul(&x(3));
        let expected = Poly::monomial(4, Scalar::from_int(2), &[1, 3]);
        assert_eq!(p.partial(1), expected);
        assert!(x(1).partial(0).is_zero());
        // power rule on x3^5
        let mut pw = Poly::one(4);
        for _ in 0..5 {
            pw = pw.mul(&x(3));
        }
        assert_eq!(pw.partial(3), Poly::monomial(4, Scalar::from_int(5), &[3, 3, 3, 3]));
    }

    #[test]
    fn eval_origin_cases() {
        let p = Poly::constant(4, Scalar::from_int(3)).add(&x(1));
        assert_eq!(p.eval_origin(), Scalar::from_int(3));
        assert_eq!(x(1).mul(&x(2)).eval_origin(), Scalar::zero());
    }

    #[test]
    fn partials_commute() {
        let p = x(0).mul(&x(1)).mul(&x(1)).add(&x(2).mul(&x(3)));
        assert_eq!(p.partial(0).partial(1), p.partial(1).partial(0));
    }

    #[test]
    fn leibniz() {
        let p = x(1).mul(&x(2)).add(&Poly::constant(4, Scalar::from_int(5)));
        let q = x(1).add(&x(3));
        let lhs = p.mul(&q).partial(1);
        let rhs = p.partial(1).mul(&q).add(&p.mul(&q.partial(1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_is_ring_hom() {
        let p = Poly::constant(4, Scalar::from_int(2)).add(&x(1));
        let q = Poly::constant(4, Scalar::from_int(-3)).add(&x(2));
        assert_eq!(
            p.mul(&q).eval_origin(),
            p.eval_origin() * q.eval_origin()
        );
    }

    #[test]
    fn serde_roundtrip() {
        let p = x(0)
            .mul(&x(1))
            .scale(&Scalar::ratio(2, 3))
            .add(&x(3).scale(&Scalar::sqrt3_ratio(-1, 2)));
        let json = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
