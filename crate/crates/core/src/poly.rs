//! Exact sparse Laurent polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `Σ c_e · v^e` over exponent vectors `e ∈ Z^k`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl SparsePoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        Self { vars: vars.iter().map(|s| s.as_ref().to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let k = p.vars.len();
        p.add_term(vec![0; k], c.into());
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, 1)
    }

    /// The variable `vars[i]`.
    pub fn var<S: AsRef<str>>(vars: &[S], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, e, 1)
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(exps, c.into());
        p
    }

    /// Univariate polynomial `Σ coeffs[i] · v^i`.
    pub fn from_coefficients(var: &str, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(&[var]);
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(vec![i as i32], BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: BigInt) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Replaces every variable by a polynomial over `target`. Negative
    /// powers are only allowed for single-term images.
    pub fn compose<S: AsRef<str>>(&self, target: &[S], images: &[SparsePoly]) -> Result<Self> {
        if images.len() != self.vars.len() {
            return Err(Error::input("one image per variable is required"));
        }
        let target: Vec<String> = target.iter().map(|s| s.as_ref().to_string()).collect();
        for img in images {
            if img.vars != target {
                return Err(Error::input("images must share the target variables"));
            }
        }
        let mut cache: Vec<BTreeMap<i32, SparsePoly>> = vec![BTreeMap::new(); images.len()];
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if !cache[i].contains_key(&k) {
                    let p = images[i].power(k)?;
                    cache[i].insert(k, p);
                }
                term = &term * &cache[i][&k];
            }
            out += &term;
        }
        Ok(out)
    }

    /// `self^k` for any integer `k`; negative `k` needs a single term with a unit coefficient.
    pub fn power(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let (e, c) = match self.terms.iter().next() {
            Some((e, c)) if self.terms.len() == 1 && c.abs().is_one() => (e, c),
            _ => return Err(Error::input(format!("cannot invert {self}"))),
        };
        let k = -k;
        let sign = if c.is_negative() && k % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        Ok(Self::monomial(&self.vars, e.iter().map(|x| -x * k).collect(), sign))
    }

    /// Value at an integer point; variables carrying negative powers must sit at ±1.
    pub fn evaluate(&self, point: &[i64]) -> Result<BigInt> {
        if point.len() != self.vars.len() {
            return Err(Error::input("point has the wrong dimension"));
        }
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (&x, &k) in point.iter().zip(e) {
                if k < 0 {
                    if x.abs() != 1 {
                        return Err(Error::input("negative power at a non-unit value"));
                    }
                    if x == -1 && k % 2 != 0 {
                        t = -t;
                    }
                } else {
                    t *= BigInt::from(x).pow(k as u32);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Smallest and largest exponent of variable `i`.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = match c.to_i64() {
                    Some(v) => json!(v),
                    None => json!(c.to_string()),
                };
                json!([coeff, e])
            })
            .collect();
        json!({ "vars": self.vars, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::input("polynomial JSON must be {\"vars\": [...], \"terms\": [[coeff, [exps]], ...]}");
        let vars: Vec<String> = v
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_str().map(str::to_string).ok_or_else(bad))
            .collect::<Result<_>>()?;
        let mut p = Self::zero(&vars);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(bad)? {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let c: BigInt = match &pair[0] {
                Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(bad)?,
                Value::String(s) => s.parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            };
            let e: Vec<i32> = pair[1]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_i64().and_then(|k| i32::try_from(k).ok()).ok_or_else(bad))
                .collect::<Result<_>>()?;
            if e.len() != vars.len() {
                return Err(bad());
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn graded_desc(a: &[i32], b: &[i32]) -> Ordering {
        let da: i64 = a.iter().map(|&x| x as i64).sum();
        let db: i64 = b.iter().map(|&x| x as i64).sum();
        db.cmp(&da).then_with(|| b.cmp(a))
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<i32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| Self::graded_desc(a, b));
        let short = self.vars.iter().all(|v| v.chars().count() == 1);
        let sep = if short { "" } else { "*" };
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let mut mono = Vec::new();
            for (v, &k) in self.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => mono.push(v.clone()),
                    _ => mono.push(format!("{v}^{k}")),
                }
            }
            let mono = mono.join(sep);
            let body = if mono.is_empty() {
                c.abs().to_string()
            } else if c.abs().is_one() {
                mono
            } else {
                format!("{}{sep}{mono}", c.abs())
            };
            if c.is_negative() {
                out.push('-');
            } else if n > 0 {
                out.push('+');
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl AddAssign<&SparsePoly> for SparsePoly {
    fn add_assign(&mut self, rhs: &SparsePoly) {
        self.check_vars(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        self += &rhs;
        self
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.check_vars(rhs);
        let mut out = SparsePoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}
