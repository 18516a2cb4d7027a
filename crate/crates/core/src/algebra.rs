//! Exact graded polynomial arithmetic.
//!
//! A [`GradedPoly`] lives in a [`Ring`]: an ordered list of formal variables,
//! each carrying a positive weight (its Chow degree), together with a
//! truncation degree. Terms whose weighted degree exceeds the truncation are
//! dropped by every operation, so a ring with truncation `d` models
//! `Q[x_1, ..., x_n] / (terms of degree > d)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Variable {
            name: name.into(),
            weight,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<Variable>,
    truncation: u32,
}

impl Ring {
    pub fn new(vars: Vec<Variable>, truncation: u32) -> Result<Arc<Ring>> {
        if let Some(v) = vars.iter().find(|v| v.weight == 0) {
            return Err(Error::Config(format!("variable {} has weight 0", v.name)));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Config(format!("duplicate variable {}", v.name)));
            }
        }
        Ok(Arc::new(Ring { vars, truncation }))
    }

    /// `prefix1, ..., prefixN`, all of weight one.
    pub fn uniform(prefix: &str, count: usize, truncation: u32) -> Arc<Ring> {
        let vars = (1..=count).map(|i| Variable::new(format!("{prefix}{i}"), 1)).collect();
        Arc::new(Ring { vars, truncation })
    }

    /// Chern classes `c1, ..., ce` where `ci` has weight `i`.
    pub fn chern_classes(rank: usize, truncation: u32) -> Arc<Ring> {
        let vars = (1..=rank).map(|i| Variable::new(format!("c{i}"), i as u32)).collect();
        Arc::new(Ring { vars, truncation })
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.vars).map(|(e, v)| e * v.weight).sum()
    }

    pub fn zero(self: &Arc<Self>) -> GradedPoly {
        GradedPoly {
            ring: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> GradedPoly {
        self.constant(Rational::one())
    }

    pub fn constant(self: &Arc<Self>, c: Rational) -> GradedPoly {
        self.monomial(&vec![0; self.nvars()], c)
    }

    /// The `i`-th variable (zero based).
    pub fn var(self: &Arc<Self>, i: usize) -> GradedPoly {
        let mut exps = vec![0; self.nvars()];
        exps[i] = 1;
        self.monomial(&exps, Rational::one())
    }

    /// `c * x^exps`, or zero if the monomial is above the truncation.
    pub fn monomial(self: &Arc<Self>, exps: &[u32], c: Rational) -> GradedPoly {
        assert_eq!(exps.len(), self.nvars(), "exponent vector length mismatch");
        let mut p = self.zero();
        let degree = self.weighted_degree(exps);
        if degree <= self.truncation && !c.is_zero() {
            p.terms.insert(Monomial::new(degree, exps), c);
        }
        p
    }
}

/// Exponent vector tagged with its weighted degree.
///
/// Ordered by degree first; inside one degree the lexicographically larger
/// exponent vector comes first, which is the canonical display order
/// (`c1^2` before `c2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    fn new(degree: u32, exps: &[u32]) -> Self {
        Monomial {
            degree,
            exps: exps.into(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct GradedPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn same_ring(&self, other: &GradedPoly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &GradedPoly) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "ring mismatch: {:?} (truncation {}) vs {:?} (truncation {})",
                self.ring.vars.iter().map(|v| &v.name).collect::<Vec<_>>(),
                self.ring.truncation,
                other.ring.vars.iter().map(|v| &v.name).collect::<Vec<_>>(),
                other.ring.truncation
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.exps(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        let degree = self.ring.weighted_degree(exps);
        self.terms
            .get(&Monomial::new(degree, exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    /// Homogeneous component of weighted degree `degree`.
    pub fn part(&self, degree: u32) -> GradedPoly {
        GradedPoly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest weighted degree carrying a nonzero term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly> {
        self.check_ring(other)?;
        let trunc = self.ring.truncation;
        let n = self.ring.nvars();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        let mut exps = vec![0u32; n];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let degree = ma.degree + mb.degree;
                if degree > trunc {
                    continue;
                }
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = ma.exps[i] + mb.exps[i];
                }
                *acc.entry(Monomial::new(degree, &exps)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Ok(GradedPoly {
            ring: Arc::clone(&self.ring),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> GradedPoly {
        if c.is_zero() {
            return self.ring.zero();
        }
        GradedPoly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> GradedPoly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Truncated exponential `sum_j p^j / j!`.
    ///
    /// The constant term must vanish: the exponential of a nonzero rational
    /// is not rational.
    pub fn trunc_exp(&self) -> Result<GradedPoly> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain(format!(
                "exponential of a polynomial with nonzero constant term {}",
                self.constant_term()
            )));
        }
        let mut out = self.ring.one();
        let mut power = self.ring.one();
        let mut j: u32 = 0;
        loop {
            j += 1;
            power = (&power * self).scale(&rational(1, j as i64));
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out)
    }

    /// Image under the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[GradedPoly]) -> Result<GradedPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Config(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars(),
                images.len()
            )));
        }
        let target = match images.first() {
            Some(p) => Arc::clone(&p.ring),
            None => return Err(Error::Config("substitution from a ring without variables".into())),
        };
        for p in images {
            p.check_ring(&images[0])?;
        }
        let mut powers: HashMap<(usize, u32), GradedPoly> = HashMap::new();
        let mut out = target.zero();
        for (m, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                term = &term * pw;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Swap variables `i` and `j` (zero based).
    pub fn transpose_vars(&self, i: usize, j: usize) -> GradedPoly {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let mut exps = m.exps.to_vec();
            exps.swap(i, j);
            let degree = self.ring.weighted_degree(&exps);
            out.add_term(Monomial::new(degree, &exps), c.clone());
        }
        out
    }

    /// Re-express in another ring with the same variables and a truncation
    /// no larger than this one's.
    pub fn truncate_to(&self, ring: &Arc<Ring>) -> Result<GradedPoly> {
        if ring.vars != self.ring.vars {
            return Err(Error::Config("truncate_to: variable lists differ".into()));
        }
        Ok(GradedPoly {
            ring: Arc::clone(ring),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree <= ring.truncation)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a GradedPoly> for &'a GradedPoly {
            type Output = GradedPoly;

            /// Panics on a ring mismatch; use the `checked_*` form for
            /// operands of unknown provenance.
            fn $method(self, rhs: &'a GradedPoly) -> GradedPoly {
                self.$checked(rhs).expect("graded polynomial ring mismatch")
            }
        }

        impl $trait<GradedPoly> for GradedPoly {
            type Output = GradedPoly;

            fn $method(self, rhs: GradedPoly) -> GradedPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &GradedPoly {
    type Output = GradedPoly;

    fn neg(self) -> GradedPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;

    fn neg(self) -> GradedPoly {
        -&self
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<GradedPoly>]) -> Result<GradedPoly> {
    let n = m.len();
    if n == 0 {
        return Err(Error::domain("determinant of an empty matrix"));
    }
    if let Some(row) = m.iter().find(|row| row.len() != n) {
        return Err(Error::domain(format!(
            "determinant of a non-square matrix ({n} rows, a row of length {})",
            row.len()
        )));
    }
    for row in m {
        for p in row {
            p.check_ring(&m[0][0])?;
        }
    }
    let cols: Vec<usize> = (0..n).collect();
    Ok(cofactor(m, 0, &cols))
}

fn cofactor(m: &[Vec<GradedPoly>], row: usize, cols: &[usize]) -> GradedPoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = m[0][0].ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(m, row + 1, &rest);
        let term = entry * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Elementary symmetric polynomials `e_1, ..., e_n` of the variables of `ring`.
pub fn elementary_symmetric(ring: &Arc<Ring>) -> Vec<GradedPoly> {
    let n = ring.nvars();
    // e(t) = prod (1 + x_i t), tracked coefficientwise.
    let mut coeffs: Vec<GradedPoly> = vec![ring.one()];
    coeffs.extend((0..n).map(|_| ring.zero()));
    for i in 0..n {
        let x = ring.var(i);
        for k in (1..=i + 1).rev() {
            coeffs[k] = &coeffs[k] + &(&coeffs[k - 1] * &x);
        }
    }
    coeffs.remove(0);
    coeffs
}

/// Rewrite a symmetric polynomial in the roots `x_1, ..., x_e` as a
/// polynomial in their elementary symmetric functions `c_1, ..., c_e`.
///
/// Every variable of the input ring must have weight one. The output lives
/// in [`Ring::chern_classes`] with the input's truncation. Uses leading
/// monomial elimination in lex order.
pub fn to_chern_basis(p: &GradedPoly) -> Result<GradedPoly> {
    let ring = p.ring();
    if ring.vars.iter().any(|v| v.weight != 1) {
        return Err(Error::Config(
            "Chern-basis conversion expects root variables of weight 1".into(),
        ));
    }
    let e = ring.nvars();
    for i in 0..e.saturating_sub(1) {
        if p.transpose_vars(i, i + 1) != *p {
            return Err(Error::NotSymmetric(i + 1, i + 2));
        }
    }
    let target = Ring::chern_classes(e, ring.truncation);
    let elementary = elementary_symmetric(ring);
    let mut powers: HashMap<(usize, u32), GradedPoly> = HashMap::new();
    let mut rem = p.clone();
    let mut out = target.zero();
    while let Some((lead, c)) = rem
        .terms
        .iter()
        .max_by(|a, b| a.0.exps.cmp(&b.0.exps))
        .map(|(m, c)| (m.exps.to_vec(), c.clone()))
    {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::internal(format!(
                "leading monomial {lead:?} of a symmetric polynomial is not a partition"
            )));
        }
        let mut cexps = vec![0u32; e];
        let mut product = ring.constant(c.clone());
        for i in 0..e {
            let a = lead[i] - lead.get(i + 1).copied().unwrap_or(0);
            cexps[i] = a;
            if a > 0 {
                let pw = powers.entry((i, a)).or_insert_with(|| elementary[i].pow(a));
                product = &product * pw;
            }
        }
        out = &out + &target.monomial(&cexps, c);
        rem = &rem - &product;
    }
    Ok(out)
}

fn fmt_monomial(ring: &Ring, exps: &[u32]) -> String {
    ring.vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            if e == 1 {
                v.name.clone()
            } else {
                format!("{}^{}", v.name, e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Canonical rendering: graded-lex order, `p/q` rationals, e.g.
/// `3c1^2 - 5c2` or `1 + (1/2)c1^2`.
impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(&self.ring, &m.exps);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else if abs.is_integer() {
                write!(f, "{abs}{mono}")?;
            } else {
                write!(f, "({abs}){mono}")?;
            }
        }
        Ok(())
    }
}
