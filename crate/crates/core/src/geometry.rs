//! Numerical intersection models and Hilbert-polynomial coefficients.
//!
//! A base `X` of dimension `n` is described by a handful of intersection
//! numbers against the polarisation `ω`. On `Y = X × P¹` the bundle
//! `E_{α,β} = F(α) ⊕ G(β)` is modelled by formal Chern roots in the ring
//! `Q[ω, u, h]`, where `h` is the hyperplane class of `P¹` (`h² = 0`) and
//! `u` is a class on `X` with `ω^{n-1}·u = 1` carrying all first Chern
//! classes. Every pairing is read off that ring; no intersection number is
//! entered by hand.
//!
//! All Hilbert coefficients are divided by the rank of the Schur power,
//! which cancels in the Donaldson-Futaki invariant.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{integer, GradedPoly, Rational, Ring, Variable};
use crate::chern::{h_polynomials, A2Variant};
use crate::partitions::{kostka_weights, lr_decompose, schur_rank, Partition};
use crate::{Error, Result};

/// Polarised curve of genus `g` with `0 → F → E → G → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    pub genus: u32,
    pub rank: u32,
    #[serde(rename = "degE")]
    pub deg_e: i64,
    #[serde(rename = "rankF")]
    pub rank_f: u32,
    #[serde(rename = "degF")]
    pub deg_f: i64,
}

/// Polarised base of dimension `n`; degrees are taken against `ω^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseModel {
    pub dim: u32,
    #[serde(rename = "degX", with = "crate::serde_rational")]
    pub deg_x: Rational,
    #[serde(rename = "degKX", with = "crate::serde_rational")]
    pub deg_kx: Rational,
    pub rank: u32,
    #[serde(rename = "degE", with = "crate::serde_rational")]
    pub deg_e: Rational,
    #[serde(rename = "rankF")]
    pub rank_f: u32,
    #[serde(rename = "degF", with = "crate::serde_rational")]
    pub deg_f: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Model {
    Curve(CurveModel),
    Base(BaseModel),
}

fn check_ranks(rank: u32, rank_f: u32) -> Result<()> {
    if rank_f == 0 || rank_f >= rank {
        return Err(Error::domain(format!(
            "subbundle rank must satisfy 0 < f < e, got f={rank_f}, e={rank}"
        )));
    }
    Ok(())
}

impl CurveModel {
    pub fn validate(&self) -> Result<()> {
        check_ranks(self.rank, self.rank_f)
    }

    pub fn rank_g(&self) -> u32 {
        self.rank - self.rank_f
    }

    pub fn deg_g(&self) -> i64 {
        self.deg_e - self.deg_f
    }

    pub fn slope_e(&self) -> Rational {
        Rational::new(self.deg_e.into(), i64::from(self.rank).into())
    }

    pub fn slope_f(&self) -> Rational {
        Rational::new(self.deg_f.into(), i64::from(self.rank_f).into())
    }

    pub fn slope_g(&self) -> Rational {
        Rational::new(self.deg_g().into(), i64::from(self.rank_g()).into())
    }

    /// The same data seen as a one-dimensional base with `deg X = 1`.
    pub fn as_base(&self) -> BaseModel {
        BaseModel {
            dim: 1,
            deg_x: Rational::one(),
            deg_kx: integer(2 * i64::from(self.genus) - 2),
            rank: self.rank,
            deg_e: integer(self.deg_e),
            rank_f: self.rank_f,
            deg_f: integer(self.deg_f),
        }
    }
}

impl BaseModel {
    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::domain("base dimension must be at least 1"));
        }
        if self.deg_x <= Rational::zero() {
            return Err(Error::domain(format!("deg X must be positive, got {}", self.deg_x)));
        }
        check_ranks(self.rank, self.rank_f)
    }

    pub fn rank_g(&self) -> u32 {
        self.rank - self.rank_f
    }

    pub fn deg_g(&self) -> Rational {
        &self.deg_e - &self.deg_f
    }

    pub fn slope_e(&self) -> Rational {
        &self.deg_e / integer(self.rank)
    }

    pub fn slope_f(&self) -> Rational {
        &self.deg_f / integer(self.rank_f)
    }

    /// `μ(E) - μ(F)`.
    pub fn slope_gap(&self) -> Rational {
        self.slope_e() - self.slope_f()
    }
}

impl Model {
    pub fn validate(&self) -> Result<()> {
        match self {
            Model::Curve(c) => c.validate(),
            Model::Base(b) => b.validate(),
        }
    }

    pub fn as_base(&self) -> BaseModel {
        match self {
            Model::Curve(c) => c.as_base(),
            Model::Base(b) => b.clone(),
        }
    }
}

/// Intersection numbers on `X × P¹` for `E_{α,β}`, with `η = π₁*ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductClassTable {
    /// `η^{n-1}·c1²`
    #[serde(with = "crate::serde_rational")]
    pub c1_sq: Rational,
    /// `η^{n-1}·c2`
    #[serde(with = "crate::serde_rational")]
    pub c2: Rational,
    /// `η^{n-1}·c1·K`
    #[serde(with = "crate::serde_rational")]
    pub c1_k: Rational,
    /// `η^n·c1`
    #[serde(with = "crate::serde_rational")]
    pub eta_c1: Rational,
    /// `η^n·K`
    #[serde(with = "crate::serde_rational")]
    pub eta_k: Rational,
    /// `η^{n-1}·A2`
    #[serde(with = "crate::serde_rational")]
    pub a2: Rational,
}

struct ProductRing {
    ring: Arc<Ring>,
    dim: u32,
    deg_x: Rational,
}

impl ProductRing {
    fn new(model: &BaseModel) -> Result<Self> {
        let ring = Ring::new(
            vec![Variable::new("w", 1), Variable::new("u", 1), Variable::new("h", 1)],
            model.dim + 1,
        )?;
        Ok(ProductRing {
            ring,
            dim: model.dim,
            deg_x: model.deg_x.clone(),
        })
    }

    fn omega(&self) -> GradedPoly {
        self.ring.var(0)
    }

    fn u(&self) -> GradedPoly {
        self.ring.var(1)
    }

    fn h(&self) -> GradedPoly {
        self.ring.var(2)
    }

    /// Degree of the top-dimensional part.
    fn integrate(&self, p: &GradedPoly) -> Result<Rational> {
        let n = self.dim;
        let mut acc = Rational::zero();
        for (exps, c) in p.part(n + 1).terms() {
            let (a, b, hh) = (exps[0], exps[1], exps[2]);
            if hh != 1 {
                continue;
            }
            debug_assert_eq!(a + b, n);
            match b {
                0 => acc += c * &self.deg_x,
                1 => acc += c,
                _ => {
                    return Err(Error::internal(format!(
                        "pairing needs ω^{a}·u^{b}, which the numerical model does not carry"
                    )))
                }
            }
        }
        Ok(acc)
    }

    fn against_omega(&self, power: u32, p: &GradedPoly) -> Result<Rational> {
        self.integrate(&(&self.omega().pow(power) * p))
    }
}

fn a2_pairing(variant: A2Variant, e: u32, c1_sq: &Rational, c2: &Rational) -> Rational {
    let e = integer(e);
    let one = Rational::one();
    let lead = match variant {
        A2Variant::Proof => (&e - &one) / (integer(2) * &e * (&e + &one)),
        A2Variant::Statement => one.clone() / (integer(2) * &e * (&e + &one)),
    };
    lead * c1_sq - c2 / (&e + &one)
}

/// Intersection table of `E_{wF, wG}` over `model`, `wF >= wG >= 0`.
pub fn eab_intersections(model: &BaseModel, weight_f: u32, weight_g: u32) -> Result<ProductClassTable> {
    model.validate()?;
    if weight_g > weight_f {
        return Err(Error::domain(format!(
            "weights must satisfy α >= β, got α={weight_f}, β={weight_g}"
        )));
    }
    let pr = ProductRing::new(model)?;
    let (u, h) = (pr.u(), pr.h());
    let hf = h.scale(&integer(weight_f));
    let hg = h.scale(&integer(weight_g));
    let mut roots = vec![&u.scale(&model.deg_f) + &hf];
    roots.extend((1..model.rank_f).map(|_| hf.clone()));
    roots.push(&u.scale(&model.deg_g()) + &hg);
    roots.extend((1..model.rank_g()).map(|_| hg.clone()));

    let c1 = roots.iter().fold(pr.ring.zero(), |acc, r| &acc + r);
    let power_sum = roots.iter().fold(pr.ring.zero(), |acc, r| &acc + &r.pow(2));
    let c2 = (&c1.pow(2) - &power_sum).scale(&Rational::new(1.into(), 2.into()));
    let canonical = &u.scale(&model.deg_kx) - &h.scale(&integer(2));

    let n = model.dim;
    let c1_sq = pr.against_omega(n - 1, &c1.pow(2))?;
    let c2 = pr.against_omega(n - 1, &c2)?;
    let a2 = a2_pairing(A2Variant::resolved()?, model.rank, &c1_sq, &c2);
    Ok(ProductClassTable {
        c1_k: pr.against_omega(n - 1, &(&c1 * &canonical))?,
        eta_c1: pr.against_omega(n, &c1)?,
        eta_k: pr.against_omega(n, &canonical)?,
        c1_sq,
        c2,
        a2,
    })
}

/// The same table at weights `(α+1, α)` from its closed formulas:
/// `c1² = 2 degE (eα+f)`, `c2 = degE(α(e-1)+f) - degF`,
/// `c1·K = degKX (eα+f) - 2 degE`, `η^n·c1 = degX (eα+f)`,
/// `η^n·K = -2 degX` and `A2 = -f(μE-μF)/(e+1)`.
pub fn closed_form_table(model: &BaseModel, alpha: u32) -> ProductClassTable {
    let e = integer(model.rank);
    let f = integer(model.rank_f);
    let a = integer(alpha);
    let one = Rational::one();
    let two = integer(2);
    let weighted = &e * &a + &f;
    ProductClassTable {
        c1_sq: &two * &model.deg_e * &weighted,
        c2: &model.deg_e * (&a * (&e - &one) + &f) - &model.deg_f,
        c1_k: &model.deg_kx * &weighted - &two * &model.deg_e,
        eta_c1: &model.deg_x * &weighted,
        eta_k: -(&two * &model.deg_x),
        a2: -(&f * model.slope_gap()) / (&e + &one),
    }
}

fn check_length(lambda: &Partition, rank: u32) -> Result<()> {
    if lambda.len() > rank as usize {
        return Err(Error::domain(format!("{lambda} is longer than the rank {rank}")));
    }
    Ok(())
}

fn lambda1(lambda: &Partition) -> Rational {
    integer(lambda.elem_sym_or_zero(1))
}

/// `(a0, a1)` with `h⁰(X, E^{kλ}) / rank = a0 k + a1`: `a0 = Λ1 degE / e`
/// and `a1 = 1 - g`.
pub fn hilbert_curve(model: &CurveModel, lambda: &Partition) -> Result<(Rational, Rational)> {
    model.validate()?;
    check_length(lambda, model.rank)?;
    let a0 = lambda1(lambda) * integer(model.deg_e) / integer(model.rank);
    let a1 = integer(1 - i64::from(model.genus));
    Ok((a0, a1))
}

/// `(b0, b1)` for `E_{α+1,α}` on `X × P¹`:
/// `b0 = H1 c1² + H2 c2` and `b1 = H3 A2 - (Λ1/2e) c1·K`.
pub fn hilbert_product(model: &CurveModel, lambda: &Partition, alpha: u32) -> Result<(Rational, Rational)> {
    model.validate()?;
    check_length(lambda, model.rank)?;
    let table = eab_intersections(&model.as_base(), alpha + 1, alpha)?;
    product_coefficients(&table, lambda, model.rank)
}

fn product_coefficients(table: &ProductClassTable, lambda: &Partition, e: u32) -> Result<(Rational, Rational)> {
    let h = h_polynomials(lambda, e)?;
    let b0 = &h.h1 * &table.c1_sq + &h.h2 * &table.c2;
    let b1 = &h.h3 * &table.a2 - lambda1(lambda) * &table.c1_k / (integer(2) * integer(e));
    Ok((b0, b1))
}

/// Leading coefficients of the `m`-expansions
/// `a0 = a00 m^n + a01 m^{n-1}`, `a1 = a10 m^n + a11 m^{n-1}`,
/// `b0 = b00 m^n + b01 m^{n-1}`, `b1 = b10 m^n + b11 m^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertGrid {
    pub dim: u32,
    #[serde(with = "crate::serde_rational")]
    pub a00: Rational,
    #[serde(with = "crate::serde_rational")]
    pub a01: Rational,
    #[serde(with = "crate::serde_rational")]
    pub a10: Rational,
    #[serde(with = "crate::serde_rational")]
    pub a11: Rational,
    #[serde(with = "crate::serde_rational")]
    pub b00: Rational,
    #[serde(with = "crate::serde_rational")]
    pub b01: Rational,
    #[serde(with = "crate::serde_rational")]
    pub b10: Rational,
    #[serde(with = "crate::serde_rational")]
    pub b11: Rational,
}

impl HilbertGrid {
    pub fn a(&self) -> Vec<Rational> {
        vec![self.a00.clone(), self.a01.clone(), self.a10.clone(), self.a11.clone()]
    }

    pub fn b(&self) -> Vec<Rational> {
        vec![self.b00.clone(), self.b01.clone(), self.b10.clone(), self.b11.clone()]
    }

    /// `(a0, a1, b0, b1)` at a given `m`, keeping the two leading orders.
    /// Exact for curves.
    pub fn at(&self, m: &Rational) -> [Rational; 4] {
        let n = self.dim as i32;
        let top = num_traits::pow::Pow::pow(m, n);
        let next = num_traits::pow::Pow::pow(m, n - 1);
        [
            &self.a00 * &top + &self.a01 * &next,
            &self.a10 * &top + &self.a11 * &next,
            &self.b00 * &top + &self.b01 * &next,
            &self.b10 * &top + &self.b11 * &next,
        ]
    }
}

fn factorial(n: u32) -> Rational {
    (2..=n).fold(Rational::one(), |acc, i| acc * integer(i))
}

/// Coefficient grid for `E ⊗ L^m` over a general base, weights `(α+1, α)`.
pub fn hilbert_general(model: &BaseModel, lambda: &Partition, alpha: u32) -> Result<HilbertGrid> {
    model.validate()?;
    check_length(lambda, model.rank)?;
    let n = model.dim;
    let table = eab_intersections(model, alpha + 1, alpha)?;
    let (b0, b1) = product_coefficients(&table, lambda, model.rank)?;
    let e = integer(model.rank);
    let l1 = lambda1(lambda);
    let nf = factorial(n);
    let nf1 = factorial(n - 1);
    Ok(HilbertGrid {
        dim: n,
        a00: &model.deg_x / &nf,
        a01: &l1 * &model.deg_e / (&e * &nf1),
        a10: Rational::zero(),
        a11: -&model.deg_kx / (integer(2) * &nf1),
        b00: &l1 * &table.eta_c1 / (&e * &nf),
        b01: b0 / &nf1,
        b10: -&table.eta_k / (integer(2) * &nf),
        b11: b1 / &nf1,
    })
}

/// `χ(X, F(t_F)^ν ⊗ G(t_G)^μ)` on a curve, from the first Chern classes
/// `c1(F^ν) = rank F^ν |ν| μ(F)` of the Schur factors.
pub fn euler_split(model: &CurveModel, nu: &Partition, mu: &Partition, twist_f: i64, twist_g: i64) -> Result<Rational> {
    model.validate()?;
    if nu.len() > model.rank_f as usize || mu.len() > model.rank_g() as usize {
        return Err(Error::domain(format!(
            "ν = {nu} and μ = {mu} must fit ranks {} and {}",
            model.rank_f,
            model.rank_g()
        )));
    }
    let rank = Rational::from_integer((schur_rank(nu, model.rank_f) * schur_rank(mu, model.rank_g())).into());
    let degree = &rank
        * (integer(nu.size()) * (model.slope_f() + integer(twist_f))
            + integer(mu.size()) * (model.slope_g() + integer(twist_g)));
    if !degree.is_integer() {
        return Err(Error::internal(format!(
            "degree {degree} of F^ν ⊗ G^μ is not an integer"
        )));
    }
    Ok(rank * integer(1 - i64::from(model.genus)) + degree)
}

/// A curve with `F` and `G` split into line bundles of the given degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCurve {
    pub genus: u32,
    pub f_degrees: Vec<i64>,
    pub g_degrees: Vec<i64>,
}

impl SplitCurve {
    pub fn model(&self) -> CurveModel {
        let deg_f: i64 = self.f_degrees.iter().sum();
        CurveModel {
            genus: self.genus,
            rank: (self.f_degrees.len() + self.g_degrees.len()) as u32,
            deg_e: deg_f + self.g_degrees.iter().sum::<i64>(),
            rank_f: self.f_degrees.len() as u32,
            deg_f,
        }
    }

    fn euler(&self, lambda: &Partition, weight_f: u32, weight_g: u32, on_product: bool) -> Result<Rational> {
        let ring = Ring::new(vec![Variable::new("u", 1), Variable::new("h", 1)], 2)?;
        let (u, h) = (ring.var(0), ring.var(1));
        let h = if on_product { h } else { ring.zero() };
        let roots: Vec<GradedPoly> = self
            .f_degrees
            .iter()
            .map(|&d| &u.scale(&integer(d)) + &h.scale(&integer(weight_f)))
            .chain(
                self.g_degrees
                    .iter()
                    .map(|&d| &u.scale(&integer(d)) + &h.scale(&integer(weight_g))),
            )
            .collect();
        let mut ch = ring.zero();
        for (weight, mult) in kostka_weights(lambda, roots.len()) {
            let linear = roots
                .iter()
                .zip(&weight)
                .fold(ring.zero(), |acc, (r, &w)| &acc + &r.scale(&integer(w)));
            ch = &ch + &linear.trunc_exp()?.scale(&integer(mult));
        }
        let td_x = &ring.one() + &u.scale(&integer(1 - i64::from(self.genus)));
        let td = &td_x * &(&ring.one() + &h);
        let top = &ch * &td;
        Ok(if on_product {
            top.coeff(&[1, 1])
        } else {
            top.coeff(&[1, 0])
        })
    }

    /// `χ(X × P¹, E^λ_{α,β})` from the Schur character at the actual roots.
    pub fn chi_product(&self, lambda: &Partition, alpha: u32, beta: u32) -> Result<Rational> {
        self.euler(lambda, alpha, beta, true)
    }

    /// `χ(X, E^λ)`.
    pub fn chi_base(&self, lambda: &Partition) -> Result<Rational> {
        self.euler(lambda, 0, 0, false)
    }

    /// `Σ N_{νμλ} (|ν|α + |μ|β) χ(X, F^ν ⊗ G^μ)`.
    pub fn weight_by_decomposition(&self, lambda: &Partition, alpha: u32, beta: u32) -> Result<Rational> {
        let model = self.model();
        let mut total = Rational::zero();
        for term in lr_decompose(lambda, model.rank_f, model.rank_g(), None) {
            let weight =
                integer(u64::from(term.nu.size()) * u64::from(alpha) + u64::from(term.mu.size()) * u64::from(beta));
            total += integer(term.multiplicity) * weight * euler_split(&model, &term.nu, &term.mu, 0, 0)?;
        }
        Ok(total)
    }
}
