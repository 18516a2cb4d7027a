//! Donaldson-Futaki invariants of the test configurations induced by
//! degenerating `0 → F → E → G → 0` to `F ⊕ G` with weights `(α+1, α)`.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{integer, Rational};
use crate::chern::A2Variant;
use crate::geometry::{
    eab_intersections, hilbert_curve, hilbert_general, hilbert_product, BaseModel, CurveModel, HilbertGrid, SplitCurve,
};
use crate::partitions::{bbw_translate, FlagType, Partition};
use crate::{Error, Result};

/// Weights whose invariants must agree with the requested one.
pub const ALPHA_CHECKED: [u32; 3] = [1, 2, 3];

/// `F = b0 a1 / a0² - b1 / a0 + 1`.
pub fn df_invariant(a0: &Rational, a1: &Rational, b0: &Rational, b1: &Rational) -> Result<Rational> {
    if a0.is_zero() {
        return Err(Error::domain("a0 = 0: degenerate polarisation"));
    }
    Ok((a1 * b0 - a0 * b1 + a0 * a0) / (a0 * a0))
}

/// The Schur index `λ` together with the weight `α`, optionally remembered
/// as the pushforward of `L(ν)` from the flag bundle of type `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestConfig {
    pub lambda: Partition,
    pub alpha: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<FlagType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Partition>,
}

impl TestConfig {
    pub fn from_lambda(lambda: Partition, alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::domain("α must be positive"));
        }
        Ok(TestConfig {
            lambda,
            alpha,
            flag: None,
            nu: None,
        })
    }

    pub fn from_flag(flag: FlagType, nu: Partition, alpha: u32) -> Result<Self> {
        let lambda = bbw_translate(&nu, &flag)?;
        let mut cfg = Self::from_lambda(lambda, alpha)?;
        cfg.flag = Some(flag);
        cfg.nu = Some(nu);
        Ok(cfg)
    }

    /// `ν = (1, ..., 1)` on the flag of type `r`.
    pub fn plucker(flag: FlagType, alpha: u32) -> Result<Self> {
        let nu = Partition::column(flag.len());
        Self::from_flag(flag, nu, alpha)
    }

    /// `r_1`, the length of `λ`.
    pub fn largest_flag_part(&self) -> u32 {
        self.lambda.len() as u32
    }

    fn check_rank(&self, e: u32) -> Result<()> {
        if self.largest_flag_part() + 1 > e {
            return Err(Error::domain(format!(
                "needs e - 1 >= r_1, got e = {e} and r_1 = {}",
                self.largest_flag_part()
            )));
        }
        Ok(())
    }

    fn alphas(&self) -> Vec<u32> {
        let mut v = ALPHA_CHECKED.to_vec();
        if !v.contains(&self.alpha) {
            v.push(self.alpha);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Destabilised,
    Zero,
    StableIndicated,
}

impl Verdict {
    pub fn from_sign(x: &Rational) -> Self {
        match x.cmp(&Rational::zero()) {
            Ordering::Less => Verdict::Destabilised,
            Ordering::Equal => Verdict::Zero,
            Ordering::Greater => Verdict::StableIndicated,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FutakiValue {
    Scalar(#[serde(with = "crate::serde_rational")] Rational),
    Expansion {
        #[serde(rename = "F0", with = "crate::serde_rational")]
        f0: Rational,
        #[serde(rename = "F1", with = "crate::serde_rational")]
        f1: Rational,
    },
}

impl FutakiValue {
    /// The quantity whose sign decides the verdict.
    pub fn leading(&self) -> &Rational {
        match self {
            FutakiValue::Scalar(f) => f,
            FutakiValue::Expansion { f1, .. } => f1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DfReport {
    pub kind: &'static str,
    pub lambda: Partition,
    pub alpha: u32,
    #[serde(with = "crate::serde_rational::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "crate::serde_rational::vec")]
    pub b: Vec<Rational>,
    pub futaki: FutakiValue,
    #[serde(with = "crate::serde_rational")]
    pub closed_form: Rational,
    #[serde(with = "crate::serde_rational")]
    pub slope_gap: Rational,
    pub verdict: Verdict,
    pub conjecture_dependent: bool,
    pub alpha_checked: Vec<u32>,
    /// `η^{n-1}·A2(E_{α+1,α})`; equal to `-f(μE-μF)/(e+1)`.
    #[serde(with = "crate::serde_rational")]
    pub a2_pairing: Rational,
    pub a2_variant: A2Variant,
}

/// `C = f/((e-1)e(e+1)) ((g-1)((e-1)Λ1² - 2eΛ2) + Λ1 (eΛ1 - Σ(2i-1)λ_i) degE)`.
pub fn constant_c(lambda: &Partition, e: u32, rank_f: u32, genus: u32, deg_e: &Rational) -> Rational {
    let (l1, l2, odd) = lambda_data(lambda);
    let e = integer(e);
    let one = Rational::one();
    let first = (&e - &one) * &l1 * &l1 - integer(2) * &e * l2;
    let second = &e * &l1 - odd;
    integer(rank_f) / ((&e - &one) * &e * (&e + &one)) * (integer(i64::from(genus) - 1) * first + l1 * second * deg_e)
}

/// `D = f n (eΛ1 - Σ(2i-1)λ_i) / ((e-1)(e+1) degX)`.
pub fn constant_d(lambda: &Partition, model: &BaseModel) -> Rational {
    let (l1, _, odd) = lambda_data(lambda);
    let e = integer(model.rank);
    let one = Rational::one();
    integer(model.rank_f) * integer(model.dim) * (&e * l1 - odd) / ((&e - &one) * (&e + &one) * &model.deg_x)
}

fn lambda_data(lambda: &Partition) -> (Rational, Rational, Rational) {
    (
        integer(lambda.elem_sym_or_zero(1)),
        integer(lambda.elem_sym_or_zero(2)),
        integer(lambda.odd_weighted_sum()),
    )
}

fn curve_invariant(
    model: &CurveModel,
    lambda: &Partition,
    alpha: u32,
) -> Result<(Rational, Rational, Rational, Rational, Rational)> {
    let (a0, a1) = hilbert_curve(model, lambda)?;
    let (b0, b1) = hilbert_product(model, lambda, alpha)?;
    let f = df_invariant(&a0, &a1, &b0, &b1)?;
    Ok((a0, a1, b0, b1, f))
}

/// Invariant of the test configuration over a curve, cross-checked against
/// the closed form `a0² F = C (μE - μF)` and across `α`.
pub fn futaki_curve(model: &CurveModel, cfg: &TestConfig) -> Result<DfReport> {
    model.validate()?;
    cfg.check_rank(model.rank)?;
    let lambda = &cfg.lambda;
    let (a0, a1, b0, b1, f) = curve_invariant(model, lambda, cfg.alpha)?;
    let alphas = cfg.alphas();
    for &alpha in &alphas {
        let other = curve_invariant(model, lambda, alpha)?.4;
        if other != f {
            return Err(Error::internal(format!(
                "invariant depends on α: {f} at α={} but {other} at α={alpha}",
                cfg.alpha
            )));
        }
    }
    let gap = model.slope_e() - model.slope_f();
    let c = constant_c(lambda, model.rank, model.rank_f, model.genus, &integer(model.deg_e));
    if &a0 * &a0 * &f != &c * &gap {
        return Err(Error::internal(format!(
            "a0² F = {} differs from C (μE - μF) = {}",
            &a0 * &a0 * &f,
            &c * &gap
        )));
    }
    let a2 = eab_intersections(&model.as_base(), cfg.alpha + 1, cfg.alpha)?.a2;
    Ok(DfReport {
        kind: "curve",
        lambda: lambda.clone(),
        alpha: cfg.alpha,
        a: vec![a0, a1],
        b: vec![b0, b1],
        verdict: Verdict::from_sign(&f),
        futaki: FutakiValue::Scalar(f),
        closed_form: c,
        slope_gap: gap,
        conjecture_dependent: lambda.len() > 3,
        alpha_checked: alphas,
        a2_pairing: a2,
        a2_variant: A2Variant::resolved()?,
    })
}

/// `(F0, F1)` where `a0² F = F0 m^{2n} + F1 a00² m^{2n-1} + ...`, so that
/// `F = F1 / m + O(m^{-2})` when `F0` vanishes.
pub fn twisted_expansion(grid: &HilbertGrid) -> (Rational, Rational) {
    let f0 = &grid.a10 * &grid.b00 - &grid.a00 * &grid.b10 + &grid.a00 * &grid.a00;
    let f1_raw =
        &grid.a11 * &grid.b00 - &grid.a01 * &grid.b10 - &grid.a00 * &grid.b11 + integer(2) * &grid.a00 * &grid.a01;
    let f1 = f1_raw / (&grid.a00 * &grid.a00);
    (f0, f1)
}

/// Leading behaviour of the invariant for `E ⊗ L^m` over a general base,
/// cross-checked against `F0 = 0`, `F1 = D (μE - μF)` and across `α`.
pub fn futaki_twisted(model: &BaseModel, cfg: &TestConfig) -> Result<DfReport> {
    model.validate()?;
    cfg.check_rank(model.rank)?;
    let lambda = &cfg.lambda;
    let grid = hilbert_general(model, lambda, cfg.alpha)?;
    let (f0, f1) = twisted_expansion(&grid);
    if !f0.is_zero() {
        return Err(Error::internal(format!(
            "leading coefficient F0 = {f0} does not vanish"
        )));
    }
    let alphas = cfg.alphas();
    for &alpha in &alphas {
        let other = twisted_expansion(&hilbert_general(model, lambda, alpha)?);
        if other != (f0.clone(), f1.clone()) {
            return Err(Error::internal(format!(
                "expansion depends on α: F1 = {f1} at α={} but {} at α={alpha}",
                cfg.alpha, other.1
            )));
        }
    }
    let gap = model.slope_gap();
    let d = constant_d(lambda, model);
    if f1 != &d * &gap {
        return Err(Error::internal(format!(
            "F1 = {f1} differs from D (μE - μF) = {}",
            &d * &gap
        )));
    }
    let a2 = eab_intersections(model, cfg.alpha + 1, cfg.alpha)?.a2;
    Ok(DfReport {
        kind: "twisted",
        lambda: lambda.clone(),
        alpha: cfg.alpha,
        a: grid.a(),
        b: grid.b(),
        verdict: Verdict::from_sign(&f1),
        futaki: FutakiValue::Expansion { f0, f1 },
        closed_form: d,
        slope_gap: gap,
        conjecture_dependent: lambda.len() > 3,
        alpha_checked: alphas,
        a2_pairing: a2,
        a2_variant: A2Variant::resolved()?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    #[serde(with = "crate::serde_rational")]
    pub w_direct: Rational,
    #[serde(with = "crate::serde_rational")]
    pub w_lr: Rational,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Total weight `χ(X × P¹, E^λ_{α,β}) - χ(X, E^λ)` computed directly and
/// through the Littlewood-Richardson decomposition of `(F ⊕ G)^λ`.
pub fn weight_check(split: &SplitCurve, lambda: &Partition, alpha: u32, beta: u32) -> Result<WeightCheck> {
    split.model().validate()?;
    let w_direct = split.chi_product(lambda, alpha, beta)? - split.chi_base(lambda)?;
    let w_lr = split.weight_by_decomposition(lambda, alpha, beta)?;
    Ok(WeightCheck {
        matches: w_direct == w_lr,
        w_direct,
        w_lr,
    })
}

/// The two brackets whose positivity makes `C` and `D` positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Positivity {
    /// `(e-1)Λ1² - 2eΛ2`
    #[serde(with = "crate::serde_rational")]
    pub first_bracket: Rational,
    /// `Σ_{i<j}(λ_i-λ_j)² + Σ λ_i²`, a lower bound for the first bracket.
    #[serde(with = "crate::serde_rational")]
    pub first_lower_bound: Rational,
    /// `eΛ1 - Σ(2i-1)λ_i`
    #[serde(with = "crate::serde_rational")]
    pub second_bracket: Rational,
    /// `Σ_j λ'_j (e - λ'_j)`, equal to the second bracket.
    #[serde(with = "crate::serde_rational")]
    pub second_conjugate_form: Rational,
    /// `(g-1)·first + Λ1·second·degE`, the sign of `C`.
    #[serde(with = "crate::serde_rational")]
    pub c_numerator: Rational,
    pub preconditions_hold: bool,
    pub c_positive: bool,
    pub d_positive: bool,
}

pub fn positivity_analysis(lambda: &Partition, e: u32, genus: u32, deg_e: i64) -> Positivity {
    let (l1, l2, odd) = lambda_data(lambda);
    let eq = integer(e);
    let one = Rational::one();
    let first = (&eq - &one) * &l1 * &l1 - integer(2) * &eq * &l2;
    let parts: Vec<i64> = lambda.parts().iter().map(|&x| i64::from(x)).collect();
    let mut bound = 0i64;
    for i in 0..parts.len() {
        bound += parts[i] * parts[i];
        for j in i + 1..parts.len() {
            bound += (parts[i] - parts[j]).pow(2);
        }
    }
    let second = &eq * &l1 - odd;
    let conj_form: i64 = lambda
        .conjugate()
        .parts()
        .iter()
        .map(|&c| i64::from(c) * (i64::from(e) - i64::from(c)))
        .sum();
    let c_numerator = integer(i64::from(genus) - 1) * &first + &l1 * &second * integer(deg_e);
    Positivity {
        preconditions_hold: lambda.len() < e as usize && genus >= 1 && deg_e > 0,
        c_positive: c_numerator.is_positive(),
        d_positive: second.is_positive(),
        first_bracket: first,
        first_lower_bound: integer(bound),
        second_bracket: second,
        second_conjugate_form: integer(conj_form),
        c_numerator,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn worked(deg_f: i64) -> CurveModel {
        CurveModel {
            genus: 2,
            rank: 3,
            deg_e: 6,
            rank_f: 1,
            deg_f,
        }
    }

    #[test]
    fn df_examples() {
        let one = integer(1);
        let zero = integer(0);
        assert_eq!(df_invariant(&one, &zero, &zero, &one).unwrap(), zero);
        assert_eq!(
            df_invariant(&integer(4), &integer(-1), &rational(43, 4), &rational(19, 12)).unwrap(),
            rational(-13, 192)
        );
        assert!(matches!(df_invariant(&zero, &one, &one, &one), Err(Error::Domain(_))));
        // F vanishes exactly when a1 b0 + a0² = a0 b1
        let (a0, a1, b0) = (integer(3), integer(2), integer(5));
        let b1 = (&a1 * &b0 + &a0 * &a0) / &a0;
        assert!(df_invariant(&a0, &a1, &b0, &b1).unwrap().is_zero());
    }

    #[test]
    fn worked_curve_instance() {
        let cfg = TestConfig::from_flag(FlagType::new(vec![2]).unwrap(), p(&[1]), 1).unwrap();
        assert_eq!(cfg.lambda, p(&[1, 1]));
        let r = futaki_curve(&worked(3), &cfg).unwrap();
        assert_eq!(r.futaki, FutakiValue::Scalar(rational(-13, 192)));
        assert_eq!(r.closed_form, rational(13, 12));
        assert_eq!(r.verdict, Verdict::Destabilised);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["futaki"], "-13/192");
        assert_eq!(json["verdict"], "destabilised");
        assert_eq!(json["alpha_checked"], serde_json::json!([1, 2, 3]));

        let r = futaki_curve(&worked(2), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Zero);
        assert!(r.futaki.leading().is_zero());
        let r = futaki_curve(&worked(1), &cfg).unwrap();
        assert_eq!(r.futaki, FutakiValue::Scalar(rational(13, 192)));
        assert_eq!(r.verdict, Verdict::StableIndicated);
    }

    #[test]
    fn rank_bound_is_enforced() {
        let cfg = TestConfig::plucker(FlagType::new(vec![3]).unwrap(), 1).unwrap();
        assert!(matches!(futaki_curve(&worked(3), &cfg), Err(Error::Domain(_))));
        assert!(TestConfig::from_lambda(p(&[1]), 0).is_err());
    }

    #[test]
    fn degree_zero_bundle_is_rejected() {
        let model = CurveModel { deg_e: 0, ..worked(3) };
        let cfg = TestConfig::from_lambda(p(&[1]), 1).unwrap();
        assert!(matches!(futaki_curve(&model, &cfg), Err(Error::Domain(_))));
    }

    fn twisted_model(deg_kx: i64) -> BaseModel {
        BaseModel {
            dim: 2,
            deg_x: integer(1),
            deg_kx: integer(deg_kx),
            rank: 3,
            deg_e: integer(6),
            rank_f: 1,
            deg_f: integer(3),
        }
    }

    #[test]
    fn twisted_example() {
        let cfg = TestConfig::from_lambda(p(&[1, 1]), 1).unwrap();
        let r = futaki_twisted(&twisted_model(-9), &cfg).unwrap();
        assert_eq!(
            r.futaki,
            FutakiValue::Expansion {
                f0: integer(0),
                f1: rational(-1, 2)
            }
        );
        assert_eq!(r.closed_form, rational(1, 2));
        let other = futaki_twisted(&twisted_model(5), &cfg).unwrap();
        assert_eq!(other.futaki, r.futaki);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["futaki"]["F0"], "0");
        assert_eq!(json["futaki"]["F1"], "-1/2");

        let mut equal = twisted_model(-9);
        equal.deg_f = integer(2);
        assert!(futaki_twisted(&equal, &cfg).unwrap().futaki.leading().is_zero());
    }

    // The readings that drop the factor Λ1 from a01 or halve the last term
    // of F1 do not reproduce D (μE - μF).
    #[test]
    fn alternative_readings_fail() {
        let model = twisted_model(-9);
        let lam = p(&[1, 1]);
        let grid = hilbert_general(&model, &lam, 1).unwrap();
        let target = constant_d(&lam, &model) * model.slope_gap();
        assert_eq!(twisted_expansion(&grid).1, target);

        let mut unit_ratio = grid.clone();
        unit_ratio.a01 = &grid.a01 / integer(2);
        assert_ne!(twisted_expansion(&unit_ratio).1, target);

        let halved = (&grid.a11 * &grid.b00 - &grid.a01 * &grid.b10 - &grid.a00 * &grid.b11 + &grid.a00 * &grid.a01)
            / (&grid.a00 * &grid.a00);
        assert_ne!(halved, target);
    }

    #[test]
    fn curve_is_dimension_one_twisted_case() {
        let model = worked(3);
        let lam = p(&[1, 1]);
        let grid = hilbert_general(&model.as_base(), &lam, 1).unwrap();
        let curve_f = futaki_curve(&model, &TestConfig::from_lambda(lam.clone(), 1).unwrap())
            .unwrap()
            .futaki
            .leading()
            .clone();
        let (_, f1) = twisted_expansion(&grid);
        for m in 0..6 {
            let [a0, a1, b0, b1] = grid.at(&integer(m));
            let f = df_invariant(&a0, &a1, &b0, &b1).unwrap();
            if m == 0 {
                assert_eq!(f, curve_f);
            }
            // a0(m)² F(m) = F1 a00² m + C (μE - μF), exactly
            let rhs = &f1 * &grid.a00 * &grid.a00 * integer(m) + &curve_f * &grid.a01 * &grid.a01;
            assert_eq!(&a0 * &a0 * f, rhs);
        }
    }

    #[test]
    fn weight_examples() {
        let s = SplitCurve {
            genus: 0,
            f_degrees: vec![2],
            g_degrees: vec![1],
        };
        let w = weight_check(&s, &p(&[1]), 1, 0).unwrap();
        assert_eq!((w.w_direct.clone(), w.w_lr.clone()), (integer(3), integer(3)));
        assert!(w.matches);
        let w = weight_check(&s, &p(&[1]), 0, 0).unwrap();
        assert!(w.w_direct.is_zero() && w.matches);
        let w = weight_check(&s, &p(&[1, 1]), 1, 0).unwrap();
        assert_eq!(w.w_lr, integer(4));
        assert!(w.matches);
    }

    #[test]
    fn positivity_examples() {
        let r = positivity_analysis(&p(&[1, 1]), 3, 2, 6);
        assert_eq!(
            (r.first_bracket.clone(), r.second_bracket.clone()),
            (integer(2), integer(2))
        );
        assert!(r.c_positive && r.d_positive && r.preconditions_hold);
        let r = positivity_analysis(&p(&[1]), 2, 1, 1);
        assert_eq!(r.second_bracket, integer(1));
        assert_eq!(r.second_conjugate_form, integer(1));
        for k in 1..6u32 {
            for e in 2..7u32 {
                let r = positivity_analysis(&p(&[k]), e, 1, 3);
                assert_eq!(r.first_bracket, integer((e - 1) * k * k));
            }
        }
        let r = positivity_analysis(&p(&[1, 1, 1]), 3, 0, -5);
        assert!(!r.preconditions_hold);
    }

    #[test]
    fn brackets_bound_on_box() {
        for e in 2..=8u32 {
            for lam in crate::partitions::enumerate_partitions(e as usize - 1, 6) {
                if lam.is_empty() {
                    continue;
                }
                let r = positivity_analysis(&lam, e, 1, 1);
                assert!(r.first_bracket >= r.first_lower_bound, "{lam} e={e}");
                assert!(r.first_lower_bound.is_positive());
                assert_eq!(r.second_bracket, r.second_conjugate_form);
                assert!(r.d_positive && r.c_positive);
            }
        }
    }
}
