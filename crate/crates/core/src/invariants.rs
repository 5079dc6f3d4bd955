//! `F(a)`, the Milnor-fiber signature `σ(a)`, the Casson invariant `λ`, the
//! Floer Euler characteristic `χ_SW`, and the identity `-16 C = F + σ`
//! tying them together for `n = 3, 4`.

use serde::{Deserialize, Serialize};

use crate::brieskorn::BrieskornData;
use crate::error::{Error, Result};
use crate::exact::{sawtooth, Rational};
use crate::lattice::simplex_count;
use crate::sums::{dedekind_sum, rademacher_sum, RademacherParams};

/// Integer coefficients of the closed formulas.
///
/// [`Formulas::STANDARD`] is the only correct set. Other values exist so the
/// test suites can check that a perturbed formula is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formulas {
    /// Constant term of `F`.
    pub f_constant: i64,
    /// Coefficient of `sum s(b_i, a_i)` in the simplified `F`.
    pub f_dedekind: i64,
    /// Coefficient of `sum s(b_i, a_i; 1/2, 1/2)` in the simplified `F`.
    pub f_rademacher: i64,
    /// Coefficient of `sum s(beta_i, a_i)` in the Seifert form (subtracted).
    pub seifert_dedekind: i64,
    /// Outer coefficient of the per-fiber bracket in the Seifert form (subtracted).
    pub seifert_bracket: i64,
    /// Coefficient of the shifted sum inside the bracket.
    pub seifert_rademacher: i64,
    /// Constant term of `σ`.
    pub sigma_constant: i64,
    /// Coefficient of `sum s(b_i, a_i)` in `σ` (subtracted).
    pub sigma_dedekind: i64,
    /// Numerator of `ε/(3A)` in the closed form when `A` is even.
    pub epsilon_even: i64,
    /// Same, `A` odd.
    pub epsilon_odd: i64,
    /// Coefficient of `sum s(b_i, a_i; 1/2, 1/2)` in the closed form.
    pub closed_rademacher: i64,
}

impl Formulas {
    pub const STANDARD: Formulas = Formulas {
        f_constant: 1,
        f_dedekind: 4,
        f_rademacher: 8,
        seifert_dedekind: 4,
        seifert_bracket: 4,
        seifert_rademacher: 2,
        sigma_constant: -1,
        sigma_dedekind: 4,
        epsilon_even: 1,
        epsilon_odd: -2,
        closed_rademacher: 8,
    };
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas::STANDARD
    }
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// `s(b_i, a_i)` and `s(b_i, a_i; 1/2, 1/2)` for every fiber.
struct FiberSums {
    dedekind: Rational,
    half: Rational,
}

impl FiberSums {
    fn new(data: &BrieskornData) -> Self {
        let mut dedekind = Rational::zero();
        let mut half = Rational::zero();
        for (&a, &b) in data.a.iter().zip(&data.b) {
            dedekind += dedekind_sum(b as i64, a).expect("a_i >= 2");
            half += rademacher_sum(&RademacherParams::half_shifted(b as i64, a)).expect("a_i >= 2");
        }
        FiberSums { dedekind, half }
    }
}

/// `-1/A` when `A` is odd, else 0.
fn odd_correction(data: &BrieskornData) -> Rational {
    if data.is_product_even() {
        Rational::zero()
    } else {
        Rational::new(-1, data.product)
    }
}

/// `(1/3) sum b_i / a_i`.
fn third_of_ratio_sum(data: &BrieskornData) -> Rational {
    data.b
        .iter()
        .zip(&data.a)
        .map(|(&b, &a)| Rational::new(b, a))
        .sum::<Rational>()
        / int(3)
}

fn ff_from(data: &BrieskornData, sums: &FiberSums, f: &Formulas) -> Rational {
    int(f.f_constant)
        + odd_correction(data)
        + int(f.f_dedekind) * &sums.dedekind
        + int(f.f_rademacher) * &sums.half
}

fn signature_from(data: &BrieskornData, sums: &FiberSums, f: &Formulas) -> Rational {
    let a = Rational::from(data.product);
    let n_minus_2 = int(data.n() as i64 - 2);
    int(f.sigma_constant) - n_minus_2 * &a / int(3) + (int(3) * &a).recip()
        + third_of_ratio_sum(data)
        - int(f.sigma_dedekind) * &sums.dedekind
}

fn closed_form_from(data: &BrieskornData, sums: &FiberSums, f: &Formulas) -> Rational {
    let a = Rational::from(data.product);
    let n_minus_2 = int(data.n() as i64 - 2);
    let eps = epsilon_with(data, f);
    -(n_minus_2 * &a) / int(3)
        + int(eps) / (int(3) * &a)
        + third_of_ratio_sum(data)
        + int(f.closed_rademacher) * &sums.half
}

fn epsilon_with(data: &BrieskornData, f: &Formulas) -> i64 {
    if data.is_product_even() {
        f.epsilon_even
    } else {
        f.epsilon_odd
    }
}

/// `ε = 1` for even `A`, `-2` for odd `A`.
pub fn epsilon(data: &BrieskornData) -> i64 {
    epsilon_with(data, &Formulas::STANDARD)
}

/// `F(a) = 1 [- 1/A] + 4 sum s(b_i, a_i) + 8 sum s(b_i, a_i; 1/2, 1/2)`,
/// the `-1/A` term present only for odd `A`.
pub fn ff_invariant(data: &BrieskornData) -> Rational {
    ff_invariant_with(data, &Formulas::STANDARD)
}

pub fn ff_invariant_with(data: &BrieskornData, f: &Formulas) -> Rational {
    ff_from(data, &FiberSums::new(data), f)
}

/// `F(a)` through the Seifert invariants:
///
/// `1 [- 1/A] - 4 sum s(beta_i, a_i)
///   - 4 sum [ (((q_i gamma_i + rho)/a_i)) + 2 s(beta_i, a_i; (gamma_i + beta_i rho)/a_i, -rho) ]`
pub fn ff_invariant_seifert_form(data: &BrieskornData) -> Rational {
    ff_invariant_seifert_form_with(data, &Formulas::STANDARD)
}

pub fn ff_invariant_seifert_form_with(data: &BrieskornData, f: &Formulas) -> Rational {
    let rho = &data.rho;
    let mut dedekind = Rational::zero();
    let mut bracket = Rational::zero();
    for i in 0..data.n() {
        let a = data.a[i];
        let ar = Rational::from(a);
        let beta = Rational::from(data.beta[i]);
        let gamma = Rational::from(data.gamma[i]);
        let qg = Rational::from(data.q[i]) * &gamma;
        dedekind += dedekind_sum(data.beta[i] as i64, a).expect("a_i >= 2");
        let x = (&gamma + &beta * rho) / &ar;
        let shifted = rademacher_sum(&RademacherParams::new(data.beta[i] as i64, a, x, -rho))
            .expect("a_i >= 2");
        bracket += sawtooth(&((qg + rho) / &ar)) + int(f.seifert_rademacher) * shifted;
    }
    int(f.f_constant) + odd_correction(data)
        - int(f.seifert_dedekind) * dedekind
        - int(f.seifert_bracket) * bracket
}

/// `σ(a) = -1 - (n-2)A/3 + 1/(3A) + (1/3) sum b_i/a_i - 4 sum s(b_i, a_i)`.
pub fn signature(data: &BrieskornData) -> Rational {
    signature_from(data, &FiberSums::new(data), &Formulas::STANDARD)
}

/// Casson invariant `λ = σ/8`.
pub fn casson(data: &BrieskornData) -> Rational {
    signature(data) / int(8)
}

/// `χ_SW = -2C`. Only defined here for `n = 3, 4`, where every `d(x)` vanishes.
pub fn chi_sw(data: &BrieskornData) -> Result<i64> {
    match data.n() {
        3 | 4 => Ok(-2 * simplex_count(data) as i64),
        n => Err(Error::UnsupportedDimension(n)),
    }
}

/// `-(n-2)A/3 + ε/(3A) + (1/3) sum b_i/a_i + 8 sum s(b_i, a_i; 1/2, 1/2)`,
/// which should equal `F + σ`.
pub fn km_rhs_closed_form(data: &BrieskornData) -> Rational {
    closed_form_from(data, &FiberSums::new(data), &Formulas::STANDARD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Every invariant of one tuple and the outcome of each check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmReport {
    pub data: BrieskornData,
    pub c: u64,
    pub ff: Rational,
    pub ff_seifert_form: Rational,
    pub sigma: Rational,
    pub lambda: Rational,
    pub chi_sw: i64,
    /// `-16 C`.
    pub lhs: i64,
    /// `F + σ`.
    pub rhs: Rational,
    pub rhs_closed_form: Rational,
    pub epsilon: i64,
    pub div8_f: bool,
    pub div8_sigma: bool,
    pub div16_sum: bool,
    pub verdict: Verdict,
}

impl KmReport {
    /// Each failed check, described; empty iff the verdict is `Pass`.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rhs != self.lhs {
            out.push(format!("-16C = {} but F + sigma = {}", self.lhs, self.rhs));
        }
        if self.rhs != self.rhs_closed_form {
            out.push(format!(
                "F + sigma = {} but closed form = {}",
                self.rhs, self.rhs_closed_form
            ));
        }
        if self.ff != self.ff_seifert_form {
            out.push(format!(
                "F = {} but Seifert form = {}",
                self.ff, self.ff_seifert_form
            ));
        }
        if !self.div8_f {
            out.push(format!("F = {} is not a multiple of 8", self.ff));
        }
        if !self.div8_sigma {
            out.push(format!("sigma = {} is not a multiple of 8", self.sigma));
        }
        if !self.div16_sum {
            out.push(format!("F + sigma = {} is not a multiple of 16", self.rhs));
        }
        if !self.lambda.is_integer() {
            out.push(format!("lambda = {} is not an integer", self.lambda));
        }
        let conjecture = Rational::from(self.chi_sw) - &self.ff / int(8);
        if conjecture != self.lambda {
            out.push(format!(
                "chi_SW - F/8 = {conjecture} but lambda = {}",
                self.lambda
            ));
        }
        out
    }

    /// The flat JSON form.
    pub fn to_record(&self) -> KmRecord {
        let d = &self.data;
        KmRecord {
            a: d.a.clone(),
            product: d.product,
            b: d.b.clone(),
            beta: d.beta.clone(),
            q: d.q.clone(),
            kappa: d.kappa.clone(),
            rho: d.rho.clone(),
            m: d.m,
            gamma: d.gamma.clone(),
            c: self.c,
            ff: self.ff.clone(),
            ff_seifert_form: self.ff_seifert_form.clone(),
            sigma: self.sigma.clone(),
            lambda: self.lambda.clone(),
            chi_sw: self.chi_sw,
            lhs: self.lhs,
            rhs: self.rhs.clone(),
            epsilon: self.epsilon,
            div8_f: self.div8_f,
            div8_sigma: self.div8_sigma,
            div16_sum: self.div16_sum,
            verdict: self.verdict,
        }
    }
}

/// Flat serialized report. Field order is the output order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmRecord {
    pub a: Vec<u64>,
    #[serde(rename = "A")]
    pub product: u64,
    pub b: Vec<u64>,
    pub beta: Vec<u64>,
    pub q: Vec<u64>,
    pub kappa: Rational,
    pub rho: Rational,
    pub m: i64,
    pub gamma: Vec<u64>,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "F")]
    pub ff: Rational,
    #[serde(rename = "F_seifert_form")]
    pub ff_seifert_form: Rational,
    pub sigma: Rational,
    pub lambda: Rational,
    pub chi_sw: i64,
    pub lhs: i64,
    pub rhs: Rational,
    pub epsilon: i64,
    #[serde(rename = "div8_F")]
    pub div8_f: bool,
    pub div8_sigma: bool,
    pub div16_sum: bool,
    pub verdict: Verdict,
}

/// Computes every invariant of a 3- or 4-fiber tuple and checks the identity.
pub fn km_verify(data: &BrieskornData) -> Result<KmReport> {
    km_verify_with(data, &Formulas::STANDARD)
}

pub fn km_verify_with(data: &BrieskornData, f: &Formulas) -> Result<KmReport> {
    let chi_sw = chi_sw(data)?;
    let c = (-chi_sw / 2) as u64;
    let sums = FiberSums::new(data);
    let ff = ff_from(data, &sums, f);
    let ff_seifert_form = ff_invariant_seifert_form_with(data, f);
    let sigma = signature_from(data, &sums, f);
    let lambda = &sigma / int(8);
    let rhs = &ff + &sigma;
    let rhs_closed_form = closed_form_from(data, &sums, f);
    let mut report = KmReport {
        data: data.clone(),
        c,
        div8_f: ff.is_integer_multiple_of(8),
        div8_sigma: sigma.is_integer_multiple_of(8),
        div16_sum: rhs.is_integer_multiple_of(16),
        ff,
        ff_seifert_form,
        sigma,
        lambda,
        chi_sw,
        lhs: -16 * c as i64,
        rhs,
        rhs_closed_form,
        epsilon: epsilon_with(data, f),
        verdict: Verdict::Fail,
    };
    if report.failures().is_empty() {
        report.verdict = Verdict::Pass;
    }
    Ok(report)
}
