use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{binomial, factorial};
use crate::error::{domain, Result};

/// Triangular table of Stirling numbers of the second kind `S^j_m`, `1 ≤ j ≤ m ≤ max_order`.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    max_order: usize,
    // rows[m][j], with row 0 and column 0 unused
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_order: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for m in 1..=max_order {
            let prev = &rows[m - 1];
            let mut row = vec![BigUint::zero(); m + 1];
            for (j, slot) in row.iter_mut().enumerate().skip(1) {
                let left = prev.get(j - 1).cloned().unwrap_or_default();
                let same = prev.get(j).cloned().unwrap_or_default();
                *slot = left + same * j;
            }
            rows.push(row);
        }
        StirlingTable { max_order, rows }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn get(&self, j: usize, m: usize) -> Result<&BigUint> {
        if j == 0 || j > m || m > self.max_order {
            return Err(domain(format!(
                "Stirling index (j={j}, m={m}) outside 1 ≤ j ≤ m ≤ {}",
                self.max_order
            )));
        }
        Ok(&self.rows[m][j])
    }
}

/// `S^j_m`: the number of partitions of an `m`-set into `j` nonempty blocks.
pub fn stirling2(j: usize, m: usize) -> Result<BigUint> {
    if j == 0 || j > m {
        return Err(domain(format!("stirling2 needs 1 ≤ j ≤ m, got j={j}, m={m}")));
    }
    StirlingTable::new(m).get(j, m).cloned()
}

fn check_pm_index(m: usize, j: usize, l: usize) -> Result<()> {
    if m == 0 || j == 0 || j > m || l > m - j {
        return Err(domain(format!(
            "P_{{m j ℓ}} needs m ≥ 1, 1 ≤ j ≤ m, 0 ≤ ℓ ≤ m − j; got (m={m}, j={j}, ℓ={l})"
        )));
    }
    Ok(())
}

/// Coefficient tables `P_{m j ℓ}` for `m = 1..=max_m`, built only from the
/// recursion `P_{m+1,jℓ} = P_{mj,ℓ−1} + P_{m,j−1,ℓ} + j·P_{mjℓ} + δ_{j1}δ_{ℓm}`
/// with `P_{110} = 1` and zero boundary terms.
///
/// Entry `m − 1` of the result is the table for order `m`.
pub fn pm_table_recursive(max_m: usize) -> Vec<BTreeMap<(usize, usize), BigUint>> {
    let mut out: Vec<BTreeMap<(usize, usize), BigUint>> = Vec::with_capacity(max_m);
    if max_m == 0 {
        return out;
    }
    let mut first = BTreeMap::new();
    first.insert((1, 0), BigUint::one());
    out.push(first);
    for m in 1..max_m {
        let prev = &out[m - 1];
        let get = |j: usize, l: Option<usize>| -> BigUint {
            match l {
                Some(l) => prev.get(&(j, l)).cloned().unwrap_or_default(),
                None => BigUint::zero(),
            }
        };
        let mut next = BTreeMap::new();
        for j in 1..=m + 1 {
            for l in 0..=(m + 1 - j) {
                let mut v = get(j, l.checked_sub(1)) + get(j - 1, Some(l)) + get(j, Some(l)) * j;
                if j == 1 && l == m {
                    v += 1u32;
                }
                next.insert((j, l), v);
            }
        }
        out.push(next);
    }
    out
}

/// `P_{mjℓ}` from the recursion alone.
pub fn pm_coeff_recursive(m: usize, j: usize, l: usize) -> Result<BigUint> {
    check_pm_index(m, j, l)?;
    let tables = pm_table_recursive(m);
    Ok(tables[m - 1][&(j, l)].clone())
}

/// `P_{mjℓ} = (1/j!)·C(m,ℓ)·Σ_{s=0}^{j} (−1)^{j−s} C(j,s) s^{m−ℓ}`, exact.
pub fn pm_coeff_explicit(m: usize, j: usize, l: usize) -> Result<BigUint> {
    check_pm_index(m, j, l)?;
    let power = (m - l) as u32;
    let mut sum = BigInt::zero();
    for s in 0..=j {
        let term = BigInt::from(binomial(j as u64, s as u64)) * BigInt::from(s).pow(power);
        if (j - s).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let jf = BigInt::from(factorial(j as u64));
    let (quot, rem) = sum.div_rem(&jf);
    assert!(
        rem.is_zero(),
        "alternating sum for P_{{{m}{j}{l}}} not divisible by {j}!: implementation bug"
    );
    assert!(!quot.is_negative());
    let quot = quot.to_biguint().expect("nonnegative");
    Ok(quot * binomial(m as u64, l as u64))
}

/// `P_{mjℓ} = C(m,ℓ)·S^j_{m−ℓ}`.
pub fn pm_coeff_stirling(m: usize, j: usize, l: usize) -> Result<BigUint> {
    check_pm_index(m, j, l)?;
    Ok(binomial(m as u64, l as u64) * stirling2(j, m - l)?)
}

/// Output flavour for [`PmPolynomial::render`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyFormat {
    Text,
    Latex,
    Json,
}

/// The universal polynomial `P_m((ν_{jℓ}), ρ) = Σ P_{mjℓ} ν_{jℓ} ρ^j`, stored
/// as its exact coefficient table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmPolynomial {
    order: usize,
    coeffs: BTreeMap<(usize, usize), BigUint>,
}

#[derive(Serialize)]
struct JsonCoeff {
    j: usize,
    l: usize,
    value: String,
}

#[derive(Serialize)]
struct JsonPoly {
    m: usize,
    coeffs: Vec<JsonCoeff>,
}

impl PmPolynomial {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize, l: usize) -> Option<&BigUint> {
        self.coeffs.get(&(j, l))
    }

    /// Coefficients in `(j, ℓ)` lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.coeffs.iter().map(|(&(j, l), v)| (j, l, v))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ P_{mjℓ}·w(j,ℓ)·ρ^{j−1}`, i.e. `P_m` at `ν_{jℓ} = w(j,ℓ)/ρ`.
    ///
    /// The `1/ρ` of the substitution is cancelled against `ρ^j` before
    /// evaluating, so `ρ = 0` gives the limit (only `j = 1` terms survive).
    pub fn evaluate_over_rho(&self, weight: impl Fn(usize, usize) -> f64, rho: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&(j, l), p)| {
                let w = weight(j, l);
                if w == 0.0 {
                    0.0
                } else {
                    to_f64(p) * w * rho.powi(j as i32 - 1)
                }
            })
            .sum()
    }

    pub fn render(&self, format: PolyFormat) -> String {
        match format {
            PolyFormat::Json => {
                let doc = JsonPoly {
                    m: self.order,
                    coeffs: self
                        .iter()
                        .map(|(j, l, v)| JsonCoeff { j, l, value: v.to_string() })
                        .collect(),
                };
                serde_json::to_string(&doc).expect("serializable")
            }
            PolyFormat::Text | PolyFormat::Latex => {
                let latex = format == PolyFormat::Latex;
                let mut groups = Vec::new();
                for j in (1..=self.order).rev() {
                    let terms: Vec<String> = (0..=self.order - j)
                        .map(|l| {
                            let c = &self.coeffs[&(j, l)];
                            let var = nu_name(j, l, latex);
                            if c.is_one() {
                                var
                            } else {
                                format!("{c} {var}")
                            }
                        })
                        .collect();
                    let body = if terms.len() == 1 {
                        terms[0].clone()
                    } else if latex {
                        format!("\\left({}\\right)", terms.join(" + "))
                    } else {
                        format!("({})", terms.join(" + "))
                    };
                    groups.push(format!("{body} {}", rho_power(j, latex)));
                }
                groups.join(" + ")
            }
        }
    }
}

fn nu_name(j: usize, l: usize, latex: bool) -> String {
    if latex {
        format!("\\nu_{{{j} {l}}}")
    } else if j < 10 && l < 10 {
        format!("ν{j}{l}")
    } else {
        format!("ν{j},{l}")
    }
}

fn rho_power(j: usize, latex: bool) -> String {
    if j == 1 {
        return if latex { "\\rho".into() } else { "ρ".into() };
    }
    if latex {
        return format!("\\rho^{{{j}}}");
    }
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::from("ρ");
    for ch in j.to_string().chars() {
        let _ = write!(s, "{}", SUP[ch.to_digit(10).unwrap() as usize]);
    }
    s
}

pub(crate) fn to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Full coefficient table of `P_m`, built by the recursion.
pub fn pm_polynomial(m: usize) -> Result<PmPolynomial> {
    if m == 0 {
        return Err(domain("P_0 is undefined; the order m must be ≥ 1"));
    }
    let coeffs = pm_table_recursive(m).pop().expect("m ≥ 1");
    debug_assert!(coeffs
        .iter()
        .all(|(&(j, l), v)| pm_coeff_stirling(m, j, l).map(|s| &s == v).unwrap_or(false)));
    Ok(PmPolynomial { order: m, coeffs })
}

/// Memoized [`pm_polynomial`], shared across threads.
pub fn pm_polynomial_shared(m: usize) -> Result<Arc<PmPolynomial>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<PmPolynomial>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&m) {
        return Ok(Arc::clone(p));
    }
    let p = Arc::new(pm_polynomial(m)?);
    cache.lock().expect("cache lock").insert(m, Arc::clone(&p));
    Ok(p)
}

/// `Σ P_{mjℓ}·ν_{jℓ}·ρ^j`. Missing `ν` entries read as zero.
pub fn pm_evaluate(
    poly: &PmPolynomial,
    nu: &BTreeMap<(usize, usize), f64>,
    rho: f64,
) -> Result<f64> {
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(domain(format!("ρ must be finite and nonnegative, got {rho}")));
    }
    for (&(j, l), &v) in nu {
        if poly.coeff(j, l).is_none() {
            return Err(domain(format!(
                "ν_{{{j}{l}}} is not a variable of P_{}",
                poly.order()
            )));
        }
        if !(v >= 0.0 && v.is_finite()) {
            return Err(domain(format!("ν_{{{j}{l}}} = {v} must be finite and nonnegative")));
        }
    }
    Ok(poly
        .iter()
        .map(|(j, l, p)| {
            let v = nu.get(&(j, l)).copied().unwrap_or(0.0);
            to_f64(p) * v * rho.powi(j as i32)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Coefficient of ξ^m in (e^ξ − 1)^j ξ^ℓ / (j! ℓ!), times m!, via
    /// truncated rational power series.
    fn generating_oracle(m: usize, j: usize, l: usize) -> BigUint {
        let n = m + 1;
        let fact = |k: usize| BigRational::from_integer(BigInt::from(factorial(k as u64)));
        // e^ξ − 1 truncated
        let base: Vec<BigRational> = (0..n)
            .map(|k| if k == 0 { BigRational::zero() } else { BigRational::one() / fact(k) })
            .collect();
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
        acc[0] = BigRational::one();
        for _ in 0..j {
            let mut next = vec![BigRational::zero(); n];
            for (a, ca) in acc.iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (b, cb) in base.iter().enumerate() {
                    if a + b < n {
                        next[a + b] += ca * cb;
                    }
                }
            }
            acc = next;
        }
        // multiply by ξ^ℓ: shift
        let coeff = if m >= l { acc[m - l].clone() } else { BigRational::zero() };
        let val = coeff * fact(m) / (fact(j) * fact(l));
        assert!(val.is_integer());
        val.to_integer().to_biguint().unwrap()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling2(1, 1).unwrap(), big(1));
        assert_eq!(stirling2(2, 4).unwrap(), big(7));
        assert_eq!(stirling2(2, 6).unwrap(), big(31));
        assert!(stirling2(0, 3).is_err());
        assert!(stirling2(4, 3).is_err());
    }

    #[test]
    fn stirling_table_edges_and_recurrence() {
        let t = StirlingTable::new(15);
        for m in 1..=15 {
            assert_eq!(t.get(1, m).unwrap(), &big(1));
            assert_eq!(t.get(m, m).unwrap(), &big(1));
        }
        for m in 1..15 {
            for j in 2..=m {
                let lhs = t.get(j, m + 1).unwrap().clone();
                let rhs = t.get(j - 1, m).unwrap() + t.get(j, m).unwrap() * j;
                assert_eq!(lhs, rhs);
            }
        }
        assert!(t.get(1, 16).is_err());
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(pm_coeff_recursive(1, 1, 0).unwrap(), big(1));
        assert_eq!(pm_coeff_recursive(4, 3, 1).unwrap(), big(4));
        assert_eq!(pm_coeff_recursive(6, 2, 0).unwrap(), big(31));
        assert!(pm_coeff_recursive(3, 2, 2).is_err());
        assert!(pm_coeff_recursive(0, 1, 0).is_err());
    }

    #[test]
    fn explicit_examples() {
        assert_eq!(pm_coeff_explicit(2, 1, 1).unwrap(), big(2));
        assert_eq!(pm_coeff_explicit(4, 3, 1).unwrap(), big(4));
        for m in 1..=12 {
            assert_eq!(pm_coeff_explicit(m, m, 0).unwrap(), big(1));
        }
        assert!(pm_coeff_explicit(3, 4, 0).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let p2 = pm_polynomial(2).unwrap();
        let expect: BTreeMap<(usize, usize), BigUint> =
            [((2, 0), big(1)), ((1, 0), big(1)), ((1, 1), big(2))].into_iter().collect();
        assert_eq!(p2.coeffs, expect);
        let p1 = pm_polynomial(1).unwrap();
        assert_eq!(p1.len(), 1);
        assert_eq!(p1.coeff(1, 0), Some(&big(1)));
        assert_eq!(pm_polynomial(5).unwrap().coeff(3, 1), Some(&big(30)));
        assert!(pm_polynomial(0).is_err());
    }

    #[test]
    fn generating_function_oracle_matches_all_routes() {
        for m in 1..=9 {
            for j in 1..=m {
                for l in 0..=m - j {
                    let g = generating_oracle(m, j, l);
                    assert_eq!(pm_coeff_recursive(m, j, l).unwrap(), g, "({m},{j},{l})");
                    assert_eq!(pm_coeff_explicit(m, j, l).unwrap(), g);
                    assert_eq!(pm_coeff_stirling(m, j, l).unwrap(), g);
                }
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let p1 = pm_polynomial(1).unwrap();
        let nu: BTreeMap<_, _> = [((1, 0), 2.5)].into_iter().collect();
        assert_eq!(pm_evaluate(&p1, &nu, 3.0).unwrap(), 7.5);

        let p4 = pm_polynomial(4).unwrap();
        assert_eq!(pm_evaluate(&p4, &BTreeMap::new(), 1.7).unwrap(), 0.0);

        // monomial substitution ν_{j0} = J!/(J−j)! at ρ = 1 gives J^m
        for big_j in 1..=8usize {
            for m in 1..=8usize {
                let p = pm_polynomial(m).unwrap();
                let nu: BTreeMap<_, _> = (1..=m.min(big_j))
                    .map(|j| ((j, 0), ((big_j - j + 1)..=big_j).map(|t| t as f64).product()))
                    .collect();
                let v = pm_evaluate(&p, &nu, 1.0).unwrap();
                assert_eq!(v, (big_j as f64).powi(m as i32), "J={big_j} m={m}");
            }
        }
    }

    #[test]
    fn evaluate_rejects_negative_inputs() {
        let p = pm_polynomial(2).unwrap();
        assert!(pm_evaluate(&p, &BTreeMap::new(), -1.0).is_err());
        let nu: BTreeMap<_, _> = [((1, 1), -0.5)].into_iter().collect();
        assert!(pm_evaluate(&p, &nu, 1.0).is_err());
        let nu: BTreeMap<_, _> = [((3, 0), 1.0)].into_iter().collect();
        assert!(pm_evaluate(&p, &nu, 1.0).is_err());
    }

    #[test]
    fn over_rho_matches_direct_evaluation() {
        let p = pm_polynomial(4).unwrap();
        let w = |j: usize, l: usize| 0.3 * j as f64 + 0.1 * l as f64;
        let rho = 0.7;
        let nu: BTreeMap<_, _> = p.iter().map(|(j, l, _)| ((j, l), w(j, l) / rho)).collect();
        let direct = pm_evaluate(&p, &nu, rho).unwrap();
        let reduced = p.evaluate_over_rho(w, rho);
        assert!((direct - reduced).abs() <= 1e-13 * direct);
        // ρ = 0 keeps only j = 1 terms
        let at_zero = p.evaluate_over_rho(w, 0.0);
        let expect: f64 = (0..=3).map(|l| to_f64(p.coeff(1, l).unwrap()) * w(1, l)).sum();
        assert_eq!(at_zero, expect);
    }

    #[test]
    fn text_rendering() {
        assert_eq!(pm_polynomial(1).unwrap().render(PolyFormat::Text), "ν10 ρ");
        assert_eq!(
            pm_polynomial(3).unwrap().render(PolyFormat::Text),
            "ν30 ρ³ + (3 ν20 + 3 ν21) ρ² + (ν10 + 3 ν11 + 3 ν12) ρ"
        );
        assert_eq!(
            pm_polynomial(2).unwrap().render(PolyFormat::Latex),
            "\\nu_{2 0} \\rho^{2} + \\left(\\nu_{1 0} + 2 \\nu_{1 1}\\right) \\rho"
        );
        let json = pm_polynomial(2).unwrap().render(PolyFormat::Json);
        assert_eq!(
            json,
            r#"{"m":2,"coeffs":[{"j":1,"l":0,"value":"1"},{"j":1,"l":1,"value":"2"},{"j":2,"l":0,"value":"1"}]}"#
        );
        assert!(pm_polynomial(12).unwrap().render(PolyFormat::Text).contains("ρ¹²"));
    }

    proptest! {
        #[test]
        fn coefficients_strictly_positive(m in 1usize..=14) {
            let p = pm_polynomial(m).unwrap();
            prop_assert_eq!(p.len(), m * (m + 1) / 2);
            for (_, _, v) in p.iter() {
                prop_assert!(!v.is_zero());
            }
        }
    }
}
