//! Integer evaluation of the conjectured values and lower-bound formulas,
//! closed-form vertex counts of the constructions, and certification of a
//! constructed coloring into a lower bound.

use std::fmt;

use thiserror::Error;

use crate::certificate::{write_certificate, write_partial_certificate, CertificateFile};
use crate::detectors::{detect, find_rainbow_triangle, DetectError, DetectionReport};
use crate::graph::{Color, ColoredCompleteGraph, EdgeColoring, PartialColoring, Vertex};
use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{what}: parameter out of range ({detail})")]
    Range { what: &'static str, detail: String },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
}

fn range(what: &'static str, detail: impl Into<String>) -> BoundError {
    BoundError::Range {
        what,
        detail: detail.into(),
    }
}

pub fn pow5(e: u32) -> i64 {
    5i64.checked_pow(e)
        .expect("5^e fits in i64 for the supported parameter ranges")
}

fn exp(k: i64, shift: i64) -> u32 {
    u32::try_from((k - shift) / 2).expect("nonnegative exponent")
}

/// Values quoted from the literature, used as explicit inputs only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownValue {
    pub name: &'static str,
    pub value: i64,
    pub source: &'static str,
}

pub const KNOWN_VALUES: &[KnownValue] = &[
    KnownValue {
        name: "R2(W6)",
        value: 19,
        source: "cited two-color wheel Ramsey number",
    },
    KnownValue {
        name: "R(F3,F3)",
        value: 14,
        source: "cited two-color fan Ramsey number",
    },
    KnownValue {
        name: "R(P4,P4)",
        value: 5,
        source: "cited; reproduced by exhaustive enumeration",
    },
    KnownValue {
        name: "R(K3,K3)",
        value: 6,
        source: "classical; reproduced by exhaustive enumeration",
    },
];

pub fn known_value(name: &str) -> Option<i64> {
    KNOWN_VALUES
        .iter()
        .find(|kv| kv.name == name)
        .map(|kv| kv.value)
}

/// `R(K^+_{1,n}, K^+_{1,n}) = 2n - 1` for `n >= 4`.
pub fn ramsey_subdivided_star(n: i64) -> Result<i64, BoundError> {
    if n < 4 {
        return Err(range("R(K+1n)", format!("n = {n} < 4")));
    }
    Ok(2 * n - 1)
}

/// Conjectured `GR_k(F_3)`: `14 * 5^((k-2)/2) - 1` for even `k`,
/// `33 * 5^((k-3)/2)` for odd `k`.
pub fn conj_fan(k: i64) -> Result<i64, BoundError> {
    if k < 2 {
        return Err(range("conj_fan", format!("k = {k} < 2")));
    }
    Ok(if k % 2 == 0 {
        14 * pow5(exp(k, 2)) - 1
    } else {
        33 * pow5(exp(k, 3))
    })
}

/// Lower bound for `GR_k(F_3)`, even `k`: 14 for `k = 2`, otherwise
/// `14 * 5^((k-2)/2) + 1`.
pub fn thm_fan_lower(k: i64) -> Result<i64, BoundError> {
    if k < 2 || k % 2 != 0 {
        return Err(range(
            "thm_fan_lower",
            format!("k = {k} must be even and at least 2"),
        ));
    }
    Ok(if k == 2 { 14 } else { 14 * pow5(exp(k, 2)) + 1 })
}

/// Conjectured `GR_k(K_1 + P_m)` in terms of `r2 = R_2(K_1 + P_m)`.
pub fn conj_kipas(k: i64, m: i64, r2: i64) -> Result<i64, BoundError> {
    if k < 2 || m < 2 {
        return Err(range(
            "conj_kipas",
            format!("k = {k}, m = {m}; need k >= 2 and m >= 2"),
        ));
    }
    Ok(match (k % 2 == 0, m % 2 == 0) {
        (true, false) => (r2 - 1) * pow5(exp(k, 2)) + 1,
        (true, true) => r2 + (m / 2) * (pow5(exp(k, 0)) - 5),
        (false, _) => (2 * (r2 - 1)).max(5 * m) * pow5(exp(k, 3)) + 1,
    })
}

/// Conjectured `GR_k(W_m)` for even `m >= 4` in terms of `r2 = R_2(W_m)`.
pub fn conj_wheel(k: i64, m: i64, r2: i64) -> Result<i64, BoundError> {
    if k < 2 || m < 4 || m % 2 != 0 {
        return Err(range(
            "conj_wheel",
            format!("k = {k}, m = {m}; need k >= 2 and even m >= 4"),
        ));
    }
    Ok(if k % 2 == 0 {
        (r2 - 1) * pow5(exp(k, 2)) + 1
    } else {
        2 * (r2 - 1) * pow5(exp(k, 3)) + 1
    })
}

/// Shared shape of the two lower-bound theorems; `(a, b)` are the gadget
/// coefficients of the branch selected by `m mod 4`.
fn tower_lower(k: i64, m: i64, r2: i64, a: i64, b: i64) -> i64 {
    if k == 3 {
        (2 * r2 - 1).max(5 * m + 1)
    } else if k % 2 == 0 {
        r2 + 5 * a * (pow5(exp(k, 2)) - 1) - b * (k - 2)
    } else {
        2 * (r2 + 5 * a * (pow5(exp(k, 3)) - 1) - b * (k - 3)) - 1
    }
}

/// Lower bound for `GR_k(K_1 + P_m)` and `GR_k(W_m)`, even `m >= 6`.
pub fn thm_kipas_wheel_lower(k: i64, m: i64, r2: i64) -> Result<i64, BoundError> {
    if k < 2 || m < 6 || m % 2 != 0 {
        return Err(range(
            "thm_kipas_wheel_lower",
            format!("k = {k}, m = {m}; need k >= 2 and even m >= 6"),
        ));
    }
    Ok(if m % 4 == 0 {
        tower_lower(k, m, r2, m - 2, m - 4)
    } else {
        tower_lower(k, m, r2, m - 1, m - 2)
    })
}

/// Lower bound for `GR_k(K_1 + P_m)`, odd `m >= 7`.
pub fn thm_odd_m_lower(k: i64, m: i64, r2: i64) -> Result<i64, BoundError> {
    if k < 2 || m < 7 || m % 2 == 0 {
        return Err(range(
            "thm_odd_m_lower",
            format!("k = {k}, m = {m}; need k >= 2 and odd m >= 7"),
        ));
    }
    Ok(if m % 4 == 1 {
        tower_lower(k, m, r2, m - 3, m - 5)
    } else {
        tower_lower(k, m, r2, m - 2, m - 3)
    })
}

/// Printed closed form of the even-`k` gap for `GR_k(W_6)` with `R_2(W_6) = 19`.
pub fn printed_wheel6_even_gap(k: i64) -> i64 {
    7 * pow5(exp(k, 0)) - 4 * k + 1
}

/// Printed closed form of the odd-`k` gap for `GR_k(W_6)`.
pub fn printed_wheel6_odd_gap(k: i64) -> i64 {
    14 * pow5(exp(k, 3)) - 8 * k + 10
}

/// Printed closed form of the even-`k` gap for `GR_k(K_1 + P_6)`.
pub fn printed_kipas6_even_gap(k: i64) -> i64 {
    2 * pow5(exp(k, 0)) - 4 * k - 2
}

/// Printed closed form of the odd-`k` gap for `GR_k(K_1 + P_6)`.
pub fn printed_kipas6_odd_gap(k: i64, r2: i64) -> i64 {
    ((52 - 2 * r2) * pow5(exp(k, 3)) + 2 * r2).min(2 * r2 + 4 * pow5(exp(k, 1))) - 8 * k - 28
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarValues {
    /// `GR_k(K^+_{1,n}) = 5n/2 + k - 6`.
    pub subdivided_gr: i64,
    /// `GR*_k(K^+_{1,n}) = 2n + k - 5`.
    pub subdivided_gr_star: i64,
    /// `GR_k(K_{1,n}) = 5n/2 - 3`.
    pub star_gr: i64,
    /// `GR*_k(K_{1,n}) = 2n - 2`.
    pub star_gr_star: i64,
}

pub fn star_values(n: i64, k: i64) -> Result<StarValues, BoundError> {
    if n < 12 || n % 2 != 0 || k < 3 {
        return Err(range(
            "star_values",
            format!("n = {n}, k = {k}; need even n >= 12 and k >= 3"),
        ));
    }
    Ok(StarValues {
        subdivided_gr: 5 * n / 2 + k - 6,
        subdivided_gr_star: 2 * n + k - 5,
        star_gr: 5 * n / 2 - 3,
        star_gr_star: 2 * n - 2,
    })
}

/// Closed-form vertex counts of the constructions.
pub mod sizes {
    use super::pow5;

    fn gadget(m: i64) -> i64 {
        if m % 4 == 0 {
            m - 2
        } else {
            m - 1
        }
    }

    /// `|H_{k2}| = 5^{k2/2}`.
    pub fn h(k2: i64) -> i64 {
        pow5((k2 / 2) as u32)
    }

    /// `|H_{k2}[F]|`: `(m-2) 5^{k2/2}` or `(m-1) 5^{k2/2}` by `m mod 4`.
    pub fn h_of_f(k2: i64, m: i64) -> i64 {
        gadget(m) * h(k2)
    }

    /// `|G_{k2}(ell)|` in closed form; `k2 = 2j - 2`.
    pub fn g_ell(k2: i64, m: i64) -> i64 {
        let j = k2 / 2 + 1;
        if m % 4 == 0 {
            (m - 2) * pow5((j - 1) as u32) - m / 2 + 2
        } else {
            (m - 1) * pow5((j - 1) as u32) - m / 2 + 1
        }
    }

    /// `|G_{k2}(ell)| - |G_{k2-2}(ell)| = 4 |H_{k2-2}[F]|`.
    pub fn g_ell_step(k2: i64, m: i64) -> i64 {
        4 * h_of_f(k2 - 2, m)
    }

    /// `|G_k| - |G_{k-2}|` for even `k = 2j >= 4`:
    /// `4(m-2)5^{j-1} - 2m + 8` or `4(m-1)5^{j-1} - 2m + 4`.
    pub fn g_even_step(k: i64, m: i64) -> i64 {
        let j = k / 2;
        if m % 4 == 0 {
            4 * (m - 2) * pow5((j - 1) as u32) - 2 * m + 8
        } else {
            4 * (m - 1) * pow5((j - 1) as u32) - 2 * m + 4
        }
    }

    /// `|G_k|` for even `k = 2j` in closed form, with a base of `base` vertices
    /// standing in for `R_2 - 1`.
    pub fn g_even(k: i64, m: i64, base: i64) -> i64 {
        let j = k / 2;
        if m % 4 == 0 {
            base + 5 * (m - 2) * (pow5((j - 1) as u32) - 1) - 2 * (m - 4) * (j - 1)
        } else {
            base + 5 * (m - 1) * (pow5((j - 1) as u32) - 1) - 2 * (m - 2) * (j - 1)
        }
    }

    /// Odd `k >= 3` by doubling `G_{k-1}`.
    pub fn g_odd_doubled(k: i64, m: i64, base: i64) -> i64 {
        2 * g_even(k - 1, m, base)
    }

    /// `|G_k| = 14 * 5^{(k-2)/2}` for the even fan tower.
    pub fn fan_gk(k: i64) -> i64 {
        14 * pow5(((k - 2) / 2) as u32)
    }

    /// `|H| = 5n/2 + k - 7`.
    pub fn star_h(n: i64, k: i64) -> i64 {
        5 * n / 2 + k - 7
    }

    /// Degree of the extra vertex: `2n + k - 6`.
    pub fn star_w_degree(n: i64, k: i64) -> i64 {
        2 * n + k - 6
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ConjectureFormula,
    TheoremFormula,
    CertifiedConstruction,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ConjectureFormula => "conjecture-formula",
            Provenance::TheoremFormula => "theorem-formula",
            Provenance::CertifiedConstruction => "certified-construction",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub name: String,
    pub params: Vec<(String, i64)>,
    pub value: i64,
    pub provenance: Provenance,
    /// Digest of the verified certificate for certified records.
    pub certificate: Option<String>,
}

impl BoundRecord {
    pub fn formula(
        name: impl Into<String>,
        params: Vec<(String, i64)>,
        value: i64,
        provenance: Provenance,
    ) -> Self {
        Self {
            name: name.into(),
            params,
            value,
            provenance,
            certificate: None,
        }
    }

    /// `key=value` fields separated by spaces, stable across runs.
    pub fn to_record_line(&self) -> String {
        let mut s = format!(
            "bound name={} value={} provenance={}",
            self.name, self.value, self.provenance
        );
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={v}"));
        }
        if let Some(c) = &self.certificate {
            s.push_str(&format!(" certificate=sha256:{c}"));
        }
        s
    }
}

/// One pattern to be checked in each of `colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationRequest {
    pub pattern: Pattern,
    pub colors: Vec<Color>,
}

impl VerificationRequest {
    pub fn new(pattern: Pattern, colors: impl IntoIterator<Item = Color>) -> Self {
        Self {
            pattern,
            colors: colors.into_iter().collect(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("verification failed: {0}")]
    Witness(DetectionReport),
    #[error(transparent)]
    Detect(#[from] DetectError),
}

/// Runs the rainbow-triangle check and every requested detector. Returns
/// all reports, or the first witness as an error.
pub fn verify_all<G: EdgeColoring + ?Sized>(
    g: &G,
    requests: &[VerificationRequest],
) -> Result<Vec<DetectionReport>, CertifyError> {
    let mut reports = vec![find_rainbow_triangle(g)];
    for req in requests {
        for &c in &req.colors {
            reports.push(detect(g, &req.pattern, c)?);
        }
    }
    for r in &reports {
        if !r.is_absent() {
            debug_assert!(r.validate(g), "unsound witness {r}");
            return Err(CertifyError::Witness(r.clone()));
        }
    }
    Ok(reports)
}

#[derive(Clone, Debug)]
pub struct Certification {
    pub record: BoundRecord,
    pub reports: Vec<DetectionReport>,
    pub certificate: CertificateFile,
}

fn certificate_metadata(
    name: &str,
    params: &[(String, i64)],
    requests: &[VerificationRequest],
    extra: &[(String, String)],
) -> Vec<(String, String)> {
    let mut meta = vec![("recipe".to_string(), name.to_string())];
    for (k, v) in params {
        meta.push((format!("param.{k}"), v.to_string()));
    }
    for req in requests {
        let colors: Vec<String> = req.colors.iter().map(|c| c.to_string()).collect();
        meta.push((
            "verified".to_string(),
            format!("{} {}", req.pattern, colors.join(",")),
        ));
    }
    meta.extend(extra.iter().cloned());
    meta
}

/// Verifies `g` and concludes the lower bound `|V(g)| + 1`.
pub fn certify(
    name: &str,
    params: Vec<(String, i64)>,
    g: &ColoredCompleteGraph,
    requests: &[VerificationRequest],
    extra_metadata: &[(String, String)],
) -> Result<Certification, CertifyError> {
    let reports = verify_all(g, requests)?;
    let value = g.n() as i64 + 1;
    let mut meta = certificate_metadata(name, &params, requests, extra_metadata);
    meta.push(("claimed-bound".to_string(), value.to_string()));
    let certificate = write_certificate(g, &meta);
    let record = BoundRecord {
        name: name.to_string(),
        params,
        value,
        provenance: Provenance::CertifiedConstruction,
        certificate: Some(certificate.digest()),
    };
    Ok(Certification {
        record,
        reports,
        certificate,
    })
}

/// Verifies a complete graph plus one extra vertex `w` with some pairs
/// absent, concluding the star-critical bound `deg(w) + 1`.
pub fn certify_extension(
    name: &str,
    params: Vec<(String, i64)>,
    g: &PartialColoring,
    w: Vertex,
    requests: &[VerificationRequest],
    extra_metadata: &[(String, String)],
) -> Result<Certification, CertifyError> {
    let reports = verify_all(g, requests)?;
    let degree = g.degree(w) as i64;
    let value = degree + 1;
    let mut meta = certificate_metadata(name, &params, requests, extra_metadata);
    meta.push(("extra-vertex".to_string(), w.to_string()));
    meta.push(("claimed-bound".to_string(), value.to_string()));
    let certificate = write_partial_certificate(g, &meta);
    let record = BoundRecord {
        name: name.to_string(),
        params,
        value,
        provenance: Provenance::CertifiedConstruction,
        certificate: Some(certificate.digest()),
    };
    Ok(Certification {
        record,
        reports,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_formulas() {
        assert_eq!(conj_fan(4).unwrap(), 69);
        assert_eq!(conj_fan(3).unwrap(), 33);
        assert_eq!(conj_fan(5).unwrap(), 165);
        assert_eq!(thm_fan_lower(2).unwrap(), 14);
        assert_eq!(thm_fan_lower(4).unwrap(), 71);
        assert_eq!(thm_fan_lower(6).unwrap(), 351);
        assert!(conj_fan(1).is_err());
        assert!(thm_fan_lower(3).is_err());
    }

    #[test]
    fn kipas_and_wheel_conjectures() {
        assert_eq!(conj_wheel(4, 6, 19).unwrap(), 91);
        assert_eq!(conj_wheel(5, 6, 19).unwrap(), 2 * 18 * 5 + 1);
        for r2 in [10, 19, 22] {
            assert_eq!(conj_kipas(2, 6, r2).unwrap(), r2);
            assert_eq!(conj_kipas(2, 8, r2).unwrap(), r2);
            assert_eq!(conj_kipas(3, 6, r2).unwrap(), (2 * (r2 - 1)).max(30) + 1);
        }
        assert_eq!(conj_kipas(4, 7, 20).unwrap(), 19 * 5 + 1);
        assert!(conj_wheel(4, 5, 19).is_err());
    }

    #[test]
    fn theorem_branches() {
        assert_eq!(thm_kipas_wheel_lower(4, 6, 19).unwrap(), 111);
        assert_eq!(thm_kipas_wheel_lower(3, 6, 19).unwrap(), 37);
        assert_eq!(thm_kipas_wheel_lower(3, 6, 10).unwrap(), 31);
        assert_eq!(thm_kipas_wheel_lower(2, 8, 22).unwrap(), 22);
        // m = 0 mod 4, k = 4: r2 + 5*6*4 - 4*2
        assert_eq!(thm_kipas_wheel_lower(4, 8, 22).unwrap(), 22 + 120 - 8);
        // odd k = 5 doubles the k = 4 graph
        assert_eq!(thm_kipas_wheel_lower(5, 6, 19).unwrap(), 2 * (111 - 1) + 1);
        assert_eq!(thm_odd_m_lower(4, 7, 30).unwrap(), 30 + 5 * 5 * 4 - 4 * 2);
        assert_eq!(thm_odd_m_lower(4, 9, 30).unwrap(), 30 + 5 * 6 * 4 - 4 * 2);
        assert_eq!(thm_odd_m_lower(3, 7, 30).unwrap(), 59);
        assert!(thm_odd_m_lower(4, 8, 30).is_err());
        assert!(thm_kipas_wheel_lower(4, 7, 30).is_err());
    }

    #[test]
    fn star_value_examples() {
        let s = star_values(12, 3).unwrap();
        assert_eq!((s.subdivided_gr, s.subdivided_gr_star), (27, 22));
        assert_eq!((s.star_gr, s.star_gr_star), (27, 22));
        let t = star_values(12, 4).unwrap();
        assert_eq!(t.subdivided_gr - s.subdivided_gr, 1);
        assert_eq!(t.subdivided_gr_star - s.subdivided_gr_star, 1);
        assert!(star_values(10, 3).is_err());
    }

    #[test]
    fn kipas_gap_matches_printed_form() {
        for k in [4, 6, 8, 10] {
            let gap = thm_kipas_wheel_lower(k, 6, 19).unwrap() - conj_kipas(k, 6, 19).unwrap();
            assert_eq!(gap, printed_kipas6_even_gap(k));
        }
        for k in [5, 7, 9] {
            for r2 in [12, 15, 19] {
                let gap = thm_kipas_wheel_lower(k, 6, r2).unwrap() - conj_kipas(k, 6, r2).unwrap();
                assert_eq!(gap, printed_kipas6_odd_gap(k, r2), "k={k} r2={r2}");
            }
        }
    }

    #[test]
    fn wheel_odd_gap_matches_printed_form() {
        for k in [5, 7, 9] {
            let gap = thm_kipas_wheel_lower(k, 6, 19).unwrap() - conj_wheel(k, 6, 19).unwrap();
            assert_eq!(gap, printed_wheel6_odd_gap(k));
        }
    }

    #[test]
    fn wheel_even_gap_is_seven_times_five_to_the_half_k_minus_one() {
        // the computed gap; compare the printed form in the acceptance suite
        for k in [4, 6, 8] {
            let gap = thm_kipas_wheel_lower(k, 6, 19).unwrap() - conj_wheel(k, 6, 19).unwrap();
            assert_eq!(gap, 7 * pow5(((k - 2) / 2) as u32) - 4 * k + 1);
        }
    }

    #[test]
    fn size_recurrences_agree_with_closed_forms() {
        for m in [6, 8, 10, 12, 14] {
            for k2 in (2..=10).step_by(2) {
                assert_eq!(
                    sizes::g_ell(k2, m),
                    sizes::g_ell(k2 - 2, m) + sizes::g_ell_step(k2, m)
                );
            }
            for k in (4..=12).step_by(2) {
                assert_eq!(
                    sizes::g_even(k, m, 17),
                    sizes::g_even(k - 2, m, 17) + sizes::g_even_step(k, m)
                );
                // the even-tower step is four G(ell) blocks
                assert_eq!(sizes::g_even_step(k, m), 4 * sizes::g_ell(k - 2, m));
            }
        }
        assert_eq!(sizes::g_even_step(4, 6), 92);
        assert_eq!(sizes::g_even_step(4, 8), 112);
    }

    #[test]
    fn theorem_value_is_tower_size_plus_one() {
        for m in [6, 8, 10] {
            for r2 in [10, 19, 30] {
                for k in (2..=12).step_by(2) {
                    assert_eq!(
                        thm_kipas_wheel_lower(k, m, r2).unwrap(),
                        sizes::g_even(k, m, r2 - 1) + 1
                    );
                }
                for k in (5..=11).step_by(2) {
                    assert_eq!(
                        thm_kipas_wheel_lower(k, m, r2).unwrap(),
                        sizes::g_odd_doubled(k, m, r2 - 1) + 1
                    );
                }
            }
        }
    }

    #[test]
    fn disproof_inequalities_on_the_grid() {
        // With the same r2 plugged into both sides, the wheel comparison is
        // not strict at k = 4, m = 8 for the two largest r2 values.
        let mut wheel_failures = Vec::new();
        for m in [6i64, 8, 10] {
            for r2 in 2..=(4 * m - 2) {
                for k in [4, 6, 8, 10] {
                    let thm = thm_kipas_wheel_lower(k, m, r2).unwrap();
                    assert!(
                        thm > conj_kipas(k, m, r2).unwrap(),
                        "kipas k={k} m={m} r2={r2}"
                    );
                    if thm <= conj_wheel(k, m, r2).unwrap() {
                        wheel_failures.push((k, m, r2));
                    }
                }
            }
        }
        assert_eq!(wheel_failures, vec![(4, 8, 29), (4, 8, 30)]);
    }

    #[test]
    fn record_line_is_stable() {
        let r = BoundRecord::formula(
            "conj_fan",
            vec![("k".into(), 4)],
            69,
            Provenance::ConjectureFormula,
        );
        assert_eq!(
            r.to_record_line(),
            "bound name=conj_fan value=69 provenance=conjecture-formula k=4"
        );
        assert_eq!(known_value("R2(W6)"), Some(19));
        assert_eq!(ramsey_subdivided_star(4).unwrap(), 7);
    }
}
