//! Check results and the Bianchi-identity calibration report.

use serde::Serialize;
use skewtor::scalar::display;
use skewtor::{KForm, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A trace identity that is exactly proportional but would need a
    /// different global trace constant than the one calibrated once on the
    /// nilmanifold suite.
    CalibrationConflict,
    Skipped,
}

/// One verification result. `pass` means `lhs` and `rhs` are exactly equal
/// as rational data; there is no tolerance anywhere.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    pub lhs: String,
    pub rhs: String,
    pub detail: String,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self.status, CheckStatus::Pass | CheckStatus::Skipped)
    }

    pub fn json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn text_line(&self) -> String {
        let tag = match self.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::CalibrationConflict => "CONFLICT",
            CheckStatus::Skipped => "SKIP",
        };
        if self.detail.is_empty() {
            format!("{tag:<9} {:<24} lhs = {} ; rhs = {}", self.id, self.lhs, self.rhs)
        } else {
            format!(
                "{tag:<9} {:<24} lhs = {} ; rhs = {} ; {}",
                self.id, self.lhs, self.rhs, self.detail
            )
        }
    }
}

/// Human-readable tally over a result list.
pub fn summary(results: &[CheckResult]) -> String {
    let mut pass = 0;
    let mut fail = 0;
    let mut conflict = 0;
    let mut skip = 0;
    for r in results {
        match r.status {
            CheckStatus::Pass => pass += 1,
            CheckStatus::Fail => fail += 1,
            CheckStatus::CalibrationConflict => conflict += 1,
            CheckStatus::Skipped => skip += 1,
        }
    }
    format!(
        "{} checks: {} pass, {} fail, {} calibration conflicts, {} skipped",
        results.len(),
        pass,
        fail,
        conflict,
        skip
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaSign {
    Positive,
    Negative,
    Undefined,
}

/// Result of calibrating the string constant in the two Bianchi-type
/// identities `dT = 2α' Tr(F ∧ F)` and `dT = 2α' (Tr(F ∧ F) - Tr(R̃ ∧ R̃))`.
#[derive(Clone, Debug)]
pub struct BianchiReport {
    /// `α'` solving `dT = 2α' P_A`, when the forms are proportional.
    pub alpha_modb: Option<Scalar>,
    /// `α'` solving `dT = 2α' (P_A - P_tilde)`.
    pub alpha_modb1: Option<Scalar>,
    pub sign: AlphaSign,
    pub proportional: bool,
}

/// Exact linear solve for the proportionality constants. The zero form is
/// proportional to everything; `dT = 0` against a nonzero trace form has
/// the unique solution `α' = 0`, while a nonzero `dT` against a vanishing
/// trace form has none.
pub fn bianchi_calibrate(dt: &KForm, p_a: &KForm, p_tilde: &KForm) -> BianchiReport {
    let solve = |target: &KForm, source: &KForm| -> (bool, Option<Scalar>) {
        if target.is_zero() && source.is_zero() {
            // vacuous identity: every α' works
            return (true, None);
        }
        match target.proportionality(source) {
            Some(c) => (true, Some(c / skewtor::int(2))),
            None => (false, None),
        }
    };
    let diff = p_a.sub(p_tilde);
    let (prop_a, alpha_modb) = solve(dt, p_a);
    let (prop_d, alpha_modb1) = solve(dt, &diff);
    let sign_of = |s: &Scalar| -> Option<AlphaSign> {
        use num_traits::Zero;
        if s.is_zero() {
            None
        } else if s > &Scalar::zero() {
            Some(AlphaSign::Positive)
        } else {
            Some(AlphaSign::Negative)
        }
    };
    let sign = match (&alpha_modb, &alpha_modb1) {
        (Some(a), Some(b)) => match (sign_of(a), sign_of(b)) {
            (Some(x), Some(y)) if x == y => x,
            _ => AlphaSign::Undefined,
        },
        (Some(a), None) => sign_of(a).unwrap_or(AlphaSign::Undefined),
        (None, Some(b)) => sign_of(b).unwrap_or(AlphaSign::Undefined),
        (None, None) => AlphaSign::Undefined,
    };
    BianchiReport { alpha_modb, alpha_modb1, sign, proportional: prop_a && prop_d }
}

/// Renders an optional scalar for report fields.
pub fn show_alpha(a: &Option<Scalar>) -> String {
    match a {
        Some(s) => display(s),
        None => "undefined".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use skewtor::{int, rat};

    fn vol_like(c: i64) -> KForm {
        KForm::basis(6, &[1, 2, 3, 4]).scale(&int(c))
    }

    #[test]
    fn nil6_style_calibration() {
        let dt = vol_like(2);
        let p_a = vol_like(4); // P = 2 dT
        let p_t = vol_like(-2); // P_tilde = -dT
        let rep = bianchi_calibrate(&dt, &p_a, &p_t);
        assert_eq!(rep.alpha_modb, Some(rat(1, 4)));
        assert_eq!(rep.alpha_modb1, Some(rat(1, 6)));
        assert_eq!(rep.sign, AlphaSign::Positive);
        assert!(rep.proportional);
    }

    #[test]
    fn vacuous_identity() {
        let z = KForm::zero(6, 4);
        let rep = bianchi_calibrate(&z, &z, &z);
        assert!(rep.proportional);
        assert_eq!(rep.alpha_modb, None);
        assert_eq!(rep.sign, AlphaSign::Undefined);
    }

    #[test]
    fn non_proportional_forms() {
        let dt = vol_like(1);
        let other = KForm::basis(6, &[1, 2, 3, 5]);
        let rep = bianchi_calibrate(&dt, &other, &KForm::zero(6, 4));
        assert!(!rep.proportional);
        assert_eq!(rep.alpha_modb, None);
    }

    #[test]
    fn result_serialization_is_stable() {
        let r = CheckResult {
            id: "pont.half_trace".into(),
            status: CheckStatus::Pass,
            lhs: "2*e1234".into(),
            rhs: "2*e1234".into(),
            detail: String::new(),
        };
        assert_eq!(
            r.json_line(),
            r#"{"id":"pont.half_trace","status":"pass","lhs":"2*e1234","rhs":"2*e1234","detail":""}"#
        );
    }
}
