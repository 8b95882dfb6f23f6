//! End-to-end verification: regenerate every family, run the censuses and
//! the closure oracle, then evaluate the claims file.

use serde::Serialize;
use thiserror::Error;

use crate::claims::{audit, parse_claims, AuditReport, Expectation, OverflowError, ParseError, Verdict};
use crate::closure::{closure, encode_triple, move_set, ClosureConfig, ClosureError};
use crate::cone::{build_census, CensusError, CensusReport};
use crate::declared::{interval_case_count, ConfigError, DeclaredCensus, RangeCase};
use crate::families::{
    family_nondegenerate, family_one_degenerate, family_two_degenerate, regular_models, subfamily,
    FamilyId,
};
use crate::triple::orbit;

/// Published values every computed quantity is checked against.
pub mod published {
    pub const NONDEGENERATE: i64 = 25;
    pub const ONE_DEGENERATE: i64 = 103;
    pub const TWO_DEGENERATE: i64 = 219;
    pub const SUBFAMILIES: [i64; 9] = [7, 10, 15, 12, 57, 45, 34, 24, 15];
    pub const REGULAR: i64 = 347;
    pub const SYMMETRIC_REGULAR: i64 = 12;
    pub const SYMMETRIC_P: i64 = 13;
    pub const P_MODELS: i64 = 450;
    pub const T_MODELS: i64 = 129;
    pub const P_CONES: i64 = 2657;
    pub const T_CONES: i64 = 741;
    pub const TOTAL_CONES: i64 = 3398;
    pub const D13_CASES: i64 = 3;
    pub const D13_CASES_BEFORE: i64 = 4;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("claims: {0}")]
    Claims(#[from] ParseError),
    #[error(transparent)]
    Overflow(#[from] OverflowError),
    #[error("census: {0}")]
    Census(#[from] CensusError),
    #[error("closure oracle for {triple}: {source}")]
    Closure {
        triple: String,
        #[source]
        source: ClosureError,
    },
}

impl VerifyError {
    /// Input errors map to exit code 2; everything else is a verification failure.
    pub fn is_input_error(&self) -> bool {
        matches!(self, VerifyError::Config(_) | VerifyError::Claims(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub census: CensusReport,
    /// Computed quantities compared against published values.
    pub checks: Vec<Verdict>,
    /// The claims file, evaluated.
    pub claims: AuditReport,
    pub findings: Vec<String>,
    pub exit_status: i32,
}

fn check(name: &str, computed: impl TryInto<i64>, stated: i64) -> Verdict {
    let lhs = computed.try_into().unwrap_or(i64::MAX);
    Verdict {
        name: name.to_string(),
        holds: lhs == stated,
        lhs,
        rhs: stated,
        expect: Expectation::Holds,
        cite: String::new(),
    }
}

/// Number of regular triples whose closure under the group moves has
/// exactly as many classes as the directly computed orbit.
pub fn closure_oracle_agreements() -> Result<usize, VerifyError> {
    let moves = move_set("triple-group").expect("built-in move set");
    let config = ClosureConfig::default();
    let mut agree = 0;
    for m in regular_models().map_err(CensusError::from)?.iter() {
        let result = closure(&encode_triple(m.triple), &moves, &config).map_err(|source| {
            VerifyError::Closure {
                triple: m.triple.to_string(),
                source,
            }
        })?;
        if result.class_count == orbit(m.triple).len() {
            agree += 1;
        }
    }
    Ok(agree)
}

pub fn run_full_verification(claims_text: &str, config_text: &str) -> Result<VerificationReport, VerifyError> {
    let declared = DeclaredCensus::parse(config_text)?;
    let claims = parse_claims(claims_text)?;

    let census = build_census(&declared)?;
    let regular = regular_models().map_err(CensusError::from)?;

    let mut checks = vec![
        check("families.nondegenerate", family_nondegenerate().len(), published::NONDEGENERATE),
        check("families.one_degenerate", family_one_degenerate().len(), published::ONE_DEGENERATE),
        check("families.two_degenerate", family_two_degenerate().len(), published::TWO_DEGENERATE),
    ];
    for (id, stated) in FamilyId::TWO_DEGENERATE.iter().zip(published::SUBFAMILIES) {
        checks.push(check(&format!("families.{}", id.tag().to_lowercase()), subfamily(*id).len(), stated));
    }
    let distinct: std::collections::BTreeSet<_> = regular.iter().map(|m| m.canonical_key).collect();
    checks.push(check("families.distinct_classes", distinct.len(), published::REGULAR));
    let symmetric_regular = census.p_symmetric.iter().filter(|r| r.triple.is_some()).count();
    checks.extend([
        check("symmetry.regular", symmetric_regular, published::SYMMETRIC_REGULAR),
        check("symmetry.p_total", census.p_symmetric.len(), published::SYMMETRIC_P),
        check("census.p_models", census.p_models, published::P_MODELS),
        check("census.t_models", census.t_models, published::T_MODELS),
        check("cones.p", census.p_cones, published::P_CONES),
        check("cones.t", census.t_cones, published::T_CONES),
        check("cones.total", census.total_cones, published::TOTAL_CONES),
        check(
            "corrections.d13_interval",
            interval_case_count(RangeCase::new(-3, -1).expect("ordered")),
            published::D13_CASES,
        ),
        check(
            "corrections.d13_interval_before",
            interval_case_count(RangeCase::new(-3, 0).expect("ordered")),
            published::D13_CASES_BEFORE,
        ),
        check("closure.oracle_agreements", closure_oracle_agreements()?, published::REGULAR),
    ]);
    for entry in &declared.entries {
        if let Some(parts) = &entry.breakdown {
            let sum: u64 = parts.iter().map(|p| p.1).sum();
            checks.push(check(&format!("declared.{}", entry.label), sum, entry.count as i64));
        }
    }

    let claims = audit(&claims)?;
    let check_report = AuditReport::from_verdicts(checks);

    let mut findings = census.findings.clone();
    findings.extend(check_report.findings);
    findings.extend(claims.findings.iter().cloned());
    let exit_status = if check_report.exit_status == 0 && claims.exit_status == 0 { 0 } else { 1 };

    Ok(VerificationReport {
        census,
        checks: check_report.verdicts,
        claims,
        findings,
        exit_status,
    })
}

/// Verification against the shipped config and claims.
pub fn run_default_verification() -> Result<VerificationReport, VerifyError> {
    run_full_verification(crate::claims::DEFAULT_CLAIMS, crate::declared::DEFAULT_CONFIG)
}
