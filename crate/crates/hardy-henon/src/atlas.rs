//! The complete existence/non-existence classification for
//! `-Delta u = |x|^sigma u^p` over `(n, p, sigma)` and the two domain
//! flavors, as a total decision function with citation-stable rationale tags.
//!
//! Boundary semantics are exact IEEE comparisons: the underlying statements
//! are sharp, so a caller probing a boundary gets the stated answer, with no
//! epsilon fuzzing.

use crate::closed_form::{power_law, ClosedForm};
use crate::exec;
use serde::{Deserialize, Serialize};

/// Where the equation is posed. `HalfLine` is the punctured problem on
/// `(0, +inf)` and only exists for `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "full")]
    FullSpace,
    #[serde(rename = "half")]
    HalfLine,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Domain::FullSpace => write!(f, "full"),
            Domain::HalfLine => write!(f, "half"),
        }
    }
}

impl std::str::FromStr for Domain {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Domain::FullSpace),
            "half" => Ok(Domain::HalfLine),
            other => Err(format!("unknown domain '{other}' (expected full|half)")),
        }
    }
}

/// Validated atlas key `(n, p, sigma, domain)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub n: u32,
    pub p: f64,
    pub sigma: f64,
    pub domain: Domain,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InvalidParams {
    ZeroDimension,
    HalfLineRequiresN1 { n: u32 },
    NonFinite { field: &'static str },
}

impl std::fmt::Display for InvalidParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvalidParams::ZeroDimension => write!(f, "dimension n must be >= 1"),
            InvalidParams::HalfLineRequiresN1 { n } => {
                write!(f, "half-line domain requires n = 1, got n = {n}")
            }
            InvalidParams::NonFinite { field } => write!(f, "{field} must be finite"),
        }
    }
}

impl std::error::Error for InvalidParams {}

impl ProblemParams {
    pub fn new(n: u32, p: f64, sigma: f64, domain: Domain) -> Result<Self, InvalidParams> {
        if n == 0 {
            return Err(InvalidParams::ZeroDimension);
        }
        if domain == Domain::HalfLine && n != 1 {
            return Err(InvalidParams::HalfLineRequiresN1 { n });
        }
        if !p.is_finite() {
            return Err(InvalidParams::NonFinite { field: "p" });
        }
        if !sigma.is_finite() {
            return Err(InvalidParams::NonFinite { field: "sigma" });
        }
        Ok(ProblemParams { n, p, sigma, domain })
    }
}

/// Stable rationale tags, one per decision-table cell. Tests assert
/// provenance against these strings.
pub mod rationale {
    // Dimension n >= 2, full space.
    pub const T1_N2_P_NEG: &str = "T1.n2.p_lt_0";
    pub const T1_N2_P_ZERO: &str = "T1.n2.p_eq_0";
    pub const T1_N2_P_01: &str = "T1.n2.p_in_0_1";
    pub const T1_N2_P_GT1: &str = "T1.n2.p_gt_1";
    pub const T1_P_NEG: &str = "T1.p_lt_0";
    pub const T1_P_ZERO: &str = "T1.p_eq_0";
    pub const T1_P_01: &str = "T1.p_in_0_1";
    pub const T1_SIGMA_LE_NEG2: &str = "T1.p_gt_1.sigma_le_-2";
    pub const T1_SUBCRITICAL: &str = "T1.subcritical";
    pub const T1_SUPERCRITICAL: &str = "T1.supercritical";

    // n = 1 on the whole line.
    pub const T2_SLT2_P_LE_0: &str = "T2.sigma_lt_-2.p_le_0";
    pub const T2_SLT2_P_01: &str = "T2.sigma_lt_-2.p_in_0_1";
    pub const T2_SLT2_P_MID: &str = "T2.sigma_lt_-2.p_in_1_-1-sigma";
    pub const T2_SLT2_P_HIGH: &str = "T2.sigma_lt_-2.p_gt_-1-sigma";
    pub const T2_SEQ2_P_LE_0: &str = "T2.sigma_eq_-2.p_le_0";
    pub const T2_SEQ2_P_01: &str = "T2.sigma_eq_-2.p_in_0_1";
    pub const T2_SEQ2_P_GE_1: &str = "T2.sigma_eq_-2.p_ge_1";
    pub const T2_SM21_P_LE_0: &str = "T2.sigma_in_-2_-1.p_le_0";
    pub const T2_SM21_P_LOW: &str = "T2.sigma_in_-2_-1.p_in_0_-1-sigma";
    pub const T2_SM21_P_MID: &str = "T2.sigma_in_-2_-1.p_in_-1-sigma_1";
    pub const T2_SM21_P_GE_1: &str = "T2.sigma_in_-2_-1.p_ge_1";
    pub const T2_SM10_P_LOW: &str = "T2.sigma_in_-1_0.p_lt_-1-sigma";
    pub const T2_SM10_P_MID: &str = "T2.sigma_in_-1_0.p_in_-1-sigma_0";
    pub const T2_SM10_P_01: &str = "T2.sigma_in_-1_0.p_in_0_1";
    pub const T2_SM10_P_GE_1: &str = "T2.sigma_in_-1_0.p_ge_1";
    pub const T2_SGE0: &str = "T2.sigma_ge_0";

    // n = 1 on the half line.
    pub const T3_SLT2_P_LE_0: &str = "T3.sigma_lt_-2.p_le_0";
    pub const T3_SLT2_P_01: &str = "T3.sigma_lt_-2.p_in_0_1";
    pub const T3_SLT2_P_MID: &str = "T3.sigma_lt_-2.p_in_1_-1-sigma";
    pub const T3_SLT2_P_HIGH: &str = "T3.sigma_lt_-2.p_gt_-1-sigma";
    pub const T3_SEQ2_P_LE_0: &str = "T3.sigma_eq_-2.p_le_0";
    pub const T3_SEQ2_P_01: &str = "T3.sigma_eq_-2.p_in_0_1";
    pub const T3_SEQ2_P_GE_1: &str = "T3.sigma_eq_-2.p_ge_1";
    pub const T3_SM21_P_LE_0: &str = "T3.sigma_in_-2_-1.p_le_0";
    pub const T3_SM21_P_LOW: &str = "T3.sigma_in_-2_-1.p_in_0_-1-sigma";
    pub const T3_SM21_P_MID: &str = "T3.sigma_in_-2_-1.p_in_-1-sigma_1";
    pub const T3_SM21_P_GE_1: &str = "T3.sigma_in_-2_-1.p_ge_1";
    pub const T3_SGE1_P_LOW: &str = "T3.sigma_ge_-1.p_lt_-1-sigma";
    pub const T3_SGE1_P_MID: &str = "T3.sigma_ge_-1.p_in_-1-sigma_0";
    pub const T3_SGE1_P_01: &str = "T3.sigma_ge_-1.p_in_0_1";
    pub const T3_SGE1_P_GE_1: &str = "T3.sigma_ge_-1.p_ge_1";

    /// Fixed enumerated set of all tags; classify never produces anything
    /// outside this list.
    pub const ALL: &[&str] = &[
        T1_N2_P_NEG,
        T1_N2_P_ZERO,
        T1_N2_P_01,
        T1_N2_P_GT1,
        T1_P_NEG,
        T1_P_ZERO,
        T1_P_01,
        T1_SIGMA_LE_NEG2,
        T1_SUBCRITICAL,
        T1_SUPERCRITICAL,
        T2_SLT2_P_LE_0,
        T2_SLT2_P_01,
        T2_SLT2_P_MID,
        T2_SLT2_P_HIGH,
        T2_SEQ2_P_LE_0,
        T2_SEQ2_P_01,
        T2_SEQ2_P_GE_1,
        T2_SM21_P_LE_0,
        T2_SM21_P_LOW,
        T2_SM21_P_MID,
        T2_SM21_P_GE_1,
        T2_SM10_P_LOW,
        T2_SM10_P_MID,
        T2_SM10_P_01,
        T2_SM10_P_GE_1,
        T2_SGE0,
        T3_SLT2_P_LE_0,
        T3_SLT2_P_01,
        T3_SLT2_P_MID,
        T3_SLT2_P_HIGH,
        T3_SEQ2_P_LE_0,
        T3_SEQ2_P_01,
        T3_SEQ2_P_GE_1,
        T3_SM21_P_LE_0,
        T3_SM21_P_LOW,
        T3_SM21_P_MID,
        T3_SM21_P_GE_1,
        T3_SGE1_P_LOW,
        T3_SGE1_P_MID,
        T3_SGE1_P_01,
        T3_SGE1_P_GE_1,
    ];
}

/// Existence verdict with optional constructive witness and the decision-table
/// cell that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClosedForm>,
    pub rationale: &'static str,
}

impl RegimeVerdict {
    fn no(rationale: &'static str) -> Self {
        RegimeVerdict {
            exists: false,
            witness: None,
            rationale,
        }
    }

    fn yes_power_law(p: f64, sigma: f64, rationale: &'static str) -> Self {
        // All one-dimensional YES cells have a valid power-law witness; the
        // cell inequalities are exactly a in (0,1).
        let witness = power_law(p, sigma)
            .expect("decision-table YES cell admits a power-law witness");
        RegimeVerdict {
            exists: true,
            witness: Some(witness),
            rationale,
        }
    }
}

/// Critical exponent `p_S(sigma) = (n + 2 + 2 sigma)/(n - 2)` for `n > 2`,
/// `+inf` for `n <= 2`.
pub fn critical_exponent(n: u32, sigma: f64) -> f64 {
    assert!(n >= 1);
    if n > 2 {
        (n as f64 + 2.0 + 2.0 * sigma) / (n as f64 - 2.0)
    } else {
        f64::INFINITY
    }
}

/// Total existence decision for any valid parameter triple.
pub fn classify(params: &ProblemParams) -> RegimeVerdict {
    use rationale::*;
    let (p, sigma) = (params.p, params.sigma);
    match (params.domain, params.n) {
        (Domain::FullSpace, n) if n >= 3 => {
            if p < 0.0 {
                RegimeVerdict::no(T1_P_NEG)
            } else if p == 0.0 {
                RegimeVerdict::no(T1_P_ZERO)
            } else if p <= 1.0 {
                RegimeVerdict::no(T1_P_01)
            } else if sigma <= -2.0 {
                RegimeVerdict::no(T1_SIGMA_LE_NEG2)
            } else if p < critical_exponent(n, sigma) {
                RegimeVerdict::no(T1_SUBCRITICAL)
            } else {
                // The one existence cell without a constructive witness.
                RegimeVerdict {
                    exists: true,
                    witness: None,
                    rationale: T1_SUPERCRITICAL,
                }
            }
        }
        (Domain::FullSpace, 2) => {
            if p < 0.0 {
                RegimeVerdict::no(T1_N2_P_NEG)
            } else if p == 0.0 {
                RegimeVerdict::no(T1_N2_P_ZERO)
            } else if p <= 1.0 {
                RegimeVerdict::no(T1_N2_P_01)
            } else {
                RegimeVerdict::no(T1_N2_P_GT1)
            }
        }
        (Domain::FullSpace, _) => classify_whole_line(p, sigma),
        (Domain::HalfLine, _) => classify_half_line(p, sigma),
    }
}

/// n = 1 on the whole line: exists iff (sigma < -2 and p > -1-sigma) or
/// (-2 < sigma < 0 and p < -1-sigma).
fn classify_whole_line(p: f64, sigma: f64) -> RegimeVerdict {
    use rationale::*;
    let threshold = -1.0 - sigma;
    if sigma < -2.0 {
        if p <= 0.0 {
            RegimeVerdict::no(T2_SLT2_P_LE_0)
        } else if p < 1.0 {
            RegimeVerdict::no(T2_SLT2_P_01)
        } else if p <= threshold {
            RegimeVerdict::no(T2_SLT2_P_MID)
        } else {
            RegimeVerdict::yes_power_law(p, sigma, T2_SLT2_P_HIGH)
        }
    } else if sigma == -2.0 {
        if p <= 0.0 {
            RegimeVerdict::no(T2_SEQ2_P_LE_0)
        } else if p < 1.0 {
            RegimeVerdict::no(T2_SEQ2_P_01)
        } else {
            RegimeVerdict::no(T2_SEQ2_P_GE_1)
        }
    } else if sigma < -1.0 {
        if p <= 0.0 {
            RegimeVerdict::yes_power_law(p, sigma, T2_SM21_P_LE_0)
        } else if p < threshold {
            RegimeVerdict::yes_power_law(p, sigma, T2_SM21_P_LOW)
        } else if p < 1.0 {
            RegimeVerdict::no(T2_SM21_P_MID)
        } else {
            RegimeVerdict::no(T2_SM21_P_GE_1)
        }
    } else if sigma < 0.0 {
        if p < threshold {
            RegimeVerdict::yes_power_law(p, sigma, T2_SM10_P_LOW)
        } else if p <= 0.0 {
            RegimeVerdict::no(T2_SM10_P_MID)
        } else if p < 1.0 {
            RegimeVerdict::no(T2_SM10_P_01)
        } else {
            RegimeVerdict::no(T2_SM10_P_GE_1)
        }
    } else {
        RegimeVerdict::no(T2_SGE0)
    }
}

/// n = 1 on the half line: exists iff (sigma < -2 and p > -1-sigma) or
/// (sigma > -2 and p < -1-sigma).
fn classify_half_line(p: f64, sigma: f64) -> RegimeVerdict {
    use rationale::*;
    let threshold = -1.0 - sigma;
    if sigma < -2.0 {
        if p <= 0.0 {
            RegimeVerdict::no(T3_SLT2_P_LE_0)
        } else if p < 1.0 {
            RegimeVerdict::no(T3_SLT2_P_01)
        } else if p <= threshold {
            RegimeVerdict::no(T3_SLT2_P_MID)
        } else {
            RegimeVerdict::yes_power_law(p, sigma, T3_SLT2_P_HIGH)
        }
    } else if sigma == -2.0 {
        if p <= 0.0 {
            RegimeVerdict::no(T3_SEQ2_P_LE_0)
        } else if p < 1.0 {
            RegimeVerdict::no(T3_SEQ2_P_01)
        } else {
            RegimeVerdict::no(T3_SEQ2_P_GE_1)
        }
    } else if sigma < -1.0 {
        if p <= 0.0 {
            RegimeVerdict::yes_power_law(p, sigma, T3_SM21_P_LE_0)
        } else if p < threshold {
            RegimeVerdict::yes_power_law(p, sigma, T3_SM21_P_LOW)
        } else if p < 1.0 {
            RegimeVerdict::no(T3_SM21_P_MID)
        } else {
            RegimeVerdict::no(T3_SM21_P_GE_1)
        }
    } else {
        // sigma >= -1
        if p < threshold {
            RegimeVerdict::yes_power_law(p, sigma, T3_SGE1_P_LOW)
        } else if p <= 0.0 {
            RegimeVerdict::no(T3_SGE1_P_MID)
        } else if p < 1.0 {
            RegimeVerdict::no(T3_SGE1_P_01)
        } else {
            RegimeVerdict::no(T3_SGE1_P_GE_1)
        }
    }
}

/// Unvalidated atlas row, as read from external input.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RawParams {
    pub n: u32,
    pub p: f64,
    pub sigma: f64,
    pub domain: Domain,
}

/// One exported decision record. Field order is the serialization order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub n: u32,
    pub p: f64,
    pub sigma: f64,
    pub domain: Domain,
    pub exists: bool,
    pub rationale: String,
}

#[derive(Debug, Clone)]
pub enum AtlasError {
    EmptyGrid,
    InvalidRow { row: usize, source: InvalidParams },
}

impl std::fmt::Display for AtlasError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AtlasError::EmptyGrid => write!(f, "atlas export requires a non-empty grid"),
            AtlasError::InvalidRow { row, source } => {
                write!(f, "invalid parameters in row {row}: {source}")
            }
        }
    }
}

impl std::error::Error for AtlasError {}

/// Classify every row of `grid`, in input order.
pub fn atlas_export(grid: &[RawParams]) -> Result<Vec<AtlasRecord>, AtlasError> {
    if grid.is_empty() {
        return Err(AtlasError::EmptyGrid);
    }
    let validated: Result<Vec<ProblemParams>, AtlasError> = grid
        .iter()
        .enumerate()
        .map(|(row, raw)| {
            ProblemParams::new(raw.n, raw.p, raw.sigma, raw.domain)
                .map_err(|source| AtlasError::InvalidRow { row, source })
        })
        .collect();
    let validated = validated?;
    Ok(exec::map_collect(&validated, |params| {
        let verdict = classify(params);
        AtlasRecord {
            n: params.n,
            p: params.p,
            sigma: params.sigma,
            domain: params.domain,
            exists: verdict.exists,
            rationale: verdict.rationale.to_string(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(n: u32, p: f64, sigma: f64, domain: Domain) -> RegimeVerdict {
        classify(&ProblemParams::new(n, p, sigma, domain).unwrap())
    }

    #[test]
    fn supercritical_cell_exists() {
        let v = verdict(3, 5.0, 0.0, Domain::FullSpace);
        assert!(v.exists);
        assert_eq!(v.rationale, rationale::T1_SUPERCRITICAL);
        assert!(v.witness.is_none());
    }

    #[test]
    fn dimension_two_never_exists() {
        assert!(!verdict(2, 5.0, 0.0, Domain::FullSpace).exists);
        assert!(!verdict(2, -1.0, 3.0, Domain::FullSpace).exists);
        assert!(!verdict(2, 0.5, -0.5, Domain::FullSpace).exists);
        assert!(!verdict(2, 0.0, -3.0, Domain::FullSpace).exists);
    }

    #[test]
    fn one_dim_domain_split() {
        // sigma = 0.5, p = -3: exists on the half line only.
        let half = verdict(1, -3.0, 0.5, Domain::HalfLine);
        assert!(half.exists);
        assert_eq!(half.rationale, rationale::T3_SGE1_P_LOW);
        assert!(matches!(
            half.witness,
            Some(ClosedForm::PowerLaw { .. })
        ));
        let full = verdict(1, -3.0, 0.5, Domain::FullSpace);
        assert!(!full.exists);
        assert_eq!(full.rationale, rationale::T2_SGE0);
    }

    #[test]
    fn borderline_oscillatory_cell() {
        // sigma = -2, p = 1: general solution oscillates, no solution on
        // either domain.
        assert!(!verdict(1, 1.0, -2.0, Domain::FullSpace).exists);
        assert!(!verdict(1, 1.0, -2.0, Domain::HalfLine).exists);
    }

    #[test]
    fn hardy_existence_with_sqrt_witness() {
        // sigma = -1.5, p = 0 on the whole line: witness C x^{1/2}.
        let v = verdict(1, 0.0, -1.5, Domain::FullSpace);
        assert!(v.exists);
        match v.witness {
            Some(ClosedForm::PowerLaw { coeff, exponent }) => {
                assert!((exponent - 0.5).abs() < 1e-15);
                assert!((coeff - 4.0).abs() < 1e-12);
            }
            ref w => panic!("expected power-law witness, got {w:?}"),
        }
    }

    #[test]
    fn critical_exponent_values() {
        assert!((critical_exponent(3, 0.0) - 5.0).abs() < 1e-15);
        assert!((critical_exponent(4, 1.0) - 4.0).abs() < 1e-15);
        assert!(critical_exponent(2, 7.0).is_infinite());
        assert!(critical_exponent(1, -3.0).is_infinite());
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(matches!(
            ProblemParams::new(0, 1.0, 0.0, Domain::FullSpace),
            Err(InvalidParams::ZeroDimension)
        ));
        assert!(matches!(
            ProblemParams::new(3, 1.0, 0.0, Domain::HalfLine),
            Err(InvalidParams::HalfLineRequiresN1 { .. })
        ));
        assert!(matches!(
            ProblemParams::new(1, f64::NAN, 0.0, Domain::FullSpace),
            Err(InvalidParams::NonFinite { .. })
        ));
    }

    #[test]
    fn table_one_representative_cells() {
        let rows = atlas_export(&[
            RawParams { n: 2, p: -1.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 2, p: 0.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 2, p: 0.5, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 2, p: 3.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: -1.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: 0.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: 0.5, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: 2.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: 7.0, sigma: 0.5, domain: Domain::FullSpace },
            RawParams { n: 3, p: 7.0, sigma: -3.0, domain: Domain::FullSpace },
        ])
        .unwrap();
        let expect = [
            false, false, false, false, false, false, false, false, true, false,
        ];
        assert_eq!(rows.len(), 10);
        for (r, e) in rows.iter().zip(expect) {
            assert_eq!(r.exists, e, "{r:?}");
        }
    }

    #[test]
    fn table_three_low_sigma_row() {
        // sigma = -3 row probed at p in {-1, 0.5, 1, -1-sigma, -sigma}:
        // NO, NO, NO, NO, YES.
        let sigma = -3.0;
        let grid: Vec<RawParams> = [-1.0, 0.5, 1.0, -1.0 - sigma, -sigma]
            .iter()
            .map(|&p| RawParams { n: 1, p, sigma, domain: Domain::HalfLine })
            .collect();
        let rows = atlas_export(&grid).unwrap();
        let exists: Vec<bool> = rows.iter().map(|r| r.exists).collect();
        assert_eq!(exists, vec![false, false, false, false, true]);
    }

    #[test]
    fn atlas_export_single_cell_and_errors() {
        let one = atlas_export(&[RawParams {
            n: 1,
            p: 4.0,
            sigma: -4.0,
            domain: Domain::HalfLine,
        }])
        .unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].exists);

        assert!(matches!(atlas_export(&[]), Err(AtlasError::EmptyGrid)));
        let err = atlas_export(&[
            RawParams { n: 1, p: 1.0, sigma: 0.0, domain: Domain::FullSpace },
            RawParams { n: 2, p: 1.0, sigma: 0.0, domain: Domain::HalfLine },
        ]);
        match err {
            Err(AtlasError::InvalidRow { row, .. }) => assert_eq!(row, 1),
            other => panic!("expected invalid row, got {other:?}"),
        }
    }

    #[test]
    fn rationale_tags_are_enumerated() {
        // Sweep a coarse lattice; every rationale must come from the fixed set.
        for n in 1..=4u32 {
            for pi in -8..=8 {
                for si in -8..=8 {
                    let p = pi as f64 * 0.75;
                    let sigma = si as f64 * 0.75;
                    let params = ProblemParams::new(n, p, sigma, Domain::FullSpace).unwrap();
                    let v = classify(&params);
                    assert!(rationale::ALL.contains(&v.rationale));
                    if n == 1 {
                        let params = ProblemParams::new(n, p, sigma, Domain::HalfLine).unwrap();
                        let v = classify(&params);
                        assert!(rationale::ALL.contains(&v.rationale));
                    }
                }
            }
        }
    }

    #[test]
    fn whole_line_existence_strict_subset_of_half_line() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut strictly_smaller = false;
        for _ in 0..20_000 {
            let p: f64 = rng.gen_range(-10.0..10.0);
            let sigma: f64 = rng.gen_range(-10.0..10.0);
            let full = verdict(1, p, sigma, Domain::FullSpace).exists;
            let half = verdict(1, p, sigma, Domain::HalfLine).exists;
            assert!(!full || half, "full-space solution at (p={p},sigma={sigma}) missing on half line");
            if half && !full {
                strictly_smaller = true;
            }
        }
        assert!(strictly_smaller);
    }
}
