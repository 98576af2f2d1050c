//! A catalog of machine-checkable identities spanning the other modules.
//!
//! Each check compares two independently computed objects (series against
//! series, matrix against matrix, or enumeration against grid against
//! series) and reports the first mismatching coefficient or entry on
//! failure, with both values as decimal strings. Checks are deterministic
//! and independent of one another.

use serde::Serialize;

use crate::families::{
    align_grid_row, closed_form, first_return_form, lattice_x_for_index, named_sequence,
    row_sequence, FamiliesError, Family, FamilyId,
};
use crate::lattice::{build_grid, count_paths_exhaustive, step_set_for, LatticeError};
use crate::riordan::{
    binomial, materialize, motzkin_pair, pascal, pascal_power, riordan_mul, schroder_pair,
    RiordanError, RiordanPair,
};
use crate::series::{self, Series, SeriesError};

use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check id '{0}'")]
    UnknownCheck(String),
    #[error("parameter {name}={value} is out of range ({min}..={max})")]
    ParamOutOfRange { name: &'static str, value: usize, min: usize, max: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Families(#[from] FamiliesError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Riordan(#[from] RiordanError),
}

/// Parameters a check runs at. `n_colors` and `k` restrict a check to a
/// single instance; left unset, each check sweeps its documented default
/// range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckParams {
    pub order: usize,
    pub dimension: usize,
    pub n_colors: Option<u32>,
    pub k: Option<usize>,
}

impl Default for CheckParams {
    fn default() -> CheckParams {
        CheckParams { order: 32, dimension: 12, n_colors: None, k: None }
    }
}

impl CheckParams {
    pub fn with_order(mut self, order: usize) -> CheckParams {
        self.order = order;
        self
    }

    pub fn with_dimension(mut self, dimension: usize) -> CheckParams {
        self.dimension = dimension;
        self
    }

    pub fn with_n_colors(mut self, n: u32) -> CheckParams {
        self.n_colors = Some(n);
        self
    }

    pub fn with_k(mut self, k: usize) -> CheckParams {
        self.k = Some(k);
        self
    }

    fn validate(&self) -> Result<(), VerifyError> {
        if self.order > 256 {
            return Err(VerifyError::ParamOutOfRange {
                name: "order",
                value: self.order,
                min: 0,
                max: 256,
            });
        }
        if self.dimension < 1 || self.dimension > 64 {
            return Err(VerifyError::ParamOutOfRange {
                name: "dimension",
                value: self.dimension,
                min: 1,
                max: 64,
            });
        }
        if let Some(n) = self.n_colors {
            if n > 8 {
                return Err(VerifyError::ParamOutOfRange {
                    name: "n_colors",
                    value: n as usize,
                    min: 0,
                    max: 8,
                });
            }
        }
        if let Some(k) = self.k {
            if k > 8 {
                return Err(VerifyError::ParamOutOfRange { name: "k", value: k, min: 0, max: 8 });
            }
        }
        Ok(())
    }

    fn colors(&self, default_max: u32) -> Vec<u32> {
        match self.n_colors {
            Some(n) => vec![n],
            None => (0..=default_max).collect(),
        }
    }

    fn rows(&self, default_min: usize, default_max: usize) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k.max(default_min)],
            None => (default_min..=default_max).collect(),
        }
    }
}

/// One named identity check.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub params: CheckParams,
}

/// Outcome of a check. A failed check always carries a detail naming the
/// first mismatching position and both values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn from_failure(id: &str, failure: Option<String>) -> CheckResult {
        CheckResult { id: id.to_string(), passed: failure.is_none(), detail: failure }
    }
}

/// Compare two series over their common order, producing a ready-made
/// result. Also the hook used by negative-control tests.
pub fn series_equal_check(id: &str, lhs: &Series, rhs: &Series) -> CheckResult {
    CheckResult::from_failure(id, series_detail("", lhs, rhs))
}

fn series_detail(label: &str, lhs: &Series, rhs: &Series) -> Option<String> {
    series::first_mismatch(lhs, rhs)
        .map(|(i, l, r)| format!("{label}coefficient of x^{i}: {l} vs {r}"))
}

fn matrix_detail(
    label: &str,
    lhs: &crate::riordan::TriMatrix,
    rhs: &crate::riordan::TriMatrix,
) -> Option<String> {
    lhs.first_mismatch(rhs)
        .map(|(i, j, l, r)| format!("{label}entry ({i},{j}): {l} vs {r}"))
}

const CATALOG: &[(&str, &str)] = &[
    ("eq9", "first return: C = 1 + x*C^2 for the Catalan series"),
    ("eq10", "first return: S = 1 + x*S + x*S^2 for the large Schroder series"),
    ("eq11", "first return: s = 1 + x*S*s ties small Schroder to large"),
    ("eq12", "first return: M = 1 + x*M + x^2*M^2 for the Motzkin series"),
    ("eq13", "Catalan grid rows satisfy C_k = x*C_(k-1) + C_(k+1)"),
    ("eq14", "Catalan grid rows satisfy C_0 - C_1 = 1"),
    ("eq15", "Catalan grid row k equals x^k * C^(k+1)"),
    ("eq16", "large Schroder grid rows satisfy S_k = x*S_(k-1) + x*S_k + S_(k+1)"),
    ("eq17", "large Schroder grid row k equals x^k * S^(k+1)"),
    ("eq18", "Motzkin grid rows satisfy M_k = x*M_(k-1) + x*M_k + x*M_(k+1)"),
    ("eq19", "Motzkin grid row k equals x^k * M^(k+1)"),
    ("eq20-motzkin", "P * M_n = M_(n+1) as materialized matrices"),
    ("eq20-schroder", "P * S_n = S_(n+1) as materialized matrices (Schroder analog)"),
    ("eq21-motzkin", "P^n * M = M_(n+1) as materialized matrices"),
    ("eq21-schroder", "P^n * S = S_(n+1) as materialized matrices (Schroder analog)"),
    ("eq22", "S_n = 1 + n*x*S_n + x*S_n^2 for n-colored large Schroder"),
    ("eq23-vs-eq22", "closed form of S_n matches its functional-equation fixed point"),
    ("eq24", "M_n = 1 + n*x*M_n + x^2*M_n^2 for n-colored Motzkin"),
    ("eq25-vs-eq24", "closed form of M_n matches its functional-equation fixed point"),
    ("eq26", "row step: x^(n+1)*S^(n+2) = (x^n*S^(n+1)) * (x*S)"),
    ("eq27", "row step: x^(n+1)*M^(n+2) = (x^n*M^(n+1)) * (x*M)"),
    ("pascal-product", "P * P^n = P^(n+1), and pair products match matrix products"),
    ("binomial-recurrence", "binomial(n-1,k-1) + binomial(n-1,k) = binomial(n,k) = n!/(k!(n-k)!)"),
    ("grid-oracle-catalan", "enumeration = grid axis = series coefficients (Catalan)"),
    ("grid-oracle-schroder-large", "enumeration = grid axis = series coefficients (large Schroder)"),
    ("grid-oracle-schroder-small", "enumeration = grid axis = series coefficients (small Schroder)"),
    ("grid-oracle-motzkin", "enumeration = grid axis = series coefficients (Motzkin)"),
];

/// Every check in canonical order, at default parameters.
pub fn catalog() -> Vec<IdentityCheck> {
    CATALOG
        .iter()
        .map(|&(id, description)| IdentityCheck { id, description, params: CheckParams::default() })
        .collect()
}

/// Run one check by id with explicit parameters.
pub fn run_check_id(id: &str, params: CheckParams) -> Result<CheckResult, VerifyError> {
    let Some(&(id, description)) = CATALOG.iter().find(|(cid, _)| *cid == id) else {
        return Err(VerifyError::UnknownCheck(id.to_string()));
    };
    run_check(&IdentityCheck { id, description, params })
}

/// Run one check.
pub fn run_check(check: &IdentityCheck) -> Result<CheckResult, VerifyError> {
    check.params.validate()?;
    let p = &check.params;
    let failure = match check.id {
        "eq9" => {
            let c = closed_form(&Family::catalan(), p.order)?;
            let rhs = Series::one(p.order).add(&c.mul(&c).shift(1));
            series_detail("", &c, &rhs)
        }
        "eq10" => {
            let s = closed_form(&Family::schroder_large(1), p.order)?;
            let rhs = Series::one(p.order).add(&s.shift(1)).add(&s.mul(&s).shift(1));
            series_detail("", &s, &rhs)
        }
        "eq11" => {
            let small = closed_form(&Family::schroder_small(), p.order)?;
            let large = closed_form(&Family::schroder_large(1), p.order)?;
            let rhs = Series::one(p.order).add(&large.mul(&small).shift(1));
            series_detail("", &small, &rhs)
        }
        "eq12" => {
            let m = closed_form(&Family::motzkin(1), p.order)?;
            let rhs = Series::one(p.order).add(&m.shift(1)).add(&m.mul(&m).shift(2));
            series_detail("", &m, &rhs)
        }
        "eq13" => row_recursion(FamilyId::Catalan, p)?,
        "eq14" => {
            let rows = aligned_rows(FamilyId::Catalan, 0, p.order, 1)?;
            let t = rows[0].order().min(rows[1].order());
            let lhs = rows[0].truncate(t)?.sub(&rows[1].truncate(t)?);
            series_detail("", &lhs, &Series::one(t))
        }
        "eq15" => row_power(FamilyId::Catalan, p)?,
        "eq16" => row_recursion(FamilyId::SchroderLarge, p)?,
        "eq17" => row_power(FamilyId::SchroderLarge, p)?,
        "eq18" => row_recursion(FamilyId::Motzkin, p)?,
        "eq19" => row_power(FamilyId::Motzkin, p)?,
        "eq20-motzkin" => pascal_color_step(p, PairKind::Motzkin, ProductForm::PascalTimesNth)?,
        "eq20-schroder" => pascal_color_step(p, PairKind::Schroder, ProductForm::PascalTimesNth)?,
        "eq21-motzkin" => pascal_color_step(p, PairKind::Motzkin, ProductForm::NthPowerTimesFirst)?,
        "eq21-schroder" => {
            pascal_color_step(p, PairKind::Schroder, ProductForm::NthPowerTimesFirst)?
        }
        "eq22" => colored_first_return(p, FamilyId::SchroderLarge)?,
        "eq24" => colored_first_return(p, FamilyId::Motzkin)?,
        "eq23-vs-eq22" => dual_route(p, FamilyId::SchroderLarge)?,
        "eq25-vs-eq24" => dual_route(p, FamilyId::Motzkin)?,
        "eq26" => row_power_step(p, Family::schroder_large(1))?,
        "eq27" => row_power_step(p, Family::motzkin(1))?,
        "pascal-product" => pascal_product(p)?,
        "binomial-recurrence" => binomial_recurrence(),
        "grid-oracle-catalan" => grid_oracle(FamilyId::Catalan, p)?,
        "grid-oracle-schroder-large" => grid_oracle(FamilyId::SchroderLarge, p)?,
        "grid-oracle-schroder-small" => grid_oracle(FamilyId::SchroderSmall, p)?,
        "grid-oracle-motzkin" => grid_oracle(FamilyId::Motzkin, p)?,
        other => return Err(VerifyError::UnknownCheck(other.to_string())),
    };
    Ok(CheckResult::from_failure(check.id, failure))
}

/// Run the whole catalog at a shared order and matrix dimension.
/// Results come back in catalog order, one per check.
pub fn run_all(order: usize, dimension: usize) -> Result<Vec<CheckResult>, VerifyError> {
    let params = CheckParams { order, dimension, ..CheckParams::default() };
    catalog()
        .into_iter()
        .map(|mut check| {
            check.params = params;
            run_check(&check)
        })
        .collect()
}

/// JSON report: an array of {"id", "passed", "detail"?} objects.
pub fn report_to_json(results: &[CheckResult]) -> String {
    serde_json::to_string(results).expect("report serialization cannot fail")
}

/// Grid rows 0..=k_max+1, reindexed onto sequence exponents.
fn aligned_rows(
    id: FamilyId,
    n_colors: u32,
    order: usize,
    k_max: usize,
) -> Result<Vec<Series>, VerifyError> {
    let width = match id {
        FamilyId::Motzkin => order,
        _ => 2 * order,
    };
    let grid = build_grid(&step_set_for(id, n_colors), width, k_max + 1);
    (0..=k_max + 1)
        .map(|k| Ok(align_grid_row(id, k, &grid.row_series(k, width)?)))
        .collect()
}

fn row_recursion(id: FamilyId, p: &CheckParams) -> Result<Option<String>, VerifyError> {
    let ks = p.rows(1, 5);
    let k_max = *ks.iter().max().expect("non-empty sweep");
    let n_colors = if id == FamilyId::Catalan { 0 } else { 1 };
    let rows = aligned_rows(id, n_colors, p.order, k_max)?;
    for k in ks {
        let t = rows[k - 1].order().min(rows[k].order()).min(rows[k + 1].order());
        let below = rows[k - 1].truncate(t)?;
        let here = rows[k].truncate(t)?;
        let above = rows[k + 1].truncate(t)?;
        let rhs = match id {
            // Only the up step gains an x in semi-length indexing.
            FamilyId::Catalan => below.shift(1).add(&above),
            // The level step gains an x as well.
            FamilyId::SchroderLarge | FamilyId::SchroderSmall => {
                below.add(&here).shift(1).add(&above)
            }
            // Raw length indexing: every step gains an x.
            FamilyId::Motzkin => below.add(&here).add(&above).shift(1),
        };
        if let Some(detail) = series_detail(&format!("k={k}: "), &here, &rhs) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn row_power(id: FamilyId, p: &CheckParams) -> Result<Option<String>, VerifyError> {
    let ks = p.rows(0, 5);
    let k_max = *ks.iter().max().expect("non-empty sweep");
    let n_colors = if id == FamilyId::Catalan { 0 } else { 1 };
    let family = Family::new(id, n_colors)?;
    let rows = aligned_rows(id, n_colors, p.order, k_max)?;
    for k in ks {
        let t = rows[k].order().min(p.order);
        let lhs = rows[k].truncate(t)?;
        let rhs = row_sequence(&family, k, t)?;
        if let Some(detail) = series_detail(&format!("k={k}: "), &lhs, &rhs) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn colored_first_return(p: &CheckParams, id: FamilyId) -> Result<Option<String>, VerifyError> {
    for n in p.colors(6) {
        let family = Family::new(id, n)?;
        let g = closed_form(&family, p.order)?;
        let n_x_g = g.shift(1).scale(&BigInt::from(n).into());
        let rhs = match id {
            FamilyId::SchroderLarge => Series::one(p.order).add(&n_x_g).add(&g.mul(&g).shift(1)),
            FamilyId::Motzkin => Series::one(p.order).add(&n_x_g).add(&g.mul(&g).shift(2)),
            _ => unreachable!("only the colored families take part"),
        };
        if let Some(detail) = series_detail(&format!("n={n}: "), &g, &rhs) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn dual_route(p: &CheckParams, id: FamilyId) -> Result<Option<String>, VerifyError> {
    for n in p.colors(6) {
        let family = Family::new(id, n)?;
        let closed = closed_form(&family, p.order)?;
        let fixed_point = first_return_form(&family, p.order)?;
        if let Some(detail) = series_detail(&format!("n={n}: "), &closed, &fixed_point) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn row_power_step(p: &CheckParams, family: Family) -> Result<Option<String>, VerifyError> {
    let g = first_return_form(&family, p.order)?;
    let xg = g.shift(1);
    for n in p.rows(0, 5) {
        let lhs = row_sequence(&family, n + 1, p.order)?;
        let rhs = row_sequence(&family, n, p.order)?.mul(&xg);
        if let Some(detail) = series_detail(&format!("n={n}: "), &lhs, &rhs) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy)]
enum PairKind {
    Motzkin,
    Schroder,
}

impl PairKind {
    fn pair(self, n: u32, order: usize) -> Result<RiordanPair, RiordanError> {
        match self {
            PairKind::Motzkin => motzkin_pair(n, order),
            PairKind::Schroder => schroder_pair(n, order),
        }
    }
}

#[derive(Clone, Copy)]
enum ProductForm {
    /// P * G_n = G_(n+1)
    PascalTimesNth,
    /// P^n * G_1 = G_(n+1)
    NthPowerTimesFirst,
}

/// The Pascal color-step identities, checked as materialized matrices.
/// Each instance also cross-checks that materializing the pair product
/// agrees with the integer matrix product.
fn pascal_color_step(
    p: &CheckParams,
    kind: PairKind,
    form: ProductForm,
) -> Result<Option<String>, VerifyError> {
    let dim = p.dimension;
    let order = dim;
    for n in p.colors(4) {
        let (left, right) = match form {
            ProductForm::PascalTimesNth => (pascal(order), kind.pair(n, order)?),
            ProductForm::NthPowerTimesFirst => (pascal_power(n, order), kind.pair(1, order)?),
        };
        let product_pair = riordan_mul(&left, &right)?;
        let product = materialize(&product_pair, dim)?;
        let via_matrices = materialize(&left, dim)?.matmul(&materialize(&right, dim)?);
        if let Some(detail) =
            matrix_detail(&format!("n={n}: pair product vs matrix product: "), &product, &via_matrices)
        {
            return Ok(Some(detail));
        }
        let expected = materialize(&kind.pair(n + 1, order)?, dim)?;
        if let Some(detail) = matrix_detail(&format!("n={n}: "), &product, &expected) {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn pascal_product(p: &CheckParams) -> Result<Option<String>, VerifyError> {
    let dim = p.dimension;
    let order = dim.max(p.order);
    for n in 0..=5u32 {
        let product = riordan_mul(&pascal(order), &pascal_power(n, order))?;
        let expected = pascal_power(n + 1, order);
        if let Some(detail) = series_detail(&format!("n={n}: g: "), product.g(), expected.g()) {
            return Ok(Some(detail));
        }
        if let Some(detail) = series_detail(&format!("n={n}: f: "), product.f(), expected.f()) {
            return Ok(Some(detail));
        }
        let lhs = materialize(&product, dim)?;
        let rhs = materialize(&pascal(order), dim)?
            .matmul(&materialize(&pascal_power(n, order), dim)?);
        if let Some(detail) =
            matrix_detail(&format!("n={n}: pair product vs matrix product: "), &lhs, &rhs)
        {
            return Ok(Some(detail));
        }
    }
    Ok(None)
}

fn binomial_recurrence() -> Option<String> {
    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }
    for n in 1..=32u64 {
        for k in 1..=n {
            let additive = binomial(n, k);
            let recurred = binomial(n - 1, k - 1) + binomial(n - 1, k);
            if additive != recurred {
                return Some(format!("binomial({n},{k}): {additive} vs recurrence {recurred}"));
            }
            let formula = factorial(n) / (factorial(k) * factorial(n - k));
            if additive != formula {
                return Some(format!("binomial({n},{k}): {additive} vs factorial formula {formula}"));
            }
        }
    }
    None
}

/// Triple agreement along the x-axis: exhaustive enumeration, the grid
/// value at (x, 0), and the family's series coefficient.
fn grid_oracle(id: FamilyId, p: &CheckParams) -> Result<Option<String>, VerifyError> {
    let n_colors = match id {
        FamilyId::Catalan => 0,
        FamilyId::SchroderSmall => 1,
        _ => p.n_colors.unwrap_or(1),
    };
    let family = Family::new(id, n_colors)?;
    let max_index = match id {
        FamilyId::Motzkin => 12,
        _ => 6,
    };
    let seq = named_sequence(&family, max_index)?;
    let steps = step_set_for(id, n_colors);
    let width = lattice_x_for_index(id, max_index);
    let grid = build_grid(&steps, width, 0);
    for (j, series_value) in seq.coeffs.iter().enumerate() {
        let end_x = lattice_x_for_index(id, j);
        let oracle = count_paths_exhaustive(&steps, end_x as u32);
        let grid_value = grid.count(end_x, 0);
        if &oracle != grid_value {
            return Ok(Some(format!("x={end_x}: enumeration {oracle} vs grid {grid_value}")));
        }
        if &oracle != series_value {
            return Ok(Some(format!("x={end_x}: enumeration {oracle} vs series {series_value}")));
        }
    }
    Ok(None)
}
