//! The named sequence families and their generating functions.
//!
//! Every family can be computed two independent ways: a closed form built
//! from a square root (quadratic-formula route) and a fixed-point solution
//! of its first-return functional equation. The two routes agree
//! coefficientwise, and both agree with exhaustive path enumeration; the
//! verification catalog exercises all three.
//!
//! Indexing convention: Catalan and Schröder coefficients count paths by
//! semi-length (lattice x = 2·index), Motzkin coefficients count by raw
//! length (lattice x = index). [`lattice_x_for_index`] and
//! [`align_grid_row`] are the only places that convert between the two.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::{solve_quadratic_fe, Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamiliesError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("unknown family '{0}' (expected catalan, schroder-large, schroder-small, or motzkin)")]
    UnknownFamily(String),
    #[error("{family} is defined with exactly {expected} level-step color(s), got {got}")]
    InvalidColors { family: FamilyId, expected: u32, got: u32 },
    #[error("row sequences x^k*G^(k+1) do not apply to {0}: with no level step on the x-axis its rows do not follow the power pattern")]
    RowSequenceUnsupported(FamilyId),
    #[error("cannot divide by x^{power}: coefficient of x^{index} is {value}, not zero")]
    NonzeroLowCoefficient { power: usize, index: usize, value: String },
}

/// Which path family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Catalan,
    SchroderLarge,
    SchroderSmall,
    Motzkin,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [
        FamilyId::Catalan,
        FamilyId::SchroderLarge,
        FamilyId::SchroderSmall,
        FamilyId::Motzkin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::Catalan => "catalan",
            FamilyId::SchroderLarge => "schroder-large",
            FamilyId::SchroderSmall => "schroder-small",
            FamilyId::Motzkin => "motzkin",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = FamiliesError;

    fn from_str(s: &str) -> Result<FamilyId, FamiliesError> {
        match s {
            "catalan" => Ok(FamilyId::Catalan),
            "schroder-large" | "schroder_large" => Ok(FamilyId::SchroderLarge),
            "schroder-small" | "schroder_small" => Ok(FamilyId::SchroderSmall),
            "motzkin" => Ok(FamilyId::Motzkin),
            other => Err(FamiliesError::UnknownFamily(other.to_string())),
        }
    }
}

/// A family together with its level-step color count.
///
/// Catalan has no level step (colors fixed at 0) and small Schröder is
/// defined with a single color; large Schröder and Motzkin accept any
/// number of colors, including 0 (which degenerates to pure up/down
/// paths).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    id: FamilyId,
    n_colors: u32,
}

impl Family {
    pub fn new(id: FamilyId, n_colors: u32) -> Result<Family, FamiliesError> {
        let expected = match id {
            FamilyId::Catalan => Some(0),
            FamilyId::SchroderSmall => Some(1),
            FamilyId::SchroderLarge | FamilyId::Motzkin => None,
        };
        if let Some(expected) = expected {
            if n_colors != expected {
                return Err(FamiliesError::InvalidColors { family: id, expected, got: n_colors });
            }
        }
        Ok(Family { id, n_colors })
    }

    pub fn catalan() -> Family {
        Family { id: FamilyId::Catalan, n_colors: 0 }
    }

    pub fn schroder_large(n_colors: u32) -> Family {
        Family { id: FamilyId::SchroderLarge, n_colors }
    }

    pub fn schroder_small() -> Family {
        Family { id: FamilyId::SchroderSmall, n_colors: 1 }
    }

    pub fn motzkin(n_colors: u32) -> Family {
        Family { id: FamilyId::Motzkin, n_colors }
    }

    /// The color count a bare family name denotes.
    pub fn default_colors(id: FamilyId) -> u32 {
        match id {
            FamilyId::Catalan => 0,
            _ => 1,
        }
    }

    pub fn id(&self) -> FamilyId {
        self.id
    }

    pub fn n_colors(&self) -> u32 {
        self.n_colors
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n_colors == Family::default_colors(self.id) {
            write!(f, "{}", self.id)
        } else {
            write!(f, "{}[n={}]", self.id, self.n_colors)
        }
    }
}

/// A family's coefficients as arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSequence {
    pub family: Family,
    pub coeffs: Vec<BigInt>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial as a series: coefficients past the truncation order are
/// legitimately dropped (they vanish mod x^{order+1}).
fn poly(coeffs: &[i64], order: usize) -> Series {
    let kept: Vec<BigRational> = coeffs.iter().take(order + 1).map(|&c| rat(c)).collect();
    Series::make(kept, order).expect("truncated to fit")
}

/// Divide by x^k after checking that the k low-order coefficients vanish.
/// The result is one grade shorter per cancelled power: only order - k
/// coefficients remain known.
fn divide_by_x_power(s: &Series, k: usize) -> Result<Series, FamiliesError> {
    for i in 0..k {
        let c = s.coeff(i);
        if !c.is_zero() {
            return Err(FamiliesError::NonzeroLowCoefficient {
                power: k,
                index: i,
                value: c.to_string(),
            });
        }
    }
    let coeffs = s.coeffs()[k..].to_vec();
    let order = s.order() - k;
    Ok(Series::make(coeffs, order).expect("length matches order"))
}

/// Closed form via the quadratic formula: evaluate the radicand, take the
/// series square root, and divide out the leading 2x, 4x, or 2x² with an
/// explicit checked cancellation.
///
/// All four closed forms have integer coefficients even though the
/// intermediate arithmetic is rational; that integrality is asserted and a
/// failure signals an implementation bug rather than a user error.
pub fn closed_form(family: &Family, order: usize) -> Result<Series, FamiliesError> {
    let n = i64::from(family.n_colors());
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let series = match family.id() {
        FamilyId::Catalan => {
            // (1 - sqrt(1 - 4x)) / (2x)
            let work = order + 1;
            let numerator = poly(&[1], work).sub(&poly(&[1, -4], work).sqrt()?);
            divide_by_x_power(&numerator, 1)?.scale(&half)
        }
        FamilyId::SchroderLarge => {
            // (1 - nx - sqrt(n²x² - (2n+4)x + 1)) / (2x)
            let work = order + 1;
            let radicand = poly(&[1, -(2 * n + 4), n * n], work);
            let numerator = poly(&[1, -n], work).sub(&radicand.sqrt()?);
            divide_by_x_power(&numerator, 1)?.scale(&half)
        }
        FamilyId::SchroderSmall => {
            // (1 + x - sqrt(1 - 6x + x²)) / (4x)
            let work = order + 1;
            let numerator = poly(&[1, 1], work).sub(&poly(&[1, -6, 1], work).sqrt()?);
            divide_by_x_power(&numerator, 1)?.scale(&quarter)
        }
        FamilyId::Motzkin => {
            // (1 - nx - sqrt((n²-4)x² - 2nx + 1)) / (2x²)
            let work = order + 2;
            let radicand = poly(&[1, -2 * n, n * n - 4], work);
            let numerator = poly(&[1, -n], work).sub(&radicand.sqrt()?);
            divide_by_x_power(&numerator, 2)?.scale(&half)
        }
    };
    series.integer_coeffs().map_err(FamiliesError::Series)?;
    Ok(series)
}

/// First-return route: solve the family's functional equation
/// F = 1 + a·F + b·F² as a fixed point, with (a, b) determined by the step
/// set. Small Schröder is not quadratic in itself; it is 1/(1 - x·S) over
/// the large Schröder series S.
pub fn first_return_form(family: &Family, order: usize) -> Result<Series, FamiliesError> {
    let n = family.n_colors();
    let nx = Series::x(order).scale(&rat(i64::from(n)));
    let series = match family.id() {
        FamilyId::Catalan => solve_quadratic_fe(&Series::zero(order), &Series::x(order), order)?,
        FamilyId::SchroderLarge => solve_quadratic_fe(&nx, &Series::x(order), order)?,
        FamilyId::Motzkin => {
            let x_squared = Series::monomial(BigRational::one(), 2, order);
            solve_quadratic_fe(&nx, &x_squared, order)?
        }
        FamilyId::SchroderSmall => {
            let large = first_return_form(&Family::schroder_large(1), order)?;
            Series::one(order).sub(&large.shift(1)).inverse()?
        }
    };
    Ok(series)
}

/// Row k of a family's grid as a semi-length-indexed series:
/// x^k · G^{k+1}, where G is the family's generating function.
///
/// Small Schröder is rejected: removing the level step from the x-axis
/// breaks the pattern its rows would otherwise follow.
pub fn row_sequence(family: &Family, k: usize, order: usize) -> Result<Series, FamiliesError> {
    if family.id() == FamilyId::SchroderSmall {
        return Err(FamiliesError::RowSequenceUnsupported(family.id()));
    }
    let g = first_return_form(family, order)?;
    Ok(g.pow(k + 1).shift(k))
}

/// A family's sequence as integers, computed by the first-return route.
pub fn named_sequence(family: &Family, order: usize) -> Result<NamedSequence, FamiliesError> {
    let series = first_return_form(family, order)?;
    Ok(NamedSequence { family: *family, coeffs: series.integer_coeffs()? })
}

/// Lattice x-coordinate carrying coefficient `index` of a family's
/// sequence: 2·index for the semi-length-indexed families, index for
/// Motzkin.
pub fn lattice_x_for_index(id: FamilyId, index: usize) -> usize {
    match id {
        FamilyId::Catalan | FamilyId::SchroderLarge | FamilyId::SchroderSmall => 2 * index,
        FamilyId::Motzkin => index,
    }
}

/// Reindex a raw grid-row series onto sequence exponents.
///
/// For the even-displacement families, row k of the grid populates
/// x = k, k+2, k+4, …; the series returned here carries the value at raw
/// x = k + 2j on exponent k + j, so it can be compared directly with
/// [`row_sequence`]. Motzkin rows are already aligned.
pub fn align_grid_row(id: FamilyId, k: usize, raw_row: &Series) -> Series {
    match id {
        FamilyId::Motzkin => raw_row.clone(),
        _ => {
            let raw_order = raw_row.order();
            if raw_order < k {
                // Row k starts at raw x = k; nothing is known yet.
                return Series::zero(raw_order);
            }
            let aligned_order = k + (raw_order - k) / 2;
            let mut coeffs = vec![BigRational::zero(); aligned_order + 1];
            for (j, c) in coeffs.iter_mut().enumerate().skip(k) {
                *c = raw_row.coeff(k + 2 * (j - k)).clone();
            }
            Series::make(coeffs, aligned_order).expect("length matches order")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_grid, count_paths_exhaustive, step_set_for};

    fn ints(series: &Series) -> Vec<i64> {
        series
            .integer_coeffs()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn closed_forms_match_known_prefixes() {
        assert_eq!(ints(&closed_form(&Family::catalan(), 5).unwrap()), vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(
            ints(&closed_form(&Family::schroder_small(), 5).unwrap()),
            vec![1, 1, 3, 11, 45, 197]
        );
        assert_eq!(
            ints(&closed_form(&Family::schroder_large(1), 5).unwrap()),
            vec![1, 2, 6, 22, 90, 394]
        );
        assert_eq!(
            ints(&closed_form(&Family::motzkin(1), 6).unwrap()),
            vec![1, 1, 2, 4, 9, 21, 51]
        );
    }

    #[test]
    fn two_colored_motzkin_matches_enumeration() {
        let series = closed_form(&Family::motzkin(2), 4).unwrap();
        assert_eq!(ints(&series), vec![1, 2, 5, 14, 42]);
        let steps = step_set_for(FamilyId::Motzkin, 2);
        for (length, coeff) in series.integer_coeffs().unwrap().iter().enumerate() {
            assert_eq!(&count_paths_exhaustive(&steps, length as u32), coeff);
        }
    }

    #[test]
    fn first_return_forms_match_known_prefixes() {
        assert_eq!(
            ints(&first_return_form(&Family::schroder_large(1), 5).unwrap()),
            vec![1, 2, 6, 22, 90, 394]
        );
        assert_eq!(
            ints(&first_return_form(&Family::motzkin(1), 6).unwrap()),
            vec![1, 1, 2, 4, 9, 21, 51]
        );
        assert_eq!(
            ints(&first_return_form(&Family::schroder_small(), 5).unwrap()),
            vec![1, 1, 3, 11, 45, 197]
        );
        // With zero level colors the level term vanishes and the large
        // Schröder equation collapses to the Catalan one.
        assert_eq!(
            first_return_form(&Family::schroder_large(0), 12).unwrap(),
            first_return_form(&Family::catalan(), 12).unwrap()
        );
    }

    #[test]
    fn both_routes_agree_for_all_families_and_colors() {
        let order = 64;
        let mut families = vec![Family::catalan(), Family::schroder_small()];
        for n in 0..=6 {
            families.push(Family::schroder_large(n));
            families.push(Family::motzkin(n));
        }
        for family in families {
            assert_eq!(
                closed_form(&family, order).unwrap(),
                first_return_form(&family, order).unwrap(),
                "routes disagree for {family}"
            );
        }
    }

    #[test]
    fn row_sequences_match_figure_rows() {
        let catalan_row2 = row_sequence(&Family::catalan(), 2, 5).unwrap();
        assert_eq!(ints(&catalan_row2), vec![0, 0, 1, 3, 9, 28]);

        let schroder_row1 = row_sequence(&Family::schroder_large(1), 1, 4).unwrap();
        assert_eq!(ints(&schroder_row1), vec![0, 1, 4, 16, 68]);

        let motzkin_row1 = row_sequence(&Family::motzkin(1), 1, 7).unwrap();
        assert_eq!(ints(&motzkin_row1), vec![0, 1, 2, 5, 12, 30, 76, 196]);

        let base = row_sequence(&Family::motzkin(1), 0, 8).unwrap();
        assert_eq!(base, first_return_form(&Family::motzkin(1), 8).unwrap());
    }

    #[test]
    fn row_sequence_rejects_small_schroder() {
        let err = row_sequence(&Family::schroder_small(), 1, 4).unwrap_err();
        assert!(matches!(err, FamiliesError::RowSequenceUnsupported(FamilyId::SchroderSmall)));
    }

    #[test]
    fn row_power_step_regression() {
        // x^{n+1}·G^{n+2} = (x^n·G^{n+1}) · (x·G) for every row index n.
        let order = 24;
        for family in [Family::schroder_large(1), Family::motzkin(1), Family::catalan()] {
            let g = first_return_form(&family, order).unwrap();
            let xg = g.shift(1);
            for n in 0..=5 {
                let lhs = row_sequence(&family, n + 1, order).unwrap();
                let rhs = row_sequence(&family, n, order).unwrap().mul(&xg);
                assert_eq!(lhs, rhs, "{family} row step n={n}");
            }
        }
    }

    #[test]
    fn family_constructor_enforces_color_rules() {
        assert!(Family::new(FamilyId::Catalan, 0).is_ok());
        assert!(matches!(
            Family::new(FamilyId::Catalan, 2).unwrap_err(),
            FamiliesError::InvalidColors { expected: 0, got: 2, .. }
        ));
        assert!(matches!(
            Family::new(FamilyId::SchroderSmall, 0).unwrap_err(),
            FamiliesError::InvalidColors { expected: 1, got: 0, .. }
        ));
        assert!(Family::new(FamilyId::Motzkin, 7).is_ok());
    }

    #[test]
    fn family_names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), id);
        }
        assert!("nosuch".parse::<FamilyId>().is_err());
        assert_eq!("schroder_large".parse::<FamilyId>().unwrap(), FamilyId::SchroderLarge);
    }

    #[test]
    fn alignment_compresses_even_rows_only() {
        let grid = build_grid(&step_set_for(FamilyId::Catalan, 0), 9, 1);
        let aligned = align_grid_row(FamilyId::Catalan, 1, &grid.row_series(1, 9).unwrap());
        assert_eq!(ints(&aligned), vec![0, 1, 2, 5, 14, 42]);
        assert_eq!(aligned, row_sequence(&Family::catalan(), 1, 5).unwrap());

        let grid = build_grid(&step_set_for(FamilyId::Motzkin, 1), 7, 1);
        let raw = grid.row_series(1, 7).unwrap();
        assert_eq!(align_grid_row(FamilyId::Motzkin, 1, &raw), raw);
    }

    #[test]
    fn axis_reindexing_matches_enumeration() {
        for (family, ids) in [
            (Family::catalan(), FamilyId::Catalan),
            (Family::schroder_large(1), FamilyId::SchroderLarge),
            (Family::schroder_small(), FamilyId::SchroderSmall),
            (Family::motzkin(1), FamilyId::Motzkin),
        ] {
            let seq = named_sequence(&family, 5).unwrap();
            let steps = step_set_for(ids, family.n_colors());
            for (j, coeff) in seq.coeffs.iter().enumerate() {
                let end_x = lattice_x_for_index(ids, j) as u32;
                assert_eq!(&count_paths_exhaustive(&steps, end_x), coeff, "{family} index {j}");
            }
        }
    }

    #[test]
    fn divide_by_x_power_requires_zero_prefix() {
        let s = Series::from_ints(&[0, 0, 3, 4], 3).unwrap();
        assert_eq!(ints(&divide_by_x_power(&s, 2).unwrap()), vec![3, 4]);
        let err = divide_by_x_power(&s, 3).unwrap_err();
        assert!(matches!(err, FamiliesError::NonzeroLowCoefficient { index: 2, .. }));
    }
}
