//! Riordan pairs and their lower-triangular integer matrices.
//!
//! A pair (g, f) with g(0) ≠ 0 and f(0) = 0 describes an infinite
//! lower-triangular matrix whose column k has generating function g·f^k.
//! [`materialize`] produces the finite top-left corner as exact integers,
//! and [`riordan_mul`] implements the fundamental product
//! (g, f)*(h, l) = (g·h(f), l(f)), which corresponds to the matrix product
//! of the materializations (left pair = left factor).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::families::{self, FamiliesError, Family};
use crate::series::{Series, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RiordanError {
    #[error("invalid Riordan pair: g must have a nonzero constant term")]
    ZeroConstantInG,
    #[error("invalid Riordan pair: f must have constant term 0, found {0}")]
    NonzeroConstantInF(String),
    #[error("series of order {order} cannot materialize a {needed}x{needed} matrix")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("unknown array name '{0}' (expected pascal, pascal^N, motzkin[N], or schroder[N])")]
    UnknownArray(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Families(#[from] FamiliesError),
}

/// A Riordan pair (g, f): first-column generating function and column
/// shift function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RiordanPair {
    g: Series,
    f: Series,
}

impl RiordanPair {
    pub fn new(g: Series, f: Series) -> Result<RiordanPair, RiordanError> {
        if g.coeff(0).is_zero() {
            return Err(RiordanError::ZeroConstantInG);
        }
        if !f.coeff(0).is_zero() {
            return Err(RiordanError::NonzeroConstantInF(f.coeff(0).to_string()));
        }
        Ok(RiordanPair { g, f })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    /// Order to which both component series are known.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }
}

/// Pascal's triangle as a Riordan pair: (1/(1-x), x/(1-x)).
pub fn pascal(order: usize) -> RiordanPair {
    let g = Series::from_ints(&[1, -1], order)
        .expect("two coefficients fit any order >= 1")
        .inverse()
        .expect("constant term is 1");
    let f = g.shift(1);
    RiordanPair { g, f }
}

/// The n-th power of Pascal's triangle: (1/(1-nx), x/(1-nx)).
/// The zeroth power is the identity pair (1, x).
pub fn pascal_power(n: u32, order: usize) -> RiordanPair {
    let g = Series::from_ints(&[1, -i64::from(n)], order)
        .expect("two coefficients fit any order >= 1")
        .inverse()
        .expect("constant term is 1");
    let f = g.shift(1);
    RiordanPair { g, f }
}

/// The identity pair (1, x).
pub fn identity_pair(order: usize) -> RiordanPair {
    pascal_power(0, order)
}

/// (M_n(x), x·M_n(x)) for the n-colored Motzkin generating function.
pub fn motzkin_pair(n: u32, order: usize) -> Result<RiordanPair, RiordanError> {
    let g = families::first_return_form(&Family::motzkin(n), order)?;
    let f = g.shift(1);
    RiordanPair::new(g, f)
}

/// (S_n(x), x·S_n(x)) for the n-colored large Schröder generating
/// function, mirroring the Motzkin construction.
pub fn schroder_pair(n: u32, order: usize) -> Result<RiordanPair, RiordanError> {
    let g = families::first_return_form(&Family::schroder_large(n), order)?;
    let f = g.shift(1);
    RiordanPair::new(g, f)
}

/// The fundamental product (g, f)*(h, l) = (g·h(f), l(f)).
pub fn riordan_mul(a: &RiordanPair, b: &RiordanPair) -> Result<RiordanPair, RiordanError> {
    let g = a.g.mul(&b.g.compose(&a.f)?);
    let f = b.f.compose(&a.f)?;
    RiordanPair::new(g, f)
}

/// Binomial coefficient by the additive triangle recurrence; out-of-range
/// k yields 0 by convention.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let n = n as usize;
    let k = k as usize;
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row[k].clone()
}

/// A finite N×N lower-triangular matrix of exact integers, stored as
/// ragged rows (row i has i+1 entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriMatrix {
    rows: Vec<Vec<BigInt>>,
}

impl TriMatrix {
    pub fn identity(n: usize) -> TriMatrix {
        let rows = (0..n)
            .map(|i| {
                let mut row = vec![BigInt::zero(); i + 1];
                row[i] = BigInt::one();
                row
            })
            .collect();
        TriMatrix { rows }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> TriMatrix {
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), i + 1, "row {i} of a triangular matrix has {i} + 1 entries");
        }
        TriMatrix { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry (i, j); zero above the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        if j > i {
            BigInt::zero()
        } else {
            self.rows[i][j].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Exact matrix product; both operands must share the same dimension.
    pub fn matmul(&self, other: &TriMatrix) -> TriMatrix {
        assert_eq!(self.dim(), other.dim(), "matrix dimensions must match");
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..=i)
                    .map(|j| {
                        let mut acc = BigInt::zero();
                        for k in j..=i {
                            acc += &self.rows[i][k] * &other.rows[k][j];
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        TriMatrix { rows }
    }

    /// First entry where two matrices differ, scanning rows top to bottom.
    pub fn first_mismatch(&self, other: &TriMatrix) -> Option<(usize, usize, BigInt, BigInt)> {
        let n = self.dim().min(other.dim());
        for i in 0..n {
            for j in 0..=i {
                if self.rows[i][j] != other.rows[i][j] {
                    return Some((i, j, self.rows[i][j].clone(), other.rows[i][j].clone()));
                }
            }
        }
        None
    }

    /// CSV rendering: one row per line, ragged.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON rendering with decimal-string entries.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct MatrixJson {
            n: usize,
            rows: Vec<Vec<String>>,
        }
        let doc = MatrixJson {
            n: self.dim(),
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(BigInt::to_string).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("matrix serialization cannot fail")
    }
}

/// Materialize the top-left n×n corner: entry (i, k) is the coefficient of
/// x^i in g·f^k. Every entry must come out an exact integer.
pub fn materialize(pair: &RiordanPair, n: usize) -> Result<TriMatrix, RiordanError> {
    if n == 0 {
        return Ok(TriMatrix { rows: Vec::new() });
    }
    if pair.order() < n - 1 {
        return Err(RiordanError::InsufficientOrder { order: pair.order(), needed: n });
    }
    let f = pair.f.truncate(n - 1).expect("order checked");
    let mut column = pair.g.truncate(n - 1).expect("order checked");
    let mut rows = vec![Vec::new(); n];
    for k in 0..n {
        let ints = column.integer_coeffs()?;
        for (i, value) in ints.into_iter().enumerate().take(n).skip(k) {
            rows[i].push(value);
        }
        if k + 1 < n {
            column = column.mul(&f);
        }
    }
    // Columns k > i of a Riordan array vanish because f has valuation >= 1,
    // but the rows were built column-wise; make the shape explicit.
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.len(), i + 1);
    }
    Ok(TriMatrix { rows })
}

/// Arrays addressable by name on user-facing surfaces:
/// `pascal`, `pascal^N`, `motzkin[N]`, `schroder[N]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedArray {
    Pascal,
    PascalPower(u32),
    Motzkin(u32),
    Schroder(u32),
}

impl NamedArray {
    pub fn pair(&self, order: usize) -> Result<RiordanPair, RiordanError> {
        match *self {
            NamedArray::Pascal => Ok(pascal(order)),
            NamedArray::PascalPower(n) => Ok(pascal_power(n, order)),
            NamedArray::Motzkin(n) => motzkin_pair(n, order),
            NamedArray::Schroder(n) => schroder_pair(n, order),
        }
    }
}

impl fmt::Display for NamedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            NamedArray::Pascal => write!(f, "pascal"),
            NamedArray::PascalPower(n) => write!(f, "pascal^{n}"),
            NamedArray::Motzkin(n) => write!(f, "motzkin[{n}]"),
            NamedArray::Schroder(n) => write!(f, "schroder[{n}]"),
        }
    }
}

impl FromStr for NamedArray {
    type Err = RiordanError;

    fn from_str(s: &str) -> Result<NamedArray, RiordanError> {
        let unknown = || RiordanError::UnknownArray(s.to_string());
        if s == "pascal" {
            return Ok(NamedArray::Pascal);
        }
        if let Some(rest) = s.strip_prefix("pascal^") {
            return rest.parse().map(NamedArray::PascalPower).map_err(|_| unknown());
        }
        for (prefix, build) in [
            ("motzkin", NamedArray::Motzkin as fn(u32) -> NamedArray),
            ("schroder", NamedArray::Schroder as fn(u32) -> NamedArray),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                    return inner.parse().map(build).map_err(|_| unknown());
                }
            }
        }
        Err(unknown())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{count_paths_exhaustive, step_set_for};
    use crate::FamilyId;

    fn rows_i64(m: &TriMatrix) -> Vec<Vec<i64>> {
        m.rows()
            .iter()
            .map(|row| row.iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn binomial_matches_known_entries() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }

    #[test]
    fn binomial_recurrence_agrees_with_factorials() {
        fn factorial(n: u64) -> BigInt {
            (1..=n).fold(BigInt::one(), |acc, i| acc * i)
        }
        for n in 1..=32u64 {
            for k in 1..=n {
                let additive = binomial(n, k);
                assert_eq!(additive, binomial(n - 1, k - 1) + binomial(n - 1, k));
                assert_eq!(additive, factorial(n) / (factorial(k) * factorial(n - k)));
            }
        }
    }

    #[test]
    fn pascal_materializes_to_the_binomial_triangle() {
        let m = materialize(&pascal(8), 6).unwrap();
        assert_eq!(
            rows_i64(&m),
            vec![
                vec![1],
                vec![1, 1],
                vec![1, 2, 1],
                vec![1, 3, 3, 1],
                vec![1, 4, 6, 4, 1],
                vec![1, 5, 10, 10, 5, 1],
            ]
        );
    }

    #[test]
    fn pascal_power_zero_is_identity() {
        let m = materialize(&pascal_power(0, 4), 3).unwrap();
        assert_eq!(m, TriMatrix::identity(3));
        assert_eq!(pascal_power(1, 6), pascal(6));
    }

    #[test]
    fn pascal_squared_two_routes() {
        let direct = materialize(&pascal_power(2, 4), 3).unwrap();
        assert_eq!(rows_i64(&direct), vec![vec![1], vec![2, 1], vec![4, 4, 1]]);
        let p = materialize(&pascal(4), 3).unwrap();
        assert_eq!(direct, p.matmul(&p));
    }

    #[test]
    fn repeated_pascal_products_match_pascal_powers() {
        let dim = 8;
        let p = materialize(&pascal(dim), dim).unwrap();
        let mut product = TriMatrix::identity(dim);
        for n in 0..=5u32 {
            assert_eq!(product, materialize(&pascal_power(n, dim), dim).unwrap(), "n={n}");
            product = p.matmul(&product);
        }
    }

    #[test]
    fn riordan_product_matches_matrix_product() {
        let dim = 16;
        let order = dim;
        let pairs = [
            pascal(order),
            pascal_power(2, order),
            motzkin_pair(1, order).unwrap(),
            schroder_pair(1, order).unwrap(),
        ];
        for a in &pairs {
            for b in &pairs {
                let product = riordan_mul(a, b).unwrap();
                let lhs = materialize(&product, dim).unwrap();
                let rhs = materialize(a, dim).unwrap().matmul(&materialize(b, dim).unwrap());
                assert_eq!(lhs.first_mismatch(&rhs), None);
            }
        }
    }

    #[test]
    fn pascal_product_rule() {
        let order = 12;
        for n in 0..=4 {
            let lhs = riordan_mul(&pascal(order), &pascal_power(n, order)).unwrap();
            assert_eq!(lhs, pascal_power(n + 1, order), "n={n}");
        }
    }

    #[test]
    fn identity_pair_is_neutral() {
        let order = 10;
        let m = motzkin_pair(1, order).unwrap();
        assert_eq!(riordan_mul(&identity_pair(order), &m).unwrap(), m);
        assert_eq!(riordan_mul(&m, &identity_pair(order)).unwrap(), m);
    }

    #[test]
    fn family_pairs_carry_their_sequences() {
        let m1 = materialize(&motzkin_pair(1, 8).unwrap(), 5).unwrap();
        // column 0 is the Motzkin sequence, column 1 row k holds row-1
        // lattice values
        assert_eq!(
            (0..5).map(|i| m1.entry(i, 0)).collect::<Vec<_>>(),
            [1, 1, 2, 4, 9].map(BigInt::from)
        );
        assert_eq!(
            (1..5).map(|i| m1.entry(i, 1)).collect::<Vec<_>>(),
            [1, 2, 5, 12].map(BigInt::from)
        );

        let s1 = materialize(&schroder_pair(1, 8).unwrap(), 4).unwrap();
        assert_eq!(
            (0..4).map(|i| s1.entry(i, 0)).collect::<Vec<_>>(),
            [1, 2, 6, 22].map(BigInt::from)
        );

        let m0 = materialize(&motzkin_pair(0, 8).unwrap(), 5).unwrap();
        assert_eq!(
            (0..5).map(|i| m0.entry(i, 0)).collect::<Vec<_>>(),
            [1, 0, 1, 0, 2].map(BigInt::from)
        );
    }

    #[test]
    fn pascal_times_motzkin_adds_a_color() {
        // Column 0 of P·M_1 is the 2-colored Motzkin sequence; check it
        // against the exhaustive enumerator.
        let dim = 8;
        let product = riordan_mul(&pascal(dim), &motzkin_pair(1, dim).unwrap()).unwrap();
        let m = materialize(&product, dim).unwrap();
        let steps = step_set_for(FamilyId::Motzkin, 2);
        for i in 0..dim {
            assert_eq!(m.entry(i, 0), count_paths_exhaustive(&steps, i as u32));
        }
        assert_eq!(m, materialize(&motzkin_pair(2, dim).unwrap(), dim).unwrap());
    }

    #[test]
    fn pair_validation() {
        let order = 4;
        assert!(matches!(
            RiordanPair::new(Series::x(order), Series::x(order)).unwrap_err(),
            RiordanError::ZeroConstantInG
        ));
        assert!(matches!(
            RiordanPair::new(Series::one(order), Series::one(order)).unwrap_err(),
            RiordanError::NonzeroConstantInF(_)
        ));
    }

    #[test]
    fn materialize_requires_enough_order() {
        let err = materialize(&pascal(3), 6).unwrap_err();
        assert!(matches!(err, RiordanError::InsufficientOrder { order: 3, needed: 6 }));
    }

    #[test]
    fn named_arrays_parse_and_print() {
        assert_eq!("pascal".parse::<NamedArray>().unwrap(), NamedArray::Pascal);
        assert_eq!("pascal^3".parse::<NamedArray>().unwrap(), NamedArray::PascalPower(3));
        assert_eq!("motzkin[2]".parse::<NamedArray>().unwrap(), NamedArray::Motzkin(2));
        assert_eq!("schroder[0]".parse::<NamedArray>().unwrap(), NamedArray::Schroder(0));
        for bad in ["nosuch", "motzkin[", "motzkin[x]", "pascal^"] {
            assert!(bad.parse::<NamedArray>().is_err(), "{bad}");
        }
        assert_eq!(NamedArray::Motzkin(2).to_string(), "motzkin[2]");
    }

    #[test]
    fn exports_are_stable() {
        let m = materialize(&pascal(4), 3).unwrap();
        assert_eq!(m.to_csv(), "1\n1,1\n1,2,1\n");
        assert_eq!(m.to_json(), r#"{"n":3,"rows":[["1"],["1","1"],["1","2","1"]]}"#);
    }
}
