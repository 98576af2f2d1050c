//! Truncated formal power series with exact rational coefficients.
//!
//! A [`Series`] stores the coefficients of x^0 .. x^N for a fixed truncation
//! order N; all arithmetic is performed modulo x^{N+1}. Binary operations
//! return the minimum of the operand orders — a coefficient is never
//! fabricated beyond what both inputs actually know.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors from series construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("{given} coefficients provided for order {order} (at most {} fit)", order + 1)]
    TooManyCoefficients { given: usize, order: usize },
    #[error("not invertible: constant term is zero")]
    NotInvertible,
    #[error("composition undefined: inner series has nonzero constant term {0}")]
    CompositionUndefined(String),
    #[error("square root requires constant term 1, found {0}")]
    SqrtConstantNotOne(String),
    #[error("non-contracting functional equation: both coefficient series need valuation >= 1")]
    NonContracting,
    #[error("series known only to order {order}, but order {needed} is required")]
    InsufficientOrder { order: usize, needed: usize },
    #[error("coefficient of x^{index} is {value}, not an integer")]
    NonIntegralCoefficient { index: usize, value: String },
}

/// Index of the lowest-order nonzero coefficient, within the truncation
/// window. The zero series has infinite valuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl Valuation {
    /// True if the valuation is at least `k` (the zero series passes for
    /// every `k`).
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

/// A formal power series truncated at a fixed order.
///
/// Invariants: `coeffs.len() == order + 1`, and every coefficient is an
/// exact rational. Values are immutable after construction; all operations
/// return new series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigRational>,
}

impl Series {
    /// Build a series from the given low-order coefficients, zero-padded up
    /// to `order + 1` entries. Fails if more than `order + 1` coefficients
    /// are supplied.
    pub fn make(mut coeffs: Vec<BigRational>, order: usize) -> Result<Series, SeriesError> {
        if coeffs.len() > order + 1 {
            return Err(SeriesError::TooManyCoefficients {
                given: coeffs.len(),
                order,
            });
        }
        coeffs.resize(order + 1, BigRational::zero());
        Ok(Series { coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Result<Series, SeriesError> {
        Series::make(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
            order,
        )
    }

    /// The zero series at the given order.
    pub fn zero(order: usize) -> Series {
        Series {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Series {
        Series::constant(BigRational::one(), order)
    }

    /// A constant series.
    pub fn constant(c: BigRational, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The generator x (zero when order is 0, since x ≡ 0 mod x^1).
    pub fn x(order: usize) -> Series {
        Series::monomial(BigRational::one(), 1, order)
    }

    /// c·x^k, truncated (zero if k exceeds the order).
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation order N: coefficients are known for x^0 .. x^N.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of x^k.
    ///
    /// Panics if `k` exceeds the truncation order — that coefficient is
    /// unknown, not zero.
    pub fn coeff(&self, k: usize) -> &BigRational {
        assert!(
            k <= self.order(),
            "coefficient of x^{} requested from a series known only to order {}",
            k,
            self.order()
        );
        &self.coeffs[k]
    }

    /// All stored coefficients, index i holding the coefficient of x^i.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True if every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Valuation within the truncation window.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    /// Restrict to a lower order. Fails if `order` exceeds what is known —
    /// truncation never invents coefficients.
    pub fn truncate(&self, order: usize) -> Result<Series, SeriesError> {
        if order > self.order() {
            return Err(SeriesError::InsufficientOrder {
                order: self.order(),
                needed: order,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    /// Coefficient-wise sum at the minimum of the two orders.
    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    /// Coefficient-wise difference at the minimum of the two orders.
    pub fn sub(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    /// Multiply every coefficient by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated to the minimum of the two orders.
    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }

    /// Multiplicative inverse: `self * inverse(self) = 1` up to truncation.
    ///
    /// Uses the recurrence b_0 = 1/a_0, b_n = -(1/a_0) Σ_{k=1..n} a_k b_{n-k}.
    pub fn inverse(&self) -> Result<Series, SeriesError> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(SeriesError::NotInvertible);
        }
        let n = self.order();
        let inv_a0 = a0.recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = inv_a0.clone();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &b[m - k];
                }
            }
            b[m] = -(&inv_a0 * acc);
        }
        Ok(Series { coeffs: b })
    }

    /// Composition `self(inner)`, requiring the inner series to have zero
    /// constant term. Evaluated by Horner's scheme in the truncated ring.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::CompositionUndefined(inner.coeffs[0].to_string()));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n).expect("min order");
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Square root of a series with constant term 1.
    ///
    /// Coefficients are solved one at a time from r² = a:
    /// r_n = (a_n − Σ_{i=1..n-1} r_i r_{n-i}) / 2.
    pub fn sqrt(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::SqrtConstantNotOne(self.coeffs[0].to_string()));
        }
        let n = self.order();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut r = vec![BigRational::zero(); n + 1];
        r[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for i in 1..m {
                acc -= &r[i] * &r[m - i];
            }
            r[m] = acc * &half;
        }
        Ok(Series { coeffs: r })
    }

    /// Multiply by x^k: coefficients move up k places, the order stays
    /// fixed, and the top k coefficients fall off the truncation window.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            if i >= k {
                coeffs[i] = self.coeffs[i - k].clone();
            }
        }
        Series { coeffs }
    }

    /// k-th power by repeated truncated multiplication; `pow(0)` is 1.
    pub fn pow(&self, k: usize) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Extract the coefficients as integers, failing on the first
    /// non-integral one.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NonIntegralCoefficient {
                        index: i,
                        value: c.to_string(),
                    })
                }
            })
            .collect()
    }
}

/// Solve F = 1 + a·F + b·F² for F by fixed-point iteration.
///
/// Both `a` and `b` must have valuation >= 1, so each pass determines at
/// least one further coefficient; at most `order + 1` passes are needed.
/// The iteration stops early once it is stationary.
pub fn solve_quadratic_fe(a: &Series, b: &Series, order: usize) -> Result<Series, SeriesError> {
    if !a.valuation().at_least(1) || !b.valuation().at_least(1) {
        return Err(SeriesError::NonContracting);
    }
    let known = a.order().min(b.order());
    if known < order {
        return Err(SeriesError::InsufficientOrder {
            order: known,
            needed: order,
        });
    }
    let a = a.truncate(order).expect("checked above");
    let b = b.truncate(order).expect("checked above");
    let one = Series::one(order);
    let mut f = one.clone();
    for _ in 0..=order {
        let next = one.add(&a.mul(&f)).add(&b.mul(&f.mul(&f)));
        if next == f {
            break;
        }
        f = next;
    }
    Ok(f)
}

/// First index at which two series disagree, compared over the common
/// (minimum) order. `None` means they agree everywhere both are known.
pub fn first_mismatch(a: &Series, b: &Series) -> Option<(usize, BigRational, BigRational)> {
    let n = a.order().min(b.order());
    (0..=n).find_map(|i| {
        if a.coeffs[i] != b.coeffs[i] {
            Some((i, a.coeffs[i].clone(), b.coeffs[i].clone()))
        } else {
            None
        }
    })
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        Series::add(self, rhs)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        Series::sub(self, rhs)
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(coeffs: &[i64], order: usize) -> Series {
        Series::from_ints(coeffs, order).unwrap()
    }

    fn ints(series: &Series) -> Vec<i64> {
        series
            .coeffs()
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "non-integer coefficient {c}");
                i64::try_from(&c.to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn make_pads_with_zeros() {
        assert_eq!(ints(&s(&[1], 4)), vec![1, 0, 0, 0, 0]);
        assert_eq!(ints(&s(&[0, 1], 3)), vec![0, 1, 0, 0]);
        assert_eq!(ints(&s(&[1, 2, 6, 22], 3)), vec![1, 2, 6, 22]);
    }

    #[test]
    fn make_rejects_excess_coefficients() {
        let err = Series::from_ints(&[1, 2, 3], 1).unwrap_err();
        assert_eq!(err, SeriesError::TooManyCoefficients { given: 3, order: 1 });
    }

    #[test]
    fn add_and_sub() {
        let x = Series::x(3);
        let one = Series::one(3);
        assert_eq!(ints(&x.add(&one)), vec![1, 1, 0, 0]);
        let c = s(&[1, 1, 2, 5, 14], 4);
        assert!(c.sub(&c).is_zero());
    }

    #[test]
    fn binary_ops_take_min_order() {
        let a = s(&[1, 1], 5);
        let b = s(&[1], 2);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn scale_doubles_small_schroder_prefix() {
        let small = s(&[1, 1, 3, 11], 3);
        let two = BigRational::from_integer(2.into());
        assert_eq!(ints(&small.scale(&two)), vec![2, 2, 6, 22]);
    }

    #[test]
    fn mul_squares_catalan_and_schroder_prefixes() {
        let c = s(&[1, 1, 2, 5, 14], 4);
        assert_eq!(ints(&c.mul(&c)), vec![1, 2, 5, 14, 42]);
        let big = s(&[1, 2, 6, 22], 3);
        assert_eq!(ints(&big.mul(&big)), vec![1, 4, 16, 68]);
    }

    #[test]
    fn mul_identity() {
        let m = s(&[1, 1, 2, 4, 9], 4);
        assert_eq!(m.mul(&Series::one(4)), m);
    }

    #[test]
    fn inverse_of_one_minus_x_is_all_ones() {
        let g = s(&[1, -1], 5).inverse().unwrap();
        assert_eq!(ints(&g), vec![1, 1, 1, 1, 1, 1]);
        assert_eq!(ints(&Series::one(3).inverse().unwrap()), vec![1, 0, 0, 0]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = s(&[2, 3, -1, 7], 3);
        assert_eq!(a.mul(&a.inverse().unwrap()), Series::one(3));
    }

    #[test]
    fn inverse_produces_small_schroder_from_large() {
        // s = 1/(1 - x*S) with S the large Schröder series.
        let big = s(&[1, 2, 6, 22, 90, 394], 5);
        let inv = Series::one(5).sub(&big.shift(1)).inverse().unwrap();
        assert_eq!(ints(&inv), vec![1, 1, 3, 11, 45, 197]);
    }

    #[test]
    fn inverse_rejects_zero_constant_term() {
        assert_eq!(Series::x(3).inverse().unwrap_err(), SeriesError::NotInvertible);
    }

    #[test]
    fn compose_geometric_into_geometric() {
        // (1/(1-x)) ∘ (x/(1-x)) = (1-x)/(1-2x)
        let outer = s(&[1, -1], 4).inverse().unwrap();
        let inner = outer.shift(1);
        let composed = outer.compose(&inner).unwrap();
        assert_eq!(ints(&composed), vec![1, 1, 2, 4, 8]);
        // cross-route: (1-x) * 1/(1-2x) directly
        let doubling = s(&[1, -2], 4).inverse().unwrap();
        assert_eq!(composed, s(&[1, -1], 4).mul(&doubling));

        // ... and scaling by the outer factor 1/(1-x) again gives the
        // doubling series 1/(1-2x), the first column of the squared
        // binomial-transform array.
        assert_eq!(ints(&outer.mul(&composed)), vec![1, 2, 4, 8, 16]);
        assert_eq!(outer.mul(&composed), doubling);

        // (x/(1-x)) ∘ (x/(1-x)) = x/(1-2x)
        let twice = inner.compose(&inner).unwrap();
        assert_eq!(ints(&twice), vec![0, 1, 2, 4, 8]);
        assert_eq!(twice, doubling.shift(1));
    }

    #[test]
    fn compose_with_x_is_identity() {
        let f = s(&[3, 1, 4, 1, 5], 4);
        assert_eq!(f.compose(&Series::x(4)).unwrap(), f);
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let err = Series::one(3).compose(&Series::one(3)).unwrap_err();
        assert!(matches!(err, SeriesError::CompositionUndefined(_)));
    }

    #[test]
    fn sqrt_of_catalan_radicand() {
        let r = s(&[1, -4], 4).sqrt().unwrap();
        assert_eq!(ints(&r), vec![1, -2, -2, -4, -10]);
        // oracle: square back
        assert_eq!(r.mul(&r), s(&[1, -4], 4));
    }

    #[test]
    fn sqrt_of_schroder_radicand() {
        let a = s(&[1, -6, 1], 3);
        let r = a.sqrt().unwrap();
        assert_eq!(ints(&r), vec![1, -3, -4, -12]);
        assert_eq!(r.mul(&r), a);
    }

    #[test]
    fn sqrt_of_one() {
        assert_eq!(Series::one(4).sqrt().unwrap(), Series::one(4));
    }

    #[test]
    fn sqrt_rejects_constant_other_than_one() {
        assert!(matches!(
            s(&[2], 3).sqrt().unwrap_err(),
            SeriesError::SqrtConstantNotOne(_)
        ));
        assert!(matches!(
            Series::zero(3).sqrt().unwrap_err(),
            SeriesError::SqrtConstantNotOne(_)
        ));
    }

    #[test]
    fn solve_catalan_schroder_motzkin() {
        let order = 6;
        let x = Series::x(order);
        let x2 = Series::x(order).shift(1);
        let catalan = solve_quadratic_fe(&Series::zero(order), &x, order).unwrap();
        assert_eq!(ints(&catalan), vec![1, 1, 2, 5, 14, 42, 132]);
        let schroder = solve_quadratic_fe(&x, &x, order).unwrap();
        assert_eq!(ints(&schroder), vec![1, 2, 6, 22, 90, 394, 1806]);
        let motzkin = solve_quadratic_fe(&x, &x2, order).unwrap();
        assert_eq!(ints(&motzkin), vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn solve_residual_is_zero() {
        let order = 24;
        let x = Series::x(order);
        let f = solve_quadratic_fe(&x, &x, order).unwrap();
        let rhs = Series::one(order).add(&x.mul(&f)).add(&x.mul(&f.mul(&f)));
        assert_eq!(f, rhs);
    }

    #[test]
    fn solve_rejects_nonzero_constant_coefficients() {
        let order = 4;
        assert_eq!(
            solve_quadratic_fe(&Series::one(order), &Series::x(order), order).unwrap_err(),
            SeriesError::NonContracting
        );
    }

    #[test]
    fn solve_rejects_short_inputs() {
        assert!(matches!(
            solve_quadratic_fe(&Series::x(3), &Series::x(8), 8).unwrap_err(),
            SeriesError::InsufficientOrder { order: 3, needed: 8 }
        ));
    }

    #[test]
    fn shift_moves_coefficients_up() {
        let c = s(&[1, 1, 2, 5, 14, 42], 5);
        assert_eq!(ints(&c.shift(1)), vec![0, 1, 1, 2, 5, 14]);
    }

    #[test]
    fn pow_of_catalan_prefix() {
        let c = s(&[1, 1, 2, 5], 3);
        assert_eq!(ints(&c.pow(3)), vec![1, 3, 9, 28]);
        assert_eq!(c.pow(0), Series::one(3));
    }

    #[test]
    fn valuation_cases() {
        assert_eq!(Series::zero(4).valuation(), Valuation::Infinite);
        assert_eq!(Series::x(4).shift(1).valuation(), Valuation::Finite(2));
        assert!(Series::zero(4).valuation().at_least(100));
        assert!(!Series::x(4).valuation().at_least(2));
    }

    #[test]
    fn integer_coeffs_rejects_halves() {
        let half = Series::constant(BigRational::new(1.into(), 2.into()), 2);
        assert!(matches!(
            half.integer_coeffs().unwrap_err(),
            SeriesError::NonIntegralCoefficient { index: 0, .. }
        ));
        assert_eq!(
            s(&[1, 2, 3], 2).integer_coeffs().unwrap(),
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]
        );
    }

    #[test]
    fn first_mismatch_reports_lowest_index() {
        let a = s(&[1, 2, 3, 4], 3);
        let mut b = a.clone();
        b = b.add(&Series::monomial(BigRational::one(), 2, 3));
        let (idx, left, right) = first_mismatch(&a, &b).unwrap();
        assert_eq!(idx, 2);
        assert_eq!(left, BigRational::from_integer(3.into()));
        assert_eq!(right, BigRational::from_integer(4.into()));
        assert!(first_mismatch(&a, &a).is_none());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(s(&[1, 0, -2], 3).to_string(), "1 - 2*x^2 + O(x^4)");
        assert_eq!(Series::zero(1).to_string(), "0 + O(x^2)");
    }
}
