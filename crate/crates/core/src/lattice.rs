//! Step sets, exhaustive path enumeration, and path-count grids.
//!
//! This module is the combinatorial ground truth: paths are counted either
//! by brute-force depth-first enumeration over step choices (the oracle) or
//! by a dynamic program filling a grid of counts per lattice point. The two
//! never share code, so they can check each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::families::FamilyId;
use crate::series::Series;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("row {k} is outside the grid (height {height})")]
    RowOutOfRange { k: usize, height: usize },
    #[error("order {order} exceeds the grid width {width}")]
    OrderExceedsWidth { order: usize, width: usize },
    #[error("step set must contain at least one step")]
    EmptyStepSet,
    #[error("duplicate step (dx={dx}, dy={dy}, min_height={min_height}); use colors for multiplicity")]
    DuplicateStep { dx: u32, dy: i32, min_height: u32 },
}

/// One lattice step: displacement, color multiplicity, and the lowest
/// starting height at which it may be used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub dx: u32,
    pub dy: i32,
    pub colors: u32,
    pub min_height: u32,
}

impl Step {
    pub fn new(dx: u32, dy: i32) -> Step {
        Step { dx, dy, colors: 1, min_height: 0 }
    }

    pub fn with_colors(mut self, colors: u32) -> Step {
        self.colors = colors;
        self
    }

    pub fn with_min_height(mut self, min_height: u32) -> Step {
        self.min_height = min_height;
        self
    }
}

/// A set of steps defining a path family. Two steps never share the same
/// (dx, dy, min_height); multiplicity is expressed through `colors`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    pub name: String,
    pub steps: Vec<Step>,
}

impl StepSet {
    pub fn new(name: impl Into<String>, steps: Vec<Step>) -> Result<StepSet, LatticeError> {
        if steps.is_empty() {
            return Err(LatticeError::EmptyStepSet);
        }
        for (i, a) in steps.iter().enumerate() {
            for b in &steps[..i] {
                if (a.dx, a.dy, a.min_height) == (b.dx, b.dy, b.min_height) {
                    return Err(LatticeError::DuplicateStep {
                        dx: a.dx,
                        dy: a.dy,
                        min_height: a.min_height,
                    });
                }
            }
        }
        Ok(StepSet { name: name.into(), steps })
    }
}

/// The steps of a named family. `n_colors` is the color multiplicity of the
/// level step and is ignored for Catalan; zero colors removes the level
/// step entirely (the family degenerates to pure up/down paths).
pub fn step_set_for(family: FamilyId, n_colors: u32) -> StepSet {
    let up = Step::new(1, 1);
    let down = Step::new(1, -1);
    let mut steps = vec![up, down];
    match family {
        FamilyId::Catalan => {}
        FamilyId::SchroderLarge => {
            if n_colors > 0 {
                steps.push(Step::new(2, 0).with_colors(n_colors));
            }
        }
        FamilyId::SchroderSmall => {
            // No level step with both endpoints on the x-axis: the step may
            // only start at height >= 1.
            if n_colors > 0 {
                steps.push(Step::new(2, 0).with_colors(n_colors).with_min_height(1));
            }
        }
        FamilyId::Motzkin => {
            if n_colors > 0 {
                steps.push(Step::new(1, 0).with_colors(n_colors));
            }
        }
    }
    StepSet::new(family.as_str(), steps).expect("built-in step sets are valid")
}

/// Exact number of paths from (0,0) to (`end_x`, 0) that never go below the
/// x-axis, by depth-first enumeration over step choices. Color
/// multiplicities are multiplied in as weights rather than materialized.
///
/// This is the desk-scale oracle: deliberately free of memoization and of
/// any shared machinery with the grid builder. Internal accumulation is
/// u128; exceeding it panics (far beyond the intended end_x <= ~16).
pub fn count_paths_exhaustive(steps: &StepSet, end_x: u32) -> BigInt {
    fn walk(steps: &[Step], x: u32, y: u32, end_x: u32) -> u128 {
        if x == end_x {
            return u128::from(y == 0);
        }
        // Each step advances x by at least 1 and lowers y by at most 1, so
        // a path higher than the remaining distance can never land on the
        // axis in time.
        if y > end_x - x {
            return 0;
        }
        let mut total: u128 = 0;
        for step in steps {
            if y < step.min_height || x + step.dx > end_x {
                continue;
            }
            let Some(ny) = y.checked_add_signed(step.dy) else {
                continue;
            };
            let sub = walk(steps, x + step.dx, ny, end_x);
            let weighted = u128::from(step.colors)
                .checked_mul(sub)
                .and_then(|w| w.checked_add(total))
                .expect("path count exceeds u128; oracle is desk-scale only");
            total = weighted;
        }
        total
    }
    BigInt::from(walk(&steps.steps, 0, 0, end_x))
}

/// Counts of constrained paths from the origin to each lattice point
/// (x, y) with 0 <= x <= width, 0 <= y <= height.
///
/// Entries are true quarter-plane counts: the builder runs the dynamic
/// program over the full reachable triangle (y <= x) and then exposes the
/// requested window, so a low `height` never distorts values near the top
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGrid {
    width: usize,
    height: usize,
    counts: Vec<Vec<BigInt>>, // counts[y][x]
}

/// Fill a grid by the point recurrence: the count at (x, y) is the
/// color-weighted sum of counts at the start of every step that ends there.
pub fn build_grid(steps: &StepSet, width: usize, height: usize) -> PathGrid {
    // No step climbs faster than one unit of y per unit of x, so nothing
    // above y = width is reachable within the window.
    let full = width;
    let mut counts = vec![vec![BigInt::from(0); width + 1]; full + 1];
    counts[0][0] = BigInt::from(1);
    for x in 1..=width {
        for y in 0..=full.min(x) {
            let mut total = BigInt::from(0);
            for step in &steps.steps {
                let dx = step.dx as usize;
                if x < dx {
                    continue;
                }
                let sy = y as i64 - step.dy as i64;
                if sy < 0 || sy > full as i64 {
                    continue;
                }
                let sy = sy as usize;
                if sy < step.min_height as usize {
                    continue;
                }
                let from = &counts[sy][x - dx];
                if !from.is_zero() {
                    total += from * step.colors;
                }
            }
            counts[y][x] = total;
        }
    }
    counts.truncate(height + 1);
    while counts.len() < height + 1 {
        counts.push(vec![BigInt::from(0); width + 1]);
    }
    PathGrid { width, height, counts }
}

impl PathGrid {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Count at lattice point (x, y). Panics outside the grid window.
    pub fn count(&self, x: usize, y: usize) -> &BigInt {
        &self.counts[y][x]
    }

    /// Generating function of row `k`, keeping the raw x-coordinate as the
    /// exponent. For purely even-displacement families the odd positions of
    /// a row are zero; no reindexing happens here.
    pub fn row_series(&self, k: usize, order: usize) -> Result<Series, LatticeError> {
        if k > self.height {
            return Err(LatticeError::RowOutOfRange { k, height: self.height });
        }
        if order > self.width {
            return Err(LatticeError::OrderExceedsWidth { order, width: self.width });
        }
        let coeffs = self.counts[k][..=order]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Ok(Series::make(coeffs, order).expect("length matches order"))
    }

    /// First grid point whose count violates the step recurrence, if any.
    /// Used to re-check a built grid against its defining steps.
    pub fn first_recurrence_violation(&self, steps: &StepSet) -> Option<(usize, usize)> {
        for x in 1..=self.width {
            for y in 0..=self.height {
                // Skip points whose predecessors reach above the stored
                // window; their check would need unknown counts.
                let needs_above = steps
                    .steps
                    .iter()
                    .any(|s| y as i64 - s.dy as i64 > self.height as i64);
                if needs_above {
                    continue;
                }
                let mut total = BigInt::from(0);
                for step in &steps.steps {
                    let dx = step.dx as usize;
                    if x < dx {
                        continue;
                    }
                    let sy = y as i64 - step.dy as i64;
                    if sy < 0 || (sy as usize) < step.min_height as usize {
                        continue;
                    }
                    total += self.count(x - dx, sy as usize) * step.colors;
                }
                if &total != self.count(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// CSV rendering: rows from the top of the grid down to the x-axis,
    /// columns by ascending x, empty cells for zero counts.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for y in (0..=self.height).rev() {
            let row: Vec<String> = (0..=self.width)
                .map(|x| {
                    let c = self.count(x, y);
                    if c.is_zero() { String::new() } else { c.to_string() }
                })
                .collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON rendering with decimal-string counts; zero entries are omitted.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct GridJson {
            width: usize,
            height: usize,
            counts: Vec<(usize, usize, String)>,
        }
        let mut entries = Vec::new();
        for x in 0..=self.width {
            for y in 0..=self.height {
                let c = self.count(x, y);
                if !c.is_zero() {
                    entries.push((x, y, c.to_string()));
                }
            }
        }
        let doc = GridJson { width: self.width, height: self.height, counts: entries };
        serde_json::to_string(&doc).expect("grid serialization cannot fail")
    }
}
