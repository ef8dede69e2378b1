//! Intervals, uniform grids and functions sampled on them.

use crate::error::{Error, Result};

/// Open interval `(a, b)` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Self { a, b })
    }

    /// Symmetric interval `(-half, half)`.
    pub fn symmetric(half: f64) -> Result<Self> {
        Self::new(-half, half)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    pub fn contains_open(&self, x: f64) -> bool {
        self.a < x && x < self.b
    }

    /// `sqrt((x - a)(b - x))`, the square-root edge profile; zero outside.
    pub fn edge_weight(&self, x: f64) -> f64 {
        ((x - self.a) * (self.b - x)).max(0.0).sqrt()
    }

    pub(crate) fn require_inside(&self, x: f64) -> Result<()> {
        if self.contains_open(x) {
            Ok(())
        } else {
            Err(Error::OutsideOpenInterval { x, a: self.a, b: self.b })
        }
    }
}

/// Partition of an interval into `n` equal cells.
///
/// Nodes are `t_j = a + j*h` for `j = 0..=n` and collocation points are the
/// cell centres `x_i = a + (i - 1/2)*h` for `i = 1..=n`. Both are computed
/// directly from `a`, `h` and the index, never by accumulation.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    interval: Interval,
    n: usize,
    h: f64,
    nodes: Vec<f64>,
    colloc: Vec<f64>,
}

impl Grid {
    pub fn new(interval: Interval, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroSubdivisions);
        }
        let a = interval.a();
        let h = interval.length() / n as f64;
        let nodes = (0..=n).map(|j| a + j as f64 * h).collect();
        let colloc = (1..=n).map(|i| a + (i as f64 - 0.5) * h).collect();
        Ok(Self { interval, n, h, nodes, colloc })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// Number of cells.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// `t_0..=t_n`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `x_1..=x_n`.
    pub fn colloc(&self) -> &[f64] {
        &self.colloc
    }
}

/// Convenience constructor for `Grid::new(Interval::new(a, b)?, n)`.
pub fn build_grid(a: f64, b: f64, n: usize) -> Result<Grid> {
    Grid::new(Interval::new(a, b)?, n)
}

/// Where the values of a [`SampledFunction`] live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    /// `t_1..=t_n`.
    AtNodes,
    /// `x_1..=x_n`.
    AtColloc,
}

/// `n` values attached to a grid, either at the right cell nodes or at the
/// cell centres.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<f64>,
    site: Site,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<f64>, site: Site) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::DimensionMismatch { expected: grid.n(), found: values.len() });
        }
        Ok(Self { grid, values, site })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn site(&self) -> Site {
        self.site
    }

    /// Abscissa of each value.
    pub fn abscissae(&self) -> &[f64] {
        match self.site {
            Site::AtNodes => &self.grid.nodes()[1..],
            Site::AtColloc => self.grid.colloc(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.abscissae().iter().copied().zip(self.values.iter().copied())
    }

    /// Piecewise-linear interpolation through the samples, held constant
    /// beyond the first and last abscissa.
    pub fn interpolate(&self, x: f64) -> f64 {
        let xs = self.abscissae();
        let ys = &self.values;
        if xs.len() == 1 || x <= xs[0] {
            return ys[0];
        }
        let last = xs.len() - 1;
        if x >= xs[last] {
            return ys[last];
        }
        let k = xs.partition_point(|&v| v <= x);
        let (x0, x1) = (xs[k - 1], xs[k]);
        let w = (x - x0) / (x1 - x0);
        ys[k - 1] + w * (ys[k] - ys[k - 1])
    }

    /// Largest `|value - reference(abscissa)|` over samples whose abscissa
    /// passes `keep`. Returns 0 when no sample is kept.
    pub fn max_error_where(&self, reference: impl Fn(f64) -> f64, keep: impl Fn(f64) -> bool) -> f64 {
        self.points().filter(|&(x, _)| keep(x)).map(|(x, y)| (y - reference(x)).abs()).fold(0.0, f64::max)
    }
}
