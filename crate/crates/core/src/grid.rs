//! Uniform rectilinear grids and sampled complex fields.
//!
//! A [`Grid`] is a product of [`UniformAxis`] values stored row-major with
//! the last axis fastest. Cavity checks use the `(z, t)` layout, the
//! quaternion Maxwell checks use `(x, y, z, t)`. An axis with a single
//! sample is never differentiated (its derivative is zero); an axis that is
//! differentiated needs at least three samples.

use num_complex::Complex64;

use crate::{Error, Result};

/// Relative tolerance for accepting a sample sequence as uniform.
pub const UNIFORM_TOL: f64 = 1e-12;

/// Evenly spaced samples `start + i * step` for `i in 0..len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformAxis {
    /// `len` samples from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, len: usize) -> Result<Self> {
        if len == 0 || !start.is_finite() || !stop.is_finite() {
            return Err(Error::DegenerateGrid(
                "axis needs at least one finite sample".into(),
            ));
        }
        if len > 1 && stop == start {
            return Err(Error::DegenerateGrid("axis has zero extent".into()));
        }
        let step = if len == 1 {
            0.0
        } else {
            (stop - start) / (len - 1) as f64
        };
        Ok(Self { start, step, len })
    }

    /// A single-sample axis at `x`.
    pub fn point(x: f64) -> Self {
        Self {
            start: x,
            step: 0.0,
            len: 1,
        }
    }

    /// Accept explicit samples if their spacing is uniform to [`UNIFORM_TOL`].
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        match samples {
            [] => Err(Error::DegenerateGrid("empty axis".into())),
            [x] => Ok(Self::point(*x)),
            _ => {
                let n = samples.len();
                let step = (samples[n - 1] - samples[0]) / (n - 1) as f64;
                if step == 0.0 {
                    return Err(Error::DegenerateGrid("axis has zero extent".into()));
                }
                for (i, w) in samples.windows(2).enumerate() {
                    let d = w[1] - w[0];
                    if ((d - step) / step).abs() > UNIFORM_TOL {
                        return Err(Error::DegenerateGrid(format!(
                            "non-uniform spacing at sample {i}"
                        )));
                    }
                }
                Ok(Self {
                    start: samples[0],
                    step,
                    len: n,
                })
            }
        }
    }

    pub fn at(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.at(i)).collect()
    }

    pub fn stop(&self) -> f64 {
        self.at(self.len.saturating_sub(1))
    }

    /// Same extent with half the spacing.
    pub fn refined(&self) -> Self {
        if self.len <= 1 {
            return *self;
        }
        Self {
            start: self.start,
            step: self.step / 2.0,
            len: 2 * self.len - 1,
        }
    }

    /// The same samples shifted by `dx`.
    pub fn shifted(&self, dx: f64) -> Self {
        Self {
            start: self.start + dx,
            ..*self
        }
    }

    /// True when sample `i` and sample `len - 1 - i` are negatives of each other.
    pub fn is_symmetric_about_zero(&self) -> bool {
        let scale = self
            .start
            .abs()
            .max(self.stop().abs())
            .max(f64::MIN_POSITIVE);
        (self.start + self.stop()).abs() <= 1e-12 * scale
    }
}

/// Product grid with row-major storage, last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub axes: Vec<UniformAxis>,
    pub names: Vec<String>,
}

impl Grid {
    pub fn new(axes: Vec<UniformAxis>, names: Vec<String>) -> Result<Self> {
        if axes.is_empty() || axes.len() != names.len() {
            return Err(Error::ShapeMismatch {
                expected: vec![axes.len()],
                got: vec![names.len()],
            });
        }
        Ok(Self { axes, names })
    }

    /// Two-dimensional `(z, t)` grid.
    pub fn zt(z: UniformAxis, t: UniformAxis) -> Self {
        Self {
            axes: vec![z, t],
            names: vec!["z".into(), "t".into()],
        }
    }

    /// Four-dimensional `(x, y, z, t)` grid.
    pub fn xyzt(x: UniformAxis, y: UniformAxis, z: UniformAxis, t: UniformAxis) -> Self {
        Self {
            axes: vec![x, y, z, t],
            names: ["x", "y", "z", "t"].map(String::from).to_vec(),
        }
    }

    pub fn rank(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stride(&self, axis: usize) -> usize {
        self.axes[axis + 1..].iter().map(|a| a.len).product()
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (&i, a)| acc * a.len + i)
    }

    pub fn unflat(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.rank()];
        for (k, a) in self.axes.iter().enumerate().rev() {
            idx[k] = flat % a.len;
            flat /= a.len;
        }
        idx
    }

    pub fn coords(&self, flat: usize) -> Vec<f64> {
        self.unflat(flat)
            .iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.at(i))
            .collect()
    }

    /// Every axis refined to half spacing.
    pub fn refined(&self) -> Self {
        Self {
            axes: self.axes.iter().map(UniformAxis::refined).collect(),
            names: self.names.clone(),
        }
    }

    /// Evaluate `f` at every node.
    pub fn sample<F: Fn(&[f64]) -> Complex64>(&self, f: F) -> Vec<Complex64> {
        (0..self.len()).map(|n| f(&self.coords(n))).collect()
    }

    /// Flat indices of nodes at least one sample away from the boundary of
    /// every axis with more than one sample.
    ///
    /// Fails when such an axis has fewer than three samples.
    pub fn interior(&self) -> Result<Vec<usize>> {
        for (a, name) in self.axes.iter().zip(&self.names) {
            if a.len == 2 {
                return Err(Error::DegenerateGrid(format!(
                    "axis {name} has 2 samples, need 1 or at least 3"
                )));
            }
        }
        Ok((0..self.len())
            .filter(|&n| {
                self.unflat(n)
                    .iter()
                    .zip(&self.axes)
                    .all(|(&i, a)| a.len == 1 || (i > 0 && i + 1 < a.len))
            })
            .collect())
    }

    /// Require at least three samples along each listed axis.
    pub fn require_differentiable(&self, axes: &[usize]) -> Result<()> {
        for &k in axes {
            if self.axes[k].len < 3 {
                return Err(Error::DegenerateGrid(format!(
                    "axis {} has {} samples, need at least 3",
                    self.names[k], self.axes[k].len
                )));
            }
        }
        Ok(())
    }

    /// Second-order central difference of `values` along `axis` at an
    /// interior node. Zero along single-sample axes.
    pub fn central_diff(&self, values: &[Complex64], axis: usize, flat: usize) -> Complex64 {
        let a = &self.axes[axis];
        if a.len == 1 {
            return Complex64::new(0.0, 0.0);
        }
        let s = self.stride(axis);
        (values[flat + s] - values[flat - s]) / (2.0 * a.step)
    }
}

/// Named complex channels sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    pub grid: Grid,
    pub labels: Vec<String>,
    pub channels: Vec<Vec<Complex64>>,
}

impl SampledField {
    pub fn new(grid: Grid, labels: Vec<String>, channels: Vec<Vec<Complex64>>) -> Result<Self> {
        if labels.len() != channels.len() {
            return Err(Error::ShapeMismatch {
                expected: vec![labels.len()],
                got: vec![channels.len()],
            });
        }
        for ch in &channels {
            if ch.len() != grid.len() {
                return Err(Error::ShapeMismatch {
                    expected: grid.shape(),
                    got: vec![ch.len()],
                });
            }
        }
        Ok(Self {
            grid,
            labels,
            channels,
        })
    }

    pub fn channel(&self, label: &str) -> Option<&[Complex64]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.channels[i].as_slice())
    }

    pub fn max_abs(&self) -> f64 {
        self.channels
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}
