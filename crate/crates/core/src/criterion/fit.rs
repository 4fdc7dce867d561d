//! Compensated summation and straight-line fits.

/// Neumaier's improvement of Kahan summation; order dependent but
/// deterministic.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Least-squares line `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Fit a line through `(x, y)` pairs; `None` for fewer than two points or
/// constant `x`. Callers pass logarithms for power-law fits.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let xbar = points.iter().map(|p| p.0).collect::<NeumaierSum>().value() / k;
    let ybar = points.iter().map(|p| p.1).collect::<NeumaierSum>().value() / k;
    let mut sxx = NeumaierSum::new();
    let mut sxy = NeumaierSum::new();
    for &(x, y) in points {
        let dx = x - xbar;
        sxx.add(dx * dx);
        sxy.add(dx * (y - ybar));
    }
    let sxx = sxx.value();
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy.value() / sxx;
    Some(LineFit {
        slope,
        intercept: ybar - slope * xbar,
        points: points.len(),
    })
}
