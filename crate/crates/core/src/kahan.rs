//! Kahan-compensated summation.
//!
//! All long floating-point accumulations in this crate (Mertens sums,
//! log-space Euler products, Dirichlet series) go through [`KahanSum`] so
//! that results are reproducible and the rounding error stays a few ulps
//! regardless of the number of terms.

/// A running compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    /// Fold another compensated sum into this one, carrying its compensation.
    #[inline]
    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.add(-other.compensation);
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }

    pub fn sum_iter<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut k = Self::new();
        for v in iter {
            k.add(v);
        }
        k.value()
    }
}
