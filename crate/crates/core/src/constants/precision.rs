//! Values paired with rigorous absolute error bounds.
//!
//! The bounds are propagated conservatively (interval endpoints for power
//! maps, triangle inequality elsewhere) plus an ulp-level allowance for the
//! floating-point operation itself.

use num_complex::Complex64;

const ULP: f64 = 4.0 * f64::EPSILON;

/// A real value with an absolute error bound.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionValue {
    pub value: f64,
    pub err: f64,
}

impl PrecisionValue {
    pub fn new(value: f64, err: f64) -> Self {
        debug_assert!(err.is_finite() && err >= 0.0);
        Self { value, err }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, err: 0.0 }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let v = self.value * other.value;
        let err = self.value.abs() * other.err
            + other.value.abs() * self.err
            + self.err * other.err
            + v.abs() * ULP;
        Self::new(v, err)
    }

    /// Multiplication by a constant known to rounding only.
    pub fn scale(&self, c: f64) -> Self {
        self.mul(&Self::new(c, c.abs() * ULP))
    }

    /// `self^e` for a positive value; the bound is evaluated at the interval
    /// endpoints, which is exact for the monotone power map.
    pub fn powf(&self, e: f64) -> Self {
        assert!(
            self.value > self.err,
            "powf needs a strictly positive interval, got {} +- {}",
            self.value,
            self.err
        );
        let v = self.value.powf(e);
        let lo = (self.value - self.err).powf(e);
        let hi = (self.value + self.err).powf(e);
        let err = (v - lo).abs().max((hi - v).abs()) + v.abs() * ULP;
        Self::new(v, err)
    }

    pub fn recip(&self) -> Self {
        self.powf(-1.0)
    }

    /// `exp` of a sum known to absolute error `sum_err`.
    pub fn exp_of(sum: f64, sum_err: f64) -> Self {
        let v = sum.exp();
        let err = v * sum_err.exp_m1() + v * ULP;
        Self::new(v, err)
    }
}

/// A complex value with a bound on the modulus of its error.
#[derive(Debug, Clone, Copy)]
pub struct ComplexPrecision {
    pub value: Complex64,
    pub err: f64,
}

impl ComplexPrecision {
    pub fn new(value: Complex64, err: f64) -> Self {
        debug_assert!(err.is_finite() && err >= 0.0);
        Self { value, err }
    }

    pub fn one() -> Self {
        Self::new(Complex64::new(1.0, 0.0), 0.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let v = self.value * other.value;
        let err = self.value.norm() * other.err
            + other.value.norm() * self.err
            + self.err * other.err
            + v.norm() * ULP;
        Self::new(v, err)
    }

    /// Collapses to a real value, folding any imaginary residue into the
    /// error bound.
    pub fn into_real(self) -> PrecisionValue {
        PrecisionValue::new(self.value.re, self.err + self.value.im.abs())
    }
}
