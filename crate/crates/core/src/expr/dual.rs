//! First-order dual numbers for forward-mode differentiation.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// A value together with its first derivative with respect to `x`.
///
/// Arithmetic propagates derivatives by the product, quotient and chain
/// rules; the `value` component is computed with exactly the same
/// floating-point operations an ordinary evaluation would use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualValue {
    pub value: f64,
    pub derivative: f64,
}

impl DualValue {
    /// A constant: derivative zero.
    pub fn constant(value: f64) -> Self {
        DualValue {
            value,
            derivative: 0.0,
        }
    }

    /// The variable seeded with unit derivative.
    pub fn variable(value: f64) -> Self {
        DualValue {
            value,
            derivative: 1.0,
        }
    }

    pub fn exp(self) -> Self {
        let v = self.value.exp();
        DualValue {
            value: v,
            derivative: v * self.derivative,
        }
    }

    /// Caller guarantees `value > 0`.
    pub fn ln(self) -> Self {
        DualValue {
            value: self.value.ln(),
            derivative: self.derivative / self.value,
        }
    }

    pub fn sin(self) -> Self {
        DualValue {
            value: self.value.sin(),
            derivative: self.value.cos() * self.derivative,
        }
    }

    pub fn cos(self) -> Self {
        DualValue {
            value: self.value.cos(),
            derivative: -self.value.sin() * self.derivative,
        }
    }

    /// Caller guarantees `value >= 0`. At zero the derivative of a constant
    /// subtree stays zero instead of 0/0.
    pub fn sqrt(self) -> Self {
        let v = self.value.sqrt();
        let derivative = if self.derivative == 0.0 {
            0.0
        } else {
            self.derivative / (2.0 * v)
        };
        DualValue {
            value: v,
            derivative,
        }
    }

    /// Caller guarantees `base.value > 0` for this general-power form.
    pub fn pow(self, exponent: Self) -> Self {
        let v = self.value.powf(exponent.value);
        let derivative = v
            * (exponent.derivative * self.value.ln()
                + exponent.value * self.derivative / self.value);
        DualValue {
            value: v,
            derivative,
        }
    }
}

impl Add for DualValue {
    type Output = DualValue;
    fn add(self, rhs: Self) -> Self {
        DualValue {
            value: self.value + rhs.value,
            derivative: self.derivative + rhs.derivative,
        }
    }
}

impl Sub for DualValue {
    type Output = DualValue;
    fn sub(self, rhs: Self) -> Self {
        DualValue {
            value: self.value - rhs.value,
            derivative: self.derivative - rhs.derivative,
        }
    }
}

impl Mul for DualValue {
    type Output = DualValue;
    fn mul(self, rhs: Self) -> Self {
        DualValue {
            value: self.value * rhs.value,
            derivative: self.value * rhs.derivative + self.derivative * rhs.value,
        }
    }
}

impl Div for DualValue {
    type Output = DualValue;
    fn div(self, rhs: Self) -> Self {
        let value = self.value / rhs.value;
        DualValue {
            value,
            derivative: (self.derivative * rhs.value - self.value * rhs.derivative)
                / (rhs.value * rhs.value),
        }
    }
}

impl Neg for DualValue {
    type Output = DualValue;
    fn neg(self) -> Self {
        DualValue {
            value: -self.value,
            derivative: -self.derivative,
        }
    }
}
