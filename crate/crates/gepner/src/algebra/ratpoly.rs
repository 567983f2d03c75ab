//! Polynomials in n with exact rational coefficients, and exact Newton
//! interpolation.
//!
//! The Newton form is incremental: adding a data point costs one evaluation
//! and one division, which is what makes guard-point checking cheap.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::numbers::Rat;
use crate::error::{Error, Result};

/// Dense power-basis polynomial; `coeffs[e]` is the coefficient of n^e.
/// Canonical: no trailing zero coefficients (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn coeff(&self, e: usize) -> Rat {
        self.coeffs.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> Rat {
        self.eval(&Rat::from_integer(BigInt::from(n)))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let coef = if a.denom().is_one() {
                format!("{}", a.numer())
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match e {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*n")?,
                _ => write!(f, "{coef}*n^{e}")?,
            }
        }
        Ok(())
    }
}

/// Incremental Newton-form interpolator over exact rationals.
#[derive(Debug, Clone, Default)]
pub struct NewtonInterpolator {
    nodes: Vec<Rat>,
    newton_coeffs: Vec<Rat>,
}

impl NewtonInterpolator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Evaluate the current interpolant.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (c, node) in self.newton_coeffs.iter().zip(&self.nodes).rev() {
            acc = acc * (x - node) + c;
        }
        acc
    }

    /// Whether (x, y) already lies on the current interpolant.
    pub fn is_consistent(&self, x: &Rat, y: &Rat) -> bool {
        &self.eval(x) == y
    }

    pub fn add_point(&mut self, x: Rat, y: Rat) -> Result<()> {
        let mut denom = Rat::one();
        for node in &self.nodes {
            let d = &x - node;
            if d.is_zero() {
                return Err(Error::DuplicateAbscissa(
                    x.numer().try_into().unwrap_or(i64::MAX),
                ));
            }
            denom *= d;
        }
        let c = (y - self.eval(&x)) / denom;
        self.nodes.push(x);
        self.newton_coeffs.push(c);
        Ok(())
    }

    /// Expand the Newton form into the power basis.
    pub fn to_ratpoly(&self) -> RatPoly {
        let mut poly = vec![Rat::zero(); self.nodes.len()];
        let mut basis = vec![Rat::zero(); self.nodes.len() + 1];
        if self.nodes.is_empty() {
            return RatPoly::zero();
        }
        basis[0] = Rat::one();
        let mut basis_len = 1;
        for (c, node) in self.newton_coeffs.iter().zip(&self.nodes) {
            for (p, b) in poly.iter_mut().zip(basis.iter().take(basis_len)) {
                *p += c * b;
            }
            // basis *= (n - node)
            for i in (0..basis_len).rev() {
                let b = basis[i].clone();
                basis[i + 1] += &b;
                basis[i] = -node * b;
            }
            basis_len += 1;
        }
        RatPoly::from_coeffs(poly)
    }
}

/// The unique polynomial of degree < #points through all points.
pub fn interpolate(points: &[(i64, Rat)]) -> Result<RatPoly> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    let mut interp = NewtonInterpolator::new();
    for (n, v) in points {
        interp
            .add_point(Rat::from_integer(BigInt::from(*n)), v.clone())
            .map_err(|e| match e {
                Error::DuplicateAbscissa(_) => Error::DuplicateAbscissa(*n),
                other => other,
            })?;
    }
    Ok(interp.to_ratpoly())
}
