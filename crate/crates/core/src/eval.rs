//! Evaluating an [`Expansion`] at a point, given the derivatives of `f`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::symbolic::Expansion;

/// Scalar types an expansion can be evaluated in.
pub trait Scalar: Clone + Zero + One {
    fn from_coefficient(c: &Coefficient) -> Result<Self>;
}

impl Scalar for f64 {
    fn from_coefficient(c: &Coefficient) -> Result<Self> {
        c.value()
            .to_f64()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::Overflow(format!("coefficient {c} exceeds f64 range")))
    }
}

impl Scalar for BigRational {
    fn from_coefficient(c: &Coefficient) -> Result<Self> {
        Ok(BigRational::from_integer(BigInt::from(c.value().clone())))
    }
}

/// `f(x)` and `f'(x), f''(x), ...` at one point.
///
/// `derivs[i - 1]` holds `f^(i)(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationPoint<T> {
    pub f0: T,
    pub derivs: Vec<T>,
}

pub type ExactPoint = EvaluationPoint<BigRational>;
pub type FloatPoint = EvaluationPoint<f64>;

impl<T> EvaluationPoint<T> {
    pub fn new(f0: T, derivs: Vec<T>) -> Self {
        Self { f0, derivs }
    }

    fn check_covers(&self, n: u32) -> Result<()> {
        if self.derivs.len() < n as usize {
            return Err(Error::MissingDerivative {
                needed: n as usize,
                supplied: self.derivs.len(),
            });
        }
        Ok(())
    }
}

/// `S = sum_k a_k prod_i d_i^(k_i)`, the bracketed sum without `e^f`.
/// Terms are accumulated in the expansion's canonical order.
pub fn evaluate_sum<T: Scalar>(e: &Expansion, p: &EvaluationPoint<T>) -> Result<T> {
    p.check_covers(e.order())?;
    let mut acc = T::zero();
    for term in e.terms() {
        let mut value = T::from_coefficient(&term.coeff)?;
        for (idx, &k) in term.monomial.as_slice().iter().enumerate() {
            if k > 0 {
                value = value * num_traits::pow(p.derivs[idx].clone(), k as usize);
            }
        }
        acc = acc + value;
    }
    Ok(acc)
}

/// `e^(f0) * S` in 64-bit floating point.
pub fn evaluate_derivative(e: &Expansion, p: &FloatPoint) -> Result<f64> {
    if !p.f0.is_finite() || p.derivs.iter().any(|d| !d.is_finite()) {
        return Err(Error::InvalidArgument(
            "evaluation point has non-finite entries".into(),
        ));
    }
    let sum = evaluate_sum(e, p)?;
    if !sum.is_finite() {
        return Err(Error::Overflow(format!(
            "derivative sum of order {} is not finite",
            e.order()
        )));
    }
    let value = p.f0.exp() * sum;
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "e^{} times {sum} is not finite",
            p.f0
        )));
    }
    Ok(value)
}

/// Exact result: the derivative equals `e^(f0) * sum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDerivative {
    pub f0: BigRational,
    pub sum: BigRational,
}

/// Exact-mode counterpart of [`evaluate_derivative`]. `e^(f0)` is not
/// rational in general, so it is returned as the pair `(f0, S)`.
pub fn evaluate_derivative_exact(e: &Expansion, p: &ExactPoint) -> Result<ExactDerivative> {
    let sum = evaluate_sum(e, p)?;
    Ok(ExactDerivative {
        f0: p.f0.clone(),
        sum,
    })
}

/// Default central-difference step for order `n`.
pub fn default_step(n: u32) -> f64 {
    match n {
        0..=2 => 1e-3,
        3 | 4 => 2e-3,
        5 => 5e-3,
        _ => 1e-2,
    }
}

/// Order-`n` central finite difference of `g` at `x`:
///
/// ```text
/// sum_{j=0..n} (-1)^j C(n, j) g(x + (n/2 - j) h) / h^n
/// ```
///
/// Truncation error is O(h^2); cancellation grows like `2^n eps / h^n`, so
/// very small steps lose accuracy quickly for the higher orders.
pub fn finite_difference_reference<G>(g: G, x: f64, n: u32, h: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if !(1..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference order {n} outside 1..=6"
        )));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    let half = f64::from(n) / 2.0;
    let mut binom = 1.0;
    let mut acc = 0.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * g(x + (half - f64::from(j)) * h);
        binom = binom * f64::from(n - j) / f64::from(j + 1);
    }
    Ok(acc / h.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::expand;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sum_examples() {
        let p = ExactPoint::new(rat(0), vec![rat(1); 3]);
        assert_eq!(evaluate_sum(&expand(3).unwrap(), &p).unwrap(), rat(5));

        let p = ExactPoint::new(rat(0), vec![rat(2), rat(0), rat(0), rat(0)]);
        assert_eq!(evaluate_sum(&expand(4).unwrap(), &p).unwrap(), rat(16));

        let p = ExactPoint::new(rat(0), vec![rat(1), rat(1), rat(2), rat(6)]);
        assert_eq!(evaluate_sum(&expand(4).unwrap(), &p).unwrap(), rat(24));
    }

    #[test]
    fn missing_derivatives() {
        let p = FloatPoint::new(0.0, vec![1.0, 1.0]);
        assert_eq!(
            evaluate_sum(&expand(3).unwrap(), &p),
            Err(Error::MissingDerivative {
                needed: 3,
                supplied: 2
            })
        );
        // extra derivatives are fine
        let p = FloatPoint::new(0.0, vec![1.0; 6]);
        assert_eq!(evaluate_sum(&expand(3).unwrap(), &p).unwrap(), 5.0);
    }

    #[test]
    fn derivative_examples() {
        let v = evaluate_derivative(&expand(1).unwrap(), &FloatPoint::new(0.0, vec![3.0])).unwrap();
        assert_eq!(v, 3.0);

        // (e^{x^2})'' at x = 1 is e (2 + 4) = 6e
        let v = evaluate_derivative(&expand(2).unwrap(), &FloatPoint::new(1.0, vec![2.0, 2.0]))
            .unwrap();
        assert!((v - 6.0 * std::f64::consts::E).abs() < 1e-12);
        assert!((v - 16.309_690_97).abs() < 1e-8);

        let v = evaluate_derivative(
            &expand(4).unwrap(),
            &FloatPoint::new(0.0, vec![1.0, 1.0, 2.0, 6.0]),
        )
        .unwrap();
        assert_eq!(v, 24.0);
    }

    #[test]
    fn exact_mode_returns_pair() {
        let f0 = BigRational::new(BigInt::from(1), BigInt::from(3));
        let p = ExactPoint::new(f0.clone(), vec![BigRational::new(1.into(), 2.into()); 2]);
        let r = evaluate_derivative_exact(&expand(2).unwrap(), &p).unwrap();
        assert_eq!(r.f0, f0);
        assert_eq!(r.sum, BigRational::new(3.into(), 4.into()));
    }

    #[test]
    fn overflow_is_an_error() {
        let e = expand(2).unwrap();
        let r = evaluate_derivative(&e, &FloatPoint::new(800.0, vec![1.0, 1.0]));
        assert!(matches!(r, Err(Error::Overflow(_))));
        let r = evaluate_derivative(&e, &FloatPoint::new(0.0, vec![1e200, 1.0]));
        assert!(matches!(r, Err(Error::Overflow(_))));
        let r = evaluate_derivative(&e, &FloatPoint::new(f64::NAN, vec![1.0, 1.0]));
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn finite_difference_examples() {
        let d = finite_difference_reference(f64::exp, 0.0, 1, 1e-5).unwrap();
        assert!((d - 1.0).abs() < 1e-8);

        // exp(x^2) at 0.5, order 2
        let x: f64 = 0.5;
        let d = finite_difference_reference(|t| (t * t).exp(), x, 2, 1e-3).unwrap();
        let exact = evaluate_derivative(
            &expand(2).unwrap(),
            &FloatPoint::new(x * x, vec![2.0 * x, 2.0]),
        )
        .unwrap();
        assert!(((d - exact) / exact).abs() < 1e-5);

        // exp(sin x) at 0.3, order 3
        let x: f64 = 0.3;
        let d = finite_difference_reference(|t| t.sin().exp(), x, 3, 1e-2).unwrap();
        let exact = evaluate_derivative(
            &expand(3).unwrap(),
            &FloatPoint::new(x.sin(), vec![x.cos(), -x.sin(), -x.cos()]),
        )
        .unwrap();
        assert!(((d - exact) / exact).abs() < 1e-3);
    }

    #[test]
    fn finite_difference_preconditions() {
        assert!(finite_difference_reference(f64::exp, 0.0, 0, 1e-3).is_err());
        assert!(finite_difference_reference(f64::exp, 0.0, 7, 1e-3).is_err());
        assert!(finite_difference_reference(f64::exp, 0.0, 2, 0.0).is_err());
        assert!(finite_difference_reference(f64::exp, 0.0, 2, -1e-3).is_err());
    }
}
