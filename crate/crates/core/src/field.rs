//! Ambient scalar fields on ℝ⁶ and their second-order jets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Jet2, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("non-finite input component x[{index}] = {value}")]
    NonFiniteInput { index: usize, value: f64 },
    #[error("non-finite polynomial coefficient {0}")]
    NonFiniteCoefficient(f64),
    #[error("coordinate index {0} out of range 0..6")]
    BadCoordinate(usize),
}

/// One term `coeff · Π x_i^{exps[i]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub exps: [u32; 6],
    pub coeff: f64,
}

/// Real polynomial in six variables, stored as a coefficient table.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn new(terms: Vec<Monomial>) -> Result<Self, FieldError> {
        if let Some(t) = terms.iter().find(|t| !t.coeff.is_finite()) {
            return Err(FieldError::NonFiniteCoefficient(t.coeff));
        }
        Ok(Polynomial { terms })
    }

    /// `Σ_{i∈idx} coeff·x_i²`.
    pub fn sum_of_squares(idx: &[usize], coeff: f64) -> Self {
        let terms = idx
            .iter()
            .map(|&i| {
                let mut exps = [0; 6];
                exps[i] = 2;
                Monomial { exps, coeff }
            })
            .collect();
        Polynomial { terms }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.exps.iter().sum()).max().unwrap_or(0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let terms = self.terms.iter().map(|t| Monomial { exps: t.exps, coeff: t.coeff * c }).collect();
        Polynomial { terms }
    }

    /// Termwise product (not collected).
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Monomial {
                    exps: std::array::from_fn(|i| a.exps[i] + b.exps[i]),
                    coeff: a.coeff * b.coeff,
                });
            }
        }
        Polynomial { terms }
    }

    fn jet<T: Scalar>(&self, vars: &[Jet2<T>; 6]) -> Result<Jet2<T>, FieldError> {
        let max_exp = self.terms.iter().flat_map(|t| t.exps).max().unwrap_or(0) as usize;
        // powers[i][e] = x_i^e
        let powers: Vec<Vec<Jet2<T>>> = vars
            .iter()
            .map(|v| {
                let mut p = vec![Jet2::constant(T::one())];
                for e in 1..=max_exp {
                    let next = &p[e - 1] * v;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = Jet2::constant(T::zero());
        for t in &self.terms {
            let c = T::from_f64(t.coeff).ok_or(FieldError::NonFiniteCoefficient(t.coeff))?;
            let mut m = Jet2::constant(c);
            for (i, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    m = &m * &powers[i][e as usize];
                }
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }
}

/// An ambient scalar field whose level sets inside S⁵ are studied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarFieldSpec {
    /// `x_i` (0-based).
    Coordinate { index: usize },
    /// `(Σ₁³ x_i² − x_{i+3}²)² + 4 (Σ₁³ x_i x_{i+3})²`.
    CartanQuartic,
    Polynomial { poly: Polynomial },
}

impl ScalarFieldSpec {
    pub fn coordinate(index: usize) -> Result<Self, FieldError> {
        if index >= 6 {
            return Err(FieldError::BadCoordinate(index));
        }
        Ok(ScalarFieldSpec::Coordinate { index })
    }

    pub fn polynomial(poly: Polynomial) -> Self {
        ScalarFieldSpec::Polynomial { poly }
    }

    /// Value, gradient and Hessian at `x` in floating point.
    pub fn eval2(&self, x: &[f64; 6]) -> Result<Jet2<f64>, FieldError> {
        if let Some((index, &value)) = x.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(FieldError::NonFiniteInput { index, value });
        }
        self.eval2_generic(x)
    }

    /// Same as [`eval2`](Self::eval2) in exact rational arithmetic.
    pub fn eval2_exact(&self, x: &[Rational; 6]) -> Result<Jet2<Rational>, FieldError> {
        self.eval2_generic(x)
    }

    pub fn eval2_generic<T: Scalar>(&self, x: &[T; 6]) -> Result<Jet2<T>, FieldError> {
        let vars: [Jet2<T>; 6] = std::array::from_fn(|i| Jet2::variable(i, x[i].clone()));
        match self {
            ScalarFieldSpec::Coordinate { index } => {
                vars.get(*index).cloned().ok_or(FieldError::BadCoordinate(*index))
            }
            ScalarFieldSpec::CartanQuartic => {
                let mut a = Jet2::constant(T::zero());
                let mut b = Jet2::constant(T::zero());
                for i in 0..3 {
                    a = &(&a + &vars[i].square()) - &vars[i + 3].square();
                    b = &b + &(&vars[i] * &vars[i + 3]);
                }
                let four = T::from_f64(4.0).expect("finite");
                Ok(&a.square() + &b.square().scale(&four))
            }
            ScalarFieldSpec::Polynomial { poly } => poly.jet(&vars),
        }
    }

    pub fn value(&self, x: &[f64; 6]) -> Result<f64, FieldError> {
        self.eval2(x).map(|j| j.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cartan_at_first_axis() {
        let j = ScalarFieldSpec::CartanQuartic.eval2(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(j.value, 1.0);
        assert_eq!(j.grad, [4.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn square_of_coordinate_has_constant_hessian() {
        let f = ScalarFieldSpec::polynomial(Polynomial::sum_of_squares(&[0], 1.0));
        for x in [[0.3, -1.0, 2.0, 0.0, 5.0, 1.0], [0.0; 6]] {
            let h = f.eval2(&x).unwrap().hess_matrix();
            for (i, row) in h.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, if i == 0 && j == 0 { 2.0 } else { 0.0 });
                }
            }
        }
    }

    #[test]
    fn non_finite_input_rejected() {
        let err = ScalarFieldSpec::CartanQuartic.eval2(&[0.0, f64::NAN, 0.0, 0.0, 0.0, 0.0]);
        assert!(matches!(err, Err(FieldError::NonFiniteInput { index: 1, .. })));
        assert!(ScalarFieldSpec::coordinate(6).is_err());
        assert!(Polynomial::new(vec![Monomial { exps: [0; 6], coeff: f64::INFINITY }]).is_err());
    }

    #[test]
    fn coordinate_field() {
        let f = ScalarFieldSpec::coordinate(5).unwrap();
        let j = f.eval2(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6]).unwrap();
        assert_eq!(j.value, 0.6);
        assert_eq!(j.grad, [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    }
}
