//! Exact rational linear systems { c : M c <= d, E c = f }.

use num_rational::BigRational;
use num_traits::Zero;

/// A labeled system of exact linear constraints over `vars` real variables.
#[derive(Debug, Clone, Default)]
pub struct InequalitySystem {
    vars: usize,
    equalities: Vec<(Vec<BigRational>, BigRational)>,
    eq_labels: Vec<String>,
    inequalities: Vec<(Vec<BigRational>, BigRational)>,
    ineq_labels: Vec<String>,
}

impl InequalitySystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            ..Default::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn push_equality(
        &mut self,
        row: Vec<BigRational>,
        rhs: BigRational,
        label: impl Into<String>,
    ) {
        assert_eq!(row.len(), self.vars);
        self.equalities.push((row, rhs));
        self.eq_labels.push(label.into());
    }

    /// Adds `row . c <= rhs`.
    pub fn push_inequality(
        &mut self,
        row: Vec<BigRational>,
        rhs: BigRational,
        label: impl Into<String>,
    ) {
        assert_eq!(row.len(), self.vars);
        self.inequalities.push((row, rhs));
        self.ineq_labels.push(label.into());
    }

    /// Append all constraints of `other` (same variable vector).
    pub fn extend(&mut self, other: &InequalitySystem) {
        assert_eq!(self.vars, other.vars);
        self.equalities.extend(other.equalities.iter().cloned());
        self.eq_labels.extend(other.eq_labels.iter().cloned());
        self.inequalities.extend(other.inequalities.iter().cloned());
        self.ineq_labels.extend(other.ineq_labels.iter().cloned());
    }

    pub fn equalities(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.inequalities
    }

    pub fn inequality_count(&self) -> usize {
        self.inequalities.len()
    }

    pub fn ineq_label(&self, i: usize) -> &str {
        &self.ineq_labels[i]
    }

    /// Exact check; returns every violated constraint label.
    pub fn violations(&self, point: &[BigRational]) -> Vec<String> {
        assert_eq!(point.len(), self.vars);
        let mut out = Vec::new();
        for ((row, rhs), label) in self.equalities.iter().zip(&self.eq_labels) {
            if &dot(row, point) != rhs {
                out.push(label.clone());
            }
        }
        for ((row, rhs), label) in self.inequalities.iter().zip(&self.ineq_labels) {
            if &dot(row, point) > rhs {
                out.push(label.clone());
            }
        }
        out
    }

    pub fn satisfied_by(&self, point: &[BigRational]) -> bool {
        self.violations(point).is_empty()
    }

    /// Labels of inequalities tight at `point` (equalities are always tight
    /// at a feasible point and are not listed).
    pub fn binding_at(&self, point: &[BigRational]) -> Vec<String> {
        self.inequalities
            .iter()
            .zip(&self.ineq_labels)
            .filter(|((row, rhs), _)| dot(row, point) == *rhs)
            .map(|(_, label)| label.clone())
            .collect()
    }
}

pub(crate) fn dot(row: &[BigRational], point: &[BigRational]) -> BigRational {
    row.iter()
        .zip(point)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
}
