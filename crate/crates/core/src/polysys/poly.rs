//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;

use num::{BigRational, One, Signed, Zero};

/// One term: a nonzero rational coefficient and one exponent per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coefficient: BigRational,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// A normalized sparse polynomial: terms keyed by exponent vector, zero
/// coefficients dropped. The key order (lexicographic on the exponent
/// vector) makes iteration and printing deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, value: BigRational) -> Self {
        let mut p = Polynomial::zero(n_vars);
        p.add_term(vec![0; n_vars], value);
        p
    }

    /// The single variable `x_index`.
    pub fn variable(n_vars: usize, index: usize) -> Self {
        assert!(index < n_vars, "variable index out of range");
        let mut exps = vec![0; n_vars];
        exps[index] = 1;
        let mut p = Polynomial::zero(n_vars);
        p.add_term(exps, BigRational::one());
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Adds `coeff * x^exps`, keeping the term map normalized.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigRational) {
        assert_eq!(exps.len(), self.n_vars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = Polynomial::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut out = Polynomial::constant(self.n_vars, BigRational::one());
        while exp > 0 {
            if exp & 1 == 1 {
                out = out.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Composition: replaces variable `i` with `images[i]` for every `i`.
    /// All images must share a common (possibly different) variable space.
    pub fn substitute_all(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.n_vars, "need one image per variable");
        let target_vars = images
            .first()
            .map(|p| p.n_vars)
            .expect("at least one variable");
        assert!(images.iter().all(|p| p.n_vars == target_vars));
        let mut out = Polynomial::zero(target_vars);
        for (exps, coeff) in &self.terms {
            let mut term = Polynomial::constant(target_vars, coeff.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.n_vars);
        let mut sum = 0.0;
        for (exps, coeff) in &self.terms {
            let mut term = rational_to_f64(coeff);
            for (i, &e) in exps.iter().enumerate() {
                term *= point[i].powi(e as i32);
            }
            sum += term;
        }
        sum
    }

    pub fn eval_exact(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n_vars);
        let mut sum = BigRational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            sum += term;
        }
        sum
    }

    /// Exponent vectors with nonzero coefficient, in deterministic order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    pub fn monomials(&self) -> Vec<Monomial> {
        self.terms
            .iter()
            .map(|(e, c)| Monomial {
                coefficient: c.clone(),
                exponents: e.clone(),
            })
            .collect()
    }

    /// Coefficient of the given exponent vector; zero when absent.
    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Renders with the given variable names, highest-degree terms last
    /// (map order), e.g. `x - 2*x*w1^3 + w1^3`.
    pub fn format_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n_vars);
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (exps, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || exps.iter().all(|&e| e == 0) {
                factors.push(abs.to_string());
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    factors.push(names[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", names[i], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

pub(crate) fn rational_to_f64(value: &BigRational) -> f64 {
    use num::ToPrimitive;
    value
        .to_f64()
        .unwrap_or_else(|| value.numer().to_f64().unwrap_or(f64::NAN))
}
