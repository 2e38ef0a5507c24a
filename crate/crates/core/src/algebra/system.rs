use serde::{Deserialize, Serialize};

use super::field::Field;
use super::form::Form;
use super::parse::FormJson;
use crate::error::{Error, Result};

/// A collection of forms in a common polynomial ring, grouped by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct FormSystem<F: Field> {
    field: F,
    num_vars: usize,
    forms: Vec<Form<F>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemJson {
    pub forms: Vec<FormJson>,
}

impl<F: Field> FormSystem<F> {
    pub fn new(field: F, num_vars: usize, forms: Vec<Form<F>>) -> Result<Self> {
        for f in &forms {
            if f.num_vars() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    found: f.num_vars(),
                });
            }
            if f.degree() == 0 {
                return Err(Error::WrongDegree {
                    expected: 1,
                    found: 0,
                });
            }
            if f.field() != &field {
                return Err(Error::FieldMismatch(format!(
                    "{} vs {}",
                    f.field().descriptor(),
                    field.descriptor()
                )));
            }
        }
        Ok(FormSystem {
            field,
            num_vars,
            forms,
        })
    }

    /// A one-form system.
    pub fn single(f: Form<F>) -> Self {
        let field = f.field().clone();
        let n = f.num_vars();
        FormSystem {
            field,
            num_vars: n,
            forms: vec![f],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn forms(&self) -> &[Form<F>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.forms.iter().map(Form::degree).max().unwrap_or(0)
    }

    /// `s_i` for `i = 1..=d`, stored at index `i - 1`.
    pub fn s_counts(&self) -> Vec<usize> {
        let d = self.max_degree() as usize;
        let mut s = vec![0; d];
        for f in &self.forms {
            s[f.degree() as usize - 1] += 1;
        }
        s
    }

    /// Number of distinct degrees present.
    pub fn d_prime(&self) -> usize {
        self.s_counts().iter().filter(|&&c| c > 0).count()
    }

    pub fn s_total(&self) -> usize {
        self.forms.len()
    }

    /// Forms of degree exactly `i`.
    pub fn degree_class(&self, i: u32) -> Vec<&Form<F>> {
        self.forms.iter().filter(|f| f.degree() == i).collect()
    }

    /// Index of the distinguished top form: the last one of maximal degree.
    pub fn top_index(&self) -> Option<usize> {
        let d = self.max_degree();
        self.forms.iter().rposition(|f| f.degree() == d)
    }

    /// The top form and the remaining forms, in their original order.
    pub fn split_top(&self) -> Option<(&Form<F>, Vec<&Form<F>>)> {
        let t = self.top_index()?;
        let rest = self
            .forms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != t)
            .map(|(_, f)| f)
            .collect();
        Some((&self.forms[t], rest))
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            forms: self.forms.iter().map(Form::to_json).collect(),
        }
    }

    pub fn from_json(j: &SystemJson, field: F) -> Result<Self> {
        let forms = j
            .forms
            .iter()
            .map(|f| Form::from_json(f, field.clone()))
            .collect::<Result<Vec<_>>>()?;
        let n = forms
            .first()
            .map(Form::num_vars)
            .ok_or_else(|| Error::parse("a system needs at least one form"))?;
        FormSystem::new(field, n, forms)
    }

    pub fn from_json_str(s: &str, field: F) -> Result<Self> {
        let j: SystemJson = serde_json::from_str(s).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_json(&j, field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;

    #[test]
    fn profile_counts() {
        let k = Rationals;
        let forms = ["x1 + x2", "x1^2 - x3^2", "x2^2", "x1^3 + x2^3 + x3^3"]
            .iter()
            .map(|s| Form::parse_with_vars(s, k, 3).unwrap())
            .collect();
        let sys = FormSystem::new(k, 3, forms).unwrap();
        assert_eq!(sys.s_counts(), vec![1, 2, 1]);
        assert_eq!(sys.d_prime(), 3);
        assert_eq!(sys.s_total(), 4);
        assert_eq!(sys.top_index(), Some(3));
        let j = serde_json::to_string(&sys.to_json()).unwrap();
        assert_eq!(FormSystem::from_json_str(&j, k).unwrap(), sys);
    }
}
