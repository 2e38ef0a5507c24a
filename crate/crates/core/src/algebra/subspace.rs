use super::field::Field;
use super::linalg;
use crate::error::{Error, Result};

/// A subspace of `K^n` given by an explicit basis.
///
/// The basis is checked for linear independence on construction. A form
/// restricted to the subspace is written in the coordinates of this basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    pub fn new(field: F, ambient_dim: usize, basis: Vec<Vec<F::Elem>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        if linalg::rank(&field, &basis) != basis.len() {
            return Err(Error::LinearlyDependent);
        }
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
        })
    }

    /// Span of the standard basis vectors with the given (0-based) indices.
    pub fn coordinate(field: F, ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let basis = indices
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    return Err(Error::DimensionMismatch {
                        expected: ambient_dim,
                        found: i + 1,
                    });
                }
                let mut v = vec![field.zero(); ambient_dim];
                v[i] = field.one();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(field, ambient_dim, basis)
    }

    /// `{x : ⟨a, x⟩ = 0 for every functional a}`.
    pub fn kernel_of(field: F, ambient_dim: usize, functionals: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(a) = functionals.iter().find(|a| a.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: a.len(),
            });
        }
        let basis = linalg::kernel(&field, functionals, ambient_dim);
        Ok(Subspace {
            field,
            ambient_dim,
            basis,
        })
    }

    pub fn whole(field: F, ambient_dim: usize) -> Self {
        let idx: Vec<usize> = (0..ambient_dim).collect();
        Self::coordinate(field, ambient_dim, &idx).expect("standard basis is independent")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    /// The ambient vector with coordinates `coords` in this basis.
    pub fn point(&self, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        let k = &self.field;
        let mut out = vec![k.zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if k.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o = k.add(o, &k.mul(c, x));
            }
        }
        Ok(out)
    }

    /// The subspace `inner` (given in this subspace's coordinates) as a
    /// subspace of the ambient space.
    pub fn compose(&self, inner: &Subspace<F>) -> Result<Subspace<F>> {
        if inner.ambient_dim != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: inner.ambient_dim,
            });
        }
        let basis = inner
            .basis
            .iter()
            .map(|c| self.point(c))
            .collect::<Result<Vec<_>>>()?;
        Subspace::new(self.field.clone(), self.ambient_dim, basis)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        linalg::rank(&self.field, &rows) == self.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;

    #[test]
    fn dependent_basis_rejected() {
        let k = Rationals;
        let v = vec![k.from_i64(1), k.from_i64(2)];
        let w = vec![k.from_i64(2), k.from_i64(4)];
        assert_eq!(
            Subspace::new(k, 2, vec![v, w]),
            Err(Error::LinearlyDependent)
        );
    }

    #[test]
    fn kernel_of_hyperplane_has_codimension_one() {
        let k = Rationals;
        let a = vec![k.from_i64(1), k.from_i64(-1), k.from_i64(3)];
        let u = Subspace::kernel_of(k, 3, &[a.clone()]).unwrap();
        assert_eq!(u.dim(), 2);
        for b in u.basis() {
            assert!(k.is_zero(&k.dot(&a, b)));
        }
        assert!(u.contains(&[k.from_i64(1), k.from_i64(1), k.from_i64(0)]));
    }
}
