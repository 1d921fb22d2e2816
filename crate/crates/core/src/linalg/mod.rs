//! Dense tensors over [`Scalar`] and the contraction toolkit.
//!
//! Every identity in the library is a finite tensor equation. Legs are
//! ordered outputs first, then inputs, so the comultiplication tensor
//! `Δ[j][k][i]` reads as the map `e_i ↦ Σ Δ[j][k][i] e_j⊗e_k`.

mod einsum;
mod rank;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use einsum::einsum;
pub use rank::{rank, Elimination};

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<Scalar>,
}

impl Tensor {
    pub fn zeros(shape: &[usize]) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape: shape.to_vec(),
            data: vec![Scalar::zero(); n],
        }
    }

    pub fn scalar(s: Scalar) -> Self {
        Tensor {
            shape: Vec::new(),
            data: vec![s],
        }
    }

    pub fn from_fn(shape: &[usize], mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut t = Tensor::zeros(shape);
        let mut idx = vec![0; shape.len()];
        for k in 0..t.data.len() {
            t.unravel_into(k, &mut idx);
            t.data[k] = f(&idx);
        }
        t
    }

    pub fn from_data(shape: &[usize], data: Vec<Scalar>) -> Result<Self> {
        if data.len() != shape.iter().product::<usize>() {
            return Err(Error::shape(format!(
                "{} entries for shape {shape:?}",
                data.len()
            )));
        }
        Ok(Tensor {
            shape: shape.to_vec(),
            data,
        })
    }

    /// Sparse construction from `(index, value)` pairs; repeated indices add up.
    pub fn from_entries(
        shape: &[usize],
        entries: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut t = Tensor::zeros(shape);
        for (idx, v) in entries {
            let k = t.offset_checked(&idx)?;
            t.data[k] = t.data[k].add(&v);
        }
        Ok(t)
    }

    pub fn identity(n: usize) -> Self {
        Tensor::from_fn(&[n, n], |ix| Scalar::from_int((ix[0] == ix[1]) as i64))
    }

    /// Basis vector / covector `e_i` of length `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        Tensor::from_fn(&[n], |ix| Scalar::from_int((ix[0] == i) as i64))
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        idx.iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| {
                debug_assert!(i < n);
                acc * n + i
            })
    }

    fn offset_checked(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.shape.len() || idx.iter().zip(&self.shape).any(|(&i, &n)| i >= n) {
            return Err(Error::shape(format!(
                "index {idx:?} out of range for shape {:?}",
                self.shape
            )));
        }
        Ok(self.offset(idx))
    }

    fn unravel_into(&self, mut k: usize, idx: &mut [usize]) {
        for (slot, &n) in idx.iter_mut().zip(&self.shape).rev() {
            *slot = k % n;
            k /= n;
        }
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.data[self.offset(idx)]
    }

    pub fn try_get(&self, idx: &[usize]) -> Result<&Scalar> {
        Ok(&self.data[self.offset_checked(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let k = self.offset(idx);
        self.data[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|s| !s.is_zero()).count()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, v)| {
            let mut idx = vec![0; self.shape.len()];
            self.unravel_into(k, &mut idx);
            (idx, v)
        })
    }

    fn zip_with(&self, other: &Tensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Tensor> {
        if self.shape != other.shape {
            return Err(Error::shape(format!(
                "{:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, Scalar::add)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.zip_with(other, Scalar::sub)
    }

    pub fn scale(&self, k: &Scalar) -> Tensor {
        self.map(|v| v.mul(k))
    }

    pub fn neg(&self) -> Tensor {
        self.map(Scalar::neg)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Tensor> {
        Ok(Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn reshape(&self, shape: &[usize]) -> Result<Tensor> {
        Tensor::from_data(shape, self.data.clone())
    }

    /// Sums over the paired legs. Result legs: the free legs of `self`, then
    /// the free legs of `other`, each in their original order.
    pub fn contract(&self, legs: &[usize], other: &Tensor, other_legs: &[usize]) -> Result<Tensor> {
        if legs.len() != other_legs.len() {
            return Err(Error::shape("contraction needs equally many legs on each side"));
        }
        let a_labels: Vec<usize> = (0..self.rank()).collect();
        let mut b_labels: Vec<usize> = (self.rank()..self.rank() + other.rank()).collect();
        for (&la, &lb) in legs.iter().zip(other_legs) {
            if la >= self.rank() || lb >= other.rank() {
                return Err(Error::shape(format!("leg out of range in {legs:?}/{other_legs:?}")));
            }
            if self.shape[la] != other.shape[lb] {
                return Err(Error::shape(format!(
                    "paired legs {la} and {lb} have extents {} and {}",
                    self.shape[la], other.shape[lb]
                )));
            }
            b_labels[lb] = a_labels[la];
        }
        let out: Vec<usize> = a_labels
            .iter()
            .enumerate()
            .filter(|(i, _)| !legs.contains(i))
            .map(|(_, &l)| l)
            .chain(
                b_labels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !other_legs.contains(i))
                    .map(|(_, &l)| l),
            )
            .collect();
        einsum::einsum_labels(&[(self, &a_labels), (other, &b_labels)], &out)
    }

    /// Moves leg `k` to position `perm[k]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Tensor> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::BadPermutation(perm.to_vec()));
        }
        let mut shape = vec![0; r];
        for (k, &p) in perm.iter().enumerate() {
            shape[p] = self.shape[k];
        }
        let mut out = Tensor::zeros(&shape);
        let mut idx = vec![0; r];
        let mut new_idx = vec![0; r];
        for k in 0..self.data.len() {
            if self.data[k].is_zero() {
                continue;
            }
            self.unravel_into(k, &mut idx);
            for (leg, &p) in perm.iter().enumerate() {
                new_idx[p] = idx[leg];
            }
            let o = out.offset(&new_idx);
            out.data[o] = self.data[k].clone();
        }
        Ok(out)
    }

    /// Applies the matrix `m` (`[out][in]`) along `leg`, leaving the leg in place.
    pub fn op_on_leg(&self, m: &Tensor, leg: usize) -> Result<Tensor> {
        if m.rank() != 2 || leg >= self.rank() || m.shape[1] != self.shape[leg] {
            return Err(Error::shape(format!(
                "cannot apply {:?} matrix to leg {leg} of {:?}",
                m.shape, self.shape
            )));
        }
        let r = self.rank();
        let a_labels: Vec<usize> = (0..r).collect();
        let b_labels = vec![r, leg];
        let mut out = a_labels.clone();
        out[leg] = r;
        einsum::einsum_labels(&[(self, &a_labels), (m, &b_labels)], &out)
    }

    /// Tensor (outer) product; legs of `self` first.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let a: Vec<usize> = (0..self.rank()).collect();
        let b: Vec<usize> = (self.rank()..self.rank() + other.rank()).collect();
        let out: Vec<usize> = (0..self.rank() + other.rank()).collect();
        einsum::einsum_labels(&[(self, &a), (other, &b)], &out).expect("disjoint labels")
    }

    /// Matrix transpose of a rank-2 tensor.
    pub fn transpose(&self) -> Tensor {
        self.permute_legs(&[1, 0]).expect("rank-2 tensor")
    }
}
