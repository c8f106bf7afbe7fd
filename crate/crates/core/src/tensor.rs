//! Dense frame-component tensors with exact polynomial entries.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{ParamSet, PolyScalar, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("slot {slot} is out of range for a rank-{rank} tensor")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("slot kind mismatch: {0}")]
    SlotKind(String),
    #[error("cyclic sum needs rank >= 3, got {0}")]
    RankTooLow(usize),
}

/// Row-major iterator over all multi-indices of a given rank and dimension.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(dim: usize, rank: usize) -> Self {
        let current = if dim == 0 && rank > 0 { None } else { Some(vec![0; rank]) };
        MultiIndex { dim, current }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.dim {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

/// A tensor over a fixed frame of dimension `dim`, one frame index per slot.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    params: ParamSet,
    dim: usize,
    slots: Vec<Slot>,
    data: Vec<PolyScalar>,
}

impl Tensor {
    pub fn zeros(params: &ParamSet, dim: usize, slots: &[Slot]) -> Self {
        let len = dim.pow(slots.len() as u32);
        Tensor {
            params: params.clone(),
            dim,
            slots: slots.to_vec(),
            data: vec![PolyScalar::zero(params); len],
        }
    }

    pub fn from_fn(
        params: &ParamSet,
        dim: usize,
        slots: &[Slot],
        mut f: impl FnMut(&[usize]) -> PolyScalar,
    ) -> Self {
        let data = MultiIndex::new(dim, slots.len()).map(|idx| f(&idx)).collect();
        Tensor { params: params.clone(), dim, slots: slots.to_vec(), data }
    }

    pub fn from_rationals(
        params: &ParamSet,
        dim: usize,
        slots: &[Slot],
        f: impl Fn(&[usize]) -> Rational,
    ) -> Self {
        Self::from_fn(params, dim, slots, |idx| PolyScalar::constant(params, f(idx)))
    }

    /// Rank-0 tensor.
    pub fn scalar(value: PolyScalar, dim: usize) -> Self {
        Tensor { params: value.params().clone(), dim, slots: Vec::new(), data: vec![value] }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.rank(), "index length does not match tensor rank");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "frame index {i} out of range");
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &PolyScalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: PolyScalar) {
        let off = self.offset(idx);
        self.data[off] = value;
    }

    /// Value of a rank-0 tensor.
    pub fn value(&self) -> &PolyScalar {
        assert!(self.slots.is_empty(), "value() called on rank-{} tensor", self.rank());
        &self.data[0]
    }

    pub fn indices(&self) -> MultiIndex {
        MultiIndex::new(self.dim, self.rank())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(PolyScalar::is_zero)
    }

    pub fn nonzero_components(&self) -> Vec<(Vec<usize>, &PolyScalar)> {
        self.indices().zip(&self.data).filter(|(_, v)| !v.is_zero()).collect()
    }

    pub fn map(&self, f: impl Fn(&PolyScalar) -> PolyScalar) -> Self {
        let data: Vec<PolyScalar> = self.data.iter().map(f).collect();
        let params = data.first().map(|p| p.params().clone()).unwrap_or_else(|| self.params.clone());
        Tensor { params, dim: self.dim, slots: self.slots.clone(), data }
    }

    /// Fallible version of [`Tensor::map`] used when rewriting parameters.
    pub fn try_map<E>(
        &self,
        params: &ParamSet,
        f: impl Fn(&PolyScalar) -> Result<PolyScalar, E>,
    ) -> Result<Self, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Tensor { params: params.clone(), dim: self.dim, slots: self.slots.clone(), data })
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|v| v.scale(factor))
    }

    fn same_shape(&self, other: &Tensor) -> Result<(), TensorError> {
        if self.dim != other.dim || self.slots != other.slots {
            return Err(TensorError::Shape(format!(
                "dim {} {:?} vs dim {} {:?}",
                self.dim, self.slots, other.dim, other.slots
            )));
        }
        Ok(())
    }

    fn check_slot(&self, slot: usize) -> Result<(), TensorError> {
        if slot >= self.rank() {
            return Err(TensorError::SlotOutOfRange { slot, rank: self.rank() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Tensor { data, ..self.clone() })
    }

    pub fn try_sub(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Tensor { data, ..self.clone() })
    }

    /// Exact component-wise equality.
    pub fn tensor_equal(&self, other: &Tensor) -> Result<bool, TensorError> {
        self.same_shape(other)?;
        Ok(self.data == other.data)
    }

    /// First multi-index (row-major) where the two tensors differ, with `self - other` there.
    pub fn first_difference(&self, other: &Tensor) -> Result<Option<(Vec<usize>, PolyScalar)>, TensorError> {
        self.same_shape(other)?;
        Ok(self
            .indices()
            .zip(self.data.iter().zip(&other.data))
            .find(|(_, (a, b))| a != b)
            .map(|(idx, (a, b))| (idx, a - b)))
    }

    /// Contracts two slots. Two covariant slots are traced with `metric_inverse`
    /// (a contravariant rank-2 tensor); a covariant/contravariant pair is traced
    /// naturally and `metric_inverse` is ignored.
    pub fn contract(&self, slot_a: usize, slot_b: usize, metric_inverse: &Tensor) -> Result<Tensor, TensorError> {
        self.check_slot(slot_a)?;
        self.check_slot(slot_b)?;
        if slot_a == slot_b {
            return Err(TensorError::SlotKind("cannot contract a slot with itself".into()));
        }
        let (ka, kb) = (self.slots[slot_a], self.slots[slot_b]);
        let natural = match (ka, kb) {
            (Slot::Covariant, Slot::Covariant) => {
                if metric_inverse.slots != [Slot::Contravariant, Slot::Contravariant]
                    || metric_inverse.dim != self.dim
                {
                    return Err(TensorError::SlotKind(
                        "covariant trace needs a contravariant rank-2 metric inverse".into(),
                    ));
                }
                false
            }
            (Slot::Contravariant, Slot::Contravariant) => {
                return Err(TensorError::SlotKind(format!(
                    "slots {slot_a} and {slot_b} are both contravariant"
                )))
            }
            _ => true,
        };
        let kept: Vec<usize> = (0..self.rank()).filter(|&s| s != slot_a && s != slot_b).collect();
        let slots: Vec<Slot> = kept.iter().map(|&s| self.slots[s]).collect();
        let mut full = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.params, self.dim, &slots, |idx| {
            for (k, &s) in kept.iter().enumerate() {
                full[s] = idx[k];
            }
            let mut acc = PolyScalar::zero(&self.params);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    if natural && i != j {
                        continue;
                    }
                    full[slot_a] = i;
                    full[slot_b] = j;
                    let v = self.get(&full);
                    if v.is_zero() {
                        continue;
                    }
                    if natural {
                        acc += v;
                    } else {
                        let w = metric_inverse.get(&[i, j]);
                        if !w.is_zero() {
                            acc += &(w * v);
                        }
                    }
                }
            }
            acc
        }))
    }

    /// Feeds `endo` (a (1,1)-tensor with components `endo[a][b]`, image of `e_b`
    /// along `e_a`) into a covariant slot: `result(.., i, ..) = Σ_m endo[m][i] t(.., m, ..)`.
    pub fn apply_endomorphism_slot(&self, slot: usize, endo: &Tensor) -> Result<Tensor, TensorError> {
        self.check_slot(slot)?;
        if self.slots[slot] != Slot::Covariant {
            return Err(TensorError::SlotKind(format!("slot {slot} is not covariant")));
        }
        if endo.slots != [Slot::Contravariant, Slot::Covariant] || endo.dim != self.dim {
            return Err(TensorError::SlotKind("expected a (1,1)-tensor of matching dimension".into()));
        }
        let mut src = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.params, self.dim, &self.slots, |idx| {
            src.copy_from_slice(idx);
            let mut acc = PolyScalar::zero(&self.params);
            for m in 0..self.dim {
                let e = endo.get(&[m, idx[slot]]);
                if e.is_zero() {
                    continue;
                }
                src[slot] = m;
                let v = self.get(&src);
                if !v.is_zero() {
                    acc += &(e * v);
                }
            }
            acc
        }))
    }

    /// `apply_endomorphism_slot` with the structure endomorphism φ.
    pub fn apply_phi_slot(&self, slot: usize, phi: &Tensor) -> Result<Tensor, TensorError> {
        self.apply_endomorphism_slot(slot, phi)
    }

    /// Evaluates a covariant slot on a vector, removing that slot.
    pub fn insert_vector(&self, slot: usize, vector: &Tensor) -> Result<Tensor, TensorError> {
        self.check_slot(slot)?;
        if self.slots[slot] != Slot::Covariant {
            return Err(TensorError::SlotKind(format!("slot {slot} is not covariant")));
        }
        if vector.slots != [Slot::Contravariant] || vector.dim != self.dim {
            return Err(TensorError::SlotKind("expected a contravariant vector".into()));
        }
        let slots: Vec<Slot> =
            self.slots.iter().enumerate().filter(|(s, _)| *s != slot).map(|(_, k)| *k).collect();
        let mut full = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.params, self.dim, &slots, |idx| {
            let (head, tail) = idx.split_at(slot);
            full[..slot].copy_from_slice(head);
            full[slot + 1..].copy_from_slice(tail);
            let mut acc = PolyScalar::zero(&self.params);
            for m in 0..self.dim {
                let c = vector.get(&[m]);
                if c.is_zero() {
                    continue;
                }
                full[slot] = m;
                acc += &(c * self.get(&full));
            }
            acc
        }))
    }

    /// Reorders slots: slot `k` of the result is slot `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Tensor, TensorError> {
        let mut seen = vec![false; self.rank()];
        if order.len() != self.rank() || order.iter().any(|&s| s >= self.rank() || std::mem::replace(&mut seen[s], true)) {
            return Err(TensorError::Shape(format!("{order:?} is not a permutation of {} slots", self.rank())));
        }
        let slots: Vec<Slot> = order.iter().map(|&s| self.slots[s]).collect();
        let mut src = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.params, self.dim, &slots, |idx| {
            for (k, &s) in order.iter().enumerate() {
                src[s] = idx[k];
            }
            self.get(&src).clone()
        }))
    }

    /// `t(i,j,k,..) + t(j,k,i,..) + t(k,i,j,..)` over the first three slots.
    pub fn cyclic_sum(&self) -> Result<Tensor, TensorError> {
        if self.rank() < 3 {
            return Err(TensorError::RankTooLow(self.rank()));
        }
        let mut a = self.clone();
        let mut b = vec![0; self.rank()];
        let mut c = vec![0; self.rank()];
        for (off, idx) in self.indices().enumerate() {
            b.copy_from_slice(&idx);
            c.copy_from_slice(&idx);
            (b[0], b[1], b[2]) = (idx[1], idx[2], idx[0]);
            (c[0], c[1], c[2]) = (idx[2], idx[0], idx[1]);
            a.data[off] = &(&self.data[off] + self.get(&b)) + self.get(&c);
        }
        Ok(a)
    }

    /// Lowers a contravariant slot with the metric `g` (covariant rank 2).
    pub fn lower(&self, slot: usize, g: &Tensor) -> Result<Tensor, TensorError> {
        self.move_index(slot, g, Slot::Contravariant, Slot::Covariant)
    }

    /// Raises a covariant slot with the inverse metric (contravariant rank 2).
    pub fn raise(&self, slot: usize, metric_inverse: &Tensor) -> Result<Tensor, TensorError> {
        self.move_index(slot, metric_inverse, Slot::Covariant, Slot::Contravariant)
    }

    fn move_index(&self, slot: usize, m: &Tensor, from: Slot, to: Slot) -> Result<Tensor, TensorError> {
        self.check_slot(slot)?;
        if self.slots[slot] != from {
            return Err(TensorError::SlotKind(format!("slot {slot} is not {from:?}")));
        }
        if m.slots != [to, to] || m.dim != self.dim {
            return Err(TensorError::SlotKind(format!("expected a rank-2 {to:?} metric")));
        }
        let mut slots = self.slots.clone();
        slots[slot] = to;
        let mut src = vec![0; self.rank()];
        Ok(Tensor::from_fn(&self.params, self.dim, &slots, |idx| {
            src.copy_from_slice(idx);
            let mut acc = PolyScalar::zero(&self.params);
            for k in 0..self.dim {
                let w = m.get(&[idx[slot], k]);
                if w.is_zero() {
                    continue;
                }
                src[slot] = k;
                acc += &(w * self.get(&src));
            }
            acc
        }))
    }
}

impl Index<&[usize]> for Tensor {
    type Output = PolyScalar;
    fn index(&self, idx: &[usize]) -> &PolyScalar {
        self.get(idx)
    }
}

impl IndexMut<&[usize]> for Tensor {
    fn index_mut(&mut self, idx: &[usize]) -> &mut PolyScalar {
        let off = self.offset(idx);
        &mut self.data[off]
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.try_add(rhs).expect("tensor shapes differ")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.try_sub(rhs).expect("tensor shapes differ")
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.map(|v| -v)
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor(dim={}, slots={:?}) {{", self.dim, self.slots)?;
        for (idx, v) in self.nonzero_components() {
            write!(f, " {idx:?}: {v};")?;
        }
        write!(f, " }}")
    }
}
