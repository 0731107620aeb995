//! A minimal dense M-dimensional array keyed by grid multi-indices.

use crate::error::{Error, Result};

/// Row-major M-dimensional array of `f64`, indexed by one index per grid axis.
#[derive(Debug, Clone, PartialEq)]
pub struct GridArray {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl GridArray {
    /// All-zero array of the given shape. Every axis must be non-empty.
    pub fn zeros(shape: &[usize]) -> Self {
        assert!(!shape.is_empty() && shape.iter().all(|&s| s > 0));
        let len = shape.iter().product();
        GridArray {
            shape: shape.to_vec(),
            data: vec![0.0; len],
        }
    }

    /// Build an array by evaluating `f` at every multi-index, in row-major order.
    pub fn from_fn<F: FnMut(&[usize]) -> f64>(shape: &[usize], mut f: F) -> Self {
        let mut out = GridArray::zeros(shape);
        let mut idx = vec![0usize; shape.len()];
        for flat in 0..out.data.len() {
            out.decode(flat, &mut idx);
            out.data[flat] = f(&idx);
        }
        out
    }

    /// Wrap an existing row-major buffer.
    pub fn from_vec(shape: &[usize], data: Vec<f64>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if shape.is_empty() || shape.contains(&0) || data.len() != len {
            return Err(Error::ShapeMismatch {
                expected: shape.to_vec(),
                found: vec![data.len()],
            });
        }
        Ok(GridArray {
            shape: shape.to_vec(),
            data,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Flat row-major offset of a multi-index.
    #[inline]
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.shape.len());
        let mut flat = 0usize;
        for (i, (&k, &s)) in idx.iter().zip(&self.shape).enumerate() {
            debug_assert!(k < s, "index {k} out of bounds for axis {i}");
            let _ = i;
            flat = flat * s + k;
        }
        flat
    }

    /// Decode a flat offset into `idx` (must have ndim slots).
    #[inline]
    pub fn decode(&self, mut flat: usize, idx: &mut [usize]) {
        for m in (0..self.shape.len()).rev() {
            idx[m] = flat % self.shape[m];
            flat /= self.shape[m];
        }
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.flat_index(idx)]
    }

    #[inline]
    pub fn get_flat(&self, flat: usize) -> f64 {
        self.data[flat]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], value: f64) {
        let flat = self.flat_index(idx);
        self.data[flat] = value;
    }

    #[inline]
    pub fn set_flat(&mut self, flat: usize, value: f64) {
        self.data[flat] = value;
    }

    /// Iterate multi-indices in row-major order.
    pub fn indices(&self) -> MultiIndexIter {
        MultiIndexIter::new(&self.shape)
    }
}

/// Odometer over the multi-indices of a shape, row-major order.
pub struct MultiIndexIter {
    shape: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl MultiIndexIter {
    pub fn new(shape: &[usize]) -> Self {
        let next = if shape.iter().all(|&s| s > 0) && !shape.is_empty() {
            Some(vec![0; shape.len()])
        } else {
            None
        };
        MultiIndexIter {
            shape: shape.to_vec(),
            next,
        }
    }
}

impl Iterator for MultiIndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        // Advance the odometer from the last axis.
        let mut idx = current.clone();
        let mut m = self.shape.len();
        loop {
            if m == 0 {
                self.next = None;
                break;
            }
            m -= 1;
            idx[m] += 1;
            if idx[m] < self.shape[m] {
                self.next = Some(idx);
                break;
            }
            idx[m] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_multi_index_round_trip() {
        let a = GridArray::zeros(&[3, 4, 2]);
        let mut idx = vec![0usize; 3];
        for flat in 0..a.len() {
            a.decode(flat, &mut idx);
            assert_eq!(a.flat_index(&idx), flat);
        }
    }

    #[test]
    fn from_fn_visits_every_index_once() {
        let a = GridArray::from_fn(&[2, 3], |idx| (idx[0] * 10 + idx[1]) as f64);
        assert_eq!(a.get(&[0, 0]), 0.0);
        assert_eq!(a.get(&[0, 2]), 2.0);
        assert_eq!(a.get(&[1, 1]), 11.0);
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn indices_iterate_row_major() {
        let a = GridArray::zeros(&[2, 2]);
        let order: Vec<Vec<usize>> = a.indices().collect();
        assert_eq!(order, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn from_vec_rejects_bad_shape() {
        assert!(GridArray::from_vec(&[2, 2], vec![0.0; 3]).is_err());
        assert!(GridArray::from_vec(&[], vec![]).is_err());
    }
}
