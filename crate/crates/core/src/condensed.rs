//! Upper-triangle pairwise matrices stored as a flat vector.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Pairwise values over `n` items in pair order
/// `(0,1), (0,2), …, (0,n-1), (1,2), …, (n-2,n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CondensedMatrix {
    n: usize,
    values: Vec<f64>,
}

/// Number of entries in a condensed matrix over `n` items.
#[inline]
pub const fn condensed_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of pair `(i, j)`, `i < j`, in the condensed vector.
#[inline]
pub fn condensed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    n * i - i * (i + 1) / 2 + (j - i - 1)
}

impl CondensedMatrix {
    /// Wraps `values`, inferring `n` from the length.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        // smallest n with n(n-1)/2 >= len
        let mut n = (libm::sqrt(2.0 * len as f64) as usize).max(1);
        while condensed_len(n) < len {
            n += 1;
        }
        while n > 1 && condensed_len(n - 1) >= len {
            n -= 1;
        }
        if condensed_len(n) != len || len == 0 {
            return Err(Error::CondensedLength { len });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { n, values })
    }

    /// Fills the matrix by evaluating `f(i, j)` for every `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(condensed_len(n));
        for i in 0..n {
            for j in (i + 1)..n {
                values.push(f(i, j));
            }
        }
        Self { n, values }
    }

    pub(crate) fn from_raw(n: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), condensed_len(n));
        Self { n, values }
    }

    /// Number of items.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value for the unordered pair `{i, j}`; zero on the diagonal.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            core::cmp::Ordering::Less => self.values[condensed_index(self.n, i, j)],
            core::cmp::Ordering::Greater => self.values[condensed_index(self.n, j, i)],
            core::cmp::Ordering::Equal => 0.0,
        }
    }

    /// Iterates `(i, j, value)` in condensed order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .zip(self.values.iter().copied())
            .map(|((i, j), v)| (i, j, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn index_follows_row_major_pair_order() {
        let n = 5;
        let mut k = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                assert_eq!(condensed_index(n, i, j), k);
                k += 1;
            }
        }
        assert_eq!(k, condensed_len(n));
    }

    #[test]
    fn infers_size_from_length() {
        let m = CondensedMatrix::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.get(2, 0), 2.0);
        assert_eq!(m.get(1, 1), 0.0);
        assert_eq!(CondensedMatrix::new(vec![1.0]).unwrap().n(), 2);
        assert!(matches!(
            CondensedMatrix::new(vec![1.0, 2.0]),
            Err(Error::CondensedLength { len: 2 })
        ));
        assert!(CondensedMatrix::new(vec![]).is_err());
        assert_eq!(
            CondensedMatrix::new(vec![1.0, f64::NAN, 0.0]),
            Err(Error::NonFinite(1))
        );
    }
}
