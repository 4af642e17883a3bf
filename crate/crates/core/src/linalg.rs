//! Fraction-free elimination over exact integers.
//!
//! All routines divide only where the quotient is known to be exact
//! (Sylvester's identity), so intermediate values stay integral and no
//! rational normalisation happens until the very end.

use num_rational::Ratio;

use crate::scalar::ExactInt;

/// Dense square matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> SquareMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend(row);
        }
        SquareMatrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal(&self, idx: &[usize]) -> Self {
        SquareMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_determinant<T: ExactInt>(m: &SquareMatrix<T>) -> T {
    let n = m.n;
    if n == 0 {
        return T::one();
    }
    let mut a = m.rows();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&p| !a[p][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
                a[i][j] = v;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Leading principal minors `M[..1,..1], M[..2,..2], ...`, computed by
/// Bareiss elimination without pivoting (the k-th pivot is the k-th minor).
///
/// Stops after the first zero minor, so the result is shorter than `n`
/// exactly when some leading minor vanishes.
pub fn leading_principal_minors<T: ExactInt>(m: &SquareMatrix<T>) -> Vec<T> {
    let n = m.n;
    let mut a = m.rows();
    let mut minors = Vec::with_capacity(n);
    let mut prev = T::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (pivot.clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone())
                    / prev.clone();
                a[i][j] = v;
            }
            a[i][k] = T::zero();
        }
        prev = pivot;
    }
    minors
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite<T: ExactInt>(m: &SquareMatrix<T>) -> bool {
    let minors = leading_principal_minors(m);
    minors.len() == m.n && minors.iter().all(|d| d.is_positive())
}

/// Result of fraction-free Gauss-Jordan elimination on `[A | B]`.
#[derive(Clone, Debug)]
pub struct Elimination<T> {
    /// `det(A)`.
    pub det: T,
    /// `det(A) * A^{-1} * B`, one row per unknown.
    pub scaled: Vec<Vec<T>>,
}

/// Fraction-free Gauss-Jordan on `[A | B]`. Returns `None` if `A` is singular.
pub fn gauss_jordan<T: ExactInt>(a: &SquareMatrix<T>, rhs: &[Vec<T>]) -> Option<Elimination<T>> {
    let n = a.n;
    let k_cols = rhs.first().map_or(0, Vec::len);
    assert_eq!(rhs.len(), n, "right-hand side must have one row per equation");
    let width = n + k_cols;
    let mut m: Vec<Vec<T>> = a
        .rows()
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            assert_eq!(b.len(), k_cols);
            row.extend(b.iter().cloned());
            row
        })
        .collect();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        if m[k][k].is_zero() {
            let p = (k + 1..n).find(|&p| !m[p][k].is_zero())?;
            m.swap(k, p);
            negate = !negate;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = (m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone())
                    / prev.clone();
                m[i][j] = v;
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return Some(Elimination {
            det: T::one(),
            scaled: Vec::new(),
        });
    }
    // Every diagonal entry now equals the last pivot, i.e. +-det(A).
    let sign = if negate { -T::one() } else { T::one() };
    let scaled = m
        .into_iter()
        .map(|row| row[n..].iter().map(|v| v.clone() * sign.clone()).collect())
        .collect();
    Some(Elimination {
        det: prev * sign,
        scaled,
    })
}

/// Solves `A x = b` exactly.
pub fn solve<T: ExactInt>(a: &SquareMatrix<T>, b: &[T]) -> Option<Vec<Ratio<T>>> {
    let rhs: Vec<Vec<T>> = b.iter().map(|v| vec![v.clone()]).collect();
    let e = gauss_jordan(a, &rhs)?;
    Some(
        e.scaled
            .into_iter()
            .map(|row| Ratio::new(row[0].clone(), e.det.clone()))
            .collect(),
    )
}

/// Adjugate matrix `det(A) * A^{-1}` together with `det(A)`.
pub fn adjugate<T: ExactInt>(a: &SquareMatrix<T>) -> Option<(T, SquareMatrix<T>)> {
    let n = a.n;
    let identity: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let e = gauss_jordan(a, &identity)?;
    Some((e.det, SquareMatrix::from_rows(e.scaled)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> SquareMatrix<i64> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_determinant(&m(&[])), 1);
        assert_eq!(bareiss_determinant(&m(&[&[2]])), 2);
        assert_eq!(bareiss_determinant(&m(&[&[2, -1], &[-1, 3]])), 5);
        // needs a pivot swap
        assert_eq!(bareiss_determinant(&m(&[&[0, 1], &[1, 0]])), -1);
        assert_eq!(bareiss_determinant(&m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]])), -2);
        assert_eq!(bareiss_determinant(&m(&[&[1, 2], &[2, 4]])), 0);
    }

    #[test]
    fn minors_stop_at_zero() {
        let a = m(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 5]]);
        assert_eq!(leading_principal_minors(&a), vec![1, 0]);
        assert!(!is_positive_definite(&a));
        let b = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(leading_principal_minors(&b), vec![2, 3]);
        assert!(is_positive_definite(&b));
    }

    #[test]
    fn solve_with_pivoting() {
        let a = m(&[&[0, 2], &[3, 1]]);
        let x = solve(&a, &[4, 5]).unwrap();
        assert_eq!(x, vec![Ratio::new(1, 1), Ratio::new(2, 1)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[1, 1]).is_none());
    }

    #[test]
    fn adjugate_of_cartan_a2() {
        let a = SquareMatrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(2)],
        ]);
        let (det, adj) = adjugate(&a).unwrap();
        assert_eq!(det, BigInt::from(3));
        assert_eq!(
            adj.rows(),
            vec![
                vec![BigInt::from(2), BigInt::from(1)],
                vec![BigInt::from(1), BigInt::from(2)]
            ]
        );
    }

    fn cofactor(rows: &[Vec<i64>]) -> i128 {
        if rows.is_empty() {
            return 1;
        }
        (0..rows.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| [&r[..j], &r[j + 1..]].concat())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * i128::from(rows[0][j]) * cofactor(&minor)
            })
            .sum()
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            rows in (0usize..=6).prop_flat_map(|n| {
                proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), n)
            })
        ) {
            let want = cofactor(&rows);
            let big = SquareMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            );
            prop_assert_eq!(bareiss_determinant(&big), BigInt::from(want));
        }
    }
}
