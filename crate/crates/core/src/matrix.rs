//! Square level matrices. States are columns and matrices act on the left,
//! so entry `(r, c)` is the amplitude (or weight) carried from state `c` to
//! state `r`.

use crate::angle::Angle;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    /// 0-1 matrix with exactly one 1 per column: column `c` has its 1 in row `targets[c]`.
    Map(Vec<usize>),
    /// `[[cos, -sin], [sin, cos]]`, a counter-clockwise rotation of the plane.
    Rotation(Angle),
    /// Row-major `dim x dim` entries.
    Dense { dim: usize, entries: Vec<Scalar> },
}

impl Matrix {
    pub fn identity(dim: usize) -> Matrix {
        Matrix::Map((0..dim).collect())
    }

    pub fn dense(rows: Vec<Vec<Scalar>>) -> Matrix {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "dense matrix must be square");
        Matrix::Dense { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        match self {
            Matrix::Map(t) => t.len(),
            Matrix::Rotation(_) => 2,
            Matrix::Dense { dim, .. } => *dim,
        }
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        match self {
            Matrix::Map(t) => Scalar::from_integer(i64::from(t[c] == r)),
            Matrix::Rotation(a) => match (r, c) {
                (0, 0) | (1, 1) => Scalar::cos(*a),
                (0, 1) => -Scalar::sin(*a),
                _ => Scalar::sin(*a),
            },
            Matrix::Dense { dim, entries } => entries[r * dim + c].clone(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let d = self.dim();
        (0..d).map(|r| (0..d).map(|c| self.entry(r, c)).collect()).collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let d = self.dim();
        Matrix::Dense {
            dim: d,
            entries: (0..d * d).map(|i| self.entry(i / d, i % d)).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        match self {
            Matrix::Rotation(a) => {
                let (s, c) = a.to_radians().sin_cos();
                vec![vec![c, -s], vec![s, c]]
            }
            _ => self
                .rows()
                .iter()
                .map(|r| r.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }

    /// The 0-1 pattern, if every entry is exactly 0 or 1.
    pub fn zero_one(&self) -> Option<Vec<Vec<bool>>> {
        match self {
            Matrix::Map(t) => {
                let d = t.len();
                Some((0..d).map(|r| (0..d).map(|c| t[c] == r).collect()).collect())
            }
            _ => {
                let rows = self.rows();
                let mut out = Vec::with_capacity(rows.len());
                for row in rows {
                    let mut bits = Vec::with_capacity(row.len());
                    for e in row {
                        if e.is_trivially_zero() {
                            bits.push(false);
                        } else if e.as_rational().is_some_and(|r| r == num_rational::BigRational::from_integer(1.into())) {
                            bits.push(true);
                        } else {
                            return None;
                        }
                    }
                    out.push(bits);
                }
                Some(out)
            }
        }
    }

    /// Column-to-row map, if this is a 0-1 matrix with exactly one 1 per column.
    pub fn as_map(&self) -> Option<Vec<usize>> {
        match self {
            Matrix::Map(t) => Some(t.clone()),
            Matrix::Rotation(a) if *a == Angle::ZERO => Some(vec![0, 1]),
            _ => {
                let pattern = self.zero_one()?;
                let d = pattern.len();
                (0..d)
                    .map(|c| {
                        let mut ones = (0..d).filter(|&r| pattern[r][c]);
                        match (ones.next(), ones.next()) {
                            (Some(r), None) => Some(r),
                            _ => None,
                        }
                    })
                    .collect()
            }
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.as_map().is_some_and(|t| {
            let mut seen = vec![false; t.len()];
            t.iter().all(|&r| r < seen.len() && !std::mem::replace(&mut seen[r], true))
        })
    }

    /// Exact check of `M^T M = I` (all scalars are real).
    pub fn is_orthogonal(&self) -> bool {
        if let Matrix::Map(_) = self {
            return self.is_permutation();
        }
        let d = self.dim();
        let rows = self.rows();
        for i in 0..d {
            for j in i..d {
                let dot: Scalar = (0..d).map(|r| &rows[r][i] * &rows[r][j]).sum();
                let target = if i == j { Scalar::one() } else { Scalar::zero() };
                if !dot.exact_eq(&target) {
                    return false;
                }
            }
        }
        true
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        match self {
            Matrix::Map(t) => {
                let mut out = vec![Scalar::zero(); t.len()];
                for (c, x) in v.iter().enumerate() {
                    out[t[c]] = &out[t[c]] + x;
                }
                out
            }
            Matrix::Rotation(a) => {
                let (c, s) = (Scalar::cos(*a), Scalar::sin(*a));
                vec![&c * &v[0] - &s * &v[1], &s * &v[0] + &c * &v[1]]
            }
            Matrix::Dense { dim, entries } => (0..*dim)
                .map(|r| {
                    (0..*dim)
                        .filter(|&c| !entries[r * dim + c].is_trivially_zero() && !v[c].is_trivially_zero())
                        .map(|c| &entries[r * dim + c] * &v[c])
                        .sum()
                })
                .collect(),
        }
    }

    /// Block-diagonal `self (+) other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        if let (Matrix::Map(a), Matrix::Map(b)) = (self, other) {
            let shift = a.len();
            return Matrix::Map(a.iter().copied().chain(b.iter().map(|&r| r + shift)).collect());
        }
        let (da, db) = (self.dim(), other.dim());
        let d = da + db;
        let mut entries = vec![Scalar::zero(); d * d];
        for r in 0..da {
            for c in 0..da {
                entries[r * d + c] = self.entry(r, c);
            }
        }
        for r in 0..db {
            for c in 0..db {
                entries[(da + r) * d + da + c] = other.entry(r, c);
            }
        }
        Matrix::Dense { dim: d, entries }
    }

    /// Kronecker product `self (x) other`; state `(i, j)` has index `i * dim(other) + j`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let db = other.dim();
        if let (Matrix::Map(a), Matrix::Map(b)) = (self, other) {
            let mut t = Vec::with_capacity(a.len() * b.len());
            for &ra in a {
                for &rb in b {
                    t.push(ra * db + rb);
                }
            }
            return Matrix::Map(t);
        }
        let da = self.dim();
        let d = da * db;
        let (ra, rb) = (self.rows(), other.rows());
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                entries.push(&ra[r / db][c / db] * &rb[r % db][c % db]);
            }
        }
        Matrix::Dense { dim: d, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_is_orthogonal_for_many_angles() {
        for b in 1..=24 {
            for a in -b..=2 * b {
                assert!(Matrix::Rotation(Angle::pi_frac(a, b)).to_dense().is_orthogonal());
            }
        }
    }

    #[test]
    fn stochastic_is_not_orthogonal() {
        let m = Matrix::dense(vec![
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)],
            vec![Scalar::ratio(1, 2), Scalar::ratio(1, 2)],
        ]);
        assert!(!m.is_orthogonal());
    }

    #[test]
    fn rotation_apply_adds_angles() {
        let a = Angle::pi_frac(1, 7);
        let b = Angle::pi_frac(3, 11);
        let v = vec![Scalar::cos(a), Scalar::sin(a)];
        let w = Matrix::Rotation(b).apply(&v);
        assert_eq!(w, vec![Scalar::cos(a + b), Scalar::sin(a + b)]);
    }

    #[test]
    fn kron_and_sum_of_maps_stay_maps() {
        let a = Matrix::Map(vec![1, 0]);
        let b = Matrix::Map(vec![1, 2, 0]);
        assert_eq!(a.direct_sum(&b), Matrix::Map(vec![1, 0, 3, 4, 2]));
        let k = a.kron(&b);
        assert!(k.is_permutation());
        assert_eq!(k.to_dense().rows(), a.to_dense().kron(&b.to_dense()).rows());
    }

    #[test]
    fn kron_of_rotations_is_orthogonal() {
        let k = Matrix::Rotation(Angle::pi_frac(1, 5)).kron(&Matrix::Rotation(Angle::pi_frac(2, 7)));
        assert_eq!(k.dim(), 4);
        assert!(k.is_orthogonal());
        let s = Matrix::Rotation(Angle::pi_frac(1, 5)).direct_sum(&Matrix::identity(3));
        assert!(s.is_orthogonal());
    }

    #[test]
    fn dense_zero_one_recognised_as_map() {
        let m = Matrix::dense(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ]);
        assert_eq!(m.as_map(), Some(vec![1, 0]));
        assert!(m.is_permutation());
        assert!(!Matrix::Map(vec![0, 0]).is_permutation());
    }
}
