use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{common_denominator, format_rational, parse_rational, NumberError, Rational};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Why a matrix failed the regular-orthogonal test.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrthogonalityFailure {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("M·Mᵀ differs from the identity at ({row}, {col})")]
    NotOrthogonal { row: usize, col: usize },
    #[error("row sums are not constant (row 0 sums to {first}, row {row} to {other})")]
    RowSumsNotConstant { row: usize, first: String, other: String },
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, n, |_, _| Rational::one())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, NumberError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(NumberError::Ragged);
        }
        Ok(RatMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    /// Integer rows scaled by `1/den`, handy for writing down catalog matrices.
    pub fn from_int_rows(rows: &[Vec<i64>], den: i64) -> Result<Self, NumberError> {
        let d = BigInt::from(den);
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::new(BigInt::from(v), d.clone())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<Self, NumberError> {
        if self.cols != other.rows {
            return Err(NumberError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, NumberError> {
        if v.len() != self.cols {
            return Err(NumberError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn add(&self, other: &RatMatrix) -> Result<Self, NumberError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<Self, NumberError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &RatMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self, NumberError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(NumberError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j { v.is_one() } else { v.is_zero() }
                })
            })
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &RatMatrix) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j).clone()
            } else if i >= self.rows && j >= self.cols {
                other.get(i - self.rows, j - self.cols).clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Extracts the rows and columns listed (repeats allowed), in order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Applies a relabeling `perm` to rows and columns: entry `(i, j)` of the
    /// result is `self[perm⁻¹(i), perm⁻¹(j)]`, i.e. `P·M·Pᵀ`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert!(self.is_square() && perm.len() == self.rows);
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    /// `per(M) = Σ_σ Π_i M[i, σ(i)]`.
    ///
    /// Direct expansion up to 4×4, Ryser's inclusion–exclusion formula above.
    pub fn permanent(&self) -> Result<Rational, NumberError> {
        if !self.is_square() {
            return Err(NumberError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(if self.rows <= 4 { self.permanent_expansion() } else { self.permanent_ryser() })
    }

    fn permanent_expansion(&self) -> Rational {
        fn go(m: &RatMatrix, row: usize, used: &mut [bool]) -> Rational {
            if row == m.rows {
                return Rational::one();
            }
            let mut acc = Rational::zero();
            for j in 0..m.cols {
                if used[j] || m.get(row, j).is_zero() {
                    continue;
                }
                used[j] = true;
                acc += m.get(row, j) * go(m, row + 1, used);
                used[j] = false;
            }
            acc
        }
        go(self, 0, &mut vec![false; self.cols])
    }

    fn permanent_ryser(&self) -> Rational {
        let n = self.rows;
        // Gray-code walk over column subsets, keeping the row sums current.
        let mut row_sums = vec![Rational::zero(); n];
        let mut total = Rational::zero();
        let mut subset: u64 = 0;
        for step in 1u64..(1u64 << n) {
            let bit = step.trailing_zeros() as usize;
            let adding = subset & (1 << bit) == 0;
            subset ^= 1 << bit;
            for (i, s) in row_sums.iter_mut().enumerate() {
                if adding {
                    *s += self.get(i, bit);
                } else {
                    *s -= self.get(i, bit);
                }
            }
            let prod: Rational = row_sums.iter().product();
            if (n - subset.count_ones() as usize) % 2 == 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        total
    }

    /// Rank by fraction-free (Bareiss) elimination over the integers, after
    /// clearing each row's denominators.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = common_denominator(row);
                row.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Dimension of the right null space, `cols − rank`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Reduced row echelon form over ℚ; returns the matrix and pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.entries.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// A basis of the right null space, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Smallest positive integer `ℓ` with `ℓ·M` integral.
    pub fn level(&self) -> BigInt {
        common_denominator(&self.entries)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    /// Checks `M·Mᵀ = I` and `M·𝟙 = r·𝟙`, returning the row sum `r`.
    pub fn is_regular_orthogonal(&self) -> Result<Rational, OrthogonalityFailure> {
        if !self.is_square() {
            return Err(OrthogonalityFailure::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        for i in 0..n {
            for j in i..n {
                let dot: Rational = self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum();
                let ok = if i == j { dot.is_one() } else { dot.is_zero() };
                if !ok {
                    return Err(OrthogonalityFailure::NotOrthogonal { row: i, col: j });
                }
            }
        }
        let sums: Vec<Rational> = (0..n).map(|i| self.row(i).iter().sum()).collect();
        if let Some(row) = sums.iter().position(|s| s != &sums[0]) {
            return Err(OrthogonalityFailure::RowSumsNotConstant {
                row,
                first: format_rational(&sums[0]),
                other: format_rational(&sums[row]),
            });
        }
        Ok(sums.into_iter().next().unwrap_or_else(Rational::zero))
    }

    /// Integer matrix `ℓ·M` for `ℓ = level()`, when every entry fits in `i64`.
    pub fn scaled_to_integers(&self) -> Option<(i64, Vec<i64>)> {
        use num_traits::ToPrimitive;
        let l = self.level();
        let lr = Rational::from_integer(l.clone());
        let ints: Option<Vec<i64>> =
            self.entries.iter().map(|v| (v * &lr).to_integer().to_i64()).collect();
        Some((l.to_i64()?, ints?))
    }

    /// Largest absolute entry; used for sizing integer arithmetic.
    pub fn max_abs(&self) -> Rational {
        self.entries.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Rows as `"p/q"` strings.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(format_rational).collect()).collect()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Result<Vec<Vec<Rational>>, _> = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect())
            .collect();
        let parsed = parsed.map_err(serde::de::Error::custom)?;
        RatMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 1).unwrap()
    }

    fn brute_permanent(a: &RatMatrix) -> Rational {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(a.rows())
            .into_iter()
            .map(|s| (0..a.rows()).map(|i| a.get(i, s[i]).clone()).product::<Rational>())
            .sum()
    }

    #[test]
    fn permanent_examples() {
        assert_eq!(RatMatrix::identity(3).permanent().unwrap(), int(1));
        assert_eq!(RatMatrix::ones(2).permanent().unwrap(), int(2));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).permanent().unwrap(), int(10));
        // per(J_n) = n!
        assert_eq!(RatMatrix::ones(6).permanent().unwrap(), int(720));
        assert!(RatMatrix::zeros(2, 3).permanent().is_err());
    }

    #[test]
    fn ryser_matches_expansion() {
        let a = RatMatrix::from_fn(6, 6, |i, j| rat((i * 7 + j * 3) as i64 % 5 - 2, 1 + (i + j) as i64 % 3));
        assert_eq!(a.permanent_ryser(), brute_permanent(&a));
        let b = a.submatrix(&[0, 1, 2, 3], &[1, 2, 3, 4]);
        assert_eq!(b.permanent_ryser(), b.permanent_expansion());
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(RatMatrix::zeros(2, 2).nullity(), 2);
        assert_eq!(RatMatrix::identity(4).nullity(), 0);
        // path on three vertices: λ³ − 2λ has a single zero root
        let p3 = m(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(p3.nullity(), 1);
        let ns = p3.null_space();
        assert_eq!(ns.len(), 1);
        assert!(p3.mul_vec(&ns[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn level_examples() {
        let gm4 = RatMatrix::from_int_rows(
            &[vec![-1, 1, 1, 1], vec![1, -1, 1, 1], vec![1, 1, -1, 1], vec![1, 1, 1, -1]],
            2,
        )
        .unwrap();
        assert_eq!(gm4.level(), BigInt::from(2));
        assert_eq!(RatMatrix::identity(5).level(), BigInt::from(1));
        let gm6 = RatMatrix::ones(6).scale(&rat(2, 6)).sub(&RatMatrix::identity(6)).unwrap();
        assert_eq!(gm6.level(), BigInt::from(3));
    }

    #[test]
    fn regular_orthogonal_checks() {
        assert_eq!(RatMatrix::identity(3).is_regular_orthogonal().unwrap(), int(1));
        assert!(matches!(
            RatMatrix::ones(2).is_regular_orthogonal(),
            Err(OrthogonalityFailure::NotOrthogonal { .. })
        ));
        // orthogonal, but row sums 1 and −1
        let d = m(&[&[1, 0], &[0, -1]]);
        assert!(matches!(
            d.is_regular_orthogonal(),
            Err(OrthogonalityFailure::RowSumsNotConstant { .. })
        ));
        assert!(matches!(
            RatMatrix::zeros(2, 3).is_regular_orthogonal(),
            Err(OrthogonalityFailure::NotSquare { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = RatMatrix::from_int_rows(&[vec![1, -1], vec![3, 0]], 2).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1/2","-1/2"],["3/2","0"]]"#);
        let b: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    fn arb_square(max: usize) -> impl Strategy<Value = RatMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec((-3i64..4, 1i64..4), n * n).prop_map(move |v| {
                // sparsify so rank deficiency actually occurs
                RatMatrix::from_fn(n, n, |i, j| {
                    let (p, q) = v[i * n + j];
                    if p.rem_euclid(3) == 0 { int(0) } else { rat(p, q) }
                })
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in arb_square(8)) {
            prop_assert_eq!(a.rank() + a.nullity(), a.cols());
            // Bareiss rank agrees with the rational echelon form
            prop_assert_eq!(a.rank(), a.rref().1.len());
            for v in a.null_space() {
                prop_assert!(a.mul_vec(&v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn permanent_invariant_under_permutations(
            a in arb_square(4).prop_filter("4x4", |a| a.rows() == 4),
            rp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
            cp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let b = a.submatrix(&rp, &cp);
            prop_assert_eq!(a.permanent().unwrap(), b.permanent().unwrap());
            prop_assert_eq!(a.permanent().unwrap(), brute_permanent(&a));
        }
    }
}
