use std::fmt;
use std::str::FromStr;

use crate::qfield::{QfError, QuadExt, Rational};

/// 4×4 matrix over ℚ(√p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    e: [[QuadExt; 4]; 4],
}

impl SpMatrix {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> QuadExt) -> Self {
        Self { e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| QuadExt::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| QuadExt::from_int((i == j) as i64))
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| QuadExt::from_int(rows[i][j]))
    }

    pub fn diag(d: [QuadExt; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.e[i][i] = x;
        }
        m
    }

    /// Entry with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.e[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuadExt) {
        self.e[i][j] = x;
    }

    /// Entry with the 1-based indices used in the literature.
    pub fn at(&self, i: usize, j: usize) -> &QuadExt {
        &self.e[i - 1][j - 1]
    }

    pub fn row(&self, i: usize) -> [QuadExt; 4] {
        self.e[i].clone()
    }

    pub fn last_row(&self) -> [QuadExt; 4] {
        self.row(3)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    /// The radicand shared by all irrational entries (1 if the matrix is rational).
    pub fn radicand(&self) -> Result<u64, QfError> {
        let mut r = 1;
        for x in self.e.iter().flatten() {
            match (r, x.radicand()) {
                (_, 1) => {}
                (1, s) => r = s,
                (a, b) if a == b => {}
                (a, b) => return Err(QfError::RadicandMismatch(a, b)),
            }
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, QfError> {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = QuadExt::zero();
                for k in 0..4 {
                    if self.e[i][k].is_zero() || other.e[k][j].is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&self.e[i][k].try_mul(&other.e[k][j])?)?;
                }
                out.e[i][j] = acc;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        Self::from_fn(|i, j| &self.e[i][j] * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::from_fn(|i, j| self.e[i][j].scale(c))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, QfError> {
        let mut a = self.e.clone();
        let mut inv = Self::identity().e;
        for col in 0..4 {
            let piv = (col..4).find(|&r| !a[r][col].is_zero()).ok_or(QfError::DivisionByZero)?;
            a.swap(col, piv);
            inv.swap(col, piv);
            let pinv = a[col][col].inverse()?;
            for j in 0..4 {
                a[col][j] = a[col][j].try_mul(&pinv)?;
                inv[col][j] = inv[col][j].try_mul(&pinv)?;
            }
            for r in 0..4 {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..4 {
                    a[r][j] = a[r][j].try_sub(&f.try_mul(&a[col][j])?)?;
                    inv[r][j] = inv[r][j].try_sub(&f.try_mul(&inv[col][j])?)?;
                }
            }
        }
        Ok(Self { e: inv })
    }

    /// Exact determinant by cofactor expansion.
    pub fn det(&self) -> QuadExt {
        fn minor3(m: &[[QuadExt; 4]; 4], rows: [usize; 3], cols: [usize; 3]) -> QuadExt {
            let g = |i: usize, j: usize| &m[rows[i]][cols[j]];
            let t1 = g(0, 0) * &(&(g(1, 1) * g(2, 2)) - &(g(1, 2) * g(2, 1)));
            let t2 = g(0, 1) * &(&(g(1, 0) * g(2, 2)) - &(g(1, 2) * g(2, 0)));
            let t3 = g(0, 2) * &(&(g(1, 0) * g(2, 1)) - &(g(1, 1) * g(2, 0)));
            &(&t1 - &t2) + &t3
        }
        let mut acc = QuadExt::zero();
        for j in 0..4 {
            if self.e[0][j].is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            let m = minor3(&self.e, [1, 2, 3], [cols[0], cols[1], cols[2]]);
            let term = &self.e[0][j] * &m;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    pub fn is_integral(&self) -> bool {
        self.e.iter().flatten().all(QuadExt::is_integer)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.e[i][j].to_f64()))
    }

    /// Row-major text form: 16 entries `a/b+c/d*sqrt(p)` separated by spaces.
    pub fn to_text(&self) -> String {
        let p = self.radicand().unwrap_or(1);
        self.e.iter().flatten().map(|x| x.to_text(p)).collect::<Vec<_>>().join(" ")
    }
}

impl std::ops::Mul<&SpMatrix> for &SpMatrix {
    type Output = SpMatrix;
    fn mul(self, rhs: &SpMatrix) -> SpMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl std::ops::Mul for SpMatrix {
    type Output = SpMatrix;
    fn mul(self, rhs: SpMatrix) -> SpMatrix {
        &self * &rhs
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SpMatrix {
    type Err = QfError;

    fn from_str(s: &str) -> Result<Self, QfError> {
        let items: Vec<QuadExt> = s.split_whitespace().map(str::parse).collect::<Result<_, _>>()?;
        if items.len() != 16 {
            return Err(QfError::Parse(format!("expected 16 entries, got {}", items.len())));
        }
        let mut it = items.into_iter();
        Ok(Self::from_fn(|_, _| it.next().unwrap()))
    }
}

/// `J_t` with blocks `[[0, T], [-T, 0]]`, `T = diag(1, t)`.
pub fn j_form(t: i64) -> SpMatrix {
    let mut m = SpMatrix::zero();
    m.set(0, 2, QuadExt::from_int(1));
    m.set(1, 3, QuadExt::from_int(t));
    m.set(2, 0, QuadExt::from_int(-1));
    m.set(3, 1, QuadExt::from_int(-t));
    m
}
