//! Exact dense linear algebra over ℚ and ℚ(i), plus univariate polynomials
//! for characteristic polynomials and rational root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::Scalar;

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// `a + c·b` in place.
pub fn axpy(a: &mut [Scalar], c: &Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x += &(c * y);
        }
    }
}

pub type SparseRow = Vec<(usize, Scalar)>;

fn to_sparse(v: &[Scalar]) -> SparseRow {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

fn to_dense(v: &SparseRow, n: usize) -> Vector {
    let mut out = zero_vec(n);
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// `a − c·b` for sparse rows sorted by column.
fn sparse_axpy(a: &SparseRow, c: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -&(c * &b[j].1)));
            j += 1;
        } else {
            let x = &a[i].1 - &(c * &b[j].1);
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse Gauss–Jordan elimination: nonzero rows of the reduced echelon form and their pivots.
fn sparse_rref(rows: Vec<SparseRow>, cols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    // rows waiting, bucketed by leading column
    let mut buckets: Vec<Vec<SparseRow>> = vec![Vec::new(); cols];
    for r in rows {
        if let Some(&(c, _)) = r.first() {
            buckets[c].push(r);
        }
    }
    let mut echelon: Vec<SparseRow> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let k = (0..bucket.len()).min_by_key(|&k| bucket[k].len()).unwrap();
        let mut pivot = bucket.swap_remove(k);
        let inv = pivot[0].1.inv().unwrap();
        for e in pivot.iter_mut() {
            e.1 = &e.1 * &inv;
        }
        for r in bucket {
            let f = r[0].1.clone();
            let red = sparse_axpy(&r, &f, &pivot);
            if let Some(&(nc, _)) = red.first() {
                buckets[nc].push(red);
            }
        }
        echelon.push(pivot);
        pivots.push(c);
    }
    // clear above the pivots, last pivot first
    for k in (0..echelon.len()).rev() {
        let p = pivots[k];
        let (head, tail) = echelon.split_at_mut(k);
        let prow = &tail[0];
        for row in head.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&p, |e| e.0) {
                let f = row[pos].1.clone();
                *row = sparse_axpy(row, &f, prow);
            }
        }
    }
    (echelon, pivots)
}

/// Basis of the null space of a sparse matrix given by rows sorted by column.
pub fn sparse_kernel(rows: Vec<SparseRow>, cols: usize) -> (Vec<SparseRow>, Vec<usize>) {
    let rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let (reduced, pivots) = sparse_rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut index = vec![usize::MAX; cols];
    let mut basis: Vec<SparseRow> = Vec::with_capacity(free.len());
    for &c in &free {
        index[c] = basis.len();
        basis.push(vec![(c, Scalar::one())]);
    }
    for (row, &p) in reduced.iter().zip(&pivots) {
        for (c, x) in &row[1..] {
            basis[index[*c]].push((p, -x));
        }
    }
    for b in &mut basis {
        b.sort_by_key(|(c, _)| *c);
    }
    (basis, free)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vector>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![zero_vec(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols);
        }
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.data[i][j] = c[i].clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from_i64(x)).collect()).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn column(&self, j: usize) -> Vector {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| is_zero_vec(r))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                axpy(&mut out.data[i], a, &other.data[k]);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        self.data
            .iter()
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] += &other.data[i][j];
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&Scalar::from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub fn add_scalar_identity(&self, c: &Scalar) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            out.data[i][i] += c;
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self.data[i][i];
        }
        acc
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let rows: Vec<SparseRow> = self.data.iter().map(|r| to_sparse(r)).collect();
        let (reduced, pivots) = sparse_rref(rows, self.cols);
        for (i, row) in self.data.iter_mut().enumerate() {
            *row = match reduced.get(i) {
                Some(r) => to_dense(r, self.cols),
                None => zero_vec(self.cols),
            };
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vector> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = zero_vec(self.cols);
            v[free] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m.data[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self·x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.clone();
        for (i, row) in aug.data.iter_mut().enumerate() {
            row.push(b[i].clone());
        }
        aug.cols += 1;
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Scalar::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_rows(n, aug.data.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Restriction to the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_rows(
            cols.len(),
            rows.iter().map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect()).collect(),
        )
    }

    /// Characteristic polynomial det(x·1 − M) by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> UniPoly {
        assert_eq!(self.rows, self.cols, "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Scalar::zero(); n + 1];
        coeffs[n] = Scalar::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1}·1, c_{n-k} = −tr(A·M_k)/k
            let prev_c = coeffs[n - k + 1].clone();
            m = self.mul(&m).add_scalar_identity(&prev_c);
            let am = self.mul(&m);
            coeffs[n - k] = -&(&am.trace() / &Scalar::from_i64(k as i64));
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of `K^n` kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors(ambient: usize, vs: &[Vector]) -> Self {
        let mut e = Echelon::new(ambient);
        if vs.is_empty() {
            return e;
        }
        let mut m = Matrix::from_rows(ambient, vs.to_vec());
        let pivots = m.rref_in_place();
        e.rows = m.data.into_iter().take(pivots.len()).collect();
        e.pivots = pivots;
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    /// Canonical representative of `v` modulo the subspace (zero on pivot columns).
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if !c.is_zero() {
                axpy(&mut w, &-&c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().unwrap();
        let w: Vector = w.iter().map(|c| c * &inv).collect();
        for row in self.rows.iter_mut() {
            let c = row[p].clone();
            if !c.is_zero() {
                axpy(row, &-&c, &w);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, w);
        true
    }

    /// Columns not used as pivots; they index a basis of the quotient `K^n / self`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient, relative to [`Self::free_columns`].
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let w = self.reduce(v);
        self.free_columns().into_iter().map(|c| w[c].clone()).collect()
    }

    /// Coordinates of `v` in terms of the stored echelon basis, if `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        let coeffs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        for (row, c) in self.rows.iter().zip(&coeffs) {
            axpy(&mut w, &-c, row);
        }
        if is_zero_vec(&w) {
            Some(coeffs)
        } else {
            None
        }
    }
}

/// Univariate polynomial, coefficients from degree 0 upwards, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_rationals(c: Vec<BigRational>) -> Self {
        Self::new(c.into_iter().map(Scalar::from_rational).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().unwrap();
        UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = d.lead().inv().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UniPoly::new(vec![]), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    fn real_part(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| Scalar::from_rational(c.re.clone())).collect())
    }

    fn imag_part(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| Scalar::from_rational(c.im.clone())).collect())
    }

    /// Distinct rational roots with multiplicities, plus the cofactor without them.
    pub fn rational_roots(&self) -> (Vec<(BigRational, usize)>, UniPoly) {
        if self.is_zero() {
            return (Vec::new(), self.clone());
        }
        // a rational root of p is a common root of Re p and Im p
        let base = if self.is_rational() { self.clone() } else { self.real_part().gcd(&self.imag_part()) };
        let mut candidates = Vec::new();
        if base.degree().unwrap_or(0) > 0 {
            let sqfree = base.divrem(&base.gcd(&base.derivative())).0.monic();
            candidates = rational_roots_squarefree(&sqfree);
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        for r in candidates {
            let lin = UniPoly::new(vec![Scalar::from_rational(-r.clone()), Scalar::one()]);
            let mut mult = 0;
            loop {
                let (q, rem) = rest.divrem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((r, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        (out, rest.monic())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_rational() && c.is_negative_leading();
            let abs = if neg { -c } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", abs)?,
                (_, true) => write!(f, "x^{}", k)?,
                (_, false) => write!(f, "{}*x^{}", abs, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn rat_eval(c: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for a in c.iter().rev() {
        acc = acc * x + a;
    }
    acc
}

/// Primitive integer polynomial with positive leading coefficient, as rationals.
fn primitive(c: &[BigRational]) -> Vec<BigRational> {
    let mut l = BigInt::one();
    for a in c {
        l = l.lcm(a.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|a| (a * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &ints {
        g = g.gcd(a);
    }
    if g.is_zero() {
        return c.to_vec();
    }
    if ints.last().is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|a| BigRational::from_integer(a / &g)).collect()
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lb;
        for (j, bc) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &c * bc;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

fn sign_changes(chain: &[Vec<BigRational>], x: &BigRational) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for p in chain {
        let v = rat_eval(p, x);
        let s = if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 };
        if s != 0 {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
    }
    n
}

/// Simplest fraction (smallest denominator) in the closed interval `[lo, hi]`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + BigRational::one() <= *hi {
        return fl + BigRational::one();
    }
    // lo and hi share the integer part; recurse on reciprocals of the fractional parts
    let a = &fl;
    let inner = simplest_between(&(hi - a).recip(), &(lo - a).recip());
    a + inner.recip()
}

/// Rational roots of a square-free polynomial with rational coefficients.
///
/// Real roots are isolated with a Sturm sequence and narrowed by bisection
/// until any rational root with admissible denominator is the simplest
/// fraction of its interval; each candidate is then tested exactly.
fn rational_roots_squarefree(p: &UniPoly) -> Vec<BigRational> {
    let c: Vec<BigRational> = primitive(&p.coeffs.iter().map(|s| s.re.clone()).collect::<Vec<_>>());
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-&c[0] / &c[1]];
    }
    // the denominator of a rational root divides the leading coefficient
    let lead = c[deg].abs();
    let mut bound = BigRational::one();
    for a in &c[..deg] {
        let q = a.abs() / &lead;
        if q > bound {
            bound = q.clone();
        }
    }
    let bound = bound + BigRational::one();
    let mut chain = vec![c.clone()];
    let d: Vec<BigRational> =
        c.iter().enumerate().skip(1).map(|(k, a)| a * BigRational::from_integer(BigInt::from(k))).collect();
    chain.push(primitive(&d));
    loop {
        let n = chain.len();
        let r = rat_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        // negative remainder, rescaled by a positive factor
        let neg: Vec<BigRational> = r.iter().map(|x| -x).collect();
        let mut prim = primitive(&neg);
        if neg.last().unwrap().is_negative() != prim.last().unwrap().is_negative() {
            prim = prim.into_iter().map(|x| -x).collect();
        }
        chain.push(prim);
    }
    let count = |a: &BigRational, b: &BigRational| sign_changes(&chain, a) - sign_changes(&chain, b);
    let two = BigRational::from_integer(2.into());
    // width below 1/(2·lead²) separates fractions with denominator ≤ lead
    let width = (two.clone() * &lead * &lead).recip();
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        let n = count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a < width {
            let cand = simplest_between(&a, &b);
            if rat_eval(&c, &cand).is_zero() {
                roots.push(cand);
            }
            continue;
        }
        let m = (&a + &b) / &two;
        if rat_eval(&c, &m).is_zero() {
            roots.push(m.clone());
        }
        stack.push((a, m.clone()));
        stack.push((m, b));
    }
    roots.sort();
    roots.dedup();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    #[test]
    fn kernel_and_rank() {
        let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&k[0])));
    }

    #[test]
    fn solve_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let x = m.solve(&[q(3, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(1, 1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(s.solve(&[q(1, 1), q(0, 1)]).is_none());
        assert!(s.inverse().is_none());
    }

    #[test]
    fn echelon_quotient() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[q(1, 1), q(1, 1), q(0, 1)]));
        assert!(!e.insert(&[q(2, 1), q(2, 1), q(0, 1)]));
        assert_eq!(e.free_columns(), vec![1, 2]);
        assert_eq!(e.quotient_coords(&[q(1, 1), q(0, 1), q(0, 1)]), vec![q(-1, 1), q(0, 1)]);
        assert_eq!(e.coords(&[q(3, 1), q(3, 1), q(0, 1)]), Some(vec![q(3, 1)]));
    }

    #[test]
    fn charpoly_of_companion() {
        // roots 1, 2, 3
        let m = Matrix::from_i64(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        let p = m.charpoly();
        assert_eq!(p.to_string(), "x^3-6*x^2+11*x-6");
        let (roots, rest) = p.rational_roots();
        assert_eq!(rest.degree(), Some(0));
        let r: Vec<String> = roots.iter().map(|(x, k)| format!("{}^{}", x, k)).collect();
        assert_eq!(r, vec!["1^1", "2^1", "3^1"]);
    }

    #[test]
    fn fractional_and_repeated_roots() {
        // (x + 4/5)^2 (x - 27/10)(x^2 - 2)
        let lin = |a: Scalar| UniPoly::new(vec![a, Scalar::one()]);
        let mut p = UniPoly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        for f in [lin(q(4, 5)), lin(q(4, 5)), lin(q(-27, 10))] {
            p = mul(&p, &f);
        }
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0], (BigRational::new((-4).into(), 5.into()), 2));
        assert_eq!(roots[1], (BigRational::new(27.into(), 10.into()), 1));
        assert_eq!(rest.to_string(), "x^2-2");
    }

    #[test]
    fn gaussian_polynomial_with_rational_root() {
        // (x - 3)(x - i)
        let p = UniPoly::new(vec![Scalar::i() * Scalar::from_i64(3), -(Scalar::from_i64(3) + Scalar::i()), q(1, 1)]);
        let (roots, rest) = p.rational_roots();
        assert_eq!(roots, vec![(BigRational::from_integer(3.into()), 1)]);
        assert_eq!(rest.degree(), Some(1));
    }

    fn mul(a: &UniPoly, b: &UniPoly) -> UniPoly {
        let mut c = vec![Scalar::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] += &(x * y);
            }
        }
        UniPoly::new(c)
    }

    #[test]
    fn simplest_fraction() {
        let r = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(simplest_between(&r(31, 100), &r(34, 100)), r(1, 3));
        assert_eq!(simplest_between(&r(-34, 100), &r(-31, 100)), r(-1, 3));
        assert_eq!(simplest_between(&r(5, 2), &r(5, 2)), r(5, 2));
    }
}
