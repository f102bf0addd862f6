//! Affine charts on products of projective matrix spaces and Grassmannians.
//!
//! Coordinates are the raw affine coordinates: on a `ℙ(M_n)` piece with pivot
//! `p` they are `M_j / M_p` for `j ≠ p`, on a Grassmann piece they are the
//! entries of `C = P_p⁻¹ P_f`. The chart center is stored explicitly.

use serde::Serialize;
use wonderland_exact::{int, vars, Matrix, Poly, Rational, Vars, Zero};

use crate::error::{Result, WonderError};

/// Matrix of polynomials in a chart's coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Poly>,
}

impl PolyMat {
    pub fn zeros(v: &Vars, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Poly::zero(v); rows * cols],
        }
    }

    pub fn constant(v: &Vars, m: &Matrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.entries().iter().map(|c| Poly::constant(v, c.clone())).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn mul(&self, rhs: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, rhs.rows);
        let v = self.data[0].vars().clone();
        let mut out = PolyMat::zeros(&v, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero(&v);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `m · self` with a constant matrix on the left.
    pub fn lmul(&self, m: &Matrix) -> PolyMat {
        PolyMat::constant(self.data[0].vars(), m).mul(self)
    }

    /// `self · m` with a constant matrix on the right.
    pub fn rmul(&self, m: &Matrix) -> PolyMat {
        self.mul(&PolyMat::constant(self.data[0].vars(), m))
    }

    pub fn add(&self, rhs: &PolyMat) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &PolyMat) -> PolyMat {
        PolyMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|p| p.eval(point))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Matrix::new(self.rows, self.cols, data)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ChartPiece {
    /// `ℙ(M_n)` with the entry at `pivot` scaled to one.
    ProjMatrix { n: usize, pivot: (usize, usize) },
    /// `k`-planes in an `m`-dimensional space, given as `k × m` row spans
    /// whose `pivots` columns form the identity.
    Grassmann {
        k: usize,
        m: usize,
        pivots: Vec<usize>,
    },
}

impl ChartPiece {
    pub fn dim(&self) -> usize {
        match self {
            ChartPiece::ProjMatrix { n, .. } => n * n - 1,
            ChartPiece::Grassmann { k, m, .. } => k * (m - k),
        }
    }

    fn free(&self) -> Vec<usize> {
        match self {
            ChartPiece::ProjMatrix { n, pivot } => {
                let p = pivot.0 * n + pivot.1;
                (0..n * n).filter(|&j| j != p).collect()
            }
            ChartPiece::Grassmann { m, pivots, .. } => {
                (0..*m).filter(|j| !pivots.contains(j)).collect()
            }
        }
    }

    fn var_names(&self, suffix: &str) -> Vec<String> {
        match self {
            ChartPiece::ProjMatrix { n, .. } => self
                .free()
                .into_iter()
                .map(|j| {
                    let (r, c) = (j / n, j % n);
                    if *n == 2 {
                        format!("{}{suffix}", ["a", "b", "c", "d"][j])
                    } else {
                        format!("m{}{}{suffix}", r + 1, c + 1)
                    }
                })
                .collect(),
            ChartPiece::Grassmann { k, m, .. } => (0..*k)
                .flat_map(|i| (0..m - k).map(move |j| format!("c{}_{}{suffix}", i + 1, j + 1)))
                .collect(),
        }
    }

    fn ambient_shape(&self) -> (usize, usize) {
        match self {
            ChartPiece::ProjMatrix { n, .. } => (*n, *n),
            ChartPiece::Grassmann { k, m, .. } => (*k, *m),
        }
    }

    fn coords(&self, a: &Matrix) -> Result<Vec<Rational>> {
        if (a.rows(), a.cols()) != self.ambient_shape() {
            return Err(WonderError::Invalid("ambient point has the wrong shape".into()));
        }
        match self {
            ChartPiece::ProjMatrix { pivot, .. } => {
                let p = a[*pivot].clone();
                if p.is_zero() {
                    return Err(WonderError::OutsideChart);
                }
                Ok(self
                    .free()
                    .into_iter()
                    .map(|j| a.entries()[j].clone() / p.clone())
                    .collect())
            }
            ChartPiece::Grassmann { pivots, .. } => {
                let pp = a.select_columns(pivots);
                let inv = pp.inverse().map_err(|_| WonderError::OutsideChart)?;
                let c = inv.mul(&a.select_columns(&self.free()));
                Ok(c.entries().to_vec())
            }
        }
    }

    fn param(&self, z: &[Rational]) -> Matrix {
        let (r, c) = self.ambient_shape();
        let mut out = Matrix::zeros(r, c);
        match self {
            ChartPiece::ProjMatrix { n, pivot } => {
                out[*pivot] = int(1);
                for (j, v) in self.free().into_iter().zip(z) {
                    out[(j / n, j % n)] = v.clone();
                }
            }
            ChartPiece::Grassmann { k, pivots, .. } => {
                for (i, &p) in pivots.iter().enumerate() {
                    out[(i, p)] = int(1);
                }
                let free = self.free();
                for i in 0..*k {
                    for (jj, &f) in free.iter().enumerate() {
                        out[(i, f)] = z[i * free.len() + jj].clone();
                    }
                }
            }
        }
        out
    }

    fn param_poly(&self, v: &Vars, offset: usize) -> PolyMat {
        let (r, c) = self.ambient_shape();
        let mut out = PolyMat::zeros(v, r, c);
        match self {
            ChartPiece::ProjMatrix { n, pivot } => {
                out.set(pivot.0, pivot.1, Poly::one(v));
                for (idx, j) in self.free().into_iter().enumerate() {
                    out.set(j / n, j % n, Poly::var(v, offset + idx));
                }
            }
            ChartPiece::Grassmann { k, pivots, .. } => {
                for (i, &p) in pivots.iter().enumerate() {
                    out.set(i, p, Poly::one(v));
                }
                let free = self.free();
                for i in 0..*k {
                    for (jj, &f) in free.iter().enumerate() {
                        out.set(i, f, Poly::var(v, offset + i * free.len() + jj));
                    }
                }
            }
        }
        out
    }

    /// Chart velocity of an ambient curve through `a` with velocity `ad`.
    fn tangent(&self, a: &Matrix, ad: &Matrix) -> Result<Vec<Rational>> {
        match self {
            ChartPiece::ProjMatrix { pivot, .. } => {
                let p = a[*pivot].clone();
                if p.is_zero() {
                    return Err(WonderError::OutsideChart);
                }
                let pd = ad[*pivot].clone();
                let p2 = p.clone() * p.clone();
                Ok(self
                    .free()
                    .into_iter()
                    .map(|j| {
                        (ad.entries()[j].clone() * p.clone() - a.entries()[j].clone() * pd.clone())
                            / p2.clone()
                    })
                    .collect())
            }
            ChartPiece::Grassmann { pivots, .. } => {
                let free = self.free();
                let inv = a
                    .select_columns(pivots)
                    .inverse()
                    .map_err(|_| WonderError::OutsideChart)?;
                let c = inv.mul(&a.select_columns(&free));
                let cd = inv.mul(
                    &ad.select_columns(&free)
                        .sub(&ad.select_columns(pivots).mul(&c)),
                );
                Ok(cd.entries().to_vec())
            }
        }
    }

    /// Symbolic chart velocity, given the parametrization `p` (normalized so
    /// the pivot block is the identity) and an ambient velocity `pd`.
    fn field(&self, p: &PolyMat, pd: &PolyMat) -> Vec<Poly> {
        match self {
            ChartPiece::ProjMatrix { n, pivot } => {
                let pv = pd.get(pivot.0, pivot.1);
                self.free()
                    .into_iter()
                    .map(|j| {
                        let (r, c) = (j / n, j % n);
                        pd.get(r, c) - &(p.get(r, c) * pv)
                    })
                    .collect()
            }
            ChartPiece::Grassmann { k, pivots, .. } => {
                let free = self.free();
                let mut out = Vec::with_capacity(k * free.len());
                for i in 0..*k {
                    for &f in &free {
                        let mut acc = pd.get(i, f).clone();
                        for (l, &pl) in pivots.iter().enumerate() {
                            let (a, c) = (pd.get(i, pl), p.get(l, f));
                            if !a.is_zero() && !c.is_zero() {
                                acc = &acc - &(a * c);
                            }
                        }
                        out.push(acc);
                    }
                }
                out
            }
        }
    }
}

/// A chart on a product of pieces; coordinates are concatenated in order.
#[derive(Clone, Debug, PartialEq)]
pub struct Chart {
    pieces: Vec<ChartPiece>,
    vars: Vars,
    center: Vec<Rational>,
}

impl Chart {
    /// Builds the chart and records the coordinates of `center`.
    pub fn new(pieces: Vec<ChartPiece>, center: &[Matrix]) -> Result<Self> {
        let names: Vec<String> = if pieces.len() == 1 {
            pieces[0].var_names("")
        } else {
            pieces
                .iter()
                .enumerate()
                .flat_map(|(i, p)| p.var_names(&(i + 1).to_string()))
                .collect()
        };
        let mut chart = Self {
            pieces,
            vars: vars(&names),
            center: Vec::new(),
        };
        chart.center = chart.coords(center)?;
        Ok(chart)
    }

    pub fn pieces(&self) -> &[ChartPiece] {
        &self.pieces
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn center(&self) -> &[Rational] {
        &self.center
    }

    /// Coordinate range of piece `i`.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.pieces[..i].iter().map(ChartPiece::dim).sum();
        start..start + self.pieces[i].dim()
    }

    pub fn contains(&self, ambient: &[Matrix]) -> bool {
        self.coords(ambient).is_ok()
    }

    pub fn coords(&self, ambient: &[Matrix]) -> Result<Vec<Rational>> {
        if ambient.len() != self.pieces.len() {
            return Err(WonderError::Invalid("wrong number of factors".into()));
        }
        let mut out = Vec::with_capacity(self.dim());
        for (p, a) in self.pieces.iter().zip(ambient) {
            out.extend(p.coords(a)?);
        }
        Ok(out)
    }

    pub fn param(&self, z: &[Rational]) -> Vec<Matrix> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.param(&z[self.range(i)]))
            .collect()
    }

    /// Parametrization with polynomial entries.
    pub fn param_poly(&self) -> Vec<PolyMat> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.param_poly(&self.vars, self.range(i).start))
            .collect()
    }

    /// Chart velocity of an ambient velocity at an ambient point.
    pub fn tangent(&self, ambient: &[Matrix], velocity: &[Matrix]) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.dim());
        for ((p, a), v) in self.pieces.iter().zip(ambient).zip(velocity) {
            out.extend(p.tangent(a, v)?);
        }
        Ok(out)
    }

    /// Ambient velocity of the coordinate direction `k`, in the gauge of
    /// [`Chart::param`].
    pub fn coordinate_velocity(&self, k: usize) -> Vec<Matrix> {
        let mut e = vec![int(0); self.dim()];
        e[k] = int(1);
        let zero = vec![int(0); self.dim()];
        let with = self.param(&e);
        let base = self.param(&zero);
        with.iter().zip(&base).map(|(a, b)| a.sub(b)).collect()
    }

    /// Turns a symbolic ambient velocity (one matrix per piece, as a function
    /// of the piece index and its parametrization) into a polynomial vector
    /// field in chart coordinates.
    pub fn vector_field(&self, ambient: impl Fn(usize, &PolyMat) -> Option<PolyMat>) -> Vec<Poly> {
        let params = self.param_poly();
        let mut out = Vec::with_capacity(self.dim());
        for (i, (piece, p)) in self.pieces.iter().zip(&params).enumerate() {
            match ambient(i, p) {
                Some(pd) => out.extend(piece.field(p, &pd)),
                None => out.extend((0..piece.dim()).map(|_| Poly::zero(&self.vars))),
            }
        }
        out
    }

    /// Jacobian at `z` of a map into `target`, given the map on ambient points
    /// and its derivative.
    pub fn push_jacobian<F, D>(
        &self,
        z: &[Rational],
        target: &Chart,
        map: F,
        dmap: D,
    ) -> Result<(Matrix, Vec<Rational>)>
    where
        F: Fn(&[Matrix]) -> Result<Vec<Matrix>>,
        D: Fn(&[Matrix], &[Matrix]) -> Result<Vec<Matrix>>,
    {
        let a = self.param(z);
        let image = map(&a)?;
        let tz = target.coords(&image)?;
        let cols = (0..self.dim())
            .map(|k| target.tangent(&image, &dmap(&a, &self.coordinate_velocity(k))?))
            .collect::<Result<Vec<_>>>()?;
        let j = if cols.is_empty() {
            Matrix::zeros(target.dim(), 0)
        } else {
            Matrix::from_columns(&cols)?
        };
        Ok((j, tz))
    }
}

/// Chart on `ℙ(M_n)^k` centered at the given representatives, each piece
/// scaling its largest-numerator entry (first on ties) to one.
pub fn proj_chart_at(reps: &[Matrix]) -> Result<Chart> {
    let pieces = reps
        .iter()
        .map(|m| {
            let n = m.rows();
            let mut best: Option<(usize, u128)> = None;
            for (j, x) in m.entries().iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let mag = num_mag(x);
                if best.is_none_or(|(_, b)| mag > b) {
                    best = Some((j, mag));
                }
            }
            let (j, _) = best.ok_or(WonderError::ZeroPoint)?;
            Ok(ChartPiece::ProjMatrix {
                n,
                pivot: (j / n, j % n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Chart::new(pieces, reps)
}

fn num_mag(x: &Rational) -> u128 {
    use wonderland_exact::Scalar;
    x.numerator_magnitude()
}

/// Standard Grassmann chart at a row span: pivots are the rref pivots.
pub fn grassmann_chart_at(span: &Matrix) -> Result<Chart> {
    let r = span.rref();
    if r.rank != span.rows() {
        return Err(WonderError::Invalid("span matrix is not of full rank".into()));
    }
    Chart::new(
        vec![ChartPiece::Grassmann {
            k: span.rows(),
            m: span.cols(),
            pivots: r.pivots,
        }],
        std::slice::from_ref(span),
    )
}
