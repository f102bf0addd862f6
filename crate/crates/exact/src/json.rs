//! Canonical JSON forms.
//!
//! Matrices serialize as `{rows, cols, entries}` with row-major `"n/d"`
//! strings; polynomials as `{variables, terms}` where each term is
//! `[exponents, "n/d"]`, terms in descending graded-lex order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::matrix::Matrix;
use crate::poly::{vars, MultiPoly};
use crate::Scalar;

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    variables: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: self.entries().iter().map(Scalar::to_text).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = MatrixRepr::deserialize(d)?;
        let data = r
            .entries
            .iter()
            .map(|e| T::from_text(e))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Matrix::new(r.rows, r.cols, data).map_err(D::Error::custom)
    }
}

impl<T: Scalar> Serialize for MultiPoly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            variables: self.vars().to_vec(),
            terms: self
                .terms()
                .map(|(m, c)| (m.exponents().to_vec(), c.to_text()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for MultiPoly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let v = vars(&r.variables);
        let terms = r
            .terms
            .into_iter()
            .map(|(e, c)| T::from_text(&c).map(|c| (e, c)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        MultiPoly::from_terms(&v, terms).map_err(D::Error::custom)
    }
}

/// Serde adapter for a single scalar stored as `"n/d"`.
pub mod scalar_text {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_text())
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        T::from_text(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of scalars stored as `"n/d"` strings.
pub mod scalar_vec {
    use super::*;

    pub fn serialize<T: Scalar, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let texts: Vec<String> = v.iter().map(Scalar::to_text).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, T: Scalar, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| T::from_text(t).map_err(D::Error::custom))
            .collect()
    }
}
