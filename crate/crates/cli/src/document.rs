//! JSON schemas for realizations and network expression trees.
//!
//! Complex entries encode as two-element arrays `[re, im]`; bare numbers are
//! accepted on input for real values. Matrices are nested row arrays. The
//! realization document carries the dimensions explicitly so malformed files
//! fail with a clear message instead of a shape guess.

use serde::{Deserialize, Serialize};

use realize_core::matrix::ComplexMatrix;
use realize_core::networks::NetworkExpr;
use realize_core::{Complex64, Realization};

/// One complex entry: `[re, im]` on output; a bare number is accepted on input.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Pair([f64; 2]),
}

impl Entry {
    fn to_complex(self) -> Complex64 {
        match self {
            Entry::Real(re) => Complex64::new(re, 0.0),
            Entry::Pair([re, im]) => Complex64::new(re, im),
        }
    }

    fn from_complex(z: Complex64) -> Self {
        Entry::Pair([z.re, z.im])
    }
}

pub type MatrixDoc = Vec<Vec<Entry>>;

fn matrix_from_doc(
    doc: &MatrixDoc,
    rows: usize,
    cols: usize,
    label: &str,
) -> Result<ComplexMatrix, String> {
    if doc.len() != rows {
        return Err(format!(
            "matrix {label}: expected {rows} rows, found {}",
            doc.len()
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (i, row) in doc.iter().enumerate() {
        if row.len() != cols {
            return Err(format!(
                "matrix {label}: row {i} has {} entries, expected {cols}",
                row.len()
            ));
        }
        data.extend(row.iter().map(|e| e.to_complex()));
    }
    ComplexMatrix::from_vec(rows, cols, data).map_err(|e| format!("matrix {label}: {e}"))
}

fn matrix_to_doc(m: &ComplexMatrix) -> MatrixDoc {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| Entry::from_complex(m[(i, j)]))
                .collect()
        })
        .collect()
}

/// On-disk form of a realization: dimensions plus the four blocks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RealizationDocument {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub notes: Option<String>,
    pub n: usize,
    pub p: usize,
    pub m: usize,
    pub a: MatrixDoc,
    pub b: MatrixDoc,
    pub c: MatrixDoc,
    pub d: MatrixDoc,
}

impl RealizationDocument {
    pub fn to_realization(&self) -> Result<Realization, String> {
        let a = matrix_from_doc(&self.a, self.n, self.n, "A")?;
        let b = matrix_from_doc(&self.b, self.n, self.m, "B")?;
        let c = matrix_from_doc(&self.c, self.p, self.n, "C")?;
        let d = matrix_from_doc(&self.d, self.p, self.m, "D")?;
        Realization::new(a, b, c, d).map_err(|e| e.to_string())
    }

    pub fn from_realization(r: &Realization, name: Option<String>) -> Self {
        Self {
            name,
            notes: None,
            n: r.state_dim(),
            p: r.output_dim(),
            m: r.input_dim(),
            a: matrix_to_doc(r.a()),
            b: matrix_to_doc(r.b()),
            c: matrix_to_doc(r.c()),
            d: matrix_to_doc(r.d()),
        }
    }
}

/// On-disk form of a network expression tree (tagged by `kind`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NetworkDocument {
    Const {
        d: MatrixDoc,
    },
    Leaf {
        realization: RealizationDocument,
    },
    RcShunt {
        resistance: f64,
        capacitance: f64,
    },
    LcTank {
        inductance: f64,
        capacitance: f64,
    },
    Series {
        elements: Vec<NetworkDocument>,
    },
    Phi {
        f: Box<NetworkDocument>,
        g: Box<NetworkDocument>,
    },
}

impl NetworkDocument {
    pub fn to_expr(&self) -> Result<NetworkExpr, String> {
        Ok(match self {
            NetworkDocument::Const { d } => {
                let rows = d.len();
                let cols = d.first().map_or(0, Vec::len);
                NetworkExpr::Const(matrix_from_doc(d, rows, cols, "const")?)
            }
            NetworkDocument::Leaf { realization } => {
                NetworkExpr::Leaf(realization.to_realization()?)
            }
            NetworkDocument::RcShunt {
                resistance,
                capacitance,
            } => NetworkExpr::RcShunt {
                resistance: *resistance,
                capacitance: *capacitance,
            },
            NetworkDocument::LcTank {
                inductance,
                capacitance,
            } => NetworkExpr::LcTank {
                inductance: *inductance,
                capacitance: *capacitance,
            },
            NetworkDocument::Series { elements } => {
                let converted: Result<Vec<_>, String> =
                    elements.iter().map(|e| e.to_expr()).collect();
                NetworkExpr::Series(converted?)
            }
            NetworkDocument::Phi { f, g } => NetworkExpr::Phi {
                f: Box::new(f.to_expr()?),
                g: Box::new(g.to_expr()?),
            },
        })
    }
}

/// Matrix value as nested `[re, im]` rows, for `eval` output.
pub fn value_to_doc(m: &ComplexMatrix) -> MatrixDoc {
    matrix_to_doc(m)
}
