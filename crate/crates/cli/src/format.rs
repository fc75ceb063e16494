//! JSON file formats for matrices, ensembles and joint states.
//!
//! Complex entries are `[re, im]` pairs in row-major order. Floats are
//! written in shortest round-trip form and parsed exactly, so a write/read
//! cycle reproduces every finite double bit for bit.

use std::fs;
use std::path::Path;

use inducedmap_core::states::SeparableEnsemble;
use inducedmap_core::{ComplexMatrix, C64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        let data = self.data.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }
}

impl From<&ComplexMatrix> for MatrixFile {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub p: f64,
    #[serde(rename = "rhoA")]
    pub rho_a: MatrixFile,
    #[serde(rename = "rhoE")]
    pub rho_e: MatrixFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleFile {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    pub terms: Vec<TermFile>,
}

impl EnsembleFile {
    pub fn to_ensemble(&self) -> Result<SeparableEnsemble, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.p, t.rho_a.to_matrix()?, t.rho_e.to_matrix()?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(SeparableEnsemble::from_matrices(self.dim_a, self.dim_e, terms)?)
    }
}

impl From<&SeparableEnsemble> for EnsembleFile {
    fn from(e: &SeparableEnsemble) -> Self {
        Self {
            dim_a: e.dim_a(),
            dim_e: e.dim_e(),
            terms: e
                .terms()
                .iter()
                .map(|t| TermFile {
                    p: t.p,
                    rho_a: t.rho_a.matrix().into(),
                    rho_e: t.rho_e.matrix().into(),
                })
                .collect(),
        }
    }
}

/// A joint density matrix given directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointStateFile {
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimE")]
    pub dim_e: usize,
    pub rho: MatrixFile,
}

/// Initial state: either a separable ensemble or a joint density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Ensemble(EnsembleFile),
    Joint(JointStateFile),
}

/// A loaded initial state, with the ensemble kept when one was supplied.
#[derive(Debug, Clone)]
pub struct JointState {
    pub dim_a: usize,
    pub dim_e: usize,
    pub rho: ComplexMatrix,
    pub ensemble: Option<SeparableEnsemble>,
}

impl StateFile {
    pub fn load(&self) -> Result<JointState, CliError> {
        match self {
            StateFile::Ensemble(f) => {
                let e = f.to_ensemble()?;
                Ok(JointState {
                    dim_a: e.dim_a(),
                    dim_e: e.dim_e(),
                    rho: inducedmap_core::states::assemble(&e),
                    ensemble: Some(e),
                })
            }
            StateFile::Joint(f) => Ok(JointState {
                dim_a: f.dim_a,
                dim_e: f.dim_e,
                rho: f.rho.to_matrix()?,
                ensemble: None,
            }),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = to_json(value);
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
