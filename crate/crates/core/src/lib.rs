//! Exact construction and certification of E-cospectral uniform hypergraphs.

pub mod combinatorics;
pub mod hypergraph;
pub mod numbers;
pub mod tensor;
pub mod catalog;
pub mod bkq;
pub mod fixtures;
pub mod switch;
pub mod regularity;
pub mod echar;

/// Any error the library reports, tagged by the module it came from.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Number(#[from] numbers::NumberError),
    #[error(transparent)]
    Hypergraph(#[from] hypergraph::HypergraphError),
    #[error(transparent)]
    Tensor(#[from] tensor::TensorError),
    #[error(transparent)]
    Certify(#[from] tensor::CertifyError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Bkq(#[from] bkq::BkqError),
    #[error(transparent)]
    Switch(#[from] switch::SwitchError),
    #[error(transparent)]
    Regularity(#[from] regularity::RegularityError),
    #[error(transparent)]
    Echar(#[from] echar::EcharError),
}

impl Error {
    /// Short machine-readable name of the failing area.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Number(_) => "number",
            Error::Hypergraph(_) => "hypergraph",
            Error::Tensor(_) => "tensor",
            Error::Certify(_) => "certify",
            Error::Catalog(_) => "catalog",
            Error::Bkq(_) => "bkq",
            Error::Switch(_) => "switch",
            Error::Regularity(_) => "regularity",
            Error::Echar(_) => "echar",
        }
    }
}
