//! Exact verification of Rota-Baxter (co/bi)systems, coassociative
//! Yang-Baxter pairs and covariant bialgebras.
//!
//! Structures are given by structure constants over the rational-function
//! field ℚ(p₁,…,pₖ); every identity is checked as an exact tensor equation,
//! so a verdict holds for all parameter values at once.
//!
//! Index conventions (all 0-based, outputs before inputs):
//!
//! | object            | tensor            | meaning                                  |
//! |-------------------|-------------------|------------------------------------------|
//! | multiplication μ  | `[k][i][j]`       | coefficient of e_k in e_i·e_j            |
//! | comultiplication Δ| `[j][k][i]`       | coefficient of e_j⊗e_k in Δ(e_i)         |
//! | linear operator   | `[i][j]`          | coefficient of e_i in Op(e_j)            |
//! | bilinear form     | `[i][j]`          | σ(e_i, e_j)                              |
//! | unit / counit     | `[i]`             | coefficient of e_i in 1 / ε(e_i)         |
//! | map C⊗C → C       | `[k][i][j]`       | same layout as μ                         |

pub mod checks;
pub mod corpus;
pub mod error;
pub mod format;
pub mod linalg;
pub mod report;
pub mod rota_baxter;
pub mod scalar;
pub mod structures;
pub mod yang_baxter;

pub use error::{Error, Result};
pub use linalg::{einsum, Tensor};
pub use report::CheckReport;
pub use scalar::{ParamRing, Scalar};
