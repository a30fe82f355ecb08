//! Exact classical and robust parameters for small graphs.
//!
//! Every solver returns a [`ParameterResult`] whose certificate can be
//! re-checked by [`verify::verify`] without trusting the solver.

pub mod canonical;
pub mod classical;
pub mod explore;
pub mod filters;
pub mod oracle;
mod partition;
pub mod robust;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::selection::SSelection;

pub use classical::classical_parameter;
pub use robust::{iota, robust_chromatic, robust_parameter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameter {
    Chi,
    Omega,
    Alpha,
    Theta,
    ChiPrime,
    Arboricity,
    Degeneracy,
    ChiS,
    OmegaS,
    AlphaS,
    ThetaS,
    ChiPrimeS,
    Iota,
}

impl Parameter {
    pub fn name(self) -> &'static str {
        match self {
            Parameter::Chi => "chi",
            Parameter::Omega => "omega",
            Parameter::Alpha => "alpha",
            Parameter::Theta => "theta",
            Parameter::ChiPrime => "chi_prime",
            Parameter::Arboricity => "arboricity",
            Parameter::Degeneracy => "degeneracy",
            Parameter::ChiS => "chi_s",
            Parameter::OmegaS => "omega_s",
            Parameter::AlphaS => "alpha_s",
            Parameter::ThetaS => "theta_s",
            Parameter::ChiPrimeS => "chi_prime_s",
            Parameter::Iota => "iota",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The five parameters that have robust versions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Robust {
    Chi,
    Omega,
    Alpha,
    Theta,
    ChiPrime,
}

impl Robust {
    pub const ALL: [Robust; 5] = [
        Robust::Chi,
        Robust::Omega,
        Robust::Alpha,
        Robust::Theta,
        Robust::ChiPrime,
    ];

    pub fn parameter(self) -> Parameter {
        match self {
            Robust::Chi => Parameter::ChiS,
            Robust::Omega => Parameter::OmegaS,
            Robust::Alpha => Parameter::AlphaS,
            Robust::Theta => Parameter::ThetaS,
            Robust::ChiPrime => Parameter::ChiPrimeS,
        }
    }

    pub fn classical(self) -> Parameter {
        match self {
            Robust::Chi => Parameter::Chi,
            Robust::Omega => Parameter::Omega,
            Robust::Alpha => Parameter::Alpha,
            Robust::Theta => Parameter::Theta,
            Robust::ChiPrime => Parameter::ChiPrime,
        }
    }

    /// Minimized over removed graphs (as opposed to maximized).
    pub fn minimizes(self) -> bool {
        matches!(self, Robust::Chi | Robust::Omega | Robust::ChiPrime)
    }
}

/// How a robust parameter is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Every removable set, evaluated with the brute-force routines in
    /// [`oracle`].
    Oracle,
    /// Inclusion-maximal removable sets, evaluated with the exact classical
    /// solvers. Valid because each objective is monotone in the removed set.
    Maximal,
    /// Parameter-specific branch and bound.
    Solver,
}

/// Size limits; every solver refuses inputs above its cap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub chi: usize,
    pub theta: usize,
    pub arboricity: usize,
    pub omega: usize,
    pub alpha: usize,
    pub chi_prime: usize,
    pub robust_chi: usize,
    pub robust: usize,
    pub iota: usize,
    pub oracle_edges: usize,
    pub maximal_edges: usize,
    pub canonical: usize,
    pub explore: usize,
    pub dp_width: usize,
    pub gadget_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            chi: 16,
            theta: 16,
            arboricity: 16,
            omega: 20,
            alpha: 20,
            chi_prime: 16,
            robust_chi: 16,
            robust: 12,
            iota: 20,
            oracle_edges: 18,
            maximal_edges: 24,
            canonical: 10,
            explore: 7,
            dp_width: 6,
            gadget_order: crate::graph::generators::DEFAULT_GADGET_ORDER_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    /// Wall time; left out of JSON unless requested so reports stay
    /// byte-identical between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Machine-checkable evidence for a computed value. Selections describe the
/// removed edge set (empty for classical parameters).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Proper coloring of `G - F`; `colors[v] < value`.
    Coloring {
        selection: SSelection,
        colors: Vec<usize>,
    },
    /// A clique of `G - F`; the verifier also recomputes `ω(G - F)`.
    Clique {
        selection: SSelection,
        clique: Vec<usize>,
    },
    IndependentSet {
        selection: SSelection,
        set: Vec<usize>,
    },
    /// Partition of `G - F` into cliques; the verifier recomputes `θ(G - F)`.
    CliqueCover {
        selection: SSelection,
        classes: Vec<Vec<usize>>,
    },
    /// Color per edge of `G` in edge order, `None` for removed edges.
    EdgeColoring {
        selection: SSelection,
        colors: Vec<Option<usize>>,
    },
    /// Class index per vertex; each class induces a forest.
    ForestPartition { classes: Vec<usize> },
    /// Elimination order with at most `value` earlier neighbours per vertex,
    /// plus a vertex set whose induced minimum degree is `value`.
    Ordering { order: Vec<usize>, core: Vec<usize> },
    /// A vertex set inducing a quasi-unicyclic subgraph.
    InducingSet { set: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterResult {
    pub parameter: Parameter,
    pub s: usize,
    pub value: usize,
    pub certificate: Certificate,
    pub stats: Stats,
}

/// Parameter names accepted on the command line: classical names, the
/// robust names with an `_s` suffix, and the `1`-suffixed shorthands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamRequest {
    Classical(Parameter),
    Robust(Robust),
    Iota,
}

impl FromStr for ParamRequest {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use ParamRequest::*;
        Ok(match s.trim() {
            "chi" => Classical(Parameter::Chi),
            "omega" => Classical(Parameter::Omega),
            "alpha" => Classical(Parameter::Alpha),
            "theta" => Classical(Parameter::Theta),
            "chiprime" | "chi_prime" => Classical(Parameter::ChiPrime),
            "arboricity" => Classical(Parameter::Arboricity),
            "degeneracy" => Classical(Parameter::Degeneracy),
            "chi1" | "chi_s" => Robust(self::Robust::Chi),
            "omega1" | "omega_s" => Robust(self::Robust::Omega),
            "alpha1" | "alpha_s" => Robust(self::Robust::Alpha),
            "theta1" | "theta_s" => Robust(self::Robust::Theta),
            "chi1prime" | "chi_prime1" | "chi_prime_s" => Robust(self::Robust::ChiPrime),
            "iota" => Iota,
            other => {
                return Err(Error::InvalidArgument(format!("unknown parameter '{other}'")))
            }
        })
    }
}

/// Convenience: value of a robust parameter with the default solver.
pub fn robust_value(g: &Graph, which: Robust, s: usize) -> Result<usize> {
    Ok(robust_parameter(g, which, s, Tier::Solver, &Caps::default())?.value)
}

/// Convenience: value of a classical parameter.
pub fn classical_value(g: &Graph, which: Parameter) -> Result<usize> {
    Ok(classical_parameter(g, which, &Caps::default())?.value)
}
