//! Exact calculators for the cobordism-like modules attached to generic maps
//! into one-dimensional targets.
//!
//! A map from a closed manifold to the line or the circle with finitely many
//! singular values is modeled by its labeled Reeb graph: vertices sit at
//! singular values, edges carry the diffeomorphism classes of the regular
//! fiber components that sweep between them. From that combinatorial object
//! the crate computes, over `Z`, `Z/p` and `Q`:
//!
//! * the module of fiber classes together with its canonical submodule
//!   (outer part plus the span of the vertex relations), see [`ccmod`];
//! * quotient presentations via Smith normal form, membership certificates
//!   and first graph homology, see [`exactlin`] and [`reeb`];
//! * product graphs for pairs of maps (bundle case and the two-vertex
//!   cyclic-gadget case) plus the strand surgery used to make them
//!   connected, see [`product`];
//! * structural verdicts: label coverage and two-sided span equality for
//!   products, well-definedness and surjectivity of the induced pairing on
//!   quotients, and the homology lower bound forced by a surviving fiber
//!   class, see [`verify`].
//!
//! Everything is exact: coefficients are arbitrary-precision integers or
//! rationals, heights are rationals, and every derived certificate (Smith
//! transforms, membership witnesses) is re-verified by substitution.
//!
//! The `examples/` directory is the front door; each program there is a
//! self-contained tour of one capability:
//!
//! ```text
//! cargo run --example fig2_module      # fiber module and Z/2 quotient of a surface bundle map
//! cargo run --example homology_bound   # graph homology and the surviving-class implication
//! cargo run --example bundle_product   # product with a circle bundle (label-wise case)
//! cargo run --example gadget_product   # general product via cyclic gadgets, fully verified
//! cargo run --example induced_pairing  # the bilinear pairing on quotient modules
//! cargo run --example rewrite_rules    # identifying product labels with rewrite rules
//! cargo run --example random_survey    # seeded random graphs and their invariants
//! ```
//!
//! A thin command-line binary (`reebmod`) exposes the same operations over
//! a small text file format; see the crate README for the grammar.

pub mod ccmod;
pub mod exactlin;
pub mod fixtures;
pub mod format;
pub mod product;
pub mod reeb;
pub mod report;
pub mod symbols;
pub mod verify;

use thiserror::Error;

/// Crate-wide error type. Validation problems carry the full diagnostic
/// list so callers can print every finding, not just the first.
#[derive(Debug, Error)]
pub enum Error {
    #[error("atom `{0}` is already declared")]
    DuplicateAtom(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom `{name}` has dimension {dim}; fiber atoms must have dimension >= 1")]
    BadDimension { name: String, dim: i64 },
    #[error("rewrite rule `{0}` changes total dimension")]
    RuleDimensionMismatch(String),
    #[error("rewrite rule `{0}` changes orientability")]
    RuleOrientabilityMismatch(String),
    #[error("rewriting did not terminate within {0} steps")]
    NonTerminatingRules(usize),
    #[error("reverse partner `{partner}` of atom `{name}` is invalid: {reason}")]
    BadReversePartner {
        name: String,
        partner: String,
        reason: String,
    },
    #[error("symbol tables disagree on atom `{0}`")]
    AtomClash(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("{0} is a singular value; pick a regular height")]
    NotRegularValue(String),
    #[error("height {0} is outside [0, 1); circle heights live on the unit circle")]
    HeightOutsideCircle(String),
    #[error("graph is invalid:\n{}", crate::reeb::render_diagnostics(.0))]
    Validation(Vec<reeb::Diagnostic>),
    #[error("universe is missing fiber label `{0}`")]
    UniverseMissingLabel(String),
    #[error("universe class `{class}` has dimension {dim}, expected {expected}")]
    UniverseDimensionMismatch {
        class: String,
        dim: u32,
        expected: u32,
    },
    #[error("oriented module requested but atom `{0}` is not oriented")]
    MixedOrientation(String),
    #[error("element mentions `{0}` which is outside the chosen basis")]
    RelationOffBasis(String),
    #[error("coefficient {0} is not an integer; this operation runs over Z")]
    NonIntegralCoefficient(String),
    #[error("{0} is not prime; modular coefficients need a prime modulus")]
    NotPrime(u64),
    #[error("edges `{0}` and `{1}` carry different labels; strand surgery needs equal labels")]
    LabelMismatch(String, String),
    #[error("cannot swap an edge with itself")]
    SwapSameEdge,
    #[error("strand surgery needs edges with two vertex endpoints, `{0}` is a vertexless cycle")]
    SwapCyclicEdge(String),
    #[error("swapping `{0}` and `{1}` would run an edge downhill; on the line the two height intervals must overlap")]
    SwapHeightOrder(String, String),
    #[error("component containing `{0}` shares no edge label with the rest; cannot connect")]
    IsolatedComponent(String),
    #[error("no label-matching surgery can merge the component containing `{0}` without splitting another")]
    UnconnectableComponent(String),
    #[error("graph `{0}` has no vertex with a nonzero relation and is not a bundle; no product case applies")]
    NoUsableCase(String),
    #[error("graph `{0}` is bundle-like but its regular level is not a single fiber strand")]
    AmbiguousBundleFiber(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("random graph parameters out of range: {0}")]
    BadRandomParams(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
