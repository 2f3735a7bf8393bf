//! Exact engines, strategies and certificates for the point-picking game on
//! `[0, 1]` and its relatives, the Banach–Mazur and Choquet games.
//!
//! All arithmetic is exact: moves, set endpoints and certificate bounds are
//! [`Rational`]s. Infinite plays are truncated after finitely many rounds
//! and every claim about the limit is carried by a certificate that can be
//! re-checked from the trace alone.

pub mod certificate;
pub mod engine;
pub mod numeric;
pub mod related;
pub mod sets;
pub mod strategy;
pub mod trace;

pub use numeric::{compare, midpoint, ternary_digits, NumericError, Rational, TernaryExpansion};
pub use sets::{
    cantor_cover, CantorSet, CountableEnumeration, IntervalUnion, Lemma2Witness, NowhereDense, PointClass,
    SetDescription, SetError,
};
pub use certificate::{
    check_legality, convergence_report, exclusion_certificate, membership_certificate, CertificateError,
    CertificateReport,
};
pub use engine::{alpha_enclosure, new_game, play, GameState, Move, MoveError, PlayError, Player, Trace};
pub use strategy::{Strategy, StrategyError, StrategySpec};
pub use trace::AnyTrace;
