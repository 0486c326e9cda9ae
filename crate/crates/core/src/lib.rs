//! Small cancellation presentations: condition checking, geodesic words,
//! conjugacy classes, translation numbers and roots.

pub mod cancel;
pub mod conjtrans;
pub mod geodesic;
pub mod oracle;
pub mod presentation;
pub mod symmetrized;
pub mod word;

pub use cancel::{check_conditions, Bound, Classification, ConditionReport};
pub use conjtrans::{ClassRep, ConjError, Context, HalfInteger, RootAnswer, Settings};
pub use geodesic::{GeodesicDfa, Geometry, GeometryError, GeometryKind, GrowthCount, StripCertificate};
pub use oracle::{EqVerdict, ModelKind, Oracle, OracleError};
pub use presentation::{parse_presentation, ParseError, Presentation};
pub use symmetrized::SymmetrizedSet;
pub use word::{Generator, Letter, Word, WordError};
