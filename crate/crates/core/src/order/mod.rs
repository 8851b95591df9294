//! Linear-order expressions: terms, parser, normalizer and the canonical
//! enumeration of their points.

mod expr;
mod normalize;
mod parse;
mod points;

pub use expr::OrderExpr;
pub use normalize::{expr_equal, normalize, normalize_with, NormalForm};
pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use points::{point_key, point_ranks, Dyadic, PointKey};
pub(crate) use points::cantor_unpair;
