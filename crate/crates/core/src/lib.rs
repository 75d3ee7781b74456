pub mod cohomology;
pub mod error;
pub mod expr;
pub mod form;
pub mod geometry;
pub mod integration;
pub mod io;
pub mod map;
pub mod poincare;
pub mod rational;
pub mod tensor;

pub use error::{Error, Result};
pub use expr::{Expr, ExprError, Func, ScalarExpr, VarNames};
pub use form::{canonicalize, DifferentialForm, MultiIndex, VectorFieldSym};
pub use rational::Rational;
pub use map::SmoothMap;
pub use integration::{Cell, Chain, Param, PointChain, QuadratureSpec};
