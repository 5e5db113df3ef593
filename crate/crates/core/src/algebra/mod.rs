//! Integral group rings of `PSL2(Z)` and `PSL2(Z)^2`, the ideals of interest and
//! certificates relating them.

mod element;
mod ideals;
mod identities;

pub use element::GroupAlgebraElement;
pub use ideals::Ideal;
pub use identities::{check_identities, identities, Identity, IdentityCheck};
