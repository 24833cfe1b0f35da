pub mod credal;
pub mod desir;
pub mod document;
pub mod error;
pub mod lp;
pub mod preference;
pub mod prevision;
pub mod products;
pub mod rat;
pub mod runner;
pub mod space;
