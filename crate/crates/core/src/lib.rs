pub mod catalog;
pub mod derivations;
pub mod enumeration;
pub mod error;
pub mod group;
pub mod invariants;
pub mod isoclinism;
pub mod report;
pub mod xmod;
