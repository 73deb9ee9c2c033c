pub mod action;
pub mod catalog;
pub mod cmodule;
pub mod group;
pub mod h2;
pub mod h3;
pub mod oracle;
pub mod xmod;
