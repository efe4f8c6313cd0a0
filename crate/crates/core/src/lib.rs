pub mod cli;
pub mod config;
pub mod metadata;
pub mod nanopub;
pub mod package;
pub mod rdf;
pub mod server;
pub mod sitegen;
pub mod vocab;
