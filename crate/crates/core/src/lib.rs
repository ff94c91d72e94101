pub mod symfield;
pub mod dynsys;
pub mod weyl;
pub mod ladder;
pub mod resolve;
pub mod numint;
pub mod cli;
