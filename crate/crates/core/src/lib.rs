pub mod coeff;
pub mod cut;
pub mod error;
pub mod group;
pub mod series;
pub mod parse;
pub mod residue;
pub mod angular;
pub mod qq;
pub mod powerseries;
pub mod field;
pub mod char2;
pub mod json;
pub mod cli;
