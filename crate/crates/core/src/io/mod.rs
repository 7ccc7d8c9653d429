//! Text input and output: the parser, transcripts and the command line.

pub mod parse;
pub mod transcript;
pub mod cli;
