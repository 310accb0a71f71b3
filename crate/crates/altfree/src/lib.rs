//! File formats, named corpus, wall-clock solving and the command-line
//! front end for `altfree-core`.

pub mod cli;
pub mod clock;
pub mod corpus;
pub mod format;
