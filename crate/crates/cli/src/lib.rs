//! Library surface of the command-line front end: the JSON document
//! formats and name-table conversions, reusable by tests and other tools.

pub mod docs;
