pub mod attach;
pub mod cache;
pub mod compose;
pub mod document;
pub mod doubling;
pub mod error;
mod grid;
pub mod model;
pub mod oracle;
pub mod path;
pub mod search;
pub mod short_legs;
