pub mod catalog;
pub mod classify;
pub mod code;
pub mod error;
pub mod factor;
mod linalg;
pub mod loops;
pub mod report;
