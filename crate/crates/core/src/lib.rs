pub mod exact;
pub mod catalog;
pub mod cli;
pub mod dsl;
pub mod oracle;
pub mod special;
