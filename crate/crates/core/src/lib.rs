pub mod exact;
pub mod formulas;
pub mod mzv;
pub mod oracle;
pub mod report;
pub mod selftest;
pub mod series;
