pub mod bounds;
pub mod color;
pub mod gen;
pub mod oracle;
pub mod simulate;
pub mod strong;
