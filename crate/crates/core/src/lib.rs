pub mod cayley;
pub mod cli;
pub mod loops;
pub mod mab;
pub mod report;
pub mod ring;
pub mod strategy;
pub mod triality;
