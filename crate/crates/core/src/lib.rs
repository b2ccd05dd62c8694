pub mod cli;
pub mod field;
pub mod kamhn;
pub mod modp;
pub mod newton;
pub mod nullcert;
pub mod poly;
pub mod primes;
pub mod report;
