pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod coeff;
pub mod cyclic;
pub mod deform;
pub mod exactlin;
pub mod hochschild;
pub mod period;

#[cfg(test)]
mod testutil;
