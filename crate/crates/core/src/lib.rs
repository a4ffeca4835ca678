pub mod algebra;
pub mod analysis;
pub mod closure;
pub mod oracle;
pub mod padic;
pub mod quintic;
pub mod series;
mod serde_util;
