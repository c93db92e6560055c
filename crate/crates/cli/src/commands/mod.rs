//! One module per subcommand family.

pub mod boost;
pub mod bundle;
pub mod dec;
pub mod forms;
pub mod gauge;
pub mod verify;
