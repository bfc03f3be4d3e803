pub mod derive;
pub mod numcheck;
pub mod verify;
