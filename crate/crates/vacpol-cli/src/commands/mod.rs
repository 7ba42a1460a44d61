pub mod lab;
pub mod shift;
pub mod spectrum;
pub mod uehling;
pub mod verify;
