pub mod algebra;
pub mod error;
pub mod linear;
pub mod bar;
pub mod comodule;
pub mod connection;
pub mod polylog;
pub mod cycle_faces;
pub mod chains;
pub mod numeric;
pub mod periods;
pub mod hodge;
pub mod suite;
