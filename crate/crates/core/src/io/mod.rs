pub mod airland; pub mod config; pub mod report; pub mod rh_panel; pub mod tsplib;
