pub mod cover;
pub mod cycles;
pub mod discharging;
pub mod dp;
pub mod embedding;
pub mod gadget;
pub mod graph;
pub mod io;
pub mod planarity;
pub mod reducibility;
