//! Snake graph expansions of cluster variables attached to height functions
//! on `A_n`, with the matching Hernandez-Leclerc q-characters.

pub mod algebra;
pub mod expansion;
pub mod gamma;
pub mod hl;
pub mod oracle;
pub mod qchar;
pub mod quiver;
pub mod snake;
