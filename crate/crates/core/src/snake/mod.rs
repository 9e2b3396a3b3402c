//! Snake graphs of intervals of `Q_ξ`: layout, labels, sign function,
//! zigzag decomposition and perfect matchings.

mod graph;
mod render;
mod sign;

pub use graph::{all_tiles, build_snake_graph, side, Edge, Matching, Point, Side, SnakeGraph, Step};
pub use render::{render_ascii, render_svg, render_tikz};
pub use sign::{numerator, sign_function, zigzag_parts, SignData};
