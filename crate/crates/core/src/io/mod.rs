//! Game files, reports and plots.

pub mod game_file;
pub mod report;
pub mod svg;

pub use game_file::{parse_game, parse_game_str, render, serialize_game};
pub use svg::{plot_svg, PlotSpec};
