//! Figure rendering for the `hagge` command-line tool.

pub mod figure;

pub use figure::{fmt_num, render_scene, Figure, FigureOptions, StrokeStyle, StyleTable};
