//! Configuration files, data emission, command execution and figure recipes.

mod config;
mod emit;
mod recipes;
mod run;

pub use config::{
    parse_config, parse_config_str, parse_config_with, ArraySection, ClockSection, Command, GatedSection,
    InterferenceSection, InterferometerSection, NoiseSection, ObservablesSection, ParsedConfig, ProfileSection,
    QixMode, QixSection, RunConfig, SweepSection,
};
pub use emit::{
    emit, fmt_num, nonuniform_matrix, Artifact, AxisInfo, Column, ColumnData, Format, Matrix, Output, Table,
};
pub use recipes::{list_recipes, recipe_config, run_recipe, Recipe};
pub use run::{compute, fwhm, run_config, sidecar};
