//! Named figure recipes. Each is a list of configs with every parameter
//! spelled out; ranges the source figures do not print are chosen to span the
//! features their captions describe.

use std::path::{Path, PathBuf};

use super::config::parse_config_with;
use super::run::run_config;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Recipe {
    pub name: &'static str,
    pub description: &'static str,
}

const RECIPES: &[Recipe] = &[
    Recipe {
        name: "fig2",
        description: "log10 SNR over (N, d) for finesse 1e2..1e5 with noise floors, raw and normalized",
    },
    Recipe {
        name: "fig3",
        description: "accumulated curvature N*dR0 versus array size",
    },
    Recipe {
        name: "fig5",
        description: "static curvature profiles for single, uncoordinated and synchronized arrays",
    },
    Recipe {
        name: "fig6",
        description: "curvature SNR versus N at sigma_R = 1e-35",
    },
    Recipe {
        name: "fig8",
        description: "clock drift versus curvature at L = 1 mm, dt = 1 ms",
    },
    Recipe {
        name: "fig9",
        description: "strain versus curvature for L = 1 m and L = 10 m",
    },
    Recipe {
        name: "fig10",
        description: "clock drift versus curvature around the 1e-18 stability floor",
    },
    Recipe {
        name: "fig11",
        description: "normalized SNR over (N, d) with the unit contour through (1e3, 0.05 m)",
    },
    Recipe {
        name: "fig13",
        description: "retarded curvature of a 10-event chain (natural units) and its tracked dip",
    },
];

pub fn list_recipes() -> &'static [Recipe] {
    RECIPES
}

const HEAD: &str = "formats = [\"csv\", \"json\", \"gnuplot\"]\n";

fn log_axis(param: &str, min: &str, max: &str, n: usize) -> String {
    format!("\n[[sweep.axes]]\nparam = \"{param}\"\nmin = {min}\nmax = {max}\nn_points = {n}\nscale = \"log10\"\n")
}

fn snr_surface(name: &str, model: &str, finesse: &str) -> String {
    format!(
        r#"command = "snr-sweep"
{HEAD}
[sweep]
model = "{model}"
contour_levels = [1.0]
contour_scale = "log10"

[sweep.fixed]
finesse = {finesse}
squeeze = 1.5
rep_rate = 1e5
g_ent = 2.0
g_shape = 2.0
g_multi = 2.0
g_noise = 1.0
ref_n = 1e3
ref_d = 0.05

[sweep.noise]
detector_floor = 1e-4
technical_floor = 1e-3
gap_coeff = 1e-2
temperature = 300.0
mass = 1e-9
quality_factor = 1e6
{}{}
[metadata]
recipe = "{name}"
"#,
        log_axis("n_units", "1.0", "1e4", 101),
        log_axis("spacing", "1e-3", "1.0", 101),
    )
}

fn sweep_1d(name: &str, model: &str, fixed: &str, axis: String) -> String {
    format!(
        "command = \"snr-sweep\"\n{HEAD}\n[sweep]\nmodel = \"{model}\"\n\n[sweep.fixed]\n{fixed}\n{axis}\n[metadata]\nrecipe = \"{name}\"\n"
    )
}

/// `(stem, config text)` pairs for a recipe.
pub fn recipe_config(name: &str) -> Result<Vec<(String, String)>> {
    let one = |stem: &str, text: String| vec![(stem.to_string(), text)];
    Ok(match name {
        "fig2" => {
            let mut v = Vec::new();
            for f in ["1e2", "1e3", "1e4", "1e5"] {
                v.push((format!("fig2_snr_F{f}"), snr_surface(name, "snr-parametric", f)));
                v.push((
                    format!("fig2_snr_normalized_F{f}"),
                    snr_surface(name, "snr-normalized", f),
                ));
            }
            v
        }
        "fig3" => one(
            "fig3_delta_r",
            sweep_1d(
                name,
                "array-curvature",
                "delta_r0 = 1e-36",
                log_axis("n_units", "1.0", "1e4", 101),
            ),
        ),
        "fig5" => one("fig5_profiles", FIG5.to_string()),
        "fig6" => one(
            "fig6_snr",
            sweep_1d(
                name,
                "snr-curvature",
                "delta_r0 = 1e-36\nsigma_r = 1e-35",
                log_axis("n_units", "1.0", "1e4", 101),
            ),
        ),
        "fig8" => one(
            "fig8_clock_drift",
            sweep_1d(
                name,
                "clock-drift",
                "extent = 1e-3\nduration = 1e-3",
                log_axis("delta_r", "1e-14", "1e-2", 121),
            ),
        ),
        "fig9" => ["1.0", "10.0"]
            .iter()
            .map(|l| {
                (
                    format!("fig9_strain_L{}", l.trim_end_matches(".0")),
                    sweep_1d(
                        name,
                        "strain",
                        &format!("length = {l}"),
                        log_axis("delta_r", "1e-40", "1e-20", 101),
                    ),
                )
            })
            .collect(),
        "fig10" => one(
            "fig10_clock_drift",
            sweep_1d(
                name,
                "clock-drift",
                "extent = 1e-3\nduration = 1e-3",
                log_axis("delta_r", "1e-12", "1e-4", 161),
            ),
        ),
        "fig11" => one("fig11_snr_normalized", FIG11.to_string()),
        "fig13" => one("fig13_qix", FIG13.to_string()),
        other => {
            let known: Vec<&str> = RECIPES.iter().map(|r| r.name).collect();
            return Err(Error::invalid(
                "recipe",
                format!("unknown recipe `{other}` (known: {})", known.join(", ")),
            ));
        }
    })
}

/// Runs every config of a recipe into `out_dir/<name>/`.
pub fn run_recipe(name: &str, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let dir = out_dir.join(name);
    let mut written = Vec::new();
    for (stem, text) in recipe_config(name)? {
        let mut overrides = toml::Table::new();
        overrides.insert("output_dir".into(), dir.display().to_string().into());
        let parsed = parse_config_with(&text, &overrides)?;
        written.extend(run_config(&parsed, &stem, &toml::Table::new())?);
    }
    Ok(written)
}

// Per-unit energy density 1e-11 J/m^3. The synchronized array packs five
// narrow units inside one width; the uncoordinated one scatters five wide
// units over 0.5 m with a fixed placement seed.
const FIG5: &str = r#"command = "curvature-profile"
formats = ["csv", "json", "gnuplot"]

[profile]
x_min = -1.5
x_max = 1.5
n_x = 3001
t = 0.0
sign = "dip-negative"
calibration = 1.0

[[profile.arrays]]
label = "single"
architecture = "single-pair"
n_units = 1
epsilon = 1e-11
sigma = 0.1
tau = 1.0

[[profile.arrays]]
label = "uncoordinated"
architecture = "uncoordinated"
n_units = 5
spacing = 0.5
epsilon = 1e-11
sigma = 0.1
tau = 1.0
seed = 7

[[profile.arrays]]
label = "synchronized"
architecture = "synchronized"
n_units = 5
spacing = 0.005
epsilon = 1e-11
sigma = 0.05
tau = 1.0

[metadata]
recipe = "fig5"
"#;

const FIG11: &str = r#"command = "snr-sweep"
formats = ["csv", "json", "gnuplot"]

[sweep]
model = "snr-normalized"
contour_levels = [1.0]
contour_scale = "log10"

[sweep.fixed]
squeeze = 1.5
finesse = 1e4
rep_rate = 1e5
g_ent = 10.0
g_shape = 5.0
g_multi = 3.0
g_noise = 1.0
ref_n = 1e3
ref_d = 0.05

[[sweep.axes]]
param = "n_units"
min = 1.0
max = 1e4
n_points = 101
scale = "log10"

[[sweep.axes]]
param = "spacing"
min = 1e-3
max = 1.0
n_points = 101
scale = "log10"

[metadata]
recipe = "fig11"
"#;

const FIG13: &str = r#"command = "qix-sim"
units = "natural"
formats = ["csv", "json", "gnuplot"]

[qix]
mode = "chain"
n_events = 10
spacing = 1.0
sigma = 0.5
gate_interval = 0.375
epsilon = 1.0
sign = "dip-negative"
n_x = 512
n_t = 512

[metadata]
recipe = "fig13"
"#;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_config_str;

    #[test]
    fn every_recipe_parses() {
        for r in list_recipes() {
            for (stem, text) in recipe_config(r.name).unwrap() {
                parse_config_str(&text).unwrap_or_else(|e| panic!("{stem}: {e}"));
            }
        }
        assert!(recipe_config("fig99").is_err());
    }
}
