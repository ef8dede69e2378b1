//! WebAssembly entry points for the static demo page in `www/`.
//!
//! Every export returns a flat `Float64Array` of interleaved columns so the
//! page can plot without any glue beyond `wasm-bindgen`.

use std::f64::consts::PI;

use hypersingular::charsolve::{solve_characteristic, CharacteristicProblem};
use hypersingular::cowin::{porosity_sweep, solve_crack, MaterialParams};
use hypersingular::quadrature::OscIntSpec;
use hypersingular::{Error, Grid, Interval};
use wasm_bindgen::prelude::*;

/// Lamé constants and load shared by the crack exports.
const LAMBDA: f64 = 1.0;
const MU: f64 = 1.0;
const SIGMA0: f64 = 1.0;

fn base_material() -> Result<MaterialParams, Error> {
    MaterialParams::new(LAMBDA, MU, 1.0, 0.0, 1.0, SIGMA0)
}

/// `[x, g, exact]` triples for the characteristic equation with
/// `f' = -pi` on (-1, 1), solved by collocation with `n` cells.
pub fn characteristic_rows(n: usize) -> Result<Vec<f64>, Error> {
    let iv = Interval::symmetric(1.0)?;
    let p = CharacteristicProblem::new(iv, |_| -PI);
    let g = solve_characteristic(&p, &Grid::new(iv, n)?)?;
    Ok(g.points().flat_map(|(x, v)| [x, v, (1.0 - x * x).sqrt()]).collect())
}

/// `[x, opening]` pairs for a unit crack at porosity `porosity`.
pub fn crack_rows(porosity: f64, n: usize) -> Result<Vec<f64>, Error> {
    let params = base_material()?.with_porosity(porosity)?;
    let sol = solve_crack(&params, 1.0, n, &OscIntSpec::default())?;
    Ok(sol.opening.points().flat_map(|(x, w)| [x, w]).collect())
}

/// `[N, opening0, tip_coeff]` triples on `count` porosity values in `[0, max)`.
pub fn sweep_rows(max: f64, count: usize, n: usize) -> Result<Vec<f64>, Error> {
    if count == 0 || !(0.0..1.0).contains(&max) {
        return Err(Error::InvalidArgument(format!("need count > 0 and 0 <= max < 1, got {count}, {max}")));
    }
    let values: Vec<f64> = (0..count).map(|i| max * i as f64 / count as f64).collect();
    let rows = porosity_sweep(&base_material()?, &values, 1.0, n, &OscIntSpec::default())?;
    Ok(rows.iter().flat_map(|r| [r.n, r.opening0, r.tip_coeff]).collect())
}

fn to_js(r: Result<Vec<f64>, Error>) -> Result<Vec<f64>, JsValue> {
    r.map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen]
pub fn characteristic_profile(n: usize) -> Result<Vec<f64>, JsValue> {
    to_js(characteristic_rows(n))
}

#[wasm_bindgen]
pub fn crack_profile(porosity: f64, n: usize) -> Result<Vec<f64>, JsValue> {
    to_js(crack_rows(porosity, n))
}

#[wasm_bindgen]
pub fn porosity_curve(max: f64, count: usize, n: usize) -> Result<Vec<f64>, JsValue> {
    to_js(sweep_rows(max, count, n))
}
