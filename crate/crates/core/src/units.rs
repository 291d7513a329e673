/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10·log10(x)`; zero maps to `-inf`.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
