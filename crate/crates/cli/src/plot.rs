//! Two-column plot data with a log-log least-squares line.

use qubitize::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogLogFit {
    /// Exponent of the power law.
    pub slope: f64,
    /// Natural log of the prefactor.
    pub intercept: f64,
}

impl LogLogFit {
    pub fn eval(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

/// Ordinary least squares of `ln y` on `ln x`.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<LogLogFit> {
    if points.len() < 2 {
        return Err(Error::Invalid(format!("a fit needs at least 2 points, got {}", points.len())));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::Domain("log-log fit needs positive data".into()));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::Domain("all x values coincide".into()));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok(LogLogFit { slope, intercept: my - slope * mx })
}

/// CSV with columns `x_name, y_name, fit`, preceded by `#` lines giving
/// the fit parameters and `header` lines.
pub fn emit_plot_data(x_name: &str, y_name: &str, points: &[(f64, f64)], header: &[String]) -> Result<(String, LogLogFit)> {
    let fit = fit_loglog(points)?;
    let mut s = String::new();
    for h in header {
        s.push_str(&format!("# {h}\n"));
    }
    s.push_str(&format!("# fit: ln({y_name}) = {:.6} + {:.6} ln({x_name})\n", fit.intercept, fit.slope));
    s.push_str(&format!("{x_name},{y_name},fit\n"));
    for &(x, y) in points {
        s.push_str(&format!("{x},{y:.10e},{:.10e}\n", fit.eval(x)));
    }
    Ok((s, fit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = [2.0, 5.0, 11.0].iter().map(|&x| (x, 3.0 * f64::powf(x, 1.7))).collect();
        let f = fit_loglog(&pts).unwrap();
        assert!((f.slope - 1.7).abs() < 1e-12);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-12);
        let (csv, _) = emit_plot_data("N", "lambda", &pts, &[]).unwrap();
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn too_few_points() {
        assert!(fit_loglog(&[(1.0, 1.0)]).is_err());
        assert!(emit_plot_data("x", "y", &[], &[]).is_err());
        assert!(fit_loglog(&[(2.0, 1.0), (2.0, 3.0)]).is_err());
    }
}
