use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// T cost of synthesizing one arbitrary single-qubit rotation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum RotationCost {
    /// `ceil(slope * log2(1/eps)) + offset`
    Linear { slope: f64, offset: usize },
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostModel {
    pub rotation: RotationCost,
    pub toffoli_t_cost: usize,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel { rotation: RotationCost::Linear { slope: 1.15, offset: 9 }, toffoli_t_cost: 4 }
    }
}

impl CostModel {
    pub fn t_per_rotation(&self, eps_synth: f64) -> Result<usize> {
        if !(eps_synth > 0.0 && eps_synth < 1.0) {
            return Err(Error::Domain(format!("synthesis error {eps_synth} outside (0, 1)")));
        }
        Ok(match self.rotation {
            RotationCost::Linear { slope, offset } => (slope * (1.0 / eps_synth).log2()).ceil() as usize + offset,
            RotationCost::Fixed(n) => n,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_model() {
        let m = CostModel::default();
        assert_eq!(m.t_per_rotation(1e-6).unwrap(), 23 + 9);
        assert!(m.t_per_rotation(0.0).is_err());
        assert!(m.t_per_rotation(1.0).is_err());
    }

    #[test]
    fn monotone_in_eps() {
        let m = CostModel::default();
        let mut prev = 0;
        for k in 1..200 {
            let n = m.t_per_rotation(0.9 * 0.93f64.powi(k)).unwrap();
            assert!(n >= prev);
            prev = n;
        }
    }
}
