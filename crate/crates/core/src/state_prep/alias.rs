//! Integer alias tables for coherent sampling.

use std::collections::VecDeque;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Keep-precision from the tolerated energy error:
/// `ceil(log2(2 sqrt2 lambda / dE) + log2(1 + dE^2 / (8 lambda^2)) - log2(1 - |H|^2 / lambda^2))`.
pub fn compute_mu<T: Real>(lambda: T, delta_e: T, norm_bound: T) -> Result<u32> {
    if !(delta_e > T::zero()) || delta_e > lambda {
        return Err(Error::Domain(format!("need 0 < dE <= lambda, got dE={delta_e}, lambda={lambda}")));
    }
    if norm_bound < T::zero() || norm_bound >= lambda {
        return Err(Error::Domain(format!("norm bound {norm_bound} must lie in [0, lambda={lambda})")));
    }
    let two = T::lit(2.0);
    let x = (two * T::SQRT_2() * lambda / delta_e).log2() + (T::one() + delta_e * delta_e / (T::lit(8.0) * lambda * lambda)).log2()
        - (T::one() - (norm_bound / lambda).powi(2)).log2();
    Ok(x.ceil().to_u32().expect("mu fits u32"))
}

/// Weights rounded to integers summing to `2^mu * L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscretizedDistribution {
    pub mu: u32,
    pub targets: Vec<u64>,
}

impl DiscretizedDistribution {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn total(&self) -> u64 {
        (1u64 << self.mu) * self.targets.len() as u64
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let t = self.total() as f64;
        self.targets.iter().map(|&x| x as f64 / t).collect()
    }
}

/// Largest-remainder rounding of `2^mu L w_l / sum(w)`; ties go to the lower index.
pub fn discretize<T: Real>(weights: &[T], mu: u32) -> Result<DiscretizedDistribution> {
    if weights.is_empty() {
        return invalid("no weights");
    }
    if mu > 40 {
        return invalid(format!("mu = {mu} is unreasonably large"));
    }
    if weights.iter().any(|w| !(*w >= T::zero()) || !w.is_finite()) {
        return invalid("weights must be finite and non-negative");
    }
    let sum = weights.iter().fold(T::zero(), |a, &b| a + b);
    if sum <= T::zero() {
        return invalid("all weights are zero");
    }
    let total = (1u64 << mu) * weights.len() as u64;
    let scale = T::from_u64(total).expect("total fits") / sum;
    let mut targets = Vec::with_capacity(weights.len());
    let mut rems = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let raw = w * scale;
        let fl = raw.floor();
        targets.push(fl.to_u64().expect("target fits"));
        rems.push((raw - fl, i));
    }
    let assigned: u64 = targets.iter().sum();
    let mut short = total.saturating_sub(assigned) as usize;
    rems.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite").then(a.1.cmp(&b.1)));
    for &(_, i) in rems.iter().cycle() {
        if short == 0 {
            break;
        }
        targets[i] += 1;
        short -= 1;
    }
    // floating rounding can overshoot by a unit in extreme cases
    let mut over = targets.iter().sum::<u64>().saturating_sub(total);
    for &(_, i) in rems.iter().rev() {
        if over == 0 {
            break;
        }
        if targets[i] > 0 {
            targets[i] -= 1;
            over -= 1;
        }
    }
    Ok(DiscretizedDistribution { mu, targets })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AliasTable {
    pub mu: u32,
    pub targets: Vec<u64>,
    pub alt: Vec<usize>,
    /// In `[0, 2^mu]`; index `l` is kept when a uniform `sigma < keep[l]`.
    pub keep: Vec<u64>,
}

impl AliasTable {
    pub fn len(&self) -> usize {
        self.alt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alt.is_empty()
    }

    /// Probability mass each index ends up with, as integers out of `2^mu L`.
    pub fn realized(&self) -> Vec<u64> {
        let full = 1u64 << self.mu;
        let mut out = self.keep.clone();
        for (k, &a) in self.alt.iter().enumerate() {
            out[a] += full - self.keep[k];
        }
        out
    }

    /// `keep_l + sum_{alt_k = l} (2^mu - keep_k) = target_l` for every `l`.
    pub fn is_consistent(&self) -> bool {
        let full = 1u64 << self.mu;
        self.keep.iter().all(|&k| k <= full)
            && self.alt.iter().all(|&a| a < self.len())
            && self.keep.iter().zip(&self.alt).enumerate().all(|(l, (&k, &a))| k < full || a == l)
            && self.realized() == self.targets
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Invalid(e.to_string());
        wr.write_record(["index", "target", "keep", "alt"]).map_err(io)?;
        for l in 0..self.len() {
            wr.write_record([l.to_string(), self.targets[l].to_string(), self.keep[l].to_string(), self.alt[l].to_string()])
                .map_err(io)?;
        }
        wr.flush().map_err(|e| Error::Invalid(e.to_string()))
    }
}

/// Vose-style construction in integers. Under-full indices are served in
/// increasing index order; an over-full index that drops below the average
/// is served next.
pub fn build_alias_table(dist: &DiscretizedDistribution) -> AliasTable {
    let full = 1u64 << dist.mu;
    let len = dist.len();
    let mut rest = dist.targets.clone();
    let mut keep = vec![full; len];
    let mut alt: Vec<usize> = (0..len).collect();
    let mut small: VecDeque<usize> = (0..len).filter(|&i| rest[i] < full).collect();
    let mut large: VecDeque<usize> = (0..len).filter(|&i| rest[i] > full).collect();
    while let Some(s) = small.pop_front() {
        let Some(&l) = large.front() else {
            // totals balance, so this only happens for an exactly full index
            debug_assert_eq!(rest[s], full);
            break;
        };
        keep[s] = rest[s];
        alt[s] = l;
        rest[l] -= full - rest[s];
        if rest[l] <= full {
            large.pop_front();
            if rest[l] < full {
                small.push_front(l);
            }
        }
    }
    AliasTable { mu: dist.mu, targets: dist.targets.clone(), alt, keep }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_examples() {
        assert_eq!(compute_mu(2.0, 0.1, 1.0).unwrap(), 7);
        assert_eq!(compute_mu(2.0f32, 2.0, 0.0).unwrap(), 2);
        assert!(compute_mu(2.0, 0.1, 2.0).is_err());
        assert!(compute_mu(2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn discretize_examples() {
        assert_eq!(discretize(&[1.0, 1.0], 1).unwrap().targets, vec![2, 2]);
        assert_eq!(discretize(&[4.0, 2.0, 1.0, 1.0], 3).unwrap().targets, vec![16, 8, 4, 4]);
        let d = discretize(&[1.0, 1.0, 1.0], 4).unwrap();
        assert_eq!(d.targets.iter().sum::<u64>(), 48);
        assert!(d.targets.iter().all(|&t| (t as f64 - 16.0).abs() <= 1.0));
        assert!(discretize(&[0.0, 0.0], 3).is_err());
    }

    #[test]
    fn table_example() {
        let d = DiscretizedDistribution { mu: 3, targets: vec![16, 8, 4, 4] };
        let t = build_alias_table(&d);
        assert!(t.is_consistent());
        assert_eq!(t.keep, vec![8, 8, 4, 4]);
        assert_eq!(t.alt, vec![0, 1, 0, 0]);
    }

    #[test]
    fn uniform_keeps_everything() {
        let d = DiscretizedDistribution { mu: 2, targets: vec![4; 5] };
        let t = build_alias_table(&d);
        assert_eq!(t.keep, vec![4; 5]);
        assert_eq!(t.alt, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn csv_export() {
        let t = build_alias_table(&DiscretizedDistribution { mu: 1, targets: vec![3, 1] });
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "index,target,keep,alt\n0,3,2,0\n1,1,1,0\n");
    }
}
