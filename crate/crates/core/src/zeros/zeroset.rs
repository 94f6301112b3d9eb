//! Zero ordinates with per-component multiplicities, and the quantities
//! derived from them: `M(γ)`, the mean `m`, the variance, and `G_T`.

use num_complex::Complex64;

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub label: String,
    /// The race weight `a_f`.
    pub weight: f64,
    /// Order of vanishing at the real point `β₀`.
    pub central_order: i32,
    /// Order at `s = 1` of the second-moment function, negative for a pole.
    pub second_moment_pole: i32,
}

impl Component {
    pub fn new(label: &str, weight: f64, central_order: i32, second_moment_pole: i32) -> Self {
        Component {
            label: label.to_string(),
            weight,
            central_order,
            second_moment_pole,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroEntry {
    pub gamma: f64,
    pub component: usize,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub beta0: f64,
    components: Vec<Component>,
    entries: Vec<ZeroEntry>,
}

/// One distinct ordinate with its aggregated `M(γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ordinate {
    pub gamma: f64,
    pub big_m: Complex64,
}

impl Ordinate {
    /// `M(γ) / (β₀ + iγ)`.
    pub fn coefficient(&self, beta0: f64) -> Complex64 {
        self.big_m / Complex64::new(beta0, self.gamma)
    }
}

fn valid_label(label: &str) -> bool {
    !label.is_empty() && !label.contains(|c: char| c.is_whitespace() || c == ',' || c == '=')
}

impl ZeroSet {
    /// Entries are sorted by ordinate; components are referenced by index.
    pub fn new(beta0: f64, components: Vec<Component>, mut entries: Vec<ZeroEntry>) -> Result<Self> {
        if !(0.5..1.0).contains(&beta0) {
            return domain(format!("beta0 = {beta0} must lie in [1/2, 1)"));
        }
        for (i, c) in components.iter().enumerate() {
            if !valid_label(&c.label) {
                return domain(format!("component label '{}' must be a nonempty word", c.label));
            }
            if components[..i].iter().any(|d| d.label == c.label) {
                return domain(format!("duplicate component '{}'", c.label));
            }
            if !c.weight.is_finite() {
                return domain(format!("component '{}' has a non-finite weight", c.label));
            }
        }
        for e in &entries {
            if !(e.gamma > 0.0) || !e.gamma.is_finite() {
                return domain(format!("ordinate {} must be positive", e.gamma));
            }
            if e.multiplicity == 0 {
                return domain(format!("ordinate {} has multiplicity 0", e.gamma));
            }
            if e.component >= components.len() {
                return domain(format!("ordinate {} refers to an unknown component", e.gamma));
            }
        }
        entries.sort_by(|a, b| a.gamma.total_cmp(&b.gamma).then(a.component.cmp(&b.component)));
        Ok(ZeroSet {
            beta0,
            components,
            entries,
        })
    }

    /// A single component with simple zeros at `gammas`.
    pub fn from_ordinates(beta0: f64, component: Component, gammas: &[f64]) -> Result<Self> {
        let entries = gammas
            .iter()
            .map(|&gamma| ZeroEntry {
                gamma,
                component: 0,
                multiplicity: 1,
            })
            .collect();
        Self::new(beta0, vec![component], entries)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn entries(&self) -> &[ZeroEntry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_gamma(&self) -> f64 {
        self.entries.last().map_or(0.0, |e| e.gamma)
    }

    /// `M(γ) = Σ_f a_f · mult_f(γ)`; zero for an ordinate not in the set.
    pub fn big_m(&self, gamma: f64) -> Complex64 {
        let start = self.entries.partition_point(|e| e.gamma < gamma);
        let sum: f64 = self.entries[start..]
            .iter()
            .take_while(|e| e.gamma == gamma)
            .map(|e| self.components[e.component].weight * e.multiplicity as f64)
            .sum();
        Complex64::new(sum, 0.0)
    }

    /// Distinct ordinates `γ <= t` with their `M(γ)`.
    pub fn ordinates(&self, t: f64) -> Vec<Ordinate> {
        let mut out: Vec<Ordinate> = Vec::new();
        for e in self.entries.iter().take_while(|e| e.gamma <= t) {
            let w = self.components[e.component].weight * e.multiplicity as f64;
            match out.last_mut() {
                Some(last) if last.gamma == e.gamma => last.big_m += w,
                _ => out.push(Ordinate {
                    gamma: e.gamma,
                    big_m: Complex64::new(w, 0.0),
                }),
            }
        }
        out
    }

    /// `m = Σ_f a_f (smp_f · [β₀ = 1/2] − ord_f(β₀)/β₀)`.
    pub fn mean(&self) -> f64 {
        let on_line = if self.beta0 == 0.5 { 1.0 } else { 0.0 };
        self.components
            .iter()
            .map(|c| {
                c.weight * (c.second_moment_pole as f64 * on_line - c.central_order as f64 / self.beta0)
            })
            .sum()
    }

    /// `2 Σ_{γ ≤ t} |M(γ)|² / (β₀² + γ²)` over distinct ordinates.
    pub fn variance(&self, t: f64) -> f64 {
        let b2 = self.beta0 * self.beta0;
        2.0 * self
            .ordinates(t)
            .iter()
            .map(|o| o.big_m.norm_sqr() / (b2 + o.gamma * o.gamma))
            .sum::<f64>()
    }

    /// `G_t(e^y) = mean − Σ_{γ ≤ t} 2 Re(M(γ) e^{iγy} / (β₀ + iγ))`.
    pub fn g_at_log(&self, mean: f64, t: f64, y: f64) -> f64 {
        mean - self
            .ordinates(t)
            .iter()
            .map(|o| 2.0 * (o.coefficient(self.beta0) * Complex64::cis(o.gamma * y)).re)
            .sum::<f64>()
    }

    /// `G_t(x)` for `x >= 2`.
    pub fn g_trig(&self, mean: f64, t: f64, x: f64) -> Result<f64> {
        if !(x >= 2.0) {
            return domain(format!("G is defined for x >= 2, got {x}"));
        }
        Ok(self.g_at_log(mean, t, x.ln()))
    }

    /// Exact average of `G_t(e^y)` over `y ∈ [y0, y1]`.
    pub fn g_time_average(&self, mean: f64, t: f64, y0: f64, y1: f64) -> Result<f64> {
        if !(y1 > y0) {
            return domain(format!("empty window [{y0}, {y1}]"));
        }
        let osc: f64 = self
            .ordinates(t)
            .iter()
            .map(|o| {
                let c = o.coefficient(self.beta0);
                let integral = (Complex64::cis(o.gamma * y1) - Complex64::cis(o.gamma * y0))
                    / Complex64::new(0.0, o.gamma);
                2.0 * (c * integral).re
            })
            .sum();
        Ok(mean - osc / (y1 - y0))
    }

    /// The same ordinates with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> ZeroSet {
        let mut out = self.clone();
        for c in &mut out.components {
            c.weight *= factor;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta_like(gammas: &[f64]) -> ZeroSet {
        ZeroSet::from_ordinates(0.5, Component::new("zeta", 1.0, 0, -1), gammas).unwrap()
    }

    #[test]
    fn big_m_examples() {
        let zs = ZeroSet::new(
            0.5,
            vec![Component::new("f", 1.0, 0, 0), Component::new("g", -1.0, 0, 0)],
            vec![
                ZeroEntry { gamma: 3.0, component: 0, multiplicity: 1 },
                ZeroEntry { gamma: 3.0, component: 1, multiplicity: 1 },
            ],
        )
        .unwrap();
        assert_eq!(zs.big_m(3.0), Complex64::new(0.0, 0.0));

        let zs = ZeroSet::new(
            0.5,
            vec![Component::new("f", 2.0, 0, 0)],
            vec![ZeroEntry { gamma: 5.0, component: 0, multiplicity: 3 }],
        )
        .unwrap();
        assert_eq!(zs.big_m(5.0).re, 6.0);
        assert_eq!(zs.big_m(4.0).re, 0.0);

        let chi = ZeroSet::from_ordinates(0.5, Component::new("chi_-4", -2.0, 0, -1), &[6.02, 10.24]).unwrap();
        assert_eq!(chi.big_m(6.02).re, -2.0);
        assert_eq!(chi.mean(), 2.0);
    }

    #[test]
    fn means() {
        assert_eq!(zeta_like(&[14.13]).mean(), -1.0);
        // Elliptic curve of analytic rank r: m = 1 − 2r.
        for r in 0..4 {
            let zs = ZeroSet::from_ordinates(0.5, Component::new("E", 1.0, r, 1), &[]).unwrap();
            assert_eq!(zs.mean(), 1.0 - 2.0 * r as f64);
        }
    }

    #[test]
    fn variance_examples() {
        assert!((zeta_like(&[1.0]).variance(10.0) - 1.6).abs() < 1e-15);
        assert_eq!(zeta_like(&[]).variance(10.0), 0.0);
        assert_eq!(zeta_like(&[11.0]).variance(10.0), 0.0);
    }

    #[test]
    fn g_below_first_zero_is_constant() {
        let zs = zeta_like(&[14.13]);
        assert_eq!(zs.g_trig(-1.0, 10.0, 1234.5).unwrap(), -1.0);
        assert!(zs.g_trig(-1.0, 10.0, 1.5).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ZeroSet::from_ordinates(0.5, Component::new("z", 1.0, 0, -1), &[-1.0]).is_err());
        assert!(ZeroSet::from_ordinates(0.5, Component::new("a b", 1.0, 0, -1), &[1.0]).is_err());
        assert!(ZeroSet::from_ordinates(1.0, Component::new("z", 1.0, 0, -1), &[1.0]).is_err());
    }
}
