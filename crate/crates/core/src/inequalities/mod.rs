//! Noncontextuality inequalities evaluated on quantum states.

mod clfc;
mod csw;
mod icosahedron;
mod sequential;
mod signaling;
mod yu_oh;

pub use clfc::{clfc_value, ClfcSetting};
pub use csw::csw_value;
pub use icosahedron::{
    icosahedron_value, linear_entropy, purity_bound, IcosahedronInequality,
};
pub use sequential::{check_dichotomic, dichotomic_projectors, sequential_correlation};
pub use signaling::{reprep_joint, signaling_factor};
pub use yu_oh::{yu_oh_nchv_bound, yu_oh_observable, yu_oh_operator, yu_oh_value, YuOhTerms};

use serde::{Deserialize, Serialize};

/// Margin beyond the classical bound required to call a value a violation.
pub const VIOLATION_MARGIN: f64 = 1e-9;

/// Which expression family an inequality belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityForm {
    Csw,
    YuOh,
    Icosahedron,
    Clfc,
}

/// Static description of an inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalitySpec {
    pub name: String,
    pub form: InequalityForm,
    pub classical_bound: f64,
    /// `None` when the quantum value depends on the state.
    pub quantum_bound: Option<f64>,
}

impl InequalitySpec {
    pub fn yu_oh() -> Self {
        Self {
            name: "yu-oh".into(),
            form: InequalityForm::YuOh,
            classical_bound: 9.0,
            quantum_bound: Some(29.0 / 3.0),
        }
    }

    pub fn icosahedron() -> Self {
        Self {
            name: "icosahedron".into(),
            form: InequalityForm::Icosahedron,
            classical_bound: 3.0,
            quantum_bound: Some(3.0 * (5f64.sqrt() - 1.0)),
        }
    }

    pub fn clfc() -> Self {
        Self {
            name: "clfc".into(),
            form: InequalityForm::Clfc,
            classical_bound: 0.0,
            quantum_bound: None,
        }
    }

    pub fn csw(name: &str, alpha: usize, theta: f64) -> Self {
        Self {
            name: name.into(),
            form: InequalityForm::Csw,
            classical_bound: alpha as f64,
            quantum_bound: Some(theta),
        }
    }
}

/// Result of evaluating a witness on one state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub name: String,
    pub value: f64,
    pub classical_bound: f64,
    pub quantum_reference: Option<f64>,
    pub violated: bool,
    /// `value - classical_bound`.
    pub margin: f64,
}

impl WitnessReport {
    pub fn new(name: &str, value: f64, classical_bound: f64, quantum_reference: Option<f64>) -> Self {
        Self {
            name: name.to_string(),
            value,
            classical_bound,
            quantum_reference,
            violated: value > classical_bound + VIOLATION_MARGIN,
            margin: value - classical_bound,
        }
    }

    pub fn from_spec(spec: &InequalitySpec, value: f64) -> Self {
        Self::new(&spec.name, value, spec.classical_bound, spec.quantum_bound)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_bounds_sit_below_quantum_bounds() {
        for spec in [InequalitySpec::yu_oh(), InequalitySpec::icosahedron()] {
            assert!(spec.classical_bound < spec.quantum_bound.unwrap());
        }
    }

    #[test]
    fn violation_needs_a_margin() {
        assert!(!WitnessReport::new("x", 9.0 + 1e-12, 9.0, None).violated);
        assert!(WitnessReport::new("x", 9.0 + 1e-6, 9.0, None).violated);
    }
}
