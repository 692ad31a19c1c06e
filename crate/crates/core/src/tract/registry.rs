//! Reference families spanning every regime the classifier distinguishes.

use serde::Serialize;

use crate::seqcore::{Family, SequenceModel, Tail};

/// A named, validated sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegistryEntry {
    pub name: String,
    pub model: SequenceModel,
}

fn entry(name: &str, model: Result<SequenceModel, crate::seqcore::SeqError>) -> RegistryEntry {
    RegistryEntry {
        name: name.into(),
        model: model.expect("registry families are valid"),
    }
}

/// Eigenvalue families: polynomial, geometric, log-power, stretched and
/// plain exponential, double exponential, and finite lists.
pub fn eigenvalue_registry() -> Vec<RegistryEntry> {
    let e = |name: &str, f: Family| entry(name, SequenceModel::eigenvalues(f));
    vec![
        e("poly(1)", Family::Poly { alpha: 1.0 }),
        e("poly(2)", Family::Poly { alpha: 2.0 }),
        e("geometric(0.5)", Family::Geometric { q: 0.5 }),
        e("geometric(0.9)", Family::Geometric { q: 0.9 }),
        e("logpower(2)", Family::LogPower { beta: 2.0 }),
        e("exppower(1,0.5)", Family::ExpPower { c: 1.0, beta: 0.5 }),
        e("exppower(1,1)", Family::ExpPower { c: 1.0, beta: 1.0 }),
        e("doubleexp(1)", Family::DoubleExp { c: 1.0 }),
        e(
            "list(1,0.5,0.25;zero)",
            Family::List {
                values: vec![1.0, 0.5, 0.25],
                tail: Tail::Zero,
            },
        ),
        e(
            "list(1,0.6;geometric(0.3))",
            Family::List {
                values: vec![1.0, 0.6],
                tail: Tail::Geometric { q: 0.3 },
            },
        ),
    ]
}

/// Weight families: polynomial, geometric, stretched exponential, double
/// exponential and constant.
pub fn weight_registry() -> Vec<RegistryEntry> {
    let w = |name: &str, f: Family| entry(name, SequenceModel::weights(f));
    vec![
        w("poly(1)", Family::Poly { alpha: 1.0 }),
        w("poly(2)", Family::Poly { alpha: 2.0 }),
        w("geometric(0.5)", Family::Geometric { q: 0.5 }),
        w("exppower(1,0.5)", Family::ExpPower { c: 1.0, beta: 0.5 }),
        w("exppower(1,2)", Family::ExpPower { c: 1.0, beta: 2.0 }),
        w("doubleexp(1)", Family::DoubleExp { c: 1.0 }),
        w("constant(1)", Family::Constant { value: 1.0 }),
    ]
}

/// Every eigenvalue/weight pair of the registry.
pub fn registry() -> Vec<(RegistryEntry, RegistryEntry)> {
    let weights = weight_registry();
    eigenvalue_registry()
        .into_iter()
        .flat_map(|l| weights.iter().map(move |g| (l.clone(), g.clone())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete_and_named_uniquely() {
        let l = eigenvalue_registry();
        let g = weight_registry();
        assert_eq!(registry().len(), l.len() * g.len());
        for list in [&l, &g] {
            let mut names: Vec<_> = list.iter().map(|e| e.name.as_str()).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), list.len());
        }
        assert!(l.iter().any(|e| e.model.zero_after().is_some()));
        assert!(g.iter().any(|e| !e.model.tends_to_zero()));
    }
}
