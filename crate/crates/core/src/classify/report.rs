//! Uniform JSON view over the classifiers, keyed by theorem identifier.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{girth, OrientedGraph};
use crate::linalg::skew_rank;

use super::{
    class_rank_account, extremal_min_classify, min_girth_bound, nonsingular_unicyclic,
    pendant_tree_decompose, rank2_classify, rank4_pendant_classify, unicyclic_rank_predicted,
};

/// Identifiers accepted by [`classify_as`].
pub const CLASSIFIERS: &[&str] = &[
    "theorem3.3",
    "theorem3.4",
    "theorem4.2",
    "theorem4.3",
    "theorem4.5",
    "theorem4.6",
    "theorem5.1",
    "theorem5.2",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub predicate: String,
    /// `true`/`false` for deciders, a rank for predictions and bounds.
    pub value: Value,
    pub witness: Value,
    pub actual_rank: usize,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("classification results serialize")
}

/// Runs one classifier. `theorem3.1` is accepted as an alias of the rank-2
/// decider and the two `theorem4.2-*` routes as aliases of `theorem4.2`.
pub fn classify_as(g: &OrientedGraph, predicate: &str) -> Result<ClassificationReport> {
    let (value, witness) = match predicate {
        "theorem3.1" | "theorem3.3" => {
            let w = rank2_classify(g)?;
            (json!(w.value), to_value(&w))
        }
        "theorem3.4" => {
            let w = rank4_pendant_classify(g)?;
            (json!(w.value), to_value(&w))
        }
        "theorem4.2" | "theorem4.2-literal" | "theorem4.2-coefficient" => {
            let p = unicyclic_rank_predicted(g)?;
            (json!(p.coefficient), to_value(&p))
        }
        "theorem4.3" => {
            g.require_unicyclic()?;
            let k = girth(g).length().expect("unicyclic graphs have a cycle");
            let bound = min_girth_bound(g.order(), k)?;
            (json!(bound), json!({ "order": g.order(), "girth": k }))
        }
        "theorem4.5" => {
            let d = pendant_tree_decompose(g)?;
            (json!(d.parts.0 + d.parts.1), to_value(&d))
        }
        "theorem4.6" => {
            let e = extremal_min_classify(g)?;
            (json!(e.value), to_value(&e))
        }
        "theorem5.1" => {
            let a = class_rank_account(g)?;
            (json!(a.bound), to_value(&a))
        }
        "theorem5.2" => {
            let v = nonsingular_unicyclic(g)?;
            (json!(v.value), to_value(&v))
        }
        other => return Err(Error::UnknownTheorem(other.to_string())),
    };
    Ok(ClassificationReport {
        predicate: predicate.to_string(),
        value,
        witness,
        actual_rank: skew_rank(g),
    })
}

/// Every classifier whose preconditions `g` meets.
pub fn classify_applicable(g: &OrientedGraph) -> Vec<ClassificationReport> {
    CLASSIFIERS
        .iter()
        .filter_map(|id| classify_as(g, id).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_family, Family, FamilySpec, OrientationRule};

    #[test]
    fn reports_for_an_evenly_oriented_square() {
        let c4 = generate_family(&FamilySpec::new(
            Family::Cycle { n: 4 },
            OrientationRule::UniformCyclic,
        ))
        .unwrap();
        let r = classify_as(&c4, "theorem3.3").unwrap();
        assert_eq!(r.value, json!(true));
        assert_eq!(r.actual_rank, 2);
        let names: Vec<_> = classify_applicable(&c4)
            .into_iter()
            .map(|r| r.predicate)
            .collect();
        assert_eq!(names, ["theorem3.3", "theorem4.2", "theorem4.5", "theorem5.1", "theorem5.2"]);
        assert!(matches!(classify_as(&c4, "lemma9.9"), Err(Error::UnknownTheorem(_))));
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(r#"{"predicate":"theorem3.3","value":true,"witness":{"#));
    }
}
