//! Decision procedures that predict the skew-rank from structure.

mod catalog;
mod dense;
mod report;
mod unicyclic;

pub use catalog::{
    catalog_rank4, switching_representatives, CatalogClass, CatalogEntry, OrientationCondition,
    CATALOG_MAX_ORDER,
};
pub use dense::{rank2_classify, rank4_pendant_classify, Rank2Rule, Rank2Witness, Rank4Witness};
pub use report::{classify_applicable, classify_as, ClassificationReport, CLASSIFIERS};
pub use unicyclic::{
    class_rank_account, cycle_skew_rank, extremal_min_classify, is_nonsingular, min_girth_bound,
    nonsingular_unicyclic, path_skew_rank, pendant_tree_decompose, unicyclic_rank_predicted,
    ClassRankAccount, DecompositionCase, ExtremalCase, ExtremalClassification, NonsingularVerdict,
    PendantTree, PendantTreeDecomposition, UnicyclicPrediction,
};
