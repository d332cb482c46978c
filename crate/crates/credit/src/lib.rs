//! Feature selection on the German Credit data.
//!
//! Pipeline: parse → one-hot + standardize → random-forest importance →
//! threshold filter → QUBO over the surviving columns → solve → logistic
//! regression on the selected columns, scored on a stratified hold-out split.

mod data;
mod error;
mod features;
mod forest;
mod logistic;
mod report;
mod selection;

pub use data::{parse_german_data, RawCreditRecord, ATTRIBUTES};
pub use error::CreditError;
pub use features::{one_hot_standardize, pearson_correlation, FeatureMatrix};
pub use forest::{feature_importance, ForestConfig, ImportanceReport};
pub use logistic::{stratified_split, train_logistic, LogisticModel, SplitConfig, TrainConfig};
pub use report::{ClassMetrics, ClassReport};
pub use selection::{build_feature_qubo, select_features, solve_nonempty, Selection, SelectionConfig, SelectionSolver};

pub type Result<T> = std::result::Result<T, CreditError>;
