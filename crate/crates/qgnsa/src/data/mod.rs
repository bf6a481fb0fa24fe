//! Dataset ingestion, preprocessing, synthesis, folding, and disk layout.

pub mod folds;
pub mod io;
pub mod preprocess;
pub mod synthetic;
pub mod table;

pub use folds::{kfold_indices, kfold_split};
pub use io::{read_dataset, write_dataset, DatasetManifest};
pub use preprocess::{preprocess, LabeledDataset, PreprocessSpec};
pub use synthetic::generate_synthetic;
pub use table::{load_csv, RawTable};
