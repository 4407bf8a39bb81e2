//! Named groups, products, quotients, group files and the corpus.

mod corpus;
mod groupfile;
mod named;
mod product;
mod quotient;

pub use corpus::{corpus, corpus_names, spec_by_name, CorpusFilter, GroupSpec, SpecSource};
pub use groupfile::{load_group_file, parse_group_file};
pub use named::{generators_for_name, named_generators, named_group, Family};
pub use product::{direct_product, DirectProduct};
pub(crate) use quotient::quotient_or_self;
pub use quotient::{quotient_group, quotient_map, Epimorphism, QuotientData};
