//! The classification in executable form: algebra tables, the SKT
//! solution families, the table of SKT algebras and the non-SKT list.

pub mod families;
pub mod non_skt;
pub mod table4;
pub mod tables;

pub use families::{build_family, verify_family, FamilyId, FamilyInstance, FamilyReport};
pub use non_skt::{non_skt_list, NonSktEntry};
pub use table4::{table4_rows, verify_table4, Table4Report, Table4Row};
pub use tables::{catalog_algebras, structure_claims, unimodular_listed, CatalogAlgebra};
