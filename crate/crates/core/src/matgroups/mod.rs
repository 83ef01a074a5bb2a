//! Matrix groups over E: the unitary groups G_n = U(2n+1) and H_r = U(2r)
//! with respect to the anti-diagonal Hermitian form, their level subgroups,
//! root elements and Weyl representatives, and the constructive
//! decomposition / double-coset classification algorithms.
//!
//! Everything is exact: entries are elements of E modelled by pairs of
//! rationals. Hensel-produced factors are certified modulo p^M with the
//! precision recorded on the element; all other factors are exact.

mod classify;
mod decompose;
mod iwasawa;
mod matrix;
mod membership;
mod random;
mod roots;
mod snf;

pub use classify::{coset_classify, levi_part_extract, CosetSide};
pub use decompose::{decompose_compact, CompactFactors};
pub use iwasawa::{iwasawa_decompose, opposite_iwasawa};
pub use matrix::{CertMode, GroupElement, UMat};
pub use membership::{group_membership, LevelSpec, Subgroup};
pub use random::{random_group_element, random_k_nm, random_k0_nm, random_opposite_parabolic, RandomWords};
pub use roots::{build_root_element, build_weyl_rep, clear_op, weyl_w_s, RootLabel};
pub use snf::elementary_divisors;
