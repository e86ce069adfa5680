//! Forbidden subposet problems in the Boolean lattice.
//!
//! * [`poset`]: finite posets via Hasse diagrams, ranks, duals and the named
//!   posets (chains, `Y_{h,s}`, `T_{r,3}`, complete multi-level posets).
//! * [`family`]: set families over `[n]` as bitmasks and the standard
//!   constructions (middle layers, `Σ(n,h)`, the two tail/`F_{2,3}` families).
//! * [`embed`]: weak, induced, rank-preserving and colored copy detection,
//!   inclusion bigraphs, k-core peeling and greedy tree embedding.
//! * [`chains`]: exact Lubell mass, maximal-chain pair counts and weights,
//!   2-chain counts, Kleitman's bound and tail counts.
//! * [`search`]: exact `La`, `La*`, `La_rp` by branch and bound, saturation
//!   checks and middle-layer probes.
//! * [`verify`]: the reproducible claim suite behind `posetlab verify paper`.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod chains;
pub mod cli;
pub mod embed;
pub mod family;
pub mod numbers;
pub mod oracle;
pub mod poset;
pub mod search;
pub mod verify;

pub use embed::{find_copy, Embedding, FreenessMode, ModeKind};
pub use family::{SetFamily, Mask};
pub use poset::{NamedPoset, Poset};
