//! Exact p-adic arithmetic with p-adic integers written as truncated Witt
//! vectors over Z/pZ.
//!
//! * [`padic`]: residues mod p^K ([`PAdicInt`]) and field elements `p^z · unit`
//!   ([`PAdicNumber`]), Teichmüller lifts, digits.
//! * [`ghost`] and [`hensel`]: the integer ghost recursion behind `n · 1`, and
//!   k-th roots for `p ∤ k`.
//! * [`witt`]: conversions between Witt digits and residues, ring operations.
//! * [`analytic`]: truncated log/exp, polar form, `x^y = exp(y log x)`.
//! * [`roots`]: the p^k-th root criterion and constructions, local Fermat witnesses.
//! * [`search`]: Wieferich-type prime searches.
//!
//! ```
//! use witt_padic::{general_root, PAdicNumber, WittVector};
//!
//! let x = PAdicNumber::from_integer(3, 11, 3)?;
//! let r = general_root(&x, 11)?;
//! assert_eq!(r.roots[0].unit().unwrap().residue().to_string(), "113");
//!
//! let w = WittVector::from_rational(2, 1, 3, 3)?;
//! assert_eq!(w.to_string(), "(2,1,0]");
//! # Ok::<(), witt_padic::Error>(())
//! ```

pub mod analytic;
pub mod arith;
pub mod error;
pub mod ghost;
pub mod hensel;
pub mod padic;
pub mod roots;
pub mod search;
pub mod witt;

pub use analytic::{de_moivre_check, pexp, plog, polar, ppow, ExactExponent, PolarForm};
pub use error::{Error, Result};
pub use ghost::{ghost_sequence, integer_fermat_quotient, GhostLimits, GhostSequence};
pub use hensel::{hensel_kth_root, kth_power_residue_test};
pub use padic::{PAdicInt, PAdicNumber};
pub use roots::{
    fermat_quotient, flt_local_witness, general_root, pk_root, pk_root_exists,
    root_quotient_congruence_check, sqrt_2adic, FermatWitness, RootQuotientCheck, RootReason,
    RootReport,
};
pub use search::wieferich_search;
pub use witt::{factor_system_phi1, parse_witt, witt_arith, WittOp, WittVector};
