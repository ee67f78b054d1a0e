//! Straight-line drawings of complete bipartite graphs K_{m,n}: vertex
//! arrangements, exact crossing counts, closed-form crossing numbers, and the
//! inner-radius threshold of the double circular arrangement.
//!
//! ```
//! use dcross::{arrangements::{gen_dc, DCParams}, closed_forms::cr_dc, geom::count_crossings_brute};
//!
//! let params = DCParams::new(6, 5, 0.01, 1.0).unwrap();
//! let count = count_crossings_brute(&gen_dc(&params).unwrap()).unwrap().count;
//! assert_eq!(count, cr_dc(6, 5).unwrap());
//! ```

pub mod arrangements;
pub mod bounds;
pub mod closed_forms;
pub mod error;
pub mod formats;
pub mod geom;
pub mod threshold;

pub use error::{Error, Result};

/// Version string embedded in every emitted file.
pub const TOOL_VERSION: &str = concat!("dcross ", env!("CARGO_PKG_VERSION"));
