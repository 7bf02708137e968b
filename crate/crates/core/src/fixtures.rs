//! Small reference contexts shipped with the crate.
//!
//! * `water4`: four living beings (Bream, Frog, Dog, Spike-weed, abbreviated
//!   to their initials) with attributes a: needs water to live, b: lives in
//!   water, c: lives on land, d: needs chlorophyll.
//! * `water6`: six living beings over nine attributes from the same family.
//! * `cex4`: a four-object context on which greedy selection misses the best
//!   pair of attributes.

use crate::context::FormalContext;
use crate::io::{parse_context, Format};

pub const WATER4_CXT: &str = include_str!("../fixtures/water4.cxt");
pub const WATER6_CXT: &str = include_str!("../fixtures/water6.cxt");
pub const CEX4_CXT: &str = include_str!("../fixtures/cex4.cxt");

fn load(text: &str) -> FormalContext {
    parse_context(text.as_bytes(), Format::Cxt).expect("bundled fixture parses")
}

pub fn water4() -> FormalContext {
    load(WATER4_CXT)
}

pub fn water6() -> FormalContext {
    load(WATER6_CXT)
}

pub fn cex4() -> FormalContext {
    load(CEX4_CXT)
}

/// All bundled fixtures with their names.
pub fn all() -> Vec<(&'static str, FormalContext)> {
    vec![("water4", water4()), ("water6", water6()), ("cex4", cex4())]
}
