#![allow(unused_imports)]

pub use weyman::verify::sample::*;
