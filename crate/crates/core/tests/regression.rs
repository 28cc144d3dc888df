//! Hand-computed boundaries, homology and identities in complexities two and
//! three.

mod common;

use common::regression;

#[test]
fn even_complexity_two() {
    regression::even_complexity_two();
}

#[test]
fn odd_complexity_two() {
    regression::odd_complexity_two();
}

#[test]
fn even_quotient_complexity_three() {
    regression::even_quotient_complexity_three();
}

#[test]
fn odd_quotient_complexity_three() {
    regression::odd_quotient_complexity_three();
}
