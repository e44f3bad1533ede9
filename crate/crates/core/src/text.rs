//! Serde adapters that write exact values as strings.

use rug::Rational;
use serde::Serializer;

use crate::exact::Polynomial;

pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn rationals<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

/// Coefficient list, lowest degree first.
pub fn polynomial<S: Serializer>(p: &Polynomial<Rational>, s: S) -> Result<S::Ok, S::Error> {
    rationals(p.coeffs(), s)
}
