//! Exact characteristic-class calculations for complex vector bundles.
//!
//! The crate is layered: [`exactpoly`] supplies polynomials, [`symroots`] the
//! splitting principle, [`steenrod`] mod-p power operations, [`chernalg`]
//! virtual-bundle Chern calculus, [`schwarz`] integrality conditions on
//! `CP^n`, [`classifier`] rank-3 bundle counts on `CP^5`, and [`verify`] a
//! report that recomputes a fixed list of identities.

pub mod chernalg;
pub mod classifier;
pub mod cli;
pub mod exactpoly;
pub mod linalg;
pub mod schwarz;
pub mod steenrod;
pub mod symroots;
pub mod verify;

/// Serde helpers that write big integers as decimal strings.
pub(crate) mod bigstr {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&x.to_string())?;
            }
            seq.end()
        }
    }
}
