//! Shared serialization helpers. Big integers always leave the process as
//! decimal strings.

use std::fmt::Display;

use serde::Serializer;

pub(crate) fn serialize_decimal<S, T>(value: &T, serializer: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
    T: Display,
{
    serializer.collect_str(value)
}
