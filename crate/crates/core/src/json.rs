//! JSON output with every float written at 17 significant digits, so that
//! values round-trip bit-exactly and repeated runs compare byte for byte.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

/// Pretty formatter that writes `f64` as `d.dddddddddddddddde±x`.
pub struct Sig17Formatter<'a>(PrettyFormatter<'a>);

impl Default for Sig17Formatter<'_> {
    fn default() -> Self {
        Sig17Formatter(PrettyFormatter::with_indent(b"  "))
    }
}

/// Formats a float the way JSON and CSV outputs do.
pub fn format_f64(value: f64) -> String {
    format!("{value:.16e}")
}

macro_rules! delegate {
    ($($name:ident $(, $arg:ident : $ty:ty)*;)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(writer $(, $arg)*)
            }
        )*
    };
}

impl Formatter for Sig17Formatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    delegate! {
        begin_array;
        end_array;
        begin_array_value, first: bool;
        end_array_value;
        begin_object;
        end_object;
        begin_object_key, first: bool;
        end_object_key;
        begin_object_value;
        end_object_value;
    }
}

/// Serialises `value` as indented JSON with 17-significant-digit floats.
pub fn to_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = Serializer::with_formatter(&mut out, Sig17Formatter::default());
    value
        .serialize(&mut ser)
        .expect("serialising in-memory values cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}
