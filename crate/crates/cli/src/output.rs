//! Text and line-record output.
//!
//! Every emitted item has a human line and a record form. A record is one
//! line: the record kind followed by tab-separated `key=value` fields.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Debug)]
pub struct Out {
    pub format: Format,
    buf: String,
}

fn clean(v: &str) -> String {
    v.replace(['\t', '\n'], " ")
}

impl Out {
    pub fn new(format: Format) -> Self {
        Out { format, buf: String::new() }
    }

    /// Emits `text` in text mode or the record in records mode.
    pub fn emit(&mut self, kind: &str, fields: &[(&str, String)], text: impl AsRef<str>) {
        match self.format {
            Format::Text => {
                self.buf.push_str(text.as_ref());
                self.buf.push('\n');
            }
            Format::Records => {
                self.buf.push_str(kind);
                for (k, v) in fields {
                    self.buf.push('\t');
                    self.buf.push_str(k);
                    self.buf.push('=');
                    self.buf.push_str(&clean(v));
                }
                self.buf.push('\n');
            }
        }
    }

    /// A line shown only in text mode.
    pub fn note(&mut self, text: impl AsRef<str>) {
        if self.format == Format::Text {
            self.buf.push_str(text.as_ref());
            self.buf.push('\n');
        }
    }

    /// Multi-line text block, emitted line by line.
    pub fn block(&mut self, kind: &str, text: &str) {
        for line in text.lines() {
            self.emit(kind, &[("line", line.to_string())], line);
        }
    }

    /// Output already rendered by a nested command.
    pub fn raw(&mut self, text: &str) {
        self.buf.push_str(text);
    }

    pub fn take(&mut self) -> String {
        std::mem::take(&mut self.buf)
    }
}
