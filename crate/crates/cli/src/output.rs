//! A human section followed by one fenced machine section.

use std::fmt::Write as _;

use arh_core::textio::{MACHINE_BEGIN, MACHINE_END};

use crate::EXIT_OK;

#[derive(Debug, Default)]
pub struct Output {
    pub human: String,
    pub machine: String,
    pub code: u8,
}

impl Output {
    pub fn new() -> Output {
        Output { code: EXIT_OK, ..Output::default() }
    }

    pub fn say(&mut self, line: impl AsRef<str>) {
        self.human.push_str(line.as_ref());
        self.human.push('\n');
    }

    pub fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        writeln!(self.machine, "{key} {value}").unwrap();
    }

    pub fn raw(&mut self, block: &str) {
        self.machine.push_str(block);
    }

    pub fn render(&self) -> String {
        let mut s = self.human.clone();
        if !self.machine.is_empty() {
            if !s.is_empty() {
                s.push('\n');
            }
            writeln!(s, "{MACHINE_BEGIN}").unwrap();
            s.push_str(&self.machine);
            writeln!(s, "{MACHINE_END}").unwrap();
        }
        s
    }
}
