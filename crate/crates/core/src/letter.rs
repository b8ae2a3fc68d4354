use std::fmt;

use crate::error::{Error, Result};

/// Input and output signal names. Letters assign a truth value to every
/// signal; inputs occupy the low bits of a letter, outputs the bits above.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    inputs: Vec<String>,
    outputs: Vec<String>,
}

/// A total sign assignment over the signals of an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u64);

pub const MAX_SIGNALS: usize = 20;

impl Alphabet {
    pub fn new<S: Into<String>>(inputs: impl IntoIterator<Item = S>, outputs: impl IntoIterator<Item = S>) -> Result<Self> {
        let inputs: Vec<String> = inputs.into_iter().map(Into::into).collect();
        let outputs: Vec<String> = outputs.into_iter().map(Into::into).collect();
        let mut all: Vec<&String> = inputs.iter().chain(&outputs).collect();
        if all.len() > MAX_SIGNALS {
            return Err(Error::InvalidArgument(format!("at most {MAX_SIGNALS} signals supported")));
        }
        all.sort();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::AlphabetMismatch("signal declared twice".into()));
        }
        Ok(Alphabet { inputs, outputs })
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn num_signals(&self) -> usize {
        self.inputs.len() + self.outputs.len()
    }

    pub fn num_letters(&self) -> usize {
        1 << self.num_signals()
    }

    pub fn num_inputs(&self) -> usize {
        1 << self.inputs.len()
    }

    pub fn num_outputs(&self) -> usize {
        1 << self.outputs.len()
    }

    pub fn signal_index(&self, name: &str) -> Option<usize> {
        self.inputs.iter().chain(&self.outputs).position(|s| s == name)
    }

    pub fn signal_name(&self, i: usize) -> &str {
        if i < self.inputs.len() {
            &self.inputs[i]
        } else {
            &self.outputs[i - self.inputs.len()]
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.num_letters() as u64).map(Letter)
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.0 < self.num_letters() as u64
    }

    /// Joint letter from an input index and an output index.
    pub fn join(&self, input: usize, output: usize) -> Letter {
        Letter(input as u64 | ((output as u64) << self.inputs.len()))
    }

    pub fn input_part(&self, l: Letter) -> usize {
        (l.0 & ((1u64 << self.inputs.len()) - 1)) as usize
    }

    pub fn output_part(&self, l: Letter) -> usize {
        (l.0 >> self.inputs.len()) as usize
    }

    pub fn display(&self, l: Letter) -> LetterDisplay<'_> {
        LetterDisplay { alphabet: self, letter: l, mask: self.num_letters() as u64 - 1 }
    }

    /// Display only the input signals of `l`.
    pub fn display_input(&self, l: Letter) -> LetterDisplay<'_> {
        LetterDisplay { alphabet: self, letter: l, mask: (1u64 << self.inputs.len()) - 1 }
    }

    /// Display only the output signals of `l`.
    pub fn display_output(&self, l: Letter) -> LetterDisplay<'_> {
        let all = self.num_letters() as u64 - 1;
        LetterDisplay { alphabet: self, letter: l, mask: all & !((1u64 << self.inputs.len()) - 1) }
    }
}

impl Letter {
    pub fn get(self, signal: usize) -> bool {
        self.0 >> signal & 1 == 1
    }
}

pub struct LetterDisplay<'a> {
    alphabet: &'a Alphabet,
    letter: Letter,
    mask: u64,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.alphabet.num_signals())
            .filter(|i| self.mask >> i & 1 == 1)
            .map(|i| {
                let name = self.alphabet.signal_name(i);
                if self.letter.get(i) { name.to_string() } else { format!("-{name}") }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
