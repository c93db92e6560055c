//! Line-oriented verification reports and the exit-code contract.
//!
//! Every verification subcommand produces one `EQ <name> <status>` line per
//! equation, in a fixed order, so reports can be diffed and parsed. A
//! refuted or inconclusive equation carries its residual in display form.
//! The process exit code summarizes the whole report: refutation dominates,
//! then inconclusiveness, and a clean report exits zero.

use serde::Serialize;

use maxform_core::expr::Zeroness;

/// All verdicts across the report were `verified`.
pub const EXIT_VERIFIED: i32 = 0;
/// At least one equation was refuted.
pub const EXIT_REFUTED: i32 = 1;
/// No refutations, but at least one verdict was inconclusive.
pub const EXIT_INCONCLUSIVE: i32 = 2;
/// The command line did not match the grammar.
pub const EXIT_USAGE: i32 = 64;
/// An input file or inline expression failed to parse or validate.
pub const EXIT_INPUT: i32 = 65;

/// Per-equation verdict. The mapping to the zero-test outcome is exact:
/// `verified` means provably zero, `refuted` means provably nonzero, and
/// `inconclusive` means the normalizer could not decide — never conflated
/// with refutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
}

impl Status {
    pub fn from_zeroness(z: Zeroness) -> Status {
        match z {
            Zeroness::ProvenZero => Status::Verified,
            Zeroness::ProvenNonzero => Status::Refuted,
            Zeroness::Unknown => Status::Inconclusive,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// One report line: an equation name, its verdict, and the residual it was
/// judged on (rendered with the same printer the `star`/`deriv` commands
/// use, so residuals can be fed back into the tool).
#[derive(Clone, Debug, Serialize)]
pub struct Equation {
    pub name: String,
    pub status: Status,
    pub residual: String,
}

/// An ordered list of equation verdicts plus the aggregate outcome.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub equations: Vec<Equation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Appends one equation, translating the zero-test outcome into a
    /// verdict. `residual` is the pretty-printed defect.
    pub fn push(&mut self, name: impl Into<String>, z: Zeroness, residual: impl Into<String>) {
        self.equations.push(Equation {
            name: name.into(),
            status: Status::from_zeroness(z),
            residual: residual.into(),
        });
    }

    /// The aggregate verdict: refuted if anything is refuted, else
    /// inconclusive if anything is undecided, else verified.
    pub fn overall(&self) -> Status {
        let mut overall = Status::Verified;
        for eq in &self.equations {
            match eq.status {
                Status::Refuted => return Status::Refuted,
                Status::Inconclusive => overall = Status::Inconclusive,
                Status::Verified => {}
            }
        }
        overall
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Status::Verified => EXIT_VERIFIED,
            Status::Refuted => EXIT_REFUTED,
            Status::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }

    /// The text rendering: one `EQ` line per equation, newline-terminated.
    /// Verified lines stay terse; the other verdicts carry the residual.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for eq in &self.equations {
            out.push_str("EQ ");
            out.push_str(&eq.name);
            out.push(' ');
            out.push_str(eq.status.word());
            if eq.status != Status::Verified {
                out.push_str(": residual = ");
                out.push_str(&eq.residual);
            }
            out.push('\n');
        }
        out
    }
}

/// Wrapper serialized for `--format json` verification reports.
#[derive(Serialize)]
pub struct JsonReport<'a> {
    pub equations: &'a [Equation],
    pub overall: Status,
}

impl Report {
    pub fn render_json(&self) -> String {
        let doc = JsonReport { equations: &self.equations, overall: self.overall() };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serialization");
        text.push('\n');
        text
    }
}
