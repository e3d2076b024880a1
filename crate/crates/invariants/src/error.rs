use thiserror::Error;

/// Why a table entry was refused at load time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// `A = 0` invariants come from constant maps.
    ConstantMaps,
    /// Entries with a zero input are fixed by the unit rule.
    Unit,
    /// `A · c1 ≠ 0`.
    FirstChern(i64),
    /// `⟨r, D_i⟩ ≠ ⟨p1, D_i⟩ + ⟨p2, D_i⟩ − A·D_i`.
    Constraint {
        divisor: String,
        expected: i64,
        found: i64,
    },
    /// `deg r ≠ deg p1 + deg p2` in relative mode.
    Degree { expected: i64, found: i64 },
    /// The same key appears twice with different values.
    Conflict,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rule::ConstantMaps => write!(f, "class 0 invariants are the constant-map values and cannot be supplied"),
            Rule::Unit => write!(f, "invariants with a zero input are fixed by the unit rule"),
            Rule::FirstChern(v) => write!(f, "A·c1 = {v} is nonzero, so the invariant vanishes"),
            Rule::Constraint {
                divisor,
                expected,
                found,
            } => write!(f, "intersection constraint at {divisor}: ⟨r,{divisor}⟩ must be {expected}, found {found}"),
            Rule::Degree { expected, found } => write!(f, "degree of r must be {expected}, found {found}"),
            Rule::Conflict => write!(f, "conflicting duplicate entry"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("unknown invariant N^{a}_{{{p1},{p2},{r}}}")]
    Unknown {
        a: String,
        p1: String,
        p2: String,
        r: String,
    },
    #[error("table line {line}: {rule}")]
    Rejected { line: usize, rule: Rule },
    #[error("table line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown completeness policy {0:?}")]
    Policy(String),
}

pub type Result<T> = std::result::Result<T, InvariantError>;
