//! Three-valued answers to class-membership queries.

use crate::linalg::Matrix;
use crate::numeric::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds(Certificate),
    Fails(Counterexample),
    Unknown(SearchReport),
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self {
            Verdict::Holds(_) => Status::Holds,
            Verdict::Fails(_) => Status::Fails,
            Verdict::Unknown(_) => Status::Unknown,
        }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Holds(c) => Some(c),
            _ => None,
        }
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Fails(c) => Some(c),
            _ => None,
        }
    }

    /// The witness point of a `Fails` verdict, if it is a point.
    pub fn witness_point(&self) -> Option<&[Rational]> {
        self.counterexample()?.witness.point()
    }

    /// CLI exit code: 0 holds, 1 fails, 2 unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Holds(_) => 0,
            Verdict::Fails(_) => 1,
            Verdict::Unknown(_) => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Every extreme ray of every sign-orthant cone
    /// `{z : s_i z_i >= 0, s_i (Mz)_i <= 0}` is annihilated by `M`.
    ConeRays { patterns: usize, rays_checked: usize },
    /// Even order, zero mixed block, and a column adequate majorization
    /// matrix; `implied_by` names a stronger class when the verdict for a
    /// weaker class was inherited.
    EvenOrderBlock {
        order: usize,
        majorization: Matrix,
        matrix_certificate: Box<Certificate>,
        implied_by: Option<&'static str>,
    },
    /// `A x^m` is a sum of nonnegative multiples of even pure powers.
    DecoupledForm { terms: Vec<(Vec<u32>, Rational)> },
    /// A purely structural property of the stored entries.
    Structural(String),
}

impl Certificate {
    pub fn describe(&self) -> String {
        match self {
            Certificate::ConeRays {
                patterns,
                rays_checked,
            } => format!(
                "M annihilates all {rays_checked} extreme rays of the {patterns} sign-orthant cones {{z : s_i z_i >= 0, s_i (Mz)_i <= 0}}"
            ),
            Certificate::EvenOrderBlock {
                order,
                majorization,
                matrix_certificate,
                implied_by,
            } => {
                let rows: Vec<String> = majorization
                    .to_rows()
                    .iter()
                    .map(|r| crate::numeric::format_vec(r))
                    .collect();
                let mut s = format!(
                    "order {order} is even, the mixed-monomial block B is zero, and M(A) = [{}] is column adequate ({})",
                    rows.join(", "),
                    matrix_certificate.describe()
                );
                if let Some(by) = implied_by {
                    s.push_str(&format!("; implied by {by}"));
                }
                s
            }
            Certificate::DecoupledForm { terms } => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(e, c)| {
                        format!(
                            "{}*{}",
                            crate::numeric::format_rational(c),
                            crate::monomial::MultiIndex::new(e.clone())
                        )
                    })
                    .collect();
                if parts.is_empty() {
                    "A x^m is identically zero".to_string()
                } else {
                    format!("A x^m = {} with nonnegative coefficients on even pure powers", parts.join(" + "))
                }
            }
            Certificate::Structural(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub witness: Witness,
    /// The violated condition in words.
    pub condition: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// A point `x`, the image (`A x^{m-1}` or `Mz`) and the per-coordinate
    /// values entering the definition (usually `x_i * image_i`).
    Point {
        x: Vec<Rational>,
        image: Vec<Rational>,
        values: Vec<Rational>,
    },
    /// A stored tensor entry (0-based index).
    Entry { index: Vec<usize>, value: Rational },
}

impl Witness {
    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            Witness::Point { x, .. } => Some(x),
            Witness::Entry { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SearchReport {
    pub seeds: u64,
    pub samples: u64,
    /// Smallest violation margin seen (negative would have been a hit).
    pub best_margin: Option<f64>,
    pub notes: Vec<String>,
}

impl SearchReport {
    pub fn note(note: impl Into<String>) -> Self {
        SearchReport {
            notes: vec![note.into()],
            ..SearchReport::default()
        }
    }
}
