//! `e_ℓ(n)`: the maximum number of edges of a subgraph of `D_n` in which
//! every edge is crossed at most `ℓ` times.

mod closed_form;
mod compose;
mod search;

pub use closed_form::{analytic_upper, c_ell, emax_closed_form, emax_closed_form_record, m_ell_explore, ClosedForm, MEllEstimate};
pub use compose::{emax_composition_bound, golden_certificate, Golden};
pub use search::{emax_exact, enumerate_optima, estar_acyclic, SearchBudget, EXACT_MAX_N};

use serde_json::json;

use crate::convex::ConvexGraph;
use crate::error::{invalid, Result};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ExactSearch,
    ClosedForm,
    CompositionLower,
    AnalyticUpper,
    AcyclicSearch,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactSearch => "exact-search",
            Method::ClosedForm => "closed-form",
            Method::CompositionLower => "composition-lower",
            Method::AnalyticUpper => "analytic-upper",
            Method::AcyclicSearch => "acyclic-search",
        }
    }
}

/// Whether a searched value is proven optimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Exact,
    /// `value` is only a lower bound: a construction, or a search cut short.
    Inexact,
}

/// One value of `e_ℓ(n)` (or of a bound on it) together with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMaxRecord {
    pub ell: usize,
    pub n: usize,
    pub value: u64,
    pub method: Method,
    pub status: Status,
    pub certificate: Option<ConvexGraph>,
    /// The closed form exceeded `C(n,2) − n` and was clamped to it.
    pub clamped: bool,
    /// Search nodes visited, 0 for non-search methods.
    pub nodes: u64,
}

impl EdgeMaxRecord {
    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }

    /// Re-measures the certificate: right size, right `n`, `lc ≤ ℓ`.
    pub fn validate(&self) -> Result<()> {
        let Some(cert) = &self.certificate else {
            return Ok(());
        };
        if cert.n() != self.n {
            return Err(invalid(format!("certificate has {} vertices, expected {}", cert.n(), self.n)));
        }
        if cert.edge_count() as u64 != self.value {
            return Err(invalid(format!("certificate has {} edges, record says {}", cert.edge_count(), self.value)));
        }
        if cert.allow_sides() {
            return Err(invalid("certificate must be a subgraph of D_n"));
        }
        match self.method {
            Method::AcyclicSearch => {
                if !cert.has_acyclic_crossing_graph() {
                    return Err(invalid("certificate's crossing graph has a cycle"));
                }
            }
            _ => {
                let lc = cert.local_crossing_number();
                if lc > self.ell {
                    return Err(invalid(format!("certificate has local crossing number {lc} > {}", self.ell)));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "ell": self.ell,
            "n": self.n,
            "value": self.value,
            "method": self.method.as_str(),
            "status": match self.status { Status::Exact => "exact", Status::Inexact => "inexact" },
            "clamped": self.clamped,
            "certificate": self.certificate.as_ref().map(|g| crate::convex::GraphJson::from(g)),
        })
    }
}
