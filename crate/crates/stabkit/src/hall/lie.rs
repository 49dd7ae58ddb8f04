//! The lattice Lie algebra spanned by symbols `c_v`.

use serde::Serialize;

use crate::quiver::{DimVector, Quiver};

/// `⟨d, e⟩ = Σ_i d_i e_i − Σ_{a: i→j} d_i e_j`.
pub fn euler(q: &Quiver, d: &DimVector, e: &DimVector) -> i64 {
    q.euler_form(d, e)
}

/// `χ(d, e) = ⟨d, e⟩ − ⟨e, d⟩`.
pub fn antisym(q: &Quiver, d: &DimVector, e: &DimVector) -> i64 {
    euler(q, d, e) - euler(q, e, d)
}

/// `coefficient · c_class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieTerm {
    pub coefficient: i64,
    pub class: DimVector,
}

/// `[c_{v₁}, c_{v₂}] = (−1)^{χ(v₁,v₂)} χ(v₁,v₂) c_{v₁+v₂}`.
pub fn bracket(q: &Quiver, v1: &DimVector, v2: &DimVector) -> LieTerm {
    let chi = antisym(q, v1, v2);
    let sign = if chi.rem_euclid(2) == 0 { 1 } else { -1 };
    LieTerm {
        coefficient: sign * chi,
        class: v1 + v2,
    }
}
