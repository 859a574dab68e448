//! Declared actions of the dual algebra on `t^p_ij`. Metadata only.

/// One declared relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderRelation {
    pub operator: &'static str,
    pub action: &'static str,
}

/// Right and left actions of `E_+`, `E_-`, `k = q^(H/4)` on `t^p_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderAction;

impl LadderAction {
    pub const RELATIONS: [LadderRelation; 7] = [
        LadderRelation { operator: "R(E+)", action: "t^p_ij -> p t^p_(i+1,j)" },
        LadderRelation { operator: "R(E-)", action: "t^p_ij -> p t^p_(i-1,j)" },
        LadderRelation { operator: "R(k)", action: "t^p_ij -> q^-i t^p_ij" },
        LadderRelation { operator: "L(E+)", action: "t^p_ij -> p t^p_(i,j-1)" },
        LadderRelation { operator: "L(E-)", action: "t^p_ij -> p t^p_(i,j+1)" },
        LadderRelation { operator: "L(k)", action: "t^p_ij -> q^-j t^p_ij" },
        LadderRelation { operator: "R(E+ E-)", action: "t^p_ij -> p^2 t^p_ij" },
    ];

    pub fn relations(&self) -> &'static [LadderRelation] {
        &Self::RELATIONS
    }
}
