use super::bracket::{determinant, jones};
use super::laurent::LaurentPoly;
use crate::diagram::{gauss_to_pd, reidemeister_reduce, SignedGaussCode};
use crate::Result;

/// Invariants used to identify knot types at desk scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantProfile {
    /// Crossing number of the greedily reduced diagram (diagnostic, not an
    /// invariant of the knot type).
    pub crossing_count_reduced: usize,
    pub determinant: u64,
    /// Jones polynomial with exponents in `t^(1/4)` units.
    pub jones: LaurentPoly,
    /// Writhe of the reduced diagram (diagnostic, not an invariant).
    pub writhe: i64,
}

/// Reduce, convert to PD, compute all invariants.
pub fn profile(code: &SignedGaussCode) -> Result<InvariantProfile> {
    let reduced = reidemeister_reduce(code);
    let pd = gauss_to_pd(&reduced)?;
    let writhe = reduced.writhe();
    Ok(InvariantProfile {
        crossing_count_reduced: reduced.crossing_count(),
        determinant: determinant(&pd)?,
        jones: jones(&pd, writhe)?,
        writhe,
    })
}

/// What comparing two profiles can honestly say.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SameKnotType {
    /// Some genuine invariant differs: the knot types are different.
    Distinct,
    /// All computed invariants agree; the types may still differ.
    Indistinguishable,
}

/// Compare the genuine invariants only. Crossing count and writhe are diagram
/// artifacts and must not separate profiles: an unreduced diagram of the same
/// knot would change them.
pub fn same_knot_type(a: &InvariantProfile, b: &InvariantProfile) -> SameKnotType {
    if a.determinant != b.determinant || a.jones != b.jones {
        SameKnotType::Distinct
    } else {
        SameKnotType::Indistinguishable
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_code_profile() {
        let p = profile(&SignedGaussCode::empty()).unwrap();
        assert_eq!(p.crossing_count_reduced, 0);
        assert_eq!(p.determinant, 1);
        assert_eq!(p.jones, LaurentPoly::one());
        assert_eq!(p.writhe, 0);
    }

    #[test]
    fn trefoil_profile_values() {
        let p = profile(&crate::fixtures::trefoil_code()).unwrap();
        assert_eq!(p.crossing_count_reduced, 3);
        assert_eq!(p.determinant, 3);
        assert_eq!(p.jones.term_count(), 3);
        assert_eq!(p.writhe.abs(), 3);
    }

    #[test]
    fn mirror_trefoils_are_distinct() {
        let a = profile(&crate::fixtures::trefoil_code()).unwrap();
        let b = profile(&crate::fixtures::trefoil_code().mirror()).unwrap();
        assert_eq!(same_knot_type(&a, &b), SameKnotType::Distinct);
    }

    #[test]
    fn kink_decoration_is_invisible() {
        let plain = profile(&SignedGaussCode::empty()).unwrap();
        let decorated = profile(&"O1- U1-".parse().unwrap()).unwrap();
        assert_eq!(same_knot_type(&plain, &decorated), SameKnotType::Indistinguishable);
    }

    #[test]
    fn trefoil_vs_figure_eight() {
        let a = profile(&crate::fixtures::trefoil_code()).unwrap();
        let b = profile(&crate::fixtures::figure_eight_code()).unwrap();
        assert_eq!(a.determinant, 3);
        assert_eq!(b.determinant, 5);
        assert_eq!(same_knot_type(&a, &b), SameKnotType::Distinct);
    }

    #[test]
    fn granny_knot_determinant_is_multiplicative() {
        // connected sum by concatenation of codes with disjoint labels
        let granny: SignedGaussCode =
            "O1+ U2+ O3+ U1+ O2+ U3+ O4+ U5+ O6+ U4+ O5+ U6+".parse().unwrap();
        let p = profile(&granny).unwrap();
        assert_eq!(p.determinant, 9);
    }
}
