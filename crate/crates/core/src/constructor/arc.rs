use crate::diagram::{Pass, SignedGaussCode};
use crate::{Error, Result};

/// A diagram organized around a Hamiltonian arc: some rotation of the code
/// visits every crossing once before any second visit.
///
/// Crossings are relabeled 1..k in arc order. `omega[j-1]` records whether the
/// arc passes over (+1) or under (-1) at crossing `j`; `tau[i-1]` is the
/// crossing met at the i-th step of the return path.
#[derive(Debug, Clone)]
pub struct ArcDiagram {
    pub code: SignedGaussCode,
    pub arc_end: usize,
    pub omega: Vec<i8>,
    pub tau: Vec<usize>,
}

impl ArcDiagram {
    pub fn crossing_count(&self) -> usize {
        self.arc_end
    }

    /// Handedness sign of crossing `j` (1-based arc label).
    pub fn sign(&self, j: usize) -> i8 {
        self.code
            .tokens()
            .iter()
            .find(|t| t.label == j)
            .map(|t| t.sign)
            .expect("label exists")
    }
}

/// Scan the cyclic rotations of the code for a Hamiltonian arc prefix and
/// extract the arc data from the first rotation that has one.
pub fn hamiltonian_arc_check(code: &SignedGaussCode) -> Result<ArcDiagram> {
    code.validate()?;
    let k = code.crossing_count();
    if k == 0 {
        return Ok(ArcDiagram {
            code: code.clone(),
            arc_end: 0,
            omega: Vec::new(),
            tau: Vec::new(),
        });
    }
    let n = code.len();
    for rot in 0..n {
        let rotated = code.rotated(rot);
        let prefix = &rotated.tokens()[..k];
        let mut seen = std::collections::HashSet::new();
        if !prefix.iter().all(|t| seen.insert(t.label)) {
            continue;
        }
        let relabeled = rotated.relabeled();
        let tokens = relabeled.tokens();
        let omega = tokens[..k]
            .iter()
            .map(|t| if t.pass == Pass::Over { 1i8 } else { -1 })
            .collect();
        let tau = tokens[k..].iter().map(|t| t.label).collect();
        return Ok(ArcDiagram { code: relabeled, arc_end: k, omega, tau });
    }
    Err(Error::NoArc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_arc_is_the_identity_rotation() {
        let arc = hamiltonian_arc_check(&crate::fixtures::trefoil_code()).unwrap();
        assert_eq!(arc.arc_end, 3);
        assert_eq!(arc.omega, vec![1, -1, 1]);
        assert_eq!(arc.tau, vec![1, 2, 3]);
    }

    #[test]
    fn figure_eight_arc_is_found() {
        let arc = hamiltonian_arc_check(&crate::fixtures::figure_eight_code()).unwrap();
        assert_eq!(arc.arc_end, 4);
        assert_eq!(arc.omega.len(), 4);
        let mut tau = arc.tau.clone();
        tau.sort_unstable();
        assert_eq!(tau, vec![1, 2, 3, 4]);
    }

    #[test]
    fn rotated_codes_still_admit_the_arc() {
        let code = crate::fixtures::trefoil_code().rotated(2);
        let arc = hamiltonian_arc_check(&code).unwrap();
        assert_eq!(arc.arc_end, 3);
    }

    #[test]
    fn empty_code_is_trivially_an_arc() {
        let arc = hamiltonian_arc_check(&SignedGaussCode::empty()).unwrap();
        assert_eq!(arc.arc_end, 0);
    }

    #[test]
    fn arcless_code_is_rejected() {
        // three consecutive kinks: every cyclic 3-window contains both visits
        // of some crossing, so no rotation has a Hamiltonian prefix
        let code: SignedGaussCode = "O1+ U1+ O2+ U2+ O3+ U3+".parse().unwrap();
        assert!(matches!(hamiltonian_arc_check(&code), Err(Error::NoArc)));
    }
}
