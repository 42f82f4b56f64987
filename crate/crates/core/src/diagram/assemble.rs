use super::gauss::{GaussToken, Pass, SignedGaussCode};
use crate::Scalar;

/// A geometric crossing ready for code assembly: the two visit parameters,
/// which visit passes over, and the handedness sign.
#[derive(Debug, Clone, Copy)]
pub(crate) struct VisitPair<T> {
    pub s: T,
    pub s_bar: T,
    pub over_first: bool,
    pub sign: i8,
}

/// Order all visits along the traversal and label crossings by first
/// appearance.
pub(crate) fn assemble_code<T: Scalar>(pairs: &[VisitPair<T>]) -> SignedGaussCode {
    let mut visits: Vec<(T, usize, bool)> = Vec::with_capacity(pairs.len() * 2);
    for (idx, p) in pairs.iter().enumerate() {
        visits.push((p.s, idx, true));
        visits.push((p.s_bar, idx, false));
    }
    visits.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut labels = vec![0usize; pairs.len()];
    let mut next = 1usize;
    let mut tokens = Vec::with_capacity(visits.len());
    for (_, idx, first) in visits {
        if labels[idx] == 0 {
            labels[idx] = next;
            next += 1;
        }
        let over = pairs[idx].over_first == first;
        tokens.push(GaussToken {
            pass: if over { Pass::Over } else { Pass::Under },
            label: labels[idx],
            sign: pairs[idx].sign,
        });
    }
    SignedGaussCode::new(tokens).expect("assembled codes are valid by construction")
}
