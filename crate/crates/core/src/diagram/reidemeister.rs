use super::gauss::{GaussToken, SignedGaussCode};

/// Greedily remove kinks (R1) and bigons (R2) until none are visible in the
/// code. Only strictly crossing-reducing moves are applied; no R3 search.
pub fn reidemeister_reduce(code: &SignedGaussCode) -> SignedGaussCode {
    let mut tokens: Vec<GaussToken> = code.tokens().to_vec();
    loop {
        if remove_kink(&mut tokens) {
            continue;
        }
        if remove_bigon(&mut tokens) {
            continue;
        }
        break;
    }
    SignedGaussCode::new(tokens).expect("reduction keeps codes valid")
}

/// R1: two cyclically adjacent visits of the same crossing.
fn remove_kink(tokens: &mut Vec<GaussToken>) -> bool {
    let n = tokens.len();
    if n < 2 {
        return false;
    }
    for i in 0..n {
        let j = (i + 1) % n;
        if tokens[i].label == tokens[j].label {
            let (hi, lo) = if i > j { (i, j) } else { (j, i) };
            tokens.remove(hi);
            tokens.remove(lo);
            return true;
        }
    }
    false
}

/// R2: adjacent visits of two crossings on one strand, both over or both
/// under, whose partner visits are adjacent in the reversed order, with
/// opposite handedness. (The same-order pattern is not a planar bigon, and
/// the equal-sign pattern is a clasp, which R2 cannot undo.)
fn remove_bigon(tokens: &mut Vec<GaussToken>) -> bool {
    let n = tokens.len();
    if n < 4 {
        return false;
    }
    for i in 0..n {
        let i2 = (i + 1) % n;
        let (t1, t2) = (tokens[i], tokens[i2]);
        if t1.label == t2.label || t1.pass != t2.pass || t1.sign == t2.sign {
            continue;
        }
        let j1 = partner(tokens, i);
        let j2 = partner(tokens, i2);
        let adjacent = (j2 + 1) % n == j1;
        let distinct = j1 != i && j1 != i2 && j2 != i && j2 != i2;
        if adjacent && distinct {
            let mut idx = [i, i2, j1, j2];
            idx.sort_unstable();
            for p in idx.iter().rev() {
                tokens.remove(*p);
            }
            return true;
        }
    }
    false
}

fn partner(tokens: &[GaussToken], i: usize) -> usize {
    tokens
        .iter()
        .enumerate()
        .position(|(j, t)| j != i && t.label == tokens[i].label)
        .expect("valid code has a partner visit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kink_is_removed() {
        let code: SignedGaussCode = "O1+ U1+".parse().unwrap();
        assert!(reidemeister_reduce(&code).is_empty());

        let code: SignedGaussCode = "O1+ U2+ O3+ U1+ O2+ U3+ O4- U4-".parse().unwrap();
        let reduced = reidemeister_reduce(&code);
        assert_eq!(reduced.crossing_count(), 3);
        assert_eq!(
            reduced.canonical(),
            crate::fixtures::trefoil_code().canonical()
        );
    }

    #[test]
    fn bigon_is_removed() {
        let code: SignedGaussCode = "O1+ O2- U2- U1+".parse().unwrap();
        assert!(reidemeister_reduce(&code).is_empty());
    }

    #[test]
    fn clasp_is_not_a_bigon() {
        // equal signs at the bigon face: a clasp, untouchable by R2 alone
        let code: SignedGaussCode = "O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap();
        assert_eq!(reidemeister_reduce(&code), code);
    }

    #[test]
    fn doubled_bigon_reduces_to_nothing() {
        // poke of a poke: four crossings, two nested bigons
        let code: SignedGaussCode = "O1+ O2- O3+ O4- U4- U3+ U2- U1+".parse().unwrap();
        assert!(reidemeister_reduce(&code).is_empty());
    }

    #[test]
    fn reduced_codes_are_left_alone() {
        for code in [crate::fixtures::trefoil_code(), crate::fixtures::figure_eight_code()] {
            assert_eq!(reidemeister_reduce(&code), code);
        }
    }
}
